"""Maximal integral models and local L-factors.

The algorithm iterates, for each bad theta-place p, a saturation phase
(lattice grows; the discriminant's p-valuation drops by (q-1) * kernel rank
per step) and a trimming phase (lattice shrinks back below the maximal
model).  Both phases reduce to the kernel of a Frobenius-semilinear map
between free F_p[t]-modules, computed through a Smith decomposition whose
transformation matrices are recorded as transvection transcripts so that
exact SL lifts exist over F_q[t, theta] (globally) and over truncated
F_p[t][[u]] (locally).
"""

from __future__ import annotations

from .bivar import BivarPoly, det_bivar, t_minus_theta_split
from .charpoly import berkowitz_vector
from .ffield import ExtField, Field, Poly, PolyFrac, factor
from .motive import Motive


class ModelError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Smith normal form over F_p[t] with SL transcripts
# ---------------------------------------------------------------------------

# transcript ops (all of determinant 1):
#   ("rowadd", a, b, lam): row b += lam * row a
#   ("rowswapneg", a, b):  (row a, row b) <- (row b, -row a)
#   ("coladd", a, b, lam): col b += lam * col a
#   ("colswapneg", a, b):  (col a, col b) <- (col b, -col a)


class SmithDecomposition:
    """T = U * S * V with S diagonal-shape, s_11 | s_22 | ...; det U = det V = 1."""

    __slots__ = ("U", "S", "V", "Vinv", "u_ops", "v_ops")

    def __init__(self, U, S, V, Vinv, u_ops, v_ops):
        self.U = U
        self.S = S
        self.V = V
        self.Vinv = Vinv
        self.u_ops = u_ops
        self.v_ops = v_ops

    def diagonal(self):
        n = min(len(self.S), len(self.S[0]) if self.S else 0)
        return [self.S[i][i] for i in range(n)]


def _eye_poly(ring, n):
    zero, one = Poly.zero(ring), Poly.one(ring)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def smith_normal_form(T) -> SmithDecomposition:
    """Smith decomposition over a univariate polynomial ring, transvections only.

    Diagonal entries are not normalized monic (scalings are not in SL); the
    divisibility chain holds up to units.
    """
    m = len(T)
    n = len(T[0]) if m else 0
    if not (m and n):
        raise ModelError("empty matrix")
    ring = T[0][0].ff
    S = [list(r) for r in T]
    U = _eye_poly(ring, m)
    V = _eye_poly(ring, n)
    Vinv = _eye_poly(ring, n)
    u_ops, v_ops = [], []

    def rowadd(a, b, lam):
        # S <- E S with E = I + lam e_{ba}; U <- U E^{-1}
        for j in range(n):
            S[b][j] = S[b][j] + lam * S[a][j]
        for i in range(m):
            U[i][a] = U[i][a] - lam * U[i][b]
        u_ops.append(("rowadd", a, b, lam))

    def rowswapneg(a, b):
        S[a], S[b] = S[b], [-x for x in S[a]]
        for i in range(m):
            U[i][a], U[i][b] = U[i][b], -U[i][a]
        u_ops.append(("rowswapneg", a, b))

    def coladd(a, b, lam):
        # S <- S E with E = I + lam e_{ab}; V <- E^{-1} V; Vinv <- Vinv E
        for i in range(m):
            S[i][b] = S[i][b] + lam * S[i][a]
        for j in range(n):
            V[a][j] = V[a][j] - lam * V[b][j]
        for i in range(n):
            Vinv[i][b] = Vinv[i][b] + lam * Vinv[i][a]
        v_ops.append(("coladd", a, b, lam))

    def colswapneg(a, b):
        for i in range(m):
            S[i][a], S[i][b] = S[i][b], -S[i][a]
        V[a], V[b] = V[b], [-x for x in V[a]]
        for i in range(n):
            Vinv[i][a], Vinv[i][b] = Vinv[i][b], -Vinv[i][a]
        v_ops.append(("colswapneg", a, b))

    for k in range(min(m, n)):
        while True:
            piv = None
            for i in range(k, m):
                for j in range(k, n):
                    if not S[i][j].is_zero():
                        if piv is None or S[i][j].degree() < S[piv[0]][piv[1]].degree():
                            piv = (i, j)
            if piv is None:
                return SmithDecomposition(U, S, V, Vinv, u_ops, v_ops)
            i0, j0 = piv
            if i0 != k:
                rowswapneg(k, i0)
            if j0 != k:
                colswapneg(k, j0)
            dirty = False
            for i in range(k + 1, m):
                if not S[i][k].is_zero():
                    qd = S[i][k] // S[k][k]
                    rowadd(k, i, -qd)
                    if not S[i][k].is_zero():
                        dirty = True
            for j in range(k + 1, n):
                if not S[k][j].is_zero():
                    qd = S[k][j] // S[k][k]
                    coladd(k, j, -qd)
                    if not S[k][j].is_zero():
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if not (S[i][j] % S[k][k]).is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rowadd(bad, k, Poly.one(ring))
    return SmithDecomposition(U, S, V, Vinv, u_ops, v_ops)


def apply_col_ops(eye, ops, lift, invert=False):
    """Product of (lifted) recorded column ops, applied to ``eye``.

    With ``invert=True`` the inverse transcript (reverse order, inverted
    ops) is applied; transcript lifts are exact mutual inverses.
    """
    n = len(eye)
    mat = [list(r) for r in eye]
    seq = reversed(ops) if invert else ops
    for op in seq:
        if op[0] == "coladd":
            _, a, b, lam = op
            lam = lift(lam)
            if invert:
                lam = -lam
            for i in range(n):
                mat[i][b] = mat[i][b] + lam * mat[i][a]
        elif op[0] == "colswapneg":
            _, a, b = op
            if invert:
                for i in range(n):
                    mat[i][a], mat[i][b] = -mat[i][b], mat[i][a]
            else:
                for i in range(n):
                    mat[i][a], mat[i][b] = mat[i][b], -mat[i][a]
        else:
            raise ModelError(f"not a column op: {op[0]}")
    return mat


def semilinear_kernel(T, fp: ExtField):
    """Free basis of {x in F_p[t]^n : T * frob(x) = 0}.

    The linear kernel is spanned by the columns of V^(-1) whose Smith
    diagonal vanishes; the semilinear kernel applies the inverse Frobenius
    entrywise (frob is a ring automorphism of F_p[t] fixing t).
    """
    sd = smith_normal_form(T)
    n = len(T[0])
    diag = sd.diagonal()
    zero_idx = [j for j in range(n) if j >= len(diag) or diag[j].is_zero()]
    cols = [
        [sd.Vinv[i][j].map_coeffs(fp.frob_inv) for i in range(n)] for j in zero_idx
    ]
    return cols, zero_idx, sd


# ---------------------------------------------------------------------------
# Reductions, lifts and digit expansions at a theta-place
# ---------------------------------------------------------------------------


def reduce_mod_place(b: BivarPoly, fp: ExtField) -> Poly:
    """Image of b in F_p[t] under theta -> residue class."""
    return b.eval_theta_in(fp, fp.gen())


def lift_from_place(f: Poly, ff: Field) -> BivarPoly:
    """Standard lift F_p[t] -> F_q[t, theta], theta-degree < deg p."""
    d = f.ff.d
    theta_coeffs = [Poly(ff, [c[j] for c in f.coeffs]) for j in range(d)]
    return BivarPoly(ff, theta_coeffs)


class TeichExpander:
    """Digit expansion g = sum phi(a_w(t)) * p(theta)^w in F_p[t][[u]].

    The coefficient section phi(a) = lift(a^(1/q^m))^(q^m), q^m >= precision,
    is the multiplicative (Teichmueller-style) system; it makes the digit
    coordinates F_p[t]-linear and intertwines tau with the coefficientwise
    q-Frobenius.  For places of degree 1 it degenerates to constants.
    """

    def __init__(self, ff: Field, pth: Poly, prec: int):
        self.ff = ff
        self.pth = pth
        self.prec = prec
        self.fp = ExtField(ff, pth)
        m = 0
        while ff.q**m < prec:
            m += 1
        self.m = m
        self._pw_mod = BivarPoly.from_theta_poly(pth**prec)
        self._section_cache = {}

    def section(self, a) -> BivarPoly:
        out = self._section_cache.get(a)
        if out is not None:
            return out
        fp = self.fp
        root = a
        for _ in range(self.m):
            root = fp.frob_inv(root)
        lift = BivarPoly(self.ff, [Poly.const(self.ff, c) for c in root])
        out = lift ** (self.ff.q**self.m)
        out = out.mod_theta_poly(self.pth**self.prec)
        self._section_cache[a] = out
        return out

    def section_poly(self, f: Poly) -> BivarPoly:
        out = BivarPoly.zero(self.ff)
        for i, c in enumerate(f.coeffs):
            if c != self.fp.zero:
                out = out + self.section(c).scale_t_poly(Poly.x(self.ff) ** i)
        return out

    def expand(self, g: BivarPoly, ndigits=None):
        """First digits of g as a list of Poly over F_p (in t)."""
        ndigits = self.prec if ndigits is None else ndigits
        digits = []
        cur = g
        for _ in range(ndigits):
            a = reduce_mod_place(cur, self.fp)
            digits.append(a)
            if not a.is_zero():
                cur = cur - self.section_poly(a)
            cur = cur.exact_div_theta_only(self.pth)
        return digits


# ---------------------------------------------------------------------------
# Lattice bases (global algorithm)
# ---------------------------------------------------------------------------


class LatticeBasis:
    """A free lattice inside a motive, as a change of basis from the original.

    basis_j = (1/wden) * sum_i wnum[i][j] e_i with wden a theta-polynomial
    supported on the bad places; phi_num/phi_den is the matrix of
    (t-theta)^h tau_M in this basis.  phi_den = 1 exactly for models.
    """

    __slots__ = ("motive", "wnum", "wden", "winv_num", "winv_den", "phi_num", "phi_den")

    def __init__(self, motive, wnum, wden, winv_num, winv_den, phi_num, phi_den):
        self.motive = motive
        self.wnum = wnum
        self.wden = wden
        self.winv_num = winv_num
        self.winv_den = winv_den
        self.phi_num = phi_num
        self.phi_den = phi_den

    @staticmethod
    def identity(motive: Motive) -> "LatticeBasis":
        ff = motive.ff
        r = motive.rank
        eye = [
            [BivarPoly.one(ff) if i == j else BivarPoly.zero(ff) for j in range(r)]
            for i in range(r)
        ]
        one = Poly.one(ff)
        return LatticeBasis(
            motive,
            eye,
            one,
            [list(row) for row in eye],
            one,
            [list(row) for row in motive.phi],
            one,
        )

    @property
    def rank(self):
        return self.motive.rank

    def is_model(self):
        return self.phi_den.is_one()

    def discriminant(self) -> PolyFrac:
        """Discriminant of this basis (monic numerator; fraction for non-models)."""
        d = det_bivar(self.phi_num)
        _, cof = t_minus_theta_split(d)
        return PolyFrac(cof.as_theta_poly().monic(), self.phi_den**self.rank)

    def disc_valuation(self, pth: Poly) -> int:
        fr = self.discriminant()
        return _val_p(fr.num, pth) - _val_p(fr.den, pth)

    def as_motive(self) -> Motive:
        """The motive presented in this basis (models only)."""
        if not self.is_model():
            raise ModelError("basis does not span a model")
        return Motive(
            self.motive.ff, self.phi_num, self.motive.h, name=self.motive.name,
            validate=False,
        )

    def check_consistency(self):
        """W * Winv equals the identity (up to the tracked denominators)."""
        ff = self.motive.ff
        prod = _mat_mul(self.wnum, self.winv_num)
        scale = BivarPoly.from_theta_poly(self.wden * self.winv_den)
        r = self.rank
        for i in range(r):
            for j in range(r):
                want = scale if i == j else BivarPoly.zero(ff)
                if prod[i][j] != want:
                    raise ModelError("inconsistent basis inverse")
        # recompute phi from scratch and compare
        num = _mat_mul(
            _mat_mul(self.winv_num, [list(row) for row in self.motive.phi]),
            [[e.tau_theta() for e in row] for row in self.wnum],
        )
        den = self.winv_den * _tau_theta_poly(self.wden)
        lhs_den = BivarPoly.from_theta_poly(self.phi_den)
        rhs_den = BivarPoly.from_theta_poly(den)
        for i in range(r):
            for j in range(r):
                if self.phi_num[i][j] * rhs_den != num[i][j] * lhs_den:
                    raise ModelError("inconsistent tau-matrix")


def _val_p(f: Poly, pth: Poly) -> int:
    if f.is_zero():
        raise ModelError("valuation of zero")
    v = 0
    while True:
        q, r = f.divmod(pth)
        if not r.is_zero():
            return v
        f = q
        v += 1


def _div_count(e: BivarPoly, pth: Poly, cap: int) -> int:
    k = 0
    while k < cap:
        try:
            e = e.exact_div_theta_only(pth)
        except ArithmeticError:
            return k
        k += 1
    return k


def _mat_mul(A, B):
    n, kk = len(A), len(B)
    m = len(B[0])
    ff = A[0][0].ff
    out = [[BivarPoly.zero(ff) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for l in range(kk):
            a = A[i][l]
            if a.is_zero():
                continue
            for j in range(m):
                if not B[l][j].is_zero():
                    out[i][j] = out[i][j] + a * B[l][j]
    return out


def _tau_theta_poly(g: Poly) -> Poly:
    """tau_theta on a theta-polynomial equals g(theta^q) = g(theta)^q."""
    return g.stretch(g.ff.q)


def _reduce_fraction(num, den: Poly):
    """Divide a common theta-only content out of matrix/denominator."""
    if den.is_one():
        return num, den
    for pi, mi in factor(den):
        k = mi
        for row in num:
            for e in row:
                if k == 0:
                    break
                if not e.is_zero():
                    k = min(k, _div_count(e, pi, k))
            if k == 0:
                break
        if k:
            num = [[e.exact_div_theta_only(pi**k) for e in row] for row in num]
            den = den.exact_div(pi**k)
    return num, den.monic()


def _apply_step(basis: LatticeBasis, pth: Poly, cmat, cinv, scale_exp) -> LatticeBasis:
    """New basis: columns of W * cmat, column j then scaled by pth^scale_exp[j].

    cmat, cinv are exact mutual inverses over F_q[t, theta] (SL lifts).
    """
    ff = basis.motive.ff
    r = basis.rank
    q = ff.q
    # -- W update
    m = max(0, -min(scale_exp))
    wnum = _mat_mul(basis.wnum, cmat)
    for j in range(r):
        s = scale_exp[j] + m
        if s:
            sb = BivarPoly.from_theta_poly(pth**s)
            for i in range(r):
                wnum[i][j] = wnum[i][j] * sb
    wden = basis.wden * pth**m
    wnum, wden = _reduce_fraction(wnum, wden)
    # -- Winv update: rows scaled by pth^(-scale_exp)
    mp = max(0, max(scale_exp))
    winv_num = _mat_mul(cinv, basis.winv_num)
    for i in range(r):
        s = mp - scale_exp[i]
        if s:
            sb = BivarPoly.from_theta_poly(pth**s)
            for j in range(r):
                winv_num[i][j] = winv_num[i][j] * sb
    winv_den = basis.winv_den * pth**mp
    winv_num, winv_den = _reduce_fraction(winv_num, winv_den)
    # -- phi update: D^-1 Cinv (phi_num/phi_den) tau(C) tau(D)
    phi = _mat_mul(_mat_mul(cinv, basis.phi_num), [[e.tau_theta() for e in row] for row in cmat])
    exps = [[q * scale_exp[j] - scale_exp[i] for j in range(r)] for i in range(r)]
    s0 = max(0, -min(min(row) for row in exps))
    for i in range(r):
        for j in range(r):
            s = exps[i][j] + s0
            if s:
                phi[i][j] = phi[i][j] * BivarPoly.from_theta_poly(pth**s)
    phi_den = basis.phi_den * pth**s0
    phi, phi_den = _reduce_fraction(phi, phi_den)
    return LatticeBasis(basis.motive, wnum, wden, winv_num, winv_den, phi, phi_den)


def _kernel_transform(G, pth: Poly, ff: Field, ndigits: int, expander=None):
    """Digit-expand the integral matrix G at pth and return the semilinear
    kernel data: (kernel indices, cmat, cinv) with exact SL lifts."""
    r = len(G)
    exp = expander or TeichExpander(ff, pth, ndigits)
    fp = exp.fp
    T = [[None] * r for _ in range(r * ndigits)]
    for kcol in range(r):
        for krow in range(r):
            digits = exp.expand(G[krow][kcol], ndigits)
            for w in range(ndigits):
                T[w * r + krow][kcol] = digits[w]
    cols, zero_idx, sd = semilinear_kernel(T, fp)
    twist_lift = lambda lam: lift_from_place(lam.map_coeffs(fp.frob_inv), ff)
    eye = [
        [BivarPoly.one(ff) if i == j else BivarPoly.zero(ff) for j in range(r)]
        for i in range(r)
    ]
    cmat = apply_col_ops(eye, sd.v_ops, twist_lift)
    cinv = apply_col_ops(eye, sd.v_ops, twist_lift, invert=True)
    return zero_idx, cmat, cinv


def saturation_step(basis: LatticeBasis, pth: Poly):
    """One enlargement N_i -> N_{i+1} at the theta-place pth.

    Returns (new basis, kernel rank); kernel rank 0 means stationary.
    """
    if not basis.is_model():
        raise ModelError("saturation step needs a model")
    ff = basis.motive.ff
    q = ff.q
    zero_idx, cmat, cinv = _kernel_transform(basis.phi_num, pth, ff, q)
    if not zero_idx:
        return basis, 0
    scale = [-1 if j in zero_idx else 0 for j in range(basis.rank)]
    return _apply_step(basis, pth, cmat, cinv, scale), len(zero_idx)


def trim_step(basis: LatticeBasis, pth: Poly):
    """One shrink L_i -> L_{i+1} at pth (input: pth * basis is a model).

    The kernel is taken in p^(1-q) L / L, i.e. on the first q-1 digit layers
    of p^(q-1) * phi.  Returns (new basis, kernel rank); kernel rank equal
    to the rank means stationary (the lattice did not change).
    """
    ff = basis.motive.ff
    q = ff.q
    r = basis.rank
    # G = pth^(q-1) * phi, an integral matrix
    k = _val_p(basis.phi_den, pth)
    if k > q - 1 or not basis.phi_den.exact_div(pth**k).is_one():
        raise ModelError("trim step: pth * basis is not a model")
    G = [
        [e * BivarPoly.from_theta_poly(pth ** (q - 1 - k)) for e in row]
        for row in basis.phi_num
    ]
    zero_idx, cmat, cinv = _kernel_transform(G, pth, ff, q - 1)
    if len(zero_idx) == r:
        return basis, r
    scale = [0 if j in zero_idx else 1 for j in range(r)]
    return _apply_step(basis, pth, cmat, cinv, scale), len(zero_idx)


def bad_places(source):
    """Factor the lattice discriminant: list of (theta-place, multiplicity)."""
    if isinstance(source, Motive):
        delta, _ = source.lattice_discriminant()
    else:
        fr = source.discriminant()
        if not fr.is_poly():
            raise ModelError("discriminant of a non-model")
        delta = fr.num
    if delta.degree() < 1:
        return []
    return factor(delta)


def maximal_model_global(M: Motive):
    """Basis of the maximal model and its discriminant (Theorem: it exists,
    is unique, and is reached within the stated iteration bounds)."""
    basis = LatticeBasis.identity(M)
    if M.rank == 0:
        return basis, Poly.one(M.ff)
    q = M.ff.q
    for pth, n_p in bad_places(M):
        # saturation to stationarity; bounded by floor(n_p / (q-1))
        bound = n_p // (q - 1)
        steps = 0
        while True:
            v_before = basis.disc_valuation(pth)
            nb, klen = saturation_step(basis, pth)
            if klen == 0:
                break
            steps += 1
            if steps > bound:
                raise ModelError("saturation exceeded the iteration bound")
            v_after = nb.disc_valuation(pth)
            if v_after != v_before - (q - 1) * klen:
                raise ModelError("discriminant ledger violated in saturation")
            basis = nb
        # L_0 = pth^(-1) * N_infty
        basis = _apply_step(
            basis, pth, _eye_biv(M.ff, M.rank), _eye_biv(M.ff, M.rank), [-1] * M.rank
        )
        # trimming to stationarity; at most rank steps change the lattice
        steps = 0
        while True:
            v_before = basis.disc_valuation(pth)
            nb, klen = trim_step(basis, pth)
            if klen == M.rank:
                break
            steps += 1
            if steps > M.rank:
                raise ModelError("trimming exceeded the iteration bound")
            v_after = nb.disc_valuation(pth)
            if v_after != v_before + (q - 1) * (M.rank - klen):
                raise ModelError("discriminant ledger violated in trimming")
            basis = nb
    if not basis.is_model():
        raise ModelError("result is not a model")
    fr = basis.discriminant()
    return basis, fr.num.monic()


def _eye_biv(ff, r):
    return [
        [BivarPoly.one(ff) if i == j else BivarPoly.zero(ff) for j in range(r)]
        for i in range(r)
    ]


# ---------------------------------------------------------------------------
# The local algorithm: truncated F_p[t][[u]], u = p(theta)
# ---------------------------------------------------------------------------


class _PrecisionExhausted(Exception):
    pass


class USeries:
    """Element of F_p[t][u]/u^W: a list of F_p[t]-digits, constant first.

    An element is invertible iff its digit-0 part is a unit of F_p[t]; tau
    sends digit w to digit q*w with the q-Frobenius applied coefficientwise.
    """

    __slots__ = ("fp", "W", "digits")

    def __init__(self, fp, W, digits):
        self.fp = fp
        self.W = W
        ds = list(digits[:W])
        while len(ds) < W:
            ds.append(Poly.zero(fp))
        self.digits = ds

    @staticmethod
    def zero(fp, W):
        return USeries(fp, W, [])

    @staticmethod
    def one(fp, W):
        return USeries(fp, W, [Poly.one(fp)])

    @staticmethod
    def from_poly(f: Poly, W):
        return USeries(f.ff, W, [f])

    def is_zero(self):
        return all(d.is_zero() for d in self.digits)

    def __add__(self, other):
        return USeries(self.fp, self.W, [a + b for a, b in zip(self.digits, other.digits)])

    def __neg__(self):
        return USeries(self.fp, self.W, [-a for a in self.digits])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        W = self.W
        out = [Poly.zero(self.fp) for _ in range(W)]
        for i, a in enumerate(self.digits):
            if a.is_zero():
                continue
            for j, b in enumerate(other.digits):
                if i + j >= W:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return USeries(self.fp, W, out)

    def tau(self):
        out = [Poly.zero(self.fp) for _ in range(self.W)]
        for w, a in enumerate(self.digits):
            if w * self.fp.base.q >= self.W:
                break
            if not a.is_zero():
                out[w * self.fp.base.q] = a.map_coeffs(self.fp.frob)
        return USeries(self.fp, self.W, out)

    def shift(self, k):
        """Multiply by u^k; negative k requires the low digits to vanish."""
        if k == 0:
            return self
        if k > 0:
            return USeries(self.fp, self.W, [Poly.zero(self.fp)] * k + self.digits)
        k = -k
        if any(not d.is_zero() for d in self.digits[:k]):
            raise _PrecisionExhausted("inexact u-division (model invariant failed)")
        return USeries(self.fp, self.W, self.digits[k:])

    def valuation(self):
        for w, d in enumerate(self.digits):
            if not d.is_zero():
                return w
        return self.W

    def mod_u(self) -> Poly:
        return self.digits[0]

    def __eq__(self, other):
        return (
            isinstance(other, USeries)
            and self.W == other.W
            and all(a == b for a, b in zip(self.digits, other.digits))
        )


def _useries_matmul(A, B):
    n, kk, m = len(A), len(B), len(B[0])
    fp, W = A[0][0].fp, A[0][0].W
    out = [[USeries.zero(fp, W) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for l in range(kk):
            a = A[i][l]
            if a.is_zero():
                continue
            for j in range(m):
                if not B[l][j].is_zero():
                    out[i][j] = out[i][j] + a * B[l][j]
    return out


class LocalLattice:
    """A lattice over truncated F_p[t][[u]], with its induced tau-matrix.

    The actual matrix of (t-theta)^h tau_M is u^(-shift) * phi; shift = 0
    for models.  ``valid`` is a conservative count of trustworthy u-digits.
    """

    __slots__ = ("motive", "pth", "fp", "W", "trans", "col_shift", "phi", "shift", "valid")

    def __init__(self, motive, pth, fp, W, trans, col_shift, phi, shift, valid):
        self.motive = motive
        self.pth = pth
        self.fp = fp
        self.W = W
        self.trans = trans
        self.col_shift = col_shift
        self.phi = phi
        self.shift = shift
        self.valid = valid

    def phi_mod_u(self):
        """Matrix of (t-theta)^h tau_M over F_p[t] (models only)."""
        if self.shift != 0:
            raise ModelError("lattice is not in model form")
        if self.valid < 1:
            raise _PrecisionExhausted("no valid digits left")
        return [[e.mod_u() for e in row] for row in self.phi]

    def disc_valuation(self):
        """u-valuation of det(phi) minus rank*shift."""
        r = self.motive.rank
        vec = berkowitz_vector(self.phi, USeries.one(self.fp, self.W))
        d = vec[r]
        if r % 2 == 1:
            d = -d
        val = d.valuation()
        if val >= self.valid:
            raise _PrecisionExhausted("determinant valuation beyond valid digits")
        return val - r * self.shift

    def basis_dump(self):
        """Column descriptions of the local basis change (digit lists)."""
        out = []
        for j in range(self.motive.rank):
            col = []
            for i in range(self.motive.rank):
                col.append([d.to_str("t") for d in self.trans[i][j].digits])
            out.append({"u_shift": self.col_shift[j], "column": col})
        return out


def _local_start(M: Motive, pth: Poly, W: int) -> LocalLattice:
    exp = TeichExpander(M.ff, pth, W)
    fp = exp.fp
    phi = [
        [USeries(fp, W, exp.expand(e, W)) for e in row]
        for row in M.phi
    ]
    r = M.rank
    eye = [
        [USeries.one(fp, W) if i == j else USeries.zero(fp, W) for j in range(r)]
        for i in range(r)
    ]
    return LocalLattice(M, pth, fp, W, eye, [0] * r, phi, 0, W)


def _local_kernel(lat: LocalLattice, ndigits: int):
    if lat.valid < ndigits:
        raise _PrecisionExhausted("not enough digits for the kernel matrix")
    r = lat.motive.rank
    T = [[None] * r for _ in range(r * ndigits)]
    for j in range(r):
        for i in range(r):
            for w in range(ndigits):
                T[w * r + i][j] = lat.phi[i][j].digits[w]
    cols, zero_idx, sd = semilinear_kernel(T, lat.fp)
    fp, W = lat.fp, lat.W
    twist_lift = lambda lam: USeries.from_poly(lam.map_coeffs(fp.frob_inv), W)
    eye = [
        [USeries.one(fp, W) if i == j else USeries.zero(fp, W) for j in range(r)]
        for i in range(r)
    ]
    cmat = apply_col_ops(eye, sd.v_ops, twist_lift)
    cinv = apply_col_ops(eye, sd.v_ops, twist_lift, invert=True)
    return zero_idx, cmat, cinv


def _local_apply(lat: LocalLattice, cmat, cinv, scale_exp, keep_shift):
    """trans <- trans * cmat * diag(u^scale); phi updated by conjugation."""
    q = lat.motive.ff.q
    r = lat.motive.rank
    trans = _useries_matmul(lat.trans, cmat)
    col_shift = list(lat.col_shift)
    for j in range(r):
        col_shift[j] += scale_exp[j]
    tau_c = [[e.tau() for e in row] for row in cmat]
    phi = _useries_matmul(_useries_matmul(cinv, lat.phi), tau_c)
    drop = 0
    for i in range(r):
        for j in range(r):
            k = q * scale_exp[j] - scale_exp[i]
            if k:
                phi[i][j] = phi[i][j].shift(k)
            drop = max(drop, -k)
    return LocalLattice(
        lat.motive, lat.pth, lat.fp, lat.W, trans, col_shift, phi,
        keep_shift, lat.valid - drop,
    )


def _run_local(M: Motive, pth: Poly, W: int):
    """One full pass of the local algorithm at working precision W.

    Returns (LocalLattice in model form, event signature list).
    """
    q = M.ff.q
    r = M.rank
    lat = _local_start(M, pth, W)
    events = []
    n_p = _val_p(M.lattice_discriminant()[0], pth)
    # saturation
    steps = 0
    while True:
        zero_idx, cmat, cinv = _local_kernel(lat, q)
        if not zero_idx:
            break
        steps += 1
        if steps > n_p // (q - 1):
            raise ModelError("saturation exceeded the iteration bound (local)")
        v_before = lat.disc_valuation()
        lat = _local_apply(lat, cmat, cinv, [-1 if j in zero_idx else 0 for j in range(r)], 0)
        v_after = lat.disc_valuation()
        if v_after != v_before - (q - 1) * len(zero_idx):
            raise _PrecisionExhausted("discriminant ledger failed (local saturation)")
        events.append(("sat", len(zero_idx)))
    # L_0 = p^{-1} N_infty: representation shift only
    lat = LocalLattice(
        M, pth, lat.fp, W, lat.trans, [c - 1 for c in lat.col_shift],
        lat.phi, q - 1, lat.valid,
    )
    steps = 0
    while True:
        zero_idx, cmat, cinv = _local_kernel(lat, q - 1)
        if len(zero_idx) == r:
            break
        steps += 1
        if steps > r:
            raise ModelError("trimming exceeded the iteration bound (local)")
        v_before = lat.disc_valuation()
        lat = _local_apply(lat, cmat, cinv, [0 if j in zero_idx else 1 for j in range(r)], q - 1)
        v_after = lat.disc_valuation()
        if v_after != v_before + (q - 1) * (r - len(zero_idx)):
            raise _PrecisionExhausted("discriminant ledger failed (local trimming)")
        events.append(("trim", len(zero_idx)))
    # back to model form: phi must be divisible by u^(q-1)
    phi = [[e.shift(-(q - 1)) for e in row] for row in lat.phi]
    lat = LocalLattice(
        M, pth, lat.fp, W, lat.trans, lat.col_shift, phi, 0, lat.valid - (q - 1)
    )
    if lat.valid < 1:
        raise _PrecisionExhausted("no certified digits after trimming")
    return lat, events


def maximal_model_local(M: Motive, pth: Poly, u_precision=None) -> LocalLattice:
    """Local maximal model at a theta-place, with a-posteriori verification.

    Runs at the requested precision (default: discriminant valuation + 1)
    and re-verifies at doubled precision; on disagreement the precision is
    doubled and the pass retried.
    """
    if M.rank == 0:
        raise ModelError("rank-0 motive has no local model data")
    delta, _ = M.lattice_discriminant()
    n_p = _val_p(delta, pth)
    W = u_precision or (n_p + 1)
    last = None
    for _ in range(8):
        try:
            lat1, ev1 = _run_local(M, pth, W)
            lat2, ev2 = _run_local(M, pth, 2 * W)
        except _PrecisionExhausted:
            W *= 2
            continue
        if ev1 == ev2 and lat1.phi_mod_u() == lat2.phi_mod_u():
            return lat2
        W *= 2
        last = (ev1, ev2)
    raise ModelError(f"local model did not stabilize under precision doubling: {last}")


# ---------------------------------------------------------------------------
# Local L-factors via twisted norms
# ---------------------------------------------------------------------------


class LocalFactor:
    """P_p(T) = sum_k c_k T^(d k), c_k in F_q(t); c_0 = 1.

    Coefficients are exact rational functions with denominators supported
    at p(t); the polynomial lies in 1 + T^d K[T^d].
    """

    __slots__ = ("pth", "d", "coeffs")

    def __init__(self, pth: Poly, coeffs):
        self.pth = pth
        self.d = pth.degree()
        self.coeffs = list(coeffs)

    def t_degree_bound(self):
        return (len(self.coeffs) - 1) * self.d

    def coeff_of_T(self, n) -> PolyFrac:
        ff = self.pth.ff
        if n % self.d:
            return PolyFrac(Poly.zero(ff))
        k = n // self.d
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return PolyFrac(Poly.zero(ff))

    def order_at_one(self) -> int:
        """Exact order of vanishing at T = 1 (substitute T = 1 + S)."""
        flat = [self.coeff_of_T(n) for n in range(self.d * (len(self.coeffs) - 1) + 1)]
        shifted = _compose_one_plus_s(flat)
        for m, c in enumerate(shifted):
            if not c.is_zero():
                return m
        return len(shifted)

    def __eq__(self, other):
        return (
            isinstance(other, LocalFactor)
            and self.pth == other.pth
            and self.coeffs == other.coeffs
        )

    def to_str(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(c.to_str("t"))
                continue
            tp = "T" if self.d * k == 1 else f"T^{self.d * k}"
            cs = c.to_str("t")
            if cs == "1":
                parts.append(tp)
            else:
                parts.append(f"({cs})*{tp}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return self.to_str()


def _phi_bar(source, pth: Poly, fp: ExtField):
    """Reduction mod p(theta) of the tau-matrix of the given lattice."""
    if isinstance(source, LocalLattice):
        if source.pth != pth:
            raise ModelError("local lattice is at a different place")
        return source.phi_mod_u(), source.motive
    if isinstance(source, LatticeBasis):
        if not source.is_model():
            raise ModelError("local factor needs a model")
        return (
            [[reduce_mod_place(e, fp) for e in row] for row in source.phi_num],
            source.motive,
        )
    if isinstance(source, Motive):
        return [[reduce_mod_place(e, fp) for e in row] for row in source.phi], source
    raise ModelError("unsupported source for a local factor")


def local_factor(source, pth: Poly) -> LocalFactor:
    """det(Id - T^d * N_phi / p(t)^h) over the reduction at the theta-place p.

    N_phi is the twisted norm phi_bar * tau(phi_bar) * ... * tau^(d-1)(phi_bar)
    (tau = q-Frobenius on F_p, t fixed); the determinant coefficients must be
    Frobenius-invariant, i.e. descend to F_q[t].
    """
    if isinstance(source, Motive) and source.rank == 0:
        return LocalFactor(pth, [PolyFrac(Poly.one(pth.ff))])
    ff = pth.ff
    fp = ExtField(ff, pth)
    phib, motive = _phi_bar(source, pth, fp)
    d = pth.degree()
    norm = [row[:] for row in phib]
    conj = phib
    for _ in range(d - 1):
        conj = [[e.map_coeffs(fp.frob) for e in row] for row in conj]
        norm = [
            [
                sum((norm[i][l] * conj[l][j] for l in range(len(norm))), Poly.zero(fp))
                for j in range(len(norm))
            ]
            for i in range(len(norm))
        ]
    vec = berkowitz_vector(norm, Poly.one(fp))  # det(1 - X*norm) coefficients
    h = motive.h
    coeffs = []
    for k, vk in enumerate(vec):
        down = _descend(vk, ff)
        if h >= 0:
            coeffs.append(PolyFrac(down, pth**(h * k)))
        else:
            coeffs.append(PolyFrac(down * pth**(-h * k)))
    return LocalFactor(pth, coeffs)


def _descend(f: Poly, ff: Field) -> Poly:
    """Assert Frobenius invariance of an F_p[t]-polynomial; return it over F_q."""
    out = []
    for c in f.coeffs:
        if any(x != ff.zero for x in c[1:]):
            raise ModelError("local factor does not descend to F_q[t] (convention bug)")
        out.append(c[0])
    return Poly(ff, out)


def _compose_one_plus_s(coeffs):
    """Coefficients of P(1 + S) for a coefficient list of P (any ring with
    dunder arithmetic); Horner in the substituted variable."""
    if not coeffs:
        return []
    acc = [coeffs[-1]]
    zero = coeffs[-1] - coeffs[-1]
    for c in reversed(coeffs[:-1]):
        nxt = [zero] * (len(acc) + 1)
        for i, a in enumerate(acc):
            nxt[i] = nxt[i] + a
            nxt[i + 1] = nxt[i + 1] + a
        nxt[0] = nxt[0] + c
        acc = nxt
    return acc
