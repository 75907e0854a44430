"""t-motives presented by matrices.

A ``Motive`` stores the matrix ``phi`` of (t - theta)^h * tau_M in the
working basis (column convention: the image of basis vector e_j has its
coordinates in column j), with h the minimal integer making the entries
polynomial and not all divisible by (t - theta).  Effective motives are
exactly those with h <= 0.
"""

from __future__ import annotations

from .bivar import BivarPoly, det_bivar, t_minus_theta_split
from .charpoly import det as ring_det
from .ffield import Field, Poly


class MotiveError(ValueError):
    pass


class Motive:
    __slots__ = ("ff", "rank", "phi", "h", "denom", "name", "d_t", "d_theta")

    def __init__(self, ff: Field, phi, h: int, denom: Poly = None, name=None, validate=True):
        self.ff = ff
        self.rank = len(phi)
        self.phi = tuple(tuple(row) for row in phi)
        if any(len(row) != self.rank for row in self.phi):
            raise MotiveError("matrix is not square")
        self.h = h
        self.denom = denom if denom is not None else Poly.one(ff)
        self.name = name
        self.d_t = max((e.deg_t() for row in self.phi for e in row), default=-1)
        self.d_theta = max((e.deg_theta() for row in self.phi for e in row), default=-1)
        if validate and self.rank > 0:
            self._validate()

    def _validate(self):
        d = det_bivar([list(row) for row in self.phi])
        if d.is_zero():
            raise MotiveError("not a t-motive matrix: determinant vanishes")
        k, cof = t_minus_theta_split(d)
        if not cof.is_theta_only():
            raise MotiveError(
                "not a t-motive matrix: det is not unit * (t-theta)^k * Delta(theta)"
            )

    # -- basic data ----------------------------------------------------------

    def is_effective(self):
        return self.h <= 0

    def lattice_discriminant(self):
        """(Delta monic in theta, k) with det(tau-matrix) = scalar*(t-theta)^k*Delta.

        k is reported for the motive's own tau (presentation-invariant):
        det of the stored phi has valuation k + rank*h.
        """
        if self.rank == 0:
            return Poly.one(self.ff), 0
        d = det_bivar([list(row) for row in self.phi])
        k, cof = t_minus_theta_split(d)
        delta = cof.as_theta_poly()
        return delta.monic(), k - self.rank * self.h

    def twist(self, h_extra: int) -> "Motive":
        """The twist (M, (t-theta)^(-h_extra) tau_M); same matrix, shifted h."""
        return Motive(self.ff, self.phi, self.h + h_extra, self.denom, validate=False)

    def __eq__(self, other):
        return (
            isinstance(other, Motive)
            and self.ff == other.ff
            and self.phi == other.phi
            and self.h == other.h
        )

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return f"<Motive{nm} rank {self.rank}, h={self.h}>"


def from_matrix(entries, h: int = 0, ff: Field = None, name=None) -> Motive:
    """Build a motive from a matrix of polynomials or fractions.

    ``entries`` is a square matrix whose entries are BivarPoly, or pairs
    (num, den) of BivarPoly where den is supported on powers of (t - theta)
    and polynomials in theta only.  ``h`` declares that the given matrix
    represents (t - theta)^h * tau_M.  Theta-denominators are cleared into
    the basis (replacing the matrix by f^(q-1) * matrix); the output h is
    normalized minimal.
    """
    rank = len(entries)
    if rank == 0:
        if ff is None:
            raise MotiveError("rank-0 motive needs an explicit field")
        return Motive(ff, (), 0, name=name)
    first = entries[0][0]
    if isinstance(first, tuple):
        ff = ff or first[0].ff
    else:
        ff = ff or first.ff
    one = BivarPoly.one(ff)
    # canonicalize entries to (num, k, g) = num / ((t-theta)^k * g(theta))
    frac = [[None] * rank for _ in range(rank)]
    theta_dens = []
    for i in range(rank):
        if len(entries[i]) != rank:
            raise MotiveError("matrix is not square")
        for j in range(rank):
            ent = entries[i][j]
            if isinstance(ent, tuple):
                num, den = ent
                if den.is_zero():
                    raise MotiveError("zero denominator")
                k, cof = t_minus_theta_split(den)
                if not cof.is_theta_only():
                    raise MotiveError(
                        "denominators must be powers of (t-theta) times theta-polynomials"
                    )
                g = cof.as_theta_poly()
                lc = g.leading()
                g = g.monic()
                num = num.scale(ff.inv(lc))
            else:
                num, k, g = ent, 0, Poly.one(ff)
            frac[i][j] = (num, k, g)
            if g.degree() >= 1:
                theta_dens.append(g)
    # Step-1 scaling: f = lcm of theta-denominators, basis f*b, matrix f^(q-1)*Phi
    f = Poly.one(ff)
    for g in theta_dens:
        f = (f * g).exact_div(f.gcd(g))
    scale = BivarPoly.from_theta_poly(f) ** (ff.q - 1)
    kmax = max(k for row in frac for (_, k, _) in row)
    mat = [[None] * rank for _ in range(rank)]
    tm = BivarPoly.t_minus_theta(ff)
    for i in range(rank):
        for j in range(rank):
            num, k, g = frac[i][j]
            ent = num * scale.exact_div_theta_only(g) * tm ** (kmax - k)
            mat[i][j] = ent
    h_out = h + kmax
    # minimality: strip common (t-theta) factors
    while True:
        if all(e.is_zero() for row in mat for e in row):
            raise MotiveError("zero matrix is not a t-motive")
        quots = []
        ok = True
        for row in mat:
            for e in row:
                if e.is_zero():
                    quots.append(e)
                    continue
                kk, _ = t_minus_theta_split(e)
                if kk == 0:
                    ok = False
                    break
                quots.append(_exact_div_tm(e, tm))
            if not ok:
                break
        if not ok:
            break
        mat = [quots[i * rank : (i + 1) * rank] for i in range(rank)]
        h_out -= 1
    return Motive(ff, mat, h_out, denom=f, name=name)


def _exact_div_tm(e: BivarPoly, tm: BivarPoly) -> BivarPoly:
    q, r = e.divmod_theta(-tm)  # theta - t is monic in theta
    assert r.is_zero()
    return -q


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def carlitz(ff: Field) -> Motive:
    """Rank 1, tau e = (t - theta) e."""
    return from_matrix([[BivarPoly.t_minus_theta(ff)]], name="carlitz")


def dual(M: Motive) -> Motive:
    """Dual motive: tau-matrix is the inverse transpose."""
    if M.rank == 0:
        return M
    ff = M.ff
    d = det_bivar([list(row) for row in M.phi])
    k, cof = t_minus_theta_split(d)
    adj = _adjugate(M.phi, ff)
    # tau_M dual matrix: (t-theta)^h * adj(phi)^T / det(phi)
    # presented to from_matrix as matrix of (t-theta)^0 * tau with fractions
    den = d
    entries = [
        [(adj[j][i], den) for j in range(M.rank)] for i in range(M.rank)
    ]
    name = None
    if M.name == "carlitz":
        name = "carlitz dual"
    return from_matrix(entries, h=-M.h, name=name)


def _adjugate(phi, ff):
    r = len(phi)
    if r == 1:
        return [[BivarPoly.one(ff)]]
    adj = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            minor = [
                [phi[a][b] for b in range(r) if b != j]
                for a in range(r)
                if a != i
            ]
            cof = ring_det(minor, BivarPoly.one(ff))
            if (i + j) % 2 == 1:
                cof = -cof
            adj[j][i] = cof
    return adj


def tensor(M1: Motive, M2: Motive) -> Motive:
    """Tensor product: Kronecker product of the tau-matrices."""
    if M1.ff != M2.ff:
        raise MotiveError("field mismatch in tensor product")
    r1, r2 = M1.rank, M2.rank
    ent = [
        [
            M1.phi[i1][j1] * M2.phi[i2][j2]
            for j1 in range(r1)
            for j2 in range(r2)
        ]
        for i1 in range(r1)
        for i2 in range(r2)
    ]
    return from_matrix(ent, h=M1.h + M2.h)


def tensor_power(M: Motive, k: int) -> Motive:
    if k < 1:
        raise MotiveError("tensor power needs k >= 1")
    out = M
    for _ in range(k - 1):
        out = tensor(out, M)
    return out


def twist(M: Motive, h_extra: int) -> Motive:
    return M.twist(h_extra)
