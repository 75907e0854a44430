"""L-series of t-motives at finite and infinite places.

The series is computed as the dual characteristic polynomial det(1 - T*A)
of the finite matrix A giving the action of the dual map on a nucleus
spanned by theta-powers: entry ((j, s'), (i, s)) is the coefficient of
theta^(q s' + q - 1 - s) in Q_ij = rho * b_ij, with rho an explicit product
making the dual map stable on the span.  At the infinite place the operator
is scaled by t^(h - d_t) and the variable substituted back at the end.
"""

from __future__ import annotations

from fractions import Fraction

from .completion import (
    LocalElement,
    LocalRing,
    LocalThetaPoly,
    Place,
    det_one_minus_t_local,
    iota_embed,
    iota_infinite,
)
from .ffield import Poly, PolyFrac, irreducibles
from .model import (
    LatticeBasis,
    LocalFactor,
    LocalLattice,
    _compose_one_plus_s,
    bad_places,
    local_factor,
    maximal_model_local,
)
from .motive import Motive


class LSeriesError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Nucleus parameters
# ---------------------------------------------------------------------------


def h_sequence(h: int, c: int, q: int):
    """h_0 = h, h_{i+1} = ceil(h_i / q); length c+1; signed h supported."""
    out = [h]
    for _ in range(c):
        out.append(-((-out[-1]) // q))
    return out


def kw_integers(h_c: int, q: int, d: int):
    """The exponent data (k_0..k_{d-1}, w_0..w_{d-1}); each w_i in [0, q-1]."""
    if d < 1:
        raise LSeriesError("place degree must be >= 1")
    K = q**d - 1

    def ceil_div(a, b):
        return -((-a) // b)

    ks = [ceil_div(h_c, K)]
    for i in range(1, d):
        ks.append(ceil_div(q ** (d - i) * h_c, K))
    ws = []
    for i in range(d):
        knext = ks[(i + 1) % d]
        w = q * knext - ks[i] - (h_c if i == 0 else 0)
        ws.append(w)
    if any(w < 0 or w > q - 1 for w in ws):
        raise LSeriesError("exponent data out of range (internal error)")
    return ks, ws


class NucleusParams:
    """Sizes and exponents for one L-series run."""

    __slots__ = (
        "place", "prec", "q", "r", "d_t", "d_theta", "h",
        "c", "N", "h_seq", "ks", "ws", "s_max", "dim", "k_scale",
    )

    def __init__(self, place, prec, q, r, d_t, d_theta, h, c, s_max, ks=None, ws=None):
        self.place = place
        self.prec = prec
        self.q = q
        self.r = r
        self.d_t = d_t
        self.d_theta = d_theta
        self.h = h
        self.c = c
        self.N = q**c
        self.h_seq = h_sequence(h, c, q)
        self.ks = ks
        self.ws = ws
        self.s_max = s_max
        self.dim = r * (s_max + 1)
        self.k_scale = (d_t - h) if place.is_infinite else None


def choose_c(place: Place, prec: int, r: int, d_t: int, d_theta: int, h: int,
             s_max_override=None) -> NucleusParams:
    """Smallest c meeting the precision criterion, and the nucleus size."""
    if prec < 1:
        raise LSeriesError("precision must be >= 1")
    q = place.ff.q
    d_theta = max(d_theta, 0)
    d_t = max(d_t, 0)
    if place.is_infinite:
        k = r * (d_t - h)
        c = 0
        dth = Fraction(d_theta, q - 1)
        while Fraction(q**c) - k * (c + dth) < prec:
            c += 1
        s_max = c + d_theta // (q - 1)
        params = NucleusParams(place, prec, q, r, d_t, d_theta, h, c, s_max)
    else:
        d = place.degree
        c = 0
        while c % d or q**c < prec:
            c += 1
        # ceil for the theta-degree part
        s_max = -((-d_theta) // (q - 1)) + 2 * d + c
        params = NucleusParams(place, prec, q, r, d_t, d_theta, h, c, s_max)
        ks, ws = kw_integers(params.h_seq[c], q, d)
        params.ks, params.ws = ks, ws
    if s_max_override is not None:
        params.s_max = s_max_override
        params.dim = r * (s_max_override + 1)
    return params


# ---------------------------------------------------------------------------
# The rho products
# ---------------------------------------------------------------------------


def _theta_linear(ring: LocalRing, const: LocalElement) -> LocalThetaPoly:
    """const - theta."""
    return LocalThetaPoly.from_coeffs([const, -(ring.one())])


def rho_finite(params: NucleusParams, ring: LocalRing) -> LocalThetaPoly:
    """v(theta)^(q-1) * prod (a^(q^i) - theta)^(w_i)
    * prod ((a + u)^(q^i) - theta)^(q h_{i+1} - h_i), in (F_v[u]/u^N)[theta]."""
    if ring.place.is_infinite:
        raise LSeriesError("rho_finite needs a finite place")
    q = params.q
    fv = ring.fv
    v = ring.place.v
    # v(theta): coefficients are in F_q, constant in u
    vtheta = LocalThetaPoly.from_coeffs([ring.from_base(cc) for cc in v.coeffs])
    rho = vtheta.pow(q - 1)
    apow = ring.a
    for i in range(ring.place.degree):
        w = params.ws[i]
        if w:
            rho = rho.mul(_theta_linear(ring, ring.from_fv(apow)).pow(w))
        apow = fv.frob(apow)
    apow = ring.a
    for i in range(params.c):
        e = q * params.h_seq[i + 1] - params.h_seq[i]
        if e:
            tq = ring.from_fv(apow) + ring.monomial_u(q**i)
            rho = rho.mul(_theta_linear(ring, tq).pow(e))
        apow = fv.frob(apow)
    d = ring.place.degree
    if rho.deg_theta() > (q - 1) * (2 * d + params.c):
        raise LSeriesError("rho exceeds its degree bound (internal error)")
    return rho


def rho_infinite(params: NucleusParams, ring: LocalRing) -> LocalThetaPoly:
    """prod_{i >= 0} (1 - theta u^(q^i))^(q h_{i+1} - h_i), truncated at
    q^i >= N (later factors are 1 mod u^N); u = 1/t."""
    if not ring.place.is_infinite:
        raise LSeriesError("rho_infinite needs the infinite place")
    q = params.q
    rho = LocalThetaPoly.one(ring)
    for i in range(params.c):
        if q**i >= ring.N:
            break
        e = q * params.h_seq[i + 1] - params.h_seq[i]
        if e:
            fac = LocalThetaPoly.from_coeffs([ring.one(), -ring.monomial_u(q**i)])
            rho = rho.mul(fac.pow(e))
    return rho


# ---------------------------------------------------------------------------
# Dual-matrix assembly and the characteristic polynomial
# ---------------------------------------------------------------------------


def assemble_dual_matrix(motive: Motive, params: NucleusParams, ring: LocalRing):
    """Matrix of the dual map on the nucleus; size r*(s_max+1).

    Row (j, s'), column (i, s): the theta-coefficient at exponent
    q*s' + q - 1 - s of Q_ij = rho * b_ij (entries pre-scaled by t^(-d_t)
    at the infinite place).
    """
    q = params.q
    r = motive.rank
    sm = params.s_max
    if ring.place.is_infinite:
        rho = rho_infinite(params, ring)
        bhat = [
            [LocalThetaPoly.from_bivar_infinite(e, params.d_t, ring) for e in row]
            for row in motive.phi
        ]
    else:
        rho = rho_finite(params, ring)
        bhat = [
            [LocalThetaPoly.from_bivar_finite(e, ring) for e in row]
            for row in motive.phi
        ]
    n = r * (sm + 1)
    zero = ring.zero()
    mat = [[zero] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            Q = rho.mul(bhat[i][j])
            for sp in range(sm + 1):
                row = j * (sm + 1) + sp
                base = q * sp + q - 1
                for s in range(sm + 1):
                    e = base - s
                    if 0 <= e <= Q.deg_theta():
                        mat[row][i * (sm + 1) + s] = Q.theta_coeff(e)
    return mat


def dual_char_poly(mat) -> list:
    """det(1 - T * mat) over the local ring; division-free (Berkowitz)."""
    return det_one_minus_t_local(mat)


# ---------------------------------------------------------------------------
# The L-series record
# ---------------------------------------------------------------------------


class LSeries:
    """Certified truncation of L_v(M, T).

    At a finite place a_n = coeffs[n] modulo v^prec.  At the infinite place
    the coefficients may carry a bounded pole (they live in t^(n(d_t-h)) O_v):
    a_n = u^(-pole[n]) * coeffs[n] with coeffs[n] integral.  ``certified[n]``
    (<= prec) counts the certified u-digits of coeffs[n].
    """

    __slots__ = ("place", "prec", "c", "nucleus_dim", "coeffs", "certified",
                 "pole", "recombined")

    def __init__(self, place, prec, c, nucleus_dim, coeffs, certified,
                 pole=None, recombined=False):
        self.place = place
        self.prec = prec
        self.c = c
        self.nucleus_dim = nucleus_dim
        self.coeffs = list(coeffs)
        self.certified = list(certified)
        self.pole = list(pole) if pole is not None else [0] * len(self.coeffs)
        self.recombined = recombined

    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, n) -> LocalElement:
        """The integral part; the coefficient itself is u^(-pole[n]) times it."""
        return self.coeffs[n]

    def valuations(self):
        """u-adic valuations of the coefficients (negative over a pole)."""
        from .completion import AtLeastN

        out = []
        for c, m in zip(self.coeffs, self.pole):
            v = c.valuation()
            out.append(v if isinstance(v, AtLeastN) else v - m)
        return out

    def dump(self):
        from .completion import AtLeastN

        vals = []
        for v in self.valuations():
            vals.append({"at_least": v.n} if isinstance(v, AtLeastN) else v)
        return {
            "place": repr(self.place),
            "prec": self.prec,
            "c": self.c,
            "nucleus_dim": self.nucleus_dim,
            "recombined": self.recombined,
            "certified": self.certified,
            "pole": self.pole,
            "coefficients": [c.dump() for c in self.coeffs],
            "valuations": vals,
        }


def _lseries_compute(motive: Motive, place: Place, prec: int, s_max_override=None,
                     min_n=None):
    """Nucleus parameters, internal ring, and raw det(1 - T Phi*) coefficients.

    ``min_n`` forces a larger internal precision q^c (used by the
    recombination pipeline, whose Laurent bookkeeping needs headroom)."""
    req = prec
    while True:
        params = choose_c(
            place, req, motive.rank, motive.d_t, motive.d_theta, motive.h,
            s_max_override=s_max_override,
        )
        if min_n is None or params.N >= min_n:
            break
        req += max(1, min_n - params.N)
    ring = LocalRing(place, max(params.N, 1))
    mat = assemble_dual_matrix(motive, params, ring)
    chi = dual_char_poly(mat)
    return params, ring, chi


def lseries(motive: Motive, place: Place, prec: int, s_max_override=None) -> LSeries:
    """Trace-formula L-series of the supplied basis (assumed maximal; use
    lseries_general to correct a non-maximal basis)."""
    if prec < 1:
        raise LSeriesError("precision request must be >= 1")
    if motive.rank == 0:
        ring = LocalRing(place, prec)
        return LSeries(place, prec, 0, 0, [ring.one()], [prec])
    params, ring, chi = _lseries_compute(motive, place, prec, s_max_override)
    if place.is_infinite:
        k = params.k_scale
        coeffs, certified, poles = [], [], []
        for n, x in enumerate(chi):
            if params.N - k * n <= 0:
                coeffs.append(ring.at_precision(prec).zero())
                certified.append(0)
                poles.append(0)
                continue
            pole, el, cert = _subst_laurent(x, k * n, prec)
            coeffs.append(el)
            certified.append(cert)
            poles.append(pole)
        return LSeries(place, prec, params.c, params.dim, coeffs, certified, poles)
    coeffs = [x.truncate(min(prec, ring.N)) for x in chi]
    return LSeries(place, prec, params.c, params.dim, coeffs, [prec] * len(coeffs))


def _subst_laurent(x: LocalElement, shift_down: int, prec: int):
    """Normal form of a = u^(-shift_down) * x: (pole, integral part, cert).

    The integral part is reported at prec digits; cert of them are
    certified.  Coefficients at the infinite place genuinely carry poles
    (they live in t^(n(d_t-h)) O_v), bounded by shift_down.
    """
    import numpy as np

    ring_out = x.ring.at_precision(prec)
    arr = np.zeros(x.arr.shape[:-1] + (prec,), dtype=x.arr.dtype)
    if shift_down <= 0:
        m = -shift_down
        take = max(0, min(x.ring.N, prec - m))
        if take > 0:
            arr[..., m : m + take] = x.arr[..., :take]
        return 0, ring_out._wrap(arr), min(prec, x.ring.N + m)
    val = x.valuation()
    v = min(val.n if hasattr(val, "n") else val, shift_down)
    pole = shift_down - v
    take = max(0, min(prec, x.ring.N - v))
    arr[..., :take] = x.arr[..., v : v + take]
    cert = min(prec, x.ring.N - shift_down + pole)
    return pole, ring_out._wrap(arr), cert


def _extend(x: LocalElement, prec: int) -> LocalElement:
    """Zero-pad an element into a higher-precision ring (digits beyond its
    own precision are uncertified and reported as zero)."""
    import numpy as np

    ring = x.ring.at_precision(prec)
    arr = np.zeros(x.arr.shape[:-1] + (prec,), dtype=x.arr.dtype)
    arr[..., : x.arr.shape[-1]] = x.arr
    return ring._wrap(arr)


# ---------------------------------------------------------------------------
# Exact rational T-series helpers (corrections and oracles)
# ---------------------------------------------------------------------------


def _frac_zero(ff):
    return PolyFrac(Poly.zero(ff))


def _frac_one(ff):
    return PolyFrac(Poly.one(ff))


def _series_mul(A, B, D, ff):
    out = [_frac_zero(ff) for _ in range(D + 1)]
    for i, a in enumerate(A):
        if i > D or a.is_zero():
            continue
        for j, b in enumerate(B):
            if i + j > D:
                break
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def _series_inv(A, D, ff):
    if A[0].is_zero():
        raise LSeriesError("series with vanishing constant term is not invertible")
    inv0 = A[0].inv()
    out = [inv0] + [_frac_zero(ff) for _ in range(D)]
    for n in range(1, D + 1):
        acc = _frac_zero(ff)
        for k in range(1, min(n, len(A) - 1) + 1):
            if not A[k].is_zero():
                acc = acc + A[k] * out[n - k]
        out[n] = -(inv0 * acc)
    return out


def _factor_series(lf: LocalFactor, D, ff):
    out = [_frac_zero(ff) for _ in range(D + 1)]
    for n in range(0, D + 1):
        out[n] = lf.coeff_of_T(n)
    return out


def embed_fraction(fr: PolyFrac, ring: LocalRing):
    """(element, down) with fr = u^(-down) * element; down = 0 at finite places."""
    if fr.is_zero():
        return ring.zero(), 0
    if ring.place.is_infinite:
        shift = fr.num.degree() - fr.den.degree()
        down = max(0, shift)
        # t^(-deg) f has integral image; combine with the denominator inverse
        num = iota_infinite(fr.num, fr.num.degree(), ring)
        den = iota_infinite(fr.den, fr.den.degree(), ring)
        el = num * den.inverse()
        if shift < 0:
            el = el.unit_shift(-shift)
        return el, down
    num = iota_embed(fr.num, ring)
    den = iota_embed(fr.den, ring)
    if den.valuation() != 0:
        raise LSeriesError("denominator is not a unit at this place")
    return num * den.inverse(), 0


# ---------------------------------------------------------------------------
# Recombination for non-maximal bases
# ---------------------------------------------------------------------------


def lseries_general(motive: Motive, place: Place, prec: int, s_max_override=None) -> LSeries:
    """L-series of the motive (maximal model), from any supplied basis.

    Runs the trace formula on the given basis, then multiplies, for each bad
    theta-place p distinct from the target place, the ratio of the local
    factor of the given basis by that of the local maximal model.
    """
    if motive.rank == 0:
        return lseries(motive, place, prec)
    bads = [
        (pth, m)
        for pth, m in bad_places(motive)
        if place.is_infinite or pth != place.v
    ]
    if not bads:
        return lseries(motive, place, prec, s_max_override=s_max_override)
    ff = motive.ff
    corr_deg = sum(motive.rank * pth.degree() for pth, _ in bads)
    nominal = choose_c(place, prec, motive.rank, motive.d_t, motive.d_theta, motive.h)
    D = nominal.dim + corr_deg
    corr = [_frac_one(ff)] + [_frac_zero(ff) for _ in range(D)]
    for pth, _ in bads:
        p_init = local_factor(motive, pth)
        p_max = local_factor(maximal_model_local(motive, pth), pth)
        corr = _series_mul(corr, _factor_series(p_init, D, ff), D, ff)
        corr = _series_mul(corr, _series_inv(_factor_series(p_max, D, ff), D, ff), D, ff)
    # shift budget (only the infinite place can force Laurent corrections)
    if place.is_infinite:
        budget = max(
            max(0, fr.num.degree() - fr.den.degree())
            for fr in corr
            if not fr.is_zero()
        )
    else:
        budget = 0
    params, ring, chi = _lseries_compute(
        motive, place, prec + budget, s_max_override=s_max_override,
        min_n=prec + budget,
    )
    corr_el = [embed_fraction(fr, ring) for fr in corr]
    ks_scale = params.k_scale or 0
    out = []
    certified = []
    poles = []
    for n in range(D + 1):
        kk = range(0, min(n, len(chi) - 1) + 1)
        # a_n = sum over k of chi_k * u^(-ks_scale*k) * corr_(n-k); sum the
        # terms over a common u-denominator, then divide once: individual
        # terms need not be integral, and at the infinite place even the sum
        # may keep a bounded pole
        totals = {k: ks_scale * k + corr_el[n - k][1] for k in kk}
        down_max = max(0, max(totals.values(), default=0))
        acc = ring.zero()
        for k in kk:
            el, _ = corr_el[n - k]
            term = chi[k] * el
            up = down_max - totals[k]
            if up:
                term = term.unit_shift(min(up, ring.N))
            acc = acc + term
        if ring.N - down_max <= 0:
            out.append(LocalRing(place, prec).zero())
            certified.append(0)
            poles.append(0)
            continue
        pole, el, cert = _subst_laurent(acc, down_max, prec)
        out.append(el)
        certified.append(cert)
        poles.append(pole)
    # the corrected series must be a T-polynomial modulo v^prec
    for n in range(params.dim + 1, D + 1):
        val = out[n].valuation()
        bad_tail = poles[n] > 0 or (
            not hasattr(val, "n") and val < min(prec, certified[n])
        )
        if bad_tail:
            raise LSeriesError(
                "recombined series has a nonvanishing tail (convention or precision bug)"
            )
    return LSeries(
        place, prec, params.c, params.dim,
        out[: params.dim + 1], certified[: params.dim + 1],
        poles[: params.dim + 1], recombined=True,
    )


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


class _Laurent:
    """u^(-down) * el over a LocalRing; the bookkeeping for running products
    at the infinite place, where intermediate coefficients may have poles."""

    __slots__ = ("el", "down")

    def __init__(self, el: LocalElement, down: int = 0):
        if down:
            val = el.valuation()
            v = val.n if hasattr(val, "n") else val
            s = min(v, down)
            if s:
                el = el.unit_shift(-s) if not el.is_zero() else el
                down -= s
            if el.is_zero():
                down = 0
        self.el = el
        self.down = down

    def __mul__(self, other):
        return _Laurent(self.el * other.el, self.down + other.down)

    def __add__(self, other):
        d = max(self.down, other.down)
        a = self.el.unit_shift(d - self.down) if d > self.down else self.el
        b = other.el.unit_shift(d - other.down) if d > other.down else other.el
        return _Laurent(a + b, d)

    def __neg__(self):
        return _Laurent(-self.el, self.down)

    def is_zero(self):
        return self.el.is_zero()

    def integral(self) -> LocalElement:
        if self.down:
            raise LSeriesError("coefficient is not integral at this place")
        return self.el


def _laurent_series_inv(f, D, ring):
    one = _Laurent(ring.one())
    if f[0].down or f[0].el != ring.one():
        raise LSeriesError("local factor does not start with 1 (internal error)")
    out = [one] + [_Laurent(ring.zero()) for _ in range(D)]
    for n in range(1, D + 1):
        acc = _Laurent(ring.zero())
        for k in range(1, min(n, len(f) - 1) + 1):
            if not f[k].is_zero():
                acc = acc + f[k] * out[n - k]
        out[n] = -acc
    return out


def _laurent_series_mul(A, B, D, ring):
    out = [_Laurent(ring.zero()) for _ in range(D + 1)]
    for i, a in enumerate(A):
        if i > D or a.is_zero():
            continue
        for j, b in enumerate(B):
            if i + j > D:
                break
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def euler_product_oracle(source, place: Place, degree_bound: int, prec: int,
                         laurent=False):
    """Product of inverse local factors over theta-places of degree <= D,
    mapped into the local ring at v and expanded to T^D mod v^prec.

    Valid to T^degree_bound because every omitted place contributes
    1 + O(T^(D+1)).  The supplied basis must be maximal at the places used.
    With ``laurent=True`` the coefficients are returned as (pole, element)
    pairs; at the infinite place generic motives genuinely carry poles.
    """
    motive = source.motive if isinstance(source, LatticeBasis) else source
    ff = motive.ff
    D = degree_bound
    # the t-degree of the tau-matrix controls the pole bound at infinity
    dtb = max((e.deg_t() for row in _phi_rows(source) for e in row), default=0)
    budget = D * max(0, dtb - motive.h) if place.is_infinite else 0
    ring = LocalRing(place, prec + budget)
    acc = [_Laurent(ring.one())] + [_Laurent(ring.zero()) for _ in range(D)]
    for pth in irreducibles(ff, D):
        if not place.is_infinite and pth == place.v:
            continue
        lf = local_factor(source, pth)
        fser = [
            _Laurent(*embed_fraction(lf.coeff_of_T(n), ring)) for n in range(D + 1)
        ]
        acc = _laurent_series_mul(acc, _laurent_series_inv(fser, D, ring), D, ring)
    if laurent:
        return [(a.down, a.el.truncate(min(prec, ring.N - a.down)) if ring.N - a.down > 0
                 else LocalRing(place, prec).zero()) for a in acc]
    return [a.integral().truncate(prec) for a in acc]


def _phi_rows(source):
    if isinstance(source, LatticeBasis):
        return source.phi_num
    return source.phi


def carlitz_power_oracle(k: int, place: Place, prec: int, n_terms: int):
    """Coefficients a_n = sum over monic a of degree n (prime to v) of a(t)^(-k),
    by brute-force enumeration in the local ring."""
    if k < 1:
        raise LSeriesError("k must be >= 1")
    ff = place.ff
    ring = LocalRing(place, prec)
    out = [ring.one()]
    for n in range(1, n_terms + 1):
        acc = ring.zero()
        for f in _monic_of_degree_list(ff, n):
            if place.is_infinite:
                el = iota_infinite(f, n, ring)  # t^(-n) f, a unit
                acc = acc + (el.inverse()) ** k
            else:
                el = iota_embed(f, ring)
                if el.valuation() != 0:
                    continue
                acc = acc + (el.inverse()) ** k
        if place.is_infinite:
            # a(t)^(-k) = u^(nk) * (t^(-n) a)^(-k)
            acc = acc.unit_shift(min(n * k, prec))
        out.append(acc)
    return out


def _monic_of_degree_list(ff, d):
    from .ffield import _monic_of_degree

    return _monic_of_degree(ff, d)


# ---------------------------------------------------------------------------
# Orders of vanishing and the conjecture scan
# ---------------------------------------------------------------------------


def order_of_vanishing_at_one(coeffs):
    """(order, certified) of vanishing at T = 1 of a T-polynomial.

    Exact inputs (Poly/PolyFrac coefficients) give a certified order;
    LocalElement coefficients give the apparent order modulo the stored
    precision (uncertified).  If everything vanishes, the sentinel order
    len(coeffs) (> degree) is returned, uncertified.
    """
    if not coeffs:
        return 0, True
    shifted = _compose_one_plus_s(list(coeffs))
    exact = not isinstance(coeffs[0], LocalElement)
    for m, c in enumerate(shifted):
        if not c.is_zero():
            return m, exact
    return len(shifted), False


def lseries_order_at_one(L: LSeries):
    """Apparent order of vanishing at T = 1 of an LSeries, pole-aware:
    coefficients are first brought over the common u-denominator."""
    P = max(L.pole, default=0)
    if P == 0:
        return order_of_vanishing_at_one(L.coeffs)
    scaled = [c.unit_shift(P - m) for c, m in zip(L.coeffs, L.pole)]
    return order_of_vanishing_at_one(scaled)


def conjecture_scan(motive: Motive, max_place_degree: int, prec: int):
    """Rows (place, ord P_v, ord L_v, certified flag) over finite places of
    degree <= max_place_degree, sorted by degree then lexicographically."""
    ff = motive.ff
    rows = []
    bads = {pth for pth, _ in bad_places(motive)} if motive.rank else set()
    for pth in irreducibles(ff, max_place_degree):
        place = Place.finite(pth)
        L = lseries_general(motive, place, prec)
        ordL, cert = lseries_order_at_one(L)
        if motive.rank == 0:
            ordP = 0
        else:
            src = maximal_model_local(motive, pth) if pth in bads else motive
            ordP = local_factor(src, pth).order_at_one()
        rows.append(
            {
                "place": pth,
                "ord_P": ordP,
                "ord_L": ordL,
                "difference": ordL - ordP,
                "certified": cert,
            }
        )
    return rows


def twist_congruence_check(motive: Motive, place: Place, h: int, h2: int, c: int) -> bool:
    """L_v(M(h)) = L_v(M(h')) mod v^(q^c), given h = h' mod (q^d - 1) q^c."""
    if place.is_infinite:
        raise LSeriesError("twist continuity is a finite-place statement")
    q = place.ff.q
    d = place.degree
    if (h - h2) % ((q**d - 1) * q**c):
        raise LSeriesError("twist congruence hypothesis violated")
    prec = q**c
    L1 = lseries_general(motive.twist(h), place, prec)
    L2 = lseries_general(motive.twist(h2), place, prec)
    n = max(len(L1.coeffs), len(L2.coeffs))
    ring = LocalRing(place, prec)
    for i in range(n):
        a = L1.coeffs[i] if i < len(L1.coeffs) else ring.zero()
        b = L2.coeffs[i] if i < len(L2.coeffs) else ring.zero()
        if a != b:
            return False
    return True
