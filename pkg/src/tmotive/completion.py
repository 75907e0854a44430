"""Truncated completions at a place, and theta-polynomials over them.

At a finite place v of degree d the carrier is F_v[u]/u^N with the series
variable u = image of v; the abstract one-variable ring F_q[x] maps in via
x -> a + u where a is the residue of the variable in F_v.  Both the t-side
and the theta-side of F_q[t, theta] embed through this single ring.  At the
infinite place the carrier is F_q[u]/u^N with u = 1/t.

Elements are numpy arrays of shape (d, e, N) over [0, p): axis 0 indexes
powers of the residue-field generator, axis 1 powers of the base-field
generator, axis 2 powers of u.  Multiplication is one exact FFT convolution
over all axes followed by modular reductions; the same kernel, with leading
batch axes, backs the matrix operations used by the dual characteristic
polynomial.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft

from .bivar import BivarPoly
from .ffield import ExtField, Field, Poly, is_irreducible


class Place:
    """A place of F_q(x): infinite, or a monic irreducible polynomial."""

    __slots__ = ("ff", "v")

    def __init__(self, ff: Field, v: Poly | None):
        self.ff = ff
        if v is not None:
            if not v.is_monic() or v.degree() < 1:
                raise ValueError("finite places are monic polynomials of degree >= 1")
            if not is_irreducible(v):
                raise ValueError("finite places must be irreducible")
        self.v = v

    @staticmethod
    def infinite(ff: Field) -> "Place":
        return Place(ff, None)

    @staticmethod
    def finite(v: Poly) -> "Place":
        return Place(v.ff, v)

    @property
    def is_infinite(self):
        return self.v is None

    @property
    def degree(self):
        return 1 if self.v is None else self.v.degree()

    def __eq__(self, other):
        return isinstance(other, Place) and self.ff == other.ff and self.v == other.v

    def __hash__(self):
        return hash((self.ff, self.v))

    def __repr__(self):
        return "inf" if self.v is None else self.v.to_str("t")


class AtLeastN:
    """Valuation sentinel: every stored digit vanishes, so v(x) >= n."""

    __slots__ = ("n",)

    def __init__(self, n):
        self.n = n

    def __eq__(self, other):
        return isinstance(other, AtLeastN) and self.n == other.n

    def __repr__(self):
        return f"AtLeastN({self.n})"


class LocalRing:
    """F_v[u]/u^N (finite place) or F_q[u]/u^N (infinite place)."""

    def __init__(self, place: Place, prec: int):
        if prec < 1:
            raise ValueError("precision must be >= 1")
        self.place = place
        self.N = prec
        ff = place.ff
        self.ff = ff
        self.p = ff.p
        self.e = ff.e
        if place.is_infinite:
            self.d = 1
            self.fv = None
            self.a = None
        else:
            self.d = place.degree
            self.fv = ExtField(ff, place.v)
            self.a = self.fv.gen()  # residue of the variable; iota(x) = a + u
        self._build_reductions()
        self._zero = None
        self._one = None

    # -- reduction tables ----------------------------------------------------

    def _build_reductions(self):
        p, e, d = self.p, self.e, self.d
        ff = self.ff
        if e > 1:
            rq = np.zeros((2 * e - 1, e), dtype=np.int64)
            for m in range(2 * e - 1):
                # a^m reduced in F_q, as base-p digits
                el = ff.pow(ff.gen(), m) if m else ff.one
                rq[m, :] = ff.digits(el)
            self._rq = rq
        else:
            self._rq = None
        if d > 1:
            fv = self.fv
            rv = np.zeros((2 * d - 1, e, d, e), dtype=np.int64)
            for k in range(2 * d - 1):
                if k < d:
                    xk = [ff.zero] * d
                    xk[k] = ff.one
                    xk = tuple(xk)
                else:
                    xk = fv._red[k]
                for alpha in range(e):
                    ga = ff.pow(ff.gen(), alpha) if alpha else ff.one
                    prod = tuple(ff.mul(c, ga) for c in xk)
                    for j in range(d):
                        rv[k, alpha, j, :] = ff.digits(prod[j])
            self._rv = rv
        else:
            self._rv = None

    # -- constructors ----------------------------------------------------------

    def _wrap(self, arr) -> "LocalElement":
        arr = np.ascontiguousarray(arr, dtype=np.int16)
        arr.flags.writeable = False
        return LocalElement(self, arr)

    def zero(self) -> "LocalElement":
        if self._zero is None:
            self._zero = self._wrap(np.zeros((self.d, self.e, self.N), dtype=np.int16))
        return self._zero

    def one(self) -> "LocalElement":
        if self._one is None:
            arr = np.zeros((self.d, self.e, self.N), dtype=np.int16)
            arr[0, 0, 0] = 1
            self._one = self._wrap(arr)
        return self._one

    def from_base(self, c) -> "LocalElement":
        """Embed a base-field element (int)."""
        arr = np.zeros((self.d, self.e, self.N), dtype=np.int16)
        arr[0, :, 0] = self.ff.digits(c)
        return self._wrap(arr)

    def from_fv(self, el) -> "LocalElement":
        """Embed a residue-field element (tuple over F_q)."""
        if self.place.is_infinite:
            raise ValueError("infinite place has no residue-field embedding")
        arr = np.zeros((self.d, self.e, self.N), dtype=np.int16)
        for j, c in enumerate(el):
            arr[j, :, 0] = self.ff.digits(c)
        return self._wrap(arr)

    def from_u_coeffs(self, coeffs) -> "LocalElement":
        """Element from a list of F_v (tuples) or base-field (ints) u-digits."""
        arr = np.zeros((self.d, self.e, self.N), dtype=np.int16)
        for k, c in enumerate(coeffs[: self.N]):
            if isinstance(c, tuple):
                for j, cc in enumerate(c):
                    arr[j, :, k] = self.ff.digits(cc)
            else:
                arr[0, :, k] = self.ff.digits(c)
        return self._wrap(arr)

    def monomial_u(self, k) -> "LocalElement":
        arr = np.zeros((self.d, self.e, self.N), dtype=np.int16)
        if 0 <= k < self.N:
            arr[0, 0, k] = 1
        return self._wrap(arr)

    def at_precision(self, prec) -> "LocalRing":
        if prec == self.N:
            return self
        return LocalRing(self.place, prec)

    # -- bulk kernels ------------------------------------------------------------

    def _fftn(self, arr, shape):
        axes = tuple(range(arr.ndim - 3, arr.ndim))
        return sfft.rfftn(arr.astype(np.float64), s=shape, axes=axes)

    def _check_exact(self, terms):
        # float64 FFT round-trip is exact while products stay far below 2^52
        if (self.p - 1) ** 2 * terms >= 1 << 50:
            raise ArithmeticError(
                "convolution values too large for exact float64 FFT"
            )

    def _conv(self, A, B, extra_axis=False):
        """Exact full convolution of the trailing (theta?, d, e, u) axes.

        A, B: integer arrays whose last three (four with ``extra_axis``) axes
        are (d, e, u); leading axes broadcast.  Returns an int64 array of the
        full convolution, not yet reduced.
        """
        na = 4 if extra_axis else 3
        sa, sb = A.shape[-na:], B.shape[-na:]
        shape = tuple(x + y - 1 for x, y in zip(sa, sb))
        terms = 1
        for x, y in zip(sa, sb):
            terms *= min(x, y)
        self._check_exact(terms)
        fast = tuple(
            sfft.next_fast_len(s) if i == na - 1 else s for i, s in enumerate(shape)
        )
        axes = tuple(range(-na, 0))
        FA = sfft.rfftn(A.astype(np.float64), s=fast, axes=axes)
        FB = sfft.rfftn(B.astype(np.float64), s=fast, axes=axes)
        out = sfft.irfftn(FA * FB, s=fast, axes=axes)
        sl = (Ellipsis,) + tuple(slice(0, s) for s in shape)
        return np.rint(out[sl]).astype(np.int64)

    def _reduce(self, conv, extra_axis=False):
        """Reduce a raw convolution back to canonical (..., d, e, N) mod p."""
        conv = conv % self.p
        # truncate u
        if conv.shape[-1] > self.N:
            conv = conv[..., : self.N]
        if self._rq is not None and conv.shape[-2] > self.e:
            conv = np.einsum("...mk,mb->...bk", conv, self._rq) % self.p
        if self._rv is not None and conv.shape[-3] > self.d:
            conv = np.einsum("...kal,kajb->...jbl", conv, self._rv) % self.p
        # pad u back up to N if operands were short
        if conv.shape[-1] < self.N:
            pad = [(0, 0)] * conv.ndim
            pad[-1] = (0, self.N - conv.shape[-1])
            conv = np.pad(conv, pad)
        return conv

    def bulk_mul(self, A, B, extra_axis=False):
        return self._reduce(self._conv(A, B, extra_axis), extra_axis)

    def bulk_matmul(self, A, B):
        """Ring matrix product: A (m, k, d, e, N) times B (k, n, d, e, N)."""
        m, k = A.shape[0], A.shape[1]
        n = B.shape[1]
        self._check_exact(k * self.d * self.e * self.N)
        shape = tuple(
            x + y - 1 for x, y in zip(A.shape[-3:], B.shape[-3:])
        )
        fast = (shape[0], shape[1], sfft.next_fast_len(shape[2]))
        axes = (-3, -2, -1)
        FA = sfft.rfftn(A.astype(np.float64), s=fast, axes=axes)
        FB = sfft.rfftn(B.astype(np.float64), s=fast, axes=axes)
        FC = np.einsum("mkabc,knabc->mnabc", FA, FB)
        out = sfft.irfftn(FC, s=fast, axes=axes)
        sl = (Ellipsis,) + tuple(slice(0, s) for s in shape)
        conv = np.rint(out[sl]).astype(np.int64)
        return self._reduce(conv)

    def __eq__(self, other):
        return (
            isinstance(other, LocalRing)
            and self.place == other.place
            and self.N == other.N
        )

    def __hash__(self):
        return hash((self.place, self.N))

    def __repr__(self):
        base = f"F_{self.ff.q}" if self.place.is_infinite else f"F_{self.ff.q**self.d}"
        return f"{base}[u]/u^{self.N} at ({self.place!r})"


class LocalElement:
    """An element of a LocalRing; immutable."""

    __slots__ = ("ring", "arr")

    def __init__(self, ring: LocalRing, arr):
        self.ring = ring
        self.arr = arr

    def _coerce(self, other):
        """Align precisions: mixed-precision operands truncate to the minimum."""
        if self.ring is other.ring or self.ring == other.ring:
            return self, other
        if self.ring.place != other.ring.place:
            raise ValueError("elements of different places")
        n = min(self.ring.N, other.ring.N)
        return self.truncate(n), other.truncate(n)

    def truncate(self, prec) -> "LocalElement":
        if prec == self.ring.N:
            return self
        if prec > self.ring.N:
            raise ValueError("cannot extend precision")
        return self.ring.at_precision(prec)._wrap(self.arr[..., :prec])

    def __add__(self, other):
        a, b = self._coerce(other)
        return a.ring._wrap((a.arr.astype(np.int64) + b.arr) % a.ring.p)

    def __sub__(self, other):
        a, b = self._coerce(other)
        return a.ring._wrap((a.arr.astype(np.int64) - b.arr) % a.ring.p)

    def __neg__(self):
        return self.ring._wrap((-self.arr.astype(np.int64)) % self.ring.p)

    def __mul__(self, other):
        a, b = self._coerce(other)
        return a.ring._wrap(a.ring.bulk_mul(a.arr, b.arr))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = self.ring.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def scale_fv(self, el) -> "LocalElement":
        """Multiply by a residue-field (or base-field) scalar."""
        ring = self.ring
        c = ring.from_fv(el) if isinstance(el, tuple) else ring.from_base(el)
        return self * c

    def is_zero(self):
        return not self.arr.any()

    def __eq__(self, other):
        if not isinstance(other, LocalElement):
            return NotImplemented
        a, b = self._coerce(other)
        return np.array_equal(a.arr, b.arr)

    def __hash__(self):
        return hash((self.ring, self.arr.tobytes()))

    def valuation(self):
        """u-adic valuation; AtLeastN(N) when all stored digits vanish."""
        nz = np.nonzero(self.arr.any(axis=(0, 1)))[0]
        if len(nz) == 0:
            return AtLeastN(self.ring.N)
        return int(nz[0])

    def unit_shift(self, k) -> "LocalElement":
        """Multiply by u^k (k may be negative; dropping nonzero digits raises)."""
        ring = self.ring
        if k == 0:
            return self
        out = np.zeros_like(self.arr)
        if k > 0:
            if k < ring.N:
                out[..., k:] = self.arr[..., : ring.N - k]
            return ring._wrap(out)
        k = -k
        if self.arr[..., :k].any():
            raise ArithmeticError("u-shift drops nonzero digits (not divisible)")
        out[..., : ring.N - k] = self.arr[..., k:]
        # top k digits are unknown after division; they stay zero by convention
        return ring._wrap(out)

    def inverse(self) -> "LocalElement":
        """Series inverse; the constant term must be a unit in F_v."""
        ring = self.ring
        c0 = self._const_term_fv()
        if ring.place.is_infinite:
            if c0 == ring.ff.zero:
                raise ZeroDivisionError("constant term is zero")
            y = ring.from_base(ring.ff.inv(c0))
        else:
            if c0 == ring.fv.zero:
                raise ZeroDivisionError("constant term is zero")
            y = ring.from_fv(ring.fv.inv(c0))
        two = ring.from_base(ring.ff.from_int(2))
        prec = 1
        while prec < ring.N:
            prec *= 2
            y = y * (two - self * y)
        return y

    def _const_term_fv(self):
        ring = self.ring
        if ring.place.is_infinite:
            return ring.ff.from_digits(self.arr[0, :, 0].tolist())
        return tuple(ring.ff.from_digits(self.arr[j, :, 0].tolist()) for j in range(ring.d))

    def u_coeff_fv(self, k):
        """u^k-digit as a residue-field tuple (or base-field int at infinity)."""
        ring = self.ring
        if ring.place.is_infinite:
            return ring.ff.from_digits(self.arr[0, :, k].tolist())
        return tuple(ring.ff.from_digits(self.arr[j, :, k].tolist()) for j in range(ring.d))

    def dump(self):
        """Machine format: array of coefficient strings by u-power."""
        ring = self.ring
        out = []
        for k in range(ring.N):
            c = self.u_coeff_fv(k)
            out.append(ring.ff.el_str(c) if not isinstance(c, tuple) else ring.fv.el_str(c))
        return out

    def __repr__(self):
        terms = []
        for k in range(self.ring.N):
            c = self.u_coeff_fv(k)
            zero = self.ring.ff.zero if not isinstance(c, tuple) else self.ring.fv.zero
            if c == zero:
                continue
            cs = (
                self.ring.ff.el_str(c)
                if not isinstance(c, tuple)
                else self.ring.fv.el_str(c)
            )
            if "+" in cs or "*" in cs:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                pw = "u" if k == 1 else f"u^{k}"
                terms.append(pw if cs == "1" else f"{cs}*{pw}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------


def iota_embed(f: Poly, ring: LocalRing) -> LocalElement:
    """Image of f(x) under x -> a + u (Taylor shift at the residue a).

    Ring isomorphism F_q[x]/v(x)^N  ~  F_v[u]/u^N; the ideal (v^k) corresponds
    to (u^k) for every k <= N.
    """
    if ring.place.is_infinite:
        raise ValueError("iota_embed needs a finite place (use iota_infinite)")
    fv = ring.fv
    lifted = f.map_coeffs(lambda c: fv.embed(c), fv)
    x_minus_a = Poly(fv, (fv.neg(ring.a), fv.one))
    digits = []
    cur = lifted
    while not cur.is_zero() and len(digits) < ring.N:
        cur, rem = cur.divmod(x_minus_a)
        digits.append(rem.coeff(0))
    return ring.from_u_coeffs(digits)


def iota_inverse(x: LocalElement) -> Poly:
    """Preimage of x in F_q[y]/v(y)^N (canonical representative, deg < d*N)."""
    ring = x.ring
    if ring.place.is_infinite:
        raise ValueError("no polynomial preimage at the infinite place")
    ff = ring.ff
    v = ring.place.v
    result = Poly.zero(ff)
    vpow = Poly.one(ff)
    # iota(v) = u * eps with eps a unit (v is separable); dividing by iota(v)
    # is a shift followed by multiplication with eps^-1
    eps_inv = iota_embed(v, ring).unit_shift(-1).inverse()
    cur = x
    for _ in range(ring.N):
        c = cur._const_term_fv()
        lift = Poly(ff, c)  # standard degree < d lift
        result = result + lift * vpow
        cur = cur - iota_embed(lift, ring)
        if cur.is_zero():
            break
        cur = cur.unit_shift(-1) * eps_inv
        vpow = vpow * v
    return result


def iota_infinite(f: Poly, max_t_degree: int, ring: LocalRing) -> LocalElement:
    """Image of t^(-D) f(t) in F_q[[1/t]]/u^N, u = 1/t, D = max_t_degree."""
    if not ring.place.is_infinite:
        raise ValueError("iota_infinite needs the infinite place")
    if f.degree() > max_t_degree:
        raise ValueError("not a 1/t-adic integer: degree exceeds the stated bound")
    digits = [f.coeff(max_t_degree - k) for k in range(min(ring.N, max_t_degree + 1))]
    return ring.from_u_coeffs(digits)


# ---------------------------------------------------------------------------
# Theta-polynomials over a local ring
# ---------------------------------------------------------------------------


class LocalThetaPoly:
    """Polynomial in theta with LocalElement coefficients.

    Stored as one array of shape (deg+1, d, e, N); multiplication is a single
    joint convolution over (theta, d, e, u).
    """

    __slots__ = ("ring", "arr")

    def __init__(self, ring: LocalRing, arr):
        self.ring = ring
        arr = np.ascontiguousarray(arr, dtype=np.int16)
        arr.flags.writeable = False
        self.arr = arr

    @staticmethod
    def from_coeffs(coeffs) -> "LocalThetaPoly":
        ring = coeffs[0].ring
        deg = len(coeffs) - 1
        while deg > 0 and coeffs[deg].is_zero():
            deg -= 1
        arr = np.stack([c.arr for c in coeffs[: deg + 1]])
        return LocalThetaPoly(ring, arr)

    @staticmethod
    def one(ring) -> "LocalThetaPoly":
        return LocalThetaPoly(ring, ring.one().arr[None, ...])

    @staticmethod
    def from_bivar_finite(b: BivarPoly, ring: LocalRing) -> "LocalThetaPoly":
        """Embed an element of F_q[t, theta], sending t -> a + u."""
        coeffs = [iota_embed(b.theta_coeff(j), ring) for j in range(b.deg_theta() + 1)]
        if not coeffs:
            coeffs = [ring.zero()]
        return LocalThetaPoly.from_coeffs(coeffs)

    @staticmethod
    def from_bivar_infinite(b: BivarPoly, scale_deg: int, ring: LocalRing) -> "LocalThetaPoly":
        """Embed t^(-scale_deg) * b at the infinite place."""
        coeffs = [
            iota_infinite(b.theta_coeff(j), scale_deg, ring)
            for j in range(b.deg_theta() + 1)
        ]
        if not coeffs:
            coeffs = [ring.zero()]
        return LocalThetaPoly.from_coeffs(coeffs)

    def deg_theta(self):
        return self.arr.shape[0] - 1

    def theta_coeff(self, j) -> LocalElement:
        if 0 <= j < self.arr.shape[0]:
            return self.ring._wrap(self.arr[j])
        return self.ring.zero()

    def __add__(self, other):
        n = max(self.arr.shape[0], other.arr.shape[0])
        a = np.zeros((n,) + self.arr.shape[1:], dtype=np.int64)
        a[: self.arr.shape[0]] += self.arr
        a[: other.arr.shape[0]] += other.arr
        return LocalThetaPoly(self.ring, a % self.ring.p)

    def __neg__(self):
        return LocalThetaPoly(self.ring, (-self.arr.astype(np.int64)) % self.ring.p)

    def __sub__(self, other):
        return self + (-other)

    def mul(self, other) -> "LocalThetaPoly":
        ring = self.ring
        out = ring.bulk_mul(self.arr, other.arr, extra_axis=True)
        return LocalThetaPoly(ring, out)

    __mul__ = mul

    def scale(self, el: LocalElement) -> "LocalThetaPoly":
        ring = self.ring
        out = ring.bulk_mul(self.arr, el.arr[None, ...], extra_axis=True)
        return LocalThetaPoly(ring, out)

    def pow(self, n) -> "LocalThetaPoly":
        r = LocalThetaPoly.one(self.ring)
        b = self
        while n:
            if n & 1:
                r = r.mul(b)
            b = b.mul(b)
            n >>= 1
        return r

    def __repr__(self):
        terms = []
        for j in range(self.deg_theta(), -1, -1):
            c = self.theta_coeff(j)
            if c.is_zero():
                continue
            cs = repr(c)
            if " " in cs:
                cs = f"({cs})"
            if j == 0:
                terms.append(cs)
            else:
                pw = "th" if j == 1 else f"th^{j}"
                terms.append(pw if cs == "1" else f"{cs}*{pw}")
        return " + ".join(terms) if terms else "0"


def cartier_local(P: LocalThetaPoly) -> LocalThetaPoly:
    """theta-exponent selection q*s' + q - 1 -> s'; coefficients untouched."""
    ring = P.ring
    q = ring.ff.q
    deg = P.deg_theta()
    idx = list(range(q - 1, deg + 1, q))
    if not idx:
        return LocalThetaPoly(ring, np.zeros((1,) + P.arr.shape[1:], dtype=np.int16))
    return LocalThetaPoly(ring, P.arr[idx])


# ---------------------------------------------------------------------------
# Fast division-free det(1 - T*A) for matrices of local elements
# ---------------------------------------------------------------------------


def det_one_minus_t_local(mat) -> list:
    """Berkowitz over a LocalRing with batched FFT convolutions.

    ``mat`` is a square list-of-lists of LocalElement; returns the T-power
    coefficient list of det(1 - T*mat), length n+1.
    """
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    ring = mat[0][0].ring
    A = np.stack([np.stack([e.arr for e in row]) for row in mat]).astype(np.int64)
    vec = _berk_arr(ring, A)
    return [ring._wrap(vec[i]) for i in range(n + 1)]


def _berk_arr(ring: LocalRing, A):
    p = ring.p
    n = A.shape[0]
    one = ring.one().arr.astype(np.int64)
    if n == 1:
        return np.stack([one, (-A[0, 0]) % p])
    a = A[0, 0]
    row = A[0, 1:]
    col = A[1:, 0]
    sub = A[1:, 1:]

    # shared FFT geometry for one (d, e, N) x (d, e, N) product
    shape = tuple(2 * s - 1 for s in A.shape[-3:])
    fast = (shape[0], shape[1], sfft.next_fast_len(shape[2]))
    axes = (-3, -2, -1)

    def fwd(x):
        return sfft.rfftn(x.astype(np.float64), s=fast, axes=axes)

    def back(fx):
        out = sfft.irfftn(fx, s=fast, axes=axes)
        sl = (Ellipsis,) + tuple(slice(0, s) for s in shape)
        return ring._reduce(np.rint(out[sl]).astype(np.int64))

    ring._check_exact((n - 1) * ring.d * ring.e * ring.N)
    Fsub = fwd(sub)
    Frow = fwd(row)
    items = [one, (-a) % p]
    w = col
    for _ in range(n - 1):
        Fw = fwd(w)
        dot = back(np.einsum("jabc,jabc->abc", Frow, Fw))
        items.append((-dot) % p)
        w = back(np.einsum("ijabc,jabc->iabc", Fsub, Fw))
    prev = _berk_arr(ring, sub)  # shape (n, d, e, N)
    items_arr = np.stack(items)  # shape (n+1, d, e, N)
    out = ring.bulk_mul(items_arr, prev, extra_axis=True)
    return out[: n + 1]
