"""Bivariate polynomials F_q[t, theta] with the twisted endomorphisms.

Storage is theta-major: a ``BivarPoly`` is a tuple of t-polynomials indexed
by theta-exponent (the Cartier operator and the nucleus assembly both index
by theta-exponent).  Coefficients live in the base field only; the Cartier
operator is the honest one there since a^q = a for every a in F_q.
"""

from __future__ import annotations

from . import charpoly
from .ffield import Field, Poly


class BivarPoly:
    __slots__ = ("ff", "tcoeffs")

    def __init__(self, ff: Field, tcoeffs=()):
        self.ff = ff
        cs = [c if isinstance(c, Poly) else Poly(ff, c) for c in tcoeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.tcoeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ff):
        return BivarPoly(ff, ())

    @staticmethod
    def one(ff):
        return BivarPoly(ff, (Poly.one(ff),))

    @staticmethod
    def const(ff, c):
        return BivarPoly(ff, (Poly.const(ff, c),))

    @staticmethod
    def t(ff):
        return BivarPoly(ff, (Poly.x(ff),))

    @staticmethod
    def theta(ff):
        return BivarPoly(ff, (Poly.zero(ff), Poly.one(ff)))

    @staticmethod
    def from_t_poly(f: Poly):
        return BivarPoly(f.ff, (f,))

    @staticmethod
    def from_theta_poly(f: Poly):
        """A polynomial in theta only (coefficients become constants in t)."""
        return BivarPoly(f.ff, tuple(Poly.const(f.ff, c) for c in f.coeffs))

    @staticmethod
    def t_minus_theta(ff):
        return BivarPoly(ff, (Poly.x(ff), Poly.const(ff, ff.neg(ff.one))))

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.tcoeffs

    def is_one(self):
        return len(self.tcoeffs) == 1 and self.tcoeffs[0].is_one()

    def deg_theta(self):
        return len(self.tcoeffs) - 1

    def deg_t(self):
        return max((c.degree() for c in self.tcoeffs), default=-1)

    def theta_coeff(self, j) -> Poly:
        if 0 <= j < len(self.tcoeffs):
            return self.tcoeffs[j]
        return Poly.zero(self.ff)

    def is_theta_only(self):
        return all(c.degree() <= 0 for c in self.tcoeffs)

    def is_t_only(self):
        return len(self.tcoeffs) <= 1

    def as_theta_poly(self) -> Poly:
        """View a t-free element as a univariate polynomial in theta."""
        if not self.is_theta_only():
            raise ValueError("polynomial involves t")
        return Poly(self.ff, [c.coeff(0) for c in self.tcoeffs])

    def as_t_poly(self) -> Poly:
        if not self.is_t_only():
            raise ValueError("polynomial involves theta")
        return self.theta_coeff(0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        a, b = self.tcoeffs, other.tcoeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return BivarPoly(self.ff, out)

    def __neg__(self):
        return BivarPoly(self.ff, [-c for c in self.tcoeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.tcoeffs, other.tcoeffs
        if not a or not b:
            return BivarPoly(self.ff, ())
        out = [Poly.zero(self.ff) for _ in range(len(a) + len(b) - 1)]
        for i, ca in enumerate(a):
            if not ca.is_zero():
                for j, cb in enumerate(b):
                    if not cb.is_zero():
                        out[i + j] = out[i + j] + ca * cb
        return BivarPoly(self.ff, out)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a bivariate polynomial")
        r = BivarPoly.one(self.ff)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def scale(self, c):
        return BivarPoly(self.ff, [f.scale(c) for f in self.tcoeffs])

    def scale_t_poly(self, f: Poly):
        return BivarPoly(self.ff, [c * f for c in self.tcoeffs])

    # -- twisted endomorphisms and the Cartier operator ---------------------

    def tau_theta(self):
        """theta -> theta^q; t and the F_q-coefficients are fixed."""
        q = self.ff.q
        if self.is_zero():
            return self
        out = [Poly.zero(self.ff)] * (q * self.deg_theta() + 1)
        for j, c in enumerate(self.tcoeffs):
            out[q * j] = c
        return BivarPoly(self.ff, out)

    def tau_t(self):
        """t -> t^q; theta and the F_q-coefficients are fixed."""
        q = self.ff.q
        return BivarPoly(self.ff, [c.stretch(q) for c in self.tcoeffs])

    def cartier_theta(self):
        """Select theta-exponents congruent to q-1 mod q and divide them by q.

        This is F_q[t]-linear and satisfies C(tau_theta(x) * y) = x * C(y);
        coefficients are untouched (over F_q the genuine Cartier operator
        takes this form, as a^q = a for scalars).
        """
        q = self.ff.q
        out = []
        j = q - 1
        while j <= self.deg_theta():
            out.append(self.tcoeffs[j])
            j += q
        return BivarPoly(self.ff, out)

    # -- division ------------------------------------------------------------

    def divmod_theta(self, g: "BivarPoly"):
        """Divide by g along theta; g's leading theta-coefficient must be a
        nonzero constant."""
        ff = self.ff
        dg = g.deg_theta()
        if dg < 0:
            raise ZeroDivisionError("division by zero")
        lead = g.tcoeffs[dg]
        if lead.degree() != 0:
            raise ValueError("leading theta-coefficient must be a unit constant")
        lead_inv = ff.inv(lead.coeff(0))
        rem = list(self.tcoeffs)
        if self.deg_theta() < dg:
            return BivarPoly(ff, ()), self
        quot = [Poly.zero(ff)] * (self.deg_theta() - dg + 1)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + dg].scale(lead_inv)
            if not c.is_zero():
                quot[k] = c
                for i in range(dg + 1):
                    rem[k + i] = rem[k + i] - c * g.tcoeffs[i]
        return BivarPoly(ff, quot), BivarPoly(ff, rem[:dg])

    def exact_div_theta_only(self, g: Poly):
        """Exact division by a polynomial in theta alone."""
        q, r = self.divmod_theta(BivarPoly.from_theta_poly(g))
        if not r.is_zero():
            raise ArithmeticError("division by theta-polynomial is not exact")
        return q

    def mod_theta_poly(self, g: Poly):
        return self.divmod_theta(BivarPoly.from_theta_poly(g))[1]

    # -- evaluations ---------------------------------------------------------

    def eval_theta_in(self, ext, theta_bar):
        """Specialize theta to an element of an extension of F_q.

        Returns a univariate polynomial in t over ``ext``.
        """
        deg_t = self.deg_t()
        out = []
        for i in range(deg_t + 1):
            acc = ext.zero
            pw = ext.one
            for j in range(self.deg_theta() + 1):
                cij = self.tcoeffs[j].coeff(i)
                if cij != self.ff.zero:
                    acc = ext.add(acc, tuple(ext.base.mul(cij, y) for y in pw))
                pw = ext.mul(pw, theta_bar)
            out.append(acc)
        return Poly(ext, out)

    def eval_t_theta(self, tv, thv):
        """Full evaluation at base-field points (testing hook)."""
        ff = self.ff
        acc = ff.zero
        pw = ff.one
        for j in range(self.deg_theta() + 1):
            acc = ff.add(acc, ff.mul(self.tcoeffs[j].eval(tv), pw))
            pw = ff.mul(pw, thv)
        return acc

    def subs_theta_with_t(self):
        """Evaluate theta := t (used for (t - theta)-divisibility)."""
        acc = Poly.zero(self.ff)
        x = Poly.x(self.ff)
        pw = Poly.one(self.ff)
        for c in self.tcoeffs:
            acc = acc + c * pw
            pw = pw * x
        return acc

    # -- comparisons, display -------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, BivarPoly)
            and self.ff == other.ff
            and self.tcoeffs == other.tcoeffs
        )

    def __hash__(self):
        return hash((self.ff, self.tcoeffs))

    def to_str(self):
        if self.is_zero():
            return "0"
        terms = []
        for j in range(self.deg_theta(), -1, -1):
            c = self.tcoeffs[j]
            if c.is_zero():
                continue
            cs = c.to_str("t")
            if j == 0:
                terms.append(f"({cs})" if " " in cs else cs)
                continue
            pw = "th" if j == 1 else f"th^{j}"
            if cs == "1":
                terms.append(pw)
            else:
                cs = f"({cs})" if (" " in cs or "*" in cs) else cs
                terms.append(f"{cs}*{pw}")
        return " + ".join(terms)

    def __repr__(self):
        return self.to_str()


def tau_theta(f: BivarPoly) -> BivarPoly:
    return f.tau_theta()


def tau_t(f: BivarPoly) -> BivarPoly:
    return f.tau_t()


def cartier_theta(f: BivarPoly) -> BivarPoly:
    return f.cartier_theta()


def cartier_fraction(x: BivarPoly, y: BivarPoly):
    """Cartier operator on a fraction x/y: returns (C(x*y^(q-1)), tau_t(y)).

    Callers reduce the pair in their target ring.
    """
    if y.is_zero():
        raise ZeroDivisionError("Cartier of a fraction with zero denominator")
    num = (x * y ** (x.ff.q - 1)).cartier_theta()
    return num, y.tau_t()


def det_bivar(mat) -> BivarPoly:
    """Exact determinant of a square matrix of BivarPoly (division-free)."""
    if not mat:
        raise ValueError("empty matrix")
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("matrix is not square")
    ff = mat[0][0].ff
    return charpoly.det(mat, BivarPoly.one(ff))


def t_minus_theta_split(f: BivarPoly):
    """Write f = (t - theta)^k * g with (t - theta) not dividing g."""
    if f.is_zero():
        raise ValueError("cannot split the zero polynomial")
    ff = f.ff
    theta_minus_t = BivarPoly(
        ff, (Poly(ff, (ff.zero, ff.neg(ff.one))), Poly.one(ff))
    )  # theta - t, monic in theta
    k = 0
    g = f
    while True:
        if not g.subs_theta_with_t().is_zero():
            return k, g
        q, r = g.divmod_theta(theta_minus_t)
        assert r.is_zero()
        g = -q  # f = (theta - t) * q = (t - theta) * (-q)
        k += 1
