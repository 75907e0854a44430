"""Finite fields F_q = F_p^e, their extensions, and univariate polynomials.

Elements of a base field ``Field`` are plain ints in ``[0, q)`` encoding the
base-p digit vector of the residue; elements of an ``ExtField`` (used for
residue fields at a place) are tuples of base-field ints.  Both expose the
same small arithmetic interface so ``Poly`` works over either.
"""

from __future__ import annotations

import random
from functools import reduce


class Field:
    """The base field F_q with q = p^e.

    For e > 1 an explicit monic irreducible modulus over F_p (coefficient
    list, constant term first, length e+1) is required; there is no implicit
    modulus convention.
    """

    def __init__(self, p, e=1, modulus=None):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"p = {p} is not prime")
        if e < 1:
            raise ValueError("e must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            if modulus is not None:
                raise ValueError("modulus only makes sense for e > 1")
            self.modulus = None
        else:
            if modulus is None:
                raise ValueError("extension fields need an explicit modulus")
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree e")
            self.modulus = modulus
        if self.q > 4096:
            raise ValueError("base fields larger than 4096 elements are not supported")
        self.zero = 0
        self.one = 1
        self._build_tables()
        if self.e > 1 and not self._modulus_irreducible():
            raise ValueError("modulus is reducible over F_p")

    # -- encoding ----------------------------------------------------------

    def digits(self, a):
        """Base-p digit vector (length e, constant term first) of element a."""
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds):
        a = 0
        for c in reversed(list(ds)):
            a = a * self.p + c % self.p
        return a

    def from_int(self, n):
        """Integer literal reduced into the prime subfield."""
        return n % self.p

    def gen(self):
        """Image of the generator `a` (root of the modulus); 0-ary for e = 1."""
        if self.e == 1:
            raise ValueError("prime field has no extension generator")
        return self.p  # the element "x", digits (0, 1, 0, ...)

    # -- arithmetic --------------------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        if e == 1:
            self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            # reduction of x^k mod modulus for k = e .. 2e-2, as digit vectors
            red = {}
            cur = [-self.modulus[i] % p for i in range(e)]
            red[e] = cur[:]
            for k in range(e + 1, 2 * e - 1):
                nxt = [0] * e
                for i in range(e - 1):
                    nxt[i + 1] = cur[i]
                top = cur[e - 1]
                for i in range(e):
                    nxt[i] = (nxt[i] + top * red[e][i]) % p
                red[k] = nxt
                cur = nxt
            mul = [[0] * q for _ in range(q)]
            for a in range(q):
                da = self.digits(a)
                for b in range(a, q):
                    db = self.digits(b)
                    conv = [0] * (2 * e - 1)
                    for i, ca in enumerate(da):
                        if ca:
                            for j, cb in enumerate(db):
                                conv[i + j] += ca * cb
                    acc = [c % p for c in conv[:e]]
                    for k in range(e, 2 * e - 1):
                        ck = conv[k] % p
                        if ck:
                            rk = red[k]
                            for i in range(e):
                                acc[i] = (acc[i] + ck * rk[i]) % p
                    v = self.from_digits(acc)
                    mul[a][b] = v
                    mul[b][a] = v
            self._mul = mul
        self._inv = [0] * self.q
        for a in range(1, self.q):
            if self._inv[a]:
                continue
            b = self._solve_inv(a)
            self._inv[a] = b
            self._inv[b] = a

    def _solve_inv(self, a):
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        # brute force is fine at these sizes
        row = self._mul[a]
        for b in range(1, self.q):
            if row[b] == 1:
                return b
        raise ValueError("modulus is reducible over F_p (zero divisor found)")

    def _modulus_irreducible(self):
        # the multiplicative check above fails loudly for zero divisors;
        # additionally verify x^(p^e) == x in the quotient ring
        x = self.p if self.e > 1 else 1
        y = x
        for _ in range(self.e):
            y = self.pow(y, self.p)
        return y == x

    def add(self, a, b):
        p = self.p
        if self.e == 1:
            return (a + b) % p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        p = self.p
        if self.e == 1:
            return (-a) % p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            n >>= 1
        return r

    def proot(self, a):
        """p-th root (exists and is unique in characteristic p)."""
        return self.pow(a, self.p ** (self.e - 1))

    def elements(self):
        return range(self.q)

    def el_str(self, a):
        """Render an element in the extension generator `a` (plain int if e=1)."""
        if self.e == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.digits(a)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                pw = "a" if i == 1 else f"a^{i}"
                terms.append(pw if c == 1 else f"{c}*{pw}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.e}"


class ExtField:
    """Residue field F_q[x]/(v(x)) for a monic irreducible v of degree d.

    Elements are length-d tuples of base-field ints (constant term first).
    The relevant automorphism is the q-Frobenius x -> x^q, of order d over
    the base field.
    """

    def __init__(self, base: Field, modulus):
        self.base = base
        v = modulus if isinstance(modulus, Poly) else Poly(base, modulus)
        if v.degree() < 1 or not v.is_monic():
            raise ValueError("defining polynomial must be monic of degree >= 1")
        self.v = v
        self.d = v.degree()
        self.q = base.q**self.d
        self.zero = (0,) * self.d
        self.one = self._embed_unit()
        # x^k mod v for k = d .. 2d-2
        self._red = {}
        cur = [base.neg(c) for c in v.coeffs[: self.d]]
        self._red[self.d] = tuple(cur)
        for k in range(self.d + 1, 2 * self.d - 1):
            nxt = [0] * self.d
            for i in range(self.d - 1):
                nxt[i + 1] = cur[i]
            top = cur[self.d - 1]
            if top:
                r0 = self._red[self.d]
                for i in range(self.d):
                    nxt[i] = base.add(nxt[i], base.mul(top, r0[i]))
            self._red[k] = tuple(nxt)
            cur = nxt
        self._frob_cache = None

    def _embed_unit(self):
        t = [0] * self.d
        t[0] = 1
        return tuple(t)

    def embed(self, a):
        """Embed a base-field element."""
        t = [0] * self.d
        t[0] = a
        return tuple(t)

    def gen(self):
        """Residue class of the variable (a root of v)."""
        if self.d == 1:
            # x = -v(0)
            return (self.base.neg(self.v.coeffs[0]),)
        t = [0] * self.d
        t[1] = 1
        return tuple(t)

    def add(self, a, b):
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.base
        return tuple(F.neg(x) for x in a)

    def mul(self, a, b):
        F, d = self.base, self.d
        if d == 1:
            return (F.mul(a[0], b[0]),)
        conv = [0] * (2 * d - 1)
        for i, ca in enumerate(a):
            if ca:
                row = F._mul[ca]
                for j, cb in enumerate(b):
                    if cb:
                        conv[i + j] = F.add(conv[i + j], row[cb])
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                rk = self._red[k]
                for i in range(d):
                    if rk[i]:
                        out[i] = F.add(out[i], F.mul(ck, rk[i]))
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def frob(self, a):
        """q-Frobenius a -> a^q (the base field is fixed pointwise)."""
        if self._frob_cache is None:
            # image of x^i under Frobenius, i < d
            imgs = []
            xq = self.pow(self.gen() if self.d > 1 else self.one, self.base.q)
            cur = self.one
            for _ in range(self.d):
                imgs.append(cur)
                cur = self.mul(cur, xq) if self.d > 1 else cur
            self._frob_cache = imgs
        F = self.base
        out = self.zero
        for i, c in enumerate(a):
            if c:
                out = self.add(out, tuple(F.mul(c, y) for y in self._frob_cache[i]))
        return out

    def frob_inv(self, a):
        """Inverse q-Frobenius, i.e. frob applied d-1 times."""
        for _ in range(self.d - 1):
            a = self.frob(a)
        return a

    def proot(self, a):
        return self.pow(a, self.q // self.base.p)

    def elements(self):
        # iteration order: constant-first digit counting
        def rec(i):
            if i == self.d:
                yield ()
                return
            for rest in rec(i + 1):
                for c in self.base.elements():
                    yield (c,) + rest

        return rec(0)

    def el_str(self, a):
        """Render in the residue-field generator `g`."""
        if self.d == 1:
            return self.base.el_str(a[0])
        terms = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            cs = self.base.el_str(c)
            if i == 0:
                terms.append(cs)
            else:
                pw = "g" if i == 1 else f"g^{i}"
                if cs == "1":
                    terms.append(pw)
                else:
                    cs = f"({cs})" if "+" in cs else cs
                    terms.append(f"{cs}*{pw}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and self.base == other.base
            and self.v.coeffs == other.v.coeffs
        )

    def __hash__(self):
        return hash((self.base, self.v.coeffs))

    def __repr__(self):
        return f"{self.base!r}[x]/({self.v})"


class Poly:
    """Dense univariate polynomial over a Field or ExtField.

    Stored as a tuple of coefficients, constant term first, with no trailing
    zeros; the zero polynomial has degree -1.
    """

    __slots__ = ("ff", "coeffs")

    def __init__(self, ff, coeffs=()):
        self.ff = ff
        cs = list(coeffs)
        while cs and cs[-1] == ff.zero:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ff):
        return Poly(ff, ())

    @staticmethod
    def one(ff):
        return Poly(ff, (ff.one,))

    @staticmethod
    def x(ff):
        return Poly(ff, (ff.zero, ff.one))

    @staticmethod
    def const(ff, c):
        return Poly(ff, (c,))

    # -- basic queries -----------------------------------------------------

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ff.one

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ff.one

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ff.zero

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        ff = self.ff
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ff.add(out[i], c)
        return Poly(ff, out)

    def __neg__(self):
        ff = self.ff
        return Poly(ff, [ff.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ff = self.ff
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(ff, ())
        out = [ff.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca != ff.zero:
                for j, cb in enumerate(b):
                    if cb != ff.zero:
                        out[i + j] = ff.add(out[i + j], ff.mul(ca, cb))
        return Poly(ff, out)

    def scale(self, c):
        ff = self.ff
        if c == ff.zero:
            return Poly(ff, ())
        return Poly(ff, [ff.mul(c, x) for x in self.coeffs])

    def shift(self, k):
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly(self.ff, (self.ff.zero,) * k + self.coeffs)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        r = Poly.one(self.ff)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def divmod(self, other):
        ff = self.ff
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = ff.inv(other.leading())
        rem = list(self.coeffs)
        dn = other.degree()
        if self.degree() < dn:
            return Poly(ff, ()), self
        quot = [ff.zero] * (self.degree() - dn + 1)
        for k in range(len(quot) - 1, -1, -1):
            c = ff.mul(rem[k + dn], lead_inv)
            if c != ff.zero:
                quot[k] = c
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] = ff.sub(rem[k + i], ff.mul(c, oc))
        return Poly(ff, quot), Poly(ff, rem[:dn])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ff.inv(self.leading()))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def powmod(self, n, modulus):
        r = Poly.one(self.ff)
        b = self % modulus
        while n:
            if n & 1:
                r = (r * b) % modulus
            b = (b * b) % modulus
            n >>= 1
        return r

    def eval(self, x):
        """Evaluate at a field element (Horner)."""
        ff = self.ff
        acc = ff.zero
        for c in reversed(self.coeffs):
            acc = ff.add(ff.mul(acc, x), c)
        return acc

    def compose(self, other):
        ff = self.ff
        acc = Poly(ff, ())
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(ff, c)
        return acc

    def derivative(self):
        ff = self.ff
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            n = i % char(ff)
            out.append(reduce(ff.add, [c] * n, ff.zero))
        return Poly(ff, out)

    def map_coeffs(self, fn, ff=None):
        return Poly(ff or self.ff, [fn(c) for c in self.coeffs])

    def stretch(self, k):
        """Substitute x -> x^k."""
        ff = self.ff
        if k == 1 or not self.coeffs:
            return self
        out = [ff.zero] * (k * self.degree() + 1)
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Poly(ff, out)

    def reverse(self, n=None):
        """Coefficient reversal x^n * f(1/x); n defaults to deg f."""
        if n is None:
            n = self.degree()
        if n < self.degree():
            raise ValueError("reversal length below degree")
        out = [self.ff.zero] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return Poly(self.ff, out)

    # -- comparisons, hashing, display --------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ff == other.ff
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ff, self.coeffs))

    def sort_key(self):
        """(degree, leading-to-constant digit tuple): degree then lexicographic."""
        return (self.degree(), tuple(reversed(self.coeffs)))

    def to_str(self, var="x"):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree(), -1, -1):
            c = self.coeffs[i]
            if c == self.ff.zero:
                continue
            cs = self.ff.el_str(c)
            if i == 0:
                terms.append(cs)
                continue
            pw = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                terms.append(pw)
            else:
                cs = f"({cs})" if "+" in cs else cs
                terms.append(f"{cs}*{pw}")
        return " + ".join(terms)

    def __repr__(self):
        return self.to_str()


def char(ff):
    """Characteristic of a Field or ExtField."""
    return ff.p if isinstance(ff, Field) else ff.base.p


def field_q(ff):
    """Cardinality of the coefficient field."""
    return ff.q


# ---------------------------------------------------------------------------
# Factorization (square-free / distinct-degree / Cantor-Zassenhaus)
# ---------------------------------------------------------------------------


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_q."""
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    ff = f.ff
    q = field_q(ff)
    x = Poly.x(ff)
    # x^(q^n) == x mod f
    xp = x
    for _ in range(n):
        xp = xp.powmod(q, f)
    if xp != x % f:
        return False
    for ell in _prime_divisors(n):
        m = n // ell
        xp = x
        for _ in range(m):
            xp = xp.powmod(q, f)
        if not (xp - x).gcd(f).is_one():
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _squarefree_parts(f: Poly):
    """Yield (squarefree factor, multiplicity) pairs, Yun-style with p-th roots."""
    ff = f.ff
    p = char(ff)
    stack = [(f, 1)]
    while stack:
        g, mult = stack.pop()
        if g.degree() < 1:
            continue
        d = g.derivative()
        if d.is_zero():
            # g = h(x^p); take the p-th root of the coefficients
            root = Poly(ff, [ff.proot(g.coeff(p * i)) for i in range(g.degree() // p + 1)])
            stack.append((root, mult * p))
            continue
        c = g.gcd(d)
        w = g.exact_div(c)
        # w is the product of squarefree factors of multiplicity not divisible by p
        i = 1
        while not w.is_one():
            y = w.gcd(c)
            fac = w.exact_div(y)
            if fac.degree() >= 1:
                yield fac.monic(), mult * i
            w = y
            c = c.exact_div(y)
            i += 1
        if c.degree() >= 1:
            stack.append((c, mult))


def _distinct_degree(f: Poly):
    """Split a monic squarefree f into products of same-degree irreducibles."""
    ff = f.ff
    q = field_q(ff)
    out = []
    x = Poly.x(ff)
    h = x % f
    k = 0
    rest = f
    while rest.degree() > 2 * (k + 1) - 1 and not rest.is_one():
        k += 1
        h = h.powmod(q, rest)
        g = (h - x).gcd(rest)
        if not g.is_one():
            out.append((g, k))
            rest = rest.exact_div(g)
            h = h % rest
    if not rest.is_one():
        out.append((rest, rest.degree()))
    return out


def _split_equal_degree(f: Poly, d: int, rng: random.Random):
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    ff = f.ff
    q = field_q(ff)
    n = f.degree()
    if n == d:
        return [f]
    p = char(ff)
    while True:
        r = Poly(ff, [_random_element(ff, rng) for _ in range(n)])
        if r.degree() < 1:
            continue
        if p == 2:
            # trace map over F_2: r + r^2 + r^4 + ... (ed*d-1 doublings)
            e = q.bit_length() - 1  # q = 2^e
            t = r % f
            acc = t
            for _ in range(e * d - 1):
                t = (t * t) % f
                acc = acc + t
            g = acc.gcd(f)
        else:
            g = r.powmod((q**d - 1) // 2, f)
            g = (g - Poly.one(ff)).gcd(f)
        if 0 < g.degree() < n:
            g = g.monic()
            return _split_equal_degree(g, d, rng) + _split_equal_degree(
                f.exact_div(g), d, rng
            )


def _random_element(ff, rng):
    if isinstance(ff, Field):
        return rng.randrange(ff.q)
    return tuple(rng.randrange(ff.base.q) for _ in range(ff.d))


def factor(f: Poly, seed=0):
    """Factor f into monic irreducibles, returned as a list of (poly, mult).

    The equal-degree splitting is randomized; the generator is seeded (0 by
    default) so runs are reproducible.  Factors are sorted by degree then
    lexicographically.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for sqf, mult in _squarefree_parts(f.monic()):
        for block, d in _distinct_degree(sqf):
            for irr in _split_equal_degree(block, d, rng):
                out.append((irr.monic(), mult))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def irreducibles(ff, max_degree):
    """All monic irreducibles of degree <= max_degree, sorted canonically."""
    out = []
    for d in range(1, max_degree + 1):
        for f in _monic_of_degree(ff, d):
            if is_irreducible(f):
                out.append(f)
    out.sort(key=lambda f: f.sort_key())
    return out


def _monic_of_degree(ff, d):
    els = list(ff.elements())

    def rec(i, acc):
        if i == d:
            yield Poly(ff, acc + [ff.one])
            return
        for c in els:
            yield from rec(i + 1, acc + [c])

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# Fractions of polynomials (exact rational functions over F_q)
# ---------------------------------------------------------------------------


class PolyFrac:
    """num/den with den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        ff = num.ff
        if den is None:
            den = Poly.one(ff)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not num.is_zero():
            g = num.gcd(den)
            if g.degree() >= 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lc = den.leading()
            if lc != ff.one:
                inv = ff.inv(lc)
                num = num.scale(inv)
                den = den.scale(inv)
        else:
            den = Poly.one(ff)
        self.num = num
        self.den = den

    @staticmethod
    def of(p: Poly):
        return PolyFrac(p)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_one()

    def __add__(self, other):
        return PolyFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return PolyFrac(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return PolyFrac(-self.num, self.den)

    def __mul__(self, other):
        return PolyFrac(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return PolyFrac(self.num * other.den, self.den * other.num)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return PolyFrac(self.den, self.num)

    def __eq__(self, other):
        return (
            isinstance(other, PolyFrac)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self, var="x"):
        if self.is_poly():
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __repr__(self):
        return self.to_str()
