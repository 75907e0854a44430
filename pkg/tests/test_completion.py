import random

import pytest

from tmotive import (
    AtLeastN,
    Field,
    LocalRing,
    LocalThetaPoly,
    Place,
    Poly,
    cartier_local,
    iota_embed,
    iota_infinite,
    iota_inverse,
    parse_t_poly,
)
from tmotive.charpoly import det_one_minus_t
from tmotive.completion import det_one_minus_t_local
from conftest import random_poly


@pytest.fixture(scope="module")
def rings():
    F2, F3 = Field(2), Field(3)
    F4 = Field(2, 2, [1, 1, 1])
    return [
        LocalRing(Place.finite(parse_t_poly(F2, "t")), 8),
        LocalRing(Place.finite(parse_t_poly(F2, "t^2+t+1")), 5),
        LocalRing(Place.finite(parse_t_poly(F3, "t+1")), 6),
        LocalRing(Place.finite(parse_t_poly(F3, "t^2+1")), 4),
        LocalRing(Place.finite(parse_t_poly(F4, "t^2+t+a")), 3),
        LocalRing(Place.infinite(F2), 6),
        LocalRing(Place.infinite(F3), 5),
    ]


def random_element(ring, rng):
    return ring.from_u_coeffs([rng.randrange(ring.ff.q) for _ in range(ring.N)])


class TestPlace:
    def test_validation(self, F2):
        with pytest.raises(ValueError):
            Place.finite(Poly(F2, [1, 0, 1]))  # (t+1)^2 reducible
        with pytest.raises(ValueError):
            Place.finite(Poly(F2, [1]))
        assert Place.infinite(F2).degree == 1
        assert Place.finite(parse_t_poly(F2, "t^2+t+1")).degree == 2


class TestIota:
    def test_spec_examples(self, F2):
        v = parse_t_poly(F2, "t^2+t+1")
        ring = LocalRing(Place.finite(v), 2)
        x = Poly.x(F2)
        assert iota_embed(x, ring) == ring.from_fv(ring.a) + ring.monomial_u(1)
        # Taylor shift: iota(x^2) = (a+u)^2 = (a^2) + u^2; at N=2 the u^2 term
        # is truncated away
        a2 = ring.fv.mul(ring.a, ring.a)
        assert iota_embed(x * x, ring) == ring.from_fv(a2)
        ring_t = LocalRing(Place.finite(parse_t_poly(F2, "t")), 4)
        assert iota_embed(x, ring_t) == ring_t.monomial_u(1)

    def test_ring_isomorphism(self, rings, rng):
        # 1000 random pairs across the finite rings
        finite = [r for r in rings if not r.place.is_infinite]
        per = 1000 // len(finite)
        for ring in finite:
            ff = ring.ff
            for _ in range(per):
                f = random_poly(ff, rng, 10)
                g = random_poly(ff, rng, 10)
                assert iota_embed(f, ring) + iota_embed(g, ring) == iota_embed(f + g, ring)
                assert iota_embed(f, ring) * iota_embed(g, ring) == iota_embed(f * g, ring)

    def test_roundtrip(self, rings, rng):
        for ring in rings:
            if ring.place.is_infinite:
                continue
            v = ring.place.v
            mod = v**ring.N
            for _ in range(60):
                f = random_poly(ring.ff, rng, 12)
                assert iota_inverse(iota_embed(f, ring)) == f % mod

    def test_ideal_correspondence(self, rings):
        for ring in rings:
            if ring.place.is_infinite:
                continue
            for k in range(1, ring.N):
                assert iota_embed(ring.place.v**k, ring).valuation() == k

    def test_infinite_embedding(self, F2):
        ring = LocalRing(Place.infinite(F2), 6)
        assert iota_infinite(Poly.one(F2), 0, ring) == ring.one()
        assert iota_infinite(Poly.x(F2), 1, ring) == ring.one()
        assert iota_infinite(Poly(F2, [1, 1]), 1, ring) == ring.one() + ring.monomial_u(1)
        with pytest.raises(ValueError):
            iota_infinite(Poly(F2, [0, 0, 1]), 1, ring)

    def test_wrong_place_kind(self, F2):
        ring = LocalRing(Place.infinite(F2), 4)
        with pytest.raises(ValueError):
            iota_embed(Poly.x(F2), ring)
        ring2 = LocalRing(Place.finite(parse_t_poly(F2, "t")), 4)
        with pytest.raises(ValueError):
            iota_infinite(Poly.x(F2), 1, ring2)


class TestValuation:
    def test_examples(self, F2):
        ring = LocalRing(Place.finite(parse_t_poly(F2, "t")), 5)
        assert ring.zero().valuation() == AtLeastN(5)
        x = ring.monomial_u(3) + ring.monomial_u(4)
        assert x.valuation() == 3
        assert (ring.one() + ring.monomial_u(1)).valuation() == 0

    def test_additive_on_products(self, rings, rng):
        for ring in rings:
            for _ in range(40):
                x, y = random_element(ring, rng), random_element(ring, rng)
                vx, vy = x.valuation(), y.valuation()
                if isinstance(vx, AtLeastN) or isinstance(vy, AtLeastN):
                    continue
                if vx + vy < ring.N:
                    assert (x * y).valuation() == vx + vy


class TestArithmetic:
    def test_inverse(self, rings, rng):
        for ring in rings:
            n = 0
            while n < 15:
                x = random_element(ring, rng)
                if x.is_zero() or x.valuation() != 0:
                    continue
                assert x * x.inverse() == ring.one()
                n += 1

    def test_mixed_precision_truncates(self, F2):
        ring8 = LocalRing(Place.finite(parse_t_poly(F2, "t")), 8)
        ring4 = ring8.at_precision(4)
        x = ring8.monomial_u(1) + ring8.monomial_u(6)
        y = ring4.one()
        z = x + y
        assert z.ring.N == 4
        assert z == ring4.one() + ring4.monomial_u(1)

    def test_unit_shift(self, F3):
        ring = LocalRing(Place.finite(parse_t_poly(F3, "t")), 6)
        x = ring.monomial_u(2)
        assert x.unit_shift(-2) == ring.one()
        with pytest.raises(ArithmeticError):
            (ring.one() + x).unit_shift(-1)


class TestCartierLocal:
    def test_spec_examples(self, F3, F2):
        ring = LocalRing(Place.finite(parse_t_poly(F3, "t")), 4)
        c = ring.one() + ring.monomial_u(1)
        P = LocalThetaPoly.from_coeffs([ring.zero(), ring.zero(), c])
        out = cartier_local(P)
        assert out.deg_theta() == 0 and out.theta_coeff(0) == c
        P4 = LocalThetaPoly.from_coeffs([ring.zero()] * 4 + [ring.one()])
        assert all(cartier_local(P4).theta_coeff(j).is_zero() for j in range(2))
        ring2 = LocalRing(Place.finite(parse_t_poly(F2, "t")), 4)
        cs = [ring2.monomial_u(k) for k in range(4)]
        sel = cartier_local(LocalThetaPoly.from_coeffs(cs))
        assert sel.theta_coeff(0) == cs[1] and sel.theta_coeff(1) == cs[3]

    def test_scalar_commutation(self, rings, rng):
        for ring in rings:
            for _ in range(10):
                coeffs = [random_element(ring, rng) for _ in range(7)]
                P = LocalThetaPoly.from_coeffs(coeffs)
                s = random_element(ring, rng)
                lhs = cartier_local(P.scale(s))
                rhs = cartier_local(P).scale(s)
                for j in range(max(lhs.deg_theta(), rhs.deg_theta()) + 1):
                    assert lhs.theta_coeff(j) == rhs.theta_coeff(j)


class TestThetaPoly:
    def test_mul_matches_schoolbook(self, rings, rng):
        for ring in rings:
            for _ in range(8):
                A = LocalThetaPoly.from_coeffs([random_element(ring, rng) for _ in range(3)])
                B = LocalThetaPoly.from_coeffs([random_element(ring, rng) for _ in range(4)])
                got = A.mul(B)
                want = [ring.zero() for _ in range(A.deg_theta() + B.deg_theta() + 1)]
                for i in range(A.deg_theta() + 1):
                    for j in range(B.deg_theta() + 1):
                        want[i + j] = want[i + j] + A.theta_coeff(i) * B.theta_coeff(j)
                for j, w in enumerate(want):
                    assert got.theta_coeff(j) == w


class TestFastCharpoly:
    def test_matches_generic(self, rings, rng):
        for ring in rings:
            for n in (1, 2, 3, 4):
                mat = [[random_element(ring, rng) for _ in range(n)] for _ in range(n)]
                fast = det_one_minus_t_local(mat)
                slow = det_one_minus_t(mat, ring.one())
                assert len(fast) == n + 1
                for a, b in zip(fast, slow):
                    assert a == b

    def test_spec_example(self, F2):
        ring = LocalRing(Place.finite(parse_t_poly(F2, "t")), 4)
        u = ring.monomial_u(1)
        cs = det_one_minus_t_local([[u, ring.one()], [ring.zero(), u]])
        assert cs[0] == ring.one()
        assert cs[1].is_zero()  # -2u = 0 in char 2
        assert cs[2] == u * u

    def test_block_triangular_product(self, F3, rng):
        ring = LocalRing(Place.finite(parse_t_poly(F3, "t")), 5)
        A = [[random_element(ring, rng) for _ in range(2)] for _ in range(2)]
        B = [[random_element(ring, rng) for _ in range(2)] for _ in range(2)]
        big = [
            [A[0][0], A[0][1], random_element(ring, rng), random_element(ring, rng)],
            [A[1][0], A[1][1], random_element(ring, rng), random_element(ring, rng)],
            [ring.zero(), ring.zero(), B[0][0], B[0][1]],
            [ring.zero(), ring.zero(), B[1][0], B[1][1]],
        ]
        pa = det_one_minus_t_local(A)
        pb = det_one_minus_t_local(B)
        prod = [ring.zero()] * 5
        for i, a in enumerate(pa):
            for j, b in enumerate(pb):
                prod[i + j] = prod[i + j] + a * b
        got = det_one_minus_t_local(big)
        for a, b in zip(got, prod):
            assert a == b


class TestDisplay:
    def test_dump_roundtrip_strings(self, F3):
        ring = LocalRing(Place.finite(parse_t_poly(F3, "t^2+1")), 3)
        x = ring.from_fv(ring.a) + ring.monomial_u(2)
        d = x.dump()
        assert len(d) == 3 and d[0] == "g" and d[1] == "0" and d[2] == "1"
