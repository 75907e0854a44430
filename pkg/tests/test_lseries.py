import pytest

from tmotive import (
    Field,
    LocalRing,
    Place,
    Poly,
    PolyFrac,
    carlitz,
    carlitz_power_oracle,
    choose_c,
    conjecture_scan,
    dual,
    dual_char_poly,
    euler_product_oracle,
    from_matrix,
    h_sequence,
    kw_integers,
    local_factor,
    lseries,
    lseries_general,
    maximal_model_global,
    order_of_vanishing_at_one,
    parse_bivar,
    parse_t_poly,
    rho_finite,
    rho_infinite,
    tensor_power,
    twist_congruence_check,
)
from tmotive.lseries import LSeriesError, _lseries_compute
from tmotive.motive import Motive


def place(ff, s):
    return Place.infinite(ff) if s == "inf" else Place.finite(parse_t_poly(ff, s))


class TestParams:
    def test_h_sequence(self):
        assert h_sequence(1, 4, 3) == [1, 1, 1, 1, 1]
        assert h_sequence(7, 3, 3) == [7, 3, 1, 1]
        assert h_sequence(-2, 2, 3) == [-2, 0, 0]

    def test_kw_integers(self):
        assert kw_integers(1, 3, 1) == ([1], [1])
        assert kw_integers(3, 2, 2) == ([1, 2], [0, 0])
        assert kw_integers(4, 3, 2) == ([1, 2], [1, 1])

    def test_kw_range_random(self, rng):
        for q in (2, 3, 4):
            for d in (1, 2, 3):
                for _ in range(60):
                    h_c = rng.randrange(-40, 40)
                    ks, ws = kw_integers(h_c, q, d)
                    assert all(0 <= w <= q - 1 for w in ws)
                    # the defining identities
                    assert ws[0] == q * ks[1 % d] - ks[0] - h_c
                    for i in range(1, d):
                        assert ws[i] == q * ks[(i + 1) % d] - ks[i]

    def test_choose_c_examples(self, F2, F3):
        assert choose_c(place(F3, "t"), 100, 1, 0, 0, 1).c == 5
        assert choose_c(place(F2, "t^2+t+1"), 10, 1, 0, 0, 0).c == 4
        assert choose_c(Place.infinite(F3), 10, 1, 0, 0, 1).c == 2

    def test_choose_c_monotone(self, F3):
        pl = place(F3, "t")
        last = 0
        for prec in (1, 2, 5, 20, 100, 500):
            c = choose_c(pl, prec, 1, 1, 1, 0).c
            assert c >= last
            last = c

    def test_bad_precision(self, F2):
        with pytest.raises(LSeriesError):
            lseries(carlitz(F2), place(F2, "t"), 0)


class TestRho:
    def test_rho_finite_anchor(self, F3):
        # dual Carlitz, q=3, v=t, c=1: rho = 2 th^3 (u - th)^2 mod u^3
        pr = choose_c(place(F3, "t"), 3, 1, 0, 0, 1)
        assert pr.c == 1
        ring = LocalRing(place(F3, "t"), 3)
        rho = rho_finite(pr, ring)
        expect = {3: [0, 0, 2], 4: [0, 2, 0], 5: [2, 0, 0]}
        for j in range(rho.deg_theta() + 1):
            digs = [int(rho.theta_coeff(j).arr[0, 0, k]) for k in range(3)]
            assert digs == expect.get(j, [0, 0, 0])

    def test_rho_finite_unit_mod_u(self, F3, F2):
        # the constant term in u is a nonzero multiple of (a - theta)-type
        # factors: its leading theta-coefficient is a unit
        for ff, vs, M in ((F3, "t", dual(carlitz(F3))), (F2, "t+1", carlitz(F2))):
            pr = choose_c(place(ff, vs), 4, 1, M.d_t, M.d_theta, M.h)
            ring = LocalRing(place(ff, vs), pr.N)
            rho = rho_finite(pr, ring)
            lead = rho.theta_coeff(rho.deg_theta())
            assert not lead.is_zero()

    def test_rho_effective_c0(self, F2):
        # h <= 0 and c = 0, d = 1: rho = v(theta)^(q-1) (a - theta)^(w_0)
        pr = choose_c(place(F2, "t"), 1, 1, 0, 0, -1)
        assert pr.c == 0
        ring = LocalRing(place(F2, "t"), 1)
        rho = rho_finite(pr, ring)
        # h_c = h = -1; k_0 = ceil(-1/1) = -1, w_0 = 2(-1)-(-1)-(-1) = 0
        # so rho = v(theta) = theta
        assert rho.deg_theta() == 1
        assert rho.theta_coeff(0).is_zero() and not rho.theta_coeff(1).is_zero()

    def test_rho_infinite_anchor(self, F3):
        pr = choose_c(Place.infinite(F3), 3, 1, 0, 0, 1)
        ring = LocalRing(Place.infinite(F3), pr.N)
        rho = rho_infinite(pr, ring)
        for j, want in ((0, [1, 0, 0]), (1, [0, 1, 0]), (2, [0, 0, 1])):
            digs = [int(rho.theta_coeff(j).arr[0, 0, k]) for k in range(ring.N)]
            assert digs == want[: ring.N]

    def test_rho_infinite_trivial(self, F3):
        pr = choose_c(Place.infinite(F3), 4, 1, 1, 0, 0)
        ring = LocalRing(Place.infinite(F3), pr.N)
        rho = rho_infinite(pr, ring)  # h = 0: all exponents vanish
        assert rho.deg_theta() == 0 and rho.theta_coeff(0) == ring.one()


class TestAssembly:
    def test_dual_carlitz_matrix_frozen(self, F3):
        # independently expanded: Q = rho = 2u^2 th^3 + 2u th^4 + 2 th^5,
        # s_max = 3, entries M[s'][s] = theta-coeff at 3 s' + 2 - s
        from tmotive.lseries import assemble_dual_matrix

        Cd = dual(carlitz(F3))
        pr = choose_c(place(F3, "t"), 3, 1, 0, 0, 1)
        ring = LocalRing(place(F3, "t"), 3)
        mat = assemble_dual_matrix(Cd, pr, ring)
        assert len(mat) == 4
        two = ring.from_base(2)
        u = ring.monomial_u(1)
        expected = {
            (1, 0): two,
            (1, 1): two * u,
            (1, 2): two * u * u,
            (2, 3): two,
        }
        for sp in range(4):
            for s in range(4):
                want = expected.get((sp, s), ring.zero())
                assert mat[sp][s] == want, (sp, s)

    def test_shift_structure_rank_one(self, F2):
        # rho = th^(q-1), b = 1: entry((s'),(s)) = 1 iff s = q s'
        from tmotive.lseries import assemble_dual_matrix
        from tmotive.completion import LocalThetaPoly

        C = carlitz(F2)
        pr = choose_c(place(F2, "t"), 4, 1, 0, 0, -1)
        ring = LocalRing(place(F2, "t"), pr.N)
        mat = assemble_dual_matrix(C, pr, ring)
        # with rho = theta * (u - theta)^(2 h_1 - h_0) ... this anchors only
        # the finite-case plumbing; the exact selection rule is checked in
        # test_dual_carlitz_matrix_frozen
        assert len(mat) == pr.dim


class TestDualCharPoly:
    def test_edge_cases(self, F2):
        ring = LocalRing(place(F2, "t"), 4)
        u = ring.monomial_u(1)
        cs = dual_char_poly([[ring.zero()]])
        assert cs[0] == ring.one() and cs[1].is_zero()
        b = u + ring.one()
        cs = dual_char_poly([[b]])
        assert cs[0] == ring.one() and cs[1] == -b


class TestLSeriesAnchors:
    def test_carlitz_f2_at_t(self, F2):
        L = lseries(carlitz(F2), place(F2, "t"), 4)
        ring = LocalRing(place(F2, "t"), 4)
        assert L.coefficient(0) == ring.one()
        assert L.coefficient(1) == ring.one() + ring.monomial_u(1)  # t + 1
        assert L.coefficient(2) == ring.monomial_u(1)  # t
        for n in range(3, L.degree() + 1):
            assert L.coefficient(n).is_zero()

    def test_carlitz_f2_at_infinity(self, F2):
        L = lseries(carlitz(F2), Place.infinite(F2), 8)
        ring = LocalRing(Place.infinite(F2), 8)
        assert L.coefficient(0) == ring.one()
        assert L.coefficient(1) == ring.one()
        for n in range(2, L.degree() + 1):
            if L.certified[n] > 0:
                assert L.coefficient(n).truncate(L.certified[n]).is_zero()

    def test_dual_carlitz_valuations(self, F3):
        L = lseries(dual(carlitz(F3)), place(F3, "t"), 100)
        assert [L.coefficient(n).valuation() for n in range(5)] == [0, 1, 6, 23, 76]

    def test_a0_is_one_and_rank0(self, F2, F3, example_motive):
        for M, ff in ((carlitz(F2), F2), (example_motive, F2), (dual(carlitz(F3)), F3)):
            for pl in (place(ff, "t"), Place.infinite(ff)):
                L = lseries(M, pl, 4)
                assert L.coefficient(0) == LocalRing(pl, 4).one()
        M0 = from_matrix([], ff=F2)
        L = lseries(M0, place(F2, "t"), 4)
        assert L.degree() == 0 and L.coefficient(0) == LocalRing(place(F2, "t"), 4).one()

    def test_effectivity(self, F2):
        # effective motives: coefficients stabilize as prec grows and equal
        # the brute-force monic sums (oracle computed first, exactly)
        C = carlitz(F2)
        from tmotive.ffield import _monic_of_degree
        from tmotive.completion import iota_embed, iota_infinite

        sums = {}
        for n in range(0, 6):
            acc = Poly.zero(F2) if n else Poly.one(F2)
            if n:
                for f in _monic_of_degree(F2, n):
                    acc = acc + f
            sums[n] = acc
        for vs in ("inf", "t"):
            pl = place(F2, vs)
            L1 = lseries(C, pl, 12)
            L2 = lseries(C, pl, 24)
            for n in range(min(L1.degree(), L2.degree()) + 1):
                c1 = min(12, L1.certified[n])
                if c1 <= 0:
                    continue
                assert L1.coefficient(n).truncate(c1) == L2.coefficient(n).truncate(c1)
            ring = LocalRing(pl, 12)
            for n in range(0, 6):
                if vs == "t":
                    # exclude multiples of t
                    s = Poly.zero(F2) if n else Poly.one(F2)
                    if n:
                        for f in _monic_of_degree(F2, n):
                            if f.coeff(0) != 0:
                                s = s + f
                    want = iota_embed(s, ring)
                else:
                    # at infinity the monic sums collapse to constants
                    s = sums[n]
                    assert s.degree() <= 0
                    want = ring.from_base(s.coeff(0)) if not s.is_zero() else ring.zero()
                if n <= L1.degree():
                    cert = min(12, L1.certified[n])
                    assert L1.coefficient(n).truncate(cert) == want.truncate(cert), (vs, n)

    def test_truncation_consistency(self, F3):
        Cd = dual(carlitz(F3))
        pl = place(F3, "t")
        L1 = lseries(Cd, pl, 10)
        L2 = lseries(Cd, pl, 40)
        for n in range(min(L1.degree(), L2.degree()) + 1):
            assert L1.coefficient(n) == L2.coefficient(n).truncate(10)

    def test_nucleus_independence(self, F3, F2, example_motive):
        # enlarging s_max leaves det(1 - T Phi*) unchanged mod v^N
        for M, ff, pl in (
            (dual(carlitz(F3)), F3, place(F3, "t")),
            (example_motive, F2, place(F2, "t+1")),
        ):
            p0, r0, chi0 = _lseries_compute(M, pl, 8)
            p1, r1, chi1 = _lseries_compute(M, pl, 8, s_max_override=p0.s_max + 2)
            assert len(chi1) > len(chi0)
            for n in range(len(chi1)):
                a = chi0[n] if n < len(chi0) else r0.zero()
                assert a == chi1[n], n


class TestOracles:
    def test_euler_spec_examples(self, F2):
        C = carlitz(F2)
        o = euler_product_oracle(C, Place.infinite(F2), 3, 8)
        ring = LocalRing(Place.infinite(F2), 8)
        assert o[0] == ring.one() and o[1] == ring.one()
        assert o[2].is_zero() and o[3].is_zero()
        o = euler_product_oracle(C, place(F2, "t"), 2, 8)
        ring = LocalRing(place(F2, "t"), 8)
        assert o[1] == ring.one() + ring.monomial_u(1)
        assert o[2] == ring.monomial_u(1)
        o = euler_product_oracle(C, place(F2, "t"), 0, 4)
        assert len(o) == 1 and o[0] == LocalRing(place(F2, "t"), 4).one()

    def test_carlitz_power_oracle(self, F3):
        pl = place(F3, "t")
        o = carlitz_power_oracle(1, pl, 8, 1)
        assert o[0] == LocalRing(pl, 8).one()
        assert o[1].valuation() == 1
        L = lseries(dual(carlitz(F3)), pl, 8)
        assert o[1] == L.coefficient(1)

    @pytest.mark.slow
    def test_carlitz_power_26(self, F3):
        # reference valuation for the 26th tensor power: v_t(a_2) = 28
        o = carlitz_power_oracle(26, place(F3, "t"), 40, 2)
        assert o[2].valuation() == 28

    def test_equivalence_small_grid(self, F2, F3, example_motive):
        cases = [
            (carlitz(F2), F2, ("t", "t+1", "inf", "t^2+t+1")),
            (dual(carlitz(F3)), F3, ("t", "inf")),
            (example_motive, F2, ("t", "t+1", "inf")),
        ]
        for M, ff, places in cases:
            for vs in places:
                pl = place(ff, vs)
                L = lseries_general(M, pl, 16)
                O = euler_product_oracle(M, pl, 4, 16)
                for n in range(min(4, L.degree()) + 1):
                    cert = min(16, L.certified[n])
                    if cert <= 0:
                        continue
                    assert L.coefficient(n).truncate(cert) == O[n].truncate(cert), (vs, n)
                for n in range(L.degree() + 1, 5):
                    v = O[n].valuation()
                    assert hasattr(v, "n") or v >= 16


class TestExtensionBaseField:
    def test_f4_end_to_end(self):
        # exercises the e = 2 numpy reduction path through the full pipeline
        F4 = Field(2, 2, [1, 1, 1])
        C = carlitz(F4)
        for vs in ("t", "inf"):
            pl = place(F4, vs)
            L = lseries_general(C, pl, 8)
            O = euler_product_oracle(C, pl, 3, 8)
            for n in range(min(3, L.degree()) + 1):
                cert = min(8, L.certified[n])
                if cert <= 0:
                    continue
                assert L.coefficient(n).truncate(cert) == O[n].truncate(cert), (vs, n)
        # deg-1 monic sum over F_4: sum of (t + c) over c in F_4 is 0, so a_1 = 0
        Lt = lseries(C, place(F4, "t"), 8)
        v1 = Lt.coefficient(1).valuation()
        assert hasattr(v1, "n") or v1 >= 1  # a_1 = -(sum of nonzero c) = 0... embedded
        # local factor at a degree-2 place of F_4[t]
        pth = parse_t_poly(F4, "t^2+t+a")
        lf = local_factor(C, pth)
        assert lf.coeffs[1] == PolyFrac(-pth)


class TestGeneralPipeline:
    def test_maximal_input_identical(self, example_motive, F2):
        pl = place(F2, "t")
        L1 = lseries(example_motive, pl, 16)
        L2 = lseries_general(example_motive, pl, 16)
        assert not L2.recombined
        for n in range(L1.degree() + 1):
            assert L1.coefficient(n) == L2.coefficient(n)

    def test_scaled_carlitz_recovery(self, scaled_carlitz, F3):
        C = carlitz(F3)
        for vs in ("inf", "t", "t+1"):
            pl = place(F3, vs)
            Lg = lseries_general(scaled_carlitz, pl, 12)
            Lc = lseries_general(C, pl, 12)
            assert Lg.recombined or vs == "t"  # at v=t the bad place equals v
            nmax = min(Lg.degree(), Lc.degree())
            for n in range(nmax + 1):
                cert = min(12, Lg.certified[n], Lc.certified[n])
                if cert <= 0:
                    continue
                assert Lg.coefficient(n).truncate(cert) == Lc.coefficient(n).truncate(cert)


class TestVanishingOrders:
    def test_exact_examples(self, F2):
        one = PolyFrac(Poly.one(F2))
        zero = PolyFrac(Poly.zero(F2))
        assert order_of_vanishing_at_one([one]) == (0, True)
        assert order_of_vanishing_at_one([one, -one]) == (1, True)  # 1 - T
        assert order_of_vanishing_at_one([]) == (0, True)

    def test_local_ring_orders(self, example_motive, F2):
        L = lseries_general(example_motive, place(F2, "t"), 64)
        order, cert = order_of_vanishing_at_one(L.coeffs)
        assert order == 3 and not cert
        assert local_factor(example_motive, parse_t_poly(F2, "t")).order_at_one() == 1

    def test_sentinel(self, F2):
        ring = LocalRing(place(F2, "t"), 4)
        order, cert = order_of_vanishing_at_one([ring.zero(), ring.zero()])
        assert order == 2 and not cert  # > degree: everything vanished

    def test_carlitz_P_order(self, F2):
        # P = 1 - t T: at T = 1 the value 1 - t is nonzero
        assert local_factor(carlitz(F2), parse_t_poly(F2, "t")).order_at_one() == 0


class TestScan:
    def test_example_degree_two(self, example_motive):
        rows = conjecture_scan(example_motive, 2, 64)
        got = {r["place"].to_str("t"): (r["ord_P"], r["ord_L"]) for r in rows}
        assert got == {"t": (1, 3), "t + 1": (0, 2), "t^2 + t + 1": (0, 2)}
        assert all(r["difference"] == 2 for r in rows)

    def test_example_degree_three_row(self, example_motive, F2):
        pl = place(F2, "t^3+t+1")
        L = lseries_general(example_motive, pl, 64)
        order, _ = order_of_vanishing_at_one(L.coeffs)
        assert order == 3
        assert local_factor(example_motive, pl.v).order_at_one() == 1

    def test_rank0(self, F2):
        M0 = from_matrix([], ff=F2)
        rows = conjecture_scan(M0, 1, 8)
        assert all(r["ord_L"] == 0 and r["ord_P"] == 0 for r in rows)


class TestTwistContinuity:
    def test_trivial(self, F2):
        assert twist_congruence_check(carlitz(F2), place(F2, "t"), 3, 3, 1)

    def test_spec_examples(self, F2, F3):
        assert twist_congruence_check(carlitz(F2), place(F2, "t"), 0, 2, 1)
        assert twist_congruence_check(carlitz(F3), place(F3, "t"), 0, 6, 1)

    def test_hypothesis_violation(self, F3):
        with pytest.raises(LSeriesError):
            twist_congruence_check(carlitz(F3), place(F3, "t"), 0, 1, 1)

    def test_degree_two_place(self, F2):
        assert twist_congruence_check(carlitz(F2), place(F2, "t^2+t+1"), 0, 6, 1)
