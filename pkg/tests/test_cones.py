import random
from fractions import Fraction

import pytest

from parahoric.basechange import BaseChangeContext
from parahoric.cones import (
    CompactTraceFunctional,
    ConeCalculus,
    ConeContext,
    arthur_sum,
    atiyah_bott_trace,
    chamber_constancy_check,
    chamber_decomposition,
    denominator_one_count,
    fixed_point_indices,
    h_map,
    levi_singular_lattice,
    norm_kernel_basis,
    tau,
    tau_hat,
    theta_fixed_numeric_character,
    theta_regular,
    unitary_part_invariance,
    wprime_set,
)
from parahoric.laurent import MLaurent
from parahoric.rootdata import (
    build_root_datum,
    flip_automorphism,
    identity_automorphism,
    weyl_elements,
)
from parahoric.spectral import symbolic_character


def split_calc(tag):
    d = build_root_datum(tag)
    bc = BaseChangeContext(d, identity_automorphism(d, 1), 1)
    return d, bc, ConeCalculus(bc)


@pytest.fixture(scope="module")
def flip_calc():
    d = build_root_datum("A2")
    bc = BaseChangeContext(d, flip_automorphism(d, 2), 2)
    return d, bc, ConeCalculus(bc)


class TestHMap:
    def test_zero(self):
        cc = ConeContext.from_datum(build_root_datum("A2"))
        assert h_map(cc, (0, 0), (0,)) == (0, 0)

    def test_full_levi_semisimple(self):
        cc = ConeContext.from_datum(build_root_datum("C2"))
        assert h_map(cc, (3, -1), (0, 1)) == (0, 0)

    def test_a2_two_term_average(self):
        cc = ConeContext.from_datum(build_root_datum("A2"))
        got = h_map(cc, (1, 0), (0,))
        # average of alpha_1^vee and s_1(alpha_1^vee) = -alpha_1^vee + ...
        from parahoric.intlinalg import mat_vec
        d = build_root_datum("A2")
        s1 = d.reflection_matrix(0)
        img = mat_vec(s1, (1, 0))
        want = tuple(Fraction(a + b, 2) for a, b in zip((1, 0), img))
        assert got == want

    def test_idempotent_and_invariant(self):
        cc = ConeContext.from_datum(build_root_datum("C2"))
        from parahoric.intlinalg import mat_vec
        for levi in [(), (0,), (1,)]:
            H = h_map(cc, (5, -3), levi)
            assert h_map(cc, H, levi) == H
            for m in cc.levi_group(levi):
                assert tuple(mat_vec(m, H)) == H


class TestTau:
    def test_strict_at_origin(self):
        cc = ConeContext.from_datum(build_root_datum("A1"))
        assert tau(cc, (), (0,)) == 0
        assert tau_hat(cc, (), (0,)) == 0

    def test_full_parabolic_constant_one(self):
        cc = ConeContext.from_datum(build_root_datum("A2"))
        assert tau(cc, (0, 1), (0, 0)) == 1
        assert tau_hat(cc, (0, 1), (-5, 3)) == 1

    def test_a1_positive(self):
        cc = ConeContext.from_datum(build_root_datum("A1"))
        assert tau(cc, (), (1,)) == 1
        assert tau_hat(cc, (), (1,)) == 1

    def test_rank_one_hat_equals_tau(self):
        cc = ConeContext.from_datum(build_root_datum("A1"))
        for h in range(-4, 5):
            assert tau(cc, (), (h,)) == tau_hat(cc, (), (h,))

    def test_c2_coordinates_solved(self):
        cc = ConeContext.from_datum(build_root_datum("C2"))
        # H = alpha_1^vee: coordinates (1, 0): strict positivity fails at 0
        assert tau_hat(cc, (), (1, 0)) == 0
        assert tau_hat(cc, (1,), (1, 0)) == 1


class TestArthur:
    def test_q_equals_g(self):
        cc = ConeContext.from_datum(build_root_datum("C2"))
        for H in [(0, 0), (7, -3), (-2, 5)]:
            assert arthur_sum(cc, (0, 1), H) == 1

    def test_rank_one_closed_form(self):
        cc = ConeContext.from_datum(build_root_datum("A1"))
        for h in range(-6, 7):
            # -tau_hat + tau = 0 since the two cones coincide in rank 1
            assert arthur_sum(cc, (), (h,)) == 0

    @pytest.mark.parametrize("tag", ["A2", "C2", "G2", "A3", "C3"])
    def test_random_points(self, tag):
        import itertools
        d = build_root_datum(tag)
        cc = ConeContext.from_datum(d)
        rng = random.Random(101)
        for _ in range(150):
            H = tuple(rng.randint(-25, 25) for _ in range(d.rank))
            for size in range(d.nsimple + 1):
                for levi in itertools.combinations(range(d.nsimple), size):
                    want = 1 if size == d.nsimple else 0
                    assert arthur_sum(cc, levi, H) == want


class TestChi:
    def test_zero_killed_by_proper_cones(self, flip_calc):
        d, bc, calc = flip_calc
        assert calc.chi_N((0, 0), ()) == 0
        assert calc.chi_hat_N((0, 0), ()) == 0

    def test_split_scaling_invariance(self):
        d, bc, calc = split_calc("A2")
        d3 = build_root_datum("A2")
        bc3 = BaseChangeContext(d3, identity_automorphism(d3, 3), 3)
        calc3 = ConeCalculus(bc3)
        rng = random.Random(5)
        for _ in range(60):
            lam = (rng.randint(-6, 6), rng.randint(-6, 6))
            for levi in [(), (0,), (1,)]:
                assert calc.chi_N(lam, levi) == calc3.chi_N(lam, levi)

    def test_flip_coweight(self, flip_calc):
        d, bc, calc = flip_calc
        # strictly dominant vectors have chi_N = 1 for the Borel
        assert calc.chi_N((1, 1), ()) == 1
        assert calc.chi_hat_N((1, 1), ()) == 1

    def test_criterion_on_levi_compact_locus(self, flip_calc):
        d, bc, calc = flip_calc
        rng = random.Random(17)
        for levi in [(), (0,)]:
            basis = levi_singular_lattice(calc, levi)
            for _ in range(40):
                co = [rng.randint(-6, 6) for _ in basis]
                lam = tuple(sum(c * b[i] for c, b in zip(co, basis))
                            for i in range(2))
                assert calc.chi_N(lam, levi) == calc.eigenvalue_criterion(lam, levi)


class TestChambers:
    def test_a1_two_chambers(self):
        d, bc, calc = split_calc("A1")
        chs, covs = chamber_decomposition(calc)
        assert len(chs) == 2 and len(covs) == 1

    @pytest.mark.parametrize("tag", ["A2", "C2", "G2"])
    def test_count_matches_central_arrangement_formula(self, tag):
        # oracle: a central line arrangement with L distinct lines cuts the
        # plane into exactly 2L sectors
        d, bc, calc = split_calc(tag)
        chs, covs = chamber_decomposition(calc)
        assert len(chs) == 2 * len(covs)

    def test_flip_chambers(self, flip_calc):
        d, bc, calc = flip_calc
        chs, covs = chamber_decomposition(calc)
        assert len(chs) == 2 * len(covs)
        for ch in chs:
            ok, wit = chamber_constancy_check(calc, ch, covs, samples=40, seed=9)
            assert ok, wit

    def test_constancy_with_sampling_oracle(self):
        d, bc, calc = split_calc("C2")
        chs, covs = chamber_decomposition(calc)
        for ch in chs[:3]:
            ok, wit = chamber_constancy_check(calc, ch, covs, samples=25, seed=1)
            assert ok, wit

    def test_wprime(self, flip_calc):
        d, bc, calc = flip_calc
        W = weyl_elements(d)
        chs, covs = chamber_decomposition(calc)
        # P = G: empty conditions, all of W qualifies
        for ch in chs:
            assert wprime_set(calc, tuple(range(calc.fold.nsimple)), ch, covs,
                              checks=5, seed=2) == frozenset(W.elements())
        # the union over chambers of W'(B) covers W
        seen = set()
        for ch in chs:
            seen |= wprime_set(calc, (), ch, covs, checks=5, seed=2)
        assert seen == set(W.elements())

    def test_a1_wprime_half_lines(self):
        d, bc, calc = split_calc("A1")
        chs, covs = chamber_decomposition(calc)
        sets = sorted(tuple(sorted(wprime_set(calc, (), ch, covs, seed=3)))
                      for ch in chs)
        assert sets == [(0,), (1,)]


class TestCompactTrace:
    def test_zero_orbit_killed(self):
        d, bc, calc = split_calc("A1")
        xi = symbolic_character(1)
        fn = CompactTraceFunctional(calc, (), xi, 0)
        assert fn.evaluate((0,)).is_zero()

    def test_full_group_gives_orbit_sum(self):
        d, bc, calc = split_calc("A1")
        xi = symbolic_character(1)
        fn = CompactTraceFunctional(calc, (0,), xi, 0)
        got = fn.evaluate((1,))
        assert got == xi.value((1,)) + xi.value((-1,))

    def test_a1_single_surviving_term(self):
        d, bc, calc = split_calc("A1")
        xi = symbolic_character(1)
        fn = CompactTraceFunctional(calc, (), xi, 0)
        # orbit {a, -a}: the cone keeps exactly the positive direction
        assert fn.evaluate((1,)) == xi.value((1,))

    def test_eta_twist(self):
        d, bc, calc = split_calc("A1")
        W = weyl_elements(d)
        xi = symbolic_character(1)
        s = W.index[d.reflection_matrix(0)]
        fn = CompactTraceFunctional(calc, (), xi, s)
        assert fn.evaluate((1,)) == xi.value((-1,))

    def test_weighted_scalar_extends_orbit_functional(self):
        from parahoric.cones import compact_trace_scalar
        from parahoric.hecke import orbit_sum
        d, bc, calc = split_calc("C2")
        xi = symbolic_character(2)
        for levi in [(), (0,), (1,)]:
            for mu in [(1, 1), (1, 2), (2, 2)]:
                fn = CompactTraceFunctional(calc, levi, xi, 0)
                assert fn.evaluate(mu) == compact_trace_scalar(
                    calc, levi, xi, orbit_sum(d, mu))

    def test_weighted_scalar_is_linear(self):
        from parahoric.basechange import central_product
        from parahoric.cones import compact_trace_scalar
        from parahoric.hecke import CentralElement, orbit_sum
        from parahoric.laurent import Laurent
        d, bc, calc = split_calc("A2")
        xi = symbolic_character(2)
        z1 = orbit_sum(d, (1, 1))
        z2 = orbit_sum(d, (2, 1))
        combo = CentralElement(d, {
            lam: (z1.fn.get(lam, Laurent.zero()) * 3 +
                  z2.fn.get(lam, Laurent.zero()))
            for lam in set(z1.fn) | set(z2.fn)})
        got = compact_trace_scalar(calc, (0,), xi, combo)
        want = compact_trace_scalar(calc, (0,), xi, z1) * 3 + \
            compact_trace_scalar(calc, (0,), xi, z2)
        assert got == want


class TestAtiyahBott:
    def test_regularity_required(self):
        d, bc, calc = split_calc("A1")
        xi = symbolic_character(1)
        with pytest.raises(ValueError, match="regular"):
            atiyah_bott_trace(bc, xi, (0,))

    def test_a1_two_term_hand_formula(self):
        d, bc, calc = split_calc("A1")
        xi = symbolic_character(1)
        got = atiyah_bott_trace(bc, xi, (2,))
        # numerators q^{-<rho,nu>} xi(nu) and q^{<rho,nu>} xi(-nu);
        # the identity summand carries denominator q^{<alpha,nu>}
        want = MLaurent(2, {(-4 - 8, 2): 1, (4, -2): 1})
        assert got == want

    @pytest.mark.parametrize("tag,theta", [("A2", "id"), ("C2", "id"),
                                           ("G2", "id"), ("A2", "flip"),
                                           ("A3", "flip")])
    def test_fixed_point_counts(self, tag, theta):
        d = build_root_datum(tag)
        th = identity_automorphism(d, 1) if theta == "id" \
            else flip_automorphism(d, 2)
        bc = BaseChangeContext(d, th, th.order)
        assert len(fixed_point_indices(bc)) == len(bc.relative.relative_weyl)

    def test_class_function(self, flip_calc):
        d, bc, calc = flip_calc
        W = weyl_elements(d)
        xi = symbolic_character(2)
        nu = (2, 1)
        assert theta_regular(bc, nu)
        base = atiyah_bott_trace(bc, xi, nu)
        for w in bc.relative.relative_weyl:
            assert atiyah_bott_trace(bc, xi, W.act(w, nu)) == base

    def test_antidominant_leading_term(self):
        d, bc, calc = split_calc("C2")
        nu = (-3, -5)
        assert d.is_dominant(tuple(-t for t in nu))
        assert theta_regular(bc, nu)
        assert denominator_one_count(bc, nu) == 1


class TestUnitaryPart:
    def test_trivial_at_zero(self, flip_calc):
        d, bc, calc = flip_calc
        xi = theta_fixed_numeric_character(bc, random.Random(1))
        assert unitary_part_invariance(bc, xi, (0, 0))

    def test_flip_norm_zero_vectors(self, flip_calc):
        d, bc, calc = flip_calc
        rng = random.Random(23)
        basis = norm_kernel_basis(bc)
        assert basis  # the flip has a nontrivial norm kernel
        for _ in range(200):
            xi = theta_fixed_numeric_character(bc, rng)
            co = [rng.randint(-5, 5) for _ in basis]
            nu = tuple(sum(c * b[i] for c, b in zip(co, basis))
                       for i in range(2))
            assert unitary_part_invariance(bc, xi, nu)

    def test_split_vacuous(self):
        d, bc, calc = split_calc("A2")
        # torsion-free lattice, theta = id: only nu = 0 has norm zero
        assert norm_kernel_basis(bc) == []

    def test_nonzero_norm_rejected(self, flip_calc):
        d, bc, calc = flip_calc
        xi = theta_fixed_numeric_character(bc, random.Random(2))
        with pytest.raises(ValueError):
            unitary_part_invariance(bc, xi, (1, 1))
