from fractions import Fraction

import pytest

from parahoric.affine import (
    AlcovePoint,
    ExtAffineWeylElement,
    ParahoricType,
    affine_context,
    affine_generator_permutation,
    base_alcove_membership,
    coset_table_to_text,
    finite_projection,
    fixes_facet,
    fundamental_coweight_point,
    iwasawa_cell,
    iwasawa_cell_match,
    min_coset_reps,
    omega_group,
    parahoric_members,
    pgj_representatives,
    theta_fixed_reps,
)
from parahoric.rootdata import (
    build_root_datum,
    flip_automorphism,
    identity_automorphism,
    weyl_elements,
)


def bfs_lengths(ctx, radius):
    """Geodesic distance in the generator graph: the gallery-count oracle."""
    seeds = [ctx.identity]
    og = ctx.omega_group()
    for _, d, om in og.generators:
        if d > 0:
            seeds.append(om)
    # close the length-zero seeds under each other
    zero = set(seeds)
    frontier = list(zero)
    while frontier:
        new = []
        for x in frontier:
            for y in list(zero):
                z = ctx.mul(x, y)
                if z not in zero:
                    zero.add(z)
                    new.append(z)
        frontier = new
    dist = {x: 0 for x in zero}
    frontier = list(zero)
    depth = 0
    while frontier and depth < radius:
        depth += 1
        new = []
        for x in frontier:
            for g in range(ctx.ngens):
                y = ctx.mul(x, ctx.gen_elems[g])
                if y not in dist:
                    dist[y] = depth
                    new.append(y)
        frontier = new
    return dist


class TestLength:
    def test_identity(self):
        ctx = affine_context(build_root_datum("A1"))
        assert ctx.length(ctx.identity) == 0

    def test_a1_translation(self):
        ctx = affine_context(build_root_datum("A1"))
        assert ctx.length(ctx.translation((1,))) == 2

    def test_pgl2_coweight(self):
        ctx = affine_context(build_root_datum("PGL2"))
        t = ctx.translation((1,))
        assert ctx.length(t) == 1
        word, om = ctx.reduced_word(t)
        assert len(word) == 1
        assert ctx.length(om) == 0 and om != ctx.identity

    @pytest.mark.parametrize("tag", ["A1", "A2", "C2", "PGL2"])
    def test_length_equals_gallery_distance(self, tag):
        # the closed-form length must agree with geodesic distance
        ctx = affine_context(build_root_datum(tag))
        dist = bfs_lengths(ctx, 5)
        for x, d in dist.items():
            assert ctx.length(x) == d

    def test_subadditive_and_inverse_exhaustive(self):
        # exhaustive over the length <= 8 ball in the A1 affine group and
        # over the length <= 4 ball squared in A2
        ctx = affine_context(build_root_datum("A1"))
        ball = list(bfs_lengths(ctx, 8))
        for x in ball:
            assert ctx.length(ctx.inv(x)) == ctx.length(x)
            for y in ball:
                lxy = ctx.length(ctx.mul(x, y))
                assert lxy <= ctx.length(x) + ctx.length(y)
                assert (lxy - ctx.length(x) - ctx.length(y)) % 2 == 0
        ctx2 = affine_context(build_root_datum("A2"))
        ball2 = list(bfs_lengths(ctx2, 4))
        for x in ball2:
            assert ctx2.length(ctx2.inv(x)) == ctx2.length(x)
            for y in ball2:
                lxy = ctx2.length(ctx2.mul(x, y))
                assert lxy <= ctx2.length(x) + ctx2.length(y)

    def test_additivity_iff_reduced(self):
        # length adds exactly when concatenated reduced words stay reduced
        ctx = affine_context(build_root_datum("A1"))
        ball = list(bfs_lengths(ctx, 6))
        for x in ball:
            wx, ox = ctx.reduced_word(x)
            for y in ball:
                xy = ctx.mul(x, y)
                additive = ctx.length(xy) == ctx.length(x) + ctx.length(y)
                wxy, oxy = ctx.reduced_word(xy)
                assert additive == (len(wxy) == len(wx) +
                                    len(ctx.reduced_word(y)[0]))


class TestBruhat:
    def test_reflexive_and_simple(self):
        ctx = affine_context(build_root_datum("A1"))
        s0 = ctx.gen_elems[0]
        assert ctx.bruhat_leq(ctx.identity, s0)
        assert ctx.bruhat_leq(s0, s0)

    def test_a1_interval(self):
        ctx = affine_context(build_root_datum("A1"))
        t = ctx.translation((1,))
        s0, s1 = ctx.gen_elems[0], ctx.gen_elems[1]
        y = ctx.mul(ctx.mul(s0, s1), s0)
        assert ctx.bruhat_leq(t, y)

    def test_subword_characterization(self):
        # x <= y iff some subword of a reduced word of y multiplies to x
        ctx = affine_context(build_root_datum("A1"))
        import itertools
        dist = bfs_lengths(ctx, 4)
        ys = [y for y, d in dist.items() if d <= 4]
        for y in ys:
            word, om = ctx.reduced_word(y)
            if om != ctx.identity:
                continue
            products = set()
            for k in range(len(word) + 1):
                for sub in itertools.combinations(range(len(word)), k):
                    z = ctx.identity
                    for i in sub:
                        z = ctx.mul(z, ctx.gen_elems[word[i]])
                    products.add(z)
            for x, dx in dist.items():
                if ctx.omega_class(x) != ctx.omega_class(y):
                    assert not ctx.bruhat_leq(x, y)
                else:
                    assert ctx.bruhat_leq(x, y) == (x in products)

    def test_incomparable_across_cosets(self):
        ctx = affine_context(build_root_datum("PGL2"))
        t = ctx.translation((1,))
        assert not ctx.bruhat_leq(ctx.identity, t)


class TestOmega:
    def test_sl2_trivial(self):
        assert omega_group(build_root_datum("SL2")).order == 1

    def test_pgl2_order_two(self):
        og = omega_group(build_root_datum("PGL2"))
        assert og.order == 2
        assert len(og.elements) == 2

    def test_c2_ad(self):
        assert omega_group(build_root_datum("C2-ad")).order == 2

    def test_gl2_infinite(self):
        og = omega_group(build_root_datum("GL2"))
        assert not og.is_finite
        assert 0 in og.invariants

    def test_action_on_generators(self):
        ctx = affine_context(build_root_datum("PGL2"))
        og = ctx.omega_group()
        (_, _, om), = og.generators
        perm = og.action_on_generators(om)
        assert sorted(perm) == [0, 1] and perm != (0, 1)


class TestParahorics:
    def test_iwahori_trivial(self):
        ctx = affine_context(build_root_datum("A2"))
        assert parahoric_members(ctx, ParahoricType.iwahori()) == (ctx.identity,)

    def test_hyperspecial_is_finite_weyl(self):
        d = build_root_datum("A2")
        ctx = affine_context(d)
        K = ParahoricType.hyperspecial(d)
        assert len(parahoric_members(ctx, K)) == 6

    def test_members_in_affine_weyl(self):
        d = build_root_datum("PGL2")
        ctx = affine_context(d)
        for gens in [frozenset({0}), frozenset({1})]:
            for x in parahoric_members(ctx, ParahoricType(gens)):
                assert ctx.in_affine_weyl(x)

    def test_full_set_rejected(self):
        d = build_root_datum("A1")
        ctx = affine_context(d)
        with pytest.raises(ValueError):
            ParahoricType(frozenset({0, 1})).validate(ctx)


class TestCosets:
    def test_min_reps_full_levi(self):
        d = build_root_datum("A2")
        assert min_coset_reps(d, (0, 1)) == (0,)

    def test_min_reps_empty_levi(self):
        d = build_root_datum("A2")
        assert len(min_coset_reps(d, ())) == 6

    def test_a2_levi_alpha1(self):
        d = build_root_datum("A2")
        W = weyl_elements(d)
        words = [W.word(x) for x in min_coset_reps(d, (0,))]
        assert words == [(), (1,), (1, 0)]  # e, s2, s2 s1

    def test_pgj_iwahori_reduces_to_min_reps(self):
        d = build_root_datum("C2")
        table = pgj_representatives(d, (0,), ParahoricType.iwahori())
        assert table.representatives == min_coset_reps(d, (0,))

    def test_c2_single_double_coset(self):
        d = build_root_datum("C2")
        K = ParahoricType.hyperspecial(d)
        table = pgj_representatives(d, (1,), K)
        assert table.count == 1

    def test_borel_counts(self):
        d = build_root_datum("A2")
        ctx = affine_context(d)
        for gens in [frozenset(), frozenset({1}), frozenset({0, 2})]:
            J = ParahoricType(gens)
            table = pgj_representatives(d, (), J)
            wbar = finite_projection(ctx, J)
            assert table.count == 6 // len(wbar)

    def test_theta_fixed_identity(self):
        d = build_root_datum("A2")
        th = identity_automorphism(d, 1)
        table = theta_fixed_reps(d, (), ParahoricType.iwahori(), th)
        assert all(table.theta_fixed)

    def test_theta_fixed_a2_flip(self):
        d = build_root_datum("A2")
        W = weyl_elements(d)
        th = flip_automorphism(d, 2)
        table = theta_fixed_reps(d, (), ParahoricType.iwahori(), th)
        fixed = [r for r, f in zip(table.representatives, table.theta_fixed) if f]
        assert sorted(W.word(x) for x in fixed) == [(), (0, 1, 0)]

    def test_theta_fixed_a3_flip_exhaustive(self):
        d = build_root_datum("A3")
        th = flip_automorphism(d, 2)
        ctx = affine_context(d)
        js = [ParahoricType.iwahori()]
        perm = affine_generator_permutation(d, th)
        for g in range(ctx.ngens):
            if perm[g] == g:
                js.append(ParahoricType(frozenset({g})))
        for J in js:
            for levi in [(), (1,), (0, 2)]:
                theta_fixed_reps(d, levi, J, th)  # raises on failure

    def test_unstable_inputs_rejected(self):
        d = build_root_datum("A3")
        th = flip_automorphism(d, 2)
        with pytest.raises(ValueError):
            theta_fixed_reps(d, (0,), ParahoricType.iwahori(), th)

    def test_export_format(self):
        d = build_root_datum("A2")
        ctx = affine_context(d)
        table = pgj_representatives(d, (0,), ParahoricType.iwahori())
        from parahoric.affine import CosetTable
        reps = tuple(ctx.from_finite(w) for w in table.representatives)
        text = coset_table_to_text(ctx, CosetTable("double", reps, table.count))
        lines = text.strip().split("\n")
        assert len(lines) == table.count
        assert lines[0].split("\t")[0] == "0,0"


class TestIwasawaCells:
    def test_iwahori_label_is_element(self):
        ctx = affine_context(build_root_datum("A1"))
        x = ctx.mul(ctx.gen_elems[1], ctx.gen_elems[0])
        assert iwasawa_cell(ctx, x, ParahoricType.iwahori()) == x

    def test_member_label_is_identity_coset(self):
        ctx = affine_context(build_root_datum("A1"))
        J = ParahoricType(frozenset({0}))
        s0 = ctx.gen_elems[0]
        assert iwasawa_cell(ctx, s0, J) == iwasawa_cell(ctx, ctx.identity, J)

    def test_a1_two_element_coset(self):
        ctx = affine_context(build_root_datum("A1"))
        J = ParahoricType(frozenset({0}))
        x = ctx.mul(ctx.gen_elems[1], ctx.gen_elems[0])
        label = iwasawa_cell(ctx, x, J)
        assert ctx.length(label) == 1  # s1 s0 shortens to s1 in its coset

    def test_cell_match_trivial(self):
        d = build_root_datum("A2")
        ctx = affine_context(d)
        th = identity_automorphism(d, 1)
        res = iwasawa_cell_match(ctx, (1, 0), (-1, 0), 0, 0, 1,
                                 ParahoricType.iwahori(), th)
        assert res == (True, True, True, True)

    def test_cell_match_detects_difference(self):
        d = build_root_datum("A2")
        ctx = affine_context(d)
        th = flip_automorphism(d, 2)
        W = weyl_elements(d)
        # w = s1 is moved by the flip; equal cells must not happen
        res = iwasawa_cell_match(ctx, (1, 0), (-1, 0), 0, 0,
                                 W.index[d.reflection_matrix(0)],
                                 ParahoricType.iwahori(), th)
        assert res[0] is False

    def test_trichotomy_small_sweep(self):
        from parahoric.cli import _cell_vanishing_sweep
        d = build_root_datum("A2")
        th = flip_automorphism(d, 2)
        ok, info = _cell_vanishing_sweep(d, th, ParahoricType.iwahori(), 4)
        assert ok, info


class TestFacets:
    def test_identity_fixes_everything(self):
        d = build_root_datum("C2")
        ctx = affine_context(d)
        p = AlcovePoint((Fraction(1, 3), Fraction(1, 7)))
        assert fixes_facet(ctx, ctx.identity, p)

    def test_sp4_vertex_phenomenon(self):
        d = build_root_datum("C2")
        ctx = affine_context(d)
        W = weyl_elements(d)
        p = fundamental_coweight_point(d, 0, Fraction(1, 2))
        s1 = ctx.from_finite(W.index[d.reflection_matrix(0)])
        s2 = ctx.from_finite(W.index[d.reflection_matrix(1)])
        assert fixes_facet(ctx, s2, p)
        moved = AlcovePoint(ctx.act_point(s1, p.coords))
        assert not fixes_facet(ctx, s2, moved)
        closure, interior = base_alcove_membership(d, p)
        assert closure and not interior

    def test_affine_reflection_moves_barycenter(self):
        d = build_root_datum("A2")
        ctx = affine_context(d)
        p = AlcovePoint(ctx.interior_point())
        assert not fixes_facet(ctx, ctx.gen_elems[0], p)
        closure, interior = base_alcove_membership(d, p)
        assert closure and interior
