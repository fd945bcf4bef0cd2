import random

import pytest
from hypothesis import given, settings, strategies as st

from ibisgroups import atlas as A
from ibisgroups.perm import GeneratedGroup, Permutation, closure, parse_permutation
from ibisgroups.stabchain import (IndexTooLargeError, IntransitiveError, NotSubgroupError,
                                  build_chain, coset_action, derived_subgroup, fixed_points,
                                  is_primitive, is_transitive, orbits, order, point_stabilizer,
                                  pointwise_stabilizer)


def group(degree, *cycles):
    return GeneratedGroup(degree, tuple(parse_permutation(c, degree) for c in cycles))


SYM5 = group(5, "(1 2 3 4 5)", "(1 2)")
C6 = group(6, "(1 2 3 4 5 6)")


class TestOrder:
    def test_small_groups(self):
        assert order(SYM5) == 120
        assert order(group(5, "(1 2 3)", "(1 2 4)", "(1 2 5)")) == 60
        assert order(C6) == 6
        assert order(GeneratedGroup(4, ())) == 1

    def test_psl28_against_closure(self):
        g = A.projective_group(8, "PSL2(8)").group
        assert order(g) == 504 == len(closure(g.gen_tuples, g.degree))

    def test_mathieu_orders(self):
        assert order(A.mathieu("M11").group) == 7920
        assert order(A.mathieu("M24").group) == 244823040

    def test_order_hint_matches_deterministic(self):
        g = A.sym(9).group
        assert build_chain(g, order_hint=362880, seed=3).order() == 362880

    @settings(max_examples=20, deadline=None)
    @given(st.permutations(list(range(10))))
    def test_base_hint_invariance(self, hint):
        g = A.on_k_subsets("alt", 5, 2).generated()
        assert build_chain(g, base_hint=hint[:4]).order() == 60


class TestMembership:
    def test_contains(self):
        chain = build_chain(group(5, "(1 2 3)", "(1 2 4)", "(1 2 5)"))
        assert chain.contains(parse_permutation("(1 2 3 4 5)", 5))
        assert not chain.contains(parse_permutation("(1 2)", 5))

    @pytest.mark.parametrize("entry", [A.alt(6), A.projective_group(9, "M10"),
                                       A.projective_group(8, "PSL2(8)")], ids=lambda e: e.name)
    def test_contains_against_closure(self, entry, rng):
        g = entry.generated()
        elements = closure(g.gen_tuples, g.degree, limit=5000)
        chain = build_chain(g)
        assert chain.order() == len(elements)
        for x in rng.sample(sorted(elements), 50):
            assert chain.contains_tuple(x)
        ambient = list(range(g.degree))
        tried = 0
        while tried < 50:
            rng.shuffle(ambient)
            t = tuple(ambient)
            assert chain.contains_tuple(t) == (t in elements)
            tried += 1

    def test_random_elements_are_members(self, rng):
        chain = build_chain(A.mathieu("M12").group)
        for _ in range(20):
            assert chain.contains_tuple(chain.random_tuple(rng))


class TestStabilizers:
    @pytest.mark.parametrize("entry", [A.sym(7), A.alt(8), A.mathieu("M11"),
                                       A.projective_group(9, "PGammaL2(9)"),
                                       A.sl_n_2_on_vectors(4)], ids=lambda e: e.name)
    def test_orbit_stabilizer(self, entry):
        g = entry.generated()
        chain = build_chain(g)
        for cell in orbits(g).cells:
            x = min(cell)
            assert order(point_stabilizer(chain, x)) * len(cell) == chain.order()

    def test_alt7_point_stabilizer(self):
        g = A.alt7_degree15("points").generated()
        assert order(point_stabilizer(g, 0)) == 168

    def test_dihedral_coset_stabilizer(self):
        e = A.dihedral_coset_action(8)
        assert e.degree == 28
        assert order(point_stabilizer(e.generated(), 0)) == 18

    def test_pointwise(self):
        assert order(pointwise_stabilizer(SYM5, [0, 1])) == 6
        assert order(pointwise_stabilizer(SYM5, [0, 1, 2, 3])) == 1
        assert pointwise_stabilizer(SYM5, []) is SYM5

    def test_fixed_points(self):
        assert fixed_points(group(5, "(1 2)")) == {2, 3, 4}


class TestOrbitsAndBlocks:
    def test_orbits(self):
        part = orbits(group(6, "(1 2)", "(3 4 5)"))
        assert part.sizes() == [2, 3, 1]
        assert part.cell_of(4) == frozenset({2, 3, 4})

    def test_transitivity(self):
        assert is_transitive(SYM5) and not is_transitive(group(4, "(1 2)"))

    def test_primitive_examples(self):
        assert is_primitive(SYM5)
        assert not is_primitive(C6)
        with pytest.warns(UserWarning, match="imprimitive"):
            sym4_pairs = A.on_k_subsets("sym", 4, 2).generated()
        assert not is_primitive(sym4_pairs)
        assert is_primitive(A.on_k_subsets("sym", 6, 2).generated())
        assert is_primitive(A.projective_group(8, "PSL2(8)").group)

    def test_intransitive(self):
        with pytest.raises(IntransitiveError):
            is_primitive(group(4, "(1 2)"))


class TestCosetAction:
    def test_sym3_on_cosets_of_order_two(self):
        g = group(3, "(1 2 3)", "(1 2)")
        h, dom = coset_action(build_chain(g), [parse_permutation("(1 2)", 3).images],
                              generators=g.gen_tuples)
        assert h.degree == 3 and order(h) == 6 and len(dom) == 3

    @pytest.mark.parametrize("builder, degree", [
        (lambda: A.small_coset_action("alt"), 6),
        (lambda: A.subfield_coset_action(4), 68),
        (lambda: A.dihedral_coset_action(8), 28)])
    def test_degrees(self, builder, degree):
        e = builder()
        assert e.degree == degree
        assert is_transitive(e.generated())

    def test_not_subgroup(self):
        with pytest.raises(NotSubgroupError):
            coset_action(build_chain(group(4, "(1 2 3)")), [parse_permutation("(1 2)", 4).images])

    def test_index_bound(self):
        g = A.sym(8).group
        with pytest.raises(IndexTooLargeError):
            coset_action(build_chain(g), [], index_bound=1000)

    def test_derived_subgroup(self):
        assert order(derived_subgroup(SYM5)) == 60
        assert order(derived_subgroup(A.sp_n_2_on_vectors(4).generated())) == 360
        assert order(derived_subgroup(C6)) == 1
