import json
import math

import pytest

from ibisgroups import atlas as A
from ibisgroups.bases import is_irredundant, ibis_check
from ibisgroups.gf import field_create
from ibisgroups.perm import closure
from ibisgroups.stabchain import (build_chain, is_primitive, is_transitive, order, orbits,
                                  pointwise_stabilizer_chain)


class TestSymAlt:
    @pytest.mark.parametrize("n", range(3, 10))
    def test_orders(self, n):
        assert A.sym(n).order() == math.factorial(n)
        assert A.alt(n).order() == math.factorial(n) // 2

    def test_errors(self):
        with pytest.raises(A.AtlasError):
            A.alt(2)
        with pytest.raises(A.AtlasError):
            A.sym(0)


class TestSubsetsAndPartitions:
    def test_k_subsets(self):
        assert len(A.k_subsets(8, 3)) == 56
        assert A.k_subsets(4, 2)[:3] == [(0, 1), (0, 2), (1, 2)]

    def test_induced_orders(self):
        e = A.on_k_subsets("alt", 8, 3)
        assert e.degree == 56 and e.order() == 20160
        assert is_primitive(e.generated())

    def test_half_warns(self):
        with pytest.warns(UserWarning):
            A.on_k_subsets("sym", 6, 3)

    def test_partitions_count(self):
        # (2b)! / (2^b b!)
        assert len(A.regular_partitions(2, 4)) == 105
        assert len(A.regular_partitions(3, 3)) == 280
        assert len(A.regular_partitions(2, 5)) == 945

    def test_partition_action(self):
        e = A.on_partitions("alt", 2, 4)
        assert e.degree == 105 and e.order() == 20160

    def test_bad_parent(self):
        with pytest.raises(A.AtlasError):
            A.on_k_subsets("dihedral", 5, 2)


class TestProjective:
    def test_line_labels(self):
        line = A.ProjectiveLine(field_create(2, 2))
        assert line.degree == 5
        assert line.labels()[:3] == ("inf", "0", "1")

    @pytest.mark.parametrize("q, psl", [(4, 60), (5, 60), (7, 168), (8, 504), (9, 360),
                                        (11, 660), (16, 4080), (25, 7800), (27, 9828)])
    def test_psl_orders(self, q, psl):
        e = A.projective_groups(q)[0]
        assert e.name == f"PSL2({q})" and e.order() == psl and e.degree == q + 1

    def test_q9_family(self):
        names = [e.name for e in A.projective_groups(9)]
        assert names == ["PSL2(9)", "PSigmaL2(9)", "PGL2(9)", "M10", "PGammaL2(9)"]
        orders = [e.order() for e in A.projective_groups(9)]
        assert orders == [360, 720, 720, 720, 1440]

    def test_m10_and_pgl_differ_in_involutions(self):
        # M10 is sharply 3-transitive, like PGL2(9), but not isomorphic to it
        m10 = A.projective_group(9, "M10").group
        pgl = A.projective_group(9, "PGL2(9)").group
        inv_count = [sum(1 for x in closure(g.gen_tuples, 10)
                         if x != tuple(range(10)) and all(x[x[i]] == i for i in range(10)))
                     for g in (m10, pgl)]
        assert inv_count == [45, 81]

    def test_r_values(self):
        assert [e.extras["r"] for e in A.projective_groups(16)] == [1, 2, 4]

    def test_ibis_criterion(self):
        assert A.ibis_criterion(1, 4) and A.ibis_criterion(2, 4)
        assert not A.ibis_criterion(4, 4) and not A.ibis_criterion(3, 4)

    def test_unknown_name(self):
        with pytest.raises(A.AtlasError):
            A.projective_group(9, "PSL3(9)")


class TestVectorSpaces:
    def test_sl(self):
        e = A.sl_n_2_on_vectors(4)
        assert e.order() == 20160 and e.degree == 15
        assert A.sl_n_2_on_vectors(3).order() == 168

    def test_hyperplanes(self):
        assert len(A.hyperplanes(4)) == 15
        assert A.sl_n_2_on_hyperplanes(4).order() == 20160

    def test_symplectic(self):
        assert A.sp_n_2_on_vectors(4).order() == 720
        assert A.sp_n_2_on_vectors(6).order() == 1451520
        assert A.sp4_2_derived().order() == 360
        assert A.symplectic_form(0b0001, 0b0100, 4) == 1


class TestCosetActions:
    def test_dihedral(self):
        e = A.dihedral_coset_action(8)
        assert e.degree == 28 and e.order() == 504

    def test_dihedral_extended(self):
        e = A.dihedral_coset_action(8, extended=True)
        assert e.degree == 28 and e.order() == 1512

    def test_dihedral_conjugates(self):
        subgroups, involutions = A.dihedral_conjugates(8)
        assert len(subgroups) == 28 and len(involutions) == 63
        assert all(sum(t in s for s in subgroups) == 4 for t in involutions)

    def test_pairs(self):
        e = A.pair_decomposition_action(8)
        assert e.degree == 36 and e.order() == 1512

    def test_subfield(self):
        e = A.subfield_coset_action(4)
        assert e.degree == 68 and e.order() == 4080

    def test_small(self):
        assert A.small_coset_action("alt").order() == 360
        assert A.small_coset_action("sym").order() == 720


class TestMathieu:
    @pytest.mark.parametrize("name, degree, size", [
        ("M11", 11, 7920), ("M12", 12, 95040), ("M22", 22, 443520),
        ("M23", 23, 10200960), ("M24", 24, 244823040)])
    def test_orders(self, name, degree, size):
        e = A.mathieu(name)
        assert e.degree == degree and e.order() == size

    def test_m24_five_transitive(self):
        chain = A.mathieu("M24").chain()
        for k in range(5):
            sub = pointwise_stabilizer_chain(chain, list(range(k)))
            cells = orbits(sub).cells
            assert any(len(c) == 24 - k for c in cells)

    def test_data_files_consistent(self):
        from importlib.resources import files
        for name in A.MATHIEU:
            doc = json.loads(files("ibisgroups.data").joinpath(f"{name.lower()}.json").read_text())
            assert doc["order"] == A.mathieu(name).order()

    def test_unknown(self):
        with pytest.raises(A.AtlasError):
            A.mathieu("M13")


class TestAlt7:
    def test_points_and_hyperplanes(self):
        p = A.alt7_degree15("points")
        h = A.alt7_degree15("hyperplanes")
        assert p.order() == h.order() == 2520
        assert is_transitive(p.generated()) and is_transitive(h.generated())

    def test_inequivalent(self):
        p = A.alt7_degree15("points").generated()
        h = A.alt7_degree15("hyperplanes").generated()
        assert A.equivalent_actions(p, h) is None
        assert A.equivalent_actions(p, p) == tuple(range(15))

    def test_bad_variant(self):
        with pytest.raises(A.AtlasError):
            A.alt7_degree15("lines")


class TestDiagonal:
    def test_f2(self):
        e = A.diagonal_psl2(2)
        assert e.degree == 60 and e.order() == 3600


class TestWitnesses:
    @pytest.mark.parametrize("case, orders", [
        ("sym8-3subsets-long", (40320, 720, 48, 12, 4, 2, 1)),
        ("sym8-3subsets-short", (40320, 720, 72, 4, 1)),
        ("alt8-3subsets-long", (20160, 360, 36, 2, 1)),
        ("alt8-3subsets-short", (20160, 360, 12, 4))])
    def test_fixed_sequences(self, case, orders):
        entry, pts = A.paper_witnesses(case)
        assert is_irredundant(entry.group, pts).orders == orders

    def test_partition_chain_a2_sym(self):
        entry, pts = A.paper_witnesses("partitions-a2-chain", parent="sym", b=4)
        assert is_irredundant(entry.group, pts).orders == (40320, 384, 32, 4, 2)

    def test_partition_chain_a2_alt_has_redundant_fourth(self):
        entry, pts = A.paper_witnesses("partitions-a2-chain", parent="alt", b=4)
        assert is_irredundant(entry.group, pts) == 3

    def test_partition_chain_a2_b5(self):
        for parent in ("sym", "alt"):
            entry, pts = A.paper_witnesses("partitions-a2-chain", parent=parent, b=5)
            assert len(is_irredundant(entry.group, pts)) == 4

    def test_chain_is_partitions(self):
        for a, b in ((2, 4), (3, 3), (3, 4)):
            for p in A.partition_chain(a, b):
                assert sorted(x for blk in p for x in blk) == list(range(a * b))

    def test_subset_chain(self):
        entry, pts = A.paper_witnesses("subset-chain", parent="sym", n=7, k=2)
        s = is_irredundant(entry.group, pts)
        assert s.is_base and len(s) == 5 == ibis_check(entry.group).max_size

    def test_unknown_case(self):
        with pytest.raises(A.AtlasError):
            A.paper_witnesses("nope")


class TestRegistry:
    def test_build(self):
        assert A.build("sym", "5").order() == 120
        assert A.build("projective", "9", "M10").order() == 720
        assert A.build("sp4-derived").order() == 360

    def test_errors(self):
        with pytest.raises(A.AtlasError):
            A.build("nope")
        with pytest.raises(A.AtlasError):
            A.build("sym")
        with pytest.raises(ValueError):
            A.build("sym", "five")

    def test_chain_is_cached(self):
        e = A.sym(6)
        assert e.chain() is e.chain()
        assert order(build_chain(e.generated())) == 720
