import itertools
import random

import pytest

from teachdim.concepts import ConceptClass, powerset_class
from teachdim.connected import build_con_class
from teachdim.dimensions import (
    RtdCertificate,
    _td_of_active,
    rtd,
    rtd_subclass_lower_bound,
    rtd_value,
    sauer_bound,
    sauer_rtd_implication,
    td_max,
    td_min,
    td_of,
    vcd,
)
from teachdim.errors import BudgetExceededError
from teachdim.families import cycle_graph, fig2, path_graph, random_graph
from teachdim.graphs import bits
from teachdim.stars import build_star_class


def brute_td(cc, i):
    """Plain search over all instance subsets by increasing size."""
    ci = cc.concepts[i]
    others = [c for j, c in enumerate(cc.concepts) if j != i]
    for k in range(cc.domain_size + 1):
        for combo in itertools.combinations(range(cc.domain_size), k):
            dm = sum(1 << x for x in combo)
            if all((ci ^ c) & dm for c in others):
                return k
    raise AssertionError("no teaching set found")


class TestVcd:
    def test_powerset(self):
        for d in range(5):
            value, witness = vcd(powerset_class(d))
            assert value == d
            assert witness == frozenset(range(d))

    def test_star_c4(self):
        assert vcd(build_star_class(cycle_graph(4)))[0] == 3

    def test_con_fig2_witness(self):
        value, witness = vcd(build_con_class(fig2(), False))
        assert value == 5
        assert witness == {0, 3, 4, 5, 6}  # a, d, e, f, g

    def test_witness_is_lexicographically_smallest(self):
        cc = build_star_class(cycle_graph(4))
        value, witness = vcd(cc)
        from teachdim.concepts import is_shattered

        smaller = [c for c in itertools.combinations(range(4), value)
                   if is_shattered(cc, c)]
        assert witness == frozenset(smaller[0])

    def test_empty_class_rejected(self):
        with pytest.raises(ValueError):
            vcd(ConceptClass(3, ()))


class TestTeachingDimension:
    def test_singleton_class(self):
        cc = ConceptClass.from_masks(4, [0b1010])
        assert td_of(cc, 0) == (0, frozenset())

    def test_powerset_needs_whole_domain(self):
        cc = powerset_class(3)
        for i in range(8):
            assert td_of(cc, i)[0] == 3
        assert td_min(cc) == 3
        assert td_max(cc) == 3

    def test_star_path_whole_set(self):
        # 3-vertex path a-b-c: the full set needs both endpoints
        cc = build_star_class(path_graph(2))
        i = cc.index_of({0, 1, 2})
        value, witness = td_of(cc, i)
        assert value == brute_td(cc, i) == 2

    def test_witness_distinguishes(self):
        cc = build_star_class(cycle_graph(5))
        for i in range(len(cc)):
            value, witness = td_of(cc, i)
            dm = sum(1 << x for x in witness)
            assert len(witness) == value
            assert all((cc.concepts[i] ^ c) & dm
                       for j, c in enumerate(cc.concepts) if j != i)

    def test_matches_brute_force(self):
        rng = random.Random(11)
        for trial in range(40):
            d = rng.randint(1, 5)
            size = rng.randint(1, min(10, 1 << d))
            cc = ConceptClass.from_masks(
                d, rng.sample(range(1 << d), size))
            for i in range(len(cc)):
                assert td_of(cc, i)[0] == brute_td(cc, i)

    def test_size_cap_error(self):
        with pytest.raises(BudgetExceededError):
            td_of(powerset_class(4), 0, size_cap=3)

    def test_wide_domain_fallback(self):
        cc = ConceptClass.from_masks(16, [0, 1, 1 << 15])
        assert td_of(cc, 0)[0] == 2


class TestRtd:
    def test_powerset(self):
        for d in range(5):
            cert = rtd(powerset_class(d))
            assert cert.rtd == d

    def test_star_c4(self):
        assert rtd(build_star_class(cycle_graph(4))).rtd == 3

    def test_con_c4_both_policies(self):
        g = cycle_graph(4)
        assert rtd(build_con_class(g, False)).rtd == 3
        assert rtd(build_con_class(g, True)).rtd == 3

    def test_certificate_partitions_and_recomputes(self):
        cc = build_star_class(cycle_graph(4))
        cert = rtd(cc)
        seen = set()
        active = cc.all_indices_mask
        for level, value in cert.levels:
            for i in sorted(level):
                recomputed, _ = _td_of_active(cc, i, active)
                assert recomputed == value
            # minimality: every survivor teaches no easier at this point
            for i in bits(active):
                if i not in level:
                    assert _td_of_active(cc, i, active)[0] > value
            seen |= level
            for i in level:
                active &= ~(1 << i)
        assert seen == set(range(len(cc)))

    def test_certificate_validation(self):
        with pytest.raises(ValueError, match="partition"):
            RtdCertificate(3, ((frozenset({0, 1}), 1),), 1)
        with pytest.raises(ValueError, match="rtd"):
            RtdCertificate(2, ((frozenset({0, 1}), 1),), 2)

    def test_fast_engine_agrees(self):
        rng = random.Random(31)
        classes = [powerset_class(d) for d in range(5)]
        classes += [build_star_class(cycle_graph(n)) for n in range(3, 8)]
        classes += [build_con_class(path_graph(n), True) for n in range(2, 7)]
        for trial in range(30):
            d = rng.randint(1, 6)
            size = rng.randint(1, min(25, 1 << d))
            classes.append(ConceptClass.from_masks(
                d, rng.sample(range(1 << d), size)))
        for i in range(10):
            g = random_graph(8, 0.5, seed=3, index=i)
            classes.append(build_star_class(g))
        for cc in classes:
            assert rtd_value(cc) == rtd(cc).rtd

    def test_subclass_lower_bound(self):
        cc = build_star_class(fig2())
        value = rtd(cc).rtd
        rng = random.Random(5)
        for _ in range(100):
            size = rng.randint(1, len(cc))
            sub = rng.sample(range(len(cc)), size)
            assert rtd_subclass_lower_bound(cc, sub) <= value

    def test_max_subclass_bound_attained_on_small_classes(self):
        for cc in (powerset_class(3),
                   build_star_class(path_graph(2)),
                   build_con_class(path_graph(3), False)):
            assert len(cc) <= 12
            best = max(
                rtd_subclass_lower_bound(cc, list(bits(sub)))
                for sub in range(1, 1 << len(cc))
            )
            assert best == rtd(cc).rtd


class TestSauer:
    def test_examples(self):
        assert sauer_bound(4, 2) == 11
        assert sauer_bound(9, 0) == 1
        assert sauer_bound(6, 6) == 64
        assert sauer_bound(5, 9) == 32  # binomials vanish past the domain

    def test_class_sizes_bounded(self):
        for cc in (powerset_class(4),
                   build_star_class(fig2()),
                   build_con_class(cycle_graph(6), True)):
            v, _ = vcd(cc)
            assert len(cc) <= sauer_bound(cc.domain_size, v)
            assert len(cc) <= sauer_bound(cc.domain_size, rtd(cc).rtd)

    def test_implication_on_cycle_classes(self):
        star = build_star_class(cycle_graph(4))
        assert len(star) == 12 > 11
        assert sauer_rtd_implication(star) == 3
        con = build_con_class(cycle_graph(4), False)
        assert len(con) == 13 > 11
        assert sauer_rtd_implication(con) == 3

    def test_implication_none_when_class_small(self):
        cc = ConceptClass.from_masks(4, [0])
        assert sauer_rtd_implication(cc) is None


class TestDisjointUnions:
    def _union_parts(self):
        from teachdim.concepts import disjoint_union

        a = build_star_class(cycle_graph(4))
        b = powerset_class(2)
        c = build_con_class(path_graph(3), True)
        return disjoint_union([a, b, c]), [a, b, c]

    def test_vcd_is_max_of_parts(self):
        union, parts = self._union_parts()
        assert vcd(union)[0] == max(vcd(p)[0] for p in parts)

    def test_rtd_sandwich(self):
        union, parts = self._union_parts()
        worst = max(rtd(p).rtd for p in parts)
        got = rtd(union).rtd
        assert worst <= got <= worst + 1

    def test_con_class_of_disconnected_graph_behaves_like_union(self):
        from teachdim.graphs import graph_from_edges

        g = graph_from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        cc = build_con_class(g, True)
        half = build_con_class(path_graph(2), True)
        assert vcd(cc)[0] == vcd(half)[0]
        assert rtd(half).rtd <= rtd(cc).rtd <= rtd(half).rtd + 1


def test_tree_classes_rtd_equals_vcd_small():
    # dimension engines agree with each other on every 5-vertex tree class
    from helpers import labeled_trees

    for g in labeled_trees(5):
        cc = build_con_class(g, True)
        assert rtd(cc).rtd == rtd_value(cc) == vcd(cc)[0]
