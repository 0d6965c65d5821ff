import json

import numpy as np
import pytest
from numba import njit

from nearindep import _kernels
from nearindep.families import mk2_plus_isolated
from nearindep.graph import (
    UnsupportedOrderError,
    canonical_form,
    complement,
    complete_graph,
    empty_graph,
    from_graph6,
    read_graph6_lines,
    star_graph,
    to_graph6,
)
from nearindep.search import (
    SearchError,
    extremal_scan,
    gen_graphs,
    gen_trees,
    graph_codes,
    verify_theorem,
)

CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


@njit(cache=True)
def _labeled_canonical_codes(n):
    m = n * (n - 1) // 2
    out = np.empty(1 << m, np.int64)
    for code in range(1 << m):
        out[code] = _kernels.canonical_code(_kernels.code_to_adj(code, n))
    return out


@njit(cache=True)
def _prufer_canonical_codes(n):
    total = n ** (n - 2)
    out = np.empty(total, np.int64)
    seq = np.zeros(n - 2, np.int64)
    degree = np.empty(n, np.int64)
    for idx in range(total):
        x = idx
        for i in range(n - 2):
            seq[i] = x % n
            x //= n
        for v in range(n):
            degree[v] = 1
        for i in range(n - 2):
            degree[seq[i]] += 1
        adj = np.zeros(n, np.int64)
        for i in range(n - 2):
            for leaf in range(n):
                if degree[leaf] == 1:
                    break
            adj[leaf] |= 1 << seq[i]
            adj[seq[i]] |= 1 << leaf
            degree[leaf] -= 1
            degree[seq[i]] -= 1
        a = -1
        for v in range(n):
            if degree[v] == 1:
                if a < 0:
                    a = v
                else:
                    adj[a] |= 1 << v
                    adj[v] |= 1 << a
        out[idx] = _kernels.canonical_code(adj)
    return out


def canonical_codes(graphs):
    return {int(_kernels.canonical_code(np.array(g.adj, dtype=np.int64))) for g in graphs}


class TestGraphGenerator:
    @pytest.mark.parametrize("n,count", CLASS_COUNTS.items())
    def test_counts(self, n, count):
        assert len(list(gen_graphs(n))) == count

    @pytest.mark.parametrize("n", range(1, 8))
    def test_matches_labelled_dedup(self, n):
        brute = set(np.unique(_labeled_canonical_codes(n)).tolist()) if n > 1 else {0}
        codes = graph_codes(n).tolist()
        assert len(codes) == len(set(codes))
        assert set(codes) == brute

    def test_outputs_are_canonical(self):
        for g in gen_graphs(6):
            assert to_graph6(g) == canonical_form(g)

    def test_larger_counts(self):
        assert len(graph_codes(8)) == 12346

    def test_range(self):
        with pytest.raises(UnsupportedOrderError, match="graph6 stream"):
            list(gen_graphs(10))
        with pytest.raises(UnsupportedOrderError):
            list(gen_graphs(0))

    def test_deterministic_order(self):
        assert graph_codes(7).tolist() == _kernels.children_of(graph_codes(6), 6).tolist()


class TestTreeGenerator:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11),
                                         (8, 23), (10, 106), (12, 551), (16, 19320)])
    def test_counts(self, n, count):
        assert sum(1 for _ in gen_trees(n)) == count

    @pytest.mark.parametrize("n", range(2, 10))
    def test_matches_prufer_dedup(self, n):
        trees = list(gen_trees(n))
        for t in trees:
            assert t.is_connected() and t.size == n - 1
        mine = canonical_codes(trees)
        assert len(mine) == len(trees)
        brute = {0} if n == 2 else set(np.unique(_prufer_canonical_codes(n)).tolist())
        if n == 2:
            brute = canonical_codes([complete_graph(2)])
        assert mine == brute

    def test_range(self):
        with pytest.raises(UnsupportedOrderError):
            list(gen_trees(17))


class TestExtremalScan:
    def test_ng_max_6(self):
        r = extremal_scan(6, "ng_max")
        assert r.value == 39 and r.classes_scanned == 156
        g = mk2_plus_isolated(3, 6)
        assert r.attainers == sorted([canonical_form(g), canonical_form(complement(g))])

    def test_ng_min_6(self):
        r = extremal_scan(6, "ng_min")
        assert r.value == 15
        assert r.attainers == sorted([canonical_form(complete_graph(6)), canonical_form(empty_graph(6))])

    def test_ng_min_tree_7(self):
        r = extremal_scan(7, "ng_min", "trees")
        assert (r.objective, r.value, r.classes_scanned) == ("ng_min_tree", 36, 11)
        assert r.attainers == [canonical_form(star_graph(7))]

    def test_sigma1_small_orders(self):
        # exhaustive: K2 + K3 has 3*3 + 4*1 = 13 one-edge subsets at order 5
        assert [extremal_scan(n, "sigma1_max").value for n in range(1, 6)] == [0, 1, 3, 6, 13]

    def test_attainers_recompute(self):
        from nearindep.invariants import ng_sum
        for n in (5, 7):
            r = extremal_scan(n, "ng_max")
            assert all(ng_sum(from_graph6(a)) == r.value for a in r.attainers)

    def test_stream_source(self):
        lines = [to_graph6(g) for g in gen_graphs(6)][::-1]
        graphs = [g for _, g in read_graph6_lines(lines)]
        r = extremal_scan(6, "ng_max", source=graphs)
        assert r.to_dict() == extremal_scan(6, "ng_max").to_dict()

    def test_stream_errors(self):
        with pytest.raises(SearchError, match="empty"):
            extremal_scan(6, "ng_max", source=[])
        with pytest.raises(SearchError):
            extremal_scan(6, "ng_max", source=[complete_graph(5)])
        with pytest.raises(SearchError):
            extremal_scan(6, "ng_min_tree")
        with pytest.raises(SearchError):
            extremal_scan(6, "bogus")

    def test_parallel_matches_serial(self):
        for obj in ("ng_max", "sigma1_max", "ng_min"):
            a = extremal_scan(8, obj, threads=1).to_dict()
            b = extremal_scan(8, obj, threads=3).to_dict()
            assert a == b


class TestVerify:
    def test_ng_lower(self):
        rep = verify_theorem("ng-lower", range(1, 9))
        assert rep.passed
        for c in rep.checks:
            n = c.order
            assert c.attainers == sorted({canonical_form(complete_graph(n)), canonical_form(empty_graph(n))})
        assert len(rep.checks[0].attainers) == 1

    def test_sigma1_max(self):
        rep = verify_theorem("sigma1-max", range(6, 9))
        assert rep.passed
        assert [len(c.attainers) for c in rep.checks] == [1, 1, 2]

    def test_sigma1_max_small_orders_flag_remark_values(self):
        rep = verify_theorem("sigma1-max", range(1, 6))
        assert [c.passed for c in rep.checks] == [True, True, True, True, False]
        assert rep.checks[-1].value == 13 and rep.checks[-1].expected_value == 12
        assert not rep.passed

    def test_ng_lower_tree(self):
        assert verify_theorem("ng-lower-tree", range(2, 13)).passed

    def test_report_json(self):
        rep = verify_theorem("ng-max", [6])
        d = json.loads(rep.to_json())
        assert d["passed"] and d["checks"][0]["value"] == 39
        assert d["checks"][0]["counterexamples"] == []

    def test_failure_carries_counterexamples(self, monkeypatch):
        # pretend the bound were one lower: every attainer becomes a counterexample
        import nearindep.search as search

        real = search._theorem_setup

        def tightened(theorem, n):
            obj, cls, limit, expected_value, expected = real(theorem, n)
            return obj, cls, limit - 1, expected_value, expected

        monkeypatch.setattr(search, "_theorem_setup", tightened)
        rep = verify_theorem("ng-max", [6])
        assert not rep.passed
        assert rep.checks[0].counterexamples == rep.checks[0].attainers

    def test_bad_inputs(self):
        with pytest.raises(SearchError):
            verify_theorem("ng-max", [5])
        with pytest.raises(SearchError):
            verify_theorem("ng-lower-tree", [1])
        with pytest.raises(SearchError):
            verify_theorem("bogus", [6])
