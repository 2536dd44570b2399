"""Le diagrams, their networks, and boundary measurement oracles.

The matrix checks here go through a brute-force directed path
enumeration, independent of the edge vector machinery, so they freeze
the construction against an elementary second route.
"""

import random
from fractions import Fraction

import pytest

from kpnets import gallery as G
from kpnets.errors import EmptyDiagram
from kpnets.lediagram import LeDiagram, build_le_network, le_diagram
from kpnets.network import (OrientedView, all_bases, compute_faces,
                            validate_pbdtp)


def F(x):
    return Fraction(x)


def _path_measurement(net, view, src, sink):
    """Sum of path weights from boundary src to boundary sink by DFS."""
    start = f"b{src}"
    goal = f"b{sink}"
    total = Fraction(0)

    def walk(vid, acc):
        nonlocal total
        if vid == goal:
            total += acc
            return
        if vid.startswith("b") and vid != start:
            return
        for eid in net.incident(vid):
            if view.tail(eid) == vid:
                walk(view.head(eid), acc * view.weight(eid))

    walk(start, Fraction(1))
    return total


def _signed_matrix(net):
    """Boundary matrix from raw path sums with source-separation signs."""
    view = OrientedView(net)
    sources = view.sources()
    rows = []
    for i in sources:
        row = []
        for j in range(1, net.n + 1):
            if j in sources:
                row.append(F(1) if j == i else F(0))
                continue
            lo, hi = min(i, j), max(i, j)
            between = sum(1 for s in sources if lo < s < hi)
            row.append((-1) ** between * _path_measurement(net, view, i, j))
        rows.append(row)
    return rows


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    out = Fraction(0)
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        out += (-1) ** c * m[0][c] * _det(minor)
    return out


class TestDiagramValidation:
    def test_all_zero_rejected(self):
        with pytest.raises(EmptyDiagram):
            le_diagram([2, 1], [[0, 0], [0]], [[0, 0], [0]])

    def test_empty_row_rejected(self):
        with pytest.raises(EmptyDiagram):
            le_diagram([2, 2], [[1, 1], [0, 0]], [["1", "1"], [0, 0]])

    def test_empty_column_rejected(self):
        with pytest.raises(EmptyDiagram):
            le_diagram([2, 2], [[0, 1], [0, 1]], [[0, "1"], [0, "1"]])

    def test_forbidden_pattern_rejected(self):
        # box (2,2) empty with a filled box above and one to its west
        with pytest.raises(ValueError, match="pattern|property|above"):
            le_diagram([2, 2], [[1, 1], [1, 0]], [["1", "1"], ["1", 0]])

    def test_zero_weight_on_filled_box_rejected(self):
        with pytest.raises(ValueError):
            le_diagram([1], [[1]], [[0]])

    def test_shape_must_weakly_decrease(self):
        with pytest.raises(ValueError):
            le_diagram([1, 2], [[1], [1, 1]], [["1"], ["1", "1"]])

    def test_roundtrip(self):
        d = G.diagram_s34("2/3", "5/7", "11/2")
        again = LeDiagram.from_dict(d.to_dict())
        assert again == d
        assert again.weight(1, 2) == F("2/3")

    def test_pivots_and_nonpivots(self):
        d = G.diagram_s34()
        assert d.pivots() == (1, 2)
        assert sorted(d.nonpivots()) == [3, 4]
        assert d.k == 2 and d.n == 4


class TestFrozenMatrices:
    def test_single_box(self):
        net = build_le_network(le_diagram([1], [[1]], [["7/3"]]))
        assert _signed_matrix(net) == [[F(1), F("7/3")]]

    def test_s34_concrete(self):
        # measurement matrix rows (1, 0, -w13, -w13 w24), (0, 1, w23, w23 w24)
        net = G.network_s34("1", "2", "3")
        assert _signed_matrix(net) == [[F(1), F(0), F(-1), F(-3)],
                                       [F(0), F(1), F(2), F(6)]]

    def test_s34_generic_weights(self):
        w13, w23, w24 = F("2/3"), F("5/7"), F("11/2")
        net = G.network_s34(w13, w23, w24)
        assert _signed_matrix(net) == [
            [F(1), F(0), -w13, -w13 * w24],
            [F(0), F(1), w23, w23 * w24]]

    def test_tp24_generic_weights(self):
        w13, w14, w23, w24 = F("1/2"), F("3"), F("4/5"), F("7/6")
        net = build_le_network(G.diagram_tp24(w13, w14, w23, w24))
        assert _signed_matrix(net) == [
            [F(1), F(0), -w13, -w13 * (w14 + w24)],
            [F(0), F(1), w23, w23 * w24]]

    def test_staircase_three_rows(self):
        # full staircase in Gr(3,6), unit weights, pivots 1,3,5; the
        # path counts were tallied by hand (label 6 is reached from the
        # top row twice: straight down the west column, or south one
        # step then west then down)
        net = build_le_network(le_diagram(
            [3, 2, 1],
            [[1, 1, 1], [1, 1], [1]],
            [["1", "1", "1"], ["1", "1"], ["1"]]))
        view = OrientedView(net)
        assert view.sources() == [1, 3, 5]
        assert _signed_matrix(net) == [
            [F(1), F(1), F(0), F(-1), F(0), F(2)],
            [F(0), F(0), F(1), F(1), F(0), F(-1)],
            [F(0), F(0), F(0), F(0), F(1), F(1)]]


class TestMinorPositivity:
    def test_maximal_minors_match_flow_bases(self):
        # determinant route against the flow-rerouting route
        import itertools
        for net in G.le_corpus(16):
            m = _signed_matrix(net)
            k = len(m)
            n = net.n
            bases = set(all_bases(net))
            for cols in itertools.combinations(range(1, n + 1), k):
                sub = [[m[r][c - 1] for c in cols] for r in range(k)]
                d = _det(sub)
                if cols in bases:
                    assert d > 0, (cols, d)
                else:
                    assert d == 0, (cols, d)


class TestNetworkShape:
    def test_genus_counts_filled_boxes(self):
        rng = random.Random(404)
        for _ in range(20):
            k = rng.choice([1, 2, 3])
            width = rng.choice([1, 2, 3])
            d = G.random_le_diagram(rng, k, width)
            net = build_le_network(d)
            filled = sum(sum(row) for row in d.filling)
            assert net.census()["genus"] == filled
            assert len(compute_faces(net).faces) == filled + 1

    def test_clean_validation_and_pivot_sources(self):
        rng = random.Random(505)
        for _ in range(20):
            d = G.random_le_diagram(rng, rng.choice([1, 2]),
                                    rng.choice([1, 2, 3]))
            net = build_le_network(d)
            rep = validate_pbdtp(net)
            assert rep.ok, rep.findings
            view = OrientedView(net)
            assert tuple(view.sources()) == d.pivots()
            assert view.is_acyclic()

    def test_lexicographically_smallest_base_is_pivot_set(self):
        for net in G.le_corpus(10):
            bases = all_bases(net)
            view = OrientedView(net)
            assert min(bases) == tuple(view.sources())
