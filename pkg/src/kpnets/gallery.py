"""Named example networks and generators used across the test suite.

All fixtures use exact rational coordinates in the upper half plane
with boundary vertices on the x-axis, labelled left to right.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import geometry as geo
from .lediagram import LeDiagram, build_le_network, le_diagram
from .network import BLACK, BOUNDARY, WHITE, PlabicNetwork


def network_gr13(w2="1", w3="2") -> PlabicNetwork:
    """Single trivalent white vertex joined to three boundary vertices.

    Stored orientation flows from b1 through the white vertex out to
    b2 and b3 with weights w2, w3 on the outgoing legs.
    """
    return PlabicNetwork.build(3, [
        ("b1", BOUNDARY, 1, 0, 1),
        ("b2", BOUNDARY, 2, 0, 2),
        ("b3", BOUNDARY, 3, 0, 3),
        ("W", WHITE, 2, 1),
    ], [
        ("e1", "b1", "W"),
        ("e2", "W", "b2", w2),
        ("e3", "W", "b3", w3),
    ])


def diagram_s34(w13="1", w23="2", w24="3") -> LeDiagram:
    """Tableau of the codimension-one cell of Gr(2,4) with boxes
    (row1,col3), (row2,col3), (row2,col4) filled.

    Column positions run west to east while boundary labels run the
    other way, so label 4 is position 1.
    """
    return le_diagram([2, 2], [[0, 1], [1, 1]], [[0, w13], [w24, w23]])


def network_s34(w13="1", w23="2", w24="3") -> PlabicNetwork:
    return build_le_network(diagram_s34(w13, w23, w24))


def diagram_tp24(w13="1", w14="5", w23="2", w24="3") -> LeDiagram:
    """Full 2x2 tableau: the top cell of the nonnegative Gr(2,4)."""
    return le_diagram([2, 2], [[1, 1], [1, 1]], [[w14, w13], [w24, w23]])


def network_tp24_le(w13="1", w14="5", w23="2", w24="3") -> PlabicNetwork:
    return build_le_network(diagram_tp24(w13, w14, w23, w24))


def network_tp24_square(w13="1", w14="5", w23="2", w24="3") -> PlabicNetwork:
    """Reduced square network for the top cell of Gr(2,4).

    One internal square face with corners white A (NW), black B (SW),
    black C (NE), white D (SE); collar bivalent whites on all four
    boundary legs.  Same boundary matrix as ``network_tp24_le`` but
    with the minimal vertex count, so the square face supports the
    face-weight rewrite tests.
    """
    return PlabicNetwork.build(4, [
        ("b1", BOUNDARY, 1, 0, 1),
        ("b2", BOUNDARY, 2, 0, 2),
        ("b3", BOUNDARY, 3, 0, 3),
        ("b4", BOUNDARY, 4, 0, 4),
        ("V1", WHITE, "8/5", "6/5"),
        ("V2", WHITE, "21/10", "1/2"),
        ("V3", WHITE, "13/4", "1/2"),
        ("V4", WHITE, "15/4", 1),
        ("A", WHITE, "23/10", 2),
        ("B", BLACK, "23/10", 1),
        ("C", BLACK, "7/2", 2),
        ("D", WHITE, "7/2", 1),
    ], [
        ("e1", "b1", "V1"),
        ("e2", "b2", "V2"),
        ("e3", "V3", "b3"),
        ("e4", "V4", "b4"),
        ("e5", "V1", "A", w13),
        ("e6", "V2", "B", w23),
        ("e7", "A", "C", w14),
        ("e8", "A", "B"),
        ("e9", "B", "D"),
        ("e10", "D", "C", w24),
        ("e11", "D", "V3"),
        ("e12", "C", "V4"),
    ])


def network_one_loop(w="2", c="1/3") -> PlabicNetwork:
    """Smallest network whose stored orientation has a directed cycle.

    A square hangs between b1 and b2: the black entry vertex merges
    the source edge with the return side of the square, the white
    exit vertex splits toward b2 and back around the square, so the
    square is a directed cycle of weight c and the boundary
    measurement sums a geometric series.
    """
    return PlabicNetwork.build(2, [
        ("b1", BOUNDARY, 1, 0, 1),
        ("b2", BOUNDARY, 2, 0, 2),
        ("I", BLACK, 1, "3/2"),
        ("N", WHITE, "3/2", 2),
        ("O", WHITE, 2, "3/2"),
        ("S", BLACK, "3/2", 1),
    ], [
        ("e1", "b1", "I"),
        ("e2", "I", "N", w),
        ("e3", "N", "O"),
        ("e4", "O", "S", c),
        ("e5", "S", "I"),
        ("e6", "O", "b2"),
    ])


def network_two_loops(p="2", q="3") -> PlabicNetwork:
    """Network in the nonnegative Gr(1,2) whose stored orientation has
    two directed cycles sharing one edge.

    The q-loop runs intake -> top -> merge -> low -> intake and the
    p-loop runs low -> second -> merge -> low; both pass through the
    merge edge ``m``, so the conservative flows are empty, p-loop or
    q-loop, never both, and the flow denominator is 1 + p + q.  The
    edges ``t2``, ``m`` and ``s2`` carry flow sums proportional to
    q - p, so they all become null exactly when p == q, with every
    neighbouring edge vector a multiple of the first coordinate
    direction.
    """
    return PlabicNetwork.build(2, [
        ("b1", BOUNDARY, 1, 0, 1),
        ("b2", BOUNDARY, 6, 0, 2),
        ("BI", BLACK, "17/2", 2),
        ("WT", WHITE, "39/4", "7/2"),
        ("BM", BLACK, "59/8", "9/4"),
        ("WL", WHITE, "55/8", "5/4"),
        ("WS", WHITE, "9/2", 1),
        ("BX", BLACK, "17/4", "3/2"),
    ], [
        ("e0", "b2", "BI"),
        ("a", "BI", "WT"),
        ("t1", "WT", "BX"),
        ("t2", "WT", "BM"),
        ("m", "BM", "WL"),
        ("qe", "WL", "BI", q),
        ("pe", "WL", "WS", p),
        ("s1", "WS", "BX"),
        ("s2", "WS", "BM"),
        ("e5", "BX", "b1"),
    ])


def network_null_trap() -> PlabicNetwork:
    """Network in the nonnegative Gr(1,3) with a closed trap subgraph.

    The splitter white feeds two gate whites; each gate sends one leg
    to the boundary and one into a strongly connected trap (a triangle
    with a doubled side) whose only exits re-enter it.  Every walk
    into the trap eventually reuses an edge and dies, so the seven
    trap edges have identically zero edge vectors at any weights.  The
    gate neighbours point at different boundary sinks, so the null
    group's surviving neighbours are not proportional to each other.
    """
    return PlabicNetwork.build(3, [
        ("b1", BOUNDARY, 1, 0, 1),
        ("b2", BOUNDARY, 2, 0, 2),
        ("b3", BOUNDARY, 3, 0, 3),
        ("W0", WHITE, "17/8", 1),
        ("WA", WHITE, "3/2", 2),
        ("WB", WHITE, "7/2", "5/2"),
        ("BC", BLACK, 2, 3),
        ("WX", WHITE, "5/2", "7/2"),
        ("BX", BLACK, "11/4", 4),
        ("BD", BLACK, "25/8", 3),
    ], [
        ("e0", "b2", "W0"),
        ("u1", "W0", "WA"),
        ("u2", "W0", "WB"),
        ("d1", "WA", "b1"),
        ("e", "WA", "BC"),
        ("d3", "WB", "b3"),
        ("e2", "WB", "BX"),
        ("c1", "BC", "WX"),
        ("c2", "WX", "BD"),
        ("x1", "WX", "BX"),
        ("x2", "BX", "BD"),
        ("c3", "BD", "BC"),
    ])


def network_bubble_chain(w="2", c1="1/2", c2="1/3") -> PlabicNetwork:
    """Two one-loop bubbles in series between b1 and b2.

    The stored orientation has two vertex-disjoint directed cycles of
    weights c1 and c2, so the conservative flows are all four subsets
    and their weight total factors as (1 + c1)(1 + c2).
    """
    return PlabicNetwork.build(2, [
        ("b1", BOUNDARY, 1, 0, 1),
        ("b2", BOUNDARY, 4, 0, 2),
        ("B1", BLACK, "3/2", 1),
        ("W1", WHITE, 2, "3/2"),
        ("D1", WHITE, "5/4", "7/4"),
        ("B2", BLACK, "5/2", 1),
        ("W2", WHITE, 3, "3/2"),
        ("D2", WHITE, "11/4", "15/8"),
    ], [
        ("e1", "b1", "B1", w),
        ("f1", "B1", "W1"),
        ("r1a", "W1", "D1"),
        ("r1b", "D1", "B1", c1),
        ("g", "W1", "B2"),
        ("f2", "B2", "W2"),
        ("r2a", "W2", "D2"),
        ("r2b", "D2", "B2", c2),
        ("out", "W2", "b2"),
    ])


def _filling_connected(shape, filling) -> bool:
    """Is the filled-box graph connected?

    Consecutive filled boxes in a row share the row wire, consecutive
    filled boxes in a column share the column wire; the network built
    from the diagram is connected exactly when this graph is.
    """
    boxes = [(r, p) for r in range(len(shape))
             for p in range(shape[r]) if filling[r][p]]
    if not boxes:
        return False
    parent = {b: b for b in boxes}

    def find(b):
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        return b

    def union(a, b):
        parent[find(a)] = find(b)

    for r in range(len(shape)):
        row = [p for p in range(shape[r]) if filling[r][p]]
        for a, b in zip(row, row[1:]):
            union((r, a), (r, b))
    width = shape[0]
    for p in range(width):
        col = [r for r in range(len(shape)) if shape[r] > p and filling[r][p]]
        for a, b in zip(col, col[1:]):
            union((a, p), (b, p))
    root = find(boxes[0])
    return all(find(b) == root for b in boxes)


def random_le_diagram(rng: random.Random, k: int, width: int,
                      max_weight: int = 5) -> LeDiagram:
    """Random valid Le-diagram with every row and column hit.

    Fillings are drawn box by box; a box is forced empty when filling
    it cannot complete to a Le-valid diagram, forced full when a row
    or column would otherwise stay empty.  Draws whose filled boxes
    split into disconnected groups are rejected so the resulting
    network is connected.
    """
    for _ in range(64):
        shape = sorted((rng.randint(1, width) for _ in range(k)), reverse=True)
        shape[0] = width
        filling = [[0] * shape[r] for r in range(k)]
        for r in range(k):
            for p in range(shape[r]):
                above = any(filling[r2][p] for r2 in range(r) if shape[r2] > p)
                west = any(filling[r][p2] for p2 in range(p))
                if above and west:
                    filling[r][p] = 1   # forced by the Le-property
                else:
                    filling[r][p] = 1 if rng.random() < 0.6 else 0
        ok = all(any(row) for row in filling)
        for p in range(width):
            ok = ok and any(filling[r][p] for r in range(k) if shape[r] > p)
        if not ok or not _filling_connected(shape, filling):
            continue
        weights = [[Fraction(rng.randint(1, max_weight), rng.randint(1, 3))
                    if filling[r][p] else Fraction(0)
                    for p in range(shape[r])] for r in range(k)]
        return LeDiagram(tuple(shape),
                         tuple(tuple(row) for row in filling),
                         tuple(tuple(row) for row in weights))
    raise ValueError("could not draw a valid diagram")


def random_le_network(seed: int, k: int = 2, width: int = 3) -> PlabicNetwork:
    rng = random.Random(seed)
    return build_le_network(random_le_diagram(rng, k, width))


def le_corpus(count: int = 50, max_internal: int = 12) -> list[PlabicNetwork]:
    """Deterministic family of Le-networks of bounded size.

    Spans genus 0 upward with mixed shapes; every network validates
    cleanly and has at most ``max_internal`` internal vertices.
    """
    rng = random.Random(20260818)
    nets = []
    dims = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2), (2, 3), (3, 2)]
    tries = 0
    while len(nets) < count and tries < 40 * count:
        tries += 1
        k, width = dims[tries % len(dims)]
        try:
            diag = random_le_diagram(rng, k, width)
        except ValueError:
            continue
        net = build_le_network(diag)
        if len(net.internal_vertices()) <= max_internal:
            nets.append(net)
    return nets
