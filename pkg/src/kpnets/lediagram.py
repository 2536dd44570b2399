"""Le-diagrams and the planar networks they parametrize.

A Le-diagram is a Young shape inside a k x (n-k) box together with a
0/1 filling obeying the Le-property and a positive weight on every
filled box.  ``build_le_network`` turns one into a planar bicolored
network in the upper half plane whose boundary measurement matrix is
the row-reduced matrix with those weights as coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geometry as geo
from .errors import EmptyDiagram
from .network import BLACK, BOUNDARY, WHITE, PlabicNetwork


@dataclass(frozen=True)
class LeDiagram:
    """Young shape row lengths + 0/1 filling + per-box weights.

    Rows are numbered 1..k top to bottom, column positions 1..width
    west to east.  ``filling[r-1][p-1]`` is 1 when box (r, p) is
    filled; ``weights`` is aligned with ``filling`` and only entries
    at filled boxes matter.
    """

    shape: tuple[int, ...]
    filling: tuple[tuple[int, ...], ...]
    weights: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.shape:
            raise EmptyDiagram("diagram has no rows")
        if any(l <= 0 for l in self.shape):
            raise EmptyDiagram("every row of the shape must be nonempty")
        for a, b in zip(self.shape, self.shape[1:]):
            if b > a:
                raise ValueError("shape row lengths must be weakly decreasing")
        if len(self.filling) != len(self.shape) or len(self.weights) != len(self.shape):
            raise ValueError("filling and weights must have one row per shape row")
        for r, length in enumerate(self.shape):
            if len(self.filling[r]) != length or len(self.weights[r]) != length:
                raise ValueError("row %d of filling/weights does not match the shape" % (r + 1))
            for p in range(length):
                if self.filling[r][p] not in (0, 1):
                    raise ValueError("filling entries must be 0 or 1")
                if self.filling[r][p] and self.weights[r][p] <= 0:
                    raise ValueError("filled box (%d,%d) needs a positive weight" % (r + 1, p + 1))
        # Le-property: no empty box with a filled box above it in the
        # same column and a filled box west of it in the same row.
        for r in range(len(self.shape)):
            for p in range(self.shape[r]):
                if self.filling[r][p]:
                    continue
                above = any(self.filling[r2][p] for r2 in range(r) if self.shape[r2] > p)
                west = any(self.filling[r][p2] for p2 in range(p))
                if above and west:
                    raise ValueError(
                        "Le-property fails at box (%d,%d): filled above and west" % (r + 1, p + 1))
        if not any(any(row) for row in self.filling):
            raise EmptyDiagram("all-zero filling parametrizes no network")
        for r in range(len(self.shape)):
            if not any(self.filling[r]):
                raise EmptyDiagram("row %d has no filled box" % (r + 1))
        for p in range(self.shape[0]):
            if not any(self.filling[r][p] for r in range(len(self.shape)) if self.shape[r] > p):
                raise EmptyDiagram("column %d has no filled box" % (p + 1))

    @property
    def k(self) -> int:
        return len(self.shape)

    @property
    def width(self) -> int:
        return self.shape[0]

    @property
    def n(self) -> int:
        return self.k + self.width

    def column_height(self, p: int) -> int:
        """Number of shape rows reaching column position p (1-based)."""
        return sum(1 for l in self.shape if l >= p)

    def pivots(self) -> tuple[int, ...]:
        """Boundary labels of the rows (the lexicographically minimal base)."""
        w = self.width
        return tuple(r + w - self.shape[r - 1] for r in range(1, self.k + 1))

    def nonpivots(self) -> tuple[int, ...]:
        """Boundary labels of the column positions, west to east."""
        w = self.width
        return tuple(self.column_height(p) + w + 1 - p for p in range(1, w + 1))

    def filled(self) -> list[tuple[int, int]]:
        """Filled boxes as (row, position), rows top-down then west to east."""
        out = []
        for r in range(1, self.k + 1):
            for p in range(1, self.shape[r - 1] + 1):
                if self.filling[r - 1][p - 1]:
                    out.append((r, p))
        return out

    def weight(self, r: int, p: int) -> Fraction:
        return self.weights[r - 1][p - 1]

    def to_dict(self) -> dict:
        return {
            "shape": list(self.shape),
            "filling": [list(row) for row in self.filling],
            "weights": [[geo.rat_str(w) for w in row] for row in self.weights],
        }

    @staticmethod
    def from_dict(data: dict) -> "LeDiagram":
        return le_diagram(data["shape"], data["filling"], data["weights"])


def le_diagram(shape, filling, weights) -> LeDiagram:
    """Build a LeDiagram from plain nested lists, coercing weights."""
    sh = tuple(int(l) for l in shape)
    fil = tuple(tuple(int(x) for x in row) for row in filling)
    wts = tuple(tuple(geo.rat(w) for w in row) for row in weights)
    return LeDiagram(sh, fil, wts)


def _box_vertex_plan(diag: LeDiagram):
    """Decide, per filled box, the local vertex structure.

    Every filled box has a horizontal input from the east and a
    column output to the south.  It additionally has a column input
    from the north when a filled box sits above it, and a horizontal
    output to the west when a filled box sits further west in its
    row.  A box with all four ports becomes a merge (black, holding
    the two inputs) bridged to a split (white, holding the two
    outputs); three-port boxes collapse to a single trivalent vertex
    and two-port boxes to a single bivalent white.
    """
    plan = {}
    rows = {r: [] for r in range(1, diag.k + 1)}
    cols = {p: [] for p in range(1, diag.width + 1)}
    for (r, p) in diag.filled():
        rows[r].append(p)
        cols[p].append(r)
    for (r, p) in diag.filled():
        has_n = any(r2 < r for r2 in cols[p])
        has_w = any(p2 < p for p2 in rows[r])
        if has_n and has_w:
            kind = "pair"
        elif has_n:
            kind = "black"
        elif has_w:
            kind = "white"
        else:
            kind = "bivalent"
        plan[(r, p)] = kind
    return plan, rows, cols


def build_le_network(diag: LeDiagram) -> PlabicNetwork:
    """Realize a Le-diagram as a planar bicolored network in the disk.

    Boundary vertices sit at (m, 0); every one is joined to a
    bivalent white collar vertex at its port on the wire grid.  Rows
    run east to west in diagram terms (left to right on the page),
    columns run south along slope -1 diagonals.  The box weight sits
    on the horizontal edge entering the box, so a path collects
    exactly the weights of the boxes it enters horizontally; stored
    orientation has the row labels as sources, which is the
    lexicographically minimal base, and is acyclic.
    """
    k, w, n = diag.k, diag.width, diag.n
    plan, rows, cols = _box_vertex_plan(diag)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    def row_y(r):
        return Fraction(2 * k - 2 * r + 3, 2)

    def box_xy(r, p):
        return (Fraction(2 * (r - p + w) + 1, 2), row_y(r))

    pivots = diag.pivots()
    nonpivots = diag.nonpivots()
    labels = sorted(pivots + nonpivots)
    if labels != list(range(1, n + 1)):
        raise ValueError("boundary labels do not tile 1..n")

    vertices = []
    edges = []
    eid = [0]

    def add_edge(tail, head, weight=1):
        eid[0] += 1
        edges.append(("e%03d" % eid[0], tail, head, weight))

    # Per-box vertices.  in_v receives the horizontal input (and the
    # column input when present), out_v emits the remaining outputs.
    in_v = {}
    out_south = {}
    out_west = {}
    for (r, p) in diag.filled():
        kind = plan[(r, p)]
        x, y = box_xy(r, p)
        if kind == "pair":
            b_id = "m%dx%d" % (r, p)
            w_id = "s%dx%d" % (r, p)
            vertices.append((b_id, BLACK, x, y))
            vertices.append((w_id, WHITE, x + quarter, y - quarter))
            in_v[(r, p)] = b_id
            out_south[(r, p)] = w_id
            out_west[(r, p)] = w_id
        else:
            color = {"black": BLACK, "white": WHITE, "bivalent": WHITE}[kind]
            v_id = "x%dx%d" % (r, p)
            vertices.append((v_id, color, x, y))
            in_v[(r, p)] = v_id
            out_south[(r, p)] = v_id
            out_west[(r, p)] = v_id

    # Boundary vertices and their collar bivalent whites at the ports.
    for r in range(1, k + 1):
        m = pivots[r - 1]
        vertices.append(("b%d" % m, BOUNDARY, m, 0, m))
        vertices.append(("v%d" % m, WHITE, m, row_y(r)))
    for p in range(1, w + 1):
        m = nonpivots[p - 1]
        vertices.append(("b%d" % m, BOUNDARY, m, 0, m))
        vertices.append(("v%d" % m, WHITE, m, k - diag.column_height(p) + 1))

    # Boundary edges, in label order.
    for m in range(1, n + 1):
        if m in pivots:
            add_edge("b%d" % m, "v%d" % m)
        else:
            add_edge("v%d" % m, "b%d" % m)

    # Bridges of the merge/split pairs.
    for (r, p) in diag.filled():
        if plan[(r, p)] == "pair":
            add_edge("m%dx%d" % (r, p), "s%dx%d" % (r, p))

    # Row wires: collar -> easternmost box -> ... westward; the edge
    # entering box (r, p) carries its weight.
    for r in range(1, k + 1):
        ps = sorted(rows[r], reverse=True)
        add_edge("v%d" % pivots[r - 1], in_v[(r, ps[0])], diag.weight(r, ps[0]))
        for p_east, p_west in zip(ps, ps[1:]):
            add_edge(out_west[(r, p_east)], in_v[(r, p_west)], diag.weight(r, p_west))

    # Column wires: north box -> ... -> south box -> collar.
    for p in range(1, w + 1):
        rs = sorted(cols[p])
        for r_n, r_s in zip(rs, rs[1:]):
            add_edge(out_south[(r_n, p)], in_v[(r_s, p)])
        add_edge(out_south[(rs[-1], p)], "v%d" % nonpivots[p - 1])

    return PlabicNetwork.build(n, vertices, edges)
