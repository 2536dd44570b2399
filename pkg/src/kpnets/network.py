"""Planar bicolored directed networks in the upper half-plane disk.

The disk is modeled as the upper half-plane plus a boundary interval on
the x-axis: boundary vertices sit on y = 0 ordered clockwise = by
increasing x, internal vertices have y > 0, and edges are straight
segments.  Every structural predicate (validation, rotation system,
faces) is exact over rationals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import geometry as geo
from .errors import (DegenerateGeometry, EmbeddingDegenerate, NotABase,
                     ValidationFailure)

BLACK = "black"
WHITE = "white"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class Vertex:
    id: str
    color: str
    pos: geo.Vec
    boundary_index: int | None = None  # 1-based position along the boundary


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    weight: Fraction


@dataclass
class Finding:
    code: str
    fatal: bool
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    def add(self, code: str, fatal: bool, message: str):
        self.findings.append(Finding(code, fatal, message))

    @property
    def ok(self) -> bool:
        return not any(f.fatal for f in self.findings)

    def raise_if_fatal(self):
        if not self.ok:
            msgs = "; ".join(f"{f.code}: {f.message}"
                             for f in self.findings if f.fatal)
            raise ValidationFailure(msgs)

    def codes(self) -> set[str]:
        return {f.code for f in self.findings}


class PlabicNetwork:
    """Immutable-ish container for a drawn network.

    The stored edge directions themselves form the reference orientation;
    alternative orientations are expressed as flip sets on top of it.
    """

    def __init__(self, n: int, vertices: Iterable[Vertex],
                 edges: Iterable[Edge]):
        self.n = n
        self.vertices: dict[str, Vertex] = {v.id: v for v in vertices}
        self.edges: dict[str, Edge] = {e.id: e for e in edges}
        self._adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges.values():
            self._adj[e.tail].append(e.id)
            self._adj[e.head].append(e.id)

    # ---------- construction helpers ----------

    @staticmethod
    def build(n: int, vertices, edges) -> "PlabicNetwork":
        vs = []
        for v in vertices:
            if isinstance(v, Vertex):
                vs.append(v)
            else:
                vid, color, x, y = v[:4]
                bidx = v[4] if len(v) > 4 else None
                vs.append(Vertex(str(vid), color, geo.vec(x, y), bidx))
        es = []
        for e in edges:
            if isinstance(e, Edge):
                es.append(e)
            else:
                eid, tail, head = e[:3]
                w = geo.rat(e[3]) if len(e) > 3 else Fraction(1)
                es.append(Edge(str(eid), str(tail), str(head), w))
        return PlabicNetwork(n, vs, es)

    def copy_with(self, vertices=None, edges=None, n=None) -> "PlabicNetwork":
        return PlabicNetwork(
            self.n if n is None else n,
            list(self.vertices.values()) if vertices is None else vertices,
            list(self.edges.values()) if edges is None else edges)

    # ---------- JSON ----------

    def to_dict(self) -> dict:
        vs = []
        for v in sorted(self.vertices.values(), key=lambda v: v.id):
            d = {"id": v.id, "color": v.color,
                 "x": geo.rat_str(v.pos[0]), "y": geo.rat_str(v.pos[1])}
            if v.boundary_index is not None:
                d["boundary_index"] = v.boundary_index
            vs.append(d)
        es = [{"id": e.id, "tail": e.tail, "head": e.head,
               "weight": geo.rat_str(e.weight)}
              for e in sorted(self.edges.values(), key=lambda e: e.id)]
        return {"n": self.n, "vertices": vs, "edges": es}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True,
                          separators=(",", ":")) + "\n"

    @staticmethod
    def from_dict(data: dict) -> "PlabicNetwork":
        vs = [Vertex(str(v["id"]), v["color"],
                     geo.vec(v["x"], v["y"]), v.get("boundary_index"))
              for v in data["vertices"]]
        es = [Edge(str(e["id"]), str(e["tail"]), str(e["head"]),
                   geo.rat(e["weight"])) for e in data["edges"]]
        return PlabicNetwork(int(data["n"]), vs, es)

    @staticmethod
    def from_json(text: str) -> "PlabicNetwork":
        return PlabicNetwork.from_dict(json.loads(text))

    # ---------- basic views ----------

    def incident(self, vid: str) -> list[str]:
        return list(self._adj[vid])

    def degree(self, vid: str) -> int:
        return len(self._adj[vid])

    def boundary_vertices(self) -> list[Vertex]:
        bs = [v for v in self.vertices.values()
              if v.boundary_index is not None]
        bs.sort(key=lambda v: v.boundary_index)
        return bs

    def internal_vertices(self) -> list[Vertex]:
        return [v for v in sorted(self.vertices.values(), key=lambda v: v.id)
                if v.boundary_index is None]

    def is_internal(self, vid: str) -> bool:
        return self.vertices[vid].boundary_index is None

    def boundary_edge(self, vid: str) -> Edge:
        eids = self._adj[vid]
        if len(eids) != 1:
            raise ValidationFailure(f"boundary vertex {vid} not univalent")
        return self.edges[eids[0]]

    # ---------- census ----------

    def census(self) -> dict:
        t_w = t_b = d_w = d_b = 0
        for v in self.internal_vertices():
            deg = self.degree(v.id)
            if deg == 3:
                if v.color == WHITE:
                    t_w += 1
                else:
                    t_b += 1
            elif deg == 2:
                if v.color == WHITE:
                    d_w += 1
                else:
                    d_b += 1
        n_int_edges = sum(1 for e in self.edges.values()
                          if self.is_internal(e.tail)
                          and self.is_internal(e.head))
        total_internal = t_w + t_b + d_w + d_b
        g = n_int_edges + self.n - total_internal
        return {
            "t_w": t_w, "t_b": t_b, "d_w": d_w, "d_b": d_b,
            "internal_edges": n_int_edges, "n": self.n, "genus": g,
            "curve_components": 1 + total_internal,
            "double_points": n_int_edges + self.n,
        }


# ---------- orientation ----------


class OrientedView:
    """A network together with an edge-flip assignment.

    Flipped edges are traversed head-to-tail and carry the reciprocal
    weight, which is the convention under which boundary measurements
    transform consistently.
    """

    def __init__(self, net: PlabicNetwork, flip: dict[str, bool] | None = None):
        self.net = net
        self.flip = {eid: False for eid in net.edges}
        if flip:
            for eid, f in flip.items():
                self.flip[eid] = bool(f)
        self._outs: dict[str, list[str]] = {v: [] for v in net.vertices}
        self._ins: dict[str, list[str]] = {v: [] for v in net.vertices}
        for eid in sorted(net.edges):
            self._outs[self.tail(eid)].append(eid)
            self._ins[self.head(eid)].append(eid)

    def tail(self, eid: str) -> str:
        e = self.net.edges[eid]
        return e.head if self.flip[eid] else e.tail

    def head(self, eid: str) -> str:
        e = self.net.edges[eid]
        return e.tail if self.flip[eid] else e.head

    def weight(self, eid: str) -> Fraction:
        e = self.net.edges[eid]
        return 1 / e.weight if self.flip[eid] else e.weight

    def direction(self, eid: str) -> geo.Vec:
        return geo.vsub(self.net.vertices[self.head(eid)].pos,
                        self.net.vertices[self.tail(eid)].pos)

    def out_edges(self, vid: str) -> list[str]:
        return list(self._outs[vid])

    def in_edges(self, vid: str) -> list[str]:
        return list(self._ins[vid])

    def sources(self) -> list[int]:
        """Boundary indices whose boundary edge points into the disk."""
        out = []
        for b in self.net.boundary_vertices():
            e = self.net.boundary_edge(b.id)
            if self.tail(e.id) == b.id:
                out.append(b.boundary_index)
        return sorted(out)

    def is_perfect(self) -> bool:
        for v in self.net.internal_vertices():
            deg = self.net.degree(v.id)
            nin = len(self._ins[v.id])
            if deg == 2 and nin != 1:
                return False
            if deg == 3:
                if v.color == WHITE and nin != 1:
                    return False
                if v.color == BLACK and deg - nin != 1:
                    return False
        return True

    def is_acyclic(self) -> bool:
        indeg = {v: len(self._ins[v]) for v in self.net.vertices}
        stack = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for eid in self._outs[v]:
                h = self.head(eid)
                indeg[h] -= 1
                if indeg[h] == 0:
                    stack.append(h)
        return seen == len(self.net.vertices)

    def reoriented_network(self) -> PlabicNetwork:
        """Materialize the flips into a new network (reference orientation)."""
        es = []
        for e in self.net.edges.values():
            if self.flip[e.id]:
                es.append(Edge(e.id, e.head, e.tail, 1 / e.weight))
            else:
                es.append(e)
        return self.net.copy_with(edges=es)


@dataclass
class PerfectOrientation:
    base: tuple[int, ...]
    flip: dict[str, bool]
    steps: list[tuple]  # ('path'|'cycle', [edge ids], extra...)

    def view(self, net: PlabicNetwork) -> OrientedView:
        return OrientedView(net, self.flip)


def validate_pbdtp(net: PlabicNetwork) -> ValidationReport:
    """Structural validation; reports findings, never raises."""
    rep = ValidationReport()
    bs = net.boundary_vertices()
    if len(bs) != net.n:
        rep.add("boundary-count", True,
                f"expected {net.n} boundary vertices, found {len(bs)}")
    idxs = [b.boundary_index for b in bs]
    if idxs != list(range(1, len(bs) + 1)):
        rep.add("boundary-indices", True,
                f"boundary indices not 1..n: {idxs}")
    for b in bs:
        if b.pos[1] != 0:
            rep.add("boundary-on-axis", True,
                    f"boundary vertex {b.id} off the axis y=0")
    for a, b in zip(bs, bs[1:]):
        if not a.pos[0] < b.pos[0]:
            rep.add("boundary-order", True,
                    f"boundary x positions not increasing at {b.id}")
    for v in net.internal_vertices():
        if v.pos[1] <= 0:
            rep.add("internal-in-halfplane", True,
                    f"internal vertex {v.id} not strictly above the axis")
        if v.color not in (BLACK, WHITE):
            rep.add("internal-color", True,
                    f"internal vertex {v.id} has color {v.color!r}")
        deg = net.degree(v.id)
        if deg not in (2, 3):
            rep.add("internal-valence", True,
                    f"internal vertex {v.id} has degree {deg}")
    for b in bs:
        if net.degree(b.id) != 1:
            rep.add("boundary-univalent", True,
                    f"boundary vertex {b.id} has degree {net.degree(b.id)}")
    for e in net.edges.values():
        if e.weight <= 0:
            rep.add("edge-weight", True,
                    f"edge {e.id} has non-positive weight")
        if e.tail == e.head:
            rep.add("self-loop", True, f"edge {e.id} is a loop")
    # connectivity
    if net.vertices:
        seen = set()
        start = next(iter(sorted(net.vertices)))
        stack = [start]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            for eid in net.incident(v):
                e = net.edges[eid]
                stack.append(e.head if e.tail == v else e.tail)
        if len(seen) != len(net.vertices):
            rep.add("connected", True,
                    f"network has {len(net.vertices) - len(seen)} "
                    "unreachable vertices")
    # perfectness of the stored orientation
    view = OrientedView(net)
    for v in net.internal_vertices():
        deg = net.degree(v.id)
        nin = len(view.in_edges(v.id))
        nout = deg - nin
        if nin == 0 or nout == 0:
            rep.add("internal-source-sink", True,
                    f"internal vertex {v.id} is a source or sink")
        if deg == 2 and nin != 1:
            rep.add("orientation-bivalent", True,
                    f"bivalent vertex {v.id} lacks one-in one-out")
        if deg == 3 and v.color == WHITE and nin != 1:
            rep.add("orientation-white", True,
                    f"trivalent white vertex {v.id} must have exactly "
                    f"one incoming edge, has {nin}")
        if deg == 3 and v.color == BLACK and nout != 1:
            rep.add("orientation-black", True,
                    f"trivalent black vertex {v.id} must have exactly "
                    f"one outgoing edge, has {nout}")
    # geometry: distinct positions, vertices off other edges, no crossings
    pos_seen: dict[geo.Vec, str] = {}
    for v in sorted(net.vertices.values(), key=lambda v: v.id):
        if v.pos in pos_seen:
            rep.add("distinct-positions", True,
                    f"vertices {pos_seen[v.pos]} and {v.id} coincide")
        pos_seen[v.pos] = v.id
    eids = sorted(net.edges)
    for i, ei in enumerate(eids):
        e = net.edges[ei]
        pa = net.vertices[e.tail].pos
        pb = net.vertices[e.head].pos
        for v in net.vertices.values():
            if v.id in (e.tail, e.head):
                continue
            if geo.on_segment(v.pos, pa, pb):
                rep.add("vertex-on-edge", True,
                        f"vertex {v.id} lies on edge {ei}")
        for ej in eids[i + 1:]:
            f = net.edges[ej]
            qa = net.vertices[f.tail].pos
            qb = net.vertices[f.head].pos
            shared = {e.tail, e.head} & {f.tail, f.head}
            if geo.segments_conflict(pa, pb, qa, qb):
                rep.add("edge-crossing", True,
                        f"edges {ei} and {ej} intersect improperly")
            elif shared:
                pass
    # boundary attachment to bivalent white vertices (advisory)
    for b in bs:
        if net.degree(b.id) != 1:
            continue
        e = net.boundary_edge(b.id)
        other = e.head if e.tail == b.id else e.tail
        ov = net.vertices[other]
        if ov.boundary_index is not None or ov.color != WHITE \
                or net.degree(other) != 2:
            rep.add("boundary-bivalent-white", False,
                    f"boundary vertex {b.id} is not attached to an "
                    "internal bivalent white vertex")
    return rep


# ---------- rotation system and faces ----------


@dataclass
class Face:
    index: int
    key: tuple
    walk: list[tuple[str, int]]     # (edge id, +1 with, -1 against), real only
    corners: list[tuple[str, str, str]]  # (vertex, arriving eid, leaving eid)
    is_outer: bool = False


class FaceSet:
    def __init__(self, faces: list[Face], corner_map: dict):
        self.faces = faces
        self._corner = corner_map

    def __len__(self):
        return len(self.faces)

    @property
    def outer(self) -> Face:
        return next(f for f in self.faces if f.is_outer)

    def corner_face(self, vid: str, eid_a: str, eid_b: str) -> Face:
        """Face in the wedge between consecutive edges at a vertex.

        The pair is looked up both ways; exactly one order is a corner of
        some face walk.
        """
        f = self._corner.get((vid, eid_a, eid_b))
        if f is None:
            f = self._corner.get((vid, eid_b, eid_a))
        if f is None:
            raise KeyError(f"no face corner at {vid} between "
                           f"{eid_a} and {eid_b}")
        return self.faces[f]


PHANTOM = "__arc__"


def _rotation_system(net: PlabicNetwork):
    """Clockwise rotation of half-edges at every vertex, with phantom
    boundary arcs closing the disk.

    Half-edges are (edge id, end) with end 0 = stored tail, 1 = stored
    head; phantom arcs get ids '__arc__<i>'.  Returns (rotation next map,
    twin map, directions, phantom ids).
    """
    bs = net.boundary_vertices()
    arcs = []
    # chords between consecutive boundary vertices, plus the closing arc
    for i in range(len(bs) - 1):
        arcs.append((f"{PHANTOM}{i + 1}", bs[i].id, bs[i + 1].id, None))
    arcs.append((f"{PHANTOM}0", bs[-1].id, bs[0].id, (Fraction(0),
                                                      Fraction(-1))))
    halfedges = {}
    for eid, e in net.edges.items():
        pa = net.vertices[e.tail].pos
        pb = net.vertices[e.head].pos
        halfedges[(eid, 0)] = (e.tail, geo.vsub(pb, pa))
        halfedges[(eid, 1)] = (e.head, geo.vsub(pa, pb))
    for aid, t, h, closing_dir in arcs:
        pa = net.vertices[t].pos
        pb = net.vertices[h].pos
        if closing_dir is None:
            halfedges[(aid, 0)] = (t, geo.vsub(pb, pa))
            halfedges[(aid, 1)] = (h, geo.vsub(pa, pb))
        else:
            # the closing arc dives below the axis at both endpoints
            halfedges[(aid, 0)] = (t, closing_dir)
            halfedges[(aid, 1)] = (h, closing_dir)
    at_vertex: dict[str, list] = {v: [] for v in net.vertices}
    for he, (vid, d) in halfedges.items():
        at_vertex[vid].append(he)
    rot_next = {}
    for vid, hes in at_vertex.items():
        ordered = geo.sort_cw(hes, lambda he: halfedges[he][1])
        for i, he in enumerate(ordered):
            rot_next[he] = ordered[(i + 1) % len(ordered)]
    twin = {}
    for eid, _e in net.edges.items():
        twin[(eid, 0)] = (eid, 1)
        twin[(eid, 1)] = (eid, 0)
    for aid, _t, _h, _d in arcs:
        twin[(aid, 0)] = (aid, 1)
        twin[(aid, 1)] = (aid, 0)
    return rot_next, twin, halfedges, [a[0] for a in arcs]


def compute_faces(net: PlabicNetwork) -> FaceSet:
    """Faces of the drawn network, the unbounded one included.

    Raises EmbeddingDegenerate when the rotation system cannot be built
    (coincident edge directions at a vertex).
    """
    if not net.boundary_vertices():
        raise EmbeddingDegenerate("no boundary vertices")
    rot_next, twin, halfedges, _arc_ids = _rotation_system(net)
    visited = set()
    raw_faces = []
    for start in sorted(halfedges, key=str):
        if start in visited:
            continue
        walk = []
        he = start
        while he not in visited:
            visited.add(he)
            walk.append(he)
            he = rot_next[twin[he]]
        raw_faces.append(walk)
    closing = f"{PHANTOM}0"
    faces: list[Face] = []
    for walk in raw_faces:
        real = [(eid, 1 if end == 0 else -1) for (eid, end) in walk
                if not eid.startswith(PHANTOM)]
        if not real:
            # the sliver between the chord chain and the closing arc
            continue
        corners = []
        for i, he in enumerate(walk):
            nxt = walk[(i + 1) % len(walk)]
            vtx = halfedges[nxt][0]
            corners.append((vtx, he[0], nxt[0]))
        is_outer = any(eid == closing for (eid, _end) in walk)
        key = tuple(sorted((eid, s) for (eid, s) in real))
        faces.append(Face(0, key, real, corners, is_outer))
    faces.sort(key=lambda f: (not f.is_outer, f.key))
    # outer face first as f0, then bounded faces in key order
    corner_map = {}
    for i, f in enumerate(faces):
        f.index = i
        for (vtx, ein, eout) in f.corners:
            corner_map[(vtx, ein, eout)] = i
    return FaceSet(faces, corner_map)


# ---------- orientation retargeting ----------


def find_perfect_orientation(net: PlabicNetwork,
                             base: Iterable[int]) -> PerfectOrientation:
    """Perfect orientation with the given boundary sources.

    Starts from the stored orientation and reroutes it with an integral
    unit-capacity flow between the source sets; raises NotABase when the
    requested set is not achievable.
    """
    view = OrientedView(net)
    if not view.is_perfect():
        raise ValidationFailure("stored orientation is not perfect")
    i0 = tuple(view.sources())
    target = tuple(sorted(set(base)))
    if len(target) != len(i0):
        raise NotABase(f"base must have {len(i0)} elements, got {target}")
    if any(j < 1 or j > net.n for j in target):
        raise NotABase(f"base indices out of range: {target}")
    if target == i0:
        return PerfectOrientation(target, dict(view.flip), [])
    lose = sorted(set(i0) - set(target))    # sources to demote
    gain = sorted(set(target) - set(i0))    # sinks to promote
    bidx = {b.boundary_index: b.id for b in net.boundary_vertices()}

    # unit-capacity max flow on the current digraph
    flow: dict[str, int] = {eid: 0 for eid in net.edges}
    SUP, SINK = "__sup__", "__sink__"

    def residual_neighbors(v):
        if v == SUP:
            for i in lose:
                yield (bidx[i], ("sup", i))
            return
        for eid in view.out_edges(v):
            if flow[eid] == 0:
                yield (view.head(eid), ("fwd", eid))
        for eid in view.in_edges(v):
            if flow[eid] == 1:
                yield (view.tail(eid), ("bwd", eid))
        if v in (bidx[j] for j in gain):
            yield (SINK, ("snk", v))

    pushed = 0
    while True:
        # breadth-first augmenting path in the residual graph
        prev = {SUP: None}
        queue = [SUP]
        found = False
        while queue and not found:
            nq = []
            for v in queue:
                for (w, tag) in residual_neighbors(v):
                    if w in prev:
                        continue
                    prev[w] = (v, tag)
                    if w == SINK:
                        found = True
                        break
                    nq.append(w)
                if found:
                    break
            queue = nq
        if not found:
            break
        v = SINK
        while prev[v] is not None:
            u, tag = prev[v]
            kind = tag[0]
            if kind == "fwd":
                flow[tag[1]] = 1
            elif kind == "bwd":
                flow[tag[1]] = 0
            v = u
        pushed += 1
    if pushed < len(lose):
        raise NotABase(f"{target} is not a base: only {pushed} of "
                       f"{len(lose)} reroutes possible")

    reversal = {eid for eid, fl in flow.items() if fl == 1}
    # decompose the reversal set into source-to-sink paths and cycles
    steps: list[tuple] = []
    remaining = set(reversal)
    out_rev: dict[str, list[str]] = {}
    for eid in sorted(remaining):
        out_rev.setdefault(view.tail(eid), []).append(eid)
    for i in lose:
        v = bidx[i]
        trace = []
        while True:
            nxts = [eid for eid in out_rev.get(v, []) if eid in remaining]
            if not nxts:
                break
            eid = nxts[0]
            remaining.discard(eid)
            trace.append(eid)
            v = view.head(eid)
        j = net.vertices[v].boundary_index
        if not trace or j not in gain:
            raise NotABase("flow decomposition failed to reach a sink")
        steps.append(("path", trace, i, j))
    while remaining:
        eid0 = min(remaining)
        trace = [eid0]
        remaining.discard(eid0)
        v = view.head(eid0)
        start = view.tail(eid0)
        while v != start:
            nxts = [eid for eid in out_rev.get(v, []) if eid in remaining]
            if not nxts:
                raise NotABase("cycle decomposition failed to close")
            eid = nxts[0]
            remaining.discard(eid)
            trace.append(eid)
            v = view.head(eid)
        steps.append(("cycle", trace))
    steps.sort(key=lambda s: (0, s[2]) if s[0] == "path"
               else (1, s[1][0]))
    flip = dict(view.flip)
    for eid in reversal:
        flip[eid] = not flip[eid]
    new_view = OrientedView(net, flip)
    if not new_view.is_perfect():
        raise NotABase("rerouted orientation failed perfectness")
    if tuple(new_view.sources()) != target:
        raise NotABase("rerouted orientation has wrong sources")
    return PerfectOrientation(target, flip, steps)


def all_bases(net: PlabicNetwork) -> list[tuple[int, ...]]:
    """Every achievable source set, by exhaustive flow checks."""
    import itertools
    view = OrientedView(net)
    k = len(view.sources())
    out = []
    for comb in itertools.combinations(range(1, net.n + 1), k):
        try:
            find_perfect_orientation(net, comb)
            out.append(comb)
        except NotABase:
            pass
    return out


# ---------- edge labels at internal vertices ----------


def edge_labels(net: PlabicNetwork, view: OrientedView, vid: str) -> list[str]:
    """Clockwise edge labels at an internal vertex.

    For a trivalent white vertex the third label is its unique incoming
    edge; for a trivalent black vertex the first label is its unique
    outgoing edge; a bivalent vertex gets labels (out, in) in positions
    one and three.  Returns the edge ids in label order e1, e2, e3 (the
    middle entry is None for bivalent vertices).
    """
    v = net.vertices[vid]
    if v.boundary_index is not None:
        raise ValueError(f"{vid} is a boundary vertex")
    eids = net.incident(vid)

    def away_dir(eid):
        e = net.edges[eid]
        other = e.head if e.tail == vid else e.tail
        return geo.vsub(net.vertices[other].pos, v.pos)

    ordered = geo.sort_cw(eids, away_dir)
    if len(ordered) == 2:
        ein = [eid for eid in ordered if view.head(eid) == vid]
        eout = [eid for eid in ordered if view.tail(eid) == vid]
        if len(ein) != 1 or len(eout) != 1:
            raise ValidationFailure(f"bivalent vertex {vid} not oriented")
        return [eout[0], None, ein[0]]
    if v.color == WHITE:
        anchors = [eid for eid in ordered if view.head(eid) == vid]
        if len(anchors) != 1:
            raise ValidationFailure(f"white vertex {vid} not perfectly "
                                    "oriented")
        a = ordered.index(anchors[0])
        # anchor is e3; clockwise successor is e1
        return [ordered[(a + 1) % 3], ordered[(a + 2) % 3], ordered[a]]
    anchors = [eid for eid in ordered if view.tail(eid) == vid]
    if len(anchors) != 1:
        raise ValidationFailure(f"black vertex {vid} not perfectly oriented")
    a = ordered.index(anchors[0])
    return [ordered[a], ordered[(a + 1) % 3], ordered[(a + 2) % 3]]
