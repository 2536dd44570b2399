"""Edge vector systems on oriented networks in the disk.

Every directed edge carries a rational n-vector whose j-th component
sums the signed weights of all walks from that edge to the boundary
vertex b_j.  Two independent computations are provided: a combinatorial
one over edge flows (distinct-edge walks decorated with disjoint unions
of simple cycles) and the unique solution of the linear system the
vectors satisfy at internal vertices.  Transformation laws cover gauge
ray changes, orientation changes, and the weight and vertex gauges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import geometry as geo
from .errors import (DegenerateGeometry, NotABase, NotReachable, SizeGuard)
from .network import (BOUNDARY, Edge, OrientedView, PlabicNetwork, Vertex,
                      find_perfect_orientation)
from .rays import (GaugeRay, boundary_anchors, path_stats,
                   gauge_ray_violations, ray_change_signs, ray_intersections,
                   region_index, region_marking,
                   sources_clear_boundary_edges, winding)

FLOW_GUARD = 1 << 16

Vector = tuple[Fraction, ...]


def _zero(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


def _unit(n: int, j: int) -> Vector:
    return tuple(Fraction(1 if m == j else 0) for m in range(1, n + 1))


def _add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _scale(c, a: Vector) -> Vector:
    return tuple(Fraction(c) * x for x in a)


@dataclass(frozen=True)
class EdgeVectorSystem:
    """The full assignment edge id -> n-vector, with its context.

    ``method`` records how the numbers were produced ('flows', 'solve',
    or one of the transform tags); ``det`` is the determinant of the
    linear system, equal to the weight sum of all conservative flows.
    """
    vectors: Mapping[str, Vector]
    base: tuple[int, ...]
    ray: GaugeRay
    sink_conditions: Mapping[int, Vector]
    method: str
    det: Fraction = field(default_factory=lambda: Fraction(1))

    def vector(self, eid: str) -> Vector:
        return self.vectors[eid]

    def null_edges(self) -> list[str]:
        return [eid for eid in sorted(self.vectors)
                if all(x == 0 for x in self.vectors[eid])]


def canonical_sinks(net: PlabicNetwork, view: OrientedView
                    ) -> dict[int, Vector]:
    """Canonical basis vector at every boundary sink."""
    srcs = set(view.sources())
    return {j: _unit(net.n, j) for j in range(1, net.n + 1)
            if j not in srcs}


# ---------- flows ----------


def simple_cycles(net: PlabicNetwork, view: OrientedView
                  ) -> list[frozenset[str]]:
    """All simple directed cycles, as edge-id sets."""
    order = {vid: i for i, vid in enumerate(sorted(net.vertices))}
    cycles: set[frozenset[str]] = set()

    def grow(start: str, vid: str, used: list[str], seen: set[str]):
        for eid in view.out_edges(vid):
            nxt = view.head(eid)
            if nxt == start:
                cycles.add(frozenset(used + [eid]))
                continue
            if nxt in seen or net.vertices[nxt].color == BOUNDARY:
                continue
            if order[nxt] < order[start]:
                continue
            grow(start, nxt, used + [eid], seen | {nxt})

    for vid in sorted(net.vertices, key=order.get):
        if net.is_internal(vid):
            grow(vid, vid, [], {vid})
    return sorted(cycles, key=sorted)


def enumerate_conservative_flows(net: PlabicNetwork, view: OrientedView,
                                 guard: int = FLOW_GUARD
                                 ) -> list[tuple[frozenset[str], Fraction]]:
    """Edge-disjoint unions of simple cycles, with the empty flow.

    At trivalent and bivalent vertices edge-disjoint cycles cannot
    share a vertex, so edge-disjointness alone gives conservation at
    every internal vertex.
    """
    cycles = simple_cycles(net, view)
    flows: list[tuple[frozenset[str], Fraction]] = []

    def weight(edges: frozenset[str]) -> Fraction:
        total = Fraction(1)
        for eid in edges:
            total *= view.weight(eid)
        return total

    def extend(idx: int, chosen: frozenset[str]):
        if len(flows) >= guard:
            raise SizeGuard(f"more than {guard} conservative flows")
        flows.append((chosen, weight(chosen)))
        for k in range(idx, len(cycles)):
            if not (cycles[k] & chosen):
                extend(k + 1, chosen | cycles[k])

    extend(0, frozenset())
    return flows


def loop_erased_walks(net: PlabicNetwork, view: OrientedView, eid: str,
                      guard: int = FLOW_GUARD) -> list[list[str]]:
    """Distinct-edge walks from eid to the boundary.

    Walks that never repeat an edge are exactly the fixed points of
    edge loop erasure; trivalency then keeps them from revisiting any
    internal vertex except possibly the tail of the starting edge.
    """
    walks: list[list[str]] = []

    def grow(walk: list[str], used: set[str]):
        if len(walks) >= guard:
            raise SizeGuard(f"more than {guard} walks from {eid}")
        head = view.head(walk[-1])
        if net.vertices[head].color == BOUNDARY:
            walks.append(list(walk))
            return
        for nxt in view.out_edges(head):
            if nxt not in used:
                walk.append(nxt)
                used.add(nxt)
                grow(walk, used)
                used.discard(nxt)
                walk.pop()

    grow([eid], {eid})
    return walks


def edge_vector_by_flows(net: PlabicNetwork, view: OrientedView,
                         ray: GaugeRay, eid: str,
                         guard: int = FLOW_GUARD) -> Vector:
    """Flow-sum formula for the vector at one edge.

    Component j is the signed weight sum over edge flows ending at b_j
    divided by the weight sum of all conservative flows.
    """
    cons = enumerate_conservative_flows(net, view, guard)
    denom = sum(w for _, w in cons)
    comps = [Fraction(0)] * net.n
    for walk in loop_erased_walks(net, view, eid, guard):
        j = net.vertices[view.head(walk[-1])].boundary_index
        weight, wind, crossings = path_stats(net, view, walk, ray)
        edges = frozenset(walk)
        decor = sum(w for c, w in cons if not (c & edges))
        comps[j - 1] += (-1) ** ((wind + crossings) % 2) * weight * decor
    return tuple(c / denom for c in comps)


# ---------- linear solve ----------


def solve_edge_vectors(net: PlabicNetwork, view: OrientedView,
                       ray: GaugeRay,
                       sink_conditions: Mapping[int, Vector] | None = None
                       ) -> EdgeVectorSystem:
    """Unique solution of the vertex relations, by exact elimination.

    Each edge contributes one equation: at an internal head vertex the
    incoming vector is the signed weighted sum of the outgoing ones; at
    a boundary sink it equals the sink condition scaled by the edge
    weight and its ray-crossing sign.  The determinant of the system
    equals the weight sum of all conservative flows.
    """
    n = net.n
    if sink_conditions is None:
        sink_conditions = canonical_sinks(net, view)
    eids = sorted(net.edges)
    col = {e: i for i, e in enumerate(eids)}
    m = len(eids)
    rows = [[Fraction(0)] * m for _ in range(m)]
    rhs = [[Fraction(0)] * n for _ in range(m)]
    for eid in eids:
        r = col[eid]
        rows[r][r] = Fraction(1)
        head = view.head(eid)
        sign = (-1) ** (ray_intersections(net, view, eid, ray) % 2)
        w = view.weight(eid)
        j = net.vertices[head].boundary_index
        if j is not None:
            if j not in sink_conditions:
                raise NotABase(f"edge {eid} ends at b_{j} which is no sink")
            for c, x in enumerate(sink_conditions[j]):
                rhs[r][c] = sign * w * x
            continue
        for out in view.out_edges(head):
            turn = winding(view.direction(eid), view.direction(out), ray)
            rows[r][col[out]] = -sign * w * (-1) ** (turn % 2)
    det = Fraction(1)
    for c in range(m):
        pivot = next((r for r in range(c, m) if rows[r][c] != 0), None)
        if pivot is None:
            raise DegenerateGeometry("singular vertex relation system")
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            rhs[c], rhs[pivot] = rhs[pivot], rhs[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        rhs[c] = [x * inv for x in rhs[c]]
        for r in range(m):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
                rhs[r] = [x - f * y for x, y in zip(rhs[r], rhs[c])]
    vectors = {eid: tuple(rhs[col[eid]]) for eid in eids}
    return EdgeVectorSystem(vectors, tuple(view.sources()), ray,
                            dict(sink_conditions), "solve", det)


def system_by_flows(net: PlabicNetwork, view: OrientedView, ray: GaugeRay,
                    guard: int = FLOW_GUARD) -> EdgeVectorSystem:
    """Whole system through the flow route; the second opinion."""
    cons = enumerate_conservative_flows(net, view, guard)
    vectors = {eid: edge_vector_by_flows(net, view, ray, eid, guard)
               for eid in net.edges}
    return EdgeVectorSystem(vectors, tuple(view.sources()), ray,
                            canonical_sinks(net, view), "flows",
                            sum(w for _, w in cons))


def verify_system(net: PlabicNetwork, view: OrientedView,
                  system: EdgeVectorSystem) -> list[str]:
    """Exact check of every vertex relation and sink condition."""
    bad: list[str] = []
    ray = system.ray
    for eid in sorted(net.edges):
        head = view.head(eid)
        sign = (-1) ** (ray_intersections(net, view, eid, ray) % 2)
        w = view.weight(eid)
        j = net.vertices[head].boundary_index
        if j is not None:
            want = _scale(sign * w, system.sink_conditions[j])
        else:
            want = _zero(net.n)
            for out in view.out_edges(head):
                turn = winding(view.direction(eid), view.direction(out), ray)
                want = _add(want, _scale(sign * w * (-1) ** (turn % 2),
                                         system.vectors[out]))
        if tuple(system.vectors[eid]) != want:
            bad.append(f"relation violated at edge {eid}")
    return bad


# ---------- boundary matrix ----------


def source_edge(net: PlabicNetwork, view: OrientedView, i: int) -> str:
    for b in net.boundary_vertices():
        if b.boundary_index == i:
            e = net.boundary_edge(b.id)
            if view.tail(e.id) != b.id:
                raise NotABase(f"boundary vertex b_{i} is not a source")
            return e.id
    raise NotABase(f"no boundary vertex with index {i}")


def boundary_matrix(net: PlabicNetwork, view: OrientedView, ray: GaugeRay,
                    system: EdgeVectorSystem | None = None
                    ) -> list[list[Fraction]]:
    """Row-echelon boundary measurement matrix.

    Row r is the vector at the r-th source edge plus the canonical
    basis vector of its own column, which puts the identity on the
    pivot block.
    """
    if system is None:
        system = solve_edge_vectors(net, view, ray)
    return [list(_add(system.vectors[source_edge(net, view, i)],
                      _unit(net.n, i)))
            for i in view.sources()]


# ---------- transformation laws ----------


def transform_gauge_ray(net: PlabicNetwork, view: OrientedView,
                        system: EdgeVectorSystem, new_ray: GaugeRay
                        ) -> EdgeVectorSystem:
    """Per-edge sign flip rule for replacing the gauge ray direction."""
    signs = ray_change_signs(net, view, system.ray, new_ray)
    vectors = {eid: _scale(signs[eid], v)
               for eid, v in system.vectors.items()}
    return EdgeVectorSystem(vectors, system.base, new_ray,
                            dict(system.sink_conditions),
                            "ray-transform", system.det)


def _unit_boundary_weights(net: PlabicNetwork) -> bool:
    return all(net.boundary_edge(b.id).weight == 1
               for b in net.boundary_vertices())


def _sink_edge(net: PlabicNetwork, view: OrientedView, j: int) -> str:
    for b in net.boundary_vertices():
        if b.boundary_index == j:
            e = net.boundary_edge(b.id)
            if view.head(e.id) != b.id:
                raise NotABase(f"boundary vertex b_{j} is not a sink")
            return e.id
    raise NotABase(f"no boundary vertex with index {j}")


def transform_orientation(net: PlabicNetwork, view: OrientedView,
                          system: EdgeVectorSystem,
                          target_base: Sequence[int]
                          ) -> tuple[OrientedView, EdgeVectorSystem]:
    """Edge vectors after reorienting to another base of the matroid.

    Follows the elementary move sequence (source-to-sink paths, then
    cycles) produced by the orientation search, which reroutes the
    stored orientation; a system living on any other orientation cannot
    be stepped and raises NotReachable.  The closed-form laws need unit
    boundary edge weights and source rays clear of the boundary edges
    at every step; when a premise fails the system is recomputed from
    scratch in the target orientation and tagged method='resolve'.
    """
    ray = system.ray
    try:
        orientation = find_perfect_orientation(net, tuple(target_base))
    except NotABase as exc:
        raise NotReachable(str(exc)) from exc
    stored = OrientedView(net)
    if view.flip != stored.flip:
        raise NotReachable(
            "move sequence starts at the stored orientation, "
            "the supplied system lives on a different one")
    new_view = OrientedView(net, orientation.flip)

    vectors = dict(system.vectors)
    cur_view = view
    anchors = boundary_anchors(net)
    for step in orientation.steps:
        if not (_unit_boundary_weights(net)
                and sources_clear_boundary_edges(net, cur_view, ray)):
            fresh = solve_edge_vectors(net, new_view, ray)
            return new_view, EdgeVectorSystem(
                fresh.vectors, fresh.base, ray,
                dict(fresh.sink_conditions), "resolve", fresh.det)
        kind, eids = step[0], list(step[1])
        reorient = (kind, eids)
        marking = region_marking(net, cur_view, ray, reorient, anchors)
        on_object = set(eids)
        if kind == "path":
            i0, j0 = step[2], step[3]
            row = _add(vectors[source_edge(net, cur_view, i0)],
                       _unit(net.n, i0))
            pivot = row[j0 - 1]
            if pivot == 0:
                raise NotReachable(
                    f"vanishing measurement from source {i0} to sink {j0}")
        stepped: dict[str, Vector] = {}
        for eid, vec in vectors.items():
            if kind == "path":
                vec = _add(vec, _scale(-vec[j0 - 1] / pivot, row))
            idx = region_index(net, cur_view, ray, reorient, eid,
                               marking, anchors=anchors)
            vec = _scale((-1) ** (idx % 2), vec)
            if eid in on_object:
                vec = _scale(1 / cur_view.weight(eid), vec)
            stepped[eid] = vec
        flip = dict(cur_view.flip)
        for eid in eids:
            flip[eid] = not flip[eid]
        cur_view = OrientedView(net, flip)
        vectors = stepped
    assert cur_view.flip == new_view.flip
    return new_view, EdgeVectorSystem(
        vectors, tuple(new_view.sources()), ray,
        canonical_sinks(net, new_view), "orientation-transform", system.det)


def apply_weight_gauge(net: PlabicNetwork, view: OrientedView,
                       system: EdgeVectorSystem, vid: str, t
                       ) -> tuple[PlabicNetwork, EdgeVectorSystem]:
    """Rescale the weights around one internal vertex by t > 0.

    Edges leaving the vertex gain the factor t, edges entering lose
    it; boundary measurements are untouched and exactly the outgoing
    edge vectors rescale by t.
    """
    t = Fraction(t)
    if t <= 0:
        raise DegenerateGeometry("weight gauge factor must be positive")
    if not net.is_internal(vid):
        raise DegenerateGeometry("weight gauge applies to internal vertices")
    touched = set(net.incident(vid))
    edges = []
    for e in net.edges.values():
        if e.id in touched:
            exp = 1 if view.tail(e.id) == vid else -1
            if view.flip[e.id]:
                exp = -exp
            edges.append(Edge(e.id, e.tail, e.head, e.weight * t ** exp))
        else:
            edges.append(e)
    new_net = net.copy_with(edges=edges)
    vectors = {eid: _scale(t, vec) if view.tail(eid) == vid else vec
               for eid, vec in system.vectors.items()}
    return new_net, EdgeVectorSystem(vectors, system.base, system.ray,
                                     dict(system.sink_conditions),
                                     "weight-gauge", system.det)


def apply_vertex_gauge(net: PlabicNetwork, view: OrientedView,
                       system: EdgeVectorSystem, vid: str, new_pos
                       ) -> tuple[PlabicNetwork, EdgeVectorSystem]:
    """Move one internal vertex; incident vectors at most flip sign.

    An edge leaving the moved vertex flips by the parity of the change
    in its ray crossings plus the change of its winding against the
    continuations at its head; an edge entering it flips by the change
    of the winding against the feeders at its tail.  All continuations
    must agree on the parity, otherwise the move crosses a wall where
    the vector system is not locally constant and it is refused.
    """
    if not net.is_internal(vid):
        raise DegenerateGeometry("vertex gauge applies to internal vertices")
    pos = geo.vec(new_pos[0], new_pos[1])
    vertices = [Vertex(v.id, v.color, pos, v.boundary_index)
                if v.id == vid else v for v in net.vertices.values()]
    new_net = net.copy_with(vertices=vertices)
    new_view = OrientedView(new_net, view.flip)
    if gauge_ray_violations(new_net, system.ray.direction):
        raise DegenerateGeometry("moved vertex breaks the gauge ray")
    ray = system.ray
    vectors = dict(system.vectors)
    for eid in sorted(net.incident(vid)):
        parities = set()
        if view.tail(eid) == vid:
            delta = (ray_intersections(new_net, new_view, eid, ray)
                     - ray_intersections(net, view, eid, ray))
            head = view.head(eid)
            if net.is_internal(head):
                for f in view.out_edges(head):
                    parities.add((delta
                                  + winding(new_view.direction(eid),
                                            new_view.direction(f), ray)
                                  - winding(view.direction(eid),
                                            view.direction(f), ray)) % 2)
            else:
                parities.add(delta % 2)
        else:
            tail = view.tail(eid)
            if net.is_internal(tail):
                for f in view.in_edges(tail):
                    parities.add((winding(new_view.direction(f),
                                          new_view.direction(eid), ray)
                                  - winding(view.direction(f),
                                            view.direction(eid), ray)) % 2)
            else:
                parities.add(0)
        if len(parities) > 1:
            raise DegenerateGeometry(
                "vertex move changes windings inconsistently")
        if parities.pop():
            vectors[eid] = _scale(-1, vectors[eid])
    return new_net, EdgeVectorSystem(vectors, system.base, system.ray,
                                     dict(system.sink_conditions),
                                     "vertex-gauge", system.det)


# ---------- null edges ----------


def classify_null_edges(net: PlabicNetwork, view: OrientedView,
                        system: EdgeVectorSystem
                        ) -> list[tuple[frozenset[str], str]]:
    """Maximal connected null-carrying subgraphs, tagged type1/type2.

    A subgraph is type1 when every adjacent edge with a nonzero vector
    carries the same vector up to scale, so the normalized wave
    function extends over it by continuity; otherwise type2.
    """
    groups: list[set[str]] = []
    for eid in system.null_edges():
        attached = [g for g in groups
                    if any(_edges_touch(net, eid, other) for other in g)]
        merged = {eid}
        for g in attached:
            merged |= g
            groups.remove(g)
        groups.append(merged)
    out = []
    for g in sorted(groups, key=sorted):
        ends = {v for eid in g
                for v in (net.edges[eid].tail, net.edges[eid].head)}
        adjacent = [e for v in sorted(ends) for e in net.incident(v)
                    if e not in g
                    and any(x != 0 for x in system.vectors[e])]
        kind = "type1"
        for a in adjacent:
            for b in adjacent:
                if not _proportional(system.vectors[a], system.vectors[b]):
                    kind = "type2"
        out.append((frozenset(g), kind))
    return out


def _edges_touch(net: PlabicNetwork, a: str, b: str) -> bool:
    ea, eb = net.edges[a], net.edges[b]
    return bool({ea.tail, ea.head} & {eb.tail, eb.head})


def _proportional(a: Vector, b: Vector) -> bool:
    return all(a[i] * b[j] == a[j] * b[i]
               for i in range(len(a)) for j in range(len(a)))
