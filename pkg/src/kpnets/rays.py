"""Gauge rays and the sign calculus built on them.

A gauge ray is a rational direction pointing into the disk (all networks
are drawn with the boundary vertices on the x-axis and the interior in the
upper half plane, so "into the disk" means positive y-component).  One ray
is drawn from every boundary source; winding numbers of consecutive edge
pairs and ray-edge crossing counts turn path weights into signed sums that
are invariant under the allowed choices.

This module provides: ray selection with exact validity checks, the
orientation sign s(a, b), the winding index of an edge pair with respect
to a ray, crossing counts int(e), per-path statistics, the five-part index
of a pair of edges at an internal vertex, the sign sweep for replacing one
gauge ray direction by another, and the +/- region marking used when an
orientation is reversed along a path or a cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import DegenerateGeometry, MissingWaveValue, NonPath
from .geometry import (
    Subdivision,
    Vec,
    cross,
    dot,
    orientation_sign,
    point_in_polygon,
    point_on_any,
    sign,
    vadd,
    vscale,
    vsub,
)
from .network import BLACK, BOUNDARY, WHITE, OrientedView, PlabicNetwork


@dataclass(frozen=True)
class GaugeRay:
    """Rational ray direction, shared by every per-source ray."""

    direction: Vec

    def __post_init__(self):
        if self.direction[1] <= 0:
            raise DegenerateGeometry(
                "gauge ray must point into the disk (positive y)")


def boundary_anchors(net: PlabicNetwork) -> dict[int, Vec]:
    """Default ray anchors: the boundary vertices themselves."""
    return {v.boundary_index: v.pos for v in net.boundary_vertices()}


def gauge_ray_violations(net: PlabicNetwork, direction: Vec,
                         anchors: Mapping[int, Vec] | None = None
                         ) -> list[str]:
    """All exact validity failures of a candidate ray direction.

    A valid direction is parallel to no edge and its ray from any anchor
    passes through no other vertex.
    """
    if anchors is None:
        anchors = boundary_anchors(net)
    bad: list[str] = []
    for eid in sorted(net.edges):
        e = net.edges[eid]
        d = vsub(net.vertices[e.head].pos, net.vertices[e.tail].pos)
        if cross(d, direction) == 0:
            bad.append(f"edge {eid} is parallel to the ray")
    for bidx, a in sorted(anchors.items()):
        for vid in sorted(net.vertices):
            v = net.vertices[vid]
            if v.pos == a:
                continue
            r = vsub(v.pos, a)
            if cross(direction, r) == 0 and dot(direction, r) > 0:
                bad.append(f"ray from anchor {bidx} contains vertex {vid}")
    return bad


def sources_clear_boundary_edges(net: PlabicNetwork, view: OrientedView,
                                 ray: GaugeRay,
                                 sources: Sequence[int] | None = None,
                                 anchors: Mapping[int, Vec] | None = None
                                 ) -> bool:
    """Do all source rays miss the open boundary edges?

    The clean transformation laws for orientation changes assume unit
    boundary edge weights and source rays clear of the boundary edges;
    callers check this premise before applying those laws.
    """
    pts = source_anchor_points(net, view, sources, anchors)
    for eid in sorted(net.edges):
        e = net.edges[eid]
        if net.is_internal(e.tail) and net.is_internal(e.head):
            continue
        p = net.vertices[e.tail].pos
        q = net.vertices[e.head].pos
        for a in pts:
            kind, _t, u = _ray_hits_segment(a, ray.direction, p, q)
            if kind == 'cross' and 0 < u < 1:
                return False
    return True


def select_gauge_ray(net: PlabicNetwork,
                     anchors: Mapping[int, Vec] | None = None,
                     bound: int = 12) -> GaugeRay:
    """Deterministic scan for a valid gauge ray direction.

    Primitive candidate directions (p, q), q >= 1, are tried in order of
    max(|p|, q), then |p|, then with positive p before negative.  The
    first direction passing every validity check wins; exhaustion raises
    with the recorded first violation of each candidate.
    """
    candidates: list[Vec] = []
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(abs(p), q) != 1:
                continue
            candidates.append((Fraction(p), Fraction(q)))
    candidates.sort(key=lambda d: (max(abs(d[0]), d[1]), abs(d[0]),
                                   0 if d[0] >= 0 else 1))
    log: list[str] = []
    for d in candidates:
        bad = gauge_ray_violations(net, d, anchors)
        if not bad:
            return GaugeRay(d)
        log.append(f"({d[0]},{d[1]}): {bad[0]}")
    raise DegenerateGeometry(
        "no valid gauge ray direction with numerator/denominator up to "
        f"{bound}; " + "; ".join(log[:8]))


def select_transform_ray(net: PlabicNetwork, view: OrientedView,
                         anchors: Mapping[int, Vec] | None = None,
                         bound: int = 25) -> GaugeRay:
    """Gauge ray whose source rays also miss the open boundary edges.

    Same candidate scan as select_gauge_ray with the extra requirement
    needed by the closed-form orientation transformation laws.  Steeper
    directions clear the boundary stubs that shallow rays may cross, so
    the scan usually succeeds a few candidates after the plain one.
    """
    candidates: list[Vec] = []
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(abs(p), q) != 1:
                continue
            candidates.append((Fraction(p), Fraction(q)))
    candidates.sort(key=lambda d: (max(abs(d[0]), d[1]), abs(d[0]),
                                   0 if d[0] >= 0 else 1))
    for d in candidates:
        if gauge_ray_violations(net, d, anchors):
            continue
        ray = GaugeRay(d)
        if sources_clear_boundary_edges(net, view, ray, anchors=anchors):
            return ray
    raise DegenerateGeometry(
        "no gauge ray clearing the boundary edges with "
        f"numerator/denominator up to {bound}")


def winding(a: Vec, b: Vec, ray: GaugeRay,
            antiparallel: int | None = None) -> int:
    """Winding index of the ordered direction pair (a, b) w.r.t. the ray.

    +1 when s(a,b), s(a,l), s(l,b) are all +1, -1 when all are -1, else 0.
    Edges parallel to the ray have no index and raise.
    """
    l = ray.direction
    s_al = sign(cross(a, l))
    s_lb = sign(cross(l, b))
    if s_al == 0 or s_lb == 0:
        raise DegenerateGeometry("edge direction parallel to the gauge ray")
    s_ab = orientation_sign(a, b, antiparallel)
    if s_ab == s_al == s_lb == 1:
        return 1
    if s_ab == s_al == s_lb == -1:
        return -1
    return 0


def epsilon2(d: Vec, ray: GaugeRay) -> int:
    """(1 - s(d, l)) / 2: 0 when d is right of the ray direction, 1 left."""
    s = sign(cross(d, ray.direction))
    if s == 0:
        raise DegenerateGeometry("edge direction parallel to the gauge ray")
    return (1 - s) // 2


def _ray_hits_segment(anchor: Vec, l: Vec, p: Vec, q: Vec):
    """Classify the meet of the ray anchor + t*l (t >= 0) with segment pq.

    Returns (kind, t, u) with kind one of 'none', 'cross' (t > 0, u in
    [0, 1] closed), 'origin' (t == 0, u in [0, 1]), 'overlap' (collinear).
    """
    d = vsub(q, p)
    denom = cross(l, d)
    r = vsub(p, anchor)
    if denom == 0:
        if cross(r, l) != 0:
            return ('none', None, None)
        tp = _param_along(anchor, l, p)
        tq = _param_along(anchor, l, q)
        if max(tp, tq) < 0:
            return ('none', None, None)
        return ('overlap', None, None)
    t = Fraction(cross(r, d), denom)
    u = Fraction(cross(r, l), denom)
    if t < 0 or u < 0 or u > 1:
        return ('none', t, u)
    if t == 0:
        return ('origin', t, u)
    return ('cross', t, u)


def _param_along(anchor: Vec, l: Vec, p: Vec) -> Fraction:
    # parameter of p on the line anchor + t*l (p assumed on the line)
    if l[0] != 0:
        return Fraction(p[0] - anchor[0], l[0])
    return Fraction(p[1] - anchor[1], l[1])


def int_segment(p: Vec, q: Vec, ray: GaugeRay,
                source_anchors: Sequence[Vec]) -> int:
    """Number of source rays crossing the open segment pq.

    A ray through an endpoint of the segment, or a source anchor interior
    to it, is a degenerate configuration and raises; a ray whose anchor is
    an endpoint of the segment does not count.
    """
    count = 0
    for a in source_anchors:
        kind, _t, u = _ray_hits_segment(a, ray.direction, p, q)
        if kind == 'none':
            continue
        if kind == 'overlap':
            raise DegenerateGeometry("gauge ray collinear with an edge")
        if kind == 'origin':
            if 0 < u < 1:
                raise DegenerateGeometry(
                    "ray anchor lies in the interior of an edge")
            continue
        if u == 0 or u == 1:
            raise DegenerateGeometry(
                "gauge ray passes through an edge endpoint")
        count += 1
    return count


def source_anchor_points(net: PlabicNetwork, view: OrientedView,
                         sources: Sequence[int] | None = None,
                         anchors: Mapping[int, Vec] | None = None
                         ) -> list[Vec]:
    """Anchor points of the rays drawn for the orientation's sources."""
    if sources is None:
        sources = view.sources()
    if anchors is None:
        anchors = boundary_anchors(net)
    return [anchors[i] for i in sources]


def ray_intersections(net: PlabicNetwork, view: OrientedView, eid: str,
                      ray: GaugeRay,
                      sources: Sequence[int] | None = None,
                      anchors: Mapping[int, Vec] | None = None) -> int:
    """int(e): source-ray crossings of edge eid in the given orientation."""
    pts = source_anchor_points(net, view, sources, anchors)
    p = net.vertices[view.tail(eid)].pos
    q = net.vertices[view.head(eid)].pos
    return int_segment(p, q, ray, pts)


def path_stats(net: PlabicNetwork, view: OrientedView,
               eids: Sequence[str], ray: GaugeRay,
               sources: Sequence[int] | None = None,
               anchors: Mapping[int, Vec] | None = None
               ) -> tuple[Fraction, int, int]:
    """(weight, wind, int) of a directed walk given as consecutive edges.

    The weight multiplies repeated edges once per traversal; wind sums the
    winding indices of consecutive pairs; int sums source-ray crossings.
    """
    if not eids:
        raise NonPath("empty edge list")
    for k in range(len(eids) - 1):
        if view.head(eids[k]) != view.tail(eids[k + 1]):
            raise NonPath(
                f"edges {eids[k]} and {eids[k + 1]} are not consecutive")
    weight = Fraction(1)
    total_wind = 0
    total_int = 0
    pts = source_anchor_points(net, view, sources, anchors)
    for k, eid in enumerate(eids):
        weight *= view.weight(eid)
        p = net.vertices[view.tail(eid)].pos
        q = net.vertices[view.head(eid)].pos
        total_int += int_segment(p, q, ray, pts)
        if k + 1 < len(eids):
            total_wind += winding(view.direction(eid),
                                  view.direction(eids[k + 1]), ray)
    return (weight, total_wind, total_int)


@dataclass(frozen=True)
class PairIndexBundle:
    """Five-part index of an ordered pair of edges at an internal vertex."""

    eps_cd: int
    eps_cs: int
    eps_int: int
    eps_wind: int
    eps_tot: int


def pair_indices(net: PlabicNetwork, view: OrientedView, ray: GaugeRay,
                 vid: str, f: str, g: str, waves: Mapping[str, object],
                 sources: Sequence[int] | None = None,
                 anchors: Mapping[int, Vec] | None = None
                 ) -> PairIndexBundle:
    """Index bundle of the ordered edge pair (f, g) at vertex vid.

    eps_cd marks a change of direction (both out at a white vertex, both
    in at a black one); eps_cs compares the signs of the wave values on f
    and g; eps_int and eps_wind pick up crossing counts and windings
    according to which of f, g enters and leaves the vertex.
    """
    vertex = net.vertices[vid]
    if vertex.color == BOUNDARY:
        raise ValueError("pair indices are defined at internal vertices")
    incident = net.incident(vid)
    if f not in incident or g not in incident or f == g:
        raise ValueError("need two distinct edges at the vertex")
    for eid in (f, g):
        if eid not in waves:
            raise MissingWaveValue(f"no wave value for edge {eid}")
    f_in = view.head(f) == vid
    g_in = view.head(g) == vid
    if f_in and g_in:
        eps_cd = 1 if vertex.color == BLACK else 0
    elif not f_in and not g_in:
        eps_cd = 1 if vertex.color == WHITE else 0
    else:
        eps_cd = 0
    pf, pg = waves[f], waves[g]
    prod = pf * pg
    if prod < 0 or (prod == 0 and pf + pg < 0):
        eps_cs = 1
    else:
        eps_cs = 0
    pts = source_anchor_points(net, view, sources, anchors)

    def int_of(eid):
        p = net.vertices[view.tail(eid)].pos
        q = net.vertices[view.head(eid)].pos
        return int_segment(p, q, ray, pts)

    df, dg = view.direction(f), view.direction(g)
    if f_in and not g_in:
        eps_int = int_of(f)
        eps_wind = winding(df, dg, ray)
    elif g_in and not f_in:
        eps_int = int_of(g)
        eps_wind = -winding(dg, df, ray)
    else:
        third = [eid for eid in incident if eid not in (f, g)]
        if len(third) != 1:
            raise ValueError(
                "change-of-direction pair needs a trivalent vertex")
        dh = view.direction(third[0])
        eps_wind = winding(dh, dg, ray) - winding(dh, df, ray)
        eps_int = int_of(f) + int_of(g) if f_in else 0
    eps_tot = (eps_cd + eps_cs + eps_int + eps_wind) % 2
    return PairIndexBundle(eps_cd, eps_cs, eps_int, eps_wind, eps_tot)


def ray_change_signs(net: PlabicNetwork, view: OrientedView,
                     old: GaugeRay, new: GaugeRay,
                     sources: Sequence[int] | None = None,
                     anchors: Mapping[int, Vec] | None = None
                     ) -> dict[str, int]:
    """Per-edge sign +/-1 relating edge vectors under a ray replacement.

    The replacement rotates the ray direction inside the upper half plane.
    An edge flips once for each source ray that sweeps over its starting
    vertex and once more if the rotation sweeps over the edge's own
    oriented direction.  The final leg of every walk points down into
    the axis and the sweep stays among upward directions, so no sink
    term appears.  Edges at the boundary sources keep their vectors and
    are reported with sign +1.
    """
    l, lp = old.direction, new.direction
    turn = cross(l, lp)
    if anchors is None:
        anchors = boundary_anchors(net)
    if sources is None:
        sources = view.sources()
    src_anchor = [anchors[i] for i in sources]

    def in_arc(d: Vec) -> bool:
        if turn > 0:
            return cross(l, d) > 0 and cross(d, lp) > 0
        return cross(lp, d) > 0 and cross(d, l) > 0

    signs: dict[str, int] = {}
    for eid in sorted(net.edges):
        tail = view.tail(eid)
        if net.vertices[tail].color == BOUNDARY:
            signs[eid] = 1
            continue
        if turn == 0:
            signs[eid] = 1
            continue
        d = view.direction(eid)
        if cross(d, l) == 0 or cross(d, lp) == 0:
            raise DegenerateGeometry(
                f"edge {eid} parallel to a gauge ray direction")
        flips = 1 if in_arc(d) else 0
        p_v = net.vertices[tail].pos
        for a in src_anchor:
            r = vsub(p_v, a)
            if r == (0, 0):
                continue
            if ((cross(l, r) == 0 and dot(l, r) > 0)
                    or (cross(lp, r) == 0 and dot(lp, r) > 0)):
                raise DegenerateGeometry(
                    "a vertex lies on a gauge ray of the sweep")
            if in_arc(r):
                flips += 1
        signs[eid] = -1 if flips % 2 else 1
    return signs


def _shrink(v: Vec) -> Vec:
    m = max(abs(v[0]), abs(v[1]))
    return vscale(Fraction(1, 1) / (1 + m), v)


def _left_normal(d: Vec) -> Vec:
    return (-d[1], d[0])


class RegionMarking:
    """+/- marking of the disk regions cut out by a reorientation object.

    For a source-to-sink path the cuts are the two rays at its endpoints,
    the path itself, and the disk boundary (realized as a rational frame);
    a region is + when the orientations of the pieces around it are
    coherent.  For a simple cycle the inside is - and the outside +.
    """

    def __init__(self, kind: str, edge_ids: tuple[str, ...],
                 cut_segs: list[tuple[Vec, Vec]],
                 sub: Subdivision | None = None,
                 marks: list | None = None,
                 polygon: list[Vec] | None = None):
        self.kind = kind
        self.edge_ids = edge_ids
        self.cut_segs = cut_segs
        self.sub = sub
        self.marks = marks
        self.polygon = polygon

    def point_on_cut(self, pt: Vec) -> bool:
        return point_on_any(pt, self.cut_segs)

    def plus_at(self, pt: Vec) -> bool:
        """Mark of the region containing pt (strictly off all cuts)."""
        if self.kind == 'cycle':
            return not point_in_polygon(pt, self.polygon)
        fi = self.sub.locate(pt)
        mark = self.marks[fi]
        if mark is None:
            raise DegenerateGeometry("query point outside the disk frame")
        return mark

    def germ_plus(self, p: Vec, d: Vec) -> bool:
        """Mark of the region entered from p in direction d.

        p may lie on a cut; d must not run along one.  The probe stops
        half way to the first cut encountered within unit parameter.
        """
        t_star = Fraction(1)
        for (a, b) in self.cut_segs:
            hit = _segment_probe(p, d, a, b)
            if hit == 'overlap':
                raise DegenerateGeometry("probe direction runs along a cut")
            if hit is not None and hit < t_star:
                t_star = hit
        return self.plus_at(vadd(p, vscale(t_star / 2, d)))


def _segment_probe(p: Vec, d: Vec, a: Vec, b: Vec):
    """First parameter t in (0, 1] where p + t*d meets closed segment ab.

    Returns None when there is no such t, 'overlap' when the probe runs
    collinearly along the segment somewhere inside the unit window; a
    collinear segment lying wholly behind p or past t = 1 is invisible.
    """
    e = vsub(b, a)
    denom = cross(d, e)
    r = vsub(a, p)
    if denom == 0:
        if cross(r, d) != 0:
            return None
        ta = _param_along(p, d, a)
        tb = _param_along(p, d, b)
        if max(ta, tb) <= 0 or min(ta, tb) >= 1:
            return None
        return 'overlap'
    t = Fraction(cross(r, e), denom)
    u = Fraction(cross(r, d), denom)
    if 0 < t <= 1 and 0 <= u <= 1:
        return t
    return None


def region_marking(net: PlabicNetwork, view: OrientedView, ray: GaugeRay,
                   reorient: tuple[str, Sequence[str]],
                   anchors: Mapping[int, Vec] | None = None
                   ) -> RegionMarking:
    """Build the region marking for a path or cycle reorientation.

    reorient is ('path', edge ids source to sink) or ('cycle', edge ids).
    Path cuts anchor the endpoint rays at boundary vertices on the axis.
    """
    kind, eids = reorient[0], list(reorient[1])
    if not eids:
        raise NonPath("empty reorientation object")
    for k in range(len(eids) - 1):
        if view.head(eids[k]) != view.tail(eids[k + 1]):
            raise NonPath(
                f"edges {eids[k]} and {eids[k + 1]} are not consecutive")
    pos = {vid: v.pos for vid, v in net.vertices.items()}
    if kind == 'cycle':
        if view.head(eids[-1]) != view.tail(eids[0]):
            raise NonPath("cycle edge list does not close")
        tails = [view.tail(e) for e in eids]
        if len(set(tails)) != len(tails):
            raise NonPath("cycle repeats a vertex")
        polygon = [pos[v] for v in tails]
        segs = [(polygon[i], polygon[(i + 1) % len(polygon)])
                for i in range(len(polygon))]
        return RegionMarking('cycle', tuple(eids), segs, polygon=polygon)
    if kind != 'path':
        raise ValueError("reorientation object must be 'path' or 'cycle'")
    tail0 = net.vertices[view.tail(eids[0])]
    head1 = net.vertices[view.head(eids[-1])]
    if tail0.color != BOUNDARY or head1.color != BOUNDARY:
        raise NonPath("path must run from boundary source to boundary sink")
    visited = [view.tail(e) for e in eids] + [head1.id]
    if len(set(visited)) != len(visited):
        raise NonPath("path repeats a vertex")
    if anchors is None:
        anchors = boundary_anchors(net)
    a_i0 = anchors[tail0.boundary_index]
    a_j0 = anchors[head1.boundary_index]
    if a_i0[1] != 0 or a_j0[1] != 0:
        raise DegenerateGeometry(
            "region marking needs rays anchored on the axis")
    l = ray.direction
    top = max(v.pos[1] for v in net.vertices.values()) + 2
    exits = {}
    for name, a in (('i0', a_i0), ('j0', a_j0)):
        t = Fraction(top - a[1], l[1])
        exits[name] = (a[0] + t * l[0], Fraction(top))
    xs = [v.pos[0] for v in net.vertices.values()]
    xs += [exits['i0'][0], exits['j0'][0]]
    left = min(xs) - 2
    right = max(xs) + 2
    bl, br = (left, Fraction(0)), (right, Fraction(0))
    tl, tr = (left, top), (right, top)
    segments: list[tuple[Vec, Vec, object]] = []
    segments.append((a_i0, exits['i0'], ('ray', 'i0')))
    segments.append((exits['j0'], a_j0, ('ray', 'j0')))
    for k, eid in enumerate(eids):
        segments.append((pos[view.tail(eid)], pos[view.head(eid)],
                         ('path', k)))
    segments.append((a_j0, a_i0, ('arc', 0)))
    if a_j0[0] < a_i0[0]:
        around = [a_j0, bl, tl, tr, br, a_i0]
    else:
        around = [a_j0, br, tr, tl, bl, a_i0]
    for i in range(len(around) - 1):
        segments.append((around[i], around[i + 1], ('arc', 1)))
    sub = Subdivision(segments)
    marks: list = []
    for fi, walk in enumerate(sub.faces):
        if fi == sub.outer_face:
            marks.append(None)
            continue
        senses = {sub.half_edges[h]['sense'] for h in walk}
        marks.append(len(senses) == 1)
    cut_segs = [(a, b) for (a, b, _t) in segments]
    return RegionMarking('path', tuple(eids), cut_segs, sub=sub, marks=marks)


def region_index(net: PlabicNetwork, view: OrientedView, ray: GaugeRay,
                 reorient: tuple[str, Sequence[str]], eid: str,
                 marking: RegionMarking | None = None,
                 sources: Sequence[int] | None = None,
                 anchors: Mapping[int, Vec] | None = None) -> int:
    """Index eps(e) of an edge for a path or cycle reorientation.

    Off the reorientation object the index is 0 in a + region and 1 in a
    - region, judged at the edge's starting vertex (shifted along the edge
    when the vertex sits on a cut).  On it the index adds the mark to the
    left near the edge's head, the side of the ray, and the source-ray
    crossing count.
    """
    if marking is None:
        marking = region_marking(net, view, ray, reorient, anchors)
    p = net.vertices[view.tail(eid)].pos
    q = net.vertices[view.head(eid)].pos
    d = vsub(q, p)
    if eid not in marking.edge_ids:
        if marking.point_on_cut(p):
            plus = marking.germ_plus(p, d)
        else:
            plus = marking.plus_at(p)
        return 0 if plus else 1
    # the last piece of e between cut crossings flanks the head region
    u_last = Fraction(0)
    for (a, b) in marking.cut_segs:
        if (a, b) == (p, q) or (a, b) == (q, p):
            continue
        hit = _segment_probe(p, d, a, b)
        if hit == 'overlap':
            raise DegenerateGeometry("cut overlaps a path edge")
        if hit is not None and hit < 1 and hit > u_last:
            u_last = hit
    mid = vadd(p, vscale((u_last + 1) / 2, d))
    eps1 = 0 if marking.germ_plus(mid, _shrink(_left_normal(d))) else 1
    eps2 = epsilon2(d, ray)
    pts = source_anchor_points(net, view, sources, anchors)
    eps3 = int_segment(p, q, ray, pts)
    return eps1 + eps2 + eps3
