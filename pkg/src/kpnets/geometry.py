"""Exact rational plane geometry.

All coordinates are fractions.Fraction; every predicate is exact.  Points
and direction vectors are plain (Fraction, Fraction) tuples.  The module
also provides a small planar-subdivision builder used for region marking
and for point location inside straight-segment arrangements.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateGeometry, EmbeddingDegenerate

Vec = tuple[Fraction, Fraction]


def rat(value) -> Fraction:
    """Parse a rational from 'p/q' / 'p' strings, ints, or Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(x, y) -> Vec:
    return (rat(x), rat(y))


def vadd(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def vneg(a: Vec) -> Vec:
    return (-a[0], -a[1])


def vscale(t, a: Vec) -> Vec:
    t = rat(t)
    return (t * a[0], t * a[1])


def cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def sign(q) -> int:
    return (q > 0) - (q < 0)


def orientation_sign(a: Vec, b: Vec, antiparallel: int | None = None) -> int:
    """Rotational sign of the ordered pair of directions (a, b).

    +1 / -1 for the two transversal configurations, 0 when b points the
    same way as a.  Antiparallel pairs carry no intrinsic sign: the tie is
    broken by `antiparallel` (+1 or -1); the default +1 selects the same
    resolution as an infinitesimal positive rotation of b.
    """
    if (a[0] == 0 and a[1] == 0) or (b[0] == 0 and b[1] == 0):
        raise DegenerateGeometry("zero direction vector has no sign")
    c = cross(a, b)
    if c != 0:
        return sign(c)
    if dot(a, b) > 0:
        return 0
    if antiparallel is None:
        return 1
    if antiparallel not in (-1, 1):
        raise ValueError("antiparallel tie-break must be -1 or +1")
    return antiparallel


def _angle_half(v: Vec) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi), measured from +x axis
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def cmp_ccw(a: Vec, b: Vec) -> int:
    """Compare direction angles counterclockwise from the +x axis."""
    ha, hb = _angle_half(a), _angle_half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def sort_cw(items: Iterable, direction_of) -> list:
    """Sort items clockwise by direction angle (ties are an error)."""
    lst = list(items)
    lst.sort(key=functools.cmp_to_key(
        lambda u, v: -cmp_ccw(direction_of(u), direction_of(v))))
    for i in range(1, len(lst)):
        if cmp_ccw(direction_of(lst[i - 1]), direction_of(lst[i])) == 0:
            raise EmbeddingDegenerate(
                "two edges leave a vertex in the same direction")
    return lst


def on_segment(p: Vec, a: Vec, b: Vec, closed: bool = True) -> bool:
    """Is p on segment ab (endpoints included when closed)."""
    if cross(vsub(b, a), vsub(p, a)) != 0:
        return False
    t_num = dot(vsub(p, a), vsub(b, a))
    t_den = dot(vsub(b, a), vsub(b, a))
    if t_den == 0:
        return closed and p == a
    if closed:
        return 0 <= t_num <= t_den
    return 0 < t_num < t_den


def seg_intersection(p: Vec, q: Vec, r: Vec, s: Vec):
    """Intersection of closed segments pq and rs.

    Returns None (disjoint), ('point', point) for a single common point, or
    ('overlap', None) for collinear overlap in more than one point.
    """
    d1, d2 = vsub(q, p), vsub(s, r)
    denom = cross(d1, d2)
    if denom != 0:
        t_num = cross(vsub(r, p), d2)
        u_num = cross(vsub(r, p), d1)
        # t = t_num/denom along pq, u = u_num/denom along rs
        t = Fraction(t_num, denom)
        u = Fraction(u_num, denom)
        if 0 <= t <= 1 and 0 <= u <= 1:
            return ('point', vadd(p, vscale(t, d1)))
        return None
    # parallel
    if cross(vsub(r, p), d1) != 0:
        return None
    # collinear: project on the dominant axis
    pts = sorted([p, q])
    rts = sorted([r, s])
    lo = max(pts[0], rts[0])
    hi = min(pts[1], rts[1])
    if lo > hi:
        return None
    if lo == hi:
        return ('point', lo)
    return ('overlap', None)


def segments_conflict(p: Vec, q: Vec, r: Vec, s: Vec) -> bool:
    """True when closed segments pq, rs share a point that is not a shared
    endpoint (the straight-segment embedding test for two edges)."""
    hit = seg_intersection(p, q, r, s)
    if hit is None:
        return False
    kind, pt = hit
    if kind == 'overlap':
        return True
    return pt not in (p, q) or pt not in (r, s)


def point_in_polygon(pt: Vec, poly: Sequence[Vec]) -> bool:
    """Exact even-odd test; pt must not lie on the polygon boundary."""
    px, py = pt
    inside = False
    m = len(poly)
    for i in range(m):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % m]
        if (y1 > py) != (y2 > py):
            xin = Fraction(x1) + (py - y1) * (x2 - x1) / (y2 - y1)
            if xin == px:
                raise DegenerateGeometry("query point on polygon boundary")
            if xin > px:
                inside = not inside
    return inside


def point_on_any(pt: Vec, segs: Iterable[tuple[Vec, Vec]]) -> bool:
    return any(on_segment(pt, a, b) for a, b in segs)


class Subdivision:
    """Planar subdivision of tagged oriented segments.

    Input segments may touch or cross; they are split at every incidence
    and assembled into a rotation system.  The input graph must come out
    connected, which the region-marking callers guarantee by including a
    clipping frame that every cut touches.  Faces are returned as closed
    half-edge walks; each half-edge remembers the tag and direction sense
    of its parent segment.
    """

    def __init__(self, segments: Sequence[tuple[Vec, Vec, object]]):
        self.segments = list(segments)
        self._build()

    def _build(self):
        cuts: list[list[Vec]] = []
        for (a, b, _tag) in self.segments:
            if a == b:
                raise DegenerateGeometry("zero-length segment")
            cuts.append([a, b])
        # collect split points on every segment
        for i, (a, b, _t) in enumerate(self.segments):
            for j, (c, d, _u) in enumerate(self.segments):
                if i == j:
                    continue
                hit = seg_intersection(a, b, c, d)
                if hit is None:
                    continue
                kind, pt = hit
                if kind == 'overlap':
                    raise DegenerateGeometry("overlapping cut segments")
                cuts[i].append(pt)
        # emit subsegments
        self.half_edges: list[dict] = []  # two per subsegment
        edges_seen: dict[tuple[Vec, Vec], int] = {}
        for i, (a, b, tag) in enumerate(self.segments):
            d1 = vsub(b, a)

            def along(p):  # rational parameter of p along ab
                if d1[0] != 0:
                    return Fraction(p[0] - a[0], d1[0])
                return Fraction(p[1] - a[1], d1[1])

            pts = sorted(set(cuts[i]), key=along)
            for u, v in zip(pts, pts[1:]):
                key = (u, v) if u < v else (v, u)
                if key in edges_seen:
                    raise DegenerateGeometry("duplicate cut subsegment")
                edges_seen[key] = len(self.half_edges)
                # half-edge pair: forward (parent sense) then backward
                fwd = {'src': u, 'dst': v, 'tag': tag, 'sense': +1}
                bwd = {'src': v, 'dst': u, 'tag': tag, 'sense': -1}
                fwd['twin'] = len(self.half_edges) + 1
                bwd['twin'] = len(self.half_edges)
                self.half_edges.append(fwd)
                self.half_edges.append(bwd)
        # rotation system: outgoing half-edges per vertex, counterclockwise
        out: dict[Vec, list[int]] = {}
        for idx, h in enumerate(self.half_edges):
            out.setdefault(h['src'], []).append(idx)
        self._next_cw: dict[int, int] = {}
        for v, idxs in out.items():
            idxs.sort(key=functools.cmp_to_key(
                lambda i, j: cmp_ccw(
                    vsub(self.half_edges[i]['dst'], v),
                    vsub(self.half_edges[j]['dst'], v))))
            for a_i in range(len(idxs)):
                if a_i and cmp_ccw(
                        vsub(self.half_edges[idxs[a_i - 1]]['dst'], v),
                        vsub(self.half_edges[idxs[a_i]]['dst'], v)) == 0:
                    raise DegenerateGeometry("coincident cut directions")
            for a_i, idx in enumerate(idxs):
                nxt = idxs[(a_i + 1) % len(idxs)]
                self._next_cw[idx] = nxt
        # face walks: next half-edge after h is the rotation-successor of
        # its twin, which traces each face once
        self.faces: list[list[int]] = []
        face_of = [-1] * len(self.half_edges)
        for start in range(len(self.half_edges)):
            if face_of[start] != -1:
                continue
            walk = []
            h = start
            while face_of[h] == -1:
                face_of[h] = len(self.faces)
                walk.append(h)
                h = self._next_cw[self.half_edges[h]['twin']]
            if h != start:
                raise DegenerateGeometry("face walk did not close")
            self.faces.append(walk)
        self.face_of_halfedge = face_of
        # the unbounded face is the unique walk whose signed area has the
        # minority sign; all bounded cells close with the same orientation
        areas = [self._signed_area2(fi) for fi in range(len(self.faces))]
        pos = sum(1 for a in areas if a > 0)
        neg = sum(1 for a in areas if a < 0)
        if min(pos, neg) != 1:
            raise DegenerateGeometry("subdivision is not connected")
        minority = 1 if pos < neg else -1
        self.outer_face = next(
            fi for fi, a in enumerate(areas) if sign(a) == minority)

    def _signed_area2(self, face_index: int) -> Fraction:
        poly = self.face_polygon(face_index)
        s = Fraction(0)
        for i in range(len(poly)):
            s += cross(poly[i], poly[(i + 1) % len(poly)])
        return s

    def face_polygon(self, face_index: int) -> list[Vec]:
        return [self.half_edges[h]['src'] for h in self.faces[face_index]]

    def locate(self, pt: Vec) -> int:
        """Index of the bounded face containing pt (exact, pt off all cuts)."""
        for fi in range(len(self.faces)):
            if fi == self.outer_face:
                continue
            if point_in_polygon(pt, self.face_polygon(fi)):
                return fi
        raise DegenerateGeometry("point outside the subdivision frame")
