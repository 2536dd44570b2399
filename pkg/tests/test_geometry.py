"""Exact rational geometry primitives."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kpnets import geometry as geo
from kpnets.errors import DegenerateGeometry


def V(x, y):
    return geo.vec(x, y)


coord = st.fractions(min_value=-20, max_value=20, max_denominator=8)
vecs = st.tuples(coord, coord).filter(lambda v: v != (0, 0)).map(lambda v: V(*v))


class TestOrientationSign:
    def test_counterclockwise_pair(self):
        assert geo.orientation_sign(V(1, 0), V(0, 1)) == 1

    def test_clockwise_pair(self):
        assert geo.orientation_sign(V(0, 1), V(1, 0)) == -1

    def test_parallel_is_zero(self):
        assert geo.orientation_sign(V(2, 1), V(4, 2)) == 0

    def test_antiparallel_defaults_positive(self):
        assert geo.orientation_sign(V(1, 1), V(-2, -2)) == 1

    def test_antiparallel_override(self):
        assert geo.orientation_sign(V(1, 1), V(-1, -1), antiparallel=-1) == -1
        assert geo.orientation_sign(V(1, 1), V(-1, -1), antiparallel=1) == 1

    def test_zero_vector_rejected(self):
        with pytest.raises(DegenerateGeometry):
            geo.orientation_sign(V(0, 0), V(1, 0))

    @given(vecs, vecs)
    def test_antisymmetry(self, a, b):
        if geo.cross(a, b) == 0:
            return
        assert geo.orientation_sign(a, b) == -geo.orientation_sign(b, a)
        assert geo.orientation_sign(a, b) == geo.orientation_sign(
            geo.vneg(a), geo.vneg(b))
        assert geo.orientation_sign(a, b) == -geo.orientation_sign(geo.vneg(a), b)


class TestSegments:
    def test_proper_crossing(self):
        kind, pt = geo.seg_intersection(V(0, 0), V(2, 2), V(0, 2), V(2, 0))
        assert kind == "point" and pt == V(1, 1)

    def test_disjoint(self):
        assert geo.seg_intersection(V(0, 0), V(1, 0), V(0, 1), V(1, 1)) is None

    def test_collinear_overlap(self):
        kind, _ = geo.seg_intersection(V(0, 0), V(2, 0), V(1, 0), V(3, 0))
        assert kind == "overlap"

    def test_shared_endpoint_is_a_point(self):
        kind, pt = geo.seg_intersection(V(0, 0), V(1, 1), V(1, 1), V(2, 0))
        assert kind == "point" and pt == V(1, 1)

    def test_on_segment(self):
        assert geo.on_segment(V(1, 1), V(0, 0), V(2, 2))
        assert not geo.on_segment(V(0, 0), V(1, 1), V(2, 2), closed=True)
        assert not geo.on_segment(V(2, 2), V(0, 0), V(2, 2), closed=False)


class TestPointInPolygon:
    square = [V(0, 0), V(4, 0), V(4, 4), V(0, 4)]

    def test_inside(self):
        assert geo.point_in_polygon(V(1, 2), self.square)

    def test_outside(self):
        assert not geo.point_in_polygon(V(5, 2), self.square)

    def test_boundary_raises(self):
        with pytest.raises(DegenerateGeometry):
            geo.point_in_polygon(V(4, 2), self.square)

    @given(st.fractions(min_value=Fraction(1, 10), max_value=Fraction(39, 10),
                        max_denominator=16))
    def test_horizontal_scan_consistent(self, y):
        assert geo.point_in_polygon(V(2, y), self.square)


def _square_segments(tag_prefix="side"):
    a, b, c, d = V(0, 0), V(4, 0), V(4, 4), V(0, 4)
    return [(a, b, (tag_prefix, 0)), (b, c, (tag_prefix, 1)),
            (c, d, (tag_prefix, 2)), (d, a, (tag_prefix, 3))]


class TestSubdivision:
    def test_square_with_chord_has_three_faces(self):
        segs = _square_segments() + [(V(0, 0), V(4, 4), ("chord", 0))]
        sub = geo.Subdivision(segs)
        assert len(sub.faces) == 3  # two halves plus the outer face
        lower = sub.locate(V(2, 1))
        upper = sub.locate(V(2, 3))
        assert lower != upper
        assert sub.outer_face not in (lower, upper)

    def test_crossed_square_has_five_faces(self):
        segs = _square_segments() + [(V(0, 0), V(4, 4), ("d", 0)),
                                     (V(0, 4), V(4, 0), ("d", 1))]
        sub = geo.Subdivision(segs)
        assert len(sub.faces) == 5
        quads = {sub.locate(V(2, 1)), sub.locate(V(2, 3)),
                 sub.locate(V(1, 2)), sub.locate(V(3, 2))}
        assert len(quads) == 4

    def test_point_outside_frame_raises(self):
        sub = geo.Subdivision(_square_segments())
        with pytest.raises(DegenerateGeometry):
            sub.locate(V(10, 10))

    def test_overlapping_cuts_rejected(self):
        segs = _square_segments() + [(V(0, 0), V(4, 0), ("dup", 0))]
        with pytest.raises(DegenerateGeometry):
            geo.Subdivision(segs)

    def test_halfedge_senses_pair_up(self):
        sub = geo.Subdivision(_square_segments())
        for h in sub.half_edges:
            t = sub.half_edges[h["twin"]]
            assert t["sense"] == -h["sense"]
            assert t["tag"] == h["tag"]


class TestRationalParsing:
    def test_rat_roundtrip(self):
        rng = random.Random(7)
        for _ in range(50):
            q = Fraction(rng.randint(-99, 99), rng.randint(1, 40))
            assert geo.rat(geo.rat_str(q)) == q

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            geo.rat(0.25)
