"""Network model: validation, census, orientations, faces, labels."""

import pytest

from kpnets import gallery as G
from kpnets.errors import NotABase, ValidationFailure
from kpnets.network import (BLACK, BOUNDARY, WHITE, OrientedView,
                            PlabicNetwork, all_bases, compute_faces,
                            edge_labels, find_perfect_orientation,
                            validate_pbdtp)


@pytest.fixture
def gr13():
    return G.network_gr13()


@pytest.fixture
def s34():
    return G.network_s34()


class TestValidation:
    def test_gr13_valid_with_collar_advice(self, gr13):
        rep = validate_pbdtp(gr13)
        assert rep.ok
        assert {f.code for f in rep.findings} == {"boundary-bivalent-white"}

    def test_le_networks_fully_clean(self, s34):
        assert validate_pbdtp(s34).findings == []

    def test_dangling_edge_fatal(self):
        net = PlabicNetwork.build(2, [
            ("b1", BOUNDARY, 1, 0, 1),
            ("b2", BOUNDARY, 2, 0, 2),
            ("W", WHITE, 1, 1),
            ("B", BLACK, 2, 1),
            ("stub", BLACK, "3/2", 2),
        ], [
            ("e1", "b1", "W"),
            ("e2", "W", "B"),
            ("e3", "B", "b2"),
            ("e4", "W", "stub"),
        ])
        rep = validate_pbdtp(net)
        assert not rep.ok
        with pytest.raises(ValidationFailure):
            rep.raise_if_fatal()

    def test_crossing_edges_fatal(self):
        net = PlabicNetwork.build(2, [
            ("b1", BOUNDARY, 1, 0, 1),
            ("b2", BOUNDARY, 2, 0, 2),
            ("u", WHITE, 1, 2),
            ("v", BLACK, 2, 2),
            ("p", WHITE, 1, 1),
            ("q", BLACK, 2, 1),
        ], [
            ("e1", "b1", "p"),
            ("e2", "p", "v"),     # crosses e3
            ("e3", "u", "q"),
            ("e4", "v", "u", 1),
            ("e5", "q", "b2"),
        ])
        rep = validate_pbdtp(net)
        assert not rep.ok


class TestCensus:
    def test_gr13_counts(self, gr13):
        c = gr13.census()
        assert c["genus"] == 2
        assert c["t_w"] == 1 and c["t_b"] == 0
        assert c["curve_components"] == 2  # one internal vertex
        assert c["double_points"] == 3

    def test_census_identities_on_corpus(self):
        for net in G.le_corpus(25):
            c = net.census()
            g, n = c["genus"], c["n"]
            k = len(OrientedView(net).sources())
            t_w, t_b, d_w, d_b = c["t_w"], c["t_b"], c["d_w"], c["d_b"]
            n_i = c["internal_edges"]
            assert 3 * (t_w + t_b) + 2 * (d_w + d_b) == 2 * n_i + n
            assert t_w == g - k
            assert t_b == g - n + k
            assert d_w + d_b == n_i + 2 * n - 3 * g
            assert c["curve_components"] == 1 + t_w + t_b + d_w + d_b
            assert c["double_points"] == n_i + n

    def test_face_count_is_genus_plus_one(self, s34):
        faces = compute_faces(s34)
        assert len(faces.faces) == s34.census()["genus"] + 1


class TestJson:
    def test_roundtrip_is_byte_identical(self, s34):
        blob = s34.to_json()
        again = PlabicNetwork.from_json(blob).to_json()
        assert blob == again

    def test_all_gallery_roundtrip(self):
        for net in [G.network_gr13(), G.network_tp24_le(),
                    G.network_tp24_square(), G.network_one_loop()]:
            assert PlabicNetwork.from_json(net.to_json()).to_json() == net.to_json()


class TestOrientations:
    def test_gr13_stored_is_perfect_acyclic(self, gr13):
        v = OrientedView(gr13)
        assert v.is_perfect() and v.is_acyclic()
        assert v.sources() == [1]

    def test_retarget_source(self, gr13):
        po = find_perfect_orientation(gr13, (2,))
        v = po.view(gr13)
        assert v.is_perfect()
        assert v.sources() == [2]
        kinds = [s[0] for s in po.steps]
        assert kinds == ["path"]
        # the recorded path runs from the demoted source to the new one
        _, trace, i, j = po.steps[0]
        assert (i, j) == (1, 2)
        assert trace == ["e1", "e2"]

    def test_not_a_base(self, s34):
        with pytest.raises(NotABase):
            find_perfect_orientation(s34, (3, 4))

    def test_all_bases_gr13(self, gr13):
        assert sorted(all_bases(gr13)) == [(1,), (2,), (3,)]

    def test_all_bases_s34_excludes_34(self, s34):
        assert sorted(all_bases(s34)) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]

    def test_one_loop_cycle_reorientation(self):
        net = G.network_one_loop()
        assert not OrientedView(net).is_acyclic()
        # same base, acyclic companion found by rerouting the cycle
        po = find_perfect_orientation(net, (1,))
        assert po.steps == []  # target equals stored base: nothing to do

    def test_reoriented_network_flips_weights(self, gr13):
        po = find_perfect_orientation(gr13, (3,))
        net2 = po.view(gr13).reoriented_network()
        v2 = OrientedView(net2)
        assert v2.sources() == [3]
        # weight of a reversed edge inverts so measurements carry over
        assert net2.edges["e3"].weight == 1 / gr13.edges["e3"].weight


class TestEdgeLabels:
    def test_white_anchor_is_unique_in_edge(self, gr13):
        labels = edge_labels(gr13, OrientedView(gr13), "W")
        assert labels == ["e3", "e2", "e1"]

    def test_bivalent_positions(self):
        net = G.network_s34()
        v = OrientedView(net)
        for vid, vert in net.vertices.items():
            if vert.color == BOUNDARY or net.degree(vid) != 2:
                continue
            e1, e2, e3 = edge_labels(net, v, vid)
            assert e2 is None
            assert v.tail(e1) == vid      # first label is the out-edge
            assert v.head(e3) == vid      # last label is the in-edge

    def test_trivalent_black_anchor_is_unique_out(self, s34):
        v = OrientedView(s34)
        for vid, vert in s34.vertices.items():
            if vert.color == BLACK and s34.degree(vid) == 3:
                e1, e2, e3 = edge_labels(s34, v, vid)
                assert v.tail(e1) == vid
                assert v.head(e2) == vid and v.head(e3) == vid


class TestFaces:
    def test_single_path_splits_disk_in_two(self):
        net = PlabicNetwork.build(2, [
            ("b1", BOUNDARY, 1, 0, 1),
            ("b2", BOUNDARY, 2, 0, 2),
            ("V", WHITE, "3/2", 1),
        ], [
            ("e1", "b1", "V"),
            ("e2", "V", "b2", "5"),
        ])
        fs = compute_faces(net)
        # a boundary-to-boundary arc cuts the disk in two: g = 1
        assert len(fs.faces) == 2
        assert net.census()["genus"] == 1

    def test_tp24_square_face_weights(self):
        net = G.network_tp24_square()
        fs = compute_faces(net)
        assert len(fs.faces) == 5
        # exactly one face is bounded entirely by internal edges
        def internal(eid):
            e = net.edges[eid]
            return net.is_internal(e.tail) and net.is_internal(e.head)
        inner = [f for f in fs.faces
                 if all(internal(eid) for eid, _ in f.walk)]
        assert len(inner) == 1
        assert sorted(eid for eid, _ in inner[0].walk) == ["e10", "e7", "e8", "e9"]
