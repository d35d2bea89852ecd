#!/usr/bin/env python3
"""
Tests for problem-file parsing and validation, automatic subdivision and the catalog helpers.
"""

import json
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from eqnielsen import catalog
from eqnielsen.errors import InputError
from eqnielsen.problem_file import _subdivide_loop, build_problem, load_problem_file, parse_problem


class TestSchema:
    """Pydantic validation of the document."""

    def test_catalog_documents_parse(self):
        for name in catalog.CATALOG:
            pf = parse_problem(catalog.build(name))
            assert pf.group.degree >= 1

    def test_needs_exactly_one_map(self):
        doc = catalog.build("tetrahedron_identity")
        doc["map_subdivision"] = []
        with pytest.raises(InputError):
            parse_problem(doc)
        del doc["map_subdivision"], doc["map"]
        with pytest.raises(InputError):
            parse_problem(doc)

    def test_one_action_per_generator(self):
        doc = catalog.build("free_z2_s2_identity")
        doc["complex"]["action"] = []
        with pytest.raises(InputError):
            parse_problem(doc)

    def test_unknown_keys_are_rejected(self):
        doc = catalog.build("tetrahedron_identity")
        doc["colour"] = "blue"
        with pytest.raises(InputError):
            parse_problem(doc)

    def test_non_positive_cap(self):
        doc = catalog.build("tetrahedron_identity")
        doc["options"] = {"coset_cap": 0}
        with pytest.raises(InputError):
            parse_problem(doc)

    def test_quotient_field_is_accepted(self):
        doc = catalog.build("tetrahedron_identity")
        doc["group_is_quotient_of"] = {"degree": 2}
        assert build_problem(parse_problem(doc)).map.vertex_images == (0, 1, 2, 3)


class TestBuild:
    """Groups, complexes and maps built from the document."""

    def test_bad_permutation(self):
        doc = catalog.build("free_z2_s2_identity")
        doc["group"]["generators"] = [[1, 1]]
        with pytest.raises(InputError):
            build_problem(parse_problem(doc))

    def test_non_equivariant_map(self):
        doc = catalog.build("rotation_octahedron_quarter_turn")
        doc["map"] = [0, 1, 3, 2, 4, 5]
        with pytest.raises(InputError):
            build_problem(parse_problem(doc))

    def test_map_outside_the_complex(self):
        doc = catalog._problem(2, [[1, 0]], 3, [[1, 0, 2]], [(0, 1), (1, 2)], map=[0, 1, 2])
        with pytest.raises(InputError):
            build_problem(parse_problem(doc))

    def test_duplicate_subdivision_entry(self):
        doc = catalog.build("octahedron_degree_two")
        doc["map_subdivision"].append(doc["map_subdivision"][0])
        with pytest.raises(InputError):
            build_problem(parse_problem(doc))

    def test_isotropy_generators(self):
        p = build_problem(parse_problem(catalog.build("rotation_octahedron_identity")))
        assert [len(d.isotropy) for d in p.fixed_points] == [4] * 6
        assert p.fixed_points[4].label == "north"


class TestSubdivision:
    """Irregular actions are subdivided once, unless forbidden."""

    def test_auto_subdivision(self):
        p = build_problem(parse_problem(catalog.build("tetrahedron_rotation_identity")))
        assert p.subdivided
        assert p.complex.vertex_count == 14
        assert p.complex.is_regular()

    def test_forbidden_subdivision(self):
        doc = catalog.build("tetrahedron_rotation_identity")
        doc["options"] = {"subdivide": False}
        with pytest.raises(InputError):
            build_problem(parse_problem(doc))

    def test_requested_subdivision(self):
        doc = catalog.build("rp2_identity")
        doc["options"] = {"subdivide": True}
        p = build_problem(parse_problem(doc))
        assert p.subdivided
        assert p.complex.euler_characteristic() == 1

    def test_irregular_with_subdivided_map(self):
        doc = catalog.build("tetrahedron_rotation_identity")
        del doc["map"]
        doc["map_subdivision"] = [[[v], v] for v in range(4)]
        with pytest.raises(InputError):
            build_problem(parse_problem(doc))

    def test_loops_follow_the_subdivision(self):
        position = {(0,): 0, (1,): 1, (2,): 2, (0, 1): 4, (0, 2): 5, (1, 2): 7}
        assert _subdivide_loop([0, 1, 2, 0], position) == [0, 4, 1, 7, 2, 5, 0]
        assert _subdivide_loop([], position) == []

    def test_loop_steps_must_be_edges(self):
        position = {(0,): 0, (1,): 1, (2,): 2, (0, 1): 4}
        with pytest.raises(InputError, match="not an edge"):
            _subdivide_loop([0, 2], position)
        with pytest.raises(InputError, match="not a vertex"):
            _subdivide_loop([9], position)

    def test_loop_across_antipodes_is_rejected_on_subdivision(self):
        doc = catalog.build("rotation_octahedron_identity")
        doc["options"] = {"subdivide": True}
        doc["fixed_points"][0]["loop"] = [0, 1]
        with pytest.raises(InputError):
            build_problem(parse_problem(doc))


class TestLoading:
    """Reading problem files from disk."""

    def test_round_trip_through_a_file(self, tmp_path):
        path = tmp_path / "rp2.json"
        path.write_text(json.dumps(catalog.build("rp2_identity")))
        assert load_problem_file(path).complex.vertices == 6

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_problem_file(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(InputError):
            load_problem_file(path)


class TestCatalog:
    """Builders and relabelling."""

    def test_cross_polytope(self):
        assert len(catalog.cross_polytope(3)) == 8
        assert catalog.swap_pairs(2, [1]) == [0, 1, 3, 2]

    def test_prism_and_disc(self):
        prism = build_problem(parse_problem(catalog.build("rp2_prism_flip_identity")))
        assert not prism.subdivided
        assert len(prism.complex.of_dimension(3)) == 60
        assert prism.complex.euler_characteristic() == 1
        disc = build_problem(parse_problem(catalog.build("moore_space_z3_identity")))
        assert len(disc.complex.of_dimension(2)) == 27
        assert disc.complex.euler_characteristic() == 1

    def test_relabel_keeps_the_problem_valid(self):
        doc = catalog.build("free_z2_s3_identity", seed=3)
        p = build_problem(parse_problem(doc))
        assert p.complex.euler_characteristic() == 0
        assert p.jiang.quotient_is_jiang

    def test_relabel_drops_fixed_points(self):
        doc = catalog.relabel(catalog.build("s4_pole_swap_identity"), list(reversed(range(10))))
        assert "fixed_points" not in doc
        assert doc["complex"]["action"] == [catalog.swap_pairs(5, [0])]

    def test_relabel_needs_a_permutation(self):
        with pytest.raises(ValueError):
            catalog.relabel(catalog.build("tetrahedron_identity"), [0, 0, 1, 2])


if __name__ == "__main__":
    pytest.main([__file__])
