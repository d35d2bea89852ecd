#!/usr/bin/env python3
"""
Tests for edge-path fundamental groups, fundamental-category objects, Aut(x) and morphisms.
"""

import sys
from itertools import product
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from eqnielsen import catalog
from eqnielsen.complex import GComplex, GSimplicialMap
from eqnielsen.config import EngineConfig
from eqnielsen.covers import map_at_object
from eqnielsen.errors import CosetOverflow
from eqnielsen.fundamental import (
    aut_extension,
    fundamental_group,
    induced_class_map,
    is_isomorphism_class,
    morphism_candidates,
    morphism_exists,
    objects,
)
from eqnielsen.groups import FiniteGroup
from eqnielsen.pipeline import run_invariants
from eqnielsen.problem_file import build_problem, parse_problem

SOLVABLE = [name for name in catalog.CATALOG if name not in catalog.OVERFLOWING]


def problem(name: str):
    return build_problem(parse_problem(catalog.build(name)))


@pytest.fixture(scope="module")
def rp2_objects():
    return objects(problem("rp2_identity").complex)


@pytest.fixture(scope="module")
def rotation_objects():
    return objects(problem("rotation_octahedron_identity").complex)


class TestFundamentalGroup:
    """pi1 by coset enumeration."""

    def test_projective_plane(self, rp2_objects):
        assert len(rp2_objects) == 1
        pi = rp2_objects[0].pi1
        assert pi.order == 2
        assert pi.basepoint == 0

    def test_sphere_is_simply_connected(self):
        objs = objects(problem("tetrahedron_identity").complex)
        assert objs[0].pi1.order == 1

    def test_loops_realise_every_element(self, rp2_objects):
        pi = rp2_objects[0].pi1
        assert pi.loop(0) == (0,)
        for g in range(pi.order):
            walk = pi.loop(g)
            assert walk[0] == walk[-1] == 0
            assert pi.walk_value(walk) == g

    def test_edge_values_are_inverse(self, rp2_objects):
        pi = rp2_objects[0].pi1
        for (u, v), g in pi.edge_elements.items():
            assert pi.edge_value(v, u) == pi.group.inv(g)

    def test_disc_glued_three_times(self):
        X = problem("moore_space_z3_identity").complex
        pi = objects(X)[0].pi1
        assert pi.order == 3
        rim = (0, 1, 2, 0)
        assert pi.walk_value(rim) != 0
        assert pi.walk_value(rim + rim[1:] + rim[1:]) == 0
        assert fundamental_group(objects(X)[0].component, basepoint=12).order == 3

    def test_circle_overflows(self):
        X = GComplex.from_generator_action(FiniteGroup(1, []), 3, [], [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(CosetOverflow) as exc:
            objects(X, coset_cap=200)
        assert exc.value.cap == 200
        assert exc.value.exit_code == 3

    def test_fixed_circle_overflows(self):
        with pytest.raises(CosetOverflow):
            objects(problem("reflection_octahedron_identity").complex, coset_cap=200)


class TestObjects:
    """Ordering, Weyl data and morphisms."""

    def test_rotation_objects(self, rotation_objects):
        assert [o.subgroup.order for o in rotation_objects] == [1, 2, 2, 4, 4]
        assert [o.basepoint for o in rotation_objects] == [0, 4, 5, 4, 5]
        assert [o.weyl_stabilizer.order for o in rotation_objects] == [4, 2, 2, 1, 1]
        assert all(o.pi1.order == 1 for o in rotation_objects)
        assert [o.index for o in rotation_objects] == list(range(5))

    def test_reflection_objects(self):
        objs = objects(problem("reflection_s3_identity").complex)
        assert [o.subgroup.order for o in objs] == [1, 2]
        assert objs[1].component.vertices == tuple(range(6))
        assert objs[1].weyl_stabilizer.order == 1

    def test_morphisms_go_up(self, rotation_objects):
        free, z2_north, z2_south, z4_north, z4_south = rotation_objects
        assert morphism_exists(free, z4_north)
        assert morphism_exists(z2_north, z4_north)
        assert not morphism_exists(z4_north, free)
        assert not morphism_exists(z2_north, z4_south)
        assert not morphism_exists(z2_south, z4_north)
        assert len(morphism_candidates(free, free)) == 4

    def test_isomorphism_classes(self, rotation_objects):
        assert is_isomorphism_class(rotation_objects[1], rotation_objects[2])
        assert not is_isomorphism_class(rotation_objects[0], rotation_objects[3])


class TestAutExtension:
    """|Aut(x)| = |pi1| * |WH_x|."""

    def test_rotation_free_object(self, rotation_objects):
        ext = aut_extension(rotation_objects[0])
        assert ext.order == 4
        assert ext.deck_part(ext.deck(0)) == 0

    def test_projective_plane(self, rp2_objects):
        ext = aut_extension(rp2_objects[0])
        assert ext.order == 2
        assert ext.cover.vertex_count == 12
        assert all(ext.deck_part(ext.deck(g)) == g for g in range(2))

    def test_free_quotient(self):
        objs = objects(problem("free_z2_s2_identity").complex)
        ext = aut_extension(objs[0])
        assert ext.order == 2
        assert ext.deck_part(ext.section[1]) is None

class TestMorphismLaws:
    """Mor(x, y) is non-empty reflexively and transitively, and both ways only between equal objects."""

    @pytest.mark.parametrize("name", SOLVABLE)
    def test_reflexive_and_transitive(self, name):
        objs = objects(problem(name).complex)
        for x in objs:
            assert morphism_exists(x, x)
        for x, y, z in product(objs, repeat=3):
            if morphism_exists(x, y) and morphism_exists(y, z):
                assert morphism_exists(x, z), (x.index, y.index, z.index)

    @pytest.mark.parametrize("name", SOLVABLE)
    def test_morphisms_both_ways(self, name):
        objs = objects(problem(name).complex)
        for x, y in product(objs, repeat=2):
            if morphism_exists(x, y) and morphism_exists(y, x):
                assert x.index == y.index


@pytest.fixture(scope="module")
def analyses():
    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = run_invariants(problem(name), EngineConfig())
        return cache[name]
    return get


def class_maps(src, dst, f, src_classes, dst_classes):
    """Induced maps for every group element and every detour class of the morphism."""
    detours = [()] + [src.pi1.loop(g) for g in range(1, src.pi1.order)]
    return {
        tuple(sorted(induced_class_map(src, dst, f, src_classes, dst_classes, element=g, detour=d).mapping.items()))
        for g in morphism_candidates(src, dst)
        for d in detours
    }


class TestInducedClassMaps:
    """(sigma,[w])^* does not depend on the morphism chosen."""

    def test_prism_inclusion(self, analyses):
        a = analyses("rp2_prism_flip_identity")
        free, middle = a.objects
        assert [o.pi1.order for o in a.objects] == [2, 2]
        assert [o.basepoint for o in a.objects] == [0, 6]
        assert morphism_candidates(free, middle) == [0, 1]
        mc = induced_class_map(free, middle, a.problem.map, a.traces[0].lifted.classes, a.traces[1].lifted.classes)
        assert mc.mapping == {0: 0, 1: 1}
        assert mc.image() == [0, 1]

    def test_prism_choices(self, analyses):
        a = analyses("rp2_prism_flip_identity")
        free, middle = a.objects
        maps = class_maps(free, middle, a.problem.map, a.traces[0].lifted.classes, a.traces[1].lifted.classes)
        assert maps == {((0, 0), (1, 1))}

    def test_prism_flip_choices(self, analyses):
        a = analyses("rp2_prism_flip_identity")
        X = a.problem.complex
        flip = GSimplicialMap(X, tuple(X.act(1, v) for v in range(X.vertex_count)))
        free, middle = (map_at_object(o, flip) for o in a.objects)
        assert len(class_maps(a.objects[0], a.objects[1], flip, free.classes, middle.classes)) == 1

    @pytest.mark.parametrize("name", SOLVABLE)
    def test_catalog_choices(self, analyses, name):
        a = analyses(name)
        for src, s in zip(a.objects, a.traces):
            for dst, t in zip(a.objects, a.traces):
                if s.applicable and t.applicable and morphism_exists(src, dst):
                    maps = class_maps(src, dst, a.problem.map, s.lifted.classes, t.lifted.classes)
                    assert len(maps) == 1, (src.index, dst.index)


if __name__ == "__main__":
    pytest.main([__file__])
