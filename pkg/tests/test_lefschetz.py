#!/usr/bin/env python3
"""
Tests for refined Lefschetz numbers, lambda_G, nu_G, L_G, L^{QAut(x)} and chi^G on the catalog.
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from eqnielsen import catalog
from eqnielsen.complex import GSimplicialMap
from eqnielsen.config import EngineConfig
from eqnielsen.covers import NotApplicable, map_at_object
from eqnielsen.errors import InputError
from eqnielsen.fundamental import objects
from eqnielsen.lefschetz import (
    euler_characteristic_G,
    homotopy_transport,
    lambda_G,
    lefschetz_class,
    quotient_relative_euler,
    trace_object,
    transport_summand,
)
from eqnielsen.pipeline import run_invariants
from eqnielsen.problem_file import build_problem, parse_problem


def coefficients(summands):
    return [s.as_dict() for s in summands]


@pytest.fixture(scope="module")
def analyses():
    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = run_invariants(build_problem(parse_problem(catalog.build(name))), EngineConfig())
        return cache[name]
    return get


class TestTrivialGroup:
    """Classical refined Lefschetz numbers."""

    def test_tetrahedron_identity(self, analyses):
        a = analyses("tetrahedron_identity")
        assert coefficients(a.lam) == [{0: 2}]
        assert a.L_G == (2,)

    def test_antipodal_octahedron(self, analyses):
        a = analyses("octahedron_antipodal_map")
        assert a.lam.is_zero()
        assert a.L_G == (0,)
        assert a.chi is None

    def test_degree_two_maps(self, analyses):
        assert analyses("octahedron_degree_two").L_G == (3,)
        assert coefficients(analyses("octahedron_degree_two").lam) == [{0: 3}]
        assert analyses("s3_degree_two").L_G == (-1,)

    def test_antipodal_three_sphere(self, analyses):
        assert analyses("cross_polytope_antipodal_map").L_G == (0,)

    def test_projective_plane(self, analyses):
        a = analyses("rp2_identity")
        assert coefficients(a.lam) == [{0: 1}]
        assert len(a.traces[0].lifted.classes) == 2
        assert a.chi.values == (1,)


class TestRotationOctahedron:
    """Z/4 about the polar axis."""

    def test_lambda_and_L(self, analyses):
        a = analyses("rotation_octahedron_identity")
        assert coefficients(a.lam) == [{}, {}, {}, {0: 1}, {0: 1}]
        assert a.L_G == (0, 0, 0, 1, 1)

    def test_rational_refined(self, analyses):
        a = analyses("rotation_octahedron_identity")
        assert [s.coefficient(0) for s in a.rational] == [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 1, 1]

    def test_chi(self, analyses):
        a = analyses("rotation_octahedron_identity")
        assert a.chi.values == (0, 0, 0, 1, 1)
        assert [quotient_relative_euler(o) for o in a.objects] == [0, 0, 0, 1, 1]

    def test_quarter_turn(self, analyses):
        a = analyses("rotation_octahedron_quarter_turn")
        assert a.L_G == (0, 0, 0, 1, 1)
        assert a.rational[0].coefficient(0) == Fraction(1, 2)

    def test_pole_swap_moves_fixed_components(self, analyses):
        a = analyses("rotation_octahedron_identity")
        pole_swap = GSimplicialMap(a.problem.complex, (0, 1, 2, 3, 5, 4))
        traces = [trace_object(o, pole_swap) for o in a.objects]
        lam = lambda_G(traces)
        assert all(isinstance(s, NotApplicable) for s in lam.summands[1:])
        assert lefschetz_class(lam)[1:] == (0, 0, 0, 0)


class TestReflections:
    """Reflection actions, where nu_G drops the classes hit from the fixed set."""

    def test_reflection_s3_identity(self, analyses):
        a = analyses("reflection_s3_identity")
        assert coefficients(a.lam) == [{0: -1}, {0: 2}]
        assert coefficients(a.nu) == [{}, {0: 2}]
        assert a.L_G == (-1, 2)
        assert [s.coefficient(0) for s in a.rational] == [0, 2]
        assert a.chi.values == (-1, 2)

    def test_reflection_s3_reflection(self, analyses):
        a = analyses("reflection_s3_reflection")
        assert a.L_G == (0, 2)
        assert [s.coefficient(0) for s in a.rational] == [1, 2]

    def test_pole_swap_s4(self, analyses):
        a = analyses("s4_pole_swap_identity")
        assert a.L_G == (1, 0)
        assert a.nu.is_zero()
        assert [s.coefficient(0) for s in a.rational] == [1, 0]


class TestFreeActions:
    """Free involutions: lambda_G is the trace on the quotient."""

    def test_free_s2_identity(self, analyses):
        a = analyses("free_z2_s2_identity")
        assert a.L_G == (1,)
        assert a.rational[0].coefficient(0) == 1

    def test_free_s2_antipodal(self, analyses):
        a = analyses("free_z2_s2_antipodal")
        assert a.lam.is_zero()
        assert a.rational[0].is_zero()

    def test_free_s3_identity(self, analyses):
        a = analyses("free_z2_s3_identity")
        assert a.L_G == (0,)
        assert a.chi.values == (0,)


class TestSubdividedRotation:
    """Z/3 on the tetrahedron, subdivided on load."""

    def test_objects_and_values(self, analyses):
        a = analyses("tetrahedron_rotation_identity")
        assert a.problem.subdivided
        assert [o.subgroup.order for o in a.objects] == [1, 3, 3]
        assert [o.basepoint for o in a.objects[1:]] == [0, 13]
        assert a.L_G == (0, 1, 1)
        assert a.rational[0].coefficient(0) == Fraction(2, 3)


class TestPrismAndDisc:
    """Non-simply-connected fixed sets: the flipped RP^2 prism and the Z/3 Moore space."""

    def test_prism(self, analyses):
        a = analyses("rp2_prism_flip_identity")
        assert [o.subgroup.order for o in a.objects] == [1, 2]
        assert coefficients(a.lam) == [{}, {0: 1}]
        assert a.L_G == (0, 1)
        assert a.chi.values == (0, 1)
        assert a.rational[0].coefficient(0) == Fraction(1, 2)
        assert coefficients(a.rational)[1] == {0: 1}
        assert [len(t.lifted.classes) for t in a.traces] == [2, 2]

    def test_disc_glued_three_times(self, analyses):
        a = analyses("moore_space_z3_identity")
        assert coefficients(a.lam) == [{0: 1}]
        assert len(a.traces[0].lifted.classes) == 3
        assert a.chi.values == (1,)


class TestEulerAndTransport:
    """chi^G directly and class transport along contiguous maps."""

    def test_chi_without_traces(self, analyses):
        a = analyses("reflection_s3_identity")
        assert euler_characteristic_G(a.problem.complex, a.objects).values == (-1, 2)

    def test_transport_identity(self, analyses):
        a = analyses("rp2_identity")
        lifted = a.traces[0].lifted
        mapping = homotopy_transport(a.objects[0], lifted, lifted)
        assert mapping == {0: 0, 1: 1}
        moved = transport_summand(a.lam[0], mapping, a.lam[0])
        assert moved.as_dict() == {0: 1}

    def test_transport_needs_contiguity(self, analyses):
        a = analyses("rotation_octahedron_identity")
        obj = a.objects[0]
        turn = map_at_object(obj, GSimplicialMap(a.problem.complex, tuple(catalog.QUARTER_TURN)))
        with pytest.raises(InputError):
            homotopy_transport(obj, a.traces[0].lifted, turn)

    @staticmethod
    def whiskered(equivariant: bool):
        """RP^2 on 1..6 with the edge 0-1, or the free Z/2 octahedron with edges 0-6 and 1-7."""
        if equivariant:
            simplices = [list(s) for s in catalog.cross_polytope(3)] + [[0, 6], [1, 7]]
            doc = {"group": {"degree": 2, "generators": [[1, 0]]},
                   "complex": {"vertices": 8, "action": [catalog.swap_pairs(3, [0, 1, 2]) + [7, 6]],
                               "simplices": simplices},
                   "map": list(range(8))}
            return build_problem(parse_problem(doc)), tuple(range(6)) + (0, 1)
        simplices = [[v + 1 for v in t] for t in catalog.RP2_TRIANGLES] + [[0, 1]]
        doc = {"group": {"degree": 1, "generators": []},
               "complex": {"vertices": 7, "action": [], "simplices": simplices},
               "map": list(range(7))}
        return build_problem(parse_problem(doc)), (1,) + tuple(range(1, 7))

    @pytest.mark.parametrize("equivariant, expected", [(False, {0: 0, 1: 1}), (True, {0: 0})])
    def test_transport_between_distinct_maps(self, equivariant, expected):
        p, folded = self.whiskered(equivariant)
        obj = objects(p.complex)[0]
        fold = GSimplicialMap(p.complex, folded)
        assert fold.vertex_images != p.map.vertex_images
        before, after = trace_object(obj, p.map), trace_object(obj, fold)
        mapping = homotopy_transport(obj, before.lifted, after.lifted)
        assert mapping == expected
        lam_before, lam_after = lambda_G([before])[0], lambda_G([after])[0]
        assert lam_before.as_dict() == {0: 1}
        assert transport_summand(lam_after, mapping, lam_before).as_dict() == lam_before.as_dict()
        assert homotopy_transport(obj, after.lifted, before.lifted) == {v: k for k, v in mapping.items()}


if __name__ == "__main__":
    pytest.main([__file__])
