#!/usr/bin/env python3
"""
Tests for the minimum-cover search, N_G and N^G on the catalog, bounds and the fixed-point-free verdict.
"""

import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from eqnielsen import catalog
from eqnielsen.config import EngineConfig
from eqnielsen.errors import CoverSearchTooLarge
from eqnielsen.nielsen import (
    AFFIRMATIVE,
    CONDITIONAL,
    OBSTRUCTED,
    brute_force_minimum_cover,
    classical_nielsen_number,
    essential_class_table,
    minimum_cover,
)
from eqnielsen.pipeline import run_invariants
from eqnielsen.problem_file import build_problem, parse_problem


@pytest.fixture(scope="module")
def analyses():
    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = run_invariants(build_problem(parse_problem(catalog.build(name))), EngineConfig())
        return cache[name]
    return get


class TestMinimumCover:
    """Branch and bound against the exhaustive search."""

    def test_empty_universe(self):
        assert minimum_cover(0, []) == 0

    def test_single_mask(self):
        assert minimum_cover(0b111, [0b111, 0b001]) == 1

    def test_disjoint_pairs(self):
        assert minimum_cover(0b1111, [0b0011, 0b1100, 0b0110]) == 2

    def test_greedy_is_not_optimal(self):
        # greedy takes the wide middle mask first and needs three
        masks = [0b000111, 0b111000, 0b011110]
        assert minimum_cover(0b111111, masks) == 2

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_brute_force(self, seed):
        rng = random.Random(seed)
        width = rng.randint(1, 9)
        universe = (1 << width) - 1
        masks = [rng.randint(1, universe) for _ in range(rng.randint(1, 8))]
        masks += [1 << e for e in range(width) if rng.random() < 0.5]
        covered = 0
        for m in masks:
            covered |= m
        universe &= covered
        assert minimum_cover(universe, masks) == brute_force_minimum_cover(universe, masks)

    def test_uncoverable(self):
        with pytest.raises(ValueError):
            minimum_cover(0b11, [0b01])

    def test_cap(self):
        masks = [1 << e for e in range(10)]
        with pytest.raises(CoverSearchTooLarge) as exc:
            minimum_cover((1 << 10) - 1, masks, cap=5)
        assert exc.value.exit_code == 3


class TestNielsenNumbers:
    """N_G counts essential classes of nu_G; N^G covers the rational ones from above."""

    def test_rotation_octahedron(self, analyses):
        a = analyses("rotation_octahedron_identity")
        assert a.N_G == (0, 0, 0, 1, 1)
        assert a.N_upper_G == (2, 1, 1, 1, 1)

    def test_quarter_turn(self, analyses):
        a = analyses("rotation_octahedron_quarter_turn")
        assert a.N_G == (0, 0, 0, 1, 1)
        assert a.N_upper_G == (2, 1, 1, 1, 1)

    def test_reflection_s3(self, analyses):
        a = analyses("reflection_s3_identity")
        assert a.N_G == (0, 1)
        assert a.N_upper_G == (1, 1)

    def test_pole_swap_s4(self, analyses):
        a = analyses("s4_pole_swap_identity")
        assert a.N_G == (0, 0)
        assert a.N_upper_G == (1, 0)

    def test_subdivided_rotation(self, analyses):
        a = analyses("tetrahedron_rotation_identity")
        assert a.N_G == (0, 1, 1)
        assert a.N_upper_G == (2, 1, 1)

    def test_prism_flip(self, analyses):
        a = analyses("rp2_prism_flip_identity")
        assert a.N_G == (0, 1)
        assert a.N_upper_G == (1, 1)

    def test_essential_table(self, analyses):
        a = analyses("reflection_s3_identity")
        table = essential_class_table(a.nu, a.rational)
        assert table.integer == ((), (0,))
        assert table.rational == ((), (0,))

    def test_classical_number(self, analyses):
        assert classical_nielsen_number(analyses("rp2_identity").lam[0]) == 1
        assert classical_nielsen_number(analyses("octahedron_degree_two").lam[0]) == 1
        assert classical_nielsen_number(analyses("moore_space_z3_identity").lam[0]) == 1
        assert classical_nielsen_number(None) == 0


class TestBoundsAndVerdicts:
    """Exactness depends on the gap hypotheses."""

    def test_inexact_bounds(self, analyses):
        a = analyses("reflection_s3_identity")
        assert [b.M_G for b in a.bounds] == [">=0", ">=1"]
        assert a.bounds[0].note == ("exactness not guaranteed (gap hypotheses fail at "
                                    "object 0: codimension 1 < 2, object 1: dim 2 < 3)")

    def test_exact_bounds(self, analyses):
        a = analyses("free_z2_s3_identity")
        assert a.bounds[0].exact
        assert a.bounds[0].M_upper_G == "=0"

    def test_obstructed(self, analyses):
        v = analyses("s4_pole_swap_identity").verdict
        assert v.status == OBSTRUCTED
        assert v.objects == (0,)
        assert analyses("rotation_octahedron_identity").verdict.objects == (3, 4)
        assert analyses("s3_degree_two").verdict.status == OBSTRUCTED

    def test_conditional(self, analyses):
        v = analyses("octahedron_antipodal_map").verdict
        assert v.status == CONDITIONAL
        assert v.message == "λ vanishes; theorem hypotheses unmet (gap)"
        assert analyses("free_z2_s2_antipodal").verdict.status == CONDITIONAL

    def test_affirmative(self, analyses):
        assert analyses("free_z2_s3_identity").verdict.status == AFFIRMATIVE
        assert analyses("cross_polytope_antipodal_map").verdict.status == AFFIRMATIVE


if __name__ == "__main__":
    pytest.main([__file__])
