#!/usr/bin/env python3
"""
Invariants do not depend on vertex names or on the thread count.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from eqnielsen import catalog
from eqnielsen.config import EngineConfig
from eqnielsen.pipeline import run_invariants
from eqnielsen.problem_file import build_problem, parse_problem
from eqnielsen.report import canonical_summary, invariant_report, to_json

SMALL = (
    "tetrahedron_identity",
    "octahedron_antipodal_map",
    "rotation_octahedron_quarter_turn",
    "free_z2_s2_antipodal",
    "rp2_identity",
)
SEEDS_PER_PROBLEM = 20


def summary(doc: dict, threads: int = 1) -> dict:
    return canonical_summary(run_invariants(build_problem(parse_problem(doc)), EngineConfig(threads=threads)))


@pytest.fixture(scope="module")
def baselines():
    return {name: summary(catalog.build(name)) for name in SMALL}


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("seed", range(SEEDS_PER_PROBLEM))
def test_relabelling_invariance(baselines, name, seed):
    assert summary(catalog.build(name, seed=seed)) == baselines[name]


def test_subdivided_relabelling():
    name = "tetrahedron_rotation_identity"
    assert summary(catalog.build(name, seed=11)) == summary(catalog.build(name))


def test_thread_count_does_not_change_reports():
    problem = build_problem(parse_problem(catalog.build("rotation_octahedron_identity")))
    serial = to_json(invariant_report(run_invariants(problem, EngineConfig(threads=1))))
    parallel = to_json(invariant_report(run_invariants(problem, EngineConfig(threads=4))))
    assert serial == parallel


if __name__ == "__main__":
    pytest.main([__file__])
