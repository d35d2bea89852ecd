#!/usr/bin/env python3
"""
Tests for Jiang status, the Lefschetz/Nielsen dichotomy and the converse Lefschetz verdict.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from eqnielsen import catalog
from eqnielsen.config import EngineConfig
from eqnielsen.errors import InputError
from eqnielsen.fundamental import objects
from eqnielsen.jiang import (
    CONCLUDED,
    DECLARED_FAMILY,
    FREE_QUOTIENT,
    NEGATIVE,
    SIMPLY_CONNECTED,
    UNKNOWN,
    USER_ASSERTED,
    WITHHELD,
    JiangDeclarations,
    jiang_status,
    reduced_class_counts,
)
from eqnielsen.lefschetz import non_isomorphism_images
from eqnielsen.nielsen import AFFIRMATIVE
from eqnielsen.pipeline import run_invariants
from eqnielsen.problem_file import build_problem, parse_problem


def analyse(doc: dict):
    return run_invariants(build_problem(parse_problem(doc)), EngineConfig())


@pytest.fixture(scope="module")
def rp2_objects():
    return objects(build_problem(parse_problem(catalog.build("rp2_identity"))).complex)


class TestJiangStatus:
    """Detection, declarations and assertions."""

    def test_simply_connected_is_detected(self):
        objs = objects(build_problem(parse_problem(catalog.build("reflection_s3_identity"))).complex)
        status = jiang_status(objs)
        assert [e.kind for e in status.entries] == [SIMPLY_CONNECTED, SIMPLY_CONNECTED]
        assert status.all_jiang

    def test_unknown_without_declarations(self, rp2_objects):
        status = jiang_status(rp2_objects)
        assert status[0].kind == UNKNOWN
        assert status.unknown_objects() == [0]

    def test_declared_family(self, rp2_objects):
        status = jiang_status(rp2_objects, JiangDeclarations(families={"0": ["lens", "h_space"]}))
        assert status[0].kind == DECLARED_FAMILY
        assert status[0].family == ("lens", "h_space")

    def test_user_assertion(self, rp2_objects):
        status = jiang_status(rp2_objects, JiangDeclarations(assert_objects=(0,)))
        assert status[0].grounds == (USER_ASSERTED,)

    def test_unknown_family(self, rp2_objects):
        with pytest.raises(InputError):
            jiang_status(rp2_objects, JiangDeclarations(families={"all": "torus"}))

    def test_bad_targets(self, rp2_objects):
        with pytest.raises(InputError):
            jiang_status(rp2_objects, JiangDeclarations(families={"3": "lens"}))
        with pytest.raises(InputError):
            jiang_status(rp2_objects, JiangDeclarations(families={"north": "lens"}))
        with pytest.raises(InputError):
            jiang_status(rp2_objects, JiangDeclarations(assert_objects=(1,)))

    def test_simply_connected_declaration_is_checked(self, rp2_objects):
        with pytest.raises(InputError):
            jiang_status(rp2_objects, JiangDeclarations(families={"all": "simply_connected"}))

    def test_free_quotient_rule_needs_a_free_action(self):
        objs = objects(build_problem(parse_problem(catalog.build("reflection_s3_identity"))).complex)
        status = jiang_status(objs, JiangDeclarations(quotient_is_jiang=True))
        assert all(FREE_QUOTIENT not in e.grounds for e in status.entries)


class TestDichotomy:
    """Concluded at Jiang objects, withheld elsewhere."""

    def test_reflection_s3(self):
        a = analyse(catalog.build("reflection_s3_identity"))
        assert [c.status for c in a.dichotomy] == [CONCLUDED, CONCLUDED]
        assert [c.N_G for c in a.dichotomy] == [0, 1]
        assert reduced_class_counts(a.traces, a.problem.map) == (0, 1)

    def test_pole_swap_s4(self):
        a = analyse(catalog.build("s4_pole_swap_identity"))
        assert [c.N_G for c in a.dichotomy] == [0, 0]
        assert a.dichotomy[1].message == "L_G = 0, so lambda_G = 0 and N_G = 0"

    def test_withheld_on_projective_plane(self):
        a = analyse(catalog.build("rp2_identity"))
        assert a.dichotomy[0].status == WITHHELD
        assert a.dichotomy[0].N_G is None

    def test_declaring_projective_plane_jiang_is_refused(self):
        # lambda of the identity is 1*[e] + 0*[a], which no Jiang space allows
        doc = catalog.build("rp2_identity")
        doc["jiang"] = {"families": {"all": "lens"}}
        with pytest.raises(InputError):
            analyse(doc)

    def test_free_quotient(self):
        a = analyse(catalog.build("free_z2_s3_identity"))
        assert a.jiang[0].kind == SIMPLY_CONNECTED
        assert FREE_QUOTIENT in a.jiang[0].grounds
        assert a.dichotomy[0].N_G == 0


class TestCoefficientConstancy:
    """At every Jiang object, nu_G carries one coefficient on all classes outside the non-isomorphism images."""

    @pytest.mark.parametrize("name", [n for n in catalog.CATALOG if n not in catalog.OVERFLOWING])
    def test_catalog(self, name):
        a = analyse(catalog.build(name))
        reduced = reduced_class_counts(a.traces, a.problem.map)
        for i, entry in enumerate(a.jiang.entries):
            if not entry.is_jiang or not a.traces[i].applicable:
                continue
            hit = set(non_isomorphism_images(a.traces, a.problem.map, i))
            kept = [k for k in a.traces[i].lifted.classes.representatives if k not in hit]
            assert len(kept) == reduced[i]
            assert len({a.nu[i].coefficient(k) for k in kept}) <= 1, (name, i)
            if a.L_G[i] != 0:
                assert a.N_G[i] == reduced[i]


class TestConverseLefschetz:
    """Affirmative only when L_G = 0 with Jiang objects and the gap hypotheses."""

    def test_affirmative(self):
        a = analyse(catalog.build("free_z2_s3_identity"))
        assert a.converse.status == AFFIRMATIVE
        assert analyse(catalog.build("cross_polytope_antipodal_map")).converse.status == AFFIRMATIVE

    def test_nonzero_lefschetz_class(self):
        a = analyse(catalog.build("s4_pole_swap_identity"))
        assert a.converse.status == NEGATIVE
        assert a.converse.objects == (0,)
        assert "L_G(f) != 0 at objects [0]" in a.converse.message

    def test_unknown_jiang(self):
        a = analyse(catalog.build("rp2_identity"))
        assert "Jiang hypothesis unverified at objects [0]" in a.converse.message

    def test_gap_failure(self):
        a = analyse(catalog.build("octahedron_antipodal_map"))
        assert a.converse.status == NEGATIVE
        assert a.converse.message.endswith("gap hypotheses fail at objects [0]")


if __name__ == "__main__":
    pytest.main([__file__])
