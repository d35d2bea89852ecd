#!/usr/bin/env python3
"""
Tests for permutation groups, subgroup classes and Weyl groups.
"""

import sys
from pathlib import Path

import pytest

# Add src to Python path
ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from eqnielsen.errors import InputError
from eqnielsen.groups import (
    FiniteGroup,
    GroupHom,
    compose,
    invert,
    subconjugating_elements,
    subgroup_conjugacy_classes,
    weyl_group,
)


@pytest.fixture(scope="module")
def s3():
    return FiniteGroup(3, [[1, 0, 2], [1, 2, 0]], name="S3")


@pytest.fixture(scope="module")
def z4():
    return FiniteGroup(4, [[1, 2, 3, 0]], name="Z4")


class TestFiniteGroup:
    """Element enumeration and arithmetic."""

    def test_identity_is_element_zero(self, s3):
        assert s3.order == 6
        assert s3.element(0) == (0, 1, 2)
        assert list(s3.elements) == sorted(s3.elements)

    def test_mul_is_composition(self, s3):
        a = s3.index([1, 0, 2])
        b = s3.index([1, 2, 0])
        assert s3.element(s3.mul(a, b)) == compose((1, 0, 2), (1, 2, 0))
        assert s3.element(s3.mul(a, b)) == (0, 2, 1)

    def test_inverse(self, s3):
        for g in range(s3.order):
            assert s3.mul(g, s3.inv(g)) == 0
            assert s3.element(s3.inv(g)) == invert(s3.element(g))

    def test_trivial_group(self):
        G = FiniteGroup(1, [])
        assert G.order == 1
        assert G.is_abelian()

    def test_abelian(self, s3, z4):
        assert z4.is_abelian()
        assert not s3.is_abelian()

    def test_closure(self, z4):
        assert z4.closure([2]) == frozenset({0, 2})
        assert z4.closure([1]) == frozenset(range(4))

    def test_bad_generator_rejected(self):
        with pytest.raises(InputError):
            FiniteGroup(3, [[0, 0, 1]])

    def test_unknown_element_rejected(self, z4):
        with pytest.raises(InputError):
            z4.index([1, 0, 2, 3])


class TestSubgroups:
    """Conjugacy classes of subgroups and normalizers."""

    def test_s3_has_four_classes(self, s3):
        orders = [H.order for H in subgroup_conjugacy_classes(s3)]
        assert orders == [1, 2, 3, 6]

    def test_z4_chain(self, z4):
        reps = subgroup_conjugacy_classes(z4)
        assert [H.members for H in reps] == [(0,), (0, 2), (0, 1, 2, 3)]

    def test_normalizer_of_transposition(self, s3):
        H = s3.subgroup(s3.closure([s3.index([1, 0, 2])]))
        assert s3.normalizer(H).members == H.members

    def test_subconjugating_elements(self, s3):
        H = s3.subgroup(s3.closure([s3.index([1, 0, 2])]))
        K = s3.subgroup(s3.closure([s3.index([0, 2, 1])]))
        gs = subconjugating_elements(s3, H, K)
        assert len(gs) == 2
        for g in gs:
            assert K.as_set() >= s3.conjugate_subgroup(s3.inv(g), H.members)


class TestWeylGroup:
    """WH = N(H)/H as a permutation group."""

    def test_trivial_subgroup(self, s3):
        W = weyl_group(s3, s3.trivial())
        assert W.group.order == 6

    def test_normal_subgroup(self, s3):
        A3 = s3.subgroup(s3.closure([s3.index([1, 2, 0])]))
        W = weyl_group(s3, A3)
        assert W.group.order == 2
        assert W.project(0) == 0
        assert all(W.project(h) == 0 for h in A3.members)

    def test_whole_group(self, z4):
        assert weyl_group(z4, z4.whole()).group.order == 1

    def test_lifts_project_back(self, z4):
        W = weyl_group(z4, z4.subgroup([0, 2]))
        assert W.group.order == 2
        for w, n in enumerate(W.lifts):
            assert W.project(n) == w


class TestGroupHom:
    """Homomorphisms from generator images."""

    def test_from_generators(self, z4):
        Z2 = FiniteGroup(2, [[1, 0]])
        hom = GroupHom.from_generators(z4, Z2, [1])
        assert hom.kernel().members == (0, 2)
        assert not hom.is_injective()

    def test_inconsistent_images_rejected(self):
        Z2 = FiniteGroup(2, [[1, 0]])
        Z3 = FiniteGroup(3, [[1, 2, 0]])
        with pytest.raises(InputError):
            GroupHom.from_generators(Z2, Z3, [1])

    def test_identity(self, s3):
        assert GroupHom.identity(s3).is_injective()


if __name__ == "__main__":
    pytest.main([__file__])
