"""
Group rings, twisted conjugacy classes and the free modules on them.

Coefficients are exact: `int` for the integer ring, `fractions.Fraction` for the rational one.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import InputError
from .groups import FiniteGroup, GroupHom
from .union_find import find_orbits

Coefficient = Union[int, Fraction]

INTEGER = "integer"
RATIONAL = "rational"


def _normalize(value: Coefficient, ring: str) -> Coefficient:
    if ring == INTEGER:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"non-integral coefficient {value} in an integer group ring")
            return int(value.numerator)
        return int(value)
    if ring == RATIONAL:
        return Fraction(value)
    raise ValueError(f"unknown coefficient ring {ring!r}")


def _pack(coeffs: Mapping[int, Coefficient], ring: str) -> Tuple[Tuple[int, Coefficient], ...]:
    items = []
    for key in sorted(coeffs):
        c = _normalize(coeffs[key], ring)
        if c != 0:
            items.append((key, c))
    return tuple(items)


@dataclass(frozen=True)
class GroupRingElement:
    """Finite sum of group elements (by index) with exact coefficients; zeros are never stored."""

    group: FiniteGroup
    ring: str
    terms: Tuple[Tuple[int, Coefficient], ...]

    @classmethod
    def from_dict(cls, group: FiniteGroup, coeffs: Mapping[int, Coefficient],
                  ring: str = INTEGER) -> "GroupRingElement":
        return cls(group, ring, _pack(coeffs, ring))

    @classmethod
    def zero(cls, group: FiniteGroup, ring: str = INTEGER) -> "GroupRingElement":
        return cls(group, ring, ())

    @classmethod
    def basis(cls, group: FiniteGroup, g: int, coeff: Coefficient = 1,
              ring: str = INTEGER) -> "GroupRingElement":
        return cls.from_dict(group, {g: coeff}, ring)

    def as_dict(self) -> Dict[int, Coefficient]:
        return dict(self.terms)

    def coefficient(self, g: int) -> Coefficient:
        return self.as_dict().get(g, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: "GroupRingElement", sign: int) -> "GroupRingElement":
        if other.group is not self.group:
            raise ValueError("group ring elements over different groups")
        ring = RATIONAL if RATIONAL in (self.ring, other.ring) else INTEGER
        acc: Dict[int, Coefficient] = defaultdict(int, self.terms)
        for g, c in other.terms:
            acc[g] += sign * c
        return GroupRingElement.from_dict(self.group, acc, ring)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self._combine(other, 1)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self._combine(other, -1)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, self.ring, tuple((g, -c) for g, c in self.terms))

    def scale(self, factor: Coefficient) -> "GroupRingElement":
        ring = RATIONAL if isinstance(factor, Fraction) else self.ring
        return GroupRingElement.from_dict(self.group, {g: c * factor for g, c in self.terms}, ring)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        if other.group is not self.group:
            raise ValueError("group ring elements over different groups")
        ring = RATIONAL if RATIONAL in (self.ring, other.ring) else INTEGER
        acc: Dict[int, Coefficient] = defaultdict(int)
        for a, ca in self.terms:
            for b, cb in other.terms:
                acc[self.group.mul(a, b)] += ca * cb
        return GroupRingElement.from_dict(self.group, acc, ring)

    def left_translate(self, g: int) -> "GroupRingElement":
        return GroupRingElement.from_dict(self.group, {self.group.mul(g, a): c for a, c in self.terms}, self.ring)

    def apply(self, hom: GroupHom) -> "GroupRingElement":
        """Push forward along a group homomorphism (linear extension)."""
        acc: Dict[int, Coefficient] = defaultdict(int)
        for g, c in self.terms:
            acc[hom(g)] += c
        return GroupRingElement.from_dict(hom.target, acc, self.ring)


@dataclass(frozen=True)
class TwistedClassSet:
    """Orbits of a group under alpha -> twist(gamma) * alpha * gamma^-1."""

    group: FiniteGroup
    twist: GroupHom
    classes: Tuple[Tuple[int, ...], ...]
    class_index: Tuple[int, ...]

    @property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def representative_of(self, g: int) -> int:
        return self.classes[self.class_index[g]][0]


def twisted_conjugacy_classes(pi: FiniteGroup, phi: GroupHom,
                              extra_moves: Sequence[Callable[[int], int]] = ()) -> TwistedClassSet:
    """
    Reidemeister classes of an endomorphism.

    Args:
        pi: the group
        phi: endomorphism pi -> pi
        extra_moves: further permutations of pi whose orbits are merged in (twisted conjugation
            by elements of a larger group containing pi as a normal subgroup)

    Returns:
        TwistedClassSet with classes ordered by their minimal element
    """
    if phi.source is not pi or phi.target is not pi:
        raise InputError("twisting map must be an endomorphism of the group")

    def twist_by(gamma: int) -> Callable[[int], int]:
        return lambda alpha: pi.mul(pi.mul(phi(gamma), alpha), pi.inv(gamma))

    moves = [twist_by(g) for g in pi.generator_indices] + list(extra_moves)
    orbits = find_orbits(moves, list(range(pi.order)), lambda move, alpha: move(alpha))
    classes = tuple(tuple(o) for o in orbits)
    index = [0] * pi.order
    for k, members in enumerate(classes):
        for g in members:
            index[g] = k
    return TwistedClassSet(pi, phi, classes, tuple(index))


@dataclass(frozen=True)
class ClassRingElement:
    """Element of the free module on the twisted classes, keyed by class representative."""

    classes: TwistedClassSet
    ring: str
    terms: Tuple[Tuple[int, Coefficient], ...]

    @classmethod
    def from_dict(cls, classes: TwistedClassSet, coeffs: Mapping[int, Coefficient],
                  ring: str = INTEGER) -> "ClassRingElement":
        reps = set(classes.representatives)
        stray = [k for k in coeffs if k not in reps]
        if stray:
            raise ValueError(f"{stray} are not class representatives")
        return cls(classes, ring, _pack(coeffs, ring))

    @classmethod
    def zero(cls, classes: TwistedClassSet, ring: str = INTEGER) -> "ClassRingElement":
        return cls(classes, ring, ())

    def as_dict(self) -> Dict[int, Coefficient]:
        return dict(self.terms)

    def coefficient(self, rep: int) -> Coefficient:
        return self.as_dict().get(rep, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> List[int]:
        """Representatives with non-zero coefficient (the essential classes)."""
        return [rep for rep, _ in self.terms]

    def __add__(self, other: "ClassRingElement") -> "ClassRingElement":
        if other.classes is not self.classes:
            raise ValueError("class ring elements over different class sets")
        ring = RATIONAL if RATIONAL in (self.ring, other.ring) else INTEGER
        acc: Dict[int, Coefficient] = defaultdict(int, self.terms)
        for k, c in other.terms:
            acc[k] += c
        return ClassRingElement.from_dict(self.classes, acc, ring)

    def scale(self, factor: Coefficient) -> "ClassRingElement":
        ring = RATIONAL if isinstance(factor, Fraction) else self.ring
        return ClassRingElement.from_dict(self.classes, {k: c * factor for k, c in self.terms}, ring)

    def restrict(self, keep: Iterable[int]) -> "ClassRingElement":
        kept = set(keep)
        return ClassRingElement(self.classes, self.ring, tuple((k, c) for k, c in self.terms if k in kept))


def trace_projection(r: GroupRingElement, embedding: GroupHom,
                     classes: TwistedClassSet) -> ClassRingElement:
    """
    Project Z[Aut] onto the twisted classes of the embedded subgroup.

    Coefficients of elements outside the image of `embedding` are discarded; the rest are summed
    per twisted class of their preimage.
    """
    if not embedding.is_injective():
        raise InputError("trace projection needs an injective embedding")
    if embedding.source is not classes.group:
        raise InputError("embedding source differs from the class set's group")
    preimage = {img: g for g, img in enumerate(embedding.images)}
    acc: Dict[int, Coefficient] = defaultdict(int)
    for a, c in r.terms:
        g = preimage.get(a)
        if g is not None:
            acc[classes.representative_of(g)] += c
    return ClassRingElement.from_dict(classes, acc, r.ring)


def augmentation(r: Union[GroupRingElement, ClassRingElement]) -> Coefficient:
    """Sum of all coefficients."""
    total: Coefficient = 0
    for _, c in r.terms:
        total += c
    return _normalize(total, r.ring) if r.ring == INTEGER else Fraction(total)
