"""
Finite permutation groups, subgroups, homomorphisms and Weyl groups.

Elements are fully enumerated and kept in lexicographic order of their image tuples, so the
identity is always element 0 and every index is reproducible across runs. Products follow the
composition convention (a * b)(i) = a(b(i)): apply b first.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """a * b, i.e. apply b then a."""
    return tuple(a[i] for i in b)


def invert(a: Sequence[int]) -> Perm:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def check_permutation(p: Sequence[int], degree: int, what: str = "permutation") -> Perm:
    perm = tuple(int(x) for x in p)
    if len(perm) != degree or sorted(perm) != list(range(degree)):
        raise InputError(f"{what} {list(p)} is not a permutation of 0..{degree - 1}")
    return perm


class FiniteGroup:
    """A permutation group on `degree` points with every element listed."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], name: str = ""):
        if degree < 1:
            raise InputError(f"group degree must be positive, got {degree}")
        self.degree = degree
        self.name = name
        self.generators: Tuple[Perm, ...] = tuple(
            check_permutation(g, degree, "generator") for g in generators
        )

        identity = tuple(range(degree))
        seen = {identity}
        frontier = [identity]
        while frontier:
            fresh = []
            for e in frontier:
                for s in self.generators:
                    p = compose(s, e)
                    if p not in seen:
                        seen.add(p)
                        fresh.append(p)
            frontier = fresh

        self.elements: Tuple[Perm, ...] = tuple(sorted(seen))
        self._index: Dict[Perm, int] = {p: i for i, p in enumerate(self.elements)}
        self._array = np.array(self.elements, dtype=np.int64).reshape(len(self.elements), degree)
        self._rows: Dict[int, np.ndarray] = {}
        self._inverse: Optional[List[int]] = None
        self.generator_indices: Tuple[int, ...] = tuple(self._index[g] for g in self.generators)

    # ---------- basic arithmetic ----------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<FiniteGroup {label}order={self.order} degree={self.degree}>"

    def index(self, perm: Sequence[int]) -> int:
        try:
            return self._index[tuple(perm)]
        except KeyError:
            raise InputError(f"{list(perm)} is not an element of {self!r}")

    def element(self, i: int) -> Perm:
        return self.elements[i]

    def _row(self, i: int) -> np.ndarray:
        row = self._rows.get(i)
        if row is None:
            products = self._array[i][self._array]
            row = np.fromiter((self._index[tuple(r)] for r in products.tolist()),
                              dtype=np.int64, count=self.order)
            self._rows[i] = row
        return row

    def mul(self, a: int, b: int) -> int:
        return int(self._row(a)[b])

    def inv(self, a: int) -> int:
        if self._inverse is None:
            self._inverse = [self._index[invert(p)] for p in self.elements]
        return self._inverse[a]

    def product(self, items: Iterable[int]) -> int:
        acc = 0
        for x in items:
            acc = self.mul(acc, x)
        return acc

    def conjugate(self, g: int, a: int) -> int:
        """g a g^-1."""
        return self.mul(self.mul(g, a), self.inv(g))

    def act(self, g: int, point: int) -> int:
        return self.elements[g][point]

    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    # ---------- subgroups ----------

    def closure(self, gens: Iterable[int]) -> FrozenSet[int]:
        """Subgroup generated by the given element indices."""
        gens = [g for g in set(gens) if g != 0]
        seen = {0}
        frontier = [0]
        while frontier:
            fresh = []
            for e in frontier:
                for s in gens:
                    p = self.mul(s, e)
                    if p not in seen:
                        seen.add(p)
                        fresh.append(p)
            frontier = fresh
        return frozenset(seen)

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(members))))

    def conjugate_subgroup(self, g: int, members: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.conjugate(g, s) for s in members)

    def normalizer(self, H: "Subgroup") -> "Subgroup":
        members = frozenset(H.members)
        return Subgroup(self, tuple(g for g in range(self.order)
                                    if self.conjugate_subgroup(g, members) == members))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: Tuple[int, ...]
    _member_set: FrozenSet[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_member_set", frozenset(self.members))
        if tuple(sorted(self._member_set)) != self.members:
            raise ValueError("subgroup members must be sorted and distinct")
        if 0 not in self._member_set:
            raise ValueError("subgroup must contain the identity")
        g = self.parent
        for a in self.members:
            if g.inv(a) not in self._member_set:
                raise ValueError(f"subgroup not closed under inverse at element {a}")
            for b in self.members:
                if g.mul(a, b) not in self._member_set:
                    raise ValueError(f"subgroup not closed under product {a}*{b}")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    def issubset(self, other: "Subgroup") -> bool:
        return self._member_set <= other._member_set

    def as_set(self) -> FrozenSet[int]:
        return self._member_set

    def conjugate_by(self, g: int) -> "Subgroup":
        return self.parent.subgroup(self.parent.conjugate_subgroup(g, self.members))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by the image index of every source element."""

    source: FiniteGroup
    target: FiniteGroup
    images: Tuple[int, ...]

    def __post_init__(self):
        src, tgt = self.source, self.target
        if len(self.images) != src.order:
            raise InputError(f"homomorphism needs {src.order} images, got {len(self.images)}")
        if self.images[0] != 0:
            raise InputError("homomorphism must send the identity to the identity")
        for a in range(src.order):
            ia = self.images[a]
            for b in range(src.order):
                if self.images[src.mul(a, b)] != tgt.mul(ia, self.images[b]):
                    raise InputError(f"map is not multiplicative at element pair ({a}, {b})")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def kernel(self) -> Subgroup:
        return self.source.subgroup(g for g, img in enumerate(self.images) if img == 0)

    @classmethod
    def from_generators(cls, source: FiniteGroup, target: FiniteGroup,
                        generator_images: Sequence[int]) -> "GroupHom":
        """Extend images of source.generators multiplicatively; reject inconsistent data."""
        if len(generator_images) != len(source.generators):
            raise InputError(
                f"expected {len(source.generators)} generator images, got {len(generator_images)}"
            )
        images: Dict[int, int] = {0: 0}
        frontier = [0]
        while frontier:
            fresh = []
            for e in frontier:
                for s, img in zip(source.generator_indices, generator_images):
                    p = source.mul(s, e)
                    value = target.mul(img, images[e])
                    if p not in images:
                        images[p] = value
                        fresh.append(p)
                    elif images[p] != value:
                        raise InputError("generator images do not define a homomorphism")
            frontier = fresh
        return cls(source, target, tuple(images[g] for g in range(source.order)))

    @classmethod
    def identity(cls, group: FiniteGroup) -> "GroupHom":
        return cls(group, group, tuple(range(group.order)))


def subgroup_conjugacy_classes(G: FiniteGroup) -> List[Subgroup]:
    """
    One representative per conjugacy class of subgroups of G.

    Every subgroup is a join of cyclic subgroups, so the lattice is reached by repeatedly joining
    known subgroups with cyclic ones. The representative of a class is the conjugate with the
    smallest sorted member tuple; classes are sorted by order, then by that tuple.
    """
    cyclic: Dict[FrozenSet[int], int] = {}
    for g in range(G.order):
        cyclic.setdefault(G.closure([g]), g)

    generators: Dict[FrozenSet[int], Tuple[int, ...]] = {c: (g,) for c, g in cyclic.items()}
    frontier = list(generators)
    while frontier:
        fresh = []
        for A in frontier:
            for C, c in cyclic.items():
                if C <= A:
                    continue
                gens = generators[A] + (c,)
                J = G.closure(gens)
                if J not in generators:
                    generators[J] = gens
                    fresh.append(J)
        frontier = fresh

    remaining = set(generators)
    reps: List[Tuple[int, ...]] = []
    while remaining:
        S = min(remaining, key=lambda s: (len(s), tuple(sorted(s))))
        orbit = {G.conjugate_subgroup(g, S) for g in range(G.order)}
        remaining -= orbit
        reps.append(min(tuple(sorted(o)) for o in orbit))

    reps.sort(key=lambda t: (len(t), t))
    logger.debug(f"{G!r}: {len(generators)} subgroups in {len(reps)} conjugacy classes")
    return [Subgroup(G, r) for r in reps]


def subconjugating_elements(G: FiniteGroup, H: Subgroup, K: Subgroup) -> List[int]:
    """All g with g^-1 H g <= K, in element order."""
    K_set = K.as_set()
    return [g for g in range(G.order)
            if all(G.conjugate(G.inv(g), h) in K_set for h in H.members)]


@dataclass(frozen=True)
class WeylGroup:
    """WH = N_G(H)/H realised as a permutation group on the left cosets of H in N_G(H)."""

    group: FiniteGroup
    subgroup: Subgroup
    normalizer: Subgroup
    quotient: Dict[int, int]          # element of N_G(H) -> element of WH
    lifts: Tuple[int, ...]            # element of WH -> smallest representative in N_G(H)

    def project(self, g: int) -> int:
        return self.quotient[g]


def weyl_group(G: FiniteGroup, H: Subgroup) -> WeylGroup:
    N = G.normalizer(H)
    coset_of: Dict[int, int] = {}
    reps: List[int] = []
    for n in N.members:
        if n in coset_of:
            continue
        cid = len(reps)
        reps.append(n)
        for h in H.members:
            coset_of[G.mul(n, h)] = cid

    def coset_perm(n: int) -> Perm:
        return tuple(coset_of[G.mul(n, m)] for m in reps)

    # greedy generating set of N/H
    gens: List[Perm] = []
    reached = {tuple(range(len(reps)))}
    for n in reps:
        p = coset_perm(n)
        if p in reached:
            continue
        gens.append(p)
        reached = set(FiniteGroup(len(reps), gens).elements)

    W = FiniteGroup(len(reps), gens, name="WH")
    quotient = {n: W.index(coset_perm(n)) for n in N.members}
    lifts = [None] * W.order
    for n in N.members:
        w = quotient[n]
        if lifts[w] is None:
            lifts[w] = n
    return WeylGroup(W, H, N, quotient, tuple(lifts))
