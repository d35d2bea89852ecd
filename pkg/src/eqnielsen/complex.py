"""
Finite G-simplicial complexes and equivariant simplicial self-maps.

Simplices are sorted vertex tuples; their orientation is the sorted order and the boundary sign of
the face missing position j is (-1)**j. Fixed sets, singular sets and components are exposed as
`SubcomplexView`s of the parent complex.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InputError
from .groups import FiniteGroup, GroupHom, Subgroup, check_permutation, subgroup_conjugacy_classes
from .union_find import UnionFind

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


def simplex_key(s: Simplex) -> Tuple[int, Simplex]:
    return (len(s), s)


def faces(s: Simplex) -> List[Simplex]:
    """Codimension-one faces, face j omitting position j."""
    return [s[:j] + s[j + 1:] for j in range(len(s))] if len(s) > 1 else []


def close_under_faces(simplices: Iterable[Sequence[int]]) -> Tuple[Simplex, ...]:
    closed = set()
    for s in simplices:
        top = tuple(sorted(int(v) for v in s))
        if len(set(top)) != len(top) or not top:
            raise InputError(f"simplex {list(s)} must list distinct vertices")
        for k in range(1, len(top) + 1):
            closed.update(combinations(top, k))
    return tuple(sorted(closed, key=simplex_key))


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting `seq` (entries distinct)."""
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


class GComplex:
    """A finite simplicial complex with a simplicial action of a finite group."""

    def __init__(self, group: FiniteGroup, vertex_count: int, action: GroupHom,
                 simplices: Iterable[Sequence[int]]):
        if vertex_count < 1:
            raise InputError("complex needs at least one vertex")
        if action.source is not group or action.target.degree != vertex_count:
            raise InputError("action must be a homomorphism from the group to vertex permutations")
        self.group = group
        self.vertex_count = vertex_count
        self.action = action
        listed = [tuple(s) for s in simplices]
        stray = sorted({v for s in listed for v in s if not 0 <= int(v) < vertex_count})
        if stray:
            raise InputError(f"simplex vertices {stray} outside 0..{vertex_count - 1}")
        self.simplices: Tuple[Simplex, ...] = close_under_faces(
            listed + [(v,) for v in range(vertex_count)]
        )
        self._simplex_set: FrozenSet[Simplex] = frozenset(self.simplices)
        self._position: Dict[Simplex, int] = {s: i for i, s in enumerate(self.simplices)}
        self.dimension = max(len(s) for s in self.simplices) - 1
        self._isotropy: Dict[Simplex, Subgroup] = {}

        for g in group.generator_indices:
            for s in self.simplices:
                if self.act_simplex(g, s) not in self._simplex_set:
                    raise InputError(f"group element {g} maps simplex {list(s)} outside the complex")

    @classmethod
    def from_generator_action(cls, group: FiniteGroup, vertex_count: int,
                              generator_perms: Sequence[Sequence[int]],
                              simplices: Iterable[Sequence[int]]) -> "GComplex":
        perms = [check_permutation(p, vertex_count, "vertex action") for p in generator_perms]
        image_group = FiniteGroup(vertex_count, perms, name="vertex action")
        action = GroupHom.from_generators(group, image_group, [image_group.index(p) for p in perms])
        return cls(group, vertex_count, action, simplices)

    def __repr__(self) -> str:
        return f"<GComplex vertices={self.vertex_count} dim={self.dimension} |G|={self.group.order}>"

    # ---------- queries ----------

    def act(self, g: int, v: int) -> int:
        return self.action.target.elements[self.action(g)][v]

    def act_simplex(self, g: int, s: Simplex) -> Simplex:
        return tuple(sorted(self.act(g, v) for v in s))

    def contains(self, s: Sequence[int]) -> bool:
        return tuple(sorted(s)) in self._simplex_set

    def position(self, s: Simplex) -> int:
        return self._position[s]

    def of_dimension(self, p: int) -> List[Simplex]:
        return [s for s in self.simplices if len(s) == p + 1]

    def fixes_pointwise(self, g: int, s: Simplex) -> bool:
        return all(self.act(g, v) == v for v in s)

    def regularity_violation(self) -> Optional[Tuple[int, Simplex]]:
        """First (g, simplex) with g fixing the simplex setwise but not pointwise, if any."""
        for g in range(self.group.order):
            for s in self.simplices:
                if len(s) > 1 and self.act_simplex(g, s) == s and not self.fixes_pointwise(g, s):
                    return g, s
        return None

    def is_regular(self) -> bool:
        return self.regularity_violation() is None

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)


def isotropy(X: GComplex, simplex: Sequence[int]) -> Subgroup:
    """Pointwise stabilizer of a simplex (equal to the setwise one on regular complexes)."""
    s = tuple(sorted(simplex))
    if not X.contains(s):
        raise InputError(f"{list(simplex)} is not a simplex of the complex")
    cached = X._isotropy.get(s)
    if cached is None:
        cached = X.group.subgroup(g for g in range(X.group.order) if X.fixes_pointwise(g, s))
        X._isotropy[s] = cached
    return cached


@dataclass(frozen=True)
class SubcomplexView:
    """Face-closed subset of a GComplex, with the group elements known to act on it."""

    parent: GComplex
    simplices: Tuple[Simplex, ...]
    isotropy: Optional[Subgroup] = None
    acting: Tuple[int, ...] = (0,)
    _set: FrozenSet[Simplex] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ordered = tuple(sorted(set(self.simplices), key=simplex_key))
        object.__setattr__(self, "simplices", ordered)
        object.__setattr__(self, "_set", frozenset(ordered))
        for s in ordered:
            for face in faces(s):
                if face not in self._set:
                    raise ValueError(f"view is not face-closed: {face} missing below {s}")

    def __contains__(self, s: Simplex) -> bool:
        return s in self._set

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def is_empty(self) -> bool:
        return not self.simplices

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(s[0] for s in self.simplices if len(s) == 1)

    @property
    def edges(self) -> Tuple[Simplex, ...]:
        return tuple(s for s in self.simplices if len(s) == 2)

    @property
    def dimension(self) -> Optional[int]:
        """Largest simplex dimension; None stands for the empty set (dimension -infinity)."""
        return max(len(s) for s in self.simplices) - 1 if self.simplices else None

    def of_dimension(self, p: int) -> List[Simplex]:
        return [s for s in self.simplices if len(s) == p + 1]

    def restrict(self, keep: Iterable[Simplex]) -> "SubcomplexView":
        return SubcomplexView(self.parent, tuple(keep), self.isotropy, self.acting)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)


def whole_complex(X: GComplex) -> SubcomplexView:
    return SubcomplexView(X, X.simplices, X.group.trivial(), tuple(range(X.group.order)))


def fixed_subcomplex(X: GComplex, H: Subgroup) -> SubcomplexView:
    """X^H: simplices all of whose vertices are fixed by every element of H."""
    fixed_vertices = {v for v in range(X.vertex_count) if all(X.act(h, v) == v for h in H.members)}
    simplices = tuple(s for s in X.simplices if all(v in fixed_vertices for v in s))
    normalizer = X.group.normalizer(H)
    return SubcomplexView(X, simplices, H, normalizer.members)


def singular_subcomplex(XH: SubcomplexView) -> SubcomplexView:
    """X^{>H}: simplices of X^H whose isotropy strictly contains H."""
    if XH.isotropy is None:
        raise ValueError("singular subcomplex needs a view built by fixed_subcomplex")
    H = XH.isotropy
    simplices = tuple(s for s in XH.simplices if isotropy(XH.parent, s).order > H.order)
    return SubcomplexView(XH.parent, simplices, H, XH.acting)


@dataclass(frozen=True)
class ComponentOrbits:
    components: Tuple[SubcomplexView, ...]   # ordered by minimal vertex
    orbits: Tuple[Tuple[int, ...], ...]      # indices into components, ordered by first member

    def representatives(self) -> List[SubcomplexView]:
        return [self.components[o[0]] for o in self.orbits]


def components(S: SubcomplexView) -> ComponentOrbits:
    """Connected components (1-skeleton union-find) grouped into orbits of S.acting."""
    verts = S.vertices
    if not verts:
        return ComponentOrbits((), ())
    uf = UnionFind(verts)
    for a, b in S.edges:
        uf.union(a, b)
    blocks = uf.groups(sorted(verts))
    comp_of = {v: k for k, block in enumerate(blocks) for v in block}

    buckets: List[List[Simplex]] = [[] for _ in blocks]
    for s in S.simplices:
        buckets[comp_of[s[0]]].append(s)
    views = tuple(SubcomplexView(S.parent, tuple(b), S.isotropy, S.acting) for b in buckets)

    X = S.parent
    orbit_uf = UnionFind(range(len(blocks)))
    for g in S.acting:
        for k, block in enumerate(blocks):
            image = X.act(g, block[0])
            if image in comp_of:
                orbit_uf.union(k, comp_of[image])
    orbits = tuple(tuple(o) for o in orbit_uf.groups(range(len(blocks))))
    return ComponentOrbits(views, orbits)


def component_stabilizer(S: SubcomplexView, component: SubcomplexView) -> Tuple[int, ...]:
    """Elements of S.acting that map the component onto itself."""
    base = component.vertices[0]
    verts = set(component.vertices)
    return tuple(g for g in S.acting if S.parent.act(g, base) in verts)


@dataclass(frozen=True)
class OrbitTypeComponent:
    """One isomorphism class of the fundamental category, before pi1 is computed."""

    subgroup: Subgroup
    fixed: SubcomplexView
    component: SubcomplexView
    singular: SubcomplexView
    orbit_size: int


def orbit_type_components(X: GComplex) -> List[OrbitTypeComponent]:
    """
    Every pair ((H), WH-orbit of components of X^H), in a deterministic order:
    subgroup classes by order then members, components by minimal vertex.
    """
    out: List[OrbitTypeComponent] = []
    for H in subgroup_conjugacy_classes(X.group):
        XH = fixed_subcomplex(X, H)
        if XH.is_empty:
            continue
        sing = singular_subcomplex(XH)
        comps = components(XH)
        for orbit in comps.orbits:
            comp = comps.components[orbit[0]]
            comp_sing = comp.restrict(s for s in sing.simplices if s in comp)
            out.append(OrbitTypeComponent(H, XH, comp, comp_sing, len(orbit)))
    return out


@dataclass(frozen=True)
class GapRow:
    dimension: Optional[int]
    singular_dimension: Optional[int]
    dimension_ok: bool
    codimension_ok: bool

    @property
    def holds(self) -> bool:
        return self.dimension_ok and self.codimension_ok

    def describe(self) -> str:
        if self.holds:
            return "ok"
        problems = []
        if not self.dimension_ok:
            problems.append(f"dim {self.dimension} < 3")
        if not self.codimension_ok:
            problems.append(f"codimension {self.dimension - self.singular_dimension} < 2")
        return "; ".join(problems)


@dataclass(frozen=True)
class GapReport:
    rows: Tuple[GapRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)


def gap_row(component: SubcomplexView, singular: SubcomplexView) -> GapRow:
    dim, sdim = component.dimension, singular.dimension
    dim_ok = dim is not None and dim >= 3
    codim_ok = sdim is None or (dim is not None and dim - sdim >= 2)
    return GapRow(dim, sdim, dim_ok, codim_ok)


def check_gap_hypotheses(X: GComplex) -> GapReport:
    """Standard gap hypotheses per object, in object order."""
    return GapReport(tuple(gap_row(o.component, o.singular) for o in orbit_type_components(X)))


# ---------- maps ----------

@dataclass(frozen=True)
class GSimplicialMap:
    """
    Equivariant simplicial self-map.

    Either a vertex map X -> X (`vertex_images`) or, for maps of higher degree, a vertex map
    Sd X -> X given on barycentres (`subdivision_images`, keyed by simplices of X).
    """

    complex: GComplex
    vertex_images: Tuple[int, ...] = ()
    subdivision_images: Optional[Mapping[Simplex, int]] = None

    @property
    def subdivided(self) -> bool:
        return self.subdivision_images is not None

    def __call__(self, v: int) -> int:
        return self.vertex_images[v]

    def image(self, s: Simplex) -> Tuple[int, ...]:
        """Vertex images in the order of s (plain maps only)."""
        return tuple(self.vertex_images[v] for v in s)

    def barycentre_image(self, s: Simplex) -> int:
        return self.subdivision_images[s]

    @classmethod
    def identity(cls, X: GComplex) -> "GSimplicialMap":
        return cls(X, tuple(range(X.vertex_count)))


@dataclass(frozen=True)
class MapCheck:
    ok: bool
    element: Optional[int] = None
    simplex: Optional[Tuple[int, ...]] = None
    reason: str = ""


@lru_cache(maxsize=None)
def _flags(s: Simplex) -> Tuple[Tuple[Simplex, ...], ...]:
    """All chains of faces ending at s, listed smallest face first."""
    out = [(s,)]
    for k in range(1, len(s)):
        for face in combinations(s, k):
            for chain in _flags(face):
                out.append(chain + (s,))
    return tuple(out)


def check_equivariance_and_simpliciality(f: GSimplicialMap) -> MapCheck:
    """Exhaustive check; reports the first offending (g, simplex)."""
    X = f.complex
    if f.subdivided:
        images = f.subdivision_images
        missing = [s for s in X.simplices if s not in images]
        if missing:
            return MapCheck(False, None, missing[0], "no barycentre image")
        for s in X.simplices:
            if not 0 <= images[s] < X.vertex_count:
                return MapCheck(False, None, s, "image vertex out of range")
        for s in X.simplices:
            for chain in _flags(s):
                if len(chain) == len(s) and not X.contains(set(images[c] for c in chain)):
                    return MapCheck(False, None, s, "a flag of the subdivision maps to a non-simplex")
        for g in X.group.generator_indices:
            for s in X.simplices:
                if images[X.act_simplex(g, s)] != X.act(g, images[s]):
                    return MapCheck(False, g, s, "not equivariant")
        return MapCheck(True)

    if len(f.vertex_images) != X.vertex_count:
        return MapCheck(False, None, None, f"map needs {X.vertex_count} vertex images")
    for v, w in enumerate(f.vertex_images):
        if not 0 <= w < X.vertex_count:
            return MapCheck(False, None, (v,), "image vertex out of range")
    for s in X.simplices:
        if not X.contains(set(f.image(s))):
            return MapCheck(False, None, s, "image is not a simplex")
    for g in X.group.generator_indices:
        for v in range(X.vertex_count):
            if f(X.act(g, v)) != X.act(g, f(v)):
                return MapCheck(False, g, (v,), "not equivariant")
    return MapCheck(True)


def validate_map(f: GSimplicialMap) -> GSimplicialMap:
    check = check_equivariance_and_simpliciality(f)
    if not check.ok:
        where = f" at simplex {list(check.simplex)}" if check.simplex is not None else ""
        by = f" under group element {check.element}" if check.element is not None else ""
        raise InputError(f"map is invalid: {check.reason}{where}{by}; subdivide the complex or fix the map")
    return f


def are_contiguous(f0: GSimplicialMap, f1: GSimplicialMap) -> bool:
    """f0(s) and f1(s) span a common simplex for every s (plain maps on the same complex)."""
    if f0.complex is not f1.complex or f0.subdivided or f1.subdivided:
        return False
    X = f0.complex
    return all(X.contains(set(f0.image(s)) | set(f1.image(s))) for s in X.simplices)


# ---------- barycentric subdivision ----------

@dataclass(frozen=True)
class Subdivision:
    complex: GComplex
    barycentres: Tuple[Simplex, ...]   # Sd vertex -> simplex of the original complex


def barycentric_subdivision(X: GComplex) -> Subdivision:
    """First barycentric subdivision with the induced action; vertices follow X.simplices order."""
    position = {s: i for i, s in enumerate(X.simplices)}
    top = set()
    for s in X.simplices:
        for chain in _flags(s):
            top.add(tuple(position[c] for c in chain))
    perms = [tuple(position[X.act_simplex(g, s)] for s in X.simplices) for g in X.group.generator_indices]
    sd = GComplex.from_generator_action(X.group, len(X.simplices), perms, sorted(top))
    logger.info(f"Barycentric subdivision: {X.vertex_count} -> {sd.vertex_count} vertices")
    return Subdivision(sd, X.simplices)


def subdivide_map(f: GSimplicialMap, sub: Subdivision) -> GSimplicialMap:
    """Induced map [s] -> [f(s)] on the subdivision (plain maps only)."""
    if f.subdivided:
        raise InputError("a map already given on the subdivision cannot be subdivided again")
    position = {s: i for i, s in enumerate(sub.barycentres)}
    images = tuple(position[tuple(sorted(set(f.image(s))))] for s in sub.barycentres)
    return GSimplicialMap(sub.complex, images)


def subdivision_chain(s: Simplex) -> List[Tuple[int, Tuple[Simplex, ...]]]:
    """
    sd(s) = s^ * sd(boundary s) as signed ordered flags, largest face first.

    Each term is (sign, (s, s_1, ..., vertex)) and stands for the oriented simplex of Sd X on the
    barycentres in that order.
    """
    if len(s) == 1:
        return [(1, (s,))]
    out = []
    for j, face in enumerate(faces(s)):
        for sign, chain in subdivision_chain(face):
            out.append(((-1) ** j * sign, (s,) + chain))
    return out
