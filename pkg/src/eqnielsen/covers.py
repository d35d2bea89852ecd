"""
Universal covers of fixed-set components, lifts of maps and of the WH_x action, and the free
chain complexes over ZAut(x) that the refined traces are taken on.

A cover vertex is a pair (v, a) with a in pi1; the edge u-v of the base lifts to
(u, a) - (v, a * g(u, v)) where g is the edge value of the object's EdgePathGroup. A cover cell is
(base simplex, sheet of its minimal vertex). The deck transformation of gamma sends (v, a) to
(v, gamma * a).
"""

import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Union

from .complex import GComplex, GSimplicialMap, Simplex, faces, permutation_sign, subdivision_chain
from .errors import InternalConsistencyError
from .fundamental import AutExtension, FundObject, aut_extension, basepoint_image
from .group_ring import GroupRingElement, TwistedClassSet, twisted_conjugacy_classes
from .groups import FiniteGroup, GroupHom

logger = logging.getLogger(__name__)

Cell = Tuple[Simplex, int]
Chain = Dict[Cell, int]

RELATIVE = "relative"
ABSOLUTE = "absolute"


class UniversalCover:
    """The |pi1|-sheeted universal cover of an object's component."""

    def __init__(self, obj: FundObject):
        self.obj = obj
        self.pi1 = obj.pi1
        self.sheets = obj.pi1.order
        self.base_vertices: Tuple[int, ...] = obj.component.vertices
        self._local = {v: i for i, v in enumerate(self.base_vertices)}
        self.vertex_count = len(self.base_vertices) * self.sheets

        self.neighbors: Dict[int, List[int]] = {v: [] for v in self.base_vertices}
        for u, v in obj.component.edges:
            self.neighbors[u].append(v)
            self.neighbors[v].append(u)

    def __repr__(self) -> str:
        return f"<UniversalCover object={self.obj.index} sheets={self.sheets} vertices={self.vertex_count}>"

    def vertex_id(self, v: int, sheet: int) -> int:
        return self._local[v] * self.sheets + sheet

    def vertex(self, cid: int) -> Tuple[int, int]:
        local, sheet = divmod(cid, self.sheets)
        return self.base_vertices[local], sheet

    def lift_vertices(self, s: Simplex, sheet: int) -> Tuple[int, ...]:
        """Cover vertices of the cell (s, sheet), in the order of s."""
        G, v0 = self.pi1.group, s[0]
        return tuple(self.vertex_id(v, G.mul(sheet, self.pi1.edge_value(v0, v))) for v in s)

    def cell_of(self, ids: Sequence[int]) -> Optional[Tuple[int, Cell]]:
        """
        Oriented cell spanned by cover vertices in the given order.

        Returns None for repeated vertices, otherwise (sign, cell) with sign the parity of the
        permutation sorting the base vertices.
        """
        if len(set(ids)) < len(ids):
            return None
        points = [self.vertex(c) for c in ids]
        bases = [v for v, _ in points]
        if len(set(bases)) < len(bases):
            raise InternalConsistencyError(f"cover vertices {list(ids)} share a base vertex")
        s = tuple(sorted(bases))
        sheet = points[bases.index(s[0])][1]
        if s not in self.obj.component or set(self.lift_vertices(s, sheet)) != set(ids):
            raise InternalConsistencyError(f"cover vertices {list(ids)} do not span a cover cell")
        return permutation_sign(bases), (s, sheet)

    def boundary(self, cell: Cell) -> List[Tuple[int, Cell]]:
        s, sheet = cell
        out = []
        for j, face in enumerate(faces(s)):
            face_sheet = self.pi1.group.mul(sheet, self.pi1.edge_value(s[0], face[0])) if j == 0 else sheet
            out.append(((-1) ** j, (face, face_sheet)))
        return out

    def cells(self, p: int, simplices: Optional[Sequence[Simplex]] = None) -> List[Cell]:
        base = simplices if simplices is not None else self.obj.component.of_dimension(p)
        return [(s, a) for s in base if len(s) == p + 1 for a in range(self.sheets)]

    def deck_perm(self, gamma: int) -> Tuple[int, ...]:
        G = self.pi1.group
        return tuple(self.vertex_id(v, G.mul(gamma, a)) for v, a in map(self.vertex, range(self.vertex_count)))

    def euler_characteristic(self) -> int:
        return self.sheets * self.obj.component.euler_characteristic()

    def as_complex(self) -> GComplex:
        """The cover as a plain complex with trivial group (for simple-connectivity checks)."""
        tops = [self.lift_vertices(s, a) for s in self.obj.component.simplices for a in range(self.sheets)]
        trivial = FiniteGroup(1, [], name="trivial")
        return GComplex.from_generator_action(trivial, self.vertex_count, [], tops)


def build_cover(obj: FundObject) -> UniversalCover:
    cover = UniversalCover(obj)
    logger.debug(f"Built {cover!r}")
    return cover


# ---------- lifting ----------

@dataclass(frozen=True, eq=False)
class CoverLift:
    """A lift into the cover, node (base vertex or base simplex, sheet) -> cover vertex id."""

    cover: UniversalCover
    subdivided: bool
    images: Dict[Tuple[Hashable, int], int]

    def vertex_image(self, cid: int) -> int:
        return self.images[self.cover.vertex(cid)]

    def node_image(self, node: Hashable, sheet: int) -> int:
        return self.images[(node, sheet)]


def _adjacency(cover: UniversalCover, subdivided: bool) -> Dict[Hashable, List[Tuple[Hashable, int]]]:
    """Base nodes with their neighbours and the edge value leading there."""
    pi = cover.pi1
    G = pi.group
    if not subdivided:
        return {u: [(v, pi.edge_value(u, v)) for v in cover.neighbors[u]] for u in cover.base_vertices}
    adj: Dict[Hashable, List[Tuple[Hashable, int]]] = {s: [] for s in cover.obj.component.simplices}
    for s in cover.obj.component.simplices:
        for face in faces(s):
            value = pi.edge_value(s[0], face[0])
            adj[s].append((face, value))
            adj[face].append((s, G.inv(value)))
    return adj


def lift_into_cover(cover: UniversalCover, image_of: Callable[[Hashable], int], subdivided: bool,
                    anchor_sheet: int = 0) -> CoverLift:
    """
    Lift a simplicial map into the component, sending the basepoint node on sheet e to
    (image of the basepoint, anchor_sheet).

    Raises:
        InternalConsistencyError: the transported sheets disagree (map does not lift)
    """
    pi = cover.pi1
    G = pi.group
    adj = _adjacency(cover, subdivided)
    start = (pi.basepoint,) if subdivided else pi.basepoint
    images = {(start, 0): cover.vertex_id(image_of(start), anchor_sheet)}
    queue = deque([(start, 0)])
    while queue:
        node, a = queue.popleft()
        w, b = cover.vertex(images[(node, a)])
        for nxt, value in adj[node]:
            key = (nxt, G.mul(a, value))
            w_next = image_of(nxt)
            target = cover.vertex_id(w_next, G.mul(b, pi.edge_value(w, w_next)))
            seen = images.get(key)
            if seen is None:
                images[key] = target
                queue.append(key)
            elif seen != target:
                raise InternalConsistencyError(f"lift is inconsistent at node {key}")
    if len(images) != len(adj) * cover.sheets:
        raise InternalConsistencyError("lift did not reach every cover node")
    return CoverLift(cover, subdivided, images)


def lift_group_action(obj: FundObject, cover: UniversalCover) -> Dict[int, Tuple[int, ...]]:
    """Each WH_x element's chosen lift, as a permutation of cover vertices."""
    X = obj.complex
    out = {}
    for w in obj.weyl_stabilizer.members:
        n = obj.section(w)
        lift = lift_into_cover(cover, lambda v, n=n: X.act(n, v), subdivided=False,
                               anchor_sheet=0)
        out[w] = tuple(lift.vertex_image(c) for c in range(cover.vertex_count))
    return out


def act_cell(ext: AutExtension, alpha: int, cell: Cell) -> Tuple[int, Cell]:
    cover = ext.cover
    ids = [ext.act_vertex(alpha, c) for c in cover.lift_vertices(*cell)]
    return cover.cell_of(ids)


# ---------- the map at one object ----------

@dataclass(frozen=True)
class NotApplicable:
    """f moves the object's component off itself; the summand is continued by 0."""

    object_index: int
    reason: str = "component not preserved"


@dataclass(frozen=True, eq=False)
class LiftedMap:
    """f at one object: its lift, the induced endomorphisms and the twisted class set."""

    obj: FundObject
    f: GSimplicialMap
    extension: AutExtension
    lift: CoverLift
    phi: GroupHom          # pi1 -> pi1
    phi_aut: GroupHom      # Aut(x) -> Aut(x)
    classes: TwistedClassSet

    @property
    def cover(self) -> UniversalCover:
        return self.extension.cover

    def image_chain(self, cell: Cell) -> Chain:
        """f_# (composed with subdivision for maps given on Sd X) applied to a cover cell."""
        cover = self.cover
        out: Chain = defaultdict(int)
        s, sheet = cell
        if not self.lift.subdivided:
            ids = [self.lift.vertex_image(c) for c in cover.lift_vertices(s, sheet)]
            located = cover.cell_of(ids)
            if located is not None:
                out[located[1]] += located[0]
            return dict(out)
        G, pi = cover.pi1.group, cover.pi1
        for sign, flag in subdivision_chain(s):
            ids = [self.lift.node_image(t, G.mul(sheet, pi.edge_value(s[0], t[0]))) for t in flag]
            located = cover.cell_of(ids)
            if located is not None:
                out[located[1]] += sign * located[0]
        return {c: k for c, k in out.items() if k}


def equivariant_classes(ext: AutExtension, phi: GroupHom, phi_aut: GroupHom) -> TwistedClassSet:
    """pi1 modulo alpha ~ phi(gamma) alpha gamma^-1 for gamma ranging over all of Aut(x)."""
    A = ext.group

    def move(gamma: int) -> Callable[[int], int]:
        return lambda alpha: ext.deck_part(A.mul(A.mul(phi_aut(gamma), ext.deck(alpha)), A.inv(gamma)))

    extra = [move(g) for g in A.generator_indices if ext.deck_part(g) is None]
    return twisted_conjugacy_classes(phi.source, phi, extra)


def map_at_object(obj: FundObject, f: GSimplicialMap,
                  ext: Optional[AutExtension] = None) -> Union[LiftedMap, NotApplicable]:
    x0 = obj.basepoint
    if not obj.contains_vertex(basepoint_image(f, x0)):
        return NotApplicable(obj.index)
    ext = ext or aut_extension(obj)
    cover = ext.cover
    image_of = f.barycentre_image if f.subdivided else f
    lift = lift_into_cover(cover, image_of, subdivided=f.subdivided)

    def start(cid: int) -> Tuple[Hashable, int]:
        v, a = cover.vertex(cid)
        return ((v,), a) if f.subdivided else (v, a)

    pi = obj.pi1.group
    phi = GroupHom(pi, pi, tuple(cover.vertex(lift.images[start(cover.vertex_id(x0, g))])[1]
                                 for g in range(pi.order)))

    A = ext.group
    base_cid = cover.vertex_id(x0, 0)
    anchor = cover.vertex_id(basepoint_image(f, x0), 0)
    images = []
    for alpha in range(A.order):
        target = lift.images[start(ext.act_vertex(alpha, base_cid))]
        s = ext.section[ext.projection(alpha)]
        via = ext.act_vertex(s, anchor)
        (vt, at), (vs, as_) = cover.vertex(target), cover.vertex(via)
        if vt != vs:
            raise InternalConsistencyError(f"lifted map is not equivariant at {obj.label}")
        gamma = pi.mul(at, pi.inv(as_))
        images.append(A.mul(ext.deck(gamma), s))
    phi_aut = GroupHom(A, A, tuple(images))
    classes = equivariant_classes(ext, phi, phi_aut)
    return LiftedMap(obj, f, ext, lift, phi, phi_aut, classes)


# ---------- chain complexes over ZAut(x) ----------

@dataclass(frozen=True, eq=False)
class EquivChainComplex:
    extension: AutExtension
    mode: str
    basis: Dict[int, Tuple[Simplex, ...]]                  # p -> orbit representatives, on sheet e
    stabilizers: Dict[int, Tuple[Tuple[int, ...], ...]]    # p -> Aut(x) stabilizer of each basis cell
    boundary: Dict[int, List[List[GroupRingElement]]]      # p -> rows basis[p], columns basis[p-1]
    locator: Dict[Simplex, Tuple[int, int, int, int]]      # simplex -> (position, alpha0, sign, sheet)

    @property
    def dimension(self) -> int:
        return max(self.basis) if self.basis else -1

    def rank(self, p: int) -> int:
        return len(self.basis.get(p, ()))

    def locate(self, cell: Cell) -> Optional[Tuple[int, int, int]]:
        """(position, alpha, sign) with alpha . basis cell = sign * cell; None outside the basis span."""
        entry = self.locator.get(cell[0])
        if entry is None:
            return None
        position, alpha0, sign, sheet0 = entry
        ext = self.extension
        pi = ext.cover.pi1.group
        gamma = pi.mul(cell[1], pi.inv(sheet0))
        return position, ext.group.mul(ext.deck(gamma), alpha0), sign

    def express(self, chain: Chain, p: int) -> List[GroupRingElement]:
        """Coordinates of a cover chain of dimension p in the free basis."""
        acc: List[Dict[int, int]] = [defaultdict(int) for _ in self.basis.get(p, ())]
        for cell, coeff in chain.items():
            located = self.locate(cell)
            if located is None:
                continue
            j, alpha, sign = located
            acc[j][alpha] += sign * coeff
        A = self.extension.group
        return [GroupRingElement.from_dict(A, a) for a in acc]

    def reduce(self, p: int, k: int, r: GroupRingElement) -> Chain:
        """Image of r * (basis cell k of dimension p) as an honest cover chain."""
        out: Chain = defaultdict(int)
        cell = (self.basis[p][k], 0)
        for alpha, coeff in r.terms:
            sign, image = act_cell(self.extension, alpha, cell)
            out[image] += sign * coeff
        return {c: v for c, v in out.items() if v}


def relative_chain_complex(obj: FundObject, ext: AutExtension, mode: str = RELATIVE) -> EquivChainComplex:
    """
    Cellular chains of the cover of X^H(x) (relative to the part over X^{>H}(x) in relative mode)
    as a free ZAut(x)-module on WH_x-orbit representatives of base simplices.
    """
    if mode not in (RELATIVE, ABSOLUTE):
        raise ValueError(f"unknown chain complex mode {mode!r}")
    X = obj.complex
    cover = ext.cover
    pi = cover.pi1.group
    singular = set(obj.singular.simplices) if mode == RELATIVE else set()
    members = obj.weyl_stabilizer.members

    basis: Dict[int, List[Simplex]] = defaultdict(list)
    stabilizers: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    locator: Dict[Simplex, Tuple[int, int, int, int]] = {}
    for s in obj.component.simplices:
        if s in singular or s in locator:
            continue
        p = len(s) - 1
        position = len(basis[p])
        basis[p].append(s)
        stab = []
        for w in members:
            image = X.act_simplex(obj.section(w), s)
            alpha0 = ext.section[w]
            sign, (t, sheet) = act_cell(ext, alpha0, (s, 0))
            if t != image:
                raise InternalConsistencyError(f"lifted WH_x action disagrees with the base at {s}")
            if t == s:
                if sign != 1:
                    raise InternalConsistencyError(f"stabilizer of {s} reverses its orientation")
                stab.append(ext.group.mul(ext.deck(pi.inv(sheet)), alpha0))
            if t not in locator:
                locator[t] = (position, alpha0, sign, sheet)
        if mode == RELATIVE and len(stab) > 1:
            raise InternalConsistencyError(f"WH_x does not act freely on the relative cell {s}")
        stabilizers[p].append(tuple(sorted(stab)))

    boundary: Dict[int, List[List[GroupRingElement]]] = {}
    cx = EquivChainComplex(ext, mode, {p: tuple(b) for p, b in basis.items()},
                           {p: tuple(st) for p, st in stabilizers.items()}, boundary, locator)
    for p in sorted(basis):
        if p == 0:
            continue
        boundary[p] = [cx.express(_collect(cover.boundary((s, 0))), p - 1) for s in basis[p]]
    logger.debug(f"{mode} chain complex at {obj.label}: ranks {[cx.rank(p) for p in range(cx.dimension + 1)]}")
    return cx


def _collect(terms: Sequence[Tuple[int, Cell]]) -> Chain:
    out: Chain = defaultdict(int)
    for sign, cell in terms:
        out[cell] += sign
    return out


@dataclass(frozen=True, eq=False)
class EquivChainMap:
    complex: EquivChainComplex
    lifted: LiftedMap
    matrices: Dict[int, List[List[GroupRingElement]]]   # p -> rows = images of basis[p]


def chain_map(lifted: LiftedMap, cx: EquivChainComplex) -> EquivChainMap:
    matrices = {
        p: [cx.express(lifted.image_chain((s, 0)), p) for s in reps]
        for p, reps in cx.basis.items()
    }
    return EquivChainMap(cx, lifted, matrices)


def lift_map(obj: FundObject, f: GSimplicialMap, ext: Optional[AutExtension] = None,
             mode: str = RELATIVE) -> Union[EquivChainMap, NotApplicable]:
    lifted = map_at_object(obj, f, ext)
    if isinstance(lifted, NotApplicable):
        return lifted
    return chain_map(lifted, relative_chain_complex(obj, lifted.extension, mode))


def _matrix_product_entry(left: List[GroupRingElement], right_column: List[GroupRingElement],
                          group: FiniteGroup) -> GroupRingElement:
    acc = GroupRingElement.zero(group)
    for a, b in zip(left, right_column):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


def check_boundary_squared(cx: EquivChainComplex) -> None:
    """Raise unless every composite boundary vanishes on the cover."""
    A = cx.extension.group
    for p in sorted(cx.boundary):
        if p < 2 or p - 1 not in cx.boundary:
            continue
        outer, inner = cx.boundary[p], cx.boundary[p - 1]
        for i, row in enumerate(outer):
            for k in range(cx.rank(p - 2)):
                entry = _matrix_product_entry(row, [inner[j][k] for j in range(len(inner))], A)
                if cx.reduce(p - 2, k, entry):
                    raise InternalConsistencyError(f"boundary squared is non-zero in degree {p} at row {i}")


def check_chain_map(fm: EquivChainMap) -> None:
    """Raise unless f~ commutes with the boundary (with phi_aut twisting coefficients)."""
    cx = fm.complex
    A = cx.extension.group
    phi_aut = fm.lifted.phi_aut
    for p in sorted(cx.boundary):
        B, below = cx.boundary[p], fm.matrices.get(p - 1, [])
        F = fm.matrices[p]
        for i in range(cx.rank(p)):
            for k in range(cx.rank(p - 1)):
                lhs = _matrix_product_entry([b.apply(phi_aut) for b in B[i]],
                                            [below[j][k] for j in range(len(below))], A)
                rhs = _matrix_product_entry(F[i], [B[j][k] for j in range(len(B))], A)
                if cx.reduce(p - 1, k, lhs) != cx.reduce(p - 1, k, rhs):
                    raise InternalConsistencyError(f"lifted map does not commute with the boundary in degree {p}")
