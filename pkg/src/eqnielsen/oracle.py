"""
Independent checks on the engine: Lefschetz numbers from rational homology, invariants assembled
from annotated fixed-point data, and Reidemeister traces recomputed cell by cell on small covers.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
from sympy import Matrix, Rational, eye, zeros

from .complex import GComplex, GSimplicialMap, Simplex, faces, permutation_sign, subdivision_chain
from .config import DEFAULT_BRUTE_FORCE_CAP
from .covers import Cell, UniversalCover, build_cover
from .errors import BruteForceTooLarge, InputError, InternalConsistencyError
from .fundamental import FundObject
from .group_ring import INTEGER, RATIONAL, ClassRingElement, Coefficient, TwistedClassSet, twisted_conjugacy_classes
from .groups import GroupHom

logger = logging.getLogger(__name__)


# ---------- homology Lefschetz number ----------

def _chain_image(f: GSimplicialMap, s: Simplex) -> List[Tuple[int, Simplex]]:
    """f_#(s), composed with subdivision for maps given on Sd X, as signed sorted simplices."""
    if f.subdivided:
        terms = [(sign, [f.barycentre_image(t) for t in flag]) for sign, flag in subdivision_chain(s)]
    else:
        terms = [(1, list(f.image(s)))]
    out = []
    for sign, verts in terms:
        if len(set(verts)) == len(verts):
            out.append((sign * permutation_sign(verts), tuple(sorted(verts))))
    return out


def _homology_trace(D_p: Matrix, D_next: Matrix, F: Matrix) -> Rational:
    """Trace of F on ker D_p / im D_next over Q."""
    cycles = D_p.nullspace() if D_p.rows else [eye(F.rows).col(j) for j in range(F.rows)]
    boundaries = D_next.columnspace() if D_next.cols else []
    basis = list(boundaries)
    rank = len(basis)
    classes = []
    for z in cycles:
        trial = Matrix.hstack(*(basis + [z]))
        if trial.rank() > rank:
            basis.append(z)
            classes.append(len(basis) - 1)
            rank += 1
    if not classes:
        return Rational(0)
    M = Matrix.hstack(*basis)
    trace = Rational(0)
    for k in classes:
        solution, params = M.gauss_jordan_solve(F * basis[k])
        if params.shape[0]:
            raise InternalConsistencyError("homology basis is not independent")
        trace += solution[k]
    return trace


def homology_lefschetz(X: GComplex, f: GSimplicialMap,
                       simplices: Optional[Sequence[Simplex]] = None) -> int:
    """
    Sum over p of (-1)^p trace(f_* on H_p(K; Q)) for K the whole complex or the given
    face-closed, f-invariant part of it. The group action is ignored.
    """
    cells = tuple(simplices) if simplices is not None else X.simplices
    present = set(cells)
    by_dim: Dict[int, List[Simplex]] = defaultdict(list)
    for s in cells:
        by_dim[len(s) - 1].append(s)
    if not by_dim:
        return 0
    top = max(by_dim)
    index = {p: {s: i for i, s in enumerate(by_dim[p])} for p in range(top + 2)}

    def boundary_matrix(p: int) -> Matrix:
        D = zeros(len(by_dim.get(p - 1, [])), len(by_dim.get(p, [])))
        for j, s in enumerate(by_dim.get(p, [])):
            for i, face in enumerate(faces(s)):
                D[index[p - 1][face], j] += (-1) ** i
        return D

    total = Rational(0)
    for p in range(top + 1):
        n = len(by_dim[p])
        F = zeros(n, n)
        for j, s in enumerate(by_dim[p]):
            for sign, image in _chain_image(f, s):
                if image not in present:
                    raise InputError(f"f does not preserve the subcomplex: {list(s)} -> {list(image)}")
                F[index[p][image], j] += sign
        D_p = boundary_matrix(p) if p > 0 else zeros(0, n)
        D_next = boundary_matrix(p + 1) if p < top else zeros(n, 0)
        total += (-1) ** p * _homology_trace(D_p, D_next, F)
    if total.q != 1:
        raise InternalConsistencyError(f"homology Lefschetz number {total} is not an integer")
    return int(total)


# ---------- fixed-point data ----------

@dataclass(frozen=True)
class FixedPointDatum:
    """One G-orbit of isolated fixed points, annotated by hand."""

    label: str
    isotropy: Tuple[int, ...]
    object: int
    loop: Tuple[int, ...]       # closed walk at the object's basepoint
    sign: int                   # sign of det(id - T_z f)
    WHz_order: int = 1


def _check_datum(d: FixedPointDatum, objs: Sequence[FundObject]) -> FundObject:
    if d.sign not in (1, -1):
        raise InputError(f"fixed point {d.label}: sign must be +1 or -1, got {d.sign}")
    if not 0 <= d.object < len(objs):
        raise InputError(f"fixed point {d.label}: object {d.object} does not exist")
    if d.WHz_order < 1:
        raise InputError(f"fixed point {d.label}: WHz_order must be positive")
    obj = objs[d.object]
    if not set(obj.subgroup.members) <= set(d.isotropy):
        raise InputError(f"fixed point {d.label}: isotropy {list(d.isotropy)} does not contain "
                         f"H = {list(obj.subgroup.members)}")
    loop = d.loop or (obj.basepoint,)
    if loop[0] != obj.basepoint or loop[-1] != obj.basepoint:
        raise InputError(f"fixed point {d.label}: loop must start and end at vertex {obj.basepoint}")
    for u, v in zip(loop, loop[1:]):
        if u != v and (min(u, v), max(u, v)) not in obj.pi1.edge_elements:
            raise InputError(f"fixed point {d.label}: loop step {u}-{v} is not an edge of the component")
    return obj


def _check_labels(data: Sequence[FixedPointDatum]) -> None:
    seen = set()
    for d in data:
        if d.label in seen:
            raise InputError(f"duplicate fixed-point orbit label {d.label!r}")
        seen.add(d.label)


def _loop_class(d: FixedPointDatum, obj: FundObject, classes: TwistedClassSet) -> int:
    return classes.representative_of(obj.pi1.walk_value(d.loop or (obj.basepoint,)))


def assemble_nu_from_fixed_data(data: Sequence[FixedPointDatum], objs: Sequence[FundObject],
                                classes: Sequence[Optional[TwistedClassSet]],
                                hit: Optional[Sequence[Sequence[int]]] = None) -> List[Optional[ClassRingElement]]:
    """
    Sum of sign * class over the fixed-point orbits of isotropy exactly H at each object, leaving
    out the classes in hit[i] (images of non-isomorphisms at object i).
    None where the object has no class set (f moves its component).
    """
    _check_labels(data)
    acc: List[Dict[int, int]] = [defaultdict(int) for _ in objs]
    for d in data:
        obj = _check_datum(d, objs)
        if set(d.isotropy) != set(obj.subgroup.members) or classes[d.object] is None:
            continue
        k = _loop_class(d, obj, classes[d.object])
        if hit is None or k not in hit[d.object]:
            acc[d.object][k] += d.sign
    return [None if cs is None else ClassRingElement.from_dict(cs, a, INTEGER) for cs, a in zip(classes, acc)]


def assemble_Lq_from_fixed_data(data: Sequence[FixedPointDatum], objs: Sequence[FundObject],
                                classes: Sequence[Optional[TwistedClassSet]]) -> List[Optional[ClassRingElement]]:
    """Sum of sign / |(WH_x)_z| * class over every fixed-point orbit listed at each object."""
    _check_labels(data)
    acc: List[Dict[int, Coefficient]] = [defaultdict(int) for _ in objs]
    for d in data:
        obj = _check_datum(d, objs)
        if classes[d.object] is None:
            continue
        acc[d.object][_loop_class(d, obj, classes[d.object])] += Fraction(d.sign, d.WHz_order)
    return [None if cs is None else ClassRingElement.from_dict(cs, a, RATIONAL) for cs, a in zip(classes, acc)]


# ---------- cell-by-cell Reidemeister trace ----------
#
# The lifts here are found by path lifting on the cover's 1-skeleton: a node's image is the one
# cover vertex over the required base vertex that is equal or adjacent to its parent's image.

Node = Hashable


def _skeleton(cover: UniversalCover) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(cover.vertex_count))
    for u, v in cover.obj.component.edges:
        for a in range(cover.sheets):
            graph.add_edge(*cover.lift_vertices((min(u, v), max(u, v)), a))
    return graph


def _face_cell(cover: UniversalCover, cell: Cell, face: Simplex) -> Cell:
    s, sheet = cell
    ids = [c for v, c in zip(s, cover.lift_vertices(s, sheet)) if v in face]
    return cover.cell_of(ids)[1]


def _subdivided_skeleton(cover: UniversalCover) -> nx.Graph:
    """Barycentres of cover cells, joined to the barycentres of their facets."""
    graph = nx.Graph()
    for s in cover.obj.component.simplices:
        for a in range(cover.sheets):
            graph.add_node((s, a))
            if len(s) > 1:
                for face in faces(s):
                    graph.add_edge((s, a), _face_cell(cover, (s, a), face))
    return graph


def _path_lift(domain: nx.Graph, start: Node, anchor: int, base_image: Callable[[Node], int],
               cover: UniversalCover, skeleton: nx.Graph) -> Dict[Node, int]:
    images = {start: anchor}
    for parent, node in nx.bfs_edges(domain, start):
        here, w = images[parent], base_image(node)
        candidates = [c for c in [here, *skeleton.neighbors(here)] if cover.vertex(c)[0] == w]
        if len(candidates) != 1:
            raise InternalConsistencyError(f"path lifting found {len(candidates)} cover vertices over {w}")
        images[node] = candidates[0]
    if len(images) != domain.number_of_nodes():
        raise InternalConsistencyError("path lifting did not reach every cover node")
    for p, q in domain.edges():
        if images[p] != images[q] and not skeleton.has_edge(images[p], images[q]):
            raise InternalConsistencyError(f"lifted images of {p} and {q} are not adjacent")
    return images


def _deck(cover: UniversalCover, gamma: int, cid: int) -> int:
    v, a = cover.vertex(cid)
    return cover.vertex_id(v, cover.pi1.group.mul(gamma, a))


def _sheet_over(cover: UniversalCover, cid: int, v: int) -> int:
    w, a = cover.vertex(cid)
    if w != v:
        raise InternalConsistencyError(f"cover vertex {cid} lies over {w}, expected {v}")
    return a


class _CellwiseLift:
    """f lifted to the cover with the basepoint on sheet e going to sheet e over f(x0)."""

    def __init__(self, obj: FundObject, f: GSimplicialMap, cover: UniversalCover, skeleton: nx.Graph):
        self.cover, self.f = cover, f
        x0 = obj.basepoint
        if f.subdivided:
            self.images = _path_lift(_subdivided_skeleton(cover), ((x0,), 0),
                                     cover.vertex_id(f.barycentre_image((x0,)), 0),
                                     lambda node: f.barycentre_image(node[0]), cover, skeleton)
        else:
            self.images = _path_lift(skeleton, cover.vertex_id(x0, 0), cover.vertex_id(f(x0), 0),
                                     lambda cid: f(cover.vertex(cid)[0]), cover, skeleton)

    def vertex(self, cid: int) -> int:
        if not self.f.subdivided:
            return self.images[cid]
        v, a = self.cover.vertex(cid)
        return self.images[((v,), a)]

    def image_chain(self, cell: Cell) -> Dict[Cell, int]:
        cover = self.cover
        s, sheet = cell
        if self.f.subdivided:
            terms = [(sign, [self.images[_face_cell(cover, cell, t)] for t in flag])
                     for sign, flag in subdivision_chain(s)]
        else:
            terms = [(1, [self.images[c] for c in cover.lift_vertices(s, sheet)])]
        out: Dict[Cell, int] = defaultdict(int)
        for sign, ids in terms:
            located = cover.cell_of(ids)
            if located is not None:
                out[located[1]] += sign * located[0]
        return {c: k for c, k in out.items() if k}


def _cellwise_classes(obj: FundObject, cover: UniversalCover, skeleton: nx.Graph,
                      lift: _CellwiseLift) -> TwistedClassSet:
    """
    Classes b a^-1 of diagonal entries (s, a) -> (s, b), identified under the deck group and the
    lifted WH_x action: kappa ~ phi(g) kappa g^-1, and kappa ~ delta * nu(kappa) where nu is
    conjugation by the lift n~ and f~ n~ = delta n~ f~.
    """
    X, pi, x0 = obj.complex, obj.pi1.group, obj.basepoint
    p = cover.vertex_id(x0, 0)
    fx0 = cover.vertex(lift.vertex(p))[0]
    phi = GroupHom(pi, pi, tuple(_sheet_over(cover, lift.vertex(cover.vertex_id(x0, g)), fx0)
                                 for g in range(pi.order)))
    moves = []
    for w in obj.weyl_stabilizer.members:
        n = obj.section(w)
        n_lift = _path_lift(skeleton, p, cover.vertex_id(X.act(n, x0), 0),
                            lambda cid, n=n: X.act(n, cover.vertex(cid)[0]), cover, skeleton)
        n_inverse = {image: cid for cid, image in n_lift.items()}
        w0 = X.act(n, fx0)
        delta = pi.mul(_sheet_over(cover, lift.vertex(n_lift[p]), w0),
                       pi.inv(_sheet_over(cover, n_lift[lift.vertex(p)], w0)))

        def move(kappa: int, n_lift=n_lift, n_inverse=n_inverse, delta=delta) -> int:
            nu = _sheet_over(cover, n_lift[_deck(cover, kappa, n_inverse[p])], x0)
            return pi.mul(delta, nu)
        moves.append(move)
    return twisted_conjugacy_classes(pi, phi, moves)


def brute_force_reidemeister(obj: FundObject, f: GSimplicialMap,
                             cap: int = DEFAULT_BRUTE_FORCE_CAP) -> Optional[ClassRingElement]:
    """
    The relative refined trace recomputed over every cover cell: each diagonal coefficient of
    (s, a) -> (s, b) counts towards the class of b a^-1, and the total is divided by |Aut(x)|.
    The lift of f and the class set are rebuilt here from the cover and the vertex images.

    Returns None where f moves the component.

    Raises:
        BruteForceTooLarge: |pi1| times the number of relative cells exceeds cap
    """
    singular = set(obj.singular.simplices)
    relative = [s for s in obj.component.simplices if s not in singular]
    size = obj.pi1.order * len(relative)
    if size > cap:
        raise BruteForceTooLarge(f"brute-force trace at {obj.label} needs {size} cover cells (cap {cap})")
    x0 = obj.basepoint
    if not obj.contains_vertex(f.barycentre_image((x0,)) if f.subdivided else f(x0)):
        return None
    cover = build_cover(obj)
    skeleton = _skeleton(cover)
    lift = _CellwiseLift(obj, f, cover, skeleton)
    classes = _cellwise_classes(obj, cover, skeleton, lift)
    pi = obj.pi1.group
    acc: Dict[int, int] = defaultdict(int)
    for s in relative:
        sign = (-1) ** (len(s) - 1)
        for a in range(pi.order):
            for (t, b), coeff in lift.image_chain((s, a)).items():
                if t == s:
                    acc[classes.representative_of(pi.mul(b, pi.inv(a)))] += sign * coeff
    order = obj.pi1.order * obj.weyl_stabilizer.order
    out = {}
    for k, total in acc.items():
        if total % order:
            raise InternalConsistencyError(f"cell-by-cell trace {total} at class {k} is not divisible by |Aut| = {order}")
        out[k] = total // order
    logger.debug(f"Brute-force trace at {obj.label}: {out}")
    return ClassRingElement.from_dict(classes, out, INTEGER)
