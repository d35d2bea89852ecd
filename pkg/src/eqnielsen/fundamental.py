"""
Isomorphism classes of the fundamental category, edge-path fundamental groups, the extension
1 -> pi1 -> Aut(x) -> WH_x -> 1, morphism existence and the induced maps on twisted classes.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .complex import (
    GComplex,
    GSimplicialMap,
    SubcomplexView,
    component_stabilizer,
    orbit_type_components,
)
from .config import DEFAULT_COSET_CAP
from .errors import CosetOverflow, InputError, InternalConsistencyError
from .group_ring import TwistedClassSet
from .groups import FiniteGroup, GroupHom, Subgroup, WeylGroup, subconjugating_elements, weyl_group
from .todd_coxeter import Overflow, Presentation, simplify, todd_coxeter

if TYPE_CHECKING:
    from .covers import UniversalCover

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class EdgePathGroup:
    """
    pi1 of a connected subcomplex at its basepoint, realised as a finite group.

    Tree edges carry the identity and every other edge (u < v) its generator, so the value of a
    walk is the product of its edge values and closed walks at the basepoint evaluate to their class.
    """

    group: FiniteGroup
    basepoint: int
    tree: nx.Graph
    edge_elements: Dict[Edge, int]
    _loops: Dict[int, Tuple[int, ...]] = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    def edge_value(self, u: int, v: int) -> int:
        if u == v:
            return 0
        if u < v:
            return self.edge_elements[(u, v)]
        return self.group.inv(self.edge_elements[(v, u)])

    def walk_value(self, walk: Sequence[int]) -> int:
        acc = 0
        for u, v in zip(walk, walk[1:]):
            acc = self.group.mul(acc, self.edge_value(u, v))
        return acc

    def tree_path(self, v: int) -> List[int]:
        return nx.shortest_path(self.tree, self.basepoint, v)

    def loop(self, element: int) -> Tuple[int, ...]:
        """A closed walk at the basepoint whose value is `element`."""
        if not self._loops:
            self._loops[0] = (self.basepoint,)
            steps = []
            for (u, v), g in sorted(self.edge_elements.items()):
                if g != 0:
                    walk = self.tree_path(u) + list(reversed(self.tree_path(v)))
                    steps.append((g, tuple(walk)))
            queue = deque([0])
            while queue:
                a = queue.popleft()
                for g, walk in steps:
                    b = self.group.mul(a, g)
                    if b not in self._loops:
                        self._loops[b] = self._loops[a] + walk[1:]
                        queue.append(b)
            if len(self._loops) != self.order:
                raise InternalConsistencyError("edge generators do not generate pi1")
        return self._loops[element]


def fundamental_group(component: SubcomplexView, basepoint: Optional[int] = None,
                      coset_cap: int = DEFAULT_COSET_CAP, label: str = "") -> EdgePathGroup:
    """
    Edge-path presentation over a BFS spanning tree, realised by coset enumeration.

    Raises:
        CosetOverflow: the presented group did not close up within coset_cap cosets
    """
    verts = component.vertices
    if not verts:
        raise InputError("fundamental group of an empty subcomplex")
    x0 = min(verts) if basepoint is None else basepoint
    graph = nx.Graph()
    graph.add_nodes_from(verts)
    graph.add_edges_from(component.edges)
    if x0 not in graph or not nx.is_connected(graph):
        raise InputError(f"component {label or list(verts)} is not connected at {x0}")

    tree = nx.bfs_tree(graph, x0, sort_neighbors=sorted).to_undirected()
    non_tree = [e for e in component.edges if not tree.has_edge(*e)]
    number = {e: k for k, e in enumerate(non_tree, start=1)}

    def letters(u: int, v: int) -> Tuple[int, ...]:
        e = (min(u, v), max(u, v))
        if e not in number:
            return ()
        return (number[e],) if u < v else (-number[e],)

    relators = []
    for a, b, c in component.of_dimension(2):
        word = letters(a, b) + letters(b, c) + letters(c, a)
        if word:
            relators.append(word)

    reduced, subst = simplify(Presentation(len(non_tree), tuple(relators)))
    result = todd_coxeter(reduced, coset_cap)
    if isinstance(result, Overflow):
        raise CosetOverflow(label or f"at vertex {x0}", result.cap)

    edge_elements = {e: 0 for e in component.edges}
    for e, k in number.items():
        edge_elements[e] = result.evaluate(subst[k])
    logger.debug(f"pi1 at {x0}: {len(non_tree)} generators, {len(relators)} relators, order {result.group.order}")
    return EdgePathGroup(result.group, x0, tree, edge_elements)


@dataclass(frozen=True, eq=False)
class FundObject:
    """Representative of one isomorphism class: ((H), WH-orbit of a component of X^H)."""

    index: int
    subgroup: Subgroup
    component: SubcomplexView
    singular: SubcomplexView
    orbit_size: int
    weyl: WeylGroup
    weyl_stabilizer: Subgroup    # WH_x inside weyl.group
    pi1: EdgePathGroup

    @property
    def complex(self) -> GComplex:
        return self.component.parent

    @property
    def basepoint(self) -> int:
        return self.pi1.basepoint

    @property
    def label(self) -> str:
        return f"#{self.index} H={list(self.subgroup.members)} at vertex {self.basepoint}"

    def section(self, w: int) -> int:
        """Chosen element of N_G(H) over a WH_x element."""
        return self.weyl.lifts[w]

    def contains_vertex(self, v: int) -> bool:
        return (v,) in self.component


def objects(X: GComplex, coset_cap: int = DEFAULT_COSET_CAP) -> List[FundObject]:
    """One FundObject per isomorphism class, ordered by subgroup class then minimal vertex."""
    out: List[FundObject] = []
    weyls: Dict[Tuple[int, ...], WeylGroup] = {}
    for entry in orbit_type_components(X):
        H = entry.subgroup
        W = weyls.get(H.members)
        if W is None:
            W = weyls[H.members] = weyl_group(X.group, H)
        stab = component_stabilizer(entry.fixed, entry.component)
        wh_x = W.group.subgroup(W.project(n) for n in stab)
        label = f"H={list(H.members)} containing vertex {entry.component.vertices[0]}"
        pi1 = fundamental_group(entry.component, coset_cap=coset_cap, label=label)
        obj = FundObject(len(out), H, entry.component, entry.singular, entry.orbit_size, W, wh_x, pi1)
        logger.info(f"Object {obj.label}: |pi1|={pi1.order}, |WH_x|={wh_x.order}")
        out.append(obj)
    return out


# ---------- Aut(x) ----------

@dataclass(frozen=True, eq=False)
class AutExtension:
    """Aut(x) as permutations of cover vertices plus a block carrying the regular WH_x action."""

    group: FiniteGroup
    cover: "UniversalCover"
    pi1_embedding: GroupHom       # pi1 -> Aut(x)
    projection: GroupHom          # Aut(x) -> WH
    section: Dict[int, int]       # WH_x element -> Aut(x) element lifting it
    deck_index: Dict[int, int]    # Aut(x) element -> pi1 element, for deck transformations

    @property
    def order(self) -> int:
        return self.group.order

    def act_vertex(self, alpha: int, cover_vertex: int) -> int:
        return self.group.elements[alpha][cover_vertex]

    def deck(self, gamma: int) -> int:
        return self.pi1_embedding(gamma)

    def deck_part(self, alpha: int) -> Optional[int]:
        """The pi1 element equal to alpha, or None when alpha is not a deck transformation."""
        return self.deck_index.get(alpha)


def aut_extension(obj: FundObject, cover: Optional["UniversalCover"] = None) -> AutExtension:
    """Assemble Aut(x) from deck transformations and lifted WH_x elements, checking exactness."""
    from .covers import build_cover, lift_group_action

    cover = cover or build_cover(obj)
    pi = obj.pi1.group
    members = obj.weyl_stabilizer.members
    position = {w: k for k, w in enumerate(members)}
    n_cover = cover.vertex_count
    block_identity = tuple(range(n_cover, n_cover + len(members)))

    def block(w: int) -> Tuple[int, ...]:
        W = obj.weyl.group
        return tuple(n_cover + position[W.mul(w, m)] for m in members)

    deck_perms = [cover.deck_perm(g) + block_identity for g in range(pi.order)]
    lifted = lift_group_action(obj, cover)
    section_perms = {w: lifted[w] + block(w) for w in members}

    gens = [deck_perms[g] for g in pi.generator_indices] + [section_perms[w] for w in members if w != 0]
    aut = FiniteGroup(n_cover + len(members), gens, name=f"Aut(x{obj.index})")
    if aut.order != pi.order * len(members):
        raise InternalConsistencyError(
            f"|Aut| = {aut.order} but |pi1|*|WH_x| = {pi.order * len(members)} at {obj.label}"
        )

    embedding = GroupHom(pi, aut, tuple(aut.index(p) for p in deck_perms))
    member_at = {n_cover + k: w for k, w in enumerate(members)}
    projection = GroupHom(aut, obj.weyl.group, tuple(member_at[p[n_cover]] for p in aut.elements))
    if set(projection.kernel().members) != set(embedding.images):
        raise InternalConsistencyError(f"Aut(x) sequence is not exact at {obj.label}")
    section = {w: aut.index(section_perms[w]) for w in members}
    deck_index = {a: g for g, a in enumerate(embedding.images)}
    return AutExtension(aut, cover, embedding, projection, section, deck_index)


# ---------- morphisms ----------

def morphism_candidates(src: FundObject, dst: FundObject) -> List[int]:
    """Elements g with g^-1 H g <= K whose translate of dst's basepoint lies in src's component."""
    X = src.complex
    return [g for g in subconjugating_elements(X.group, src.subgroup, dst.subgroup)
            if src.contains_vertex(X.act(g, dst.basepoint))]


def morphism_exists(src: FundObject, dst: FundObject) -> bool:
    return bool(morphism_candidates(src, dst))


def is_isomorphism_class(src: FundObject, dst: FundObject) -> bool:
    return src.subgroup.order == dst.subgroup.order


def map_walk(f: GSimplicialMap, walk: Sequence[int]) -> List[int]:
    """Image of a vertex walk; maps given on the subdivision pass through edge barycentres."""
    if not f.subdivided:
        return [f(v) for v in walk]
    out = [f.barycentre_image((walk[0],))]
    for u, v in zip(walk, walk[1:]):
        if u == v:
            continue
        out.append(f.barycentre_image((min(u, v), max(u, v))))
        out.append(f.barycentre_image((v,)))
    return out


def basepoint_image(f: GSimplicialMap, v: int) -> int:
    return f.barycentre_image((v,)) if f.subdivided else f(v)


@dataclass(frozen=True)
class MorClass:
    """The map (sigma,[w])^* on twisted classes: dst class representative -> src class representative."""

    source: FundObject
    target: FundObject
    element: int
    mapping: Dict[int, int]

    def __call__(self, dst_rep: int) -> int:
        return self.mapping[dst_rep]

    def image(self) -> List[int]:
        return sorted(set(self.mapping.values()))


def induced_class_map(src: FundObject, dst: FundObject, f: GSimplicialMap,
                      src_classes: TwistedClassSet, dst_classes: TwistedClassSet,
                      element: Optional[int] = None, detour: Sequence[int] = ()) -> MorClass:
    """
    Transport twisted classes at dst to src along a morphism.

    The morphism is given by a G-element g (g^-1 H g <= K, g.y0 in src's component; smallest one by
    default) and a path w from x0 to g.y0, the tree path optionally preceded by the closed walk
    `detour` at x0. A loop l at y0 goes to w g(l) w^-1, corrected by the closed walk
    t(f x0) f(w) g(t(f y0))^-1 w^-1 that accounts for both basepoint twists.
    """
    X = src.complex
    candidates = morphism_candidates(src, dst)
    if not candidates:
        raise InputError(f"no morphism from object {src.index} to object {dst.index}")
    g = candidates[0] if element is None else element
    if g not in candidates:
        raise InputError(f"group element {g} does not define a morphism {src.index} -> {dst.index}")

    px, py = src.pi1, dst.pi1
    x0, y0 = src.basepoint, dst.basepoint
    if detour and (detour[0] != x0 or detour[-1] != x0):
        raise InputError("detour must be a closed walk at the source basepoint")
    w = (list(detour[:-1]) if detour else []) + px.tree_path(X.act(g, y0))
    w_back = list(reversed(w))

    fy0 = basepoint_image(f, y0)
    twist_walk = (
        px.tree_path(basepoint_image(f, x0))
        + map_walk(f, w)[1:]
        + [X.act(g, v) for v in reversed(py.tree_path(fy0))][1:]
        + w_back[1:]
    )
    correction = px.walk_value(twist_walk)

    G1 = px.group
    mapping: Dict[int, int] = {}
    for cls in dst_classes.classes:
        images = set()
        for beta in cls:
            loop = [X.act(g, v) for v in py.loop(beta)]
            iota = px.walk_value(w + loop[1:] + w_back[1:])
            images.add(src_classes.representative_of(G1.mul(correction, iota)))
        if len(images) != 1:
            raise InternalConsistencyError(
                f"class {cls[0]} at object {dst.index} does not map to a single class at object {src.index}"
            )
        mapping[cls[0]] = images.pop()
    return MorClass(src, dst, g, mapping)
