"""
Desk-scale problem catalog: cross-polytope spheres with reflections, rotations and free
involutions, a six-vertex RP^2 and a flipped prism over it, a disc glued three times round a
triangle, degree-two maps given on the subdivision, and two inputs whose fundamental groups are
infinite.

Builders return problem-file dictionaries; `scripts/build_catalog.py` writes them as JSON.
"""

import random
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

Simplex = Tuple[int, ...]


def cross_polytope(n: int) -> List[Simplex]:
    """Boundary of the n-dimensional cross-polytope: vertex pairs (2i, 2i+1), one of each per facet."""
    return [tuple(sorted(choice)) for choice in product(*[(2 * i, 2 * i + 1) for i in range(n)])]


def swap_pairs(n: int, pairs: Sequence[int]) -> List[int]:
    """Vertex permutation exchanging the vertices of the listed pairs."""
    perm = list(range(2 * n))
    for i in pairs:
        perm[2 * i], perm[2 * i + 1] = 2 * i + 1, 2 * i
    return perm


def all_faces(simplices: Sequence[Simplex]) -> List[Simplex]:
    closed = set()
    for s in simplices:
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    return sorted(closed, key=lambda s: (len(s), s))


def _problem(degree: int, generators: List[List[int]], vertices: int, action: List[List[int]],
             simplices: Sequence[Simplex], **sections) -> dict:
    doc = {
        "group": {"degree": degree, "generators": generators},
        "complex": {"vertices": vertices, "action": action, "simplices": [list(s) for s in simplices]},
    }
    doc.update(sections)
    return doc


# ---------- degree-two maps on the subdivision ----------

def degree_two_circle() -> Dict[Simplex, int]:
    """z -> z^2 on the square 0-2-1-3, as a map from its subdivision (the octagon)."""
    cycle = [0, 2, 1, 3]
    octagon = [(0,), (0, 2), (2,), (1, 2), (1,), (1, 3), (3,), (0, 3)]
    return {s: cycle[k % 4] for k, s in enumerate(octagon)}


def suspend_barycentre_images(images: Dict[Simplex, int], poles: Tuple[int, int]) -> Dict[Simplex, int]:
    """Suspension of a map given on barycentres; a cone simplex goes where its base goes."""
    out = dict(images)
    for pole in poles:
        out[(pole,)] = pole
        for s, w in images.items():
            out[tuple(sorted(s + (pole,)))] = w
    return out


def _as_entries(images: Dict[Simplex, int]) -> List[list]:
    return [[list(s), w] for s, w in sorted(images.items(), key=lambda kv: (len(kv[0]), kv[0]))]


# ---------- builders ----------

def tetrahedron_identity() -> dict:
    simplices = list(combinations(range(4), 3))
    return _problem(1, [], 4, [], simplices, map=list(range(4)))


def tetrahedron_rotation_identity() -> dict:
    """
    Z/3 turning the face 1-2-3 about vertex 0; not regular, so it is subdivided on load.
    The flow from vertex 0 to the centre of the face fixes both axis points.
    """
    simplices = list(combinations(range(4), 3))
    axis = {"isotropy": [[1, 2, 0]], "loop": [], "sign": 1}
    fixed = [
        dict(axis, label="vertex@free", object=0, WHz_order=3),
        dict(axis, label="face@free", object=0, WHz_order=3),
        dict(axis, label="vertex", object=1),
        dict(axis, label="face", object=2),
    ]
    return _problem(3, [[1, 2, 0]], 4, [[0, 2, 3, 1]], simplices, map=list(range(4)), fixed_points=fixed)


def octahedron_antipodal_map() -> dict:
    return _problem(1, [], 6, [], cross_polytope(3), map=swap_pairs(3, [0, 1, 2]))


def octahedron_degree_two() -> dict:
    images = suspend_barycentre_images(degree_two_circle(), (4, 5))
    return _problem(1, [], 6, [], cross_polytope(3), map_subdivision=_as_entries(images))


def s3_degree_two() -> dict:
    images = suspend_barycentre_images(suspend_barycentre_images(degree_two_circle(), (4, 5)), (6, 7))
    return _problem(1, [], 8, [], cross_polytope(4), map_subdivision=_as_entries(images))


QUARTER_TURN = [2, 3, 1, 0, 4, 5]


def rotation_octahedron_identity() -> dict:
    """Z/4 turning the octahedron about the axis 4-5, with fixed-point data of the flow from 4 to 5."""
    z4 = {"generators": [[1, 2, 3, 0]]}
    north = {"isotropy": z4["generators"], "loop": [], "sign": 1}
    fixed = [
        dict(north, label="north@free", object=0, WHz_order=4),
        dict(north, label="south@free", object=0, WHz_order=4),
        dict(north, label="north@Z2", object=1, WHz_order=2),
        dict(north, label="south@Z2", object=2, WHz_order=2),
        dict(north, label="north", object=3),
        dict(north, label="south", object=4),
    ]
    return _problem(4, z4["generators"], 6, [QUARTER_TURN], cross_polytope(3),
                    map=list(range(6)), fixed_points=fixed)


def rotation_octahedron_quarter_turn() -> dict:
    return _problem(4, [[1, 2, 3, 0]], 6, [QUARTER_TURN], cross_polytope(3), map=QUARTER_TURN)


def free_z2_s2_identity() -> dict:
    return _problem(2, [[1, 0]], 6, [swap_pairs(3, [0, 1, 2])], cross_polytope(3), map=list(range(6)))


def free_z2_s2_antipodal() -> dict:
    antipodal = swap_pairs(3, [0, 1, 2])
    return _problem(2, [[1, 0]], 6, [antipodal], cross_polytope(3), map=antipodal)


def free_z2_s3_identity() -> dict:
    """Antipodal Z/2 on S^3; the quotient RP^3 is a lens space."""
    return _problem(2, [[1, 0]], 8, [swap_pairs(4, [0, 1, 2, 3])], cross_polytope(4),
                    map=list(range(8)), jiang={"quotient_is_jiang": True})


def cross_polytope_antipodal_map() -> dict:
    return _problem(1, [], 8, [], cross_polytope(4), map=swap_pairs(4, [0, 1, 2, 3]))


def reflection_s3_identity() -> dict:
    """
    Z/2 exchanging 6 and 7 on S^3, fixing the octahedron 0..5. The flow from pole 0 to pole 1
    fixes both; the source counts -1 on S^3 and +1 on the fixed S^2.
    """
    pole = {"isotropy": [[1, 0]], "loop": []}
    fixed = [
        dict(pole, label="source@free", object=0, sign=-1, WHz_order=2),
        dict(pole, label="sink@free", object=0, sign=1, WHz_order=2),
        dict(pole, label="source", object=1, sign=1),
        dict(pole, label="sink", object=1, sign=1),
    ]
    return _problem(2, [[1, 0]], 8, [swap_pairs(4, [3])], cross_polytope(4), map=list(range(8)),
                    fixed_points=fixed)


def reflection_s3_reflection() -> dict:
    reflection = swap_pairs(4, [3])
    return _problem(2, [[1, 0]], 8, [reflection], cross_polytope(4), map=reflection)


def s4_pole_swap_identity() -> dict:
    """Z/2 exchanging the poles 8 and 9 of S^4 with fixed set S^3; the flow between poles fixes one free orbit."""
    fixed = [{"label": "poles", "isotropy": [], "object": 0, "loop": [], "sign": 1, "WHz_order": 1}]
    return _problem(2, [[1, 0]], 10, [swap_pairs(5, [4])], cross_polytope(5),
                    map=list(range(10)), fixed_points=fixed)


RP2_TRIANGLES = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
                 (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def rp2_identity() -> dict:
    return _problem(1, [], 6, [], RP2_TRIANGLES, map=list(range(6)))


def rp2_prism_flip_identity() -> dict:
    """
    RP^2 x [0, 2] in three layers of six vertices (vertex 6k + v), Z/2 flipping the outer layers
    about the fixed middle one. The inclusion of the middle RP^2 is a pi1 isomorphism.
    """
    def at(v: int, layer: int) -> int:
        return 6 * layer + v

    simplices = []
    for a, b, c in RP2_TRIANGLES:
        for lo, hi in ((0, 1), (2, 1)):
            for s in ((at(a, lo), at(b, lo), at(c, lo), at(c, hi)),
                      (at(a, lo), at(b, lo), at(b, hi), at(c, hi)),
                      (at(a, lo), at(a, hi), at(b, hi), at(c, hi))):
                simplices.append(tuple(sorted(s)))
    flip = [at(v % 6, 2 - v // 6) for v in range(18)]
    return _problem(2, [[1, 0]], 18, [flip], simplices, map=list(range(18)))


def moore_space_z3_identity() -> dict:
    """
    A disc whose boundary wraps three times around the triangle 0-1-2: a ring 3..11 about the
    centre 12, ring vertex 3+i joined to boundary letters i and i+1 (mod 3). pi1 is Z/3.
    """
    simplices = []
    for i in range(9):
        m, m_next = 3 + i, 3 + (i + 1) % 9
        p, p_next = i % 3, (i + 1) % 3
        simplices += [(12, m, m_next), (m, p, p_next), (m, m_next, p_next)]
    return _problem(1, [], 13, [], [tuple(sorted(s)) for s in simplices], map=list(range(13)))


DISC_TURN = [0, 1, 2] + [3 + (i + 3) % 9 for i in range(9)] + [12]


def circle_identity() -> dict:
    """Triangle boundary: pi1 is infinite cyclic."""
    return _problem(1, [], 3, [], [(0, 1), (1, 2), (0, 2)], map=[0, 1, 2])


def reflection_octahedron_identity() -> dict:
    """Reflection exchanging 4 and 5; the fixed equator is a circle."""
    return _problem(2, [[1, 0]], 6, [swap_pairs(3, [2])], cross_polytope(3), map=list(range(6)))


CATALOG: Dict[str, Callable[[], dict]] = {
    "tetrahedron_identity": tetrahedron_identity,
    "tetrahedron_rotation_identity": tetrahedron_rotation_identity,
    "octahedron_antipodal_map": octahedron_antipodal_map,
    "octahedron_degree_two": octahedron_degree_two,
    "s3_degree_two": s3_degree_two,
    "rotation_octahedron_identity": rotation_octahedron_identity,
    "rotation_octahedron_quarter_turn": rotation_octahedron_quarter_turn,
    "free_z2_s2_identity": free_z2_s2_identity,
    "free_z2_s2_antipodal": free_z2_s2_antipodal,
    "free_z2_s3_identity": free_z2_s3_identity,
    "cross_polytope_antipodal_map": cross_polytope_antipodal_map,
    "reflection_s3_identity": reflection_s3_identity,
    "reflection_s3_reflection": reflection_s3_reflection,
    "s4_pole_swap_identity": s4_pole_swap_identity,
    "rp2_identity": rp2_identity,
    "rp2_prism_flip_identity": rp2_prism_flip_identity,
    "moore_space_z3_identity": moore_space_z3_identity,
    "circle_identity": circle_identity,
    "reflection_octahedron_identity": reflection_octahedron_identity,
}

# Inputs rejected with a resource-cap error (infinite pi1).
OVERFLOWING = ("circle_identity", "reflection_octahedron_identity")


def relabel(doc: dict, perm: Sequence[int]) -> dict:
    """
    The same problem with vertex v renamed perm[v].

    Fixed-point data and object-indexed Jiang entries are dropped: object numbering follows
    vertex names.
    """
    n = doc["complex"]["vertices"]
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of the vertices")
    inverse = [0] * n
    for v, w in enumerate(perm):
        inverse[w] = v
    out = {
        "group": doc["group"],
        "complex": {
            "vertices": n,
            "action": [[perm[a[inverse[w]]] for w in range(n)] for a in doc["complex"]["action"]],
            "simplices": [sorted(perm[v] for v in s) for s in doc["complex"]["simplices"]],
        },
    }
    if doc.get("map") is not None:
        out["map"] = [perm[doc["map"][inverse[w]]] for w in range(n)]
    if doc.get("map_subdivision") is not None:
        out["map_subdivision"] = [[sorted(perm[v] for v in s), perm[w]] for s, w in doc["map_subdivision"]]
    jiang = doc.get("jiang")
    if jiang:
        kept = {k: v for k, v in jiang.get("families", {}).items() if k == "all"}
        out["jiang"] = {"quotient_is_jiang": jiang.get("quotient_is_jiang", False), "families": kept}
    if "options" in doc:
        out["options"] = doc["options"]
    return out


def random_relabeling(doc: dict, rng: random.Random) -> dict:
    perm = list(range(doc["complex"]["vertices"]))
    rng.shuffle(perm)
    return relabel(doc, perm)


def build(name: str, seed: Optional[int] = None) -> dict:
    doc = CATALOG[name]()
    return doc if seed is None else random_relabeling(doc, random.Random(seed))
