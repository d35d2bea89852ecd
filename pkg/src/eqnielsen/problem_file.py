"""
Problem files: one JSON document holding the group, the G-complex, the map and optional
Jiang declarations, fixed-point annotations and engine options.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError, model_validator

from .complex import GComplex, GSimplicialMap, barycentric_subdivision, subdivide_map, validate_map
from .errors import InputError
from .groups import FiniteGroup, check_permutation
from .jiang import JiangDeclarations
from .oracle import FixedPointDatum

logger = logging.getLogger(__name__)


class GroupSection(BaseModel):
    """The finite group, as permutations of 0..degree-1."""
    model_config = ConfigDict(extra="forbid")

    degree: PositiveInt
    generators: List[List[int]] = Field(default_factory=list)


class ComplexSection(BaseModel):
    """Vertex count, one vertex permutation per group generator, and the top simplices."""
    model_config = ConfigDict(extra="forbid")

    vertices: PositiveInt
    action: List[List[int]] = Field(default_factory=list)
    simplices: List[List[int]]


class JiangSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    quotient_is_jiang: bool = False
    families: Dict[str, Union[str, List[str]]] = Field(default_factory=dict)
    assert_objects: List[int] = Field(default_factory=list)


class FixedPointEntry(BaseModel):
    """One annotated fixed-point orbit; isotropy is given by generating permutations."""
    model_config = ConfigDict(extra="forbid")

    label: str
    isotropy: List[List[int]] = Field(default_factory=list)
    object: int
    loop: List[int] = Field(default_factory=list)
    sign: int
    WHz_order: PositiveInt = 1


class OptionsSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coset_cap: Optional[PositiveInt] = None
    cover_search_cap: Optional[PositiveInt] = None
    subdivide: Optional[bool] = None    # None: subdivide only when the action is not regular


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    group: GroupSection
    complex: ComplexSection
    map: Optional[List[int]] = None
    map_subdivision: Optional[List[Tuple[List[int], int]]] = None
    jiang: Optional[JiangSection] = None
    fixed_points: List[FixedPointEntry] = Field(default_factory=list)
    options: OptionsSection = Field(default_factory=OptionsSection)
    group_is_quotient_of: Optional[Any] = None

    @model_validator(mode="after")
    def exactly_one_map(self) -> "ProblemFile":
        if (self.map is None) == (self.map_subdivision is None):
            raise ValueError("give exactly one of 'map' and 'map_subdivision'")
        if len(self.complex.action) != len(self.group.generators):
            raise ValueError(f"complex.action needs one permutation per group generator "
                             f"({len(self.group.generators)}), got {len(self.complex.action)}")
        return self


@dataclass(frozen=True)
class Problem:
    """A validated problem ready for the engine."""

    complex: GComplex
    map: GSimplicialMap
    jiang: JiangDeclarations
    fixed_points: Tuple[FixedPointDatum, ...]
    options: OptionsSection
    subdivided: bool = False


def parse_problem(document: Dict[str, Any]) -> ProblemFile:
    try:
        return ProblemFile.model_validate(document)
    except ValidationError as e:
        raise InputError(f"problem file does not match the schema: {e}")


def load_problem_file(path: Union[str, Path]) -> ProblemFile:
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except FileNotFoundError:
        raise InputError(f"problem file not found: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"problem file {path} is not valid JSON: {e}")
    return parse_problem(document)


def _subdivide_loop(loop: List[int], position: Dict[Tuple[int, ...], int]) -> List[int]:
    """Rewrite an edge loop of X as an edge loop of its barycentric subdivision."""
    if not loop:
        return []
    if (loop[0],) not in position:
        raise InputError(f"fixed-point loop {loop} starts at {loop[0]}, which is not a vertex")
    out = [position[(loop[0],)]]
    for u, v in zip(loop, loop[1:]):
        if u == v:
            continue
        edge = (min(u, v), max(u, v))
        if edge not in position:
            raise InputError(f"fixed-point loop {loop} steps from {u} to {v}, which is not an edge")
        out.append(position[edge])
        out.append(position[(v,)])
    return out


def build_problem(pf: ProblemFile) -> Problem:
    """
    Build the G-complex and the map, subdividing once when the action is not regular.

    Raises:
        InputError: invalid permutations, an irregular action that may not be subdivided, or a map
            that is not equivariant and simplicial
    """
    gens = [check_permutation(p, pf.group.degree, "group generator") for p in pf.group.generators]
    G = FiniteGroup(pf.group.degree, gens, name="G")
    X = GComplex.from_generator_action(G, pf.complex.vertices, pf.complex.action, pf.complex.simplices)

    if pf.map is not None:
        f = GSimplicialMap(X, tuple(pf.map))
    else:
        images: Dict[Tuple[int, ...], int] = {}
        for simplex, vertex in pf.map_subdivision:
            key = tuple(sorted(simplex))
            if key in images:
                raise InputError(f"map_subdivision lists simplex {list(key)} twice")
            images[key] = vertex
        f = GSimplicialMap(X, subdivision_images=images)
    validate_map(f)

    if pf.group_is_quotient_of is not None:
        logger.info("⚠️ group_is_quotient_of is recorded but not used by the engine")

    fixed = []
    for entry in pf.fixed_points:
        members = G.closure(G.index(check_permutation(p, G.degree, "isotropy generator")) for p in entry.isotropy)
        fixed.append(FixedPointDatum(entry.label, tuple(sorted(members)), entry.object,
                                     tuple(entry.loop), entry.sign, entry.WHz_order))

    jiang = JiangDeclarations()
    if pf.jiang is not None:
        jiang = JiangDeclarations(pf.jiang.quotient_is_jiang, dict(pf.jiang.families),
                                  tuple(pf.jiang.assert_objects))

    violation = X.regularity_violation()
    wants = pf.options.subdivide
    if wants is False and violation is not None:
        g, s = violation
        raise InputError(f"action is not regular (element {g} moves simplex {list(s)} onto itself "
                         f"without fixing it) and subdivision is disabled")
    if wants or violation is not None:
        if f.subdivided:
            raise InputError("the action is not regular and the map is given on the subdivision already")
        sub = barycentric_subdivision(X)
        if violation is not None:
            logger.info(f"⚠️ Action is not regular at simplex {list(violation[1])}; using the barycentric subdivision")
        position = {s: i for i, s in enumerate(sub.barycentres)}
        fixed = [FixedPointDatum(d.label, d.isotropy, d.object, tuple(_subdivide_loop(list(d.loop), position)),
                                 d.sign, d.WHz_order) for d in fixed]
        f = validate_map(subdivide_map(f, sub))
        return Problem(sub.complex, f, jiang, tuple(fixed), pf.options, subdivided=True)
    return Problem(X, f, jiang, tuple(fixed), pf.options)
