"""
The invariant engine: refined Lefschetz numbers, lambda_G, the rational refined numbers
L^{QAut(x)}, the equivariant Nielsen class nu_G, the Lefschetz class L_G and chi^G.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .complex import GComplex, GSimplicialMap, are_contiguous
from .covers import (
    ABSOLUTE,
    RELATIVE,
    EquivChainMap,
    LiftedMap,
    NotApplicable,
    chain_map,
    check_boundary_squared,
    check_chain_map,
    map_at_object,
    relative_chain_complex,
)
from .errors import InputError, InternalConsistencyError
from .fundamental import AutExtension, FundObject, induced_class_map, is_isomorphism_class, morphism_exists
from .group_ring import (
    INTEGER,
    RATIONAL,
    ClassRingElement,
    Coefficient,
    GroupRingElement,
    augmentation,
    trace_projection,
)
from .union_find import find_orbits

logger = logging.getLogger(__name__)

Summand = Union[ClassRingElement, NotApplicable]


@dataclass(frozen=True, eq=False)
class ObjectTrace:
    """Lift of f at one object with its relative and absolute chain maps."""

    obj: FundObject
    lifted: Union[LiftedMap, NotApplicable]
    relative: Optional[EquivChainMap] = None
    absolute: Optional[EquivChainMap] = None

    @property
    def applicable(self) -> bool:
        return not isinstance(self.lifted, NotApplicable)


def trace_object(obj: FundObject, f: GSimplicialMap, ext: Optional[AutExtension] = None,
                 verify: bool = True) -> ObjectTrace:
    """Lift f at obj and build both chain maps, checking boundary and chain-map identities."""
    lifted = map_at_object(obj, f, ext)
    if isinstance(lifted, NotApplicable):
        logger.info(f"⚠️ Object {obj.label}: f moves the component, summand continued by 0")
        return ObjectTrace(obj, lifted)
    maps = {}
    for mode in (RELATIVE, ABSOLUTE):
        cx = relative_chain_complex(obj, lifted.extension, mode)
        fm = chain_map(lifted, cx)
        if verify:
            check_boundary_squared(cx)
            check_chain_map(fm)
        maps[mode] = fm
    return ObjectTrace(obj, lifted, maps[RELATIVE], maps[ABSOLUTE])


def refined_lefschetz(fm: EquivChainMap) -> ClassRingElement:
    """
    Alternating sum of projected traces of the diagonal entries.

    Basis cells with a non-trivial stabilizer S contribute |S|^-1 * sum over s in S of the entry
    times s, which makes the absolute mode a rational trace.
    """
    cx = fm.complex
    classes = fm.lifted.classes
    ext = cx.extension
    A = ext.group
    ring = RATIONAL if cx.mode == ABSOLUTE else INTEGER
    total = ClassRingElement.zero(classes, ring)
    for p in sorted(fm.matrices):
        rows = fm.matrices[p]
        if len(rows) != cx.rank(p) or any(len(r) != cx.rank(p) for r in rows):
            raise InputError(f"chain map and complex disagree in dimension {p}")
        for i, row in enumerate(rows):
            entry = row[i]
            if entry.is_zero():
                continue
            stab = cx.stabilizers[p][i]
            if cx.mode == ABSOLUTE:
                spread: Dict[int, Coefficient] = {}
                for alpha, c in entry.terms:
                    for s in stab:
                        key = A.mul(alpha, s)
                        spread[key] = spread.get(key, 0) + c
                entry = GroupRingElement.from_dict(A, spread, RATIONAL).scale(Fraction(1, len(stab)))
            total = total + trace_projection(entry, ext.pi1_embedding, classes).scale((-1) ** p)
    return total


@dataclass(frozen=True, eq=False)
class LambdaG:
    """One summand per object, NotApplicable where f does not preserve the component."""

    summands: Tuple[Summand, ...]

    def __len__(self) -> int:
        return len(self.summands)

    def __getitem__(self, index: int) -> Summand:
        return self.summands[index]

    def is_zero(self) -> bool:
        return all(isinstance(s, NotApplicable) or s.is_zero() for s in self.summands)

    def nonzero_objects(self) -> List[int]:
        return [i for i, s in enumerate(self.summands) if not isinstance(s, NotApplicable) and not s.is_zero()]


def lambda_G(traces: Sequence[ObjectTrace]) -> LambdaG:
    return LambdaG(tuple(refined_lefschetz(t.relative) if t.applicable else t.lifted for t in traces))


def rational_refined(trace: ObjectTrace) -> Summand:
    """L^{QAut(x)}: the absolute-mode weighted trace."""
    if not trace.applicable:
        return trace.lifted
    return refined_lefschetz(trace.absolute)


def lefschetz_class(lam: LambdaG) -> Tuple[int, ...]:
    return tuple(0 if isinstance(s, NotApplicable) else int(augmentation(s)) for s in lam.summands)


def non_isomorphism_images(traces: Sequence[ObjectTrace], f: GSimplicialMap, index: int) -> List[int]:
    """Classes at object `index` hit by some (sigma,[w])^* with sigma not an isomorphism."""
    src = traces[index]
    hit = set()
    for dst in traces:
        if not dst.applicable or is_isomorphism_class(src.obj, dst.obj):
            continue
        if not morphism_exists(src.obj, dst.obj):
            continue
        mc = induced_class_map(src.obj, dst.obj, f, src.lifted.classes, dst.lifted.classes)
        hit.update(mc.image())
    return sorted(hit)


def nielsen_class(lam: LambdaG, traces: Sequence[ObjectTrace], f: GSimplicialMap) -> LambdaG:
    """nu_G: lambda_G with the classes in images of non-isomorphisms removed."""
    out: List[Summand] = []
    for i, summand in enumerate(lam.summands):
        if isinstance(summand, NotApplicable):
            out.append(summand)
            continue
        hit = set(non_isomorphism_images(traces, f, i))
        out.append(summand.restrict(k for k in summand.support() if k not in hit))
    return LambdaG(tuple(out))


# ---------- chi^G ----------

@dataclass(frozen=True)
class EulerCharacteristicG:
    values: Tuple[int, ...]


def quotient_relative_euler(obj: FundObject) -> int:
    """chi(WH_x \\ X^H(x), WH_x \\ X^{>H}(x)) by counting signed orbits of relative simplices."""
    X = obj.complex
    singular = set(obj.singular.simplices)
    cells = [s for s in obj.component.simplices if s not in singular]
    sections = [obj.section(w) for w in obj.weyl_stabilizer.members]
    orbits = find_orbits(sections, cells, X.act_simplex)
    return sum((-1) ** (len(o[0]) - 1) for o in orbits)


def euler_characteristic_G(X: GComplex, objs: Sequence[FundObject],
                           id_traces: Optional[Sequence[ObjectTrace]] = None) -> EulerCharacteristicG:
    """
    chi^G(X) as L_G(id), checked against the signed orbit count of relative cells.

    Raises:
        InternalConsistencyError: the two computations disagree, or lambda_G(id) is not a multiple
            of the trivial class
    """
    identity = GSimplicialMap.identity(X)
    traces = id_traces if id_traces is not None else [trace_object(o, identity) for o in objs]
    lam = lambda_G(traces)
    values = []
    for obj, summand in zip(objs, lam.summands):
        counted = quotient_relative_euler(obj)
        if isinstance(summand, NotApplicable):
            raise InternalConsistencyError(f"identity does not preserve the component of {obj.label}")
        stray = [k for k in summand.support() if k != summand.classes.representative_of(0)]
        if stray or augmentation(summand) != counted:
            raise InternalConsistencyError(
                f"chi^G mismatch at {obj.label}: trace gives {dict(summand.terms)}, orbit count {counted}"
            )
        values.append(counted)
    logger.info(f"✅ chi^G(X) = {values}")
    return EulerCharacteristicG(tuple(values))


# ---------- homotopy transport ----------

def homotopy_transport(obj: FundObject, f0: LiftedMap, f1: LiftedMap) -> Dict[int, int]:
    """
    Identify the twisted classes of f1 with those of f0 for contiguous maps.

    The straight-line homotopy carries the lift of f0 to c times the lift of f1, where c is the edge
    value from f0(x0) to f1(x0); so the class of a for f1 matches the class of c*a for f0.
    """
    if not are_contiguous(f0.f, f1.f):
        raise InputError("homotopy transport needs contiguous plain simplicial maps")
    pi = obj.pi1
    c = pi.edge_value(f0.f(obj.basepoint), f1.f(obj.basepoint))
    mapping: Dict[int, int] = {}
    for cls in f1.classes.classes:
        images = {f0.classes.representative_of(pi.group.mul(c, a)) for a in cls}
        if len(images) != 1:
            raise InternalConsistencyError(f"homotopy transport splits the class of {cls[0]}")
        mapping[cls[0]] = images.pop()
    return mapping


def transport_summand(summand: ClassRingElement, mapping: Dict[int, int],
                      target: ClassRingElement) -> ClassRingElement:
    """Re-key a class ring element along a class identification onto target's class set."""
    acc: Dict[int, Coefficient] = {}
    for k, c in summand.terms:
        acc[mapping[k]] = acc.get(mapping[k], 0) + c
    return ClassRingElement.from_dict(target.classes, acc, summand.ring)
