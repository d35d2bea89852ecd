"""
G-Jiang status per object and the theorems that turn Lefschetz data into Nielsen data there.

Jiang-ness is never computed from self-homotopies. It is detected (trivial pi1), declared through
a family (lens, h_space, homogeneous, simply_connected, or a product of these), derived from a
free action with a Jiang quotient, or asserted by the user.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .complex import GapReport, GSimplicialMap
from .covers import NotApplicable
from .errors import InputError, InternalConsistencyError
from .fundamental import FundObject
from .lefschetz import LambdaG, ObjectTrace, non_isomorphism_images
from .nielsen import AFFIRMATIVE, Verdict

logger = logging.getLogger(__name__)

SIMPLY_CONNECTED = "DetectedSimplyConnected"
DECLARED_FAMILY = "DeclaredFamily"
FREE_QUOTIENT = "FreeQuotientRule"
USER_ASSERTED = "UserAsserted"
UNKNOWN = "Unknown"

FAMILIES = ("lens", "h_space", "homogeneous", "simply_connected")

NEGATIVE = "negative"
CONCLUDED = "concluded"
WITHHELD = "withheld"

FamilySpec = Union[str, Sequence[str]]


@dataclass(frozen=True)
class JiangDeclarations:
    quotient_is_jiang: bool = False
    families: Dict[str, FamilySpec] = field(default_factory=dict)   # "all" or object id -> family
    assert_objects: Tuple[int, ...] = ()


@dataclass(frozen=True)
class JiangEntry:
    kind: str
    grounds: Tuple[str, ...]
    family: Tuple[str, ...] = ()

    @property
    def is_jiang(self) -> bool:
        return self.kind != UNKNOWN


@dataclass(frozen=True)
class JiangStatus:
    entries: Tuple[JiangEntry, ...]

    def __getitem__(self, index: int) -> JiangEntry:
        return self.entries[index]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def all_jiang(self) -> bool:
        return all(e.is_jiang for e in self.entries)

    def unknown_objects(self) -> List[int]:
        return [i for i, e in enumerate(self.entries) if not e.is_jiang]


def _family_tuple(spec: FamilySpec) -> Tuple[str, ...]:
    names = (spec,) if isinstance(spec, str) else tuple(spec)
    if not names:
        raise InputError("empty Jiang family declaration")
    bad = [n for n in names if n not in FAMILIES]
    if bad:
        raise InputError(f"unknown Jiang family {bad[0]!r}; expected one of {list(FAMILIES)}")
    return names


def _declared_families(objs: Sequence[FundObject], decl: JiangDeclarations) -> Dict[int, Tuple[str, ...]]:
    out: Dict[int, Tuple[str, ...]] = {}
    for target, spec in decl.families.items():
        names = _family_tuple(spec)
        if str(target) == "all":
            indices = range(len(objs))
        else:
            try:
                index = int(target)
            except ValueError:
                raise InputError(f"Jiang family target {target!r} is neither an object id nor 'all'")
            if not 0 <= index < len(objs):
                raise InputError(f"Jiang family target {index} is not an object id")
            indices = [index]
        for i in indices:
            if "simply_connected" in names and len(names) == 1 and objs[i].pi1.order != 1:
                raise InputError(f"object {i} is declared simply connected but pi1 has order {objs[i].pi1.order}")
            out[i] = names
    return out


def _free_and_connected(objs: Sequence[FundObject]) -> bool:
    return len(objs) == 1 and objs[0].subgroup.order == 1 and objs[0].orbit_size == 1


def jiang_status(objs: Sequence[FundObject], declarations: Optional[JiangDeclarations] = None) -> JiangStatus:
    """
    Status of every object. `kind` is the first rule that applies in the order simply connected,
    family declaration, free-quotient rule, user assertion; `grounds` lists all that apply.
    """
    decl = declarations or JiangDeclarations()
    for i in decl.assert_objects:
        if not 0 <= i < len(objs):
            raise InputError(f"Jiang assertion names object {i}, which does not exist")
    families = _declared_families(objs, decl)
    free_quotient = decl.quotient_is_jiang and _free_and_connected(objs)
    if decl.quotient_is_jiang and not free_quotient:
        logger.info("⚠️ quotient_is_jiang ignored: the action is not free on a connected complex")

    entries = []
    for i, obj in enumerate(objs):
        grounds = []
        if obj.pi1.order == 1:
            grounds.append(SIMPLY_CONNECTED)
        if i in families:
            grounds.append(DECLARED_FAMILY)
        if free_quotient:
            grounds.append(FREE_QUOTIENT)
        if i in decl.assert_objects:
            grounds.append(USER_ASSERTED)
        kind = grounds[0] if grounds else UNKNOWN
        entries.append(JiangEntry(kind, tuple(grounds), families.get(i, ())))
        logger.debug(f"Jiang status of object {i}: {kind} (grounds {grounds})")
    return JiangStatus(tuple(entries))


# ---------- dichotomy ----------

def reduced_class_counts(traces: Sequence[ObjectTrace], f: GSimplicialMap) -> Tuple[int, ...]:
    """Twisted classes per object that no non-isomorphism reaches (0 where f moves the component)."""
    out = []
    for i, t in enumerate(traces):
        if not t.applicable:
            out.append(0)
            continue
        out.append(len(t.lifted.classes) - len(non_isomorphism_images(traces, f, i)))
    return tuple(out)


@dataclass(frozen=True)
class DichotomyConclusion:
    status: str
    N_G: Optional[int] = None
    message: str = ""


def dichotomy(L_G: Sequence[int], lam: LambdaG, N_G: Sequence[int], jiang: JiangStatus,
              class_counts: Sequence[int]) -> Tuple[DichotomyConclusion, ...]:
    """
    At a Jiang object, L_G = 0 forces lambda_G = 0 and N_G = 0, and L_G != 0 forces N_G to be the
    number of classes outside the images of non-isomorphisms.

    Raises:
        InternalConsistencyError: the engine's N_G or lambda_G contradicts the prediction
        InputError: a declared (not detected) Jiang object has non-constant lambda_G coefficients
    """
    out = []
    for i, entry in enumerate(jiang.entries):
        if not entry.is_jiang:
            out.append(DichotomyConclusion(WITHHELD, None, "Jiang hypothesis unverified"))
            continue
        summand = lam[i]
        if not isinstance(summand, NotApplicable):
            coefficients = {summand.coefficient(k) for k in summand.classes.representatives}
            if len(coefficients) > 1:
                if entry.kind == SIMPLY_CONNECTED:
                    raise InternalConsistencyError(f"lambda_G coefficients differ at simply connected object {i}")
                raise InputError(f"object {i} is declared Jiang ({entry.kind}) but lambda_G has unequal "
                                 f"coefficients {sorted(coefficients)}")
        if L_G[i] == 0:
            if not isinstance(summand, NotApplicable) and not summand.is_zero():
                raise InternalConsistencyError(f"L_G = 0 but lambda_G != 0 at Jiang object {i}")
            predicted, message = 0, "L_G = 0, so lambda_G = 0 and N_G = 0"
        else:
            predicted = class_counts[i]
            message = f"L_G = {L_G[i]} != 0, so N_G = #classes = {predicted}"
        if predicted != N_G[i]:
            raise InternalConsistencyError(f"dichotomy predicts N_G = {predicted} at object {i}, engine has {N_G[i]}")
        out.append(DichotomyConclusion(CONCLUDED, predicted, message))
    return tuple(out)


def converse_lefschetz(L_G: Sequence[int], jiang: JiangStatus, gap: GapReport) -> Verdict:
    """Affirmative only when L_G vanishes, every object is Jiang and the gap hypotheses hold."""
    failing = []
    nonzero = tuple(i for i, v in enumerate(L_G) if v != 0)
    if nonzero:
        failing.append(f"L_G(f) != 0 at objects {list(nonzero)}")
    if not jiang.all_jiang:
        failing.append(f"Jiang hypothesis unverified at objects {jiang.unknown_objects()}")
    gap_failed = [i for i, row in enumerate(gap.rows) if not row.holds]
    if gap_failed:
        failing.append(f"gap hypotheses fail at objects {gap_failed}")
    if not failing:
        return Verdict(AFFIRMATIVE, "L_G(f) = 0: f is G-homotopic to a fixed point free G-map")
    return Verdict(NEGATIVE, "converse Lefschetz not applicable: " + "; ".join(failing), nonzero)
