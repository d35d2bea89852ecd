"""
Equivariant Nielsen numbers N_G and N^G, bounds on fixed-point orbit counts and the
fixed-point-free verdict.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import GapReport
from .config import DEFAULT_COVER_SEARCH_CAP
from .covers import NotApplicable
from .errors import CoverSearchTooLarge
from .fundamental import MorClass, induced_class_map, morphism_exists
from .group_ring import ClassRingElement
from .lefschetz import LambdaG, ObjectTrace, Summand

logger = logging.getLogger(__name__)

AFFIRMATIVE = "affirmative"
CONDITIONAL = "conditional"
OBSTRUCTED = "obstructed"


def essential(summand: Summand) -> Tuple[int, ...]:
    """Class representatives with a non-zero coefficient (none for NotApplicable)."""
    if isinstance(summand, NotApplicable):
        return ()
    return tuple(summand.support())


@dataclass(frozen=True)
class EssentialClassTable:
    integer: Tuple[Tuple[int, ...], ...]    # essential classes of nu_G, per object
    rational: Tuple[Tuple[int, ...], ...]   # essential classes of L^{QAut(x)}, per object


def essential_class_table(nu: LambdaG, rational: Sequence[Summand]) -> EssentialClassTable:
    return EssentialClassTable(tuple(essential(s) for s in nu.summands), tuple(essential(s) for s in rational))


def count_NG(nu: LambdaG) -> Tuple[int, ...]:
    return tuple(len(essential(s)) for s in nu.summands)


# ---------- minimum cover ----------

def _bitcount(x: int) -> int:
    return bin(x).count("1")


def _prune(masks: Sequence[int]) -> List[int]:
    """Drop empty, duplicate and dominated masks (a mask contained in another)."""
    kept: List[int] = []
    for m in sorted(set(m for m in masks if m), key=_bitcount, reverse=True):
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def minimum_cover(universe: int, masks: Sequence[int], cap: int = DEFAULT_COVER_SEARCH_CAP) -> int:
    """
    Size of a smallest family of masks whose union is `universe`.

    Depth-first branch and bound: greedy upper bound, ceil(remaining / widest mask) lower bound,
    branching on the uncovered element with the fewest covering masks.

    Raises:
        CoverSearchTooLarge: more than `cap` candidate masks remain after pruning
    """
    if universe == 0:
        return 0
    masks = _prune([m & universe for m in masks])
    if len(masks) > cap:
        raise CoverSearchTooLarge(f"N^G cover search has {len(masks)} candidate classes (cap {cap})")
    if any(not any((m >> e) & 1 for m in masks) for e in range(universe.bit_length()) if (universe >> e) & 1):
        raise ValueError("universe cannot be covered by the given masks")

    covered, best = 0, 0
    while covered != universe:
        covered |= max(masks, key=lambda m: _bitcount(m & ~covered))
        best += 1

    def search(current: int, used: int) -> None:
        nonlocal best
        if current == universe:
            best = min(best, used)
            return
        remaining = universe & ~current
        widest = max(_bitcount(m & remaining) for m in masks)
        if used + math.ceil(_bitcount(remaining) / widest) >= best:
            return
        element, frequency = None, None
        r = remaining
        while r:
            e = (r & -r).bit_length() - 1
            count = sum(1 for m in masks if (m >> e) & 1)
            if frequency is None or count < frequency:
                element, frequency = e, count
            r &= r - 1
        branches = sorted((m for m in masks if (m >> element) & 1),
                          key=lambda m: _bitcount(m & remaining), reverse=True)
        for m in branches:
            if used + 1 >= best:
                break
            search(current | m, used + 1)

    search(0, 0)
    return best


def brute_force_minimum_cover(universe: int, masks: Sequence[int]) -> int:
    """Exhaustive powerset search, for cross-checking small instances."""
    if universe == 0:
        return 0
    for size in range(1, len(masks) + 1):
        for combo in combinations(masks, size):
            union = 0
            for m in combo:
                union |= m
            if union & universe == universe:
                return size
    raise ValueError("universe cannot be covered by the given masks")


# ---------- N^G ----------

def compute_NGupper(traces: Sequence[ObjectTrace], rational: Sequence[Summand], f,
                    cap: int = DEFAULT_COVER_SEARCH_CAP) -> Tuple[int, ...]:
    """
    N^G per object: the fewest classes beta at objects y >= x covering every essential rational
    class alpha at every z >= x, where beta covers alpha when Mor(z, y) is non-empty and the induced
    map sends beta to alpha.
    """
    objs = [t.obj for t in traces]
    n = len(objs)
    above = [[morphism_exists(objs[x], objs[y]) for y in range(n)] for x in range(n)]
    induced: Dict[Tuple[int, int], MorClass] = {}

    def class_map(z: int, y: int) -> MorClass:
        if (z, y) not in induced:
            induced[(z, y)] = induced_class_map(objs[z], objs[y], f, traces[z].lifted.classes,
                                                traces[y].lifted.classes)
        return induced[(z, y)]

    out = []
    for x in range(n):
        region = [z for z in range(n) if above[x][z] and traces[z].applicable]
        elements = [(z, a) for z in region for a in essential(rational[z])]
        bit = {e: k for k, e in enumerate(elements)}
        masks = []
        for y in region:
            for beta in traces[y].lifted.classes.representatives:
                m = 0
                for z in region:
                    if above[z][y]:
                        alpha = class_map(z, y)(beta)
                        if (z, alpha) in bit:
                            m |= 1 << bit[(z, alpha)]
                masks.append(m)
        size = minimum_cover((1 << len(elements)) - 1, masks, cap)
        logger.debug(f"N^G at object {x}: {len(elements)} essential classes above, cover size {size}")
        out.append(size)
    return tuple(out)


# ---------- bounds and verdicts ----------

@dataclass(frozen=True)
class BoundRow:
    N_G: int
    N_upper_G: int
    exact: bool
    note: str = ""

    @property
    def M_G(self) -> str:
        return f"={self.N_G}" if self.exact else f">={self.N_G}"

    @property
    def M_upper_G(self) -> str:
        return f"={self.N_upper_G}" if self.exact else f">={self.N_upper_G}"


def bounds_report(N_G: Sequence[int], N_upper: Sequence[int], gap: GapReport) -> Tuple[BoundRow, ...]:
    """M_G = N_G and M^G = N^G when the gap hypotheses hold everywhere, lower bounds otherwise."""
    exact = gap.holds
    failures = [f"object {i}: {row.describe()}" for i, row in enumerate(gap.rows) if not row.holds]
    note = "" if exact else "exactness not guaranteed (gap hypotheses fail at " + ", ".join(failures) + ")"
    return tuple(BoundRow(a, b, exact, note) for a, b in zip(N_G, N_upper))


@dataclass(frozen=True)
class Verdict:
    status: str
    message: str
    objects: Tuple[int, ...] = ()


def fixed_point_free_verdict(lam: LambdaG, gap: GapReport) -> Verdict:
    if not lam.is_zero():
        where = tuple(lam.nonzero_objects())
        return Verdict(OBSTRUCTED, f"has an essential fixed-point obstruction at objects {list(where)}", where)
    if gap.holds:
        return Verdict(AFFIRMATIVE, "lambda_G(f) = 0: f is G-homotopic to a fixed point free G-map")
    failed = tuple(i for i, row in enumerate(gap.rows) if not row.holds)
    return Verdict(CONDITIONAL, "λ vanishes; theorem hypotheses unmet (gap)", failed)


def object_verdict(lam: LambdaG, gap: GapReport, index: int) -> str:
    """The verdict as it reads at one object: obstructed there, or the global status of a vanishing lambda_G."""
    if index in lam.nonzero_objects():
        return OBSTRUCTED
    if not lam.is_zero():
        return CONDITIONAL
    return AFFIRMATIVE if gap.holds else CONDITIONAL


def classical_nielsen_number(summand: Optional[ClassRingElement]) -> int:
    """N(f) for trivial G: the number of essential Reidemeister classes."""
    return 0 if summand is None else len(summand.support())
