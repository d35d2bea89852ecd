"""
End-to-end runs over a problem: objects, per-object traces (in parallel), every invariant, the
bounds and verdicts, and the oracle cross-checks used by `verify`.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from joblib import Parallel, delayed

from .complex import GapReport, GSimplicialMap, check_gap_hypotheses
from .config import EngineConfig
from .covers import NotApplicable
from .errors import InternalConsistencyError, ResourceCapError
from .fundamental import FundObject, objects
from .group_ring import ClassRingElement
from .jiang import DichotomyConclusion, JiangStatus, converse_lefschetz, dichotomy, jiang_status, reduced_class_counts
from .lefschetz import (
    EulerCharacteristicG,
    LambdaG,
    ObjectTrace,
    Summand,
    euler_characteristic_G,
    lambda_G,
    lefschetz_class,
    nielsen_class,
    non_isomorphism_images,
    rational_refined,
    trace_object,
)
from .nielsen import BoundRow, Verdict, bounds_report, compute_NGupper, count_NG, essential, fixed_point_free_verdict
from .oracle import assemble_Lq_from_fixed_data, assemble_nu_from_fixed_data, brute_force_reidemeister, homology_lefschetz
from .problem_file import Problem

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


def effective_config(base: EngineConfig, problem: Problem, **cli_overrides) -> EngineConfig:
    """Flags override the problem file's options, which override the environment."""
    opts = problem.options
    return base.with_overrides(coset_cap=opts.coset_cap, cover_search_cap=opts.cover_search_cap) \
               .with_overrides(**cli_overrides)


def is_identity(f: GSimplicialMap) -> bool:
    return not f.subdivided and f.vertex_images == tuple(range(f.complex.vertex_count))


def trace_all(objs: Sequence[FundObject], f: GSimplicialMap, threads: int = 1) -> List[ObjectTrace]:
    """Per-object lifts and chain maps; the result keeps object order whatever the thread count."""
    if threads <= 1 or len(objs) <= 1:
        return [trace_object(o, f) for o in objs]
    return Parallel(n_jobs=threads, prefer="threads")(delayed(trace_object)(o, f) for o in objs)


@dataclass(frozen=True, eq=False)
class Analysis:
    problem: Problem
    config: EngineConfig
    objects: Tuple[FundObject, ...]
    gap: GapReport
    traces: Tuple[ObjectTrace, ...]
    lam: LambdaG
    nu: LambdaG
    L_G: Tuple[int, ...]
    rational: Tuple[Summand, ...]
    N_G: Tuple[int, ...]
    N_upper_G: Tuple[int, ...]
    bounds: Tuple[BoundRow, ...]
    jiang: JiangStatus
    dichotomy: Tuple[DichotomyConclusion, ...]
    verdict: Verdict
    converse: Verdict
    chi: Optional[EulerCharacteristicG] = None


def list_objects(problem: Problem, config: EngineConfig) -> Tuple[List[FundObject], GapReport]:
    X = problem.complex
    return objects(X, config.coset_cap), check_gap_hypotheses(X)


def run_invariants(problem: Problem, config: EngineConfig) -> Analysis:
    X, f = problem.complex, problem.map
    objs, gap = list_objects(problem, config)
    traces = trace_all(objs, f, config.threads)

    lam = lambda_G(traces)
    nu = nielsen_class(lam, traces, f)
    L = lefschetz_class(lam)
    rational = tuple(rational_refined(t) for t in traces)
    N_G = count_NG(nu)
    for i, n in enumerate(N_G):
        if n > len(essential(lam[i])):
            raise InternalConsistencyError(f"N_G = {n} exceeds the essential classes of lambda_G at object {i}")
    N_upper = compute_NGupper(traces, rational, f, config.cover_search_cap)

    jiang = jiang_status(objs, problem.jiang)
    conclusions = dichotomy(L, lam, N_G, jiang, reduced_class_counts(traces, f))
    chi = euler_characteristic_G(X, objs, traces) if is_identity(f) else None
    analysis = Analysis(
        problem, config, tuple(objs), gap, tuple(traces), lam, nu, L, rational, N_G, N_upper,
        bounds_report(N_G, N_upper, gap), jiang, conclusions,
        fixed_point_free_verdict(lam, gap), converse_lefschetz(L, jiang, gap), chi,
    )
    logger.info(f"✅ Invariants computed for {len(objs)} objects: L_G = {list(L)}, N_G = {list(N_G)}, "
                f"N^G = {list(N_upper)}")
    return analysis


# ---------- verification ----------

@dataclass(frozen=True)
class CheckResult:
    name: str
    object: Optional[int]
    status: str
    detail: str = ""


@dataclass(frozen=True)
class Verification:
    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures


def _same(a: Optional[ClassRingElement], b: Optional[ClassRingElement]) -> bool:
    """Equal coefficients, with None standing for zero."""
    da = {} if a is None else a.as_dict()
    db = {} if b is None else b.as_dict()
    return da == db


def _applicable(summand: Summand) -> Optional[ClassRingElement]:
    return None if isinstance(summand, NotApplicable) else summand


def run_verification(analysis: Analysis) -> Verification:
    """Every oracle that applies to the problem; failures are collected, not raised."""
    problem, config = analysis.problem, analysis.config
    X, f = problem.complex, problem.map
    objs = analysis.objects
    checks: List[CheckResult] = []

    try:
        chi = analysis.chi or euler_characteristic_G(X, objs)
        checks.append(CheckResult("chi_G", None, PASS, f"chi^G = {list(chi.values)}"))
    except InternalConsistencyError as e:
        checks.append(CheckResult("chi_G", None, FAIL, str(e)))

    for i, obj in enumerate(objs):
        engine = _applicable(analysis.lam[i])
        try:
            brute = brute_force_reidemeister(obj, f, config.brute_force_cap)
        except ResourceCapError as e:
            checks.append(CheckResult("brute_force_reidemeister", i, SKIPPED, str(e)))
        except InternalConsistencyError as e:
            checks.append(CheckResult("brute_force_reidemeister", i, FAIL, str(e)))
        else:
            ok = _same(brute, engine)
            detail = "" if ok else f"cell-by-cell {brute and brute.as_dict()} vs engine {engine and engine.as_dict()}"
            checks.append(CheckResult("brute_force_reidemeister", i, PASS if ok else FAIL, detail))

    if X.group.order == 1:
        for i, obj in enumerate(objs):
            if not analysis.traces[i].applicable:
                checks.append(CheckResult("homology_lefschetz", i, SKIPPED, "f moves this component"))
                continue
            expected = homology_lefschetz(X, f, obj.component.simplices)
            ok = expected == analysis.L_G[i]
            checks.append(CheckResult("homology_lefschetz", i, PASS if ok else FAIL,
                                      f"homology {expected}, augmentation {analysis.L_G[i]}"))
    else:
        checks.append(CheckResult("homology_lefschetz", None, SKIPPED, "group is not trivial"))

    if problem.fixed_points:
        classes = [t.lifted.classes if t.applicable else None for t in analysis.traces]
        hit = [non_isomorphism_images(analysis.traces, f, i) if t.applicable else []
               for i, t in enumerate(analysis.traces)]
        nu_data = assemble_nu_from_fixed_data(problem.fixed_points, objs, classes, hit)
        lq_data = assemble_Lq_from_fixed_data(problem.fixed_points, objs, classes)
        for i in range(len(objs)):
            for name, data, engine in (("fixed_point_nu", nu_data[i], _applicable(analysis.nu[i])),
                                       ("fixed_point_Lq", lq_data[i], _applicable(analysis.rational[i]))):
                ok = _same(data, engine)
                detail = "" if ok else f"fixed-point data {data and data.as_dict()} vs engine {engine and engine.as_dict()}"
                checks.append(CheckResult(name, i, PASS if ok else FAIL, detail))
    else:
        checks.append(CheckResult("fixed_point_data", None, SKIPPED, "no fixed-point data in the problem"))

    result = Verification(tuple(checks))
    if result.ok:
        logger.info(f"✅ All {sum(c.status == PASS for c in checks)} oracle checks passed")
    else:
        logger.error(f"❌ {len(result.failures)} oracle checks failed")
    return result
