"""
Report models, their JSON and text renderings, and atomic report files.
"""

import json
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field

from .complex import GapReport
from .covers import NotApplicable
from .fundamental import FundObject
from .group_ring import Coefficient
from .lefschetz import Summand
from .nielsen import Verdict, classical_nielsen_number, object_verdict

Exact = Union[int, str]


def exact(value: Coefficient) -> Exact:
    """Integers stay integers, other rationals become "p/q"."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def integer_terms(summand: Summand) -> List[List[int]]:
    """[[class_rep, coeff], ...]; a summand that is not applicable renders as 0."""
    if isinstance(summand, NotApplicable):
        return []
    return [[rep, int(c)] for rep, c in summand.terms]


def rational_terms(summand: Summand) -> List[List[int]]:
    """[[class_rep, num, den], ...] in lowest terms."""
    if isinstance(summand, NotApplicable):
        return []
    return [[rep, Fraction(c).numerator, Fraction(c).denominator] for rep, c in summand.terms]


# ---------- models ----------

class ObjectRow(BaseModel):
    """One isomorphism class of the fundamental category."""
    object: int
    isotropy: List[int]
    isotropy_order: int
    component_vertices: List[int]
    basepoint: int
    orbit_size: int
    pi1_order: int
    weyl_order: int
    aut_order: int
    dimension: Optional[int]
    singular_dimension: Optional[int]
    gap_holds: bool
    gap_note: str


class ObjectTable(BaseModel):
    vertices: int
    group_order: int
    subdivided: bool
    objects: List[ObjectRow]


class InvariantRow(BaseModel):
    """Per-object invariants; `lambda`, `nu` and `Lq` list class terms, `applicable` is the n/a flag."""
    model_config = ConfigDict(populate_by_name=True)

    object: int
    applicable: bool
    lambda_: List[List[int]] = Field(alias="lambda")
    nu: List[List[int]]
    L: int
    Lq: List[List[int]]
    twisted_classes: Optional[int]
    N_G: int
    N_upper_G: int
    M_G: str
    M_upper_G: str
    verdict: str
    jiang: str
    jiang_grounds: List[str]
    dichotomy: str
    dichotomy_N_G: Optional[int]
    classical_N: Optional[int] = None   # trivial group only


class VerdictModel(BaseModel):
    status: str
    message: str
    objects: List[int] = Field(default_factory=list)


class VerdictBlock(BaseModel):
    fixed_point_free: VerdictModel
    converse_lefschetz: VerdictModel
    bounds_note: str = ""


class InvariantReport(BaseModel):
    problem: ObjectTable
    invariants: List[InvariantRow]
    verdicts: VerdictBlock
    chi_G: Optional[List[int]] = None
    summary: Dict[str, Any]


class CheckRow(BaseModel):
    name: str
    object: Optional[int]
    status: str
    detail: str = ""


class VerificationReport(BaseModel):
    ok: bool
    checks: List[CheckRow]


# ---------- builders ----------

def object_rows(objs: Sequence[FundObject], gap: GapReport) -> List[ObjectRow]:
    rows = []
    for obj, g in zip(objs, gap.rows):
        rows.append(ObjectRow(
            object=obj.index,
            isotropy=list(obj.subgroup.members),
            isotropy_order=obj.subgroup.order,
            component_vertices=list(obj.component.vertices),
            basepoint=obj.basepoint,
            orbit_size=obj.orbit_size,
            pi1_order=obj.pi1.order,
            weyl_order=obj.weyl_stabilizer.order,
            aut_order=obj.pi1.order * obj.weyl_stabilizer.order,
            dimension=g.dimension,
            singular_dimension=g.singular_dimension,
            gap_holds=g.holds,
            gap_note=g.describe(),
        ))
    return rows


def object_table(problem, objs: Sequence[FundObject], gap: GapReport) -> ObjectTable:
    X = problem.complex
    return ObjectTable(vertices=X.vertex_count, group_order=X.group.order, subdivided=problem.subdivided,
                       objects=object_rows(objs, gap))


def _verdict(v: Verdict) -> VerdictModel:
    return VerdictModel(status=v.status, message=v.message, objects=list(v.objects))


def _coefficients(summand: Summand) -> List[Exact]:
    if isinstance(summand, NotApplicable):
        return []
    return [exact(c) for c in sorted(Fraction(c) for _, c in summand.terms)]


def canonical_summary(analysis) -> Dict[str, Any]:
    """Label-free digest of an analysis; equal for inputs that differ only by vertex names."""
    rows = []
    for i, obj in enumerate(analysis.objects):
        rows.append([
            obj.subgroup.order, obj.pi1.order, obj.weyl_stabilizer.order, obj.orbit_size,
            analysis.gap.rows[i].dimension if analysis.gap.rows[i].dimension is not None else -1,
            analysis.L_G[i], analysis.N_G[i], analysis.N_upper_G[i],
            [str(c) for c in _coefficients(analysis.lam[i])],
            [str(c) for c in _coefficients(analysis.rational[i])],
        ])
    rows.sort(key=json.dumps)
    return {
        "objects": rows,
        "verdict": analysis.verdict.status,
        "converse": analysis.converse.status,
        "chi_G": sorted(analysis.chi.values) if analysis.chi else None,
    }


def invariant_report(analysis) -> InvariantReport:
    rows = []
    trivial_group = analysis.problem.complex.group.order == 1
    for i, trace in enumerate(analysis.traces):
        bound = analysis.bounds[i]
        jiang = analysis.jiang[i]
        conclusion = analysis.dichotomy[i]
        rows.append(InvariantRow(
            object=i,
            applicable=trace.applicable,
            lambda_=integer_terms(analysis.lam[i]),
            nu=integer_terms(analysis.nu[i]),
            L=analysis.L_G[i],
            Lq=rational_terms(analysis.rational[i]),
            twisted_classes=len(trace.lifted.classes) if trace.applicable else None,
            N_G=analysis.N_G[i],
            N_upper_G=analysis.N_upper_G[i],
            M_G=bound.M_G,
            M_upper_G=bound.M_upper_G,
            verdict=object_verdict(analysis.lam, analysis.gap, i),
            jiang=jiang.kind,
            jiang_grounds=list(jiang.grounds),
            dichotomy=conclusion.message,
            dichotomy_N_G=conclusion.N_G,
            classical_N=classical_nielsen_number(analysis.lam[i] if trace.applicable else None)
            if trivial_group else None,
        ))
    note = analysis.bounds[0].note if analysis.bounds else ""
    return InvariantReport(
        problem=object_table(analysis.problem, analysis.objects, analysis.gap),
        invariants=rows,
        verdicts=VerdictBlock(fixed_point_free=_verdict(analysis.verdict),
                              converse_lefschetz=_verdict(analysis.converse), bounds_note=note),
        chi_G=list(analysis.chi.values) if analysis.chi else None,
        summary=canonical_summary(analysis),
    )


def verification_report(verification) -> VerificationReport:
    return VerificationReport(ok=verification.ok, checks=[
        CheckRow(name=c.name, object=c.object, status=c.status, detail=c.detail) for c in verification.checks
    ])


# ---------- rendering ----------

def to_json(model: BaseModel) -> str:
    """Byte-stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(model.model_dump(mode="json", by_alias=True), sort_keys=True, indent=2) + "\n"


def _table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_objects_text(table: ObjectTable) -> str:
    head = f"{len(table.objects)} objects (vertices={table.vertices}, |G|={table.group_order}" \
           f"{', subdivided' if table.subdivided else ''})"
    rows = [[o.object, o.isotropy, o.basepoint, len(o.component_vertices), o.pi1_order, o.weyl_order,
             o.dimension, o.gap_note] for o in table.objects]
    return head + "\n" + _table(["id", "H", "x0", "verts", "|pi1|", "|WH_x|", "dim", "gap"], rows) + "\n"


def render_invariants_text(report: InvariantReport) -> str:
    def show(terms: List[List[int]], applicable: bool) -> str:
        if not applicable:
            return "0 (n/a)"
        shown = []
        for rep, *value in terms:
            c = value[0] if len(value) == 1 or value[1] == 1 else f"{value[0]}/{value[1]}"
            shown.append(f"{c}*[{rep}]")
        return " + ".join(shown) or "0"
    rows = [[r.object, show(r.lambda_, r.applicable), show(r.nu, r.applicable), r.L,
             show(r.Lq, r.applicable), r.N_G, r.N_upper_G, r.M_G, r.M_upper_G, r.jiang, r.verdict]
            for r in report.invariants]
    parts = [
        render_objects_text(report.problem),
        _table(["id", "lambda_G", "nu_G", "L_G", "L^QAut", "N_G", "N^G", "M_G", "M^G", "Jiang", "verdict"],
               rows),
        "",
        f"fixed-point-free: {report.verdicts.fixed_point_free.message}",
        f"converse Lefschetz: {report.verdicts.converse_lefschetz.message}",
    ]
    if report.verdicts.bounds_note:
        parts.append(f"bounds: {report.verdicts.bounds_note}")
    for r in report.invariants:
        parts.append(f"dichotomy at {r.object}: {r.dichotomy}")
    if report.chi_G is not None:
        parts.append(f"chi^G(X) = {report.chi_G}")
    return "\n".join(parts) + "\n"


def render_verification_text(report: VerificationReport) -> str:
    rows = [[c.name, "-" if c.object is None else c.object, c.status, c.detail] for c in report.checks]
    verdict = "all checks passed" if report.ok else "MISMATCH"
    return _table(["check", "object", "status", "detail"], rows) + f"\n{verdict}\n"


def write_file_atomically(file_path: Path, content: str) -> None:
    """Write file atomically by writing to temp file then renaming; the temp file never outlives a failure."""
    file_path = Path(file_path)
    temp_path: Optional[Path] = None
    try:
        with tempfile.NamedTemporaryFile(mode="w", delete=False, dir=file_path.parent, suffix=".tmp") as temp_file:
            temp_path = Path(temp_file.name)
            temp_file.write(content)
        temp_path.replace(file_path)
    except BaseException:
        if temp_path is not None:
            temp_path.unlink(missing_ok=True)
        raise
