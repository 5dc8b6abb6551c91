import csv
import io
import logging
from html import escape
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict

from ..analysis import AnalysisState, checks_passed
from ..config import ToleranceConfig
from ..flow import FlowConfig, SweepSummary, TableRow
from ..lattice import extended_f_vector
from ..templates import SWEEP_PAGE
from ..utils import ModelSerializer

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"

SWEEP_COLUMNS = [
    "trial", "n", "converged", "collapsed", "d", "in_range", "is_asp", "c", "residual",
    "f0", "f1", "f2", "f3", "f03", "eG", "bound", "equality", "g2",
]


class InputEcho(BaseModel):
    n: int
    points: List[Tuple[float, float, float, float]]
    tolerances: ToleranceConfig


class PolaritySection(BaseModel):
    is_asp: bool
    c: Optional[float] = None
    residual: Optional[float] = None
    reason: Optional[str] = None


class DiameterSection(BaseModel):
    d_spherical: float
    d_euclidean: float
    eG: int


class KalaiSection(BaseModel):
    lhs: int
    rhs: int


class Theorem1Section(BaseModel):
    bound: int
    ok: bool
    equality: bool
    chain_ok: bool
    f0_equals_f3: bool


class VerifySection(BaseModel):
    g2_census: int
    g2_flag: int
    kalai: KalaiSection
    stanley_ok: bool
    theorem1: Union[Theorem1Section, Literal["not-applicable"]]
    dual_g2: Optional[int] = None
    dual_f_vector_reversed: Optional[bool] = None
    facet_identities_ok: bool
    passed: bool


class ReportDocument(BaseModel):
    """The JSON analysis report of one polytope."""

    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    input: InputEcho
    f_vector: Tuple[int, int, int, int]
    f03: int
    flag_numbers: Dict[str, int]
    polygon_census: Dict[str, int]
    euler_residual: int
    polarity: PolaritySection
    diameter: DiameterSection
    verify: VerifySection
    checks_passed: bool


def build_report(state: AnalysisState) -> ReportDocument:
    verify = state.verify
    report = state.polarity
    if report is not None:
        polarity = PolaritySection(is_asp=report.is_asp, c=report.c, residual=report.residual, reason=report.reason)
    else:
        polarity = PolaritySection(is_asp=False, reason=state.polarity_error)

    theorem1 = "not-applicable" if verify.theorem1 is None else Theorem1Section(**verify.theorem1.model_dump())
    return ReportDocument(
        input=InputEcho(
            n=state.cloud.n,
            points=[tuple(p) for p in state.cloud.points.tolist()],
            tolerances=state.tol,
        ),
        f_vector=state.stats.f,
        f03=state.stats.f03,
        flag_numbers=extended_f_vector(state.lattice),
        polygon_census={str(j): count for j, count in state.census.a.items()},
        euler_residual=state.euler,
        polarity=polarity,
        diameter=DiameterSection(
            d_spherical=state.graph.spherical_d,
            d_euclidean=state.graph.max_dist,
            eG=state.graph.e,
        ),
        verify=VerifySection(
            g2_census=verify.g2_census,
            g2_flag=verify.g2_flag,
            kalai=KalaiSection(lhs=verify.kalai_lhs, rhs=verify.kalai_rhs),
            stanley_ok=verify.stanley_ok,
            theorem1=theorem1,
            dual_g2=verify.dual_g2,
            dual_f_vector_reversed=state.dual_reversed,
            facet_identities_ok=verify.facet_identities_ok,
            passed=verify.passed,
        ),
        checks_passed=checks_passed(state),
    )


def render_text(doc: ReportDocument, source: str = "") -> str:
    """Two-column human-readable summary of a report."""
    v = doc.verify
    if v.theorem1 == "not-applicable":
        theorem1 = "not-applicable"
    else:
        theorem1 = f"bound {v.theorem1.bound}, ok={v.theorem1.ok}, equality={v.theorem1.equality}"
    census = ", ".join(f"a{j}={count}" for j, count in doc.polygon_census.items())
    c = "" if doc.polarity.c is None else f"{doc.polarity.c:.12g}"
    rows = [
        ("input", f"{source} ({doc.input.n} points)" if source else f"{doc.input.n} points"),
        ("f-vector", " ".join(str(x) for x in doc.f_vector)),
        ("f03", str(doc.f03)),
        ("polygons", census),
        ("euler residual", str(doc.euler_residual)),
        ("anti-self-polar", f"{doc.polarity.is_asp} c={c}" + (f" ({doc.polarity.reason})" if doc.polarity.reason else "")),
        ("diameter", f"d={doc.diameter.d_spherical:.12g} rad, e(G)={doc.diameter.eG}"),
        ("g2", f"{v.g2_census} (census) / {v.g2_flag} (flags)"),
        ("kalai", f"{v.kalai.lhs} >= {v.kalai.rhs}"),
        ("stanley", str(v.stanley_ok)),
        ("edge bound", theorem1),
        ("dual g2", "" if v.dual_g2 is None else str(v.dual_g2)),
        ("checks", "pass" if doc.checks_passed else "FAIL"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {value}" for k, value in rows) + "\n"


def sweep_csv(rows: List[TableRow]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(ModelSerializer.flatten(row, SWEEP_COLUMNS))
    return buffer.getvalue()


def write_sweep_csv(rows: List[TableRow], path: Union[str, Path]) -> None:
    Path(path).write_text(sweep_csv(rows))
    logger.info(f"wrote {len(rows)} rows to {path}")


def sweep_html(rows: List[TableRow], summary: SweepSummary, config: Optional[FlowConfig] = None) -> str:
    """Static HTML table carrying exactly the CSV cells, followed by the sweep summary."""
    header = "".join(f"<th>{escape(c)}</th>" for c in SWEEP_COLUMNS)
    body = []
    for row in rows:
        cells = ModelSerializer.flatten(row, SWEEP_COLUMNS)
        css = ""
        if row.certified and row.theorem1_ok is False:
            css = ' class="violation"'
        elif row.certified and row.equality:
            css = ' class="equality"'
        body.append(f"<tr{css}>" + "".join(f"<td>{escape(cells[c])}</td>" for c in SWEEP_COLUMNS) + "</tr>")

    summary_rows = "\n".join(
        f"<tr><th>{escape(k)}</th><td>{v}</td></tr>" for k, v in summary.model_dump().items()
    )
    caption = "" if config is None else escape(ModelSerializer.to_json(config, indent=None))
    return SWEEP_PAGE.substitute(
        title="Anti-self-polar sweep",
        caption=caption,
        header=header,
        rows="\n".join(body),
        summary=summary_rows,
    )


def write_sweep_html(
    rows: List[TableRow], summary: SweepSummary, path: Union[str, Path], config: Optional[FlowConfig] = None
) -> None:
    Path(path).write_text(sweep_html(rows, summary, config))
