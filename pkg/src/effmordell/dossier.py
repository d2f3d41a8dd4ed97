"""Dossier files, the end-to-end bound pipeline and report rendering.

A dossier is one JSON document collecting everything that has to come from
outside (regular-model fibres, rank bound, automorphisms, Faltings height
or delta-invariant bounds, the height constant c_X).  Key names are fixed;
unknown keys are rejected so typos cannot silently drop an input.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from . import angles, curve, fibre, heights
from .errors import InvalidParams, ParseError, TauNotPositive, ValidationError
from .rational import RationalMatrix, as_rational

DELTA_SUM = "delta_sum"
FALTINGS_HEIGHT = "faltings_height"

_TOP_KEYS = {
    "label", "genus", "deg_k", "rank_upper", "aut_order", "fibres", "archimedean",
    "height_constant", "curve", "automorphisms", "search_bound",
}
_REQUIRED = {"label", "genus", "deg_k", "rank_upper", "aut_order", "fibres", "archimedean"}
_FIBRE_KEYS = {"prime_norm", "multiplicities", "genera", "intersection_matrix"}
_ARCH_KEYS = {"kind", "value", "isogeny"}
_ISOGENY_KEYS = {"factor_heights", "degree"}


@dataclass(frozen=True)
class IsogenyRoute:
    """J is isogenous, with the given degree, to a product with these factor heights."""

    factor_heights: tuple[float, ...]
    degree: int


@dataclass(frozen=True)
class ArchimedeanInput:
    kind: str
    value: float | None
    isogeny: IsogenyRoute | None = None


@dataclass(frozen=True)
class Dossier:
    label: str
    genus: int
    deg_k: int
    rank_upper: int
    aut_order: int
    fibres: tuple[fibre.FibreData, ...]
    archimedean: ArchimedeanInput
    height_constant: float | None = None
    curve: curve.SexticCurve | None = None
    automorphisms: tuple[curve.Automorphism, ...] | None = None
    search_bound: int | None = None


def example_path() -> Path:
    """Location of the bundled example dossier for y^2 = x^6 + x^4 + x^2 + 1."""
    return Path(str(resources.files("effmordell") / "data" / "example_dossier.json"))


# ----------------------------------------------------------------------------
# parsing


def _int(obj, key, path, minimum=None):
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", field=f"{path}{key}")
    if minimum is not None and value < minimum:
        raise ParseError(f"must be >= {minimum}, got {value}", field=f"{path}{key}")
    return value


def _real(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ParseError(f"expected a finite number, got {value!r}", field=where)
    return float(value)


def _exact(value, where):
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"expected an integer or 'p/q' string ({exc})", field=where) from None


def _keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", field=where or "<root>")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ParseError(f"unknown keys {unknown}", field=where or "<root>")
    missing = sorted(required - set(obj))
    if missing:
        raise ParseError(f"missing keys {missing}", field=where or "<root>")


def _list(value, where):
    if not isinstance(value, list):
        raise ParseError("expected an array", field=where)
    return value


def _parse_fibre(obj, where) -> fibre.FibreData:
    _keys(obj, _FIBRE_KEYS, _FIBRE_KEYS, where)
    mults = [_int({"m": m}, "m", f"{where}.multiplicities[{i}]/") for i, m in enumerate(_list(obj["multiplicities"], f"{where}.multiplicities"))]
    genera = [_int({"g": x}, "g", f"{where}.genera[{i}]/") for i, x in enumerate(_list(obj["genera"], f"{where}.genera"))]
    rows = _list(obj["intersection_matrix"], f"{where}.intersection_matrix")
    if not rows:
        raise ParseError("intersection matrix is empty", field=f"{where}.intersection_matrix")
    matrix = []
    for i, row in enumerate(rows):
        row = _list(row, f"{where}.intersection_matrix[{i}]")
        matrix.append([_exact(x, f"{where}.intersection_matrix[{i}][{j}]") for j, x in enumerate(row)])
    try:
        M = RationalMatrix(matrix)
    except ValueError as exc:
        raise ParseError(str(exc), field=f"{where}.intersection_matrix") from None
    return fibre.FibreData(_int(obj, "prime_norm", f"{where}."), tuple(mults), tuple(genera), M)


def _parse_archimedean(obj) -> ArchimedeanInput:
    _keys(obj, _ARCH_KEYS, {"kind"}, "archimedean")
    kind = obj["kind"]
    if kind not in (DELTA_SUM, FALTINGS_HEIGHT):
        raise ParseError(f"kind must be {DELTA_SUM!r} or {FALTINGS_HEIGHT!r}, got {kind!r}", field="archimedean.kind")
    value = _real(obj["value"], "archimedean.value") if "value" in obj else None
    isogeny = None
    if "isogeny" in obj:
        if kind != FALTINGS_HEIGHT:
            raise ParseError("an isogeny route only makes sense for kind 'faltings_height'", field="archimedean.isogeny")
        iso = obj["isogeny"]
        _keys(iso, _ISOGENY_KEYS, _ISOGENY_KEYS, "archimedean.isogeny")
        heights_ = tuple(_real(h, f"archimedean.isogeny.factor_heights[{i}]")
                         for i, h in enumerate(_list(iso["factor_heights"], "archimedean.isogeny.factor_heights")))
        if not heights_:
            raise ParseError("need at least one factor height", field="archimedean.isogeny.factor_heights")
        isogeny = IsogenyRoute(heights_, _int(iso, "degree", "archimedean.isogeny.", 1))
    if value is None and isogeny is None:
        raise ParseError("either 'value' or an 'isogeny' route is required", field="archimedean")
    return ArchimedeanInput(kind, value, isogeny)


def parse_dossier(data: bytes | str) -> Dossier:
    """Parse and validate a dossier; every fibre is checked eagerly."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    _keys(obj, _TOP_KEYS, _REQUIRED, "")

    if not isinstance(obj["label"], str):
        raise ParseError("expected a string", field="label")
    genus = _int(obj, "genus", "")
    deg_k = _int(obj, "deg_k", "")
    rank = _int(obj, "rank_upper", "")
    n = _int(obj, "aut_order", "")
    fibres = tuple(_parse_fibre(f, f"fibres[{i}]") for i, f in enumerate(_list(obj["fibres"], "fibres")))
    arch = _parse_archimedean(obj["archimedean"])

    c_X = _real(obj["height_constant"], "height_constant") if obj.get("height_constant") is not None else None
    C = None
    if obj.get("curve") is not None:
        _keys(obj["curve"], {"coeffs"}, {"coeffs"}, "curve")
        coeffs = _list(obj["curve"]["coeffs"], "curve.coeffs")
        coeffs = [_int({"a": a}, "a", f"curve.coeffs[{i}]/") for i, a in enumerate(coeffs)]
        try:
            C = curve.SexticCurve(tuple(coeffs))
        except InvalidParams as exc:
            raise ValidationError([f"curve: {exc}"]) from None
    autos = None
    if obj.get("automorphisms") is not None:
        autos = []
        for i, a in enumerate(_list(obj["automorphisms"], "automorphisms")):
            where = f"automorphisms[{i}]"
            _keys(a, set("abcde"), set("abcde"), where)
            try:
                autos.append(curve.Automorphism(*(_exact(a[k], f"{where}.{k}") for k in "abcde")))
            except InvalidParams as exc:
                raise ParseError(str(exc), field=where) from None
        autos = tuple(autos)
    B = _int(obj, "search_bound", "", 1) if obj.get("search_bound") is not None else None

    failures = []
    if genus < 2:
        failures.append(f"genus must be >= 2, got {genus}")
    if deg_k < 1:
        failures.append(f"deg_k must be >= 1, got {deg_k}")
    if rank < 0:
        failures.append(f"rank_upper must be >= 0, got {rank}")
    if n < 1:
        failures.append(f"aut_order must be >= 1, got {n}")
    if C is not None and (genus != 2 or deg_k != 1):
        failures.append("a curve model is only supported for genus 2 over Q (genus = 2, deg_k = 1)")
    if autos is not None and C is None:
        failures.append("automorphisms given without a curve")
    if C is not None and autos:
        for i, sigma in enumerate(autos):
            if not curve.verify_automorphism(C, sigma):
                failures.append(f"automorphisms[{i}] = {sigma} does not preserve the curve")
    if genus >= 2:
        for i, F in enumerate(fibres):
            report = fibre.validate_fibre(F, genus)
            failures.extend(f"fibres[{i}] (N(p) = {F.prime_norm}): {name}" for name in report.failures)
    if failures:
        raise ValidationError(failures)
    return Dossier(str(obj["label"]), genus, deg_k, rank, n, fibres, arch, c_X, C, autos, B)


def load_dossier(path) -> Dossier:
    if str(path) == "@example":
        path = example_path()
    return parse_dossier(Path(path).read_bytes())


# ----------------------------------------------------------------------------
# pipeline


@dataclass
class FibreResult:
    prime_norm: int
    components: int
    mu_p: Fraction
    phi_p: Fraction
    self_intersections: dict[int, Fraction]


@dataclass
class SearchResult:
    bound: int
    group_order: int
    points: list[curve.CurvePoint]
    trivial: list[curve.CurvePoint]
    nontrivial: list[curve.CurvePoint]
    log_bound: float
    covers_x_height_bound: bool | None


@dataclass
class PipelineResult:
    dossier: Dossier
    fibres: list[FibreResult]
    report: heights.HeightBoundReport
    delta_sum_upper: float
    h_jacobian_upper: float | None
    search: SearchResult | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return self.report.applicable


def fibre_results(D: Dossier) -> list[FibreResult]:
    out = []
    for F in D.fibres:
        check = fibre.validate_fibre(F, D.genus)
        selfs = {} if F.size == 1 else fibre.xi_self_intersections(F, D.genus)
        out.append(FibreResult(F.prime_norm, F.size, check.mu_p, fibre.phi_p(F, D.genus), selfs))
    return out


def run_search(D: Dossier, bound: int | None = None, *, jobs: int = 1, backend: str | None = None,
               x_height_bound: float | None = None) -> SearchResult:
    if D.curve is None:
        raise InvalidParams("dossier has no curve to search")
    B = bound if bound is not None else D.search_bound
    if B is None:
        raise InvalidParams("no search bound given")
    group = curve.group_closure(D.automorphisms or ())
    points = curve.enumerate_points(D.curve, B, jobs=jobs, backend=backend)
    trivial, nontrivial = curve.classify_points(D.curve, group, points)
    log_b = math.log(B)
    covers = None if x_height_bound is None else log_b >= x_height_bound
    return SearchResult(B, len(group), points, trivial, nontrivial, log_b, covers)


def run_pipeline(D: Dossier, *, search: bool = True, bound: int | None = None, jobs: int = 1,
                 backend: str | None = None) -> PipelineResult:
    warnings = []
    g, degK = D.genus, D.deg_k
    fibres_out = fibre_results(D)
    fibral = [(fr.prime_norm, fr.phi_p) for fr in fibres_out]

    provenance: dict[str, Any] = {
        "genus": g, "deg_k": degK, "rank_upper": D.rank_upper, "aut_order": D.aut_order,
        "fibral_terms": [[norm, str(phi)] for norm, phi in fibral],
        "archimedean_route": D.archimedean.kind,
    }

    h_jac = None
    arch = D.archimedean
    if arch.kind == FALTINGS_HEIGHT:
        if arch.isogeny is not None:
            product = heights.product_faltings_height(arch.isogeny.factor_heights)
            derived = heights.faltings_upper_via_isogeny(product, degK, arch.isogeny.degree)
            provenance["isogeny_route"] = {
                "product_height": product, "degree": arch.isogeny.degree, "h_jacobian_upper": derived,
                "convention": "h(A x B) = h(A) + h(B)",
            }
            if arch.value is not None and arch.value < derived:
                warnings.append(f"stated h(J) bound {arch.value} is below the isogeny-route bound {derived:.6f}")
            h_jac = derived if arch.value is None else arch.value
        else:
            h_jac = arch.value
        delta_sum = heights.delta_sum_from_faltings(g, degK, h_jac)
    else:
        delta_sum = arch.value
        floor = heights.wilms_floor(g, degK)
        if delta_sum < floor:
            warnings.append(f"delta-sum {delta_sum} is below the lower bound {floor:.6f}; input is suspect")

    M = heights.m_constant(g, degK, delta_sum, fibral)
    r_eff = max(D.rank_upper, 1)
    if D.rank_upper == 0:
        warnings.append("rank 0: using the rank-one rule for tau (any rank upper bound is valid)")
    tau = angles.tau(g, r_eff, D.aut_order)
    provenance["rank_used"] = r_eff

    nt = xb = None
    try:
        nt = heights.neron_tate_bound(M, g, tau)
    except TauNotPositive:
        pass
    if nt is not None and D.height_constant is not None:
        xb = heights.x_height_bound(nt, D.height_constant)

    report = heights.HeightBoundReport(M, tau, nt, xb, provenance)
    result = PipelineResult(D, fibres_out, report, delta_sum, h_jac, warnings=warnings)

    if search and D.curve is not None and (bound is not None or D.search_bound is not None):
        result.search = run_search(D, bound, jobs=jobs, backend=backend, x_height_bound=xb)
        if result.search.group_order != D.aut_order:
            warnings.append(
                f"automorphism generators give a group of order {result.search.group_order}, "
                f"but aut_order = {D.aut_order} was used for tau"
            )
    return result


# ----------------------------------------------------------------------------
# rendering


def _bound(x: float) -> str:
    return f"{heights.round_up(x):.6f}"


def _entry(value, source, **extra):
    out = {"value": str(value) if isinstance(value, Fraction) else value, "source": source}
    out.update(extra)
    return out


def report_record(result: PipelineResult) -> dict:
    """Structured form of the report; every number names the operation that produced it."""
    D = result.dossier
    rep = result.report
    values: dict[str, Any] = {}
    for fr in result.fibres:
        values[f"mu_p({fr.prime_norm})"] = _entry(fr.mu_p, "fibre.validate_fibre")
        for k, v in sorted(fr.self_intersections.items()):
            values[f"xi_self_intersection({fr.prime_norm}, k={k + 1})"] = _entry(v, "fibre.xi_solution+rational.bilinear_form")
        values[f"phi_p({fr.prime_norm})"] = _entry(fr.phi_p, "fibre.phi_p")
    if result.h_jacobian_upper is not None:
        derived = D.archimedean.value is None
        values["h_jacobian_upper"] = _entry(
            result.h_jacobian_upper,
            "heights.faltings_upper_via_isogeny" if derived else "dossier.archimedean",
        )
    values["delta_sum_upper"] = _entry(
        result.delta_sum_upper,
        "heights.delta_sum_from_faltings" if D.archimedean.kind == FALTINGS_HEIGHT else "dossier.archimedean",
    )
    values["wilms_floor"] = _entry(heights.wilms_floor(D.genus, D.deg_k), "heights.wilms_floor")
    values["M"] = _entry(rep.M, "heights.m_constant", reported_upper=heights.round_up(rep.M))
    values["tau"] = _entry(rep.tau_used.tau, "angles.tau", method=rep.tau_used.method,
                           conservative=rep.tau_used.conservative)
    if rep.tau_used.cos_theta_lower is not None:
        values["cos_theta_lower"] = _entry(rep.tau_used.cos_theta_lower, "angles.tau")
    if rep.neron_tate_bound is not None:
        values["neron_tate_bound"] = _entry(rep.neron_tate_bound, "heights.neron_tate_bound",
                                            reported_upper=heights.round_up(rep.neron_tate_bound))
    if D.height_constant is not None:
        values["height_constant"] = _entry(D.height_constant, "dossier.height_constant")
    if rep.x_height_bound is not None:
        values["x_height_bound"] = _entry(rep.x_height_bound, "heights.x_height_bound",
                                          reported_upper=heights.round_up(rep.x_height_bound))
    record = {
        "label": D.label,
        "verdict": "applicable" if rep.applicable else "inapplicable",
        "provenance": rep.provenance,
        "values": values,
        "warnings": list(result.warnings),
    }
    if result.search is not None:
        s = result.search
        record["search"] = {
            "bound": _entry(s.bound, "curve.enumerate_points"),
            "log_bound": _entry(s.log_bound, "math.log"),
            "group_order": _entry(s.group_order, "curve.group_closure"),
            "points": [str(P) for P in s.points],
            "trivial_stabilizer": [str(P) for P in s.trivial],
            "nontrivial_stabilizer": [str(P) for P in s.nontrivial],
            "covers_x_height_bound": s.covers_x_height_bound,
        }
    return record


def render_text(result: PipelineResult) -> str:
    D = result.dossier
    rep = result.report
    lines = [f"dossier: {D.label}"]
    if D.curve is not None:
        lines.append(f"curve: {D.curve}")
    lines.append(f"genus g = {D.genus}, [K:Q] = {D.deg_k}, rank <= {D.rank_upper}, #H = {D.aut_order}")
    tau = rep.tau_used
    lines.append(f"tau = {tau.tau:.12f} (method {tau.method}, rank used {rep.provenance['rank_used']}"
                 + (", conservative)" if tau.conservative else ")"))
    if not result.fibres:
        lines.append("no bad fibres")
    for fr in result.fibres:
        lines.append(f"fibre at N(p) = {fr.prime_norm}: {fr.components} components, mu_p = {fr.mu_p}")
        for k, v in sorted(fr.self_intersections.items()):
            lines.append(f"  Xi_{k + 1} self-intersection = {v}")
        lines.append(f"phi_p({fr.prime_norm}) = {fr.phi_p}")
    if result.h_jacobian_upper is not None:
        iso = rep.provenance.get("isogeny_route")
        if iso is not None:
            lines.append(f"h(J) <= {iso['product_height']:.6f} + ({D.deg_k}/2) log {iso['degree']} "
                         f"= {iso['h_jacobian_upper']:.6f}")
        lines.append(f"h(J) upper bound used = {result.h_jacobian_upper}")
    lines.append(f"delta-sum <= {_bound(result.delta_sum_upper)}")
    lines.append(f"M(X) <= {_bound(rep.M)}")
    if rep.applicable:
        lines.append(f"NT bound <= {_bound(rep.neron_tate_bound)}")
        if rep.x_height_bound is not None:
            lines.append(f"c_X = {D.height_constant}")
            lines.append(f"h(x(P)) <= {_bound(rep.x_height_bound)}")
    else:
        lines.append("tau <= 0: main height bound does not apply")
    if result.search is not None:
        s = result.search
        lines.append(f"search: max(|p|, q) <= {s.bound} (h(x) <= {s.log_bound:.6f}), group order {s.group_order}")
        lines.append(f"points found: {len(s.points)}")
        lines.append("  trivial stabilizer: " + (" ".join(map(str, s.trivial)) or "none"))
        lines.append("  nontrivial stabilizer: " + (" ".join(map(str, s.nontrivial)) or "none"))
        if s.covers_x_height_bound is True:
            lines.append("search radius covers the height bound: the point list is complete")
        elif s.covers_x_height_bound is False:
            lines.append("search radius does not reach the height bound: completeness certified only up to the radius")
    for w in result.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def render_json(result: PipelineResult) -> str:
    return json.dumps(report_record(result), indent=2, sort_keys=True) + "\n"


def render_report(result: PipelineResult) -> tuple[str, dict]:
    return render_text(result), report_record(result)


def with_overrides(D: Dossier, **changes) -> Dossier:
    return replace(D, **changes)
