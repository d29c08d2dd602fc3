"""Report layer: equivalence bands, norm tables, search tables, writers.

This is the only layer that applies outer powers (1/alpha for the dual
integrals, p/2 for the Hardy-side quantities) and the only layer that
rescales functions.  Each corpus entry is rescaled so the left-hand
quantity equals 1 before the dual side is evaluated, because the two
sides of the equivalences scale differently under F -> lambda F; the
reported ratios are therefore directly comparable across entries.

All numbers serialize with 17 significant digits so byte-identical
output is a meaningful determinism check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import CorpusEntry
from .dual import (
    DualParams,
    normalize_weight,
    test_weight_report,
)
from .errors import ConfigError, DomainError, EvaluationError, NormalizationError
from .norms import (
    NormValue,
    bergman_norm_p,
    bloch_norm,
    bp_norm_p,
    hardy_norm_p,
    lusin_functional,
    mixed_area_functional,
    pair_functional_mu,
    pair_functional_mu_a,
)
from .quadrature import EvalGrids
from .search import SearchConfig, SearchResult, infimum_search
from .taylor import TaylorFunction, scale as scale_fn

__all__ = [
    "EQUIVALENCE_COLUMNS",
    "NORM_COLUMNS",
    "SEARCH_COLUMNS",
    "EquivalenceRow",
    "EquivalenceReport",
    "NormRow",
    "NormReport",
    "SearchRow",
    "SearchReport",
    "lhs_normalized",
    "equivalence_report",
    "norms_report",
    "search_report",
    "format_number",
    "render_csv",
    "render_json",
    "write_report",
]

EQUIVALENCE_COLUMNS = (
    "label",
    "theorem",
    "p",
    "alpha",
    "lhs_power_value",
    "test_dual",
    "searched_dual",
    "holder_floor",
    "ratio_test",
    "ratio_searched",
    "refine_delta",
    "error",
)

NORM_COLUMNS = ("label", "kind", "params", "value", "grid", "error")

SEARCH_COLUMNS = (
    "label",
    "theorem",
    "p",
    "alpha",
    "holder_floor",
    "test_dual",
    "searched_dual",
    "best_u",
    "best_v",
    "best_s",
    "best_softening",
    "evaluations",
    "improved",
    "violation",
    "error",
)

_ROW_ERRORS = (ConfigError, DomainError, EvaluationError, NormalizationError)


@dataclass(frozen=True, eq=False)
class EquivalenceRow:
    label: str
    theorem: str
    p: float
    alpha: float | None
    lhs_power_value: float | None = None
    test_dual: float | None = None
    searched_dual: float | None = None
    holder_floor: float | None = None
    ratio_test: float | None = None
    ratio_searched: float | None = None
    refine_delta: float | None = None
    error: str | None = None

    def as_cells(self) -> dict:
        return {name: getattr(self, name) for name in EQUIVALENCE_COLUMNS}


@dataclass(frozen=True, eq=False)
class EquivalenceReport:
    rows: tuple[EquivalenceRow, ...]
    params: DualParams
    grid_provenance: str
    min_ratio: float | None
    max_ratio: float | None
    max_refine_delta: float | None


@dataclass(frozen=True, eq=False)
class NormRow:
    label: str
    kind: str
    params: dict
    value: float | None
    grid: str | None
    error: str | None = None


@dataclass(frozen=True, eq=False)
class NormReport:
    rows: tuple[NormRow, ...]


@dataclass(frozen=True, eq=False)
class SearchRow:
    label: str
    theorem: str
    p: float
    alpha: float | None
    holder_floor: float | None = None
    test_dual: float | None = None
    searched_dual: float | None = None
    best_u: float | None = None
    best_v: float | None = None
    best_s: float | None = None
    best_softening: float | None = None
    evaluations: int | None = None
    improved: bool | None = None
    violation: str | None = None
    error: str | None = None

    def as_cells(self) -> dict:
        return {name: getattr(self, name) for name in SEARCH_COLUMNS}


@dataclass(frozen=True, eq=False)
class SearchReport:
    rows: tuple[SearchRow, ...]
    params: DualParams
    grid_provenance: str


# --- left-hand sides and normalization --------------------------------------


def _lhs_value(F: TaylorFunction, params: DualParams, grids: EvalGrids) -> float:
    """The left-hand quantity of the theorem, already at its stated power."""
    th = params.theorem
    if th == "S2_bergman":
        return bergman_norm_p(F, params.p, grids.disc).value
    if th == "S3_bloch":
        return bloch_norm(F, grids.disc).value
    if th == "S4_bp":
        return bp_norm_p(F, params.p, grids.disc).value ** (1.0 / params.p)
    return lusin_functional(
        F, params.p, 1.0, params.aperture, grids.disc, grids.circle_count
    ).value


def _lhs_degree(params: DualParams) -> float:
    """Homogeneity degree of the left-hand quantity under F -> lambda F."""
    if params.theorem in ("S2_bergman", "S1_hardy"):
        return params.p
    return 1.0


def lhs_normalized(
    F: TaylorFunction, params: DualParams, grids: EvalGrids
) -> tuple[TaylorFunction, float]:
    """(rescaled function, its recomputed left-hand value, which is ~1)."""
    raw = _lhs_value(F, params, grids)
    if not (math.isfinite(raw) and raw > 0):
        raise DomainError(f"left-hand value not normalizable: {raw}")
    lam = raw ** (-1.0 / _lhs_degree(params))
    G = scale_fn(F, lam)
    return G, _lhs_value(G, params, grids)


def _dual_power(params: DualParams) -> float:
    """Outer power the theorem applies to the dual integral."""
    if params.theorem == "S1_hardy":
        return 0.5 * params.p
    return 1.0 / params.alpha


def _relative_delta(base: float, refined: float) -> float:
    if refined == 0.0:
        return 0.0 if base == 0.0 else math.inf
    return abs(refined - base) / abs(refined)


# --- equivalence -------------------------------------------------------------


def _equivalence_row(
    entry: CorpusEntry,
    params: DualParams,
    grids: EvalGrids,
    refined_grids: EvalGrids | None,
    search: SearchConfig | None,
) -> EquivalenceRow:
    th = params.theorem
    G, lhs = lhs_normalized(entry.function, params, grids)
    power = _dual_power(params)

    test_dual = holder = refine_delta = None
    best_weight = None
    if th != "S1_hardy":
        ev, floor = test_weight_report(G, params, grids)
        test_dual = ev.dual_value**power
        holder = floor
        if refined_grids is not None:
            ev2, _ = test_weight_report(G, params, refined_grids)
            refine_delta = _relative_delta(test_dual, ev2.dual_value**power)

    searched = None
    search_note = None
    if search is not None:
        result = infimum_search(G, params, search, grids)
        if result.best is None:
            search_note = f"search: {result.failure}"
        else:
            searched = result.best.dual_value**power
            best_weight = result.best.weight
    if th == "S1_hardy" and refined_grids is not None and best_weight is not None:
        ev2 = normalize_weight(G, best_weight, params, refined_grids)
        refine_delta = _relative_delta(searched, ev2.dual_value**power)

    return EquivalenceRow(
        label=entry.label,
        theorem=th,
        p=params.p,
        alpha=params.alpha,
        lhs_power_value=lhs,
        test_dual=test_dual,
        searched_dual=searched,
        holder_floor=holder,
        ratio_test=None if test_dual is None else test_dual / lhs,
        ratio_searched=None if searched is None else searched / lhs,
        refine_delta=refine_delta,
        error=search_note,
    )


def equivalence_report(
    corpus: list[CorpusEntry],
    params: DualParams,
    grids: EvalGrids,
    refined_grids: EvalGrids | None = None,
    search: SearchConfig | None = None,
) -> EquivalenceReport:
    """Per-entry equivalence rows plus the aggregate ratio band.

    Entries are rescaled so the left-hand quantity is 1; per-entry
    failures become error rows and never abort the batch.
    """
    rows = []
    for entry in corpus:
        try:
            rows.append(
                _equivalence_row(entry, params, grids, refined_grids, search)
            )
        except _ROW_ERRORS as exc:
            rows.append(
                EquivalenceRow(
                    label=entry.label,
                    theorem=params.theorem,
                    p=params.p,
                    alpha=params.alpha,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    ratios = []
    deltas = []
    for row in rows:
        ratio = row.ratio_test if row.ratio_test is not None else row.ratio_searched
        if ratio is not None:
            ratios.append(ratio)
        if row.refine_delta is not None:
            deltas.append(row.refine_delta)
    return EquivalenceReport(
        rows=tuple(rows),
        params=params,
        grid_provenance=grids.provenance,
        min_ratio=min(ratios) if ratios else None,
        max_ratio=max(ratios) if ratios else None,
        max_refine_delta=max(deltas) if deltas else None,
    )


# --- norm tables -------------------------------------------------------------

DEFAULT_NORM_REQUESTS = (
    {"kind": "bloch"},
    {"kind": "bergman_p", "p": 2.0},
    {"kind": "bp", "p": 2.0},
    {"kind": "hardy_p", "p": 2.0},
)


def _norm_value(F: TaylorFunction, request: dict, grids: EvalGrids) -> NormValue:
    kind = request.get("kind")
    p = float(request.get("p", 2.0))
    if kind == "bloch":
        return bloch_norm(F, grids.disc)
    if kind == "bergman_p":
        return bergman_norm_p(F, p, grids.disc)
    if kind == "bp":
        return bp_norm_p(F, p, grids.disc)
    if kind == "hardy_p":
        return hardy_norm_p(F, p, angular_count=grids.circle_count)
    if kind == "lusin":
        return lusin_functional(
            F,
            p,
            float(request.get("t", 1.0)),
            float(request.get("aperture", 2.0)),
            grids.disc,
            grids.circle_count,
        )
    if kind == "mixed_area":
        return mixed_area_functional(F, p, float(request.get("beta", p)), grids.disc)
    if kind == "pair_mu_a":
        return pair_functional_mu_a(
            F, p, float(request.get("beta", p)), grids.a_grid, grids.bidisc
        )
    if kind == "pair_mu":
        return pair_functional_mu(F, p, float(request.get("beta", p)), grids.bidisc)
    raise ConfigError(f"unknown norm kind: {kind!r}")


def norms_report(
    corpus: list[CorpusEntry],
    requests: tuple[dict, ...] | list[dict] | None,
    grids: EvalGrids,
) -> NormReport:
    """One row per (entry, requested norm); errors stay in their row."""
    requests = DEFAULT_NORM_REQUESTS if requests is None else tuple(requests)
    rows = []
    for entry in corpus:
        for request in requests:
            kind = str(request.get("kind", ""))
            try:
                nv = _norm_value(entry.function, request, grids)
                rows.append(
                    NormRow(entry.label, nv.norm_kind, nv.params, nv.value, nv.grid_provenance)
                )
            except _ROW_ERRORS as exc:
                params = {k: v for k, v in request.items() if k != "kind"}
                rows.append(
                    NormRow(
                        entry.label,
                        kind,
                        params,
                        None,
                        None,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )
    return NormReport(rows=tuple(rows))


# --- search tables -----------------------------------------------------------

ORDERING_SLACK = 1e-9


def _search_row(
    entry: CorpusEntry,
    params: DualParams,
    search: SearchConfig,
    grids: EvalGrids,
) -> SearchRow:
    th = params.theorem
    G, _ = lhs_normalized(entry.function, params, grids)
    power = _dual_power(params)
    test_dual = holder = None
    if th != "S1_hardy":
        ev, floor = test_weight_report(G, params, grids)
        test_dual = ev.dual_value**power
        holder = floor
    result: SearchResult = infimum_search(G, params, search, grids)
    if result.best is None:
        return SearchRow(
            label=entry.label,
            theorem=th,
            p=params.p,
            alpha=params.alpha,
            holder_floor=holder,
            test_dual=test_dual,
            evaluations=result.evaluations,
            improved=False,
            violation=f"search: {result.failure}",
        )
    searched = result.best.dual_value**power
    w = result.best.weight
    violations = []
    if holder is not None and searched < holder * (1.0 - ORDERING_SLACK):
        violations.append("searched below floor")
    if test_dual is not None and searched > test_dual * (1.0 + ORDERING_SLACK):
        violations.append("searched above test weight")
    return SearchRow(
        label=entry.label,
        theorem=th,
        p=params.p,
        alpha=params.alpha,
        holder_floor=holder,
        test_dual=test_dual,
        searched_dual=searched,
        best_u=w.exponents.u,
        best_v=w.exponents.v,
        best_s=w.exponents.s,
        best_softening=w.softening,
        evaluations=result.evaluations,
        improved=result.improved,
        violation="; ".join(violations) if violations else None,
    )


def search_report(
    corpus: list[CorpusEntry],
    params: DualParams,
    search: SearchConfig,
    grids: EvalGrids,
) -> SearchReport:
    rows = []
    for entry in corpus:
        try:
            rows.append(_search_row(entry, params, search, grids))
        except _ROW_ERRORS as exc:
            rows.append(
                SearchRow(
                    label=entry.label,
                    theorem=params.theorem,
                    p=params.p,
                    alpha=params.alpha,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return SearchReport(rows=tuple(rows), params=params, grid_provenance=grids.provenance)


# --- serialization -----------------------------------------------------------


def format_number(x) -> str:
    """17-significant-digit text so equal doubles serialize identically."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        if any(ch in value for ch in ",\"\n"):
            return '"' + value.replace('"', '""') + '"'
        return value
    if isinstance(value, dict):
        inner = ";".join(
            f"{k}={format_number(v)}" for k, v in sorted(value.items())
        )
        return _cell(inner)
    return format_number(value)


def _json_atom(value, indent: str) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value is True else "false"
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{out}"'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        return format_number(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f'{indent}  "{k}": {_json_atom(v, indent + "  ")}' for k, v in value.items()
        )
        return "{\n" + inner + "\n" + indent + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(
            f"{indent}  {_json_atom(v, indent + '  ')}" for v in value
        )
        return "[\n" + inner + "\n" + indent + "]"
    raise ConfigError(f"cannot serialize value of type {type(value).__name__}")


def _params_dict(params: DualParams) -> dict:
    out = {"theorem": params.theorem, "p": params.p}
    if params.alpha is not None:
        out["alpha"] = params.alpha
        out["alpha_conj"] = params.alpha_conj
    if params.s is not None:
        out["s"] = params.s
    if params.aperture is not None:
        out["aperture"] = params.aperture
    return out


def render_csv(report) -> str:
    """Deterministic CSV text with a comment footer for the aggregates."""
    if isinstance(report, EquivalenceReport):
        columns, rows = EQUIVALENCE_COLUMNS, report.rows
        footer = (
            "# summary"
            f" min_ratio={_cell(report.min_ratio)}"
            f" max_ratio={_cell(report.max_ratio)}"
            f" max_refine_delta={_cell(report.max_refine_delta)}"
        )
    elif isinstance(report, SearchReport):
        columns, rows = SEARCH_COLUMNS, report.rows
        footer = None
    elif isinstance(report, NormReport):
        columns, rows = NORM_COLUMNS, report.rows
        footer = None
    else:
        raise ConfigError(f"cannot render report of type {type(report).__name__}")
    lines = [",".join(columns)]
    for row in rows:
        if isinstance(row, NormRow):
            cells = {
                "label": row.label,
                "kind": row.kind,
                "params": row.params,
                "value": row.value,
                "grid": row.grid,
                "error": row.error,
            }
        else:
            cells = row.as_cells()
        lines.append(",".join(_cell(cells[name]) for name in columns))
    if footer is not None:
        lines.append(footer)
    return "\n".join(lines) + "\n"


def render_json(report) -> str:
    """Deterministic JSON text with the same numeric content as the CSV."""
    if isinstance(report, EquivalenceReport):
        doc = {
            "kind": "equivalence",
            "params": _params_dict(report.params),
            "grid": report.grid_provenance,
            "rows": [row.as_cells() for row in report.rows],
            "summary": {
                "min_ratio": report.min_ratio,
                "max_ratio": report.max_ratio,
                "max_refine_delta": report.max_refine_delta,
            },
        }
    elif isinstance(report, SearchReport):
        doc = {
            "kind": "search",
            "params": _params_dict(report.params),
            "grid": report.grid_provenance,
            "rows": [row.as_cells() for row in report.rows],
        }
    elif isinstance(report, NormReport):
        doc = {
            "kind": "norms",
            "rows": [
                {
                    "label": row.label,
                    "kind": row.kind,
                    "params": row.params,
                    "value": row.value,
                    "grid": row.grid,
                    "error": row.error,
                }
                for row in report.rows
            ],
        }
    else:
        raise ConfigError(f"cannot render report of type {type(report).__name__}")
    return _json_atom(doc, "") + "\n"


def write_report(report, path: str, fmt: str) -> None:
    if fmt == "csv":
        text = render_csv(report)
    elif fmt == "json":
        text = render_json(report)
    else:
        raise ConfigError(f"unknown report format: {fmt!r}; expected csv or json")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
