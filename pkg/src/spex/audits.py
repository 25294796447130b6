"""Executable structural checks for even-cycle-free and extremal graphs.

Every check evaluates a concrete inequality or structure statement on a
given graph and reports one of four statuses:

* ``pass`` / ``fail``: the check's hypotheses hold and the statement was
  verified or refuted (a refutation carries both evaluated sides and a
  witness when one exists);
* ``vacuous``: the hypotheses do not apply to this graph, so nothing was
  claimed;
* ``report_only``: the statement's usual derivation assumes n beyond any
  fixed bound, so at desk scale it is evaluated and recorded but never
  counted as a failure.  The evaluated outcome sits in ``detail['holds']``.

Float comparisons use an explicit margin; a comparison landing within
the margin of equality is flagged ``boundary`` in the detail payload.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ParameterError
from .graph6 import graph6_encode
from .graphs import Graph, bits
from .spectral import (
    Constants,
    SpectralResult,
    choose_constants,
    classify_vertices,
    spectral_radius,
)
from .subgraphs import (
    contains_cycle,
    contains_path,
    contains_path_with_endpoints_in,
)

__all__ = [
    "CheckResult",
    "LemmaAuditReport",
    "HARD_CHECKS",
    "REPORT_ONLY_CHECKS",
    "audit_bipartition_lemma",
    "audit_global_bounds",
    "audit_neighborhood_bounds",
    "audit_spex_graph",
    "report_to_json_lines",
    "summary_table",
]

STRICT_MARGIN = 1e-9

HARD_CHECKS = (
    "n1-edge-bound",
    "n1-n2-edge-bound",
    "erdos-gallai",
    "lambda-upper",
    "even-cycle-turan",
    "degree-powers",
    "bipartition-endpoints-a",
    "bipartition-endpoints-b",
    "eigen-equation",
    "perron-floor",
)

REPORT_ONLY_CHECKS = (
    "large-weight-count",
    "medium-weight-count",
    "large-degree-floor",
    "large-count",
    "top-degree-floor",
    "top-weight-floor",
    "top-set-size",
    "s1-l-window",
    "neighborhood-weight-floor",
    "exceptional-empty",
    "complete-bipartite-core",
    "rest-edges",
)


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | vacuous | report_only
    detail: dict = field(default_factory=dict)


@dataclass
class LemmaAuditReport:
    graph_id: str  # graph6 form of the audited graph
    k: int
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _le(lhs: float, rhs: float) -> tuple[bool, bool]:
    """(holds, boundary) for lhs <= rhs with the strictness margin."""
    return lhs <= rhs + STRICT_MARGIN, abs(lhs - rhs) <= STRICT_MARGIN


def _even_free(g: Graph, k: int):
    return contains_cycle(g, 2 * k + 2)


def audit_neighborhood_bounds(g: Graph, k: int) -> LemmaAuditReport:
    """Per-vertex first/second-layer edge bounds for C_{2k+2}-free graphs."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    gid = graph6_encode(g)
    witness = _even_free(g, k)
    if witness is not None:
        detail = {"hypothesis": f"graph contains C{2*k+2}", "witness": list(witness.vertices)}
        return LemmaAuditReport(gid, k, [
            CheckResult("n1-edge-bound", "vacuous", dict(detail)),
            CheckResult("n1-n2-edge-bound", "vacuous", dict(detail)),
        ])
    n = g.n
    checks = []

    worst1: dict = {}
    ok1 = True
    for u in range(n):
        n1 = g.rows[u]
        d = n1.bit_count()
        lhs = g.count_edges_within(n1)
        mid = (2 * k - 1) / 2 * d
        if not (lhs <= mid and mid < k * n):
            ok1 = False
            worst1 = {"vertex": u, "e_n1": lhs, "bound": mid, "kn": k * n}
            break
    checks.append(CheckResult("n1-edge-bound", "pass" if ok1 else "fail", worst1))

    worst2: dict = {}
    ok2 = True
    for u in range(n):
        layers = g.bfs_masks(u)
        n1 = layers[1] if len(layers) > 1 else 0
        n2 = layers[2] if len(layers) > 2 else 0
        d = n1.bit_count()
        lhs = g.count_edges_between(n1, n2)
        rhs = min((2 * k + 1) / 2 * n, (2 * k - 1) * d + k * (n - d - 1))
        if lhs > rhs:
            ok2 = False
            worst2 = {"vertex": u, "e_n1_n2": lhs, "bound": rhs}
            break
    checks.append(CheckResult("n1-n2-edge-bound", "pass" if ok2 else "fail", worst2))
    return LemmaAuditReport(gid, k, checks)


def audit_bipartition_lemma(g: Graph, u_set, w_set, k: int) -> LemmaAuditReport:
    """Edge-weight premises that force endpoint-constrained paths.

    Part A: 2e(U) + e(U,W) > (2k-2)|U| + k|W| promises a path of order
    2k or 2k+1 with both ends in U.  Part B with premise
    2e(U) + e(U,W) > (2k-1)|U| + k|W| promises order 2k+1.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    u_fs, w_fs = frozenset(u_set), frozenset(w_set)
    if u_fs & w_fs or (u_fs | w_fs) != frozenset(range(g.n)):
        raise ParameterError("U and W must partition the vertex set")
    gid = graph6_encode(g)
    u_mask = sum(1 << v for v in u_fs)
    w_mask = sum(1 << v for v in w_fs)
    e_u = g.count_edges_within(u_mask)
    e_uw = g.count_edges_between(u_mask, w_mask)
    lhs = 2 * e_u + e_uw

    checks = []
    for name, slope, orders in (
        ("bipartition-endpoints-a", 2 * k - 2, (2 * k, 2 * k + 1)),
        ("bipartition-endpoints-b", 2 * k - 1, (2 * k + 1,)),
    ):
        rhs = slope * len(u_fs) + k * len(w_fs)
        detail = {"lhs": lhs, "rhs": rhs, "orders": list(orders)}
        if lhs <= rhs:
            checks.append(CheckResult(name, "vacuous", detail))
            continue
        found = None
        for order in orders:
            if order >= 2:
                found = contains_path_with_endpoints_in(g, u_fs, order)
                if found is not None:
                    break
        if found is not None:
            detail["witness"] = list(found.vertices)
            checks.append(CheckResult(name, "pass", detail))
        else:
            checks.append(CheckResult(name, "fail", detail))
    return LemmaAuditReport(gid, k, checks)


def audit_global_bounds(g: Graph, k: int, sr: SpectralResult | None = None) -> LemmaAuditReport:
    """Whole-graph bounds; each check gates on its own hypothesis."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    gid = graph6_encode(g)
    n, m = g.n, g.m
    checks = []

    # Path-free edge bound: P_ell-free graphs carry at most (ell-2)n/2 edges.
    applied = []
    violation: dict = {}
    for ell in range(2, n + 1):
        if contains_path(g, ell) is None:
            bound = (ell - 2) * n / 2
            applied.append(ell)
            if m > bound:
                violation = {"ell": ell, "m": m, "bound": bound}
                break
    if not applied:
        checks.append(CheckResult("erdos-gallai", "vacuous",
                                  {"hypothesis": "no path order ell <= n is absent"}))
    elif violation:
        checks.append(CheckResult("erdos-gallai", "fail", violation))
    else:
        checks.append(CheckResult("erdos-gallai", "pass", {"orders_checked": applied}))

    witness = _even_free(g, k)
    if witness is not None:
        detail = {"hypothesis": f"graph contains C{2*k+2}", "witness": list(witness.vertices)}
        for name in ("lambda-upper", "even-cycle-turan", "degree-powers"):
            checks.append(CheckResult(name, "vacuous", dict(detail)))
        return LemmaAuditReport(gid, k, checks)

    if sr is None:
        sr = spectral_radius(g)
    bound = math.sqrt(2 * k * (n - 1))
    ok, boundary = _le(sr.lam, bound)
    detail = {"lambda": sr.lam, "bound": bound}
    if boundary:
        detail["boundary"] = True
    checks.append(CheckResult("lambda-upper", "pass" if ok else "fail", detail))

    bound = 8 * k * n ** ((k + 2) / (k + 1))
    ok, boundary = _le(float(m), bound)
    detail = {"m": m, "bound": bound}
    if boundary:
        detail["boundary"] = True
    checks.append(CheckResult("even-cycle-turan", "pass" if ok else "fail", detail))

    sq = sum(d * d for d in g.degrees())
    bound_i = 2 * k * m + k * (n - 1) * n
    detail = {"sum_deg_sq": sq, "bound": bound_i}
    checks.append(CheckResult("degree-powers", "pass" if sq <= bound_i else "fail", detail))
    return LemmaAuditReport(gid, k, checks)


def _report_only(name: str, holds: bool, detail: dict) -> CheckResult:
    detail = dict(detail)
    detail["holds"] = holds
    return CheckResult(name, "report_only", detail)


def audit_spex_graph(
    g: Graph,
    k: int,
    mode: str,
    certified: bool = True,
    constants: Constants | None = None,
    tol: float = 1e-12,
) -> LemmaAuditReport:
    """Structure checks for a presumed spectral-extremal graph.

    ``mode`` is 'even-only' (C_{2k+2} forbidden) or 'both-cycles'
    (C_{2k+1} and C_{2k+2} forbidden) and must match the graph.  The
    eigen-equation identity is always hard; the Perron floor is hard only
    for ``certified`` graphs (true maximizers, e.g. from exhaustive
    search), since its derivation uses nothing but extremality.  The
    large-n structure statements are evaluated as report-only.
    """
    if k < 2:
        raise ParameterError(f"spex audits need k >= 2, got {k}")
    if mode not in ("even-only", "both-cycles"):
        raise ParameterError(f"mode must be 'even-only' or 'both-cycles', got {mode!r}")
    forbidden = [2 * k + 2] if mode == "even-only" else [2 * k + 1, 2 * k + 2]
    for ell in forbidden:
        w = contains_cycle(g, ell)
        if w is not None:
            raise ParameterError(
                f"mode {mode!r} requires a C{ell}-free graph; found cycle {list(w.vertices)}"
            )
    gid = graph6_encode(g)
    n = g.n
    if constants is None:
        constants = choose_constants(k)
    sr = spectral_radius(g, tol)
    lam, v = sr.lam, sr.perron
    wc = classify_vertices(g, sr, constants)
    alpha, eta, eps = constants.alpha, constants.eta, constants.epsilon
    checks = []

    # Eigen-equation identity of the computed pair (hard sanity check).
    worst = 0.0
    for u in range(n):
        s = sum(v[w_] for w_ in bits(g.rows[u]))
        worst = max(worst, abs(lam * v[u] - s))
    checks.append(CheckResult(
        "eigen-equation",
        "pass" if worst <= 10 * tol else "fail",
        {"max_residual": worst, "bound": 10 * tol},
    ))

    # Perron floor: every entry at least 1/lambda.
    if lam <= 0:
        checks.append(CheckResult("perron-floor", "vacuous", {"lambda": lam}))
    else:
        floor = 1 / lam
        vmin = float(v.min())
        holds = vmin >= floor - STRICT_MARGIN
        detail = {"min_entry": vmin, "floor": floor}
        if certified:
            checks.append(CheckResult("perron-floor", "pass" if holds else "fail", detail))
        else:
            checks.append(_report_only("perron-floor", holds, detail))

    degs = g.degrees()
    size_l, size_m, size_t = len(wc.L), len(wc.M), len(wc.Lprime)

    bound = 16 * math.sqrt(k) * n ** ((k + 3) / (2 * k + 2)) / alpha
    checks.append(_report_only("large-weight-count", size_l <= bound,
                               {"size": size_l, "bound": bound}))
    bound = 48 * math.sqrt(k) * n ** ((k + 3) / (2 * k + 2)) / alpha
    checks.append(_report_only("medium-weight-count", size_m <= bound,
                               {"size": size_m, "bound": bound}))

    floor_deg = alpha / (20 * k) * n
    bad = [z for z in wc.L if degs[z] < floor_deg]
    checks.append(_report_only("large-degree-floor", not bad,
                               {"floor": floor_deg, "violators": bad[:5]}))

    bound = (k + 1) / (alpha / (20 * k)) ** 2
    checks.append(_report_only("large-count", size_l <= bound,
                               {"size": size_l, "bound": bound}))

    bad = [z for z in wc.Lprime if degs[z] < (v[z] - eps) * n]
    checks.append(_report_only("top-degree-floor", not bad,
                               {"violators": bad[:5], "epsilon": eps}))

    w_floor = 1 - 1 / (16 * k**3)
    d_floor = (1 - 1 / (8 * k**3)) * n
    bad = [z for z in wc.Lprime if v[z] < w_floor or degs[z] < d_floor]
    checks.append(_report_only("top-weight-floor", not bad,
                               {"weight_floor": w_floor, "degree_floor": d_floor,
                                "violators": bad[:5]}))

    checks.append(_report_only("top-set-size", size_t == k,
                               {"size": size_t, "expected": k,
                                "members": sorted(wc.Lprime)}))

    # Edge window between the small class inside N1(z) and L, for the
    # near-maximum-weight vertices z.
    l_mask = sum(1 << u for u in wc.L)
    s_mask = sum(1 << u for u in wc.S)
    window = []
    holds = True
    for z in sorted(wc.Lprime):
        if v[z] < 1 - eps:
            continue
        s1 = g.rows[z] & s_mask
        e_s1_l = g.count_edges_between(s1, l_mask)
        lo, hi = (k - 2 * eps) * n, (k + eps) * n
        ok = lo <= e_s1_l <= hi
        holds = holds and ok
        window.append({"z": z, "e_s1_l": e_s1_l, "lo": lo, "hi": hi, "holds": ok})
    checks.append(_report_only("s1-l-window", holds if window else False,
                               {"vertices": window, "applicable": bool(window)}))

    floor_w = k - 1 / (16 * k**2)
    worst_u, worst_s = -1, math.inf
    for u in range(n):
        s = sum(v[w_] for w_ in bits(g.rows[u]))
        if s < worst_s:
            worst_u, worst_s = u, s
    checks.append(_report_only("neighborhood-weight-floor", worst_s >= floor_w - STRICT_MARGIN,
                               {"min_weight": worst_s, "vertex": worst_u, "floor": floor_w}))

    checks.append(_report_only("exceptional-empty", not wc.E,
                               {"size": len(wc.E), "members": sorted(wc.E)[:10]}))

    top_mask = sum(1 << u for u in wc.Lprime)
    complete = size_t == k and all(
        (g.rows[u] & top_mask).bit_count() == k for u in range(n) if u not in wc.Lprime
    )
    checks.append(_report_only("complete-bipartite-core", complete,
                               {"parts": [size_t, n - size_t]}))

    r_mask = sum(1 << u for u in wc.R)
    e_r = g.count_edges_within(r_mask)
    limit = 1 if mode == "even-only" else 0
    checks.append(_report_only("rest-edges", e_r <= limit,
                               {"e_r": e_r, "limit": limit}))

    return LemmaAuditReport(gid, k, checks)


def report_to_json_lines(report: LemmaAuditReport) -> list[str]:
    """One JSON object per check, stable key order."""
    out = []
    for c in report.checks:
        out.append(json.dumps(
            {"graph": report.graph_id, "k": report.k, "check": c.name,
             "status": c.status, "detail": c.detail},
            sort_keys=True, default=str,
        ))
    return out


def summary_table(reports: list[LemmaAuditReport]) -> str:
    """Aggregate counts per check name over a corpus of reports."""
    counts: dict[str, dict[str, int]] = {}
    for rep in reports:
        for c in rep.checks:
            row = counts.setdefault(c.name, {"pass": 0, "fail": 0, "vacuous": 0, "report_only": 0})
            row[c.status] += 1
    lines = [f"{'check':<28} {'pass':>6} {'fail':>6} {'vacuous':>8} {'report':>7}"]
    for name in sorted(counts):
        row = counts[name]
        lines.append(
            f"{name:<28} {row['pass']:>6} {row['fail']:>6} {row['vacuous']:>8} {row['report_only']:>7}"
        )
    hard_fail = sum(counts.get(nm, {}).get("fail", 0) for nm in HARD_CHECKS)
    lines.append(f"overall: {'FAIL' if hard_fail else 'PASS'} ({hard_fail} hard-check failure(s))")
    return "\n".join(lines)
