"""
Command-line driver: dimension searches, grading-case analysis, per-rank
classification reports, golden-table verification, and oracle cross-checks.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from io import StringIO

from . import filters, gradings, goldens, oracle
from .dimsearch import DimSolution, Mode, SearchParams, enumerate_solutions
from .exactmath import factorize, is_prime

CITE_EMPTY_SEARCH = "rule:no-candidate-dimension-arrays"

#: (rank, invertibles) -> extra SearchParams predicates, used when the
#: grading case forces m1 to be a perfect square at least invertibles^2
#: (prime invertible count with all non-adjoint component ranks equal to it).
PREDICATE_INJECTION = {
    (33, 5): dict(min_m1=25, m1_square=True),
    (41, 5): dict(min_m1=25, m1_square=True),
}

#: (rank, invertibles) pairs whose full structural filter chain is mechanized.
PLAYBOOK = {(25, 3)}


# --------------------------------------------------------------------------
# emitters

def _sol_record(sol: DimSolution) -> dict:
    return {
        "fpdim": sol.fpdim,
        "invertibles": sol.invertibles,
        "dims": list(sol.dims),
        "quotients": list(sol.quotients),
    }


def _emit_solutions(sols: list[DimSolution], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([_sol_record(s) for s in sols], out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        k = len(sols[0].dims) if sols else 0
        header = ["fpdim", "s"] + [f"d{i}" for i in range(1, k + 1)]
        out.write(",".join(header) + "\n")
        for s in sols:
            out.write(",".join(str(x) for x in (s.fpdim, s.invertibles) + s.dims) + "\n")
    else:
        if not sols:
            out.write("no solutions\n")
            return
        out.write(f"| # | fpdim | dims |\n|---|---|---|\n")
        for i, s in enumerate(sols, 1):
            out.write(f"| {i} | {s.fpdim} | {' '.join(str(d) for d in s.dims)} |\n")


def _emit_gradings(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        out.write("case,verdict,reasons\n")
        for r in rows:
            case = " ".join(str(x) for x in r["case"])
            out.write(f"{case},{r['verdict']},{';'.join(r['citations'])}\n")
    else:
        out.write("| case | verdict | citations |\n|---|---|---|\n")
        for r in rows:
            case = "{" + ", ".join(str(x) for x in r["case"]) + "}"
            out.write(f"| {case} | {r['verdict']} | {', '.join(r['citations'])} |\n")


# --------------------------------------------------------------------------
# search subcommands

def _params_from_args(args, mode: Mode) -> SearchParams:
    kwargs = dict(
        rank=args.rank,
        min_m1=args.min_m1,
        m1_square=args.m1_square,
        m1_exclude=frozenset(args.m1_exclude or ()),
        mi_coprime=args.mi_coprime,
        min_run=args.min_run,
        fpdim_bound=args.fpdim_bound,
        mode=mode,
    )
    if mode is Mode.BASIC:
        kwargs["invertibles"] = args.invertibles
    else:
        kwargs["invertibles"] = args.gc
        kwargs["adjoint_rank"] = args.adjoint_rank
        kwargs["adjoint_invertibles"] = args.adjoint_invertibles
    return SearchParams(**kwargs)


def cmd_dims(args, out) -> int:
    params = _params_from_args(args, Mode.BASIC)
    _emit_solutions(enumerate_solutions(params, jobs=args.jobs), args.format, out)
    return 0


def cmd_adjoint_dims(args, out) -> int:
    params = _params_from_args(args, Mode.ADJOINT)
    _emit_solutions(enumerate_solutions(params, jobs=args.jobs), args.format, out)
    return 0


# --------------------------------------------------------------------------
# gradings subcommand

CITE_ADJOINT_CONTAINS = "rule:adjoint-component-contains-all-invertibles"


def _filter_adjoint_containment(case: gradings.GradingCase) -> filters.FilterVerdict:
    """Every invertible lies in the adjoint component, so that component's
    rank must be at least the invertible count."""
    odd = case.odd_multiplicity_ranks()
    adjoint_rank = odd[0] if len(odd) == 1 else max(case.component_ranks)
    if adjoint_rank < case.invertibles:
        return filters.FilterVerdict(
            filters.Verdict.DISCARD, "adjoint-containment", CITE_ADJOINT_CONTAINS,
            detail=f"adjoint rank {adjoint_rank} < {case.invertibles} invertibles")
    return filters.FilterVerdict(
        filters.Verdict.PASS, "adjoint-containment", CITE_ADJOINT_CONTAINS)


GRADING_FILTERS = (
    gradings.filter_min_three_components,
    gradings.filter_divisibility,
    gradings.filter_odd_multiplicity,
    _filter_adjoint_containment,
)


def _grade_cases(rank: int, invertibles: int, apply_filters: bool) -> list[dict]:
    rows = []
    for case in gradings.enumerate_cases(rank, invertibles):
        record = {"case": list(case.component_ranks), "verdict": "LISTED", "citations": []}
        if apply_filters:
            verdicts = [f(case) for f in GRADING_FILTERS]
            discards = [v for v in verdicts if v.discard]
            if discards:
                record["verdict"] = "DISCARDED"
                record["citations"] = [v.citation for v in discards]
            else:
                record["verdict"] = "SURVIVING"
        rows.append(record)
    return rows


def cmd_gradings(args, out) -> int:
    rows = _grade_cases(args.rank, args.invertibles, args.apply_filters)
    _emit_gradings(rows, args.format, out)
    return 0


# --------------------------------------------------------------------------
# classify

def _adjoint_case_for(rank: int, invertibles: int, cases) -> gradings.GradingCase | None:
    surviving = [c for c in cases if not any(f(c).discard for f in GRADING_FILTERS)]
    return surviving[0] if len(surviving) == 1 else None


def _semidirect_status(fpdim: int):
    """For fpdim = p^2 * q^a, decide whether a group-theoretical model exists."""
    fac = factorize(fpdim).factors
    if len(fac) != 2:
        return None
    (p, ep), (q, eq) = fac
    candidates = []
    if ep == 2:
        candidates.append((p, q, eq))
    if eq == 2:
        candidates.append((q, p, ep))
    if not candidates:
        return None
    return any(filters.semidirect_condition(pp, qq, a) for pp, qq, a in candidates)


def _playbook_25_3(case: gradings.GradingCase, sols: list[DimSolution], report: dict) -> None:
    """Structural filter chain for the rank-25, 3-invertibles case."""
    p = 3
    surviving = []
    needs_manual = []
    trail = []
    for sol in sols:
        steps = []

        def discard(verdict):
            steps.append({"filter": verdict.reason, "citation": verdict.citation,
                          "detail": verdict.detail})
            trail.append({"solution": _sol_record(sol), "status": "DISCARDED",
                          "steps": steps})

        v = filters.outside_dim_uniformity(sol, case)
        if v.discard:
            discard(v)
            continue
        steps.append({"filter": v.reason, "citation": v.citation, "verdict": v.verdict.name})
        v = filters.fixed_dim_multiplicity_filter(sol, p)
        if v.discard:
            discard(v)
            continue
        steps.append({"filter": v.reason, "citation": v.citation, "verdict": v.verdict.name})
        v = filters.component_packing_feasible(sol, case)
        if v.discard:
            discard(v)
            continue
        steps.append({"filter": v.reason, "citation": v.citation, "verdict": v.verdict.name})
        v = filters.deequiv_solution_filter(sol.dims, p, sol.fpdim)
        if v.discard:
            discard(v)
            continue
        steps.append({"filter": v.reason, "citation": v.citation, "verdict": v.verdict.name})
        non_div = [d for d in sol.dims if d % p]
        if non_div:
            v = filters.dual_product_feasible(sorted(set(sol.dims)), min(non_div))
            if v.discard:
                discard(v)
                continue
            steps.append({"filter": v.reason, "citation": v.citation, "verdict": v.verdict.name})
        if filters.forced_pointed(sol.fpdim):
            discard(filters.FilterVerdict(
                filters.Verdict.DISCARD, "forced-pointed", filters.CITE_FORCED_POINTED,
                detail=f"fpdim {sol.fpdim} forces a pointed category"))
            continue
        semi = _semidirect_status(sol.fpdim)
        if semi:
            steps.append({"filter": "semidirect-model", "citation": filters.CITE_SEMIDIRECT,
                          "verdict": "PASS"})
            surviving.append(sol)
            trail.append({"solution": _sol_record(sol), "status": "SURVIVING", "steps": steps})
        else:
            needs_manual.append(sol)
            trail.append({"solution": _sol_record(sol), "status": "NEEDS_MANUAL_ANALYSIS",
                          "steps": steps})
    report["surviving"] = [_sol_record(s) for s in surviving]
    report["needs_manual"] = [_sol_record(s) for s in needs_manual]
    report["filter_trail"] = trail


def classify(rank: int, jobs: int = 1) -> dict:
    if rank % 2 == 0 or not 17 <= rank <= 49:
        raise ValueError("rank must be odd and between 17 and 49")
    report = {"rank": rank, "hypotheses": []}
    candidates = gradings.invertible_count_candidates(rank)
    report["invertible_candidates"] = candidates
    for s in candidates:
        if s == rank:
            report["hypotheses"].append(
                {"invertibles": s, "kind": "pointed", "status": "SURVIVING",
                 "note": "all simple objects invertible"})
            continue
        if s == 1:
            entry = {"invertibles": 1, "kind": "perfect"}
            if rank <= 23:
                rows = enumerate_solutions(SearchParams(rank=rank, invertibles=1), jobs=jobs)
                if rows:
                    entry["status"] = "NEEDS_MANUAL_ANALYSIS"
                    entry["solutions"] = [_sol_record(r) for r in rows]
                else:
                    entry["status"] = "DISCARDED"
                    entry["citations"] = [CITE_EMPTY_SEARCH]
                    entry["detail"] = "the perfect-case search has no dimension arrays"
            else:
                entry["status"] = "NEEDS_MANUAL_ANALYSIS"
                entry["detail"] = "perfect case not mechanized at this rank"
            report["hypotheses"].append(entry)
            continue
        entry = {"invertibles": s, "kind": "graded"}
        cases = _grade_cases(rank, s, apply_filters=True)
        entry["cases"] = cases
        surviving_cases = [c for c in cases if c["verdict"] == "SURVIVING"]
        if not surviving_cases:
            entry["status"] = "DISCARDED"
            entry["citations"] = sorted({c for row in cases for c in row["citations"]})
            report["hypotheses"].append(entry)
            continue
        if (rank, s) in PLAYBOOK:
            case = _adjoint_case_for(rank, s, gradings.enumerate_cases(rank, s))
            sols = enumerate_solutions(SearchParams(rank=rank, invertibles=s), jobs=jobs)
            entry["status"] = "ANALYZED"
            _playbook_25_3(case, sols, entry)
            entry["surviving_count"] = len(entry["surviving"])
        elif (rank, s) in PREDICATE_INJECTION:
            params = SearchParams(rank=rank, invertibles=s, **PREDICATE_INJECTION[(rank, s)])
            rows = enumerate_solutions(params, jobs=jobs)
            if rows:
                entry["status"] = "NEEDS_MANUAL_ANALYSIS"
                entry["solutions"] = [_sol_record(r) for r in rows]
            else:
                entry["status"] = "DISCARDED"
                entry["citations"] = [CITE_EMPTY_SEARCH]
                entry["detail"] = "restricted search has no dimension arrays"
        else:
            entry["status"] = "NEEDS_MANUAL_ANALYSIS"
            entry["detail"] = "structural chain not mechanized for this configuration"
        report["hypotheses"].append(entry)
    return report


def _emit_classify(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(report, out, indent=2)
        out.write("\n")
        return
    out.write(f"# Classification report: rank {report['rank']}\n\n")
    out.write(f"Invertible-count candidates: {report['invertible_candidates']}\n\n")
    for h in report["hypotheses"]:
        out.write(f"## {h['kind']} (invertibles = {h['invertibles']}): "
                  f"{h.get('status', 'ANALYZED')}\n")
        if h.get("citations"):
            out.write(f"citations: {', '.join(h['citations'])}\n")
        if h.get("detail"):
            out.write(f"{h['detail']}\n")
        for case in h.get("cases", ()):
            cs = "{" + ", ".join(str(x) for x in case["case"]) + "}"
            cites = f" [{', '.join(case['citations'])}]" if case["citations"] else ""
            out.write(f"- case {cs}: {case['verdict']}{cites}\n")
        for item in h.get("filter_trail", ()):
            sol = item["solution"]
            last = item["steps"][-1] if item["steps"] else {}
            note = last.get("citation", "")
            out.write(f"- fpdim {sol['fpdim']} dims {sol['dims']}: "
                      f"{item['status']} [{note}]\n")
        for sol in h.get("solutions", ()):
            out.write(f"- fpdim {sol['fpdim']} dims {sol['dims']}\n")
        out.write("\n")


def cmd_classify(args, out) -> int:
    report = classify(args.rank, jobs=args.jobs)
    _emit_classify(report, args.format, out)
    return 0


# --------------------------------------------------------------------------
# verification subcommands

def cmd_verify_goldens(args, out) -> int:
    tables = goldens.load_goldens()
    failures = []
    for table in tables:
        diff = goldens.verify(table, jobs=args.jobs)
        if diff.empty:
            out.write(f"{table.table_id}: match ({table.row_count} rows)\n")
        else:
            failures.append(diff)
            out.write(f"{table.table_id}: MISMATCH "
                      f"({len(diff.missing)} missing, {len(diff.extra)} extra)\n")
            for row in diff.missing:
                out.write(f"  missing {row.fpdim} {list(row.dims)}\n")
            for row in diff.extra:
                out.write(f"  extra {row.fpdim} {list(row.dims)}\n")
    out.write(f"{len(tables) - len(failures)}/{len(tables)} tables match\n")
    return 1 if failures else 0


def cmd_oracle_check(args, out) -> int:
    bound = args.fpdim_bound or 10 ** 6
    params = _params_from_args(args, Mode.BASIC)
    search = enumerate_solutions(params, jobs=args.jobs)
    reference = oracle.oracle_enumerate(params, bound)
    diff = oracle.compare(search, reference, bound)
    if diff.empty:
        out.write(f"match: {len(reference)} solutions with fpdim <= {bound}\n")
        return 0
    out.write(f"MISMATCH: {len(diff.missing)} missing, {len(diff.extra)} extra\n")
    for row in diff.missing:
        out.write(f"  missing {row.fpdim} {list(row.dims)}\n")
    for row in diff.extra:
        out.write(f"  extra {row.fpdim} {list(row.dims)}\n")
    return 1


# --------------------------------------------------------------------------
# argument parsing

def _add_search_flags(sub, adjoint: bool) -> None:
    sub.add_argument("--rank", type=int, required=True)
    if adjoint:
        sub.add_argument("--gc", type=int, required=True,
                         help="total invertible count of the category")
        sub.add_argument("--adjoint-rank", type=int, required=True)
        sub.add_argument("--adjoint-invertibles", type=int, required=True)
    else:
        sub.add_argument("--invertibles", type=int, required=True)
    sub.add_argument("--min-m1", type=int, default=1)
    sub.add_argument("--m1-square", action="store_true")
    sub.add_argument("--m1-exclude", type=int, nargs="+", metavar="M1")
    sub.add_argument("--mi-coprime", type=int, metavar="P")
    sub.add_argument("--min-run", type=int, metavar="L")
    sub.add_argument("--fpdim-bound", type=int, metavar="B")


def _add_common(sub) -> None:
    sub.add_argument("--format", choices=("json", "csv", "md"), default="md")
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddmtc",
        description="Candidate dimension arrays and case analysis for "
                    "odd-dimensional modular tensor categories.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("dims", help="enumerate dimension arrays over all simples")
    _add_search_flags(sub, adjoint=False)
    _add_common(sub)
    sub.set_defaults(func=cmd_dims)

    sub = subs.add_parser("adjoint-dims",
                          help="enumerate dimension arrays of the adjoint layer")
    _add_search_flags(sub, adjoint=True)
    _add_common(sub)
    sub.set_defaults(func=cmd_adjoint_dims)

    sub = subs.add_parser("gradings", help="universal-grading case decompositions")
    sub.add_argument("--rank", type=int, required=True)
    sub.add_argument("--invertibles", type=int, required=True)
    sub.add_argument("--apply-filters", action="store_true")
    _add_common(sub)
    sub.set_defaults(func=cmd_gradings)

    sub = subs.add_parser("classify", help="per-rank classification report")
    sub.add_argument("--rank", type=int, required=True)
    _add_common(sub)
    sub.set_defaults(func=cmd_classify)

    sub = subs.add_parser("verify-goldens", help="diff the search against stored tables")
    _add_common(sub)
    sub.set_defaults(func=cmd_verify_goldens)

    sub = subs.add_parser("oracle-check",
                          help="cross-check the search against the bounded oracle")
    _add_search_flags(sub, adjoint=False)
    _add_common(sub)
    sub.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buffer = StringIO()
    try:
        status = args.func(args, buffer)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = buffer.getvalue()
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
