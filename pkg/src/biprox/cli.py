"""Command-line front end: analysis reports, coproduct table emission,
lattice export, the catalog survey, and fusion-ring checking.

Commands and exit codes:

* ``analyze``      full classification report as JSON.
* ``table``        coproduct table of either side; ``--check-paper``
                   validates the two embedded reference instances.
* ``survey``       enumerate catalog inclusions up to equivalence,
                   classify each class, emit CSV rows and summary counts.
* ``lattice``      intermediate-subgroup lattice as DOT with predicates.
* ``fusion-check`` verify a fusion tensor file and report dimensions.

Exit codes: 0 ok, 1 parse error, 2 cap exceeded, 3 numeric ambiguity.
All output is deterministic for fixed flags and seed; survey rows are
reduced by inclusion equivalence with canonically chosen representatives,
so a permuted catalog order yields byte-identical output.

A full census at index < 30 is out of desk-scale reach and deliberately
not attempted: the survey defaults to index <= 12 and hard-caps
``--max-index`` at 30.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .boxalgebra import BoxContext, BoxElement, coproduct_table
from .catalog import catalog_group, catalog_names, parse_group_spec, parse_subgroup_spec
from .errors import (
    AxiomViolation,
    BiprojectionCheckFailed,
    GroupSpecError,
    NotPositive,
    NumericRankAmbiguous,
    OrderCapExceeded,
    QuotientOrderCapExceeded,
    SubgroupCapExceeded,
    TheoremViolation,
)
from .fusionring import fusion_report, load_fusion_file
from .interval import Inclusion, equivalence_key, inclusions_equivalent
from .lattice import boolean_rank, from_subgroups, is_distributive, is_modular
from .permgroup import FiniteGroup, Subgroup, all_subgroups
from .properties import ClassificationReport, classify
from .reference_tables import dual_coset_basis, run_reference_checks, s2_s4_context, s3_context

SCHEMA = "biprox/1"
SURVEY_INDEX_LIMIT = 30

_CSV_REPORT_FIELDS = (
    "distributive",
    "dedekind",
    "cyclic",
    "w_cyclic",
    "w_plus_cyclic",
    "Z",
    "ZZ",
    "F2",
    "w_cyclic_dual",
)

_CAP_ERRORS = (OrderCapExceeded, SubgroupCapExceeded, QuotientOrderCapExceeded)
_NUMERIC_ERRORS = (NumericRankAmbiguous, BiprojectionCheckFailed, NotPositive)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, indent=2))


def _classify_with_retries(ctx: BoxContext, seed: int) -> ClassificationReport:
    """Classify, advancing the seed past transient rank ambiguities."""
    for attempt in range(max(1, ctx.tol.retries)):
        try:
            return classify(ctx, seed=seed + attempt)
        except NumericRankAmbiguous:
            if attempt == max(1, ctx.tol.retries) - 1:
                raise
    raise AssertionError("unreachable")


def _context_from_args(args) -> Tuple[FiniteGroup, Subgroup, BoxContext]:
    group = parse_group_spec(args.group, max_order=args.max_order)
    sub = parse_subgroup_spec(group, args.subgroup)
    return group, sub, BoxContext(group, sub)


# -- analyze -------------------------------------------------------------


def cmd_analyze(args) -> int:
    group, sub, ctx = _context_from_args(args)
    lat = from_subgroups(group, sub)
    distributive, _ = is_distributive(lat)
    modular, _ = is_modular(lat)
    report = _classify_with_retries(ctx, args.seed)
    out = {
        "schema": SCHEMA,
        "command": "analyze",
        "group": group.label(),
        "subgroup": sub.generator_string(),
        "group_order": group.order,
        "subgroup_order": sub.order,
        "index": group.order // sub.order,
        "interval": {
            "size": lat.n,
            "height": lat.height(),
            "distributive": distributive,
            "modular": modular,
            "boolean_rank": boolean_rank(lat),
        },
        "report": report.to_json_dict(),
    }
    if args.format == "text":
        r = out["report"]
        lines = [
            f"{out['group']} over subgroup of order {sub.order}"
            f" (index {out['index']}, interval size {lat.n})",
            "  "
            + "  ".join(f"{k}={r[k]}" for k in _CSV_REPORT_FIELDS),
            f"  sum of reciprocal indices: {r['sum_bound']}",
            f"  lengths: {r['lengths']}",
            f"  witnesses: {r['witnesses']}",
        ]
        _emit("\n".join(lines))
    else:
        _emit_json(out)
    return 0


# -- table ---------------------------------------------------------------


def _primal_coset_basis(ctx: BoxContext) -> List[BoxElement]:
    """Double-coset indicator basis (the canonical spanning set)."""
    return [BoxElement(ctx, row) for row in ctx.basis_matrix]


def _coset_legend(ctx: BoxContext, labels: Sequence[str]) -> Dict[str, str]:
    reps = ctx.coset_reps
    return {
        labels[i]: ctx.group.elements[int(reps[i])].cycle_string() or "()"
        for i in range(ctx.dim)
    }


def _check_paper(args, group: FiniteGroup, sub: Subgroup) -> int:
    inc = Inclusion(group, sub)
    ref3 = s3_context()
    ref42 = s2_s4_context()
    if args.side == "primal" and inclusions_equivalent(inc, Inclusion(ref3.group, ref3.sub)):
        wanted = ("s3-coproduct-table",)
    elif args.side == "dual" and inclusions_equivalent(inc, Inclusion(ref42.group, ref42.sub)):
        wanted = ("s2-s4-dual-table", "s2-s4-central-pair")
    else:
        raise GroupSpecError(
            "--check-paper applies to the primal table of S3 over the trivial "
            "subgroup and the dual table of S4 over a transposition"
        )
    rows = [r for r in run_reference_checks() if r[0] in wanted]
    out = {
        "schema": SCHEMA,
        "command": "table",
        "check_paper": True,
        "side": args.side,
        "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in rows],
    }
    _emit_json(out)
    return 0 if all(ok for _, ok, _ in rows) else 3


def cmd_table(args) -> int:
    group, sub, ctx = _context_from_args(args)
    if args.check_paper:
        return _check_paper(args, group, sub)
    labels = tuple(f"e{i + 1}" for i in range(ctx.dim))
    if args.side == "dual":
        basis = dual_coset_basis(ctx)
    else:
        basis = _primal_coset_basis(ctx)
    table = coproduct_table(ctx, basis, labels)
    legend = _coset_legend(ctx, labels)
    if args.format == "json":
        entries = [
            [[[float(z.real), float(z.imag)] for z in cell] for cell in row]
            for row in table.entries
        ]
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "table",
                "group": group.label(),
                "subgroup": sub.generator_string(),
                "side": args.side,
                "scale": table.scale,
                "labels": list(table.labels),
                "legend": legend,
                "entries": entries,
            }
        )
    else:
        head = (
            f"# {args.side} coproduct table of {group.label()} over subgroup "
            f"of order {sub.order}; entries scaled by delta = {table.scale:.6g}"
        )
        legend_lines = [f"#   {k} = class of {v}" for k, v in legend.items()]
        _emit("\n".join([head, *legend_lines, table.as_text()]))
    return 0


# -- lattice ---------------------------------------------------------------


def cmd_lattice(args) -> int:
    group, sub, _ = _context_from_args(args)
    lat = from_subgroups(group, sub)
    distributive, _ = is_distributive(lat)
    modular, _ = is_modular(lat)
    rank = boolean_rank(lat)
    title = f"[{sub.generator_string()}, {group.label()}]"
    if args.format == "json":
        covers = lat.covers()
        edges = [
            [int(a), int(b)]
            for a in range(lat.n)
            for b in range(lat.n)
            if covers[a, b]
        ]
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "lattice",
                "group": group.label(),
                "subgroup": sub.generator_string(),
                "size": lat.n,
                "height": lat.height(),
                "distributive": distributive,
                "modular": modular,
                "boolean_rank": rank,
                "labels": list(lat.labels),
                "cover_edges": edges,
            }
        )
    else:
        preamble = (
            f"// size: {lat.n}  height: {lat.height()}  "
            f"distributive: {distributive}  modular: {modular}  "
            f"boolean_rank: {rank}"
        )
        _emit(preamble + "\n" + lat.to_dot(title=title))
    return 0


# -- fusion-check -----------------------------------------------------------


def cmd_fusion_check(args) -> int:
    try:
        ring = load_fusion_file(args.file)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    base = {"schema": SCHEMA, "command": "fusion-check", "file": str(args.file)}
    try:
        report = fusion_report(ring)
    except AxiomViolation as exc:
        _emit_json({**base, "ok": False, "violation": str(exc)})
        return 0
    _emit_json({**base, "ok": True, **report})
    return 0


# -- survey -------------------------------------------------------------------


def subgroup_class_representatives(group: FiniteGroup) -> List[Subgroup]:
    """One subgroup per conjugacy class: the member with minimal mask key."""
    canonical: Dict[bytes, Subgroup] = {}
    for sub in all_subgroups(group):
        key = sub.key()
        canon = min(sub.conjugated_by(g).key() for g in range(group.order))
        if key == canon:
            canonical[canon] = sub
    return sorted(canonical.values(), key=lambda s: (s.order, s.key()))


def enumerate_pairs(
    names: Optional[Sequence[str]] = None,
    max_index: Optional[int] = None,
    max_order: Optional[int] = None,
) -> List[Tuple[str, Inclusion]]:
    """Catalog inclusions (one subgroup per conjugacy class, H < G)."""
    out: List[Tuple[str, Inclusion]] = []
    for name in names if names is not None else catalog_names():
        group = catalog_group(name)
        if max_order is not None and group.order > max_order:
            continue
        for sub in subgroup_class_representatives(group):
            if sub.order == group.order:
                continue
            if max_index is not None and group.order // sub.order > max_index:
                continue
            out.append((name, Inclusion(group, sub)))
    return out


def corpus_pairs() -> List[Tuple[str, Inclusion]]:
    """The verification corpus: every catalog inclusion with |G| <= 48 plus
    all inclusions of the degree-4 and degree-5 symmetric groups."""
    pairs = enumerate_pairs(max_order=48)
    pairs += [(n, i) for n, i in enumerate_pairs(names=["S5"])]
    return pairs


def _pair_sort_key(item: Tuple[str, Inclusion]) -> tuple:
    name, inc = item
    return (inc.group.order, name, inc.sub.order, inc.sub.generator_string())


def equivalence_classes(
    pairs: Sequence[Tuple[str, Inclusion]]
) -> List[List[Tuple[str, Inclusion]]]:
    """Partition by inclusion equivalence; classes and members are sorted
    canonically so the result is independent of input order."""
    buckets: Dict[tuple, List[Tuple[str, Inclusion]]] = {}
    for name, inc in sorted(pairs, key=_pair_sort_key):
        try:
            key = equivalence_key(inc)
        except _CAP_ERRORS:
            key = ("cap", inc.group.order, inc.sub.order)
        buckets.setdefault(key, []).append((name, inc))
    classes: List[List[Tuple[str, Inclusion]]] = []
    for members in buckets.values():
        groups: List[List[Tuple[str, Inclusion]]] = []
        for item in members:
            placed = False
            for cls in groups:
                try:
                    same = inclusions_equivalent(item[1], cls[0][1])
                except _CAP_ERRORS:
                    same = False
                if same:
                    cls.append(item)
                    placed = True
                    break
            if not placed:
                groups.append([item])
        classes.extend(groups)
    classes.sort(key=lambda cls: _pair_sort_key(cls[0]))
    return classes


def _survey_row(name: str, sub_spec: str, seed: int) -> dict:
    """Classify one class representative, given by catalog name and subgroup
    generator string (re-derivable in a worker process)."""
    group = catalog_group(name)
    sub = parse_subgroup_spec(group, sub_spec)
    row = {
        "group": name,
        "subgroup": sub_spec,
        "group_order": group.order,
        "subgroup_order": sub.order,
        "index": group.order // sub.order,
        "interval_size": from_subgroups(group, sub).n,
    }
    try:
        report = _classify_with_retries(BoxContext(group, sub), seed)
    except _CAP_ERRORS as exc:
        return {**row, "status": "cap", "error": str(exc), "report": None}
    except _NUMERIC_ERRORS as exc:
        return {**row, "status": "numeric", "error": str(exc), "report": None}
    return {**row, "status": "ok", "error": "", "report": report.to_json_dict()}


def survey(
    max_index: int = 12,
    names: Optional[Sequence[str]] = None,
    max_order: Optional[int] = None,
    seed: int = 0,
    jobs: int = 1,
) -> Tuple[List[dict], dict]:
    """Classify one representative per equivalence class; returns (rows,
    summary).  Deterministic: canonical class order, canonical
    representatives, fixed seed."""
    if max_index > SURVEY_INDEX_LIMIT:
        raise OrderCapExceeded(
            f"max index {max_index} exceeds the survey limit {SURVEY_INDEX_LIMIT}"
        )
    classes = equivalence_classes(
        enumerate_pairs(names=names, max_index=max_index, max_order=max_order)
    )
    tasks = [
        (cls[0][0], cls[0][1].sub.generator_string(), seed) for cls in classes
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_survey_task, tasks))
    else:
        results = [_survey_task(t) for t in tasks]
    rows = []
    counts = {
        "total": len(classes),
        "distributive": 0,
        "dedekind": 0,
        "cyclic": 0,
        "w_cyclic": 0,
        "w_cyclic_dual": 0,
        "errors": 0,
    }
    for class_id, (cls, row) in enumerate(zip(classes, results)):
        row = {"class_id": class_id, "class_size": len(cls), **row}
        rows.append(row)
        report = row["report"]
        if report is None:
            counts["errors"] += 1
            continue
        if report["cyclic"] and not (
            report["w_cyclic"] and report["dedekind"] and report["distributive"]
        ):
            raise TheoremViolation(
                f"cyclic class {row['group']}/{row['subgroup']} breaks containment"
            )
        for key in ("distributive", "dedekind", "cyclic", "w_cyclic", "w_cyclic_dual"):
            counts[key] += bool(report[key])
    summary = {
        "schema": SCHEMA,
        "command": "survey",
        "max_index": max_index,
        "max_order": max_order,
        "seed": seed,
        "counts": counts,
    }
    return rows, summary


def _survey_task(task: Tuple[str, str, int]) -> dict:
    return _survey_row(*task)


def survey_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [
        "class_id",
        "group",
        "subgroup",
        "group_order",
        "subgroup_order",
        "index",
        "interval_size",
        "class_size",
        "status",
        *_CSV_REPORT_FIELDS,
        "sum_bound",
    ]
    writer.writerow(header)
    for row in rows:
        report = row["report"]
        cells = [
            row["class_id"],
            row["group"],
            row["subgroup"],
            row["group_order"],
            row["subgroup_order"],
            row["index"],
            row["interval_size"],
            row["class_size"],
            row["status"],
        ]
        if report is None:
            cells += [""] * (len(_CSV_REPORT_FIELDS) + 1)
        else:
            cells += [str(bool(report[k])).lower() for k in _CSV_REPORT_FIELDS]
            cells.append(report["sum_bound"])
        writer.writerow(cells)
    return buf.getvalue()


def cmd_survey(args) -> int:
    rows, summary = survey(
        max_index=args.max_index,
        max_order=args.max_order_filter,
        seed=args.seed,
        jobs=args.jobs,
    )
    if args.format == "csv":
        sys.stdout.write(survey_csv(rows))
    elif args.format == "json":
        _emit_json({**summary, "rows": rows})
    else:
        counts = summary["counts"]
        _emit(
            "\n".join(
                [
                    f"survey: index <= {args.max_index}, "
                    f"{counts['total']} equivalence classes",
                    "  "
                    + "  ".join(
                        f"{k}={counts[k]}"
                        for k in (
                            "distributive",
                            "dedekind",
                            "cyclic",
                            "w_cyclic",
                            "w_cyclic_dual",
                            "errors",
                        )
                    ),
                ]
            )
        )
    return 0


# -- entry point ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse with parse failures mapped to exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_context_flags(p) -> None:
        p.add_argument("--group", required=True, help="catalog name, perm:..., or file:...")
        p.add_argument(
            "--subgroup",
            default="trivial",
            help="'trivial', 'full', or cycle-notation generators",
        )
        p.add_argument("--max-order", type=int, default=400, dest="max_order")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="full classification report")
    add_context_flags(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("table", help="coproduct table of either side")
    add_context_flags(p)
    p.add_argument("--side", choices=("primal", "dual"), default="primal")
    p.add_argument("--check-paper", action="store_true", dest="check_paper")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("survey", help="classify catalog inclusions up to equivalence")
    p.add_argument("--max-index", type=int, default=12, dest="max_index")
    p.add_argument(
        "--max-order",
        type=int,
        default=None,
        dest="max_order_filter",
        help="restrict the catalog to groups of at most this order",
    )
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("lattice", help="intermediate subgroup lattice as DOT")
    add_context_flags(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("fusion-check", help="verify a fusion tensor file")
    p.add_argument("file")
    p.set_defaults(func=cmd_fusion_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GroupSpecError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except _CAP_ERRORS as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return 2
    except _NUMERIC_ERRORS as exc:
        sys.stderr.write(f"numeric ambiguity: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
