"""Command-line interface: dataset ingestion, dispatch, and reports.

Datasets come in two formats. JSON: an object with "alternatives" (label
list, defining id order) and "choices" (list of {"menu": [labels],
"choice": label}), optional "version": 1. Text: one `a,b,c -> a` line per
menu, optionally preceded by `alternatives: a,b,c` to pin the label order
(otherwise the sorted union of mentioned labels is used). Singleton menus
may be omitted; their forced picks are filled in with a warning.

Exit codes: 0 on success, 1 on dataset or analysis errors, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from ._parallel import ENV_WORKERS
from .axioms import Reversal, find_reversals, is_inconsistent, satisfies_warp
from .census import (
    DEFAULT_SEED,
    MAX_EXACT_CENSUS_N,
    CensusReport,
    ExplicitIndexPolicy,
    FixedIndexPolicy,
    UniformIndexPolicy,
    construct_inconsistent,
    enumerate_census,
    generate_harmful,
    inconsistent_ground_set,
    sample_census,
)
from .core import ChoiceFunction, GroundSet, LinearOrder, Menu, validate_choice
from .degree import SpReport, sp, sp_axiomatic, sp_bruteforce
from .distortion import harmful_distortion
from .elicit import all_extensions, elicit_partial, elicit_weakly_harmful
from .errors import (
    DatasetError,
    DuplicateMenu,
    HarmchoiceError,
    MissingMenu,
    ParseError,
    PickNotInMenu,
)

#: Reports keep at most this many elicited orders (the count stays exact).
ELICITED_ORDER_CAP = 100

DATASET_VERSION = 1


@dataclass(frozen=True)
class LoadedDataset:
    ground: GroundSet
    choice: ChoiceFunction
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the analyzer derives from one dataset."""

    ground: GroundSet
    warnings: tuple[str, ...]
    warp: bool
    inconsistent: bool
    reversals: tuple[Reversal, ...]
    sp_report: SpReport
    elicited_orders: tuple[LinearOrder, ...]
    elicited_order_count: int
    partial_order_pairs: tuple[tuple[int, int], ...] | None

    def to_dict(self) -> dict:
        g = self.ground
        out: dict = {
            "dataset": {
                "n": g.n,
                "alternatives": list(g.labels),
                "menu_count": (1 << g.n) - 1,
            },
            "warnings": list(self.warnings),
            "warp": self.warp,
            "inconsistent": self.inconsistent,
            "reversals": [r.to_dict(g) for r in self.reversals],
            "sp": self.sp_report.to_dict(g),
            "elicited_orders": [o.label_list(g) for o in self.elicited_orders],
            "elicited_order_count": self.elicited_order_count,
            "partial_order": (
                None
                if self.partial_order_pairs is None
                else [[g.label(a), g.label(b)] for a, b in self.partial_order_pairs]
            ),
        }
        return out


# ---------------------------------------------------------------------------
# dataset loading


def load_dataset(path: str) -> LoadedDataset:
    """Read, parse, and validate a dataset file ('-' reads stdin)."""
    if path == "-":
        text = sys.stdin.read()
    else:
        text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        ground, rows = _parse_json_dataset(text)
    else:
        ground, rows = _parse_text_dataset(text)
    _check_rows(ground, rows)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            choice = validate_choice([(menu, pick) for _, menu, pick in rows], ground)
        except MissingMenu as exc:
            shown = ", ".join(
                "{" + ", ".join(m.label_list(ground)) + "}" for m in exc.menus
            )
            suffix = "" if exc.total == len(exc.menus) else f" (and {exc.total - len(exc.menus)} more)"
            raise DatasetError(f"dataset is missing {exc.total} menu(s): {shown}{suffix}") from None
    return LoadedDataset(
        ground=ground,
        choice=choice,
        warnings=tuple(str(w.message) for w in caught),
    )


def _check_rows(ground: GroundSet, rows: list[tuple[str, Menu, int]]) -> None:
    seen: dict[int, str] = {}
    for ref, menu, pick in rows:
        if pick not in menu:
            raise PickNotInMenu(
                f"{ref}: pick {ground.label(pick)!r} is not a member of its menu"
            )
        prev = seen.get(menu.mask)
        if prev is not None:
            labels = ", ".join(menu.label_list(ground))
            raise DuplicateMenu(f"menu {{{labels}}} appears at both {prev} and {ref}")
        seen[menu.mask] = ref


def _parse_json_dataset(text: str) -> tuple[GroundSet, list[tuple[str, Menu, int]]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("dataset must be a JSON object")
    version = obj.get("version", DATASET_VERSION)
    if version != DATASET_VERSION:
        raise ParseError(f"unsupported dataset version {version!r}")
    labels = obj.get("alternatives")
    if not isinstance(labels, list) or not labels:
        raise ParseError('dataset needs a nonempty "alternatives" list')
    try:
        ground = GroundSet(tuple(str(lab) for lab in labels))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    choices = obj.get("choices")
    if not isinstance(choices, list):
        raise ParseError('dataset needs a "choices" list')
    rows = []
    for i, entry in enumerate(choices):
        ref = f"choices[{i}]"
        if not isinstance(entry, dict) or "menu" not in entry or "choice" not in entry:
            raise ParseError(f'{ref}: expected an object with "menu" and "choice"')
        menu_labels = entry["menu"]
        if not isinstance(menu_labels, list) or not menu_labels:
            raise ParseError(f"{ref}: menu must be a nonempty label list")
        rows.append((ref, _menu_from_labels(ground, menu_labels, ref), _alt(ground, entry["choice"], ref)))
    return ground, rows


def _parse_text_dataset(text: str) -> tuple[GroundSet, list[tuple[str, Menu, int]]]:
    header: list[str] | None = None
    body: list[tuple[str, list[str], str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None and not body and line.lower().startswith("alternatives:"):
            header = [s.strip() for s in line.split(":", 1)[1].split(",")]
            continue
        ref = f"line {lineno}"
        left, sep, right = line.partition("->")
        if not sep:
            raise ParseError(f"{ref}: expected 'a,b,c -> a'")
        menu_labels = [s.strip() for s in left.split(",")]
        pick_label = right.strip()
        if not all(menu_labels) or not pick_label:
            raise ParseError(f"{ref}: empty label")
        body.append((ref, menu_labels, pick_label))
    if not body:
        raise ParseError("dataset contains no choice rows")
    if header is not None:
        labels = tuple(header)
    else:
        labels = tuple(sorted({lab for _, menu, pick in body for lab in menu + [pick]}))
    try:
        ground = GroundSet(labels)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    rows = []
    for ref, menu_labels, pick_label in body:
        rows.append((ref, _menu_from_labels(ground, menu_labels, ref), _alt(ground, pick_label, ref)))
    return ground, rows


def _alt(ground: GroundSet, label: object, ref: str) -> int:
    try:
        return ground.index(str(label))
    except KeyError:
        raise ParseError(f"{ref}: unknown alternative {label!r}") from None


def _menu_from_labels(ground: GroundSet, labels: list, ref: str) -> Menu:
    ids = [_alt(ground, lab, ref) for lab in labels]
    if len(set(ids)) != len(ids):
        raise ParseError(f"{ref}: menu repeats an alternative")
    return Menu(tuple(ids))


# ---------------------------------------------------------------------------
# report assembly and rendering


def build_analysis(ds: LoadedDataset, workers: int | None = None) -> AnalysisReport:
    choice = ds.choice
    report = sp(choice, workers=workers)
    reversals = tuple(find_reversals(choice))
    elicited: tuple[LinearOrder, ...] = ()
    elicited_count = 0
    partial_pairs = None
    if report.sp >= 1 and report.cns_witness is not None:
        partial = elicit_partial(choice, report.cns_witness.items)
        partial_pairs = tuple(partial.sorted_pairs())
        if report.sp == 1:
            orders = elicit_weakly_harmful(choice)
            elicited = tuple(orders)
            elicited_count = len(orders)
        else:
            ext = all_extensions(partial, ELICITED_ORDER_CAP)
            elicited = ext.orders
            elicited_count = ext.total
    return AnalysisReport(
        ground=ds.ground,
        warnings=ds.warnings,
        warp=satisfies_warp(choice),
        inconsistent=is_inconsistent(choice),
        reversals=reversals,
        sp_report=report,
        elicited_orders=elicited,
        elicited_order_count=elicited_count,
        partial_order_pairs=partial_pairs,
    )


def _emit(args: argparse.Namespace, payload: dict, text_lines: list[str]) -> int:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))
    return 0


def _order_text(labels: list[str]) -> str:
    return " > ".join(labels)


def _reversal_text(r: Reversal, ground: GroundSet) -> str:
    d = r.to_dict(ground)
    return (
        f"{{{', '.join(d['menu_a'])}}} -> {d['pick_a']}"
        f"  |  {{{', '.join(d['menu_b'])}}} -> {d['pick_b']}"
    )


def _analysis_text(rep: AnalysisReport) -> list[str]:
    g = rep.ground
    lines = [
        f"n: {g.n}",
        f"alternatives: {', '.join(g.labels)}",
        f"menus: {(1 << g.n) - 1}",
    ]
    for w in rep.warnings:
        lines.append(f"warning: {w}")
    lines.append(f"warp: {'satisfied' if rep.warp else 'violated'}")
    if rep.inconsistent:
        lines.append("inconsistent: every alternative pair is co-selected by a reversal")
    lines.append(f"reversals: {len(rep.reversals)}")
    lines.extend(f"  {_reversal_text(r, g)}" for r in rep.reversals)
    lines.extend(_sp_text(rep.sp_report, g))
    if rep.elicited_orders:
        lines.append(f"elicited orders (total {rep.elicited_order_count}):")
        lines.extend(f"  {_order_text(o.label_list(g))}" for o in rep.elicited_orders)
    if rep.partial_order_pairs is not None:
        pairs = ", ".join(
            f"{g.label(a)} > {g.label(b)}" for a, b in rep.partial_order_pairs
        )
        lines.append(f"partial order: {pairs}")
    return lines


def _sp_text(report: SpReport, ground: GroundSet) -> list[str]:
    lines = [f"sp: {report.sp}", f"method: {report.method}"]
    if report.minimizing_orders is not None:
        lines.append(f"minimizing orders (total {report.minimizing_order_count}):")
        lines.extend(
            f"  {_order_text(o.label_list(ground))}" for o in report.minimizing_orders
        )
    if report.cns_witness is not None:
        items = ", ".join(ground.label(e) for e in report.cns_witness.items)
        lines.append(f"witness items: {items}")
        lines.extend(
            f"  {_reversal_text(r, ground)}" for r in report.cns_witness.paired_reversals
        )
    return lines


def _census_text(report: CensusReport) -> list[str]:
    lines = [f"n: {report.n}", f"mode: {report.mode}", f"total: {report.total}"]
    for k, v in sorted(report.counts_by_sp.items()):
        lines.append(f"sp {k}: {v}")
    lines.append(f"strongly harmful fraction: {report.strongly_harmful_fraction}")
    if report.mode == "sampled":
        lines.append(f"95% half-width: {report.half_width}")
        lines.append(f"seed: {report.seed}")
        lines.append(f"samples: {report.samples}")
    return lines


def _dataset_payload(ground: GroundSet, choice: ChoiceFunction) -> dict:
    return {
        "version": DATASET_VERSION,
        "alternatives": list(ground.labels),
        "choices": [
            {"menu": menu.label_list(ground), "choice": ground.label(pick)}
            for menu, pick in choice.items()
        ],
    }


def _dataset_text(ground: GroundSet, choice: ChoiceFunction) -> list[str]:
    lines = [f"alternatives: {', '.join(ground.labels)}"]
    lines.extend(
        f"{','.join(menu.label_list(ground))} -> {ground.label(pick)}"
        for menu, pick in choice.items()
    )
    return lines


# ---------------------------------------------------------------------------
# subcommands


def _cmd_analyze(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    rep = build_analysis(ds, workers=args.workers)
    return _emit(args, rep.to_dict(), _analysis_text(rep))


def _cmd_warp(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    ok = satisfies_warp(ds.choice)
    payload = {
        "n": ds.ground.n,
        "warnings": list(ds.warnings),
        "warp": ok,
    }
    lines = [f"warning: {w}" for w in ds.warnings]
    lines.append(f"warp: {'satisfied' if ok else 'violated'}")
    return _emit(args, payload, lines)


def _cmd_reversals(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    revs = find_reversals(ds.choice)
    payload = {
        "n": ds.ground.n,
        "warnings": list(ds.warnings),
        "count": len(revs),
        "reversals": [r.to_dict(ds.ground) for r in revs],
    }
    lines = [f"warning: {w}" for w in ds.warnings]
    lines.append(f"reversals: {len(revs)}")
    lines.extend(f"  {_reversal_text(r, ds.ground)}" for r in revs)
    return _emit(args, payload, lines)


def _cmd_sp(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    if args.brute:
        report = sp_bruteforce(ds.choice, workers=args.workers)
    elif args.axiomatic:
        report = sp_axiomatic(ds.choice)
    else:
        report = sp(ds.choice, workers=args.workers)
    payload = {
        "n": ds.ground.n,
        "warnings": list(ds.warnings),
        "sp": report.to_dict(ds.ground),
    }
    lines = [f"warning: {w}" for w in ds.warnings]
    lines.extend(_sp_text(report, ds.ground))
    return _emit(args, payload, lines)


def _cmd_elicit(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    rep = build_analysis(ds, workers=args.workers)
    payload = {
        "n": ds.ground.n,
        "warnings": list(ds.warnings),
        "sp": rep.sp_report.sp,
        "elicited_orders": [o.label_list(ds.ground) for o in rep.elicited_orders],
        "elicited_order_count": rep.elicited_order_count,
        "partial_order": (
            None
            if rep.partial_order_pairs is None
            else [[ds.ground.label(a), ds.ground.label(b)] for a, b in rep.partial_order_pairs]
        ),
    }
    lines = [f"warning: {w}" for w in ds.warnings]
    lines.append(f"sp: {rep.sp_report.sp}")
    if rep.elicited_orders:
        lines.append(f"elicited orders (total {rep.elicited_order_count}):")
        lines.extend(f"  {_order_text(o.label_list(ds.ground))}" for o in rep.elicited_orders)
    else:
        lines.append("elicited orders: none (choice is rationalizable)")
    if rep.partial_order_pairs is not None:
        pairs = ", ".join(
            f"{ds.ground.label(a)} > {ds.ground.label(b)}" for a, b in rep.partial_order_pairs
        )
        lines.append(f"partial order: {pairs}")
    return _emit(args, payload, lines)


def _cmd_distort(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    ground, order = _parse_order_spec(args.order, parser)
    if not 0 <= args.index <= ground.n - 1:
        parser.error(f"--index must lie in 0..{ground.n - 1}")
    result = harmful_distortion(order, args.index)
    payload = {
        "order": order.label_list(ground),
        "index": args.index,
        "distorted": result.label_list(ground),
    }
    return _emit(args, payload, [",".join(result.label_list(ground))])


def _cmd_census(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if not 2 <= args.n <= MAX_EXACT_CENSUS_N:
        parser.error(f"--n must lie in 2..{MAX_EXACT_CENSUS_N} for the exact census")
    report = enumerate_census(args.n, workers=args.workers)
    return _emit(args, report.to_dict(), _census_text(report))


def _cmd_sample_census(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.n < 2:
        parser.error("--n must be at least 2")
    if args.samples < 1:
        parser.error("--samples must be at least 1")
    report = sample_census(args.n, args.samples, seed=args.seed, workers=args.workers)
    return _emit(args, report.to_dict(), _census_text(report))


def _cmd_generate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    ground, order = _parse_order_spec(args.order, parser)
    policy = _parse_policy_spec(args.policy, ground, parser)
    choice = generate_harmful(order, policy, seed=args.seed)
    return _emit(args, _dataset_payload(ground, choice), _dataset_text(ground, choice))


def _cmd_construct_inconsistent(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.k < 2:
        parser.error("--k must be at least 2")
    ground = inconsistent_ground_set(args.k)
    choice = construct_inconsistent(args.k)
    return _emit(args, _dataset_payload(ground, choice), _dataset_text(ground, choice))


def _parse_order_spec(
    spec: str, parser: argparse.ArgumentParser
) -> tuple[GroundSet, LinearOrder]:
    labels = [s.strip() for s in spec.split(",")]
    if not all(labels) or len(set(labels)) != len(labels):
        parser.error("--order must be a comma-separated list of distinct labels (best first)")
    ground = GroundSet(tuple(labels))
    return ground, LinearOrder(tuple(range(ground.n)))


def _parse_policy_spec(
    spec: str, ground: GroundSet, parser: argparse.ArgumentParser
):
    kind, sep, rest = spec.partition(":")
    if kind == "fixed" and sep:
        try:
            return FixedIndexPolicy(int(rest))
        except ValueError:
            parser.error("fixed policy needs an integer index, e.g. fixed:1")
    if kind == "uniform" and sep:
        try:
            return UniformIndexPolicy(int(rest))
        except ValueError:
            parser.error("uniform policy needs an integer cap, e.g. uniform:2")
    if kind == "map" and sep:
        try:
            obj = json.loads(Path(rest).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid policy map JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise ParseError("policy map must be a JSON object of 'a,b,c' -> index")
        mapping = {}
        for key, value in obj.items():
            menu = _menu_from_labels(ground, [s.strip() for s in key.split(",")], f"policy key {key!r}")
            mapping[menu] = int(value)
        return ExplicitIndexPolicy.from_menus(mapping)
    parser.error("--policy must be fixed:<i>, uniform:<cap>, or map:<file.json>")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmchoice",
        description="Analyze finite choice datasets for self-punishing behavior.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "text"), default="text", help="output format"
    )
    pool = argparse.ArgumentParser(add_help=False)
    pool.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker threads (default: available cpus; {ENV_WORKERS} overrides)",
    )

    p = sub.add_parser("analyze", parents=[common, pool], help="full report for a dataset")
    p.add_argument("dataset", help="dataset file, or - for stdin")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("warp", parents=[common], help="check the weak axiom")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_warp)

    p = sub.add_parser("reversals", parents=[common], help="list every reversal")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_reversals)

    p = sub.add_parser("sp", parents=[common, pool], help="degree of self-punishment")
    p.add_argument("dataset")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--brute", action="store_true", help="exhaustive order search only")
    group.add_argument("--axiomatic", action="store_true", help="axiomatic classification only")
    p.set_defaults(func=_cmd_sp)

    p = sub.add_parser("elicit", parents=[common, pool], help="recover candidate preferences")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_elicit)

    p = sub.add_parser("distort", parents=[common], help="apply one distortion to an order")
    p.add_argument("--order", required=True, help="comma-separated labels, best first")
    p.add_argument("--index", required=True, type=int, help="how many top items to demote")
    p.set_defaults(func=_cmd_distort, needs_parser=True)

    p = sub.add_parser("census", parents=[common, pool], help="exact census of choice space")
    p.add_argument("--n", required=True, type=int, help="ground-set size (2..4)")
    p.set_defaults(func=_cmd_census, needs_parser=True)

    p = sub.add_parser(
        "sample-census", parents=[common, pool], help="sampled census of choice space"
    )
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--samples", required=True, type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_sample_census, needs_parser=True)

    p = sub.add_parser("generate", parents=[common], help="simulate a self-punishing chooser")
    p.add_argument("--order", required=True, help="comma-separated labels, best first")
    p.add_argument("--policy", required=True, help="fixed:<i> | uniform:<cap> | map:<file.json>")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_generate, needs_parser=True)

    p = sub.add_parser(
        "construct-inconsistent",
        parents=[common],
        help="explicit choice whose reversals touch every pair",
    )
    p.add_argument("--k", required=True, type=int, help="half the ground-set size (>= 2)")
    p.set_defaults(func=_cmd_construct_inconsistent, needs_parser=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "needs_parser", False):
            return args.func(args, parser)
        return args.func(args)
    except (DatasetError, HarmchoiceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
