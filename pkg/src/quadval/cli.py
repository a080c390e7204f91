"""Command line interface.

Subcommands:

    classify   case, boundedness, period or branch count
    table      full period table of a bounded sequence
    tree       the valuation tree, as ASCII art, DOT, or JSON
    seq        brute-force values nu2(f(n)) over a window
    verify     cross-check closed forms and trees against brute force
    batch      classify every polynomial listed in a file
    ops        canonical form and the operator chain that rebuilds f

Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 operation
outside its mathematical domain, 4 batch finished with error records.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arith import INFINITE, Valuation, nu2
from .classify import Case, Classification, classify, constant_valuation
from .closed_form import max_valuation, period_table
from .operators import canonical_residue_map, canonicalize_to_type_ell_1
from .oracle import empirical_period, valuation_sequence
from .poly import DomainError, QuadraticPoly
from .tree import (
    NodeStatus,
    TreeNode,
    ValuationTree,
    build_tree,
    infinite_branch_residues,
    nodes_by_level,
    walk,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_DOMAIN_ERROR = 3
EXIT_PARTIAL_FAILURE = 4


def _val_str(v: Valuation | None) -> str:
    return str(v)


def _val_json(v: Valuation) -> int | str:
    return "inf" if v is INFINITE else v


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _poly_from_args(args: argparse.Namespace) -> QuadraticPoly:
    return QuadraticPoly(args.a, args.b, args.c)


# ---------------------------------------------------------------- classify

def describe_classification(cls: Classification) -> str:
    tag = cls.case_tag
    parts = []
    if tag.is_constant:
        parts.append("constant")
        parts.append(f"case {tag.value}")
        parts.append(f"valuation {cls.even_offset}")
        parts.append("period 1")
    elif tag is Case.CASE3C_BOUNDED:
        assert cls.disc is not None
        parts.append("bounded")
        parts.append(f"case {tag.value}")
        parts.append(f"ℓ={cls.disc.ell}")
        parts.append(f"m={cls.disc.m}")
        parts.append(f"period {cls.period}")
    else:
        parts.append("unbounded")
        parts.append(f"case {tag.value}")
        n = cls.infinite_branches
        parts.append(f"{n} infinite branch" + ("es" if n != 1 else ""))
        if tag is Case.CASE3A_UNBOUNDED:
            parts.append("zero discriminant")
        elif tag is Case.CASE3B_UNBOUNDED:
            assert cls.disc is not None
            parts.append(f"ℓ={cls.disc.ell}")
            parts.append(f"Δ={cls.disc.delta}")
    if cls.even_offset and not tag.is_constant:
        parts.append(f"shared factor 2^{cls.even_offset}")
    return ", ".join(parts)


def classification_record(cls: Classification) -> dict:
    f = cls.poly
    disc = cls.disc
    rec: dict = {
        "a": f.a,
        "b": f.b,
        "c": f.c,
        "case": cls.case_tag.value,
        "bounded": cls.case_tag.is_bounded,
        "constant": cls.case_tag.is_constant,
        "even_offset": cls.even_offset,
        "discriminant": f.discriminant,
        "ell": disc.ell if disc is not None else None,
        "delta": disc.delta if disc is not None else None,
        "m": disc.m if disc is not None else None,
        "period": cls.period,
        "infinite_branches": cls.infinite_branches,
        "constant_valuation": constant_valuation(cls),
    }
    if cls.case_tag.is_bounded:
        rec["max_valuation"] = max_valuation(f, classification=cls)
    return rec


def cmd_classify(args: argparse.Namespace) -> int:
    f = _poly_from_args(args)
    cls = classify(f)
    if args.json:
        text = json.dumps(classification_record(cls), ensure_ascii=False, indent=2) + "\n"
    else:
        text = f"f(n) = {f}\n{describe_classification(cls)}\n"
    _emit(text, args.output)
    return EXIT_OK


# ------------------------------------------------------------------- table

def cmd_table(args: argparse.Namespace) -> int:
    f = _poly_from_args(args)
    cls = classify(f)
    table = period_table(f, classification=cls)
    if args.format == "json":
        payload = {
            "a": f.a,
            "b": f.b,
            "c": f.c,
            "ell": table.ell,
            "period": table.period,
            "even_offset": table.even_offset,
            "entries": list(table.entries),
        }
        text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    else:
        lines = ["residue,valuation"]
        lines.extend(f"{r},{v}" for r, v in enumerate(table.entries))
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# -------------------------------------------------------------------- tree

def _node_label(node: TreeNode) -> str:
    if node.level == 0:
        return "n"
    coef = 1 << node.level
    return f"{coef}q+{node.residue}" if node.residue else f"{coef}q"


def _node_mark(node: TreeNode) -> str:
    if node.status is NodeStatus.TERMINATING:
        return f"ν={node.valuation}"
    if node.status is NodeStatus.ROOT_NODE:
        return "ν=inf"
    if node.status is NodeStatus.DEPTH_CAPPED:
        return "…"
    return "*"


def render_tree_ascii(tree: ValuationTree) -> str:
    lines = []
    for node in walk(tree.root):
        lines.append(f"{'  ' * node.level}{_node_label(node)}  {_node_mark(node)}")
    return "\n".join(lines) + "\n"


def render_tree_dot(tree: ValuationTree) -> str:
    lines = ["digraph valuation_tree {", "  node [shape=circle];"]

    def nid(node: TreeNode) -> str:
        return f"n{node.level}_{node.residue}"

    for node in walk(tree.root):
        mark = _node_mark(node)
        label = f"{_node_label(node)}\\n{mark}"
        if node.status in (NodeStatus.TERMINATING, NodeStatus.ROOT_NODE):
            lines.append(f'  {nid(node)} [label="{label}", style=filled];')
        else:
            lines.append(f'  {nid(node)} [label="{label}"];')
        for child in node.children:
            lines.append(f'  {nid(node)} -> {nid(child)} [label="{_node_label(child)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _node_json(node: TreeNode) -> dict:
    out: dict = {
        "level": node.level,
        "residue": node.residue,
        "status": node.status.value,
    }
    if node.valuation is not None:
        out["valuation"] = _val_json(node.valuation)
    out["children"] = [_node_json(child) for child in node.children]
    return out


def cmd_tree(args: argparse.Namespace) -> int:
    f = _poly_from_args(args)
    if args.depth < 1:
        raise ValueError("depth must be at least 1")
    tree = build_tree(f, args.depth)
    if args.format == "dot":
        text = render_tree_dot(tree)
    elif args.format == "json":
        payload = {
            "a": f.a,
            "b": f.b,
            "c": f.c,
            "depth_cap": tree.depth_cap,
            "levels": tree.levels,
            "root": _node_json(tree.root),
        }
        text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    else:
        text = render_tree_ascii(tree)
    _emit(text, args.output)
    return EXIT_OK


# --------------------------------------------------------------------- seq

def cmd_seq(args: argparse.Namespace) -> int:
    f = _poly_from_args(args)
    if args.count < 1:
        raise ValueError("count must be at least 1")
    seq = valuation_sequence(f, args.start, args.count)
    if args.format == "json":
        rows = [
            {"n": seq.start + k, "value": f(seq.start + k), "valuation": _val_json(v)}
            for k, v in enumerate(seq.values)
        ]
        payload = {"a": f.a, "b": f.b, "c": f.c, "start": seq.start, "rows": rows}
        text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    else:
        lines = ["n,value,valuation"]
        lines.extend(
            f"{seq.start + k},{f(seq.start + k)},{_val_str(v)}" for k, v in enumerate(seq.values)
        )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# ------------------------------------------------------------------ verify

def _expected_live_count(cls: Classification, level: int) -> int:
    tag = cls.case_tag
    if tag in (Case.CASE2_UNBOUNDED, Case.CASE3A_UNBOUNDED):
        return 1
    if tag is Case.CASE3B_UNBOUNDED:
        assert cls.disc is not None and cls.disc.ell is not None
        return 1 if level <= cls.disc.ell else 2
    return 2  # case 4


def _flatten_complete_tree(tree: ValuationTree, period: int) -> list[int | None]:
    flat: list[int | None] = [None] * period
    for node in walk(tree.root):
        if node.status is not NodeStatus.TERMINATING:
            continue
        assert isinstance(node.valuation, int)
        for r in range(node.residue, period, 1 << node.level):
            flat[r] = node.valuation
    return flat


def cmd_verify(args: argparse.Namespace) -> int:
    f = _poly_from_args(args)
    cls = classify(f)
    lines = [f"f(n) = {f}", "classification: " + describe_classification(cls)]
    failures: list[str] = []

    if cls.case_tag.is_constant:
        horizon = args.horizon if args.horizon else 4096
        seq = valuation_sequence(f, 0, horizon)
        off = cls.even_offset
        bad = next((n for n, v in enumerate(seq.values) if v != off), None)
        if bad is None:
            lines.append(f"ok: valuation constant at {off} on [0, {horizon})")
        else:
            failures.append(f"valuation at n={bad} is {seq.values[bad]}, expected the constant {off}")
    elif cls.case_tag is Case.CASE3C_BOUNDED:
        assert cls.period is not None and cls.disc is not None and cls.disc.ell is not None
        period = cls.period
        horizon = args.horizon if args.horizon else 4 * period
        table = period_table(f, classification=cls)
        seq = valuation_sequence(f, 0, horizon)
        bad = next((n for n in range(horizon) if seq.values[n] != table.value_at(n)), None)
        if bad is None:
            lines.append(f"ok: closed form matches brute force on [0, {horizon})")
        else:
            failures.append(
                f"closed form gives {table.value_at(bad)} at n={bad}, brute force gives {seq.values[bad]}"
            )
        p = empirical_period(f, max(horizon, 4 * period, 4))
        if p == period:
            lines.append(f"ok: empirical minimal period {p}")
        else:
            failures.append(f"empirical period {p}, classification predicts {period}")
        ell = cls.disc.ell
        tree = build_tree(f, ell)
        if tree.levels != ell:
            failures.append(f"tree did not close exactly at level {ell}")
        else:
            flat = _flatten_complete_tree(tree, period)
            if flat == list(table.entries):
                lines.append(f"ok: tree closes at level {ell} and reproduces the period table")
            else:
                failures.append("tree leaves disagree with the period table")
        mx = max_valuation(f, classification=cls)
        if max(table.entries) == mx:
            lines.append(f"ok: maximum valuation {mx} is attained")
        else:
            failures.append(f"table maximum {max(table.entries)} differs from predicted {mx}")
    else:
        horizon = args.horizon if args.horizon else 4096
        depth = min(max(horizon.bit_length() - 1, 4), 20)
        tree = build_tree(f, depth)
        pinned = [nd for nd in walk(tree.root) if nd.status is NodeStatus.ROOT_NODE]
        if pinned:
            lines.append(
                f"note: integer root pins a branch from level {pinned[0].level}; live counts not checked"
            )
        else:
            by = nodes_by_level(tree)
            bad_level = None
            for level in range(1, depth + 1):
                live = [
                    nd
                    for nd in by.get(level, [])
                    if nd.status in (NodeStatus.NON_TERMINATING, NodeStatus.DEPTH_CAPPED)
                ]
                if len(live) != _expected_live_count(cls, level):
                    bad_level = (level, len(live))
                    break
            if bad_level is None:
                lines.append(f"ok: live branch counts match on levels 1..{depth}")
            else:
                failures.append(
                    f"level {bad_level[0]} has {bad_level[1]} live branches, "
                    f"expected {_expected_live_count(cls, bad_level[0])}"
                )
        residues = infinite_branch_residues(f, depth, classification=cls)
        shown = ", ".join(str(r) for r in residues)
        lines.append(f"infinite branch residues mod 2^{depth}: {shown}")
        if all(nu2(f(r)) >= depth for r in residues):
            lines.append(f"ok: nu2(f(r)) >= {depth} at every branch residue")
        else:
            failures.append("a branch residue fails its valuation lower bound")
        peak = max(valuation_sequence(f, 0, horizon).values)
        lines.append(f"observed peak valuation on [0, {horizon}): {peak}")

    lines.extend(f"FAIL: {msg}" for msg in failures)
    lines.append("result: " + ("FAIL" if failures else "PASS"))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


# ------------------------------------------------------------------- batch

def _parse_batch_text(text: str) -> list[tuple[object, tuple[int, int, int] | None, str | None]]:
    """Yield (position marker, coefficients or None, error or None)."""
    items: list[tuple[object, tuple[int, int, int] | None, str | None]] = []
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"input is not valid JSON: {exc}") from exc
        if not isinstance(data, list):
            raise ValueError("JSON input must be an array")
        for idx, entry in enumerate(data):
            if isinstance(entry, dict) and all(k in entry for k in ("a", "b", "c")):
                try:
                    coeffs = tuple(int(entry[k]) for k in ("a", "b", "c"))
                except (TypeError, ValueError):
                    items.append((idx, None, "coefficients must be integers"))
                    continue
                items.append((idx, coeffs, None))  # type: ignore[arg-type]
            elif isinstance(entry, list) and len(entry) == 3:
                try:
                    coeffs = tuple(int(x) for x in entry)
                except (TypeError, ValueError):
                    items.append((idx, None, "coefficients must be integers"))
                    continue
                items.append((idx, coeffs, None))  # type: ignore[arg-type]
            else:
                items.append((idx, None, "expected {a, b, c} or [a, b, c]"))
        return items
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [p.strip() for p in line.split(",")]
        try:
            if len(fields) != 3:
                raise ValueError
            coeffs = tuple(int(p) for p in fields)
        except ValueError:
            if lineno == 1 and any(ch.isalpha() for ch in line):
                continue  # header row
            items.append((lineno, None, f"expected three integers, got {line!r}"))
            continue
        items.append((lineno, coeffs, None))  # type: ignore[arg-type]
    return items


def cmd_batch(args: argparse.Namespace) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    out_lines = []
    had_error = False
    for marker, coeffs, err in _parse_batch_text(text):
        key = "index" if isinstance(marker, int) and text.lstrip().startswith("[") else "line"
        if err is not None:
            had_error = True
            out_lines.append(json.dumps({key: marker, "error": err}, ensure_ascii=False))
            continue
        assert coeffs is not None
        try:
            cls = classify(QuadraticPoly(*coeffs))
        except ValueError as exc:
            had_error = True
            record = {key: marker, "a": coeffs[0], "b": coeffs[1], "c": coeffs[2], "error": str(exc)}
            out_lines.append(json.dumps(record, ensure_ascii=False))
            continue
        out_lines.append(json.dumps(classification_record(cls), ensure_ascii=False))
    _emit("\n".join(out_lines) + "\n" if out_lines else "", args.output)
    return EXIT_PARTIAL_FAILURE if had_error else EXIT_OK


# --------------------------------------------------------------------- ops

def cmd_ops(args: argparse.Namespace) -> int:
    f = _poly_from_args(args)
    cls = classify(f)
    g, chain = canonicalize_to_type_ell_1(f, classification=cls)
    gtable = period_table(g)
    if args.json:
        payload: dict = {
            "a": f.a,
            "b": f.b,
            "c": f.c,
            "canonical": {"a": g.a, "b": g.b, "c": g.c},
            "chain": [{"kind": op.kind.value, "param": op.param} for op in chain],
        }
        if args.show_canonical:
            payload["residue_map"] = [
                {
                    "level": level,
                    "canonical_residue": t,
                    "residue": r,
                    "valuation": gtable.entries[t % gtable.period],
                }
                for level, t, r in canonical_residue_map(f, classification=cls)
            ]
        text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    else:
        lines = [
            f"f(n) = {f}",
            f"canonical: {g}",
            "chain: " + ", ".join(str(op) for op in chain),
        ]
        if args.show_canonical:
            lines.append("terminating nodes, canonical residue -> residue for f:")
            for level, t, r in canonical_residue_map(f, classification=cls):
                v = gtable.entries[t % gtable.period]
                lines.append(f"  level {level}: {t} -> {r}  (ν={v})")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# -------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadval",
        description="2-adic valuations of integer quadratics: classification, tables, trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    poly_args = argparse.ArgumentParser(add_help=False)
    poly_args.add_argument("-a", type=int, required=True, help="leading coefficient (nonzero)")
    poly_args.add_argument("-b", type=int, required=True, help="middle coefficient")
    poly_args.add_argument("-c", type=int, required=True, help="constant term")

    out_arg = argparse.ArgumentParser(add_help=False)
    out_arg.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")

    p = sub.add_parser("classify", parents=[poly_args, out_arg], help="classify the valuation sequence")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", parents=[poly_args, out_arg], help="period table of a bounded sequence")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("tree", parents=[poly_args, out_arg], help="valuation tree")
    p.add_argument("--depth", type=int, default=32, help="depth cap (default 32)")
    p.add_argument("--format", choices=("ascii", "dot", "json"), default="ascii")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("seq", parents=[poly_args, out_arg], help="brute-force valuation sequence")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--count", type=int, default=32)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", parents=[poly_args, out_arg], help="cross-check against brute force")
    p.add_argument("--horizon", type=int, default=None, help="window length (default depends on the case)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", parents=[out_arg], help="classify polynomials listed in a file")
    p.add_argument("--input", required=True, metavar="PATH", help="CSV lines a,b,c or a JSON array")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("ops", parents=[poly_args, out_arg], help="canonical form and operator chain")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--show-canonical", action="store_true", help="include the residue correspondence")
    p.set_defaults(func=cmd_ops)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def run() -> None:
    sys.exit(main())
