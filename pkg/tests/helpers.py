"""Shared fixtures-adjacent utilities for the test suite."""

from __future__ import annotations

import contextlib
import io
import math
import re
from random import Random

from quadval import Case, Classification, QuadraticPoly, classify
from quadval.cli import main as cli_main

# The four reference polynomials used throughout, with brute-force
# valuation rows frozen from independent computation.
F1 = QuadraticPoly(4, 13, -25)
F2 = QuadraticPoly(13, 12, -28)
F3 = QuadraticPoly(15, 1142, 25559)
F4 = QuadraticPoly(5, 106, 1125)

F1_VALS = (0, 3, 0, 1, 0, 2, 0, 1, 0, 5, 0, 1, 0, 2, 0, 1, 0, 3, 0, 1, 0, 2)
F2_VALS = (2, 0, 4, 0, 2, 0, 9, 0, 2, 0, 4, 0, 2, 0, 7, 0, 2, 0, 4, 0)
F3_VALS = (0, 2, 0, 6, 0, 2, 0, 4, 0, 2, 0, 10, 0, 2, 0, 4)
F4_VALS = (0, 2, 0, 4, 0, 2, 0, 6, 0, 2, 0, 4, 0, 2, 0, 8, 0, 2, 0, 4)
F4_TABLE = (0, 2, 0, 4, 0, 2, 0, 6, 0, 2, 0, 4, 0, 2, 0, 8,
            0, 2, 0, 4, 0, 2, 0, 6, 0, 2, 0, 4, 0, 2, 0, 10)


def run_cli(argv: list[str]) -> tuple[int, str, str]:
    """Invoke the CLI in process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = cli_main(argv)
        except SystemExit as exc:  # argparse parse failures
            code = exc.code if isinstance(exc.code, int) else 2
    return code, out.getvalue(), err.getvalue()


def random_poly(rng: Random, bound: int = 10**4) -> QuadraticPoly:
    a = 0
    while a == 0:
        a = rng.randint(-bound, bound)
    return QuadraticPoly(a, rng.randint(-bound, bound), rng.randint(-bound, bound))


def sample_with(
    rng: Random,
    keep,
    count: int,
    bound: int = 10**4,
    max_tries: int = 2_000_000,
) -> list[tuple[QuadraticPoly, Classification]]:
    """Rejection-sample polynomials whose classification satisfies keep."""
    out: list[tuple[QuadraticPoly, Classification]] = []
    for _ in range(max_tries):
        if len(out) == count:
            return out
        f = random_poly(rng, bound)
        cls = classify(f)
        if keep(f, cls):
            out.append((f, cls))
    raise AssertionError(f"could not draw {count} samples in {max_tries} tries")


def has_integer_root(f: QuadraticPoly) -> bool:
    d = f.discriminant
    if d < 0:
        return False
    r = math.isqrt(d)
    if r * r != d:
        return False
    return any((-f.b + s) % (2 * f.a) == 0 for s in (r, -r))


def double_root_outside_Z(rng: Random) -> QuadraticPoly:
    """A zero-discriminant polynomial (s*n + u)**2 whose double root
    -u/s is a 2-adic integer but not an ordinary one."""
    while True:
        s = 2 * rng.randint(1, 60) + 1
        u = rng.randint(-500, 500)
        if u % s:
            f = QuadraticPoly(s * s, 2 * s * u, u * u)
            return f if rng.random() < 0.5 else QuadraticPoly(-f.a, -f.b, -f.c)


def make_case2(rng: Random) -> QuadraticPoly:
    while True:
        a = 2 * rng.randint(-5000, 5000)
        if a == 0:
            continue
        f = QuadraticPoly(a, 2 * rng.randint(-2500, 2500) + 1, rng.randint(-10**4, 10**4))
        if not has_integer_root(f):
            return f


def make_case4(rng: Random) -> QuadraticPoly:
    while True:
        f = QuadraticPoly(
            2 * rng.randint(-2500, 2500) + 1,
            2 * rng.randint(-2500, 2500) + 1,
            2 * rng.randint(-5000, 5000),
        )
        if not has_integer_root(f):
            return f


def make_case3b(rng: Random) -> QuadraticPoly:
    while True:
        f = random_poly(rng)
        cls = classify(f)
        if cls.case_tag is Case.CASE3B_UNBOUNDED and not has_integer_root(cls.reduced):
            return f


DOT_NODE = re.compile(r'^\s*(\w+)\s*\[(.*)\];$')
DOT_EDGE = re.compile(r'^\s*(\w+)\s*->\s*(\w+)')


def parse_dot(text: str) -> tuple[dict[str, str], list[tuple[str, str]]]:
    """Tiny DOT reader: node id -> attribute text, plus edge pairs."""
    lines = text.strip().splitlines()
    assert lines[0].startswith("digraph") and lines[-1] == "}"
    nodes: dict[str, str] = {}
    edges: list[tuple[str, str]] = []
    for line in lines[1:-1]:
        if "->" in line:
            match = DOT_EDGE.match(line)
            assert match, line
            edges.append((match.group(1), match.group(2)))
        else:
            match = DOT_NODE.match(line)
            assert match, line
            if match.group(1) != "node":  # skip the defaults line
                nodes[match.group(1)] = match.group(2)
    return nodes, edges
