"""Instance file format, canonical writer, and seeded instance generators.

The format is DIMACS-flavored and line oriented:

    c optional comment
    p bcp <n> <m>
    v <id> <weight>        weight is a positive integer or fraction p/q
    e <u> <v>

Fractional weights are cleared to integers at parse time by multiplying all
weights with the least common multiple of the denominators, so solvers only
ever see positive integers.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .errors import ParseError
from .graph import WeightedGraph

FAMILIES = ("random-tree", "tree-plus-edges", "spider", "grid", "star")


def _parse_weight(token: str, line_no: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {token!r}", line_no) from None
    if value <= 0:
        raise ParseError(f"weight must be positive, got {token}", line_no)
    return value


def parse_instance(text: str) -> WeightedGraph:
    """Parse and validate an instance; raises ParseError with a line number
    on malformed input."""
    n = m = None
    weights: dict[int, Fraction] = {}
    edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "p":
            if n is not None:
                raise ParseError("duplicate problem line", line_no)
            if len(fields) != 4 or fields[1] != "bcp":
                raise ParseError("problem line must be 'p bcp <n> <m>'", line_no)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError("problem line counts must be integers", line_no) from None
        elif kind == "v":
            if n is None:
                raise ParseError("vertex line before problem line", line_no)
            if len(fields) != 3:
                raise ParseError("vertex line must be 'v <id> <weight>'", line_no)
            try:
                vid = int(fields[1])
            except ValueError:
                raise ParseError(f"bad vertex id {fields[1]!r}", line_no) from None
            if not 0 <= vid < n:
                raise ParseError(f"vertex id {vid} out of range 0..{n - 1}", line_no)
            if vid in weights:
                raise ParseError(f"duplicate weight for vertex {vid}", line_no)
            weights[vid] = _parse_weight(fields[2], line_no)
        elif kind == "e":
            if n is None:
                raise ParseError("edge line before problem line", line_no)
            if len(fields) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", line_no)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", line_no) from None
            if u == v:
                raise ParseError(f"loop at vertex {u}", line_no)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u},{v}) out of range", line_no)
            key = (min(u, v), max(u, v))
            if key in edges:
                raise ParseError(f"duplicate edge ({key[0]},{key[1]})", line_no)
            edges.append(key)
        else:
            raise ParseError(f"unknown line kind {kind!r}", line_no)
    if n is None:
        raise ParseError("missing problem line")
    if m is not None and m != len(edges):
        raise ParseError(f"problem line promises {m} edges, file has {len(edges)}")
    missing = [v for v in range(n) if v not in weights]
    if missing:
        raise ParseError(f"missing weights for vertices {missing}")

    lcm = 1
    for w in weights.values():
        lcm = lcm * w.denominator // math.gcd(lcm, w.denominator)
    cleared = [int(weights[v] * lcm) for v in range(n)]
    try:
        return WeightedGraph.from_edges(n, edges, cleared)
    except Exception as exc:  # connectivity and friends
        raise ParseError(str(exc)) from exc


def write_instance(g: WeightedGraph) -> str:
    """Canonical text form: parse(write(g)) reproduces g exactly."""
    lines = [f"p bcp {g.n} {g.m}"]
    lines.extend(f"v {v} {g.weights[v]}" for v in range(g.n))
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _random_weights(rng: random.Random, n: int, lo: int, hi: int) -> list[int]:
    return [rng.randint(lo, hi) for _ in range(n)]


def generate(
    family: str, n: int, weight_range: tuple[int, int] = (1, 1), seed: int = 0
) -> WeightedGraph:
    """Seeded generator for the benchmark families; identical arguments give
    identical instances."""
    lo, hi = weight_range
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not (1 <= lo <= hi):
        raise ValueError(f"bad weight range {weight_range}")
    rng = random.Random((family, n, lo, hi, seed).__repr__())

    def random_tree() -> list[tuple[int, int]]:
        return [(rng.randrange(v), v) for v in range(1, n)]

    if family == "random-tree":
        edges = random_tree()
    elif family == "tree-plus-edges":
        edges = random_tree()
        present = {(min(u, v), max(u, v)) for u, v in edges}
        candidates = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if (u, v) not in present
        ]
        extra = min(len(candidates), max(1, n // 3))
        edges += rng.sample(candidates, extra)
    elif family == "spider":
        legs = min(3, n - 1)
        edges = []
        tips = [0] * legs
        for v in range(1, n):
            leg = (v - 1) % legs
            edges.append((tips[leg], v))
            tips[leg] = v
    elif family == "grid":
        rows = max(r for r in range(1, int(math.isqrt(n)) + 1) if n % r == 0)
        cols = n // rows
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
    else:  # star
        edges = [(0, v) for v in range(1, n)]

    return WeightedGraph.from_edges(n, edges, _random_weights(rng, n, lo, hi))
