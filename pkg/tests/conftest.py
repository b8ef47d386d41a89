"""Seeded instance generators and brute-force oracles shared by the suite.

The oracles deliberately use a different algorithm family from the library
(vectorized truth/coloring tables with no pruning, no propagation, no
ordering heuristics) so agreement is meaningful evidence, not an echo.
"""
from __future__ import annotations

import itertools
import random

import numpy as np

from rescol.graphs import Graph, non_edges
from rescol.sat import CnfFormula


def random_graph(rng, max_n: int = 7, min_n: int = 1) -> Graph:
    n = rng.randint(min_n, max_n)
    density = rng.random()
    edges = frozenset(
        pair for pair in itertools.combinations(range(n), 2) if rng.random() < density
    )
    return Graph(n, edges)


def random_cnf(
    rng,
    max_vars: int = 6,
    max_clauses: int = 4,
    max_width: int = 3,
    exact_width: bool = False,
) -> CnfFormula:
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        w = max_width if exact_width else rng.randint(1, max_width)
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(w)))
    return CnfFormula(n, tuple(clauses))


def uniform_six_cnf(rng: random.Random, clauses: int) -> CnfFormula:
    """Clauses over exactly six distinct variables each, random polarity."""
    made = []
    for _ in range(clauses):
        order = rng.sample(range(1, 7), 6)
        made.append(tuple(rng.choice((1, -1)) * v for v in order))
    return CnfFormula.make(6, made)


def sat_table(phi: CnfFormula) -> np.ndarray:
    """Truth table over all 2^num_vars assignments; bit v-1 of the index is
    the value of variable v."""
    n = phi.num_vars
    idx = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(1 << n, dtype=bool)
    for clause in phi.clauses:
        satisfied = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            bit = (idx >> (abs(lit) - 1)) & 1
            satisfied |= bit == 1 if lit > 0 else bit == 0
        ok &= satisfied
    return ok


def brute_satisfiable(phi: CnfFormula) -> bool:
    return bool(sat_table(phi).any())


def oracle_sat_first_failure(phi: CnfFormula, r: int):
    """First restriction (canonical order) whose application kills phi, or
    None; subsets of all variables ascending, then value vectors in ascending
    binary with the first variable most significant."""
    n = phi.num_vars
    table = sat_table(phi)
    idx = np.arange(1 << n, dtype=np.uint32)
    size = min(r, n)
    for subset in itertools.combinations(range(1, n + 1), size):
        for values in itertools.product((False, True), repeat=size):
            consistent = np.ones(1 << n, dtype=bool)
            for var, value in zip(subset, values):
                bit = (idx >> (var - 1)) & 1
                consistent &= bit == 1 if value else bit == 0
            if not (table & consistent).any():
                return tuple(zip(subset, values))
    return None


def coloring_table(g: Graph, k: int):
    """Propriety vector over all k^n colorings (vertex v is digit v of the
    base-k index), plus per-vertex digit arrays."""
    total = k**g.n
    idx = np.arange(total, dtype=np.int64)
    digits = []
    div = 1
    for _ in range(g.n):
        digits.append((idx // div) % k)
        div *= k
    ok = np.ones(total, dtype=bool)
    for u, v in g.edges:
        ok &= digits[u] != digits[v]
    return ok, digits


def brute_colorable(g: Graph, k: int) -> bool:
    ok, _ = coloring_table(g, k)
    return bool(ok.any())


def oracle_graph_first_failure(g: Graph, r: int, k: int):
    """First lexicographic non-edge subset whose addition kills
    k-colorability, or None, with the count of subsets examined."""
    ok, digits = coloring_table(g, k)
    candidates = non_edges(g)
    size = min(r, len(candidates))
    differ = [digits[u] != digits[v] for u, v in candidates]
    checked = 0
    for picks in itertools.combinations(range(len(candidates)), size):
        checked += 1
        cur = ok
        for i in picks:
            cur = cur & differ[i]
        if not cur.any():
            return tuple(candidates[i] for i in picks), checked
    return None, checked
