"""CNF formulas, DIMACS CNF I/O, an exact solver, and restriction resilience.

Variables are positive integers 1..num_vars; a literal is a signed variable.
A formula survives a restriction when it stays satisfiable after the
restricted variables are pinned to their values.  It is r-resilient when it
survives every restriction of exactly r variables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .graphs import ParseError

Clause = tuple[int, ...]
Assignment = dict[int, bool]

SATURATED = "saturated"


@dataclass(frozen=True)
class CnfFormula:
    """An immutable CNF formula: clause tuples over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for num_vars={self.num_vars}")

    @classmethod
    def make(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> CnfFormula:
        """Public constructor; rejects empty clauses (they only arise by restriction)."""
        tupled = tuple(tuple(cl) for cl in clauses)
        if any(len(cl) == 0 for cl in tupled):
            raise ValueError("empty clause not allowed at construction")
        return cls(num_vars, tupled)

    @cached_property
    def width(self) -> int:
        """Length of the longest clause (0 for a formula with no clauses)."""
        return max((len(cl) for cl in self.clauses), default=0)

    @property
    def has_empty_clause(self) -> bool:
        return any(len(cl) == 0 for cl in self.clauses)

    def variables(self) -> tuple[int, ...]:
        """Variables that occur in at least one clause, ascending."""
        seen = {abs(lit) for cl in self.clauses for lit in cl}
        return tuple(sorted(seen))


@dataclass(frozen=True)
class Restriction:
    """A partial assignment: (variable, value) pairs sorted by variable."""

    fixes: tuple[tuple[int, bool], ...]

    def __post_init__(self) -> None:
        seen = set()
        for var, _ in self.fixes:
            if var < 1:
                raise ValueError(f"variable {var} must be positive")
            if var in seen:
                raise ValueError(f"variable {var} fixed twice")
            seen.add(var)
        if list(self.fixes) != sorted(self.fixes, key=lambda f: f[0]):
            raise ValueError("fixes must be sorted by variable")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, bool]]) -> Restriction:
        return cls(tuple(sorted(((v, bool(b)) for v, b in pairs), key=lambda f: f[0])))

    def as_dict(self) -> Assignment:
        return dict(self.fixes)

    def __len__(self) -> int:
        return len(self.fixes)


@dataclass(frozen=True)
class SatResilienceVerdict:
    resilient: bool
    witness: Restriction | None
    r: int
    restrictions_checked: int


def parse_cnf(text: str) -> CnfFormula:
    """Read DIMACS CNF: "p cnf n m" header, then one 0-terminated clause per line.

    Comment lines start with "c".  Literal order inside clauses is preserved.
    """
    num_vars = None
    expected = None
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if num_vars is not None:
                raise ParseError(f"line {lineno}: duplicate header {line!r}")
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, expected = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or expected < 0:
                raise ParseError(f"line {lineno}: negative counts {line!r}")
            continue
        if num_vars is None:
            raise ParseError(f"line {lineno}: clause before header {line!r}")
        try:
            lits = [int(tok) for tok in fields]
        except ValueError:
            raise ParseError(f"line {lineno}: malformed clause {line!r}") from None
        if not lits or lits[-1] != 0:
            raise ParseError(f"line {lineno}: missing terminating 0 {line!r}")
        body = lits[:-1]
        if 0 in body:
            raise ParseError(f"line {lineno}: stray 0 inside clause {line!r}")
        if not body:
            raise ParseError(f"line {lineno}: empty clause {line!r}")
        for lit in body:
            if abs(lit) > num_vars:
                raise ParseError(f"line {lineno}: variable out of range {line!r}")
        clauses.append(tuple(body))
    if num_vars is None:
        raise ParseError("missing 'p cnf' header")
    if expected is not None and expected != len(clauses):
        raise ParseError(f"header announced {expected} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def serialize_cnf(phi: CnfFormula) -> str:
    """Write DIMACS CNF, literal order preserved; parse(serialize(phi)) == phi."""
    if phi.has_empty_clause:
        raise ValueError("cannot serialize a formula containing an empty clause")
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines.extend(" ".join(map(str, cl)) + " 0" for cl in phi.clauses)
    return "\n".join(lines) + "\n"


def _search(clauses: tuple[Clause, ...], num_vars: int, assumed: Mapping[int, bool]) -> list[bool | None] | None:
    """Branch on the lowest unassigned variable, false before true, with
    unit propagation run to fixpoint between decisions.  Propagation uses
    two watched literals per clause so only clauses watching a newly
    falsified literal are visited.  Returns the assignment array
    (1-indexed) or None."""
    n = num_vars
    assign: list[bool | None] = [None] * (n + 1)

    def value(lit: int) -> bool | None:
        v = assign[abs(lit)]
        if v is None:
            return None
        return v if lit > 0 else not v

    # watches[lit + n] holds the indices of clauses currently watching lit;
    # wslots[j] holds the two watched positions inside clause j
    watches: list[list[int]] = [[] for _ in range(2 * n + 1)]
    wslots: list[list[int]] = []
    trail: list[int] = []
    pending: list[int] = []

    def assign_true(lit: int) -> bool:
        cur = value(lit)
        if cur is not None:
            return cur
        assign[abs(lit)] = lit > 0
        trail.append(abs(lit))
        pending.append(lit)
        return True

    for j, cl in enumerate(clauses):
        if not cl:
            return None
        wslots.append([0, min(1, len(cl) - 1)])
        watches[cl[0] + n].append(j)
        if len(cl) > 1:
            watches[cl[1] + n].append(j)
    for var, val in assumed.items():
        if not assign_true(var if val else -var):
            return None
    for cl in clauses:
        if len(cl) == 1 and not assign_true(cl[0]):
            return None

    def propagate() -> bool:
        while pending:
            falsified = -pending.pop()
            occ = watches[falsified + n]
            i = 0
            while i < len(occ):
                j = occ[i]
                cl = clauses[j]
                slots = wslots[j]
                side = 0 if cl[slots[0]] == falsified else 1
                other = cl[slots[1 - side]]
                if value(other) is True:
                    i += 1
                    continue
                for p, lit in enumerate(cl):
                    if p != slots[0] and p != slots[1] and value(lit) is not False:
                        slots[side] = p
                        watches[lit + n].append(j)
                        occ[i] = occ[-1]
                        occ.pop()
                        break
                else:
                    if other == falsified or value(other) is False:
                        return False
                    assign[abs(other)] = other > 0
                    trail.append(abs(other))
                    pending.append(other)
                    i += 1
        return True

    if not propagate():
        return None

    # iterative DPLL; (variable, trail length at decision, already flipped)
    decisions: list[tuple[int, int, bool]] = []
    cursor = 1
    while True:
        while cursor <= n and assign[cursor] is not None:
            cursor += 1
        if cursor > n:
            return assign
        var = cursor
        decisions.append((var, len(trail), False))
        ok = assign_true(-var) and propagate()
        while not ok:
            pending.clear()
            if not decisions:
                return None
            var, mark, flipped = decisions.pop()
            while len(trail) > mark:
                assign[trail.pop()] = None
            if flipped:
                continue
            decisions.append((var, mark, True))
            cursor = var + 1
            ok = assign_true(var) and propagate()


def is_satisfiable(phi: CnfFormula) -> Assignment | None:
    """Return a total satisfying assignment (unassigned variables default to
    False), or None when the formula is unsatisfiable."""
    if phi.has_empty_clause:
        return None
    got = _search(phi.clauses, phi.num_vars, {})
    if got is None:
        return None
    return {v: bool(got[v]) for v in range(1, phi.num_vars + 1)}


def _is_tautology(clause: Clause) -> bool:
    lits = set(clause)
    return any(-lit in lits for lit in lits)


def restrict(phi: CnfFormula, rho: Restriction) -> CnfFormula:
    """Pin the restricted variables: satisfied clauses (and tautologies) are
    dropped, falsified literals are removed, and a clause that loses all its
    literals stays as the empty clause marking unsatisfiability.  num_vars is
    unchanged."""
    values = rho.as_dict()
    for var in values:
        if var > phi.num_vars:
            raise ValueError(f"restricted variable {var} out of range for num_vars={phi.num_vars}")
    out: list[Clause] = []
    for cl in phi.clauses:
        if _is_tautology(cl):
            continue
        kept = []
        satisfied = False
        for lit in cl:
            val = values.get(abs(lit))
            if val is None:
                kept.append(lit)
            elif (lit > 0) == val:
                satisfied = True
                break
        if not satisfied:
            out.append(tuple(kept))
    return CnfFormula(phi.num_vars, tuple(out))


def _solvable_under(phi: CnfFormula, assumed: Mapping[int, bool]) -> bool:
    return _search(phi.clauses, phi.num_vars, assumed) is not None


def is_r_resilient(phi: CnfFormula, r: int) -> SatResilienceVerdict:
    """Check every restriction of exactly min(r, num_vars) variables.

    Restrictions are enumerated in canonical order: variable subsets
    lexicographically, then value vectors in ascending binary order (False
    before True, first variable most significant).  The witness, if any, is
    the first failing restriction in that order.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    size = min(r, phi.num_vars)
    checked = 0
    for subset in itertools.combinations(range(1, phi.num_vars + 1), size):
        for values in itertools.product((False, True), repeat=size):
            checked += 1
            if not _solvable_under(phi, dict(zip(subset, values))):
                witness = Restriction.from_pairs(zip(subset, values))
                return SatResilienceVerdict(False, witness, size, checked)
    return SatResilienceVerdict(True, None, size, checked)


def max_sat_resilience(phi: CnfFormula) -> int | str:
    """Largest r for which phi is r-resilient.

    Returns SATURATED when phi survives fixing all num_vars variables (only
    possible when every clause is a tautology); raises for unsatisfiable
    input, which is not even 0-resilient.
    """
    if is_satisfiable(phi) is None:
        raise ValueError("formula is not even 0-resilient")
    for r in range(1, phi.num_vars + 1):
        if not is_r_resilient(phi, r).resilient:
            return r - 1
    return SATURATED
