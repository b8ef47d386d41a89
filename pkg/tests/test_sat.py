"""CNF model, DIMACS round-trips, satisfiability, restriction, resilience."""
import itertools
import random

import pytest

from conftest import brute_satisfiable, oracle_sat_first_failure, random_cnf
from rescol.graphs import ParseError
from rescol.reductions import blow_up
from rescol.sat import (
    SATURATED,
    CnfFormula,
    Restriction,
    is_r_resilient,
    is_satisfiable,
    max_sat_resilience,
    parse_cnf,
    restrict,
    serialize_cnf,
)


def test_make_and_invariants():
    phi = CnfFormula.make(3, [(1, -2), (3,)])
    assert phi.num_vars == 3
    assert phi.clauses == ((1, -2), (3,))
    assert phi.width == 2
    assert phi.variables() == (1, 2, 3)
    assert CnfFormula.make(2, []).width == 0
    assert CnfFormula.make(5, [(2,)]).variables() == (2,)


@pytest.mark.parametrize(
    "num_vars,clauses",
    [
        (1, [(2,)]),
        (1, [(-2,)]),
        (2, [(1, 0)]),
        (-1, []),
        (2, [()]),
    ],
)
def test_make_rejects_bad_input(num_vars, clauses):
    with pytest.raises(ValueError):
        CnfFormula.make(num_vars, clauses)


def test_restriction_validation():
    rho = Restriction.from_pairs([(3, True), (1, False)])
    assert rho.fixes == ((1, False), (3, True))
    assert rho.as_dict() == {1: False, 3: True}
    assert len(rho) == 2
    with pytest.raises(ValueError):
        Restriction(((0, True),))
    with pytest.raises(ValueError):
        Restriction(((1, True), (1, False)))
    with pytest.raises(ValueError):
        Restriction(((2, True), (1, False)))


def test_parse_simple():
    phi = parse_cnf("p cnf 2 1\n1 -2 0\n")
    assert phi == CnfFormula(2, ((1, -2),))


def test_parse_comments_and_blank_lines():
    text = "c a comment\n\np cnf 3 2\nc more\n1 2 0\n-3 0\n"
    phi = parse_cnf(text)
    assert phi == CnfFormula(3, ((1, 2), (-3,)))


def test_parse_preserves_literal_order():
    phi = parse_cnf("p cnf 3 1\n3 -1 2 0\n")
    assert phi.clauses == ((3, -1, 2),)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("p cnf 1 1\n2 0\n", "out of range"),
        ("p cnf 1 1\n-2 0\n", "out of range"),
        ("p cnf 2 1\n1 2\n", "missing terminating 0"),
        ("1 0\n", "before header"),
        ("p cnf 2 1\np cnf 2 1\n1 0\n", "duplicate header"),
        ("p edge 2 1\n1 0\n", "malformed header"),
        ("p cnf x 1\n1 0\n", "malformed header"),
        ("p cnf 2 2\n1 0\n", "announced 2 clauses"),
        ("p cnf 2 1\n1 z 0\n", "malformed clause"),
        ("p cnf 2 1\n1 0 2 0\n", "stray 0"),
        ("p cnf 2 1\n0\n", "empty clause"),
        ("", "missing 'p cnf' header"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_cnf(text)


def test_serialize_exact():
    phi = CnfFormula.make(2, [(1, -2)])
    assert serialize_cnf(phi) == "p cnf 2 1\n1 -2 0\n"


def test_serialize_rejects_empty_clause():
    broken = restrict(CnfFormula.make(1, [(1,)]), Restriction(((1, False),)))
    assert broken.has_empty_clause
    with pytest.raises(ValueError):
        serialize_cnf(broken)


def test_round_trip_random():
    rng = random.Random(20)
    for _ in range(100):
        phi = random_cnf(rng)
        assert parse_cnf(serialize_cnf(phi)) == phi


def test_round_trip_blow_up_output():
    phi = CnfFormula.make(3, [(1, 2, 3), (-1, -2, -3)])
    psi = blow_up(phi, 2)
    assert parse_cnf(serialize_cnf(psi)) == psi


def test_is_satisfiable_examples():
    assert is_satisfiable(CnfFormula.make(1, [(1,), (-1,)])) is None
    got = is_satisfiable(CnfFormula.make(2, [(1, 2)]))
    assert got is not None and (got[1] or got[2])
    psi = blow_up(CnfFormula.make(3, [(1, 2, 3), (-1, -2, -3)]), 2)
    assert is_satisfiable(psi) is not None


def test_satisfying_assignment_is_total_and_satisfies():
    rng = random.Random(21)
    for _ in range(200):
        phi = random_cnf(rng)
        got = is_satisfiable(phi)
        if got is None:
            assert not brute_satisfiable(phi)
            continue
        assert set(got) == set(range(1, phi.num_vars + 1))
        for cl in phi.clauses:
            assert any(got[abs(lit)] == (lit > 0) for lit in cl)


def test_restrict_examples():
    phi = CnfFormula.make(2, [(1, 2)])
    assert restrict(phi, Restriction(((1, True),))).clauses == ()
    assert restrict(phi, Restriction(((1, False),))).clauses == ((2,),)
    pinned = restrict(CnfFormula.make(1, [(1,)]), Restriction(((1, False),)))
    assert pinned.has_empty_clause
    assert is_satisfiable(pinned) is None


def test_restrict_keeps_num_vars():
    phi = CnfFormula.make(5, [(1, 2)])
    assert restrict(phi, Restriction(((1, True),))).num_vars == 5


def test_restrict_drops_tautologies():
    phi = CnfFormula(2, ((1, -1), (2,)))
    got = restrict(phi, Restriction(((2, False),)))
    assert got.clauses == ((),)
    got = restrict(phi, Restriction(((1, False),)))
    assert got.clauses == ((2,),)


def test_restrict_rejects_out_of_range():
    phi = CnfFormula.make(2, [(1, 2)])
    with pytest.raises(ValueError):
        restrict(phi, Restriction(((3, True),)))


def test_restrict_matches_semantics():
    """restrict(phi, rho) is satisfiable iff phi has a model extending rho."""
    rng = random.Random(22)
    for _ in range(200):
        phi = random_cnf(rng)
        if phi.num_vars == 0:
            continue
        size = rng.randint(1, phi.num_vars)
        subset = rng.sample(range(1, phi.num_vars + 1), size)
        rho = Restriction.from_pairs((v, rng.random() < 0.5) for v in subset)
        fixed = rho.as_dict()
        expected = any(
            all(any((dict(zip(range(1, phi.num_vars + 1), bits)) | fixed)[abs(lit)] == (lit > 0) for lit in cl) for cl in phi.clauses)
            for bits in itertools.product((False, True), repeat=phi.num_vars)
        )
        assert (is_satisfiable(restrict(phi, rho)) is not None) == expected


def test_resilient_blow_up_example():
    phi = blow_up(CnfFormula.make(3, [(1, 2, 3)]), 2)
    assert phi.clauses == ((1, 2, 3, 4, 5, 6),)
    verdict = is_r_resilient(phi, 1)
    assert verdict.resilient and verdict.witness is None
    assert verdict.restrictions_checked == 12


def test_single_positive_clause_witness():
    verdict = is_r_resilient(CnfFormula.make(1, [(1,)]), 1)
    assert not verdict.resilient
    assert verdict.witness == Restriction(((1, False),))
    assert verdict.restrictions_checked == 1


def test_witness_is_first_in_canonical_order():
    phi = CnfFormula.make(2, [(1,), (2,)])
    verdict = is_r_resilient(phi, 1)
    assert verdict.witness == Restriction(((1, False),))
    # (x2) alone fails on variable 2, after both values of variable 1 pass
    verdict = is_r_resilient(CnfFormula.make(2, [(2,)]), 1)
    assert verdict.witness == Restriction(((2, False),))
    assert verdict.restrictions_checked == 3


def test_r_capped_at_num_vars():
    phi = CnfFormula.make(2, [(1, 2)])
    verdict = is_r_resilient(phi, 5)
    assert verdict.r == 2 and not verdict.resilient
    with pytest.raises(ValueError):
        is_r_resilient(phi, -1)


def test_r_zero_is_satisfiability():
    rng = random.Random(23)
    for _ in range(100):
        phi = random_cnf(rng)
        assert is_r_resilient(phi, 0).resilient == brute_satisfiable(phi)


def test_resilience_monotone_in_r():
    rng = random.Random(24)
    for _ in range(60):
        phi = random_cnf(rng, max_vars=5)
        best = None
        for r in range(phi.num_vars + 1):
            ok = is_r_resilient(phi, r).resilient
            if best is None:
                best = ok
            if not best:
                assert not ok
            best = best and ok


def test_matches_oracle_on_random_formulas():
    rng = random.Random(25)
    for _ in range(150):
        phi = random_cnf(rng, max_vars=6, max_clauses=4)
        r = rng.randint(0, phi.num_vars)
        verdict = is_r_resilient(phi, r)
        expected = oracle_sat_first_failure(phi, r)
        if expected is None:
            assert verdict.resilient and verdict.witness is None
        else:
            assert not verdict.resilient
            assert verdict.witness.fixes == expected


def test_witness_restriction_breaks_formula():
    rng = random.Random(26)
    for _ in range(100):
        phi = random_cnf(rng, max_vars=5)
        r = rng.randint(0, phi.num_vars)
        verdict = is_r_resilient(phi, r)
        if verdict.witness is not None:
            assert len(verdict.witness) == verdict.r
            assert is_satisfiable(restrict(phi, verdict.witness)) is None


def test_max_sat_resilience_examples():
    assert max_sat_resilience(CnfFormula.make(2, [(1, 2)])) == 1
    assert max_sat_resilience(CnfFormula.make(1, [(1,)])) == 0
    phi = blow_up(CnfFormula.make(3, [(1, 2, 3), (-1, -2, -3)]), 2)
    assert max_sat_resilience(phi) >= 1


def test_max_sat_resilience_errors_on_unsat():
    with pytest.raises(ValueError, match="not even 0-resilient"):
        max_sat_resilience(CnfFormula.make(1, [(1,), (-1,)]))


def test_max_sat_resilience_saturated():
    assert max_sat_resilience(CnfFormula.make(1, [(1, -1)])) == SATURATED
    assert max_sat_resilience(CnfFormula.make(2, [])) == SATURATED


def test_clause_bound():
    """A non-tautological clause with c distinct variables caps resilience below c."""
    rng = random.Random(27)
    for _ in range(80):
        phi = random_cnf(rng, max_vars=4, max_clauses=3)
        if not brute_satisfiable(phi):
            continue
        got = max_sat_resilience(phi)
        bounds = [
            len({abs(lit) for lit in cl})
            for cl in phi.clauses
            if not any(-lit in cl for lit in cl)
        ]
        if bounds:
            assert got != SATURATED and got < min(bounds)
