"""The nine acceptance criteria, each with its own time limit.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary (and when this file is run directly).
"""

import time

import pytest

from splitoct.fields import FieldSpec
from splitoct.octonion import table_discrepancies
from splitoct.patho import PathoMap
from splitoct.ratfunc2 import rf_parse
from splitoct.solver import AlgebraHandle, solve
from splitoct.suites import (
    alternative_suite,
    basis_pattern_suite,
    hua_ratfunc_suite,
    hua_suite,
    make_rng,
    norm_suite,
    patho_suite,
    square_law_suite,
    witness_suite,
)

GF2, GF3, GF5, GF7, GF4, GF8 = (FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(7), FieldSpec(2, 2),
                                FieldSpec(2, 3))
AXIOM_FIELDS = [GF2, GF3, GF5, GF7, GF4]
SEED = 1

RESULTS: dict[tuple[int, int], str] = {}


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def record(number: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = "", sub: int = 0) -> None:
    within = elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    RESULTS[number, sub] = f"[{verdict}] criterion {number}: {title} ({elapsed:.2f}s / limit {limit:g}s){detail}"
    assert ok, RESULTS[number, sub]
    assert within, RESULTS[number, sub]


def test_1_alternative_and_flexible_laws():
    with Timer() as t:
        results = [basis_pattern_suite(F) for F in (GF2, GF3)]
        results += [alternative_suite(F, make_rng(SEED, 10 + i), 10_000) for i, F in enumerate(AXIOM_FIELDS)]
    checked = sum(r["checked"] for r in results)
    ok = all(r["passed"] for r in results) and all(r["exhaustive"] for r in results[:2])
    record(1, "alternative + flexible laws", ok, t.elapsed, 10, f", {checked} cases")


def test_2_norm_and_square_law():
    with Timer() as t:
        results = []
        for i, F in enumerate(AXIOM_FIELDS):
            results.append(norm_suite(F, make_rng(SEED, 20 + i), 10_000, exhaustive=False))
            results.append(square_law_suite(F, make_rng(SEED, 30 + i), 10_000, exhaustive=False))
    ok = all(r["passed"] and r["checked"] >= 10_000 for r in results)
    record(2, "norm multiplicativity + square law", ok, t.elapsed, 5)


def test_3_hua_identity():
    with Timer() as t:
        finite = [hua_suite(F, make_rng(SEED, 40 + i), 1000) for i, F in enumerate((GF3, GF5, GF7))]
        z2t = hua_ratfunc_suite(make_rng(SEED, 50), 100)
    ok = all(r["passed"] and r["checked"] >= 1000 for r in finite) and z2t["passed"] and z2t["checked"] >= 100
    rates = ", ".join(f"{F}: {r['inapplicable_rate']:.3f}" for F, r in zip(("gf:3", "gf:5", "gf:7"), finite))
    record(3, "Hua's identity", ok, t.elapsed, 30,
           f", inapplicable rate {rates}, z2t: {z2t['inapplicable_rate']:.3f}")


@pytest.mark.parametrize("field,expected,limit", [(GF2, 8, 10), (GF3, 8, 10), (GF4, 16, 10), (GF5, 8, 60)],
                         ids=["gf2", "gf3", "gf4", "gf5"])
def test_4_octonion_pair_solutions(field, expected, limit):
    with Timer() as t:
        rep = solve(AlgebraHandle("octonion", field), "pair")
    ok = rep.kernel_dim == expected and rep.verdict and all(i.is_right_mul_pair for i in rep.interpretations)
    sub = {GF2: 0, GF3: 1, GF4: 2, GF5: 3}[field]
    record(4, f"octonion pair solutions over {field.literal()}, kernel_dim {rep.kernel_dim}",
           ok, t.elapsed, limit, sub=sub)


@pytest.mark.parametrize("field,expected", [(GF2, 1), (GF4, 2), (GF8, 3)], ids=["gf2", "gf4", "gf8"])
def test_5_char2_field_solutions(field, expected):
    with Timer() as t:
        rep = solve(AlgebraHandle("field", field), "pair")
    sub = {GF2: 0, GF4: 1, GF8: 2}[field]
    record(5, f"field pair solutions over {field.literal()}, kernel_dim {rep.kernel_dim}",
           rep.kernel_dim == expected and rep.verdict, t.elapsed, 1, sub=sub)


def test_6_f_equals_g():
    with Timer() as t:
        reps = {F: solve(AlgebraHandle("octonion", F), "f_eq_g") for F in (GF3, GF5, GF2)}
    dims = {F.literal(): r.kernel_dim for F, r in reps.items()}
    ok = dims == {"gf:3": 0, "gf:5": 0, "gf:2": 8} and all(r.verdict for r in reps.values())
    record(6, f"f = g solutions {dims}", ok, t.elapsed, 60)


def test_7_z2t_family():
    params = [("1", "t"), ("1/(t+1)", "t^3"), ("t", "1")]
    with Timer() as t:
        results = []
        for n, (A, B) in enumerate(params):
            m = PathoMap(rf_parse(A), rf_parse(B))
            suites = patho_suite(m, make_rng(SEED, 70 + n), additive=10_000, identity=10_000, welldef=1_000,
                                 square=1_000)
            results.append((m, suites))
        witness = patho_suite(PathoMap(rf_parse("1"), rf_parse("t^2")), make_rng(SEED, 79), 1, 1, 1, 1)[-1]
    ok = all(s["passed"] for _, suites in results for s in suites)
    # (1, t^2) has B != tA, as do (1/(t+1), t^3) and (t, 1); (1, t) is t-linear
    fires = [suites[-1]["fires"] for _, suites in results] + [witness["fires"]]
    ok = ok and fires == [False, True, True, True]
    record(7, "Z2(t) family: additivity, identity, well-definedness, anchors, witness", ok, t.elapsed, 30)


def test_8_proof_step_witnesses():
    with Timer() as t:
        results = [witness_suite(F) for F in (GF5, GF4)]
    record(8, "proof-step T/N witnesses over gf:5 and gf:2^2", all(r["passed"] for r in results), t.elapsed, 1)


def test_9_table_cross_validation():
    with Timer() as t:
        bad = table_discrepancies()
    record(9, "table regenerated from rules", not bad, t.elapsed, 1, f", {len(bad)} discrepancies")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
