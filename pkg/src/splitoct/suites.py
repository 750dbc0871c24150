"""Verification suites shared by the command line and the acceptance tests.

Every suite returns a plain dict with at least ``name``, ``passed``,
``checked`` and ``failures``; the first counterexample, if any, is attached as
literals.  All randomness comes from the generator passed in, so a fixed seed
gives identical reports.
"""

from __future__ import annotations

import numpy as np

from .batch import PrimeAlgebra
from .errors import InapplicableError
from .fields import FieldSpec
from .octonion import ORDER, Octonion, OctIndex, hua_check, moufang_check, oct_square_check
from .patho import (
    PathoMap,
    anchor_failures,
    linearity_witness,
    patho_check_additive,
    patho_check_identity,
    patho_check_square_law,
    patho_welldef_check,
)
from .ratfunc2 import Z2T, Poly2, random_poly, random_ratfunc

PRNG_NAME = "PCG64"

# pair-based suites enumerate every pair when the algebra is at most this big
EXHAUSTIVE_LIMIT = 256


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent PCG64 stream ``stream`` for a given seed."""
    return np.random.Generator(np.random.PCG64([seed & (2**64 - 1), stream]))


def _result(name, checked, bad_mask=None, witness=None, **extra) -> dict:
    failures = 0 if bad_mask is None else int(np.count_nonzero(bad_mask))
    out = {"name": name, "checked": int(checked), "failures": failures, "passed": failures == 0}
    if failures and witness is not None:
        out["counterexample"] = witness(int(np.flatnonzero(bad_mask)[0]))
    out.update(extra)
    return out


def _literals(alg: PrimeAlgebra, *rows) -> list[str]:
    return [alg.to_scalar(r).literal() for r in rows]


def _assoc(alg: PrimeAlgebra, X, Y, Z):
    return alg.sub(alg.mul(alg.mul(X, Y), Z), alg.mul(X, alg.mul(Y, Z)))


def _all_pairs(alg: PrimeAlgebra):
    E = alg.elements()
    i, j = np.meshgrid(np.arange(len(E)), np.arange(len(E)), indexing="ij")
    return E[i.ravel()], E[j.ravel()]


def _sample_pairs(alg: PrimeAlgebra, rng, count: int, exhaustive: bool = True):
    """All pairs for tiny algebras (unless disabled), otherwise ``count`` random pairs."""
    if exhaustive and alg.size <= EXHAUSTIVE_LIMIT:
        X, Y = _all_pairs(alg)
        return X, Y, "exhaustive"
    return alg.random(rng, count), alg.random(rng, count), "random"


# -- octonion axioms ----------------------------------------------------------


def _pattern_coeffs(field: FieldSpec) -> tuple[np.ndarray, bool]:
    """Coefficient values used for basis patterns: the whole field when small."""
    q = field.order
    count = min(q, 8)
    coords = np.array([field.from_int(c).coords() for c in range(count)], dtype=np.int64)
    return coords, count == q


def basis_pattern_suite(field: FieldSpec) -> dict:
    """Alternativity and flexibility on x = a e_i + b e_j, z = c e_k for all i, j, k and coefficients.

    The associator is trilinear, so (x, x, z) = 0 for these x and z is the
    polarized form of the alternative law; with all coefficient patterns it
    is checked exhaustively over the basis.
    """
    alg = PrimeAlgebra(field, "octonion")
    k = field.k
    vals, exhaustive = _pattern_coeffs(field)
    m = len(vals)
    I, J, K = (a.ravel() for a in np.meshgrid(np.arange(8), np.arange(8), np.arange(8), indexing="ij"))
    A, B, C = (a.ravel() for a in np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij"))
    # outer product: every basis triple with every coefficient triple
    I, A = np.repeat(I, m**3), np.tile(A, 512)
    J, B = np.repeat(J, m**3), np.tile(B, 512)
    K, C = np.repeat(K, m**3), np.tile(C, 512)
    N = len(I)
    X = np.zeros((N, alg.n), dtype=np.int64)
    Z = np.zeros((N, alg.n), dtype=np.int64)
    rows = np.arange(N)
    for d in range(k):
        X[rows, I * k + d] += vals[A, d]
        X[rows, J * k + d] += vals[B, d]
        Z[rows, K * k + d] = vals[C, d]
    X %= field.p
    left = _assoc(alg, X, X, Z).any(axis=1)
    right = _assoc(alg, Z, X, X).any(axis=1)
    flex = _assoc(alg, X, Z, X).any(axis=1)
    bad = left | right | flex
    return _result("alternative_flexible_basis_patterns", N, bad,
                   lambda i: _literals(alg, X[i], Z[i]), exhaustive=exhaustive)


def alternative_suite(field: FieldSpec, rng, samples: int) -> dict:
    alg = PrimeAlgebra(field, "octonion")
    X, Y, Z = (alg.random(rng, samples) for _ in range(3))
    bad = (_assoc(alg, X, X, Y).any(axis=1) | _assoc(alg, Y, Z, Z).any(axis=1)
           | _assoc(alg, X, Y, X).any(axis=1))
    return _result("alternative_flexible_random", samples, bad, lambda i: _literals(alg, X[i], Y[i], Z[i]))


def alternative_pairs_suite(field: FieldSpec, rng, samples: int) -> dict:
    """(x,x,y) = (y,x,x) = (x,y,x) = 0, over every pair when the algebra is tiny."""
    alg = PrimeAlgebra(field, "octonion")
    X, Y, mode = _sample_pairs(alg, rng, samples)
    bad = (_assoc(alg, X, X, Y).any(axis=1) | _assoc(alg, Y, X, X).any(axis=1)
           | _assoc(alg, X, Y, X).any(axis=1))
    return _result("alternative_flexible_pairs", len(X), bad, lambda i: _literals(alg, X[i], Y[i]), mode=mode)


def norm_suite(field: FieldSpec, rng, samples: int, exhaustive: bool = True) -> dict:
    """N(xy) = N(x) N(y) on pairs."""
    alg = PrimeAlgebra(field, "octonion")
    X, Y, mode = _sample_pairs(alg, rng, samples, exhaustive)
    lhs = alg.norm(alg.mul(X, Y))
    rhs = alg.fmul(alg.norm(X), alg.norm(Y))
    bad = (lhs != rhs).any(axis=1)
    return _result("norm_multiplicative", len(X), bad, lambda i: _literals(alg, X[i], Y[i]), mode=mode)


def square_law_suite(field: FieldSpec, rng, samples: int, exhaustive: bool = True) -> dict:
    """x^2 = T(x) x - N(x) and x x^-1 = x^-1 x = 1 when N(x) != 0."""
    alg = PrimeAlgebra(field, "octonion")
    if exhaustive and alg.size <= EXHAUSTIVE_LIMIT:
        X, mode = alg.elements(), "exhaustive"
    else:
        X, mode = alg.random(rng, samples), "random"
    sq = alg.mul(X, X)
    rhs = alg.sub(alg.scale(alg.trace(X), X), alg.scalar(alg.norm(X)))
    bad = (sq != rhs).any(axis=1)
    inv, mask = alg.inverse(X)
    unit = np.broadcast_to(alg.unit, X.shape)
    round_trip = ((alg.mul(X, inv) != unit) | (alg.mul(inv, X) != unit)).any(axis=1) & mask
    return _result("square_law_and_inverse", len(X), bad | round_trip, lambda i: _literals(alg, X[i]),
                   mode=mode, invertible=int(mask.sum()))


def moufang_suite(field: FieldSpec, rng, samples: int) -> dict:
    alg = PrimeAlgebra(field, "octonion")
    X, Y, A = (alg.random(rng, samples) for _ in range(3))
    mul = alg.mul
    xax = mul(mul(X, A), X)
    first = mul(xax, Y) != mul(X, mul(A, mul(X, Y)))
    second = mul(Y, xax) != mul(mul(mul(Y, X), A), X)
    third = mul(mul(X, Y), mul(A, X)) != mul(mul(X, mul(Y, A)), X)
    bad = (first | second | third).any(axis=1)
    return _result("moufang", samples, bad, lambda i: _literals(alg, X[i], Y[i], A[i]))


def hua_suite(field: FieldSpec, rng, pairs: int, max_rounds: int = 20) -> dict:
    """Hua's identity on ``pairs`` random pairs for which every inverse exists.

    Tiny algebras use every pair instead.  The share of draws rejected by the
    invertibility preconditions is reported as ``inapplicable_rate``.
    """
    alg = PrimeAlgebra(field, "octonion")
    if alg.size <= EXHAUSTIVE_LIMIT:
        A, B = _all_pairs(alg)
        ok = hua_valid(alg, A, B)
        drawn, valid, mode = len(A), int(ok.sum()), "exhaustive"
        A, B = A[ok], B[ok]
    else:
        chunks_a, chunks_b = [], []
        drawn = valid = 0
        for _ in range(max_rounds):
            A, B = alg.random(rng, 2 * pairs), alg.random(rng, 2 * pairs)
            ok = hua_valid(alg, A, B)
            chunks_a.append(A[ok])
            chunks_b.append(B[ok])
            drawn += len(A)
            valid += int(ok.sum())
            if valid >= pairs:
                break
        A = np.concatenate(chunks_a)[:pairs]
        B = np.concatenate(chunks_b)[:pairs]
        mode = "random"
    lhs, rhs, flex = hua_sides(alg, A, B)
    bad = (lhs != rhs).any(axis=1) | (rhs != flex).any(axis=1)
    out = _result("hua", len(A), bad, lambda i: _literals(alg, A[i], B[i]), mode=mode,
                  drawn=int(drawn), inapplicable_rate=round(1 - valid / drawn, 6) if drawn else 0.0)
    if mode == "random" and len(A) < pairs:
        out["passed"] = False
        out["note"] = f"only {len(A)} valid pairs found"
    return out


def hua_valid(alg: PrimeAlgebra, A, B) -> np.ndarray:
    """Pairs where a, b, ab - 1, b^-1 - a and a^-1 + (b^-1 - a)^-1 are all invertible."""
    unit = np.broadcast_to(alg.unit, A.shape)
    ok = alg.invertible(A) & alg.invertible(B) & alg.invertible(alg.sub(alg.mul(A, B), unit))
    inner = alg.sub(alg.inverse(B)[0], A)
    inner_inv, m = alg.inverse(inner)
    ok &= m
    ok &= alg.invertible(alg.add(alg.inverse(A)[0], inner_inv))
    return ok


def hua_sides(alg: PrimeAlgebra, A, B):
    """(a - (a^-1 + (b^-1 - a)^-1)^-1, (ab)a, a(ba)) for valid pairs."""
    inner_inv = alg.inverse(alg.sub(alg.inverse(B)[0], A))[0]
    outer_inv = alg.inverse(alg.add(alg.inverse(A)[0], inner_inv))[0]
    lhs = alg.sub(A, outer_inv)
    rhs = alg.mul(alg.mul(A, B), A)
    flex = alg.mul(A, alg.mul(B, A))
    return lhs, rhs, flex


def hua_ratfunc_suite(rng, pairs: int, max_degree: int = 2, max_draws: int | None = None) -> dict:
    """Hua's identity for octonions with Z2(t) coefficients (scalar arithmetic)."""
    max_draws = max_draws or 50 * pairs
    checked = failures = drawn = 0
    witness = None
    while checked < pairs and drawn < max_draws:
        a = Octonion([random_ratfunc(rng, max_degree) for _ in range(8)], Z2T)
        b = Octonion([random_ratfunc(rng, max_degree) for _ in range(8)], Z2T)
        drawn += 1
        try:
            res = hua_check(a, b)
        except InapplicableError:
            continue
        checked += 1
        if not (res.equal and res.flexible_ok):
            failures += 1
            witness = witness or [a.literal(), b.literal()]
    out = {"name": "hua_z2t", "checked": checked, "failures": failures,
           "passed": failures == 0 and checked >= pairs, "drawn": drawn,
           "inapplicable_rate": round(1 - checked / drawn, 6) if drawn else 0.0}
    if witness:
        out["counterexample"] = witness
    return out


def moufang_ratfunc_suite(rng, samples: int, max_degree: int = 2) -> dict:
    bad = 0
    witness = None
    for _ in range(samples):
        x, y, a = (Octonion([random_ratfunc(rng, max_degree) for _ in range(8)], Z2T) for _ in range(3))
        if not all(moufang_check(x, y, a)) or not oct_square_check(x):
            bad += 1
            witness = witness or [x.literal(), y.literal(), a.literal()]
    out = {"name": "moufang_z2t", "checked": samples, "failures": bad, "passed": bad == 0}
    if witness:
        out["counterexample"] = witness
    return out


def _rank(rows: list[list]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(len(rows[0]) if rows else 0):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [c * inv for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def nondegenerate_suite(field: FieldSpec) -> dict:
    """The polar form N(x+y) - N(x) - N(y) has rank 8 on the basis."""
    basis = [Octonion.basis(ix, field) for ix in ORDER]
    gram = [[(u + v).norm() - u.norm() - v.norm() for v in basis] for u in basis]
    rank = _rank(gram)
    return {"name": "norm_nondegenerate", "checked": 1, "failures": int(rank != 8), "passed": rank == 8,
            "rank": rank}


def axiom_suites(field: FieldSpec, seed: int, samples: int) -> list[dict]:
    """Everything ``axioms`` reports for one finite field."""
    hua_pairs = max(1, samples // 10)
    return [
        basis_pattern_suite(field),
        alternative_suite(field, make_rng(seed, 1), samples),
        alternative_pairs_suite(field, make_rng(seed, 2), samples),
        norm_suite(field, make_rng(seed, 3), samples),
        square_law_suite(field, make_rng(seed, 4), samples),
        moufang_suite(field, make_rng(seed, 5), samples),
        hua_suite(field, make_rng(seed, 6), hua_pairs),
        nondegenerate_suite(field),
    ]


def ratfunc_axiom_suites(seed: int, samples: int) -> list[dict]:
    """Scalar suites over octonions with Z2(t) coefficients, at a reduced sample count."""
    small = max(1, samples // 100)
    return [
        moufang_ratfunc_suite(make_rng(seed, 5), small),
        hua_ratfunc_suite(make_rng(seed, 6), small),
    ]


# -- proof-step witnesses -----------------------------------------------------


def _oct(field, terms) -> Octonion:
    total = Octonion.zero(field)
    for ix, c in terms:
        total = total + Octonion.basis(ix, field, c)
    return total


def _parse(name: str) -> OctIndex:
    sign = -1 if name.startswith("-") else 1
    return OctIndex(sign, name.lstrip("-"))


def witness_checks(field: FieldSpec) -> list[dict]:
    """The T/N values quoted in the proof steps, for every admissible alpha in ``field``.

    The odd-characteristic steps are polynomial identities in alpha, so they
    are evaluated in every characteristic; the characteristic-2 steps only
    when p = 2.
    """
    F = field
    one = Octonion.one(F)
    e0, em0, e1, em1 = _parse("0"), _parse("-0"), _parse("1"), _parse("-1")
    out = []

    def record(step, alpha, checks):
        bad = [label for label, ok in checks if not ok]
        out.append({"step": step, "alpha": str(alpha), "passed": not bad, "failed": bad})

    alphas = F.elements()
    for alpha in alphas:
        for i in (ix for ix in ORDER if ix.tag != "0"):
            iw = i.times_w()
            x = _oct(F, [(e0, 1), (em0, -1), (iw, 1), (iw.negate(), -1), (i, alpha)])
            record(f"odd.1[{i.name}]", alpha, [
                ("T(x)=0", x.trace() == 0), ("N(x)=-2", x.norm() == F.element(-2)),
                ("N(1-x)=-1", (one - x).norm() == F.element(-1)),
                ("x^2=2", x * x == Octonion.scalar(2, F))])
        if alpha:
            x = _oct(F, [(e0, 1), (e1, alpha), (em1, 1)])
            record("odd.3", alpha, [
                ("T(x)=1", x.trace() == 1), ("N(x)=alpha", x.norm() == alpha),
                ("N(1-x)=alpha", (one - x).norm() == alpha),
                ("x^2=x-alpha", x * x == x - Octonion.scalar(alpha, F))])
        x = _oct(F, [(e0, alpha), (em0, -alpha), (e1, alpha * alpha + 1), (em1, 1)])
        one_minus = _oct(F, [(e0, 1 - alpha), (em0, alpha + 1), (e1, -(alpha * alpha + 1)), (em1, -1)])
        record("odd.4", alpha, [
            ("T(x)=0", x.trace() == 0), ("N(x)=1", x.norm() == 1),
            ("1-x as displayed", one - x == one_minus),
            ("N(1-x)=2", (one - x).norm() == F.element(2)),
            ("x^2=-1", x * x == Octonion.scalar(-1, F))])
    if F.p == 2:
        for alpha in alphas:
            for i in (ix for ix in ORDER if ix.tag != "0"):
                iw = i.times_w()
                x = _oct(F, [(e0, 1), (iw, 1), (iw.negate(), 1), (i, alpha)])
                record(f"even.1[{i.name}]", alpha, [
                    ("T(x)=1", x.trace() == 1), ("N(x)=1", x.norm() == 1),
                    ("N(x+1)=1", (x + one).norm() == 1), ("x^2=x+1", x * x == x + one)])
            if alpha:
                x = _oct(F, [(e0, 1), (e1, alpha), (em1, 1)])
                record("even.3", alpha, [
                    ("T(x)=1", x.trace() == 1), ("N(x)=alpha", x.norm() == alpha),
                    ("N(x+1)=alpha", (x + one).norm() == alpha),
                    ("x^2=x+alpha", x * x == x + Octonion.scalar(alpha, F))])
            if alpha and alpha != 1:
                a2 = alpha * alpha
                for beta in (b for b in alphas if b):
                    for i in (e0, em0):
                        x = _oct(F, [(i, alpha), (e1, beta), (em1, beta.inverse())])
                        xinv = _oct(F, [(i.negate(), alpha), (e1, beta), (em1, beta.inverse())])
                        xsq = _oct(F, [(i, a2 + 1), (i.negate(), 1), (e1, alpha * beta),
                                       (em1, alpha * beta.inverse())])
                        y = _oct(F, [(e1, a2 + 1), (em1, a2 + 1)])
                        record(f"even.5[{i.name},beta={beta}]", alpha, [
                            ("T(x)=alpha", x.trace() == alpha), ("N(x)=1", x.norm() == 1),
                            ("x^-1 displayed", x.inverse() == xinv),
                            ("x^2 displayed", x * x == xsq),
                            ("N=(alpha+1)^4", y.norm() == (alpha + 1) ** 4),
                            ("(alpha+1)^4!=0", bool((alpha + 1) ** 4))])
    return out


def witness_suite(field: FieldSpec) -> dict:
    rows = witness_checks(field)
    bad = [r for r in rows if not r["passed"]]
    out = {"name": "proof_step_witnesses", "field": field.literal(), "checked": len(rows),
           "failures": len(bad), "passed": not bad}
    if bad:
        out["counterexample"] = bad[0]
    return out


# -- the Z2(t) family ---------------------------------------------------------


def patho_suite(m: PathoMap, rng, additive: int = 10_000, identity: int = 10_000,
                welldef: int = 1_000, square: int = 1_000, anchor_range: int = 10) -> list[dict]:
    results = []

    def run(name, count, draw, check):
        bad = 0
        witness = None
        for _ in range(count):
            args = draw()
            if not check(*args):
                bad += 1
                witness = witness or [str(a) for a in args]
        out = {"name": name, "checked": count, "failures": bad, "passed": bad == 0}
        if witness:
            out["counterexample"] = witness
        results.append(out)

    def nonzero():
        while True:
            x = random_ratfunc(rng)
            if x:
                return (x,)

    def with_w():
        x = random_ratfunc(rng)
        w = 0
        while w == 0:
            w = random_poly(rng, 6)
        return x, Poly2(w)

    run("additivity", additive, lambda: (random_ratfunc(rng), random_ratfunc(rng)),
        lambda x, y: patho_check_additive(m, x, y))
    run("identity", identity, nonzero, lambda x: patho_check_identity(m, x))
    run("well_defined", welldef, with_w, lambda x, w: patho_welldef_check(m, x, w))
    run("square_law", square, lambda: (random_ratfunc(rng), random_ratfunc(rng)),
        lambda a, b: patho_check_square_law(m, a, b))
    bad = anchor_failures(m, -anchor_range, anchor_range)
    anchors = {"name": "anchors", "checked": 2 * (2 * anchor_range + 1), "failures": len(bad),
               "passed": not bad}
    if bad:
        anchors["counterexample"] = bad[0]
    results.append(anchors)
    w = linearity_witness(m)
    expect = not m.is_linear()
    results.append({"name": "non_linearity_witness", "checked": 1, "failures": int(w.fires != expect),
                    "passed": w.fires == expect, "fires": w.fires, "f_t": str(w.f_t), "t_f_1": str(w.t_f_1)})
    return results
