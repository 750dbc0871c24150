import itertools

import numpy as np
import pytest

from splitoct.batch import PrimeAlgebra
from splitoct.errors import CapacityError, DomainError
from splitoct.fields import FieldSpec
from splitoct.octonion import ORDER, Octonion
from splitoct.solver import (
    AlgebraHandle,
    ConstraintSystem,
    build_constraints,
    constraint_rows,
    interpret,
    kernel,
    mul_matrices,
    right_mul_space_dim,
    solve,
    split_vector,
    unknown_count,
    verify_solution,
)

GF2, GF3, GF5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def oracle_nullity(rows: np.ndarray, p: int) -> int:
    """Plain Gauss-Jordan over GF(p), one column at a time."""
    M = rows.copy() % p
    rank = 0
    for c in range(M.shape[1]):
        nz = np.flatnonzero(M[rank:, c])
        if not len(nz):
            continue
        r = rank + nz[0]
        M[[rank, r]] = M[[r, rank]]
        M[rank] = M[rank] * pow(int(M[rank, c]), p - 2, p) % p
        f = M[:, c].copy()
        f[rank] = 0
        M = (M - np.outer(f, M[rank])) % p
        rank += 1
        if rank == M.shape[0]:
            break
    return M.shape[1] - rank


def all_rows(handle, mode="pair"):
    alg = handle.algebra
    X = alg.elements()
    Xinv, mask = alg.inverse(X)
    return constraint_rows(alg, X[mask], Xinv[mask], mode)


# -- multiplication matrices ----------------------------------------------------


def test_mul_matrices_of_one():
    alg = PrimeAlgebra(GF5)
    L, R = mul_matrices(alg, alg.unit)
    assert np.array_equal(L, np.eye(8)) and np.array_equal(R, np.eye(8))


def test_left_matrix_of_e0_matches_table_row():
    alg = PrimeAlgebra(GF2)
    e0 = Octonion.basis("0", GF2)
    L, _ = mul_matrices(alg, alg.from_scalar(e0))
    for j, ix in enumerate(ORDER):
        prod = e0 * Octonion.basis(ix, GF2)
        assert np.array_equal(L[:, j], alg.from_scalar(prod))


def test_left_multiplications_do_not_compose(rng):
    alg = PrimeAlgebra(GF3)
    witness = None
    for _ in range(50):
        a, b = alg.random(rng, 1)[0], alg.random(rng, 1)[0]
        La, Lb, Lab = (mul_matrices(alg, v)[0] for v in (a, b, alg.mul(a[None], b[None])[0]))
        assert np.array_equal(La @ b % 3, alg.mul(a[None], b[None])[0])
        if not np.array_equal(La @ Lb % 3, Lab):
            witness = (a, b)
            break
    assert witness is not None


# -- constraint systems -------------------------------------------------------


def test_gf2_octonion_counts():
    handle = AlgebraHandle("octonion", GF2)
    count = sum(1 for cs in itertools.product(range(2), repeat=8) if Octonion(list(cs), GF2).norm() == 1)
    sys = build_constraints(handle)
    assert sys.rows_seen == 8 * count
    rep = solve(handle)
    assert rep.invertible_count == count == 120
    assert rep.constraint_rows == 8 * count


def test_gf2_field_single_block():
    sys = build_constraints(AlgebraHandle("field", GF2))
    assert sys.rows_seen == 1 and sys.rank == 1
    assert np.array_equal(kernel(sys), [[1, 1]])


def test_early_stop_rank_equals_full_scan():
    handle = AlgebraHandle("octonion", GF3)
    fast = solve(handle, early_stop=True)
    full = build_constraints(handle)
    assert fast.rank == full.rank == 120
    assert fast.early_stop_at is not None and fast.early_stop_at < 6561
    assert np.array_equal(fast.kernel_basis, kernel(full))


@pytest.mark.parametrize("kind,field", [("octonion", GF2), ("field", FieldSpec(2, 3)), ("field", FieldSpec(3, 2))])
@pytest.mark.parametrize("mode", ["pair", "f_eq_g"])
def test_nullity_matches_oracle(kind, field, mode):
    handle = AlgebraHandle(kind, field)
    sys = build_constraints(handle, mode)
    assert len(kernel(sys)) == oracle_nullity(all_rows(handle, mode), field.p)


def test_kernel_of_empty_and_forcing_systems():
    n = 8
    sys = ConstraintSystem(3, unknown_count(n, "pair"))
    assert len(kernel(sys)) == 2 * n * n
    sys.add_rows(np.eye(2 * n * n, dtype=np.int64))
    assert len(kernel(sys)) == 0


def test_kernel_vectors_solve_system(rng):
    p, m = 5, 30
    rows = rng.integers(0, p, size=(20, m))
    sys = ConstraintSystem(p, m)
    sys.add_rows(rows)
    K = kernel(sys)
    assert len(K) == m - sys.rank == oracle_nullity(rows, p)
    assert not (rows @ K.T % p).any()


# -- solving ------------------------------------------------------------------


def test_gf3_octonion_kernel():
    rep = solve(AlgebraHandle("octonion", GF3))
    assert rep.kernel_dim == 8 and rep.verdict
    assert all(it.is_right_mul_pair for it in rep.interpretations)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_char2_field_pair(k):
    F = FieldSpec(2, k)
    rep = solve(AlgebraHandle("field", F))
    assert rep.kernel_dim == k and rep.verdict
    for vec in rep.kernel_basis:
        Fm, Gm = split_vector(vec, k, "pair")
        assert np.array_equal(Fm, Gm)  # -1 = 1


def test_gf3_f_eq_g_is_zero():
    rep = solve(AlgebraHandle("octonion", GF3), "f_eq_g")
    assert rep.kernel_dim == 0 and rep.expected_dim == 0 and rep.verdict
    assert rep.to_json()["f_eq_g_encoding"]


def test_gf2_f_eq_g():
    rep = solve(AlgebraHandle("octonion", GF2), "f_eq_g")
    assert rep.kernel_dim == 8 == rep.expected_dim and rep.verdict


def test_expected_dims():
    assert right_mul_space_dim(PrimeAlgebra(GF3), "f_eq_g") == 0
    assert right_mul_space_dim(PrimeAlgebra(FieldSpec(2, 2)), "f_eq_g") == 16
    assert right_mul_space_dim(PrimeAlgebra(GF5), "pair") == 8


def test_zero_vector_interprets():
    alg = PrimeAlgebra(GF3)
    (it,) = interpret(np.zeros((1, 128), dtype=np.int64), alg, "pair")
    assert it.is_right_mul_pair and it.q_coeffs == [0] * 8


def test_interpret_flags_bad_vectors():
    alg = PrimeAlgebra(GF3)
    vec = np.concatenate([np.eye(8, dtype=np.int64).ravel(), np.eye(8, dtype=np.int64).ravel()])
    (it,) = interpret(vec[None], alg, "pair")
    assert not it.is_right_mul_pair


def test_verify_solution_examples(rng):
    handle = AlgebraHandle("octonion", GF3)
    alg = handle.algebra
    for q in alg.random(rng, 5):
        R = alg.right_matrices(q[None])[0]
        assert verify_solution(handle, R, -R % 3)
    eye = np.eye(8, dtype=np.int64)
    assert not verify_solution(handle, eye, eye)
    zero = np.zeros((8, 8), dtype=np.int64)
    assert verify_solution(handle, zero, zero)


def test_sound_and_complete_gf3(rng):
    handle = AlgebraHandle("octonion", GF3)
    rep = solve(handle)
    for vec in rep.kernel_basis:
        assert verify_solution(handle, *split_vector(vec, 8, "pair"))
    alg = handle.algebra
    # every (R(q), -R(q)) lies in the kernel: it is orthogonal to the echelon rows
    sys = build_constraints(handle)
    rows, _ = sys.echelon()
    for q in np.eye(8, dtype=np.int64):
        R = alg.right_matrices(q[None])[0]
        vec = np.concatenate([R.ravel(), (-R % 3).ravel()])
        assert not (rows @ vec % 3).any()


@pytest.fixture(scope="module")
def gf5_kernel():
    rep = solve(AlgebraHandle("octonion", GF5))
    assert rep.kernel_dim == 8 and rep.verdict
    return rep.kernel_basis


def test_derivation_identities_gf5(gf5_kernel, rng):
    """f(a^2) = 2a f(a) - a^2 f(1) and h(x^2) = 2x h(x) with h(x) = f(x) - x f(1)."""
    alg = PrimeAlgebra(GF5)
    A = alg.random(rng, 400)
    ok = alg.invertible(A) & alg.invertible(alg.sub(A, alg.unit[None]))
    A = A[ok]
    one = np.broadcast_to(alg.unit, A.shape)
    for vec in gf5_kernel:
        Fm, _ = split_vector(vec, 8, "pair")
        f = lambda X: X @ Fm.T % 5  # noqa: E731
        f1 = f(one)
        A2 = alg.mul(A, A)
        lhs = f(A2)
        rhs = alg.sub(2 * alg.mul(A, f(A)) % 5, alg.mul(A2, f1))
        assert np.array_equal(lhs, rhs)
        h = lambda X: alg.sub(f(X), alg.mul(X, f1))  # noqa: E731
        assert np.array_equal(h(A2), 2 * alg.mul(A, h(A)) % 5)


def test_report_json_schema():
    js = solve(AlgebraHandle("field", FieldSpec(2, 2))).to_json()
    for key in ("algebra", "mode", "unknowns", "invertible_count", "rank", "kernel_dim", "expected_dim",
                "verdict", "kernel_interpretations"):
        assert key in js
    assert js["algebra"] == {"kind": "field", "field": "gf:2^2"}
    assert set(js["kernel_interpretations"][0]) == {"q_coeffs", "is_right_mul_pair"}


def test_handle_validation(monkeypatch):
    with pytest.raises(DomainError):
        AlgebraHandle("quaternion", GF3)
    with pytest.raises(CapacityError):
        AlgebraHandle("octonion", FieldSpec(7))
    monkeypatch.setenv("OCTO_MAX_ELEMS", str(3**8 - 1))
    with pytest.raises(CapacityError):
        AlgebraHandle("octonion", GF3)
    with pytest.raises(DomainError):
        solve(AlgebraHandle("field", GF3), "bogus")
