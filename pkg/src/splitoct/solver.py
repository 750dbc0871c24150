"""All additive solutions (f, g) of f(x) + x^2 g(x^-1) = 0 on a finite algebra.

On a finite algebra D over GF(p^k) an additive map is the same thing as a
GF(p)-linear map: additivity gives f(m x) = m f(x) for every integer m, and
GF(p) is the image of the integers.  So f and g are n x n matrices F, G over
GF(p) acting on prime-field coordinates, and every invertible x contributes
the n linear equations

    F v(x) + L(x^2) G v(x^-1) = 0

in the 2 n^2 unknown entries of F and G (row-major, F first).  The solution
set is the nullspace of the stacked system, computed exactly by elimination.
In mode ``f_eq_g`` the substitution G := F leaves n^2 unknowns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from ._core import rref_insert
from .batch import PrimeAlgebra
from .errors import DomainError
from .fields import FieldSpec, check_capacity

log = logging.getLogger(__name__)

MODES = ("pair", "f_eq_g")
F_EQ_G_ENCODING = "substitute G := F (n^2 unknowns)"


@dataclass(frozen=True)
class AlgebraHandle:
    kind: str
    field: FieldSpec

    def __post_init__(self):
        if self.kind not in ("octonion", "field"):
            raise DomainError(f"kind must be 'octonion' or 'field', got {self.kind!r}")
        check_capacity(self.field.p ** self.dim, "algebra elements")

    @property
    def dim(self) -> int:
        """Dimension n over the prime field."""
        return 8 * self.field.k if self.kind == "octonion" else self.field.k

    @property
    def algebra(self) -> PrimeAlgebra:
        return PrimeAlgebra(self.field, self.kind)


def _mode_check(mode: str):
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")


def unknown_count(n: int, mode: str) -> int:
    return 2 * n * n if mode == "pair" else n * n


def mul_matrices(alg: PrimeAlgebra, a) -> tuple[np.ndarray, np.ndarray]:
    """(L, R) with L v(y) = v(a y) and R v(y) = v(y a)."""
    a = np.asarray(a, dtype=np.int64).reshape(1, -1)
    return alg.left_matrices(a)[0], alg.right_matrices(a)[0]


def constraint_rows(alg: PrimeAlgebra, X, Xinv, mode: str = "pair") -> np.ndarray:
    """Equations contributed by the invertible elements X (with inverses Xinv); n rows each."""
    n, p = alg.n, alg.p
    N = X.shape[0]
    L = alg.left_matrices(alg.mul(X, X))
    g_part = (L[:, :, :, None] * Xinv[:, None, None, :]).reshape(N, n, n * n) % p
    f_part = np.zeros((N, n, n * n), dtype=np.int64)
    for r in range(n):
        f_part[:, r, r * n:(r + 1) * n] = X
    if mode == "pair":
        rows = np.concatenate([f_part, g_part], axis=2)
    else:
        rows = (f_part + g_part) % p
    return rows.reshape(N * n, rows.shape[2])


@dataclass
class ConstraintSystem:
    """Incrementally reduced constraint matrix (fully reduced echelon form)."""

    p: int
    unknowns: int
    basis: np.ndarray = dc_field(init=False, repr=False)
    pivots: np.ndarray = dc_field(init=False, repr=False)
    rank: int = 0
    rows_seen: int = 0

    def __post_init__(self):
        self.basis = np.zeros((self.unknowns, self.unknowns), dtype=np.int64)
        self.pivots = np.zeros(self.unknowns, dtype=np.int64)

    def add_rows(self, rows) -> int:
        rows = np.ascontiguousarray(rows, dtype=np.int64) % self.p
        self.rows_seen += rows.shape[0]
        if self.rank and len(rows) and self.rank * (self.p - 1) ** 2 < 1 << 52:
            # bulk pre-reduction as one float64 product (exact below 2**53);
            # rows already in the span vanish here
            piv = self.pivots[:self.rank]
            B = self.basis[:self.rank].astype(np.float64)
            red = rows[:, piv].astype(np.float64) @ B
            rows = (rows - red.astype(np.int64)) % self.p
            rows = np.ascontiguousarray(rows[rows.any(axis=1)])
        if len(rows):
            self.rank = int(rref_insert(self.basis, self.pivots, self.rank, rows, self.p))
        return self.rank

    def echelon(self) -> tuple[np.ndarray, np.ndarray]:
        """(rows, pivot columns) sorted by pivot column."""
        order = np.argsort(self.pivots[:self.rank], kind="stable")
        return self.basis[:self.rank][order], self.pivots[:self.rank][order]


def kernel(sys: ConstraintSystem) -> np.ndarray:
    """Basis of the nullspace, one row per free column (ascending)."""
    rows, pivots = sys.echelon()
    free = np.setdiff1d(np.arange(sys.unknowns), pivots)
    out = np.zeros((len(free), sys.unknowns), dtype=np.int64)
    for m, f in enumerate(free):
        out[m, f] = 1
        out[m, pivots] = -rows[:, f] % sys.p
    return out


def split_vector(vec, n: int, mode: str) -> tuple[np.ndarray, np.ndarray]:
    F = np.asarray(vec[:n * n]).reshape(n, n)
    G = np.asarray(vec[n * n:]).reshape(n, n) if mode == "pair" else F
    return F, G


def residual_failures(alg: PrimeAlgebra, X, Xinv, Fs, Gs) -> np.ndarray:
    """Mask of rows x where some (F, G) pair violates F v(x) + L(x^2) G v(x^-1) = 0."""
    p, n = alg.p, alg.n
    D = len(Fs)
    if len(X) == 0 or D == 0:
        return np.zeros(len(X), dtype=bool)
    # float64 products are exact here: every partial sum stays far below 2**53
    L = alg.left_matrices(alg.mul(X, X)).astype(np.float64)
    Fm = np.asarray(Fs, dtype=np.float64).transpose(2, 0, 1).reshape(n, D * n)
    Gm = np.asarray(Gs, dtype=np.float64).transpose(2, 0, 1).reshape(n, D * n)
    fv = (X.astype(np.float64) @ Fm).reshape(-1, D, n)
    gw = np.mod(Xinv.astype(np.float64) @ Gm, p).reshape(-1, D, n)
    lg = np.matmul(gw, L.transpose(0, 2, 1))
    return np.mod(fv + lg, p).any(axis=(1, 2))


def _chunk_size(n: int, unknowns: int) -> int:
    return max(16, (1 << 21) // (n * unknowns))


def verify_solution(handle: AlgebraHandle, F, G, chunk: int = 1 << 15) -> bool:
    """Check F v(x) + L(x^2) G v(x^-1) = 0 for every invertible x, by direct evaluation."""
    alg = handle.algebra
    Fs = np.asarray(F, dtype=np.int64)[None] % alg.p
    Gs = np.asarray(G, dtype=np.int64)[None] % alg.p
    for start in range(0, alg.size, chunk):
        X = alg.elements(start, start + chunk)
        Xinv, mask = alg.inverse(X)
        if residual_failures(alg, X[mask], Xinv[mask], Fs, Gs).any():
            return False
    return True


def build_constraints(handle: AlgebraHandle, mode: str = "pair") -> ConstraintSystem:
    """Reduce the equations of every invertible element (full scan, no early stop)."""
    return _run(handle, mode, early_stop=False)[0]


def right_mul_space_dim(alg: PrimeAlgebra, mode: str) -> int:
    """Dimension of the q for which (R(q), -R(q)) [pair] or R(q) = -R(q) [f_eq_g] is admissible."""
    n, p = alg.n, alg.p
    if mode == "pair":
        return n
    R = alg.right_matrices(np.eye(n, dtype=np.int64))  # R[i] = R(e_i)
    cols = (2 * R).reshape(n, n * n) % p
    sys = ConstraintSystem(p, n)
    sys.add_rows(np.ascontiguousarray(cols.T))
    return n - sys.rank


@dataclass
class _RunStats:
    elements: int = 0
    invertible: int = 0
    early_stop_at: int | None = None
    reinserted: int = 0


def _run(handle: AlgebraHandle, mode: str, early_stop: bool, expected: int | None = None):
    """Scan invertible elements in order, reducing their equations.

    With ``early_stop`` an element is first tested against the current
    nullspace: its equations lie in the row space exactly when every kernel
    vector satisfies them, so only violators are reduced.  Once the rank
    reaches ``unknowns - expected`` the rest of the scan is pure verification
    (violators, if any, are still folded in).  Without ``early_stop`` every
    row is reduced.
    """
    _mode_check(mode)
    alg = handle.algebra
    n = alg.n
    unknowns = unknown_count(n, mode)
    sys = ConstraintSystem(alg.p, unknowns)
    stats = _RunStats()
    target = unknowns - expected if (early_stop and expected is not None) else None
    kern, kern_rank = None, -1
    pos = 0
    while pos < alg.size:
        d = unknowns - sys.rank
        filtering = target is not None and 0 < sys.rank and d <= sys.rank
        size = max(64, (1 << 22) // (n * max(d, n))) if filtering else _chunk_size(n, unknowns)
        X = alg.elements(pos, pos + size)
        Xinv, mask = alg.inverse(X)
        ids = np.flatnonzero(mask) + pos
        X, Xinv = X[mask], Xinv[mask]
        stats.elements += min(size, alg.size - pos)
        stats.invertible += len(X)
        pos += size
        if not filtering:
            sys.add_rows(constraint_rows(alg, X, Xinv, mode))
            if target is not None and sys.rank >= target and len(ids):
                stats.early_stop_at = int(ids[-1])
            continue
        while len(X):
            if kern_rank != sys.rank:
                kern, kern_rank = kernel(sys), sys.rank
            bad = residual_failures(alg, X, Xinv, *_stack(kern, n, mode))
            if not bad.any():
                break
            first = int(np.argmax(bad))
            X, Xinv, ids = X[first:], Xinv[first:], ids[first:]
            # a violator; insert it alone, then re-test the rest against the smaller kernel
            if stats.early_stop_at is not None:
                stats.reinserted += 1
            sys.add_rows(constraint_rows(alg, X[:1], Xinv[:1], mode))
            if target is not None and stats.early_stop_at is None and sys.rank >= target:
                stats.early_stop_at = int(ids[0])
                log.debug("rank %d reached at element %d", sys.rank, stats.early_stop_at)
            X, Xinv, ids = X[1:], Xinv[1:], ids[1:]
    return sys, kernel(sys), stats


def _stack(kern, n, mode):
    Fs = kern[:, :n * n].reshape(-1, n, n)
    Gs = kern[:, n * n:].reshape(-1, n, n) if mode == "pair" else Fs
    return Fs, Gs


@dataclass
class Interpretation:
    q_coeffs: list[int]
    is_right_mul_pair: bool


@dataclass
class SolveReport:
    kind: str
    field: str
    mode: str
    dim: int
    unknowns: int
    elements: int
    invertible_count: int
    constraint_rows: int
    rank: int
    kernel_dim: int
    expected_dim: int
    verdict: bool
    kernel_basis: np.ndarray
    interpretations: list[Interpretation]
    early_stop_at: int | None
    reinserted: int

    def to_json(self) -> dict:
        out = {
            "algebra": {"kind": self.kind, "field": self.field},
            "mode": self.mode,
            "n": self.dim,
            "unknowns": self.unknowns,
            "elements_enumerated": self.elements,
            "invertible_count": self.invertible_count,
            "constraint_rows": self.constraint_rows,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "expected_dim": self.expected_dim,
            "verdict": self.verdict,
            "kernel_interpretations": [
                {"q_coeffs": it.q_coeffs, "is_right_mul_pair": it.is_right_mul_pair}
                for it in self.interpretations
            ],
            "early_stop_after_element": self.early_stop_at,
            "rows_added_after_early_stop": self.reinserted,
        }
        if self.mode == "f_eq_g":
            out["f_eq_g_encoding"] = F_EQ_G_ENCODING
        return out


def interpret(kern, alg: PrimeAlgebra, mode: str) -> list[Interpretation]:
    """Match each kernel vector against (R(q), -R(q)) with q = F v(1)."""
    n, p = alg.n, alg.p
    out = []
    for vec in kern:
        F, G = split_vector(vec, n, mode)
        q = F @ alg.unit % p
        Rq = alg.right_matrices(q[None])[0]
        if mode == "pair":
            ok = np.array_equal(F % p, Rq) and np.array_equal(G % p, -Rq % p)
        else:
            ok = np.array_equal(F % p, Rq) and np.array_equal(Rq, -Rq % p)
        out.append(Interpretation([int(c) for c in q], bool(ok)))
    return out


def solve(handle: AlgebraHandle, mode: str = "pair", early_stop: bool = True) -> SolveReport:
    """Full pipeline: constraints, nullspace, interpretation and verdict.

    With ``early_stop`` the scan stops adding equations once the rank leaves a
    nullspace of the expected size, then every remaining invertible element is
    checked against the kernel directly; violators are folded back in.  The
    result is exact either way.
    """
    _mode_check(mode)
    alg = handle.algebra
    expected = right_mul_space_dim(alg, mode)
    sys, kern, stats = _run(handle, mode, early_stop, expected)
    interps = interpret(kern, alg, mode)
    verdict = all(it.is_right_mul_pair for it in interps) and len(kern) == expected
    return SolveReport(
        kind=handle.kind,
        field=handle.field.literal(),
        mode=mode,
        dim=alg.n,
        unknowns=sys.unknowns,
        elements=stats.elements,
        invertible_count=stats.invertible,
        constraint_rows=alg.n * stats.invertible,
        rank=sys.rank,
        kernel_dim=len(kern),
        expected_dim=expected,
        verdict=verdict,
        kernel_basis=kern,
        interpretations=interps,
        early_stop_at=stats.early_stop_at,
        reinserted=stats.reinserted,
    )
