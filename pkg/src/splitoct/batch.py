"""Vectorized arithmetic on many algebra elements at once.

Every element of a finite algebra over GF(p^k) is handled through its
coordinate vector over the prime field GF(p).  For split octonions the vector
has ``n = 8k`` entries: the eight coefficients in storage order, each expanded
into its ``k`` little-endian field coordinates.  Multiplication is the sparse
GF(p)-bilinear map given by structure triples ``(i, j, k, c)``, meaning
``e_i * e_j`` contributes ``c * e_k``.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ._core import bilinear
from .errors import DomainError
from .fields import FieldSpec, check_capacity
from .octonion import I0, IM0, STRUCTURE, Octonion, POS, idx

KINDS = ("octonion", "field")


def field_triples(field: FieldSpec) -> np.ndarray:
    """Structure triples of GF(p^k) as a k-dimensional GF(p)-algebra."""
    k = field.k
    out = []
    for a in range(k):
        for b in range(k):
            ea = tuple(int(i == a) for i in range(k))
            eb = tuple(int(i == b) for i in range(k))
            for d, c in enumerate(field._mul_coords(ea, eb)):
                if c:
                    out.append((a, b, d, c))
    return np.array(out, dtype=np.int64).reshape(-1, 4)


def octonion_triples(field: FieldSpec) -> np.ndarray:
    k, p = field.k, field.p
    ft = field_triples(field)
    out = []
    for i, j, sign, dst in STRUCTURE:
        for a, b, d, c in ft.tolist():
            out.append((i * k + a, j * k + b, dst * k + d, sign * c % p))
    return np.array(out, dtype=np.int64)


class PrimeAlgebra:
    """A split octonion algebra over ``field`` (kind "octonion") or ``field`` itself (kind "field")."""

    def __init__(self, field: FieldSpec, kind: str = "octonion"):
        if kind not in KINDS:
            raise DomainError(f"algebra kind must be one of {KINDS}, got {kind!r}")
        self.field = field
        self.kind = kind
        self.p = field.p
        self.k = field.k
        self.n = 8 * field.k if kind == "octonion" else field.k
        self.ftriples = field_triples(field)
        self.triples = octonion_triples(field) if kind == "octonion" else self.ftriples
        unit = np.zeros(self.n, dtype=np.int64)
        if kind == "octonion":
            unit[I0 * self.k] = 1
            unit[IM0 * self.k] = 1
        else:
            unit[0] = 1
        self.unit = unit

    def __repr__(self):
        return f"PrimeAlgebra({self.field.literal()!r}, {self.kind!r})"

    @property
    def size(self) -> int:
        return self.p**self.n

    # -- products ---------------------------------------------------------------

    def mul(self, X, Y) -> np.ndarray:
        return bilinear(np.ascontiguousarray(X, dtype=np.int64), np.ascontiguousarray(Y, dtype=np.int64),
                        self.triples, self.p, self.n)

    def fmul(self, A, B) -> np.ndarray:
        """Field products of (N, k) coordinate arrays."""
        return bilinear(np.ascontiguousarray(A, dtype=np.int64), np.ascontiguousarray(B, dtype=np.int64),
                        self.ftriples, self.p, self.k)

    def add(self, X, Y):
        return (X + Y) % self.p

    def sub(self, X, Y):
        return (X - Y) % self.p

    def neg(self, X):
        return -X % self.p

    def scalar(self, A) -> np.ndarray:
        """Embed (N, k) field values as multiples of the unit."""
        A = np.asarray(A, dtype=np.int64)
        if self.kind == "field":
            return A.copy()
        out = np.zeros((A.shape[0], self.n), dtype=np.int64)
        out[:, I0 * self.k:(I0 + 1) * self.k] = A
        out[:, IM0 * self.k:(IM0 + 1) * self.k] = A
        return out

    def scale(self, A, X) -> np.ndarray:
        """Multiply each row of X by the field value in the matching row of A."""
        if self.kind == "field":
            return self.fmul(A, X)
        k = self.k
        out = np.empty_like(X)
        for b in range(8):
            out[:, b * k:(b + 1) * k] = self.fmul(A, X[:, b * k:(b + 1) * k])
        return out

    def block(self, X, name: str) -> np.ndarray:
        b = POS[idx(name)]
        return X[:, b * self.k:(b + 1) * self.k]

    # -- trace / norm / inverse -------------------------------------------------

    def trace(self, X) -> np.ndarray:
        if self.kind == "field":
            raise DomainError("trace is defined for octonions only")
        return (self.block(X, "0") + self.block(X, "-0")) % self.p

    def norm(self, X) -> np.ndarray:
        if self.kind == "field":
            raise DomainError("norm is defined for octonions only")
        total = np.zeros((X.shape[0], self.k), dtype=np.int64)
        for a, b in (("-1", "1"), ("-wb", "wb"), ("-w", "w"), ("-0", "0")):
            total += self.fmul(self.block(X, a), self.block(X, b))
        return total % self.p

    @cached_property
    def _powers(self) -> np.ndarray:
        return self.p ** np.arange(self.k, dtype=np.int64)

    def codes(self, A) -> np.ndarray:
        """Integer codes of (N, k) field values (little-endian base p)."""
        return np.asarray(A, dtype=np.int64) @ self._powers

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[:, None] // self._powers[None, :]) % self.p

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """inverse_table[code] = code of the inverse (entry 0 unused)."""
        q = self.field.order
        check_capacity(q, "field elements")
        if self.k == 1:
            table = np.zeros(q, dtype=np.int64)
            for a in range(1, q):
                table[a] = pow(a, q - 2, q)
            return table
        table = np.zeros(q, dtype=np.int64)
        for code in range(1, q):
            table[code] = self.field.from_int(code).inverse().to_int()
        return table

    def finv(self, A) -> np.ndarray:
        """Field inverses of (N, k) values; zero rows map to zero."""
        return self.decode(self.inverse_table[self.codes(A)])

    def invertible(self, X) -> np.ndarray:
        if self.kind == "field":
            return X.any(axis=1)
        return self.norm(X).any(axis=1)

    def inverse(self, X) -> tuple[np.ndarray, np.ndarray]:
        """(X^-1, mask); rows outside the mask are zero.  Octonions use N(x)^-1 (T(x) - x)."""
        if self.kind == "field":
            return self.finv(X), X.any(axis=1)
        nrm = self.norm(X)
        mask = nrm.any(axis=1)
        conj = self.sub(self.scalar(self.trace(X)), X)
        inv = self.scale(self.finv(nrm), conj)
        inv[~mask] = 0
        return inv, mask

    def left_matrices(self, X) -> np.ndarray:
        """L[N, r, s] with L(a) v(y) = v(a y)."""
        X = np.asarray(X, dtype=np.int64)
        L = np.zeros((X.shape[0], self.n, self.n), dtype=np.int64)
        for i, j, k, c in self.triples.tolist():
            L[:, k, j] += c * X[:, i]
        return L % self.p

    def right_matrices(self, X) -> np.ndarray:
        """R[N, r, s] with R(a) v(y) = v(y a)."""
        X = np.asarray(X, dtype=np.int64)
        R = np.zeros((X.shape[0], self.n, self.n), dtype=np.int64)
        for i, j, k, c in self.triples.tolist():
            R[:, k, i] += c * X[:, j]
        return R % self.p

    # -- element sources --------------------------------------------------------

    def elements(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Elements number start..stop-1 in lexicographic order of the coordinate vector."""
        check_capacity(self.size, "algebra elements")
        stop = self.size if stop is None else min(stop, self.size)
        ids = np.arange(start, stop, dtype=np.int64)
        place = self.p ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return (ids[:, None] // place[None, :]) % self.p

    def random(self, rng, count: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(count, self.n), dtype=np.int64)

    # -- conversion to scalar objects -------------------------------------------

    def to_scalar(self, row):
        """Coordinate vector -> Octonion or FieldElem."""
        row = [int(v) for v in row]
        k = self.k
        if self.kind == "field":
            return self.field.from_coords(row)
        return Octonion([self.field.from_coords(row[b * k:(b + 1) * k]) for b in range(8)], self.field)

    def from_scalar(self, value) -> np.ndarray:
        if self.kind == "field":
            return np.array(value.coords(), dtype=np.int64)
        return np.array([c for coeff in value.coeffs for c in coeff.coords()], dtype=np.int64)
