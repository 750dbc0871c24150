"""Finite fields GF(p) and GF(p^k) with exact arithmetic.

Elements of GF(p^k) are stored as little-endian coordinate tuples in the
basis 1, y, ..., y^(k-1) of GF(p)[y] / (m(y)).  The integer code of an element
is ``sum(c_i * p**i)``; enumeration follows that code, so GF(4) enumerates as
``0, 1, y, y+1``.
"""

from __future__ import annotations

import os
import re
from functools import cached_property
from itertools import product

from .errors import CapacityError, DomainError, NotInvertibleError, ParseError

DEFAULT_MAX_ELEMS = 1 << 20

#: built-in moduli, little-endian and monic
DEFAULT_MODULI = {
    4: (1, 1, 1),  # y^2 + y + 1
    8: (1, 1, 0, 1),  # y^3 + y + 1
    9: (1, 0, 1),  # y^2 + 1
}


def max_elements() -> int:
    """Enumeration bound, overridable through ``OCTO_MAX_ELEMS``."""
    raw = os.environ.get("OCTO_MAX_ELEMS")
    if not raw:
        return DEFAULT_MAX_ELEMS
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"OCTO_MAX_ELEMS must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("OCTO_MAX_ELEMS must be positive")
    return value


def check_capacity(count: int, what: str = "elements") -> None:
    bound = max_elements()
    if count > bound:
        raise CapacityError(f"{count} {what} exceed the enumeration bound {bound}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomials over GF(p) as little-endian int lists ------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo m (m nonzero, any leading coefficient)."""
    a = _trim(list(a))
    m = _trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def is_irreducible(modulus: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    m = _trim([c % p for c in modulus])
    deg = len(m) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _poly_mod(m, divisor, p):
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, lower coefficients in code order."""
    if p**k in DEFAULT_MODULI and is_prime(p):
        return DEFAULT_MODULI[p**k]
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = tuple(low) + (1,)
        if low[0] != 0 and is_irreducible(cand, p):
            return cand
    raise DomainError(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


class FieldSpec:
    """A finite field GF(p^k). Immutable and hashable."""

    __slots__ = ("p", "k", "modulus", "__dict__")

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise DomainError(f"characteristic must be prime, got {p!r}")
        if not isinstance(k, int) or k < 1:
            raise DomainError(f"extension degree must be >= 1, got {k!r}")
        if k == 1:
            if modulus is not None:
                raise DomainError("a prime field takes no modulus")
        else:
            if modulus is None:
                modulus = find_irreducible(p, k)
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != k + 1:
                raise DomainError(f"modulus of GF({p}^{k}) needs {k + 1} coefficients")
            if any(not 0 <= c < p for c in modulus):
                raise DomainError(f"modulus coefficients must lie in [0, {p})")
            if modulus[-1] != 1:
                raise DomainError("modulus must be monic")
            if not is_irreducible(modulus, p):
                raise DomainError(f"modulus {modulus} is reducible over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @property
    def order(self) -> int:
        return self.p**self.k

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.literal()!r})"

    def __str__(self):
        return self.literal()

    def literal(self) -> str:
        if self.k == 1:
            return f"gf:{self.p}"
        text = f"gf:{self.p}^{self.k}"
        if self.modulus != find_irreducible(self.p, self.k):
            text += ":" + ",".join(map(str, self.modulus))
        return text

    # -- construction of elements ---------------------------------------------

    @cached_property
    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.k)

    @cached_property
    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.k - 1))

    @cached_property
    def generator(self) -> FieldElem:
        """The class of y (equals 1 * y only when k > 1; for k = 1 this is 1)."""
        if self.k == 1:
            return self.one
        return FieldElem(self, (0, 1) + (0,) * (self.k - 2))

    def __call__(self, value) -> FieldElem:
        return self.element(value)

    def element(self, value) -> FieldElem:
        """Coerce an int (image of the integers) or a FieldElem of this field."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise DomainError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.k - 1))
        raise DomainError(f"cannot coerce {value!r} into {self}")

    def from_coords(self, coords) -> FieldElem:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.k:
            raise DomainError(f"expected {self.k} coordinates, got {len(coords)}")
        if any(not 0 <= c < self.p for c in coords):
            raise DomainError(f"coordinates must lie in [0, {self.p})")
        return FieldElem(self, coords)

    def from_int(self, code: int) -> FieldElem:
        if not 0 <= code < self.order:
            raise DomainError(f"element code {code} outside [0, {self.order})")
        return FieldElem(self, tuple((code // self.p**i) % self.p for i in range(self.k)))

    def elements(self) -> list[FieldElem]:
        """All elements, ordered by integer code."""
        check_capacity(self.order)
        return [self.from_int(i) for i in range(self.order)]

    def random(self, rng) -> FieldElem:
        """Uniform element drawn from a ``numpy.random.Generator``."""
        return self.from_int(int(rng.integers(self.order)))

    # -- raw coordinate arithmetic --------------------------------------------

    def _mul_coords(self, a: tuple, b: tuple) -> tuple:
        p, k = self.p, self.k
        if k == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        m = self.modulus
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top] % p
            if c:
                shift = top - k
                for i in range(k):
                    prod[shift + i] -= c * m[i]
            prod[top] = 0
        return tuple(c % p for c in prod[:k])

    def _inv_coords(self, a: tuple) -> tuple:
        p, k = self.p, self.k
        if k == 1:
            if a[0] == 0:
                raise NotInvertibleError(f"0 has no inverse in {self}")
            return (pow(a[0], p - 2, p),)
        if not any(a):
            raise NotInvertibleError(f"0 has no inverse in {self}")
        # extended Euclid in GF(p)[y]: track s with s*a == r (mod m)
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [0], [1]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        # r1 is a nonzero constant
        c_inv = pow(r1[0], p - 2, p)
        s = _poly_mod([c * c_inv % p for c in s1], list(self.modulus), p)
        s = s + [0] * (k - len(s))
        return tuple(s)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_divmod(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while a and len(a) >= len(b):
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return _trim(q), a


class FieldElem:
    """Element of a :class:`FieldSpec`. Ints are accepted as the other operand."""

    __slots__ = ("field", "_c")

    def __init__(self, field: FieldSpec, coords: tuple):
        self.field = field
        self._c = coords

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise DomainError(f"mixed fields: {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def coords(self) -> tuple:
        return self._c

    def to_int(self) -> int:
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self._c))

    def is_zero(self) -> bool:
        return not any(self._c)

    def __bool__(self):
        return any(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self._c == other._c

    def __hash__(self):
        return hash((self.field, self._c))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self._c, other._c)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElem(self.field, tuple((a - b) % p for a, b in zip(self._c, other._c)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple(-a % p for a in self._c))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field._mul_coords(self._c, other._c))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field._inv_coords(self._c))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"FieldElem({self.field.literal()!r}, {self})"

    def __str__(self):
        if self.field.k == 1:
            return str(self._c[0])
        terms = []
        for i in range(self.field.k - 1, -1, -1):
            c = self._c[i]
            if not c:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"


def ff_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Functional form of ``a + b``, ``a - b`` and ``a * b``."""
    if not isinstance(a, FieldElem) or not isinstance(b, FieldElem):
        raise DomainError("ff_arith needs two field elements")
    if a.field != b.field:
        raise DomainError(f"mixed fields: {a.field} and {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown field operation {op!r}")


def ff_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def ff_enumerate(spec: FieldSpec) -> list[FieldElem]:
    return spec.elements()


_FIELD_RE = re.compile(r"^gf:(\d+)(?:\^(\d+))?(?::([\d,\s]+))?$")


def _prime_power(q: int, text: str) -> tuple[int, int]:
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    if q != 1:
        raise ParseError(f"field order must be a prime power, got {p**k * q}", text, 3)
    return p, k


def parse_field(text: str) -> FieldSpec:
    """Parse ``gf:q``, ``gf:p^k`` or ``gf:p^k:c0,c1,...,ck``; ``q`` may be any prime power."""
    stripped = text.strip()
    m = _FIELD_RE.match(stripped)
    if not m:
        raise ParseError("expected gf:p, gf:p^k or gf:p^k:c0,...,ck", text, 0)
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    if m.group(2) is None and p > 1 and not is_prime(p):
        # gf:q with q a prime power, e.g. gf:4 = gf:2^2
        p, k = _prime_power(p, text)
    modulus = None
    if m.group(3) is not None:
        if m.group(2) is None:
            raise ParseError("a modulus requires an exponent", text, m.start(3))
        try:
            modulus = tuple(int(c) for c in m.group(3).split(","))
        except ValueError:
            raise ParseError("bad modulus coefficient list", text, m.start(3)) from None
    if k > 1 and p**k > 1 << 40:
        raise CapacityError(f"GF({p}^{k}) is far beyond any supported size")
    return FieldSpec(p, k, modulus)
