"""Split octonions over an arbitrary coefficient field.

The basis is ``e_i`` for ``i`` in ``{+-0, +-1, +-w, +-wb}`` (``w`` a primitive
cube root of unity acting on subscripts, ``wb = w^2``).  Coefficients are
stored in the fixed order

    (e_{-1}, e_wb, e_w, e_0, e_{-0}, e_{-w}, e_{-wb}, e_1)

which is also the row/column order of :data:`REFERENCE_TABLE`.  The unit is
``e_0 + e_{-0}``.

The coefficient field is any object with ``zero``, ``one`` and ``element``
(a :class:`~splitoct.fields.FieldSpec` or :data:`~splitoct.ratfunc2.Z2T`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .errors import DomainError, InapplicableError, NotInvertibleError, ParseError
from .fields import FieldElem, FieldSpec


class OctIndex(NamedTuple):
    sign: int  # +1 or -1
    tag: str  # "0", "1", "w", "wb"

    def negate(self) -> OctIndex:
        return OctIndex(-self.sign, self.tag)

    def times_w(self) -> OctIndex:
        return OctIndex(self.sign, _TAG_TIMES_W[self.tag])

    @property
    def name(self) -> str:
        if self.sign > 0:
            return f"e_{self.tag}"
        return f"e_{{-{self.tag}}}"

    def __str__(self):
        return self.name


# w acts on {1, w, wb} as the cyclic group of order 3 (w*w = wb, w*wb = 1) and fixes 0
_TAG_TIMES_W = {"0": "0", "1": "w", "w": "wb", "wb": "1"}

ORDER: tuple[OctIndex, ...] = (
    OctIndex(-1, "1"),
    OctIndex(1, "wb"),
    OctIndex(1, "w"),
    OctIndex(1, "0"),
    OctIndex(-1, "0"),
    OctIndex(-1, "w"),
    OctIndex(-1, "wb"),
    OctIndex(1, "1"),
)
POS = {ix: n for n, ix in enumerate(ORDER)}
NAMES = tuple(ix.name for ix in ORDER)


def idx(name: str) -> OctIndex:
    """``idx("-w")`` -> OctIndex(-1, "w")."""
    name = name.strip()
    sign = -1 if name.startswith("-") else 1
    tag = name.lstrip("+-")
    if tag not in _TAG_TIMES_W:
        raise DomainError(f"unknown octonion subscript {name!r}")
    return OctIndex(sign, tag)


# Multiplication table of the split octonions, rows = left factor.  A cell is
# "0" or an optionally negated basis vector, e.g. "-e-w" is -e_{-w}.
_REFERENCE_ROWS = (
    # e_{-1}  e_wb    e_w     e_0     e_{-0}   e_{-w}  e_{-wb}  e_1
    ("0",     "0",    "0",    "0",    "e-1",   "ewb",  "-ew",   "-e0"),   # e_{-1}
    ("0",     "0",    "-e-1", "ewb",  "0",     "0",    "-e-0",  "e-w"),   # e_wb
    ("0",     "e-1",  "0",    "ew",   "0",     "-e-0", "0",     "-e-wb"), # e_w
    ("e-1",   "0",    "0",    "e0",   "0",     "e-w",  "e-wb",  "0"),     # e_0
    ("0",     "ewb",  "ew",   "0",    "e-0",   "0",    "0",     "e1"),    # e_{-0}
    ("-ewb",  "0",    "-e0",  "0",    "e-w",   "0",    "e1",    "0"),     # e_{-w}
    ("ew",    "-e0",  "0",    "0",    "e-wb",  "-e1",  "0",     "0"),     # e_{-wb}
    ("-e-0",  "-e-w", "e-wb", "e1",   "0",     "0",    "0",     "0"),     # e_1
)


def _decode(cell: str):
    if cell == "0":
        return None
    sign = -1 if cell.startswith("-") else 1
    return (sign, idx(cell.lstrip("-")[1:]))


def _build_reference():
    return {
        (ORDER[r], ORDER[c]): _decode(cell)
        for r, row in enumerate(_REFERENCE_ROWS)
        for c, cell in enumerate(row)
    }


#: (left, right) -> (sign, OctIndex) or None, transcribed from the reference table
REFERENCE_TABLE: dict = _build_reference()

_RULE_SEEDS = (
    # (i) e_1 e_w = -e_w e_1 = e_{-wb}
    (idx("1"), idx("w"), 1, idx("-wb")),
    (idx("w"), idx("1"), -1, idx("-wb")),
    # (ii) e_1 e_0 = e_{-0} e_1 = e_1
    (idx("1"), idx("0"), 1, idx("1")),
    (idx("-0"), idx("1"), 1, idx("1")),
    # (iii) e_{-1} e_1 = -e_0 and e_0 e_0 = e_0
    (idx("-1"), idx("1"), -1, idx("0")),
    (idx("0"), idx("0"), 1, idx("0")),
)


def rules_table() -> dict:
    """Table generated from the three seed rules under subscript negation and w-multiplication."""
    table = {(a, b): None for a in ORDER for b in ORDER}
    transforms = []
    for neg in (False, True):
        for rot in range(3):

            def tf(i, neg=neg, rot=rot):
                for _ in range(rot):
                    i = i.times_w()
                return i.negate() if neg else i

            transforms.append(tf)
    conflicts = []
    for a, b, sign, c in _RULE_SEEDS:
        for tf in transforms:
            key = (tf(a), tf(b))
            value = (sign, tf(c))
            if table[key] is not None and table[key] != value:
                conflicts.append((key, table[key], value))
            table[key] = value
    if conflicts:  # pragma: no cover - the seeds are consistent
        raise AssertionError(f"inconsistent generation rules: {conflicts}")
    return table


def format_entry(entry) -> str:
    if entry is None:
        return "0"
    sign, c = entry
    return c.name if sign > 0 else "-" + c.name


def table_discrepancies() -> list[dict]:
    """Cells where the transcribed table and the rule-generated table differ."""
    generated = rules_table()
    out = []
    for a in ORDER:
        for b in ORDER:
            if REFERENCE_TABLE[(a, b)] != generated[(a, b)]:
                out.append(
                    {
                        "row": a.name,
                        "col": b.name,
                        "reference": format_entry(REFERENCE_TABLE[(a, b)]),
                        "rules": format_entry(generated[(a, b)]),
                    }
                )
    return out


def basis_mul(i: OctIndex, j: OctIndex):
    """Product of two basis vectors: ``(sign, index)`` or ``None`` for zero."""
    return REFERENCE_TABLE[(i, j)]


#: nonzero structure constants as position triples (i, j, sign, k)
STRUCTURE: tuple[tuple[int, int, int, int], ...] = tuple(
    (POS[a], POS[b], entry[0], POS[entry[1]])
    for (a, b), entry in sorted(REFERENCE_TABLE.items(), key=lambda kv: (POS[kv[0][0]], POS[kv[0][1]]))
    if entry is not None
)

I0 = POS[idx("0")]
IM0 = POS[idx("-0")]
_NORM_PAIRS = ((POS[idx("-1")], POS[idx("1")]), (POS[idx("-wb")], POS[idx("wb")]),
               (POS[idx("-w")], POS[idx("w")]), (IM0, I0))


class Octonion:
    """Immutable split octonion ``sum(coeffs[n] * ORDER[n])``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs, field=None):
        coeffs = tuple(coeffs)
        if len(coeffs) != 8:
            raise DomainError(f"an octonion has 8 coefficients, got {len(coeffs)}")
        if field is None:
            first = next((c for c in coeffs if not isinstance(c, int)), None)
            if first is None:
                raise DomainError("cannot infer the coefficient field from plain ints")
            field = getattr(first, "field", None)
            if field is None:
                from .ratfunc2 import Z2T

                field = Z2T
        self.field = field
        self.coeffs = tuple(field.element(c) for c in coeffs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field) -> Octonion:
        return cls((field.zero,) * 8, field)

    @classmethod
    def one(cls, field) -> Octonion:
        return cls.scalar(field.one, field)

    @classmethod
    def scalar(cls, value, field) -> Octonion:
        value = field.element(value)
        coeffs = [field.zero] * 8
        coeffs[I0] = value
        coeffs[IM0] = value
        return cls(coeffs, field)

    @classmethod
    def basis(cls, name, field, coeff=1) -> Octonion:
        """``Octonion.basis("-w", F)`` is e_{-w}; ``name`` may be an OctIndex."""
        index = name if isinstance(name, OctIndex) else idx(name)
        coeffs = [field.zero] * 8
        coeffs[POS[index]] = field.element(coeff)
        return cls(coeffs, field)

    @classmethod
    def combo(cls, field, terms: dict) -> Octonion:
        """Linear combination from ``{"0": 1, "-0": -1, "w": 1, ...}``."""
        coeffs = [field.zero] * 8
        for name, c in terms.items():
            n = POS[idx(name)]
            coeffs[n] = coeffs[n] + field.element(c)
        return cls(coeffs, field)

    @classmethod
    def random(cls, field, rng) -> Octonion:
        return cls([field.random(rng) for _ in range(8)], field)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: Octonion):
        if self.field != other.field:
            raise DomainError(f"mixed fields: {self.field} and {other.field}")

    def _lift(self, other):
        if isinstance(other, Octonion):
            self._check(other)
            return other
        return Octonion.scalar(other, self.field)

    def __add__(self, other):
        other = self._lift(other)
        return Octonion([a + b for a, b in zip(self.coeffs, other.coeffs)], self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return Octonion([a - b for a, b in zip(self.coeffs, other.coeffs)], self.field)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Octonion([-a for a in self.coeffs], self.field)

    def scale(self, c) -> Octonion:
        c = self.field.element(c)
        return Octonion([c * a for a in self.coeffs], self.field)

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            return self.scale(other)
        self._check(other)
        x, y = self.coeffs, other.coeffs
        out = [self.field.zero] * 8
        for i, j, sign, k in STRUCTURE:
            xi, yj = x[i], y[j]
            if xi and yj:
                term = xi * yj
                out[k] = out[k] + term if sign > 0 else out[k] - term
        return Octonion(out, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __getitem__(self, name) -> object:
        index = name if isinstance(name, OctIndex) else idx(name)
        return self.coeffs[POS[index]]

    # -- trace, norm, inverse -------------------------------------------------

    def trace(self):
        return self.coeffs[I0] + self.coeffs[IM0]

    def norm(self):
        c = self.coeffs
        total = self.field.zero
        for a, b in _NORM_PAIRS:
            total = total + c[a] * c[b]
        return total

    def is_invertible(self) -> bool:
        return bool(self.norm())

    def inverse(self) -> Octonion:
        n = self.norm()
        if not n:
            raise NotInvertibleError("octonion of zero norm is not invertible")
        return (Octonion.scalar(self.trace(), self.field) - self).scale(n.inverse())

    def __pow__(self, n: int) -> Octonion:
        # power-associative, so left-to-right products suffice
        if n < 0:
            return self.inverse() ** (-n)
        out = Octonion.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    # -- formatting -----------------------------------------------------------

    def literal(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": [_coeff_json(c) for c in self.coeffs]}

    def __repr__(self):
        return f"Octonion([{self.literal()}], {self.field})"

    def __str__(self):
        terms = []
        for c, name in zip(self.coeffs, NAMES):
            if c:
                s = str(c)
                terms.append(name if s == "1" else f"({s}){name}")
        return " + ".join(terms) if terms else "0"


def _coeff_json(c):
    if isinstance(c, FieldElem) and c.field.k == 1:
        return c.coords()[0]
    return str(c)


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    return x * y


def oct_trace(x: Octonion):
    return x.trace()


def oct_norm(x: Octonion):
    return x.norm()


def oct_inverse(x: Octonion) -> Octonion:
    return x.inverse()


def oct_square_check(x: Octonion) -> bool:
    """x*x == T(x) x - N(x) 1."""
    return x * x == x.scale(x.trace()) - Octonion.scalar(x.norm(), x.field)


def associator(x: Octonion, y: Octonion, z: Octonion) -> Octonion:
    """(x, y, z) = (xy)z - x(yz)."""
    return (x * y) * z - x * (y * z)


def moufang_check(x: Octonion, y: Octonion, a: Octonion) -> tuple[bool, bool, bool]:
    xax = (x * a) * x
    first = xax * y == x * (a * (x * y))
    second = y * xax == ((y * x) * a) * x
    third = (x * y) * (a * x) == (x * (y * a)) * x
    return first, second, third


@dataclass(frozen=True)
class HuaResult:
    lhs: Octonion
    rhs: Octonion
    equal: bool
    flexible_ok: bool  # (ab)a == a(ba)


def hua_check(a: Octonion, b: Octonion) -> HuaResult:
    """Evaluate both sides of ``a - (a^-1 + (b^-1 - a)^-1)^-1 = aba``.

    Raises InapplicableError when any inverse along the way does not exist.
    """
    one = Octonion.one(a.field)
    for label, value in (("a", a), ("b", b), ("ab-1", a * b - one)):
        if not value.is_invertible():
            raise InapplicableError(f"{label} is not invertible")
    inner = b.inverse() - a
    if not inner.is_invertible():
        raise InapplicableError("b^-1 - a is not invertible")
    outer = a.inverse() + inner.inverse()
    if not outer.is_invertible():
        raise InapplicableError("a^-1 + (b^-1 - a)^-1 is not invertible")
    lhs = a - outer.inverse()
    rhs = (a * b) * a
    return HuaResult(lhs, rhs, lhs == rhs, rhs == a * (b * a))


def generated_words(x: Octonion, y: Octonion, depth: int) -> list[Octonion]:
    """Products and inverses of words in {x, y} up to the given nesting depth (deduplicated)."""
    if not 0 <= depth <= 3:
        raise DomainError("word depth must be between 0 and 3")
    x._check(y)
    words = [x] if x == y else [x, y]
    seen = set(words)
    frontier = list(words)
    for _ in range(depth):
        new = []

        def add(w):
            if w not in seen:
                seen.add(w)
                new.append(w)

        for u in words:
            for v in frontier:
                add(u * v)
                add(v * u)
        for u in frontier:
            if u.is_invertible():
                add(u.inverse())
        words.extend(new)
        frontier = new
    return words


def span_basis(elements: list[Octonion]) -> list[Octonion]:
    """A maximal linearly independent subset (over the coefficient field)."""
    basis: list[Octonion] = []
    reduced: list[tuple[int, list]] = []  # (pivot position, echelon vector)
    for e in elements:
        v = list(e.coeffs)
        for piv, row in reduced:
            if v[piv]:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        piv = next((n for n, c in enumerate(v) if c), None)
        if piv is not None:
            reduced.append((piv, v))
            basis.append(e)
    return basis


def artin_word_check(x: Octonion, y: Octonion, depth: int = 2) -> bool:
    """Every associator of three words generated by x, y vanishes.

    The associator is trilinear, so checking it on a basis of the span of the
    generated words covers every triple of words.
    """
    words = generated_words(x, y, depth)
    basis = span_basis(words)
    return all(associator(a, b, c).is_zero() for a, b, c in product(basis, repeat=3))


# -- literals -----------------------------------------------------------------

_ELEM_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(y(?:\^(\d+))?)?\s*")


def parse_field_element(field, text: str):
    """Literal for one coefficient: an integer, a polynomial in ``y`` for GF(p^k), or a Z2(t) literal."""
    if not isinstance(field, FieldSpec):
        return field.element(text.strip())
    src = text.strip()
    if not src:
        raise ParseError("empty coefficient", text, 0)
    total = field.zero
    pos = 0
    while pos < len(src):
        m = _ELEM_TERM.match(src, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ParseError("bad field element literal", text, pos)
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            power = int(m.group(4)) if m.group(4) else 1
            term = field.generator**power if field.k > 1 else None
            if term is None:
                raise ParseError("'y' is only meaningful in an extension field", text, pos)
            total = total + term * (sign * coef)
        else:
            total = total + field.element(sign * coef)
        pos = m.end()
        if pos < len(src) and src[pos] not in "+-":
            raise ParseError("expected '+' or '-'", text, pos)
    return total


def parse_octonion(field, text: str) -> Octonion:
    parts = text.split(",")
    if len(parts) != 8:
        raise ParseError(f"expected 8 comma-separated coefficients, got {len(parts)}", text, 0)
    return Octonion([parse_field_element(field, part) for part in parts], field)


def octonion_from_json(field, data: dict) -> Octonion:
    coeffs = data["coeffs"]
    if len(coeffs) != 8:
        raise DomainError("JSON octonion needs 8 coefficients")
    return Octonion([c if isinstance(c, int) else parse_field_element(field, c) for c in coeffs], field)


def table_json() -> dict:
    """The multiplication table as nested ``{row: {col: entry}}`` strings."""
    return {
        "order": list(NAMES),
        "rows": {a.name: {b.name: format_entry(REFERENCE_TABLE[(a, b)]) for b in ORDER} for a in ORDER},
    }
