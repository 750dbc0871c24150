"""Polynomials over GF(2) and the rational function field Z2(t).

A :class:`Poly2` wraps a non-negative int whose bit ``i`` is the coefficient
of ``t**i``, so addition is XOR and the stored form is always canonical.
A :class:`RatFunc2` is a fully reduced fraction; over GF(2) every nonzero
polynomial is monic, so the reduced fraction is unique and equality is
structural.
"""

from __future__ import annotations

from .errors import CapacityError, DomainError, NotInvertibleError, ParseError

MAX_DEGREE = 4096


def _check_degree(bits: int) -> int:
    if bits.bit_length() - 1 > MAX_DEGREE:
        raise CapacityError(f"polynomial degree {bits.bit_length() - 1} exceeds cap {MAX_DEGREE}")
    return bits


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed GF(2) polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def cldivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise DomainError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def clgcd(a: int, b: int) -> int:
    while b:
        db = b.bit_length()
        while a.bit_length() >= db:
            a ^= b << (a.bit_length() - db)
        a, b = b, a
    return a


# spread the 8 bits of a byte onto even positions of 16 bits
_SPREAD = [0] * 256
for _i in range(256):
    _v = 0
    for _j in range(8):
        if _i >> _j & 1:
            _v |= 1 << (2 * _j)
    _SPREAD[_i] = _v
del _i, _j, _v


def spread(a: int) -> int:
    """P(t) -> P(t^2); coefficient i moves to index 2i."""
    out = 0
    shift = 0
    while a:
        out |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return out


def _compress(a: int) -> int:
    """Collect the even-index bits of a into consecutive positions."""
    out = 0
    i = 0
    while a:
        if a & 1:
            out |= 1 << i
        a >>= 2
        i += 1
    return out


class Poly2:
    """Polynomial over GF(2). Immutable; ``Poly2(0b1011)`` is ``t^3+t+1``."""

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise DomainError("Poly2 bit pattern must be non-negative")
        self.bits = _check_degree(bits)

    @classmethod
    def from_coeffs(cls, coeffs) -> Poly2:
        """Build from a little-endian 0/1 coefficient sequence."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise DomainError(f"GF(2) coefficient must be 0 or 1, got {c!r}")
            if c:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def monomial(cls, n: int) -> Poly2:
        return cls(1 << n)

    def coeffs(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    @property
    def degree(self) -> float | int:
        """Index of the top coefficient, ``-inf`` for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else float("-inf")

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.bits == other
        return isinstance(other, Poly2) and self.bits == other.bits

    def __hash__(self):
        return hash(("Poly2", self.bits))

    def __add__(self, other: Poly2) -> Poly2:
        return Poly2(self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other: Poly2) -> Poly2:
        return Poly2(clmul(self.bits, other.bits))

    def __divmod__(self, other: Poly2) -> tuple[Poly2, Poly2]:
        q, r = cldivmod(self.bits, other.bits)
        return Poly2(q), Poly2(r)

    def __floordiv__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> Poly2:
        out, base = 1, self.bits
        while n:
            if n & 1:
                out = _check_degree(clmul(out, base))
            n >>= 1
            if n:
                base = _check_degree(clmul(base, base))
        return Poly2(out)

    def gcd(self, other: Poly2) -> Poly2:
        return Poly2(clgcd(self.bits, other.bits))

    def even_odd_split(self) -> tuple[Poly2, Poly2]:
        """Return (P, Q) with self(t) = P(t^2) + Q(t^2) t."""
        return Poly2(_compress(self.bits)), Poly2(_compress(self.bits >> 1))

    def frobenius_expand(self) -> Poly2:
        """P(t) -> P(t^2), which equals P(t)^2 in characteristic 2."""
        return Poly2(spread(self.bits))

    def __repr__(self):
        return f"Poly2({self})"

    def __str__(self):
        return format_poly(self.bits)


def format_poly(bits: int) -> str:
    if bits == 0:
        return "0"
    terms = []
    for i in range(bits.bit_length() - 1, -1, -1):
        if bits >> i & 1:
            terms.append("1" if i == 0 else "t" if i == 1 else f"t^{i}")
    return "+".join(terms)


def poly_arith(a: Poly2, b: Poly2, op: str):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "gcd":
        return a.gcd(b)
    raise DomainError(f"unknown polynomial operation {op!r}")


def even_odd_split(u: Poly2) -> tuple[Poly2, Poly2]:
    return u.even_odd_split()


def frobenius_expand(u: Poly2) -> Poly2:
    return u.frobenius_expand()


class RatFunc2:
    """Element of Z2(t) as a reduced fraction num/den (both bit-packed)."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, Poly2):
            num = num.bits
        if isinstance(den, Poly2):
            den = den.bits
        if den == 0:
            raise DomainError("zero denominator")
        if num == 0:
            self.num, self.den = 0, 1
            return
        g = clgcd(num, den)
        if g != 1:
            num = cldivmod(num, g)[0]
            den = cldivmod(den, g)[0]
        self.num = _check_degree(num)
        self.den = _check_degree(den)

    @classmethod
    def _raw(cls, num: int, den: int) -> RatFunc2:
        # caller guarantees gcd(num, den) == 1 and den != 0
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def t_power(cls, n: int) -> RatFunc2:
        """t**n for any integer n."""
        return cls._raw(1 << n, 1) if n >= 0 else cls._raw(1, 1 << -n)

    @property
    def numerator(self) -> Poly2:
        return Poly2(self.num)

    @property
    def denominator(self) -> Poly2:
        return Poly2(self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def __bool__(self):
        return self.num != 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc2(other & 1)
        if not isinstance(other, RatFunc2):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFunc2", self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatFunc2):
            return other
        if isinstance(other, int):
            return RatFunc2(other & 1)
        if isinstance(other, Poly2):
            return RatFunc2._raw(other.bits, 1)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc2(self.num ^ other.num, self.den)
        return RatFunc2(clmul(self.num, other.den) ^ clmul(other.num, self.den), clmul(self.den, other.den))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num == 0 or other.num == 0:
            return RatFunc2._raw(0, 1)
        # cross-cancel keeps intermediates small
        g1 = clgcd(self.num, other.den)
        g2 = clgcd(other.num, self.den)
        n1 = cldivmod(self.num, g1)[0] if g1 != 1 else self.num
        d2 = cldivmod(other.den, g1)[0] if g1 != 1 else other.den
        n2 = cldivmod(other.num, g2)[0] if g2 != 1 else other.num
        d1 = cldivmod(self.den, g2)[0] if g2 != 1 else self.den
        return RatFunc2._raw(_check_degree(clmul(n1, n2)), _check_degree(clmul(d1, d2)))

    __rmul__ = __mul__

    def inverse(self) -> RatFunc2:
        if self.num == 0:
            raise NotInvertibleError("0 has no inverse in Z2(t)")
        return RatFunc2._raw(self.den, self.num)

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

    def square(self) -> RatFunc2:
        # squaring a reduced fraction keeps it reduced
        return RatFunc2._raw(spread(self.num), spread(self.den))

    def __pow__(self, n: int) -> RatFunc2:
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RatFunc2._raw(1, 1)
        if self.num == 0:
            return self
        return RatFunc2._raw((Poly2(self.num) ** n).bits, (Poly2(self.den) ** n).bits)

    def __repr__(self):
        return f"RatFunc2({format_ratfunc(self)!r})"

    def __str__(self):
        return format_ratfunc(self)


def rf_arith(x: RatFunc2, y: RatFunc2 | None, op: str) -> RatFunc2:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise DomainError(f"unknown rational function operation {op!r}")


class Z2t:
    """The coefficient field Z2(t), offering the same zero/one/element hooks as FieldSpec."""

    p = 2
    zero = RatFunc2._raw(0, 1)
    one = RatFunc2._raw(1, 1)

    def element(self, value) -> RatFunc2:
        if isinstance(value, RatFunc2):
            return value
        if isinstance(value, int):
            return RatFunc2._raw(value & 1, 1)
        if isinstance(value, str):
            return rf_parse(value)
        raise DomainError(f"cannot coerce {value!r} into Z2(t)")

    __call__ = element

    def __eq__(self, other):
        return isinstance(other, Z2t)

    def __hash__(self):
        return hash("Z2t")

    def __repr__(self):
        return "Z2t()"

    def __str__(self):
        return "Z2(t)"

    def random(self, rng, max_degree: int = 8) -> RatFunc2:
        return random_ratfunc(rng, max_degree)


Z2T = Z2t()


def random_poly(rng, max_degree: int) -> int:
    deg = int(rng.integers(0, max_degree + 1))
    return int(rng.integers(0, 1 << (deg + 1)))


def random_ratfunc(rng, max_degree: int = 8) -> RatFunc2:
    """Numerator/denominator degrees uniform in [0, max_degree], fair coefficient bits."""
    num = random_poly(rng, max_degree)
    den = 0
    while den == 0:
        den = random_poly(rng, max_degree)
    return RatFunc2(num, den)


# -- literal grammar ----------------------------------------------------------
#   ratfunc := sum ( "/" sum )? ;  sum := term ( "+" term )* ;
#   term := "0" | "1" | "t" ( "^" uint )? | "(" sum ")" ;


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def ratfunc(self) -> RatFunc2:
        num = self.sum()
        den = 1
        if self._peek() == "/":
            self.pos += 1
            den = self.sum()
        if self._peek():
            self._fail(f"unexpected {self._peek()!r}")
        if den == 0:
            raise DomainError(f"zero denominator in {self.text!r}")
        return RatFunc2(num, den)

    def sum(self) -> int:
        acc = self.term()
        while self._peek() == "+":
            self.pos += 1
            acc ^= self.term()
        return acc

    def term(self) -> int:
        ch = self._peek()
        if ch in ("0", "1"):
            self.pos += 1
            nxt = self.text[self.pos] if self.pos < len(self.text) else ""
            if nxt.isdigit():
                self._fail("coefficients must be 0 or 1")
            return int(ch)
        if ch == "t":
            self.pos += 1
            if self._peek() == "^":
                self.pos += 1
                self._skip()
                start = self.pos
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self.pos += 1
                if start == self.pos:
                    self._fail("expected exponent")
                n = int(self.text[start:self.pos])
                if n > MAX_DEGREE:
                    raise CapacityError(f"exponent {n} exceeds cap {MAX_DEGREE}")
                return 1 << n
            return 2
        if ch == "(":
            self.pos += 1
            value = self.sum()
            if self._peek() != ")":
                self._fail("expected ')'")
            self.pos += 1
            return value
        if not ch:
            self._fail("unexpected end of input")
        self._fail(f"unexpected {ch!r}")


def rf_parse(text: str) -> RatFunc2:
    """Parse a rational function literal such as ``(t^3+t+1)/(t^2+t)``."""
    return _Parser(text).ratfunc()


def poly_parse(text: str) -> Poly2:
    value = rf_parse(text)
    if value.den != 1:
        raise DomainError(f"{text!r} is not a polynomial")
    return Poly2(value.num)


def format_ratfunc(x: RatFunc2) -> str:
    num = format_poly(x.num)
    if x.den == 1:
        return num
    den = format_poly(x.den)
    if "+" in num:
        num = f"({num})"
    if "+" in den:
        den = f"({den})"
    return f"{num}/{den}"


def rf_print(x: RatFunc2) -> str:
    return format_ratfunc(x)
