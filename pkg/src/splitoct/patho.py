"""The (A, B)-family of additive maps f on Z2(t) with f(x) + x^2 f(x^-1) = 0.

Write a fraction as n/d and split both parts by parity of exponents,
n = P(t^2) + Q(t^2) t and d = R(t^2) + S(t^2) t.  Then

    f(n/d) = ((P R + Q S t) / d)^2 A + ((P S + Q R) / d)^2 B

where P, Q, R, S on the right are evaluated at t.  The map satisfies
f(1) = A, f(t) = B and f(a^2 b) = a^2 f(b), and it is t-linear only when
B = tA.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .ratfunc2 import Poly2, RatFunc2, _compress, clmul, spread


def _halves(bits: int) -> tuple[int, int]:
    return _compress(bits), _compress(bits >> 1)


def _evaluate(num: int, den: int, A: RatFunc2, B: RatFunc2) -> RatFunc2:
    # the formula applied to the representation num/den as given, reduced or not
    if num == 0:
        return RatFunc2._raw(0, 1)
    P, Q = _halves(num)
    R, S = _halves(den)
    u = clmul(P, R) ^ (clmul(clmul(Q, S), 2))
    v = clmul(P, S) ^ clmul(Q, R)
    # u^2 A + v^2 B over d^2, combined into one fraction
    top = clmul(clmul(spread(u), A.num), B.den) ^ clmul(clmul(spread(v), B.num), A.den)
    bottom = clmul(clmul(spread(den), A.den), B.den)
    return RatFunc2(top, bottom)


@dataclass(frozen=True)
class PathoMap:
    """f = g for the parameters f(1) = A, f(t) = B."""

    A: RatFunc2
    B: RatFunc2

    def __post_init__(self):
        for name in ("A", "B"):
            if not isinstance(getattr(self, name), RatFunc2):
                raise DomainError(f"{name} must be a RatFunc2")

    def __call__(self, x: RatFunc2) -> RatFunc2:
        return patho_eval(self, x)

    def is_linear(self) -> bool:
        """Whether f(x) = x f(1) for all x, which happens exactly when B = tA."""
        return self.B == RatFunc2.t_power(1) * self.A


def patho_eval(m: PathoMap, x: RatFunc2) -> RatFunc2:
    return _evaluate(x.num, x.den, m.A, m.B)


def patho_check_identity(m: PathoMap, x: RatFunc2) -> bool:
    if x.is_zero():
        raise DomainError("f(x) + x^2 f(1/x) needs x != 0")
    return (patho_eval(m, x) + x.square() * patho_eval(m, x.inverse())).is_zero()


def patho_check_square_law(m: PathoMap, a: RatFunc2, b: RatFunc2) -> bool:
    a2 = a.square()
    return patho_eval(m, a2 * b) == a2 * patho_eval(m, b)


def patho_check_additive(m: PathoMap, x: RatFunc2, y: RatFunc2) -> bool:
    return patho_eval(m, x + y) == patho_eval(m, x) + patho_eval(m, y)


def patho_welldef_check(m: PathoMap, x: RatFunc2, w: Poly2) -> bool:
    """Evaluate on the unreduced (n w)/(d w) and compare with the reduced evaluation."""
    if isinstance(w, int):
        w = Poly2(w)
    if w.is_zero():
        raise DomainError("well-definedness check needs w != 0")
    unreduced = _evaluate(clmul(x.num, w.bits), clmul(x.den, w.bits), m.A, m.B)
    return unreduced == patho_eval(m, x)


def anchor_failures(m: PathoMap, lo: int = -10, hi: int = 10) -> list[dict]:
    """Check f(t^2n) = t^2n A and f(t^(2n+1)) = t^2n B for lo <= n <= hi."""
    bad = []
    for n in range(lo, hi + 1):
        t2n = RatFunc2.t_power(2 * n)
        for power, expected in ((2 * n, t2n * m.A), (2 * n + 1, t2n * m.B)):
            got = patho_eval(m, RatFunc2.t_power(power))
            if got != expected:
                bad.append({"power": power, "expected": str(expected), "got": str(got)})
    return bad


@dataclass(frozen=True)
class LinearityWitness:
    f_t: RatFunc2
    t_f_1: RatFunc2

    @property
    def fires(self) -> bool:
        """True when f(t) != t f(1), so f is not x -> xq."""
        return self.f_t != self.t_f_1


def linearity_witness(m: PathoMap) -> LinearityWitness:
    t = RatFunc2.t_power(1)
    return LinearityWitness(patho_eval(m, t), t * patho_eval(m, RatFunc2._raw(1, 1)))
