"""Exact rational functions in one variable t over Q.

Polynomials are tuples of Fractions, constant term first, without trailing
zeros.  Rational functions are kept reduced with a monic denominator, so
equal functions have equal representations.
"""

from __future__ import annotations

from fractions import Fraction

Poly = tuple


class PoleAtZero(ValueError):
    pass


def _trim(p) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pscale(p: Poly, c) -> Poly:
    return _trim([c * x for x in p])


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for k in range(len(out) - 1, -1, -1):
        c = r[k + len(q) - 1] / lead
        out[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return _trim(out), _trim(r[: len(q) - 1] if len(q) > 1 else [])


def pgcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, pdivmod(p, q)[1]
    return pscale(p, 1 / p[-1]) if p else ()


def ppow(p: Poly, n: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(n):
        out = pmul(out, p)
    return out


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = pgcd(num, den) if num else den
        num, den = pdivmod(num, g)[0], pdivmod(den, g)[0]
        lead = den[-1]
        self.num = pscale(num, 1 / lead)
        self.den = pscale(den, 1 / lead)

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls((Fraction(c),))

    def __add__(self, other):
        other = _coerce(other)
        return RationalFunction(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)), pmul(self.den, other.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(pscale(self.num, -1), self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return RationalFunction(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(pmul(self.num, other.den), pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({_fmt(self.num)} / {_fmt(self.den)})"

    def is_zero(self) -> bool:
        return not self.num

    def series(self, n: int) -> list[Fraction]:
        """First n power-series coefficients (degrees 0..n-1)."""
        if not self.den or self.den[0] == 0:
            raise PoleAtZero("denominator vanishes at t = 0")
        d0 = self.den[0]
        out: list[Fraction] = []
        for k in range(n):
            acc = self.num[k] if k < len(self.num) else Fraction(0)
            for j in range(1, min(k, len(self.den) - 1) + 1):
                acc -= self.den[j] * out[k - j]
            out.append(acc / d0)
        return out

    def to_dict(self) -> dict:
        return {"num": [_json_num(c) for c in self.num], "den": [_json_num(c) for c in self.den]}


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.constant(x)
    raise TypeError(f"cannot combine RationalFunction with {type(x).__name__}")


def _json_num(c: Fraction):
    return int(c) if c.denominator == 1 else str(c)


def _fmt(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c:
            terms.append(f"{c}" + ("" if i == 0 else "*t" if i == 1 else f"*t^{i}"))
    return " + ".join(terms)


T = RationalFunction((0, 1))


def expand_series(f: RationalFunction, q_max: int, q_min: int = 3) -> list[Fraction]:
    """Power-series coefficients of f in degrees q_min..q_max."""
    if q_max < q_min:
        return []
    return f.series(q_max + 1)[q_min:]
