"""Real quadratic arithmetic behind Kraemer's conjugacy class formulae.

Everything here is exact integer arithmetic.  Real quadratic fields are
addressed by their squarefree radicand ``D``; the field discriminant is ``D``
when ``D = 1 (mod 4)`` and ``4D`` otherwise.

Class numbers are counted as cycles of reduced indefinite binary quadratic
forms, and small norm equations are decided by testing proper equivalence of
forms against the principal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from sympy import factorint

MAX_RADICAND = 10**7


class NotSquarefree(ValueError):
    pass


class ExcludedField(ValueError):
    """Raised for m in {1, 3}: those rings have units beyond +-1."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    return all(e == 1 for e in factorint(n).values())


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(abs(n)))


def squarefree_part(n: int) -> int:
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out


def field_discriminant(D: int) -> int:
    """Discriminant of the real quadratic field Q(sqrt D)."""
    return D if D % 4 == 1 else 4 * D


def _check_radicand(D: int) -> None:
    if D < 2 or not is_squarefree(D):
        raise NotSquarefree(f"{D} is not a squarefree integer > 1")
    if D > MAX_RADICAND:
        raise ValueError(f"radicand {D} exceeds guard {MAX_RADICAND}")


# -- binary quadratic forms ---------------------------------------------------

Form = tuple[int, int, int]


def _is_reduced(f: Form, r: int) -> bool:
    # r = isqrt(disc); disc is never a square here, so strict inequalities
    # against sqrt(disc) become the integer bounds below.
    a, b, _ = f
    return 1 <= b <= r and r - b + 1 <= 2 * abs(a) <= r + b


def _rho(f: Form, d: int, r: int) -> Form:
    """One reduction step (a, b, c) -> (c, s, (s^2 - d) / 4c)."""
    _, b, c = f
    ac = abs(c)
    if ac <= r:
        s = r - ((r + b) % (2 * ac))
    else:
        s = (-b) % (2 * ac)
        if s > ac:
            s -= 2 * ac
    return (c, s, (s * s - d) // (4 * c))


def reduce_form(f: Form, d: int) -> Form:
    r = isqrt(d)
    for _ in range(10_000):
        if _is_reduced(f, r):
            return f
        f = _rho(f, d, r)
    raise RuntimeError(f"form {f} did not reduce")


def form_cycle(f: Form, d: int) -> list[Form]:
    """The rho-cycle through the reduced form equivalent to ``f``."""
    r = isqrt(d)
    start = reduce_form(f, d)
    cyc = [start]
    g = _rho(start, d, r)
    while g != start:
        cyc.append(g)
        g = _rho(g, d, r)
    return cyc


def reduced_forms(d: int) -> list[Form]:
    """All primitive reduced forms of discriminant d > 0."""
    r = isqrt(d)
    out = []
    for b in range(1, r + 1):
        if (b - d) % 2:
            continue
        ac = (b * b - d) // 4  # negative
        n = -ac
        lo, hi = r - b + 1, r + b
        for a in range(1, isqrt(n) + 1):
            if n % a:
                continue
            for aa in {a, n // a}:
                if not lo <= 2 * aa <= hi:
                    continue
                c = -(n // aa)
                for sa, sc in ((aa, c), (-aa, -c)):
                    if gcd(gcd(sa, b), sc) == 1:
                        out.append((sa, b, sc))
    return sorted(set(out))


def principal_form(d: int) -> Form:
    b = d % 2
    return (1, b, (b - d) // 4)


@lru_cache(maxsize=None)
def _principal_cycle(d: int) -> frozenset:
    return frozenset(form_cycle(principal_form(d), d))


@lru_cache(maxsize=None)
def narrow_class_number(D: int) -> int:
    d = field_discriminant(D)
    remaining = set(reduced_forms(d))
    r = isqrt(d)
    cycles = 0
    while remaining:
        f = remaining.pop()
        cycles += 1
        g = _rho(f, d, r)
        while g != f:
            remaining.discard(g)
            g = _rho(g, d, r)
    return cycles


# -- units --------------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalUnit:
    """epsilon = (a + b sqrt D) / 2 > 1, with a^2 - D b^2 = 4 * norm."""

    D: int
    a: int
    b: int
    norm: int


@lru_cache(maxsize=None)
def fundamental_unit(D: int) -> FundamentalUnit:
    """Smallest unit > 1 of the maximal order, from a continued fraction.

    Expands (1 + sqrt D)/2 when D = 1 (mod 4) and sqrt D otherwise; the first
    complete quotient whose denominator returns to its starting value yields
    the fundamental solution of the norm equation.
    """
    _check_radicand(D)
    if D % 4 == 1:
        P, Q = 1, 2
    else:
        P, Q = 0, 1
    Q0 = Q
    r = isqrt(D)
    # numerators G and denominators B of the convergents of (P0 + sqrt D)/Q0
    G2, G1 = -P, Q
    B2, B1 = 1, 0
    while True:
        q = (P + r) // Q
        G2, G1 = G1, q * G1 + G2
        B2, B1 = B1, q * B1 + B2
        P = q * Q - P
        Q = (D - P * P) // Q
        if Q == Q0:
            break
    x, y = G1, B1
    if Q0 == 1:
        # x^2 - D y^2 = +-1 in Z[sqrt D]; rescale to the (a + b sqrt D)/2 form
        a, b = 2 * x, 2 * y
    else:
        a, b = x, y
    n = a * a - D * b * b
    assert n in (4, -4), (D, a, b)
    return FundamentalUnit(D, a, b, n // 4)


@lru_cache(maxsize=None)
def class_number_real_quadratic(D: int) -> tuple[int, int]:
    """(wide, narrow) ideal class numbers of Q(sqrt D)."""
    _check_radicand(D)
    hn = narrow_class_number(D)
    if fundamental_unit(D).norm == -1:
        return hn, hn
    return hn // 2, hn


@lru_cache(maxsize=None)
def norm_represents(D: int, n: int) -> bool:
    """Is n the norm of an algebraic integer of Q(sqrt D)?

    Only |n| <= 3 is supported.  Such n can only be represented primitively
    by the norm form, so it suffices to test whether some form (n, b, c) of
    the field discriminant is properly equivalent to the principal form.
    """
    if not 1 <= abs(n) <= 3:
        raise ValueError("only |n| in {1, 2, 3} is supported")
    _check_radicand(D)
    d = field_discriminant(D)
    principal = _principal_cycle(d)
    m = abs(n)
    for b in range(2 * m):
        if (b * b - d) % (4 * m):
            continue
        c = (b * b - d) // (4 * n)
        if gcd(gcd(n, b), c) != 1:
            continue
        if reduce_form((n, b, c), d) in principal:
            return True
    return False


# -- imaginary field data for Kraemer's formulae --------------------------------

@dataclass(frozen=True)
class FieldInvariants:
    m: int
    ell: int
    Delta: int
    delta: int
    kplus_radicand: int
    h_kplus: int
    h_narrow: int


def _check_m(m: int) -> None:
    if m < 1 or not is_squarefree(m):
        raise NotSquarefree(f"m = {m} is not a squarefree positive integer")
    if m in (1, 3):
        raise ExcludedField(f"m = {m}: the ring of integers has extra units")


def imaginary_discriminant(m: int) -> int:
    return -m if m % 4 == 3 else -4 * m


def kplus_radicand(m: int, ell: int) -> int:
    if ell == 2:
        return m
    if ell == 3:
        return squarefree_part(3 * m)
    raise ValueError("ell must be 2 or 3")


@lru_cache(maxsize=None)
def field_invariants(m: int, ell: int) -> FieldInvariants:
    _check_m(m)
    Delta = imaginary_discriminant(m)
    D = kplus_radicand(m, ell)
    h, hn = class_number_real_quadratic(D)
    return FieldInvariants(
        m=m,
        ell=ell,
        Delta=Delta,
        delta=len(prime_divisors(Delta)),
        kplus_radicand=D,
        h_kplus=h,
        h_narrow=hn,
    )


@dataclass(frozen=True)
class Indicators:
    """Kraemer's indicator values; None marks an indicator that does not apply."""

    z: int
    q: int | None = None
    w: int | None = None
    x: int | None = None
    x_prime: int | None = None
    y: int | None = None


@lru_cache(maxsize=None)
def indicators(m: int, ell: int) -> Indicators:
    inv = field_invariants(m, ell)
    D = inv.kplus_radicand
    if ell == 2:
        unit = fundamental_unit(D)
        odd = [p for p in prime_divisors(m) if p != 2]
        return Indicators(
            z=2 if norm_represents(D, 2) else 1,
            q=2 if norm_represents(D, 2) or norm_represents(D, -2) else 1,
            w=2 if all(p % 8 in (1, 7) for p in odd) else 1,
            x=2 if unit.norm == 1 else 1,
            y=3 if unit.b % 2 == 0 else 1,
        )
    z = 2 if norm_represents(D, 3) else 1
    if m % 3:
        return Indicators(z=z)
    unit = fundamental_unit(D)
    return Indicators(
        z=z,
        x_prime=2 if unit.norm == 1 else 1,
        y=2 if unit.b % 3 == 0 else 1,
    )
