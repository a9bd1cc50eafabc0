"""Independent oracles for the number-theory checks.

None of these go through reduced quadratic forms or the continued fraction
code in the package.
"""

import math
from math import isqrt

import numpy as np

from sympy import kronecker_symbol
from sympy.solvers.diophantine.diophantine import diop_DN

from tatecoh.numtheory import field_discriminant


def unit_oracle(D):
    """Smallest unit > 1 among sympy's solutions of a^2 - D b^2 = +-4."""
    cands = []
    for N in (4, -4):
        for x, y in diop_DN(D, N):
            if y:
                cands.append((abs(y), abs(x), N // 4))
    b, a, norm = min(cands)
    return a, b, norm


def class_number_oracle(D):
    """Analytic class number formula: h log(eps) = -1/2 sum chi(a) log sin(pi a / d)."""
    d = field_discriminant(D)
    a, b, _ = unit_oracle(D)
    log_eps = math.log((a + b * math.sqrt(D)) / 2)
    s = -sum(int(kronecker_symbol(d, k)) * math.log(math.sin(math.pi * k / d)) for k in range(1, d))
    h = s / (2 * log_eps)
    assert abs(h - round(h)) < 1e-6
    return round(h)


def norm_oracle(D, n):
    N = 4 * n if D % 4 == 1 else n
    return bool(diop_DN(D, N))


def norm_found_by_search(D, n, y_max=2000):
    """One-sided: True if a small solution of the norm equation exists."""
    N = 4 * n if D % 4 == 1 else n
    return any(N + D * y * y >= 0 and isqrt(N + D * y * y) ** 2 == N + D * y * y for y in range(y_max))


def smaller_unit_exists(D, b_limit):
    for b in range(1, b_limit):
        for s in (4, -4):
            t = D * b * b + s
            if t > 0 and isqrt(t) ** 2 == t:
                return True
    return False


# -- ideal enumeration ----------------------------------------------------------
#
# Ideals of O_K are lattices in the basis (1, w), w = sqrt(D) or (1 + sqrt(D))/2,
# stored in Hermite form (a, b, c): Z*a + Z*(b + c*w).

def _pell_one(D):
    return min((x, y) for x, y in diop_DN(D, 1) if y > 0)


def _omega_sq(D):
    # w^2 = p + q*w
    return (D, 0) if D % 4 != 1 else ((D - 1) // 4, 1)


def _mul(D, u, v):
    p, q = _omega_sq(D)
    s1, t1 = u
    s2, t2 = v
    return (s1 * s2 + t1 * t2 * p, s1 * t2 + s2 * t1 + t1 * t2 * q)


def _hnf(vectors):
    vecs = [tuple(v) for v in vectors]
    w = (0, 0)
    for v in vecs:
        g, x, y = _xgcd(w[1], v[1])
        w = (x * w[0] + y * v[0], g)
    if w[1] < 0:
        w = (-w[0], -w[1])
    c = w[1]
    a = 0
    for v in vecs:
        a = math.gcd(a, v[0] - (v[1] // c) * w[0])
    return a, w[0] % a, c


def _xgcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def _conjugate(D, ideal):
    a, b, c = ideal
    # conj(w) = -w (D != 1 mod 4) or 1 - w
    g = (b, -c) if D % 4 != 1 else (b + c, -c)
    return _hnf([(a, 0), g])


def _ideal_mul(D, I, J):
    gi = [(I[0], 0), (I[1], I[2])]
    gj = [(J[0], 0), (J[1], J[2])]
    return _hnf([_mul(D, u, v) for u in gi for v in gj])


def _contains(ideal, s, t):
    a, b, c = ideal
    if t % c:
        return False
    return (s - (t // c) * b) % a == 0


def _elements_of_norm(D, n):
    """Elements s + t w of norm n with |a|, |a'| <= sqrt(|n| eps).

    Up to sign conventions every element of norm +-n has an associate in this box.
    """
    a, b, _ = unit_oracle(D)
    eps = (a + b * math.sqrt(D)) / 2
    half = D % 4 == 1
    N = 4 * n if half else n
    ymax = int(2 * math.sqrt(abs(n) * eps) / math.sqrt(D)) + 2
    out = []
    for lo in range(0, ymax + 1, 1 << 20):
        Y = np.arange(lo, min(lo + (1 << 20), ymax + 1), dtype=np.int64)
        v = N + D * Y * Y
        r = np.sqrt(np.maximum(v, 0).astype(float)).round().astype(np.int64)
        for k in np.nonzero((v >= 0) & (np.abs(r * r - v) <= 2 * r + 1))[0]:
            y, val = int(Y[k]), int(v[k])
            x = isqrt(val)
            if x * x != val:
                continue
            for X in {x, -x}:
                if not half:
                    out.append((X, y))
                elif (X - y) % 2 == 0:
                    out.append(((X - y) // 2, y))
    return out


def _is_principal(D, ideal):
    a, b, c = ideal
    prim = (a // c, b // c, 1)
    n = prim[0]
    return any(_contains(prim, s, t) for sign in (1, -1) for s, t in _elements_of_norm(D, sign * n))


def class_number_by_ideals(D):
    """Count ideal classes among primitive ideals of norm below the Minkowski bound."""
    d = field_discriminant(D)
    p, q = _omega_sq(D)
    reps = []
    for a in range(1, int(math.sqrt(d) / 2) + 1):
        for b in range(a):
            # N(b + w) = b^2 + b*tr(w) - p  with tr(w) = q
            if (b * b + b * q - p) % a == 0:
                I = (a, b, 1)
                if not any(_is_principal(D, _ideal_mul(D, I, _conjugate(D, J))) for J in reps):
                    reps.append(I)
    return len(reps)


def norm_by_exhaustive_search(D, n):
    """Whether some integer of Q(sqrt D) has norm n.

    The associate search fixes |N| only; a unit of norm -1 swaps the sign.
    """
    if _elements_of_norm(D, n):
        return True
    return unit_oracle(D)[2] == -1 and bool(_elements_of_norm(D, -n))
