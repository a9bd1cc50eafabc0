"""Brute-force finite permutation groups.

Groups are small (a few thousand elements at most), so everything is done
by explicit enumeration: closures, conjugacy classes, Sylow subgroups by
greedy extension inside normalizers, quotients through the action on cosets.

Permutations are stored internally as tuples of 0-based images.  The public
constructors take 1-based image lists, or cycles via :func:`perm_from_cycles`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd

from sympy import factorint

CLOSURE_GUARD = 10_000

Perm = tuple


class ClosureTooLarge(RuntimeError):
    pass


class InvalidPermutation(ValueError):
    pass


# -- raw permutation arithmetic ---------------------------------------------

def _mul(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return tuple(q[i] for i in p)


def _inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _conj(p: Perm, g: Perm) -> Perm:
    """g^-1 p g."""
    return _mul(_mul(_inv(g), p), g)


def _order(p: Perm) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        out = out * n // gcd(out, n)
    return out


def perm_from_cycles(degree: int, cycles) -> list[int]:
    """1-based image list of the permutation with the given 1-based cycles."""
    img = list(range(1, degree + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return img


def _closure(gens: list[Perm], identity: Perm, guard: int = CLOSURE_GUARD) -> frozenset:
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > guard:
                        raise ClosureTooLarge(f"closure exceeds {guard} elements")
        frontier = nxt
    return frozenset(elems)


class PermGroup:
    """Finite group of permutations of {0..degree-1} with enumerated elements."""

    def __init__(self, degree: int, generators, elements=None):
        self.degree = degree
        self.generators = tuple(generators)
        self._elements = elements

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    @property
    def elements(self) -> frozenset:
        if self._elements is None:
            self._elements = _closure(list(self.generators), self.identity)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, p):
        return p in self.elements

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    # -- subgroups -------------------------------------------------------

    def subgroup(self, gens) -> "PermGroup":
        gens = [g for g in gens if g != self.identity]
        return PermGroup(self.degree, gens)

    def _from_set(self, elems) -> "PermGroup":
        elems = frozenset(elems)
        return PermGroup(self.degree, _generators_of(elems, self.identity), elems)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.elements <= other.elements

    @cached_property
    def is_abelian(self) -> bool:
        gs = self.generators
        return all(_mul(a, b) == _mul(b, a) for a, b in combinations(gs, 2))

    @cached_property
    def element_orders(self) -> Counter:
        return Counter(_order(p) for p in self.elements)

    def conjugacy_classes(self) -> list[frozenset]:
        left = set(self.elements)
        out = []
        while left:
            x = min(left)
            cls = frozenset(_conj(x, g) for g in self.elements)
            out.append(cls)
            left -= cls
        return out

    def normal_closure(self, elems) -> "PermGroup":
        """Smallest normal subgroup of self containing elems."""
        gens = [x for x in elems if x != self.identity]
        current = _closure(gens, self.identity)
        while True:
            extra = {_conj(x, g) for x in gens for g in self.generators} - current
            if not extra:
                return PermGroup(self.degree, gens, current)
            gens += sorted(extra)
            current = _closure(gens, self.identity)

    def is_normal(self, H: "PermGroup") -> bool:
        return all(_conj(h, g) in H.elements for h in H.generators for g in self.generators)

    def normalizer(self, H: "PermGroup") -> "PermGroup":
        hs = H.elements
        hg = H.generators
        return self._from_set(
            g for g in self.elements if all(_conj(h, g) in hs for h in hg)
        )

    def centralizer(self, elems) -> "PermGroup":
        elems = list(elems)
        return self._from_set(
            g for g in self.elements if all(_mul(g, x) == _mul(x, g) for x in elems)
        )

    def center(self) -> "PermGroup":
        return self.centralizer(self.generators)

    def derived_subgroup(self) -> "PermGroup":
        comms = [
            _mul(_mul(_inv(a), _inv(b)), _mul(a, b))
            for a in self.generators
            for b in self.generators
        ]
        return self.normal_closure(comms)

    def conjugate(self, H: "PermGroup", g: Perm) -> "PermGroup":
        return PermGroup(
            self.degree,
            [_conj(h, g) for h in H.generators],
            frozenset(_conj(h, g) for h in H.elements),
        )

    # -- Sylow theory ----------------------------------------------------

    def sylow(self, ell: int) -> "PermGroup":
        """One Sylow ell-subgroup, grown one factor of ell at a time."""
        target = ell ** factorint(self.order).get(ell, 0)
        P = self._from_set({self.identity})
        while P.order < target:
            N = self.normalizer(P)
            pe = P.elements
            for g in sorted(N.elements):
                if g not in pe and _pow(g, ell) in pe:
                    P = self._from_set(_closure(list(P.generators) + [g], self.identity))
                    break
            else:
                raise AssertionError("Sylow extension failed")
        return P

    def all_sylows(self, ell: int) -> list["PermGroup"]:
        P = self.sylow(ell)
        seen = {}
        for g in self.elements:
            Q = frozenset(_conj(p, g) for p in P.elements)
            seen.setdefault(Q, None)
        out = [self._from_set(Q) for Q in sorted(seen, key=sorted)]
        assert len(out) % ell == 1 % ell, "Sylow count not 1 mod ell"
        return out

    # -- quotients -------------------------------------------------------

    def quotient(self, N: "PermGroup") -> "PermGroup":
        """G/N realized by the right action of G on the cosets of N."""
        cosets = []
        index = {}
        for g in sorted(self.elements):
            if g in index:
                continue
            c = frozenset(_mul(n, g) for n in N.elements)
            for x in c:
                index[x] = len(cosets)
            cosets.append(c)
        k = len(cosets)
        reps = [min(c) for c in cosets]
        gens = []
        for g in self.generators:
            gens.append(tuple(index[_mul(r, g)] for r in reps))
        return PermGroup(k, [p for p in gens if p != tuple(range(k))])


def _pow(p: Perm, n: int) -> Perm:
    out = tuple(range(len(p)))
    for _ in range(n):
        out = _mul(out, p)
    return out


def _generators_of(elems: frozenset, identity: Perm) -> tuple:
    """A small generating set for an enumerated subgroup."""
    gens = []
    span = {identity}
    for x in sorted(elems, key=lambda p: (-_order(p), p)):
        if x not in span:
            gens.append(x)
            span = set(_closure(gens, identity))
            if len(span) == len(elems):
                break
    return tuple(gens)


def group_from_generators(degree: int, gens) -> PermGroup:
    """Group generated by 1-based image lists on {1..degree}."""
    if degree < 1:
        raise InvalidPermutation("degree must be positive")
    conv = []
    for g in gens:
        g = list(g)
        if sorted(g) != list(range(1, degree + 1)):
            raise InvalidPermutation(f"{g} is not a permutation of 1..{degree}")
        conv.append(tuple(x - 1 for x in g))
    G = PermGroup(degree, [p for p in conv if p != tuple(range(degree))])
    G.elements  # enforce the guard eagerly
    return G


# -- catalog types -----------------------------------------------------------

@dataclass(frozen=True)
class CatalogType:
    tag: str
    params: tuple = ()

    @property
    def order(self) -> int | None:
        t, p = self.tag, self.params
        if t == "Trivial":
            return 1
        if t == "Cyclic":
            return p[0]
        if t == "Dihedral":
            return 2 * p[0]
        if t == "KleinFour":
            return 4
        if t == "A4":
            return 12
        if t == "S4":
            return 24
        if t == "A5":
            return 60
        if t == "S5":
            return 120
        if t == "DirectProduct":
            return p[0].order * p[1].order
        if t == "SemidirectElem2n":
            return 2 ** p[0] * p[1].order
        if t == "Unknown":
            return p[0]
        raise ValueError(t)

    def __str__(self):
        t, p = self.tag, self.params
        if t == "Trivial":
            return "1"
        if t == "Cyclic":
            return f"Z{p[0]}"
        if t == "Dihedral":
            return f"D{p[0]}"
        if t == "KleinFour":
            return "D2"
        if t in ("A4", "S4", "A5", "S5"):
            return t
        if t == "DirectProduct":
            return f"{p[0]}x{p[1]}"
        if t == "SemidirectElem2n":
            return f"(Z2)^{p[0]}:{p[1]}"
        return f"Unknown({p[0]})"


TRIVIAL = CatalogType("Trivial")
KLEIN_FOUR = CatalogType("KleinFour")
A4 = CatalogType("A4")
S4 = CatalogType("S4")
A5 = CatalogType("A5")
S5 = CatalogType("S5")


def Cyclic(n: int) -> CatalogType:
    return TRIVIAL if n == 1 else CatalogType("Cyclic", (n,))


def Dihedral(n: int) -> CatalogType:
    return CatalogType("Dihedral", (n,))


def DirectProduct(a: CatalogType, b: CatalogType) -> CatalogType:
    return CatalogType("DirectProduct", (a, b))


def SemidirectElem2n(k: int, t: CatalogType) -> CatalogType:
    return CatalogType("SemidirectElem2n", (k, t))


def Unknown(order: int, signature) -> CatalogType:
    return CatalogType("Unknown", (order, signature))


_NAMES = {"1": TRIVIAL, "D2": KLEIN_FOUR, "A4": A4, "S4": S4, "A5": A5, "S5": S5}


def parse_catalog_type(s: str) -> CatalogType:
    """Inverse of ``str`` for the labels used in serialized graphs."""
    if s in _NAMES:
        return _NAMES[s]
    if s.startswith("(Z2)^"):
        k, rest = s[5:].split(":", 1)
        return SemidirectElem2n(int(k), parse_catalog_type(rest))
    if "x" in s:
        a, b = s.split("x", 1)
        return DirectProduct(parse_catalog_type(a), parse_catalog_type(b))
    if s[0] == "Z":
        return Cyclic(int(s[1:]))
    if s[0] == "D":
        return Dihedral(int(s[1:]))
    raise ValueError(f"unparseable type label {s!r}")


def _sym_gens(n: int) -> list[list[int]]:
    if n < 2:
        return []
    return [perm_from_cycles(n, [list(range(1, n + 1))]), perm_from_cycles(n, [[1, 2]])]


def _alt_gens(n: int) -> list[list[int]]:
    return [perm_from_cycles(n, [[1, 2, i]]) for i in range(3, n + 1)]


def _direct(g1: tuple[int, list], g2: tuple[int, list]) -> tuple[int, list]:
    d1, a = g1
    d2, b = g2
    gens = [list(p) + list(range(d1 + 1, d1 + d2 + 1)) for p in a]
    gens += [list(range(1, d1 + 1)) + [x + d1 for x in p] for p in b]
    return d1 + d2, gens


def _dihedral_gens(n: int) -> tuple[int, list]:
    rot = [(i % n) + 1 for i in range(1, n + 1)]
    ref = [((-i) % n) + 1 for i in range(n)]
    return n, [rot, ref]


def _signed_perm_gens(n: int, even: bool) -> tuple[int, list]:
    """Signed permutations of n letters on 2n points; even=True keeps an even number of sign flips."""
    def lift(perm):  # perm: 1-based images on n letters
        return list(perm) + [x + n for x in perm]

    gens = [lift(p) for p in _sym_gens(n)]
    flip1 = list(range(1, 2 * n + 1))
    flip1[0], flip1[n] = n + 1, 1
    if even:
        flip2 = list(flip1)
        flip2[1], flip2[n + 1] = n + 2, 2
        gens.append(flip2)
    else:
        gens.append(flip1)
    return 2 * n, gens


def _catalog_builders() -> dict:
    c2 = (2, [[2, 1]])
    klein = (4, [perm_from_cycles(4, [[1, 2], [3, 4]]), perm_from_cycles(4, [[1, 3], [2, 4]])])
    out = {
        A4: (4, _alt_gens(4)),
        S4: (4, _sym_gens(4)),
        A5: (5, _alt_gens(5)),
        S5: (5, _sym_gens(5)),
        DirectProduct(Cyclic(2), KLEIN_FOUR): _direct(c2, klein),
        DirectProduct(Cyclic(2), A4): _direct(c2, (4, _alt_gens(4))),
        DirectProduct(Cyclic(2), A5): _direct(c2, (5, _alt_gens(5))),
        DirectProduct(Cyclic(2), S5): _direct(c2, (5, _sym_gens(5))),
        SemidirectElem2n(3, Dihedral(3)): _signed_perm_gens(3, even=False),
        SemidirectElem2n(3, S4): _signed_perm_gens(4, even=True),
        SemidirectElem2n(4, S4): _signed_perm_gens(4, even=False),
    }
    for n in range(4, 13, 2):
        out[DirectProduct(Cyclic(2), Dihedral(n))] = _direct(c2, _dihedral_gens(n))
    return out


def _signature(G: PermGroup) -> tuple:
    return (
        G.order,
        G.is_abelian,
        tuple(sorted(G.element_orders.items())),
        G.derived_subgroup().order,
    )


def _build_catalog() -> dict:
    table = {}
    for t, (deg, gens) in _catalog_builders().items():
        G = group_from_generators(deg, gens)
        assert G.order == t.order, (t, G.order)
        sig = _signature(G)
        assert sig not in table, f"catalog signatures collide: {t} vs {table[sig]}"
        table[sig] = t
    return table


_CATALOG = _build_catalog()


def _is_dihedral(G: PermGroup) -> bool:
    n = G.order // 2
    if G.order % 2 or n < 3:
        return False
    rots = [g for g in G.elements if _order(g) == n]
    if not rots:
        return False
    r = rots[0]
    cyc = set(_closure([r], G.identity))
    r_inv = _inv(r)
    return all(_order(s) == 2 and _conj(r, s) == r_inv for s in G.elements - cyc)


def identify_catalog_type(G: PermGroup) -> CatalogType:
    n = G.order
    if n == 1:
        return TRIVIAL
    orders = G.element_orders
    if G.is_abelian:
        if n in orders:
            return Cyclic(n)
        if n == 4:
            return KLEIN_FOUR
    if _is_dihedral(G):
        return Dihedral(n // 2)
    sig = _signature(G)
    if sig in _CATALOG:
        return _CATALOG[sig]
    return Unknown(n, sig)


def isomorphic(G: PermGroup, H: PermGroup) -> bool:
    """Isomorphism decided through the catalog; unidentified groups never match."""
    if G.order != H.order:
        return False
    a, b = identify_catalog_type(G), identify_catalog_type(H)
    return a == b and a.tag != "Unknown"


# -- ell-local structure ----------------------------------------------------

def is_l_normal(G: PermGroup, ell: int) -> bool:
    """Zassenhaus ell-normality, by enumerating all Sylow ell-subgroups."""
    if G.order % ell:
        return True
    sylows = G.all_sylows(ell)
    Z = sylows[0].center().elements
    for Q in sylows:
        if Z <= Q.elements and Q.center().elements != Z:
            return False
    return True


def largest_normal_coprime_subgroup(G: PermGroup, ell: int) -> PermGroup:
    """O_{ell'}(G): the join of all normal subgroups of order prime to ell."""
    current = frozenset({G.identity})
    for cls in G.conjugacy_classes():
        x = min(cls)
        if x in current or _order(x) % ell == 0:
            continue
        N = G.normal_closure([x])
        if N.order % ell:
            current = _closure(
                list(_generators_of(current, G.identity)) + list(N.generators), G.identity
            )
    return G._from_set(current)


def normal_coprime_subgroups(G: PermGroup, ell: int) -> list[PermGroup]:
    """All normal subgroups of order prime to ell (they all lie in O_{ell'})."""
    O = largest_normal_coprime_subgroup(G, ell)
    closures = {}
    for cls in G.conjugacy_classes():
        x = min(cls)
        if x in O.elements and x != G.identity:
            N = G.normal_closure([x])
            closures[N.elements] = N
    found = {frozenset({G.identity})}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for N in closures.values():
                J = _closure(list(_generators_of(S, G.identity)) + list(N.generators), G.identity)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return [G._from_set(S) for S in sorted(found, key=lambda s: (len(s), sorted(s)))]


def sylow_center_normalizer(G: PermGroup, ell: int) -> PermGroup:
    """N_G(Z(P)) for a Sylow ell-subgroup P."""
    P = G.sylow(ell)
    return G.normalizer(P.center())


def _strip(G: PermGroup, ell: int) -> PermGroup:
    return G.quotient(largest_normal_coprime_subgroup(G, ell))


def check_condition_Bprime(G_sigma: PermGroup, G_tau: PermGroup, ell: int) -> bool:
    """Sufficient test that G_tau -> G_sigma is a mod-ell homology isomorphism.

    Both groups are first divided by their largest normal subgroups of order
    prime to ell.  Then one of three clauses must hold: the quotients agree;
    or the bigger quotient is ell-normal and the smaller one is the
    normalizer of the centre of its Sylow subgroup; or both are ell-normal and
    those two normalizers differ by a normal subgroup of order prime to ell.
    """
    Qs = _strip(G_sigma, ell)
    Qt = _strip(G_tau, ell)
    if isomorphic(Qt, Qs):
        return True
    if Qs.order % ell == 0 and is_l_normal(Qs, ell):
        Ns = sylow_center_normalizer(Qs, ell)
        if isomorphic(Qt, Ns):
            return True
        if Qt.order % ell == 0 and is_l_normal(Qt, ell):
            Nt = sylow_center_normalizer(Qt, ell)
            for T in normal_coprime_subgroups(Ns, ell):
                if Ns.order == T.order * Nt.order and isomorphic(Ns.quotient(T), Nt):
                    return True
    return False


# -- standard groups for callers and tests ------------------------------------

def symmetric_group(n: int) -> PermGroup:
    return group_from_generators(n, _sym_gens(n))


def alternating_group(n: int) -> PermGroup:
    return group_from_generators(n, _alt_gens(n))


def cyclic_group(n: int) -> PermGroup:
    return group_from_generators(n, [[(i % n) + 1 for i in range(1, n + 1)]])


def dihedral_group(n: int) -> PermGroup:
    return group_from_generators(*_dihedral_gens(n))


def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    deg, gens = _direct(
        (G.degree, [[x + 1 for x in g] for g in G.generators]),
        (H.degree, [[x + 1 for x in h] for h in H.generators]),
    )
    return group_from_generators(deg, gens)
