"""Coxeter groups with at most four generators.

Finite parabolic subgroups are recognized from the shape of their diagram and
realized as permutation groups by coset enumeration over the trivial
subgroup.  The quotient of the Davis complex is built as the order complex of
the poset of nonempty spherical subsets; its ell-torsion part is then
reduced with :mod:`tatecoh.complex`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import data_path
from .complex import (
    Face,
    OrbitCell,
    StabilizedComplex,
    TorsionGraph,
    extract_torsion_subcomplex,
    graph_of,
    reduce_torsion_subcomplex,
)
from .groups import PermGroup, identify_catalog_type, largest_normal_coprime_subgroup

INF = 0  # encodes m_ij = infinity, as in the bundled data file
COSET_GUARD = 1200


class EnumerationOverflow(RuntimeError):
    pass


class UnsupportedPrime(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterDiagram:
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.m)
        for i in range(n):
            if len(self.m[i]) != n:
                raise ValueError("Coxeter matrix must be square")
            if self.m[i][i] != 1:
                raise ValueError("diagonal entries must be 1")
            for j in range(n):
                if i != j:
                    v = self.m[i][j]
                    if v != self.m[j][i]:
                        raise ValueError("Coxeter matrix must be symmetric")
                    if v != INF and v < 2:
                        raise ValueError("off-diagonal entries must be >= 2 or infinity")

    @classmethod
    def from_matrix(cls, rows) -> "CoxeterDiagram":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def triangle(cls, p: int, q: int, r: int) -> "CoxeterDiagram":
        """Generators a, b, c with (ab)^p = (bc)^q = (ca)^r = 1."""
        return cls(((1, p, r), (p, 1, q), (r, q, 1)))

    @property
    def n(self) -> int:
        return len(self.m)


# -- finite type recognition --------------------------------------------------

@dataclass(frozen=True)
class SphericalSubset:
    subset: tuple[int, ...]
    label: str
    order: int


def _components(d: CoxeterDiagram, subset) -> list[list[int]]:
    left = set(subset)
    out = []
    while left:
        stack = [min(left)]
        comp = set(stack)
        while stack:
            i = stack.pop()
            for j in left:
                if j not in comp and d.m[i][j] != 2:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        out.append(sorted(comp))
    return out


def _path_labels(d: CoxeterDiagram, comp: list[int]) -> list[int] | None:
    """Edge labels along the diagram if it is a path, else None."""
    adj = {i: [j for j in comp if j != i and d.m[i][j] != 2] for i in comp}
    ends = [i for i in comp if len(adj[i]) == 1]
    if any(len(a) > 2 for a in adj.values()) or len(ends) != 2:
        return None
    labels, prev, cur = [], None, min(ends)
    while True:
        nxt = [j for j in adj[cur] if j != prev]
        if not nxt:
            return labels
        labels.append(d.m[cur][nxt[0]])
        prev, cur = cur, nxt[0]


def _irreducible_type(d: CoxeterDiagram, comp: list[int]) -> tuple[str, int] | None:
    k = len(comp)
    if k == 1:
        return "A1", 2
    if k == 2:
        v = d.m[comp[0]][comp[1]]
        return (None if v == INF else (f"I2({v})", 2 * v))
    if any(d.m[i][j] == INF for i in comp for j in comp if i != j):
        return None
    labels = _path_labels(d, comp)
    if labels is None:
        if k == 4:
            centre = [i for i in comp if all(d.m[i][j] == 3 for j in comp if j != i)]
            leaves_free = all(d.m[i][j] == 2 for i in comp for j in comp
                              if i != j and i not in centre and j not in centre)
            if len(centre) == 1 and leaves_free:
                return "D4", 192
        return None
    key = tuple(labels)
    if key[::-1] < key:
        key = key[::-1]
    table = {
        (3, 3): ("A3", 24),
        (3, 4): ("B3", 48),
        (3, 5): ("H3", 120),
        (3, 3, 3): ("A4", 120),
        (3, 3, 4): ("B4", 384),
        (3, 4, 3): ("F4", 1152),
        (3, 3, 5): ("H4", 14400),
    }
    return table.get(key)


def classify_subset(d: CoxeterDiagram, subset) -> SphericalSubset | None:
    labels, order = [], 1
    for comp in _components(d, subset):
        t = _irreducible_type(d, comp)
        if t is None:
            return None
        labels.append(t[0])
        order *= t[1]
    return SphericalSubset(tuple(sorted(subset)), "x".join(labels), order)


def spherical_subsets(d: CoxeterDiagram) -> list[SphericalSubset]:
    """All nonempty generator subsets generating a finite parabolic subgroup."""
    if d.n > 4:
        raise ValueError("at most four generators are supported")
    out = []
    for k in range(1, d.n + 1):
        for s in combinations(range(d.n), k):
            t = classify_subset(d, s)
            if t is not None:
                out.append(t)
    return out


# -- coset enumeration ----------------------------------------------------------

def coset_enumeration(ngens: int, relators: list[list[int]], guard: int = COSET_GUARD) -> list[tuple]:
    """Todd-Coxeter (HLT strategy) over the trivial subgroup, involutive generators.

    Returns, for each generator, the permutation of the cosets it induces.
    """
    table: list[list[int | None]] = []
    parent: list[int] = []
    cap = 8 * guard

    def new_coset() -> int:
        if len(table) >= cap:
            raise EnumerationOverflow(f"more than {cap} coset definitions")
        table.append([None] * ngens)
        parent.append(len(parent))
        return len(table) - 1

    def rep(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a: int, b: int, queue: list) -> None:
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        union(a, b, queue)
        while queue:
            e = queue.pop(0)
            for x in range(ngens):
                f = table[e][x]
                if f is None:
                    continue
                if table[f][x] == e:
                    table[f][x] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    union(f1, table[e1][x], queue)
                elif table[f1][x] is not None:
                    union(e1, table[f1][x], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x] = e1

    def define(c: int, x: int) -> None:
        d = new_coset()
        table[c][x] = d
        table[d][x] = c

    def scan_and_fill(c: int, w: list[int]) -> None:
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j]] is not None:
                b = table[b][w[j]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i]] = f
                return
            define(f, w[i])

    new_coset()
    c = 0
    while c < len(table):
        if rep(c) == c:
            for w in relators:
                if rep(c) != c:
                    break
                scan_and_fill(c, w)
            if rep(c) == c:
                for x in range(ngens):
                    if table[c][x] is None:
                        define(c, x)
        c += 1

    live = [c for c in range(len(table)) if rep(c) == c]
    if len(live) > guard:
        raise EnumerationOverflow(f"{len(live)} cosets exceed guard {guard}")
    index = {c: i for i, c in enumerate(live)}
    return [tuple(index[rep(table[c][x])] for c in live) for x in range(ngens)]


def _relators(d: CoxeterDiagram, subset: tuple[int, ...]) -> list[list[int]]:
    rel = []
    for a, b in combinations(range(len(subset)), 2):
        m = d.m[subset[a]][subset[b]]
        if m == INF:
            raise ValueError("parabolic subgroup is infinite")
        rel.append([a, b] * m)
    return rel


@lru_cache(maxsize=None)
def _regular_generators(d: CoxeterDiagram, subset: tuple[int, ...]) -> tuple:
    return tuple(coset_enumeration(len(subset), _relators(d, subset)))


def finite_coxeter_group(d: CoxeterDiagram, subset, inside=None) -> PermGroup:
    """Parabolic subgroup W_subset as a permutation group.

    With ``inside`` (a spherical superset), the group is realized as the
    subgroup of the regular representation of W_inside generated by the
    chosen generators, which gives the true inclusion.
    """
    subset = tuple(sorted(subset))
    ambient = tuple(sorted(inside)) if inside is not None else subset
    if not set(subset) <= set(ambient):
        raise ValueError("subset must lie in the ambient subset")
    if classify_subset(d, ambient) is None:
        raise ValueError(f"subset {ambient} is not spherical")
    gens = _regular_generators(d, ambient)
    deg = len(gens[0]) if gens else 1
    chosen = [gens[ambient.index(i)] for i in subset]
    return PermGroup(deg, chosen)


# -- chamber complex -----------------------------------------------------------

def build_chamber_complex(d: CoxeterDiagram) -> StabilizedComplex:
    """Order complex of nonempty spherical subsets; cells are strict chains."""
    sph = [s.subset for s in spherical_subsets(d)]
    if tuple(range(d.n)) in sph:
        raise ValueError("the Coxeter group is finite")
    chains: list[tuple] = [(s,) for s in sph]
    layer = list(chains)
    while layer:
        nxt = []
        for ch in layer:
            for s in sph:
                if set(ch[-1]) < set(s):
                    nxt.append(ch + (s,))
        chains += nxt
        layer = nxt
    chains.sort(key=lambda ch: (len(ch), ch))
    ids = {ch: i for i, ch in enumerate(chains)}
    cells = []
    for ch in chains:
        low = ch[0]
        stab = finite_coxeter_group(d, low)
        faces = []
        if len(ch) > 1:
            for k in range(len(ch)):
                f = ch[:k] + ch[k + 1:]
                faces.append(Face(ids[f], 1, finite_coxeter_group(d, low, inside=f[0])))
        cells.append(OrbitCell(ids[ch], len(ch) - 1, stab, faces))
    return StabilizedComplex(cells, "coxeter")


# -- homology -------------------------------------------------------------------

def dihedral_mod_l_homology(n: int, ell: int, q: int) -> int:
    """dim over F_ell of H_q(D_n; F_ell) for an odd prime ell."""
    if n < 2 or q < 0 or ell <= 2:
        raise ValueError("need n >= 2, q >= 0 and an odd prime")
    if q == 0:
        return 1
    return 1 if n % ell == 0 and q % 4 in (0, 3) else 0


def triangle_group_homology(p: int, q: int, r: int, ell: int) -> list[str]:
    """Dihedral summands D_k (k in p, q, r) that carry ell-torsion."""
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1:
        raise ValueError("triangle group must be Euclidean or hyperbolic")
    if ell <= 2:
        raise ValueError("ell must be an odd prime")
    return [f"D{k}" for k in (p, q, r) if k % ell == 0]


@dataclass
class TetrahedralResult:
    ct_id: int | None
    ell: int
    m: int
    unreduced: TorsionGraph
    reduced: TorsionGraph

    def summary(self) -> str:
        if self.m == 0:
            return f"H_q = 0 for q > 0 (no {self.ell}-torsion)"
        base = f"H_q(D{self.ell}; F{self.ell})"
        return base if self.m == 1 else f"({base})^{self.m}"


def torsion_homology(d: CoxeterDiagram, ell: int, ct_id: int | None = None) -> TetrahedralResult:
    if ell <= 2:
        raise UnsupportedPrime("only odd primes are supported")
    X = build_chamber_complex(d)
    Xl = extract_torsion_subcomplex(X, ell)
    if Xl.dimension > 1:
        raise UnsupportedPrime(f"the {ell}-torsion sub-complex has 2-cells")
    red = reduce_torsion_subcomplex(Xl, ell)
    return TetrahedralResult(ct_id, ell, len(red.components()), graph_of(Xl, ell), red)


def load_ct_diagrams() -> dict[int, CoxeterDiagram]:
    with open(data_path("ct_diagrams.json")) as f:
        rows = json.load(f)
    return {r["id"]: CoxeterDiagram.from_matrix(r["matrix"]) for r in rows}


def tetrahedral_homology(ct_id: int, ell: int) -> TetrahedralResult:
    diagrams = load_ct_diagrams()
    if ct_id not in diagrams:
        raise KeyError(f"no tetrahedral group CT({ct_id})")
    return torsion_homology(diagrams[ct_id], ell, ct_id)


def stripped_type(G: PermGroup, ell: int):
    """Catalog type of G modulo its largest normal subgroup of order prime to ell."""
    return identify_catalog_type(G.quotient(largest_normal_coprime_subgroup(G, ell)))
