"""Orbit cell complexes with stabilizers, and torsion sub-complex reduction.

A :class:`StabilizedComplex` lists one representative cell per orbit together
with its stabilizer.  Each boundary entry may carry the image of the cell's
stabilizer inside the stabilizer of the face, so that the homology conditions
can be tested on genuine inclusions.

Reduction works on the one-dimensional ell-torsion part and produces a
:class:`TorsionGraph` whose cells are labelled by catalog types.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .groups import (
    KLEIN_FOUR,
    A4,
    CatalogType,
    Cyclic,
    Dihedral,
    PermGroup,
    check_condition_Bprime,
    identify_catalog_type,
    parse_catalog_type,
)


class DimensionTooHigh(ValueError):
    pass


class NonConvergent(RuntimeError):
    pass


@dataclass
class Face:
    cell: int
    incidence: int = 1
    image: PermGroup | None = None  # stabilizer of the coface, inside the face's stabilizer


@dataclass
class OrbitCell:
    id: int
    dim: int
    stabilizer: PermGroup
    boundary: list[Face] = field(default_factory=list)


@dataclass
class StabilizedComplex:
    cells: list[OrbitCell]
    source: str = "synthetic"

    def __post_init__(self):
        by_id = {c.id: c for c in self.cells}
        if len(by_id) != len(self.cells):
            raise ValueError("duplicate cell ids")
        for c in self.cells:
            if c.dim not in (0, 1, 2, 3):
                raise ValueError(f"cell {c.id}: dimension {c.dim} out of range")
            for f in c.boundary:
                if f.cell not in by_id:
                    raise ValueError(f"cell {c.id}: unknown face {f.cell}")
                if by_id[f.cell].dim != c.dim - 1:
                    raise ValueError(f"cell {c.id}: face {f.cell} has wrong dimension")
                if f.incidence <= 0:
                    raise ValueError(f"cell {c.id}: nonpositive incidence")

    def cell(self, i: int) -> OrbitCell:
        for c in self.cells:
            if c.id == i:
                return c
        raise KeyError(i)

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def counts(self) -> Counter:
        return Counter(c.dim for c in self.cells)


def extract_torsion_subcomplex(X: StabilizedComplex, ell: int) -> StabilizedComplex:
    """Cells whose stabilizer order is divisible by ell, faces restricted."""
    keep = {c.id for c in X.cells if c.stabilizer.order % ell == 0}
    cells = [
        OrbitCell(c.id, c.dim, c.stabilizer, [f for f in c.boundary if f.cell in keep])
        for c in X.cells
        if c.id in keep
    ]
    return StabilizedComplex(cells, X.source)


# -- graphs ------------------------------------------------------------------

@dataclass
class TorsionGraph:
    """Quotient graph; an edge whose two ends coincide is a loop."""

    ell: int
    vertices: dict[int, CatalogType]
    edges: dict[int, tuple[CatalogType, tuple[int, int]]]

    def degree(self, v: int) -> int:
        """Number of edge-ends at v; a loop counts twice."""
        return sum((a == v) + (b == v) for _, (a, b) in self.edges.values())

    def components(self) -> list[tuple[list[int], list[int]]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, (a, b) in self.edges.values():
            parent[find(a)] = find(b)
        groups: dict[int, tuple[list, list]] = {}
        for v in sorted(self.vertices):
            groups.setdefault(find(v), ([], []))[0].append(v)
        for e in sorted(self.edges):
            groups[find(self.edges[e][1][0])][1].append(e)
        return sorted(groups.values(), key=lambda g: g[0][0])

    def structure(self) -> tuple:
        """Canonical, id-free description used for equality checks."""
        comps = []
        for vs, es in self.components():
            comps.append((
                tuple(sorted(str(self.vertices[v]) for v in vs)),
                tuple(sorted(
                    (str(self.edges[e][0]),) + tuple(sorted(
                        (str(self.vertices[x]), self.degree(x)) for x in self.edges[e][1]))
                    for e in es
                )),
            ))
        return tuple(sorted(comps))

    def to_dict(self) -> dict:
        vmap = {v: i for i, v in enumerate(sorted(self.vertices))}
        return {
            "ell": self.ell,
            "vertices": [{"id": vmap[v], "type": str(self.vertices[v])} for v in sorted(self.vertices)],
            "edges": [
                {"id": i, "type": str(self.edges[e][0]), "ends": [vmap[x] for x in self.edges[e][1]]}
                for i, e in enumerate(sorted(self.edges))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "TorsionGraph":
        return cls(
            ell=d["ell"],
            vertices={v["id"]: parse_catalog_type(v["type"]) for v in d["vertices"]},
            edges={e["id"]: (parse_catalog_type(e["type"]), tuple(e["ends"])) for e in d["edges"]},
        )


# -- reduction ---------------------------------------------------------------

@dataclass
class _Edge:
    group: PermGroup
    ends: tuple[int, int]
    images: tuple[PermGroup, PermGroup]  # edge stabilizer seen inside each end


def reduce_torsion_subcomplex(X: StabilizedComplex, ell: int, cut_terminal: bool = True,
                              max_steps: int = 100_000) -> TorsionGraph:
    """Merge and cut until nothing changes; return the labelled quotient graph.

    Scheduling: while a terminal vertex can be cut, cut the one with the
    largest stabilizer (smallest id on ties); otherwise merge at the
    lowest-id admissible vertex of degree two.  Cutting from the big end keeps
    the smallest stabilizer of a chain as its surviving label.
    """
    if any(c.dim > 1 for c in X.cells):
        raise DimensionTooHigh("torsion sub-complex has cells of dimension > 1")
    verts = {c.id: c.stabilizer for c in X.cells if c.dim == 0}
    edges: dict[int, _Edge] = {}
    for c in X.cells:
        if c.dim != 1:
            continue
        ends = [f for f in c.boundary for _ in range(f.incidence)]
        if len(ends) != 2:
            raise ValueError(f"edge {c.id} has {len(ends)} endpoints")
        edges[c.id] = _Edge(
            c.stabilizer,
            (ends[0].cell, ends[1].cell),
            tuple(f.image if f.image is not None else c.stabilizer for f in ends),
        )

    bprime_cache: dict = {}

    def bprime(G_v: PermGroup, G_e: PermGroup) -> bool:
        key = (G_v.elements, G_e.elements)
        if key not in bprime_cache:
            bprime_cache[key] = check_condition_Bprime(G_v, G_e, ell)
        return bprime_cache[key]

    def incident(v):
        out = []
        for e in sorted(edges):
            a, b = edges[e].ends
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out

    def try_cut() -> bool:
        cands = []
        for v in verts:
            inc = incident(v)
            if len(inc) == 1:
                cands.append((-verts[v].order, v, inc[0]))
        for _, v, (e, side) in sorted(cands):
            E = edges[e]
            if bprime(verts[v], E.images[side]):
                del edges[e]
                del verts[v]
                return True
        return False

    def try_merge() -> bool:
        for v in sorted(verts):
            inc = incident(v)
            if len(inc) != 2:
                continue
            (e1, s1), (e2, s2) = inc
            if e1 == e2:  # a loop: both ends on one orbit
                continue
            E1, E2 = edges[e1], edges[e2]
            if identify_catalog_type(E1.group) != identify_catalog_type(E2.group):
                continue
            if not (bprime(verts[v], E1.images[s1]) and bprime(verts[v], E2.images[s2])):
                continue
            a, b = E1.ends[1 - s1], E2.ends[1 - s2]
            edges[e1] = _Edge(E1.group, (a, b), (E1.images[1 - s1], E2.images[1 - s2]))
            del edges[e2]
            del verts[v]
            return True
        return False

    for _ in range(max_steps):
        if cut_terminal and try_cut():
            continue
        if try_merge():
            continue
        break
    else:
        raise NonConvergent("reduction did not reach a fixed point")

    return TorsionGraph(
        ell,
        {v: identify_catalog_type(G) for v, G in verts.items()},
        {e: (identify_catalog_type(E.group), E.ends) for e, E in edges.items()},
    )


def graph_of(X: StabilizedComplex, ell: int) -> TorsionGraph:
    """The unreduced quotient graph of a one-dimensional complex."""
    if any(c.dim > 1 for c in X.cells):
        raise DimensionTooHigh("complex has cells of dimension > 1")
    verts = {c.id: identify_catalog_type(c.stabilizer) for c in X.cells if c.dim == 0}
    edges = {}
    for c in X.cells:
        if c.dim == 1:
            ends = [f.cell for f in c.boundary for _ in range(f.incidence)]
            edges[c.id] = (identify_catalog_type(c.stabilizer), tuple(ends))
    return TorsionGraph(ell, verts, edges)


# -- component shapes --------------------------------------------------------

@dataclass(frozen=True)
class ComponentType:
    tag: str
    description: str = ""

    def __str__(self):
        return self.tag if self.tag != "Other" else f"Other({self.description})"


CIRCLE = ComponentType("Circle")
EDGE = ComponentType("Edge")
GRAPH_TWO = ComponentType("GraphTwo")
GRAPH_FIVE = ComponentType("GraphFive")


def _component_type(g: TorsionGraph, vs: list[int], es: list[int]) -> ComponentType:
    degs = {v: g.degree(v) for v in vs}
    loops = [e for e in es if g.edges[e][1][0] == g.edges[e][1][1]]
    if len(vs) == len(es) and all(d == 2 for d in degs.values()):
        return CIRCLE
    if len(vs) == 2 and len(es) == 1 and not loops:
        return EDGE
    if len(vs) == 2 and len(es) == 2 and len(loops) == 1 and sorted(degs.values()) == [1, 3]:
        return GRAPH_TWO
    if len(vs) == 2 and len(es) == 3 and all(d == 3 for d in degs.values()):
        return GRAPH_FIVE
    return ComponentType("Other", f"{len(vs)} vertices, {len(es)} edges, degrees {sorted(degs.values())}")


def classify_components(g: TorsionGraph) -> Counter:
    return Counter(_component_type(g, vs, es) for vs, es in g.components())


# -- degree table for Bianchi groups -------------------------------------------

_DEGREES = {
    2: {"1": 0, "Z2": 2, "Z3": 0, "D2": 3, "D3": 2, "A4": 1},
    3: {"1": 0, "Z2": 0, "Z3": 2, "D2": 0, "D3": 1, "A4": 2},
}


def validate_bianchi_degrees(g: TorsionGraph, ell: int) -> list[str]:
    """Vertices whose number of adjacent edge-ends disagrees with the rigidity table."""
    table = _DEGREES[ell]
    out = []
    for v in sorted(g.vertices):
        label = str(g.vertices[v])
        if label not in table:
            out.append(f"vertex {v}: type {label} cannot occur in a Bianchi group")
            continue
        if g.degree(v) != table[label]:
            out.append(f"vertex {v}: type {label} has degree {g.degree(v)}, expected {table[label]}")
    return out


BIANCHI_TYPES = {"Z2": Cyclic(2), "Z3": Cyclic(3), "D2": KLEIN_FOUR, "D3": Dihedral(3), "A4": A4}
