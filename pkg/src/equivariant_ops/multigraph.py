"""Multigraphs, degree vectors and perfect matchings.

Isomorphism classes of multigraphs with a fixed degree vector are computed
as orbits of a permutation group acting on perfect matchings of the
edge-end indices ``1..2p``.  Vertex ``I`` of the parametrized graph owns a
consecutive block ("fiber") of those indices, lower degrees first.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

Pair = tuple[int, int]
Matching = tuple[Pair, ...]
Permutation = tuple[int, ...]  # 1-based images: perm[i - 1] = sigma(i)


@dataclass(frozen=True, order=True)
class Multigraph:
    """A labeled multigraph on vertices ``0..n-1``; loops are ``(v, v)``."""

    n: int
    edges: tuple[Pair, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = []
        for e in self.edges:
            i, j = sorted(int(x) for x in e)
            if i < 0 or j >= self.n:
                raise ValueError(f"edge {e} out of range for {self.n} vertices")
            edges.append((i, j))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def isolated_count(self) -> int:
        return sum(1 for x in self.degrees() if x == 0)

    def is_connected(self) -> bool:
        # loops never join components; the null graph counts as connected
        if self.n <= 1:
            return True
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            parent[find(i)] = find(j)
        return len({find(v) for v in range(self.n)}) == 1

    def components(self) -> list["Multigraph"]:
        """Connected components (loops ignored for reachability), each relabeled from 0."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen: set[int] = set()
        out = []
        for start in range(self.n):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                for u in adj[stack.pop()] - comp:
                    comp.add(u)
                    stack.append(u)
            seen |= comp
            index = {v: k for k, v in enumerate(sorted(comp))}
            out.append(Multigraph(len(comp), tuple((index[i], index[j]) for i, j in self.edges if i in comp)))
        return out

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Multigraph(self.n, tuple((perm[i], perm[j]) for i, j in self.edges))

    def core(self) -> tuple[int, "Multigraph"]:
        """Split off isolated vertices: ``(count, graph without them)``."""
        deg = self.degrees()
        keep = [v for v in range(self.n) if deg[v] > 0]
        index = {v: k for k, v in enumerate(keep)}
        core = Multigraph(len(keep), tuple((index[i], index[j]) for i, j in self.edges))
        return self.n - len(keep), core

    def with_isolated(self, count: int) -> "Multigraph":
        """Prepend ``count`` isolated vertices."""
        return Multigraph(self.n + count, tuple((i + count, j + count) for i, j in self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Multigraph":
        return cls(int(data["n"]), tuple(tuple(e) for e in data["edges"]))

    def __str__(self) -> str:
        body = ",".join(f"{i}-{j}" for i, j in self.edges)
        return f"G{self.n}[{body}]"


NULL_GRAPH = Multigraph(0)


@dataclass(frozen=True, order=True)
class DegreeVector:
    """``beta0`` isolated vertices plus ``vec[j-1]`` vertices of degree ``j``."""

    beta0: int = 0
    vec: tuple[int, ...] = ()

    def __post_init__(self):
        vec = list(self.vec)
        while vec and vec[-1] == 0:
            vec.pop()
        if self.beta0 < 0 or any(x < 0 for x in vec):
            raise ValueError("degree vector entries must be non-negative")
        if sum(j * b for j, b in enumerate(vec, start=1)) % 2:
            raise ValueError(f"degree sum of {vec} is odd")
        object.__setattr__(self, "vec", tuple(vec))

    @property
    def num_edges(self) -> int:
        return sum(j * b for j, b in enumerate(self.vec, start=1)) // 2

    @property
    def num_vertices(self) -> int:
        return self.beta0 + sum(self.vec)

    @property
    def order(self) -> int:
        return len(self.vec)

    def vertex_degrees(self) -> list[int]:
        """Degrees of the canonical vertex list, non-decreasing."""
        out = [0] * self.beta0
        for j, b in enumerate(self.vec, start=1):
            out.extend([j] * b)
        return out

    def fibers(self) -> list[range]:
        """Edge-end index block (1-based) owned by each canonical vertex."""
        out = []
        start = 1
        for deg in self.vertex_degrees():
            out.append(range(start, start + deg))
            start += deg
        return out

    def without_isolated(self) -> "DegreeVector":
        return DegreeVector(0, self.vec)

    def __add__(self, other: "DegreeVector") -> "DegreeVector":
        n = max(len(self.vec), len(other.vec))
        a = list(self.vec) + [0] * (n - len(self.vec))
        b = list(other.vec) + [0] * (n - len(other.vec))
        return DegreeVector(self.beta0 + other.beta0, tuple(x + y for x, y in zip(a, b)))

    def to_json(self) -> dict:
        return {"beta0": self.beta0, "vec": list(self.vec)}

    @classmethod
    def from_json(cls, data: dict) -> "DegreeVector":
        return cls(int(data.get("beta0", 0)), tuple(int(x) for x in data["vec"]))

    def __str__(self) -> str:
        inner = ",".join(str(x) for x in self.vec)
        return f"[{inner}]" if self.beta0 == 0 else f"({self.beta0},[{inner}])"


def degree_vector(graph: Multigraph) -> DegreeVector:
    deg = graph.degrees()
    k = max(deg, default=0)
    vec = [0] * k
    for x in deg:
        if x:
            vec[x - 1] += 1
    return DegreeVector(deg.count(0), tuple(vec))


def _partitions(total: int, largest: int) -> Iterator[list[int]]:
    if total == 0:
        yield []
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield [part] + rest


def degree_vectors(p: int) -> list[DegreeVector]:
    """All ``(0, vec)`` with ``p`` edges, ordered by vertex count then ``vec``."""
    out = []
    for parts in _partitions(2 * p, 2 * p):
        vec = [0] * (parts[0] if parts else 0)
        for x in parts:
            vec[x - 1] += 1
        out.append(DegreeVector(0, tuple(vec)))
    return sorted(out, key=lambda b: (b.num_vertices, b.vec))


# -- perfect matchings -------------------------------------------------------

def _matchings(items: list[int]) -> Iterator[list[Pair]]:
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in _matchings(rest):
            yield [(first, items[k])] + m


@lru_cache(maxsize=None)
def enumerate_matchings(p: int) -> tuple[Matching, ...]:
    """All perfect matchings of ``{1..2p}``, smallest free index paired first."""
    if p < 0:
        raise ValueError("p must be non-negative")
    return tuple(tuple(m) for m in _matchings(list(range(1, 2 * p + 1))))


@lru_cache(maxsize=None)
def matching_index(p: int) -> dict[Matching, int]:
    return {m: k for k, m in enumerate(enumerate_matchings(p))}


def normalize_matching(pairs: Iterable[Sequence[int]]) -> Matching:
    m = tuple(sorted(tuple(sorted(pair)) for pair in pairs))
    flat = sorted(x for pair in m for x in pair)
    if flat != list(range(1, len(flat) + 1)) or any(len(pair) != 2 for pair in m):
        raise ValueError(f"{pairs!r} is not a perfect matching of 1..2p")
    return m


def act(perm: Permutation, rho: Matching) -> Matching:
    """``sigma . rho``: relabel every index through ``perm``."""
    return tuple(sorted(tuple(sorted((perm[a - 1], perm[b - 1]))) for a, b in rho))


def double_factorial_odd(p: int) -> int:
    """(2p-1)!! = (2p)! / (p! 2^p)."""
    return factorial(2 * p) // (factorial(p) * 2**p)


# -- parametrized graphs -----------------------------------------------------

def build_graph(rho: Matching, beta: DegreeVector) -> Multigraph:
    """The graph whose edges are the fiber images of the pairs of ``rho``."""
    p = len(rho)
    if 2 * beta.num_edges != 2 * p:
        raise ValueError(f"matching has {2 * p} edge-ends but {beta} needs {2 * beta.num_edges}")
    owner = {}
    for v, fiber in enumerate(beta.fibers()):
        for i in fiber:
            owner[i] = v
    return Multigraph(beta.num_vertices, tuple((owner[a], owner[b]) for a, b in rho))


def parametrize(graph: Multigraph) -> tuple[Matching, DegreeVector]:
    """Inverse of :func:`build_graph` up to isomorphism."""
    deg = graph.degrees()
    order = sorted(range(graph.n), key=lambda v: deg[v])
    beta = degree_vector(graph)
    fibers = beta.fibers()
    free = {v: iter(fibers[pos]) for pos, v in enumerate(order)}
    rho = [(next(free[i]), next(free[j])) for i, j in graph.edges]
    return normalize_matching(rho) if rho else (), beta


def disjoint_union(g1: Multigraph, g2: Multigraph) -> Multigraph:
    shift = g1.n
    return Multigraph(g1.n + g2.n, g1.edges + tuple((i + shift, j + shift) for i, j in g2.edges))


# -- canonical forms ---------------------------------------------------------

def _refine(graph: Multigraph) -> list[int]:
    """Colour refinement seeded with vertex degree; colours are isomorphism-invariant."""
    deg = graph.degrees()
    loops = [0] * graph.n
    nbrs: list[list[int]] = [[] for _ in range(graph.n)]
    for i, j in graph.edges:
        if i == j:
            loops[i] += 1
        else:
            nbrs[i].append(j)
            nbrs[j].append(i)
    colours = [(deg[v], loops[v]) for v in range(graph.n)]
    palette = sorted(set(colours))
    colours = [palette.index(c) for c in colours]
    while True:
        sigs = [(colours[v], tuple(sorted(colours[u] for u in nbrs[v]))) for v in range(graph.n)]
        palette = sorted(set(sigs))
        new = [palette.index(s) for s in sigs]
        if len(palette) == len(set(colours)):
            return new
        colours = new


@lru_cache(maxsize=4096)
def canonical_form(graph: Multigraph) -> Multigraph:
    """Lexicographically smallest relabeling among those respecting refined colours.

    Colour classes are laid out in increasing colour order (hence increasing
    degree, isolated vertices first) and every permutation inside each class
    is tried.
    """
    if graph.n == 0:
        return graph
    colours = _refine(graph)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    blocks = [cells[c] for c in sorted(cells)]
    offsets = []
    pos = 0
    for block in blocks:
        offsets.append(pos)
        pos += len(block)
    best = None
    label = [0] * graph.n
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        for off, arrangement in zip(offsets, choice):
            for k, v in enumerate(arrangement):
                label[v] = off + k
        key = tuple(sorted((min(label[i], label[j]), max(label[i], label[j])) for i, j in graph.edges))
        if best is None or key < best:
            best = key
    return Multigraph(graph.n, best)


def is_isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    return canonical_form(g1) == canonical_form(g2)


# -- symmetry groups and orbits ----------------------------------------------

@dataclass(frozen=True)
class SymmetryGroup:
    """Generators of the fiber-preserving group acting on ``1..2p``."""

    beta: DegreeVector
    generators: tuple[Permutation, ...]
    fibers: tuple[range, ...] = field(repr=False)

    @property
    def degree(self) -> int:
        return 2 * self.beta.num_edges

    def elements(self) -> set[Permutation]:
        ident = tuple(range(1, self.degree + 1))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for s in self.generators:
                    h = tuple(s[g[i] - 1] for i in range(self.degree))
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return seen

    def order(self) -> int:
        return len(self.elements())

    def formula_order(self) -> int:
        """prod_j (j!)^beta_j * beta_j!  (within-fiber times fiber-swapping parts)."""
        out = 1
        for j, b in enumerate(self.beta.vec, start=1):
            out *= factorial(j) ** b * factorial(b)
        return out


def cycle_notation(perm: Permutation) -> str:
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt - 1]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def symmetry_generators(beta: DegreeVector) -> SymmetryGroup:
    """Adjacent transpositions inside each fiber, then swaps of neighbouring equal-degree fibers."""
    fibers = [f for f in beta.fibers() if len(f)]
    size = 2 * beta.num_edges
    ident = list(range(1, size + 1))
    gens = []
    for fiber in fibers:
        for a in fiber[:-1]:
            perm = ident.copy()
            perm[a - 1], perm[a] = a + 1, a
            gens.append(tuple(perm))
    for f1, f2 in zip(fibers, fibers[1:]):
        if len(f1) != len(f2):
            continue
        perm = ident.copy()
        for a, b in zip(f1, f2):
            perm[a - 1], perm[b - 1] = b, a
        gens.append(tuple(perm))
    return SymmetryGroup(beta.without_isolated(), tuple(gens), tuple(beta.without_isolated().fibers()))


@dataclass(frozen=True)
class Orbit:
    """An orbit of matchings and the isomorphism class it parametrizes."""

    matchings: tuple[Matching, ...]
    graph: Multigraph  # canonical form of the core graph

    @property
    def representative(self) -> Matching:
        return self.matchings[0]

    def __len__(self) -> int:
        return len(self.matchings)


@lru_cache(maxsize=None)
def orbits(beta: DegreeVector) -> tuple[Orbit, ...]:
    """Partition of the matchings into group orbits, ordered by smallest member."""
    core = beta.without_isolated()
    p = core.num_edges
    gens = symmetry_generators(core).generators
    index = matching_index(p)
    assigned: set[Matching] = set()
    out = []
    for rho in enumerate_matchings(p):
        if rho in assigned:
            continue
        members = {rho}
        queue = deque([rho])
        while queue:
            cur = queue.popleft()
            for g in gens:
                img = act(g, cur)
                if img not in members:
                    members.add(img)
                    queue.append(img)
        assigned |= members
        ordered = tuple(sorted(members, key=index.__getitem__))
        out.append(Orbit(ordered, canonical_form(build_graph(ordered[0], core))))
    return tuple(out)


def enumerate_classes(p_exact: int, connected_only: bool = False, max_isolated: int = 0) -> list[Multigraph]:
    """One canonical representative per class with exactly ``p_exact`` edges.

    Without ``connected_only`` each core class is repeated with
    ``0..max_isolated`` isolated vertices.  With it, isolated-vertex
    variants are dropped except that ``p_exact == 0`` yields both the null
    graph and the single vertex.
    """
    if p_exact < 0 or max_isolated < 0:
        raise ValueError("p_exact and max_isolated must be non-negative")
    cores = [orb.graph for beta in degree_vectors(p_exact) for orb in orbits(beta)]
    if connected_only:
        if p_exact == 0:
            return [NULL_GRAPH, Multigraph(1)]
        return [g for g in cores if g.is_connected()]
    return [g.with_isolated(b0) for g in cores for b0 in range(max_isolated + 1)]
