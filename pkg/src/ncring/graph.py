"""Non-commuting graphs of finite rings, shape classification, dominating sets,
and isomorphism testing for small graphs.

Adjacency is stored as one Python int bitmask per vertex; bit ``j`` of
row ``i`` is set iff vertices ``i`` and ``j`` are adjacent.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DominationCheckFailed, NotGeneratingSet, SizeCapExceeded
from .ring import FiniteRing, center, centralizer, is_generating_set

DOMINATING_CAP = 24
ISOMORPHISM_CAP = 64


@dataclass(frozen=True)
class NonCommutingGraph:
    ring_ref: str
    vertices: tuple[int, ...]
    adjacency: tuple[int, ...]
    labels: tuple[str, ...] = ()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "G") -> NonCommutingGraph:
        rows = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(name, tuple(range(n)), tuple(rows))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def neighbors(self, i: int) -> list[int]:
        return _bits(self.adjacency[i])

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adjacency]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbors(i) if i < j]

    def adjacent(self, a: int, b: int) -> bool:
        """Adjacency of vertices given by ring element (not index)."""
        return bool(self.adjacency[self.index(a)] >> self.index(b) & 1)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def build_graph(R: FiniteRing) -> NonCommutingGraph:
    Z = center(R)
    verts = tuple(r for r in R.elements() if r not in Z)
    C = R.commute_matrix
    rows = []
    for a in verts:
        mask = 0
        for j, b in enumerate(verts):
            if not C[a, b]:
                mask |= 1 << j
        rows.append(mask)
    labels = tuple(str(R.coords(v)) for v in verts)
    return NonCommutingGraph(R.name, verts, tuple(rows), labels)


def degree(G: NonCommutingGraph, v: int) -> int:
    return G.adjacency[G.index(v)].bit_count()


def degree_formula_check(R: FiniteRing, G: NonCommutingGraph) -> bool:
    """deg(r) == |R| - |C_R(r)| for every vertex r."""
    return all(G.adjacency[i].bit_count() == R.order - len(centralizer(R, v))
               for i, v in enumerate(G.vertices))


# --- classification ----------------------------------------------------------

@dataclass(frozen=True)
class GraphClassification:
    connected: bool
    diameter: float
    min_degree: int
    max_degree: int
    is_complete: bool
    is_star: bool
    is_lollipop: bool
    is_complete_bipartite: bool
    is_empty: bool

    def flags(self) -> dict[str, bool]:
        return {"connected": self.connected, "complete": self.is_complete, "star": self.is_star,
                "lollipop": self.is_lollipop, "complete_bipartite": self.is_complete_bipartite,
                "empty": self.is_empty}


def _components(rows: Sequence[int], alive: int) -> list[int]:
    comps = []
    left = alive
    while left:
        seed = left & -left
        comp = frontier = seed
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= rows[i]
            nxt &= alive & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def _eccentricity(rows: Sequence[int], i: int, alive: int) -> float:
    seen = frontier = 1 << i
    dist = 0
    while True:
        nxt = 0
        for j in _bits(frontier):
            nxt |= rows[j]
        nxt &= alive & ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
        dist += 1
    return dist if seen == alive else math.inf


def _is_clique(rows: Sequence[int], comp: int) -> bool:
    return all((rows[i] & comp) == comp & ~(1 << i) for i in _bits(comp))


def _is_path(rows: Sequence[int], comp: int) -> bool:
    members = _bits(comp)
    degs = [(rows[i] & comp).bit_count() for i in members]
    return max(degs) <= 2 and sum(degs) // 2 == len(members) - 1


def _is_lollipop(rows: Sequence[int], full: int) -> bool:
    for i in range(len(rows)):
        for j in _bits(rows[i]):
            if j < i:
                continue
            cut = list(rows)
            cut[i] &= ~(1 << j)
            cut[j] &= ~(1 << i)
            comps = _components(cut, full)
            if len(comps) != 2:
                continue
            for a, b in (comps, comps[::-1]):
                if a.bit_count() >= 3 and _is_clique(cut, a) and _is_path(cut, b):
                    return True
    return False


def classify(G: NonCommutingGraph) -> GraphClassification:
    n = G.n
    if n == 0:
        return GraphClassification(False, 0, 0, 0, False, False, False, False, True)
    rows = G.adjacency
    full = (1 << n) - 1
    degs = G.degrees()
    connected = len(_components(rows, full)) == 1
    diameter = max(_eccentricity(rows, i, full) for i in range(n)) if connected else math.inf

    complement = [full & ~rows[i] & ~(1 << i) for i in range(n)]
    co_comps = _components(complement, full)
    complete_bipartite = len(co_comps) == 2 and all(_is_clique(complement, c) for c in co_comps)

    return GraphClassification(
        connected=connected,
        diameter=diameter,
        min_degree=min(degs),
        max_degree=max(degs),
        is_complete=all(d == n - 1 for d in degs),
        is_star=n >= 2 and sorted(degs) == [1] * (n - 1) + [n - 1],
        is_lollipop=_is_lollipop(rows, full),
        is_complete_bipartite=complete_bipartite,
        is_empty=sum(degs) == 0,
    )


# --- dominating sets ---------------------------------------------------------

@dataclass(frozen=True)
class DominatingSet:
    members: tuple[int, ...]
    provenance: str


def undominated(G: NonCommutingGraph, members: Iterable[int]) -> list[int]:
    """Vertices outside ``members`` with no neighbour inside it."""
    idx = [G.index(v) for v in members]
    covered = 0
    for i in idx:
        covered |= G.adjacency[i] | (1 << i)
    return [G.vertices[i] for i in range(G.n) if not covered >> i & 1]


def is_dominating(G: NonCommutingGraph, members: Iterable[int]) -> bool:
    return not undominated(G, members)


def _checked(G, members, provenance) -> DominatingSet:
    missing = undominated(G, members)
    if missing:
        raise DominationCheckFailed(tuple(members), missing[0])
    return DominatingSet(tuple(sorted(members)), provenance)


def dominating_from_generators(R: FiniteRing, S: Iterable[int],
                               G: NonCommutingGraph | None = None) -> DominatingSet:
    """S minus the centre, for a generating set S of R, verified to dominate.

    S may generate R either as a ring or, when R has a unity, as a unital
    ring (the unity is central, so domination is unaffected).
    """
    S = sorted(set(S))
    if not (is_generating_set(R, S) or (R.has_unity and is_generating_set(R, S, unital=True))):
        raise NotGeneratingSet(f"{[R.coords(s) for s in S]} does not generate {R.name}")
    Z = center(R)
    G = build_graph(R) if G is None else G
    return _checked(G, [s for s in S if s not in Z], "from_generators")


def dominating_from_generating_sets(R: FiniteRing, A: Iterable[int], B: Iterable[int],
                                    G: NonCommutingGraph | None = None) -> DominatingSet:
    """Non-central members of two generating sets A and B, verified to dominate."""
    A, B = sorted(set(A)), sorted(set(B))
    G = build_graph(R) if G is None else G
    for S in (A, B):
        dominating_from_generators(R, S, G)
    Z = center(R)
    return _checked(G, sorted({s for s in A + B if s not in Z}), "from_generators")


def minimum_dominating(G: NonCommutingGraph, cap: int = DOMINATING_CAP) -> DominatingSet:
    """Smallest dominating set; exhaustive in increasing size, lexicographic ties."""
    n = G.n
    if n > cap:
        raise SizeCapExceeded(f"{n} vertices exceeds dominating-set search cap {cap}")
    full = (1 << n) - 1
    closed = [G.adjacency[i] | (1 << i) for i in range(n)]
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            covered = 0
            for i in combo:
                covered |= closed[i]
            if covered == full:
                return _checked(G, [G.vertices[i] for i in combo], "brute_force_minimum")
    raise AssertionError("unreachable: the full vertex set dominates")


# --- isomorphism -------------------------------------------------------------

def _refine(nb1, nb2, c1, c2):
    """Joint colour refinement; None when the colour multisets diverge."""
    while True:
        s1 = [(c1[v], tuple(sorted(c1[u] for u in nb1[v]))) for v in range(len(nb1))]
        s2 = [(c2[v], tuple(sorted(c2[u] for u in nb2[v]))) for v in range(len(nb2))]
        ids = {s: i for i, s in enumerate(sorted(set(s1) | set(s2)))}
        n1 = [ids[s] for s in s1]
        n2 = [ids[s] for s in s2]
        if Counter(n1) != Counter(n2):
            return None
        if len(set(n1)) == len(set(c1)):
            return n1, n2
        c1, c2 = n1, n2


def graph_isomorphic(G1: NonCommutingGraph, G2: NonCommutingGraph,
                     cap: int = ISOMORPHISM_CAP) -> dict[int, int] | None:
    """A vertex bijection G1 -> G2 preserving adjacency, or None.

    Colour refinement from degrees, then individualisation with
    backtracking; complete at any size, though capped for running time.
    """
    if max(G1.n, G2.n) > cap:
        raise SizeCapExceeded(f"graph isomorphism search capped at {cap} vertices")
    if G1.n != G2.n or sorted(G1.degrees()) != sorted(G2.degrees()):
        return None
    n = G1.n
    nb1 = [G1.neighbors(i) for i in range(n)]
    nb2 = [G2.neighbors(i) for i in range(n)]

    def search(c1, c2):
        r = _refine(nb1, nb2, c1, c2)
        if r is None:
            return None
        c1, c2 = r
        counts = Counter(c1)
        if len(counts) == n:
            where = {c: w for w, c in enumerate(c2)}
            m = [where[c1[v]] for v in range(n)]
            if all(sorted(m[u] for u in nb1[v]) == sorted(nb2[m[v]]) for v in range(n)):
                return m
            return None
        target = min((k, c) for c, k in counts.items() if k > 1)[1]
        v = c1.index(target)
        fresh = max(c1) + 1
        for w in [w for w in range(n) if c2[w] == target]:
            d1, d2 = list(c1), list(c2)
            d1[v] = d2[w] = fresh
            m = search(d1, d2)
            if m is not None:
                return m
        return None

    m = search([0] * n, [0] * n)
    if m is None:
        return None
    return {G1.vertices[i]: G2.vertices[m[i]] for i in range(n)}
