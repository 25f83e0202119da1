"""Finite abelian groups given by a Cayley table, and their isomorphisms.

Used for the additive group of a ring, its central quotient and its
commutator subgroup.  Elements carry arbitrary hashable labels (ring
element ranks in practice); all internal work happens on indices.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable, Iterator, Sequence

import numpy as np

from .errors import MalformedTable, SizeCapExceeded

GROUP_CAP = 64


class AbelianGroup:
    def __init__(self, labels: Sequence[Hashable], table, name: str = ""):
        self.labels = tuple(labels)
        self.index = {x: i for i, x in enumerate(self.labels)}
        self.table = np.asarray(table, dtype=np.int64)
        m = len(self.labels)
        if self.table.shape != (m, m):
            raise MalformedTable(f"group table must be {m}x{m}")
        self.name = name
        identity_rows = np.flatnonzero((self.table == np.arange(m)).all(axis=1))
        if len(identity_rows) != 1:
            raise MalformedTable("group table has no unique identity")
        self.zero = int(identity_rows[0])
        neg = np.argmax(self.table == self.zero, axis=1)
        self.neg = neg

    @classmethod
    def from_operation(cls, labels: Sequence[Hashable], op: Callable, name: str = "") -> AbelianGroup:
        labels = tuple(labels)
        index = {x: i for i, x in enumerate(labels)}
        try:
            table = [[index[op(x, y)] for y in labels] for x in labels]
        except KeyError as exc:
            raise MalformedTable(f"subset is not closed under the operation: {exc}") from None
        return cls(labels, table, name)

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.zero:
            x = int(self.table[x, i])
            k += 1
        return k

    def element_orders(self) -> list[int]:
        return [self.element_order(i) for i in range(self.order)]

    def order_statistics(self) -> tuple[tuple[int, int], ...]:
        # Two finite abelian groups are isomorphic iff these agree.
        return tuple(sorted(Counter(self.element_orders()).items()))

    def closure(self, gens: Sequence[int]) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[self.zero] = True
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if not mask[y]:
                        mask[y] = True
                        nxt.append(y)
            frontier = nxt
        return mask

    def generating_set(self) -> list[int]:
        """Greedy generating set: repeatedly add an element of largest order
        outside the subgroup generated so far."""
        orders = self.element_orders()
        by_order = sorted(range(self.order), key=lambda i: (-orders[i], i))
        gens: list[int] = []
        mask = self.closure(gens)
        for i in by_order:
            if mask.all():
                break
            if not mask[i]:
                gens.append(i)
                mask = self.closure(gens)
        return gens


def _bfs_tree(G: AbelianGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """(element, parent, generator position) in breadth-first order from zero."""
    seen = {G.zero}
    tree = []
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for pos, g in enumerate(gens):
                y = int(G.table[x, g])
                if y not in seen:
                    seen.add(y)
                    tree.append((y, x, pos))
                    nxt.append(y)
        frontier = nxt
    return tree


def extend_homomorphism(G1: AbelianGroup, G2: AbelianGroup, gens: Sequence[int],
                        images: Sequence[int], require_injective: bool = True) -> np.ndarray | None:
    """Extend gens -> images to a homomorphism on the subgroup generated by gens.

    Returns an index map with -1 outside that subgroup, or None when the
    assignment is inconsistent (or not injective, if required).
    """
    phi = np.full(G1.order, -1, dtype=np.int64)
    phi[G1.zero] = G2.zero
    for y, x, pos in _bfs_tree(G1, gens):
        phi[y] = G2.table[phi[x], images[pos]]
    defined = np.flatnonzero(phi >= 0)
    for g, h in zip(gens, images):
        if phi[g] != h:
            return None
        if not np.array_equal(phi[G1.table[defined, g]], G2.table[phi[defined], h]):
            return None
    if require_injective and len(np.unique(phi[defined])) != len(defined):
        return None
    return phi


def additive_isomorphisms(G1: AbelianGroup, G2: AbelianGroup, cap: int = GROUP_CAP,
                          gens: Sequence[int] | None = None,
                          candidate_filter: Callable[[int, int], bool] | None = None,
                          ) -> Iterator[dict]:
    """Yield every group isomorphism G1 -> G2 as a label -> label dict.

    Generator images are chosen among elements of equal order (optionally
    narrowed by ``candidate_filter(g, h)``) and extended by backtracking.
    Order of the stream is deterministic.
    """
    for phi in _isomorphism_arrays(G1, G2, cap, gens, candidate_filter):
        yield {G1.labels[i]: G2.labels[int(phi[i])] for i in range(G1.order)}


def _isomorphism_arrays(G1, G2, cap=GROUP_CAP, gens=None, candidate_filter=None) -> Iterator[np.ndarray]:
    if max(G1.order, G2.order) > cap:
        raise SizeCapExceeded(f"group order {max(G1.order, G2.order)} exceeds cap {cap}")
    if G1.order != G2.order or G1.order_statistics() != G2.order_statistics():
        return
    gens = list(G1.generating_set() if gens is None else gens)
    orders1 = [G1.element_order(g) for g in gens]
    orders2 = G2.element_orders()
    candidates = []
    for g, o in zip(gens, orders1):
        cands = [h for h in range(G2.order) if orders2[h] == o]
        if candidate_filter is not None:
            cands = [h for h in cands if candidate_filter(g, h)]
        candidates.append(cands)

    def search(j: int, images: list[int]):
        if j == len(gens):
            phi = extend_homomorphism(G1, G2, gens, images)
            if phi is not None and (phi >= 0).all():
                yield phi
            return
        for h in candidates[j]:
            images.append(h)
            if extend_homomorphism(G1, G2, gens[: j + 1], images) is not None:
                yield from search(j + 1, images)
            images.pop()

    yield from search(0, [])
