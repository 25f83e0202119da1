"""Exact commuting probability and the edge-count / probability bounds.

Every quantity is an integer or a :class:`fractions.Fraction`; verdicts
never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import BoundViolated, ConsistencyViolated, CounterexampleFound, IdentityViolated
from .graph import NonCommutingGraph, build_graph, graph_isomorphic
from .ring import FiniteRing, center, centralizer

PAIR_SCAN_LIMIT = 64


def smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


@dataclass(frozen=True)
class CommutingStats:
    ring_order: int
    center_order: int
    commuting_pairs: int
    pr: Fraction
    edge_count: int
    smallest_prime: int


def commuting_pairs_direct(R: FiniteRing) -> int:
    """Count ordered commuting pairs by multiplying out every pair.

    Products come from the structure constants, not the cached table, so this
    is an independent route to the same number.
    """
    n = R.order
    count = 0
    for a in range(n):
        count += 1
        for b in range(a + 1, n):
            if R.bilinear_mul(a, b) == R.bilinear_mul(b, a):
                count += 2
    return count


def commuting_probability(R: FiniteRing, cross_check: bool | None = None) -> CommutingStats:
    """Pr(R) from centraliser sizes.

    ``cross_check`` defaults to on for |R| <= 64 and compares against the
    direct pair scan.
    """
    n = R.order
    pairs = sum(len(centralizer(R, r)) for r in R.elements())
    if cross_check is None:
        cross_check = n <= PAIR_SCAN_LIMIT
    if cross_check:
        direct = commuting_pairs_direct(R)
        if direct != pairs:
            raise IdentityViolated(f"{R.name}: centraliser sum {pairs} != pair scan {direct}")
    noncommuting = n * n - pairs
    return CommutingStats(
        ring_order=n,
        center_order=len(center(R)),
        commuting_pairs=pairs,
        pr=Fraction(pairs, n * n),
        edge_count=noncommuting // 2,
        smallest_prime=smallest_prime_factor(n),
    )


@dataclass(frozen=True)
class EdgeIdentity:
    holds: bool
    twice_edges: int
    noncommuting_pairs: int
    edges_from_pr: Fraction


def verify_edge_identity(R: FiniteRing, G: NonCommutingGraph | None = None,
                         stats: CommutingStats | None = None, strict: bool = True) -> EdgeIdentity:
    """2|E| == |R|^2 - #commuting pairs, i.e. |E| == |R|^2 (1 - Pr) / 2."""
    G = build_graph(R) if G is None else G
    stats = commuting_probability(R) if stats is None else stats
    n = R.order
    lhs = 2 * G.edge_count
    rhs = n * n - stats.commuting_pairs
    result = EdgeIdentity(lhs == rhs, lhs, rhs, Fraction(n * n, 2) * (1 - stats.pr))
    if strict and not result.holds:
        raise IdentityViolated(f"{R.name}: 2|E| = {lhs} but |R|^2 - commuting pairs = {rhs}")
    return result


@dataclass(frozen=True)
class BoundRecord:
    bound_id: str
    quantity: str
    relation: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    slack: Fraction
    external: bool = False

    @property
    def equality(self) -> bool:
        return self.slack == 0


@dataclass
class BoundReport:
    ring_name: str
    records: list[BoundRecord] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.records)

    def by_id(self, bound_id: str) -> BoundRecord:
        return next(r for r in self.records if r.bound_id == bound_id)

    def equalities(self) -> list[str]:
        return [r.bound_id for r in self.records if r.equality]


def _record(bound_id, quantity, relation, lhs, rhs, external=False) -> BoundRecord:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = lhs <= rhs if relation == "<=" else lhs >= rhs
    return BoundRecord(bound_id, quantity, relation, lhs, rhs, holds, abs(rhs - lhs), external)


def bound_suite(R: FiniteRing, G: NonCommutingGraph | None = None,
                stats: CommutingStats | None = None, strict: bool = False) -> BoundReport:
    """Evaluate the six inequalities for a non-commutative ring.

    B6 (Pr <= 5/8) is a classical external result, kept as a sanity check.
    """
    if R.is_commutative:
        raise ValueError(f"bound suite needs a non-commutative ring; {R.name} is commutative")
    G = build_graph(R) if G is None else G
    s = commuting_probability(R) if stats is None else stats
    n, z, p, E, pr = s.ring_order, s.center_order, s.smallest_prime, G.edge_count, s.pr
    N = Fraction(n)
    Zf = Fraction(z)
    records = [
        _record("B1", "Pr", ">=", pr, 2 * Zf / N + 1 / N - Zf ** 2 / N ** 2 - Zf / N ** 2),
        _record("B2", "|E|", "<=", E, Fraction((n - z) * (n - p), 2)),
        _record("B3", "|E|", ">=", E, Fraction(3 * n * n, 16)),
        _record("B4", "|E|", ">=", E, Fraction(n * (n - z), 4)),
        _record("B5", "Pr", "<=", pr, Fraction(1, 2) + Zf / (2 * N)),
        _record("B6", "Pr", "<=", pr, Fraction(5, 8), external=True),
    ]
    report = BoundReport(R.name, records)
    if strict:
        for r in records:
            if not r.holds:
                raise BoundViolated(r.bound_id, {"ring": R.name, "lhs": r.lhs, "rhs": r.rhs})
    return report


def trivial_center_target(n: int) -> Fraction:
    return 1 - Fraction(2, n) + Fraction(4, n * n)


@dataclass
class TrivialCenterScan:
    rings_scanned: int
    trivial_center_rings: int
    matches: list[str]
    nearest: tuple[str, Fraction] | None


def scan_trivial_center(rings: Iterable[FiniteRing], strict: bool = True) -> TrivialCenterScan:
    """Look for a non-commutative ring with |Z| = 1 and Pr = 1 - 2/|R| + 4/|R|^2."""
    scanned = trivial = 0
    matches: list[str] = []
    nearest: tuple[str, Fraction] | None = None
    for R in rings:
        if R.is_commutative:
            continue
        scanned += 1
        s = commuting_probability(R, cross_check=False)
        if s.center_order != 1:
            continue
        trivial += 1
        gap = abs(s.pr - trivial_center_target(s.ring_order))
        if gap == 0:
            if strict:
                raise CounterexampleFound(R.name, {"pr": s.pr, "order": s.ring_order})
            matches.append(R.name)
        if nearest is None or gap < nearest[1]:
            nearest = (R.name, gap)
    return TrivialCenterScan(scanned, trivial, matches, nearest)


def pr_graph_consistency(R1: FiniteRing, R2: FiniteRing) -> bool | None:
    """Equal centre orders plus isomorphic graphs force equal Pr.

    Returns None when the hypotheses are not met, True when they are and Pr
    agrees; raises on disagreement.
    """
    s1 = commuting_probability(R1, cross_check=False)
    s2 = commuting_probability(R2, cross_check=False)
    if s1.center_order != s2.center_order:
        return None
    if graph_isomorphic(build_graph(R1), build_graph(R2)) is None:
        return None
    if s1.pr != s2.pr:
        raise ConsistencyViolated(f"{R1.name}, {R2.name}: isomorphic graphs, equal |Z|, "
                                  f"but Pr {s1.pr} != {s2.pr}")
    return True
