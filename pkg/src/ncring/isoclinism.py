"""Z-isoclinism of finite rings.

An isoclinism is a pair of additive isomorphisms, ``phi`` between the
central quotients and ``psi`` between the commutator subgroups, with
``psi([u, v]) == [u', v']`` whenever ``phi`` sends the cosets of u, v to
those of u', v'.  Cosets are handled through their minimal-rank
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SizeCapExceeded, TheoremViolated
from .graph import NonCommutingGraph, build_graph, graph_isomorphic
from .groups import GROUP_CAP, AbelianGroup, _isomorphism_arrays, additive_isomorphisms, extend_homomorphism
from .probability import commuting_probability
from .ring import (
    FiniteRing,
    central_quotient,
    center,
    commutator_subgroup,
    commutators_well_defined_on_cosets,
)

__all__ = [
    "IsoclinismWitness", "IsoclinismVerdict", "IsoclinismTheoremReport",
    "additive_isomorphisms", "commutator_group", "is_z_isoclinic", "verify_witness",
    "graph_map_from_witness", "verify_isoclinism_theorem", "scan_isoclinic_pairs",
]


@dataclass(frozen=True)
class IsoclinismWitness:
    phi: dict[int, int]   # coset representative in R1 -> coset representative in R2
    psi: dict[int, int]   # element of [R1, R1] -> element of [R2, R2]


@dataclass
class IsoclinismVerdict:
    isoclinic: bool
    witness: IsoclinismWitness | None = None
    examined: int = 0
    rejected: int = 0
    reason: str = ""


def commutator_group(R: FiniteRing) -> AbelianGroup:
    return AbelianGroup.from_operation(commutator_subgroup(R).members, R.add, name=f"[{R.name},{R.name}]")


def _require_well_defined(R: FiniteRing) -> None:
    if not commutators_well_defined_on_cosets(R):
        raise TheoremViolated(f"{R.name}: commutator depends on central shifts")


def is_z_isoclinic(R1: FiniteRing, R2: FiniteRing, cap: int = GROUP_CAP) -> IsoclinismVerdict:
    """Search for (phi, psi).

    phi runs over all isomorphisms of the central quotients; each phi forces
    psi on the commutators of representative pairs, and is accepted iff that
    forced partial map is well defined and extends to an isomorphism of the
    commutator subgroups.  The first accepted witness is re-verified.
    """
    for R in (R1, R2):
        _require_well_defined(R)
    Q1, t1 = central_quotient(R1)
    Q2, t2 = central_quotient(R2)
    D1, D2 = commutator_group(R1), commutator_group(R2)
    for G in (Q1, Q2, D1, D2):
        if G.order > cap:
            raise SizeCapExceeded(f"{G.name} has order {G.order} > cap {cap}")
    if Q1.order != Q2.order or Q1.order_statistics() != Q2.order_statistics():
        return IsoclinismVerdict(False, reason="central quotients are not isomorphic")
    if D1.order != D2.order or D1.order_statistics() != D2.order_statistics():
        return IsoclinismVerdict(False, reason="commutator subgroups are not isomorphic")

    K1, K2 = R1.commutator_table, R2.commutator_table
    t1a, t2a = np.array(t1), np.array(t2)
    pairs1 = K1[np.ix_(t1a, t1a)].ravel()
    examined = rejected = 0
    for phi in _isomorphism_arrays(Q1, Q2, cap=cap):
        examined += 1
        images = t2a[phi]
        pairs2 = K2[np.ix_(images, images)].ravel()
        forced: dict[int, int] = {}
        consistent = True
        for c1, c2 in zip(pairs1.tolist(), pairs2.tolist()):
            if forced.setdefault(c1, c2) != c2:
                consistent = False
                break
        if not consistent:
            rejected += 1
            continue
        gens = [D1.index[c] for c in forced]
        imgs = [D2.index[forced[c]] for c in forced]
        psi = extend_homomorphism(D1, D2, gens, imgs)
        if psi is None or (psi < 0).any():
            rejected += 1
            continue
        witness = IsoclinismWitness(
            phi={t1[i]: t2[int(phi[i])] for i in range(len(t1))},
            psi={D1.labels[i]: D2.labels[int(psi[i])] for i in range(D1.order)},
        )
        if not verify_witness(R1, R2, witness):
            raise TheoremViolated(f"search produced an invalid witness for {R1.name}, {R2.name}",
                                  witness)
        return IsoclinismVerdict(True, witness, examined, rejected)
    return IsoclinismVerdict(False, None, examined, rejected, "no compatible pair (phi, psi)")


def _is_additive_bijection(mapping: dict[int, int], add1, add2) -> bool:
    if len(set(mapping.values())) != len(mapping):
        return False
    for u in mapping:
        for v in mapping:
            s = add1(u, v)
            if s not in mapping or mapping[s] != add2(mapping[u], mapping[v]):
                return False
    return True


def verify_witness(R1: FiniteRing, R2: FiniteRing, w: IsoclinismWitness) -> bool:
    """Re-check a witness from scratch, over all element pairs of R1."""
    if not (commutators_well_defined_on_cosets(R1) and commutators_well_defined_on_cosets(R2)):
        return False
    Q1, t1 = central_quotient(R1)
    Q2, t2 = central_quotient(R2)
    if sorted(w.phi) != t1 or sorted(w.phi.values()) != t2:
        return False
    if not _is_additive_bijection(w.phi, lambda a, b: int(Q1.rep[R1.add(a, b)]),
                                  lambda a, b: int(Q2.rep[R2.add(a, b)])):
        return False
    D1, D2 = commutator_subgroup(R1), commutator_subgroup(R2)
    if sorted(w.psi) != list(D1.members) or sorted(w.psi.values()) != list(D2.members):
        return False
    if not _is_additive_bijection(w.psi, R1.add, R2.add):
        return False
    image = [w.phi[int(Q1.rep[u])] for u in R1.elements()]
    for u in R1.elements():
        for v in R1.elements():
            if w.psi[R1.commutator(u, v)] != R2.commutator(image[u], image[v]):
                return False
    return True


def graph_map_from_witness(R1: FiniteRing, R2: FiniteRing, w: IsoclinismWitness) -> dict[int, int]:
    """alpha(r + z) = phi(r) + theta(z), theta the rank-order bijection Z(R1) -> Z(R2).

    Requires |Z(R1)| == |Z(R2)|.  Restricted to non-central elements this
    is the candidate isomorphism between the non-commuting graphs.
    """
    Z1, Z2 = center(R1).members, center(R2).members
    if len(Z1) != len(Z2):
        raise ValueError("centres differ in order")
    theta = dict(zip(Z1, Z2))
    alpha = {}
    for r, r2 in w.phi.items():
        for z in Z1:
            alpha[R1.add(r, z)] = R2.add(r2, theta[z])
    return alpha


def _preserves_adjacency(G1: NonCommutingGraph, G2: NonCommutingGraph, m: dict[int, int]) -> bool:
    if sorted(m[v] for v in G1.vertices) != list(G2.vertices):
        return False
    return all(G1.adjacent(a, b) == G2.adjacent(m[a], m[b])
               for a in G1.vertices for b in G1.vertices if a < b)


@dataclass
class IsoclinismTheoremReport:
    ring1: str
    ring2: str
    verdict: IsoclinismVerdict
    centers_equal: bool
    graphs_isomorphic: bool | None = None
    witness_map_is_isomorphism: bool | None = None
    pr_equal: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(x is not False for x in (self.graphs_isomorphic,
                                            self.witness_map_is_isomorphism, self.pr_equal))


def verify_isoclinism_theorem(R1: FiniteRing, R2: FiniteRing, strict: bool = True) -> IsoclinismTheoremReport:
    """If R1, R2 are Z-isoclinic: Pr(R1) == Pr(R2); if also |Z| agree: graphs isomorphic."""
    if R1.is_commutative or R2.is_commutative:
        raise ValueError("both rings must be non-commutative")
    verdict = is_z_isoclinic(R1, R2)
    rep = IsoclinismTheoremReport(R1.name, R2.name, verdict, len(center(R1)) == len(center(R2)))
    if not verdict.isoclinic:
        rep.notes.append(f"not isoclinic: {verdict.reason}")
        return rep
    rep.pr_equal = commuting_probability(R1, cross_check=False).pr == \
        commuting_probability(R2, cross_check=False).pr
    if rep.centers_equal:
        G1, G2 = build_graph(R1), build_graph(R2)
        rep.graphs_isomorphic = graph_isomorphic(G1, G2) is not None
        rep.witness_map_is_isomorphism = _preserves_adjacency(
            G1, G2, graph_map_from_witness(R1, R2, verdict.witness))
    else:
        rep.notes.append("centre orders differ; graph conclusion not applicable")
    if strict and not rep.ok:
        raise TheoremViolated(f"isoclinism theorem fails for {R1.name}, {R2.name}", rep)
    return rep


def _invariants(R: FiniteRing):
    Q, _ = central_quotient(R)
    D = commutator_group(R)
    return (Q.order_statistics(), D.order_statistics())


@dataclass
class IsoclinismScan:
    pairs_considered: int
    pairs_searched: int
    isoclinic: list[IsoclinismTheoremReport]

    @property
    def same_center(self) -> list[IsoclinismTheoremReport]:
        return [r for r in self.isoclinic if r.centers_equal]


def scan_isoclinic_pairs(rings, with_opposites: bool = True, strict: bool = True) -> IsoclinismScan:
    """Check the theorem on every pair of non-commutative rings, and each ring with its opposite.

    Pairs whose central quotients or commutator subgroups differ as groups
    cannot be isoclinic and are skipped without a search.
    """
    from .families import opposite

    rings = [R for R in rings if not R.is_commutative]
    pairs = [(a, b) for i, a in enumerate(rings) for b in rings[i + 1:]]
    if with_opposites:
        pairs += [(R, opposite(R)) for R in rings]
    cache: dict[int, tuple] = {}

    def inv(R):
        if id(R) not in cache:
            cache[id(R)] = (_invariants(R), R)
        return cache[id(R)][0]

    searched = 0
    found = []
    for R1, R2 in pairs:
        if inv(R1) != inv(R2):
            continue
        searched += 1
        report = verify_isoclinism_theorem(R1, R2, strict=strict)
        if report.verdict.isoclinic:
            found.append(report)
    return IsoclinismScan(len(pairs), searched, found)
