"""Exception hierarchy.

Verification failures that would indicate either a bug or a genuine
counterexample carry the offending data so it can be written to a report.
"""

from __future__ import annotations


class NCRingError(Exception):
    pass


class MalformedTable(NCRingError):
    pass


class AssociativityViolation(NCRingError):
    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        super().__init__(f"(ab)c != a(bc) at (a, b, c) = {witness}")


class DistributivityViolation(NCRingError):
    def __init__(self, witness: tuple[int, int, int], side: str):
        self.witness = witness
        self.side = side
        super().__init__(f"{side} distributivity fails at {witness}")


class OrderCapExceeded(NCRingError):
    pass


class SizeCapExceeded(NCRingError):
    pass


class NotGeneratingSet(NCRingError):
    pass


class DominationCheckFailed(NCRingError):
    def __init__(self, members, undominated):
        self.members = members
        self.undominated = undominated
        super().__init__(f"set {members} leaves vertex {undominated} undominated")


class IdentityViolated(NCRingError):
    pass


class BoundViolated(NCRingError):
    def __init__(self, bound_id: str, witness):
        self.bound_id = bound_id
        self.witness = witness
        super().__init__(f"bound {bound_id} fails: {witness}")


class CounterexampleFound(NCRingError):
    def __init__(self, ring_name: str, witness):
        self.ring_name = ring_name
        self.witness = witness
        super().__init__(f"counterexample in ring {ring_name!r}: {witness}")


class ConsistencyViolated(NCRingError):
    pass


class TheoremViolated(NCRingError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
