"""Finite rings on a mixed-radix abelian group.

Elements are addressed by their mixed-radix *rank*: coordinates
``(c_1, ..., c_k)`` with ``0 <= c_i < d_i`` map to
``sum(c_i * prod(d_j for j > i))``, so rank order is lexicographic order on
coordinates and the zero element has rank 0.

Multiplication is stored as structure constants (the product of additive
generators ``e_i * e_j``) and materialised as a full ``order x order``
table on demand.  Rings need not have a unity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AssociativityViolation,
    DistributivityViolation,
    MalformedTable,
    OrderCapExceeded,
)
from .groups import AbelianGroup

DEFAULT_ORDER_CAP = 256

Coords = tuple[int, ...]


@dataclass(frozen=True)
class AbelianShape:
    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(d) for d in self.moduli))
        if not self.moduli:
            raise MalformedTable("shape needs at least one modulus")
        if any(d < 2 for d in self.moduli):
            raise MalformedTable(f"every modulus must be >= 2, got {list(self.moduli)}")

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank_len(self) -> int:
        return len(self.moduli)

    @cached_property
    def weights(self) -> np.ndarray:
        w = [1] * len(self.moduli)
        for i in range(len(self.moduli) - 2, -1, -1):
            w[i] = w[i + 1] * self.moduli[i + 1]
        return np.array(w, dtype=np.int64)

    def rank(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.moduli):
            raise MalformedTable(f"expected {len(self.moduli)} coordinates, got {list(coords)}")
        for c, d in zip(coords, self.moduli):
            if not 0 <= c < d:
                raise MalformedTable(f"coordinate {c} out of range for modulus {d}")
        return int(np.dot(self.weights, coords))

    def coords(self, rank: int) -> Coords:
        out = []
        for w, d in zip(self.weights, self.moduli):
            out.append(int(rank // w) % d)
        return tuple(out)

    def generator(self, i: int) -> Coords:
        return tuple(1 if j == i else 0 for j in range(len(self.moduli)))

    def check_cap(self, cap: int = DEFAULT_ORDER_CAP) -> None:
        if self.order > cap:
            raise OrderCapExceeded(f"order {self.order} exceeds cap {cap}")


@dataclass(frozen=True)
class ElementSet:
    """Sorted, duplicate-free set of element ranks."""

    members: tuple[int, ...]
    additive_closed: bool = False
    multiplicative_closed: bool = False

    @classmethod
    def from_iter(cls, items: Iterable[int], **flags) -> ElementSet:
        return cls(tuple(sorted({int(x) for x in items})), **flags)

    @classmethod
    def from_mask(cls, mask: np.ndarray, **flags) -> ElementSet:
        return cls(tuple(int(x) for x in np.flatnonzero(mask)), **flags)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return int(x) in self._lookup

    @cached_property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.members)

    def issubset(self, other: ElementSet) -> bool:
        return self._lookup <= other._lookup


class FiniteRing:
    """A validated finite ring.  Build instances with :func:`validate`."""

    def __init__(self, shape: AbelianShape, constants, mul_table: np.ndarray,
                 unity: int | None, name: str):
        self.shape = shape
        self.constants: tuple[tuple[Coords, ...], ...] = constants
        self.mul_table = mul_table
        self.mul_table.setflags(write=False)
        self.unity = unity
        self.name = name

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, shape={list(self.shape.moduli)})"

    @property
    def order(self) -> int:
        return self.shape.order

    @property
    def has_unity(self) -> bool:
        return self.unity is not None

    def elements(self) -> range:
        return range(self.order)

    def rank(self, coords: Sequence[int]) -> int:
        return self.shape.rank(coords)

    def coords(self, rank: int) -> Coords:
        return self.shape.coords(rank)

    @cached_property
    def coord_array(self) -> np.ndarray:
        return _coord_array(self.shape)

    @cached_property
    def add_table(self) -> np.ndarray:
        return _add_table(self.shape, self.coord_array)

    @cached_property
    def neg_table(self) -> np.ndarray:
        c = (-self.coord_array) % np.array(self.shape.moduli)
        return c @ self.shape.weights

    @cached_property
    def commutator_table(self) -> np.ndarray:
        T = self.mul_table
        return self.add_table[T, self.neg_table[T.T]]

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        return self.mul_table == self.mul_table.T

    @cached_property
    def additive_group(self) -> AbelianGroup:
        return AbelianGroup(range(self.order), self.add_table, name=f"({self.name}, +)")

    @property
    def is_commutative(self) -> bool:
        return bool(self.commute_matrix.all())

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def commutator(self, a: int, b: int) -> int:
        return int(self.commutator_table[a, b])

    def bilinear_mul(self, a: int, b: int) -> int:
        """Product computed straight from the structure constants.

        Independent of ``mul_table``; used to cross-check it.
        """
        ca, cb = self.coords(a), self.coords(b)
        k = self.shape.rank_len
        acc = [0] * k
        for i in range(k):
            if not ca[i]:
                continue
            for j in range(k):
                if not cb[j]:
                    continue
                s = ca[i] * cb[j]
                for t, c in enumerate(self.constants[i][j]):
                    acc[t] += s * c
        return self.rank([x % d for x, d in zip(acc, self.shape.moduli)])


def _coord_array(shape: AbelianShape) -> np.ndarray:
    n = shape.order
    r = np.arange(n, dtype=np.int64)
    return (r[:, None] // shape.weights[None, :]) % np.array(shape.moduli)[None, :]


def _add_table(shape: AbelianShape, C: np.ndarray) -> np.ndarray:
    mod = np.array(shape.moduli)
    s = (C[:, None, :] + C[None, :, :]) % mod
    return s @ shape.weights


def _table_from_constants(shape: AbelianShape, S: np.ndarray) -> np.ndarray:
    C = _coord_array(shape)
    prod = np.einsum("ai,bj,ijt->abt", C, C, S) % np.array(shape.moduli)
    return prod @ shape.weights


def first_associativity_failure(T: np.ndarray) -> tuple[int, int, int] | None:
    for a in range(T.shape[0]):
        lhs = T[T[a]]      # (ab)c indexed [b, c]
        rhs = T[a][T]      # a(bc) indexed [b, c]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            return (a, int(b), int(c))
    return None


def _first_distributivity_failure(T: np.ndarray, A: np.ndarray):
    for a in range(T.shape[0]):
        row = T[a]
        bad = np.argwhere(row[A] != A[row[:, None], row[None, :]])
        if len(bad):
            return (a, int(bad[0][0]), int(bad[0][1])), "left"
        col = T[:, a]
        bad = np.argwhere(col[A] != A[col[:, None], col[None, :]])
        if len(bad):
            return (int(bad[0][0]), int(bad[0][1]), a), "right"
    return None


def _find_unity(T: np.ndarray) -> int | None:
    n = T.shape[0]
    ident = np.arange(n)
    for u in range(n):
        if np.array_equal(T[u], ident) and np.array_equal(T[:, u], ident):
            return u
    return None


def validate(shape: AbelianShape | Sequence[int], structure_constants=None, full_table=None,
             unity: Sequence[int] | None = None, name: str = "R",
             order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Check the ring axioms exhaustively and return the ring.

    Give exactly one of ``structure_constants`` (``k x k`` nested list of
    coordinate vectors, ``e_i * e_j``) or ``full_table`` (``order x order``
    list of element ranks).  A unity is detected automatically; a declared
    ``unity`` must actually be one.
    """
    if not isinstance(shape, AbelianShape):
        shape = AbelianShape(tuple(shape))
    shape.check_cap(order_cap)
    if (structure_constants is None) == (full_table is None):
        raise MalformedTable("give exactly one of structure_constants or full_table")
    k, n = shape.rank_len, shape.order

    if full_table is not None:
        try:
            T = np.array(full_table, dtype=np.int64)
        except (ValueError, TypeError):
            raise MalformedTable("full table is not a rectangular integer array") from None
        if T.shape != (n, n):
            raise MalformedTable(f"full table must be {n}x{n}, got {T.shape}")
        if T.min() < 0 or T.max() >= n:
            raise MalformedTable("full table entry out of range")
        fail = _first_distributivity_failure(T, _add_table(shape, _coord_array(shape)))
        if fail is not None:
            raise DistributivityViolation(*fail)
        gen_ranks = [shape.rank(shape.generator(i)) for i in range(k)]
        constants = tuple(tuple(shape.coords(int(T[gi, gj])) for gj in gen_ranks) for gi in gen_ranks)
    else:
        constants = _normalise_constants(shape, structure_constants)

    S = np.array(constants, dtype=np.int64).reshape(k, k, k)
    for i in range(k):
        for j in range(k):
            g = math.gcd(shape.moduli[i], shape.moduli[j])
            if any((g * c) % d for c, d in zip(constants[i][j], shape.moduli)):
                raise MalformedTable(
                    f"e{i}*e{j} = {constants[i][j]} has order not dividing {g}; "
                    "bilinear extension is ill-defined")
    table = _table_from_constants(shape, S)
    if full_table is not None and not np.array_equal(table, T):
        # unreachable for a distributive table
        raise MalformedTable("full table is not bilinear")

    witness = first_associativity_failure(table)
    if witness is not None:
        raise AssociativityViolation(witness)

    found = _find_unity(table)
    if unity is not None:
        u = shape.rank(tuple(unity))
        if found != u:
            raise MalformedTable(f"declared unity {tuple(unity)} is not a multiplicative identity")
    return FiniteRing(shape, constants, table, found, name)


def _normalise_constants(shape: AbelianShape, sc) -> tuple[tuple[Coords, ...], ...]:
    k = shape.rank_len
    try:
        rows = [list(r) for r in sc]
    except TypeError:
        raise MalformedTable("structure constants must be a k x k array of coordinate vectors") from None
    if len(rows) != k or any(len(r) != k for r in rows):
        raise MalformedTable(f"structure constants must be {k}x{k}")
    out = []
    for row in rows:
        new_row = []
        for entry in row:
            entry = tuple(int(c) for c in entry)
            shape.rank(entry)  # range and length check
            new_row.append(entry)
        out.append(tuple(new_row))
    return tuple(out)


# --- structure -------------------------------------------------------------

def centralizer(R: FiniteRing, r: int) -> ElementSet:
    return ElementSet.from_mask(R.commute_matrix[r], additive_closed=True)


def center(R: FiniteRing) -> ElementSet:
    return ElementSet.from_mask(R.commute_matrix.all(axis=1),
                                additive_closed=True, multiplicative_closed=True)


def _closure_mask(R: FiniteRing, seed: np.ndarray, multiplicative: bool) -> np.ndarray:
    mask = seed.copy()
    mask[0] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.add_table[np.ix_(idx, idx)].ravel()] = True
        new[R.neg_table[idx]] = True
        if multiplicative:
            new[R.mul_table[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(new, mask):
            return mask
        mask = new


def generated_subring(R: FiniteRing, S: Iterable[int], unital: bool = False) -> ElementSet:
    """Smallest subset containing S closed under +, - and *.

    With ``unital=True`` (only meaningful when R has a unity) the unity is
    adjoined first, giving the unital subring generated by S.
    """
    seed = np.zeros(R.order, dtype=bool)
    seed[list(S)] = True
    if unital:
        if R.unity is None:
            raise ValueError(f"ring {R.name!r} has no unity")
        seed[R.unity] = True
    return ElementSet.from_mask(_closure_mask(R, seed, True),
                                additive_closed=True, multiplicative_closed=True)


def is_generating_set(R: FiniteRing, S: Iterable[int], unital: bool = False) -> bool:
    return len(generated_subring(R, S, unital)) == R.order


def additive_span(R: FiniteRing, S: Iterable[int]) -> ElementSet:
    seed = np.zeros(R.order, dtype=bool)
    seed[list(S)] = True
    return ElementSet.from_mask(_closure_mask(R, seed, False), additive_closed=True)


def commutator_subgroup(R: FiniteRing) -> ElementSet:
    """Additive subgroup generated by all commutators ab - ba."""
    return additive_span(R, np.unique(R.commutator_table))


class QuotientGroup(AbelianGroup):
    """Additive quotient R / Z(R), labelled by the minimal-rank coset representative."""

    def __init__(self, R: FiniteRing, rep: np.ndarray, transversal: list[int]):
        pos = {r: i for i, r in enumerate(transversal)}
        t = np.array(transversal, dtype=np.int64)
        table = np.vectorize(pos.__getitem__)(rep[R.add_table[np.ix_(t, t)]]) if len(t) else []
        super().__init__(transversal, table, name=f"{R.name}/Z")
        self.ring = R
        self.rep = rep

    def coset(self, r: int) -> ElementSet:
        return ElementSet.from_mask(self.rep == self.rep[r])

    def cosets(self) -> list[ElementSet]:
        return [self.coset(r) for r in self.labels]


def central_quotient(R: FiniteRing) -> tuple[QuotientGroup, list[int]]:
    Z = np.array(center(R).members, dtype=np.int64)
    rep = R.add_table[:, Z].min(axis=1)
    transversal = sorted({int(x) for x in rep})
    return QuotientGroup(R, rep, transversal), transversal


def commutators_well_defined_on_cosets(R: FiniteRing) -> bool:
    """[u + z, v] == [u, v] for all u, v and central z.

    The second slot follows by antisymmetry.
    """
    K = R.commutator_table
    for z in center(R):
        if not np.array_equal(K[R.add_table[:, z], :], K):
            return False
    return True
