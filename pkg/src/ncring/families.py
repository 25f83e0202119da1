"""Standard ring families, exhaustive census of rings on a shape, ring isomorphism."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import OrderCapExceeded
from .groups import AbelianGroup, _isomorphism_arrays
from .ring import (
    DEFAULT_ORDER_CAP,
    AbelianShape,
    _add_table,
    _coord_array,
    FiniteRing,
    center,
    validate,
)

CENSUS_CAP = 16
FAMILY_KINDS = ("matrix", "upper_triangular", "row_ring", "zero_ring", "modular", "direct_product")


@dataclass
class FamilySpec:
    kind: str
    n: int = 2
    m: int = 2
    shape: tuple[int, ...] | None = None
    operands: list[FiniteRing] = field(default_factory=list)


def _zero(k: int) -> tuple[int, ...]:
    return (0,) * k


def _unit(k: int, i: int) -> tuple[int, ...]:
    return tuple(1 if t == i else 0 for t in range(k))


def matrix_ring(n: int, m: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """M_n(Z_m); generator E_ij sits at position i*n + j."""
    _check_params(n, m)
    k = n * n
    if m ** k > order_cap:
        raise OrderCapExceeded(f"M_{n}(Z_{m}) has order {m ** k} > cap {order_cap}")
    sc = [[_zero(k)] * k for _ in range(k)]
    for i, j, l in itertools.product(range(n), repeat=3):
        sc[i * n + j][j * n + l] = _unit(k, i * n + l)
    identity = tuple(1 if p // n == p % n else 0 for p in range(k))
    return validate([m] * k, structure_constants=sc, unity=identity,
                    name=f"M{n}(Z{m})", order_cap=order_cap)


def upper_triangular_ring(n: int, m: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """UT_n(Z_m); generators E_ij with i <= j in lexicographic order."""
    _check_params(n, m)
    pos = [(i, j) for i in range(n) for j in range(i, n)]
    k = len(pos)
    if m ** k > order_cap:
        raise OrderCapExceeded(f"UT_{n}(Z_{m}) has order {m ** k} > cap {order_cap}")
    index = {p: t for t, p in enumerate(pos)}
    sc = [[_zero(k)] * k for _ in range(k)]
    for (i, j), (j2, l) in itertools.product(pos, pos):
        if j == j2:
            sc[index[i, j]][index[j2, l]] = _unit(k, index[i, l])
    identity = tuple(1 if i == j else 0 for i, j in pos)
    return validate([m] * k, structure_constants=sc, unity=identity,
                    name=f"UT{n}(Z{m})", order_cap=order_cap)


def row_ring(m: int) -> FiniteRing:
    """{[[x, y], [0, 0]]} over Z_m with e1 = E11, e2 = E12."""
    _check_params(1, m)
    sc = [[(1, 0), (0, 1)],
          [(0, 0), (0, 0)]]
    return validate([m, m], structure_constants=sc, name=f"row_ring({m})")


def zero_ring(shape: Sequence[int]) -> FiniteRing:
    k = len(shape)
    sc = [[_zero(k)] * k for _ in range(k)]
    return validate(list(shape), structure_constants=sc,
                    name=f"zero_ring({','.join(map(str, shape))})")


def modular_ring(m: int) -> FiniteRing:
    _check_params(1, m)
    return validate([m], structure_constants=[[(1,)]], unity=(1,), name=f"Z{m}")


def direct_product(*rings: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    moduli: list[int] = []
    offsets = []
    for R in rings:
        offsets.append(len(moduli))
        moduli.extend(R.shape.moduli)
    k = len(moduli)
    if math.prod(moduli) > order_cap:
        raise OrderCapExceeded(f"product order {math.prod(moduli)} > cap {order_cap}")
    sc = [[_zero(k)] * k for _ in range(k)]
    for R, off in zip(rings, offsets):
        kr = R.shape.rank_len
        for i in range(kr):
            for j in range(kr):
                entry = [0] * k
                entry[off:off + kr] = R.constants[i][j]
                sc[off + i][off + j] = tuple(entry)
    unity = None
    if all(R.has_unity for R in rings):
        unity = tuple(c for R in rings for c in R.coords(R.unity))
    return validate(moduli, structure_constants=sc, unity=unity,
                    name=" x ".join(R.name for R in rings), order_cap=order_cap)


def opposite(R: FiniteRing) -> FiniteRing:
    k = R.shape.rank_len
    sc = [[R.constants[j][i] for j in range(k)] for i in range(k)]
    name = R.name[:-3] if R.name.endswith("^op") else R.name + "^op"
    return validate(R.shape, structure_constants=sc, name=name)


def _check_params(n: int, m: int) -> None:
    if n < 1 or m < 2:
        raise ValueError(f"need n >= 1 and m >= 2, got n={n}, m={m}")


def build_family(spec: FamilySpec, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    kind = spec.kind
    if kind == "matrix":
        return matrix_ring(spec.n, spec.m, order_cap)
    if kind == "upper_triangular":
        return upper_triangular_ring(spec.n, spec.m, order_cap)
    if kind == "row_ring":
        return row_ring(spec.m)
    if kind == "zero_ring":
        shape = spec.shape or (spec.m,)
        AbelianShape(tuple(shape)).check_cap(order_cap)
        return zero_ring(shape)
    if kind == "modular":
        AbelianShape((spec.m,)).check_cap(order_cap)
        return modular_ring(spec.m)
    if kind == "direct_product":
        if len(spec.operands) < 2:
            raise ValueError("direct_product needs at least two operands")
        return direct_product(*spec.operands, order_cap=order_cap)
    raise ValueError(f"unknown family kind {kind!r}; expected one of {FAMILY_KINDS}")


# --- census ----------------------------------------------------------------

def abelian_shapes(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor shapes (d_1 | d_2 | ...) of all abelian groups of order n."""
    if n < 2:
        return []
    per_prime = []
    for p, e in factorize(n):
        per_prime.append([(p, part) for part in _partitions(e)])
    shapes = []
    for combo in itertools.product(*per_prime):
        length = max(len(part) for _, part in combo)
        factors = []
        for i in range(length):
            factors.append(math.prod(p ** part[i] for p, part in combo if i < len(part)))
        shapes.append(tuple(sorted(factors)))
    return sorted(shapes, key=lambda s: (len(s), s))


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _partitions(e: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = e if largest is None else largest
    if e == 0:
        return [()]
    out = []
    for first in range(min(e, largest), 0, -1):
        for rest in _partitions(e - first, first):
            out.append((first,) + rest)
    return out


@dataclass
class CensusOptions:
    shape: tuple[int, ...]
    dedupe_isomorphism: bool = False
    require_noncommutative: bool = False
    require_unity: bool = False
    limit: int | None = None
    order_cap: int = CENSUS_CAP
    require_associative: bool = field(default=True, init=False)


def _associative_tables(shape: AbelianShape) -> Iterator[tuple[tuple[tuple[int, ...], ...], ...]]:
    """Backtrack over structure constants, pruning with generator-triple associativity.

    Both (xy)z and x(yz) are additive in each argument, so agreement on all
    generator triples is equivalent to associativity.
    """
    k = shape.rank_len
    mod = np.array(shape.moduli)
    allowed = {}
    for i in range(k):
        for j in range(k):
            g = math.gcd(shape.moduli[i], shape.moduli[j])
            allowed[i, j] = [c for c in itertools.product(*(range(d) for d in shape.moduli))
                             if not any((g * x) % d for x, d in zip(c, shape.moduli))]
    cells = [(i, j) for i in range(k) for j in range(k)]
    triples = list(itertools.product(range(k), repeat=3))
    table: dict[tuple[int, int], tuple[int, ...]] = {}

    def ready(i, j, l):
        if (i, j) not in table or (j, l) not in table:
            return False
        return (all((t, l) in table for t, c in enumerate(table[i, j]) if c)
                and all((i, t) in table for t, c in enumerate(table[j, l]) if c))

    def holds(i, j, l):
        lhs = np.zeros(k, dtype=np.int64)
        for t, c in enumerate(table[i, j]):
            if c:
                lhs += c * np.array(table[t, l])
        rhs = np.zeros(k, dtype=np.int64)
        for t, c in enumerate(table[j, l]):
            if c:
                rhs += c * np.array(table[i, t])
        return np.array_equal(lhs % mod, rhs % mod)

    def search(pos: int, pending: list):
        if pos == len(cells):
            yield tuple(tuple(table[i, j] for j in range(k)) for i in range(k))
            return
        cell = cells[pos]
        for value in allowed[cell]:
            table[cell] = value
            rest = []
            ok = True
            for tr in pending:
                if ready(*tr):
                    if not holds(*tr):
                        ok = False
                        break
                else:
                    rest.append(tr)
            if ok:
                yield from search(pos + 1, rest)
            del table[cell]

    yield from search(0, triples)


@lru_cache(maxsize=None)
def shape_automorphisms(moduli: tuple[int, ...]) -> np.ndarray:
    """All additive automorphisms of the shape, as rank permutations (one per row)."""
    shape = AbelianShape(moduli)
    G = AbelianGroup(range(shape.order), _add_table(shape, _coord_array(shape)))
    gens = [shape.rank(shape.generator(i)) for i in range(len(moduli))]
    perms = list(_isomorphism_arrays(G, G, cap=shape.order, gens=gens))
    return np.array(perms, dtype=np.int64)


def canonical_form(R: FiniteRing) -> bytes:
    """Lexicographically minimal full table over all additive automorphisms."""
    P = shape_automorphisms(R.shape.moduli)
    inv = np.argsort(P, axis=1)
    T = R.mul_table
    relabelled = T[inv[:, :, None], inv[:, None, :]]            # T[s^-1 a, s^-1 b]
    flat = np.take_along_axis(P, relabelled.reshape(len(P), -1), axis=1)
    return flat[np.lexsort(flat.T[::-1])[0]].astype(np.int16).tobytes()


def enumerate_rings(opts: CensusOptions) -> Iterator[FiniteRing]:
    """Every associative bilinear multiplication on ``opts.shape``, in a fixed order.

    With deduplication, the first representative of each isomorphism class
    in enumeration order is kept.
    """
    shape = AbelianShape(tuple(opts.shape))
    if shape.order > opts.order_cap:
        raise OrderCapExceeded(f"census shape order {shape.order} exceeds cap {opts.order_cap}")
    seen: set[bytes] = set()
    count = 0
    label = ",".join(map(str, shape.moduli))
    for index, sc in enumerate(_associative_tables(shape)):
        R = validate(shape, structure_constants=sc, name=f"[{label}]#{index}")
        if opts.require_noncommutative and R.is_commutative:
            continue
        if opts.require_unity and not R.has_unity:
            continue
        if opts.dedupe_isomorphism:
            key = canonical_form(R)
            if key in seen:
                continue
            seen.add(key)
        yield R
        count += 1
        if opts.limit is not None and count >= opts.limit:
            return


def census(max_order: int, noncommutative: bool = True, dedupe: bool = True) -> list[FiniteRing]:
    out = []
    for n in range(2, max_order + 1):
        for shape in abelian_shapes(n):
            out.extend(enumerate_rings(CensusOptions(shape, dedupe_isomorphism=dedupe,
                                                     require_noncommutative=noncommutative)))
    return out


# --- isomorphism -----------------------------------------------------------

def _fingerprints(R: FiniteRing) -> list[tuple]:
    G = R.additive_group
    T = R.mul_table
    C = R.commute_matrix
    Z = R.commute_matrix.all(axis=1)
    out = []
    for x in range(R.order):
        sq = int(T[x, x])
        out.append((G.element_order(x), int(C[x].sum()), bool(Z[x]), G.element_order(sq),
                    sq == x, int((T[x] == 0).sum()), int((T[:, x] == 0).sum())))
    return out


def ring_isomorphic(R1: FiniteRing, R2: FiniteRing, cap: int = 64) -> dict[int, int] | None:
    """A ring isomorphism R1 -> R2 as a rank map, or None.

    Generator images range over elements with matching fingerprints;
    any candidate is confirmed by transporting the full table.
    """
    if max(R1.order, R2.order) > cap:
        raise OrderCapExceeded(f"ring isomorphism search capped at order {cap}")
    if R1.order != R2.order or R1.has_unity != R2.has_unity:
        return None
    if len(center(R1)) != len(center(R2)) or R1.is_commutative != R2.is_commutative:
        return None
    f1, f2 = _fingerprints(R1), _fingerprints(R2)
    if sorted(f1) != sorted(f2):
        return None
    gens = [R1.rank(R1.shape.generator(i)) for i in range(R1.shape.rank_len)]
    T1, T2 = R1.mul_table, R2.mul_table
    for phi in _isomorphism_arrays(R1.additive_group, R2.additive_group, cap=cap, gens=gens,
                                   candidate_filter=lambda g, h: f1[g] == f2[h]):
        if np.array_equal(phi[T1], T2[np.ix_(phi, phi)]):
            return {a: int(phi[a]) for a in range(R1.order)}
    return None
