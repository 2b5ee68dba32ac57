"""Compatibility of finite functions with every congruence, decided three
ways: directly against the congruence lattice, through products of block
applications, and through iterates of the modal contraction operator.

The block and iterate routes decide the same condition: the symmetric
implication product of the two output tuples must land in the filter
generated by the slotwise star values of the argument pairs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .filters import DEFAULT_CONGRUENCE_CAP, all_congruences_direct, \
    generate_filter_lambda
from .modal import ModalRirig, lambda_iter, lambda_op, reachable_values

DEFAULT_SEED = 0x161


@dataclass(frozen=True)
class FiniteFunction:
    """A total k-ary map on indices, stored as a flat row-major table
    (last argument varies fastest)."""

    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        object.__setattr__(self, "table", tuple(int(x) for x in self.table))
        n = round(len(self.table) ** (1 / self.arity))
        for cand in (n - 1, n, n + 1):
            if cand >= 1 and cand ** self.arity == len(self.table):
                object.__setattr__(self, "_size", cand)
                return
        raise ValueError("table length is not a perfect arity power")

    def size(self) -> int:
        return self._size

    def __call__(self, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self._size + a
        return self.table[idx]


def random_function(n: int, arity: int, rng: random.Random) -> FiniteFunction:
    return FiniteFunction(arity, tuple(rng.randrange(n)
                                       for _ in range(n ** arity)))


def all_unary_functions(n: int):
    for table in itertools.product(range(n), repeat=n):
        yield FiniteFunction(1, table)


def slot_function(f: FiniteFunction, anchor: tuple[int, ...], i: int,
                  n: int) -> FiniteFunction:
    """The unary section through `anchor` in slot i."""
    table = []
    for x in range(n):
        args = list(anchor)
        args[i] = x
        table.append(f(*args))
    return FiniteFunction(1, tuple(table))


@dataclass(frozen=True)
class CompatReport:
    """compatible is None when a bounded search could not decide.

    witnesses maps a pair of argument tuples to the factor list certifying
    it (route-specific shape); failing names the first violation found:
    (congruence, tuple pair) for the direct route, a bare tuple pair for
    the witness routes.
    """

    compatible: Optional[bool]
    witnesses: Optional[dict] = None
    failing: Optional[tuple] = None

    @property
    def verdict(self) -> str:
        if self.compatible is None:
            return "undecided"
        return "compatible" if self.compatible else "incompatible"


def _check_size(A: ModalRirig, f: FiniteFunction):
    if f.size() != A.size:
        raise ValueError("function table size does not match the algebra")


def is_compatible_direct(A: ModalRirig, f: FiniteFunction,
                         cap: int = DEFAULT_CONGRUENCE_CAP) -> CompatReport:
    """Quantify over every congruence and every componentwise-related pair
    of argument tuples; report the first violation."""
    _check_size(A, f)
    n, k = A.size, f.arity
    for theta in all_congruences_direct(A, cap=cap):
        classes = len(set(theta))
        if classes in (1, n):
            continue  # the bounds of the lattice cannot be violated
        related = [(a, b) for a in range(n) for b in range(n)
                   if theta[a] == theta[b]]
        for pairs in itertools.product(related, repeat=k):
            left = f(*(p[0] for p in pairs))
            right = f(*(p[1] for p in pairs))
            if theta[left] != theta[right]:
                return CompatReport(False, failing=(theta, tuple(pairs)))
    return CompatReport(True)


@lru_cache(maxsize=None)
def _star_table(A: ModalRirig):
    return tuple(tuple(A.star(a, b) for b in range(A.size))
                 for a in range(A.size))


def _product_closure_upset(A: ModalRirig, values):
    """Up-set of all finite products (including the empty one) of the given
    values, by breadth-first closure."""
    reached = {A.one}
    frontier = {A.one}
    while frontier:
        nxt = set()
        for p in frontier:
            for v in values:
                q = A.prod[p][v]
                if q not in reached:
                    nxt.add(q)
        reached |= nxt
        frontier = nxt
    return frozenset(y for y in range(A.size)
                     if any(A.leq(p, y) for p in reached))


def _block_filter(A: ModalRirig, starts, bound=None):
    values = set()
    for c in starts:
        values |= reachable_values(A, c, bound).keys()
    return _product_closure_upset(A, values)


@lru_cache(maxsize=None)
def _small_filters_blocks(A: ModalRirig):
    """Block-route generated filter of every <=2-element set of elements,
    keyed by the sorted value tuple."""
    n = A.size
    out = {}
    for c in range(n):
        out[(c,)] = _block_filter(A, (c,))
        for d in range(c, n):
            out[(c, d)] = _block_filter(A, (c, d))
    return out


@lru_cache(maxsize=None)
def _small_filters_lambda(A: ModalRirig):
    n = A.size
    out = {}
    for c in range(n):
        out[(c,)] = generate_filter_lambda(A, {c})
        for d in range(c, n):
            out[(c, d)] = generate_filter_lambda(A, {c, d})
    return out


def _slot_stars(A: ModalRirig, f: FiniteFunction, a, b):
    star = _star_table(A)
    cs = tuple(star[x][y] for x, y in zip(a, b))
    target = star[f(*a)][f(*b)]
    return cs, target


def _tuple_pairs(n: int, k: int):
    tuples = list(itertools.product(range(n), repeat=k))
    for a in tuples:
        for b in tuples:
            yield a, b


def _blocks_witness(A: ModalRirig, cs, target, bound=None):
    """Shortest factor list ((block, slot), ...) whose product of block
    values lands below the target, or None."""
    items = []
    for slot, c in enumerate(cs):
        for v, blk in sorted(reachable_values(A, c, bound).items(),
                             key=lambda kv: (len(kv[1]), kv[1])):
            items.append((v, blk, slot))
    best = {A.one: ()}
    frontier = dict(best)
    while True:
        for p in sorted(best):
            if A.leq(p, target):
                return best[p]
        nxt = {}
        for p, factors in frontier.items():
            for v, blk, slot in items:
                q = A.prod[p][v]
                if q not in best and q not in nxt:
                    nxt[q] = factors + ((blk, slot),)
        if not nxt:
            return None
        best.update(nxt)
        frontier = nxt


def compat_witness_kary(A: ModalRirig, f: FiniteFunction,
                        block_len_bound: int | None = None,
                        with_witnesses: bool = True) -> CompatReport:
    """Decide compatibility by products of block applications in the
    argument slots.

    With block_len_bound=None the reachable-value closure is computed in
    full and the verdict is exact; a finite bound may return an undecided
    report when the closure was truncated and no witness appeared.
    """
    _check_size(A, f)
    n, k = A.size, f.arity
    small = _small_filters_blocks(A) if (block_len_bound is None and k <= 2) \
        else None
    witnesses = {} if with_witnesses else None
    for a, b in _tuple_pairs(n, k):
        cs, target = _slot_stars(A, f, a, b)
        if small is not None:
            ok = target in small[tuple(sorted(set(cs)))]
        else:
            ok = target in _block_filter(A, cs, block_len_bound)
        if not ok:
            saturated = block_len_bound is None or all(
                reachable_values(A, c, block_len_bound)
                == reachable_values(A, c) for c in cs)
            if saturated:
                return CompatReport(False, failing=((a, b),))
            return CompatReport(None, failing=((a, b),))
        if with_witnesses:
            witnesses[(a, b)] = _blocks_witness(A, cs, target,
                                                block_len_bound)
    return CompatReport(True, witnesses=witnesses)


def compat_witness_unary(A: ModalRirig, f: FiniteFunction,
                         block_len_bound: int | None = None,
                         with_witnesses: bool = True) -> CompatReport:
    if f.arity != 1:
        raise ValueError("unary route requires a unary function")
    return compat_witness_kary(A, f, block_len_bound, with_witnesses)


def compat_witness_lambda(A: ModalRirig, f: FiniteFunction,
                          with_witnesses: bool = True) -> CompatReport:
    """Decide compatibility through iterates of the contraction operator;
    exact, since the iteration stabilizes pointwise."""
    _check_size(A, f)
    n, k = A.size, f.arity
    small = _small_filters_lambda(A) if k <= 2 else None
    witnesses = {} if with_witnesses else None
    for a, b in _tuple_pairs(n, k):
        cs, target = _slot_stars(A, f, a, b)
        if small is not None:
            ok = target in small[tuple(sorted(set(cs)))]
        else:
            ok = target in generate_filter_lambda(A, set(cs))
        if not ok:
            return CompatReport(False, failing=((a, b),))
        if with_witnesses:
            witnesses[(a, b)] = _lambda_witness(A, cs, target)
    return CompatReport(True, witnesses=witnesses)


def _lambda_witness(A: ModalRirig, cs, target):
    """(least exponent l, slot indices of the certifying power product)."""
    l = 0
    level = list(cs)
    while True:
        factors = _power_product_below(A, level, target)
        if factors is not None:
            return l, factors
        nxt = [lambda_op(A, v) for v in level]
        if nxt == level:
            return None
        level = nxt
        l += 1


def _power_product_below(A: ModalRirig, values, target):
    """Slot-index sequence whose value product drops below target, or
    None; breadth-first, so of minimal length."""
    best = {A.one: ()}
    frontier = dict(best)
    while True:
        for p in sorted(best):
            if A.leq(p, target):
                return best[p]
        nxt = {}
        for p, factors in frontier.items():
            for slot, v in enumerate(values):
                q = A.prod[p][v]
                if q not in best and q not in nxt:
                    nxt[q] = factors + (slot,)
        if not nxt:
            return None
        best.update(nxt)
        frontier = nxt


def _sweep_chunk(job):
    """Worker for agreement_sweep; functions are seeded per index so the
    outcome is independent of how the range is chunked."""
    A, arity, seed, lo, hi = job
    out = []
    for i in range(lo, hi):
        rng = random.Random((seed << 20) ^ i)
        f = random_function(A.size, arity, rng)
        d = is_compatible_direct(A, f).compatible
        b = compat_witness_kary(A, f, with_witnesses=False).compatible
        l = compat_witness_lambda(A, f, with_witnesses=False).compatible
        if not d == b == l:
            out.append((f, d, b, l))
    return out


def agreement_sweep(A: ModalRirig, arity: int, count: int, seed: int,
                    jobs: int = 1):
    """Run the three compatibility routes over seeded random functions,
    returning the disagreeing ones (expected: none)."""
    if jobs <= 1:
        return _sweep_chunk((A, arity, seed, 0, count))
    from concurrent.futures import ProcessPoolExecutor
    chunk = (count + jobs - 1) // jobs
    spans = [(lo, min(lo + chunk, count)) for lo in range(0, count, chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        results = ex.map(_sweep_chunk,
                         [(A, arity, seed, lo, hi) for lo, hi in spans])
    out = []
    for r in results:
        out.extend(r)
    return out


# ---------------------------------------------------------------------------
# local polynomial representation on a finite block of tuples

@dataclass(frozen=True)
class LafRepresentation:
    """Join representation of a compatible f over a finite tuple set B:
    for each x in B, f(x) is the join of the recorded terms, one per
    anchor a in B, each of the form f(a) times a power product of
    lambda-iterates of the slotwise stars a_i * x_i at exponent n_a."""

    points: tuple[tuple[int, ...], ...]
    pair_exponents: dict
    anchor_exponents: dict
    joins: dict
    verified: bool


def laf_representation(A: ModalRirig, f: FiniteFunction, B) -> LafRepresentation:
    """Build and verify the representation; refuses incompatible functions."""
    _check_size(A, f)
    if not B:
        raise ValueError("B must be nonempty")
    points = tuple(sorted(tuple(p) for p in B))
    if any(len(p) != f.arity for p in points):
        raise ValueError("tuples in B must match the arity")
    if not compat_witness_lambda(A, f, with_witnesses=False).compatible:
        raise ValueError("function is not compatible")
    star = _star_table(A)

    def least_exponent(a, x):
        cs = [star[ai][xi] for ai, xi in zip(a, x)]
        target = star[f(*a)][f(*x)]
        wit = _lambda_witness(A, cs, target)
        assert wit is not None, "no exponent certifies a compatible pair"
        return wit[0]

    pair_exponents = {(a, x): least_exponent(a, x)
                      for a in points for x in points}
    anchor_exponents = {a: max(pair_exponents[(a, x)] for x in points)
                        for a in points}
    joins = {}
    verified = True
    for x in points:
        terms = []
        for a in points:
            l = anchor_exponents[a]
            cs = [lambda_iter(A, l, star[ai][xi]) for ai, xi in zip(a, x)]
            target = star[f(*a)][f(*x)]
            factors = _power_product_below(A, cs, target)
            assert factors is not None
            val = f(*a)
            for slot in factors:
                val = A.prod[val][cs[slot]]
            terms.append(val)
        join = terms[0]
        for t in terms[1:]:
            join = A.join[join][t]
        joins[x] = (tuple(terms), join)
        if join != f(*x):
            verified = False
    return LafRepresentation(points, pair_exponents, anchor_exponents,
                             joins, verified)
