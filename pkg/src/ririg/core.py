"""Finite residuated integral rigs: tables, axiom validation, order utilities.

An algebra lives on the index set 0..n-1.  The two binary tables `join` and
`prod` together with the residual table `imp` and the distinguished indices
`zero`, `one` determine everything; `a <= b` means `a v b == b`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Table = tuple[tuple[int, ...], ...]


def _freeze_table(rows) -> Table:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _check_table(name: str, table: Table, n: int) -> None:
    if len(table) != n or any(len(row) != n for row in table):
        raise ValueError(f"{name} table must be {n}x{n}")
    for row in table:
        for x in row:
            if not (0 <= x < n):
                raise ValueError(f"{name} table entry {x} out of range [0,{n})")


@dataclass(frozen=True)
class FiniteRirig:
    """Operation tables of a candidate residuated integral rig.

    Construction only checks shapes (entries in range); whether the tables
    actually satisfy the axioms is the job of :func:`validate_ririg`, so that
    deliberately broken candidates can be represented and reported on.
    """

    size: int
    join: Table
    prod: Table
    imp: Table
    zero: int
    one: int

    def __post_init__(self):
        n = self.size
        if n <= 0:
            raise ValueError("size must be positive")
        object.__setattr__(self, "join", _freeze_table(self.join))
        object.__setattr__(self, "prod", _freeze_table(self.prod))
        object.__setattr__(self, "imp", _freeze_table(self.imp))
        for name in ("join", "prod", "imp"):
            _check_table(name, getattr(self, name), n)
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise ValueError("zero/one out of range")

    @classmethod
    def from_join_prod(cls, size, join, prod, zero, one) -> "FiniteRirig":
        """Build an algebra synthesizing the residual table from join/prod.

        Raises ValueError when some residual does not exist.
        """
        join = _freeze_table(join)
        prod = _freeze_table(prod)
        imp = synthesize_imp(size, join, prod)
        return cls(size, join, prod, imp, zero, one)

    def leq(self, a: int, b: int) -> bool:
        return self.join[a][b] == b

    def star(self, a: int, b: int) -> int:
        """(a -> b) * (b -> a), the symmetric implication product."""
        return self.prod[self.imp[a][b]][self.imp[b][a]]

    def elements(self):
        return range(self.size)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of a validation run: ``passed`` iff ``failures`` is empty.

    Each failure is a pair (axiom name, witness tuple of element indices),
    the witness being the first failing tuple in lexicographic order.
    """

    passed: bool
    failures: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "failures", tuple(self.failures))
        assert self.passed == (not self.failures)


def leq(A: FiniteRirig, a: int, b: int) -> bool:
    """Order test a <= b, i.e. a v b == b."""
    return A.join[a][b] == b


def star(A: FiniteRirig, a: int, b: int) -> int:
    return A.star(a, b)


def residual_of(A: FiniteRirig, b: int, c: int) -> Optional[int]:
    """max { a : a*b <= c } computed from the join/prod tables only.

    Returns None when the set has no maximum, i.e. prod is not residuated
    at (b, c).  The imp table of A, if any, is deliberately ignored.
    """
    candidates = [a for a in range(A.size) if leq(A, A.prod[a][b], c)]
    for a in candidates:
        if all(leq(A, x, a) for x in candidates):
            return a
    return None


def synthesize_imp(size: int, join: Table, prod: Table) -> Table:
    """Residual table from join/prod; ValueError if any residual is absent."""
    shell = FiniteRirig(size, join, prod,
                        tuple(tuple(0 for _ in range(size)) for _ in range(size)),
                        0, 0)
    rows = []
    for b in range(size):
        row = []
        for c in range(size):
            r = residual_of(shell, b, c)
            if r is None:
                raise ValueError(f"not residuated at ({b},{c}): no maximum")
            row.append(r)
        rows.append(tuple(row))
    return tuple(rows)


# Canonical axiom names, in report order.
_AXIOMS = (
    "join-commutativity",
    "join-associativity",
    "join-unit",
    "prod-commutativity",
    "prod-associativity",
    "prod-unit",
    "distribution",
    "annihilation",
    "integrality",
    "residuation",
)


def validate_ririg(A: FiniteRirig) -> AxiomReport:
    """Check every defining axiom, reporting the first lexicographic witness
    per violated axiom."""
    n, j, p, imp = A.size, A.join, A.prod, A.imp
    zero, one = A.zero, A.one
    failures = []

    def first2(pred):
        for a in range(n):
            for b in range(n):
                if not pred(a, b):
                    return (a, b)
        return None

    def first3(pred):
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if not pred(a, b, c):
                        return (a, b, c)
        return None

    checks = {
        "join-commutativity": lambda: first2(lambda a, b: j[a][b] == j[b][a]),
        "join-associativity": lambda: first3(
            lambda a, b, c: j[j[a][b]][c] == j[a][j[b][c]]),
        "join-unit": lambda: next(
            (((a,)) for a in range(n) if j[zero][a] != a), None),
        "prod-commutativity": lambda: first2(lambda a, b: p[a][b] == p[b][a]),
        "prod-associativity": lambda: first3(
            lambda a, b, c: p[p[a][b]][c] == p[a][p[b][c]]),
        "prod-unit": lambda: next(
            (((a,)) for a in range(n) if p[one][a] != a), None),
        "distribution": lambda: first3(
            lambda a, b, c: p[a][j[b][c]] == j[p[a][b]][p[a][c]]),
        "annihilation": lambda: next(
            (((a,)) for a in range(n) if p[a][zero] != zero), None),
        "integrality": lambda: next(
            (((a,)) for a in range(n) if j[one][a] != one), None),
        "residuation": lambda: first3(
            lambda a, b, c: leq(A, p[a][b], c) == leq(A, a, imp[b][c])),
    }
    for name in _AXIOMS:
        witness = checks[name]()
        if witness is not None:
            failures.append((name, tuple(witness)))
    return AxiomReport(passed=not failures, failures=tuple(failures))
