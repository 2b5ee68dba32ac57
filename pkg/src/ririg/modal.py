"""Modal expansions: unary-operator validation, block words, the product
of an element with all of its modal images, and bounded block enumeration.

A block is a word over the modal signature, stored as a tuple of name
indices.  The word ``m N`` denotes "apply N first, then m", so the leftmost
letter is applied last.  The empty word is the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import AxiomReport, FiniteRirig, leq

Block = tuple[int, ...]
EPS: Block = ()

_RESERVED = {"0", "1", "bot", "top", "eps", "v"}


@dataclass(frozen=True)
class ModalSignature:
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate modal names")
        for name in self.names:
            bad = (not name.isidentifier() or name in _RESERVED
                   or (name[0] == "v" and name[1:].isdigit()))
            if bad:
                raise ValueError(f"bad modal name {name!r}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown modal name {name!r}") from None


EMPTY_SIGNATURE = ModalSignature(())


@dataclass(frozen=True)
class ModalRirig:
    """A finite ririg expanded with one unary table per modal name.

    Like FiniteRirig, construction is shape-checked only; validate_modal
    decides whether the tables really are modal operators.
    """

    base: FiniteRirig
    sig: ModalSignature
    modal_tables: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "modal_tables",
            tuple(tuple(int(x) for x in t) for t in self.modal_tables))
        if len(self.modal_tables) != len(self.sig):
            raise ValueError("one table per modal name required")
        n = self.base.size
        for t in self.modal_tables:
            if len(t) != n or any(not 0 <= x < n for x in t):
                raise ValueError("modal table malformed")

    # Convenience pass-throughs so call sites read like the algebra itself.
    @property
    def size(self):
        return self.base.size

    @property
    def join(self):
        return self.base.join

    @property
    def prod(self):
        return self.base.prod

    @property
    def imp(self):
        return self.base.imp

    @property
    def zero(self):
        return self.base.zero

    @property
    def one(self):
        return self.base.one

    def leq(self, a, b):
        return self.base.leq(a, b)

    def star(self, a, b):
        return self.base.star(a, b)

    def elements(self):
        return range(self.base.size)

    def modal(self, name: str) -> tuple[int, ...]:
        return self.modal_tables[self.sig.index(name)]


def bare(A: FiniteRirig) -> ModalRirig:
    """View a plain ririg as a modal algebra with empty signature."""
    return ModalRirig(A, EMPTY_SIGNATURE, ())


def validate_modal(A: ModalRirig) -> AxiomReport:
    """Check m(1)=1 and m(x->y) <= m(x)->m(y) for every modal table."""
    base, n = A.base, A.size
    failures = []
    for name, t in zip(A.sig.names, A.modal_tables):
        if t[base.one] != base.one:
            failures.append((f"{name}: m(1)=1", ()))
        witness = None
        for x in range(n):
            for y in range(n):
                if not leq(base, t[base.imp[x][y]], base.imp[t[x]][t[y]]):
                    witness = (x, y)
                    break
            if witness:
                break
        if witness:
            failures.append((f"{name}: m(x->y) <= m(x)->m(y)", witness))
    return AxiomReport(passed=not failures, failures=tuple(failures))


def check_product_form(A: ModalRirig, name: str) -> bool:
    """Whether m(x)*m(y) <= m(x*y) holds for all x, y.

    For tables that already pass validate_modal this is equivalent to the
    implication inequality; for arbitrary tables it is strictly weaker.
    """
    t = A.modal(name)
    base = A.base
    return all(
        leq(base, base.prod[t[x]][t[y]], t[base.prod[x][y]])
        for x in range(A.size) for y in range(A.size))


def apply_block(A: ModalRirig, block: Block, a: int) -> int:
    """Interpret a block word at a: rightmost letter applied first."""
    for i in reversed(block):
        a = A.modal_tables[i][a]
    return a


def enumerate_blocks(sig: ModalSignature, max_len: int):
    """All words of length <= max_len in length-then-lexicographic order."""
    k = len(sig)
    for length in range(max_len + 1):
        if length > 0 and k == 0:
            return
        yield from itertools.product(range(k), repeat=length)


def lambda_op(A: ModalRirig, a: int) -> int:
    """a multiplied by all of its modal images; the identity when the
    signature is empty."""
    out = a
    for t in A.modal_tables:
        out = A.prod[out][t[a]]
    return out


def lambda_iter(A: ModalRirig, l: int, a: int) -> int:
    for _ in range(l):
        a = lambda_op(A, a)
    return a


def lambda_stabilization(A: ModalRirig, a: int) -> tuple[int, int]:
    """(stable value, least l reaching it); the iteration sequence is
    weakly decreasing, so two equal consecutive values end it."""
    l = 0
    while True:
        nxt = lambda_op(A, a)
        if nxt == a:
            return a, l
        a = nxt
        l += 1


def reachable_values(A: ModalRirig, a: int, max_len: int | None = None
                     ) -> dict[int, Block]:
    """Map each value M(a) attainable by some block M to a shortest such M.

    Breadth-first over the modal tables, so the recorded blocks are minimal
    in length and, among equals, lexicographically first.  The set is closed
    (all blocks covered) when max_len is None or large enough; a too-small
    bound just truncates the search.
    """
    found = {a: EPS}
    frontier = [a]
    depth = 0
    while frontier and (max_len is None or depth < max_len):
        depth += 1
        nxt = []
        for v in frontier:
            for i, t in enumerate(A.modal_tables):
                w = t[v]
                if w not in found:
                    # new letter is applied last, hence goes on the left
                    found[w] = (i,) + found[v]
                    nxt.append(w)
        frontier = nxt
    return found


def parse_block(text: str, sig: ModalSignature) -> Block:
    """Block literal: dot-separated names, or ``eps`` for the empty word."""
    text = text.strip()
    if text == "eps":
        return EPS
    if not text:
        raise ValueError("empty block literal (use 'eps')")
    return tuple(sig.index(part.strip()) for part in text.split("."))


def format_block(block: Block, sig: ModalSignature) -> str:
    if not block:
        return "eps"
    return ".".join(sig.names[i] for i in block)
