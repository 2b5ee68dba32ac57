"""Exhaustive generation of small algebras up to isomorphism, with
constraint filters and a persisted, greppable catalog format.

Enumeration normalizes the bottom to index 0 and the top to index n-1;
nothing downstream relies on that, since deduplication goes through the
permutation-minimal canonical form.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from .core import FiniteRirig, synthesize_imp, validate_ririg
from .modal import ModalRirig, ModalSignature, bare, validate_modal
from .terms import in_chain_variety, is_chain, is_contractive, \
    satisfies_join_subdistribution, satisfies_prelinearity

DEFAULT_SIZE_CAP = 5
DEFAULT_MODAL_CAP = 2
CATALOG_FORMAT = "ririg-catalog"
CATALOG_VERSION = 1

KNOWN_CONSTRAINTS = ("contractive", "Cm", "P", "chain")


def canonical_form(A: ModalRirig | FiniteRirig) -> bytes:
    """Minimum over all universe relabelings of the concatenated tables,
    with the 0/1 positions and modal tables included.  Two algebras are
    isomorphic exactly when their forms agree."""
    if isinstance(A, FiniteRirig):
        A = bare(A)
    n = A.size
    best: Optional[bytes] = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        payload = [n, perm[A.zero], perm[A.one], len(A.sig)]
        for table in (A.join, A.prod, A.imp):
            payload.extend(perm[table[inv[a]][inv[b]]]
                           for a in range(n) for b in range(n))
        for t in A.modal_tables:
            payload.extend(perm[t[inv[a]]] for a in range(n))
        enc = bytes(payload)
        if best is None or enc < best:
            best = enc
    return best


def _join_tables(n: int):
    """All bounded join-semilattice tables with bottom 0 and top n-1."""
    free = [(i, j) for i in range(1, n - 1) for j in range(i + 1, n - 1)]
    for values in itertools.product(range(n), repeat=len(free)):
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            table[i][i] = i
            table[0][i] = table[i][0] = i
            table[n - 1][i] = table[i][n - 1] = n - 1
        for (i, j), v in zip(free, values):
            table[i][j] = table[j][i] = v
        ok = all(table[table[a][b]][c] == table[a][table[b][c]]
                 for a in range(n) for b in range(n) for c in range(n))
        if ok:
            yield tuple(tuple(row) for row in table)


def _product_tables(n: int, join):
    """Commutative monoid tables with unit n-1 and annihilator 0 that
    distribute over the given join and admit every residual."""
    def below(x):
        return [v for v in range(n) if join[v][x] == x]

    free = [(i, j) for i in range(1, n - 1) for j in range(i, n - 1)]
    # integrality forces x*y below both factors, which prunes hard
    choices = [sorted(set(below(i)) & set(below(j))) for i, j in free]
    for values in itertools.product(*choices):
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            table[n - 1][i] = table[i][n - 1] = i
            table[0][i] = table[i][0] = 0
        for (i, j), v in zip(free, values):
            table[i][j] = table[j][i] = v
        ok = all(table[table[a][b]][c] == table[a][table[b][c]]
                 for a in range(n) for b in range(n) for c in range(n))
        ok = ok and all(
            table[a][join[b][c]] == join[table[a][b]][table[a][c]]
            for a in range(n) for b in range(n) for c in range(n))
        if not ok:
            continue
        try:
            imp = synthesize_imp(n, join, tuple(tuple(r) for r in table))
        except ValueError:
            continue
        yield tuple(tuple(row) for row in table), imp


def enumerate_ririgs(n: int, cap: int = DEFAULT_SIZE_CAP) -> list[FiniteRirig]:
    """All ririgs of size n up to isomorphism, canonical-form order."""
    if n > cap:
        raise ValueError(f"size {n} exceeds enumeration cap {cap}")
    if n < 1:
        raise ValueError("size must be >= 1")
    if n == 1:
        return [FiniteRirig(1, ((0,),), ((0,),), ((0,),), 0, 0)]
    seen = {}
    for join in _join_tables(n):
        for prod, imp in _product_tables(n, join):
            A = FiniteRirig(n, join, prod, imp, 0, n - 1)
            assert validate_ririg(A).passed
            seen.setdefault(canonical_form(A), A)
    return [seen[form] for form in sorted(seen)]


def _valid_modal_tables(A: FiniteRirig, constraints=()):
    n = A.size
    for table in itertools.product(range(n), repeat=n):
        if table[A.one] != A.one:
            continue
        M = ModalRirig(A, ModalSignature(("m1",)), (table,))
        if not validate_modal(M).passed:
            continue
        if "contractive" in constraints and not is_contractive(M):
            continue
        if "Cm" in constraints and not satisfies_join_subdistribution(M, "m1"):
            continue
        yield table


def enumerate_modal_expansions(A: FiniteRirig, k: int, constraints=(),
                               modal_cap: int = DEFAULT_MODAL_CAP
                               ) -> list[ModalRirig]:
    """All expansions of A by k modal tables, up to isomorphism of the
    expanded structure.  Constraint names: contractive, Cm."""
    if k > modal_cap:
        raise ValueError(f"{k} modal symbols exceed cap {modal_cap}")
    unknown = set(constraints) - set(KNOWN_CONSTRAINTS)
    if unknown:
        raise ValueError(f"unknown constraints {sorted(unknown)}")
    sig = ModalSignature(tuple(f"m{i + 1}" for i in range(k)))
    if k == 0:
        return [ModalRirig(A, sig, ())]
    singles = list(_valid_modal_tables(A, constraints))
    seen = {}
    for tables in itertools.product(singles, repeat=k):
        M = ModalRirig(A, sig, tables)
        seen.setdefault(canonical_form(M), M)
    return [seen[form] for form in sorted(seen)]


@dataclass(frozen=True)
class CatalogEntry:
    algebra: ModalRirig
    form: bytes
    trivial: bool
    chain: bool
    contractive: bool
    in_rc: bool
    simple: Optional[bool]   # None for the trivial algebra
    si: Optional[bool]

    @classmethod
    def from_algebra(cls, A: ModalRirig) -> "CatalogEntry":
        from .filters import is_simple, is_subdirectly_irreducible
        trivial = A.size == 1
        return cls(
            algebra=A,
            form=canonical_form(A),
            trivial=trivial,
            chain=is_chain(A),
            contractive=is_contractive(A),
            in_rc=in_chain_variety(A),
            simple=None if trivial else is_simple(A)[0],
            si=None if trivial else is_subdirectly_irreducible(A)[0],
        )


@dataclass(frozen=True)
class Catalog:
    max_size: int
    modals: int
    constraints: tuple[str, ...]
    entries: tuple[CatalogEntry, ...]

    def algebras(self) -> list[ModalRirig]:
        return [e.algebra for e in self.entries]


def catalog_build(max_size: int, modals: int, constraints=(),
                  size_cap: int = DEFAULT_SIZE_CAP,
                  modal_cap: int = DEFAULT_MODAL_CAP) -> Catalog:
    constraints = tuple(constraints)
    entries = []
    for n in range(1, max_size + 1):
        for base in enumerate_ririgs(n, cap=size_cap):
            if "P" in constraints and not satisfies_prelinearity(bare(base)):
                continue
            if "chain" in constraints and not is_chain(bare(base)):
                continue
            for M in enumerate_modal_expansions(base, modals, constraints,
                                                modal_cap=modal_cap):
                entries.append(CatalogEntry.from_algebra(M))
    entries.sort(key=lambda e: (e.algebra.size, e.form))
    forms = [e.form for e in entries]
    assert len(forms) == len(set(forms))
    return Catalog(max_size, modals, constraints, tuple(entries))


# ---------------------------------------------------------------------------
# persistence: versioned header line, then one JSON record per algebra

def _algebra_to_record(A: ModalRirig) -> dict:
    return {
        "size": A.size,
        "zero": A.zero,
        "one": A.one,
        "join": [list(r) for r in A.join],
        "prod": [list(r) for r in A.prod],
        "imp": [list(r) for r in A.imp],
        "modals": {name: list(t)
                   for name, t in zip(A.sig.names, A.modal_tables)},
    }


def _algebra_from_record(rec: dict) -> ModalRirig:
    base = FiniteRirig(rec["size"], rec["join"], rec["prod"], rec["imp"],
                       rec["zero"], rec["one"])
    names = tuple(rec.get("modals", {}))
    tables = tuple(tuple(rec["modals"][name]) for name in names)
    return ModalRirig(base, ModalSignature(names), tables)


def catalog_save(catalog: Catalog, path) -> None:
    with open(path, "w") as fh:
        header = {"format": CATALOG_FORMAT, "version": CATALOG_VERSION,
                  "max_size": catalog.max_size, "modals": catalog.modals,
                  "constraints": list(catalog.constraints),
                  "count": len(catalog.entries)}
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for e in catalog.entries:
            rec = _algebra_to_record(e.algebra)
            rec["form"] = e.form.hex()
            rec["flags"] = {"trivial": e.trivial, "chain": e.chain,
                            "contractive": e.contractive, "in_rc": e.in_rc,
                            "simple": e.simple, "si": e.si}
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def catalog_load(path) -> Catalog:
    with open(path) as fh:
        return catalog_loads(fh.read())


def catalog_loads(text: str) -> Catalog:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty catalog file")
    header = json.loads(lines[0])
    if header.get("format") != CATALOG_FORMAT:
        raise ValueError("not a catalog file")
    if header.get("version") != CATALOG_VERSION:
        raise ValueError(f"catalog version {header.get('version')} "
                         f"unsupported (want {CATALOG_VERSION})")
    entries = []
    for line in lines[1:]:
        rec = json.loads(line)
        flags = rec["flags"]
        entries.append(CatalogEntry(
            algebra=_algebra_from_record(rec),
            form=bytes.fromhex(rec["form"]),
            trivial=flags["trivial"], chain=flags["chain"],
            contractive=flags["contractive"], in_rc=flags["in_rc"],
            simple=flags["simple"], si=flags["si"]))
    return Catalog(header["max_size"], header["modals"],
                   tuple(header["constraints"]), tuple(entries))
