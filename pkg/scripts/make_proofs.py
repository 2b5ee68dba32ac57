#!/usr/bin/env python3
"""Regenerate the Hilbert proof corpus in proofs/.

Each proof is assembled from a few derived-rule combinators (composition of
implications, antecedent swap) on top of the raw axiom schemas, checked
line by line while being built, then checked again from its serialized
form and verified semantically over the size-<=3 catalog.
"""

import pathlib
import sys

from ririg.catalog import catalog_build
from ririg.logic import (Ax, Hyp, MP, Nec, Proof, ProofLine, SCHEMAS,
                         check_proof, format_proof, instantiate, parse_proof,
                         soundness_check)
from ririg.terms import BOT, Imp, ModalApp, Prod, Var

OUT = pathlib.Path(__file__).resolve().parents[1] / "proofs"

V0, V1, V2 = Var(0), Var(1), Var(2)


class Builder:
    def __init__(self, hypotheses=()):
        self.hyps = tuple(hypotheses)
        self.lines = []

    def _emit(self, formula, just):
        self.lines.append(ProofLine(formula, just))
        return len(self.lines)

    def formula(self, i):
        return self.lines[i - 1].formula

    def hyp(self, f):
        assert f in self.hyps
        return self._emit(f, Hyp())

    def ax(self, schema, **binding):
        f = instantiate(SCHEMAS[schema][0], binding)
        return self._emit(f, Ax(schema))

    def nec(self, modal, i):
        return self._emit(ModalApp(modal, self.formula(i)), Nec(modal, i))

    def mp(self, i, j):
        major = self.formula(i)
        assert isinstance(major, Imp) and major.lhs == self.formula(j), \
            (major, self.formula(j))
        return self._emit(major.rhs, MP(i, j))

    def compose(self, i, j):
        """From a->b and b->c derive a->c."""
        ab, bc = self.formula(i), self.formula(j)
        assert ab.rhs == bc.lhs
        k = self.ax("ax2", phi=ab.lhs, psi=ab.rhs, chi=bc.rhs)
        return self.mp(self.mp(k, i), j)

    def swap(self, i):
        """From a->(b->c) derive b->(a->c)."""
        f = self.formula(i)
        a, (b, c) = f.lhs, (f.rhs.lhs, f.rhs.rhs)
        s1 = self.ax("ax6", phi=b, psi=a, chi=c)
        s2 = self.mp(s1, i)                       # (b*a) -> c
        s3 = self.ax("ax4", phi=a, psi=b)         # (a*b) -> (b*a)
        s4 = self.compose(s3, s2)                 # (a*b) -> c
        s5 = self.ax("ax5", phi=a, psi=b, chi=c)
        return self.mp(s5, s4)

    def proof(self):
        return Proof(self.hyps, tuple(self.lines))


def proof_top():
    b = Builder()
    b.ax("ax1", phi=BOT)
    return b.proof()


def proof_nec_example():
    b = Builder(hypotheses=(V0,))
    i = b.hyp(V0)
    b.nec("m1", i)
    return b.proof()


def proof_to_top():
    """v0 -> (bot -> bot)"""
    b = Builder()
    l1 = b.ax("ax3", phi=BOT, psi=V0)
    l2 = b.ax("ax5", phi=BOT, psi=V0, chi=BOT)
    b.mp(l2, l1)
    return b.proof()


def proof_weakening():
    """v0 -> (v1 -> v0)"""
    b = Builder()
    l1 = b.ax("ax3", phi=V0, psi=V1)            # v0*v1 -> v0
    l2 = b.ax("ax4", phi=V1, psi=V0)            # v1*v0 -> v0*v1
    l3 = b.compose(l2, l1)                      # v1*v0 -> v0
    l4 = b.ax("ax5", phi=V1, psi=V0, chi=V0)
    b.mp(l4, l3)
    return b.proof()


def proof_prod_monotone():
    """(v0 -> v1) -> ((v0*v2) -> (v1*v2))"""
    b = Builder()
    v12 = Prod(V1, V2)
    l1 = b.ax("ax1", phi=v12)
    l2 = b.ax("ax5", phi=V1, psi=V2, chi=v12)
    l3 = b.mp(l2, l1)                           # v2 -> (v1 -> v1*v2)
    s1 = b.swap(l3)                             # v1 -> (v2 -> v1*v2)
    k = b.formula(s1).rhs                       # v2 -> v1*v2
    t = b.ax("ax2", phi=V0, psi=V1, chi=k)
    sw = b.swap(t)                              # (v1->k) -> ((v0->v1) -> (v0->k))
    s2 = b.mp(sw, s1)                           # (v0->v1) -> (v0->k)
    s3 = b.ax("ax6", phi=V2, psi=V0, chi=v12)   # (v0->k) -> ((v2*v0)->(v1*v2))
    s4 = b.compose(s2, s3)
    a4 = b.ax("ax4", phi=V0, psi=V2)            # (v0*v2) -> (v2*v0)
    t2 = b.ax("ax2", phi=Prod(V0, V2), psi=Prod(V2, V0), chi=v12)
    s5 = b.mp(t2, a4)                           # ((v2*v0)->v12) -> ((v0*v2)->v12)
    b.compose(s4, s5)
    return b.proof()


def proof_prod_assoc():
    """((v0*v1)*v2) -> (v0*(v1*v2))"""
    b = Builder()
    x = Prod(V0, Prod(V1, V2))
    l1 = b.ax("ax1", phi=x)
    l2 = b.ax("ax5", phi=V0, psi=Prod(V1, V2), chi=x)
    l3 = b.mp(l2, l1)                           # (v1*v2) -> (v0 -> x)
    l4 = b.ax("ax5", phi=V1, psi=V2, chi=Imp(V0, x))
    l5 = b.mp(l4, l3)                           # v2 -> (v1 -> (v0 -> x))
    l6 = b.ax("ax6", phi=V0, psi=V1, chi=x)     # (v1->(v0->x)) -> ((v0*v1)->x)
    l7 = b.compose(l5, l6)                      # v2 -> ((v0*v1) -> x)
    l8 = b.ax("ax6", phi=Prod(V0, V1), psi=V2, chi=x)
    b.mp(l8, l7)
    return b.proof()


PROOFS = {
    "top.prf": proof_top,
    "nec_example.prf": proof_nec_example,
    "thm_to_top.prf": proof_to_top,
    "thm_weakening.prf": proof_weakening,
    "thm_prod_monotone.prf": proof_prod_monotone,
    "thm_prod_assoc.prf": proof_prod_assoc,
}


def main():
    OUT.mkdir(exist_ok=True)
    catalog = catalog_build(3, 1).algebras()
    for name, build in PROOFS.items():
        proof = build()
        result = check_proof(proof)
        assert result.ok, (name, result)
        text = format_proof(proof)
        reparsed = parse_proof(text)
        assert reparsed == proof, name
        assert soundness_check(reparsed, catalog), name
        (OUT / name).write_text(text)
        print(f"{name}: {len(proof.lines)} lines, checked and sound")
    return 0


if __name__ == "__main__":
    sys.exit(main())
