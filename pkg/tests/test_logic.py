import pathlib

import pytest
from hypothesis import given, settings, strategies as st

from ririg.fixtures import b2, g3
from ririg.logic import Ax, Hyp, JoinElim, MP, Nec, Proof, ProofLine, \
    check_proof, lambda_formula, lddt_witness, match_schema, \
    parse_justification, parse_proof, rho, semantic_entails, \
    soundness_check, tau, tau_set
from ririg.modal import ModalSignature, bare, format_block
from ririg.parsing import format_term, parse_equation, parse_formula
from ririg.terms import BOT, TOP, Const, Equation, Imp, Join, ModalApp, \
    Prod, Var, eval_term, valuations, variables_of

PROOFS_DIR = pathlib.Path(__file__).resolve().parents[1] / "proofs"

P, Q = Var(0), Var(1)


def test_match_schema_examples():
    assert match_schema(parse_formula("bot -> bot"), "ax1") == {"phi": BOT}
    got = match_schema(parse_formula("m1(v0 -> v1) -> (m1(v0) -> m1(v1))"),
                       "ax12", "m1")
    assert got == {"phi": P, "psi": Q}
    assert match_schema(parse_formula("v0 -> v1"), "ax3") is None


def test_match_schema_modal_unit_both_directions():
    assert match_schema(parse_formula("m1(top) -> top"), "ax11", "m1") == {}
    assert match_schema(parse_formula("top -> m1(top)"), "ax11", "m1") == {}
    assert match_schema(parse_formula("m1(top) -> m1(top)"),
                        "ax11", "m1") is None


def test_match_schema_nonlinear_consistency():
    assert match_schema(parse_formula("v0 -> v1"), "ax1") is None
    assert match_schema(parse_formula("(v0 | v1) -> (v0 | v1)"), "ax1") \
        == {"phi": Join(P, Q)}


def test_top_is_a_theorem():
    proof = Proof((), (ProofLine(Imp(BOT, BOT), Ax("ax1")),))
    assert check_proof(proof).ok


def test_nec_rule():
    proof = Proof((P,), (ProofLine(P, Hyp()),
                         ProofLine(ModalApp("m1", P), Nec("m1", 1))))
    assert check_proof(proof).ok


def test_join_elim_rule():
    lines = (
        ProofLine(Imp(P, Join(P, Q)), Ax("ax7")),
        ProofLine(Imp(Q, Join(P, Q)), Ax("ax8")),
        ProofLine(Imp(Join(P, Q), Join(P, Q)), JoinElim(1, 2)),
    )
    assert check_proof(Proof((), lines)).ok


def test_bad_lines_are_reported():
    bad_hyp = Proof((), (ProofLine(P, Hyp()),))
    r = check_proof(bad_hyp)
    assert (r.ok, r.bad_line) == (False, 1)

    mismatched_mp = Proof(
        (P, Imp(Q, P)),
        (ProofLine(P, Hyp()), ProofLine(Imp(Q, P), Hyp()),
         ProofLine(Q, MP(2, 1))))
    r = check_proof(mismatched_mp)
    assert not r.ok and r.bad_line == 3 and "major premise shape" in r.reason

    forward_citation = Proof((), (ProofLine(P, MP(2, 1)),))
    assert not check_proof(forward_citation).ok

    unknown_modal = Proof((P,), (ProofLine(P, Hyp()),
                                 ProofLine(ModalApp("k9", P), Nec("k9", 1))))
    assert not check_proof(unknown_modal, ModalSignature(("m1",))).ok


def test_substitutions_recorded():
    proof = Proof((), (ProofLine(Imp(BOT, BOT), Ax("ax1")),))
    r = check_proof(proof)
    assert r.substitutions == {1: {"phi": BOT}}


def test_justification_syntax_roundtrip():
    for text in ("hyp", "ax1", "ax10", "ax11:m1", "ax12:m1",
                 "mp 2 1", "nec:m1 3", "vel 1 2"):
        just = parse_justification(text)
        from ririg.logic import format_justification
        assert format_justification(just) == text
    with pytest.raises(ValueError):
        parse_justification("ax13")
    with pytest.raises(ValueError):
        parse_justification("mp 1")


def test_proof_corpus_checks_and_is_sound(catalog3_modal):
    expected = {
        "top.prf": "0 -> 0",
        "nec_example.prf": "m1(v0)",
        "thm_to_top.prf": "v0 -> 0 -> 0",
        "thm_weakening.prf": "v0 -> v1 -> v0",
        "thm_prod_monotone.prf": "(v0 -> v1) -> v0 * v2 -> v1 * v2",
        "thm_prod_assoc.prf": "v0 * v1 * v2 -> v0 * (v1 * v2)",
    }
    for name, conclusion in expected.items():
        proof = parse_proof((PROOFS_DIR / name).read_text())
        result = check_proof(proof)
        assert result.ok, (name, result)
        assert format_term(proof.conclusion()) == conclusion
        assert soundness_check(proof, catalog3_modal)


def test_proof_file_errors():
    with pytest.raises(ValueError):
        parse_proof("2. v0 ; hyp")           # wrong numbering
    with pytest.raises(ValueError):
        parse_proof("1. v0 hyp")             # missing separator
    with pytest.raises(ValueError):
        parse_proof("1. v0 ; hyp\nassume: v1")


def test_tau_rho_examples():
    assert tau(P) == frozenset({Equation(P, Const(1))})
    assert rho(Equation(P, Q)) == frozenset({Imp(P, Q), Imp(Q, P)})
    assert tau(Imp(BOT, BOT)) == frozenset({Equation(TOP, Const(1))})


def test_semantic_entails_modus_ponens(catalog3_modal):
    ok, _ = semantic_entails(
        catalog3_modal,
        [parse_equation("v0 = 1"), parse_equation("(v0 -> v1) = 1")],
        parse_equation("v1 = 1"))
    assert ok


def test_semantic_entails_excluded_middle_fails_on_g3():
    catalog = [bare(g3())]
    ok, cm = semantic_entails(catalog, [],
                              parse_equation("(v0 | (v0 -> bot)) = 1"))
    assert not ok
    A, valuation = cm
    assert A.size == 3 and valuation == {0: 1}


def test_semantic_entails_nec(catalog3_modal):
    ok, _ = semantic_entails(catalog3_modal, [parse_equation("v0 = 1")],
                             parse_equation("m1(v0) = 1"))
    assert ok


def test_semantic_entails_signature_mismatch(catalog3_modal):
    with pytest.raises(ValueError):
        semantic_entails(catalog3_modal, [], parse_equation("k9(v0) = 1"))
    mixed = catalog3_modal + [bare(g3())]
    with pytest.raises(ValueError):
        semantic_entails(mixed, [], parse_equation("v0 = 1"))


def test_soundness_rejects_invalid_sequent():
    # an (imagined) checker accepting p |- q would fail this gate, with the
    # countermodel sitting already in the two-element algebra
    catalog = [bare(b2()), bare(g3())]
    ok, cm = semantic_entails(catalog, list(tau_set([P])),
                              Equation(Q, Const(1)))
    assert not ok
    A, valuation = cm
    assert A.size == 2 and valuation == {0: 1, 1: 0}


def test_soundness_check_requires_checked_proof(catalog3_modal):
    broken = Proof((), (ProofLine(P, Ax("ax1")),))
    with pytest.raises(ValueError):
        soundness_check(broken, catalog3_modal)


def test_lddt_witnesses(catalog3_modal):
    sig = catalog3_modal[0].sig
    w = lddt_witness([], [P], ModalApp("m1", P), catalog3_modal)
    assert [(format_block(M, sig), d) for M, d in w.factors] == [("m1", P)]

    w = lddt_witness([], [P, Q], Prod(P, Q), catalog3_modal)
    assert list(w.factors) == [((), P), ((), Q)]

    w = lddt_witness([Imp(P, Q)], [P], Q, catalog3_modal)
    assert list(w.factors) == [((), P)]


def test_lddt_lambda_mode(catalog3_modal):
    w = lddt_witness([], [P], ModalApp("m1", P), catalog3_modal,
                     lambda_mode=True)
    assert w.lam_exponent == 1
    w = lddt_witness([], [P, Q], Prod(P, Q), catalog3_modal,
                     lambda_mode=True)
    assert w.lam_exponent == 0
    w = lddt_witness([Imp(P, Q)], [P], Q, catalog3_modal, lambda_mode=True)
    assert w.lam_exponent == 0


def test_lddt_attached_proof(catalog3_modal):
    # m1(v0) -> m1(v0) derived as an instance of the identity axiom
    candidate_proof = Proof(
        (), (ProofLine(Imp(ModalApp("m1", P), ModalApp("m1", P)),
                       Ax("ax1")),))
    w = lddt_witness([], [P], ModalApp("m1", P), catalog3_modal,
                     attach_proof=candidate_proof)
    assert w.attached_proof == candidate_proof
    assert "attached derivation checked" in w.certificate
    wrong = Proof((), (ProofLine(Imp(P, P), Ax("ax1")),))
    w = lddt_witness([], [P], ModalApp("m1", P), catalog3_modal,
                     attach_proof=wrong)
    assert w.attached_proof is None
    assert "REJECTED" in w.certificate


def test_lddt_bound_exhaustion_returns_none(catalog3_modal):
    # nothing in delta helps derive plain v1
    w = lddt_witness([], [P], Q, catalog3_modal,
                     block_len_bound=1, product_bound=1)
    assert w is None


def test_lambda_formula_shape(catalog3_modal):
    sig = catalog3_modal[0].sig
    assert lambda_formula(sig, P) == Prod(P, ModalApp("m1", P))


formula_strategy = st.recursive(
    st.one_of(st.integers(0, 2).map(Var),
              st.sampled_from([Const(0), Const(1)])),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda p: Join(*p)),
        st.tuples(inner, inner).map(lambda p: Prod(*p)),
        st.tuples(inner, inner).map(lambda p: Imp(*p)),
        inner.map(lambda t: ModalApp("m1", t))),
    max_leaves=6)


@given(formula_strategy)
@settings(max_examples=60, deadline=None)
def test_rho_tau_coherence(phi):
    # phi = 1 holds exactly when both implications of rho(phi ~ 1) do
    from ririg.catalog import catalog_build
    for A in catalog_build(3, 1).algebras():
        for v in valuations(A, variables_of(phi), cap=None):
            lhs = eval_term(A, v, phi) == A.one
            both = all(eval_term(A, v, f) == A.one
                       for f in rho(Equation(phi, Const(1))))
            assert lhs == both
