"""Command-line workbench.

Exit codes: 0 the checked property holds (or the task succeeded), 1 the
property fails and the report carries a replayable witness, 2 usage or
input error, 3 search bound exhausted / undecided.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import catalog as cat
from . import compat as cp
from . import filters as fl
from . import terms as tm
from .core import validate_ririg
from .files import FileFormatError, load_algebra, load_function
from .logic import CATALOG_CAVEAT, check_proof, lddt_witness, \
    parse_proof, semantic_entails, soundness_check
from .modal import format_block, validate_modal
from .parsing import ParseError, format_term, parse_equation, parse_formula

ENV_CATALOG = "RIRIG_CATALOG"

OK, FAIL, USAGE, UNDECIDED = 0, 1, 2, 3


class CliError(Exception):
    pass


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=1))
        return
    def render(value, indent=0):
        pad = "  " * indent
        if isinstance(value, dict):
            for k in value:
                v = value[k]
                if isinstance(v, (dict, list)) and v:
                    print(f"{pad}{k}:")
                    render(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v if v != [] else '[]'}")
        elif isinstance(value, list):
            for v in value:
                if isinstance(v, (dict, list)):
                    render(v, indent)
                    print()
                else:
                    print(f"{pad}- {v}")
        else:
            print(f"{pad}{value}")
    render(report)


def _load(path):
    try:
        return load_algebra(path)
    except FileFormatError as e:
        raise CliError(str(e)) from None
    except OSError as e:
        raise CliError(str(e)) from None


def _labeler(labels):
    return lambda i: labels[i]


def _subset_text(S, labels):
    return "{" + ",".join(labels[i] for i in sorted(S)) + "}"


def _partition_text(theta, labels):
    classes = {}
    for i, c in enumerate(theta):
        classes.setdefault(c, []).append(i)
    return " | ".join(_subset_text(members, labels)
                      for _, members in sorted(classes.items()))


def _parse_element(part: str, labels) -> int:
    part = part.strip()
    if part in labels:
        return labels.index(part)
    if part.isdigit() and int(part) < len(labels):
        return int(part)
    raise CliError(f"unknown element {part!r}")


def _parse_elements(spec_text: str, labels) -> set[int]:
    if not spec_text:
        return set()
    return {_parse_element(part, labels) for part in spec_text.split(",")}


def _parse_tuple(spec_text: str, labels) -> tuple[int, ...]:
    return tuple(_parse_element(part, labels)
                 for part in spec_text.split(","))


def _load_catalog(args) -> cat.Catalog:
    path = getattr(args, "catalog", None) or os.environ.get(ENV_CATALOG)
    if not path:
        raise CliError(f"no catalog: pass --catalog or set {ENV_CATALOG}")
    try:
        return cat.catalog_load(path)
    except (OSError, ValueError) as e:
        raise CliError(f"cannot load catalog: {e}") from None


def _witness_arg(args):
    raw = getattr(args, "verify_witness", None)
    if raw is None:
        return None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise CliError(f"--verify-witness is not valid JSON: {e}") from None


# ---------------------------------------------------------------------------
# commands

def cmd_check(args):
    A, labels = _load(args.algebra)
    base_report = validate_ririg(A.base)
    modal_report = validate_modal(A)
    failures = [{"axiom": name, "witness": list(w)}
                for name, w in base_report.failures + modal_report.failures]
    witness = _witness_arg(args)
    if witness is not None:
        wanted = {"axiom": witness.get("axiom"),
                  "witness": list(witness.get("witness", []))}
        reproduced = wanted in failures
        return (OK if reproduced else FAIL), {
            "witness": wanted, "reproduced": reproduced}
    report = {
        "ririg": {"passed": base_report.passed},
        "modal": {name: "ok" for name in A.sig.names},
        "failures": failures,
    }
    if not modal_report.passed:
        for name, _ in modal_report.failures:
            report["modal"][name.split(":")[0]] = "failed"
    return (OK if not failures else FAIL), report


def cmd_filters(args):
    A, labels = _load(args.algebra)
    filters = fl.all_ifilters(A)
    return OK, {
        "count": len(filters),
        "filters": [_subset_text(F, labels) for F in filters],
    }


def cmd_congruences(args):
    A, labels = _load(args.algebra)
    via_filters = [fl.theta_from_filter(A, F) for F in fl.all_ifilters(A)]
    report = {
        "count": len(via_filters),
        "congruences": [_partition_text(t, labels) for t in via_filters],
    }
    if args.direct:
        direct = fl.all_congruences_direct(A, cap=args.congruence_cap)
        report["direct-count"] = len(direct)
        report["agrees"] = sorted(direct) == sorted(via_filters)
        if not report["agrees"]:
            return FAIL, report
    return OK, report


def cmd_gen_filter(args):
    A, labels = _load(args.algebra)
    X = _parse_elements(args.set, labels)
    fixpoint = fl.generate_filter(A, X)
    blocks = fl.generate_filter_blocks_stabilized(A, X)
    lam = fl.generate_filter_lambda(A, X)
    report = {
        "set": _subset_text(X, labels),
        "filter": _subset_text(fixpoint, labels),
        "block-route": _subset_text(blocks, labels),
        "lambda-route": _subset_text(lam, labels),
        "routes-agree": fixpoint == blocks == lam,
    }
    return (OK if report["routes-agree"] else FAIL), report


def cmd_simple(args):
    A, labels = _load(args.algebra)
    if A.size < 2:
        raise CliError("the trivial algebra has no simplicity question")
    witness = _witness_arg(args)
    if witness is not None:
        a = _parse_element(witness["element"], labels)
        reproduced = (a != A.one
                      and A.zero not in fl.generate_filter(A, {a}))
        return (OK if reproduced else FAIL), {"reproduced": reproduced}
    decision, witnesses = fl.is_simple(A)
    if decision:
        return OK, {
            "simple": True,
            "witnesses": {
                labels[a]: {
                    "blocks": [format_block(M, A.sig) for M in w.blocks],
                    "lambda-exponent": w.lam_exponent,
                    "lambda-power": w.lam_power,
                } for a, w in sorted(witnesses.items())},
        }
    bad = next(a for a in range(A.size)
               if a != A.one and A.zero not in fl.generate_filter(A, {a}))
    return FAIL, {
        "simple": False,
        "witness": {
            "element": labels[bad],
            "proper-filter": sorted(labels[i] for i in
                                    fl.generate_filter(A, {bad}))},
    }


def cmd_si(args):
    A, labels = _load(args.algebra)
    if A.size < 2:
        raise CliError("the trivial algebra has no irreducibility question")
    witness = _witness_arg(args)
    if witness is not None:
        elems = [_parse_element(e, labels) for e in witness["elements"]]
        common = frozenset(range(A.size))
        for a in elems:
            common &= fl.generate_filter(A, {a})
        reproduced = common == frozenset({A.one})
        return (OK if reproduced else FAIL), {"reproduced": reproduced}
    decision, b = fl.is_subdirectly_irreducible(A)
    if decision:
        return OK, {"subdirectly-irreducible": True, "witness": labels[b]}
    return FAIL, {
        "subdirectly-irreducible": False,
        "witness": {
            "elements": [labels[a] for a in range(A.size) if a != A.one],
            "minimal-filters": [_subset_text(F, labels)
                                for F in _minimal_nontrivial_filters(A)]},
    }


def _minimal_nontrivial_filters(A):
    nontrivial = [F for F in fl.all_ifilters(A) if len(F) > 1]
    return [F for F in nontrivial
            if not any(G < F for G in nontrivial)]


def cmd_classify(args):
    A, labels = _load(args.algebra)
    witness = _witness_arg(args)
    if witness is not None:
        a, b = (_parse_element(x, labels) for x in witness["pair"])
        joined = fl.generate_filter(A, {A.join[a][b]})
        split = fl.generate_filter(A, {a}) & fl.generate_filter(A, {b})
        reproduced = joined != split
        return (OK if reproduced else FAIL), {"reproduced": reproduced}
    report = {
        "chain": tm.is_chain(A),
        "contractive": tm.is_contractive(A),
        "prelinear": tm.satisfies_prelinearity(A),
        "join-subdistribution": {
            name: tm.satisfies_join_subdistribution(A, name)
            for name in A.sig.names},
        "in-chain-variety": tm.in_chain_variety(A),
    }
    if report["in-chain-variety"]:
        ok, cex = tm.fg_intersection_check(A)
        report["fg-intersection-law"] = ok
        if not ok:
            report["witness"] = {"pair": [labels[cex[0]], labels[cex[1]]]}
            return FAIL, report
    return OK, report


def _compat_routes(A, f, args):
    routes = {}
    if args.route in ("all", "direct"):
        routes["direct"] = cp.is_compatible_direct(A, f,
                                                   cap=args.congruence_cap)
    if args.route in ("all", "blocks"):
        routes["blocks"] = cp.compat_witness_kary(
            A, f, block_len_bound=args.block_bound,
            with_witnesses=args.witnesses)
    if args.route in ("all", "lambda"):
        routes["lambda"] = cp.compat_witness_lambda(
            A, f, with_witnesses=args.witnesses)
    return routes


def _compat_report(A, labels, routes, args):
    report = {"routes": {}}
    for name, r in routes.items():
        entry = {"verdict": r.verdict}
        if r.failing is not None:
            if name == "direct":
                theta, pairs = r.failing
                entry["witness"] = {
                    "congruence": _partition_text(theta, labels),
                    "pairs": [[labels[a], labels[b]] for a, b in pairs]}
            else:
                (a, b), = r.failing
                entry["witness"] = {
                    "tuples": [[labels[i] for i in a],
                               [labels[i] for i in b]]}
        if args.witnesses and r.witnesses:
            entry["pair-witnesses"] = {
                str(([labels[i] for i in a], [labels[i] for i in b])):
                    _format_pair_witness(A, name, w)
                for (a, b), w in sorted(r.witnesses.items())}
        report["routes"][name] = entry
    verdicts = {r.verdict for r in routes.values()}
    report["agree"] = len(verdicts) == 1
    return report, verdicts


def _format_pair_witness(A, route, w):
    if w is None:
        return None
    if route == "blocks":
        return [f"{format_block(M, A.sig)}@{slot}" for M, slot in w]
    l, slots = w
    return {"exponent": l, "slots": list(slots)}


def cmd_compatible(args):
    A, labels = _load(args.algebra)
    if args.fn is None and args.random is None:
        raise CliError("pass --fn FILE or --random N")
    if args.fn is not None:
        try:
            f = load_function(args.fn)
        except FileFormatError as e:
            raise CliError(str(e)) from None
        witness = _witness_arg(args)
        if witness is not None:
            return _verify_compat_witness(A, labels, f, witness, args)
        routes = _compat_routes(A, f, args)
        report, verdicts = _compat_report(A, labels, routes, args)
        if "undecided" in verdicts:
            return UNDECIDED, report
        return (OK if verdicts == {"compatible"} else FAIL), report
    # seeded random agreement sweep
    disagreements = cp.agreement_sweep(A, args.arity, args.random,
                                       args.seed, jobs=args.jobs)
    report = {"seed": args.seed, "sampled": args.random,
              "arity": args.arity,
              "disagreements": [
                  {"table": list(f.table), "direct": d, "blocks": b,
                   "lambda": l} for f, d, b, l in disagreements]}
    return (OK if not disagreements else FAIL), report


def _verify_compat_witness(A, labels, f, witness, args):
    pairs = witness.get("pairs")
    part_text = witness.get("congruence")
    if pairs is None or part_text is None:
        raise CliError("witness must carry 'congruence' and 'pairs'")
    theta = _partition_from_text(part_text, labels, A.size)
    if not fl.is_congruence(A, theta):
        return FAIL, {"reproduced": False, "reason": "not a congruence"}
    idx = {lab: i for i, lab in enumerate(labels)}
    arg_pairs = [(idx[a], idx[b]) for a, b in pairs]
    left = f(*(p[0] for p in arg_pairs))
    right = f(*(p[1] for p in arg_pairs))
    related = all(theta[a] == theta[b] for a, b in arg_pairs)
    reproduced = related and theta[left] != theta[right]
    return (OK if reproduced else FAIL), {"reproduced": reproduced}


def _partition_from_text(text, labels, n):
    idx = {lab: i for i, lab in enumerate(labels)}
    class_of = [0] * n
    for block in text.split("|"):
        members = [idx[x] for x in
                   block.strip().strip("{}").split(",") if x]
        for m in members:
            class_of[m] = min(members)
    return fl.normalize_partition(tuple(class_of))


def cmd_laf(args):
    A, labels = _load(args.algebra)
    try:
        f = load_function(args.fn)
    except FileFormatError as e:
        raise CliError(str(e)) from None
    if args.points:
        B = [_parse_tuple(p, labels) for p in args.points]
    else:
        import itertools as it
        B = list(it.product(range(A.size), repeat=f.arity))
    try:
        rep = cp.laf_representation(A, f, B)
    except ValueError as e:
        raise CliError(str(e)) from None
    report = {
        "points": [str([labels[i] for i in p]) for p in rep.points],
        "anchor-exponents": {str([labels[i] for i in a]): l
                             for a, l in sorted(rep.anchor_exponents.items())},
        "verified": rep.verified,
        "joins": {str([labels[i] for i in x]):
                  {"terms": [labels[t] for t in terms],
                   "join": labels[j],
                   "expected": labels[f(*x)]}
                  for x, (terms, j) in sorted(rep.joins.items())},
    }
    return (OK if rep.verified else FAIL), report


def cmd_enumerate(args):
    require = tuple(args.require or ())
    try:
        built = cat.catalog_build(args.max_size, args.modals, require,
                                  size_cap=args.size_cap)
    except ValueError as e:
        raise CliError(str(e)) from None
    by_size: dict[int, int] = {}
    for e in built.entries:
        by_size[e.algebra.size] = by_size.get(e.algebra.size, 0) + 1
    report = {
        "max-size": args.max_size,
        "modals": args.modals,
        "require": list(require),
        "count": len(built.entries),
        "by-size": {str(k): v for k, v in sorted(by_size.items())},
        "flags": {
            "chain": sum(e.chain for e in built.entries),
            "contractive": sum(e.contractive for e in built.entries),
            "in_rc": sum(e.in_rc for e in built.entries),
            "simple": sum(bool(e.simple) for e in built.entries),
            "si": sum(bool(e.si) for e in built.entries),
        },
    }
    if args.out:
        cat.catalog_save(built, args.out)
        report["saved"] = args.out
    return OK, report


def cmd_prove(args):
    try:
        with open(args.proof) as fh:
            proof = parse_proof(fh.read())
    except (OSError, ValueError) as e:
        raise CliError(f"cannot read proof: {e}") from None
    result = check_proof(proof)
    witness = _witness_arg(args)
    if witness is not None:
        reproduced = (not result.ok
                      and result.bad_line == witness.get("line"))
        return (OK if reproduced else FAIL), {"reproduced": reproduced}
    report = {
        "hypotheses": [format_term(h) for h in proof.hypotheses],
        "lines": len(proof.lines),
        "checked": result.ok,
    }
    if not result.ok:
        report["witness"] = {"line": result.bad_line, "reason": result.reason}
        return FAIL, report
    report["conclusion"] = format_term(proof.conclusion())
    if args.catalog or os.environ.get(ENV_CATALOG):
        algebras = _load_catalog(args).algebras()
        sound = soundness_check(proof, algebras)
        report["soundness"] = {
            "catalog-size": len(algebras),
            "holds": sound,
            "note": CATALOG_CAVEAT,
        }
        if not sound:
            return FAIL, report
    return OK, report


def cmd_entails(args):
    algebras = _load_catalog(args).algebras()
    try:
        premises = [parse_equation(t) for t in (args.assume or [])]
        goal = parse_equation(args.goal)
    except ParseError as e:
        raise CliError(str(e)) from None
    witness = _witness_arg(args)
    if witness is not None:
        return _verify_entails_witness(algebras, premises, goal, witness)
    try:
        holds_, cm = semantic_entails(algebras, premises, goal,
                                      cap=args.valuation_cap)
    except ValueError as e:
        raise CliError(str(e)) from None
    report = {"entailed": holds_, "note": CATALOG_CAVEAT}
    if not holds_:
        A, v = cm
        report["witness"] = {
            "algebra": cat.canonical_form(A).hex(),
            "size": A.size,
            "valuation": {f"v{i}": x for i, x in sorted(v.items())},
        }
        return FAIL, report
    return OK, report


def _verify_entails_witness(algebras, premises, goal, witness):
    form = witness.get("algebra")
    valuation = {int(k[1:]): v for k, v in witness.get("valuation", {}).items()}
    A = next((B for B in algebras
              if cat.canonical_form(B).hex() == form), None)
    if A is None:
        return FAIL, {"reproduced": False, "reason": "algebra not in catalog"}
    from .terms import eval_term
    sat = all(eval_term(A, valuation, e.lhs) == eval_term(A, valuation, e.rhs)
              for e in premises)
    fails = eval_term(A, valuation, goal.lhs) != eval_term(A, valuation,
                                                           goal.rhs)
    return (OK if sat and fails else FAIL), {"reproduced": sat and fails}


def cmd_lddt(args):
    algebras = _load_catalog(args).algebras()
    try:
        gamma = [parse_formula(t) for t in (args.gamma or [])]
        delta = [parse_formula(t) for t in args.delta]
        goal = parse_formula(args.goal)
    except ParseError as e:
        raise CliError(str(e)) from None
    sig = algebras[0].sig
    w = lddt_witness(gamma, delta, goal, algebras,
                     block_len_bound=args.block_bound,
                     product_bound=args.product_bound,
                     lambda_mode=args.lambda_mode,
                     max_exponent=args.max_exponent)
    if w is None:
        return UNDECIDED, {
            "witness": None,
            "note": "bound exhausted; not a disproof",
        }
    report = {
        "witness": [{"block": format_block(M, sig), "formula": format_term(d)}
                    for M, d in w.factors],
        "candidate": format_term(w.candidate),
        "certificate": w.certificate,
    }
    if w.lam_exponent is not None:
        report["lambda-exponent"] = w.lam_exponent
    return OK, report


def cmd_cep(args):
    A, labels = _load(args.algebra)
    witness = _witness_arg(args)
    if witness is not None:
        S = frozenset(_parse_elements(",".join(witness["subuniverse"]),
                                      labels))
        sub, elems = fl.induced_subalgebra(A, S)
        theta = tuple(witness["congruence"])
        extendable = any(
            fl.restrict_congruence(xi, elems) == fl.normalize_partition(theta)
            for xi in fl.all_congruences_direct(A))
        return (OK if not extendable else FAIL), {"reproduced": not extendable}
    ok, cex = fl.cep_check(A, cap=args.subuniverse_cap,
                           congruence_cap=args.congruence_cap)
    if ok:
        return OK, {"cep": True,
                    "subuniverses": len(fl.subuniverses(
                        A, cap=args.subuniverse_cap))}
    S, theta = cex
    return FAIL, {
        "cep": False,
        "witness": {"subuniverse": [labels[i] for i in sorted(S)],
                    "congruence": list(theta)},
        "note": "this should be impossible; it certifies an implementation "
                "bug",
    }


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ririg",
        description="workbench for finite modal residuated integral rigs")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true",
                       help="machine-readable report")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker count for scans (accepted everywhere, "
                            "used by heavy commands)")
        return p

    def alg(p):
        p.add_argument("algebra", help="algebra file (JSON)")
        p.add_argument("--congruence-cap", type=int,
                       default=fl.DEFAULT_CONGRUENCE_CAP)
        p.add_argument("--subuniverse-cap", type=int,
                       default=fl.DEFAULT_SUBUNIVERSE_CAP)
        p.add_argument("--verify-witness", metavar="JSON",
                       help="re-check a previously reported witness")

    p = add("check", cmd_check, help="validate the algebra axioms")
    alg(p)
    p = add("filters", cmd_filters, help="list all filters")
    alg(p)
    p = add("congruences", cmd_congruences, help="list all congruences")
    alg(p)
    p.add_argument("--direct", action="store_true",
                   help="cross-check with the partition oracle")
    p = add("gen-filter", cmd_gen_filter,
            help="generated filter by all three routes")
    alg(p)
    p.add_argument("--set", default="", help="comma-separated elements")
    p = add("simple", cmd_simple, help="decide simplicity with witnesses")
    alg(p)
    p = add("si", cmd_si, help="decide subdirect irreducibility")
    alg(p)
    p = add("classify", cmd_classify,
            help="chain/contractive/prelinearity classification")
    alg(p)
    p = add("compatible", cmd_compatible,
            help="check a function for congruence compatibility")
    alg(p)
    p.add_argument("--fn", help="function file (JSON)")
    p.add_argument("--route", choices=("all", "direct", "blocks", "lambda"),
                   default="all")
    p.add_argument("--block-bound", type=int, default=None)
    p.add_argument("--witnesses", action="store_true",
                   help="include per-pair witnesses in the report")
    p.add_argument("--random", type=int, default=None,
                   help="agreement sweep over N random functions")
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--seed", type=int, default=cp.DEFAULT_SEED)
    p = add("laf", cmd_laf, help="local polynomial join representation")
    alg(p)
    p.add_argument("--fn", required=True)
    p.add_argument("--points", nargs="*",
                   help="tuples as comma-separated elements")
    p = add("enumerate", cmd_enumerate, help="build and save a catalog")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--modals", type=int, default=0)
    p.add_argument("--require", action="append",
                   choices=cat.KNOWN_CONSTRAINTS)
    p.add_argument("--size-cap", type=int, default=cat.DEFAULT_SIZE_CAP)
    p.add_argument("--out", help="write the catalog here")
    p = add("prove", cmd_prove, help="check a proof file, then its "
                                     "soundness over a catalog")
    p.add_argument("proof")
    p.add_argument("--catalog")
    p.add_argument("--verify-witness", metavar="JSON")
    p = add("entails", cmd_entails, help="semantic entailment over a catalog")
    p.add_argument("--catalog")
    p.add_argument("--assume", action="append", metavar="EQUATION")
    p.add_argument("--valuation-cap", type=int, default=4096)
    p.add_argument("--verify-witness", metavar="JSON")
    p.add_argument("goal", metavar="EQUATION")
    p = add("lddt", cmd_lddt, help="local deduction witness search")
    p.add_argument("--catalog")
    p.add_argument("--gamma", action="append", metavar="FORMULA")
    p.add_argument("--delta", nargs="+", required=True, metavar="FORMULA")
    p.add_argument("--goal", required=True, metavar="FORMULA")
    p.add_argument("--block-bound", type=int, default=2)
    p.add_argument("--product-bound", type=int, default=2)
    p.add_argument("--lambda-mode", action="store_true")
    p.add_argument("--max-exponent", type=int, default=4)
    p = add("cep", cmd_cep, help="congruence extension check")
    alg(p)
    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.handler(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    _emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
