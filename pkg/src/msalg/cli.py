"""Batch command line over the engine.

Exit codes: 0 for success and true verdicts, 1 for refutations and false
verdicts, 2 for any diagnosable error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebras import DEFAULT_MAX_ROWS, FiniteAlgebra, realize, satisfies
from .errors import MsalgError
from .hallbenabou import (
    benabou_spec,
    check_pd_spec_morphism,
    hall_spec,
    hb_transformations,
)
from .kernel import Sort
from .morphisms import compose_polyderivators, reduct_algebra, translate_term
from .speclang import (
    MorphismDecl,
    Workspace,
    parse,
    print_workspace,
    render_term,
    workspace_of_generated,
)
from .transformations import Proved, Refuted, VerifiedOnModels, check_transformation_mod
from .clones import equal_mod_free_theory


def _load(path: str) -> Workspace:
    return parse(Path(path).read_text(encoding="utf-8"))


def _cmd_check(args) -> int:
    ws = _load(args.file)
    print(f"ok: {len(ws.signatures)} signatures, {len(ws.specs)} specs, "
          f"{len(ws.algebras)} algebras, {len(ws.terms)} terms, "
          f"{len(ws.equations)} equations, {len(ws.morphisms)} morphisms, "
          f"{len(ws.transformations)} transformations")
    return 0


def _cmd_eval(args) -> int:
    ws = _load(args.file)
    algebra = ws.algebra(args.algebra)
    decl = ws.terms.get(args.term)
    if decl is None:
        raise MsalgError(f"no term named {args.term!r}")
    ctx = decl.term.context
    values = [v for v in args.args.split(",") if v != ""] if args.args else []
    if len(values) != len(ctx):
        raise MsalgError(f"term context has {len(ctx)} variables, got {len(values)} arguments")
    valuation = dict(zip(ctx.variables, values))
    print(realize(algebra, decl.term, valuation))
    return 0


def _cmd_satisfy(args) -> int:
    ws = _load(args.file)
    algebra = ws.algebra(args.algebra)
    verdicts = []
    if args.equation:
        verdicts.append((args.equation, satisfies(algebra, ws.equation(args.equation),
                                                  max_rows=args.max_rows)))
    if args.spec:
        spec = ws.spec(args.spec)
        for name, eq in spec.equations.items():
            verdicts.append((name, satisfies(algebra, eq, max_rows=args.max_rows)))
    if not verdicts:
        raise MsalgError("nothing to check: pass --equation and/or --spec")
    ok = True
    for name, verdict in verdicts:
        print(f"{name}: {'holds' if verdict else 'fails'}")
        ok = ok and verdict
    return 0 if ok else 1


def _cmd_translate(args) -> int:
    ws = _load(args.file)
    pd = ws.morphism(args.morphism)
    decl = ws.terms.get(args.term)
    if decl is None:
        raise MsalgError(f"no term named {args.term!r}")
    fam = translate_term(pd, decl.term)
    body = ", ".join(render_term(t) for t in fam.components)
    print(f"family {fam.domain!r} -> {fam.codomain!r}: ( {body} )")
    return 0


def _cmd_reduct(args) -> int:
    ws = _load(args.file)
    pd = ws.morphism(args.morphism)
    algebra = ws.algebra(args.algebra)
    reduct = reduct_algebra(pd, algebra, max_rows=args.max_rows)
    relabeled = _relabel(reduct)
    out = Workspace()
    decl = ws.morphisms[args.morphism]
    out.signatures[decl.source_name] = reduct.signature
    out.algebras[args.name] = (decl.source_name, relabeled)
    sys.stdout.write(print_workspace(out))
    return 0


def _relabel(algebra: FiniteAlgebra) -> FiniteAlgebra:
    """Tuple-labeled carriers get printable labels e0, e1, ... per sort."""
    names = {s: {e: f"e{i}" for i, e in enumerate(algebra.carriers[s])}
             for s in algebra.signature.sorts}
    carriers = {s: tuple(names[s][e] for e in algebra.carriers[s])
                for s in algebra.signature.sorts}
    tables = {}
    for op_name, table in algebra.tables.items():
        op = algebra.signature.op(op_name)
        tables[op_name] = {
            tuple(names[s][e] for s, e in zip(op.arity, row)): names[op.coarity][out]
            for row, out in table.items()
        }
    return FiniteAlgebra(algebra.signature, carriers, tables, check=False)


def _cmd_compose(args) -> int:
    ws = _load(args.file)
    outer = ws.morphisms[args.outer]
    inner = ws.morphisms[args.inner]
    pd = compose_polyderivators(outer.morphism, inner.morphism)
    out = Workspace()
    out.signatures[inner.source_name] = pd.source
    out.signatures[outer.target_name] = pd.target
    out.morphisms[args.name] = MorphismDecl(inner.source_name, outer.target_name, pd)
    sys.stdout.write(print_workspace(out))
    return 0


def _cmd_check_transformation(args) -> int:
    ws = _load(args.file)
    tr = ws.transformation(args.xi)
    decl = ws.transformations[args.xi]
    if args.from_ and decl.from_name != args.from_:
        raise MsalgError(f"transformation {args.xi!r} starts at {decl.from_name!r}, not {args.from_!r}")
    if args.to and decl.to_name != args.to:
        raise MsalgError(f"transformation {args.xi!r} ends at {decl.to_name!r}, not {args.to!r}")
    spec = ws.spec(args.spec) if args.spec else None
    models = []
    names = []
    if args.models:
        for name in args.models.split(","):
            models.append(ws.algebra(name))
            names.append(name)
    verdict = check_transformation_mod(tr, spec, models, model_names=names,
                                       max_rows=args.max_rows)
    print(verdict)
    return 0 if isinstance(verdict, (Proved, VerifiedOnModels)) else 1


def _cmd_hall_benabou(args) -> int:
    sorts = tuple(Sort(name) for name in args.sorts.split(","))
    bound = args.bound
    if args.action == "generate":
        hs = hall_spec(sorts, bound)
        bs = benabou_spec(sorts, bound)
        ws_h = workspace_of_generated(hs, "HallSig", "HallLaws")
        ws_b = workspace_of_generated(bs, "BenabouSig", "BenabouLaws")
        sys.stdout.write(print_workspace(ws_h))
        sys.stdout.write(print_workspace(ws_b))
        return 0
    data = hb_transformations(sorts, bound)
    failures = 0

    def report(label: str, ok: bool):
        nonlocal failures
        print(f"{label}: {'ok' if ok else 'FAIL'}")
        if not ok:
            failures += 1

    verdict_d = check_pd_spec_morphism(data["d"], data["benabou_spec"], data["hall_spec"])
    report(f"spec-morphism d [{verdict_d}]", isinstance(verdict_d, Proved))
    verdict_e = check_pd_spec_morphism(data["e"], data["hall_spec"], data["benabou_spec"])
    report(f"spec-morphism e [{verdict_e}]", isinstance(verdict_e, Proved))
    verdict_chi = check_transformation_mod(data["chi_b"], data["benabou_spec"])
    report(f"2-cell into the composite [{verdict_chi}]", isinstance(verdict_chi, Proved))
    verdict_rho = check_transformation_mod(data["rho_b"], data["benabou_spec"])
    report(f"2-cell out of the composite [{verdict_rho}]", isinstance(verdict_rho, Proved))

    from .clones import family_compose
    from .terms import TermFamily

    def normalizes_to_identity(first, second) -> bool:
        for s in data["id_b"].source.sorts:
            composite = family_compose(second.xi[s], first.xi[s])
            identity_fam = TermFamily.identity(composite.domain)
            for a, b in zip(composite.components, identity_fam.components):
                if a != b and not equal_mod_free_theory(a, b, "benabou"):
                    return False
        return True

    report("round trip normalizes to the identity",
           normalizes_to_identity(data["chi_b"], data["rho_b"]))
    report("opposite round trip normalizes to the identity tuple",
           normalizes_to_identity(data["rho_b"], data["chi_b"]))
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="msalg",
                                     description="exact engine for many-sorted equational algebra")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and typecheck a document")
    p.add_argument("--file", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("eval", help="evaluate a named term in an algebra")
    p.add_argument("--file", required=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--args", default="")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("satisfy", help="brute-force satisfaction of equations")
    p.add_argument("--file", required=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--equation")
    p.add_argument("--spec")
    p.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS)
    p.set_defaults(func=_cmd_satisfy)

    p = sub.add_parser("translate", help="translate a named term along a morphism")
    p.add_argument("--file", required=True)
    p.add_argument("--morphism", required=True)
    p.add_argument("--term", required=True)
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("reduct", help="the source-signature algebra carried by a target algebra")
    p.add_argument("--file", required=True)
    p.add_argument("--morphism", required=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--name", default="reduct")
    p.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS)
    p.set_defaults(func=_cmd_reduct)

    p = sub.add_parser("compose", help="compose two morphisms")
    p.add_argument("--file", required=True)
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--name", default="composite")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("check-transformation", help="check a 2-cell strictly or modulo a theory")
    p.add_argument("--file", required=True)
    p.add_argument("--xi", required=True)
    p.add_argument("--from", dest="from_")
    p.add_argument("--to", dest="to")
    p.add_argument("--spec")
    p.add_argument("--models", default="")
    p.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS)
    p.set_defaults(func=_cmd_check_transformation)

    p = sub.add_parser("hall-benabou", help="generate or verify the two clone-law specifications")
    p.add_argument("action", choices=["generate", "verify"])
    p.add_argument("--sorts", default="s")
    p.add_argument("--bound", type=int, default=2)
    p.set_defaults(func=_cmd_hall_benabou)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MsalgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
