"""Batch command-line front end with JSON input and output.

Every invocation writes exactly one JSON document with sorted keys to
standard output, so identical invocations produce byte-identical bytes;
wall-clock timing goes to standard error where it cannot disturb golden
files.  Exit codes: 0 on success, 1 on a domain error (bad input, unknown
command), 2 when a resource ceiling is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import cob1, cob2, fincat, localize, monoidal, nerve
from .exactmath import abelianize
from .limits import ResourceLimitExceeded


@dataclass(frozen=True)
class RunReport:
    """Outcome of one invocation: echoed command, result or error, timing."""

    command: tuple[str, ...]
    result: object
    error: str | None
    exit_code: int
    seconds: float

    def payload(self) -> dict:
        doc: dict = {"command": list(self.command)}
        if self.error is None:
            doc["result"] = self.result
        else:
            doc["error"] = self.error
        return doc


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cobcat",
        description="Exact invariants of finite categories, diagram "
        "categories, and surface cobordisms.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("cat", help="finite categories and their nerves")
    cat_sub = cat.add_subparsers(dest="subcommand", required=True)
    hom = cat_sub.add_parser("homology", help="integer homology of the nerve")
    hom.add_argument("--cap", type=int, default=3, help="degrees computed: H_0..H_{cap-1}")
    hom.add_argument("--max-cells", type=int, default=None, help="cell ceiling override")
    hom.add_argument("path", help="category JSON file")
    pi1p = cat_sub.add_parser("pi1", help="fundamental group presentation")
    pi1p.add_argument("--base", required=True, help="basepoint object")
    pi1p.add_argument("path")
    pi0p = cat_sub.add_parser("pi0", help="connected components")
    pi0p.add_argument("path")
    val = cat_sub.add_parser("validate", help="check the category axioms")
    val.add_argument("path")

    loc = sub.add_parser("localize", help="invariants of localized categories")
    loc_sub = loc.add_subparsers(dest="subcommand", required=True)
    aut = loc_sub.add_parser("aut", help="automorphisms of an object after localization")
    aut.add_argument("--base", required=True, help="basepoint object")
    aut.add_argument("path")
    surf = loc_sub.add_parser("surfaces", help="surface relation engine")
    surf.add_argument("--max-chi", type=int, default=4, dest="max_chi",
                      help="complexity bound: classes with chi >= -N")

    c1 = sub.add_parser("cob1", help="planar diagram words")
    c1_sub = c1.add_subparsers(dest="subcommand", required=True)
    f1 = c1_sub.add_parser("f", help="signed circle count of a diagram")
    f1.add_argument("path")
    comp1 = c1_sub.add_parser("compose", help="stack two diagram words")
    comp1.add_argument("first")
    comp1.add_argument("second")
    red = c1_sub.add_parser("reduce", help="class of a closed word in the localization")
    red.add_argument("path")

    c2 = sub.add_parser("cob2", help="surface cobordisms")
    c2_sub = c2.add_subparsers(dest="subcommand", required=True)
    comp2 = c2_sub.add_parser("compose", help="glue two cobordisms")
    comp2.add_argument("first")
    comp2.add_argument("second")
    eul = c2_sub.add_parser("euler", help="Euler theory value chi(W) - chi(src)")
    eul.add_argument("path")
    cls2 = c2_sub.add_parser("class", help="connected-class factorization of a closed surface")
    cls2.add_argument("path")
    kch = c2_sub.add_parser("kcheck", help="connectivity of the outgoing boundary")
    kch.add_argument("--k", type=int, default=0)
    kch.add_argument("path")

    pic = sub.add_parser("picard", help="skeletal symmetric monoidal groupoids")
    pic_sub = pic.add_subparsers(dest="subcommand", required=True)
    pk = pic_sub.add_parser("k", help="k-invariant of an object class")
    pk.add_argument("--input", required=True, help="Picard data JSON file")
    pk.add_argument("--element", required=True, help="comma-separated coordinates")
    peq = pic_sub.add_parser("equivalent", help="search for an equivalence")
    peq.add_argument("first")
    peq.add_argument("second")
    peq.add_argument("--search-bound", type=int, default=20000, dest="search_bound")
    pc1 = pic_sub.add_parser("cob1", help="derived Picard data of the 1d localization")
    pc1.add_argument("--max-points", type=int, default=8, dest="max_points")

    fr = sub.add_parser("frob", help="field theories from a symmetric pairing")
    fr_sub = fr.add_subparsers(dest="subcommand", required=True)
    fev = fr_sub.add_parser("eval", help="matrix of a matching")
    fev.add_argument("theory")
    fev.add_argument("morphism")
    fex = fr_sub.add_parser("extend", help="extension criterion verdict")
    fex.add_argument("theory")

    rel = sub.add_parser(
        "relations",
        help="check the commuting-square relation classes of a finite category",
    )
    rel.add_argument("--base", default=None, help="restrict to one component")
    rel.add_argument("path")

    return top


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _run_cat(args) -> object:
    c = fincat.from_json(_load(args.path))
    if args.subcommand == "homology":
        groups = nerve.homology(nerve.build_nerve(c, args.cap, args.max_cells))
        return {"H": [g.to_json() for g in groups]}
    if args.subcommand == "pi1":
        p = nerve.fundamental_group(c, args.base)
        return {
            "abelianized": abelianize(p).to_json(),
            "base": args.base,
            "generators": list(p.generators),
            "relators": [p.render_word(r) for r in p.relators],
        }
    if args.subcommand == "pi0":
        return {"components": nerve.pi0(c)}
    problems = fincat.validate_category(c)
    groupoid, _ = fincat.is_groupoid(c)
    return {"groupoid": groupoid, "problems": problems, "valid": not problems}


def _run_localize(args) -> object:
    if args.subcommand == "surfaces":
        return localize.surface_localization_group(args.max_chi).to_json()
    c = fincat.from_json(_load(args.path))
    invariants, classes = localize.abelian_loop_classes(c, args.base)
    p = nerve.fundamental_group(c, args.base)
    return {
        "abelianized": invariants.to_json(),
        "base": args.base,
        "generators": list(p.generators),
        "loop_classes": {
            c.morphisms[i]: [list(pair) for pair in pairs]
            for i, pairs in classes.items()
        },
        "relators": [p.render_word(r) for r in p.relators],
    }


def _run_cob1(args) -> object:
    if args.subcommand == "compose":
        a = cob1.diagram_from_json(_load(args.first))
        b = cob1.diagram_from_json(_load(args.second))
        return cob1.compose_planar(a, b).to_json()
    w = cob1.diagram_from_json(_load(args.path))
    if args.subcommand == "f":
        return cob1.f_invariant(w)
    return cob1.reduce_endomorphism(w)


def _run_cob2(args) -> object:
    if args.subcommand == "compose":
        a = cob2.surface_from_json(_load(args.first))
        b = cob2.surface_from_json(_load(args.second))
        return cob2.surface_to_json(cob2.compose_surface(a, b))
    w = cob2.surface_from_json(_load(args.path))
    if args.subcommand == "euler":
        return {"euler": cob2.euler_tqft(w)}
    if args.subcommand == "class":
        s = cob2.surface_class(w)
        try:
            oriented = cob2.oriented_class(s)
        except ValueError:
            oriented = None
        return {
            "chi": sum(cob2.chi_of_class(c) for c in s.components),
            "classes": list(cob2.class_names(s)),
            "nullbordant": cob2.is_nullbordant(s),
            "oriented": oriented,
            "unoriented": cob2.unoriented_class(s),
        }
    return {"k": args.k, "k_connected": cob2.is_k_connected(w, args.k)}


def _parse_element(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def _run_picard(args) -> object:
    if args.subcommand == "k":
        p = monoidal.picard_from_json(_load(args.input))
        x = p.pi0.normalize(_parse_element(args.element))
        return {"element": list(x), "k": list(monoidal.k_invariant(p, x))}
    if args.subcommand == "equivalent":
        a = monoidal.picard_from_json(_load(args.first))
        b = monoidal.picard_from_json(_load(args.second))
        return {"equivalent": monoidal.picard_equivalent(a, b, args.search_bound)}
    return monoidal.cob1_picard(args.max_points).to_json()


def _run_frob(args) -> object:
    theory = monoidal.frobenius_from_json(_load(args.theory))
    if args.subcommand == "extend":
        ext = monoidal.extend_to_full(theory)
        circle = None
        if ext.evaluator is not None:
            circle = theory.field.to_json(ext.evaluator.circle_value())
        return {
            "circle": circle,
            "dim": theory.dim,
            "extends": ext.extends,
            "reason": ext.reason,
        }
    w = cob1.matching_from_json(_load(args.morphism))
    r = cob1.restricted_from_matching(w)
    if r is not None:
        mat = monoidal.evaluate_restricted(theory, r)
    else:
        ext = monoidal.extend_to_full(theory)
        if not ext.extends:
            raise ValueError(
                "morphism needs caps or circles but the "
                + ext.reason
            )
        mat = ext.evaluator.evaluate(w)
    return {
        "cols": theory.dim**w.m,
        "matrix": monoidal.mat_to_json(theory.field, mat),
        "rows": theory.dim**w.n,
    }


def _run_relations(args) -> object:
    c = fincat.from_json(_load(args.path))
    if args.base is not None:
        bases = [args.base]
    else:
        bases = [component[0] for component in nerve.pi0(c)]
    checked = 0
    nonvanishing = 0
    for base in bases:
        _, classes = localize.abelian_loop_classes(c, base)
        objects = sorted(nerve.component_objects(c, base))
        for x in objects:
            for y in objects:
                forth = c.hom(y, x)
                back = c.hom(x, y)
                for w1 in forth:
                    for w2 in forth:
                        for w3 in back:
                            for w4 in back:
                                inst = localize.RelationInstance(c, w1, w2, w3, w4)
                                word = localize.relation_word(inst)
                                vec = localize.word_class(classes, word)
                                checked += 1
                                if any(vec):
                                    nonvanishing += 1
    return {
        "checked": checked,
        "components": len(bases),
        "nonvanishing": nonvanishing,
    }


_HANDLERS = {
    "cat": _run_cat,
    "localize": _run_localize,
    "cob1": _run_cob1,
    "cob2": _run_cob2,
    "picard": _run_picard,
    "frob": _run_frob,
    "relations": _run_relations,
}


def dispatch(argv) -> RunReport:
    """Parse and execute one command line; never raises on domain errors."""
    start = time.perf_counter()
    command = tuple(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        if exc.code == 0:
            raise
        return RunReport(
            command,
            None,
            "unrecognized command line; " + parser.format_usage().strip(),
            1,
            time.perf_counter() - start,
        )
    try:
        result = _HANDLERS[args.command](args)
        error, code = None, 0
    except ResourceLimitExceeded as exc:
        result, error, code = None, str(exc), 2
    except (
        ValueError,
        KeyError,
        TypeError,
        AssertionError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        result, error, code = None, f"{type(exc).__name__}: {exc}", 1
    return RunReport(command, result, error, code, time.perf_counter() - start)


def main(argv=None) -> int:
    report = dispatch(sys.argv[1:] if argv is None else argv)
    print(json.dumps(report.payload(), sort_keys=True))
    print(f"elapsed {report.seconds:.3f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
