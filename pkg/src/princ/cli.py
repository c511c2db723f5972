"""Command line interface: ``princ <command> ...``.

Exit codes: 0 ok, 2 parse error, 3 not a lattice, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import checks
from .congruence import princ_order, principal_congruence
from .construct import check_c1, load_catalog, lat_of, verify_contract
from .corpus import (bounded_orders, order_triples, random_hom, random_lattice, random_order_lattices,
                     random_surjective_hom)
from .errors import NotALattice, PrincError
from .formats import (ParseError, document_of_order, document_of_triple, dumps, order_from_document,
                      parse_poset, parse_triple, to_dot, triple_from_document)
from .lattice import FIXTURES, lattice_from_order, named_lattice
from .triples import represent_full, verify_representation

EXIT_OK, EXIT_PARSE, EXIT_LATTICE, EXIT_VERIFY = 0, 2, 3, 4
MAX_CORPUS_SIZE = 5
COMMANDS = ("princ", "con", "lat", "represent", "verify-corpus")


class CliExit(Exception):
    def __init__(self, code, message=""):
        self.code = code
        super().__init__(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliExit(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _lattice_from_file(path: str):
    doc = parse_poset(_read(path))
    P = order_from_document(doc)
    try:
        return lattice_from_order(P, doc.labels)
    except NotALattice as exc:
        raise CliExit(EXIT_LATTICE, f"not a lattice: {exc}") from None


def _catalog():
    try:
        return load_catalog()
    except (OSError, ValueError, KeyError) as exc:
        raise CliExit(EXIT_PARSE, f"gadget catalog: {exc}") from None


def format_blocks(theta) -> str:
    return "{" + " | ".join(",".join(b) for b in theta.blocks) + "}"


def _write(path, text):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


# ----------------------------------------------------------------------
# commands


def cmd_princ(args, out) -> int:
    L = _lattice_from_file(args.file)
    po = princ_order(L)
    print(f"Princ L: {len(po.order)} congruences ({len(L)} elements)", file=out)
    below = {x: len(po.order.down(x)) for x in po.order.elements}
    for name in sorted(po.order.elements, key=lambda x: (below[x], x)):
        a, b = po.witness[name]
        print(f"  {name:<16} witness ({a},{b})  {format_blocks(po.congruences[name])}", file=out)
    for x, y in sorted(po.order.covers(), key=lambda c: (below[c[0]], c)):
        print(f"  {x} < {y}", file=out)
    if args.dot:
        _write(args.dot, to_dot(po.order, "Princ"))
    return EXIT_OK


def cmd_con(args, out) -> int:
    L = _lattice_from_file(args.file)
    for v in (args.a, args.b):
        if v not in L:
            raise CliExit(EXIT_PARSE, f"unknown element {v!r}")
    theta = principal_congruence(L, args.a, args.b)
    print(f"con({args.a},{args.b}) = {format_blocks(theta)}", file=out)
    return EXIT_OK


def cmd_lat(args, out) -> int:
    P = order_from_document(parse_poset(_read(args.file)))
    catalog = _catalog()
    X = [f"{k}" for k in range(args.x)]
    L = lat_of(P, X, args.kind, catalog)
    ok = check_c1(P, L)
    print(f"lattice of P with {args.kind} gadgets and {len(X)} universal complements: {len(L)} elements", file=out)
    print(f"Princ L isomorphic to P via p -> con(a:p,b:p): {'yes' if ok else 'NO'}", file=out)
    if args.out:
        _write(args.out, dumps(document_of_order(L.order, L.labels)))
    if args.dot:
        _write(args.dot, to_dot(L.order, "L"))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_represent(args, out) -> int:
    t = triple_from_document(parse_triple(_read(args.file)))
    catalog = _catalog()
    rep = verify_representation(t, args.variant, catalog)
    for clause, ok in sorted(rep.clauses.items()):
        print(f"  {'pass' if ok else 'FAIL'}  {clause}", file=out)
    for e in rep.errors:
        print(f"  FAIL  {e}", file=out)
    if rep.counts:
        c = rep.counts["standalone"]
        print(f"added elements {c['added_by_gadgets']}, formula {c['formula_expected']} "
              f"(n_P={c['n_P']}, c_P={c['c_P']}, c_Q={c['c_Q']}, {args.variant})", file=out)
    if args.dot and not rep.errors:
        run = represent_full(t, args.variant, catalog)
        d = Path(args.dot)
        for name, order in (("P", t.p), ("Q", t.q), ("K", run.triple.k.order), ("M", run.alpha_step.l.order),
                            ("L", run.triple.l.order), ("PrincK", princ_order(run.triple.k).order),
                            ("PrincL", princ_order(run.triple.l).order)):
            _write(d / f"{name}.dot", to_dot(order, name))
    if args.report:
        body = rep.as_dict()
        body["input"] = document_of_triple(t).to_json()
        body["catalog"] = {"digest": catalog.digest, "source": catalog.source,
                           "sizes": catalog.sizes(), "deviations": catalog.deviations()}
        _write(args.report, json.dumps(body, indent=2, ensure_ascii=False, sort_keys=True) + "\n")
    print("representation verified" if rep.passed else "verification FAILED: " + ", ".join(rep.failing()), file=out)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def run_corpus(max_size: int, seed: int, catalog, lattices: int = 60, homs: int = 100,
               contract_size: int = 5, log=None) -> dict:
    """All property suites; returns {suite: {"failures": [...], "cases": n, "seconds": s}}."""
    rng = random.Random(seed)
    suites = {}

    def suite(name, cases):
        start = time.perf_counter()
        fails, n = [], 0
        for label, fn in cases:
            n += 1
            try:
                fails += [f"{label}: {f}" for f in fn()]
            except PrincError as exc:
                fails.append(f"{label}: {type(exc).__name__}: {exc}")
        suites[name] = {"cases": n, "failures": fails, "seconds": round(time.perf_counter() - start, 3)}
        if log:
            print(f"  {'pass' if not fails else 'FAIL'}  {name} ({n} cases, {suites[name]['seconds']} s)", file=log)
            for f in fails[:10]:
                print(f"        {f}", file=log)

    fixtures = [(n, named_lattice(n)) for n in FIXTURES]
    randoms = [(f"random{k}", L) for k, L in enumerate(
        random_order_lattices(rng, lattices) + [random_lattice(rng, 8) for _ in range(lattices // 2)])]
    suite("oracle", [(n, lambda L=L: checks.oracle_equivalence(L)) for n, L in fixtures + randoms])
    suite("projectivity", [(n, lambda L=L: checks.projectivity_coherence(L)) for n, L in fixtures])
    suite("transport", [(f"hom{k}", lambda h=random_hom(rng): checks.hom_transport(h)) for k in range(homs)])
    suite("induced_surjective", [(f"hom{k}", lambda h=random_surjective_hom(rng): checks.induced_surjectivity(h))
                      for k in range(max(1, homs // 5))])

    def contract(P, kind, X):
        r = verify_contract(P, X, kind, catalog)
        return [f"clause {c} fails" for c, ok in sorted(r.items()) if not ok]

    suite("contract", [(f"{P.covers()} {kind} X={X}", lambda P=P, kind=kind, X=X: contract(P, kind, X))
                       for P in bounded_orders(contract_size) for kind in ("G", "GExt") for X in ((), ("z",))])

    def roundtrip(t, variant):
        rep = verify_representation(t, variant, catalog)
        return [f"clause {c} fails" for c in rep.failing()]

    suite("roundtrip", [(f"{variant} {t.p.covers()} -> {t.q.covers()} {t.psi.assignment}",
                         lambda t=t, v=variant: roundtrip(t, v))
                        for t in order_triples(max_size) for variant in ("reduced", "original")])
    return suites


def cmd_verify_corpus(args, out) -> int:
    if not 2 <= args.max_size <= MAX_CORPUS_SIZE:
        raise CliExit(EXIT_PARSE, f"--max-size must lie in 2..{MAX_CORPUS_SIZE}")
    catalog = _catalog()
    print(f"verifying corpus: max size {args.max_size}, seed {args.seed}, catalog {catalog.digest}", file=out)
    suites = run_corpus(args.max_size, args.seed, catalog, args.lattices, args.homs, args.contract_size, log=out)
    ok = all(not s["failures"] for s in suites.values())
    if args.report:
        body = {"max_size": args.max_size, "seed": args.seed, "catalog": catalog.digest,
                "passed": ok, "suites": suites}
        _write(args.report, json.dumps(body, indent=2, ensure_ascii=False, sort_keys=True) + "\n")
    print("all suites passed" if ok else "corpus verification FAILED", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="princ", description="Principal congruences of finite lattices.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("princ", help="list the principal congruences of a lattice document")
    p.add_argument("file")
    p.add_argument("--dot", help="write the Princ order as DOT to this path")
    p.set_defaults(func=cmd_princ)
    p = sub.add_parser("con", help="print con(a, b)")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_con)
    p = sub.add_parser("lat", help="build the gadget lattice of a bounded order")
    p.add_argument("file")
    p.add_argument("--x", type=int, default=0, help="number of universal complements")
    p.add_argument("--kind", choices=("G", "GExt"), default="G")
    p.add_argument("--out", help="write the lattice document here")
    p.add_argument("--dot", help="write the lattice as DOT here")
    p.set_defaults(func=cmd_lat)
    p = sub.add_parser("represent", help="represent an order-triple and verify it")
    p.add_argument("file")
    p.add_argument("--variant", choices=("original", "reduced"), default="reduced")
    p.add_argument("--dot", help="directory for DOT diagrams")
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(func=cmd_represent)
    p = sub.add_parser("verify-corpus", help="run every property suite over a corpus")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lattices", type=int, default=60, help="random orders drawn for the oracle suite")
    p.add_argument("--homs", type=int, default=100, help="random homomorphisms for transport")
    p.add_argument("--contract-size", type=int, default=5)
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(func=cmd_verify_corpus)
    return ap


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    if argv and argv[0] not in COMMANDS and not argv[0].startswith("-"):
        argv.insert(0, "princ")        # `princ FILE` is short for `princ princ FILE`
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliExit as exc:
        print(f"princ: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"princ: parse error at {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
