"""Command-line front end.

Exit codes: 10 YES, 20 certified NO, 21 Monte-Carlo NO, 2 usage/parse error,
3 capacity guard; ``xcheck`` returns 0 (all agree) or 1 (mismatch).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import formats
from .boolfun import classify, format_argmap, impl, nand, nand_order, represents
from .clique import find_clique_bruteforce, find_clique_mm, is_clique
from .errors import CapacityError, EwsatError, UsageError
from .gen import (clique_to_wdi, digraph_to_sat_impl, express_sat_g_in_family,
                  hypergraph_to_sat_nand, wdi_to_unit)
from .solver import MONTE_CARLO, SolveConfig, solve, solve_oracle, verify
from .wdi import is_acyclic, solve_bruteforce, solve_frobenius, solve_sources, verify_witness

EXIT_YES = 10
EXIT_NO = 20
EXIT_NO_MC = 21
EXIT_USAGE = 2
EXIT_CAPACITY = 3

log = logging.getLogger("ewsat")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_formula(phi, k, fam_name, F, out: Optional[str]) -> None:
    _emit(formats.write_formula(phi, k, fam_name), out)
    if out:
        fam_path = Path(out).parent / f"{fam_name}.fam"
        if not fam_path.exists():
            fam_path.write_text(formats.write_family(F), encoding="utf-8")


# -- subcommands ------------------------------------------------------------------

def cmd_classify(args) -> int:
    F = formats.load_family(args.family)
    c = classify(F)
    rows = []
    for target in (impl(), nand(2), nand(3)):
        hit = represents(F, target)
        rows.append((target.name, hit))
    if args.json:
        print(json.dumps({
            "regime": str(c.regime),
            "nand_order": nand_order(F),
            "witnesses": {name: None if hit is None else
                          {"function": hit[0].name, "map": format_argmap(hit[1])}
                          for name, hit in rows},
        }, sort_keys=True))
        return 0
    print(c.regime)
    for name, hit in rows:
        if hit is None:
            print(f"  {name}: avoided")
        else:
            print(f"  {name}: {hit[0].name} {format_argmap(hit[1])}")
    return 0


def cmd_solve(args) -> int:
    F = formats.load_family(args.family) if args.family else None
    phi, k, _ = formats.load_formula(args.formula, F)
    if args.k is not None:
        k = args.k
    if args.threads and args.threads > 1:
        log.info("--threads=%d: trials run sequentially; results are identical", args.threads)
    method = "oracle" if args.oracle else args.method
    cfg = SolveConfig(budget=args.budget, seed=args.seed, exhaustive=args.exhaustive,
                      use_nand_order=args.nand_order, method=method)
    ans = solve(phi, k, cfg)
    if ans.yes:
        assert verify(phi, ans.witness, k)
    if args.json:
        print(json.dumps({
            "verdict": ans.verdict,
            "witness": list(ans.witness) if ans.witness is not None else None,
            "regime": str(ans.regime),
            "method": ans.method,
            "certainty": ans.certainty,
            "trials": ans.stats.get("trials", 0),
            "seed": args.seed,
        }, sort_keys=True))
    else:
        print(f"c regime {ans.regime}")
        print(f"c method {ans.method}")
        print(f"s {ans.verdict}" + ("" if ans.yes else f" ({ans.certainty})"))
        if ans.yes:
            print("v " + " ".join(map(str, ans.witness)))
    if ans.yes:
        return EXIT_YES
    return EXIT_NO_MC if ans.certainty == MONTE_CARLO else EXIT_NO


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "clique-to-wdi":
        G = formats.parse_graph(Path(args.input).read_text(encoding="utf-8"), args.input)
        _emit(formats.write_wdi(clique_to_wdi(G, args.k)), args.output)
    elif kind == "wdi-to-unit":
        inst = formats.parse_wdi(Path(args.input).read_text(encoding="utf-8"), args.input)
        _emit(formats.write_wdi(wdi_to_unit(inst)[0]), args.output)
    elif kind == "digraph-to-impl":
        inst = formats.parse_wdi(Path(args.input).read_text(encoding="utf-8"), args.input)
        phi = digraph_to_sat_impl(inst.n, inst.arcs)
        k = inst.k if args.k is None else args.k
        _emit_formula(phi, k, "IMPL", phi.family, args.output)
    elif kind == "hyper-to-nand":
        text = Path(args.input).read_text(encoding="utf-8")
        if text.lstrip().startswith("p edge") or "\np edge" in text:
            from .clique import Hypergraph
            H = Hypergraph.from_graph(formats.parse_graph(text, args.input))
        else:
            H = formats.parse_hypergraph(text, args.input)
        phi = hypergraph_to_sat_nand(H)
        _emit_formula(phi, args.k or 0, f"NAND{H.d}", phi.family, args.output)
    elif kind == "express":
        if not args.family:
            raise UsageError("express needs --family")
        F = formats.load_family(args.family)
        phi, k, _ = formats.load_formula(args.input)
        if args.k is not None:
            k = args.k
        E = express_sat_g_in_family(phi, F, k)
        _emit_formula(E.formula, E.k, Path(args.family).stem, F, args.output)
    return 0


def _expect(text: str):
    d = formats.directives(text)
    exp = d.get("expect")
    if exp is None:
        return None, None
    toks = exp.split()
    if not toks or toks[0] not in ("YES", "NO"):
        raise UsageError(f"bad expect directive {exp!r}")
    return toks[0], [int(t) for t in toks[1:]]


def _check_file(path: Path, seed: int) -> List[str]:
    """Problems found for one corpus file (empty list: consistent)."""
    text = path.read_text(encoding="utf-8")
    problems = []
    verdict, wit = _expect(text)
    suffix = path.suffix
    if suffix == ".fam":
        want = formats.directives(text).get("regime")
        F = formats.parse_family(text, path)
        if want is not None and str(classify(F).regime) != want:
            problems.append(f"regime {classify(F).regime} != expected {want}")
    elif suffix == ".ewsat":
        phi, k, _ = formats.load_formula(path)
        got = solve(phi, k, SolveConfig(seed=seed))
        ref = solve_oracle(phi, k)
        if got.verdict != ref.verdict:
            problems.append(f"solver says {got.verdict} ({got.certainty}), oracle says {ref.verdict}")
        if got.yes and not verify(phi, got.witness, k):
            problems.append("solver witness does not verify")
        if verdict is not None:
            if verdict != ref.verdict:
                problems.append(f"expected {verdict}, oracle says {ref.verdict}")
            if verdict == "YES" and wit and not verify(phi, wit, k):
                problems.append(f"expected witness {wit} does not verify")
    elif suffix == ".wdi":
        inst = formats.parse_wdi(text, path)
        answers = {"frobenius": solve_frobenius(inst), "bruteforce": solve_bruteforce(inst)}
        if is_acyclic(inst):
            answers["sources"] = solve_sources(inst)
        verdicts = {name: S is not None for name, S in answers.items()}
        if len(set(verdicts.values())) != 1:
            problems.append(f"solvers disagree: {verdicts}")
        for name, S in answers.items():
            if S is not None and not verify_witness(inst, S):
                problems.append(f"{name} witness does not verify")
        if verdict is not None:
            if (verdict == "YES") != verdicts["bruteforce"]:
                problems.append(f"expected {verdict}")
            if verdict == "YES" and wit and not verify_witness(inst, [v - 1 for v in wit]):
                problems.append(f"expected witness {wit} does not verify")
    elif suffix == ".edge":
        k = formats.directives(text).get("k")
        if k is None:
            return ["missing '# k:' directive"]
        k = int(k)
        G = formats.parse_graph(text, path)
        a, b = find_clique_bruteforce(G, k), find_clique_mm(G, k)
        if (a is None) != (b is None):
            problems.append("matrix-product and brute-force clique search disagree")
        if b is not None and not is_clique(G, b):
            problems.append("returned set is not a clique")
        if verdict is not None:
            if (verdict == "YES") != (a is not None):
                problems.append(f"expected {verdict}")
            if verdict == "YES" and wit and (len(wit) != k or not is_clique(G, [v - 1 for v in wit])):
                problems.append(f"expected witness {wit} is not a {k}-clique")
    return problems


def cmd_xcheck(args) -> int:
    root = Path(args.corpus)
    if not root.is_dir():
        raise UsageError(f"{root} is not a directory")
    files = sorted(p for p in root.iterdir() if p.suffix in (".fam", ".ewsat", ".wdi", ".edge"))
    if not files:
        print(f"warning: no corpus files in {root}", file=sys.stderr)
        return 0
    bad = 0
    for p in files:
        try:
            problems = _check_file(p, args.seed)
        except EwsatError as e:
            problems = [f"error: {e}"]
        if problems:
            bad += 1
            for msg in problems:
                print(f"FAIL {p.name}: {msg}")
        else:
            print(f"ok   {p.name}")
    print(f"{len(files) - bad}/{len(files)} files consistent")
    return 1 if bad else 0


def cmd_bench(args) -> int:
    from .corpus import layered_instance
    from .wdi import FrobeniusStats
    inst = layered_instance(args.seed, args.n, args.k)
    st = FrobeniusStats()
    t0 = time.perf_counter()
    S = solve_frobenius(inst, st)
    dt = time.perf_counter() - t0
    print(f"n={inst.n} k={inst.k} verdict={'YES' if S is not None else 'NO'} "
          f"calls={st.calls} time={dt:.3f}s")
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ewsat", description="Exact-weight Boolean constraint satisfaction.")
    p.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("classify", help="regime of a constraint family")
    c.add_argument("family")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", help="solve a formula file")
    s.add_argument("formula")
    s.add_argument("--family", help="family file (default: <use-name>.fam next to the formula)")
    s.add_argument("--k", type=int, help="override the target weight from the header")
    s.add_argument("--budget", type=int, help="trials per branch for the implication pipeline")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--oracle", action="store_true", help="plain enumeration (n <= 24)")
    s.add_argument("--method", choices=("auto", "oracle", "bruteforce"), default="auto")
    s.add_argument("--exhaustive", action="store_true", help="replay all random choices (tiny n)")
    s.add_argument("--nand-order", action="store_true",
                   help="use the hyperclique pipeline with d = nand order for NAND3 families")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="instance generators")
    g.add_argument("kind", choices=("clique-to-wdi", "wdi-to-unit", "digraph-to-impl",
                                    "hyper-to-nand", "express"))
    g.add_argument("input")
    g.add_argument("--k", type=int)
    g.add_argument("--family", help="target family for 'express'")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    x = sub.add_parser("xcheck", help="cross-check solvers on a corpus directory")
    x.add_argument("corpus")
    x.add_argument("--seed", type=int, default=0)
    x.set_defaults(func=cmd_xcheck)

    b = sub.add_parser("bench", help="time the WDI solver on a layered instance")
    b.add_argument("--n", type=int, default=2000)
    b.add_argument("--k", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.cmd == "gen" and args.kind == "clique-to-wdi" and args.k is None:
        parser.error("clique-to-wdi needs --k")
    try:
        return args.func(args)
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
