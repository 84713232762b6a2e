"""Command-line front end: ``mcgpres present|list-l|complex|check``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ._budget import BudgetExceeded, Deadline
from .canon import canonical
from .cellcomplex import emit_presentation, spanning_tree, two_cell_boundary_ok
from .enumeration import (CacheError, cache_path, check_parameters, cross_check_by_splitting,
                          default_cache_dir, list_L, list_L_cached, load_cached_L,
                          save_cached_L)
from .fatgraph import validate
from .groups import small_groups
from .pipeline import build_complex, run_pipeline
from .presentation import (EXPORTERS, abelianization, count_homs, gcd_chain_ok,
                           relation_matrix, smith_normal_form, tietze_simplify)

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_BUDGET = 0, 1, 2, 3


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_present(args) -> int:
    result = run_pipeline(args.genus, args.punctures, seed=args.seed, simplify=args.simplify,
                          cache_dir=args.cache_dir, budget_secs=args.budget_secs)
    _write(EXPORTERS[args.format](result.output), args.output)
    (sys.stdout if args.output else sys.stderr).write(result.summary())
    return EXIT_OK


def cmd_list_l(args) -> int:
    graphs = list_L_cached(args.genus, args.punctures, args.cache_dir, Deadline(args.budget_secs))
    text = "".join(f"{z}\n" for z in graphs)
    _write(text, args.output)
    if not graphs and graphs.diagnosis:
        print(graphs.diagnosis, file=sys.stderr)
    return EXIT_OK


def cmd_complex(args) -> int:
    _, cx = build_complex(args.genus, args.punctures, args.cache_dir, Deadline(args.budget_secs))
    _write(cx.dumps(spanning_tree(cx, args.seed)), args.output)
    return EXIT_OK


def _check_rows(g: int, p: int, cache_dir, deadline: Deadline, seeds: int = 5):
    """Yield ``(name, ok, detail)`` rows of the invariant suite."""
    if cache_dir is not None:
        path = cache_path(cache_dir, g, p)
        try:
            cached = load_cached_L(cache_dir, g, p)
        except CacheError as exc:
            cached = None
            yield "cache integrity", False, f"{exc}; rebuilt"
            path.unlink()
        else:
            yield "cache integrity", True, "absent" if cached is None else f"{len(cached)} graphs verified"
    top = list_L(g, p, deadline)
    if cache_dir is not None:
        if cached is not None:
            yield "cache matches cold run", list(cached) == list(top), f"{len(top)} graphs"
        save_cached_L(cache_dir, g, p, top)

    bad = [z for z in top if not validate(z) or canonical(z) != z]
    yield "top graphs valid and canonical", not bad, f"{len(top)} graphs" if not bad else str(bad[0])
    if 2 * g + p + 2 <= 7:
        verdict = cross_check_by_splitting(g, p, deadline)
        yield "cross-check by splitting", verdict.equal, str(verdict)

    _, cx = build_complex(g, p, None, deadline)
    open_cells = [c for c in cx.two_cells if not two_cell_boundary_ok(cx, c)]
    yield "2-cell boundaries closed", not open_cells, f"{len(cx.two_cells)} cells"

    tree = spanning_tree(cx)
    yield "spanning tree size", len(tree) == len(cx.vertices) - 1, \
        f"{len(tree)} edges, {len(cx.vertices)} vertices"
    P = emit_presentation(cx, tree)
    kinds = P.kind_counts()
    yield "generators = tree-edge labels", len(P.generators) == len(cx.label_class), \
        f"{len(P.generators)} generators"
    yield "type-a count = |V| - 1", kinds.get("a", 0) == len(cx.vertices) - 1, f"{kinds.get('a', 0)}"

    ab = abelianization(P)
    others = [abelianization(emit_presentation(cx, spanning_tree(cx, s))) for s in range(1, seeds + 1)]
    yield f"abelianization invariant over {seeds} seeds", all(x == ab for x in others), str(ab)

    divisors = smith_normal_form(relation_matrix(P)) if len(P.generators) <= 400 else list(ab.torsion)
    yield "Smith divisibility chain", gcd_chain_ok(divisors), f"{len(divisors)} divisors"

    S = tietze_simplify(P, deadline)
    yield "simplification keeps abelianization", abelianization(S) == ab, \
        f"{len(S.generators)} generators, {len(S.relators)} relators"
    yield "simplification idempotent", tietze_simplify(S) == S, ""
    mismatch, skipped = [], []
    for G in small_groups():
        if G.order > 12:
            continue
        try:
            a, b = count_homs(P, G, 200_000, deadline), count_homs(S, G, 200_000, deadline)
        except BudgetExceeded:
            skipped.append(G.name)
            continue
        if a != b:
            mismatch.append(f"{G.name}: {a} vs {b}")
    yield "simplification keeps hom counts (order <= 12)", not mismatch, \
        "; ".join(mismatch) or ("skipped " + ", ".join(skipped) if skipped else "all targets")


def cmd_check(args) -> int:
    deadline = Deadline(args.budget_secs)
    failures = 0
    for name, ok, detail in _check_rows(args.genus, args.punctures, args.cache_dir, deadline):
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcgpres", description=(
        "Presentations of mapping-class groups of a genus-g surface with one "
        "boundary component and p punctures."))
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-g", "--genus", type=int, required=True)
        sp.add_argument("-p", "--punctures", type=int, required=True)
        sp.add_argument("--cache-dir", default=None,
                        help="cache directory (default .mcgcache; MCG_CACHE_DIR overrides)")
        sp.add_argument("--budget-secs", type=float, default=None)
        sp.add_argument("-o", "--output", default=None)

    sp = sub.add_parser("present", help="compute a presentation")
    common(sp)
    sp.add_argument("--format", choices=sorted(EXPORTERS), default="text")
    sp.add_argument("--simplify", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_present)

    sp = sub.add_parser("list-l", help="print the top graphs")
    common(sp)
    sp.set_defaults(func=cmd_list_l)

    sp = sub.add_parser("complex", help="write the quotient complex as JSON")
    common(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_complex)

    sp = sub.add_parser("check", help="run the invariant suite")
    common(sp)
    sp.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    args.cache_dir = default_cache_dir(args.cache_dir)
    try:
        check_parameters(args.genus, args.punctures)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
