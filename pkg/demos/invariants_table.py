"""Sizes, abelianizations and timings for every case with at most 7 edges in the top graphs."""

import time

from mcgpres import run_pipeline

print(f"{'(g,p)':<8}{'|L|':>6}{'verts':>7}{'edges':>7}{'cells':>7}{'gens':>7}  {'H1':<10}{'secs':>7}")
for g, p in [(0, 2), (1, 0), (0, 3), (1, 1), (0, 4), (2, 0), (1, 2), (0, 5)]:
    t0 = time.perf_counter()
    r = run_pipeline(g, p)
    cx = r.complex
    print(f"{str((g, p)):<8}{len(r.top):>6}{len(cx.vertices):>7}{len(cx.edges):>7}"
          f"{len(cx.two_cells):>7}{len(r.presentation.generators):>7}  {str(r.abelianization):<10}"
          f"{time.perf_counter() - t0:>7.2f}")
