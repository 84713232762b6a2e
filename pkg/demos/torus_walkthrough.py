"""Walk through the smallest case: the torus with one boundary component.

Shows the single top graph, its collapse tree, how the quotient complex
merges tree edges, the raw presentation and its simplification.
"""

from mcgpres import (boundary_words, build_quotient_complex, build_tree, collapse,
                     emit_presentation, equivalence_evidence, list_L, spanning_tree,
                     tietze_simplify)
from mcgpres.moves import collapsible_edges
from mcgpres.presentation import Presentation

(top,) = list_L(1, 0)
print("top graph:", top)
print("boundary:", boundary_words(top))

for e in collapsible_edges(top):
    print(f"  collapse e{e}:", collapse(top, e))

tree = build_tree(top)
print(f"collapse tree: {len(tree.children)} children, {len(tree.grandchildren)} grandchildren")

cx = build_quotient_complex([top])
print(f"quotient complex: {len(cx.vertices)} vertices, {len(cx.edges)} edge classes, "
      f"{len(cx.two_cells)} 2-cells")
for ec in cx.edges:
    if len(ec.labels) > 1:
        print("  merged:", " = ".join(str(x) for x in ec.labels))

P = emit_presentation(cx, spanning_tree(cx))
print(f"raw presentation: {len(P.generators)} generators, kinds {P.kind_counts()}")
S = tietze_simplify(P)
print("simplified:", S)

reference = Presentation.parse("<a, b | a^2 = b*a*b>")
print(equivalence_evidence(S, reference))
