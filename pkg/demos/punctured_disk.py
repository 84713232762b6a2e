"""The disk with three punctures, compared against the braid group on three strands."""

from mcgpres import run_pipeline
from mcgpres.groups import small_groups
from mcgpres.presentation import Presentation, count_homs

result = run_pipeline(0, 3, simplify=True)
print(result.summary())
for i, z in enumerate(result.top, 1):
    print(f"  top graph {i}: {z}")
print("simplified:", result.simplified)

braid = Presentation.parse("<s, t | s*t*s = t*s*t>")
print(f"\n{'target':<12}{'ours':>8}{'braid':>8}")
for G in small_groups():
    if G.order <= 12:
        print(f"{G.name:<12}{count_homs(result.simplified, G):>8}{count_homs(braid, G):>8}")
