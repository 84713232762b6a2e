"""Write one presentation in every supported format."""

import sys
from pathlib import Path

from mcgpres import run_pipeline
from mcgpres.presentation import EXPORTERS

out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-exports")
out_dir.mkdir(exist_ok=True)
result = run_pipeline(1, 0, simplify=True)
for name, export in sorted(EXPORTERS.items()):
    path = out_dir / f"torus.{name}"
    path.write_text(export(result.output))
    print(f"--- {path}")
    print(path.read_text())
