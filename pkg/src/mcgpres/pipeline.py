"""End-to-end computation of a presentation for a given genus and puncture count."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ._budget import Deadline
from .cellcomplex import (QuotientComplex, build_quotient_complex, emit_presentation,
                          spanning_tree)
from .enumeration import check_parameters, list_L, list_L_cached, roses
from .fatgraph import OrderedGraph
from .presentation import Abelianization, Presentation, abelianization, tietze_simplify

log = logging.getLogger(__name__)


def group_name(g: int, p: int) -> str:
    return f"AM_{{{g},1,{p}}}"


@dataclass
class PipelineResult:
    g: int
    p: int
    top: list[OrderedGraph]
    complex: QuotientComplex
    tree: list[int]
    presentation: Presentation
    simplified: Presentation | None
    abelianization: Abelianization

    @property
    def output(self) -> Presentation:
        return self.simplified if self.simplified is not None else self.presentation

    def summary(self) -> str:
        cx, P = self.complex, self.presentation
        kinds = P.kind_counts()
        lines = [
            f"group: {group_name(self.g, self.p)}",
            f"top graphs: {len(self.top)}",
            f"complex: {len(cx.vertices)} vertices, {len(cx.edges)} edges, "
            f"{len(cx.two_cells)} 2-cells, spanning tree {len(self.tree)} edges",
            f"presentation: {len(P.generators)} generators, {len(P.relators)} relations "
            f"(a: {kinds.get('a', 0)}, b: {kinds.get('b', 0)}, c: {kinds.get('c', 0)})",
        ]
        if self.simplified is not None:
            S = self.simplified
            n = len(S.relators)
            lines.append(f"simplified: {len(S.generators)} generators, {n} relator{'s' * (n != 1)}, "
                         f"total length {S.total_length}")
        lines.append(f"abelianization: {self.abelianization}")
        return "\n".join(lines) + "\n"


def build_complex(g: int, p: int, cache_dir=None,
                  deadline: Deadline | None = None) -> tuple[list[OrderedGraph], QuotientComplex]:
    check_parameters(g, p)
    top = list_L_cached(g, p, cache_dir, deadline) if cache_dir is not None else list_L(g, p, deadline)
    if not top:
        log.info("no top graphs for (%d, %d); using the rose as the only vertex", g, p)
    cx = build_quotient_complex(top, fallback_vertices=roses(g, p), deadline=deadline)
    return list(top), cx


def run_pipeline(g: int, p: int, *, seed: int = 0, simplify: bool = False, cache_dir=None,
                 budget_secs: float | None = None) -> PipelineResult:
    deadline = Deadline(budget_secs)
    top, cx = build_complex(g, p, cache_dir, deadline)
    tree = spanning_tree(cx, seed)
    P = emit_presentation(cx, tree)
    deadline.check()
    S = tietze_simplify(P, deadline) if simplify else None
    ab = abelianization(S if S is not None else P)
    return PipelineResult(g, p, top, cx, tree, P, S, ab)
