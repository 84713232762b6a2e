"""
Relabelings of edges and canonical forms of ordered graphs.

A relabeling permutes edge ids and optionally reverses edges; it acts on
directed edges commuting with the bar involution.  Because the base star is
linearly ordered and the graph is connected, the only relabeling fixing a
graph is the identity, so a canonical labeling can be read off by a single
traversal starting at the base.  The traversal assigns labels in order of
first appearance in the encoding, which makes the result the
lexicographically least encoding in the orbit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .fatgraph import (OrderedGraph, StructuralError, dart_key, format_dart, parse_dart)


@dataclass(frozen=True)
class Relabeling:
    """Map from edge ids to signed edge ids (``-j`` means mapped onto ``-e_j``)."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, mapping: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dict(mapping.items() if isinstance(mapping, Mapping) else mapping)
        for src, dst in items.items():
            if src <= 0 or dst == 0:
                raise ValueError(f"bad relabeling entry {src}->{dst}")
        if len({abs(d) for d in items.values()}) != len(items):
            raise ValueError("relabeling is not injective")
        object.__setattr__(self, "pairs", tuple(sorted(items.items())))

    @classmethod
    def identity(cls, edge_ids: Iterable[int]) -> "Relabeling":
        return cls({e: e for e in edge_ids})

    @classmethod
    def from_perm(cls, perm: Mapping[int, int], flips: Iterable[int] = ()) -> "Relabeling":
        flips = set(flips)
        return cls({e: (-d if e in flips else d) for e, d in perm.items()})

    @classmethod
    def parse(cls, text: str) -> "Relabeling":
        """Parse ``e1->e3, e3->-e4``."""
        out = {}
        for part in filter(None, (t.strip() for t in text.split(","))):
            m = re.fullmatch(r"(e\d+)\s*->\s*(-?e\d+)", part)
            if not m:
                raise ValueError(f"bad relabeling entry {part!r}")
            out[parse_dart(m.group(1))] = parse_dart(m.group(2))
        return cls(out)

    def __str__(self) -> str:
        return ", ".join(f"e{s}->{format_dart(d)}" for s, d in self.pairs)

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(s for s, _ in self.pairs)

    @property
    def perm(self) -> dict[int, int]:
        return {s: abs(d) for s, d in self.pairs}

    @property
    def flips(self) -> frozenset[int]:
        return frozenset(s for s, d in self.pairs if d < 0)

    def __call__(self, a: int) -> int:
        d = self.mapping[abs(a)]
        return d if a > 0 else -d

    def compose(self, other: "Relabeling") -> "Relabeling":
        """``self`` after ``other``."""
        m = self.mapping
        out = {}
        for s, d in other.pairs:
            img = m[abs(d)]
            out[s] = img if d > 0 else -img
        return Relabeling(out)

    def inverse(self) -> "Relabeling":
        return Relabeling({abs(d): (s if d > 0 else -s) for s, d in self.pairs})

    def is_identity(self) -> bool:
        return all(s == d for s, d in self.pairs)


def apply(g: Relabeling, graph: OrderedGraph) -> OrderedGraph:
    m = g.mapping
    missing = [e for e in graph.edge_ids if e not in m]
    if missing:
        raise ValueError(f"relabeling undefined on edges {missing}")

    def img(a):
        d = m[abs(a)]
        return d if a > 0 else -d

    return OrderedGraph(tuple(img(a) for a in graph.base),
                        tuple(tuple(img(a) for a in s) for s in graph.stars))


def canonical_form(graph: OrderedGraph) -> tuple[OrderedGraph, Relabeling]:
    """Least encoding in the orbit of ``graph``, with a witness mapping onto it.

    Labels ``1..k`` are handed out in order of first appearance, each edge
    oriented along its first appearance.  The base is read first; then, as
    long as vertices remain, the remaining star holding the least labelled
    directed edge is read starting from that edge.
    """
    labels: dict[int, int] = {}

    def img(a: int) -> int:
        e = abs(a)
        if e not in labels:
            labels[e] = (len(labels) + 1) * (1 if a > 0 else -1)
        d = labels[e]
        return d if a > 0 else -d

    base = tuple(img(a) for a in graph.base)
    remaining = list(graph.stars)
    stars = []
    while remaining:
        best = None
        for idx, s in enumerate(remaining):
            for pos, a in enumerate(s):
                if abs(a) in labels:
                    k = dart_key(img(a))
                    if best is None or k < best[0]:
                        best = (k, idx, pos)
        if best is None:
            raise StructuralError("graph is disconnected")
        _, idx, pos = best
        s = remaining.pop(idx)
        stars.append(tuple(img(a) for a in s[pos:] + s[:pos]))
    return OrderedGraph(base, tuple(stars)), Relabeling(labels)


def canonical(graph: OrderedGraph) -> OrderedGraph:
    return canonical_form(graph)[0]


def orbit_witness(g1: OrderedGraph, g2: OrderedGraph) -> Relabeling | None:
    """Some ``g`` with ``apply(g, g2) == g1``, or ``None``."""
    if g1.edge_count != g2.edge_count:
        return None
    c1, w1 = canonical_form(g1)
    c2, w2 = canonical_form(g2)
    if c1 != c2:
        return None
    return w1.inverse().compose(w2)


def _propagate(src: OrderedGraph, dst: OrderedGraph, seed: dict[int, int]) -> Relabeling | None:
    # Extend a partial directed-edge map through the rotation systems.
    dmap = dict(seed)
    for a, b in list(dmap.items()):
        dmap.setdefault(-a, -b)
    queue = list(dmap)
    while queue:
        a = queue.pop()
        b = dmap[a]
        va, ia = src.locate(a)
        vb, ib = dst.locate(b)
        if (va == 0) != (vb == 0):
            return None
        sa, sb = src.all_stars[va], dst.all_stars[vb]
        if len(sa) != len(sb):
            return None
        if va == 0 and ia != ib:
            return None
        for t in range(len(sa)):
            x, y = sa[(ia + t) % len(sa)], sb[(ib + t) % len(sb)]
            for xx, yy in ((x, y), (-x, -y)):
                prev = dmap.get(xx)
                if prev is None:
                    dmap[xx] = yy
                    queue.append(xx)
                elif prev != yy:
                    return None
    if len(dmap) != 2 * src.edge_count:
        return None
    g = Relabeling({a: b for a, b in dmap.items() if a > 0})
    return g if apply(g, src) == dst else None


def isomorphism_by_propagation(g1: OrderedGraph, g2: OrderedGraph) -> Relabeling | None:
    """Witness ``g`` with ``apply(g, g2) == g1`` found by aligning base stars.

    An independent route to :func:`orbit_witness`.
    """
    if len(g1.base) != len(g2.base) or g1.edge_count != g2.edge_count:
        return None
    return _propagate(g2, g1, dict(zip(g2.base, g1.base)))


def automorphisms(graph: OrderedGraph) -> list[Relabeling]:
    """Stabilizer of ``graph``: base directed edges are fixed, the rest follows."""
    g = _propagate(graph, graph, {a: a for a in graph.base})
    return [g] if g is not None else []


# -- brute-force oracles ------------------------------------------------------

def all_relabelings(edge_ids: Iterable[int], targets: Iterable[int] | None = None):
    """Every bijection onto ``targets`` (default: ``1..k``) with every flip pattern."""
    src = sorted(edge_ids)
    dst = sorted(targets) if targets is not None else list(range(1, len(src) + 1))
    for perm in itertools.permutations(dst):
        for signs in itertools.product((1, -1), repeat=len(src)):
            yield Relabeling({s: d * z for s, d, z in zip(src, perm, signs)})


def brute_force_canonical(graph: OrderedGraph) -> OrderedGraph:
    """Least encoding over all ``k! * 2**k`` relabelings onto ``1..k``."""
    return min((apply(g, graph) for g in all_relabelings(graph.edge_ids)), key=OrderedGraph.key)


def brute_force_automorphisms(graph: OrderedGraph) -> list[Relabeling]:
    return [g for g in all_relabelings(graph.edge_ids, graph.edge_ids) if apply(g, graph) == graph]
