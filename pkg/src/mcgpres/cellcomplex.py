"""
Collapse trees, the quotient 2-complex and its presentation.

For each top graph ``z`` the tree ``T(z)`` holds ``z``, every single collapse
``z^i`` and every double collapse ``z^(i,j)``.  Tree edges are labelled
``z e_i`` and ``z e_i e_j``.  Two labels name the same edge of the quotient
when their parent graphs are relabelings of each other by a map carrying
one collapsed edge to the other (either orientation).  Each pair of
double collapses ``z e_i e_j``, ``z e_j e_i`` bounds a square 2-cell.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Sequence

from ._budget import Deadline
from .canon import automorphisms, canonical_form
from .fatgraph import OrderedGraph
from .moves import collapse, collapsible_edges
from .presentation import Presentation


@dataclass(frozen=True)
class TreeEdgeLabel:
    z_index: int
    path: tuple[int, ...]

    def sort_key(self):
        return (self.z_index, len(self.path), self.path)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"z{self.z_index}" + "".join(f"e{i}" for i in self.path)

    @classmethod
    def parse(cls, text: str) -> "TreeEdgeLabel":
        head, *rest = text.split("e")
        if not head.startswith("z") or not rest:
            raise ValueError(f"bad tree edge label {text!r}")
        return cls(int(head[1:]), tuple(int(x) for x in rest))


@dataclass
class CollapseTree:
    root: OrderedGraph
    children: dict[int, OrderedGraph]
    grandchildren: dict[tuple[int, int], OrderedGraph]

    def edges(self):
        """``(path, parent, collapsed edge, child)`` for every tree edge."""
        for i, child in self.children.items():
            yield (i,), self.root, i, child
        for (i, j), gc in self.grandchildren.items():
            yield (i, j), self.children[i], j, gc

    def __len__(self) -> int:
        return len(self.children) + len(self.grandchildren)


def build_tree(z: OrderedGraph) -> CollapseTree:
    children = {i: collapse(z, i) for i in collapsible_edges(z)}
    grandchildren = {(i, j): collapse(c, j)
                     for i, c in children.items() for j in collapsible_edges(c)}
    return CollapseTree(z, children, grandchildren)


@dataclass
class EdgeClass:
    labels: tuple[TreeEdgeLabel, ...]  # sorted; labels[0] is the representative
    source: int
    target: int

    @property
    def representative(self) -> TreeEdgeLabel:
        return self.labels[0]


@dataclass
class QuotientComplex:
    top: list[OrderedGraph]
    vertices: list[OrderedGraph]
    edges: list[EdgeClass]
    two_cells: list[tuple[TreeEdgeLabel, TreeEdgeLabel, TreeEdgeLabel, TreeEdgeLabel]]
    root: int
    label_class: dict[TreeEdgeLabel, int] = field(repr=False)
    trees: list[CollapseTree] = field(default_factory=list, repr=False)

    def edge_of(self, label: TreeEdgeLabel) -> EdgeClass:
        return self.edges[self.label_class[label]]

    def labels(self) -> list[TreeEdgeLabel]:
        return sorted(self.label_class)

    def to_json(self, tree: Sequence[int] | None = None) -> dict:
        out = {
            "top": [z.encode() for z in self.top],
            "vertices": [v.encode() for v in self.vertices],
            "edge_classes": [
                {"labels": [str(x) for x in ec.labels], "source": ec.source, "target": ec.target}
                for ec in self.edges
            ],
            "two_cells": [[str(x) for x in cell] for cell in self.two_cells],
        }
        if tree is not None:
            out["spanning_tree"] = [str(self.edges[i].representative) for i in tree]
        return out

    def dumps(self, tree: Sequence[int] | None = None) -> str:
        return json.dumps(self.to_json(tree), indent=1) + "\n"


def _edge_key(parent: OrderedGraph, edge: int):
    canon, w = canonical_form(parent)
    image = abs(w(edge))
    orbit = min(abs(a(image)) for a in automorphisms(canon))
    return canon, orbit


def build_quotient_complex(top: Sequence[OrderedGraph],
                           fallback_vertices: Sequence[OrderedGraph] = (),
                           deadline: Deadline | None = None) -> QuotientComplex:
    """Glue the trees of all top graphs along relabelings.

    ``fallback_vertices`` supplies the vertex set when ``top`` is empty (the
    degenerate one-edge case).
    """
    top = list(top)
    trees = []
    classes: dict[tuple, list] = {}
    pending = []
    for zi, z in enumerate(top, start=1):
        if deadline:
            deadline.check()
        tree = build_tree(z)
        trees.append(tree)
        for path, parent, e, child in tree.edges():
            pcanon, orbit = _edge_key(parent, e)
            ccanon = canonical_form(child)[0]
            pending.append((TreeEdgeLabel(zi, path), pcanon, ccanon))
            classes.setdefault((pcanon, orbit), []).append(TreeEdgeLabel(zi, path))
    verts = {canonical_form(z)[0] for z in top}
    verts |= {x for _, pc, cc in pending for x in (pc, cc)}
    if not top:
        verts |= set(fallback_vertices)
    vertices = sorted(verts, key=OrderedGraph.key)
    vertex_of = {v: i for i, v in enumerate(vertices)}

    ends = {label: (vertex_of[pc], vertex_of[cc]) for label, pc, cc in pending}
    edges = []
    for labels in classes.values():
        labels = tuple(sorted(labels))
        src, tgt = ends[labels[0]]
        if any(ends[x] != (src, tgt) for x in labels):
            raise AssertionError(f"identified labels {labels} have different endpoints")
        edges.append(EdgeClass(labels, src, tgt))
    edges.sort(key=lambda ec: ec.representative.sort_key())
    label_class = {x: ci for ci, ec in enumerate(edges) for x in ec.labels}

    cells = []
    for zi, tree in enumerate(trees, start=1):
        idx = sorted(tree.children)
        for a, i in enumerate(idx):
            for j in idx[a + 1:]:
                if (i, j) in tree.grandchildren and (j, i) in tree.grandchildren:
                    L = TreeEdgeLabel
                    cells.append((L(zi, (i,)), L(zi, (i, j)), L(zi, (j, i)), L(zi, (j,))))

    root = vertex_of[canonical_form(top[0])[0]] if top else 0
    return QuotientComplex(top, vertices, edges, cells, root, label_class, trees)


def two_cell_boundary_ok(cx: QuotientComplex, cell) -> bool:
    """The square ``ze_i, ze_ie_j, (ze_je_i)^-1, (ze_j)^-1`` is a closed path."""
    a, b, c, d = (cx.edge_of(x) for x in cell)
    return (a.target == b.source and b.target == c.target
            and c.source == d.target and d.source == a.source)


def spanning_tree(cx: QuotientComplex, seed: int = 0) -> list[int]:
    """Breadth-first spanning tree from the root, as sorted edge-class indices.

    Incident edges are explored in representative-label order; a non-zero
    ``seed`` shuffles that order instead.
    """
    adj: dict[int, list[int]] = defaultdict(list)
    for ci, ec in enumerate(cx.edges):
        adj[ec.source].append(ci)
        adj[ec.target].append(ci)
    rng = random.Random(seed) if seed else None
    if rng:
        for v in sorted(adj):
            rng.shuffle(adj[v])
    if not cx.vertices:
        return []
    seen = {cx.root}
    queue = deque([cx.root])
    tree = []
    while queue:
        v = queue.popleft()
        for ci in adj[v]:
            ec = cx.edges[ci]
            w = ec.target if ec.source == v else ec.source
            if w not in seen:
                seen.add(w)
                tree.append(ci)
                queue.append(w)
    if len(seen) != len(cx.vertices):
        raise AssertionError("the 1-skeleton is disconnected")
    return sorted(tree)


def emit_presentation(cx: QuotientComplex, tree: Sequence[int]) -> Presentation:
    """Generators are all tree-edge labels; relators of kinds a, b and c."""
    gens = [str(x) for x in cx.labels()]
    relators, kinds = [], []
    for ci in sorted(tree):
        relators.append(((str(cx.edges[ci].representative), 1),))
        kinds.append("a")
    for ec in cx.edges:
        rep = str(ec.representative)
        for x in ec.labels[1:]:
            relators.append(((str(x), 1), (rep, -1)))
            kinds.append("b")
    for ei, eij, eji, ej in cx.two_cells:
        relators.append(((str(ei), 1), (str(eij), 1), (str(eji), -1), (str(ej), -1)))
        kinds.append("c")
    return Presentation(gens, relators, kinds)
