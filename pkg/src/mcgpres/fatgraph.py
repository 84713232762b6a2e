"""
Ordered fat graphs.

A graph is stored by its stars.  Directed edges are signed integers: ``+i``
is the edge ``e_i`` and ``-i`` its reversal, so the bar involution is
negation.  The base star is a linear order; every other star is a cyclic
order.  Vertices are positional (the base is vertex 0, the other stars are
vertices ``1..q`` in storage order).

Storage normal form: every cyclic star is rotated so that its least directed
edge comes first, and the cyclic stars are sorted by that first entry.  The
ordering on directed edges is ``e1 < -e1 < e2 < -e2 < ...`` (see
:func:`dart_key`).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class StructuralError(ValueError):
    """Raised when an operation needs a valid graph and did not get one."""


class DirectedEdge(NamedTuple):
    edge_id: int
    reversed: bool = False

    def bar(self) -> "DirectedEdge":
        return DirectedEdge(self.edge_id, not self.reversed)

    def __int__(self) -> int:
        return -self.edge_id if self.reversed else self.edge_id

    @classmethod
    def from_int(cls, a: int) -> "DirectedEdge":
        if a == 0:
            raise ValueError("0 is not a directed edge")
        return cls(abs(a), a < 0)

    def __str__(self) -> str:
        return format_dart(int(self))


def dart_key(a: int) -> int:
    """Sort key on directed edges: e1 < -e1 < e2 < -e2 < ..."""
    return 2 * abs(a) + (a < 0)


def format_dart(a: int) -> str:
    return f"-e{-a}" if a < 0 else f"e{a}"


def parse_dart(token: str) -> int:
    token = token.strip()
    m = re.fullmatch(r"(-?)e(\d+)", token)
    if not m:
        raise ValueError(f"bad directed edge {token!r}")
    i = int(m.group(2))
    if i == 0:
        raise ValueError("edge ids start at 1")
    return -i if m.group(1) else i


def _as_int(a) -> int:
    return int(a)


def min_rotation(star: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic star so that its least directed edge comes first."""
    if not star:
        return ()
    i = min(range(len(star)), key=lambda t: dart_key(star[t]))
    return tuple(star[i:]) + tuple(star[:i])


@dataclass(frozen=True)
class OrderedGraph:
    """A fat graph with a distinguished base vertex.

    ``base`` is the linear order of the base star, ``stars`` the cyclic
    orders of the remaining stars.  Construction only normalizes; use
    :func:`validate` to check the structural conditions.
    """

    base: tuple[int, ...]
    stars: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        base = tuple(_as_int(a) for a in self.base)
        stars = [min_rotation([_as_int(a) for a in s]) for s in self.stars]
        stars.sort(key=lambda s: [dart_key(a) for a in s])
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "stars", tuple(stars))

    @classmethod
    def parse(cls, text: str) -> "OrderedGraph":
        """Parse ``(e1,e2);(-e1,e3,e4),(-e2,-e3,-e4)``."""
        text = text.strip()
        groups = re.findall(r"\(([^()]*)\)", text)
        if not groups:
            raise ValueError(f"no stars in {text!r}")
        parsed = [tuple(parse_dart(t) for t in g.split(",") if t.strip()) for g in groups]
        return cls(parsed[0], tuple(parsed[1:]))

    def encode(self) -> str:
        def fmt(s):
            return "(" + ",".join(format_dart(a) for a in s) + ")"

        head = fmt(self.base)
        if not self.stars:
            return head
        return head + ";" + ",".join(fmt(s) for s in self.stars)

    __str__ = encode

    def __repr__(self) -> str:
        return f"OrderedGraph.parse({self.encode()!r})"

    def key(self) -> tuple:
        """Comparison key of the textual encoding (used for canonical minima)."""
        return (tuple(dart_key(a) for a in self.base),
                tuple(tuple(dart_key(a) for a in s) for s in self.stars))

    def __lt__(self, other: "OrderedGraph") -> bool:
        return self.key() < other.key()

    @property
    def all_stars(self) -> tuple[tuple[int, ...], ...]:
        return (self.base,) + self.stars

    @property
    def vertex_count(self) -> int:
        return 1 + len(self.stars)

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted({abs(a) for s in self.all_stars for a in s}))

    @property
    def edge_count(self) -> int:
        return len(self.edge_ids)

    @cached_property
    def _where(self) -> dict[int, tuple[int, int]]:
        return {a: (v, i) for v, s in enumerate(self.all_stars) for i, a in enumerate(s)}

    def locate(self, a: int) -> tuple[int, int]:
        """(vertex, position) of directed edge ``a``."""
        try:
            return self._where[a]
        except KeyError:
            raise KeyError(f"{format_dart(a)} is not in the graph") from None

    def origin(self, a: int) -> int:
        return self.locate(a)[0]

    def endpoints(self, edge: int) -> tuple[int, int]:
        return self.origin(edge), self.origin(-edge)

    def is_loop(self, edge: int) -> bool:
        u, v = self.endpoints(edge)
        return u == v


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failure: str | None = None  # "partition", "valence", "connectivity", "bridge"
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _bridges(num_vertices: int, edges: dict[int, tuple[int, int]]) -> list[int]:
    # Tarjan lowlink keyed by edge id, so parallel edges are handled.
    adj: list[list[tuple[int, int]]] = [[] for _ in range(num_vertices)]
    for e, (u, v) in edges.items():
        if u == v:
            continue
        adj[u].append((v, e))
        adj[v].append((u, e))
    disc = [-1] * num_vertices
    low = [0] * num_vertices
    out: list[int] = []
    counter = 0
    for root in range(num_vertices):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, via, it = stack[-1]
            for w, e in it:
                if e == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, e, iter(adj[w])))
                    break
                low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        out.append(via)
    return sorted(out)


def validate(graph: OrderedGraph) -> ValidationReport:
    """Check partition, valence, connectivity and bridge-freeness, in that order."""
    stars = graph.all_stars
    seen: set[int] = set()
    for s in stars:
        for a in s:
            if a == 0:
                return ValidationReport(False, "partition", "0 is not a directed edge")
            if a in seen:
                return ValidationReport(False, "partition", f"{format_dart(a)} occurs twice")
            seen.add(a)
    for a in sorted(seen, key=dart_key):
        if -a not in seen:
            return ValidationReport(False, "partition", f"{format_dart(-a)} is missing")

    if len(graph.base) < 2:
        return ValidationReport(False, "valence", "base star has fewer than 2 elements")
    for v, s in enumerate(graph.stars, start=1):
        if len(s) < 3:
            return ValidationReport(False, "valence", f"star of vertex {v} has {len(s)} < 3 elements")

    edges = {e: graph.endpoints(e) for e in graph.edge_ids}
    parent = list(range(len(stars)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges.values():
        parent[find(u)] = find(v)
    if len({find(v) for v in range(len(stars))}) > 1:
        return ValidationReport(False, "connectivity", "graph is disconnected")

    br = _bridges(len(stars), edges)
    if br:
        return ValidationReport(False, "bridge", f"e{br[0]} is a separating edge")
    return ValidationReport(True)


def require_valid(graph: OrderedGraph) -> None:
    report = validate(graph)
    if not report:
        raise StructuralError(f"{report.failure}: {report.detail}")


# -- boundary words -----------------------------------------------------------

@dataclass(frozen=True)
class BoundaryDecomposition:
    """The base boundary path ``w0`` and the boundary cycles.

    Each cycle is rotated to start at its least directed edge; cycles are
    sorted by that first entry.
    """

    w0: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        w0 = "".join(format_dart(a) for a in self.w0)
        cyc = ", ".join("[" + "".join(format_dart(a) for a in c) + "]" for c in self.cycles)
        return f"w0 = {w0}; {{{cyc}}}"


def successor(graph: OrderedGraph, a: int) -> int | None:
    """Element after ``bar(a)`` in the star of the terminus of ``a``.

    ``None`` when ``bar(a)`` is the last element of the base order.
    """
    v, i = graph.locate(-a)
    s = graph.all_stars[v]
    if v == 0:
        return s[i + 1] if i + 1 < len(s) else None
    return s[(i + 1) % len(s)]


def boundary_words(graph: OrderedGraph) -> BoundaryDecomposition:
    require_valid(graph)
    w0 = [graph.base[0]]
    while True:
        nxt = successor(graph, w0[-1])
        if nxt is None:
            break
        w0.append(nxt)
    used = set(w0)
    cycles = []
    for a in sorted((a for s in graph.all_stars for a in s), key=dart_key):
        if a in used:
            continue
        cyc = [a]
        used.add(a)
        b = successor(graph, a)
        while b != a:
            if b is None or b in used:
                raise StructuralError("successor walk is not a permutation")
            cyc.append(b)
            used.add(b)
            b = successor(graph, b)
        cycles.append(tuple(cyc))
    return BoundaryDecomposition(tuple(w0), tuple(cycles))


# -- invariants ---------------------------------------------------------------

@dataclass(frozen=True)
class GraphInvariants:
    n: int
    p: int
    g: int
    degree: int


def degree(graph: OrderedGraph) -> int:
    n = graph.edge_count - graph.vertex_count + 1
    return 2 * n - len(graph.base)


def invariants(graph: OrderedGraph) -> GraphInvariants:
    bd = boundary_words(graph)
    n = graph.edge_count - graph.vertex_count + 1
    p = len(bd.cycles)
    if (n - p) % 2:
        raise AssertionError(f"n - p = {n - p} is odd for {graph}")
    d1 = 2 * n - len(graph.base)
    d2 = sum(len(s) - 2 for s in graph.stars)
    if d1 != d2:
        raise AssertionError(f"degree formulas disagree ({d1} != {d2}) for {graph}")
    return GraphInvariants(n=n, p=p, g=(n - p) // 2, degree=d1)


# -- random graphs ------------------------------------------------------------

def random_graph(k: int, rng: random.Random, *, vertices: int | None = None,
                 max_tries: int = 1000) -> OrderedGraph:
    """A random validated graph with ``k`` edges (ids ``1..k``).

    Rejection-samples random star assignments; raises ``RuntimeError`` if no
    valid graph is found within ``max_tries``.
    """
    darts = [i for e in range(1, k + 1) for i in (e, -e)]
    max_v = (2 * k + 1) // 3
    for _ in range(max_tries):
        q = vertices if vertices is not None else rng.randint(1, max_v)
        if 2 + 3 * (q - 1) > 2 * k:
            raise ValueError(f"{q} vertices impossible with {k} edges")
        sizes = [2] + [3] * (q - 1)
        for _ in range(2 * k - sum(sizes)):
            sizes[rng.randrange(q)] += 1
        rng.shuffle(darts)
        stars, pos = [], 0
        for s in sizes:
            stars.append(darts[pos:pos + s])
            pos += s
        g = OrderedGraph(tuple(stars[0]), tuple(tuple(s) for s in stars[1:]))
        if validate(g):
            return g
    raise RuntimeError(f"no valid graph with k={k} after {max_tries} tries")


def darts_of(graph: OrderedGraph) -> list[int]:
    return [a for s in graph.all_stars for a in s]


def graph_from_stars(base: Iterable, stars: Iterable[Iterable] = ()) -> OrderedGraph:
    return OrderedGraph(tuple(int(a) for a in base), tuple(tuple(int(a) for a in s) for s in stars))
