"""
Enumeration of ordered graphs of low degree for a given genus and puncture count.

The top stratum used by the presentation algorithm is the list of degree-2
graphs with three vertices (the base and two trivalent vertices).  Graphs are
generated directly: the base star is written in first-appearance form (up to
relabeling every base order is of that form), the remaining directed edges
are dealt into the non-base stars in every cyclic arrangement, and survivors
are canonicalized.  :func:`cross_check_by_splitting` rebuilds the same list
from roses by vertex splitting.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from ._budget import Deadline
from .canon import canonical
from .fatgraph import OrderedGraph, boundary_words, dart_key, validate
from .moves import SplitError, split

log = logging.getLogger(__name__)


class GraphList(list):
    """A list of canonical graphs; ``diagnosis`` explains an empty result."""

    diagnosis: str | None = None


def check_parameters(g: int, p: int) -> int:
    """Return ``n = 2g + p`` or raise ``ValueError`` for unusable input."""
    if not (isinstance(g, int) and isinstance(p, int)):
        raise ValueError("genus and punctures must be integers")
    if g < 0 or p < 0:
        raise ValueError("genus and punctures must be non-negative")
    if (g, p) == (0, 0):
        raise ValueError("(g, p) = (0, 0) is excluded: the disk has a trivial, degenerate complex")
    return 2 * g + p


# -- direct generation --------------------------------------------------------

def base_patterns(length: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Base orders in first-appearance form.

    Yields ``(base, singles)``: ``base`` uses labels ``1, 2, ...`` in order of
    first appearance (always positively), repeated labels appear reversed;
    ``singles`` lists the labels appearing once (edges leaving the base).
    """

    def rec(prefix, open_loops, singles, nxt):
        if len(prefix) == length:
            if not open_loops:
                yield tuple(prefix), tuple(singles)
            return
        room = length - len(prefix) - 1  # free slots after this one
        if len(open_loops) <= room:
            yield from rec(prefix + [nxt], open_loops, singles + [nxt], nxt + 1)
        if len(open_loops) + 1 <= room:
            yield from rec(prefix + [nxt], open_loops + [nxt], singles, nxt + 1)
        for i, e in enumerate(open_loops):
            yield from rec(prefix + [-e], open_loops[:i] + open_loops[i + 1:], singles, nxt)

    yield from rec([], [], [], 1)


def cyclic_deals(darts: Sequence[int], sizes: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every way to deal ``darts`` into unordered cyclic stars of the given sizes."""
    if not darts:
        if not sizes:
            yield ()
        return
    first, rest = darts[0], list(darts[1:])
    for s in sorted(set(sizes)):
        remaining_sizes = list(sizes)
        remaining_sizes.remove(s)
        for others in itertools.combinations(range(len(rest)), s - 1):
            chosen = [rest[i] for i in others]
            left = [rest[i] for i in range(len(rest)) if i not in others]
            for order in itertools.permutations(chosen):
                star = (first,) + order
                for tail in cyclic_deals(left, remaining_sizes):
                    yield (star,) + tail


def graphs_with_profile(g: int, p: int, base_len: int, sizes: Sequence[int],
                        deadline: Deadline | None = None) -> list[OrderedGraph]:
    """Canonical graphs for ``(g, p)`` with the given base valence and non-base valences."""
    n = 2 * g + p
    sizes = sorted(sizes)
    total = base_len + sum(sizes)
    if base_len < 2 or any(s < 3 for s in sizes) or total % 2:
        return []
    k = total // 2
    if k - len(sizes) != n:
        return []
    found: set[OrderedGraph] = set()
    for base, singles in base_patterns(base_len):
        if deadline:
            deadline.check()
        if sizes and not singles:
            continue
        n_interior = sum(sizes) - len(singles)
        if n_interior < 0 or n_interior % 2:
            continue
        first_interior = max((abs(a) for a in base), default=0) + 1
        interior = range(first_interior, first_interior + n_interior // 2)
        darts = sorted([-s for s in singles] + [d for e in interior for d in (e, -e)], key=dart_key)
        for stars in cyclic_deals(darts, sizes):
            graph = OrderedGraph(base, stars)
            if not validate(graph):
                continue
            if len(boundary_words(graph).cycles) != p:
                continue
            found.add(canonical(graph))
    return sorted(found, key=OrderedGraph.key)


def roses(g: int, p: int) -> list[OrderedGraph]:
    """Single-vertex graphs of rank ``2g + p`` with ``p`` boundary cycles."""
    n = check_parameters(g, p)
    return graphs_with_profile(g, p, 2 * n, [])


def list_L(g: int, p: int, deadline: Deadline | None = None) -> GraphList:
    """Degree-2 graphs with three vertices, one canonical graph per orbit, sorted."""
    n = check_parameters(g, p)
    out = GraphList()
    if 2 * n - 2 < 2:
        out.diagnosis = (f"n = {n}: a three-vertex degree-2 graph needs base valence "
                         f"2n - 2 >= 2, so the list is empty")
        log.info(out.diagnosis)
        return out
    out.extend(graphs_with_profile(g, p, 2 * n - 2, [3, 3], deadline))
    return out


def _degree_profiles(d: int) -> list[list[int]]:
    # partitions of d into positive parts, as non-base valences part + 2
    def parts(m, largest):
        if m == 0:
            yield []
            return
        for x in range(min(m, largest), 0, -1):
            for rest in parts(m - x, x):
                yield [x] + rest

    return [[x + 2 for x in q] for q in parts(d, d)]


def enumerate_degree_at_most(g: int, p: int, d: int, deadline: Deadline | None = None) -> GraphList:
    """All canonical graphs for ``(g, p)`` of degree at most ``d`` (``d <= 2``)."""
    n = check_parameters(g, p)
    if not 0 <= d <= 2:
        raise ValueError("degree bound must be 0, 1 or 2")
    out = GraphList()
    for dd in range(d + 1):
        if 2 * n - dd < 2:
            continue
        for sizes in _degree_profiles(dd):
            out.extend(graphs_with_profile(g, p, 2 * n - dd, sizes, deadline))
    out.sort(key=OrderedGraph.key)
    if not out:
        out.diagnosis = f"no graphs of degree <= {d} for (g, p) = ({g}, {p})"
    return out


# -- split-based cross-check --------------------------------------------------

def admissible_splits(graph: OrderedGraph) -> Iterator[tuple[int, tuple[int, ...], str | None]]:
    """Candidate ``(vertex, arc, base_choice)`` triples; some may still be rejected."""
    base = graph.base
    r = len(base)
    for i in range(r):
        for m in range(1, r - i + 1):
            arc = base[i:i + m]
            if m >= 2 and m <= r - 1:
                yield 0, arc, "rest"
            if (i == 0 or i + m == r) and r - m >= 2:
                yield 0, arc, "arc"
    for v, star in enumerate(graph.stars, start=1):
        r = len(star)
        for i in range(r):
            for m in range(2, r - 1):
                yield v, tuple(star[(i + t) % r] for t in range(m)), None


def _split_all(graph: OrderedGraph) -> set[OrderedGraph]:
    out = set()
    for v, arc, choice in admissible_splits(graph):
        try:
            h = split(graph, v, arc, choice)
        except SplitError:
            continue
        if validate(h):
            out.add(canonical(h))
    return out


@dataclass
class CrossCheckVerdict:
    equal: bool
    direct: int
    by_splitting: int
    only_direct: list[OrderedGraph] = field(default_factory=list)
    only_splitting: list[OrderedGraph] = field(default_factory=list)

    def __str__(self) -> str:
        if self.equal:
            return f"equal ({self.direct} graphs)"
        witness = (self.only_direct or self.only_splitting)[0]
        return (f"mismatch: direct {self.direct}, by splitting {self.by_splitting}; "
                f"witness {witness}")


def cross_check_by_splitting(g: int, p: int, deadline: Deadline | None = None) -> CrossCheckVerdict:
    """Rebuild the top list by splitting every rose twice and compare."""
    n = check_parameters(g, p)
    direct = set(list_L(g, p, deadline))
    level = set(roses(g, p))
    for _ in range(2):
        nxt: set[OrderedGraph] = set()
        for graph in sorted(level, key=OrderedGraph.key):
            if deadline:
                deadline.check()
            nxt |= _split_all(graph)
        level = nxt
    top = {h for h in level if h.vertex_count == 3 and len(h.base) == 2 * n - 2}
    return CrossCheckVerdict(
        equal=top == direct,
        direct=len(direct),
        by_splitting=len(top),
        only_direct=sorted(direct - top, key=OrderedGraph.key),
        only_splitting=sorted(top - direct, key=OrderedGraph.key),
    )


# -- cache --------------------------------------------------------------------

class CacheError(ValueError):
    pass


def default_cache_dir(flag: str | os.PathLike | None = None) -> Path:
    env = os.environ.get("MCG_CACHE_DIR")
    if env:
        return Path(env)
    return Path(flag) if flag is not None else Path(".mcgcache")


def cache_path(cache_dir: str | os.PathLike, g: int, p: int) -> Path:
    return Path(cache_dir) / f"L-g{g}-p{p}.json"


def load_cached_L(cache_dir, g: int, p: int) -> GraphList | None:
    """Load and re-verify a cached list; ``None`` if absent, ``CacheError`` if corrupt."""
    path = cache_path(cache_dir, g, p)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        graphs = [OrderedGraph.parse(s) for s in data]
    except (ValueError, TypeError) as exc:
        raise CacheError(f"{path}: unreadable ({exc})") from exc
    n = 2 * g + p
    for graph in graphs:
        if not validate(graph):
            raise CacheError(f"{path}: invalid graph {graph}")
        if canonical(graph) != graph:
            raise CacheError(f"{path}: {graph} is not canonical")
        if (graph.vertex_count != 3 or len(graph.base) != 2 * n - 2
                or len(boundary_words(graph).cycles) != p):
            raise CacheError(f"{path}: {graph} does not belong to the list for ({g}, {p})")
    if [x.key() for x in graphs] != sorted({x.key() for x in graphs}):
        raise CacheError(f"{path}: entries are not sorted and distinct")
    out = GraphList(graphs)
    return out


def save_cached_L(cache_dir, g: int, p: int, graphs: Sequence[OrderedGraph]) -> Path:
    path = cache_path(cache_dir, g, p)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps([x.encode() for x in graphs], indent=1) + "\n")
    return path


def list_L_cached(g: int, p: int, cache_dir=None, deadline: Deadline | None = None) -> GraphList:
    """:func:`list_L` through the on-disk cache; a corrupt cache is rebuilt."""
    check_parameters(g, p)
    if cache_dir is None:
        return list_L(g, p, deadline)
    try:
        cached = load_cached_L(cache_dir, g, p)
    except CacheError as exc:
        log.warning("discarding cache: %s", exc)
        cached = None
    if cached is not None:
        return cached
    out = list_L(g, p, deadline)
    save_cached_L(cache_dir, g, p, out)
    return out
