"""Order-respecting edge collapse and vertex split."""

from __future__ import annotations

from typing import Sequence

from .fatgraph import OrderedGraph, format_dart, validate


class NotCollapsibleError(ValueError):
    pass


class SplitError(ValueError):
    pass


def collapsible_edges(graph: OrderedGraph) -> list[int]:
    """Edge ids joining two distinct vertices, in increasing order."""
    return [e for e in graph.edge_ids if not graph.is_loop(e)]


def fresh_edge_id(graph: OrderedGraph) -> int:
    used = set(graph.edge_ids)
    e = 1
    while e in used:
        e += 1
    return e


def collapse(graph: OrderedGraph, edge: int) -> OrderedGraph:
    """Contract ``edge``, splicing the two endpoint stars together.

    The star of the endpoint that is not the base is opened just after the
    collapsed directed edge and inserted where its partner sat in the other
    star.  If one endpoint is the base the merged star stays linear.
    """
    edge = abs(int(edge))
    if edge not in graph.edge_ids:
        raise NotCollapsibleError(f"e{edge} is not an edge of {graph}")
    (si, pi), (sj, pj) = graph.locate(edge), graph.locate(-edge)
    if si == sj:
        raise NotCollapsibleError(f"e{edge} is a loop")
    if sj == 0:
        (si, pi), (sj, pj) = (sj, pj), (si, pi)
    stars = list(graph.all_stars)
    outer, inner = stars[si], stars[sj]
    merged = outer[:pi] + inner[pj + 1:] + inner[:pj] + outer[pi + 1:]
    stars[si] = merged
    del stars[sj]
    return OrderedGraph(stars[0], tuple(stars[1:]))


def _find_arc(star: Sequence[int], arc: Sequence[int], cyclic: bool) -> int:
    r, m = len(star), len(arc)
    if m == 0 or m > r:
        raise SplitError("arc must be a non-empty part of the star")
    try:
        i = star.index(arc[0])
    except ValueError:
        raise SplitError(f"{format_dart(arc[0])} is not in the star") from None
    for t, a in enumerate(arc):
        j = i + t
        if j >= r:
            if not cyclic:
                raise SplitError("arc is not contiguous in the linear base order")
            j %= r
        if star[j] != a:
            raise SplitError("arc is not contiguous in the star")
    return i


def _checked(base: Sequence[int], stars: Sequence[Sequence[int]]) -> OrderedGraph:
    h = OrderedGraph(tuple(base), tuple(tuple(s) for s in stars))
    report = validate(h)
    if not report:
        # the only way a split of a valid graph fails is a separating new edge
        raise SplitError(f"the split graph is invalid ({report.failure}: {report.detail})")
    return h


def split(graph: OrderedGraph, vertex: int, arc: Sequence[int],
          base_choice: str | None = None) -> OrderedGraph:
    """Split a vertex along a contiguous arc of its star.

    ``vertex`` indexes ``graph.all_stars`` (0 is the base).  A fresh edge
    ``e`` (the least unused id) is inserted with stars ``(e, *arc)`` and
    ``(..., -e, ...)``, the latter holding ``-e`` where the arc was.  A split
    whose new edge would separate the graph raises :class:`SplitError`.

    Splitting the base requires ``base_choice``:

    * ``"rest"``: the remainder keeps the base; the new base order is the old
      one with the arc replaced by ``-e`` and the arc (with ``e``) becomes a
      cyclic star.  The arc needs at least two elements.
    * ``"arc"``: the arc keeps the base.  The remainder must then be
      contiguous too, so the arc is a prefix (new base ``(*arc, e)``) or a
      suffix (new base ``(e, *arc)``); the remainder becomes the cyclic star
      ``(-e, ...)`` and needs at least two elements.
    """
    arc = tuple(int(a) for a in arc)
    stars = list(graph.all_stars)
    if not 0 <= vertex < len(stars):
        raise SplitError(f"no vertex {vertex}")
    star = stars[vertex]
    r, m = len(star), len(arc)
    e = fresh_edge_id(graph)

    if vertex != 0:
        if base_choice is not None:
            raise SplitError("base_choice only applies to the base vertex")
        i = _find_arc(star, arc, cyclic=True)
        rest = tuple(star[(i + m + t) % r] for t in range(r - m))
        if m < 2 or len(rest) < 2:
            raise SplitError("both parts of a split star need at least two elements")
        stars[vertex] = (e,) + arc
        stars.append((-e,) + rest)
        return _checked(stars[0], stars[1:])

    if base_choice not in ("rest", "arc"):
        raise SplitError("splitting the base needs base_choice 'rest' or 'arc'")
    i = _find_arc(star, arc, cyclic=False)
    rest = star[:i] + star[i + m:]
    if base_choice == "rest":
        if m < 2 or len(rest) < 1:
            raise SplitError("the split-off arc needs two elements and the base must keep one")
        stars[0] = star[:i] + (-e,) + star[i + m:]
        stars.append((e,) + arc)
    else:
        if m < 1 or len(rest) < 2:
            raise SplitError("the base keeps the arc; the remainder needs two elements")
        if i == 0:
            stars[0] = arc + (e,)
        elif i + m == r:
            stars[0] = (e,) + arc
        else:
            raise SplitError("with base_choice='arc' the arc must be a prefix or suffix of the base")
        stars.append((-e,) + rest)
    return _checked(stars[0], stars[1:])
