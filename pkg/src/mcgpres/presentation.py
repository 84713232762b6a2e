"""
Finite group presentations and invariants used to compare them.

A :class:`Presentation` holds named generators and relator words.  Words are
tuples of ``(symbol, exponent)`` with exponent ``+1`` or ``-1``.  Internally
the algorithms work on integer words: generator ``i`` (0-based) is ``i + 1``
and its inverse ``-(i + 1)``.
"""

from __future__ import annotations

import functools
import heapq
import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._budget import BudgetExceeded, Deadline
from .groups import TARGETS_VERSION, FiniteGroup, small_groups

Word = tuple[tuple[str, int], ...]
IntWord = tuple[int, ...]

_SYMBOL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def free_reduce(word: Iterable[int]) -> IntWord:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> IntWord:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def invert(word: Sequence[int]) -> IntWord:
    return tuple(-x for x in reversed(word))


def _letter_key(x: int) -> tuple[int, int]:
    return (abs(x), x < 0)


def _word_key(w: Sequence[int]):
    return (len(w), [_letter_key(x) for x in w])


def cyclic_normal_form(word: Sequence[int]) -> IntWord:
    """Least rotation of the word or its inverse (words already cyclically reduced)."""
    w = tuple(word)
    if not w:
        return w
    best = None
    for cand in (w, invert(w)):
        for i in range(len(cand)):
            r = cand[i:] + cand[:i]
            if best is None or _word_key(r) < _word_key(best):
                best = r
    return best


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    kinds: tuple[str, ...] = field(default=(), compare=False)

    def __init__(self, generators: Iterable[str], relators: Iterable[Iterable[tuple[str, int]]] = (),
                 kinds: Iterable[str] = ()):
        gens = tuple(generators)
        for s in gens:
            if not isinstance(s, str) or not _SYMBOL.fullmatch(s):
                raise ValueError(f"bad generator symbol {s!r}")
        if len(set(gens)) != len(gens):
            raise ValueError("repeated generator symbol")
        index = {s: i + 1 for i, s in enumerate(gens)}
        rels = []
        for rel in relators:
            letters = []
            for sym, exp in rel:
                if sym not in index:
                    raise ValueError(f"relator uses undeclared generator {sym!r}")
                if not isinstance(exp, int) or exp == 0:
                    raise ValueError(f"bad exponent {exp!r} on {sym}")
                letters.extend([index[sym] if exp > 0 else -index[sym]] * abs(exp))
            rels.append(free_reduce(letters))
        kinds = tuple(kinds)
        if kinds and len(kinds) != len(rels):
            raise ValueError("kinds must label every relator")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(self._to_symbols(w, gens) for w in rels))
        object.__setattr__(self, "kinds", kinds)

    @staticmethod
    def _to_symbols(word: IntWord, gens: Sequence[str]) -> Word:
        return tuple((gens[abs(x) - 1], 1 if x > 0 else -1) for x in word)

    @classmethod
    def from_int_words(cls, generators: Sequence[str], words: Iterable[Sequence[int]],
                       kinds: Iterable[str] = ()) -> "Presentation":
        gens = tuple(generators)
        return cls(gens, [cls._to_symbols(tuple(w), gens) for w in words], kinds)

    def int_relators(self) -> list[IntWord]:
        index = {s: i + 1 for i, s in enumerate(self.generators)}
        return [tuple(index[s] * e for s, e in rel) for rel in self.relators]

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def kind_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for k in self.kinds:
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def __str__(self) -> str:
        return to_text(self).strip()

    # -- parsing --------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        """Parse ``< a, b | a^2 = b*a*b, a*b^-1 >``; ``1`` is the empty word."""
        m = re.fullmatch(r"\s*<(.*?)\|(.*)>\s*", text, re.S)
        if not m:
            m = re.fullmatch(r"\s*<(.*)>\s*", text, re.S)
            if not m:
                raise ValueError("expected '< generators | relations >'")
            gen_part, rel_part = m.group(1), ""
        else:
            gen_part, rel_part = m.group(1), m.group(2)
        gens = [s.strip() for s in gen_part.split(",") if s.strip()]
        relators = []
        for rel in filter(None, (r.strip() for r in rel_part.split(","))):
            sides = rel.split("=")
            if len(sides) > 2:
                raise ValueError(f"bad relation {rel!r}")
            word = list(_parse_word(sides[0]))
            if len(sides) == 2:
                rhs = _parse_word(sides[1])
                word += [(s, -e) for s, e in reversed(rhs)]
            relators.append(word)
        return cls(gens, relators)


def _parse_word(text: str) -> list[tuple[str, int]]:
    text = text.strip()
    if text == "1":
        return []
    out = []
    for part in text.split("*"):
        m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(-?\d+))?\s*", part)
        if not m:
            raise ValueError(f"bad word {text!r}")
        out.append((m.group(1), int(m.group(2) or 1)))
    return out


# -- exports ------------------------------------------------------------------

def _runs(word: Word) -> list[tuple[str, int]]:
    out: list[list] = []
    for s, e in word:
        if out and out[-1][0] == s and (out[-1][1] > 0) == (e > 0):
            out[-1][1] += e
        else:
            out.append([s, e])
    return [(s, e) for s, e in out]


def _power(base: str, e: int) -> str:
    return base if e == 1 else f"{base}^{e}"


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(_power(s, e) for s, e in _runs(word))


def to_text(P: Presentation) -> str:
    head = "< " + ", ".join(P.generators) if P.generators else "<"
    if not P.relators:
        return head + " | >\n"
    lines = [head + " |"]
    for i, rel in enumerate(P.relators):
        lines.append("  " + format_word(rel) + ("," if i + 1 < len(P.relators) else ""))
    lines.append(">")
    return "\n".join(lines) + "\n"


def to_json(P: Presentation) -> str:
    data = {"generators": list(P.generators),
            "relators": [[[s, e] for s, e in rel] for rel in P.relators]}
    if P.kinds:
        data["relator_kinds"] = list(P.kinds)
    return json.dumps(data, indent=1) + "\n"


def from_json(text: str) -> Presentation:
    data = json.loads(text)
    return Presentation(data["generators"], [[(s, e) for s, e in rel] for rel in data["relators"]],
                        data.get("relator_kinds", ()))


def _indexed_word(P: Presentation, word: Word, one: str) -> str:
    if not word:
        return one
    index = {s: i + 1 for i, s in enumerate(P.generators)}
    return "*".join(_power(f"F.{index[s]}", e) for s, e in _runs(word))


def to_gap(P: Presentation) -> str:
    names = ", ".join(f'"{s}"' for s in P.generators)
    head = f"F := FreeGroup({names});" if P.generators else "F := FreeGroup(0);"
    rels = ",\n  ".join(_indexed_word(P, r, "One(F)") for r in P.relators)
    return f"{head}\nG := F / [ {rels} ];\n"


def to_magma(P: Presentation) -> str:
    names = ",".join(P.generators)
    rels = ",\n  ".join(_indexed_word(P, r, "F!1") for r in P.relators)
    return (f"// generators: {names}\nF := FreeGroup({len(P.generators)});\n"
            f"G := quo< F | {rels} >;\n")


EXPORTERS = {"text": to_text, "json": to_json, "gap": to_gap, "magma": to_magma}


# -- Tietze simplification ----------------------------------------------------

class _Tietze:
    """Mutable relator store with occurrence index for eliminations."""

    def __init__(self, ngens: int, words: Iterable[IntWord]):
        self.ngens = ngens
        self.rels: dict[int, IntWord] = {}
        self.occ: dict[int, dict[int, int]] = defaultdict(dict)  # generator -> relator -> count
        self.total: dict[int, int] = defaultdict(int)  # generator -> occurrences
        self.alive = set(range(1, ngens + 1))
        self.heap: list = []
        self.next_id = 0
        for w in words:
            self.add(w)

    def add(self, word: IntWord) -> None:
        w = cyclic_reduce(word)
        if not w:
            return
        rid = self.next_id
        self.next_id += 1
        self.rels[rid] = w
        counts: dict[int, int] = defaultdict(int)
        for x in w:
            counts[abs(x)] += 1
        for g, c in counts.items():
            self.occ[g][rid] = c
            self.total[g] += c
        for g, c in counts.items():
            if c == 1:
                self.push(rid, g)

    def remove(self, rid: int) -> IntWord:
        w = self.rels.pop(rid)
        for g in {abs(x) for x in w}:
            c = self.occ[g].pop(rid)
            self.total[g] -= c
        return w

    def key(self, rid: int, g: int):
        n = len(self.rels[rid])
        # total length after substitution, before free reduction, minus the current total
        delta = (self.total[g] - 1) * (n - 2) - n
        return (n != 1, delta, g, rid)

    def push(self, rid: int, g: int) -> None:
        heapq.heappush(self.heap, (self.key(rid, g), rid, g))

    def refresh_generator(self, g: int) -> None:
        for rid, c in self.occ[g].items():
            if c == 1:
                self.push(rid, g)

    def pop_best(self):
        while self.heap:
            key, rid, g = heapq.heappop(self.heap)
            if rid not in self.rels or self.occ[g].get(rid) != 1:
                continue
            current = self.key(rid, g)
            if current == key:
                return rid, g
            # occurrence totals moved since the push; requeue under the fresh key
            heapq.heappush(self.heap, (current, rid, g))
        return None

    def eliminate(self, rid: int, g: int) -> None:
        w = self.remove(rid)
        i = next(t for t, x in enumerate(w) if abs(x) == g)
        rot = w[i:] + w[:i]
        rest = rot[1:]
        # rot = g^s * rest = 1, so g^s = rest^-1
        value = invert(rest) if rot[0] > 0 else rest
        value_inv = invert(value)
        touched = set(self.occ[g])
        changed = {abs(x) for x in w}
        rewritten = []
        for r in sorted(touched):
            old = self.remove(r)
            changed |= {abs(x) for x in old}
            new = []
            for x in old:
                if x == g:
                    new.extend(value)
                elif x == -g:
                    new.extend(value_inv)
                else:
                    new.append(x)
            rewritten.append(tuple(new))
        self.alive.discard(g)
        del self.occ[g]
        self.total.pop(g, None)
        for new in rewritten:
            self.add(new)
        for h in sorted(changed - {g}):
            self.refresh_generator(h)

    def run(self, deadline: Deadline | None = None) -> None:
        while True:
            if deadline:
                deadline.check()
            best = self.pop_best()
            if best is None:
                return
            self.eliminate(*best)


def tietze_simplify(P: Presentation, deadline: Deadline | None = None) -> Presentation:
    """Deterministic simplification by generator eliminations.

    Relators are cyclically reduced; trivial relators dropped.  While some
    relator contains a generator exactly once, that generator is solved for
    and substituted away.  Relators of length one go first; otherwise the
    choice minimizes the resulting total relator length (counted before free
    reduction), then generator order, then relator age.  The result keeps the
    surviving generators in their original order; each relator is replaced
    by the least rotation of it or its inverse, duplicates are dropped and
    relators are sorted.
    """
    words = P.int_relators()
    store = _Tietze(len(P.generators), words)
    store.run(deadline)
    survivors = sorted(store.alive)
    renumber = {g: i + 1 for i, g in enumerate(survivors)}
    out = set()
    for w in store.rels.values():
        nw = tuple(renumber[x] if x > 0 else -renumber[-x] for x in w)
        out.add(cyclic_normal_form(nw))
    rels = sorted(out, key=_word_key)
    return Presentation.from_int_words([P.generators[g - 1] for g in survivors], rels)


# -- abelianization -----------------------------------------------------------

def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if not done:
                # move the least nonzero entry of row/column t to the pivot and retry
                cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, i, j = min(cands)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
    return diag


def _sparse_unit_pivots(rows: list[dict[int, int]], ncols: int) -> tuple[int, list[dict[int, int]]]:
    # Eliminate +-1 entries with few fill-ins; each pivot removes a row and a column.
    cols: dict[int, set[int]] = defaultdict(set)
    for ri, row in enumerate(rows):
        for c in row:
            cols[c].add(ri)
    alive = {ri for ri, row in enumerate(rows) if row}
    units = 0
    progress = True
    while progress:
        progress = False
        for ri in sorted(alive, key=lambda r: (len(rows[r]), r)):
            if ri not in alive:
                continue
            row = rows[ri]
            if not row:
                alive.discard(ri)
                continue
            piv = [c for c, v in row.items() if abs(v) == 1]
            if not piv:
                continue
            c = min(piv, key=lambda c: (len(cols[c]), c))
            s = row[c]
            for rj in sorted(cols[c] - {ri}):
                other = rows[rj]
                f = other[c] * s
                for cc, v in row.items():
                    nv = other.get(cc, 0) - f * v
                    if nv:
                        if cc not in other:
                            cols[cc].add(rj)
                        other[cc] = nv
                    elif cc in other:
                        del other[cc]
                        cols[cc].discard(rj)
                if not other:
                    alive.discard(rj)
            for cc in row:
                cols[cc].discard(ri)
            rows[ri] = {}
            alive.discard(ri)
            units += 1
            progress = True
    return units, [rows[ri] for ri in sorted(alive)]


@dataclass(frozen=True)
class Abelianization:
    rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = [] if self.rank == 0 else ["Z" if self.rank == 1 else f"Z^{self.rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def relation_matrix(P: Presentation) -> list[list[int]]:
    n = len(P.generators)
    out = []
    for w in P.int_relators():
        row = [0] * n
        for x in w:
            row[abs(x) - 1] += 1 if x > 0 else -1
        out.append(row)
    return out


def abelianization(P: Presentation) -> Abelianization:
    """Free rank and torsion coefficients of the abelianized group."""
    n = len(P.generators)
    rows = []
    for w in P.int_relators():
        row: dict[int, int] = defaultdict(int)
        for x in w:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append({c: v for c, v in row.items() if v})
    units, rest = _sparse_unit_pivots(rows, n)
    used = sorted({c for row in rest for c in row})
    dense = [[row.get(c, 0) for c in used] for row in rest]
    diag = smith_normal_form(dense) if dense else []
    nonzero = units + len(diag)
    return Abelianization(n - nonzero, tuple(d for d in diag if d > 1))


# -- homomorphism counts ------------------------------------------------------

_BRANCH, _SOLVE, _CHECK = 0, 1, 2


@functools.lru_cache(maxsize=16)
def hom_search_plan(P: Presentation) -> tuple[tuple, ...]:
    """Order in which :func:`count_homs` fixes generator images.

    Whether a relator determines one of its generators depends only on which
    generators are already fixed, not on their values, so the schedule is
    computed once.  Steps are ``(_BRANCH, g)``, ``(_SOLVE, g, sign, rest)``
    meaning ``g^sign * rest = 1``, and ``(_CHECK, word)``.  Branch generators
    are chosen greedily to settle as many further generators as possible.
    """
    words = [w for w in (cyclic_reduce(w) for w in P.int_relators()) if w]
    rels_of: dict[int, list[int]] = defaultdict(list)
    for ri, w in enumerate(words):
        for gi in sorted({abs(x) - 1 for x in w}):
            rels_of[gi].append(ri)
    open_count = [len({abs(x) for x in w}) for w in words]

    def closure(g: int | None, fixed: set[int], counts: list[int], done: set[int],
                steps: list | None) -> int:
        # fix g (if given), then settle everything the relators force
        settled = 0
        queue: list[int] = [] if g is not None else list(range(len(words)))

        def fix(gi: int) -> None:
            fixed.add(gi)
            for ri in rels_of[gi]:
                counts[ri] -= 1
                queue.append(ri)

        if g is not None:
            fix(g)
        while queue:
            ri = queue.pop(0)
            if ri in done:
                continue
            w = words[ri]
            if counts[ri] == 0:
                done.add(ri)
                if steps is not None:
                    steps.append((_CHECK, w))
            elif counts[ri] == 1:
                (gj,) = {abs(x) - 1 for x in w if abs(x) - 1 not in fixed}
                pos = [t for t, x in enumerate(w) if abs(x) - 1 == gj]
                if len(pos) == 1:
                    t = pos[0]
                    rot = w[t:] + w[:t]
                    done.add(ri)
                    settled += 1
                    if steps is not None:
                        steps.append((_SOLVE, gj, 1 if rot[0] > 0 else -1, rot[1:]))
                    fix(gj)
        return settled

    fixed: set[int] = set()
    done: set[int] = set()
    steps: list[tuple] = []
    todo = sorted(rels_of)
    closure(None, fixed, open_count, done, steps)
    while True:
        open_gens = [gi for gi in todo if gi not in fixed]
        if not open_gens:
            break
        best = None
        for gi in open_gens:
            score = closure(gi, set(fixed), list(open_count), set(done), None)
            if best is None or score > best[0]:
                best = (score, gi)
        gi = best[1]
        steps.append((_BRANCH, gi))
        closure(gi, fixed, open_count, done, steps)
    return tuple(steps)


def count_homs(P: Presentation, group: FiniteGroup, max_nodes: int = 2_000_000,
               deadline: Deadline | None = None) -> int:
    """Number of homomorphisms from the presented group to ``group``.

    Depth-first search over generator images following
    :func:`hom_search_plan`: branch generators range over the whole group,
    solved generators are computed from their relator, and every relator is
    checked as soon as all its generators are fixed.  Generators absent from
    all relators contribute a factor ``|group|`` each.  Raises
    :class:`BudgetExceeded` past ``max_nodes`` branch assignments.
    """
    table = group.table.tolist()
    inv = group.inverse.tolist()
    e = group.identity
    order = group.order
    plan = hom_search_plan(P)
    used = {s[1] for s in plan if s[0] != _CHECK}
    free = len(P.generators) - len(used)
    value = [e] * len(P.generators)
    # flatten words to (generator, inverted?) pairs once
    compiled = []
    for step in plan:
        if step[0] == _BRANCH:
            compiled.append(step)
        elif step[0] == _SOLVE:
            compiled.append((_SOLVE, step[1], step[2], [(abs(x) - 1, x < 0) for x in step[3]]))
        else:
            compiled.append((_CHECK, [(abs(x) - 1, x < 0) for x in step[1]]))
    nodes = 0

    def evaluate(word) -> int:
        acc = e
        for gi, neg in word:
            v = value[gi]
            acc = table[acc][inv[v] if neg else v]
        return acc

    def run(i: int) -> int:
        nonlocal nodes
        while i < len(compiled):
            step = compiled[i]
            kind = step[0]
            if kind == _CHECK:
                if evaluate(step[1]) != e:
                    return 0
            elif kind == _SOLVE:
                v = evaluate(step[3])
                value[step[1]] = inv[v] if step[2] > 0 else v
            else:
                nodes += order
                if nodes > max_nodes:
                    raise BudgetExceeded(f"count_homs into {group.name}: more than {max_nodes} nodes")
                if deadline:
                    deadline.check()
                total = 0
                for v in range(order):
                    value[step[1]] = v
                    total += run(i + 1)
                return total
            i += 1
        return 1

    return run(0) * order ** free


# -- equivalence evidence -----------------------------------------------------

@dataclass
class EvidenceReport:
    verdict: str
    abelianizations: tuple[Abelianization, Abelianization]
    counts: list[tuple[str, int, int]]
    skipped: list[str]
    targets_version: int = TARGETS_VERSION
    note: str = ("Agreement of these invariants is evidence, not a proof, "
                 "that the presentations define isomorphic groups.")

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent"

    def __str__(self) -> str:
        lines = [f"verdict: {self.verdict}",
                 f"abelianization: {self.abelianizations[0]} vs {self.abelianizations[1]}"]
        for name, a, b in self.counts:
            lines.append(f"  Hom(-, {name}): {a} vs {b}")
        if self.skipped:
            lines.append("skipped (budget): " + ", ".join(self.skipped))
        lines.append(f"targets version {self.targets_version}. {self.note}")
        return "\n".join(lines)


def equivalence_evidence(P1: Presentation, P2: Presentation,
                         targets: Sequence[FiniteGroup] | None = None,
                         max_nodes: int = 2_000_000) -> EvidenceReport:
    """Compare abelianizations and homomorphism counts into small groups."""
    ab = (abelianization(P1), abelianization(P2))
    if ab[0] != ab[1]:
        return EvidenceReport("distinguished by abelianization", ab, [], [])
    counts, skipped = [], []
    for G in (small_groups() if targets is None else targets):
        try:
            a = count_homs(P1, G, max_nodes)
            b = count_homs(P2, G, max_nodes)
        except BudgetExceeded:
            skipped.append(G.name)
            continue
        counts.append((G.name, a, b))
        if a != b:
            return EvidenceReport(f"distinguished by {G.name}", ab, counts, skipped)
    return EvidenceReport("consistent", ab, counts, skipped)


def gcd_chain_ok(divisors: Sequence[int]) -> bool:
    return all(b % a == 0 for a, b in zip(divisors, divisors[1:]))


__all__ = [
    "Presentation", "Abelianization", "EvidenceReport", "EXPORTERS",
    "free_reduce", "cyclic_reduce", "cyclic_normal_form", "invert", "format_word",
    "to_text", "to_json", "from_json", "to_gap", "to_magma",
    "tietze_simplify", "smith_normal_form", "relation_matrix", "abelianization",
    "count_homs", "equivalence_evidence", "gcd_chain_ok",
]
