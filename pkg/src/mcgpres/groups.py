"""
Small finite groups given by multiplication tables.

These are the targets for homomorphism counting.  :func:`small_groups` lists one
group of each isomorphism type of order at most 12, plus the symmetric group
on four letters.  The list is versioned: reports quote ``TARGETS_VERSION``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

TARGETS_VERSION = 1


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    table: np.ndarray  # table[a, b] = index of a*b
    identity: int
    inverse: np.ndarray

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    @classmethod
    def from_elements(cls, name: str, elements: Sequence[Hashable],
                      mul: Callable[[Hashable, Hashable], Hashable]) -> "FiniteGroup":
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("repeated elements")
        m = len(elements)
        table = np.empty((m, m), dtype=np.int64)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                table[i, j] = index[mul(x, y)]
        ident = [i for i in range(m) if all(table[i, j] == j for j in range(m))]
        if len(ident) != 1:
            raise ValueError(f"{name}: no unique identity")
        e = ident[0]
        inverse = np.array([int(np.flatnonzero(table[i] == e)[0]) for i in range(m)], dtype=np.int64)
        group = cls(name, table, e, inverse)
        group.check_axioms()
        return group

    def check_axioms(self) -> None:
        t = self.table
        m = self.order
        rng = np.arange(m)
        for row in t:
            if sorted(row.tolist()) != rng.tolist():
                raise ValueError(f"{self.name}: table is not a Latin square")
        left = t[t]  # left[a, b, c] = (ab)c
        right = t[:, t]  # right[a, b, c] = a(bc)
        if not np.array_equal(left, right):
            raise ValueError(f"{self.name}: multiplication is not associative")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])


def cyclic(m: int) -> FiniteGroup:
    return FiniteGroup.from_elements(f"C{m}", list(range(m)), lambda a, b: (a + b) % m)


def abelian_product(*orders: int) -> FiniteGroup:
    elems = list(itertools.product(*(range(m) for m in orders)))
    name = "x".join(f"C{m}" for m in orders)
    return FiniteGroup.from_elements(
        name, elems, lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, orders)))


def semidirect(name: str, m: int, n: int, r: int) -> FiniteGroup:
    """``C_m`` by ``C_n`` where the generator of ``C_n`` acts by ``x -> r x``."""
    if pow(r, n, m) != 1 % m:
        raise ValueError("r must have order dividing n modulo m")
    elems = [(a, b) for a in range(m) for b in range(n)]
    return FiniteGroup.from_elements(
        name, elems, lambda x, y: ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % n))


def dihedral(m: int) -> FiniteGroup:
    """Symmetries of the regular ``m``-gon (order ``2m``)."""
    return semidirect(f"D{m}", m, 2, m - 1)


def _perm_mul(p, q):
    # apply q first, then p
    return tuple(p[i] for i in q)


def symmetric(m: int) -> FiniteGroup:
    return FiniteGroup.from_elements(f"S{m}", list(itertools.permutations(range(m))), _perm_mul)


def alternating(m: int) -> FiniteGroup:
    def even(p):
        inv = sum(1 for i in range(m) for j in range(i + 1, m) if p[i] > p[j])
        return inv % 2 == 0

    return FiniteGroup.from_elements(
        f"A{m}", [p for p in itertools.permutations(range(m)) if even(p)], _perm_mul)


def quaternion() -> FiniteGroup:
    # units of the quaternions as (sign, unit) with unit in 1, i, j, k
    table = {("1", "1"): (1, "1"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
             ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
             ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")}

    def mul(x, y):
        (s, u), (t, v) = x, y
        if u == "1":
            return (s * t, v)
        if v == "1":
            return (s * t, u)
        z, w = table[(u, v)]
        return (s * t * z, w)

    elems = [(s, u) for s in (1, -1) for u in ("1", "i", "j", "k")]
    return FiniteGroup.from_elements("Q8", elems, mul)


def trivial() -> FiniteGroup:
    return FiniteGroup.from_elements("C1", [0], lambda a, b: 0)


def small_groups() -> list[FiniteGroup]:
    """One group per isomorphism type of order <= 12, then S4."""
    return [
        trivial(),
        cyclic(2),
        cyclic(3),
        cyclic(4), abelian_product(2, 2),
        cyclic(5),
        cyclic(6), symmetric(3),
        cyclic(7),
        cyclic(8), abelian_product(4, 2), abelian_product(2, 2, 2), dihedral(4), quaternion(),
        cyclic(9), abelian_product(3, 3),
        cyclic(10), dihedral(5),
        cyclic(11),
        cyclic(12), abelian_product(6, 2), alternating(4), dihedral(6), semidirect("Dic3", 3, 4, 2),
        symmetric(4),
    ]
