"""Dense-table finite groups.

Elements are the integers ``0..n-1`` with ``0`` the identity. Every higher
layer (coset enumeration, wedge squares, star tables) works on these indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GroupError(ValueError):
    """Raised for malformed group data or invalid group operations."""


class OrderLimitError(GroupError):
    """A construction or search would exceed its configured order bound."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group stored as its full multiplication table.

    ``table[i, j]`` is the index of ``i*j``. Instances are immutable; derived
    data (orders, conjugation table, canonical words) is computed lazily.
    """

    table: np.ndarray
    inverse: np.ndarray
    names: tuple[str, ...]
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        self.table.setflags(write=False)
        self.inverse.setflags(write=False)

    @classmethod
    def from_table(
        cls,
        table,
        names: Sequence[str] | None = None,
        generators: Sequence[int] | None = None,
        check: bool = True,
    ) -> FiniteGroup:
        """Build a group from a raw Cayley table.

        The identity is moved to index 0 if needed. With ``check`` the group
        axioms are verified over all pairs and triples.
        """
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError(f"table must be a non-empty square array, got shape {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        ar = np.arange(n)
        ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
        if not ids:
            raise GroupError("table has no two-sided identity")
        e = ids[0]
        if names is None:
            names = [str(i) for i in range(n)]
        names = list(names)
        if len(names) != n:
            raise GroupError("names length does not match table order")
        gens = None if generators is None else list(generators)
        if e != 0:
            # swap e and 0
            perm = ar.copy()
            perm[0], perm[e] = e, 0
            t = perm[t[np.ix_(perm, perm)]]
            names[0], names[e] = names[e], names[0]
            if gens is not None:
                gens = [int(perm[g]) for g in gens]
        if check:
            if not all(sorted(row) == list(range(n)) for row in t.tolist()):
                raise GroupError("table is not a Latin square")
            left = t[t]  # left[a, b, c] = (ab)c
            right = t[ar[:, None, None], t[None, :, :]]  # a(bc)
            if not np.array_equal(left, right):
                a, b, c = np.argwhere(left != right)[0]
                raise GroupError(f"table is not associative at ({a}, {b}, {c})")
        inverse = np.argmax(t == 0, axis=1)
        if gens is None:
            gens = _greedy_generators(t, inverse)
        grp = cls(t.astype(np.int64), inverse.astype(np.int64), tuple(names), tuple(int(g) for g in gens))
        if check and len(grp.closure(grp.generators)) != n:
            raise GroupError("generators do not generate the group")
        return grp

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, generators={[self.names[g] for g in self.generators]})"

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def product(self, xs: Iterable[int]) -> int:
        acc = 0
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc = 0
        for _ in range(k):
            acc = int(self.table[acc, x])
        return acc

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists, for tight scalar loops."""
        return self.table.tolist()

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        alive = np.ones(n, dtype=bool)
        k = 1
        while alive.any():
            hit = alive & (cur == 0)
            orders[hit] = k
            alive &= ~hit
            cur = self.table[cur, np.arange(n)]
            k += 1
        return orders

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[y, x]`` is the conjugate ``y x y^-1``."""
        yx = self.table  # yx[y, x]
        return self.table[yx, self.inverse[:, None]]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def center(self) -> tuple[int, ...]:
        comm = self.table == self.table.T
        return tuple(int(z) for z in np.flatnonzero(comm.all(axis=1)))

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        """Sorted multiset of conjugacy-class sizes."""
        seen = np.zeros(self.order, dtype=bool)
        sizes = []
        for x in range(self.order):
            if not seen[x]:
                cls = np.unique(self.conj[:, x])
                seen[cls] = True
                sizes.append(len(cls))
        return tuple(sorted(sizes))

    @cached_property
    def order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(int(o) for o in self.element_orders))

    @cached_property
    def _words(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Breadth-first spanning tree of the Cayley graph.

        Returns ``(bfs_order, parent, via)`` with ``x = parent[x] * generators[via[x]]``.
        Generators are tried in declared order, so the first-found word wins.
        """
        return _cayley_bfs(self.table, self.generators)

    def word(self, x: int) -> list[int]:
        """Canonical word for ``x`` as a list of generator positions."""
        _, parent, via = self._words
        out = []
        while x != 0:
            out.append(int(via[x]))
            x = int(parent[x])
        return out[::-1]

    def closure(self, seed: Iterable[int]) -> list[int]:
        """Sorted members of the subgroup generated by ``seed``."""
        return _closure(self.rows, list(seed))


def _cayley_bfs(table: np.ndarray, gens: Sequence[int]):
    n = table.shape[0]
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    parent[0] = 0
    order = [0]
    queue = deque([0])
    rows = table.tolist()
    while queue:
        x = queue.popleft()
        row = rows[x]
        for i, g in enumerate(gens):
            y = row[g]
            if parent[y] < 0:
                parent[y] = x
                via[y] = i
                order.append(y)
                queue.append(y)
    if len(order) != n:
        raise GroupError("generators do not generate the group")
    return np.array(order, dtype=np.int64), parent, via


def _closure(rows: list[list[int]], seed: list[int]) -> list[int]:
    gens = [g for g in dict.fromkeys(seed) if g != 0]
    members = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        row = rows[x]
        for g in gens:
            y = row[g]
            if y not in members:
                members.add(y)
                queue.append(y)
    return sorted(members)


def _greedy_generators(table: np.ndarray, inverse: np.ndarray) -> list[int]:
    """Add elements of decreasing order until they generate everything."""
    n = table.shape[0]
    rows = table.tolist()
    grp_orders = _orders_of(rows)
    candidates = sorted(range(1, n), key=lambda x: (-grp_orders[x], x))
    gens: list[int] = []
    members = {0}
    for x in candidates:
        if len(members) == n:
            break
        if x not in members:
            gens.append(x)
            members = set(_closure(rows, gens))
    return gens


def _orders_of(rows: list[list[int]]) -> list[int]:
    out = []
    for x in range(len(rows)):
        k, y = 1, x
        while y != 0:
            y = rows[y][x]
            k += 1
        out.append(k)
    return out


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]
    is_normal: bool

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash(self.members)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a stand-alone group; element ``i`` is ``members[i]``."""
        mem = np.array(self.members, dtype=np.int64)
        sub = self.parent.table[np.ix_(mem, mem)]
        lookup = np.zeros(self.parent.order, dtype=np.int64)
        lookup[mem] = np.arange(len(mem))
        t = lookup[sub]
        inv = lookup[self.parent.inverse[mem]]
        names = tuple(self.parent.names[m] for m in self.members)
        gens = _greedy_generators(t, inv)
        return FiniteGroup(t, inv, names, tuple(gens))


def _is_normal(G: FiniteGroup, members: Sequence[int]) -> bool:
    mem = np.array(members, dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[mem] = True
    return bool(mask[G.conj[:, mem]].all())


@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    images: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def kernel(self) -> Subgroup:
        mem = tuple(int(x) for x in np.flatnonzero(self.images == 0))
        return Subgroup(self.domain, mem, True)

    def image(self) -> Subgroup:
        mem = sorted(set(int(x) for x in self.images))
        return Subgroup(self.codomain, tuple(mem), _is_normal(self.codomain, mem))

    def is_homomorphism(self) -> bool:
        img = self.images
        return bool(
            img[0] == 0
            and np.array_equal(img[self.domain.table], self.codomain.table[img[:, None], img[None, :]])
        )

    def key(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.images)


@dataclass(frozen=True)
class AbelianInvariants:
    divisors: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        ds = self.divisors
        if any(d <= 1 for d in ds) or any(ds[i + 1] % ds[i] for i in range(len(ds) - 1)):
            raise GroupError(f"not an invariant-factor chain: {ds}")

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def __str__(self) -> str:
        if not self.divisors:
            return "1"
        return " x ".join(f"Z_{d}" for d in self.divisors)


def conjugate(G: FiniteGroup, y: int, x: int) -> int:
    """``y x y^-1``."""
    return int(G.conj[y, x])


def commutator(G: FiniteGroup, x: int, y: int) -> int:
    """``x y x^-1 y^-1``."""
    t = G.table
    return int(t[t[x, y], t[G.inverse[x], G.inverse[y]]])


def subgroup_generated(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    members = G.closure(seed)
    return Subgroup(G, tuple(members), _is_normal(G, members))


def commutator_table(G: FiniteGroup) -> np.ndarray:
    t = G.table
    inv = G.inverse
    return t[t, t[inv[:, None], inv[None, :]]]


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    values = np.unique(commutator_table(G))
    return Subgroup(G, tuple(G.closure(int(v) for v in values)), True)


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal:
        raise GroupError("quotient requires a normal subgroup")
    mem = np.array(N.members, dtype=np.int64)
    label = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(G.order):
        if label[x] < 0:
            label[G.table[x, mem]] = len(reps)
            reps.append(x)
    r = np.array(reps, dtype=np.int64)
    qt = label[G.table[np.ix_(r, r)]]
    qinv = label[G.inverse[r]]
    names = tuple(G.names[x] + ("" if N.order == 1 else "N") for x in reps)
    gens = sorted(set(int(label[g]) for g in G.generators) - {0})
    Q = FiniteGroup(qt, qinv, names, tuple(gens))
    return Q, GroupHom(G, Q, label)


def abelian_invariants(G: FiniteGroup) -> AbelianInvariants:
    """Invariant factors of ``G`` (of its abelianization when nonabelian)."""
    if not G.is_abelian:
        G, _ = quotient_group(G, derived_subgroup(G))
    factors: list[int] = []
    while G.order > 1:
        orders = G.element_orders
        x = int(np.argmax(orders))
        factors.append(int(orders[x]))
        G, _ = quotient_group(G, subgroup_generated(G, [x]))
    return AbelianInvariants(tuple(reversed(factors)))


def divisor_count(n: int) -> int:
    if n < 1:
        raise ValueError("divisor_count needs n >= 1")
    count, d = 0, 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return count
