"""Concrete groups: permutation closures and the built-in families."""

from __future__ import annotations

import re
from collections import deque
from typing import Callable, Hashable, Sequence

import numpy as np

from .group import FiniteGroup, GroupError, OrderLimitError

DEFAULT_MAX_ORDER = 64

Perm = tuple[int, ...]

FAMILIES = ("dihedral", "quaternion", "symmetric", "alternating", "cyclic", "cyclic-product", "sl23", "klein")


def _close(
    gens: Sequence[Hashable],
    identity: Hashable,
    mul: Callable[[Hashable, Hashable], Hashable],
    max_order: int,
) -> tuple[list, list[list[int]], list[int]]:
    """Breadth-first closure; returns (elements, table, generator indices)."""
    elems = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in index:
                if len(elems) >= max_order:
                    raise OrderLimitError(f"closure exceeds maximum order {max_order}")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    gen_idx = [index[g] for g in gens]
    return elems, table, gen_idx


def _compose(p: Perm, q: Perm) -> Perm:
    # left to right: first p, then q
    return tuple(q[i] for i in p)


def cycle_string(p: Perm) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) or "()"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse cycle notation such as ``(1 2)(3 4 5)``; points are 1-based."""
    s = text.strip()
    if _CYCLE.sub("", s).strip():
        raise GroupError(f"bad cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(s):
        pts = [int(tok) for tok in body.replace(",", " ").split()]
        if any(p < 1 for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle {body!r}")
        cycles.append(pts)
    m = max([degree or 0] + [max(c) for c in cycles if c])
    img = list(range(m))
    moved = set()
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            if a - 1 in moved:
                raise GroupError(f"point {a} appears in two cycles")
            img[a - 1] = b - 1
        moved.update(p - 1 for p in c)
    return tuple(img)


def group_from_permutations(gens: Sequence[Sequence[int]], max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Closure of permutations given as 0-based image tuples.

    Products act left to right: in ``x*y`` the permutation ``x`` is applied first.
    """
    m = max([len(g) for g in gens] + [1])
    perms = []
    for g in gens:
        g = tuple(int(i) for i in g) + tuple(range(len(g), m))
        if sorted(g) != list(range(m)):
            raise GroupError(f"not a permutation: {g}")
        perms.append(g)
    identity = tuple(range(m))
    perms = [p for p in perms if p != identity]
    elems, table, gen_idx = _close(perms, identity, _compose, max_order)
    return _finish(table, [cycle_string(p) for p in elems], gen_idx)


def _finish(table, names, gens) -> FiniteGroup:
    t = np.array(table, dtype=np.int64)
    inv = np.argmax(t == 0, axis=1).astype(np.int64)
    seen = []
    for g in gens:
        if g != 0 and g not in seen:
            seen.append(g)
    return FiniteGroup(t, inv, tuple(names), tuple(seen))


def dihedral(n: int) -> FiniteGroup:
    """``<a, b | a^2, b^n, abab>`` of order 2n; generators (a, b)."""
    if n < 1:
        raise GroupError("dihedral needs n >= 1")
    elems = [(i, j) for i in (0, 1) for j in range(n)]
    index = {e: k for k, e in enumerate(elems)}

    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + k) % 2, ((-j if k else j) + l) % n)

    table = [[index[mul(x, y)] for y in elems] for x in elems]
    names = [_word(("a", i), ("b", j)) for i, j in elems]
    return _finish(table, names, [index[(1, 0)], index[(0, 1 % n)]])


def quaternion(n: int) -> FiniteGroup:
    """``<x, y | x^2 = y^n, x y x^-1 = y^-1>`` of order 4n; generators (x, y)."""
    if n < 2:
        raise GroupError("quaternion needs n >= 2")
    m = 2 * n
    elems = [(i, j) for i in (0, 1) for j in range(m)]
    index = {e: k for k, e in enumerate(elems)}

    def mul(x, y):
        (i, j), (k, l) = x, y
        e = (-j if k else j) + l + (n if i and k else 0)
        return ((i + k) % 2, e % m)

    table = [[index[mul(x, y)] for y in elems] for x in elems]
    names = [_word(("x", i), ("y", j)) for i, j in elems]
    return _finish(table, names, [index[(1, 0)], index[(0, 1)]])


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Sym(n) generated by (1 2) and (1 2 ... n)."""
    if n < 1:
        raise GroupError("symmetric needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(parse_cycles("(1 2)", n))
    if n >= 3:
        gens.append(parse_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n))
    return group_from_permutations(gens or [tuple(range(n))], max_order)


def alternating(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """A_n generated by the 3-cycles (1 2 k), k = 3..n."""
    if n < 1:
        raise GroupError("alternating needs n >= 1")
    gens = [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return group_from_permutations(gens or [tuple(range(n))], max_order)


def cyclic_product(m: int, n: int) -> FiniteGroup:
    """Z_m x Z_n with generators a = (1, 0), b = (0, 1)."""
    if m < 1 or n < 1:
        raise GroupError("cyclic-product needs m, n >= 1")
    elems = [(i, j) for i in range(m) for j in range(n)]
    index = {e: k for k, e in enumerate(elems)}
    table = [[index[((i + k) % m, (j + l) % n)] for (k, l) in elems] for (i, j) in elems]
    names = [_word(("a", i), ("b", j)) for i, j in elems]
    return _finish(table, names, [index[(1 % m, 0)], index[(0, 1 % n)]])


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic needs n >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _finish(table, [_word(("g", i)) for i in range(n)], [1 % n])


def klein() -> FiniteGroup:
    return cyclic_product(2, 2)


def sl23() -> FiniteGroup:
    """SL(2, 3) as 2x2 matrices over F_3."""

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    gens = [(1, 1, 0, 1), (0, 2, 1, 0)]
    elems, table, gen_idx = _close(gens, (1, 0, 0, 1), mul, 24)
    names = [f"[[{a},{b}],[{c},{d}]]" for a, b, c, d in elems]
    return _finish(table, names, gen_idx)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H``; element ``(g, h)`` has index ``g*|H| + h``."""
    n, m = G.order, H.order
    t = (G.table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(n * m, n * m)
    names = [f"({G.names[g]},{H.names[h]})" for g in range(n) for h in range(m)]
    gens = [g * m for g in G.generators] + list(H.generators)
    return _finish(t, names, gens)


def builtin_family(name: str, *params: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if name == "dihedral":
        (n,) = _arity(name, params, 1)
        return dihedral(n)
    if name == "quaternion":
        (n,) = _arity(name, params, 1)
        return quaternion(n)
    if name == "symmetric":
        (n,) = _arity(name, params, 1)
        return symmetric(n, max_order)
    if name == "alternating":
        (n,) = _arity(name, params, 1)
        return alternating(n, max_order)
    if name == "cyclic":
        (n,) = _arity(name, params, 1)
        return cyclic(n)
    if name == "cyclic-product":
        m, n = _arity(name, params, 2)
        return cyclic_product(m, n)
    if name == "sl23":
        _arity(name, params, 0)
        return sl23()
    if name == "klein":
        _arity(name, params, 0)
        return klein()
    raise GroupError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def _arity(name: str, params, k: int):
    if len(params) != k:
        raise GroupError(f"family {name!r} takes {k} parameter(s), got {len(params)}")
    return tuple(int(p) for p in params)


def _word(*parts: tuple[str, int]) -> str:
    out = []
    for sym, e in parts:
        if e == 1:
            out.append(sym)
        elif e:
            out.append(f"{sym}^{e}")
    return "".join(out) or "1"
