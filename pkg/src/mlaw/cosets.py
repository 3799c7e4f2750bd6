"""Todd-Coxeter enumeration of the cosets of the trivial subgroup.

Relator-tracing (HLT) definitions, Felsch-style deduction processing and
union-find coincidence handling. Before enumeration, relators of length one
or two are used to identify generators with the identity or with each other,
which is what keeps the wedge-square presentations (one generator per
ordered pair of group elements) tractable.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .group import FiniteGroup
from .presentation import Presentation

log = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 1_000_000


class CosetLimitError(RuntimeError):
    """The enumeration outgrew its limits (group infinite or limits too small)."""

    def __init__(self, message: str, live: int, total: int):
        super().__init__(f"{message} (live cosets: {live}, total defined: {total})")
        self.live = live
        self.total = total


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_passes: int = 16

    def __post_init__(self) -> None:
        if self.max_cosets < 1 or self.max_passes < 1:
            raise ValueError("enumeration limits must be positive")


@dataclass(frozen=True, eq=False)
class CosetTable:
    """A complete coset table in standard (breadth-first) numbering.

    ``entries[c, 2*i]`` is ``c`` times generator ``i`` and ``entries[c, 2*i + 1]``
    is ``c`` times its inverse. Coset 0 is the trivial subgroup itself.
    """

    generators: tuple[str, ...]
    entries: np.ndarray
    limits: EnumerationLimits

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    def column(self, symbol: str, exponent: int = 1) -> np.ndarray:
        i = self.generators.index(symbol)
        return self.entries[:, 2 * i + (1 if exponent < 0 else 0)]


def _letters(p: Presentation) -> list[list[int]]:
    index = {g: i for i, g in enumerate(p.generators)}
    out = []
    for r in p.relators:
        w: list[int] = []
        for sym, e in r:
            x = 2 * index[sym] + (1 if e < 0 else 0)
            w.extend([x] * abs(e))
        out.append(w)
    return out


def _free_reduce(w: list[int]) -> list[int]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    i, j = 0, len(out) - 1
    while i < j and out[i] == out[j] ^ 1:
        i += 1
        j -= 1
    return out[i : j + 1]


def _canonical(w: list[int]) -> tuple[int, ...]:
    """Least cyclic rotation of ``w`` or its inverse."""
    inv = [x ^ 1 for x in reversed(w)]
    best = None
    for v in (w, inv):
        for i in range(len(v)):
            rot = tuple(v[i:] + v[:i])
            if best is None or rot < best:
                best = rot
    return best


class _LetterClasses:
    """Union-find on generator letters; node ``E`` stands for the identity.

    Invariant: ``find(x ^ 1) == find(x) ^ 1`` for every letter, so each class
    of letters is paired with the class of their inverses.
    """

    def __init__(self, ngens: int):
        self.E = 2 * ngens
        self.parent = list(range(2 * ngens + 1))

    def inv(self, x: int) -> int:
        return x if x == self.E else x ^ 1

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Record ``x = y``; False if that would make a letter its own inverse."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return True
        if rx == self.inv(ry):
            return False
        # the identity wins, then the lowest generator, then the positive letter
        win, lose = (rx, ry) if rx < ry else (ry, rx)
        if lose == self.E:
            win, lose = lose, win
        self.parent[lose] = win
        self.parent[self.inv(lose)] = self.inv(win)
        return True


def _eliminate(ngens: int, relators: list[list[int]]):
    """Identify generators through short relators, then rewrite and dedupe."""
    uf = _LetterClasses(ngens)
    rels = relators
    changed = True
    while changed:
        changed = False
        out = []
        for r in rels:
            w = _free_reduce([y for y in (uf.find(x) for x in r) if y != uf.E])
            if not w:
                continue
            if len(w) == 1:
                uf.union(w[0], uf.E)
                changed = True
                continue
            if len(w) == 2 and w[0] != w[1]:
                # w0 w1 = 1  =>  w0 = w1^-1
                if uf.union(w[0], w[1] ^ 1):
                    changed = True
                    continue
            out.append(w)
        rels = out
    seen = set()
    final = []
    for r in rels:
        w = _free_reduce([y for y in (uf.find(x) for x in r) if y != uf.E])
        if not w:
            continue
        key = _canonical(w)
        if key not in seen:
            seen.add(key)
            final.append(list(key))
    return uf, final


class _Enumerator:
    def __init__(self, ncols: int, relators: list[list[int]], limits: EnumerationLimits):
        self.ncols = ncols
        self.relators = sorted(relators, key=len)
        self.limits = limits
        self.table: list[list[int] | None] = [[-1] * ncols]
        self.p = [0]
        self.live = 1
        self.changes = 0
        self.deductions: list[tuple[int, int]] = []
        by_letter: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        seen = set()
        for r in self.relators:
            for v in (r, [x ^ 1 for x in reversed(r)]):
                for i in range(len(v)):
                    rot = tuple(v[i:] + v[:i])
                    if rot not in seen:
                        seen.add(rot)
                        by_letter[rot[0]].append(rot)
        self.by_letter = by_letter

    def rep(self, c: int) -> int:
        p = self.p
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, x: int) -> int:
        if self.live >= self.limits.max_cosets:
            raise CosetLimitError("coset limit exceeded", self.live, len(self.p))
        d = len(self.table)
        row = [-1] * self.ncols
        row[x ^ 1] = c
        self.table.append(row)
        self.p.append(d)
        self.table[c][x] = d
        self.live += 1
        self.changes += 1
        self.deductions.append((c, x))
        return d

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.p[b] = a
        self.live -= 1
        self.changes += 1
        queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        table = self.table
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                table[d][xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] >= 0:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][xi] >= 0:
                    self.merge(mu, table[nu][xi], queue)
                else:
                    table[mu][x] = nu
                    table[nu][xi] = mu
                    self.deductions.append((mu, x))
            table[g] = None

    def scan(self, c: int, w, fill: bool) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            row = table[f]
            while i <= j and row[w[i]] >= 0:
                f = row[w[i]]
                row = table[f]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            row = table[b]
            while j >= i and row[w[j] ^ 1] >= 0:
                b = row[w[j] ^ 1]
                row = table[b]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                x = w[i]
                table[f][x] = b
                table[b][x ^ 1] = f
                self.changes += 1
                self.deductions.append((f, x))
                return
            if not fill:
                return
            self.define(f, w[i])

    def process_deductions(self) -> None:
        p = self.p
        table = self.table
        by_letter = self.by_letter
        while self.deductions:
            c, x = self.deductions.pop()
            if p[c] != c:
                continue
            for w in by_letter.get(x, ()):
                if p[c] != c:
                    break
                self.scan(c, w, False)
            if p[c] != c:
                continue
            d = table[c][x]
            if d < 0 or p[d] != d:
                continue
            for w in by_letter.get(x ^ 1, ()):
                if p[d] != d:
                    break
                self.scan(d, w, False)

    def sweep(self) -> bool:
        """One HLT pass; True if nothing had to be defined or merged."""
        start = self.changes
        c = 0
        while c < len(self.table):
            if self.p[c] == c:
                for w in self.relators:
                    self.scan(c, w, True)
                    self.process_deductions()
                    if self.p[c] != c:
                        break
                if self.p[c] == c:
                    for x in range(self.ncols):
                        row = self.table[c]
                        if row[x] < 0:
                            self.define(c, x)
                            self.process_deductions()
                            if self.p[c] != c:
                                break
            c += 1
        return self.changes == start

    def run(self) -> np.ndarray:
        for _ in range(self.limits.max_passes):
            if self.sweep():
                return self.standardize()
        raise CosetLimitError("pass limit exceeded", self.live, len(self.p))

    def standardize(self) -> np.ndarray:
        """Renumber live cosets in breadth-first order from coset 0."""
        table = self.table
        label = {0: 0}
        order = [0]
        k = 0
        while k < len(order):
            row = table[order[k]]
            for x in range(self.ncols):
                d = self.rep(row[x])
                if d not in label:
                    label[d] = len(order)
                    order.append(d)
            k += 1
        out = np.empty((len(order), self.ncols), dtype=np.int64)
        for c in order:
            out[label[c]] = [label[self.rep(d)] for d in table[c]]
        return out


def todd_coxeter(p: Presentation, limits: EnumerationLimits | None = None) -> CosetTable:
    """Enumerate the cosets of the trivial subgroup of the group ``p`` presents."""
    limits = limits or EnumerationLimits()
    k = len(p.generators)
    uf, rels = _eliminate(k, _letters(p))
    roots = sorted({uf.find(2 * i) for i in range(k)} - {uf.E})
    kept = sorted({r >> 1 for r in roots})
    col = {g: i for i, g in enumerate(kept)}
    log.debug("todd_coxeter: %d generators -> %d, %d relators -> %d", k, len(kept), len(p.relators), len(rels))
    renum = [[2 * col[x >> 1] + (x & 1) for x in r] for r in rels]
    if kept:
        reduced = _Enumerator(2 * len(kept), renum, limits).run()
    else:
        reduced = np.zeros((1, 0), dtype=np.int64)
    n = reduced.shape[0]
    ident = np.arange(n, dtype=np.int64)
    full = np.empty((n, 2 * k), dtype=np.int64)
    for i in range(k):
        for s in (0, 1):
            r = uf.find(2 * i + s)
            full[:, 2 * i + s] = ident if r == uf.E else reduced[:, 2 * col[r >> 1] + (r & 1)]
    table = CosetTable(tuple(p.generators), full, limits)
    _check_complete(table, p)
    return table


def _check_complete(t: CosetTable, p: Presentation) -> None:
    e = t.entries
    n = t.rows
    ar = np.arange(n)
    if (e < 0).any():
        raise AssertionError("coset table has undefined entries")
    for i in range(len(t.generators)):
        if not np.array_equal(e[e[:, 2 * i], 2 * i + 1], ar):
            raise AssertionError(f"columns of generator {t.generators[i]} are not mutually inverse")
    by_len: dict[int, list[list[int]]] = defaultdict(list)
    for w in _letters(p):
        by_len[len(w)].append(w)
    for length, ws in by_len.items():
        R = np.array(ws, dtype=np.int64)
        for start in range(0, len(R), 4096):
            chunk = R[start : start + 4096]
            cur = np.broadcast_to(ar, (len(chunk), n))
            for pos in range(length):
                cur = e[cur, chunk[:, pos][:, None]]
            if not (cur == ar).all():
                raise AssertionError("a relator does not trace to a closed loop")


def group_from_cosets(t: CosetTable, p: Presentation) -> tuple[FiniteGroup, dict[str, int]]:
    """Turn a complete table into a group; coset ``c`` is the element ``w_c``.

    Element 0 is the identity coset. ``x * y`` is obtained by tracing the
    schreier word of ``y`` from coset ``x``, done for all ``x`` at once by
    composing generator columns.
    """
    e = t.entries
    if (e < 0).any():
        raise ValueError("coset table is incomplete")
    n = t.rows
    perms = np.empty((n, n), dtype=np.int64)
    perms[0] = np.arange(n)
    done = np.zeros(n, dtype=bool)
    done[0] = True
    names = [""] * n
    names[0] = "1"
    frontier = [0]
    gen_cols = [(2 * i + s, t.generators[i] + ("^-1" if s else "")) for i in range(len(t.generators)) for s in (0, 1)]
    while frontier:
        nxt = []
        for c in frontier:
            for col, label in gen_cols:
                d = int(e[c, col])
                if not done[d]:
                    done[d] = True
                    perms[d] = e[perms[c], col]
                    names[d] = label if c == 0 else f"{names[c]}*{label}"
                    nxt.append(d)
        frontier = nxt
    table = perms.T.copy()  # table[x, y] = perms[y][x]
    gen_map = {g: int(e[0, 2 * i]) for i, g in enumerate(t.generators)}
    inv = np.argmax(table == 0, axis=1).astype(np.int64)
    gens = []
    members = {0}
    from .group import _closure

    rows = table.tolist()
    for g in t.generators:
        x = gen_map[g]
        if x not in members:
            gens.append(x)
            members = set(_closure(rows, gens))
    return FiniteGroup(table, inv, tuple(names), tuple(gens)), gen_map
