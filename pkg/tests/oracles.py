"""Independent brute-force oracles and the shared test corpus.

Nothing here calls into the code paths being checked: closures are naive set
iteration, invariants come from sympy's Smith normal form, and homomorphisms
are found by exhaustive generator-image search.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from mlaw import (
    alternating,
    cyclic,
    cyclic_product,
    dihedral,
    direct_product,
    klein,
    parse_presentation,
    quaternion,
    symmetric,
)
from mlaw.cosets import group_from_cosets, todd_coxeter


def naive_closure(G, seed) -> set[int]:
    rows = G.table.tolist()
    got = {0} | set(seed)
    while True:
        new = {rows[x][y] for x in got for y in got} - got
        if not new:
            return got
        got |= new


def naive_commutators(G) -> set[int]:
    rows, inv = G.table.tolist(), G.inverse.tolist()
    return {rows[rows[x][y]][rows[inv[x]][inv[y]]] for x in range(G.order) for y in range(G.order)}


def naive_derived(G) -> set[int]:
    return naive_closure(G, naive_commutators(G))


def naive_order(G, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = int(G.table[y, x])
        k += 1
    return k


def snf_invariants(G) -> list[int]:
    """Invariant factors of an abelian group via Smith normal form.

    Rows span the relation lattice of Z^k -> G for the stored generators: each
    generator's order times its unit vector, plus every exponent vector in the
    box ``[0, o_1) x ... x [0, o_k)`` whose product is the identity.
    """
    gens = list(G.generators)
    if not gens:
        return []
    orders = [naive_order(G, g) for g in gens]
    rows = [[o if i == j else 0 for j in range(len(gens))] for i, o in enumerate(orders)]
    for exps in itertools.product(*(range(o) for o in orders)):
        x = 0
        for g, e in zip(gens, exps):
            for _ in range(e):
                x = int(G.table[x, g])
        if x == 0 and any(exps):
            rows.append(list(exps))
    D = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    return sorted(d for d in diag if d > 1)


def brute_homs(dom, cod) -> set[tuple[int, ...]]:
    """All homomorphisms, by trying every generator-image tuple."""
    gens = list(dom.generators)
    drows, crows = dom.table.tolist(), cod.table.tolist()
    out = set()
    for imgs in itertools.product(range(cod.order), repeat=len(gens)):
        f = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, imgs):
                    y, v = drows[x][g], crows[f[x]][h]
                    if y in f:
                        if f[y] != v:
                            ok = False
                            break
                    else:
                        f[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok:
            continue
        if all(f[drows[x][y]] == crows[f[x]][f[y]] for x in range(dom.order) for y in range(dom.order)):
            out.add(tuple(f[x] for x in range(dom.order)))
    return out


def from_presentation(text: str):
    p = parse_presentation(text)
    return group_from_cosets(todd_coxeter(p), p)[0]


def _corpus_factories():
    return {
        "Z1": lambda: cyclic(1),
        "Z2": lambda: cyclic(2),
        "Z3": lambda: cyclic(3),
        "Z4": lambda: cyclic(4),
        "Z5": lambda: cyclic(5),
        "Z6": lambda: cyclic(6),
        "Z8": lambda: cyclic(8),
        "Z12": lambda: cyclic(12),
        "V4": klein,
        "Z2xZ4": lambda: cyclic_product(2, 4),
        "Z3xZ3": lambda: cyclic_product(3, 3),
        "Z2xZ6": lambda: cyclic_product(2, 6),
        "Z4xZ4": lambda: cyclic_product(4, 4),
        "Z2xZ8": lambda: cyclic_product(2, 8),
        "Z2^3": lambda: direct_product(klein(), cyclic(2)),
        "S3": lambda: symmetric(3),
        "D3": lambda: dihedral(3),
        "D4": lambda: dihedral(4),
        "D5": lambda: dihedral(5),
        "D6": lambda: dihedral(6),
        "D7": lambda: dihedral(7),
        "D8": lambda: dihedral(8),
        "Q2": lambda: quaternion(2),
        "Q3": lambda: quaternion(3),
        "Q4": lambda: quaternion(4),
        "A4": lambda: alternating(4),
        "Z2xD4": lambda: direct_product(cyclic(2), dihedral(4)),
        "Z2xQ2": lambda: direct_product(cyclic(2), quaternion(2)),
        "Z3:Z4pres": lambda: from_presentation("<x,y | x^4, y^3, x y x^-1 = y^-1>"),
    }


CORPUS_NAMES = tuple(_corpus_factories())


@lru_cache(maxsize=None)
def corpus_group(name: str):
    return _corpus_factories()[name]()
