"""Naming small groups by matching against the built-in families.

Abelian groups are named by their invariants. A nonabelian group is compared
with every catalog family of the same order; the hits are listed, e.g.
``"Q:2 (order 8)"``. Groups with no hit get an isomorphism-invariant
certificate instead.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

from .families import alternating, dihedral, quaternion, sl23, symmetric
from .group import FiniteGroup, abelian_invariants
from .morphisms import are_isomorphic

CATALOG_MAX_ORDER = 64


def _tags_of_order(n: int) -> list[str]:
    tags = []
    if n % 2 == 0 and n // 2 >= 3:
        tags.append(f"D:{n // 2}")
    if n % 4 == 0 and n // 4 >= 2:
        tags.append(f"Q:{n // 4}")
    for k in range(3, 6):
        if factorial(k) == n:
            tags.append(f"S:{k}")
        if factorial(k) // 2 == n and k >= 4:
            tags.append(f"A:{k}")
    if n == 24:
        tags.append("SL23")
    return tags


@lru_cache(maxsize=None)
def _catalog_group(tag: str) -> FiniteGroup:
    fam, _, arg = tag.partition(":")
    if fam == "D":
        return dihedral(int(arg))
    if fam == "Q":
        return quaternion(int(arg))
    if fam == "S":
        return symmetric(int(arg), max_order=CATALOG_MAX_ORDER)
    if fam == "A":
        return alternating(int(arg), max_order=CATALOG_MAX_ORDER)
    return sl23()


def catalog_matches(G: FiniteGroup) -> list[str]:
    """Catalog tags (``D:n``, ``Q:n``, ``S:n``, ``A:n``, ``SL23``) isomorphic to ``G``."""
    if G.is_abelian or G.order > CATALOG_MAX_ORDER:
        return []
    return [t for t in _tags_of_order(G.order) if are_isomorphic(G, _catalog_group(t))]


def certificate(G: FiniteGroup) -> str:
    """Isomorphism-invariant summary: element-order counts and class sizes."""
    orders = G.element_orders.tolist()
    counts = ",".join(f"{k}:{orders.count(k)}" for k in sorted(set(orders)))
    classes = ",".join(map(str, sorted(G.class_sizes)))
    return f"element orders {{{counts}}}, class sizes [{classes}]"


def describe(G: FiniteGroup) -> str:
    if G.is_abelian:
        return str(abelian_invariants(G))
    hits = catalog_matches(G)
    if hits:
        return f"{' = '.join(hits)} (order {G.order})"
    return f"order {G.order}, {certificate(G)}"
