"""Homomorphism extension, enumeration and isomorphism testing."""

from __future__ import annotations

from collections import deque
from typing import Iterator, Sequence

import numpy as np

from .group import FiniteGroup, GroupError, GroupHom, OrderLimitError, _cayley_bfs, abelian_invariants

DEFAULT_ISO_BOUND = 64


def _extend(
    dom: FiniteGroup,
    gens: Sequence[int],
    imgs: Sequence[int],
    cod: FiniteGroup,
    injective: bool = False,
) -> np.ndarray | None:
    """Extend ``gens[i] -> imgs[i]`` over the subgroup the gens generate.

    Every Cayley-graph edge ``x -> x*g`` is checked, so a returned map is a
    homomorphism on that subgroup. Unreached elements stay ``-1``.
    """
    drows = dom.rows
    crows = cod.rows
    img = [-1] * dom.order
    img[0] = 0
    used = {0} if injective else None
    queue = deque([0])
    pairs = list(zip(gens, imgs))
    while queue:
        x = queue.popleft()
        fx = img[x]
        for g, h in pairs:
            y = drows[x][g]
            fy = crows[fx][h]
            cur = img[y]
            if cur < 0:
                if injective:
                    if fy in used:
                        return None
                    used.add(fy)
                img[y] = fy
                queue.append(y)
            elif cur != fy:
                return None
    return np.array(img, dtype=np.int64)


def hom_from_generator_images(
    dom: FiniteGroup,
    dom_gens: Sequence[int],
    images: Sequence[int],
    cod: FiniteGroup,
) -> GroupHom | None:
    """The homomorphism sending ``dom_gens`` to ``images``, if one exists.

    Words are taken from a breadth-first search over the Cayley graph in the
    given generator order, then the full pairwise property is checked.
    """
    if len(dom_gens) != len(images):
        raise GroupError("need one image per generator")
    if len(dom.closure(dom_gens)) != dom.order:
        raise GroupError("dom_gens do not generate the domain")
    order, parent, via = _cayley_bfs(dom.table, list(dom_gens))
    img = np.zeros(dom.order, dtype=np.int64)
    ims = np.asarray(images, dtype=np.int64)
    for x in order[1:]:
        img[x] = cod.table[img[parent[x]], ims[via[x]]]
    hom = GroupHom(dom, cod, img)
    return hom if hom.is_homomorphism() else None


def _search(
    dom: FiniteGroup,
    cod: FiniteGroup,
    exact_orders: bool,
    injective: bool,
) -> Iterator[np.ndarray]:
    gens = list(dom.generators)
    if not gens:
        yield np.zeros(dom.order, dtype=np.int64)
        return
    dord = dom.element_orders
    cord = cod.element_orders
    cands = []
    for g in gens:
        o = int(dord[g])
        if exact_orders:
            ok = cord == o
        else:
            ok = (o % cord) == 0
        cands.append([int(h) for h in np.flatnonzero(ok)])

    chosen: list[int] = []

    def rec(k: int) -> Iterator[np.ndarray]:
        for h in cands[k]:
            chosen.append(h)
            img = _extend(dom, gens[: k + 1], chosen, cod, injective)
            if img is not None:
                if k + 1 == len(gens):
                    yield img
                else:
                    yield from rec(k + 1)
            chosen.pop()

    yield from rec(0)


def enumerate_homs(dom: FiniteGroup, cod: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms ``dom -> cod``, lexicographic in generator images."""
    return [GroupHom(dom, cod, img) for img in _search(dom, cod, exact_orders=False, injective=False)]


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, bound: int = DEFAULT_ISO_BOUND) -> GroupHom | None:
    if max(G.order, H.order) > bound:
        raise OrderLimitError(f"isomorphism test limited to order <= {bound}")
    if G.order != H.order:
        return None
    if G.is_abelian != H.is_abelian or G.order_profile != H.order_profile:
        return None
    if G.class_sizes != H.class_sizes:
        return None
    if G.is_abelian and abelian_invariants(G) != abelian_invariants(H):
        return None
    for img in _search(G, H, exact_orders=True, injective=True):
        if (img >= 0).all():
            return GroupHom(G, H, img)
    return None


def are_isomorphic(G: FiniteGroup, H: FiniteGroup, bound: int = DEFAULT_ISO_BOUND) -> bool:
    return find_isomorphism(G, H, bound) is not None
