"""Nonabelian tensor and exterior squares, and the Schur multiplier.

``G (x) G`` is presented on one generator per ordered pair ``(a, b)`` subject to

    ab (x) c = (^a b (x) ^a c)(a (x) c)
    a (x) bc = (a (x) b)(^b a (x) ^b c)

and ``G ^ G`` adds ``a ^ a = 1`` and ``(a ^ b)(b ^ a) = 1``. Both are turned
into concrete groups by coset enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .cosets import EnumerationLimits, group_from_cosets, todd_coxeter
from .group import (
    AbelianInvariants,
    FiniteGroup,
    GroupHom,
    OrderLimitError,
    Subgroup,
    abelian_invariants,
    commutator_table,
    derived_subgroup,
)
from .morphisms import hom_from_generator_images
from .presentation import Presentation

DEFAULT_WEDGE_ORDER = 24

Kind = Literal["tensor", "exterior"]


class WedgeInvariantError(AssertionError):
    """A computed square violates its defining relations; an internal bug."""


@dataclass(frozen=True, eq=False)
class WedgeSquare:
    base: FiniteGroup
    W: FiniteGroup
    kind: Kind
    pair_map: np.ndarray
    action: np.ndarray

    def pair(self, a: int, b: int) -> int:
        return int(self.pair_map[a, b])

    def generator_pairs(self) -> list[tuple[int, int]]:
        """For each generator of ``W``, an ordered pair that maps onto it."""
        out = []
        for w in self.W.generators:
            a, b = np.argwhere(self.pair_map == w)[0]
            out.append((int(a), int(b)))
        return out


@dataclass(frozen=True, eq=False)
class SchurData:
    chi: GroupHom
    multiplier: Subgroup
    invariants: AbelianInvariants


def _symbol(a: int, b: int) -> str:
    return f"t_{a}_{b}"


def square_presentation(G: FiniteGroup, kind: Kind) -> Presentation:
    n = G.order
    rows = G.rows
    conj = G.conj.tolist()
    letters: dict[tuple[int, int, int], tuple[str, int]] = {}

    def lt(a: int, b: int, e: int) -> tuple[str, int]:
        key = (a, b, e)
        if key not in letters:
            letters[key] = (_symbol(a, b), e)
        return letters[key]

    rels = []
    if kind == "exterior":
        for a in range(n):
            rels.append((lt(a, a, 1),))
        for a in range(n):
            for b in range(n):
                if a != b:
                    rels.append((lt(a, b, 1), lt(b, a, 1)))
    for a in range(n):
        ca = conj[a]
        ra = rows[a]
        for b in range(n):
            for c in range(n):
                # ab.c (a.c)^-1 (^a b . ^a c)^-1
                rels.append((lt(ra[b], c, 1), lt(a, c, -1), lt(ca[b], ca[c], -1)))
                # a.bc (^b a . ^b c)^-1 (a.b)^-1
                cb = conj[b]
                rels.append((lt(a, rows[b][c], 1), lt(cb[a], cb[c], -1), lt(a, b, -1)))
    gens = tuple(_symbol(a, b) for a in range(n) for b in range(n))
    return Presentation(gens, tuple(_merge(r) for r in rels))


def _merge(r):
    # adjacent equal symbols collapse so the Presentation invariants hold
    out: list[tuple[str, int]] = []
    for sym, e in r:
        if out and out[-1][0] == sym:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((sym, e))
    return tuple(out)


def _build(G: FiniteGroup, kind: Kind, limits: EnumerationLimits | None, max_order: int) -> WedgeSquare:
    if G.order > max_order:
        raise OrderLimitError(f"group order {G.order} exceeds the wedge bound {max_order}")
    p = square_presentation(G, kind)
    table = todd_coxeter(p, limits)
    W, gen_map = group_from_cosets(table, p)
    n = G.order
    pm = np.array([[gen_map[_symbol(a, b)] for b in range(n)] for a in range(n)], dtype=np.int64)
    ws = WedgeSquare(G, W, kind, pm, np.zeros((n, W.order), dtype=np.int64))
    action = conjugation_action(ws)
    ws = WedgeSquare(G, W, kind, pm, action)
    check_square(ws)
    return ws


def tensor_square(G: FiniteGroup, limits: EnumerationLimits | None = None, max_order: int = DEFAULT_WEDGE_ORDER) -> WedgeSquare:
    return _build(G, "tensor", limits, max_order)


def exterior_square(G: FiniteGroup, limits: EnumerationLimits | None = None, max_order: int = DEFAULT_WEDGE_ORDER) -> WedgeSquare:
    return _build(G, "exterior", limits, max_order)


def check_square(ws: WedgeSquare) -> None:
    """Assert the defining relations and the action laws over all triples."""
    G, W, pm = ws.base, ws.W, ws.pair_map
    wt = W.table
    gt, conj = G.table, G.conj
    if len(W.closure(np.unique(pm).tolist())) != W.order:
        raise WedgeInvariantError("pair values do not generate the square")
    if ws.kind == "exterior":
        if (np.diag(pm) != 0).any():
            raise WedgeInvariantError("a ^ a != 1")
        if (wt[pm, pm.T] != 0).any():
            raise WedgeInvariantError("(a ^ b)(b ^ a) != 1")
    # pm[ab, c] == pm[^a b, ^a c] * pm[a, c]
    lhs = pm[gt]  # [a, b, c] -> pm[ab, c]
    rhs = wt[pm[conj[:, :, None], conj[:, None, :]], pm[:, None, :]]
    if not np.array_equal(lhs, rhs):
        raise WedgeInvariantError("left expansion relation fails")
    # pm[a, bc] == pm[a, b] * pm[^b a, ^b c]
    lhs = pm[np.arange(G.order)[:, None, None], gt[None, :, :]]
    cb = conj  # cb[b, x]
    rhs = wt[pm[:, :, None], pm[cb.T[:, :, None], cb[None, :, :]]]
    if not np.array_equal(lhs, rhs):
        raise WedgeInvariantError("right expansion relation fails")
    act = ws.action
    for z in range(G.order):
        if not np.array_equal(act[z][pm], pm[np.ix_(conj[z], conj[z])]):
            raise WedgeInvariantError(f"action of element {z} does not match pairs")


def conjugation_action(ws: WedgeSquare) -> np.ndarray:
    """``action[z, w] = ^z w``, extended from ``^z (a ^ b) = ^z a ^ ^z b``."""
    G, W, pm = ws.base, ws.W, ws.pair_map
    pairs = ws.generator_pairs()
    conj = G.conj
    action = np.empty((G.order, W.order), dtype=np.int64)
    for z in range(G.order):
        images = [int(pm[conj[z, a], conj[z, b]]) for a, b in pairs]
        hom = hom_from_generator_images(W, W.generators, images, W)
        if hom is None or len(set(hom.images.tolist())) != W.order:
            raise WedgeInvariantError(f"conjugation by element {z} is not an automorphism")
        action[z] = hom.images
    # action[z1 z2] == action[z1] o action[z2]
    composed = action[np.arange(G.order)[:, None, None], action[None, :, :]]
    if not np.array_equal(action[G.table], composed):
        raise WedgeInvariantError("conjugation action is not compatible with products")
    return action


def commutator_hom(ws: WedgeSquare) -> SchurData:
    """``chi(a ^ b) = [a, b]`` and its kernel, the Schur multiplier."""
    if ws.kind != "exterior":
        raise ValueError("commutator_hom needs an exterior square")
    G, W = ws.base, ws.W
    comm = commutator_table(G)
    images = [int(comm[a, b]) for a, b in ws.generator_pairs()]
    chi = hom_from_generator_images(W, W.generators, images, G)
    if chi is None:
        raise WedgeInvariantError("commutator map does not extend to a homomorphism")
    if not np.array_equal(chi.images[ws.pair_map], comm):
        raise WedgeInvariantError("chi(a ^ b) != [a, b]")
    derived = derived_subgroup(G)
    if chi.image().members != derived.members:
        raise WedgeInvariantError("chi is not onto the derived subgroup")
    kernel = chi.kernel()
    mem = np.array(kernel.members, dtype=np.int64)
    if not (W.table[mem] == W.table[:, mem].T).all():
        raise WedgeInvariantError("Schur multiplier is not central")
    if W.order != kernel.order * derived.order:
        raise WedgeInvariantError("|G ^ G| != |M(G)| |[G, G]|")
    if G.is_abelian and not (W.is_abelian and kernel.order == W.order):
        raise WedgeInvariantError("for abelian G the exterior square must be abelian and equal M(G)")
    return SchurData(chi, kernel, abelian_invariants(kernel.as_group()))
