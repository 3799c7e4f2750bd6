"""Multiplicative Lie algebra structures on a finite group.

A structure is a star table ``star[x, y] = x * y`` satisfying, for all a, b, c:

1. ``a * a = 1``
2. ``a * bc = (a * b) ^b(a * c)``
3. ``ab * c = ^a(b * c) (a * c)``
4. ``((a * b) * ^b c) ((b * c) * ^c a) ((c * a) * ^a b) = 1``
5. ``^c(a * b) = ^c a * ^c b``

Structures are found two independent ways: as homomorphisms out of the
exterior square ``G ^ G`` that pass a Jacobi-kernel test and an equivariance
test, and by brute force over the values on pairs of generators.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .cosets import EnumerationLimits
from .group import (
    AbelianInvariants,
    FiniteGroup,
    GroupError,
    GroupHom,
    Subgroup,
    _cayley_bfs,
    _closure,
    abelian_invariants,
    commutator_table,
    derived_subgroup,
    subgroup_generated,
)
from .morphisms import are_isomorphic, enumerate_homs, hom_from_generator_images
from .wedge import DEFAULT_WEDGE_ORDER, WedgeSquare, exterior_square

log = logging.getLogger(__name__)

Method = Literal["wedge", "direct", "both"]

AXIOMS = (
    "a*a = 1",
    "a*(bc) = (a*b) ^b(a*c)",
    "(ab)*c = ^a(b*c) (a*c)",
    "Jacobi identity",
    "^c(a*b) = ^c a * ^c b",
)


class StructureError(ValueError):
    """Invalid star table for the requested operation."""


class EnumerationMismatch(AssertionError):
    """The two enumerators disagree; an internal invariant violation."""


@dataclass(frozen=True, eq=False)
class MlaStructure:
    base: FiniteGroup
    star: np.ndarray

    def __post_init__(self) -> None:
        self.star.setflags(write=False)

    def key(self) -> tuple[int, ...]:
        return tuple(self.star.ravel().tolist())

    def __eq__(self, other) -> bool:
        return isinstance(other, MlaStructure) and np.array_equal(self.star, other.star)

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        return {"order": self.base.order, "star": self.star.tolist()}

    @classmethod
    def from_json(cls, G: FiniteGroup, obj) -> "MlaStructure":
        """Inverse of ``to_json``; checks shape and entry range, not the axioms."""
        if not isinstance(obj, dict) or "star" not in obj:
            raise StructureError('expected an object with keys "order" and "star"')
        if obj.get("order", G.order) != G.order:
            raise StructureError(f"table is for order {obj['order']}, group has order {G.order}")
        try:
            S = np.array(obj["star"], dtype=np.int64)
        except (TypeError, ValueError, OverflowError) as exc:
            raise StructureError(f"star is not an integer matrix: {exc}") from None
        if S.shape != (G.order, G.order):
            raise StructureError(f"star table has shape {S.shape}, expected {(G.order, G.order)}")
        if S.size and (S.min() < 0 or S.max() >= G.order):
            raise StructureError("star table entries out of range")
        return cls(G, S)


@dataclass(frozen=True)
class AxiomReport:
    per_axiom: tuple[bool, bool, bool, bool, bool]
    first_violation: tuple[int, tuple[int, ...]] | None = None
    violations: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.per_axiom)


@dataclass(frozen=True, eq=False)
class StructureClass:
    ideal: Subgroup
    ideal_invariants: AbelianInvariants | None
    certificate: tuple
    representatives: tuple[MlaStructure, ...]
    is_trivial_class: bool
    is_commutator_class: bool

    @property
    def ideal_order(self) -> int:
        return self.ideal.order


def trivial_structure(G: FiniteGroup) -> MlaStructure:
    return MlaStructure(G, np.zeros((G.order, G.order), dtype=np.int64))


def commutator_structure(G: FiniteGroup) -> MlaStructure:
    return MlaStructure(G, commutator_table(G))


def _first(bad: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(bad)
    return None if len(hits) == 0 else tuple(int(i) for i in hits[0])


def verify_axioms(G: FiniteGroup, star) -> AxiomReport:
    """Check all five axioms over every element, pair and triple."""
    S = np.asarray(star, dtype=np.int64)
    n = G.order
    if S.shape != (n, n):
        raise StructureError(f"star table has shape {S.shape}, expected {(n, n)}")
    if n and (S.min() < 0 or S.max() >= n):
        raise StructureError("star table entries out of range")
    t, C = G.table, G.conj
    ar = np.arange(n)
    bad = [
        np.diag(S) != 0,
        S[:, t] != t[S[:, :, None], C[ar[None, :, None], S[:, None, :]]],
        S[t] != t[C[ar[:, None, None], S[None, :, :]], S[:, None, :]],
        t[
            t[S[S[:, :, None], C[None, :, :]], S[S[None, :, :], C.T[:, None, :]]],
            S[S.T[:, None, :], C[:, :, None]],
        ]
        != 0,
        C[ar[None, None, :], S[:, :, None]] != S[C.T[:, None, :], C.T[None, :, :]],
    ]
    violations = {}
    for i, b in enumerate(bad):
        w = _first(b)
        if w is not None:
            violations[i + 1] = w
    per = tuple(i + 1 not in violations for i in range(5))
    first = None
    if violations:
        k = min(violations)
        first = (k, violations[k])
    return AxiomReport(per, first, violations)


def structure_from_hom(ws: WedgeSquare, phi: GroupHom) -> MlaStructure:
    """``x * y = phi(x ^ y)``; validity is not checked."""
    if ws.kind != "exterior":
        raise StructureError("structures come from the exterior square")
    if phi.domain is not ws.W or phi.codomain is not ws.base:
        raise StructureError("phi must map the exterior square to its base group")
    return MlaStructure(ws.base, phi.images[ws.pair_map])


def _jacobi_kernel_ok(ws: WedgeSquare, phi_images: np.ndarray) -> bool:
    pm, wt = ws.pair_map, ws.W.table
    C = ws.base.conj
    S = phi_images[pm]
    t1 = pm[S[:, :, None], C[None, :, :]]
    t2 = pm[S[None, :, :], C.T[:, None, :]]
    t3 = pm[S.T[:, None, :], C[:, :, None]]
    return bool((phi_images[wt[wt[t1, t2], t3]] == 0).all())


def _equivariant_ok(ws: WedgeSquare, phi_images: np.ndarray) -> bool:
    C = ws.base.conj
    S = phi_images[ws.pair_map]
    return bool(np.array_equal(C[:, S], S[C[:, :, None], C[:, None, :]]))


def check_wedge_conditions(ws: WedgeSquare, phi: GroupHom) -> bool:
    """Both conditions under which ``phi`` defines a structure.

    (i) every Jacobi defect ``(phi(x^y) ^ ^y z)(phi(y^z) ^ ^z x)(phi(z^x) ^ ^x y)``
    lies in ``ker phi``. Checking the normal generators suffices because the
    kernel is normal. (ii) ``^z phi(x ^ y) = phi(^z x ^ ^z y)``.
    """
    if phi.domain is not ws.W or phi.codomain is not ws.base:
        raise StructureError("phi must map the exterior square to its base group")
    return _jacobi_kernel_ok(ws, phi.images) and _equivariant_ok(ws, phi.images)


@dataclass
class FilterStats:
    homs: int = 0
    failed_jacobi: int = 0
    failed_equivariance: int = 0
    accepted: int = 0


def _sorted_unique(structs: Iterable[MlaStructure]) -> list[MlaStructure]:
    uniq = {s.key(): s for s in structs}
    return [uniq[k] for k in sorted(uniq)]


def _pmap(fn, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def structures_from_wedge(ws: WedgeSquare, threads: int = 1, stats: FilterStats | None = None) -> list[MlaStructure]:
    G = ws.base
    homs = enumerate_homs(ws.W, G)

    def judge(phi: GroupHom):
        if not _jacobi_kernel_ok(ws, phi.images):
            return "jacobi"
        if not _equivariant_ok(ws, phi.images):
            return "equivariance"
        return structure_from_hom(ws, phi)

    verdicts = _pmap(judge, homs, threads)
    stats = stats if stats is not None else FilterStats()
    stats.homs = len(homs)
    out = []
    for v in verdicts:
        if v == "jacobi":
            stats.failed_jacobi += 1
        elif v == "equivariance":
            stats.failed_equivariance += 1
        else:
            out.append(v)
    stats.accepted = len(out)
    for s in out:
        rep = verify_axioms(G, s.star)
        if not rep.valid:
            raise EnumerationMismatch(f"wedge-derived table violates axiom {rep.first_violation}")
    log.debug("wedge filter on order %d: %s", G.order, stats)
    return _sorted_unique(out)


def enumerate_structures_via_wedge(
    G: FiniteGroup,
    limits: EnumerationLimits | None = None,
    max_order: int = DEFAULT_WEDGE_ORDER,
    threads: int = 1,
    stats: FilterStats | None = None,
) -> list[MlaStructure]:
    return structures_from_wedge(exterior_square(G, limits, max_order), threads, stats)


def minimal_generating_set(G: FiniteGroup, max_size: int = 3) -> list[int]:
    """Lexicographically first generating set of least size."""
    if G.order == 1:
        return []
    rows = G.rows
    for k in range(1, max_size + 1):
        for combo in itertools.combinations(range(1, G.order), k):
            if len(_closure(rows, list(combo))) == G.order:
                return list(combo)
    raise GroupError(f"group needs more than {max_size} generators")


def _extend_seed(G: FiniteGroup, gens: list[int], seed: dict[tuple[int, int], int], bfs) -> np.ndarray:
    """Fill a star table from its values on generator pairs using axioms 2 and 3."""
    order, parent, via = bfs
    n = G.order
    t, C = G.table, G.conj
    k = len(gens)
    # cols[x, j] = x * gens[j], built from (x' s_i) * s_j = ^x'(s_i * s_j) (x' * s_j)
    cols = np.zeros((n, k), dtype=np.int64)
    gen_block = np.array([[seed[i, j] for j in range(k)] for i in range(k)], dtype=np.int64)
    for x in order[1:]:
        xp, i = parent[x], via[x]
        cols[x] = t[C[xp, gen_block[i]], cols[xp]]
    S = np.zeros((n, n), dtype=np.int64)
    # S[x, y s_j] = (x * y) ^y(x * s_j)
    for y in order[1:]:
        yp, j = parent[y], via[y]
        S[:, y] = t[S[:, yp], C[yp, cols[:, j]]]
    return S


def enumerate_structures_direct(G: FiniteGroup, max_generators: int = 3, threads: int = 1) -> list[MlaStructure]:
    """Brute force over ``s * t`` for unordered generator pairs ``s < t``.

    ``s * s = 1`` and ``t * s = (s * t)^-1`` are forced, and the rest of the
    table follows from axioms 2 and 3, so the seed space is ``|G|^(k(k-1)/2)``.
    """
    gens = minimal_generating_set(G, max_generators)
    k = len(gens)
    bfs = _cayley_bfs(G.table, gens)
    pairs = list(itertools.combinations(range(k), 2))
    inv = G.inverse

    def attempt(values):
        seed = {(i, i): 0 for i in range(k)}
        for (i, j), v in zip(pairs, values):
            seed[i, j] = v
            seed[j, i] = int(inv[v])
        S = _extend_seed(G, gens, seed, bfs)
        return S if verify_axioms(G, S).valid else None

    seeds = list(itertools.product(range(G.order), repeat=len(pairs)))
    found = [MlaStructure(G, S) for S in _pmap(attempt, seeds, threads) if S is not None]
    if k == 2 and len(found) > G.order:
        raise EnumerationMismatch("more structures than seeds")
    return _sorted_unique(found)


def _subgroup_lookup(sub: Subgroup) -> np.ndarray:
    lookup = np.full(sub.parent.order, -1, dtype=np.int64)
    lookup[np.array(sub.members, dtype=np.int64)] = np.arange(sub.order)
    return lookup


def enumerate_equivariant_homs(G: FiniteGroup) -> list[GroupHom]:
    """Homomorphisms ``f: [G, G] -> G`` with ``f(^g h) = ^g f(h)``.

    The domain is ``[G, G]`` as a stand-alone group whose element ``i`` is the
    ``i``-th member of the derived subgroup.
    """
    D = derived_subgroup(G)
    H = D.as_group()
    lookup = _subgroup_lookup(D)
    mem = np.array(D.members, dtype=np.int64)
    conj_idx = lookup[G.conj[:, mem]]  # [g, i] -> index of ^g members[i]
    out = []
    for f in enumerate_homs(H, G):
        img = f.images
        if np.array_equal(img[conj_idx], G.conj[:, img]):
            out.append(f)
    return out


def structure_from_equivariant_hom(G: FiniteGroup, f: GroupHom) -> MlaStructure:
    """``x * y = f([x, y])``, the structure an equivariant hom determines."""
    D = derived_subgroup(G)
    lookup = _subgroup_lookup(D)
    return MlaStructure(G, f.images[lookup[commutator_table(G)]])


def star_ideal(G: FiniteGroup, s: MlaStructure, check: bool = True) -> Subgroup:
    """The subgroup generated by all values ``a * b``; it is always normal."""
    if check and not verify_axioms(G, s.star).valid:
        raise StructureError("star table is not a multiplicative Lie structure")
    values = np.unique(s.star)
    vset = set(values.tolist())
    if not set(np.unique(G.conj[:, values]).tolist()) <= vset:
        raise StructureError("star values are not closed under conjugation")
    ideal = subgroup_generated(G, values.tolist())
    if not ideal.is_normal:
        raise StructureError("ideal generated by star values is not normal")
    return ideal


def induced_hom_from_structure(ws: WedgeSquare, s: MlaStructure) -> GroupHom:
    """The homomorphism ``G ^ G -> G`` with ``a ^ b -> a * b``."""
    if ws.kind != "exterior" or s.base is not ws.base:
        raise StructureError("structure and exterior square must share the base group")
    images = [int(s.star[a, b]) for a, b in ws.generator_pairs()]
    phi = hom_from_generator_images(ws.W, ws.W.generators, images, ws.base)
    if phi is None or not np.array_equal(phi.images[ws.pair_map], s.star):
        raise StructureError("star table does not factor through the exterior square")
    return phi


def _certificate(H: FiniteGroup) -> tuple:
    return (H.order, H.order_profile, H.class_sizes)


def classify_structures(G: FiniteGroup, tables: Sequence[MlaStructure]) -> list[StructureClass]:
    """Group structures by the isomorphism type of their ideal ``G * G``."""
    derived = derived_subgroup(G)
    buckets: list[dict] = []
    for s in tables:
        ideal = star_ideal(G, s, check=False)
        H = ideal.as_group()
        inv = abelian_invariants(H) if H.is_abelian else None
        cert = _certificate(H)
        for b in buckets:
            if b["cert"] == cert and b["inv"] == inv and (inv is not None or are_isomorphic(b["group"], H)):
                b["members"].append((s, ideal))
                break
        else:
            buckets.append({"cert": cert, "inv": inv, "group": H, "members": [(s, ideal)]})
    classes = []
    for b in buckets:
        reps = tuple(s for s, _ in b["members"])
        ideals = [i for _, i in b["members"]]
        commutator_ideal = next((i for i in ideals if i.members == derived.members), None)
        classes.append(
            StructureClass(
                ideal=commutator_ideal or ideals[0],
                ideal_invariants=b["inv"],
                certificate=b["cert"],
                representatives=reps,
                is_trivial_class=b["group"].order == 1,
                is_commutator_class=commutator_ideal is not None,
            )
        )
    classes.sort(key=lambda c: (c.ideal_order, c.ideal_invariants.divisors if c.ideal_invariants else (), c.certificate))
    return classes


@dataclass
class EnumerationReport:
    group: FiniteGroup
    structures: list[MlaStructure]
    classes: list[StructureClass]
    lie_simple: bool
    method: str
    agreement: bool | None = None
    stats: FilterStats | None = None
    wedge: WedgeSquare | None = None


def enumerate_structures(
    G: FiniteGroup,
    method: Method = "both",
    limits: EnumerationLimits | None = None,
    max_order: int = DEFAULT_WEDGE_ORDER,
    threads: int = 1,
    wedge: WedgeSquare | None = None,
) -> EnumerationReport:
    """Enumerate, cross-check (``method='both'``), and classify."""
    if method not in ("wedge", "direct", "both"):
        raise ValueError(f"unknown method {method!r}")
    stats = None
    via_wedge = direct = None
    if method in ("wedge", "both"):
        stats = FilterStats()
        ws = wedge or exterior_square(G, limits, max_order)
        wedge = ws
        via_wedge = structures_from_wedge(ws, threads, stats)
    if method in ("direct", "both"):
        direct = enumerate_structures_direct(G, threads=threads)
    agreement = None
    if method == "both":
        agreement = [s.key() for s in via_wedge] == [s.key() for s in direct]
        if not agreement:
            raise EnumerationMismatch(
                f"wedge enumeration found {len(via_wedge)} tables, direct found {len(direct)}"
            )
    structures = via_wedge if via_wedge is not None else direct
    for s in structures:
        _check_structure_invariants(G, s)
    classes = classify_structures(G, structures)
    simple = all(c.is_trivial_class or c.is_commutator_class for c in classes)
    return EnumerationReport(G, structures, classes, simple, method, agreement, stats, wedge)


def _check_structure_invariants(G: FiniteGroup, s: MlaStructure) -> None:
    S = s.star
    if not np.array_equal(S.T, G.inverse[S]):
        raise EnumerationMismatch("antisymmetry star[y, x] = star[x, y]^-1 fails")


def is_lie_simple(
    G: FiniteGroup,
    limits: EnumerationLimits | None = None,
    max_order: int = DEFAULT_WEDGE_ORDER,
    method: Method = "wedge",
) -> bool:
    """Only the trivial and commutator ideal classes are realized."""
    return enumerate_structures(G, method, limits, max_order).lie_simple
