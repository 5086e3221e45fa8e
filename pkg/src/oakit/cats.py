"""Categorical structure: products, zero object, equalizers and the Pow functor.

Universal properties are always verified against an explicit finite family
of cone sources; reports record that family and never claim more.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .config import Caps, default_caps
from .errors import CrossCheckFailed, PreconditionFailed, ShapeMismatch, SizeCap
from .lattice import FinLattice, order_iso, powerset_lattice, product_lattice, sublattice_on
from .maps import (
    LatticeMap,
    Relation,
    compose,
    dagger,
    enumerate_join_maps,
    enumerate_ofrm_arrows,
    identity_map,
    join_map,
    preserves_finite_meets,
    rel_compose,
    rel_dagger,
    rel_to_map,
    same_lattice,
)
from .overlap import check_overlap_algebra


def default_cone_family(extra: Sequence[FinLattice] = (), max_size: int = 8):
    """Boolean algebras up to max_size plus any extra carriers."""
    family = []
    k = 0
    while (1 << k) <= max_size:
        family.append(powerset_lattice(k))
        k += 1
    family.extend(extra)
    return family


@dataclass(frozen=True)
class ProductWitness:
    product: FinLattice
    factors: tuple[FinLattice, ...]
    projections: tuple[LatticeMap, ...]
    projection_daggers: tuple[LatticeMap, ...]
    pos_law: bool

    def as_dict(self) -> dict:
        return {
            "size": self.product.size,
            "factor_sizes": [L.size for L in self.factors],
            "pos_law": self.pos_law,
        }


def oa_product(Ls: Sequence[FinLattice], caps: Caps | None = None) -> ProductWitness:
    """Product of o-algebras with validated projections and their daggers."""
    caps = caps or default_caps()
    for L in Ls:
        if not check_overlap_algebra(L, caps=caps).is_overlap_algebra:
            raise PreconditionFailed("every factor must be an overlap algebra")
    prod, projections = product_lattice(Ls, caps=caps)
    if not check_overlap_algebra(prod, caps=caps).is_overlap_algebra:
        raise CrossCheckFailed("product of o-algebras failed the o-algebra check")
    # a tuple is positive iff some component is
    pos_law = all(
        (p != prod.bottom) == any(
            pi.images[p] != pi.target.bottom for pi in projections)
        for p in range(prod.size)
    )
    if not pos_law:
        raise CrossCheckFailed("componentwise positivity law failed")
    daggers = []
    for k, pk in enumerate(projections):
        Lk = Ls[k]
        dag_imgs = []
        for z in range(Lk.size):
            candidates = [
                p for p in range(prod.size)
                if pk.images[p] == z and all(
                    projections[i].images[p] == Ls[i].bottom
                    for i in range(len(Ls)) if i != k)
            ]
            dag_imgs.append(candidates[0])
        dk = join_map(Lk, prod, dag_imgs)
        # defining biconditional of the dagger, plus the section identity
        for p in range(prod.size):
            for z in range(Lk.size):
                if prod.ov(p, dk.images[z]) != Lk.ov(pk.images[p], z):
                    raise CrossCheckFailed(
                        f"projection dagger biconditional fails at ({p},{z})")
        for z in range(Lk.size):
            if pk.images[dk.images[z]] != z:
                raise CrossCheckFailed("projection dagger is not a section")
        daggers.append(dk)
    return ProductWitness(prod, tuple(Ls), tuple(projections), tuple(daggers), pos_law)


def tupling(witness: ProductWitness, gs: Sequence[LatticeMap],
            caps: Caps | None = None) -> LatticeMap:
    """The mediating arrow into the product, with its dagger formula verified."""
    if len(gs) != len(witness.factors):
        raise ShapeMismatch("one component arrow per factor is required")
    if not gs:
        raise ShapeMismatch("tupling needs at least one component")
    M = gs[0].source
    for g, Lk in zip(gs, witness.factors):
        if not same_lattice(g.source, M):
            raise ShapeMismatch("component arrows must share their source")
        if not same_lattice(g.target, Lk):
            raise ShapeMismatch("component target does not match the factor")
    prod = witness.product
    h_imgs = []
    for x in range(M.size):
        candidates = [
            p for p in range(prod.size)
            if all(witness.projections[i].images[p] == gs[i].images[x]
                   for i in range(len(gs)))
        ]
        h_imgs.append(candidates[0])
    h = join_map(M, prod, h_imgs)
    for i, g in enumerate(gs):
        if compose(witness.projections[i], h).images != g.images:
            raise CrossCheckFailed(f"projection {i} of the tupling differs")
    hd = dagger(h, caps=caps)
    gds = [dagger(g, caps=caps) for g in gs]
    for p in range(prod.size):
        expected = M.join_all(
            gds[i].images[witness.projections[i].images[p]]
            for i in range(len(gs)))
        if hd.images[p] != expected:
            raise CrossCheckFailed(f"tupling dagger formula fails at {p}")
    return h


@dataclass(frozen=True)
class ZeroObjectReport:
    per_object: tuple[tuple[int, int, int, bool], ...]
    holds: bool

    def as_dict(self) -> dict:
        return {
            "per_object": [
                {"size": s, "arrows_from_zero": a, "arrows_to_zero": b,
                 "mutually_dagger": d}
                for s, a, b, d in self.per_object
            ],
            "holds": self.holds,
        }


def zero_object_check(family: Sequence[FinLattice] | None = None,
                      caps: Caps | None = None) -> ZeroObjectReport:
    """Pow(0) is initial and terminal, with the two unique arrows mutually dagger."""
    zero = powerset_lattice(0)
    if family is None:
        family = default_cone_family()
    rows = []
    ok = True
    for L in family:
        outs = enumerate_join_maps(zero, L)
        ins = enumerate_join_maps(L, zero)
        mutually = (
            len(outs) == 1 and len(ins) == 1
            and dagger(outs[0], caps=caps).images == ins[0].images
            and dagger(ins[0], caps=caps).images == outs[0].images
        )
        rows.append((L.size, len(outs), len(ins), mutually))
        ok = ok and len(outs) == 1 and len(ins) == 1 and mutually
    return ZeroObjectReport(tuple(rows), ok)


@dataclass(frozen=True)
class EqualizerWitness:
    object: FinLattice | None
    arrow: LatticeMap | None
    universal: bool
    evidence: dict

    def as_dict(self) -> dict:
        return {
            "object_size": self.object.size if self.object is not None else None,
            "universal": self.universal,
            "evidence": self.evidence,
        }


def _equalizing_subsets(L: FinLattice, E: list[int]):
    """Sub-o-algebra subsets of E inside L (closure under ops, with 0 and 1)."""
    if len(E) > 16:
        raise SizeCap("equalizer subset search capped at 16 elements")
    out = []
    Eset = set(E)
    if L.bottom not in Eset or L.top not in Eset:
        return out
    others = [e for e in E if e not in (L.bottom, L.top)]
    for mask in range(1 << len(others)):
        S = {L.bottom, L.top}
        for i, e in enumerate(others):
            if mask >> i & 1:
                S.add(e)
        closed = all(
            L.meet[x][y] in S and L.join[x][y] in S and L.impl[x][y] in S
            for x in S for y in S
        )
        if closed:
            out.append(sorted(S))
    return out


def ofrm_equalizer(
    f: LatticeMap, g: LatticeMap,
    test_family: Sequence[FinLattice] | None = None,
    caps: Caps | None = None,
) -> EqualizerWitness:
    """Equalizer of a parallel pair in the finite-meet-preserving category.

    The equalizing subset is refined to its largest sub-o-algebra (they can
    differ when the pair does not itself preserve meets), and the universal
    property is then verified against the bounded cone family.
    """
    L = f.source
    if not (same_lattice(g.source, L) and same_lattice(f.target, g.target)):
        raise ShapeMismatch("arrows are not parallel")
    if "preserves_joins" not in f.tags or "preserves_joins" not in g.tags:
        raise PreconditionFailed("both arrows must preserve joins")
    if L.impl is None:
        raise PreconditionFailed("source must be a frame")
    E = [x for x in range(L.size) if f.images[x] == g.images[x]]
    subsets = _equalizing_subsets(L, E)
    evidence: dict = {"equalizing_set_size": len(E),
                      "implication_closed": sorted(E) in subsets}
    if not subsets:
        return EqualizerWitness(None, None, False, evidence)
    best = max(subsets, key=len)
    contains_all = all(set(S) <= set(best) for S in subsets)
    evidence["object_is_maximum"] = contains_all
    obj = sublattice_on(L, best)
    e = join_map(obj, L, tuple(best))
    if test_family is None:
        test_family = default_cone_family(extra=(L, f.target))
    best_set = set(best)
    index = {v: i for i, v in enumerate(best)}
    universal = contains_all
    cones = 0
    for X in test_family:
        for u in enumerate_ofrm_arrows(X, L):
            if any(f.images[u.images[x]] != g.images[u.images[x]]
                   for x in range(X.size)):
                continue
            cones += 1
            if not set(u.images) <= best_set:
                universal = False
                continue
            w = join_map(X, obj, tuple(index[v] for v in u.images))
            if not preserves_finite_meets(w):
                universal = False
            if compose(e, w).images != u.images:
                universal = False
    evidence["cones_checked"] = cones
    evidence["family_sizes"] = [X.size for X in test_family]
    return EqualizerWitness(obj, e, universal, evidence)


def equalizer_search(
    f: LatticeMap, g: LatticeMap, candidates: Sequence[FinLattice],
    test_family: Sequence[FinLattice] | None = None,
    caps: Caps | None = None,
) -> EqualizerWitness | None:
    """Bounded exhaustive search for an equalizer in the join-map category.

    Enumerates injective arrows from the candidate objects, keeps the
    equalizing ones, and tests the universal property against the cone
    family.  Returns the first witness found, or None.
    """
    L = f.source
    if not (same_lattice(g.source, L) and same_lattice(f.target, g.target)):
        raise ShapeMismatch("arrows are not parallel")
    if test_family is None:
        test_family = default_cone_family(extra=(L,))
    cones: list[LatticeMap] = []
    for X in test_family:
        for h in enumerate_join_maps(X, L):
            if all(f.images[h.images[x]] == g.images[h.images[x]]
                   for x in range(X.size)):
                cones.append(h)
    for E in candidates:
        for e in enumerate_join_maps(E, L):
            if not e.is_injective():
                continue
            if any(f.images[e.images[x]] != g.images[e.images[x]]
                   for x in range(E.size)):
                continue
            image = set(e.images)
            index = {v: x for x, v in enumerate(e.images)}
            universal = True
            for h in cones:
                if not set(h.images) <= image:
                    universal = False
                    break
                try:
                    w = join_map(h.source, E, tuple(index[v] for v in h.images))
                except Exception:
                    universal = False
                    break
                if compose(e, w).images != h.images:
                    universal = False
                    break
            if universal:
                return EqualizerWitness(E, e, True, {
                    "cones_checked": len(cones),
                    "family_sizes": [X.size for X in test_family],
                })
    return None


@dataclass(frozen=True)
class WeakEqualizerReport:
    equalizes: bool
    factors: bool
    identity_factorization: bool
    cones_checked: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def weak_equalizer_check(
    t: LatticeMap, f: LatticeMap, g: LatticeMap,
    test_family: Sequence[FinLattice],
) -> WeakEqualizerReport:
    """Check that t weakly equalizes f and g, with h = t.h for every cone h."""
    L = f.source
    if not (same_lattice(g.source, L) and same_lattice(t.target, L)):
        raise ShapeMismatch("shapes do not line up")
    equalizes = compose(f, t).images == compose(g, t).images
    factors = True
    identity_fact = True
    cones = 0
    image = set(t.images)
    for X in test_family:
        for h in enumerate_join_maps(X, L):
            if any(f.images[h.images[x]] != g.images[h.images[x]]
                   for x in range(X.size)):
                continue
            cones += 1
            th = tuple(t.images[v] for v in h.images)
            if th != h.images:
                identity_fact = False
            if not set(h.images) <= image:
                factors = False
    # h = t.h subsumes plain factorization; record both anyway
    factors = factors and identity_fact
    return WeakEqualizerReport(equalizes, factors, identity_fact, cones)


@dataclass(frozen=True)
class CounterexampleReport:
    join_preserving: bool
    equalized_by_t: bool
    weak: WeakEqualizerReport
    t_image_size: int
    max_equalizing_mono_image: int
    equalizer_found: bool
    verdict: str

    def as_dict(self) -> dict:
        return {
            "join_preserving": self.join_preserving,
            "equalized_by_t": self.equalized_by_t,
            "weak_equalizer": self.weak.as_dict(),
            "t_image_size": self.t_image_size,
            "max_equalizing_mono_image": self.max_equalizing_mono_image,
            "equalizer_found": self.equalizer_found,
            "verdict": self.verdict,
        }


def replay_counterexample(caps: Caps | None = None) -> CounterexampleReport:
    """The four-element Boolean algebra with a weakly-but-not-strongly
    equalizable parallel pair into the two-element one.

    Elements of L are masks over two points with a = {0} and -a = {1}.
    """
    L = powerset_lattice(2)
    two = powerset_lattice(1)
    a, na, top = 0b01, 0b10, 0b11
    f = join_map(L, two, (0, 1, 0, 1))
    g = join_map(L, two, (0, 1, 1, 1))
    t = join_map(L, L, (0, a, top, top))
    family = [powerset_lattice(0), powerset_lattice(1), powerset_lattice(2)]
    weak = weak_equalizer_check(t, f, g, family)
    t_image = len(set(t.images))
    candidates = [powerset_lattice(0), powerset_lattice(1), powerset_lattice(2)]
    max_mono_image = 0
    for E in candidates:
        for e in enumerate_join_maps(E, L):
            if not e.is_injective():
                continue
            if any(f.images[e.images[x]] != g.images[e.images[x]]
                   for x in range(E.size)):
                continue
            max_mono_image = max(max_mono_image, len(set(e.images)))
    found = equalizer_search(f, g, candidates, test_family=family, caps=caps)
    verdict = "NO_EQUALIZER" if found is None else "EQUALIZER_FOUND"
    return CounterexampleReport(
        True, weak.equalizes, weak, t_image, max_mono_image,
        found is not None, verdict,
    )


@dataclass(frozen=True)
class PowFunctorReport:
    relations: int
    join_maps: int
    faithful: bool
    full: bool
    dagger_preserved: bool
    functorial: bool
    functorial_samples: int
    coproduct_iso: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _all_relations(nX: int, nY: int):
    cells = [(x, y) for x in range(nX) for y in range(nY)]
    for mask in range(1 << len(cells)):
        yield Relation(nX, nY, frozenset(
            cells[i] for i in range(len(cells)) if mask >> i & 1))


def pow_functor_report(nX: int, nY: int, seed: int = 0,
                       caps: Caps | None = None) -> PowFunctorReport:
    """Fullness, faithfulness, dagger preservation and functoriality of the
    relation-to-inverse-image assignment, plus preservation of coproducts."""
    if nX > 3 or nY > 3:
        raise SizeCap("pow functor report capped at 3 points per side")
    caps = caps or default_caps()
    rels = list(_all_relations(nX, nY))
    maps = [rel_to_map(R, caps) for R in rels]
    images = [m.images for m in maps]
    faithful = len(set(images)) == len(rels)
    all_join_maps = enumerate_join_maps(powerset_lattice(nY), powerset_lattice(nX))
    full = set(images) == {m.images for m in all_join_maps}
    dag_ok = all(
        dagger(m, caps=caps).images == rel_to_map(rel_dagger(R), caps).images
        for R, m in zip(rels, maps)
    )
    # functoriality on composable triples X <- Y <- Z
    nZ = min(nX, 2)
    pairs = []
    if nX * nY <= 4 and nY * nZ <= 4:
        pairs = [(R, S) for R in _all_relations(nX, nY)
                 for S in _all_relations(nY, nZ)]
    else:
        rng = random.Random(seed)
        allR = list(_all_relations(nX, nY))
        allS = list(_all_relations(nY, nZ))
        pairs = [(rng.choice(allR), rng.choice(allS)) for _ in range(64)]
    functorial = all(
        rel_to_map(rel_compose(S, R), caps).images
        == compose(rel_to_map(R, caps), rel_to_map(S, caps)).images
        for R, S in pairs
    )
    # Pow of a disjoint union is the product of the Pows, via the split iso
    prod, _ = product_lattice([powerset_lattice(nX), powerset_lattice(nY)], caps)
    whole = powerset_lattice(nX + nY, caps=Caps(powerset_max=6))
    lowmask = (1 << nX) - 1
    coproduct_iso = True
    strideX = powerset_lattice(nY).size
    for m1 in range(whole.size):
        for m2 in range(whole.size):
            i1 = (m1 & lowmask) * strideX + (m1 >> nX)
            i2 = (m2 & lowmask) * strideX + (m2 >> nX)
            if whole.leq(m1, m2) != prod.leq(i1, i2):
                coproduct_iso = False
    return PowFunctorReport(
        len(rels), len(all_join_maps), faithful, full, dag_ok,
        functorial, len(pairs), coproduct_iso,
    )
