"""Nuclei, sublocale frames, open sublocales and regular-open algebras."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import Caps, default_caps
from .errors import CrossCheckFailed, NotAFrame, NotANucleus, SizeCap
from .lattice import (
    FinLattice,
    Topology,
    open_set_lattice,
    order_iso,
    poset_from_leq,
    sublattice_on,
    subset_name,
    topo_ops,
)
from .maps import LatticeMap, join_map, left_adjoint, preserves_finite_meets
from .overlap import booleanize, check_overlap_algebra, positivity


@dataclass(frozen=True, eq=False)
class Nucleus:
    """A validated inflationary idempotent meet-preserving self-map."""

    lattice: FinLattice
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]


def nucleus(L: FinLattice, images) -> Nucleus:
    """Validate the three nucleus laws; witnesses go into the error."""
    if not L.is_frame():
        raise NotAFrame("nuclei live on frames")
    imgs = tuple(images)
    if len(imgs) != L.size:
        raise NotANucleus(("totality", len(imgs)))
    for x in range(L.size):
        if not L.leq(x, imgs[x]):
            raise NotANucleus(("inflationary", x))
    for x in range(L.size):
        if imgs[imgs[x]] != imgs[x]:
            raise NotANucleus(("idempotent", x))
    for x in range(L.size):
        for y in range(L.size):
            if imgs[L.meet[x][y]] != L.meet[imgs[x]][imgs[y]]:
                raise NotANucleus(("meet_preserving", x, y))
    return Nucleus(L, imgs)


def sublocale_frame(j: Nucleus):
    """Fixed-point frame of a nucleus, its quotient map, and the left
    adjoint of the quotient map when that adjoint exists.

    Joins inside the fixed points come out as j(x or y): the restricted
    order's least upper bound is the least fixed point above the raw join.
    """
    L = j.lattice
    fixed = [x for x in range(L.size) if j.images[x] == x]
    Lj = sublattice_on(L, fixed)
    index = {v: i for i, v in enumerate(fixed)}
    m_star = join_map(L, Lj, tuple(index[j.images[x]] for x in range(L.size)))
    exists_m = left_adjoint(m_star)
    return Lj, m_star, exists_m


def standard_nuclei(L: FinLattice, a: int):
    """The open, closed and Boolean nuclei at a single element."""
    if not L.is_frame():
        raise NotAFrame("nuclei live on frames")
    open_j = nucleus(L, tuple(L.impl[a][x] for x in range(L.size)))
    closed_j = nucleus(L, tuple(L.join[x][a] for x in range(L.size)))
    boolean_j = nucleus(L, tuple(L.impl[L.impl[x][a]][a] for x in range(L.size)))
    from .lattice import frame_report

    Lb, _, _ = sublocale_frame(boolean_j)
    if not frame_report(Lb).is_boolean:
        raise CrossCheckFailed("Boolean nucleus produced a non-Boolean sublocale")
    return open_j, closed_j, boolean_j


def enumerate_nuclei(L: FinLattice, cap: int | None = None,
                     caps: Caps | None = None) -> list[Nucleus]:
    """All nuclei, by backtracking over inflationary monotone assignments.

    Meet preservation is pruned first (it is the cheapest local
    constraint), idempotence is checked on completed assignments.
    Deterministic order: lexicographic in the image tuple.
    """
    caps = caps or default_caps()
    cap = cap if cap is not None else caps.nuclei_max
    n = L.size
    if n > cap:
        raise SizeCap(f"nucleus enumeration capped at {cap} elements")
    if not L.is_frame():
        raise NotAFrame("nuclei live on frames")
    up_sets = [[y for y in range(n) if L.leq(x, y)] for x in range(n)]
    images = [0] * n
    results: list[Nucleus] = []

    def backtrack(x: int):
        if x == n:
            try:
                results.append(nucleus(L, tuple(images)))
            except NotANucleus:
                pass
            return
        for v in up_sets[x]:
            ok = True
            for y in range(x):
                if L.leq(x, y) and not L.leq(v, images[y]):
                    ok = False
                    break
                if L.leq(y, x) and not L.leq(images[y], v):
                    ok = False
                    break
                m = L.meet[x][y]
                if m < x and images[m] != L.meet[v][images[y]]:
                    ok = False
                    break
            if ok:
                images[x] = v
                backtrack(x + 1)

    backtrack(0)
    return results


@dataclass(frozen=True)
class OpenSublocaleReport:
    is_open: bool
    witness: int | None
    witness_matches_adjoint: bool | None
    frobenius: bool | None
    sublocale_is_oalgebra: bool | None
    positivity_composes: bool | None
    discrete_kernel: int | None
    discrete_law: bool | None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def open_sublocale_report(j: Nucleus, caps: Caps | None = None) -> OpenSublocaleReport:
    """Openness of a sublocale, with the o-algebra and discrete-case laws.

    Openness is decided by scanning for an element a with j = (a -> .);
    the a = adjoint-of-top identity and Frobenius for the quotient map are
    cross-checked.  On an o-algebra carrier the sublocale is checked to be
    an o-algebra with the composed positivity; on a powerset carrier the
    kernel set P with jU = P -> U is computed.
    """
    L = j.lattice
    witness = None
    for a in range(L.size):
        if all(j.images[x] == L.impl[a][x] for x in range(L.size)):
            witness = a
            break
    Lj, m_star, exists_m = sublocale_frame(j)
    frobenius = None
    witness_matches = None
    # Frobenius for the quotient: exists(m*(x) meet y) = x meet exists(y)
    if exists_m is not None:
        frobenius = all(
            exists_m.images[Lj.meet[m_star.images[x]][y]]
            == L.meet[x][exists_m.images[y]]
            for x in range(L.size) for y in range(Lj.size)
        )
        if witness is not None:
            witness_matches = exists_m.images[Lj.top] == witness
    is_open = witness is not None
    if is_open != (frobenius or False):
        raise CrossCheckFailed("a->x form and Frobenius disagree on openness")
    sub_oa = None
    pos_comp = None
    if is_open and check_overlap_algebra(L, caps=caps).is_overlap_algebra:
        sub_oa = check_overlap_algebra(Lj, caps=caps).is_overlap_algebra
        pos_comp = all(
            positivity(Lj, y) == positivity(L, exists_m.images[y])
            for y in range(Lj.size)
        )
    kernel = None
    discrete_law = None
    if L.atoms_of is not None:
        # positivity of the sublocale: its bottom is j(empty), not empty
        kernel = 0
        for x in range(L.atoms_of):
            if j.images[1 << x] != j.images[L.bottom]:
                kernel |= 1 << x
        discrete_law = all(
            j.images[U] == L.impl[kernel][U] for U in range(L.size)
        )
    return OpenSublocaleReport(
        is_open, witness, witness_matches, frobenius, sub_oa, pos_comp,
        kernel, discrete_law,
    )


@dataclass(frozen=True)
class BijectionReport:
    oalgebra_sublocales: int
    join_maps_raw: int
    join_maps_principal: int
    counts_agree: bool
    mutually_inverse: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _join_maps_to_two_raw(L: FinLattice) -> list[tuple[int, ...]]:
    from .errors import NotJoinPreserving
    from .lattice import powerset_lattice

    two = powerset_lattice(1)
    out = []
    for mask in range(1 << L.size):
        imgs = tuple(mask >> x & 1 for x in range(L.size))
        try:
            join_map(L, two, imgs)
        except NotJoinPreserving:
            continue
        out.append(imgs)
    return out


def _join_maps_to_two_principal(L: FinLattice) -> list[tuple[int, ...]]:
    # kernels of join maps to the truth-value algebra are principal ideals
    out = []
    for c in range(L.size):
        out.append(tuple(0 if L.leq(x, c) else 1 for x in range(L.size)))
    return out


def sublocale_joinmap_bijection(L: FinLattice, caps: Caps | None = None) -> BijectionReport:
    """The bijection between o-algebra sublocales and join maps to the
    two-element algebra, verified in both directions with two independent
    enumerations of the maps."""
    caps = caps or default_caps()
    raw = _join_maps_to_two_raw(L)
    principal = _join_maps_to_two_principal(L)
    counts_agree = sorted(raw) == sorted(principal)
    nuclei = enumerate_nuclei(L, caps=caps)
    oa_nuclei = []
    for j in nuclei:
        Lj, _, _ = sublocale_frame(j)
        if check_overlap_algebra(Lj, caps=caps).is_overlap_algebra:
            oa_nuclei.append(j)

    def phi_of(j: Nucleus) -> tuple[int, ...]:
        bot = j.images[L.bottom]
        return tuple(0 if j.images[x] == bot else 1 for x in range(L.size))

    def j_of(phi: tuple[int, ...]) -> tuple[int, ...]:
        imgs = []
        for y in range(L.size):
            acc = L.bottom
            for x in range(L.size):
                if all(phi[L.meet[z][x]] <= phi[L.meet[z][y]]
                       for z in range(L.size)):
                    acc = L.join[acc][x]
            imgs.append(acc)
        return tuple(imgs)

    mutually = True
    phis = set()
    for j in oa_nuclei:
        phi = phi_of(j)
        phis.add(phi)
        if phi not in set(raw):
            mutually = False
        if j_of(phi) != j.images:
            mutually = False
    for phi in raw:
        jp = j_of(phi)
        j = nucleus(L, jp)
        Lj, _, _ = sublocale_frame(j)
        if not check_overlap_algebra(Lj, caps=caps).is_overlap_algebra:
            mutually = False
        if phi_of(j) != phi:
            mutually = False
    if len(phis) != len(oa_nuclei):
        mutually = False
    return BijectionReport(
        len(oa_nuclei), len(raw), len(principal),
        counts_agree and len(raw) == len(oa_nuclei), mutually,
    )


def regular_open_algebra(T: Topology, caps: Caps | None = None) -> FinLattice:
    """The o-algebra of opens with U = int(cl(U)), ordered by inclusion.

    Joins come out as int(cl(union)); the result is cross-checked against
    the double-negation fixed points of the open-set frame.
    """
    caps = caps or default_caps()
    regs = []
    for U in T.opens:
        interior, closure, _ = topo_ops(T, U)
        # U open, so int U = U; regularity is U = int cl U
        int_cl = 0
        cl = closure
        for V in T.opens:
            if V & ~cl == 0:
                int_cl |= V
        if int_cl == U:
            regs.append(U)
    P = poset_from_leq(len(regs), lambda a, b: regs[a] & ~regs[b] == 0)
    names = tuple(subset_name(U) for U in regs)
    from .lattice import lattice_from_poset

    R = lattice_from_poset(P, names=names, caps=caps)
    R = FinLattice(R.poset, R.meet, R.join, R.bottom, R.top, R.impl,
                   names, None, tuple(regs))
    # joins must be int cl of the union
    for a in range(R.size):
        for b in range(R.size):
            union = regs[a] | regs[b]
            cl = topo_ops(T, union)[1]
            int_cl = 0
            for V in T.opens:
                if V & ~cl == 0:
                    int_cl |= V
            if regs[R.join[a][b]] != int_cl:
                raise CrossCheckFailed("regular-open join is not int(cl(union))")
    if not check_overlap_algebra(R, caps=caps).is_overlap_algebra:
        raise CrossCheckFailed("regular opens failed the o-algebra check")
    frame = open_set_lattice(T, caps=caps)
    negneg, _, _ = booleanize(frame, caps=caps)
    if order_iso(R, negneg) is None:
        raise CrossCheckFailed("regular opens differ from the double-negation fixed points")
    return R
