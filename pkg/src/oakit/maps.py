"""Join-preserving maps, adjoints, daggers, the Rel bridge and factorizations.

The dagger is always computed by the join formula
    g(y) = join of { x | for all z: z><x implies f(z)><y }
and then verified against the symmetry biconditional; the classical
formula -forall_f(-y) and the powerset singleton formula act as
cross-checks only.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .config import Caps, default_caps
from .errors import (
    CrossCheckFailed,
    NotJoinPreserving,
    NotSymmetrizable,
    PreconditionFailed,
    ShapeMismatch,
    SizeCap,
)
from .lattice import FinLattice, powerset_lattice, sublattice_on
from .overlap import check_overlap_algebra, join_irreducibles, positivity


@dataclass(frozen=True, eq=False)
class LatticeMap:
    """A total function between two FinLattices.

    tags records verified properties only; they are set by the validating
    constructors, never assumed.
    """

    source: FinLattice
    target: FinLattice
    images: tuple[int, ...]
    tags: frozenset[str] = frozenset()

    def __call__(self, x: int) -> int:
        return self.images[x]

    def same_as(self, other: "LatticeMap") -> bool:
        return (
            self.images == other.images
            and same_lattice(self.source, other.source)
            and same_lattice(self.target, other.target)
        )

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.size


def same_lattice(A: FinLattice, B: FinLattice) -> bool:
    return A is B or (
        A.size == B.size
        and A.poset.up == B.poset.up
        and A.meet == B.meet
        and A.join == B.join
    )


def identity_map(L: FinLattice) -> LatticeMap:
    return LatticeMap(L, L, tuple(range(L.size)),
                      tags=frozenset({"preserves_joins"}))


def join_map(src: FinLattice, tgt: FinLattice, images) -> LatticeMap:
    """Validate an assignment as join-preserving (empty and binary joins)."""
    imgs = tuple(images)
    if len(imgs) != src.size:
        raise ShapeMismatch(f"need {src.size} images, got {len(imgs)}")
    if imgs[src.bottom] != tgt.bottom:
        raise NotJoinPreserving(("bottom", imgs[src.bottom]))
    for x in range(src.size):
        for y in range(src.size):
            if imgs[src.join[x][y]] != tgt.join[imgs[x]][imgs[y]]:
                raise NotJoinPreserving((x, y))
    return LatticeMap(src, tgt, imgs, tags=frozenset({"preserves_joins"}))


def preserves_finite_meets(f: LatticeMap) -> bool:
    if f.images[f.source.top] != f.target.top:
        return False
    src, tgt = f.source, f.target
    return all(
        f.images[src.meet[x][y]] == tgt.meet[f.images[x]][f.images[y]]
        for x in range(src.size) for y in range(src.size)
    )


def preserves_implication(f: LatticeMap) -> bool:
    src, tgt = f.source, f.target
    if src.impl is None or tgt.impl is None:
        return False
    return all(
        f.images[src.impl[x][y]] == tgt.impl[f.images[x]][f.images[y]]
        for x in range(src.size) for y in range(src.size)
    )


def right_adjoint(f: LatticeMap) -> LatticeMap:
    """The upper adjoint y -> join { x | f(x) <= y }, verified exhaustively."""
    if "preserves_joins" not in f.tags:
        raise PreconditionFailed("right adjoint needs a join-preserving map")
    src, tgt = f.source, f.target
    imgs = tuple(
        src.join_all(x for x in range(src.size) if tgt.leq(f.images[x], y))
        for y in range(tgt.size)
    )
    for x in range(src.size):
        for y in range(tgt.size):
            if tgt.leq(f.images[x], y) != src.leq(x, imgs[y]):
                raise CrossCheckFailed(f"adjunction fails at ({x},{y})")
    return LatticeMap(tgt, src, imgs)


def left_adjoint(f: LatticeMap) -> LatticeMap | None:
    """The lower adjoint, defined when f preserves all (here: finite) meets."""
    if not preserves_finite_meets(f):
        return None
    src, tgt = f.source, f.target
    imgs = tuple(
        src.meet_all(x for x in range(src.size) if tgt.leq(y, f.images[x]))
        for y in range(tgt.size)
    )
    for y in range(tgt.size):
        for x in range(src.size):
            if src.leq(imgs[y], x) != tgt.leq(y, f.images[x]):
                raise CrossCheckFailed(f"left adjunction fails at ({y},{x})")
    return LatticeMap(tgt, src, imgs)


def adjoints(f: LatticeMap) -> tuple[LatticeMap, LatticeMap | None]:
    return right_adjoint(f), left_adjoint(f)


def dagger(f: LatticeMap, caps: Caps | None = None) -> LatticeMap:
    """The symmetric of f, by the join formula, verified and cross-checked."""
    if "preserves_joins" not in f.tags:
        raise PreconditionFailed("dagger needs a join-preserving map")
    src, tgt = f.source, f.target
    for name, L in (("source", src), ("target", tgt)):
        if not check_overlap_algebra(L, caps=caps).is_overlap_algebra:
            raise PreconditionFailed(f"{name} is not an overlap algebra")
    n, m = src.size, tgt.size
    imgs = []
    for y in range(m):
        acc = src.bottom
        for x in range(n):
            if all(not src.ov(z, x) or tgt.ov(f.images[z], y) for z in range(n)):
                acc = src.join[acc][x]
        imgs.append(acc)
    g = tuple(imgs)
    for x in range(n):
        for y in range(m):
            if tgt.ov(f.images[x], y) != src.ov(x, g[y]):
                raise NotSymmetrizable((x, y))
    _dagger_crosschecks(f, g)
    return join_map(tgt, src, g)


def _dagger_crosschecks(f: LatticeMap, g: tuple[int, ...]) -> None:
    src, tgt = f.source, f.target
    if src.impl is not None and tgt.impl is not None:
        from .lattice import frame_report

        if frame_report(src).is_boolean and frame_report(tgt).is_boolean:
            fa = right_adjoint(f)
            for y in range(tgt.size):
                if g[y] != src.neg(fa.images[tgt.neg(y)]):
                    raise CrossCheckFailed(
                        f"dagger disagrees with -forall(-y) at {y}")
    if src.atoms_of is not None:
        for y in range(tgt.size):
            mask = 0
            for k in range(src.atoms_of):
                if tgt.ov(f.images[1 << k], y):
                    mask |= 1 << k
            if g[y] != mask:
                raise CrossCheckFailed(
                    f"dagger disagrees with the singleton formula at {y}")


@dataclass(frozen=True)
class SymmetricPairReport:
    symmetric: bool
    symmetric_witness: tuple | None
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    conditions_match: bool
    absorption: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__, symmetric_witness=(
            list(self.symmetric_witness) if self.symmetric_witness else None))


def symmetric_pair_report(f: LatticeMap, g: LatticeMap) -> SymmetricPairReport:
    """Symmetry biconditional versus the four conjugate-pair conditions."""
    src, tgt = f.source, f.target
    if not (same_lattice(g.source, tgt) and same_lattice(g.target, src)):
        raise ShapeMismatch("g must run opposite to f")
    symmetric = True
    wit = None
    for x in range(src.size):
        for y in range(tgt.size):
            if tgt.ov(f.images[x], y) != src.ov(x, g.images[y]):
                symmetric, wit = False, (x, y)
                break
        if not symmetric:
            break
    c1 = all(not positivity(tgt, f.images[x]) or positivity(src, x)
             for x in range(src.size))
    c2 = all(not positivity(src, g.images[y]) or positivity(tgt, y)
             for y in range(tgt.size))
    c3 = all(
        tgt.leq(tgt.meet[f.images[x]][y], f.images[src.meet[x][g.images[y]]])
        for x in range(src.size) for y in range(tgt.size)
    )
    c4 = all(
        src.leq(src.meet[x][g.images[y]], g.images[tgt.meet[f.images[x]][y]])
        for x in range(src.size) for y in range(tgt.size)
    )
    conds = c1 and c2 and c3 and c4
    if conds != symmetric:
        raise CrossCheckFailed("conjugate conditions disagree with symmetry")
    absorption = True
    if symmetric:
        absorption = all(
            tgt.leq(f.images[x], f.images[g.images[f.images[x]]])
            for x in range(src.size)
        )
    return SymmetricPairReport(symmetric, wit, c1, c2, c3, c4, True, absorption)


@dataclass(frozen=True)
class MorphismReport:
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    cond5: bool
    cond6: bool
    cond7: bool
    preserves_finite_meets: bool
    dagger_adjoint: bool
    open_map: bool
    preserves_all_structure: bool
    injective: bool
    surjective: bool
    is_iso: bool
    mono: bool
    epi: bool
    law_failures: tuple[str, ...]

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["law_failures"] = list(self.law_failures)
        return d


def morphism_report(f: LatticeMap, caps: Caps | None = None) -> MorphismReport:
    """Full property report for a symmetrizable map between o-algebras.

    The equivalence groups and characterizations are re-asserted on every
    call; any violation lands in law_failures rather than passing silently.
    """
    src, tgt = f.source, f.target
    fd = dagger(f, caps=caps)
    n, m = src.size, tgt.size
    failures: list[str] = []

    c1 = all(
        not tgt.ov(f.images[x1], f.images[x2]) or src.ov(x1, x2)
        for x1 in range(n) for x2 in range(n)
    )
    c2 = all(
        f.images[src.meet[x][y]] == tgt.meet[f.images[x]][f.images[y]]
        for x in range(n) for y in range(n)
    )
    c3 = all(src.leq(fd.images[f.images[x]], x) for x in range(n))
    if not (c1 == c2 == c3):
        failures.append("conditions 1-3 not equivalent")

    c4 = all(
        not src.ov(x1, x2) or tgt.ov(f.images[x1], f.images[x2])
        for x1 in range(n) for x2 in range(n)
    )
    c5 = all(not positivity(src, x) or positivity(tgt, f.images[x])
             for x in range(n))
    c6 = fd.images[tgt.top] == src.top
    c7 = all(src.leq(x, fd.images[f.images[x]]) for x in range(n))
    if not (c4 == c5 == c6 == c7):
        failures.append("conditions 4-7 not equivalent")

    meets = preserves_finite_meets(f)
    dag_adj = all(
        src.leq(fd.images[y], x) == tgt.leq(y, f.images[x])
        for y in range(m) for x in range(n)
    )
    if dag_adj != meets:
        failures.append("dagger adjunction vs finite-meet preservation")

    la = left_adjoint(f)
    open_map = False
    if la is not None:
        open_map = all(
            la.images[tgt.meet[f.images[x]][y]] == src.meet[x][la.images[y]]
            for x in range(n) for y in range(m)
        )
    all_structure = meets and preserves_implication(f)
    if not (meets == open_map == all_structure):
        failures.append("three-way open-map equivalence")

    injective = f.is_injective()
    surjective = f.is_surjective()
    bijective = injective and surjective
    is_iso = False
    if bijective:
        inverse = {v: x for x, v in enumerate(f.images)}
        is_iso = all(
            src.leq(x, y) == tgt.leq(f.images[x], f.images[y])
            for x in range(n) for y in range(n)
        )
        if is_iso and any(fd.images[y] != inverse[y] for y in range(m)):
            failures.append("iso is not unitary")

    mono = injective
    epi = fd.is_injective()
    if epi != surjective:
        failures.append("epi vs surjective")
    if surjective and not epi:
        failures.append("surjective map fails epi")
    if mono and not (c4 and c5 and c6 and c7):
        failures.append("mono consequences")

    return MorphismReport(
        c1, c2, c3, c4, c5, c6, c7, meets, dag_adj, open_map, all_structure,
        injective, surjective, is_iso, mono, epi, tuple(failures),
    )


def compose(g: LatticeMap, f: LatticeMap) -> LatticeMap:
    """g after f, revalidated as a join map."""
    if not same_lattice(f.target, g.source):
        raise ShapeMismatch("target of f is not the source of g")
    return join_map(f.source, g.target,
                    tuple(g.images[v] for v in f.images))


@dataclass(frozen=True)
class Relation:
    """A binary relation between two finite index sets."""

    src_size: int
    tgt_size: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        for x, y in self.pairs:
            if not (0 <= x < self.src_size and 0 <= y < self.tgt_size):
                raise ShapeMismatch(f"pair ({x},{y}) out of bounds")


def rel_dagger(R: Relation) -> Relation:
    return Relation(R.tgt_size, R.src_size,
                    frozenset((y, x) for x, y in R.pairs))


def rel_compose(S: Relation, R: Relation) -> Relation:
    """S after R: x (S.R) z iff x R y and y S z for some y."""
    if R.tgt_size != S.src_size:
        raise ShapeMismatch("middle set sizes differ")
    pairs = frozenset(
        (x, z)
        for x, y in R.pairs
        for y2, z in S.pairs
        if y == y2
    )
    return Relation(R.src_size, S.tgt_size, pairs)


def rel_to_map(R: Relation, caps: Caps | None = None) -> LatticeMap:
    """The inverse image Pow(Y) -> Pow(X) of a relation on X x Y."""
    caps = caps or default_caps()
    pw_src = powerset_lattice(R.tgt_size, caps)
    pw_tgt = powerset_lattice(R.src_size, caps)
    pre = [0] * R.tgt_size
    for x, y in R.pairs:
        pre[y] |= 1 << x
    imgs = []
    for mask in range(pw_src.size):
        acc = 0
        rest = mask
        while rest:
            y = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            acc |= pre[y]
        imgs.append(acc)
    return join_map(pw_src, pw_tgt, imgs)


def map_to_rel(f: LatticeMap) -> Relation:
    """The relation x R y iff x lies in f({y}); inverse of rel_to_map."""
    if f.source.atoms_of is None or f.target.atoms_of is None:
        raise PreconditionFailed("both carriers must be powersets")
    if "preserves_joins" not in f.tags:
        raise PreconditionFailed("map must be join-preserving")
    nY = f.source.atoms_of
    nX = f.target.atoms_of
    pairs = frozenset(
        (x, y)
        for y in range(nY)
        for x in range(nX)
        if f.images[1 << y] >> x & 1
    )
    R = Relation(nX, nY, pairs)
    if rel_to_map(R).images != f.images:
        raise PreconditionFailed("map does not arise from a relation")
    return R


def image_factorization(f: LatticeMap, caps: Caps | None = None):
    """Image sub-o-algebra of an open-frame arrow, with its inclusion.

    The image carries the overlap induced from the source; finitely that
    coincides with the restriction of the target overlap, which is checked.
    """
    fd = dagger(f, caps=caps)
    if not preserves_finite_meets(f):
        raise PreconditionFailed("image factorization needs a finite-meet-preserving arrow")
    src, tgt = f.source, f.target
    values = sorted(set(f.images))
    image = sublattice_on(tgt, values)
    index = {v: i for i, v in enumerate(values)}
    # f.f-dagger fixes the image pointwise, so f-dagger(y) is a canonical
    # preimage of each image element (arbitrary preimages are unusable:
    # a collapsed positive element would make the relation ill-defined)
    for v in values:
        if f.images[fd.images[v]] != v:
            raise CrossCheckFailed(f"f.f-dagger does not fix image element {v}")
    for y1 in range(image.size):
        for y2 in range(image.size):
            induced = src.ov(fd.images[values[y1]], fd.images[values[y2]])
            if induced != image.ov(y1, y2):
                raise CrossCheckFailed(
                    f"induced overlap differs from the restriction at ({y1},{y2})")
    inclusion = join_map(image, tgt, tuple(values))
    inc_dag = dagger(inclusion, caps=caps)
    for y in range(tgt.size):
        if values[inc_dag.images[y]] != f.images[fd.images[y]]:
            raise CrossCheckFailed(f"inclusion dagger differs from f.f-dagger at {y}")
    if f.is_injective():
        if not all(
            src.leq(x1, x2) == tgt.leq(f.images[x1], f.images[x2])
            for x1 in range(src.size) for x2 in range(src.size)
        ):
            raise CrossCheckFailed("mono image is not order-isomorphic to source")
    return image, inclusion


def is_sub_oalgebra(M: FinLattice, N, caps: Caps | None = None) -> bool:
    """Closure of N under joins, meets, bounds and implication inside M.

    When the answer is yes, the inclusion is built and asserted to be an
    injective open-frame arrow.
    """
    if M.impl is None:
        raise PreconditionFailed("carrier must be a frame")
    if not check_overlap_algebra(M, caps=caps).is_overlap_algebra:
        raise PreconditionFailed("carrier is not an overlap algebra")
    S = set(N)
    if M.bottom not in S or M.top not in S:
        return False
    for x in S:
        for y in S:
            if M.meet[x][y] not in S or M.join[x][y] not in S:
                return False
            if M.impl[x][y] not in S:
                return False
    elems = sorted(S)
    sub = sublattice_on(M, elems)
    inc = join_map(sub, M, tuple(elems))
    dagger(inc, caps=caps)
    if not (inc.is_injective() and preserves_finite_meets(inc)):
        raise CrossCheckFailed("sub-o-algebra inclusion is not an OFrm mono")
    return True


_join_map_cache: dict = {}


def enumerate_join_maps(src: FinLattice, tgt: FinLattice):
    """All join-preserving maps src -> tgt, by images of join-irreducibles.

    Assignments are monotone on the irreducibles and extended by joins;
    each candidate is revalidated, which drops the spurious extensions a
    non-distributive source can produce.  Results are memoized per lattice
    pair (lattices are immutable and identity-hashed).
    """
    cached = _join_map_cache.get((src, tgt))
    if cached is not None:
        return cached
    irr = sorted(join_irreducibles(src))
    k = len(irr)
    assignment = [0] * k

    def build() -> tuple[int, ...] | None:
        imgs = []
        for x in range(src.size):
            imgs.append(tgt.join_all(
                assignment[i] for i in range(k) if src.leq(irr[i], x)))
        return tuple(imgs)

    results = []

    def backtrack(i: int):
        if i == k:
            imgs = build()
            try:
                results.append(join_map(src, tgt, imgs))
            except NotJoinPreserving:
                pass
            return
        for v in range(tgt.size):
            ok = True
            for j in range(i):
                if src.leq(irr[j], irr[i]) and not tgt.leq(assignment[j], v):
                    ok = False
                    break
                if src.leq(irr[i], irr[j]) and not tgt.leq(v, assignment[j]):
                    ok = False
                    break
            if ok:
                assignment[i] = v
                backtrack(i + 1)

    backtrack(0)
    _join_map_cache[(src, tgt)] = results
    return results


def enumerate_ofrm_arrows(src: FinLattice, tgt: FinLattice):
    """Join maps that also preserve finite meets."""
    return [f for f in enumerate_join_maps(src, tgt) if preserves_finite_meets(f)]
