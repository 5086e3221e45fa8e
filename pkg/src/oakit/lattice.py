"""Finite posets, lattices, frames and topologies.

Elements are dense indices 0..n-1.  The order is stored as rows of bit
masks and meets/joins as full tables, so that the exhaustive checks in
the rest of the toolkit are plain lookups.  All structures are immutable
after validated construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .config import Caps, default_caps
from .errors import (
    AntisymmetryViolation,
    CrossCheckFailed,
    NotAFrame,
    NotALattice,
    NotATopology,
    SizeCap,
)


@dataclass(frozen=True)
class FinPoset:
    """A finite partial order.  up[i] has bit j set iff i <= j; dn is the transpose."""

    size: int
    up: tuple[int, ...]
    dn: tuple[int, ...]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def elements(self) -> range:
        return range(self.size)


def _close_transitively(up: list[int], n: int) -> list[int]:
    # iterate M := M | M*M on the bit-mask rows until a fixed point
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            rest = up[i]
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    return up


def poset_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> FinPoset:
    """Reflexive-transitive closure of the generating pairs as an order.

    Raises AntisymmetryViolation if the closure contains a cycle.
    """
    up = [1 << i for i in range(n)]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise NotALattice(f"index pair ({i},{j}) out of range for size {n}")
        up[i] |= 1 << j
    _close_transitively(up, n)
    for i in range(n):
        for j in range(i + 1, n):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise AntisymmetryViolation(f"elements {i} and {j} lie on a cycle")
    dn = [0] * n
    for i in range(n):
        rest = up[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            dn[j] |= 1 << i
    return FinPoset(n, tuple(up), tuple(dn))


def poset_from_leq(n: int, leq) -> FinPoset:
    """Poset from a callable leq(i, j); assumed to be already an order."""
    up = [0] * n
    dn = [0] * n
    for i in range(n):
        for j in range(n):
            if leq(i, j):
                up[i] |= 1 << j
                dn[j] |= 1 << i
    return FinPoset(n, tuple(up), tuple(dn))


@dataclass(frozen=True, eq=False)
class FinLattice:
    """A finite bounded lattice with precomputed operation tables.

    impl is present iff residuation (z&x <= y iff z <= impl(x,y)) verified,
    i.e. iff the lattice is a frame.  atoms_of marks powerset carriers,
    where element index equals the subset bit mask.  carrier records the
    parent indices when the lattice was cut out of a bigger one.
    """

    poset: FinPoset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    impl: tuple[tuple[int, ...], ...] | None = None
    names: tuple[str, ...] | None = None
    atoms_of: int | None = None
    carrier: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return self.poset.size

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq(i, j)

    def is_frame(self) -> bool:
        return self.impl is not None

    def neg(self, x: int) -> int:
        if self.impl is None:
            raise NotAFrame("pseudo-complement needs a verified implication table")
        return self.impl[x][self.bottom]

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet[acc][x]
        return acc

    def ov(self, x: int, y: int) -> bool:
        """Overlap with the fast positivity reading: the meet is non-bottom."""
        return self.meet[x][y] != self.bottom

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else str(i)


def _bounds(P: FinPoset) -> tuple[int, int]:
    n = P.size
    full = (1 << n) - 1
    bottoms = [i for i in range(n) if P.up[i] == full]
    tops = [i for i in range(n) if P.dn[i] == full]
    if len(bottoms) != 1:
        raise NotALattice("no unique bottom element")
    if len(tops) != 1:
        raise NotALattice("no unique top element")
    return bottoms[0], tops[0]


def _extreme(P: FinPoset, bound_set: int, lower: bool) -> int | None:
    """Greatest element of bound_set if lower, least if not; None if absent."""
    rest = bound_set
    while rest:
        g = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        covers = P.dn[g] if lower else P.up[g]
        if bound_set & ~covers == 0:
            return g
    return None


def _impl_table(P: FinPoset, meet, join, bottom) -> tuple[tuple[int, ...], ...] | None:
    """Residuated implication, or None when residuation fails somewhere."""
    n = P.size
    cand = []
    for x in range(n):
        row = []
        for y in range(n):
            acc = bottom
            for z in range(n):
                if P.leq(meet[z][x], y):
                    acc = join[acc][z]
            row.append(acc)
        cand.append(tuple(row))
    for x in range(n):
        for y in range(n):
            c = cand[x][y]
            for z in range(n):
                if P.leq(meet[z][x], y) != P.leq(z, c):
                    return None
    return tuple(cand)


def lattice_from_poset(
    P: FinPoset,
    names: tuple[str, ...] | None = None,
    caps: Caps | None = None,
) -> FinLattice:
    """Fill in meet/join tables; attach the implication table iff it residuates."""
    caps = caps or default_caps()
    n = P.size
    if n == 0:
        raise NotALattice("empty carrier")
    if n > caps.lattice_max:
        raise SizeCap(f"lattice of size {n} exceeds cap {caps.lattice_max}")
    bottom, top = _bounds(P)
    meet: list[tuple[int, ...]] = []
    join: list[tuple[int, ...]] = []
    for i in range(n):
        mrow = []
        jrow = []
        for j in range(n):
            m = _extreme(P, P.dn[i] & P.dn[j], lower=True)
            if m is None:
                raise NotALattice(f"elements {i},{j} have no meet")
            v = _extreme(P, P.up[i] & P.up[j], lower=False)
            if v is None:
                raise NotALattice(f"elements {i},{j} have no join")
            mrow.append(m)
            jrow.append(v)
        meet.append(tuple(mrow))
        join.append(tuple(jrow))
    meet_t = tuple(meet)
    join_t = tuple(join)
    impl = _impl_table(P, meet_t, join_t, bottom)
    return FinLattice(P, meet_t, join_t, bottom, top, impl, names)


def sublattice_on(L: FinLattice, elements: Sequence[int]) -> FinLattice:
    """Lattice on a subset of L's carrier with the restricted order.

    Meets and joins are recomputed inside the subset, so closure-style
    subsets (fixed points of a closure operator) get least-fixed-point
    joins automatically.
    """
    elems = tuple(elements)
    P = poset_from_leq(len(elems), lambda a, b: L.leq(elems[a], elems[b]))
    names = tuple(L.name(e) for e in elems)
    sub = lattice_from_poset(P, names=names)
    return FinLattice(
        sub.poset, sub.meet, sub.join, sub.bottom, sub.top,
        sub.impl, names, None, elems,
    )


def powerset_lattice(n: int, caps: Caps | None = None) -> FinLattice:
    """Boolean lattice of all subsets of an n-element set; index == subset mask."""
    caps = caps or default_caps()
    if n > caps.powerset_max:
        raise SizeCap(f"powerset of {n} points exceeds cap {caps.powerset_max}")
    size = 1 << n
    full = size - 1
    P = poset_from_leq(size, lambda a, b: a & ~b == 0)
    meet = tuple(tuple(a & b for b in range(size)) for a in range(size))
    join = tuple(tuple(a | b for b in range(size)) for a in range(size))
    impl = tuple(tuple((~a | b) & full for b in range(size)) for a in range(size))
    names = tuple(subset_name(m) for m in range(size))
    return FinLattice(P, meet, join, 0, full, impl, names, atoms_of=n)


def subset_name(mask: int) -> str:
    bits = []
    i = 0
    while mask:
        if mask & 1:
            bits.append(str(i))
        mask >>= 1
        i += 1
    return "{" + ",".join(bits) + "}"


def downset_lattice(P: FinPoset, caps: Caps | None = None) -> FinLattice:
    """Lattice of down-closed subsets of P ordered by inclusion; always a frame."""
    caps = caps or default_caps()
    if P.size > caps.downset_max:
        raise SizeCap(f"{P.size} generators exceed the down-set cap {caps.downset_max}")
    downsets = []
    for m in range(1 << P.size):
        ok = True
        rest = m
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if P.dn[j] & ~m:
                ok = False
                break
        if ok:
            downsets.append(m)
    order = poset_from_leq(len(downsets), lambda a, b: downsets[a] & ~downsets[b] == 0)
    names = tuple(subset_name(m) for m in downsets)
    L = lattice_from_poset(order, names=names, caps=caps)
    if L.impl is None:  # pragma: no cover - down-set lattices are frames
        raise CrossCheckFailed("down-set lattice failed residuation")
    return L


def product_lattice(
    Ls: Sequence[FinLattice], caps: Caps | None = None
):
    """Cartesian product with pointwise order; returns (lattice, projections).

    Element index is mixed-radix over the factor indices, last factor fastest.
    """
    from .maps import LatticeMap  # local import to avoid a module cycle

    caps = caps or default_caps()
    sizes = [L.size for L in Ls]
    total = 1
    for s in sizes:
        total *= s
    if total > caps.lattice_max:
        raise SizeCap(f"product of size {total} exceeds cap {caps.lattice_max}")
    k = len(Ls)
    strides = [1] * k
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]

    def decode(idx: int) -> tuple[int, ...]:
        out = []
        for i in range(k):
            out.append(idx // strides[i] % sizes[i])
        return tuple(out)

    def leq(a: int, b: int) -> bool:
        ta, tb = decode(a), decode(b)
        return all(Ls[i].leq(ta[i], tb[i]) for i in range(k))

    P = poset_from_leq(total, leq)
    meet = []
    join = []
    for a in range(total):
        ta = decode(a)
        mrow = []
        jrow = []
        for b in range(total):
            tb = decode(b)
            m = sum(Ls[i].meet[ta[i]][tb[i]] * strides[i] for i in range(k))
            j = sum(Ls[i].join[ta[i]][tb[i]] * strides[i] for i in range(k))
            mrow.append(m)
            jrow.append(j)
        meet.append(tuple(mrow))
        join.append(tuple(jrow))
    bottom = sum(Ls[i].bottom * strides[i] for i in range(k))
    top = sum(Ls[i].top * strides[i] for i in range(k))
    impl = None
    if all(L.impl is not None for L in Ls):
        impl = tuple(
            tuple(
                sum(Ls[i].impl[decode(a)[i]][decode(b)[i]] * strides[i] for i in range(k))
                for b in range(total)
            )
            for a in range(total)
        )
    names = tuple(
        "(" + ",".join(Ls[i].name(decode(a)[i]) for i in range(k)) + ")"
        for a in range(total)
    )
    prod = FinLattice(P, tuple(meet), tuple(join), bottom, top, impl, names)
    projections = [
        LatticeMap(prod, Ls[i], tuple(decode(a)[i] for a in range(total)),
                   tags=frozenset({"preserves_joins"}))
        for i in range(k)
    ]
    return prod, projections


@dataclass(frozen=True)
class FrameReport:
    is_frame: bool
    is_boolean: bool
    impl: tuple[tuple[int, ...], ...] | None
    pseudo: tuple[int, ...] | None
    witness: tuple | None

    def as_dict(self) -> dict:
        return {
            "is_frame": self.is_frame,
            "is_boolean": self.is_boolean,
            "witness": list(self.witness) if self.witness else None,
        }


def frame_report(L: FinLattice) -> FrameReport:
    """Check the frame law (via residuation) and the Boolean law x or -x = top."""
    impl = L.impl
    if impl is None:
        impl = _impl_table(L.poset, L.meet, L.join, L.bottom)
    if impl is None:
        # dig out a residuation counterexample for the report
        witness = None
        for x in range(L.size):
            for y in range(L.size):
                acc = L.bottom
                for z in range(L.size):
                    if L.leq(L.meet[z][x], y):
                        acc = L.join[acc][z]
                if not L.leq(L.meet[acc][x], y):
                    witness = (x, y, acc)
                    break
            if witness:
                break
        return FrameReport(False, False, None, None, witness)
    pseudo = tuple(impl[x][L.bottom] for x in range(L.size))
    for x in range(L.size):
        if L.join[x][pseudo[x]] != L.top:
            return FrameReport(True, False, impl, pseudo, (x,))
    return FrameReport(True, True, impl, pseudo, None)


@dataclass(frozen=True)
class Topology:
    """A finite point set with a validated family of open sets (as bit masks)."""

    points: int
    opens: tuple[int, ...]

    @property
    def full(self) -> int:
        return (1 << self.points) - 1


def topology_from_opens(n: int, opens: Iterable[int]) -> Topology:
    """Validate a family of subsets as a topology; nothing is silently repaired."""
    fam = sorted(set(opens))
    full = (1 << n) - 1
    for U in fam:
        if U & ~full:
            raise NotATopology(f"open {U:b} mentions points outside 0..{n - 1}")
    if 0 not in fam:
        raise NotATopology("the empty set is missing")
    if full not in fam:
        raise NotATopology("the full point set is missing")
    fams = set(fam)
    for U in fam:
        for V in fam:
            if U & V not in fams:
                raise NotATopology(
                    f"intersection of {subset_name(U)} and {subset_name(V)} is missing")
            if U | V not in fams:
                raise NotATopology(
                    f"union of {subset_name(U)} and {subset_name(V)} is missing")
    return Topology(n, tuple(fam))


def topo_ops(T: Topology, Y: int) -> tuple[int, int, int]:
    """Interior, closure and int(cl(int(Y))) of a subset given as a bit mask.

    The closure follows the overlap reading: x lies in cl(Y) iff every open
    neighbourhood of x meets Y.
    """
    interior = 0
    for U in T.opens:
        if U & ~Y == 0:
            interior |= U
    closure = _closure(T, Y)
    cl_int = _closure(T, interior)
    regular_core = 0
    for U in T.opens:
        if U & ~cl_int == 0:
            regular_core |= U
    return interior, closure, regular_core


def _closure(T: Topology, Y: int) -> int:
    out = 0
    for x in range(T.points):
        bit = 1 << x
        if all(U & Y for U in T.opens if U & bit):
            out |= bit
    return out


def open_set_lattice(T: Topology, caps: Caps | None = None) -> FinLattice:
    """The frame of open sets of T ordered by inclusion."""
    opens = T.opens
    P = poset_from_leq(len(opens), lambda a, b: opens[a] & ~opens[b] == 0)
    names = tuple(subset_name(U) for U in opens)
    L = lattice_from_poset(P, names=names, caps=caps)
    return FinLattice(L.poset, L.meet, L.join, L.bottom, L.top, L.impl,
                      names, None, opens)


def order_iso(A: FinLattice, B: FinLattice) -> tuple[int, ...] | None:
    """An order isomorphism A -> B as an index tuple, or None.

    Backtracking with down/up-degree profiles as the pruning invariant.
    """
    if A.size != B.size:
        return None
    n = A.size

    def profile(L: FinLattice, x: int) -> tuple[int, int]:
        return (bin(L.poset.dn[x]).count("1"), bin(L.poset.up[x]).count("1"))

    prof_a = [profile(A, x) for x in range(n)]
    prof_b = [profile(B, x) for x in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return None
    order = sorted(range(n), key=lambda x: prof_a[x])
    image: list[int | None] = [None] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for y in range(n):
            if used[y] or prof_b[y] != prof_a[x]:
                continue
            ok = True
            for j in range(k):
                xj = order[j]
                yj = image[xj]
                if A.leq(x, xj) != B.leq(y, yj) or A.leq(xj, x) != B.leq(yj, y):
                    ok = False
                    break
            if ok:
                image[x] = y
                used[y] = True
                if extend(k + 1):
                    return True
                image[x] = None
                used[y] = False
        return False

    if extend(0):
        return tuple(image)  # type: ignore[arg-type]
    return None
