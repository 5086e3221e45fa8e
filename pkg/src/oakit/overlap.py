"""Positivity, the overlap relation, o-algebra checks, atoms and Booleanization.

Fast positivity is "not bottom": with the empty join equal to bottom, the
second-order reading collapses to that on any finite lattice.  The oracle
mode quantifies over all subsets and exists to validate the collapse.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .config import Caps, default_caps
from .errors import CrossCheckFailed, NotABase, NotAFrame, SizeCap
from .lattice import FinLattice, frame_report, sublattice_on


def positivity(L: FinLattice, x: int, mode: str = "fast", caps: Caps | None = None) -> bool:
    """Positivity of an element; oracle mode quantifies over all subsets."""
    if mode == "fast":
        return x != L.bottom
    if mode != "oracle":
        raise ValueError(f"unknown mode {mode!r}")
    caps = caps or default_caps()
    if L.size > caps.pos_oracle_max:
        raise SizeCap(f"oracle positivity capped at {caps.pos_oracle_max} elements")
    # x is positive iff every subset whose join dominates x is inhabited
    for mask in range(1 << L.size):
        acc = L.bottom
        rest = mask
        while rest:
            z = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            acc = L.join[acc][z]
        if L.leq(x, acc) and mask == 0:
            return False
    return True


def overlap(L: FinLattice, x: int, y: int) -> bool:
    return positivity(L, L.meet[x][y], "fast")


@dataclass(frozen=True)
class PositivityAssignment:
    lattice: FinLattice
    holds: frozenset[int]


@dataclass(frozen=True)
class PositivityReport:
    monotonicity: bool
    monotonicity_witness: tuple | None
    splitting: bool
    splitting_witness: tuple | None
    splitting_exhaustive: bool
    positivity_law: bool
    positivity_witness: tuple | None
    join_form: bool
    join_form_witness: tuple | None
    laws_agree: bool
    equals_canonical: bool
    frame_adjoint: bool | None
    valid: bool

    def as_dict(self) -> dict:
        return {
            "monotonicity": self.monotonicity,
            "splitting": self.splitting,
            "positivity_law": self.positivity_law,
            "join_form": self.join_form,
            "laws_agree": self.laws_agree,
            "equals_canonical": self.equals_canonical,
            "frame_adjoint": self.frame_adjoint,
            "valid": self.valid,
        }


def check_positivity_predicate(
    L: FinLattice, P: PositivityAssignment, caps: Caps | None = None
) -> PositivityReport:
    """Validate a candidate positivity predicate and report witnesses.

    Checks monotonicity, splitting of joins (over all subsets up to the
    exhaustive cap, binary plus empty joins beyond it), the positivity law
    in both its implication form and its join form, agreement of the two
    forms, uniqueness against the canonical predicate, and, on frames, the
    left-adjoint characterization via the unique map from the two-element
    frame.
    """
    caps = caps or default_caps()
    holds = P.holds
    n = L.size

    mono = True
    mono_wit = None
    for x in sorted(holds):
        for y in range(n):
            if L.leq(x, y) and y not in holds:
                mono, mono_wit = False, (x, y)
                break
        if not mono:
            break

    split = True
    split_wit = None
    exhaustive = n <= caps.splitting_exhaustive_max
    if exhaustive:
        for mask in range(1 << n):
            members = []
            rest = mask
            acc = L.bottom
            while rest:
                z = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                members.append(z)
                acc = L.join[acc][z]
            if acc in holds and not any(m in holds for m in members):
                split, split_wit = False, (mask,)
                break
    else:
        if L.bottom in holds:
            split, split_wit = False, ()
        else:
            for x in range(n):
                for y in range(n):
                    if L.join[x][y] in holds and x not in holds and y not in holds:
                        split, split_wit = False, (x, y)
                        break
                if not split:
                    break

    pos_law = True
    pos_wit = None
    for x in range(n):
        for y in range(n):
            antecedent = (x not in holds) or L.leq(x, y)
            if antecedent and not L.leq(x, y):
                pos_law, pos_wit = False, (x, y)
                break
        if not pos_law:
            break

    join_form = True
    join_wit = None
    for y in range(n):
        acc = L.join_all(x for x in holds if L.leq(x, y))
        if not L.leq(y, acc):
            join_form, join_wit = False, (y,)
            break

    canonical = frozenset(x for x in range(n) if x != L.bottom)

    frame_adjoint: bool | None = None
    if L.is_frame():
        # the unique bottom-and-join preserving point collapse from the
        # two-element frame sends 0 to bottom and 1 to top; its left adjoint
        # is exactly "not bottom"
        frame_adjoint = all(
            (x in holds) == (not L.leq(x, L.bottom)) for x in range(n)
        )

    valid = mono and split and pos_law and holds == canonical
    return PositivityReport(
        mono, mono_wit, split, split_wit, exhaustive,
        pos_law, pos_wit, join_form, join_wit,
        pos_law == join_form, holds == canonical, frame_adjoint, valid,
    )


@dataclass(frozen=True)
class AxiomResult:
    holds: bool
    witness: tuple | None


@dataclass(frozen=True)
class OverlapReport:
    symmetry: AxiomResult
    meet_closure: AxiomResult
    splitting: AxiomResult
    monotonicity: AxiomResult
    density: AxiomResult
    is_overlap_algebra: bool
    boolean_crosscheck: bool
    matches_boolean: bool
    base_used: tuple[int, ...] | None

    def as_dict(self) -> dict:
        def ax(a: AxiomResult) -> dict:
            return {"holds": a.holds, "witness": list(a.witness) if a.witness else None}

        return {
            "symmetry": ax(self.symmetry),
            "meet_closure": ax(self.meet_closure),
            "splitting": ax(self.splitting),
            "monotonicity": ax(self.monotonicity),
            "density": ax(self.density),
            "is_overlap_algebra": self.is_overlap_algebra,
            "boolean_crosscheck": self.boolean_crosscheck,
            "matches_boolean": self.matches_boolean,
            "base_used": list(self.base_used) if self.base_used is not None else None,
        }


def _validate_base(L: FinLattice, base: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(base)))
    for p in range(L.size):
        if L.join_all(a for a in S if L.leq(a, p)) != p:
            raise NotABase(f"element {p} is not the join of base elements below it")
    return S


def check_overlap_algebra(
    L: FinLattice, base: Iterable[int] | None = None, caps: Caps | None = None
) -> OverlapReport:
    """Verify the five overlap-relation axioms with fast positivity.

    The density quantifier ranges over the base when one is given (after
    validating the generation condition), otherwise over the whole carrier.
    The Boolean verdict of frame_report is recorded as a cross-check.
    """
    n = L.size
    base_t = _validate_base(L, base) if base is not None else None

    sym = AxiomResult(True, None)
    for x in range(n):
        for y in range(n):
            if L.ov(x, y) and not L.ov(y, x):
                sym = AxiomResult(False, (x, y))
                break
        if not sym.holds:
            break

    mc = AxiomResult(True, None)
    for x in range(n):
        for y in range(n):
            if L.ov(x, y) and not L.ov(x, L.meet[x][y]):
                mc = AxiomResult(False, (x, y))
                break
        if not mc.holds:
            break

    # binary joins plus the empty join; finite induction covers the rest
    split = AxiomResult(True, None)
    for x in range(n):
        if L.ov(x, L.bottom):
            split = AxiomResult(False, (x,))
            break
        for y1 in range(n):
            for y2 in range(n):
                if L.ov(x, L.join[y1][y2]) and not (L.ov(x, y1) or L.ov(x, y2)):
                    split = AxiomResult(False, (x, y1, y2))
                    break
            if not split.holds:
                break
        if not split.holds:
            break

    mono = AxiomResult(True, None)
    for x in range(n):
        for y in range(n):
            if not L.ov(x, y):
                continue
            for z in range(n):
                if L.leq(y, z) and not L.ov(x, z):
                    mono = AxiomResult(False, (x, y, z))
                    break
            if not mono.holds:
                break
        if not mono.holds:
            break

    zs = base_t if base_t is not None else tuple(range(n))
    dens = AxiomResult(True, None)
    for x in range(n):
        for y in range(n):
            if L.leq(x, y):
                continue
            if all(not L.ov(z, x) or L.ov(z, y) for z in zs):
                dens = AxiomResult(False, (x, y))
                break
        if not dens.holds:
            break

    is_oa = all(a.holds for a in (sym, mc, split, mono, dens))
    fr = frame_report(L)
    boolean = fr.is_frame and fr.is_boolean
    return OverlapReport(sym, mc, split, mono, dens, is_oa, boolean,
                         is_oa == boolean, base_t)


@dataclass(frozen=True)
class AtomReport:
    eq1: bool
    eq2: bool
    eq3: bool
    eq4: bool
    eq1bis: bool
    eq8: bool
    eq9: bool
    second_order: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)

    def all_true(self) -> bool:
        return all(self.__dict__.values())


def atom_report(L: FinLattice, a: int) -> AtomReport:
    """Evaluate the eight atomhood predicates for a single element."""
    n = L.size
    bot = L.bottom
    nonzero = a != bot

    eq1 = nonzero and all(
        not (x != bot and L.leq(x, a)) or x == a for x in range(n))
    eq2 = nonzero and all(
        not L.leq(x, a) or x == bot or x == a for x in range(n))
    strict = [x for x in range(n) if L.leq(x, a) and x != a]
    eq3 = nonzero and all(x == bot for x in strict)
    eq4 = nonzero and not any(x != bot for x in strict)
    eq1bis = positivity(L, a) and all(
        not (positivity(L, x) and L.leq(x, a)) or x == a for x in range(n))
    eq8 = all(positivity(L, L.meet[a][x]) == L.leq(a, x) for x in range(n))
    eq9 = all(overlap(L, a, x) == L.leq(a, x) for x in range(n))
    second_order = bin(L.poset.dn[a]).count("1") == 2
    return AtomReport(eq1, eq2, eq3, eq4, eq1bis, eq8, eq9, second_order)


def atoms_and_iso(L: FinLattice):
    """Atoms, atomicity, and the mutually inverse maps to the powerset of atoms.

    Returns (atoms, is_atomic, f, g) with f: L -> Pow(atoms) sending x to
    the set of atoms below it and g the join map back; f and g are only
    built when L is atomic, and their round trips are verified.
    """
    from .lattice import powerset_lattice
    from .maps import LatticeMap

    if not L.is_frame():
        raise NotAFrame("atomicity analysis is defined for frames")
    atoms = [a for a in range(L.size) if atom_report(L, a).eq9]
    is_atomic = all(
        L.join_all(a for a in atoms if L.leq(a, x)) == x for x in range(L.size)
    )
    if not is_atomic:
        return frozenset(atoms), False, None, None
    k = len(atoms)
    pw = powerset_lattice(k, caps=Caps(powerset_max=max(k, 5)))
    f_images = []
    for x in range(L.size):
        mask = 0
        for i, a in enumerate(atoms):
            if L.leq(a, x):
                mask |= 1 << i
        f_images.append(mask)
    g_images = []
    for mask in range(1 << k):
        members = [atoms[i] for i in range(k) if mask >> i & 1]
        g_images.append(L.join_all(members))
    f = LatticeMap(L, pw, tuple(f_images), tags=frozenset({"preserves_joins"}))
    g = LatticeMap(pw, L, tuple(g_images), tags=frozenset({"preserves_joins"}))
    for x in range(L.size):
        if g_images[f_images[x]] != x:
            raise CrossCheckFailed(f"g(f({x})) != {x} despite atomicity")
    for mask in range(1 << k):
        if f_images[g_images[mask]] != mask:
            raise CrossCheckFailed(f"f(g({mask})) != {mask} despite atomicity")
    return frozenset(atoms), True, f, g


def join_irreducibles(L: FinLattice) -> frozenset[int]:
    """Non-bottom elements that are not joins of strictly smaller elements."""
    out = []
    for x in range(L.size):
        if x == L.bottom:
            continue
        below = [y for y in range(L.size) if L.leq(y, x) and y != x]
        if L.join_all(below) != x:
            out.append(x)
    S = frozenset(out)
    _validate_base(L, S)  # irreducibles always generate, finitely
    return S


def booleanize(L: FinLattice, caps: Caps | None = None):
    """Double-negation fixed points and overlap-closure fixed points.

    Returns (negneg, overlapized, agree).  Joins inside each fixed-point
    set are recomputed as least fixed points above the raw join; meets are
    inherited.  Both outputs are checked to be o-algebras.
    """
    if not L.is_frame():
        raise NotAFrame("Booleanization needs a frame")
    n = L.size
    negneg_fixed = [x for x in range(n) if L.neg(L.neg(x)) == x]

    def ov_closure(y: int) -> int:
        return L.join_all(
            x for x in range(n)
            if all(not L.ov(z, x) or L.ov(z, y) for z in range(n))
        )

    ov_fixed = [y for y in range(n) if ov_closure(y) == y]
    negneg = sublattice_on(L, negneg_fixed)
    overlapized = sublattice_on(L, ov_fixed)
    agree = negneg_fixed == ov_fixed
    for name, out in (("negneg", negneg), ("overlapized", overlapized)):
        if not check_overlap_algebra(out, caps=caps).is_overlap_algebra:
            raise CrossCheckFailed(f"{name} fixed points are not an o-algebra")
    return negneg, overlapized, agree
