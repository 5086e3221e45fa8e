"""Positivity, overlap axioms, atoms, Booleanization, bases."""
import pytest

from oakit import (
    NotABase,
    PositivityReport,
    atom_report,
    atoms_and_iso,
    booleanize,
    chain,
    check_overlap_algebra,
    check_positivity_predicate,
    diamond,
    frame_report,
    join_irreducibles,
    lattice_from_poset,
    open_set_lattice,
    order_iso,
    overlap,
    poset_from_pairs,
    positivity,
    powerset_lattice,
    product_lattice,
    regular_open_algebra,
    topology_from_opens,
)
from oakit.overlap import PositivityAssignment


def test_positivity_modes_agree():
    L = chain(3)
    assert positivity(L, 1, mode="fast")
    assert positivity(L, 1, mode="oracle")
    assert not positivity(L, L.bottom, mode="fast")
    assert not positivity(L, L.bottom, mode="oracle")
    P2 = powerset_lattice(2)
    assert positivity(P2, P2.top)
    for L in [chain(4), diamond(), powerset_lattice(3)]:
        for x in range(L.size):
            assert positivity(L, x, "fast") == positivity(L, x, "oracle")


def test_overlap_basics():
    P2 = powerset_lattice(2)
    assert overlap(P2, 0b01, 0b11)
    assert not overlap(P2, 0b01, 0b10)
    L = chain(3)
    assert overlap(L, 1, 2)
    for x in range(P2.size):
        assert overlap(P2, x, x) == positivity(P2, x)
        for y in range(P2.size):
            assert overlap(P2, x, y) == overlap(P2, y, x)


def test_check_positivity_predicate():
    L = chain(3)
    good = check_positivity_predicate(L, PositivityAssignment(L, frozenset({1, 2})))
    assert isinstance(good, PositivityReport)
    assert good.valid

    bad = check_positivity_predicate(L, PositivityAssignment(L, frozenset({2})))
    assert not bad.valid
    assert not bad.positivity_law
    assert bad.positivity_witness is not None
    assert bad.positivity_witness[0] == 1  # y = m fails the law

    for L in [chain(4), powerset_lattice(2), diamond()]:
        canonical = frozenset(x for x in range(L.size) if x != L.bottom)
        rep = check_positivity_predicate(L, PositivityAssignment(L, canonical))
        assert rep.valid and rep.equals_canonical and rep.frame_adjoint


def test_check_overlap_algebra_powerset():
    rep = check_overlap_algebra(powerset_lattice(2))
    assert rep.is_overlap_algebra
    assert rep.boolean_crosscheck and rep.matches_boolean
    for ax in (rep.symmetry, rep.meet_closure, rep.splitting,
               rep.monotonicity, rep.density):
        assert ax.holds and ax.witness is None


def test_check_overlap_algebra_chain_density_fails():
    rep = check_overlap_algebra(chain(3))
    assert not rep.is_overlap_algebra
    assert rep.symmetry.holds and rep.monotonicity.holds
    assert not rep.density.holds
    # every z meeting top also meets m, yet top is not below m
    assert rep.density.witness == (2, 1)


def test_check_overlap_algebra_with_base():
    P3 = powerset_lattice(3)
    singletons = [1, 2, 4]
    based = check_overlap_algebra(P3, base=singletons)
    assert based.is_overlap_algebra
    assert based.base_used == (1, 2, 4)
    assert based.is_overlap_algebra == check_overlap_algebra(P3).is_overlap_algebra
    with pytest.raises(NotABase):
        check_overlap_algebra(P3, base=[1, 2])  # {2} is not generated


def test_atom_report():
    P3 = powerset_lattice(3)
    assert atom_report(P3, 0b001).all_true()
    rep = atom_report(P3, P3.bottom)
    assert not any(rep.as_dict().values())
    # middle of a chain satisfies all eight predicates
    assert atom_report(chain(3), 1).all_true()
    # top of Pow(2) is not an atom under any reading
    rep = atom_report(powerset_lattice(2), 0b11)
    assert not any(rep.as_dict().values())


def test_eq8_eq9_agree_everywhere():
    for L in [chain(4), diamond(), powerset_lattice(3),
              product_lattice([chain(3), chain(2)])[0]]:
        for a in range(L.size):
            rep = atom_report(L, a)
            assert rep.eq8 == rep.eq9


def test_atoms_and_iso():
    atoms, atomic, f, g = atoms_and_iso(powerset_lattice(2))
    assert atoms == {0b01, 0b10} and atomic
    for x in range(4):
        assert g.images[f.images[x]] == x

    atoms, atomic, f, g = atoms_and_iso(chain(3))
    assert atoms == {1} and not atomic and f is None and g is None

    one = lattice_from_poset(poset_from_pairs(1, []))
    atoms, atomic, _, _ = atoms_and_iso(one)
    assert atoms == frozenset() and atomic


def test_join_irreducibles():
    assert join_irreducibles(powerset_lattice(3)) == {1, 2, 4}
    assert join_irreducibles(chain(3)) == {1, 2}
    one = lattice_from_poset(poset_from_pairs(1, []))
    assert join_irreducibles(one) == frozenset()


def test_booleanize():
    negneg, overlapized, agree = booleanize(chain(3))
    assert negneg.size == 2 and agree
    assert overlapized.size == 2

    P2 = powerset_lattice(2)
    negneg, _, agree = booleanize(P2)
    assert negneg.size == P2.size and agree


def test_booleanize_matches_regular_opens():
    T = topology_from_opens(2, [0b00, 0b10, 0b11])
    frame = open_set_lattice(T)
    assert order_iso(frame, chain(3)) is not None
    negneg, _, _ = booleanize(frame)
    R = regular_open_algebra(T)
    assert negneg.size == 2
    assert order_iso(negneg, R) is not None


def test_classical_coincidence_small():
    for L in [chain(2), chain(3), diamond(), powerset_lattice(3)]:
        assert (check_overlap_algebra(L).is_overlap_algebra
                == frame_report(L).is_boolean)
