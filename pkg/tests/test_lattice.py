"""Posets, lattices, frames, products, topologies."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oakit import (
    AntisymmetryViolation,
    NotALattice,
    NotATopology,
    SizeCap,
    chain,
    diamond,
    downset_lattice,
    frame_report,
    lattice_from_poset,
    order_iso,
    pentagon,
    poset_from_pairs,
    powerset_lattice,
    product_lattice,
    topo_ops,
    topology_from_opens,
)
from oakit.config import Caps


def strict_pairs(P):
    return {(a, b) for a in range(P.size) for b in range(P.size)
            if a != b and P.leq(a, b)}


def test_poset_from_pairs_chain():
    P = poset_from_pairs(3, [(0, 1), (1, 2)])
    assert P.leq(0, 2) and P.leq(0, 1) and P.leq(1, 2)
    assert not P.leq(2, 0)
    assert strict_pairs(P) == {(0, 1), (1, 2), (0, 2)}


def test_poset_from_pairs_cycle_rejected():
    with pytest.raises(AntisymmetryViolation):
        poset_from_pairs(2, [(0, 1), (1, 0)])


def test_poset_from_pairs_diamond_closure():
    # hand closure: generators plus the composite 0<3
    P = poset_from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert strict_pairs(P) == {(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)}


def test_lattice_from_poset_diamond():
    L = diamond()
    assert L.meet[1][2] == 0 and L.join[1][2] == 3
    assert L.bottom == 0 and L.top == 3


def test_lattice_from_poset_antichain_fails():
    P = poset_from_pairs(2, [])
    with pytest.raises(NotALattice):
        lattice_from_poset(P)


def test_pentagon_has_no_implication():
    N5 = pentagon()
    assert N5.impl is None
    assert not N5.is_frame()


def test_downset_lattice_small():
    one = poset_from_pairs(1, [])
    assert downset_lattice(one).size == 2
    two_chain = poset_from_pairs(2, [(0, 1)])
    D = downset_lattice(two_chain)
    # down-sets of a 2-chain: {}, {0}, {0,1}
    assert D.size == 3
    assert order_iso(D, chain(3)) is not None
    antichain = poset_from_pairs(2, [])
    D2 = downset_lattice(antichain)
    assert D2.size == 4
    assert order_iso(D2, powerset_lattice(2)) is not None


def test_downset_lattice_cap():
    big = poset_from_pairs(13, [])
    with pytest.raises(SizeCap):
        downset_lattice(big)


def test_powerset_lattice():
    assert powerset_lattice(0).size == 1
    P2 = powerset_lattice(2)
    assert P2.size == 4
    assert P2.meet[0b01][0b10] == 0 and P2.join[0b01][0b10] == 0b11
    P3 = powerset_lattice(3)
    assert P3.size == 8
    covers_bottom = [x for x in range(8) if bin(x).count("1") == 1]
    assert covers_bottom == [1, 2, 4]
    with pytest.raises(SizeCap):
        powerset_lattice(6)


def test_product_lattice_empty():
    prod, projs = product_lattice([])
    assert prod.size == 1 and list(projs) == []


def test_product_lattice_two_chains():
    prod, projs = product_lattice([chain(2), chain(2)])
    assert prod.size == 4
    assert order_iso(prod, powerset_lattice(2)) is not None
    # pointwise order
    for a in range(4):
        for b in range(4):
            pointwise = all(p.target.leq(p.images[a], p.images[b]) for p in projs)
            assert prod.leq(a, b) == pointwise


def test_product_lattice_3x2():
    prod, projs = product_lattice([chain(3), chain(2)])
    assert prod.size == 6
    assert [p.images[prod.bottom] for p in projs] == [0, 0]
    assert [p.images[prod.top] for p in projs] == [2, 1]


def test_frame_report():
    assert frame_report(powerset_lattice(2)).is_boolean
    rep = frame_report(chain(3))
    assert rep.is_frame and not rep.is_boolean
    # -m = m->0 = 0, so m v -m = m != top
    L = chain(3)
    assert L.neg(1) == 0
    assert not frame_report(pentagon()).is_frame


def test_topology_from_opens():
    T = topology_from_opens(2, [0b00, 0b10, 0b11])
    assert T.opens == (0b00, 0b10, 0b11)
    with pytest.raises(NotATopology):
        topology_from_opens(2, [0b00, 0b01, 0b10])  # no union, no full set
    topology_from_opens(3, [0, 0b010, 0b100, 0b110, 0b111])


def test_topo_ops_sierpinski():
    T = topology_from_opens(2, [0b00, 0b10, 0b11])
    interior, closure, core = topo_ops(T, 0b10)
    assert interior == 0b10 and closure == 0b11 and core == 0b11
    assert topo_ops(T, 0) == (0, 0, 0)


def test_topo_ops_three_point():
    T = topology_from_opens(3, [0, 0b010, 0b100, 0b110, 0b111])
    interior, closure, core = topo_ops(T, 0b010)
    assert interior == 0b010
    assert closure == 0b011  # point 0 has no neighbourhood avoiding {1}
    assert core == 0b010


def test_topo_ops_laws():
    T = topology_from_opens(3, [0, 0b010, 0b100, 0b110, 0b111])
    for Y in range(8):
        i, c, r = topo_ops(T, Y)
        assert i & ~Y == 0 and Y & ~c == 0
        assert topo_ops(T, i)[0] == i
        assert topo_ops(T, c)[1] == c
        assert topo_ops(T, r)[2] == r


def lattice_laws(L):
    n = L.size
    for x in range(n):
        assert L.meet[x][x] == x and L.join[x][x] == x
        assert L.leq(L.bottom, x) and L.leq(x, L.top)
        for y in range(n):
            assert L.meet[x][y] == L.meet[y][x]
            assert L.join[x][y] == L.join[y][x]
            assert L.meet[x][L.join[x][y]] == x
            assert L.join[x][L.meet[x][y]] == x
            for z in range(n):
                assert L.meet[L.meet[x][y]][z] == L.meet[x][L.meet[y][z]]
                assert L.join[L.join[x][y]][z] == L.join[x][L.join[y][z]]
                if L.impl is not None:
                    assert (L.leq(L.meet[z][x], y)
                            == L.leq(z, L.impl[x][y]))


def test_lattice_laws_on_generators():
    for L in [chain(4), diamond(), pentagon(), powerset_lattice(3)]:
        lattice_laws(L)
    for L in [chain(3), powerset_lattice(2)]:
        for x in range(L.size):
            assert L.meet[x][L.neg(x)] == L.bottom


@given(st.integers(1, 5), st.data())
@settings(max_examples=60, deadline=None)
def test_random_posets_close_properly(n, data):
    cells = list(itertools.combinations(range(n), 2))
    picked = data.draw(st.lists(st.sampled_from(cells), max_size=6)) if cells else []
    P = poset_from_pairs(n, picked)
    for a in range(n):
        assert P.leq(a, a)
        for b in range(n):
            if P.leq(a, b) and a != b:
                assert not P.leq(b, a)
            for c in range(n):
                if P.leq(a, b) and P.leq(b, c):
                    assert P.leq(a, c)


def test_caps_are_configuration():
    caps = Caps(powerset_max=6)
    assert powerset_lattice(6, caps=caps).size == 64
