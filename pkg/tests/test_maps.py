"""Join maps, adjoints, daggers, relations, factorizations."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oakit import (
    NotJoinPreserving,
    NotSymmetrizable,
    PreconditionFailed,
    Relation,
    adjoints,
    chain,
    compose,
    dagger,
    enumerate_join_maps,
    enumerate_ofrm_arrows,
    identity_map,
    image_factorization,
    is_sub_oalgebra,
    join_map,
    map_to_rel,
    morphism_report,
    powerset_lattice,
    preserves_finite_meets,
    rel_compose,
    rel_dagger,
    rel_to_map,
    symmetric_pair_report,
)

P1 = powerset_lattice(1)
P2 = powerset_lattice(2)


def all_relations(nX, nY):
    cells = [(x, y) for x in range(nX) for y in range(nY)]
    for mask in range(1 << len(cells)):
        yield Relation(nX, nY, frozenset(
            cells[i] for i in range(len(cells)) if mask >> i & 1))


def test_join_map_validation():
    identity_map(P2)
    join_map(P2, P2, range(4))
    with pytest.raises(NotJoinPreserving):
        join_map(chain(3), P1, (0, 1, 0))  # not monotone
    join_map(P2, P1, (0, 1, 0, 1))


def test_adjoints():
    f = join_map(P2, P1, (0, 1, 0, 1))  # does x contain point 0
    right, left = adjoints(f)
    assert right.images[0] == 0b10 and right.images[1] == 0b11
    assert left is not None  # f preserves finite meets
    ri, li = adjoints(identity_map(P2))
    assert ri.images == (0, 1, 2, 3) and li.images == (0, 1, 2, 3)
    const_bot = join_map(P2, P2, (0, 0, 0, 0))
    fa, _ = adjoints(const_bot)
    assert fa.images == (3, 3, 3, 3)


def test_dagger_basics():
    assert dagger(identity_map(P2)).images == (0, 1, 2, 3)
    f = join_map(P2, P1, (0, 1, 0, 1))
    fd = dagger(f)
    assert fd.images[1] == 0b01 and fd.images[0] == 0
    with pytest.raises(PreconditionFailed):
        dagger(join_map(chain(3), P1, (0, 0, 1)))  # source not an o-algebra


def test_dagger_matches_relation_dagger():
    for R in all_relations(2, 2):
        f = rel_to_map(R)
        assert dagger(f).images == rel_to_map(rel_dagger(R)).images


def test_dagger_involution_and_composite():
    for f in enumerate_join_maps(P2, P1):
        fd = dagger(f)
        assert dagger(fd).images == f.images
    for f in enumerate_join_maps(P2, P1):
        for g in enumerate_join_maps(P1, P2):
            gf = compose(g, f)
            assert dagger(gf).images == compose(dagger(f), dagger(g)).images


def test_symmetric_pair_report():
    a = 0b01
    fa = join_map(P2, P2, tuple(P2.meet[a][x] for x in range(4)))
    rep = symmetric_pair_report(fa, fa)
    assert rep.symmetric and rep.cond1 and rep.cond2 and rep.cond3 and rep.cond4
    assert rep.absorption

    const_top = join_map(P2, P2, (0, 3, 3, 3))
    # close enough to constant-top for the purpose: id against a non-conjugate
    rep = symmetric_pair_report(identity_map(P2), const_top)
    assert not rep.symmetric

    f = join_map(P2, P1, (0, 1, 0, 1))
    rep = symmetric_pair_report(f, dagger(f))
    assert rep.symmetric and rep.absorption


def test_symmetric_partner_unique():
    f = join_map(P2, P1, (0, 1, 0, 1))
    fd = dagger(f)
    partners = [g for g in enumerate_join_maps(P1, P2)
                if symmetric_pair_report(f, g).symmetric]
    assert len(partners) == 1 and partners[0].images == fd.images


def test_morphism_report_meet_map():
    a = 0b01
    fa = join_map(P2, P2, tuple(P2.meet[a][x] for x in range(4)))
    rep = morphism_report(fa)
    assert rep.cond1 and rep.cond2 and rep.cond3
    assert not (rep.cond4 or rep.cond5 or rep.cond6 or rep.cond7)
    assert not rep.preserves_finite_meets  # top is not preserved
    assert rep.law_failures == ()


def test_morphism_report_identity_and_mono():
    rep = morphism_report(identity_map(P2))
    assert rep.is_iso and rep.mono and rep.epi and rep.open_map

    f = join_map(P1, P2, (0, 0b11))
    rep = morphism_report(f)
    assert rep.injective and rep.mono
    assert rep.cond6  # f-dagger sends top to top
    assert dagger(f).images == tuple(
        1 if P2.ov(x, 0b11) else 0 for x in range(4))


def test_compose():
    f = join_map(P2, P1, (0, 1, 0, 1))
    assert compose(identity_map(P1), f).images == f.images


def test_rel_to_map():
    eq = Relation(2, 2, frozenset({(0, 0), (1, 1)}))
    assert rel_to_map(eq).images == (0, 1, 2, 3)
    empty = Relation(2, 2, frozenset())
    assert set(rel_to_map(empty).images) == {0}
    R = Relation(2, 2, frozenset({(0, 0), (0, 1)}))
    m = rel_to_map(R)
    assert m.images[0b01] == 0b01 and m.images[0b10] == 0b01


def test_map_to_rel_round_trip():
    assert map_to_rel(identity_map(P2)).pairs == {(0, 0), (1, 1)}
    const_bot = join_map(P2, P2, (0, 0, 0, 0))
    assert map_to_rel(const_bot).pairs == frozenset()
    for R in all_relations(2, 2):
        assert map_to_rel(rel_to_map(R)) == R


def test_rel_functoriality():
    for R in all_relations(2, 2):
        for S in all_relations(2, 2):
            lhs = rel_to_map(rel_compose(S, R))
            rhs = compose(rel_to_map(R), rel_to_map(S))
            assert lhs.images == rhs.images


def test_image_factorization():
    image, inc = image_factorization(identity_map(P2))
    assert image.size == 4 and inc.images == (0, 1, 2, 3)
    f = join_map(P1, P2, (0, 0b11))
    image, inc = image_factorization(f)
    assert image.size == 2 and inc.images == (0, 0b11)
    g = join_map(P2, P1, (0, 1, 0, 1))
    image, _ = image_factorization(g)
    assert image.size == g.target.size  # surjective: image is the target


def test_is_sub_oalgebra():
    assert is_sub_oalgebra(P2, [0, 0b11])
    assert not is_sub_oalgebra(P2, [0, 0b01, 0b11])  # impl {0}->empty = {1}
    assert is_sub_oalgebra(P2, range(4))


def brute_force_join_maps(src, tgt):
    out = []
    for imgs in itertools.product(range(tgt.size), repeat=src.size):
        try:
            out.append(join_map(src, tgt, imgs).images)
        except NotJoinPreserving:
            pass
    return sorted(out)


def test_enumerate_join_maps_against_brute_force():
    for src, tgt in [(P1, P2), (P2, P1), (chain(3), P1), (P2, chain(3)),
                     (chain(3), chain(3))]:
        fast = sorted(f.images for f in enumerate_join_maps(src, tgt))
        assert fast == brute_force_join_maps(src, tgt)
        assert len(fast) == len(set(fast))


def test_enumerate_ofrm_arrows_subset():
    arrows = enumerate_ofrm_arrows(P2, P1)
    assert all(preserves_finite_meets(f) for f in arrows)
    assert {f.images for f in arrows} <= {
        f.images for f in enumerate_join_maps(P2, P1)}


@given(st.integers(0, 15), st.integers(0, 15))
@settings(max_examples=40, deadline=None)
def test_rel_dagger_involutive_and_monotone(mask_a, mask_b):
    cells = [(x, y) for x in range(2) for y in range(2)]
    Ra = Relation(2, 2, frozenset(c for i, c in enumerate(cells) if mask_a >> i & 1))
    Rb = Relation(2, 2, frozenset(c for i, c in enumerate(cells) if mask_b >> i & 1))
    assert rel_dagger(rel_dagger(Ra)) == Ra
    assert rel_dagger(rel_compose(Rb, Ra)) == rel_compose(
        rel_dagger(Ra), rel_dagger(Rb))
