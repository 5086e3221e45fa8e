"""Products, zero object, equalizers, the counterexample, the Pow functor."""
import pytest

from oakit import (
    ShapeMismatch,
    chain,
    compose,
    dagger,
    enumerate_join_maps,
    equalizer_search,
    identity_map,
    join_map,
    oa_product,
    ofrm_equalizer,
    order_iso,
    pow_functor_report,
    powerset_lattice,
    replay_counterexample,
    tupling,
    weak_equalizer_check,
    zero_object_check,
)

P0 = powerset_lattice(0)
P1 = powerset_lattice(1)
P2 = powerset_lattice(2)


def test_oa_product_basic():
    w = oa_product([P1, P1])
    assert w.product.size == 4 and w.pos_law
    assert order_iso(w.product, P2) is not None
    assert oa_product([]).product.size == 1


def test_oa_product_componentwise_pos():
    w = oa_product([P1, P2])
    for p in range(w.product.size):
        components = [pi.images[p] for pi in w.projections]
        assert (p != w.product.bottom) == any(
            c != f.bottom for c, f in zip(components, [P1, P2]))


def test_oa_product_projection_daggers():
    w = oa_product([P2, P1])
    for k, (pk, dk) in enumerate(zip(w.projections, w.projection_daggers)):
        for z in range(dk.source.size):
            assert pk.images[dk.images[z]] == z
        assert dagger(pk).images == dk.images


def test_tupling():
    w = oa_product([P1, P1])
    h = tupling(w, [identity_map(P1), identity_map(P1)])
    assert compose(w.projections[0], h).images == (0, 1)
    assert compose(w.projections[1], h).images == (0, 1)
    # the diagonal point {0} -> ({0},{0})
    top_pair = h.images[1]
    assert [p.images[top_pair] for p in w.projections] == [1, 1]
    with pytest.raises(ShapeMismatch):
        tupling(w, [identity_map(P1)])


def test_tupling_uniqueness():
    w = oa_product([P1, P1])
    gs = [identity_map(P1), join_map(P1, P1, (0, 0))]
    h = tupling(w, gs)
    others = [
        u for u in enumerate_join_maps(P1, w.product)
        if all(compose(w.projections[i], u).images == gs[i].images
               for i in range(2))
    ]
    assert len(others) == 1 and others[0].images == h.images


def test_zero_object():
    rep = zero_object_check()
    assert rep.holds
    assert all(a == 1 and b == 1 for _, a, b, _ in rep.per_object)
    rep2 = zero_object_check(family=[P0])
    assert rep2.holds  # both unique arrows on Pow(0) are the identity


def test_ofrm_equalizer_equal_pair():
    f = identity_map(P2)
    f = join_map(P2, P2, f.images)
    wit = ofrm_equalizer(f, f)
    assert wit.object.size == 4 and wit.universal
    assert wit.arrow.images == (0, 1, 2, 3)


def test_ofrm_equalizer_refined_pair():
    # the equalizing subset {0,{0},{0,1}} is not implication-closed;
    # the witness refines to its largest sub-o-algebra {0,{0,1}}
    f = join_map(P2, P1, (0, 1, 0, 1))
    g = join_map(P2, P1, (0, 1, 1, 1))
    wit = ofrm_equalizer(f, g)
    assert wit.evidence["equalizing_set_size"] == 3
    assert not wit.evidence["implication_closed"]
    assert wit.object.size == 2
    assert wit.arrow.images == (0, 0b11)
    assert wit.universal


def test_ofrm_equalizer_negneg_pair():
    g_imgs = tuple(P2.neg(P2.neg(x)) for x in range(4))
    wit = ofrm_equalizer(join_map(P2, P2, range(4)), join_map(P2, P2, g_imgs))
    assert wit.object.size == 4 and wit.universal


def test_equalizer_search_identity_pair():
    f = identity_map(P1)
    found = equalizer_search(f, f, [P0, P1])
    assert found is not None and found.object.size == 2
    assert found.arrow.images == (0, 1)


def test_weak_equalizer():
    L = P2
    f = join_map(L, P1, (0, 1, 0, 1))
    g = join_map(L, P1, (0, 1, 1, 1))
    t = join_map(L, L, (0, 0b01, 0b11, 0b11))
    rep = weak_equalizer_check(t, f, g, [P0, P1, P2])
    assert rep.equalizes and rep.factors and rep.identity_factorization
    assert rep.cones_checked > 0

    rep2 = weak_equalizer_check(identity_map(P1), identity_map(P1),
                                identity_map(P1), [P0, P1])
    assert rep2.equalizes and rep2.factors


def test_replay_counterexample():
    rep = replay_counterexample()
    assert rep.verdict == "NO_EQUALIZER"
    assert rep.join_preserving and rep.equalized_by_t
    assert rep.weak.equalizes and rep.weak.identity_factorization
    assert rep.t_image_size == 3
    assert rep.max_equalizing_mono_image == 2
    assert not rep.equalizer_found


def test_replay_values_match_hand_computation():
    # f(t(-a)) = f(1) = 1 = g(1) = g(t(-a))
    L = P2
    f = join_map(L, P1, (0, 1, 0, 1))
    g = join_map(L, P1, (0, 1, 1, 1))
    t = join_map(L, L, (0, 0b01, 0b11, 0b11))
    na = 0b10
    assert f.images[t.images[na]] == 1 == g.images[t.images[na]]


def test_pow_functor_counts():
    rep = pow_functor_report(2, 2)
    assert rep.relations == 16 and rep.join_maps == 16
    assert rep.faithful and rep.full and rep.dagger_preserved
    assert rep.functorial and rep.coproduct_iso

    rep0 = pow_functor_report(0, 0)
    assert rep0.relations == 1 and rep0.join_maps == 1

    rep21 = pow_functor_report(2, 1)
    assert rep21.relations == 4 and rep21.join_maps == 4


def test_dagger_functor_laws():
    for f in enumerate_join_maps(P2, P2):
        assert dagger(dagger(f)).images == f.images
    assert dagger(identity_map(P2)).images == identity_map(P2).images
