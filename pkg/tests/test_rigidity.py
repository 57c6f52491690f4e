import itertools
from fractions import Fraction

import pytest

from semirigid import rigidity
from semirigid.fincat import ContractViolation, Mor, Obj, Q, rank
from semirigid.rigidity import (adjunction_from_components, all_ok, compose_adjunctions, dual_comparison,
                                duality_functor, find_dual, hom_iso_check, naive_self_duality,
                                split_mono_epi_check, templates, verify_adjunction)
from semirigid.semicat import subst

from conftest import RIGID, cert, doc


def _hand_point_adjunction(S, scale=Q(1)):
    """Vector-space duality on the 1-dimensional bimodule k: every component is a scalar."""
    c = S.calc()
    X = Obj(("P11",))
    comps = {}
    for n, (src, dst, _) in templates(X, X).items():
        a = c.ob(subst(src, X))
        b = c.ob(subst(dst, X))
        v = scale if n.startswith("eta") else 1 / scale
        comps[n] = {"P11": Mor(S.base, a, b, [[[v]]])}
    return adjunction_from_components(S, X, X, comps)


def test_hand_built_point_duality_passes_every_axiom():
    S = doc("k").semigroup
    rep = verify_adjunction(S, _hand_point_adjunction(S))
    assert all_ok(rep), rep
    assert all(v["checked"] > 0 for v in rep.values())


@pytest.mark.parametrize("name", RIGID)
def test_certificates_verify_on_both_sides(name):
    S = doc(name).semigroup
    c = cert(name)
    assert c.covers(S.base.objects)
    for table in (c.right, c.left):
        for adj in table.values():
            assert all_ok(verify_adjunction(S, adj))


@pytest.mark.parametrize("name", RIGID)
def test_units_split_and_hom_bijections(name):
    S = doc(name).semigroup
    for adj in cert(name).right.values():
        assert split_mono_epi_check(S, adj) == {"eta_l_split_mono": True, "eps_r_split_epi": True}
        assert hom_iso_check(S, adj) == []


def test_zero_category_naive_duality_fails_zigzags_only():
    S = doc("zero").semigroup
    for x in S.base.objects:
        rep = verify_adjunction(S, naive_self_duality(S, x))
        assert rep["I"]["ok"] and rep["II"]["ok"]
        assert not rep["III"]["ok"]
        assert rep["III"]["witness"]


def test_killed_counit_breaks_axiom_three_in_char_two():
    # scaling by 2 is scaling by 0 over GF(2)
    S = doc("z2").semigroup
    adj = cert("z2").right["P"]
    bad = adj.replace(eps_r=adj.eps_r.scale(S.base.field(2)))
    rep = verify_adjunction(S, bad)
    assert not rep["III"]["ok"] and rep["III"]["witness"]
    assert rep["I"]["ok"]


def test_scaled_counit_over_rationals():
    S = doc("dual").semigroup
    adj = cert("dual").right["P11"]
    rep = verify_adjunction(S, adj.replace(eps_r=adj.eps_r.scale(Q(2))))
    assert not rep["III"]["ok"]
    assert rep["I"]["ok"]


# ---------------------------------------------------------------------------
# composition

@pytest.mark.parametrize("name", ["k", "z2", "dual"])
def test_composite_adjunction_verifies(name):
    S = doc(name).semigroup
    x = S.base.objects[0]
    adj = cert(name).right[x]
    comp = compose_adjunctions(S, adj, adj, check_inputs=True)
    assert all_ok(verify_adjunction(S, comp))


def test_composite_unit_on_a_point_is_the_product_of_units():
    S = doc("k").semigroup
    adj = _hand_point_adjunction(S, Q(3))
    comp = compose_adjunctions(S, adj, adj)
    eta = comp.eta_l.comps["P11"]
    assert eta.blocks == [[[Q(9)]]]
    assert comp.eps_l.comps["P11"].blocks == [[[Fraction(1, 9)]]]


def test_composing_unverified_input_is_rejected():
    S = doc("zero").semigroup
    naive = naive_self_duality(S, "A")
    with pytest.raises(ContractViolation):
        compose_adjunctions(S, naive, naive, check_inputs=True)


# ---------------------------------------------------------------------------
# duality functor

@pytest.mark.parametrize("name", ["z2", "dual", "kxk"])
def test_duality_is_contravariant_and_fully_faithful(name):
    S = doc(name).semigroup
    B = S.base
    c = cert(name)
    for x in B.objects:
        X = Obj((x,))
        assert duality_functor(S, c, B.identity(X)) == B.identity(c.right_dual(S, x))
    for x, y in itertools.product(B.objects, repeat=2):
        X, Y = Obj((x,)), Obj((y,))
        dom = B.hom_basis(X, Y)
        Xd, Yd = c.right_dual(S, x), c.right_dual(S, y)
        cod_dim = len(B.hom_basis(Yd, Xd))
        assert len(dom) == cod_dim
        if dom:
            imgs = [duality_functor(S, c, f).flat() for f in dom]
            assert rank(imgs, len(imgs[0])) == cod_dim
    for x, y, z in itertools.product(B.objects, repeat=3):
        for f in B.hom_basis(Obj((x,)), Obj((y,))):
            for g in B.hom_basis(Obj((y,)), Obj((z,))):
                lhs = duality_functor(S, c, B.compose(g, f))
                rhs = B.compose(duality_functor(S, c, f), duality_functor(S, c, g))
                assert lhs == rhs


def test_left_and_right_duality_are_mutually_inverse_on_objects():
    S = doc("kxk").semigroup
    c = cert("kxk")
    for x in S.base.objects:
        d = c.right_dual(S, x)
        assert len(d) == 1
        assert c.left_dual(S, d[0]) == Obj((x,))


def test_missing_certificate_entry_is_explicit():
    S = doc("z2").semigroup
    empty = rigidity.RigidityCertificate()
    with pytest.raises(KeyError):
        duality_functor(S, empty, S.base.identity(Obj(("P",))))


def test_gauge_related_duals_are_compared_by_an_isomorphism():
    S = doc("k").semigroup
    a1 = _hand_point_adjunction(S)
    a2 = _hand_point_adjunction(S, Q(5))
    fwd, bwd, ok = dual_comparison(S, a1, a2)
    assert ok
    assert S.base.is_iso(fwd)
    assert fwd.blocks == [[[Q(5)]]]


def test_gauge_comparison_on_certificate_data():
    S = doc("dual").semigroup
    adj = cert("dual").right["P11"]
    g = Q(7)
    other = adj.replace(eta_l=adj.eta_l.scale(g), eta_r=adj.eta_r.scale(g),
                        eps_l=adj.eps_l.scale(1 / g), eps_r=adj.eps_r.scale(1 / g))
    assert all_ok(verify_adjunction(S, other))
    _, _, ok = dual_comparison(S, adj, other)
    assert ok


# ---------------------------------------------------------------------------
# search

def test_find_dual_on_point_is_self_dual():
    S = doc("k").semigroup
    adj = find_dual(S, "P11")
    assert adj is not None and adj.Fd == Obj(("P11",))
    assert all_ok(verify_adjunction(S, adj))


def test_find_dual_group_projective_is_self_dual():
    S = doc("z2").semigroup
    adj = find_dual(S, "P")
    assert adj is not None and S.calc().ob(adj.Fd) == Obj(("P",))


def test_find_dual_on_zero_category_finds_nothing():
    S = doc("zero").semigroup
    log = []
    assert find_dual(S, "A", log=log) is None
    assert rigidity.build_certificate(S) is None


def test_kxk_duals_transpose_the_indices():
    S = doc("kxk").semigroup
    c = cert("kxk")
    assert {x: c.right_dual(S, x)[0] for x in S.base.objects} == \
        {"P11": "P11", "P12": "P21", "P21": "P12", "P22": "P22"}
