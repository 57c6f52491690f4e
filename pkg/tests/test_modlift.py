import pytest

from semirigid import decat, modlift, simplicity
from semirigid.fincat import Obj, Q
from semirigid.semicat import ActionData
from semirigid.shell.generators import regular_module, semisimplification_module, zero_action_module

from conftest import RIGID, cert, doc


@pytest.mark.parametrize("name", ["k", "dual", "kxk", "z2", "y0"])
def test_regular_module_validates(name):
    S = doc(name).semigroup
    assert modlift.validate_module(S, regular_module(S)).ok


def test_zeroed_multiplicativity_block_is_caught():
    S = doc("dual").semigroup
    M = regular_module(S)
    mult = dict(M.mult)
    key = ("P11", "P11", "P11")
    m = mult[key]
    blocks = [list(row) for row in m.blocks]
    blocks[0] = [[Q(0)] * len(v) for v in blocks[0]]
    mult[key] = type(m)(S.base, m.src, m.dst, blocks)
    rep = modlift.validate_module(S, ActionData(S, M.base, M.act_obj, M.act_mor, mult))
    assert not rep.ok
    assert rep.first()["objects"] == list(key)


def test_restricted_monoid_module_validates():
    S, M = semisimplification_module()
    assert modlift.validate_module(S, M).ok


def test_module_over_another_semigroup_is_rejected():
    S, M = semisimplification_module()
    rep = modlift.validate_module(doc("star").semigroup, M)
    assert not rep.ok


# ---------------------------------------------------------------------------
# realizations

@pytest.mark.parametrize("name", RIGID)
def test_regular_module_realizes_certificate_adjunctions(name):
    S = doc(name).semigroup
    for F, adj in cert(name).right.items():
        r = modlift.adjunction_realization(S, adj)
        assert r.status == "found", r.reason
        assert r.coherence_failures == [] and r.triangle_failures == []


def test_synthesized_unit_is_coherent_on_group_projectives():
    S = doc("z2").semigroup
    adj = cert("z2").right["P"]
    r = modlift.adjunction_realization(S, adj)
    c = S.calc()
    for x in S.base.objects:
        X = Obj((x,))
        for h in S.base.objects:
            H = Obj((h,))
            assert c.agree(c.lwhisker(H, r.eta.at(X)), c.rwhisker(adj.eta_l.at(H), X))
            assert c.agree(c.lwhisker(H, r.eps.at(X)), c.rwhisker(adj.eps_l.at(H), X))


def test_semisimplification_functor_is_not_self_adjoint():
    S, M = semisimplification_module()
    star = cert("star")
    r = modlift.adjunction_realization(M, star.right["*"])
    assert r.status == "refuted"
    a, b = r.hom_dims[("S", "R")]
    assert a != b


# ---------------------------------------------------------------------------
# lifts

@pytest.mark.parametrize("name", ["k", "z2"])
def test_unital_lift_on_disimple_regular_modules(name):
    S = doc(name).semigroup
    rep = modlift.unital_lift_check(S, cert(name))
    assert rep.ok and rep.stage == "done"
    for a in rep.actions.values():
        assert a.theta_sigma and a.sigma_theta


def test_zero_action_is_rejected_at_precondition():
    S = doc("dual").semigroup
    rep = modlift.unital_lift_check(zero_action_module(S), cert("dual"))
    assert not rep.ok and rep.stage == "precondition"
    assert "S*M != M" in rep.reason


def test_lift_needs_certificate():
    S = doc("z2").semigroup
    with pytest.raises(modlift.PreconditionError):
        modlift.unital_lift_check(S, None)


# ---------------------------------------------------------------------------
# projectivizing

@pytest.mark.parametrize("name", ["k", "z2"])
def test_disimple_regular_modules_are_projectivizing(name):
    ok, wit = modlift.projectivizing_check(doc(name).semigroup)
    assert ok and wit is None


def test_dual_numbers_not_projectivizing():
    ok, wit = modlift.projectivizing_check(doc("dual").semigroup)
    assert not ok
    assert wit["presheaf"] == "simple P11"


@pytest.mark.parametrize("name", ["k", "z2", "dual", "add_dual"])
def test_simple_transitive_with_km_idempotent_implies_projectivizing(name):
    S = doc(name).semigroup
    st = simplicity.stability_report(S, "left").simple_transitive
    km = decat.km_check(S, decat.pf_idempotent(S).e).ok
    if st and km:
        assert modlift.projectivizing_check(S)[0]
