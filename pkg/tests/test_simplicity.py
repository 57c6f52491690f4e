import pytest

from semirigid import simplicity
from semirigid.fincat import CatPresentation, ContractViolation, IdealData, Obj, Q, radical
from semirigid.rigidity import build_certificate
from semirigid.shell.generators import algebra_preset, generate

from conftest import cert, doc


def _closure_is_fixpoint(S, ideal, side):
    gens = [(x, y, v) for (x, y), sp in ideal.spaces.items() for v in sp.basis()]
    again = simplicity.ideal_closure(S, gens, side)
    return again.dims() == ideal.dims()


def test_identity_generates_everything_in_transitive_module():
    S = doc("dual").semigroup
    I = simplicity.ideal_closure(S, [S.base.identity(Obj(("P11",)))])
    assert I.dims() == IdealData.full(S.base).dims()


def test_radical_generator_stays_in_radical():
    S = doc("dual").semigroup
    B = S.base
    I = simplicity.ideal_closure(S, [("P11", "P11", B.unit_vec("P11", "P11", 3))])
    assert 0 < I.total_dim() < 4
    assert I <= radical(B)
    assert simplicity.is_stable(S, I, "left")
    assert _closure_is_fixpoint(S, I, "left")
    # every element of the closure is nilpotent
    for v in I[("P11", "P11")].basis():
        f = B.basis_mor("P11", "P11", 0).scale(Q(0))
        f.blocks[0][0] = list(v)
        assert B.compose(f, B.compose(f, f)).is_zero()


def test_empty_generators_give_zero_ideal():
    S = doc("kxk").semigroup
    assert simplicity.ideal_closure(S, []).is_zero()


def test_unknown_side_is_rejected():
    with pytest.raises(ValueError):
        simplicity.ideal_closure(doc("k").semigroup, [], "diagonal")


# ---------------------------------------------------------------------------
# stability reports

@pytest.mark.parametrize("side", ["left", "right"])
def test_point_is_simple_transitive(side):
    r = simplicity.stability_report(doc("k").semigroup, side)
    assert r.transitive and r.simple_transitive


def test_kxk_is_not_transitive():
    S = doc("kxk").semigroup
    left = simplicity.stability_report(S, "left")
    right = simplicity.stability_report(S, "right")
    assert not left.transitive and left.witness == ("P11", "P12")
    assert not right.transitive and right.witness == ("P11", "P21")
    assert not left.simple_transitive


def test_dual_numbers_transitive_but_not_simple():
    S = doc("dual").semigroup
    r = simplicity.stability_report(S, "left")
    assert r.transitive and not r.simple_transitive
    assert r.certificate == "nonzero stable ideal in radical"
    assert r.ideal.dims() == {("P11", "P11"): 2}
    # the certificate re-verifies
    assert simplicity.is_stable(S, r.ideal, "left")
    assert r.ideal <= radical(S.base) and not r.ideal.is_zero()
    assert _closure_is_fixpoint(S, r.ideal, "left")


@pytest.mark.parametrize("side", ["left", "right"])
def test_group_projectives_simple_transitive(side):
    r = simplicity.stability_report(doc("z2").semigroup, side)
    assert r.simple_transitive and r.ideal.is_zero()


# ---------------------------------------------------------------------------
# finite tensor decision

@pytest.mark.parametrize("name,verdict,end", [("k", "yes", 1), ("z2", "yes", 1), ("dual", "no", 2),
                                               ("kxk", "no", 2)])
def test_decide_finite_tensor(name, verdict, end):
    v = simplicity.decide_finite_tensor(doc(name).semigroup, cert(name))
    assert v.verdict == verdict
    assert v.unit_end_dim == end
    assert v.consistent and v.notes == []


def test_decision_needs_a_certificate():
    with pytest.raises(simplicity.PreconditionError):
        simplicity.decide_finite_tensor(doc("zero").semigroup, None)


# ---------------------------------------------------------------------------
# traces

def _one_object(A_name):
    A = algebra_preset(A_name)
    comp = {("X", "X", "X"): [[A.mul(A.basis(i), A.basis(j)) for i in range(A.dim)] for j in range(A.dim)]}
    return CatPresentation(A.field, ["X"], {("X", "X"): A.dim}, comp, {"X": list(A.unit)}), A.dim


@pytest.mark.parametrize("algebra", ["k", "dual", "kxk"])
def test_trace_of_commutative_algebra(algebra):
    cat, d = _one_object(algebra)
    assert simplicity.trace_k(cat).dim == d


def test_trace_of_group_algebra():
    assert simplicity.trace_k(doc("z2").category).dim == 2


def test_trace_of_two_scalar_objects():
    assert simplicity.trace_k(doc("y0").category).dim == 2


def test_trace_identifies_isomorphic_objects():
    o, z = Q.one, Q.zero
    homdim = {(a, b): 1 for a in "XY" for b in "XY"}
    comp = {(a, b, c): [[[o]]] for a in "XY" for b in "XY" for c in "XY"}
    cat = CatPresentation(Q, ["X", "Y"], homdim, comp, {"X": [o], "Y": [o]})
    assert simplicity.trace_k(cat).dim == 1


def test_trace_multiplication_on_monoid():
    t = simplicity.trace_k(doc("star").category, doc("star").semigroup)
    assert t.dim == 1 and t.mult == [[[Q.one]]]


def test_enriched_trace_is_the_unit():
    S = doc("add_dual").semigroup
    et = simplicity.enriched_trace(S, cert("add_dual"))
    assert et.presheaf.total_dim() == 2
    assert et.unit_comparison == "iso"


def test_enriched_trace_on_the_ground_field():
    d = generate("algebra_add", algebra="k")
    et = simplicity.enriched_trace(d.semigroup, build_certificate(d.semigroup))
    assert et.presheaf.total_dim() == 1 and et.unit_comparison == "iso"


def test_enriched_trace_needs_symmetry():
    with pytest.raises(ContractViolation):
        simplicity.enriched_trace(doc("dual").semigroup, cert("dual"))
