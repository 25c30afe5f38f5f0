import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exspec import closed_forms as cf
from exspec import fusion, gl2, verify
from exspec.fusion import L1, L2, X, DescriptorError, FusionDescriptor, RadicalClass, SplitMultiset
from exspec.ring import INF


def P(name, p=None):
    return fusion.preset(name, p)


def test_preset_examples():
    F = P("L3p.3", 5)
    assert set(F.we_group().elements()) == set(gl2.named_group(5, "T").elements())
    assert [rc.lines for rc in F.radicals] == [(0,), (INF,)]
    on = P("ON")
    assert len(on.radicals) == 2 and len(on.radical_lines()) == 4
    with pytest.raises(DescriptorError):
        P("ON", 5)
    with pytest.raises(DescriptorError):
        P("L3p")
    with pytest.raises(DescriptorError):
        P("L4(7)")


def test_cohomology_dims_examples():
    F = P("L3(7).3")
    assert fusion.hg_dim(F, 0) == 1
    assert [fusion.hg_dim(F, n) for n in (2, 4, 6, 8, 10)] == [0] * 5
    assert fusion.hg_dim(F, 12) == 1
    assert fusion.hg_dim(F, 7) == 0


def test_multiplicity_examples():
    assert fusion.m1_mult(P("L3(7)"), 0) == 3
    assert fusion.m1_mult(P("L3(7).S3"), 0) == 1
    for name in ("L3(7).3", "L3(7).S3", "RV1", "Fi24"):
        assert all(fusion.m1_mult(P(name), q) == 0 for q in range(1, 6))
    assert fusion.m2_zero(P("L3(7)")) == 3
    assert fusion.m2_zero(P("L3(7):2")) == 2
    assert fusion.m2_zero(P("Fi24")) == 1
    T3 = P("L3(7).3")
    assert fusion.m2_mult(T3, 2) == 1 and fusion.m2_mult(T3, 4) == 1
    assert [fusion.m2_mult(P("L3(7)"), q) for q in (1, 3, 5)] == [0, 0, 0]
    assert fusion.m2_mult(P("L3(7)"), 2) == 3
    with pytest.raises(ValueError):
        fusion.m2_mult(T3, 0)


@pytest.mark.parametrize("name", fusion.P7_PRESETS)
def test_preset_identities(name):
    F = P(name)
    assert fusion.n_mult(F, 0, 0) == 1
    assert fusion.m2_zero(F) == fusion.m1_mult(F, 0)
    assert fusion.split(F).is_nonnegative()


def test_split_examples():
    assert fusion.split(P("L3(7).3")) == cf.P7_LISTS["T"]
    assert fusion.split(P("L3(7)")) == cf.P7_LISTS["H"]
    want = SplitMultiset.of(X(0, 0), (2, X(4, 0)), X(2, 3), X(4, 2), L1(0), L2(0))
    assert fusion.split(P("L3p", 5)) == want


def test_compare_examples():
    Y = SplitMultiset.of(X(2, 2), X(6, 0), X(6, 3))
    Yp = SplitMultiset.of(X(2, 5), X(6, 0), X(6, 3))
    Z = SplitMultiset.of(X(4, 1), X(4, 4))
    Lt = SplitMultiset.of(L2(2), L2(4))
    M2 = SplitMultiset.of(L1(0), L2(0))
    assert fusion.compare(P("L3(7)"), P("L3(7):2")) == Y + Yp + Z + M2 + Lt
    assert fusion.compare(P("ON"), P("ON")) == SplitMultiset()
    assert fusion.compare(P("L3(7).S3"), P("RV1")) == M2 + Lt
    with pytest.raises(ValueError):
        fusion.compare(P("ON"), P("L3p", 5))


def test_dimension_equivalence_examples():
    F = P("L3(7)")
    assert fusion.equivalence_by_dims(F, F)
    assert not fusion.equivalence_by_dims(F, P("L3(7):2"))
    assert fusion.first_dim_difference(F, P("L3(7):2")) == 6


def test_synthetic_p3_equivalence():
    descs = verify.synthetic_descriptors(3)
    same = [(a, b) for i, a in enumerate(descs) for b in descs[i + 1 :] if fusion.equivalence_by_dims(a, b)]
    assert same
    assert all(fusion.split(a) == fusion.split(b) for a, b in same)


def test_order24_subgroups():
    assert fusion.order24_subgroups_check()


def test_split_multiset_serialization():
    sp = cf.P7_LISTS["H"]
    data = json.loads(sp.to_json())
    assert set(data) == {"X", "L1", "L2"}
    assert SplitMultiset.from_dict(data) == sp
    assert sp.wedge().startswith("X_{0,0} v 2X_{2,2}")
    assert "3M(2)" in sp.wedge()
    assert SplitMultiset().wedge() == "*"
    with pytest.raises(ValueError):
        SplitMultiset.from_dict({"Y": {}})


@pytest.mark.parametrize("name", fusion.P7_PRESETS)
def test_descriptor_round_trip_presets(name):
    text = P(name).to_json()
    again = FusionDescriptor.from_json(text)
    assert again.to_json() == text
    assert again == P(name)


@given(st.sampled_from(verify.synthetic_descriptors(3)))
def test_descriptor_round_trip_synthetic(F):
    text = F.to_json()
    assert FusionDescriptor.from_json(text).to_json() == text


def test_descriptor_validation():
    p = 7
    T = gl2.named_group(p, "T").generators
    with pytest.raises(DescriptorError):
        FusionDescriptor(p, T, (RadicalClass((1,), "GL2"),))  # {A_1} is not a T-orbit
    with pytest.raises(DescriptorError):
        FusionDescriptor(p, T, (RadicalClass((0,), "GL2"), RadicalClass((0,), "SL2:2")))
    with pytest.raises(DescriptorError):
        FusionDescriptor(p, T, (RadicalClass((0,), "SU3"),))
    with pytest.raises(DescriptorError):
        FusionDescriptor(p, T, (RadicalClass((0,), (gl2.diag(p, 3, 1),)),))
    for bad in ("{", "[]", '{"p": 7}', '{"p": 7, "we": [[[0, 0], [0, 0]]], "radicals": []}'):
        with pytest.raises(DescriptorError):
            FusionDescriptor.from_json(bad)
