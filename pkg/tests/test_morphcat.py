from collections import Counter

import pytest
from hypothesis import given, strategies as st

from artin import algebra as ab
from artin import arquiver as aq
from artin import modcat as mc
from artin import morphcat as mh
from oracles import indecomposable_maps_dual_numbers_f2

ALGS = {"dual3": lambda: ab.truncated_polynomial(3, 2), "cubic2": lambda: ab.truncated_polynomial(2, 3),
        "a2": lambda: ab.linear_a2(3)}
_CACHE = {}


def hq_of(name):
    if name not in _CACHE:
        _CACHE[name] = mh.ar_quiver_H(ALGS[name]())
    return _CACHE[name]


@pytest.mark.parametrize("p", [2, 3])
def test_dual_numbers_h_objects_against_brute_force(p):
    expected = Counter(indecomposable_maps_dual_numbers_f2(2))
    hq = mh.ar_quiver_H(ab.truncated_polynomial(p, 2))
    got = Counter((o.x.dim, o.y.dim) for o in hq.objects)
    assert hq.quiver.complete and got == expected
    assert sum(got.values()) == 9


def test_frozen_vertex_counts():
    # brute force above fixes 9 for the dual numbers; the rest are knitted values,
    # tied to the Auslander algebra counts (checked by direct knitting there)
    assert len(hq_of("cubic2").objects) == 27
    assert len(hq_of("a2").objects) == 11


@pytest.mark.parametrize("name", sorted(ALGS))
def test_type_census(name):
    hq = hq_of(name)
    n = len(aq.ar_quiver(hq.alg).vertices)
    c = Counter(hq.types)
    assert c["a"] == c["b"] == c["c"] == n


@pytest.mark.parametrize("name", sorted(ALGS))
def test_structural_translate_agrees_with_t2(name):
    hq = hq_of(name)
    for o in hq.objects:
        if mh.is_projective_H(o):
            continue
        s = mh.tau_H_structural(o)
        t = mh.tau_H_t2(o)
        assert mh.is_iso_H(s, t)
        back = mh.tau_inv_H_structural(s)
        assert mh.is_iso_H(back, o)


@pytest.mark.parametrize("name", sorted(ALGS))
def test_t2_roundtrip(name):
    for o in hq_of(name).objects:
        assert mh.is_iso_H(mh.from_t2(mh.t2_oracle(o)), o)


@pytest.mark.parametrize("name", ["dual3", "cubic2"])
def test_boundary_and_composite_sequences(name):
    hq = hq_of(name)
    universe = hq.objects
    for c, delta in aq.ar_quiver(hq.alg).ases.items():
        first, second = mh.boundary_ases(delta)
        for conf in (first, second):
            assert mh.verify_almost_split_H(conf, universe)
            assert mh.conflations_isomorphic(conf, mh.almost_split_H(conf.end))
        tc = delta.start
        if not mc.is_projective_module(tc):
            dp = aq.almost_split_ending(tc)
            comp = mh.composite_ases(delta, dp)
            assert mh.verify_almost_split_H(comp, universe)
            assert mh.conflations_isomorphic(comp, mh.almost_split_H(comp.end))


@pytest.mark.parametrize("name", sorted(ALGS))
def test_cw_projectives_are_types_a_b(name):
    hq = hq_of(name)
    for o, t in zip(hq.objects, hq.types):
        proj, inj = mh.cw_projective_injective(o)
        assert proj == (t in ("a", "b"))
        assert inj == (t in ("b", "c"))


def test_degreewise_splitting_rows(dual3):
    rows = mh.verify_cor_4_6(dual3)
    assert all(r["split"] for r in rows if r["applies"])


@pytest.mark.parametrize("name", ["dual3", "cubic2"])
def test_mesh_chain(name):
    alg = hq_of(name).alg
    for m in aq.enumerate_indecomposables(alg):
        if mc.is_projective_module(m):
            continue
        frag = mh.mesh_7_2(m)
        assert all(frag.chain_matches)
        assert set(frag.removal_flags.values()) <= {"b", "c"}
        assert frag.removal_flags.get("(tau C->tau C)") == "b"
        assert frag.removal_flags.get("(tau^2 C->0)") == "c"


@given(st.data())
def test_direct_sums_decompose_back(data):
    hq = hq_of("dual3")
    idx = data.draw(st.lists(st.integers(0, len(hq.objects) - 1), min_size=1, max_size=3))
    objs = [hq.objects[i] for i in idx]
    total = mh.direct_sum_H(objs)[0]
    parts = Counter()
    for s, k in mh.decompose_H(total, seed=data.draw(st.integers(0, 5))):
        parts[hq.index_of(s)] += k
    assert parts == Counter(idx)


@given(st.data())
def test_hom_basis_maps_commute_and_compose(data):
    hq = hq_of("dual3")
    n = len(hq.objects)
    i, j, k = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    a, b, c = hq.objects[i], hq.objects[j], hq.objects[k]
    for f in mh.hom_H(a, b):
        assert f.is_valid()
        for g in mh.hom_H(b, c):
            assert (g @ f).is_valid()
