from collections import Counter

import pytest

from artin import algebra as ab
from artin import arquiver as aq
from artin import modcat as mc
from oracles import indecomposables_truncated_f2

ALGS = {"f2": lambda: ab.field_algebra(2), "dual3": lambda: ab.truncated_polynomial(3, 2),
        "cubic2": lambda: ab.truncated_polynomial(2, 3), "a2": lambda: ab.linear_a2(3)}


@pytest.mark.parametrize("n", [2, 3])
def test_truncated_counts_against_brute_force(n):
    # brute force over F_2 up to dimension n; the knitted list must be the same
    expected = Counter(indecomposables_truncated_f2(n, n))
    for p in (2, 3):
        q = aq.ar_quiver(ab.truncated_polynomial(p, n))
        assert q.complete
        assert Counter(v.dim for v in q.vertices) == expected


def test_a2_has_three_indecomposables(a2):
    q = aq.ar_quiver(a2)
    assert sorted(v.dims for v in q.vertices) == [(0, 1), (1, 0), (1, 1)]
    # the simple projective S2 is the translate of the simple injective S1
    s1 = q.index_of(mc.simple(a2, 0))
    assert q.vertices[q.tau_of(s1)].dims == (0, 1)


@pytest.mark.parametrize("name", sorted(ALGS))
def test_every_knitted_sequence_is_almost_split(name):
    q = aq.ar_quiver(ALGS[name]())
    for end, s in q.ases.items():
        assert s.is_exact()
        assert aq.verify_almost_split(s, q.vertices)
        assert s.start.dim + s.end.dim == s.middle.dim


@pytest.mark.parametrize("name", sorted(ALGS))
def test_mesh_middle_terms_match_arrows(name):
    q = aq.ar_quiver(ALGS[name]())
    for end, s in q.ases.items():
        mid = Counter()
        for y, k in mc.decompose(s.middle):
            mid[q.index_of(y)] += k
        assert mid == Counter({a: k for a, k in q.predecessors(end)})


@pytest.mark.parametrize("name", sorted(ALGS))
def test_tau_inverse_lookup(name):
    q = aq.ar_quiver(ALGS[name]())
    for a, b in q.tau_pairs.items():
        assert q.tau_inv_of(b) == a


def test_property_star(dual3, cubic2):
    s = mc.simple(dual3, 0)
    assert aq.property_star(s)
    for m in aq.enumerate_indecomposables(cubic2):
        if not mc.is_projective_module(m):
            assert not aq.property_star(m)
    with pytest.raises(mc.IsProjective):
        aq.property_star(mc.projective(dual3, 0))


def test_bound_reported(cubic2):
    alg = ab.truncated_polynomial(2, 3)
    q = aq.ar_quiver(alg, max_vertices=2, strict=False)
    assert not q.complete
    with pytest.raises(aq.BoundExceeded):
        aq.ar_quiver(ab.truncated_polynomial(2, 3), max_vertices=2)


def test_exports_are_deterministic(cubic2):
    q = aq.ar_quiver(cubic2)
    assert aq.to_dot(q) == aq.to_dot(aq.ar_quiver(ab.truncated_polynomial(2, 3)))
    data = aq.to_json(q)
    assert [v["id"] for v in data["vertices"]] == list(range(3))
    assert aq.dumps(data) == aq.dumps(aq.to_json(q))
