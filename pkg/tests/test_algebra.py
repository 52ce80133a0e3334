import json
import os

import pytest
from hypothesis import given, strategies as st

from artin import algebra as ab

ALGDIR = os.path.join(os.path.dirname(__file__), "..", "algebras")


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4))
def test_truncated_polynomial_is_associative_unital(p, n):
    alg = ab.truncated_polynomial(p, n)
    assert alg.dim == n
    assert alg.check_associative() and alg.check_idempotents()


def test_a2_basis_and_opposite(a2):
    assert a2.dim == 3 and a2.nvert == 2
    op = a2.opposite()
    assert op.dim == 3 and op.check_associative()
    assert op.opposite().dim == a2.dim


@pytest.mark.parametrize("make", [lambda: ab.truncated_polynomial(3, 2), lambda: ab.linear_a2(2)])
def test_triangular_matrix_algebra_dimension(make):
    alg = make()
    t2 = ab.t2_algebra(alg)
    # [[Λ, 0], [Λ, Λ]] has three copies of Λ
    assert t2.dim == 3 * alg.dim
    assert t2.check_associative()
    assert t2._cache["base"] is alg


def test_spec_roundtrip():
    text = open(os.path.join(ALGDIR, "f2_x3.json")).read()
    desc = ab.parse_spec(text)
    again = ab.parse_spec(json.dumps(ab.spec_to_json(desc)))
    assert again == desc
    assert ab.build_algebra(desc).dim == 3


def test_commutative_square_relation():
    spec = {
        "field": {"p": 3},
        "quiver": {"vertices": ["1", "2", "3", "4"],
                   "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "4"},
                              {"name": "c", "from": "1", "to": "3"}, {"name": "d", "from": "3", "to": "4"}]},
        "relations": [[{"path": ["a", "b"], "coeff": 1}, {"path": ["c", "d"], "coeff": -1}]],
    }
    alg = ab.load_algebra(json.dumps(spec))
    # 4 idempotents, 4 arrows, one surviving length-2 path
    assert alg.dim == 9


@pytest.mark.parametrize("text, exc", [
    ('{"field": {"p": 4}, "quiver": {"vertices": ["1"], "arrows": []}}', ab.SpecError),
    ('{"field": {"p": 2}}', ab.SpecError),
    ('{"field": {"p": 2}, "quiver": {"vertices": ["1"], "arrows": []}, "extra": 1}', ab.SpecError),
    ('{"field": {"p": 2}, "quiver": {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]},'
     ' "relations": [[{"path": ["x"], "coeff": 1}]]}', ab.NonAdmissible),
    ('{"field": ', ab.SpecError),
])
def test_bad_specs_rejected(text, exc):
    with pytest.raises(exc):
        ab.load_algebra(text)


def test_free_loop_is_infinite_dimensional():
    with pytest.raises(ab.InfiniteDimensional):
        ab.load_algebra(os.path.join(ALGDIR, "loop_free.json"))


def test_parse_error_carries_line_number():
    with pytest.raises(ab.SpecError, match="line 2"):
        ab.parse_spec('{"field":\n  ,}')
