from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvlie.algebra import MetricLieAlgebra, Subspace, direct_sum
from solvlie.catalog import build_heisenberg_extension, build_km_sl3
from solvlie.exceptions import ClosureError, DegenerateMetricError, InputError
from solvlie.linalg import Mat, is_zero_vec, vec, zero_vec

KM = build_km_sl3().file.algebra


def heisenberg3():
    return MetricLieAlgebra(
        ["X", "Y", "Z"], {(0, 1): vec([0, 0, 1])}, Mat.identity(3)
    )


def km_index(label):
    return KM.labels.index(label)


def km_axis(label):
    return KM.basis_vector(km_index(label))


small = st.fractions(min_value=-9, max_value=9, max_denominator=4)
km_vectors = st.lists(small, min_size=14, max_size=14).map(vec)


def test_validate_km():
    report = KM.validate()
    assert report.passed
    assert {c.name for c in report.checks} == {
        "antisymmetry",
        "jacobi",
        "gram_symmetric",
        "gram_nondegenerate",
    }


def test_validate_abelian():
    L = MetricLieAlgebra(["a", "b"], {}, Mat.diagonal([1, -1]))
    assert L.validate().passed


def test_antisymmetry_violation_in_raw_tensor():
    n = 4
    tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
    tensor[1][2][3] = 1
    tensor[2][1][3] = 1  # should be -1
    with pytest.raises(InputError, match=r"\(1, 2, 3\)"):
        MetricLieAlgebra.from_tensor(["a", "b", "c", "d"], tensor, Mat.identity(4))


def test_from_tensor_accepts_valid():
    n = 3
    tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
    tensor[0][1][2] = 1
    tensor[1][0][2] = -1
    L = MetricLieAlgebra.from_tensor(["X", "Y", "Z"], tensor, Mat.identity(3))
    assert L == heisenberg3()


def test_jacobi_failure_reported():
    # [a,b]=c together with [b,c]=b leaves a -c defect in the Jacobi cycle
    L = MetricLieAlgebra(
        ["a", "b", "c"],
        {(0, 1): vec([0, 0, 1]), (1, 2): vec([0, 1, 0])},
        Mat.identity(3),
    )
    report = L.validate()
    check = report.check("jacobi")
    assert not check.passed and check.witness == (0, 1, 2)


def test_bracket_tensor_product_rule():
    out = KM.bracket(km_axis("1.E12"), km_axis("1.E23"))
    assert out == km_axis("1.E13")
    # degree-two products are truncated away
    assert is_zero_vec(KM.bracket(km_axis("t.E12"), km_axis("t.E23")))


def test_bracket_grading_derivation():
    assert KM.bracket(km_axis("D"), km_axis("t.E12")) == km_axis("t.E12")
    assert is_zero_vec(KM.bracket(km_axis("D"), km_axis("1.E12")))


@given(km_vectors)
def test_bracket_alternating(x):
    assert is_zero_vec(KM.bracket(x, x))


@settings(max_examples=25)
@given(km_vectors, km_vectors)
def test_ad_antisymmetry(x, y):
    assert KM.ad(x).apply(y) == vec([-c for c in KM.ad(y).apply(x)])


def test_ad_of_zero():
    assert KM.ad(zero_vec(14)).is_zero()


def test_ad_star_defining_property_exhaustive():
    H = build_heisenberg_extension([1, 1, 2]).file.algebra
    for i in range(H.dim):
        x = H.basis_vector(i)
        star = H.ad_star(x)
        for u in range(H.dim):
            for v in range(H.dim):
                eu, ev = H.basis_vector(u), H.basis_vector(v)
                assert H.inner(star.apply(eu), ev) == H.inner(eu, H.bracket(x, ev))


def test_ad_star_on_domain():
    sub = Subspace(KM.dim, (km_axis("1.E12"), km_axis("1.E13"), km_axis("1.E23")))
    x = km_axis("H1")
    star = KM.ad_star(x, sub)
    for u in range(sub.dim):
        for v in range(sub.dim):
            lhs = KM.inner(sub.embed(star.col(u)), sub.basis[v])
            rhs = KM.inner(sub.basis[u], KM.bracket(x, sub.basis[v]))
            assert lhs == rhs


def test_ad_star_recovers_negative_root_vector():
    x = km_axis("1.E12")
    out = KM.ad_star(x).apply(x)
    expected = list(zero_vec(14))
    expected[km_index("H1")] = Q(-1, 2)
    assert out == tuple(expected)


def test_ad_star_central_element_is_zero():
    H = heisenberg3()
    assert H.ad_star(vec([0, 0, 1])).is_zero()


def test_ad_star_degenerate_domain_rejected():
    L = MetricLieAlgebra(["a", "b"], {}, Mat([[0, 1], [1, 0]]))
    iso = Subspace(2, (vec([1, 0]),))
    with pytest.raises(DegenerateMetricError):
        L.ad_star(vec([1, 0]), iso)


def test_lower_central_series_abelian():
    L = MetricLieAlgebra(["a", "b"], {}, Mat.identity(2))
    series = L.lower_central_series()
    assert [s.dim for s in series] == [2, 0]
    assert L.nilpotency_step() == 1


def test_lower_central_series_heisenberg():
    H = heisenberg3()
    assert [s.dim for s in H.lower_central_series()] == [3, 1, 0]
    assert H.nilpotency_step() == 2


def test_lower_central_series_km_nilradical():
    n_sub = KM.derived_subalgebra()
    nalg = KM.restrict(n_sub)
    series = nalg.lower_central_series()
    assert series[-1].dim == 0
    assert nalg.nilpotency_step() == 5
    assert nalg.center().dim == 1


def test_non_nilpotent_series_stabilizes():
    ext = build_heisenberg_extension([1, 1, 2]).file.algebra
    assert ext.nilpotency_step() is None
    series = ext.lower_central_series()
    assert series[-1].dim == series[-2].dim == 3


def test_restrict_whole_is_identity():
    H = heisenberg3()
    again = H.restrict(Subspace.whole(3))
    assert again == H


def test_restrict_closure_error():
    # span{1.E12, t.E21} is not closed: the bracket needs t.H12
    sub = Subspace(KM.dim, (km_axis("1.E12"), km_axis("t.E21")))
    with pytest.raises(ClosureError) as err:
        KM.restrict(sub)
    assert err.value.witness == (0, 1)


def test_restrict_functorial_on_nested():
    ext = build_heisenberg_extension([1, 2, 3]).file.algebra
    outer = Subspace(4, (vec([0, 1, 0, 0]), vec([0, 0, 1, 0]), vec([0, 0, 0, 1])))
    once = ext.restrict(outer)
    inner_in_outer = Subspace(3, (vec([0, 0, 1]),))
    twice = once.restrict(inner_in_outer)
    direct = ext.restrict(Subspace(4, (vec([0, 0, 0, 1]),)))
    assert twice.brackets == direct.brackets and twice.gram == direct.gram


def test_restrict_degenerate_metric_error():
    L = MetricLieAlgebra(["a", "b"], {}, Mat([[0, 1], [1, 0]]))
    with pytest.raises(DegenerateMetricError):
        L.restrict(Subspace(2, (vec([1, 0]),)))


def test_subspace_projection_is_orthogonal():
    g = KM.gram
    sub = Subspace(KM.dim, (km_axis("D"), km_axis("H1")))
    v = vec([1] * 14)
    p = sub.project(g, v)
    assert sub.contains(p)
    for b in sub.basis:
        assert KM.inner(vec([x - y for x, y in zip(v, p)]), b) == 0


def test_subspace_intersection_and_sum():
    u = Subspace(3, (vec([1, 0, 0]), vec([0, 1, 0])))
    w = Subspace(3, (vec([0, 1, 0]), vec([0, 0, 1])))
    assert u.intersection(w).same_span(Subspace(3, (vec([0, 1, 0]),)))
    assert u.sum(w).dim == 3


def test_direct_sum_blocks():
    a = heisenberg3()
    b = build_heisenberg_extension([1, 1, 2]).file.algebra
    s = direct_sum(a, b)
    assert s.dim == 7
    assert s.validate().passed
    left = vec([1, 0, 0, 0, 0, 0, 0])
    right = vec([0, 0, 0, 1, 0, 0, 0])
    assert is_zero_vec(s.bracket(left, right))


def test_signature_of_km():
    assert KM.signature() == (14, 0, 0)
