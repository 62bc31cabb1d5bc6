from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from solvlie.exceptions import (
    InputError,
    NoSolutionError,
    NonDiagonalizableError,
    NonUniqueSolutionError,
    NotRationalSplitError,
)
from solvlie.linalg import (
    Mat,
    charpoly,
    determinant,
    gram_signature,
    inverse,
    is_positive_definite,
    kernel,
    rank,
    rational_eigenpairs,
    rational_roots,
    rref,
    simultaneous_eigenspaces,
    solve,
    strict_positive_witness,
    vec,
)

H_BLOCK = Mat([[Q(16, 9), 0, 0], [0, 4, -2], [0, -2, 4]])

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)


def test_solve_trace_vector_against_h_block():
    # right-hand side is the trace vector of the three derivations of the
    # truncated affine example; the solution is the mean curvature coefficients
    x = solve(H_BLOCK, vec([8, 2, 2]))
    assert x == vec([Q(9, 2), 1, 1])
    assert H_BLOCK.apply(x) == vec([8, 2, 2])


def test_solve_identity():
    assert solve(Mat.identity(3), vec([1, 2, 3])) == vec([1, 2, 3])


def test_solve_rank_deficient_consistent():
    with pytest.raises(NonUniqueSolutionError):
        solve(Mat([[1, 1], [2, 2]]), vec([1, 2]))


def test_solve_inconsistent():
    with pytest.raises(NoSolutionError):
        solve(Mat([[1, 1], [2, 2]]), vec([1, 3]))


def test_solve_shape_mismatch():
    with pytest.raises(InputError):
        solve(Mat([[1, 0], [0, 1]]), vec([1, 2, 3]))


def test_kernel_injective():
    assert kernel(Mat.identity(4)) == ()


def test_kernel_zero_matrix():
    basis = kernel(Mat.zeros(2, 2))
    assert len(basis) == 2
    assert basis == (vec([1, 0]), vec([0, 1]))


def test_kernel_single_covector():
    # alpha2 on the (H1, H2) span: -a1 + 2 a2 = 0
    basis = kernel(Mat([[-1, 2]]))
    assert len(basis) == 1
    assert basis[0] == vec([2, 1])


def test_rref_canonical():
    red, pivots = rref(Mat([[0, 2, 4], [1, 1, 1]]))
    assert pivots == (0, 1)
    assert red == Mat([[1, 0, -1], [0, 1, 2]])


def test_charpoly_companion_case():
    # t^2 - 3t + 2 for diag(1, 2)
    assert charpoly(Mat.diagonal([1, 2])) == (Q(2), Q(-3), Q(1))


def test_rational_roots_with_multiplicity():
    roots, rem = rational_roots((Q(0), Q(0), Q(1)))  # t^2
    assert roots == {Q(0): 2} and rem == 0
    roots, rem = rational_roots((Q(-1), Q(0), Q(1)))  # t^2 - 1
    assert roots == {Q(1): 1, Q(-1): 1} and rem == 0
    roots, rem = rational_roots((Q(-2), Q(0), Q(1)))  # t^2 - 2
    assert roots == {} and rem == 2


def test_eigenpairs_diagonal():
    pairs = rational_eigenpairs(Mat.diagonal([Q(5, 2), Q(5, 2), 1]))
    assert [(lam, len(space)) for lam, space in pairs] == [(Q(1), 1), (Q(5, 2), 2)]
    for lam, space in pairs:
        for v in space:
            assert Mat.diagonal([Q(5, 2), Q(5, 2), 1]).apply(v) == vec([lam * x for x in v])


def test_eigenpairs_zero_matrix():
    pairs = rational_eigenpairs(Mat.zeros(3, 3))
    assert len(pairs) == 1 and pairs[0][0] == 0 and len(pairs[0][1]) == 3


def test_eigenpairs_jordan_block():
    with pytest.raises(NonDiagonalizableError):
        rational_eigenpairs(Mat([[0, 1], [0, 0]]))


def test_eigenpairs_irrational():
    with pytest.raises(NotRationalSplitError):
        rational_eigenpairs(Mat([[0, 1], [2, 0]]))  # eigenvalues +-sqrt(2)


def test_simultaneous_identity_family():
    spaces = simultaneous_eigenspaces([Mat.identity(2)])
    assert spaces == [((Q(1),), (vec([1, 0]), vec([0, 1])))]


def test_simultaneous_diagonal_family():
    spaces = simultaneous_eigenspaces([Mat.diagonal([1, 2]), Mat.diagonal([3, 3])])
    assert [(w, len(b)) for w, b in spaces] == [((Q(1), Q(3)), 1), ((Q(2), Q(3)), 1)]


def test_simultaneous_noncommuting_rejected():
    with pytest.raises(InputError):
        simultaneous_eigenspaces([Mat([[0, 1], [1, 0]]), Mat.diagonal([1, 2])])


def test_simultaneous_eigenspace_dimensions_fill_space():
    a = Mat.diagonal([1, 1, 2, 2])
    b = Mat.diagonal([1, 3, 1, 3])
    spaces = simultaneous_eigenspaces([a, b])
    assert sum(len(basis) for _, basis in spaces) == 4
    for weight, basis in spaces:
        for v in basis:
            assert a.apply(v) == vec([weight[0] * x for x in v])
            assert b.apply(v) == vec([weight[1] * x for x in v])


def test_witness_feasible_cone():
    w = strict_positive_witness([vec([1, 0]), vec([0, 1]), vec([1, 1])])
    assert w is not None
    for row in ([1, 0], [0, 1], [1, 1]):
        assert sum(a * b for a, b in zip(vec(row), w)) > 0


def test_witness_infeasible_cone():
    assert strict_positive_witness([vec([1, 0]), vec([-1, 0])]) is None
    assert strict_positive_witness([vec([1, -1]), vec([-1, 1])]) is None


@given(
    st.lists(
        st.tuples(rationals, rationals, rationals).filter(lambda r: any(x != 0 for x in r)),
        min_size=1,
        max_size=6,
    )
)
def test_witness_property(rows):
    w = strict_positive_witness([vec(r) for r in rows])
    if w is not None:
        for r in rows:
            assert sum(a * b for a, b in zip(vec(r), w)) > 0


def test_signature_and_definiteness():
    assert gram_signature(H_BLOCK) == (3, 0, 0)
    assert is_positive_definite(H_BLOCK)
    assert gram_signature(Mat.diagonal([1, -1, 0])) == (1, 1, 1)
    assert not is_positive_definite(Mat.diagonal([1, -1]))
    # zero diagonal but nondegenerate: hyperbolic plane has signature (1, 1)
    assert gram_signature(Mat([[0, 1], [1, 0]])) == (1, 1, 0)


def test_inverse_and_determinant():
    m = Mat([[2, 1], [1, 1]])
    assert m @ inverse(m) == Mat.identity(2)
    assert determinant(m) == 1
    assert determinant(Mat([[1, 2], [2, 4]])) == 0
    assert rank(Mat([[1, 2], [2, 4]])) == 1


@given(
    st.lists(st.tuples(rationals, rationals, rationals), min_size=3, max_size=3),
    st.tuples(rationals, rationals, rationals),
)
def test_solve_roundtrip_property(rows, b):
    m = Mat(rows)
    if determinant(m) == 0:
        return
    x = solve(m, vec(b))
    assert m.apply(x) == vec(b)


def test_km_adjoint_spectrum():
    # diagonal action of the mean curvature on the 11-dimensional nilradical
    diag = [1, 1, 2, Q(5, 2), Q(7, 2), Q(7, 2), Q(9, 2), Q(9, 2), Q(11, 2), Q(11, 2), Q(13, 2)]
    pairs = rational_eigenpairs(Mat.diagonal(diag))
    flat = {lam: len(space) for lam, space in pairs}
    assert flat == {
        Q(1): 2,
        Q(2): 1,
        Q(5, 2): 1,
        Q(7, 2): 2,
        Q(9, 2): 2,
        Q(11, 2): 2,
        Q(13, 2): 1,
    }
