from fractions import Fraction as Q

import pytest

from solvlie.algebra import MetricLieAlgebra
from solvlie.catalog import build_heisenberg_extension, build_km_sl3, build_symmetric_iwasawa
from solvlie.exceptions import StrongIwasawaError, ValidationError
from solvlie.iwasawa import (
    dual_pairing,
    reflect,
    reflect_covector,
    root_label,
    root_vector,
    suggest_simple_system,
    verify_simple_system,
    verify_strong_iwasawa,
)
from solvlie.linalg import Mat, vec, zero_vec

KM_ENTRY = build_km_sl3()
KM = KM_ENTRY.file.algebra
DEC = verify_strong_iwasawa(KM)
SYS = verify_simple_system(DEC, [DEC.root_by_coords(c) for c in KM_ENTRY.file.simple_coords])
A0, A1, A2 = SYS.simple
DELTA = DEC.root_by_coords(vec([1, 0, 0]))


def in_h(*coeffs):
    return vec(list(coeffs) + [0] * 11)


def test_km_decomposition_shape():
    assert DEC.a.dim == 3 and DEC.n.dim == 11
    assert len(DEC.roots) == 10
    mults = sorted(r.multiplicity for r in DEC.roots)
    assert mults == [1] * 9 + [2]
    assert DEC.root_spaces[DELTA].dim == 2


def test_km_root_set_matches_span_structure():
    coords = {r.coords for r in DEC.roots}
    a1, a2, d = vec([0, 2, -1]), vec([0, -1, 2]), vec([1, 0, 0])

    def add(u, v):
        return tuple(x + y for x, y in zip(u, v))

    def sub(u, v):
        return tuple(x - y for x, y in zip(u, v))

    expected = {a1, a2, add(a1, a2), d}
    for b in (a1, a2, add(a1, a2)):
        expected.add(add(d, b))
        expected.add(sub(d, b))
    assert coords == expected


def test_positivity_witness_is_strict():
    for r in DEC.roots:
        assert DEC.root_value(r, DEC.witness) > 0


def test_root_spaces_are_orthogonal_eigenspaces():
    for r in DEC.roots:
        space = DEC.root_spaces[r]
        for u in DEC.a.basis:
            value = r.value_on(DEC.a.coords_of(u))
            for x in space.basis:
                assert KM.bracket(u, x) == vec([value * c for c in x])


def test_degenerate_abelian_pass():
    L = MetricLieAlgebra(["a", "b"], {}, Mat.identity(2))
    dec = verify_strong_iwasawa(L)
    assert dec.roots == () and dec.n.dim == 0 and dec.a.dim == 2


def test_negative_gram_on_a_fails_clause_iv():
    L = MetricLieAlgebra(["a"], {}, Mat.diagonal([-1]))
    with pytest.raises(StrongIwasawaError) as err:
        verify_strong_iwasawa(L)
    assert err.value.clause == "iv"


def test_nonsymmetric_ad_fails_clause_ii():
    # ad_a rotates the xy-plane, which is skew rather than symmetric
    L = MetricLieAlgebra(
        ["a", "x", "y"],
        {(0, 1): vec([0, 0, 1]), (0, 2): vec([0, -1, 0])},
        Mat.identity(3),
    )
    with pytest.raises(StrongIwasawaError) as err:
        verify_strong_iwasawa(L)
    assert err.value.clause == "ii"


def test_no_positive_witness_fails_clause_iii():
    # weights 1 and -1 leave the positivity cone empty
    L = MetricLieAlgebra(
        ["a", "x", "y"],
        {(0, 1): vec([0, 1, 0]), (0, 2): vec([0, 0, -1])},
        Mat.identity(3),
    )
    with pytest.raises(StrongIwasawaError) as err:
        verify_strong_iwasawa(L)
    assert err.value.clause == "iii"


def test_non_solvable_rejected():
    # sl2: [h,e]=2e, [h,f]=-2f, [e,f]=h
    L = MetricLieAlgebra(
        ["h", "e", "f"],
        {(0, 1): vec([0, 2, 0]), (0, 2): vec([0, 0, -2]), (1, 2): vec([1, 0, 0])},
        Mat.identity(3),
    )
    with pytest.raises(ValidationError, match="solvable"):
        verify_strong_iwasawa(L)


def test_heisenberg_extension_roots():
    dec = verify_strong_iwasawa(build_heisenberg_extension([1, 1, 2]).file.algebra)
    assert [(r.coords, r.multiplicity) for r in dec.roots] == [((Q(1),), 2), ((Q(2),), 1)]
    dec = verify_strong_iwasawa(build_heisenberg_extension([1, 2, 3]).file.algebra)
    assert [(r.coords, r.multiplicity) for r in dec.roots] == [
        ((Q(1),), 1),
        ((Q(2),), 1),
        ((Q(3),), 1),
    ]


def test_iwasawa_sl3_roots():
    dec = verify_strong_iwasawa(build_symmetric_iwasawa("sl3").file.algebra)
    assert dec.a.dim == 2 and dec.n.dim == 3
    assert all(r.multiplicity == 1 for r in dec.roots)
    assert len(dec.roots) == 3


def test_root_vectors_match_special_values():
    assert root_vector(DEC, A0) == in_h(Q(9, 16), Q(-1, 2), Q(-1, 2))
    assert root_vector(DEC, A1) == in_h(0, Q(1, 2), 0)
    assert root_vector(DEC, A2) == in_h(0, 0, Q(1, 2))
    assert root_vector(DEC, DELTA) == in_h(Q(9, 16), 0, 0)


def test_root_vector_of_zero_covector():
    assert root_vector(DEC, vec([0, 0, 0])) == zero_vec(14)


def test_root_vector_defining_property():
    h = root_vector(DEC, A1)
    for u in DEC.a.basis:
        assert KM.inner(h, u) == A1.value_on(DEC.a.coords_of(u))


def test_dual_pairing_via_root_vectors():
    assert dual_pairing(DEC, A1, A2) == KM.inner(root_vector(DEC, A1), root_vector(DEC, A2))
    assert dual_pairing(DEC, A1, A2) == Q(-1, 2)
    assert dual_pairing(DEC, A1, A1) == 1


def test_dual_basis_values():
    b0, b1, b2 = SYS.dual_basis
    assert b0 == in_h(1, 0, 0)
    assert b1 == in_h(1, Q(2, 3), Q(1, 3))
    assert b2 == in_h(1, Q(1, 3), Q(2, 3))
    for i, alpha in enumerate(SYS.simple):
        for j, b in enumerate(SYS.dual_basis):
            assert alpha.value_on(DEC.a.coords_of(b)) == (1 if i == j else 0)


def test_dual_basis_one_dimensional():
    dec = verify_strong_iwasawa(build_heisenberg_extension([1, 1, 2]).file.algebra)
    sys = verify_simple_system(dec, [dec.root_by_coords((Q(1),))])
    assert sys.dual_basis == (vec([1, 0, 0, 0]),)


def test_reflection_table():
    h = {r: root_vector(DEC, r) for r in (A0, A1, A2)}

    def plus(u, v, c=1):
        return tuple(x + Q(c) * y for x, y in zip(u, v))

    assert reflect(DEC, A0, h[A0]) == tuple(-x for x in h[A0])
    assert reflect(DEC, A0, h[A1]) == plus(h[A1], h[A0], Q(16, 25))
    assert reflect(DEC, A0, h[A2]) == plus(h[A2], h[A0], Q(16, 25))
    assert reflect(DEC, A1, h[A0]) == plus(h[A0], h[A1])
    assert reflect(DEC, A1, h[A1]) == tuple(-x for x in h[A1])
    assert reflect(DEC, A1, h[A2]) == plus(h[A2], h[A1])
    assert reflect(DEC, A2, h[A0]) == plus(h[A0], h[A2])
    assert reflect(DEC, A2, h[A1]) == plus(h[A1], h[A2])
    assert reflect(DEC, A2, h[A2]) == tuple(-x for x in h[A2])


def test_reflection_fixes_orthogonal_vectors():
    # D is orthogonal to H_{a1} = H1/2
    assert reflect(DEC, A1, in_h(1, 0, 0)) == in_h(1, 0, 0)


def test_reflections_are_involutions_and_isometries():
    for beta in DEC.roots:
        for u in DEC.a.basis:
            assert reflect(DEC, beta, reflect(DEC, beta, u)) == u
        for u in DEC.a.basis:
            for v in DEC.a.basis:
                su, sv = reflect(DEC, beta, u), reflect(DEC, beta, v)
                assert KM.inner(su, sv) == KM.inner(u, v)


def test_reflection_intertwines_root_vectors():
    # s_alpha(H_beta) = H of the reflected covector, for all root pairs
    for alpha in DEC.roots:
        for beta in DEC.roots:
            lhs = reflect(DEC, alpha, root_vector(DEC, beta))
            rhs = root_vector(DEC, reflect_covector(DEC, alpha, beta))
            assert lhs == rhs


def test_simple_system_km():
    assert SYS.expansions[DELTA] == (1, 1, 1)
    assert all(all(c >= 0 for c in SYS.expansions[r]) for r in DEC.roots)


def test_simple_system_too_small_rejected():
    with pytest.raises(ValidationError, match="3 elements"):
        verify_simple_system(DEC, [A1, A2])


def test_simple_system_non_root_rejected():
    bad = DEC.roots[0].__class__(coords=vec([5, 5, 5]), multiplicity=1)
    with pytest.raises(ValidationError, match="not a root"):
        verify_simple_system(DEC, [A0, A1, bad])


def test_simple_system_fractional_expansion_rejected():
    dec = verify_strong_iwasawa(build_heisenberg_extension([2, 3, 5]).file.algebra)
    with pytest.raises(ValidationError):
        verify_simple_system(dec, [dec.root_by_coords((Q(2),))])


def test_simple_system_sl3_classical():
    dec = verify_strong_iwasawa(build_symmetric_iwasawa("sl3").file.algebra)
    sys = verify_simple_system(
        dec, [dec.root_by_coords(vec([2, -1])), dec.root_by_coords(vec([-1, 2]))]
    )
    third = dec.root_by_coords(vec([1, 1]))
    assert sys.expansions[third] == (1, 1)


def test_suggestion_km():
    suggested = {r.coords for r in suggest_simple_system(DEC)}
    assert suggested == {A0.coords, A1.coords, A2.coords}


def test_root_labels():
    aliases = KM_ENTRY.root_aliases
    labels = {root_label(SYS, r, aliases) for r in DEC.roots}
    assert labels == {
        "a0",
        "a1",
        "a2",
        "a1+a2",
        "d",
        "d+a1",
        "d-a1",
        "d+a2",
        "d-a2",
        "d+a1+a2",
    }
    assert root_label(SYS, DELTA, None) == "a0+a1+a2"
