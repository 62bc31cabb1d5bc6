"""Attached subalgebras and their curvature comparison with the ambient algebra.

An attached subalgebra is cut out of a strong-Iwasawa algebra by a proper
subset of a simple system: the characteristic vector Z selects the root spaces
with positive Z-value, and the dual-basis vectors of the complementary simple
roots span the abelian part.

The exact-path restricted-Ricci verdict compares Ric of the nilradical
restricted to n' with the intrinsic Ricci of n' against the bracket action of
the mean-curvature difference; the literal commutator-sum formulation over a
compatible orthonormal basis is kept as a floating-point cross-check, since
such bases generally have irrational entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import MetricLieAlgebra, Subspace
from .curvature import (
    mat_to_float,
    mean_curvature,
    orthonormal_frame,
    ricci_nilpotent,
    ricci_solvable,
    second_fundamental_form,
)
from .exceptions import (
    InadmissibleError,
    InputError,
    NoSolutionError,
    StrongIwasawaError,
    TheoremViolationError,
)
from .iwasawa import (
    IwasawaDecomposition,
    Root,
    SimpleSystem,
    dual_pairing,
    reflect,
    reflect_covector,
    verify_strong_iwasawa,
)
from .linalg import Mat, Vector, is_zero_vec, kernel, solve_many, vadd, vsub, zero_vec


def characteristic_vector(sys: SimpleSystem, lambda_prime) -> Vector:
    """Z = sum of the dual-basis vectors over the complement of lambda_prime."""
    chosen = _normalize_subset(sys, lambda_prime)
    if len(chosen) == len(sys.simple):
        raise InputError("lambda_prime must be a proper subset of the simple system")
    z = zero_vec(sys.decomposition.algebra.dim)
    for i, root in enumerate(sys.simple):
        if root not in chosen:
            z = vadd(z, sys.dual_basis[i])
    return z


def _normalize_subset(sys: SimpleSystem, lambda_prime) -> set[Root]:
    simple = set(sys.simple)
    chosen = set()
    for r in lambda_prime:
        if r not in simple:
            raise InputError(f"{r} is not a simple root of the system")
        chosen.add(r)
    return chosen


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    # one entry per reflecting simple root: (root, ((source, image), ...))
    permutations: tuple
    witness: str | None = None


def check_admissible(
    dec: IwasawaDecomposition, sys: SimpleSystem, lambda_prime
) -> AdmissibilityReport:
    """Each reflection from lambda_prime must permute the Z-positive roots,
    preserving root-space dimensions."""
    chosen = _normalize_subset(sys, lambda_prime)
    if len(chosen) == len(sys.simple):
        raise InputError("lambda_prime must be a proper subset of the simple system")
    z = characteristic_vector(sys, chosen)
    positive = [r for r in sys.ordered_roots() if dec.root_value(r, z) > 0]
    positive_set = set(positive)
    perms = []
    for simple_root in [r for r in sys.simple if r in chosen]:
        pairs = []
        for r in positive:
            image_coords = reflect_covector(dec, simple_root, r)
            image = dec.root_by_coords(image_coords)
            if image is None:
                return AdmissibilityReport(
                    False,
                    tuple(perms),
                    f"reflection in {simple_root} sends {r} outside the root set",
                )
            if image not in positive_set:
                return AdmissibilityReport(
                    False,
                    tuple(perms),
                    f"reflection in {simple_root} sends {r} to the non-positive root {image}",
                )
            if image.multiplicity != r.multiplicity:
                return AdmissibilityReport(
                    False,
                    tuple(perms),
                    f"root-space dimensions differ along {r} -> {image}",
                )
            pairs.append((r, image))
        perms.append((simple_root, tuple(pairs)))
    return AdmissibilityReport(True, tuple(perms))


@dataclass(frozen=True)
class AttachedSubalgebra:
    parent: IwasawaDecomposition
    system: SimpleSystem
    lambda_prime: tuple[Root, ...]
    z: Vector
    a_prime: Subspace
    n_prime: Subspace
    a_zero: Subspace
    n_zero: Subspace
    s_prime: Subspace
    restricted: MetricLieAlgebra
    restricted_dec: IwasawaDecomposition
    h: Vector
    h_prime: Vector
    n_prime_roots: tuple[Root, ...]

    @property
    def algebra(self) -> MetricLieAlgebra:
        return self.parent.algebra


def build_attached(
    dec: IwasawaDecomposition, sys: SimpleSystem, lambda_prime
) -> AttachedSubalgebra:
    """Assemble the attached subalgebra for a proper subset of the simple system.

    Admissibility is required; the structural properties of the construction
    (ideal property, derived subalgebra, commutation with the orthogonal part,
    adjoint stability, inheritance of the strong Iwasawa conditions, the kernel
    characterization of a', and the location of the mean curvature vector) are
    all verified before returning.
    """
    report = check_admissible(dec, sys, lambda_prime)
    if not report.admissible:
        raise InadmissibleError(f"inadmissible subset: {report.witness}", witness=report.witness)
    chosen = _normalize_subset(sys, lambda_prime)
    lam_prime = tuple(r for r in sys.simple if r in chosen)
    L = dec.algebra
    z = characteristic_vector(sys, chosen)

    a_prime_basis, a_prime_labels = [], []
    a_zero_basis = []
    for i, root in enumerate(sys.simple):
        if root in chosen:
            a_zero_basis.append(sys.dual_basis[i])
        else:
            a_prime_basis.append(sys.dual_basis[i])
            a_prime_labels.append(f"B{i}")
    a_prime = Subspace(L.dim, tuple(a_prime_basis))
    a_zero = Subspace(L.dim, tuple(a_zero_basis))

    n_prime_basis, n_prime_roots = [], []
    n_zero_basis = []
    for root in sys.ordered_roots():
        value = dec.root_value(root, z)
        if value < 0:
            raise TheoremViolationError("characteristic vector is negative on a root")
        target = n_prime_basis if value > 0 else n_zero_basis
        if value > 0:
            n_prime_roots.extend([root] * root.multiplicity)
        target.extend(dec.root_spaces[root].basis)
    n_prime = Subspace(L.dim, tuple(n_prime_basis))
    n_zero = Subspace(L.dim, tuple(n_zero_basis))

    s_prime = Subspace(L.dim, tuple(a_prime_basis) + tuple(n_prime_basis))
    labels = list(a_prime_labels)
    for v in n_prime_basis:
        hits = [i for i, c in enumerate(v) if c != 0]
        if len(hits) == 1 and v[hits[0]] == 1:
            labels.append(L.labels[hits[0]])
        else:
            labels.append("v%d" % len(labels))
    restricted = L.restrict(s_prime, labels)
    try:
        restricted_dec = verify_strong_iwasawa(restricted)
    except StrongIwasawaError as exc:
        raise TheoremViolationError(
            f"attached subalgebra lost the strong Iwasawa conditions: {exc}"
        ) from exc

    h = mean_curvature(dec)
    h_prime = s_prime.embed(mean_curvature(restricted_dec))

    att = AttachedSubalgebra(
        parent=dec,
        system=sys,
        lambda_prime=lam_prime,
        z=z,
        a_prime=a_prime,
        n_prime=n_prime,
        a_zero=a_zero,
        n_zero=n_zero,
        s_prime=s_prime,
        restricted=restricted,
        restricted_dec=restricted_dec,
        h=h,
        h_prime=h_prime,
        n_prime_roots=tuple(n_prime_roots),
    )
    _verify_structure(att)
    return att


def _verify_structure(att: AttachedSubalgebra) -> None:
    L = att.algebra
    dec = att.parent

    # n' is an ideal of the ambient algebra
    for i in range(L.dim):
        for v in att.n_prime.basis:
            w = L.bracket(L.basis_vector(i), v)
            if not (is_zero_vec(w) or att.n_prime.contains(w)):
                raise TheoremViolationError("n' is not an ideal")

    # the derived subalgebra of s' is exactly n'
    derived = Subspace.spanned_by(
        L.dim,
        [
            L.bracket(u, v)
            for i, u in enumerate(att.s_prime.basis)
            for v in att.s_prime.basis[i + 1 :]
        ],
    )
    if not derived.same_span(Subspace.spanned_by(L.dim, att.n_prime.basis)):
        raise TheoremViolationError("[s', s'] differs from n'")

    # a' commutes with n_0
    for u in att.a_prime.basis:
        for v in att.n_zero.basis:
            if not is_zero_vec(L.bracket(u, v)):
                raise TheoremViolationError("a' does not commute with the orthogonal nilpart")

    # ambient adjoints of n_0 elements keep n' stable
    for x in att.n_zero.basis:
        star = L.ad_star(x)
        for v in att.n_prime.basis:
            if not att.n_prime.contains(star.apply(v)):
                raise TheoremViolationError("adjoint of an n_0 element leaves n'")

    # a' is the joint kernel of the chosen simple roots
    if att.lambda_prime:
        rows = [r.coords for r in att.lambda_prime]
        kernel_in_a = Subspace.spanned_by(
            L.dim, [dec.a.embed(k) for k in kernel(Mat(rows))]
        )
    else:
        kernel_in_a = Subspace.spanned_by(L.dim, dec.a.basis)
    if not kernel_in_a.same_span(Subspace.spanned_by(L.dim, att.a_prime.basis)):
        raise TheoremViolationError("a' is not the joint kernel of lambda_prime")

    # the subalgebra mean curvature lies in a' and is fixed by its reflections
    if not att.a_prime.contains(att.h_prime):
        raise TheoremViolationError("mean curvature of the subalgebra is not in a'")
    for r in att.lambda_prime:
        if reflect(dec, r, att.h_prime) != att.h_prime:
            raise TheoremViolationError("mean curvature of the subalgebra moves under a reflection")


@dataclass(frozen=True)
class JacobiStarResult:
    holds: bool
    lhs: Mat  # Ric^n restricted to n' minus Ric^{n'}, on the n' basis
    rhs: Mat  # ad_{H - H'} restricted to n', on the n' basis


def jacobi_star_exact(att: AttachedSubalgebra) -> JacobiStarResult:
    """Exact restricted-Ricci comparison on the n' basis."""
    L = att.algebra
    dec = att.parent
    nalg = L.restrict(dec.n)
    ric_n = ricci_nilpotent(nalg)
    np_in_n = Mat.from_cols([dec.n.coords_of(v) for v in att.n_prime.basis])
    try:
        ric_n_restr = solve_many(np_in_n, ric_n @ np_in_n) if att.n_prime.dim else Mat.zeros(0, 0)
    except NoSolutionError:
        raise TheoremViolationError("ambient nilradical Ricci does not preserve n'") from None
    if att.n_prime.dim:
        npalg = L.restrict(att.n_prime)
        ric_np = ricci_nilpotent(npalg)
        rhs = L.ad_on(vsub(att.h, att.h_prime), att.n_prime)
    else:
        ric_np = Mat.zeros(0, 0)
        rhs = Mat.zeros(0, 0)
    lhs = ric_n_restr - ric_np
    return JacobiStarResult(lhs == rhs, lhs, rhs)


def jacobi_star_direct(att: AttachedSubalgebra, tol: float = 1e-9) -> tuple[bool, float]:
    """Literal floating-point evaluation over a compatible orthonormal basis of n_0.

    Builds unit vectors root space by root space through numeric symmetric
    diagonalization of each root-space gram, then compares the half-commutator
    sum against the bracket action of the summed adjoint images, entrywise on
    n'.  Returns (verdict, maximum deviation).
    """
    L = att.algebra
    dec = att.parent
    dim = L.dim
    if dec.n.dim == 0:
        return True, 0.0
    g = mat_to_float(L.gram)
    ginv = np.linalg.inv(g)
    ad_basis = [mat_to_float(L.ad(L.basis_vector(k))) for k in range(dim)]
    ad_on_n = [mat_to_float(L.ad_on(L.basis_vector(k), dec.n)) for k in range(dim)]
    g_n = mat_to_float(dec.n.restricted_gram(L.gram))
    g_n_inv = np.linalg.inv(g_n)

    def ad_full(v):
        return sum(v[k] * ad_basis[k] for k in range(dim))

    def ad_n(v):
        return sum(v[k] * ad_on_n[k] for k in range(dim))

    lhs_op = np.zeros((dec.n.dim, dec.n.dim))
    w_total = np.zeros(dim)
    zero_roots = [r for r in dec.roots if dec.root_value(r, att.z) == 0]
    for root in zero_roots:
        space = dec.root_spaces[root]
        frame, eps = orthonormal_frame(space.restricted_gram(L.gram))
        cols = mat_to_float(space.matrix()) @ frame
        for j in range(cols.shape[1]):
            e = cols[:, j]
            a_restr = ad_n(e)
            star_n = g_n_inv @ a_restr.T @ g_n
            lhs_op += 0.5 * eps[j] * (star_n @ a_restr - a_restr @ star_n)
            star_s = ginv @ ad_full(e).T @ g
            w_total += eps[j] * (star_s @ e)
    rhs_op = ad_n(w_total)
    if att.n_prime.dim == 0:
        return True, 0.0
    np_cols = np.array(
        [[float(x) for x in dec.n.coords_of(v)] for v in att.n_prime.basis]
    ).T
    dev = (lhs_op - rhs_op) @ np_cols
    max_dev = float(np.max(np.abs(dev))) if dev.size else 0.0
    return max_dev <= tol, max_dev


@dataclass(frozen=True)
class MainTheoremReport:
    restricted_ricci_agrees: bool  # clause (i)
    nilradical_difference_agrees: bool  # clause (ii)
    jacobi_star: bool  # clause (iii)
    ricci_s_prime: Mat
    ricci_s_restricted: Mat | None
    jacobi: JacobiStarResult

    @property
    def clauses(self) -> tuple[bool, bool, bool]:
        return (
            self.restricted_ricci_agrees,
            self.nilradical_difference_agrees,
            self.jacobi_star,
        )


def main_theorem_report(att: AttachedSubalgebra) -> MainTheoremReport:
    """Evaluate the three equivalent restricted-curvature clauses independently.

    Their truth values must coincide; a mismatch raises TheoremViolationError
    because it can only come from an internal computation error.
    """
    L = att.algebra
    ric_s = ricci_solvable(att.parent)
    ric_sp = ricci_solvable(att.restricted_dec)
    clause_i = True
    restr_cols = []
    inside = True
    for j, v in enumerate(att.s_prime.basis):
        ambient = ric_s.apply(v)
        if att.s_prime.contains(ambient):
            restr_cols.append(att.s_prime.coords_of(ambient))
        else:
            inside = False
        if ambient != att.s_prime.embed(ric_sp.col(j)):
            clause_i = False
    ric_s_restricted = Mat.from_cols(restr_cols) if inside and restr_cols else None
    if att.s_prime.dim == 0:
        ric_s_restricted = Mat.zeros(0, 0)

    jac = jacobi_star_exact(att)
    clause_ii = jac.holds
    clause_iii = jac.holds

    if not (clause_i == clause_ii == clause_iii):
        raise TheoremViolationError(
            f"equivalent clauses disagree: ({clause_i}, {clause_ii}, {clause_iii})"
        )
    return MainTheoremReport(clause_i, clause_ii, clause_iii, ric_sp, ric_s_restricted, jac)


def totally_geodesic_check(att: AttachedSubalgebra) -> tuple[bool, bool, bool]:
    """(verdict, via root orthogonality, via vanishing second fundamental form)."""
    dec = att.parent
    complement = [r for r in att.system.simple if r not in set(att.lambda_prime)]
    via_roots = all(
        dual_pairing(dec, a, b) == 0 for a in att.lambda_prime for b in complement
    )
    via_h = True
    L = att.algebra
    for i in range(att.s_prime.dim):
        for j in range(i, att.s_prime.dim):
            h = second_fundamental_form(
                L, att.s_prime, att.s_prime.basis[i], att.s_prime.basis[j], att.restricted
            )
            if not is_zero_vec(h):
                via_h = False
                break
        if not via_h:
            break
    if via_roots != via_h:
        raise TheoremViolationError(
            "root-orthogonality and second-fundamental-form verdicts disagree"
        )
    return via_roots, via_roots, via_h


@dataclass(frozen=True)
class DerivationReport:
    passes: bool
    witness: tuple | None = None  # (sub index, basis index, basis index)


def ad_star_derivation_check(L: MetricLieAlgebra, sub: Subspace) -> DerivationReport:
    """Check whether the metric adjoint of ad is a bracket derivation.

    For each basis vector X of `sub` the identity
    ad*_X [y, z] = [ad*_X y, z] + [y, ad*_X z] is scanned over all basis
    pairs of the algebra; the first violating triple is reported.
    """
    for idx, x in enumerate(sub.basis):
        star = L.ad_star(x)
        star_cols = [star.col(j) for j in range(L.dim)]
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                lhs = star.apply(L.bracket_basis(i, j))
                rhs = vadd(
                    L.bracket(star_cols[i], L.basis_vector(j)),
                    L.bracket(L.basis_vector(i), star_cols[j]),
                )
                if lhs != rhs:
                    return DerivationReport(False, (idx, i, j))
    return DerivationReport(True)
