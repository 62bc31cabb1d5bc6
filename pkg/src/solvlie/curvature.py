"""Curvature of solvable metric Lie algebras.

The Ricci endomorphism of a nilpotent metric Lie algebra is computed by
contracting the defining orthonormal-basis sums against the inverse gram
matrix, which is basis independent and keeps the whole computation inside the
rationals (orthonormal bases generally need square roots).  The literal
orthonormal-basis sum survives as a floating-point cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import MetricLieAlgebra, Subspace
from .exceptions import DegenerateMetricError, TheoremViolationError
from .iwasawa import IwasawaDecomposition, root_vector
from .linalg import Mat, Q, Vector, inverse, is_zero_vec, vadd, vscale, vsub, zero_vec


@lru_cache(maxsize=128)
def ricci_nilpotent(N: MetricLieAlgebra) -> Mat:
    """Ricci endomorphism of a nilpotent metric Lie algebra, on its own basis."""
    if not N.is_nilpotent():
        raise DegenerateMetricError("Ricci of a non-nilpotent algebra requested")
    n = N.dim
    if n == 0:
        return Mat.zeros(0, 0)
    ginv = N.gram_inverse()
    ads = [N.ad(N.basis_vector(i)) for i in range(n)]
    stars = [ginv @ ads[i].transpose() @ N.gram for i in range(n)]
    term1 = Mat.zeros(n, n)
    term2 = Mat.zeros(n, n)
    for i in range(n):
        for j in range(n):
            g = ginv.entry(i, j)
            if g == 0:
                continue
            term1 = term1 + (ads[i] @ stars[j]).scale(g)
            term2 = term2 + (stars[i] @ ads[j]).scale(g)
    return term1.scale(Q(1, 4)) - term2.scale(Q(1, 2))


def mean_curvature_trace(L: MetricLieAlgebra) -> Vector:
    """The vector H with <H, X> = tr ad_X for every X, in ambient coordinates."""
    traces = tuple(L.ad(L.basis_vector(i)).trace() for i in range(L.dim))
    return L.gram_inverse().apply(traces)


def mean_curvature(dec: IwasawaDecomposition) -> Vector:
    """Trace-defined mean curvature, cross-checked against the root-vector sum.

    A mismatch between the two routes means the root decomposition is broken.
    """
    h = mean_curvature_trace(dec.algebra)
    from_roots = zero_vec(dec.algebra.dim)
    for r in dec.roots:
        from_roots = vadd(from_roots, vscale(r.multiplicity, root_vector(dec, r)))
    if h != from_roots:
        raise TheoremViolationError(
            "mean curvature from traces disagrees with the root-vector sum"
        )
    return h


def assemble_ricci(L: MetricLieAlgebra, a: Subspace, n: Subspace, h: Vector) -> Mat:
    """Ricci endomorphism of a split solvable algebra, on L's own basis.

    Blockwise on the a (+) n splitting: the a-block is the negative trace
    form, the mixed block vanishes, and the n-block is the nilpotent Ricci
    shifted by the bracket action of the mean curvature vector h.
    """
    dim = L.dim
    if dim == 0:
        return Mat.zeros(0, 0)
    a_dim, n_dim = a.dim, n.dim
    c = Mat.from_cols(list(a.basis) + list(n.basis))

    form = [[Q(0)] * dim for _ in range(dim)]
    ads_a = [L.ad(u) for u in a.basis]
    for i in range(a_dim):
        for j in range(i, a_dim):
            t = -(ads_a[i] @ ads_a[j]).trace()
            form[i][j] = t
            form[j][i] = t
    if n_dim:
        nalg = L.restrict(n)
        ric_n = ricci_nilpotent(nalg)
        form_n = ric_n.transpose() @ nalg.gram
        ad_h_n = L.ad_on(h, n)
        form_adh = ad_h_n.transpose() @ nalg.gram
        for i in range(n_dim):
            for j in range(n_dim):
                form[a_dim + i][a_dim + j] = form_n.entry(i, j) - form_adh.entry(i, j)

    cinv = inverse(c)
    form_std = cinv.transpose() @ Mat(form) @ cinv
    return L.gram_inverse() @ form_std


def ricci_solvable(dec: IwasawaDecomposition) -> Mat:
    """Full Ricci endomorphism of the solvable algebra, on its own basis."""
    return assemble_ricci(dec.algebra, dec.a, dec.n, mean_curvature(dec))


def u_tensor(L: MetricLieAlgebra, x: Vector, y: Vector) -> Vector:
    """Symmetric part of the connection: <U(x,y), z> = (<[z,x],y> + <[z,y],x>)/2."""
    w = []
    for k in range(L.dim):
        e = L.basis_vector(k)
        w.append((L.inner(L.bracket(e, x), y) + L.inner(L.bracket(e, y), x)) / 2)
    return L.gram_inverse().apply(tuple(w))


def second_fundamental_form(
    L: MetricLieAlgebra,
    sub: Subspace,
    x: Vector,
    y: Vector,
    restricted: MetricLieAlgebra | None = None,
) -> Vector:
    """h(x, y) = U(x, y) - U'(x, y) for x, y in the subalgebra, as an ambient vector."""
    if restricted is None:
        restricted = L.restrict(sub)
    u_amb = u_tensor(L, x, y)
    u_sub = u_tensor(restricted, sub.coords_of(x), sub.coords_of(y))
    return vsub(u_amb, sub.embed(u_sub))


def minimality_check(
    L: MetricLieAlgebra, sub: Subspace, restricted: MetricLieAlgebra | None = None
) -> tuple[Vector, bool]:
    """Inverse-gram contraction of h over the subalgebra; minimal iff it vanishes."""
    if restricted is None:
        restricted = L.restrict(sub)
    ginv = restricted.gram_inverse()
    trace = zero_vec(L.dim)
    for i in range(sub.dim):
        for j in range(i, sub.dim):
            g = ginv.entry(i, j)
            if g == 0:
                continue
            h = second_fundamental_form(L, sub, sub.basis[i], sub.basis[j], restricted)
            factor = g if i == j else 2 * g
            trace = vadd(trace, vscale(factor, h))
    return trace, is_zero_vec(trace)


@dataclass(frozen=True)
class EinsteinReport:
    """Two independent Einstein verdicts that must agree.

    `direct_lambda` comes from comparing the full Ricci endomorphism with a
    multiple of the identity.  The criterion route checks the nilradical
    identity Ric^n - ad_H = lambda Id together with the trace-form relation
    tr(ad_A ad_B) = -lambda <A, B> on a; `trace_form` is that a-block.
    """

    direct_lambda: Q | None
    criterion_lambda: Q | None
    nilradical_identity: bool
    trace_form_identity: bool
    trace_form: Mat

    @property
    def is_einstein(self) -> bool:
        return self.direct_lambda is not None


def _scalar_multiple_of_identity(m: Mat) -> Q | None:
    n = m.nrows
    if n == 0:
        return Q(0)
    lam = m.entry(0, 0)
    return lam if m == Mat.identity(n).scale(lam) else None


def einstein_check(dec: IwasawaDecomposition) -> EinsteinReport:
    L = dec.algebra
    direct = _scalar_multiple_of_identity(ricci_solvable(dec))

    a_dim, n_dim = dec.a.dim, dec.n.dim
    ads_n = [L.ad_on(u, dec.n) for u in dec.a.basis] if n_dim else []
    trace_form = Mat(
        [
            [(ads_n[i] @ ads_n[j]).trace() if n_dim else Q(0) for j in range(a_dim)]
            for i in range(a_dim)
        ]
    )
    a_gram = dec.a_gram

    lam_nil = None
    nil_ok = True
    if n_dim:
        nalg = L.restrict(dec.n)
        shifted = ricci_nilpotent(nalg) - L.ad_on(mean_curvature(dec), dec.n)
        lam_nil = _scalar_multiple_of_identity(shifted)
        nil_ok = lam_nil is not None

    lam_trace = None
    trace_ok = True
    if a_dim:
        # tr(ad_A ad_B) = -lambda <A, B>; the (0,0) entry pins lambda since
        # the scalar product is positive definite on a
        lam_trace = -trace_form.entry(0, 0) / a_gram.entry(0, 0)
        trace_ok = trace_form == a_gram.scale(-lam_trace)
        if not trace_ok:
            lam_trace = None

    if lam_nil is not None and lam_trace is not None and lam_nil != lam_trace:
        criterion = None
    elif nil_ok and trace_ok:
        criterion = lam_nil if lam_nil is not None else lam_trace
        if criterion is None:
            criterion = Q(0)
    else:
        criterion = None

    if (direct is None) != (criterion is None) or direct != criterion:
        raise TheoremViolationError(
            f"Einstein verdicts disagree: direct {direct}, criterion {criterion}"
        )
    return EinsteinReport(direct, criterion, nil_ok, trace_ok, trace_form)


@dataclass(frozen=True)
class CurvatureReport:
    ricci_n: Mat
    ad_h_n: Mat
    ricci_s: Mat
    mean_curvature: Vector
    einstein: EinsteinReport


def curvature_report(dec: IwasawaDecomposition) -> CurvatureReport:
    L = dec.algebra
    if dec.n.dim:
        ric_n = ricci_nilpotent(L.restrict(dec.n))
        ad_h_n = L.ad_on(mean_curvature(dec), dec.n)
    else:
        ric_n = Mat.zeros(0, 0)
        ad_h_n = Mat.zeros(0, 0)
    return CurvatureReport(
        ricci_n=ric_n,
        ad_h_n=ad_h_n,
        ricci_s=ricci_solvable(dec),
        mean_curvature=mean_curvature(dec),
        einstein=einstein_check(dec),
    )


# -- floating-point cross-checks --------------------------------------------


def orthonormal_frame(gram: Mat) -> tuple[np.ndarray, np.ndarray]:
    """Numeric orthonormal basis columns and their unit signs for a symmetric gram.

    Raises DegenerateMetricError when the gram is numerically singular.
    """
    g = np.array([[float(x) for x in row] for row in gram.rows], dtype=float)
    n = g.shape[0]
    if n == 0:
        return np.zeros((0, 0)), np.zeros(0)
    w, v = np.linalg.eigh(g)
    if np.min(np.abs(w)) < 1e-12:
        raise DegenerateMetricError("numerically degenerate scalar product")
    cols = v / np.sqrt(np.abs(w))
    eps = np.sign(w)
    return cols, eps


def ricci_nilpotent_orthonormal(N: MetricLieAlgebra) -> np.ndarray:
    """Literal orthonormal-basis Ricci sum in floating point, on N's own basis."""
    n = N.dim
    if n == 0:
        return np.zeros((0, 0))
    g = np.array([[float(x) for x in row] for row in N.gram.rows], dtype=float)
    frame, eps = orthonormal_frame(N.gram)
    ginv = np.linalg.inv(g)
    ad_basis = [
        np.array([[float(x) for x in row] for row in N.ad(N.basis_vector(i)).rows])
        for i in range(n)
    ]
    ric = np.zeros((n, n))
    for j in range(n):
        ad_e = sum(frame[k, j] * ad_basis[k] for k in range(n))
        ad_star = ginv @ ad_e.T @ g
        ric += eps[j] * (ad_e @ ad_star / 4 - ad_star @ ad_e / 2)
    return ric


def mat_to_float(m: Mat) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m.rows], dtype=float)
