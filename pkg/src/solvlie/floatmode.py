"""Numeric analysis pipeline for algebras with irrational adjoint spectra.

Everything that needs no eigendecomposition (validation, the a/n splitting,
mean curvature, both Ricci endomorphisms) stays exact even here; only the
root table is computed numerically, by recursive joint diagonalization of the
commuting symmetric family.  Requires a positive definite scalar product on
the nilradical, since indefinite numeric eigenproblems are not reliable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import MetricLieAlgebra, Subspace
from .curvature import assemble_ricci, mat_to_float, mean_curvature_trace, ricci_nilpotent
from .exceptions import DegenerateMetricError, StrongIwasawaError
from .iwasawa import split_and_check
from .linalg import Mat, Vector, strict_positive_witness


@dataclass(frozen=True)
class FloatRoot:
    values: tuple[float, ...]
    multiplicity: int


@dataclass(frozen=True)
class FloatAnalysis:
    algebra: MetricLieAlgebra
    a: Subspace
    n: Subspace
    roots: tuple[FloatRoot, ...]
    positivity_witness: tuple[float, ...] | None
    mean_curvature: Vector  # exact
    ricci_n: Mat  # exact
    ad_h_n: Mat  # exact
    ricci_s: Mat  # exact
    einstein_lambda: float | None
    tolerance: float


def _cluster(values: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.argsort(values)
    groups: list[list[int]] = []
    for idx in order:
        if groups and abs(values[idx] - values[groups[-1][-1]]) <= tol * max(1.0, abs(values[idx])):
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return [np.array(g) for g in groups]


def joint_eigenspaces_float(
    mats: list[np.ndarray], gram: np.ndarray, tol: float
) -> list[tuple[tuple[float, ...], np.ndarray]]:
    """Joint eigenspaces of commuting gram-symmetric matrices, positive definite gram.

    Returns (weight, basis-columns-in-original-coordinates) pairs.
    """
    n = gram.shape[0]
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise DegenerateMetricError(
            "float mode needs a positive definite scalar product on the nilradical"
        ) from None
    chol_inv = np.linalg.inv(chol)
    # in orthonormal coordinates every family member becomes symmetric
    sym = [chol.T @ m @ chol_inv.T for m in mats]
    spaces: list[tuple[tuple[float, ...], np.ndarray]] = [((), np.eye(n))]
    for s in sym:
        refined = []
        for weight, cols in spaces:
            restr = cols.T @ s @ cols
            w, v = np.linalg.eigh((restr + restr.T) / 2)
            for group in _cluster(w, tol):
                lam = float(np.mean(w[group]))
                refined.append((weight + (lam,), cols @ v[:, group]))
        spaces = refined
    return [(weight, chol_inv.T @ cols) for weight, cols in spaces]


def analyze_float(L: MetricLieAlgebra, tol: float = 1e-9) -> FloatAnalysis:
    a_sub, n_sub = split_and_check(L)

    h = mean_curvature_trace(L)
    ricci_s = assemble_ricci(L, a_sub, n_sub, h)
    if n_sub.dim:
        ricci_n = ricci_nilpotent(L.restrict(n_sub))
        ad_h_n = L.ad_on(h, n_sub)
    else:
        ricci_n = Mat.zeros(0, 0)
        ad_h_n = Mat.zeros(0, 0)

    roots: list[FloatRoot] = []
    witness = None
    if n_sub.dim:
        fam = [mat_to_float(L.ad_on(u, n_sub)) for u in a_sub.basis]
        g_n = mat_to_float(n_sub.restricted_gram(L.gram))
        joint = joint_eigenspaces_float(fam, g_n, tol)
        for weight, cols in sorted(joint, key=lambda p: p[0]):
            if max(abs(w) for w in weight) <= tol:
                raise StrongIwasawaError("ii", "zero is a joint weight on the nilradical")
            roots.append(FloatRoot(weight, cols.shape[1]))
        rows = [tuple(Fraction(w) for w in r.values) for r in roots]
        exact_witness = strict_positive_witness(rows)
        if exact_witness is None:
            raise StrongIwasawaError("iii", "no element of a is positive on every root")
        witness = tuple(float(x) for x in exact_witness)

    lam = None
    if L.dim:
        f = mat_to_float(ricci_s)
        diag = np.diag(f)
        off = f - np.diag(diag)
        if np.max(np.abs(off), initial=0.0) <= tol and np.ptp(diag) <= tol:
            lam = float(np.mean(diag))
    else:
        lam = 0.0

    return FloatAnalysis(
        algebra=L,
        a=a_sub,
        n=n_sub,
        roots=tuple(roots),
        positivity_witness=witness,
        mean_curvature=h,
        ricci_n=ricci_n,
        ad_h_n=ad_h_n,
        ricci_s=ricci_s,
        einstein_lambda=lam,
        tolerance=tol,
    )
