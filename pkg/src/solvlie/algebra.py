"""Metric Lie algebras over the rationals.

A `MetricLieAlgebra` couples a structure-constant table with a nondegenerate
symmetric scalar product on a fixed basis.  Structure constants are stored for
index pairs i < j only; antisymmetry is synthesized, so it holds by
construction.  `MetricLieAlgebra.from_tensor` accepts a raw c[i][j][k] tensor
and reports antisymmetry violations instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exceptions import (
    ClosureError,
    DegenerateMetricError,
    InputError,
    NoSolutionError,
    SingularMatrixError,
)
from .linalg import (
    Mat,
    Q,
    Vector,
    canonical_span,
    coords_in_basis,
    determinant,
    gram_signature,
    in_span,
    inverse,
    is_zero_vec,
    kernel,
    rref,
    solve_many,
    vadd,
    vec,
    vscale,
    zero_vec,
)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n carried as an explicit ordered basis in ambient coordinates."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise InputError("basis vector of wrong ambient dimension")
        if self.basis and len(rref(Mat(self.basis))[1]) != len(self.basis):
            raise InputError("subspace basis is linearly dependent")

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors: Iterable[Vector]) -> "Subspace":
        return cls(ambient_dim, canonical_span(list(vectors)))

    @classmethod
    def whole(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(Mat.identity(ambient_dim).cols()))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Mat:
        return Mat.from_cols(list(self.basis))

    def _echelon(self):
        cached = getattr(self, "_echelon_cache", None)
        if cached is None:
            if self.basis:
                red, pivots = rref(Mat(self.basis))
                cached = (red.rows[: len(pivots)], pivots)
            else:
                cached = ((), ())
            object.__setattr__(self, "_echelon_cache", cached)
        return cached

    def contains(self, v: Vector) -> bool:
        rows, pivots = self._echelon()
        w = list(v)
        for row, p in zip(rows, pivots):
            c = w[p]
            if c != 0:
                for k in range(p, self.ambient_dim):
                    w[k] -= c * row[k]
        return all(x == 0 for x in w)

    def coords_of(self, v: Vector) -> Vector:
        return coords_in_basis(self.basis, v)

    def embed(self, coords: Vector) -> Vector:
        out = zero_vec(self.ambient_dim)
        for c, b in zip(coords, self.basis, strict=True):
            out = vadd(out, vscale(c, b))
        return out

    def canonical(self) -> tuple[Vector, ...]:
        return canonical_span(self.basis)

    def same_span(self, other: "Subspace") -> bool:
        return self.ambient_dim == other.ambient_dim and self.canonical() == other.canonical()

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.spanned_by(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        stacked = Mat.from_cols(list(self.basis) + [vscale(-1, v) for v in other.basis])
        vectors = [self.embed(k[: self.dim]) for k in kernel(stacked)]
        return Subspace.spanned_by(self.ambient_dim, vectors)

    def restricted_gram(self, gram: Mat) -> Mat:
        b = self.matrix()
        return b.transpose() @ gram @ b

    def orthogonal_complement(self, gram: Mat) -> "Subspace":
        if self.dim == 0:
            return Subspace.whole(self.ambient_dim)
        constraints = self.matrix().transpose() @ gram
        return Subspace(self.ambient_dim, kernel(constraints))

    def project(self, gram: Mat, v: Vector) -> Vector:
        """Gram-orthogonal projection of an ambient vector onto this subspace."""
        if self.dim == 0:
            return zero_vec(self.ambient_dim)
        b = self.matrix()
        g_sub = self.restricted_gram(gram)
        try:
            coeffs = inverse(g_sub).apply(b.transpose().apply(gram.apply(v)))
        except SingularMatrixError as exc:
            raise DegenerateMetricError(
                "orthogonal projection needs a nondegenerate restricted scalar product"
            ) from exc
        return self.embed(coeffs)


@dataclass(frozen=True)
class ValidityCheck:
    name: str
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class ValidityReport:
    checks: tuple[ValidityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> ValidityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


class MetricLieAlgebra:
    """Structure constants plus a scalar product on a fixed ordered basis."""

    __slots__ = ("labels", "brackets", "gram", "_table", "_gram_inv", "_restrictions")

    def __init__(
        self,
        labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Sequence] | Iterable[tuple[tuple[int, int], Sequence]],
        gram: Mat,
    ):
        labels = tuple(str(s) for s in labels)
        n = len(labels)
        if gram.shape != (n, n):
            raise InputError(f"gram must be {n}x{n}, got {gram.shape}")
        items = brackets.items() if isinstance(brackets, Mapping) else brackets
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), coeffs in items:
            if not (0 <= i < j < n):
                raise InputError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
            v = vec(coeffs)
            if len(v) != n:
                raise InputError(f"bracket ({i}, {j}) has {len(v)} components, expected {n}")
            if not is_zero_vec(v):
                table[(i, j)] = v
        self.labels = labels
        self.gram = gram
        self.brackets = tuple(sorted(table.items()))
        self._table = table
        self._gram_inv: Mat | None = None
        self._restrictions: dict = {}

    @classmethod
    def from_tensor(
        cls, labels: Sequence[str], tensor: Sequence[Sequence[Sequence]], gram: Mat
    ) -> "MetricLieAlgebra":
        """Build from a full c[i][j][k] tensor, rejecting antisymmetry violations."""
        n = len(labels)
        table = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if i == j and Q(tensor[i][j][k]) != 0:
                        raise InputError(f"antisymmetry violated at ({i}, {i}, {k})")
        for i in range(n):
            for j in range(i + 1, n):
                upper = vec(tensor[i][j])
                lower = vec(tensor[j][i])
                if vadd(upper, lower) != zero_vec(n):
                    bad = next(k for k in range(n) if upper[k] + lower[k] != 0)
                    raise InputError(f"antisymmetry violated at ({i}, {j}, {bad})")
                table[(i, j)] = upper
        return cls(labels, table, gram)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i: int) -> Vector:
        v = [Q(0)] * self.dim
        v[i] = Q(1)
        return tuple(v)

    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return zero_vec(self.dim)
        if i < j:
            return self._table.get((i, j), zero_vec(self.dim))
        return vscale(-1, self._table.get((j, i), zero_vec(self.dim)))

    def bracket(self, x: Vector, y: Vector) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise InputError("bracket arguments must have the algebra's dimension")
        acc = list(zero_vec(self.dim))
        for (i, j), c in self.brackets:
            f = x[i] * y[j] - x[j] * y[i]
            if f:
                for k, ck in enumerate(c):
                    if ck:
                        acc[k] += f * ck
        return tuple(acc)

    def ad(self, x: Vector) -> Mat:
        # column j collects the bracket-table rows touching index j
        rows = [[Q(0)] * self.dim for _ in range(self.dim)]
        for (i, j), c in self.brackets:
            xi, xj = x[i], x[j]
            if xi:
                for k, ck in enumerate(c):
                    if ck:
                        rows[k][j] += xi * ck
            if xj:
                for k, ck in enumerate(c):
                    if ck:
                        rows[k][i] -= xj * ck
        return Mat._raw(tuple(tuple(r) for r in rows))

    def ad_on(self, x: Vector, sub: Subspace) -> Mat:
        """Matrix of ad_x restricted to an ad_x-invariant subspace, in sub coordinates."""
        b = sub.matrix()
        try:
            return solve_many(b, self.ad(x) @ b)
        except NoSolutionError:
            raise InputError("subspace is not invariant under ad of the given vector") from None

    def inner(self, u: Vector, v: Vector) -> Q:
        if len(u) != self.dim or len(v) != self.dim:
            raise InputError("inner product arguments must have the algebra's dimension")
        acc = Q(0)
        for a, gv in zip(u, self.gram.apply(v)):
            if a and gv:
                acc += a * gv
        return acc

    def gram_inverse(self) -> Mat:
        if self._gram_inv is None:
            try:
                self._gram_inv = inverse(self.gram)
            except SingularMatrixError as exc:
                raise DegenerateMetricError("scalar product is degenerate") from exc
        return self._gram_inv

    def ad_star(self, x: Vector, domain: Subspace | None = None) -> Mat:
        """Matrix of the metric adjoint of ad_x on the given domain.

        Satisfies <A* u, v> = <u, [x, v]> for u, v in the domain; the domain
        defaults to the whole algebra.  Degenerate restricted scalar products
        are an error.
        """
        a = self.ad(x)
        if domain is None:
            return self.gram_inverse() @ a.transpose() @ self.gram
        b = domain.matrix()
        g_sub = domain.restricted_gram(self.gram)
        try:
            g_sub_inv = inverse(g_sub)
        except SingularMatrixError as exc:
            raise DegenerateMetricError(
                "adjoint needs a nondegenerate scalar product on the domain"
            ) from exc
        return g_sub_inv @ b.transpose() @ a.transpose() @ self.gram @ b

    # -- structure ---------------------------------------------------------

    def validate(self) -> ValidityReport:
        checks = [ValidityCheck("antisymmetry", True)]
        jacobi_witness = None
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    ei, ej, ek = (self.basis_vector(t) for t in (i, j, k))
                    total = vadd(
                        vadd(
                            self.bracket(self.bracket(ei, ej), ek),
                            self.bracket(self.bracket(ej, ek), ei),
                        ),
                        self.bracket(self.bracket(ek, ei), ej),
                    )
                    if not is_zero_vec(total):
                        jacobi_witness = (i, j, k)
                        break
                if jacobi_witness:
                    break
            if jacobi_witness:
                break
        checks.append(ValidityCheck("jacobi", jacobi_witness is None, jacobi_witness))
        checks.append(ValidityCheck("gram_symmetric", self.gram.is_symmetric()))
        nondeg = self.gram.is_symmetric() and determinant(self.gram) != 0
        checks.append(ValidityCheck("gram_nondegenerate", nondeg))
        return ValidityReport(tuple(checks))

    def signature(self) -> tuple[int, int, int]:
        return gram_signature(self.gram)

    def derived_subalgebra(self) -> Subspace:
        vectors = [c for _, c in self.brackets]
        return Subspace.spanned_by(self.dim, vectors)

    def lower_central_series(self) -> list[Subspace]:
        """Descending series L, [L, L], [L, [L, L]], ... until it stabilizes."""
        series = [Subspace.whole(self.dim)]
        current = series[0]
        while True:
            brackets = [
                self.bracket(self.basis_vector(i), v)
                for i in range(self.dim)
                for v in current.basis
            ]
            nxt = Subspace.spanned_by(self.dim, brackets)
            if nxt.dim == current.dim:
                series.append(nxt)
                break
            series.append(nxt)
            current = nxt
            if nxt.dim == 0:
                break
        return series

    def nilpotency_step(self) -> int | None:
        """Number of strict inclusions when the series ends at zero, else None."""
        series = self.lower_central_series()
        if series[-1].dim != 0:
            return None
        return len(series) - 1

    def is_nilpotent(self) -> bool:
        return self.nilpotency_step() is not None

    def center(self) -> Subspace:
        stacked = [row for i in range(self.dim) for row in self.ad(self.basis_vector(i)).rows]
        if not stacked:
            return Subspace.whole(self.dim)
        return Subspace(self.dim, kernel(Mat(stacked)))

    def restrict(self, sub: Subspace, labels: Sequence[str] | None = None) -> "MetricLieAlgebra":
        """Self-contained metric Lie algebra on the basis of a bracket-closed subspace."""
        if sub.ambient_dim != self.dim:
            raise InputError("subspace has wrong ambient dimension")
        cache_key = (sub.basis, tuple(labels) if labels is not None else None)
        cached = self._restrictions.get(cache_key)
        if cached is not None:
            return cached
        k = sub.dim
        if labels is None:
            labels = []
            for v in sub.basis:
                hits = [i for i, c in enumerate(v) if c != 0]
                if len(hits) == 1 and v[hits[0]] == 1:
                    labels.append(self.labels[hits[0]])
                else:
                    labels.append("v%d" % len(labels))
        table = {}
        for i in range(k):
            for j in range(i + 1, k):
                w = self.bracket(sub.basis[i], sub.basis[j])
                try:
                    table[(i, j)] = sub.coords_of(w)
                except NoSolutionError:
                    raise ClosureError(
                        f"subspace is not closed under the bracket at pair ({i}, {j})",
                        witness=(i, j),
                    ) from None
        g_sub = sub.restricted_gram(self.gram)
        if determinant(g_sub) == 0:
            raise DegenerateMetricError("restricted scalar product is degenerate")
        out = MetricLieAlgebra(labels, table, g_sub)
        self._restrictions[cache_key] = out
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MetricLieAlgebra)
            and self.labels == other.labels
            and self.brackets == other.brackets
            and self.gram == other.gram
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.brackets, self.gram))

    def __repr__(self) -> str:
        return f"MetricLieAlgebra(dim={self.dim}, labels={list(self.labels)})"


def direct_sum(left: MetricLieAlgebra, right: MetricLieAlgebra) -> MetricLieAlgebra:
    """Orthogonal direct sum: brackets stay within the summands."""
    n1, n2 = left.dim, right.dim
    labels = [f"l.{s}" for s in left.labels] + [f"r.{s}" for s in right.labels]
    table: dict[tuple[int, int], Vector] = {}
    for (i, j), c in left.brackets:
        table[(i, j)] = tuple(c) + zero_vec(n2)
    for (i, j), c in right.brackets:
        table[(n1 + i, n1 + j)] = zero_vec(n1) + tuple(c)
    gram = [[Q(0)] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = left.gram.entry(i, j)
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = right.gram.entry(i, j)
    return MetricLieAlgebra(labels, table, Mat(gram))
