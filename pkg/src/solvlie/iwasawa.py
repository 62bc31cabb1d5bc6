"""Root-space analysis of solvable metric Lie algebras.

`verify_strong_iwasawa` establishes the split s = a (+) n together with the
joint root-space decomposition of n, a strict positivity witness in a, and the
metric conditions on a.  Simple systems, dual bases, root vectors and
reflections all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import MetricLieAlgebra, Subspace
from .exceptions import (
    InputError,
    SingularMatrixError,
    StrongIwasawaError,
    ValidationError,
)
from .linalg import (
    Mat,
    Q,
    Vector,
    inverse,
    is_positive_definite,
    is_zero_vec,
    kernel,
    simultaneous_eigenspaces,
    solve,
    solve_many,
    strict_positive_witness,
    vec,
    vsub,
    zero_vec,
)


@dataclass(frozen=True)
class Root:
    """A joint eigenvalue covector on the a-basis, with its eigenspace dimension."""

    coords: Vector
    multiplicity: int

    def value_on(self, a_coords: Vector) -> Q:
        return sum(c * x for c, x in zip(self.coords, a_coords, strict=True))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class IwasawaDecomposition:
    algebra: MetricLieAlgebra
    a: Subspace
    n: Subspace
    roots: tuple[Root, ...]
    root_spaces: dict
    witness: Vector

    @property
    def a_gram(self) -> Mat:
        return self.a.restricted_gram(self.algebra.gram)

    def root_by_coords(self, coords: Vector) -> Root | None:
        for r in self.roots:
            if r.coords == tuple(coords):
                return r
        return None

    def root_value(self, root: Root, ambient_a_vector: Vector) -> Q:
        return root.value_on(self.a.coords_of(ambient_a_vector))


def _derived_series_terminates(L: MetricLieAlgebra) -> bool:
    current = Subspace.whole(L.dim)
    while current.dim > 0:
        brackets = [
            L.bracket(u, v)
            for i, u in enumerate(current.basis)
            for v in current.basis[i + 1 :]
        ]
        nxt = Subspace.spanned_by(L.dim, brackets)
        if nxt.dim == current.dim:
            return False
        current = nxt
    return True


def split_and_check(L: MetricLieAlgebra) -> tuple[Subspace, Subspace]:
    """The clauses of the strong Iwasawa definition that need no eigenvalues.

    Returns (a, n); raises on any violation.  The positivity clause is left to
    the caller because it needs the root spectrum.
    """
    report = L.validate()
    if not report.passed:
        bad = next(c for c in report.checks if not c.passed)
        raise ValidationError(f"algebra fails validation: {bad.name} (witness {bad.witness})")
    if not _derived_series_terminates(L):
        raise ValidationError("algebra is not solvable")

    n_sub = L.derived_subalgebra()
    a_sub = n_sub.orthogonal_complement(L.gram)

    if a_sub.dim + n_sub.dim != L.dim or a_sub.intersection(n_sub).dim != 0:
        raise StrongIwasawaError(
            "i", "the orthogonal complement of [s, s] does not give a direct sum"
        )
    for i, u in enumerate(a_sub.basis):
        for v in a_sub.basis[i + 1 :]:
            if not is_zero_vec(L.bracket(u, v)):
                raise StrongIwasawaError("i", "complement of [s, s] is not abelian", witness=(u, v))

    for u in a_sub.basis:
        m = L.ad(u)
        if not (L.gram @ m).is_symmetric():
            raise StrongIwasawaError("ii", "ad is not symmetric for an element of a", witness=u)

    a_gram = a_sub.restricted_gram(L.gram)
    if a_sub.dim and not is_positive_definite(a_gram):
        raise StrongIwasawaError("iv", "scalar product is not positive definite on a")

    if n_sub.dim:
        if a_sub.dim == 0:
            raise StrongIwasawaError("iii", "a is zero-dimensional but the nilradical is not")
        flat_cols = []
        for u in a_sub.basis:
            m = L.ad(u)
            flat_cols.append(tuple(x for row in m.rows for x in row))
        if kernel(Mat.from_cols(flat_cols)):
            raise StrongIwasawaError("ii", "some nonzero element of a has ad equal to zero")
    return a_sub, n_sub


def verify_strong_iwasawa(L: MetricLieAlgebra) -> IwasawaDecomposition:
    """Check the strong Iwasawa conditions and return the full decomposition.

    Raises StrongIwasawaError naming the violated clause and a witness.  A
    nilradical of dimension zero (abelian algebra) is accepted as a degenerate
    pass with an empty root set.
    """
    a_sub, n_sub = split_and_check(L)

    if n_sub.dim == 0:
        # abelian algebra: no roots, nothing to witness
        return IwasawaDecomposition(L, a_sub, n_sub, (), {}, zero_vec(L.dim))

    b = n_sub.matrix()
    family = [solve_many(b, L.ad(u) @ b) for u in a_sub.basis]
    joint = simultaneous_eigenspaces(family)

    roots: list[Root] = []
    spaces: dict[Root, Subspace] = {}
    for weight, basis in joint:
        if all(w == 0 for w in weight):
            raise StrongIwasawaError(
                "ii", "zero is a joint weight on the nilradical", witness=weight
            )
        root = Root(tuple(weight), len(basis))
        roots.append(root)
        spaces[root] = Subspace(L.dim, tuple(n_sub.embed(v) for v in basis))

    witness_coords = strict_positive_witness([r.coords for r in roots])
    if witness_coords is None:
        raise StrongIwasawaError("iii", "no element of a is positive on every root")
    witness = a_sub.embed(witness_coords)

    # structural sanity on the decomposition itself
    total = sum(r.multiplicity for r in roots)
    if total != n_sub.dim:
        raise StrongIwasawaError("ii", "root spaces do not fill the nilradical")
    for idx, r in enumerate(roots):
        g_r = spaces[r].restricted_gram(L.gram)
        try:
            inverse(g_r)
        except SingularMatrixError:
            raise StrongIwasawaError(
                "ii", "scalar product degenerates on a root space", witness=r.coords
            ) from None
        for other in roots[idx + 1 :]:
            for x in spaces[r].basis:
                for y in spaces[other].basis:
                    if L.inner(x, y) != 0:
                        raise StrongIwasawaError(
                            "ii", "root spaces are not orthogonal", witness=(r.coords, other.coords)
                        )

    return IwasawaDecomposition(L, a_sub, n_sub, tuple(roots), spaces, witness)


def root_vector(dec: IwasawaDecomposition, root: Root | Vector) -> Vector:
    """The element of a metrically dual to the given covector."""
    coords = root.coords if isinstance(root, Root) else vec(root)
    c = solve(dec.a_gram, coords)
    return dec.a.embed(c)


def covector_of(dec: IwasawaDecomposition, h: Vector) -> Vector:
    """Coordinates on the a-basis of the covector <h, .> for h in a."""
    return dec.a_gram.apply(dec.a.coords_of(h))


def dual_pairing(dec: IwasawaDecomposition, alpha: Root | Vector, beta: Root | Vector) -> Q:
    """Scalar product of two covectors through their dual vectors in a."""
    ha = root_vector(dec, alpha)
    hb = root_vector(dec, beta)
    return dec.algebra.inner(ha, hb)


def reflect(dec: IwasawaDecomposition, beta: Root | Vector, v: Vector) -> Vector:
    """Reflection of an ambient vector of a in the hyperplane orthogonal to H_beta."""
    h = root_vector(dec, beta)
    hh = dec.algebra.inner(h, h)
    if hh == 0:
        raise InputError("reflection in an isotropic or zero root vector")
    c = 2 * dec.algebra.inner(v, h) / hh
    return vsub(v, tuple(c * x for x in h))


def reflect_covector(dec: IwasawaDecomposition, beta: Root | Vector, alpha: Root | Vector) -> Vector:
    """Dual reflection on covectors, computed through root vectors."""
    ha = root_vector(dec, alpha)
    return covector_of(dec, reflect(dec, beta, ha))


@dataclass(frozen=True)
class SimpleSystem:
    """An ordered basis of simple roots with its dual basis in a.

    Every root of the decomposition expands over the system with nonnegative
    integer coefficients; `expansions` maps each root to that coefficient
    tuple and fixes the canonical root order (lexicographic by coefficients).
    """

    decomposition: IwasawaDecomposition
    simple: tuple[Root, ...]
    dual_basis: tuple[Vector, ...]
    expansions: dict

    def expansion(self, root: Root) -> tuple[int, ...]:
        return self.expansions[root]

    def ordered_roots(self) -> list[Root]:
        return sorted(self.decomposition.roots, key=lambda r: self.expansions[r])


def verify_simple_system(dec: IwasawaDecomposition, candidate: Sequence[Root]) -> SimpleSystem:
    """Validate a simple system: basis of a*, all roots in its nonnegative integer span."""
    roots = tuple(candidate)
    for r in roots:
        if dec.root_by_coords(r.coords) is None:
            raise ValidationError(f"candidate simple root {r} is not a root")
    if len(set(r.coords for r in roots)) != len(roots):
        raise ValidationError("candidate simple system has repeated roots")
    k = dec.a.dim
    if len(roots) != k:
        raise ValidationError(
            f"simple system must have {k} elements to be a basis of a*, got {len(roots)}"
        )
    rmat = Mat([r.coords for r in roots])
    try:
        rinv = inverse(rmat)
    except SingularMatrixError:
        raise ValidationError("candidate simple roots are not a basis of a*") from None
    dual = tuple(dec.a.embed(rinv.col(j)) for j in range(k))
    expansions = {}
    rt = rmat.transpose()
    for root in dec.roots:
        coeffs = solve(rt, root.coords)
        if any(c.denominator != 1 or c < 0 for c in coeffs):
            raise ValidationError(
                f"root {root} has a non-nonnegative-integer expansion {tuple(coeffs)}"
            )
        expansions[root] = tuple(int(c) for c in coeffs)
    return SimpleSystem(dec, roots, dual, expansions)


def suggest_simple_system(dec: IwasawaDecomposition) -> list[Root]:
    """Roots that are not a sum of two roots; a convenience starting point only."""
    coord_set = {r.coords for r in dec.roots}
    out = []
    for r in dec.roots:
        decomposable = False
        for s in dec.roots:
            rest = vsub(r.coords, s.coords)
            if rest in coord_set:
                decomposable = True
                break
        if not decomposable:
            out.append(r)
    return out


def root_label(sys: SimpleSystem, root: Root, aliases: dict | None = None) -> str:
    """Canonical display name: a<i> for simple roots, else the expansion sum."""
    coeffs = sys.expansions[root]
    if aliases and tuple(coeffs) in aliases:
        return aliases[tuple(coeffs)]
    ones = [i for i, c in enumerate(coeffs) if c != 0]
    if len(ones) == 1 and coeffs[ones[0]] == 1:
        return f"a{ones[0]}"
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        terms.append(f"a{i}" if c == 1 else f"{c}a{i}")
    return "+".join(terms)
