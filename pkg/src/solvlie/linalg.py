"""Exact linear algebra over the rationals.

Everything here works with `fractions.Fraction` scalars, so results are exact
and reproducible bit for bit.  Bases returned by `kernel`,
`rational_eigenpairs` and `simultaneous_eigenspaces` are canonical: they come
out of a reduced row echelon form with leftmost-pivot-first pivoting.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exceptions import (
    InputError,
    NoSolutionError,
    NonDiagonalizableError,
    NonUniqueSolutionError,
    NotRationalSplitError,
    SingularMatrixError,
)

Q = Fraction
Vector = tuple[Q, ...]


def vec(entries: Iterable) -> Vector:
    return tuple(Q(x) for x in entries)


def zero_vec(n: int) -> Vector:
    return (Q(0),) * n


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, u: Vector) -> Vector:
    c = Q(c)
    return tuple(c * a for a in u)


def is_zero_vec(u: Vector) -> bool:
    return all(a == 0 for a in u)


_Q0 = Q(0)
_Q1 = Q(1)


class Mat:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(Q(x) for x in row) for row in rows)
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise InputError("ragged matrix rows")
        self.rows: tuple[Vector, ...] = rs

    @classmethod
    def _raw(cls, rows: tuple[Vector, ...]) -> "Mat":
        # internal fast path: entries are known to be Fractions already
        m = object.__new__(cls)
        m.rows = rows
        return m

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls([[Q(0)] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, entries: Iterable) -> "Mat":
        es = [Q(x) for x in entries]
        n = len(es)
        return cls([[es[i] if i == j else Q(0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, cols: Sequence[Vector]) -> "Mat":
        if not cols:
            return cls([])
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise InputError("columns of unequal length")
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def cols(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def entry(self, i: int, j: int) -> Q:
        return self.rows[i][j]

    def transpose(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.rows))) if self.rows else Mat._raw(())

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")
        return Mat._raw(tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")
        return Mat._raw(tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(vscale(-1, r) for r in self.rows))

    def scale(self, c) -> "Mat":
        return Mat._raw(tuple(vscale(c, r) for r in self.rows))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows
        p = other.ncols
        out = []
        for row in self.rows:
            acc = [_Q0] * p
            for k, a in enumerate(row):
                if a:
                    orow = orows[k]
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Mat._raw(tuple(out))

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.ncols:
            raise InputError(f"vector of length {len(v)} against {self.shape} matrix")
        out = []
        for r in self.rows:
            acc = _Q0
            for a, b in zip(r, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def trace(self) -> Q:
        if self.nrows != self.ncols:
            raise InputError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Q(0))

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Mat([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form with leftmost-pivot-first pivoting."""
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv if x else x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Mat(rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel(m: Mat) -> tuple[Vector, ...]:
    """Canonical basis of the null space; empty iff the matrix is injective."""
    red, pivots = rref(m)
    ncols = m.ncols
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for r, p in enumerate(pivots):
            v[p] = -red.rows[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m: Mat, b: Vector) -> Vector:
    """Solve m @ x = b, requiring a unique solution.

    Raises NoSolutionError for inconsistent systems and
    NonUniqueSolutionError for rank-deficient consistent ones.
    """
    if len(b) != m.nrows:
        raise InputError(f"right-hand side of length {len(b)} against {m.shape} matrix")
    if m.ncols == 0:
        if is_zero_vec(b):
            return ()
        raise NoSolutionError("nonzero right-hand side against an empty matrix")
    sols = solve_many(m, Mat.from_cols([vec(b)]))
    return sols.col(0)


def solve_many(m: Mat, rhs: Mat) -> Mat:
    """Solve m @ X = rhs column by column; same uniqueness contract as solve."""
    if rhs.nrows != m.nrows:
        raise InputError(f"right-hand side shape {rhs.shape} against {m.shape} matrix")
    ncols = m.ncols
    aug = Mat([list(mr) + list(rr) for mr, rr in zip(m.rows, rhs.rows)]) if m.nrows else Mat.zeros(0, ncols + rhs.ncols)
    red, pivots = rref(aug)
    for p in pivots:
        if p >= ncols:
            raise NoSolutionError("inconsistent linear system")
    if len(pivots) < ncols:
        raise NonUniqueSolutionError("rank-deficient consistent system")
    # pivots == (0, 1, ..., ncols-1), so the solution can be read off directly
    xs = [[red.rows[i][ncols + k] for k in range(rhs.ncols)] for i in range(ncols)]
    return Mat(xs)


def inverse(m: Mat) -> Mat:
    if m.nrows != m.ncols:
        raise InputError("inverse of a non-square matrix")
    try:
        return solve_many(m, Mat.identity(m.nrows))
    except (NoSolutionError, NonUniqueSolutionError):
        raise SingularMatrixError("matrix is singular") from None


def determinant(m: Mat) -> Q:
    if m.nrows != m.ncols:
        raise InputError("determinant of a non-square matrix")
    rows = [list(r) for r in m.rows]
    n = m.nrows
    det = Q(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Q(0)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def coords_in_basis(basis: Sequence[Vector], v: Vector) -> Vector:
    """Coordinates of v in an independent spanning set; NoSolutionError if outside."""
    if not basis:
        if is_zero_vec(v):
            return ()
        raise NoSolutionError("nonzero vector in the zero space")
    return solve(Mat.from_cols(list(basis)), v)


def in_span(basis: Sequence[Vector], v: Vector) -> bool:
    try:
        coords_in_basis(basis, v)
        return True
    except NoSolutionError:
        return False


def gram_signature(g: Mat) -> tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric rational matrix.

    Computed by exact symmetric congruence reduction, never by eigenvalues.
    """
    if not g.is_symmetric():
        raise InputError("signature of a non-symmetric matrix")
    a = [list(r) for r in g.rows]
    n = g.nrows

    def add_sym(i, j, f):
        # row_i += f*row_j followed by col_i += f*col_j keeps congruence
        for k in range(n):
            a[i][k] += f * a[j][k]
        for k in range(n):
            a[k][i] += f * a[k][j]

    def swap_sym(i, j):
        a[i], a[j] = a[j], a[i]
        for k in range(n):
            a[k][i], a[k][j] = a[k][j], a[k][i]

    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            j_diag = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j_diag is not None:
                swap_sym(k, j_diag)
            else:
                j_off = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j_off is None:
                    zero += 1
                    continue
                add_sym(k, j_off, Q(1))
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add_sym(i, k, -a[i][k] / piv)
    return pos, neg, zero


def is_positive_definite(g: Mat) -> bool:
    """Sylvester criterion: all leading principal minors strictly positive."""
    if not g.is_symmetric():
        return False
    for k in range(1, g.nrows + 1):
        minor = Mat([r[:k] for r in g.rows[:k]])
        if determinant(minor) <= 0:
            return False
    return True


def charpoly(m: Mat) -> tuple[Q, ...]:
    """Coefficients (c0, c1, ..., cn) of det(tI - m), ascending powers, monic."""
    if m.nrows != m.ncols:
        raise InputError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [Q(0)] * (n + 1)
    coeffs[n] = Q(1)
    mk = m
    for k in range(1, n + 1):
        ck = -mk.trace() / k
        coeffs[n - k] = ck
        if k < n:
            mk = m @ (mk + Mat.identity(n).scale(ck))
    return tuple(coeffs)


def _poly_eval(coeffs: Sequence[Q], x: Q) -> Q:
    acc = Q(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deflate(coeffs: list[Q], r: Q) -> list[Q]:
    # synthetic division by (t - r); caller guarantees r is a root
    n = len(coeffs) - 1
    out = [Q(0)] * n
    acc = coeffs[n]
    out[n - 1] = acc
    for i in range(n - 1, 0, -1):
        acc = coeffs[i] + acc * r
        out[i - 1] = acc
    assert coeffs[0] + acc * r == 0
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise InputError("divisors of zero")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(coeffs: Sequence[Q]) -> tuple[dict[Q, int], int]:
    """All rational roots (with multiplicity) of a rational polynomial.

    Returns (roots, remaining_degree) where remaining_degree counts the part
    of the polynomial that has no rational root left.
    """
    poly = [Q(c) for c in coeffs]
    while poly and poly[-1] == 0:
        poly.pop()
    if len(poly) <= 1:
        raise InputError("constant polynomial")
    roots: dict[Q, int] = {}
    while poly[0] == 0:
        roots[Q(0)] = roots.get(Q(0), 0) + 1
        poly = poly[1:]
        if len(poly) == 1:
            return roots, 0
    if len(poly) == 1:
        return roots, 0
    # integer-scaled form for the rational-root candidate set
    denom_lcm = 1
    for c in poly:
        denom_lcm = denom_lcm * c.denominator // gcd_int(denom_lcm, c.denominator)
    ipoly = [int(c * denom_lcm) for c in poly]
    candidates: list[Q] = []
    seen = set()
    for p in _divisors(ipoly[0]):
        for q in _divisors(ipoly[-1]):
            for s in (1, -1):
                cand = Q(s * p, q)
                if cand not in seen:
                    seen.add(cand)
                    candidates.append(cand)
    candidates.sort(key=lambda x: (abs(x), x < 0))
    for cand in candidates:
        while len(poly) > 1 and _poly_eval(poly, cand) == 0:
            roots[cand] = roots.get(cand, 0) + 1
            poly = _poly_deflate(poly, cand)
    return roots, len(poly) - 1


def gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rational_eigenpairs(m: Mat) -> list[tuple[Q, tuple[Vector, ...]]]:
    """Eigenvalues and canonical eigenspace bases of a rationally split matrix.

    Raises NotRationalSplitError when the characteristic polynomial has an
    irrational factor, NonDiagonalizableError when eigenspace dimensions do
    not add up to the matrix size.
    """
    if m.nrows != m.ncols:
        raise InputError("eigenpairs of a non-square matrix")
    n = m.nrows
    if n == 0:
        return []
    roots, remaining = rational_roots(charpoly(m))
    if remaining > 0:
        raise NotRationalSplitError(
            "characteristic polynomial has an irrational factor of degree %d" % remaining
        )
    pairs = []
    total = 0
    for lam in sorted(roots):
        space = kernel(m - Mat.identity(n).scale(lam))
        if len(space) != roots[lam]:
            raise NonDiagonalizableError(
                f"eigenvalue {lam}: eigenspace dimension {len(space)} < multiplicity {roots[lam]}"
            )
        total += len(space)
        pairs.append((lam, space))
    if total != n:
        raise NonDiagonalizableError("eigenspace dimensions sum to %d < %d" % (total, n))
    return pairs


def canonical_span(vectors: Sequence[Vector]) -> tuple[Vector, ...]:
    """Canonical (RREF-row) basis of the span of the given vectors."""
    nonzero = [v for v in vectors if not is_zero_vec(v)]
    if not nonzero:
        return ()
    red, pivots = rref(Mat(nonzero))
    return tuple(red.rows[i] for i in range(len(pivots)))


def simultaneous_eigenspaces(
    mats: Sequence[Mat],
) -> list[tuple[tuple[Q, ...], tuple[Vector, ...]]]:
    """Joint eigenspace decomposition of a commuting, rationally split family.

    Each weight is the tuple of eigenvalues across the family; the spaces are
    independent and sum to the whole space.
    """
    if not mats:
        raise InputError("empty matrix family")
    n = mats[0].nrows
    for m in mats:
        if m.shape != (n, n):
            raise InputError("family members must be square and of equal size")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mats[i] @ mats[j] != mats[j] @ mats[i]:
                raise InputError(f"matrices {i} and {j} do not commute")
    spaces: list[tuple[tuple[Q, ...], tuple[Vector, ...]]] = [
        ((), tuple(Mat.identity(n).cols()))
    ]
    for m in mats:
        refined = []
        for weight, basis in spaces:
            b = Mat.from_cols(list(basis))
            # joint eigenspaces so far are invariant, so m restricts to them
            restr = solve_many(b, m @ b)
            for lam, sub in rational_eigenpairs(restr):
                lifted = tuple(b.apply(v) for v in sub)
                refined.append((weight + (lam,), lifted))
        spaces = refined
    out = [(w, canonical_span(basis)) for w, basis in spaces]
    out.sort(key=lambda pair: pair[0])
    return out


def strict_positive_witness(rows: Sequence[Vector]) -> Vector | None:
    """Exact Fourier-Motzkin search for x with r . x > 0 for every row r.

    Returns a rational witness, or None when the open cone is empty.
    """
    rows = [vec(r) for r in rows]
    if not rows:
        raise InputError("empty system; every vector is a witness")
    k = len(rows[0])
    if any(len(r) != k for r in rows):
        raise InputError("rows of unequal length")
    if k == 0:
        return None
    system = [list(r) for r in rows]
    stages: list[list[list[Q]]] = []
    for m in range(k - 1, 0, -1):
        stages.append([r[:] for r in system])
        pos = [r for r in system if r[m] > 0]
        neg = [r for r in system if r[m] < 0]
        new = [r for r in system if r[m] == 0]
        for p in pos:
            for ng in neg:
                comb = [(-ng[m]) * p[j] + p[m] * ng[j] for j in range(k)]
                comb[m] = Q(0)
                new.append(comb)
        system = new
    for r in system:
        if all(x == 0 for x in r):
            return None
    lower = any(r[0] > 0 for r in system)
    upper = any(r[0] < 0 for r in system)
    if lower and upper:
        return None
    x = [Q(0)] * k
    x[0] = Q(-1) if upper else Q(1)
    for m in range(1, k):
        stage = stages[k - 1 - m]
        los: list[Q] = []
        his: list[Q] = []
        for r in stage:
            if r[m] == 0:
                continue
            partial = sum(r[j] * x[j] for j in range(m))
            bound = -partial / r[m]
            if r[m] > 0:
                los.append(bound)
            else:
                his.append(bound)
        if los and his:
            lo, hi = max(los), min(his)
            if lo >= hi:
                return None
            x[m] = (lo + hi) / 2
        elif los:
            x[m] = max(los) + 1
        elif his:
            x[m] = min(his) - 1
    return tuple(x)
