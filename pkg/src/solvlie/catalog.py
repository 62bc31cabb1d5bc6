"""Built-in example algebras and the on-disk algebra format.

Builders construct brackets from matrix commutators rather than hard-coded
tables; a frozen golden file for the truncated affine sl3 example guards the
serializer and the builder against regressions.

File grammar (whitespace-insensitive between tokens, `#` starts a comment):

    algebra <name> dim <n>
    label <i> <text>
    bracket <i> <j> : <k>=<p/q>[, <k>=<p/q>]*      # requires i < j
    gram <i> <j> <p/q>                             # requires i <= j; unlisted = 0
    a-basis <i>,<j>,...                            # optional
    simple <c>,<c>,...                             # optional, one line per root

Rationals are written `p/q` with a positive denominator, or `p` alone.
Serialization is canonical: sorted indices, reduced fractions, so files are
byte-identical across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .algebra import MetricLieAlgebra
from .exceptions import InputError, ParseError
from .linalg import Mat, Q, Vector, solve, vec

SL3 = tuple[tuple[Q, ...], ...]


def _m3(entries) -> SL3:
    return tuple(tuple(Q(x) for x in row) for row in entries)


def _e(i: int, j: int, size: int = 3) -> SL3:
    return tuple(
        tuple(Q(1) if (r, c) == (i, j) else Q(0) for c in range(size)) for r in range(size)
    )


def _madd(a: SL3, b: SL3) -> SL3:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _msub(a: SL3, b: SL3) -> SL3:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mmul(a: SL3, b: SL3) -> SL3:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _comm(a: SL3, b: SL3) -> SL3:
    return _msub(_mmul(a, b), _mmul(b, a))


def _tr_prod_t(a: SL3, b: SL3) -> Q:
    # trace(a^T b)
    n = len(a)
    return sum(a[i][j] * b[i][j] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class AlgebraFile:
    """Parsed algebra document: the algebra plus optional analysis hints."""

    name: str
    algebra: MetricLieAlgebra
    a_basis: tuple[int, ...] | None = None
    simple_coords: tuple[Vector, ...] | None = None


@dataclass(frozen=True)
class CatalogEntry:
    file: AlgebraFile
    root_aliases: dict


def _algebra_from_matrix_basis(
    labels: list[str],
    mats: list[tuple[int, SL3]],
    gram: Mat,
    extra_action=None,
    n_start: int = 0,
) -> MetricLieAlgebra:
    """Structure constants for a basis of (degree, matrix) pairs.

    Bracket rule: [(d1, X), (d2, Y)] = (d1 + d2, [X, Y]) when the target
    degree is present, zero otherwise.  `extra_action` supplies brackets of the
    leading non-matrix basis vectors (abelian among themselves) with the
    matrix part.
    """
    dim = len(labels)
    by_degree: dict[int, list[int]] = {}
    for idx, (d, _) in enumerate(mats):
        by_degree.setdefault(d, []).append(idx)

    def decompose(d: int, m: SL3) -> Vector:
        out = [Q(0)] * dim
        if all(x == 0 for row in m for x in row):
            return tuple(out)
        if d not in by_degree:
            return tuple(out)
        idxs = by_degree[d]
        basis_cols = [
            tuple(mats[i][1][r][c] for r in range(len(m)) for c in range(len(m)))
            for i in idxs
        ]
        target = tuple(m[r][c] for r in range(len(m)) for c in range(len(m)))
        coeffs = solve(Mat.from_cols(basis_cols), target)
        for i, c in zip(idxs, coeffs):
            out[n_start + i] = c
        return tuple(out)

    table = {}
    for p in range(len(mats)):
        for q in range(p + 1, len(mats)):
            d1, x = mats[p]
            d2, y = mats[q]
            v = decompose(d1 + d2, _comm(x, y))
            table[(n_start + p, n_start + q)] = v
    if extra_action is not None:
        for h in range(n_start):
            for p, (d, x) in enumerate(mats):
                table[(h, n_start + p)] = decompose(*extra_action(h, d, x))
    return MetricLieAlgebra(labels, table, gram)


H12: SL3 = _msub(_e(0, 0), _e(1, 1))
H23: SL3 = _msub(_e(1, 1), _e(2, 2))


def build_km_sl3() -> CatalogEntry:
    """Degree-truncated positive part of affine sl3, extended by three derivations.

    The nilpotent part is span{1.E12, 1.E13, 1.E23} + t.sl3 with
    [t^i x, t^j y] = t^{i+j} [x, y] (degree two truncated away); D grades by
    the degree in t, H1 and H2 act through the diagonal matrices they name.
    """
    n_mats: list[tuple[int, SL3]] = [
        (0, _e(0, 1)),  # 1.E12
        (0, _e(1, 2)),  # 1.E23
        (0, _e(0, 2)),  # 1.E13
        (1, _e(2, 0)),  # t.E31
        (1, _e(1, 0)),  # t.E21
        (1, _e(2, 1)),  # t.E32
        (1, H12),  # t.H12
        (1, H23),  # t.H23
        (1, _e(0, 1)),  # t.E12
        (1, _e(1, 2)),  # t.E23
        (1, _e(0, 2)),  # t.E13
    ]
    labels = ["D", "H1", "H2"] + [
        ("1." if d == 0 else "t.") + nm
        for d, nm in [
            (0, "E12"),
            (0, "E23"),
            (0, "E13"),
            (1, "E31"),
            (1, "E21"),
            (1, "E32"),
            (1, "H12"),
            (1, "H23"),
            (1, "E12"),
            (1, "E23"),
            (1, "E13"),
        ]
    ]
    dim = 14
    gram_rows = [[Q(0)] * dim for _ in range(dim)]
    h_block = [[Q(16, 9), Q(0), Q(0)], [Q(0), Q(4), Q(-2)], [Q(0), Q(-2), Q(4)]]
    for i in range(3):
        for j in range(3):
            gram_rows[i][j] = h_block[i][j]
    for p in range(11):
        for q in range(11):
            dp, xp = n_mats[p]
            dq, xq = n_mats[q]
            gram_rows[3 + p][3 + q] = _tr_prod_t(xp, xq) if dp == dq else Q(0)
    gram = Mat(gram_rows)

    def action(h: int, d: int, x: SL3):
        if h == 0:
            return d, tuple(tuple(d * v for v in row) for row in x)
        return d, _comm(H12 if h == 1 else H23, x)

    algebra = _algebra_from_matrix_basis(labels, n_mats, gram, extra_action=action, n_start=3)
    file = AlgebraFile(
        name="km-sl3",
        algebra=algebra,
        a_basis=(0, 1, 2),
        simple_coords=(vec([1, -1, -1]), vec([0, 2, -1]), vec([0, -1, 2])),
    )
    aliases = {
        (1, 1, 1): "d",
        (1, 2, 1): "d+a1",
        (1, 0, 1): "d-a1",
        (1, 1, 2): "d+a2",
        (1, 1, 0): "d-a2",
        (1, 2, 2): "d+a1+a2",
    }
    return CatalogEntry(file, aliases)


def build_symmetric_iwasawa(kind: str, n: int | None = None) -> CatalogEntry:
    """Iwasawa solvable part of a split real form with its symmetric-space metric.

    The scalar product doubles the invariant form on a and keeps it on n,
    where the invariant form comes from the Killing form twisted by the
    negative-transpose involution.
    """
    if kind == "sl3":
        a_mats = [H12, H23]
        n_mats = [_e(0, 1), _e(1, 2), _e(0, 2)]
        labels = ["H12", "H23", "E12", "E23", "E13"]
        killing = Q(6)  # Killing form of sl3 is 6 tr(XY)
        name = "iwasawa-sl3"
        simple = (vec([2, -1]), vec([-1, 2]))
    elif kind == "so_n1":
        if n is None or n < 2:
            raise InputError("so(n,1) needs an integer parameter n >= 2")
        size = n + 1
        a_mats = [_madd(_e(0, n, size), _e(n, 0, size))]
        n_mats = []
        for i in range(1, n):
            z = _madd(
                _msub(_e(0, i, size), _e(i, 0, size)),
                _madd(_e(i, n, size), _e(n, i, size)),
            )
            n_mats.append(z)
        labels = ["A"] + [f"Z{i}" for i in range(1, n)]
        killing = Q(n - 1)  # Killing form of so(n,1) is (n-1) tr(XY)
        name = f"hyperbolic:{n}"
        simple = (vec([1]),)
    else:
        raise InputError(f"unknown symmetric kind {kind!r}")

    mats = [(0, m) for m in a_mats] + [(1, m) for m in n_mats]
    k = len(a_mats)
    dim = len(mats)

    gram_rows = [[Q(0)] * dim for _ in range(dim)]
    for i, x in enumerate(a_mats):
        for j, y in enumerate(a_mats):
            gram_rows[i][j] = 2 * killing * _tr_prod_t(x, y)
    for i, x in enumerate(n_mats):
        for j, y in enumerate(n_mats):
            gram_rows[k + i][k + j] = killing * _tr_prod_t(x, y)
    gram = Mat(gram_rows)

    # degrees separate a from n so the generic bracket rule would kill [a, n];
    # brackets here are plain matrix commutators, so compute them directly
    all_mats = [m for _, m in mats]
    table = {}
    size = len(all_mats[0])
    flat_basis = Mat.from_cols(
        [tuple(m[r][c] for r in range(size) for c in range(size)) for m in all_mats]
    )
    for p in range(dim):
        for q in range(p + 1, dim):
            w = _comm(all_mats[p], all_mats[q])
            target = tuple(w[r][c] for r in range(size) for c in range(size))
            table[(p, q)] = solve(flat_basis, target) if any(target) else tuple([Q(0)] * dim)

    # commutators must close on the chosen span
    algebra = MetricLieAlgebra(labels, table, gram)
    file = AlgebraFile(
        name=name,
        algebra=algebra,
        a_basis=tuple(range(k)),
        simple_coords=simple,
    )
    return CatalogEntry(file, {})


def build_heisenberg_extension(weights) -> CatalogEntry:
    """Heisenberg algebra [X, Y] = Z extended by the diagonal derivation diag(weights)."""
    ws = [Q(w) for w in weights]
    if len(ws) != 3:
        raise InputError("exactly three weights expected")
    if any(w <= 0 for w in ws):
        raise InputError("weights must be positive")
    if ws[0] + ws[1] != ws[2]:
        raise InputError("diag(w1, w2, w3) derives [X, Y] = Z only when w3 = w1 + w2")
    labels = ["A", "X", "Y", "Z"]
    table = {
        (0, 1): vec([0, ws[0], 0, 0]),
        (0, 2): vec([0, 0, ws[1], 0]),
        (0, 3): vec([0, 0, 0, ws[2]]),
        (1, 2): vec([0, 0, 0, 1]),
    }
    algebra = MetricLieAlgebra(labels, table, Mat.identity(4))
    values = sorted(set(ws))
    g = values[0]
    simple = (vec([g]),) if all((w / g).denominator == 1 for w in values) else None
    name = "heisenberg-ext:" + ",".join(format_rational(w) for w in ws)
    file = AlgebraFile(name=name, algebra=algebra, a_basis=(0,), simple_coords=simple)
    return CatalogEntry(file, {})


CATALOG_PATTERNS = ["km-sl3", "iwasawa-sl3", "hyperbolic:<n>", "heisenberg-ext[:w1,w2,w3]"]


def get_example(name: str) -> CatalogEntry:
    if name == "km-sl3":
        return build_km_sl3()
    if name == "iwasawa-sl3":
        return build_symmetric_iwasawa("sl3")
    if name.startswith("hyperbolic:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad hyperbolic parameter in {name!r}") from None
        return build_symmetric_iwasawa("so_n1", n)
    if name == "heisenberg-ext":
        return build_heisenberg_extension([1, 1, 2])
    if name.startswith("heisenberg-ext:"):
        parts = name.split(":", 1)[1].split(",")
        try:
            weights = [parse_rational(p) for p in parts]
        except ValueError:
            raise InputError(f"bad weights in {name!r}") from None
        return build_heisenberg_extension(weights)
    raise InputError(f"unknown example {name!r}; known: {', '.join(CATALOG_PATTERNS)}")


# -- rational text form -------------------------------------------------------

_RAT_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str) -> Q:
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"bad rational {text!r} (use p or p/q with positive q)")
    return Q(text)


def format_rational(x: Q) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- algebra files ------------------------------------------------------------


def parse_algebra(data) -> AlgebraFile:
    """Parse an algebra document; raises ParseError with the offending line."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    name = None
    dim = None
    labels: dict[int, str] = {}
    brackets: dict[tuple[int, int], list] = {}
    gram_entries: dict[tuple[int, int], Q] = {}
    a_basis = None
    simple: list[Vector] = []

    def want_index(tok: str, lineno: int, upper: int) -> int:
        try:
            i = int(tok)
        except ValueError:
            raise ParseError(f"expected an index, got {tok!r}", lineno) from None
        if not 0 <= i < upper:
            raise ParseError(f"index {i} out of range [0, {upper})", lineno)
        return i

    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "algebra":
            if name is not None:
                raise ParseError("duplicate algebra header", lineno)
            if len(tokens) != 4 or tokens[2] != "dim":
                raise ParseError("expected: algebra <name> dim <n>", lineno)
            name = tokens[1]
            try:
                dim = int(tokens[3])
            except ValueError:
                raise ParseError(f"bad dimension {tokens[3]!r}", lineno) from None
            if dim < 0:
                raise ParseError("dimension must be nonnegative", lineno)
            continue
        if name is None:
            raise ParseError("file must start with an algebra header", lineno)
        if kind == "label":
            if len(tokens) < 3:
                raise ParseError("expected: label <i> <text>", lineno)
            i = want_index(tokens[1], lineno, dim)
            if i in labels:
                raise ParseError(f"duplicate label for index {i}", lineno)
            labels[i] = " ".join(tokens[2:])
        elif kind == "bracket":
            body = line[len("bracket") :]
            if ":" not in body:
                raise ParseError("expected: bracket <i> <j> : <k>=<p/q>, ...", lineno)
            head, comps = body.split(":", 1)
            head_tokens = head.split()
            if len(head_tokens) != 2:
                raise ParseError("expected two indices before ':'", lineno)
            i = want_index(head_tokens[0], lineno, dim)
            j = want_index(head_tokens[1], lineno, dim)
            if i >= j:
                raise ParseError(
                    f"bracket indices must satisfy i < j; ({j}, {i}) is implied by antisymmetry",
                    lineno,
                )
            if (i, j) in brackets:
                raise ParseError(f"duplicate bracket for pair ({i}, {j})", lineno)
            coeffs = [Q(0)] * dim
            for part in comps.split(","):
                part = part.strip()
                if not part:
                    raise ParseError("empty bracket component", lineno)
                if "=" not in part:
                    raise ParseError(f"bad bracket component {part!r}", lineno)
                ktok, vtok = part.split("=", 1)
                k = want_index(ktok.strip(), lineno, dim)
                try:
                    coeffs[k] = parse_rational(vtok)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            brackets[(i, j)] = coeffs
        elif kind == "gram":
            if len(tokens) != 4:
                raise ParseError("expected: gram <i> <j> <p/q>", lineno)
            i = want_index(tokens[1], lineno, dim)
            j = want_index(tokens[2], lineno, dim)
            if i > j:
                raise ParseError("gram entries are stored with i <= j", lineno)
            if (i, j) in gram_entries:
                raise ParseError(f"duplicate gram entry ({i}, {j})", lineno)
            try:
                gram_entries[(i, j)] = parse_rational(tokens[3])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        elif kind == "a-basis":
            if a_basis is not None:
                raise ParseError("duplicate a-basis line", lineno)
            if len(tokens) != 2:
                raise ParseError("expected: a-basis <i>,<j>,...", lineno)
            a_basis = tuple(want_index(t, lineno, dim) for t in tokens[1].split(","))
        elif kind == "simple":
            if len(tokens) != 2:
                raise ParseError("expected: simple <c>,<c>,...", lineno)
            try:
                simple.append(tuple(parse_rational(t) for t in tokens[1].split(",")))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)

    if name is None or dim is None:
        raise ParseError("missing algebra header")
    label_list = [labels.get(i, f"e{i}") for i in range(dim)]
    gram_rows = [[Q(0)] * dim for _ in range(dim)]
    for (i, j), v in gram_entries.items():
        gram_rows[i][j] = v
        gram_rows[j][i] = v
    algebra = MetricLieAlgebra(label_list, brackets, Mat(gram_rows))
    return AlgebraFile(
        name=name,
        algebra=algebra,
        a_basis=a_basis,
        simple_coords=tuple(simple) if simple else None,
    )


def serialize_algebra(file: AlgebraFile) -> str:
    """Canonical text form: sorted indices, reduced fractions, stable bytes."""
    L = file.algebra
    out = [f"algebra {file.name} dim {L.dim}"]
    for i, label in enumerate(L.labels):
        out.append(f"label {i} {label}")
    for (i, j), coeffs in L.brackets:
        comps = ", ".join(
            f"{k}={format_rational(c)}" for k, c in enumerate(coeffs) if c != 0
        )
        out.append(f"bracket {i} {j} : {comps}")
    for i in range(L.dim):
        for j in range(i, L.dim):
            if L.gram.entry(i, j) != 0:
                out.append(f"gram {i} {j} {format_rational(L.gram.entry(i, j))}")
    if file.a_basis is not None:
        out.append("a-basis " + ",".join(str(i) for i in file.a_basis))
    if file.simple_coords is not None:
        for coords in file.simple_coords:
            out.append("simple " + ",".join(format_rational(c) for c in coords))
    return "\n".join(out) + "\n"


def golden_km_sl3_bytes() -> bytes:
    return resources.files("solvlie.data").joinpath("km_sl3.alg").read_bytes()
