"""Analysis reports: one ordered structure, two renderings (text and JSON).

Exact-path reports carry every scalar as a reduced fraction string, so
repeated runs are byte-identical.  Float-mode values carry the tolerance that
was used.
"""

from __future__ import annotations

import json

from .attached import (
    AttachedSubalgebra,
    ad_star_derivation_check,
    check_admissible,
    jacobi_star_direct,
    jacobi_star_exact,
    main_theorem_report,
    totally_geodesic_check,
)
from .catalog import AlgebraFile, format_rational
from .curvature import (
    einstein_check,
    mean_curvature,
    minimality_check,
    ricci_nilpotent,
    ricci_solvable,
)
from .exceptions import ValidationError
from .floatmode import analyze_float
from .iwasawa import (
    IwasawaDecomposition,
    SimpleSystem,
    dual_pairing,
    root_label,
    suggest_simple_system,
    verify_simple_system,
    verify_strong_iwasawa,
)
from .linalg import Mat, Vector


def fmt_vec(v: Vector) -> list[str]:
    return [format_rational(x) for x in v]


def fmt_mat(m: Mat) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.rows]


def _is_diagonal(m: Mat) -> bool:
    return all(
        m.entry(i, j) == 0 for i in range(m.nrows) for j in range(m.ncols) if i != j
    )


def resolve_simple_system(
    dec: IwasawaDecomposition, file: AlgebraFile, override=None
) -> SimpleSystem:
    """Pick the simple system: explicit override, then file hint, then suggestion."""
    if override is not None:
        coords_list = override
    elif file.simple_coords is not None:
        coords_list = file.simple_coords
    else:
        suggestion = suggest_simple_system(dec)
        coords_list = [r.coords for r in suggestion]
    roots = []
    for coords in coords_list:
        r = dec.root_by_coords(tuple(coords))
        if r is None:
            raise ValidationError(f"simple-system coords {tuple(coords)} do not name a root")
        roots.append(r)
    return verify_simple_system(dec, roots)


def analyze_exact(file: AlgebraFile, aliases: dict | None = None, simple_override=None) -> dict:
    L = file.algebra
    report: dict = {"tool": "solvlie", "mode": "exact", "format_version": 1}
    validity = L.validate()
    pos, neg, zero = L.signature()
    report["algebra"] = {
        "name": file.name,
        "dim": L.dim,
        "labels": list(L.labels),
        "gram_signature": {"positive": pos, "negative": neg, "zero": zero},
        "checks": {c.name: c.passed for c in validity.checks},
    }
    dec = verify_strong_iwasawa(L)
    nilradical = {"dim": dec.n.dim}
    if dec.n.dim:
        nalg = L.restrict(dec.n)
        nilradical["nilpotency_step"] = nalg.nilpotency_step()
        nilradical["center_dim"] = nalg.center().dim
    report["nilradical"] = nilradical
    report["iwasawa"] = {
        "strong_iwasawa": True,
        "a_dim": dec.a.dim,
        "a_basis": [fmt_vec(v) for v in dec.a.basis],
        "positivity_witness": fmt_vec(dec.witness),
    }

    sys = None
    try:
        sys = resolve_simple_system(dec, file, simple_override)
    except ValidationError as exc:
        report["simple_system"] = {"verified": False, "reason": str(exc)}
    if sys is not None:
        report["simple_system"] = {
            "verified": True,
            "coords": [fmt_vec(r.coords) for r in sys.simple],
            "dual_basis": [fmt_vec(v) for v in sys.dual_basis],
        }
        ordered = sys.ordered_roots()
        report["roots"] = [
            {
                "label": root_label(sys, r, aliases),
                "coords": fmt_vec(r.coords),
                "multiplicity": r.multiplicity,
                "coefficients": list(sys.expansions[r]),
            }
            for r in ordered
        ]
    else:
        report["roots"] = [
            {"coords": fmt_vec(r.coords), "multiplicity": r.multiplicity} for r in dec.roots
        ]

    report["curvature"] = _curvature_section(dec)
    report["_dec"] = dec
    report["_sys"] = sys
    return report


def _curvature_section(dec: IwasawaDecomposition) -> dict:
    L = dec.algebra
    section: dict = {"mean_curvature": fmt_vec(mean_curvature(dec))}
    if dec.n.dim:
        ric_n = ricci_nilpotent(L.restrict(dec.n))
        ad_h = L.ad_on(mean_curvature(dec), dec.n)
        section["ricci_n"] = _matrix_entry(ric_n)
        section["ad_h_n"] = _matrix_entry(ad_h)
    ric_s = ricci_solvable(dec)
    section["ricci_s"] = _matrix_entry(ric_s)
    ec = einstein_check(dec)
    section["einstein"] = {
        "einstein": ec.is_einstein,
        "lambda": format_rational(ec.direct_lambda) if ec.is_einstein else None,
        "nilradical_identity": ec.nilradical_identity,
        "trace_form_identity": ec.trace_form_identity,
        "trace_form": fmt_mat(ec.trace_form),
    }
    return section


def _matrix_entry(m: Mat) -> dict:
    entry: dict = {"shape": [m.nrows, m.ncols]}
    if _is_diagonal(m):
        entry["diagonal"] = [format_rational(m.entry(i, i)) for i in range(m.nrows)]
    else:
        entry["matrix"] = fmt_mat(m)
    return entry


def attached_section(
    att: AttachedSubalgebra, aliases: dict | None, tol: float
) -> dict:
    sys = att.system
    labels = [root_label(sys, r, aliases) for r in att.lambda_prime]
    adm = check_admissible(att.parent, sys, att.lambda_prime)
    permutations = [
        {
            "reflection": root_label(sys, simple_root, aliases),
            "maps": [
                [root_label(sys, src, aliases), root_label(sys, img, aliases)]
                for src, img in pairs
            ],
        }
        for simple_root, pairs in adm.permutations
    ]
    jac = jacobi_star_exact(att)
    direct_holds, direct_dev = jacobi_star_direct(att, tol)
    mt = main_theorem_report(att)
    ec = einstein_check(att.restricted_dec)
    trace_vec, minimal = minimality_check(att.algebra, att.s_prime, att.restricted)
    verdict, via_roots, via_h = totally_geodesic_check(att)
    derivation = ad_star_derivation_check(att.algebra, att.n_zero)
    complement = [r for r in sys.simple if r not in set(att.lambda_prime)]
    pairings = [
        {
            "pair": [root_label(sys, a, aliases), root_label(sys, b, aliases)],
            "value": format_rational(dual_pairing(att.parent, a, b)),
        }
        for a in att.lambda_prime
        for b in complement
    ]
    return {
        "lambda_prime": labels,
        "admissible": adm.admissible,
        "permutations": permutations,
        "z": fmt_vec(att.z),
        "dims": {
            "a_prime": att.a_prime.dim,
            "n_prime": att.n_prime.dim,
            "a_zero": att.a_zero.dim,
            "n_zero": att.n_zero.dim,
        },
        "mean_curvature_prime": fmt_vec(att.h_prime),
        "jacobi_star": {
            "holds": jac.holds,
            "ricci_difference": _matrix_entry(jac.lhs),
            "bracket_action": _matrix_entry(jac.rhs),
        },
        "jacobi_star_direct": {
            "holds": direct_holds,
            "max_deviation": direct_dev,
            "tolerance": tol,
        },
        "main_theorem": {
            "restricted_ricci_agrees": mt.restricted_ricci_agrees,
            "nilradical_difference_agrees": mt.nilradical_difference_agrees,
            "jacobi_star": mt.jacobi_star,
            "ricci_s_prime": _matrix_entry(mt.ricci_s_prime),
        },
        "einstein": {
            "einstein": ec.is_einstein,
            "lambda": format_rational(ec.direct_lambda) if ec.is_einstein else None,
        },
        "minimal": minimal,
        "trace_of_h": fmt_vec(trace_vec),
        "totally_geodesic": {
            "verdict": verdict,
            "via_root_orthogonality": via_roots,
            "via_second_fundamental_form": via_h,
            "simple_pairings": pairings,
        },
        "ad_star_derivation_on_n_zero": {
            "passes": derivation.passes,
            "witness": list(derivation.witness) if derivation.witness else None,
        },
    }


def analyze_float_report(file: AlgebraFile, tol: float) -> dict:
    fa = analyze_float(file.algebra, tol)
    L = file.algebra
    pos, neg, zero = L.signature()
    validity = L.validate()
    report: dict = {"tool": "solvlie", "mode": "float", "tolerance": tol, "format_version": 1}
    report["algebra"] = {
        "name": file.name,
        "dim": L.dim,
        "labels": list(L.labels),
        "gram_signature": {"positive": pos, "negative": neg, "zero": zero},
        "checks": {c.name: c.passed for c in validity.checks},
    }
    nilradical = {"dim": fa.n.dim}
    if fa.n.dim:
        nalg = L.restrict(fa.n)
        nilradical["nilpotency_step"] = nalg.nilpotency_step()
        nilradical["center_dim"] = nalg.center().dim
    report["nilradical"] = nilradical
    report["iwasawa"] = {
        "strong_iwasawa": True,
        "a_dim": fa.a.dim,
        "a_basis": [fmt_vec(v) for v in fa.a.basis],
        "positivity_witness": list(fa.positivity_witness) if fa.positivity_witness else None,
    }
    report["roots"] = [
        {"coords": list(r.values), "multiplicity": r.multiplicity} for r in fa.roots
    ]
    report["curvature"] = {
        "mean_curvature": fmt_vec(fa.mean_curvature),
        "ricci_n": _matrix_entry(fa.ricci_n),
        "ad_h_n": _matrix_entry(fa.ad_h_n),
        "ricci_s": _matrix_entry(fa.ricci_s),
        "einstein": {
            "einstein": fa.einstein_lambda is not None,
            "lambda": fa.einstein_lambda,
        },
    }
    return report


# -- rendering ----------------------------------------------------------------


def strip_private(report: dict) -> dict:
    return {k: v for k, v in report.items() if not k.startswith("_")}


def render_json(report: dict) -> str:
    return json.dumps(strip_private(report), indent=2) + "\n"


def render_text(report: dict) -> str:
    out: list[str] = []
    r = strip_private(report)
    alg = r["algebra"]
    out.append(f"algebra {alg['name']}  (mode {r['mode']})")
    out.append(f"  dim {alg['dim']}")
    sig = alg["gram_signature"]
    out.append(
        f"  scalar product signature: +{sig['positive']} -{sig['negative']} 0:{sig['zero']}"
    )
    checks = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in alg["checks"].items())
    out.append(f"  checks: {checks}")
    nil = r.get("nilradical")
    if nil:
        line = f"  nilradical: dim {nil['dim']}"
        if "nilpotency_step" in nil:
            step = nil["nilpotency_step"]
            line += f", step {step if step is not None else 'not nilpotent'}"
            line += f", center dim {nil['center_dim']}"
        out.append(line)
    iwa = r.get("iwasawa")
    if iwa:
        out.append(f"strong Iwasawa: yes (dim a = {iwa['a_dim']})")
        if iwa.get("positivity_witness") is not None:
            out.append(f"  positivity witness: {_vec_text(iwa['positivity_witness'])}")
    ss = r.get("simple_system")
    if ss is not None:
        if ss.get("verified"):
            out.append("simple system: verified")
            for i, coords in enumerate(ss["coords"]):
                out.append(f"  a{i} = {_vec_text(coords)}   B{i} = {_vec_text(ss['dual_basis'][i])}")
        else:
            out.append(f"simple system: none ({ss['reason']})")
    roots = r.get("roots")
    if roots is not None:
        out.append(f"roots ({len(roots)}):")
        for root in roots:
            label = root.get("label")
            prefix = f"  {label:<10} " if label else "  "
            out.append(f"{prefix}coords {_vec_text(root['coords'])}  mult {root['multiplicity']}")
    cur = r.get("curvature")
    if cur:
        out.append("curvature:")
        out.append(f"  mean curvature H = {_vec_text(cur['mean_curvature'])}")
        for key, title in (
            ("ricci_n", "Ric(nilradical)"),
            ("ad_h_n", "ad_H on nilradical"),
            ("ricci_s", "Ric(algebra)"),
        ):
            if key in cur:
                out.append(f"  {title}: {_matrix_text(cur[key])}")
        ein = cur["einstein"]
        if ein["einstein"]:
            out.append(f"  Einstein: yes, lambda = {ein['lambda']}")
        else:
            out.append("  Einstein: no")
        if "trace_form" in ein:
            out.append(f"  trace form on a: {_rows_text(ein['trace_form'])}")
    for att in r.get("attached", []):
        out.append("")
        out.append(f"attached subalgebra lambda' = {{{', '.join(att['lambda_prime'])}}}:")
        out.append(f"  admissible: {att['admissible']}")
        for perm in att["permutations"]:
            maps = ", ".join(f"{a}->{b}" for a, b in perm["maps"])
            out.append(f"    reflection {perm['reflection']}: {maps}")
        out.append(f"  Z = {_vec_text(att['z'])}")
        dims = att["dims"]
        out.append(
            "  dims: a' = {a_prime}, n' = {n_prime}, a0 = {a_zero}, n0 = {n_zero}".format(**dims)
        )
        out.append(f"  H' = {_vec_text(att['mean_curvature_prime'])}")
        js = att["jacobi_star"]
        out.append(f"  Jacobi Star (exact): {js['holds']}")
        out.append(f"    Ric difference on n': {_matrix_text(js['ricci_difference'])}")
        out.append(f"    ad_(H-H') on n':      {_matrix_text(js['bracket_action'])}")
        jd = att["jacobi_star_direct"]
        out.append(
            f"  Jacobi Star (direct, tol {jd['tolerance']:g}): {jd['holds']}"
            f" (max deviation {jd['max_deviation']:.3g})"
        )
        mt = att["main_theorem"]
        out.append(
            "  restricted-curvature clauses: "
            f"(i) {mt['restricted_ricci_agrees']}  "
            f"(ii) {mt['nilradical_difference_agrees']}  "
            f"(iii) {mt['jacobi_star']}"
        )
        out.append(f"    Ric(s'): {_matrix_text(mt['ricci_s_prime'])}")
        ein = att["einstein"]
        out.append(
            f"  Einstein on s': {'yes, lambda = ' + ein['lambda'] if ein['einstein'] else 'no'}"
        )
        out.append(f"  minimal: {att['minimal']}")
        tg = att["totally_geodesic"]
        out.append(
            f"  totally geodesic: {tg['verdict']} "
            f"(roots route {tg['via_root_orthogonality']}, h route {tg['via_second_fundamental_form']})"
        )
        for pairing in tg["simple_pairings"]:
            a, b = pairing["pair"]
            out.append(f"    <{a}, {b}> = {pairing['value']}")
        ds = att["ad_star_derivation_on_n_zero"]
        out.append(f"  ad* derivation on n0: {ds['passes']}")
    return "\n".join(out) + "\n"


def _vec_text(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _matrix_text(entry: dict) -> str:
    if "diagonal" in entry:
        return "diag(" + ", ".join(str(x) for x in entry["diagonal"]) + ")"
    return _rows_text(entry["matrix"])


def _rows_text(rows) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in rows) + "]"
