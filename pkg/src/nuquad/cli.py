"""Command-line interface.

Subcommands:
    form analyze <file>           analyze a GF(2) Gram matrix in text format
    field analyze <d> [--basis]   full dossier of Q(sqrt(d)), d < 0 squarefree
    oracle classgroup <d>         class group of Q(sqrt(d)) by composition
    density bounds                limit-density exclusion bounds table
    density empirical ...         empirical 4-rank distribution from a survey
    survey --max-disc X ...       range survey with CSV/JSON outputs
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classgroup, density, forms, gf2core, kernel, quadfield, survey


def _fuse_negative_values(argv: list[str], opts: tuple[str, ...]) -> list[str]:
    """Rewrite ["--basis", "-3,..."] as ["--basis=-3,..."] so argparse does
    not mistake the value for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in opts and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def cmd_form_analyze(args) -> int:
    with open(args.file) as fh:
        mat = gf2core.parse_matrix(fh.read())
    f = forms.BilinearForm(mat.rows, mat)
    bounds = forms.nu_bounds(f)
    doc = {
        "n": f.n,
        "rank": gf2core.rank(mat),
        "rank_sym": gf2core.rank(forms.symmetrize(f).gram),
        "symmetric": forms.is_symmetric(f),
        "alternating": forms.is_alternating(f),
        "right_radical_dim": f.n - gf2core.rank(mat),
        "nu_lower": bounds.lower,
        "nu_upper": bounds.upper,
    }
    if forms.is_symmetric(f):
        doc["nu_exact"] = forms.classify_symmetric(f).nu
    elif f.n <= args.max_n:
        doc["nu_exact"] = forms.nu_exact(f, max_n=args.max_n)
    _print_json(doc)
    return 0


def _record_doc(rec: quadfield.FieldRecord,
                basis_labels=None, gram=None) -> dict:
    gram = gram if gram is not None else rec.gram
    return {
        "d": rec.d,
        "disc": rec.disc,
        "p0_star": rec.p0_star,
        "odd_ramified": list(rec.odd_ramified),
        "n": rec.n,
        "basis": list(basis_labels if basis_labels else rec.basis),
        "gram": gram.gram.to_lists(),
        "redei": rec.redei.to_lists(),
        "rank_gram": rec.rank_gram,
        "rank_redei": rec.rank_redei,
        "four_rank": rec.four_rank,
        "symmetric": rec.symmetric,
        "case_a": rec.case_a,
        "cs_pair": list(rec.cs_pair) if rec.cs_pair else None,
        "nu": {
            "lower": rec.nu.lower,
            "upper": rec.nu.upper,
            "exact": rec.nu.exact,
            "is_exact": rec.nu_is_exact,
        },
        "verdict": {
            "max_uniform_dim": rec.max_uniform_dim,
            "conjecture2_decided": rec.conjecture2_decided,
            "corollary_tags": list(rec.corollary_tags),
        },
    }


def cmd_field_analyze(args) -> int:
    rec = quadfield.build_field(args.d)
    if args.basis:
        labels = [int(tok) for tok in args.basis.split(",")]
        basis_labels, gram = quadfield.relabel_basis(rec, labels)
        _print_json(_record_doc(rec, basis_labels, gram))
    else:
        _print_json(_record_doc(rec))
    return 0


def cmd_oracle_classgroup(args) -> int:
    rec_disc = quadfield.ramification(args.d)[0]
    structure = classgroup.group_structure(rec_disc)
    doc = {
        "d": args.d,
        "disc": rec_disc,
        "h": structure.order,
        "invariant_factors": list(structure.invariant_factors),
        "two_rank": classgroup.two_rank(rec_disc),
        "four_rank": classgroup.four_rank(rec_disc),
    }
    _print_json(doc)
    return 0


def cmd_density_bounds(args) -> int:
    rows = []
    for i in range(1, 4):
        rows.append((f"FM[{i}]", f"{density.fm_bracket_bound(i):.9f}",
                     "limit densities (computed)"))
    for (n, d), value in sorted(density.PAPER_FM_ND.items()):
        label = f"FM_{n}" if d == 3 else f"FM_{n}^({d})"
        rows.append((label, f"{value:.9f}", "reported constant"))
    width = max(len(r[0]) for r in rows)
    vwidth = max(len(r[1]) for r in rows)
    print(f"{'bound':<{width}}  {'value':>{vwidth}}  provenance")
    for name, value, src in rows:
        print(f"{name:<{width}}  {value:>{vwidth}}  {src}")
    return 0


def cmd_density_empirical(args) -> int:
    agg = survey.run_survey(
        args.max_disc, n_filter=args.n, case_a_only=args.case_a,
        jobs=args.jobs)
    buckets = {}
    for n in sorted(agg.by_n):
        by_r = {r: c for (nn, r), c in agg.by_n_r.items() if nn == n}
        dist = density.dnr_from_counts(by_r)
        buckets[str(n)] = {
            str(r): {"count": by_r[r], "proportion": float(frac)}
            for r, frac in dist.items()}
    _print_json({
        "x_bound": args.max_disc,
        "case_a_only": args.case_a,
        "n_filter": args.n,
        "total": agg.total,
        "buckets": buckets,
    })
    return 0


def cmd_survey(args) -> int:
    want_rows = args.out is not None
    result = survey.run_survey(
        args.max_disc, n_filter=args.n, case_a_only=args.case_a,
        by_radicand=args.by_radicand, jobs=args.jobs, want_rows=want_rows)
    if want_rows:
        agg, rows = result
        csv_path, json_path = survey.emit(agg, rows, args.out)
        print(f"wrote {csv_path} and {json_path}", file=sys.stderr)
    else:
        agg = result
    sys.stdout.write(survey.aggregate_json(agg))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nuquad",
        description="Uniform-quotient exclusion for imaginary quadratic "
                    "fields via the 2-torsion bilinear form "
                    f"(kernel: {kernel.IMPLEMENTATION})")
    sub = parser.add_subparsers(dest="command", required=True)

    p_form = sub.add_parser("form", help="bilinear form analysis")
    form_sub = p_form.add_subparsers(dest="subcommand", required=True)
    p_fa = form_sub.add_parser("analyze", help="analyze a Gram matrix file")
    p_fa.add_argument("file")
    p_fa.add_argument("--max-n", type=int, default=forms.NU_EXACT_DEFAULT_MAX,
                      help="exact-search ceiling (default %(default)s)")
    p_fa.set_defaults(func=cmd_form_analyze)

    p_field = sub.add_parser("field", help="imaginary quadratic field dossier")
    field_sub = p_field.add_subparsers(dest="subcommand", required=True)
    p_an = field_sub.add_parser("analyze", help="analyze Q(sqrt(d))")
    p_an.add_argument("d", type=int, help="negative squarefree radicand")
    p_an.add_argument("--basis", type=str, default=None,
                      help="comma-separated signed representatives "
                           "relabeling the star basis")
    p_an.set_defaults(func=cmd_field_analyze)

    p_oracle = sub.add_parser("oracle", help="class-group ground truth")
    oracle_sub = p_oracle.add_subparsers(dest="subcommand", required=True)
    p_cg = oracle_sub.add_parser("classgroup")
    p_cg.add_argument("d", type=int, help="negative squarefree radicand")
    p_cg.set_defaults(func=cmd_oracle_classgroup)

    p_density = sub.add_parser("density", help="density bounds and estimates")
    density_sub = p_density.add_subparsers(dest="subcommand", required=True)
    p_db = density_sub.add_parser("bounds")
    p_db.set_defaults(func=cmd_density_bounds)
    p_de = density_sub.add_parser("empirical")
    p_de.add_argument("--max-disc", type=int, required=True)
    p_de.add_argument("--n", type=int, default=None)
    p_de.add_argument("--case-a", action="store_true")
    p_de.add_argument("--jobs", type=int, default=None)
    p_de.set_defaults(func=cmd_density_empirical)

    p_survey = sub.add_parser("survey", help="survey a discriminant range")
    p_survey.add_argument("--max-disc", type=int, required=True)
    p_survey.add_argument("--n", type=int, default=None)
    p_survey.add_argument("--case-a", action="store_true")
    p_survey.add_argument("--by-radicand", action="store_true",
                          help="bound |d| instead of |disc|")
    p_survey.add_argument("--jobs", type=int, default=None)
    p_survey.add_argument("--out", type=str, default=None,
                          help="directory for survey_fields.csv and "
                               "survey_aggregate.json")
    p_survey.set_defaults(func=cmd_survey)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = _fuse_negative_values(argv, ("--basis",))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
