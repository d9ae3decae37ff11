"""Command-line front end.

Every command writes exact fractions (``p/q``) to standard output in a
table, JSON or CSV layout and reports problems on standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Optional, Sequence

from . import __version__
from .arith import format_fraction
from .charclass import (
    SymFuncContext,
    chi_y_integrand,
    monomial_name,
    sqrt_todd,
    todd_deformed,
    todd_symplectic,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_RANK_DEFICIENT = 2
EXIT_USAGE = 64

DEFAULT_CACHE = ".jacobi-cache"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return v


def render(columns: Sequence[str], rows: Sequence[Sequence], fmt: str, payload=None) -> str:
    """Render a table. ``payload`` replaces the row dump for JSON output."""
    rows = [[format_fraction(c) if not isinstance(c, str) else c for c in r] for r in rows]
    if fmt == "json":
        data = payload if payload is not None else [dict(zip(columns, r)) for r in rows]
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def cmd_kummer_chern(args, out) -> int:
    from .kummer import MAX_N, InconsistentSystem, NonIntegralSolution, solve_chern_numbers

    if args.n > MAX_N:
        raise UsageError(f"--n must be at most {MAX_N}")
    try:
        table = solve_chern_numbers(args.n)
    except (InconsistentSystem, NonIntegralSolution) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    rows = [[name, v] for name, v in table.named()]
    payload = {
        "n": table.n,
        "rank": table.rank,
        "unknowns": table.unknowns,
        "unique": table.unique,
        "chern_numbers": [{"monomial": name, "value": format_fraction(v)} for name, v in table.named()],
    }
    out.write(render(["monomial", "value"], rows, args.format, payload))
    if not table.unique:
        print(f"rank {table.rank} of {table.unknowns} unknowns: Chern numbers are not determined",
              file=sys.stderr)
        return EXIT_RANK_DEFICIENT
    return EXIT_OK


def _chern_rows(poly, extra=()):
    rows = []
    for w in sorted(poly.weights()):
        part = poly.weight(w)
        for e in sorted(part.terms, key=lambda e: [-x for x in e]):
            rows.append([*extra, str(w), str(2 * w), monomial_name(e), part.terms[e]])
    return rows


def cmd_todd_deformed(args, out) -> int:
    ctx = SymFuncContext(args.n)
    td = todd_deformed(ctx)
    rows = []
    for j in range(td.degree() + 1):
        rows.extend(_chern_rows(td.coefficient(j), extra=(str(j),)))
    rows.sort(key=lambda r: (int(r[1]), int(r[0])))
    entries = []
    for w in range(0, 2 * args.n + 1, 2):
        coeffs = []
        for j in range(td.degree() + 1):
            part = td.coefficient(j).weight(w)
            coeffs.append({monomial_name(e): format_fraction(v) for e, v in part.terms.items()})
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        entries.append({"weight": w, "cohomological_degree": 2 * w, "lambda_coefficients": coeffs})
    payload = {"n": args.n, "terms": entries}
    out.write(render(["lambda_power", "weight", "cohomological_degree", "monomial", "coefficient"],
                     rows, args.format, payload))
    return EXIT_OK


def cmd_genus(args, out) -> int:
    ctx = SymFuncContext(args.n)
    if args.series == "chi-y":
        poly = chi_y_integrand(ctx)
        rows = []
        for p in range(poly.degree() + 1):
            rows.extend(_chern_rows(poly.coefficient(p), extra=(str(p),)))
        cols = ["y_power", "weight", "cohomological_degree", "monomial", "coefficient"]
    else:
        poly = todd_symplectic(ctx) if args.series == "todd" else sqrt_todd(ctx)
        rows = _chern_rows(poly)
        cols = ["weight", "cohomological_degree", "monomial", "coefficient"]
    out.write(render(cols, rows, args.format))
    return EXIT_OK


def cmd_graph_basis(args, out) -> int:
    from .graphhom import key_to_str, quotient_basis

    if (3 * args.trivalent + args.legs) % 2:
        raise UsageError("legs + 3 * trivalent must be even")
    qb = quotient_basis(args.legs, args.trivalent, cache_dir=args.cache)
    rows = [[str(i), key_to_str(k), str(k[0])] for i, k in enumerate(qb.basis)]
    payload = {
        "bidegree": list(qb.bidegree),
        "generators": len(qb.generators),
        "relation_rank": qb.rank,
        "dimension": qb.dim,
        "basis": [key_to_str(k) for k in qb.basis],
    }
    text = render(["index", "diagram", "ell"], rows, args.format, payload)
    if args.format == "table":
        text = (f"bidegree ({args.legs}, {args.trivalent}): {len(qb.generators)} generators, "
                f"relation rank {qb.rank}, dimension {qb.dim}\n") + text
    out.write(text)
    return EXIT_OK


def _verify(args) -> tuple[int, list[str]]:
    """Run one verification; returns (number of checks, defect descriptions)."""
    what = args.what
    d = args.max_degree
    if what == "omega":
        from .graphhom import verify_omega_eigen

        d = 6 if d is None else d
        res = verify_omega_eigen(d, cache_dir=args.cache)
        return len(res), [f"vertex count {n}: {bd}" for n, defect in res.items() for bd in defect]
    if what == "laexp":
        from .multilinear import SymplecticSpace, laexp_defect

        d = 3 if d is None else d
        rng = random.Random(args.seed)
        checks, bad = 0, []
        for n in range(d + 1):
            space = SymplecticSpace(n)
            alphas = [m for deg in range(0, 2 * n + 1, 2) for m in space.basis_monomials(deg)]
            for _ in range(50):
                deg = 2 * rng.randint(0, n)
                alphas.append(space.random_element(deg, rng))
            for a in alphas:
                checks += 1
                if laexp_defect(a):
                    bad.append(f"n={n}: {a!r}")
        return checks, bad
    if what == "wheels":
        from .graphhom import check_wheel_contractions, check_wheel_glueings

        d = 3 if d is None else d
        bad = [f"contraction k={k}" for k in check_wheel_contractions(d)]
        bad += [f"glueing ({i}, {j})" for i, j in check_wheel_glueings(d, cache_dir=args.cache)]
        return d + d * (d - 1) // 2, bad
    if what == "bernoulli-lemma":
        from .graphhom import lemma_bernoulli_defect

        d = 20 if d is None else d
        defect = lemma_bernoulli_defect(d)
        return d + 1, [f"weight {sum(k)}: {k} -> {format_fraction(v)}" for k, v in sorted(defect.terms.items())]
    if what == "scp-partial":
        from .graphhom import check_ell_and_partial, check_scp_and_partial

        d = 6 if d is None else d
        bad = [f"ell-and-partial {a} {b}" for a, b in check_ell_and_partial(d, cache_dir=args.cache)]
        bad += [f"scp-and-partial {a} {b}" for a, b in check_scp_and_partial(d, cache_dir=args.cache)]
        return 2, bad
    raise UsageError(f"unknown verification {what}")  # pragma: no cover - argparse restricts choices


def cmd_verify(args, out) -> int:
    _, bad = _verify(args)
    if bad:
        out.write(f"FAIL ({len(bad)} defects)\n")
        for b in bad:
            out.write(f"  {b}\n")
        return EXIT_FAIL
    out.write("OK (0 defects)\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hkrr", description="Exact computations with Jacobi diagrams, symplectic "
                                         "Riemann-Roch formulae and Chern numbers of generalized Kummer varieties.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    fmt = dict(choices=["table", "json", "csv"], default="table", help="output layout (default: table)")

    k = sub.add_parser("kummer-chern", help="Chern numbers of generalized Kummer varieties",
                       description="Characteristic numbers of generalized Kummer varieties: solve the linear "
                                   "relations from the Riemann-Roch polynomial and the chi_y genus. Exit 0 when "
                                   "the Chern numbers are determined, 2 when the system is rank deficient, "
                                   "1 on an inconsistent system.")
    k.add_argument("--n", type=_positive, required=True, help="half the complex dimension (1..6)")
    k.add_argument("--format", **fmt)
    k.set_defaults(func=cmd_kummer_chern)

    t = sub.add_parser("todd-deformed", help="deformed Todd class as a polynomial in lambda",
                       description="Riemann-Roch formula for line bundles on irreducible symplectic manifolds: "
                                   "the deformed Todd class with the Chebyshev substitution, expanded in even "
                                   "Chern classes and powers of the characteristic value lambda.")
    t.add_argument("--n", type=_positive, required=True, help="half the complex dimension")
    t.add_argument("--format", **fmt)
    t.set_defaults(func=cmd_todd_deformed)

    g = sub.add_parser("genus", help="Todd class, its square root, or the chi_y integrand",
                       description="Rozansky-Witten corollaries and characteristic numbers: the Todd class "
                                   "from modified Bernoulli numbers, its square root, or the chi_y integrand.")
    g.add_argument("--series", choices=["todd", "sqrt-todd", "chi-y"], required=True)
    g.add_argument("--n", type=_positive, required=True, help="half the complex dimension")
    g.add_argument("--format", **fmt)
    g.set_defaults(func=cmd_genus)

    b = sub.add_parser("graph-basis", help="basis of Jacobi diagrams modulo AS and IHX",
                       description="Graph homology: a basis of the space of Jacobi diagrams with the given "
                                   "numbers of univalent and trivalent vertices modulo AS and IHX.")
    b.add_argument("--legs", type=_nonneg, required=True, help="number of univalent vertices")
    b.add_argument("--trivalent", type=_nonneg, required=True, help="number of trivalent vertices")
    b.add_argument("--cache", default=DEFAULT_CACHE, help=f"basis cache directory (default: {DEFAULT_CACHE})")
    b.add_argument("--format", **fmt)
    b.set_defaults(func=cmd_graph_basis)

    v = sub.add_parser("verify", help="check an identity exactly",
                       description="Exact verification of identities: omega (graph homology, the wheel "
                                   "exponential as eigenvector of the contraction), laexp (symplectic linear "
                                   "algebra), wheels (glueing of wheels), bernoulli-lemma (Bernoulli identity "
                                   "in Sym^3), scp-partial (pairing and contraction identities). "
                                   "--max-degree caps the output vertex count for omega and scp-partial, the "
                                   "half-dimension for laexp, the wheel index for wheels and the weight for "
                                   "bernoulli-lemma.")
    v.add_argument("what", choices=["omega", "laexp", "wheels", "bernoulli-lemma", "scp-partial"])
    v.add_argument("--max-degree", type=_nonneg, default=None)
    v.add_argument("--seed", type=int, default=0, help="seed for random samples (laexp)")
    v.add_argument("--cache", default=DEFAULT_CACHE, help=f"basis cache directory (default: {DEFAULT_CACHE})")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"hkrr: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
