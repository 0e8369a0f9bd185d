"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exactmath import Poly
from .exactmath.rational import format_rational
from .lattice import LatticeError, lattice_report, load_gram
from .rbar import g_k, rbar_report
from .smith import SmithAlgebra, SmithError
from .zhu_bridge import SUITES, rank_one_crosscheck

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def emit_json(payload) -> str:
    return json.dumps(payload, indent=2)


def format_table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _yes(flag) -> str:
    if flag is None:
        return "not checked"
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# smith


def _read_g(args) -> Poly:
    try:
        if args.g_k is not None:
            if args.g_k < 1:
                raise InputError("--g-k must be positive")
            return g_k(args.g_k)
        if args.g_file is not None:
            data = json.loads(Path(args.g_file).read_text())
            if isinstance(data, dict):
                data = data.get("g")
            return Poly.from_json(data)
        return Poly.from_json(args.g)
    except OSError as exc:
        raise InputError(f"cannot read polynomial file: {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise InputError(f"malformed polynomial: {exc}") from exc


def cmd_smith(args) -> tuple[int, dict, str]:
    g = _read_g(args)
    if g.is_zero():
        raise InputError("g must be a nonzero polynomial")
    alg = SmithAlgebra(g)
    base = {"g": g.to_json()}

    if args.action == "classify":
        if args.max_dim < 1:
            raise InputError("--max-dim must be positive")
        rows = []
        for j in range(1, args.max_dim + 1):
            weights, nonrational = alg.classify_simples(j)
            rows.append({
                "dim": j,
                "weights": [format_rational(w) for w in weights],
                "nonrational_count": nonrational,
            })
        payload = base | {"max_dim": args.max_dim, "simples": rows}
        table = format_table(
            ["dim", "rational weights", "non-rational"],
            [[r["dim"], ", ".join(r["weights"]) or "-", r["nonrational_count"]] for r in rows],
        )
        return EXIT_OK, payload, f"g = {g}\n{table}"

    if args.action == "check-semisimple":
        if args.max_j < 0:
            raise InputError("--max-j must be nonnegative")
        report = alg.semisimplicity_criterion(args.max_j)
        payload = base | report.to_json()
        lines = [f"g = {g}", f"h_j squarefree and pairwise coprime for j <= {args.max_j}: "
                 + ("pass" if report.passed else "FAIL")]
        lines += [f"  {msg}" for msg in report.failures()]
        return (EXIT_OK if report.passed else EXIT_FAILED), payload, "\n".join(lines)

    # casimir
    if args.max_r < 0:
        raise InputError("--max-r must be nonnegative")
    central = alg.is_central(alg.omega())
    checks = [{"r": r, "pass": alg.casimir_factorization_check(r)} for r in range(args.max_r + 1)]
    ok = central and all(c["pass"] for c in checks)
    payload = base | {"omega_central": central, "factorization": checks, "passed": ok}
    table = format_table(["r", "factorization"], [[c["r"], "pass" if c["pass"] else "FAIL"] for c in checks])
    text = f"g = {g}\nOmega central: {_yes(central)}\n{table}"
    return (EXIT_OK if ok else EXIT_FAILED), payload, text


# ---------------------------------------------------------------------------
# rbar


def cmd_rbar(args) -> tuple[int, dict, str]:
    if args.k < 1:
        raise InputError("k must be positive")
    report = rbar_report(args.k)
    payload = report.to_json()
    table = format_table(
        ["weight", "dim"], [[i["weight"], i["dim"]] for i in payload["irreducibles"]]
    )
    text = (
        f"Rbar_{args.k}: {len(report.irreducibles)} irreducibles\n{table}\n"
        f"algebra dimension: {report.algebra_dim}\nsemisimple: {_yes(report.semisimple)}"
    )
    return (EXIT_OK if report.semisimple else EXIT_FAILED), payload, text


# ---------------------------------------------------------------------------
# lattice


def cmd_lattice(args) -> tuple[int, dict, str]:
    L = load_gram(args.gram)
    verify = args.action == "verify"
    payload = lattice_report(L, verify=verify)
    table = format_table(
        ["lambda", "dim", "min norm"],
        [["(" + ", ".join(m["lambda"]) + ")", m["dim"], m["min_norm"]] for m in payload["modules"]],
    )
    factors = " x ".join(f"Z/{f}" for f in payload["invariant_factors"]) or "trivial"
    lines = [
        f"det: {payload['det']}",
        f"discriminant group: {factors}",
        table,
        f"algebra dimension: {payload['algebra_dim']}",
    ]
    code = EXIT_OK
    if verify:
        lines.append(f"relations verified: {_yes(payload['relations_verified'])}")
        lines.append(f"semisimple: {_yes(payload['semisimple'])}")
        if not (payload["relations_verified"] and payload["semisimple"]):
            code = EXIT_FAILED
    return code, payload, "\n".join(lines)


# ---------------------------------------------------------------------------
# identities


def cmd_identities(args) -> tuple[int, object, str]:
    if args.max_k < 1 or args.max_n < 0:
        raise InputError("--max-k must be positive and --max-n nonnegative")
    if args.action == "crosscheck":
        reports = [rank_one_crosscheck(k) for k in range(1, args.max_k + 1)]
        payload = [r.to_json() for r in reports]
        rows = [
            [r.k, len(r.rbar_dims), r.rbar_algebra_dim, r.lattice_algebra_dim,
             "pass" if r.passed else "FAIL: " + "; ".join(r.mismatches)]
            for r in reports
        ]
        table = format_table(["k", "irreducibles", "Rbar dim", "lattice dim", "result"], rows)
        return (EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED), payload, table

    reports = list(SUITES[args.suite](args.max_n, args.max_k))
    payload = [r.to_json() for r in reports]
    failed = [r for r in reports if not r.passed]
    counts: dict[str, list[int]] = {}
    for r in reports:
        c = counts.setdefault(r.name, [0, 0])
        c[0] += 1
        c[1] += r.passed
    table = format_table(
        ["identity", "checked", "passed"], [[n, c[0], c[1]] for n, c in counts.items()]
    )
    lines = [table] + [f"FAIL {r.name}{tuple(r.parameters)}" for r in failed]
    return (EXIT_FAILED if failed else EXIT_OK), payload, "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zhualg", description="Exact computations with Smith algebras and lattice algebras."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit machine-readable JSON")

    smith = sub.add_parser("smith", help="the algebras R(g)")
    smith.add_argument("action", choices=["classify", "check-semisimple", "casimir"])
    src = smith.add_mutually_exclusive_group(required=True)
    src.add_argument("--g", help='coefficients low degree first, e.g. "[0,2]" or \'["0","1/2"]\'')
    src.add_argument("--g-k", type=int, help="use the rank-one polynomial g_k")
    src.add_argument("--g-file", help="JSON file with a coefficient array or {\"g\": [...]}")
    smith.add_argument("--max-dim", type=int, default=6)
    smith.add_argument("--max-j", type=int, default=40)
    smith.add_argument("--max-r", type=int, default=3)
    add_json(smith)
    smith.set_defaults(func=cmd_smith)

    rbar = sub.add_parser("rbar", help="the quotients Rbar_k")
    rbar.add_argument("action", choices=["info"])
    rbar.add_argument("--k", type=int, required=True)
    add_json(rbar)
    rbar.set_defaults(func=cmd_rbar)

    lat = sub.add_parser("lattice", help="lattice algebras from a Gram matrix")
    lat.add_argument("action", choices=["analyze", "verify"])
    lat.add_argument("--gram", required=True, help='JSON file {"gram": [[...], ...]}')
    add_json(lat)
    lat.set_defaults(func=cmd_lattice)

    ident = sub.add_parser("identities", help="binomial identities and cross-checks")
    ident.add_argument("action", choices=["verify", "crosscheck"])
    ident.add_argument("--suite", choices=sorted(SUITES), default="all")
    ident.add_argument("--max-k", type=int, default=8)
    ident.add_argument("--max-n", type=int, default=12)
    add_json(ident)
    ident.set_defaults(func=cmd_identities)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, payload, text = args.func(args)
    except (InputError, LatticeError, SmithError) as exc:
        code = getattr(exc, "code", None)
        print(f"error: {code + ': ' if code else ''}{exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    print(emit_json(payload) if args.json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
