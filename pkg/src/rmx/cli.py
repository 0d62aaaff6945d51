"""Command-line front end: ``rmx <command> --group <spec> ...``.

Exit codes: 0 when every check passes, 1 when a verification fails,
2 for usage or parse errors, 3 for I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .bicharacter import (
    Bicharacter,
    count_bicharacters,
    cyclic_bicharacter,
    enumerate_all,
    induced_pairing,
    kernels,
    parse_bicharacter,
)
from .braiding import (
    GradedSpace,
    braid_from_coquasi,
    braid_from_r,
    braid_graded,
    parse_dims,
    verify_category_axioms,
)
from .coquasi import BilinearForm, antipode_relations_check, is_cotriangular, verify_coquasi
from .errors import ParseError, RmxError
from .groups import GroupSpec, parse_group_spec
from .hopf import Tensor2
from .report import Report, jsonify
from .rmatrix import check_yang_baxter, is_triangular, r_cyclic, r_from_bicharacter, verify_urm

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_MAX_ORDER = 64


class UsageError(Exception):
    """Bad command-line input; reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


# -- helpers ---------------------------------------------------------------


def max_order() -> int:
    raw = os.environ.get("RMX_MAX_ORDER", str(DEFAULT_MAX_ORDER))
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RMX_MAX_ORDER must be an integer, got {raw!r}") from None


def load_group(text: str) -> GroupSpec:
    spec = parse_group_spec(text)
    cap = max_order()
    if spec.order > cap:
        raise UsageError(f"group {spec} has order {spec.order} > RMX_MAX_ORDER={cap}")
    return spec


def load_bicharacter(args: argparse.Namespace, spec: GroupSpec) -> Bicharacter:
    if getattr(args, "bichar", None) is not None and getattr(args, "k", None) is not None:
        raise UsageError("--bichar and --k are mutually exclusive")
    if getattr(args, "bichar", None) is not None:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            sigma = parse_bicharacter(args.bichar, spec)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return sigma
    if getattr(args, "k", None) is not None:
        if spec.rank != 1:
            raise UsageError("--k needs a cyclic group Z<n>")
        return cyclic_bicharacter(spec.orders[0], args.k)
    raise UsageError("one of --bichar or --k is required")


def write_json(path: Path, payload: Any) -> None:
    text = json.dumps(jsonify(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    path.write_text(text, encoding="utf-8")


def format_tensor(t: Tensor2) -> list[str]:
    if t.is_zero():
        return ["  0"]
    return [
        f"  {' ⊗ '.join(str(x) for x in basis)}: {c}  ({c.approx_str()})" for basis, c in t.items()
    ]


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


# -- per-bicharacter verification (top level so it can run in a worker) ----


def verify_one(spec_orders: tuple[int, ...], K: tuple[tuple[int, ...], ...]) -> dict:
    """Run every verifier on one bicharacter and return a JSON-ready record."""
    spec = GroupSpec(spec_orders)
    sigma = Bicharacter(spec, K)
    R = r_from_bicharacter(sigma)
    report = Report(f"{sigma}")
    report.extend(verify_urm(R), "urm.")
    report.extend(check_yang_baxter(R), "")
    form = BilinearForm.from_bicharacter(sigma)
    report.extend(verify_coquasi(form), "coquasi.")
    V = GradedSpace.regular(spec)
    report.extend(verify_category_axioms(sigma, V, V, V), "category.")
    triangular = is_triangular(R) if report.passed else False
    if report.passed:
        report.add(
            "triangular_iff_commutation_factor",
            triangular == sigma.is_commutation_factor(),
            detail="T(R) = R^-1 iff sigma(a, b) sigma(b, a) = 1",
        )
    return {
        "K": str(sigma),
        "pass": report.passed,
        "triangular": triangular,
        "commutation_factor": sigma.is_commutation_factor(),
        "axioms": report.to_json()["axioms"],
        "_text": str(report),
    }


# -- commands --------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace) -> int:
    spec = load_group(args.group)
    rows = []
    for sigma in enumerate_all(spec):
        cf = sigma.is_commutation_factor()
        if args.commutation_factors_only and not cf:
            continue
        rows.append({"K": str(sigma), "commutation_factor": cf})
    total = count_bicharacters(spec)
    n_cf = sum(1 for s in enumerate_all(spec) if s.is_commutation_factor())
    for r in rows:
        print(f"{r['K']}  commutation_factor={_bool(r['commutation_factor'])}")
    print(f"group {spec}: {total} bicharacters, {n_cf} commutation factors")
    if args.json:
        write_json(
            args.json,
            {
                "command": "enumerate",
                "group": str(spec),
                "count": total,
                "commutation_factors": n_cf,
                "bicharacters": rows,
                "exit_code": EXIT_OK,
            },
        )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    spec = load_group(args.group)
    if args.all and (args.bichar is not None or args.k is not None):
        raise UsageError("--all cannot be combined with --bichar or --k")
    if args.all:
        targets = list(enumerate_all(spec))
    elif args.bichar is not None or args.k is not None:
        targets = [load_bicharacter(args, spec)]
    else:
        raise UsageError("verify needs --bichar, --k or --all")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    start = time.perf_counter()
    work = [(spec.orders, s.K) for s in targets]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(verify_one, *zip(*work)))
    else:
        results = [verify_one(*w) for w in work]
    elapsed = time.perf_counter() - start
    ok = all(r["pass"] for r in results)
    for r in results:
        status = "PASS" if r["pass"] else "FAIL"
        print(f"{r['K']}: {status} triangular={_bool(r['triangular'])}")
        if not r["pass"] or args.verbose:
            print(r["_text"])
    print(f"{'PASS' if ok else 'FAIL'}: {len(results)} structures verified on {spec} in {elapsed:.2f}s")
    code = EXIT_OK if ok else EXIT_FAIL
    if args.json:
        write_json(
            args.json,
            {
                "command": "verify",
                "group": str(spec),
                "results": [{k: v for k, v in r.items() if not k.startswith("_")} for r in results],
                "pass": ok,
                "exit_code": code,
            },
        )
    return code


def cmd_dump(args: argparse.Namespace) -> int:
    spec = load_group(args.group)
    sigma = load_bicharacter(args, spec)
    R = r_cyclic(spec.orders[0], args.k) if args.k is not None else r_from_bicharacter(sigma)
    N1, N2 = kernels(sigma)
    p = induced_pairing(sigma)
    payload = {
        "group": str(spec),
        "K": str(sigma),
        "triangular": is_triangular(R),
        "kernels": {"N1": N1, "N2": N2},
        "Delta": {"Delta1": p.Delta1, "Delta2": p.Delta2},
        "m": p.m,
        "terms": R,
    }
    write_json(args.out, payload)
    print(f"wrote {len(R)} terms for {sigma} on {spec} to {args.out}")
    return EXIT_OK


def cmd_rmatrix(args: argparse.Namespace) -> int:
    spec = load_group(args.group)
    sigma = load_bicharacter(args, spec)
    R = r_from_bicharacter(sigma)
    print(f"R-matrix of {sigma} on {spec} ({len(R)} terms):")
    print("\n".join(format_tensor(R)))
    payload: dict[str, Any] = {"group": str(spec), "K": str(sigma), "terms": R}
    code = EXIT_OK
    if args.verify:
        report = verify_urm(R)
        report.extend(check_yang_baxter(R))
        print(report)
        triangular = is_triangular(R) if report["URM1_invertible"].passed else False
        print(f"triangular={_bool(triangular)}")
        payload.update(report.to_json(), triangular=triangular)
        code = EXIT_OK if report.passed else EXIT_FAIL
    payload["exit_code"] = code
    if args.json:
        write_json(args.json, payload)
    return code


def cmd_coquasi(args: argparse.Namespace) -> int:
    spec = load_group(args.group)
    sigma = load_bicharacter(args, spec)
    form = BilinearForm.from_bicharacter(sigma)
    report = verify_coquasi(form)
    payload: dict[str, Any] = {}
    if args.cotriangular and report.passed:
        report.extend(antipode_relations_check(form), "antipode.")
        cot = is_cotriangular(form)
        payload["cotriangular"] = cot
    print(report)
    if "cotriangular" in payload:
        print(f"cotriangular={_bool(payload['cotriangular'])}")
    code = EXIT_OK if report.passed else EXIT_FAIL
    if args.json:
        payload.update(report.to_json(), group=str(spec), K=str(sigma), exit_code=code)
        write_json(args.json, payload)
    return code


def cmd_braid(args: argparse.Namespace) -> int:
    spec = load_group(args.group)
    sigma = load_bicharacter(args, spec)
    V = parse_dims(spec, args.dims)
    W = parse_dims(spec, args.dims_w) if args.dims_w is not None else V
    psi = braid_graded(sigma, V, W)
    print(f"braiding V⊗W -> W⊗V for {sigma} on {spec}, V = {V}, W = {W}:")
    for row in psi.rows():
        print("  [" + ", ".join(str(v) for v in row) + "]")
    report = Report("braiding checks")
    via_r = braid_from_r(r_from_bicharacter(sigma), V, W)
    via_form = braid_from_coquasi(BilinearForm.from_bicharacter(sigma), V, W)
    report.add("graded_equals_r_matrix", psi == via_r, psi.first_difference(via_r))
    report.add("graded_equals_coquasi", psi == via_form, psi.first_difference(via_form))
    if args.check_ybe:
        U = parse_dims(spec, args.dims_u) if args.dims_u is not None else V
        report.extend(verify_category_axioms(sigma, V, W, U))
    print(report)
    code = EXIT_OK if report.passed else EXIT_FAIL
    if args.json:
        payload = report.to_json()
        payload.update(
            group=str(spec), K=str(sigma), V=V, W=W, braiding=psi, exit_code=code
        )
        write_json(args.json, payload)
    return code


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rmx", description="Universal R-matrices of finite Abelian group algebras.")
    parser.add_argument("--version", action="version", version=f"rmx {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p: argparse.ArgumentParser, bichar: bool = True, k: bool = True) -> None:
        p.add_argument("--group", required=True, help="group such as Z4xZ2, or 1 for the trivial group")
        if bichar:
            p.add_argument("--bichar", help="K-matrix such as 'K=0,1;1,0'")
        if k:
            p.add_argument("--k", type=int, help="cyclic bicharacter sigma_k on Z<n>")
        p.add_argument("--json", type=Path, help="write a machine-readable report to this path")

    p = sub.add_parser("enumerate", help="list all bicharacters")
    common(p, bichar=False, k=False)
    p.add_argument("--commutation-factors-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run the full axiom suite")
    common(p)
    p.add_argument("--all", action="store_true", help="every bicharacter of the group")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--verbose", action="store_true", help="print every check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="write the R-matrix and its metadata as JSON")
    common(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("rmatrix", help="print the R-matrix of a bicharacter")
    common(p)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_rmatrix)

    p = sub.add_parser("coquasi", help="check the coquasitriangular axioms")
    common(p, k=False)
    p.add_argument("--cotriangular", action="store_true")
    p.set_defaults(func=cmd_coquasi)

    p = sub.add_parser("braid", help="braiding on graded spaces")
    common(p, k=False)
    p.add_argument("--dims", required=True, help="graded dimensions of V, e.g. '1.0:2,0.1:1'")
    p.add_argument("--dims-w", help="graded dimensions of W (default: same as V)")
    p.add_argument("--dims-u", help="third space for --check-ybe (default: same as V)")
    p.add_argument("--check-ybe", action="store_true", help="hexagons, braid relation and symmetry")
    p.set_defaults(func=cmd_braid)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        if args.command == "coquasi" and args.bichar is None:
            raise UsageError("coquasi needs --bichar")
        if args.command == "braid" and args.bichar is None:
            raise UsageError("braid needs --bichar")
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"rmx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"rmx: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RmxError as exc:
        print(f"rmx: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
