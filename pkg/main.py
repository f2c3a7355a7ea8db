#!/usr/bin/env python3
"""CLI entry point for the tensor eigenpair toolkit.

Commands:
    solve       Find and certify Z-eigenpairs, singular tuples or H-eigenpairs
    odeco       Build, enumerate or certify orthogonally decomposable tensors
    census      Run a seeded Monte Carlo census over Gaussian tensors
    oracle      Run the n = 2 angle sweep or complex E-eigen-line count
    tensor      Write a random Gaussian tensor file

Exit codes:
    0 success, 2 invalid input, 3 no converged result,
    4 odeco certificate contradiction, 5 census invariant failure
"""

import argparse
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNCONVERGED = 3
EXIT_CONTRADICTION = 4
EXIT_CENSUS = 5


def prepare(args: argparse.Namespace, command: str, **overrides):
    """Load config, set up logging and resolve the run configuration."""
    from src.config import RunConfig, load_config, setup_logging

    config = load_config(args.config)
    setup_logging(config, command)
    inputs = [args.input] if getattr(args, "input", None) else []
    run = RunConfig.from_config(
        command,
        config,
        inputs=inputs,
        output=getattr(args, "out", None),
        seed=getattr(args, "seed", None),
        residual_tol=getattr(args, "tol", None),
        cert_tol=getattr(args, "cert_tol", None),
        maxit=getattr(args, "maxit", None),
        starts=getattr(args, "starts", None),
        trials=getattr(args, "trials", None),
        grid=getattr(args, "grid", None),
        **overrides,
    )
    if run.output is None:
        name = command.replace(" ", "_")
        run.output = str(Path(config.get("paths", {}).get("results", "results")) / f"{name}.json")
    return config, run


def fail(message: str, code: int) -> None:
    print(f"Error: {message}")
    sys.exit(code)


def save(command: str, run, result: dict) -> Path:
    from src.reports import build_report, write_report

    path = write_report(build_report(command, run.to_dict(), result), run.output)
    print(f"Report saved to: {path}")
    return path


def cmd_solve(args: argparse.Namespace) -> None:
    """Solve and certify eigen-objects of a tensor file."""
    from src.eigen import certify_svt, certify_z, multistart_svt, multistart_z, solve_h_n2
    from src.errors import InvalidInputError
    from src.reports import format_solve_report
    from src.tensors import SymmetricTensor, load_tensor

    command = f"solve {args.kind}"
    try:
        _, run = prepare(args, command)
        tensor = load_tensor(args.input, symmetrize=args.symmetrize)

        items = []
        warnings = []
        if args.kind == "z":
            if not isinstance(tensor, SymmetricTensor):
                tensor = SymmetricTensor(tensor)
            pairs = multistart_z(tensor, starts=run.starts, tol=run.residual_tol, maxit=run.maxit,
                                 seed=run.seed, threads=run.threads, angle_tol=run.dedup_angle)
            for pair in pairs:
                item = pair.to_dict()
                item["certificate"] = certify_z(tensor, pair.x, tol=run.cert_tol,
                                                residual_tol=run.residual_tol).to_dict()
                items.append(item)
        elif args.kind == "svt":
            tuples = multistart_svt(tensor, starts=run.starts, tol=run.residual_tol, maxit=run.maxit,
                                    seed=run.seed, threads=run.threads, angle_tol=run.dedup_angle)
            for item_tuple in tuples:
                item = item_tuple.to_dict()
                item["certificate"] = certify_svt(tensor, item_tuple.blocks, tol=run.cert_tol,
                                                  residual_tol=run.residual_tol).to_dict()
                items.append(item)
        else:
            solution = solve_h_n2(tensor, merge_tol=run.merge_roots, cert_tol=run.cert_tol)
            items = [pair.to_dict() for pair in solution]
            warnings = list(solution.warnings)

    except InvalidInputError as e:
        fail(str(e), EXIT_INPUT)

    if args.kind == "h":
        degenerate = sum(1 for item in items if item["nondegenerate"] is False)
        extra = {
            "charpoly": [float(c.real) for c in solution.charpoly.coefficients],
            "charpoly_degree": solution.charpoly.degree,
            "deficient": solution.deficient,
            "total_multiplicity": solution.total_multiplicity,
        }
    else:
        degenerate = sum(1 for item in items if not item["certificate"]["nondegenerate"])
        extra = {}

    result = {
        "dims": list(tensor.dims),
        "count": len(items),
        "degenerate": degenerate,
        "items": items,
        "warnings": warnings,
        **extra,
    }
    print(format_solve_report(args.kind, result))
    save(command, run, result)

    if not items:
        fail("no converged result", EXIT_UNCONVERGED)


def _odeco_spec(args: argparse.Namespace, run):
    """Spec and order from --in, or a random spec from --n/--r/--k."""
    from src.errors import SpecError
    from src.odeco import SymOdecoSpec, random_sym_spec
    from src.tensors import read_json

    if args.input:
        data = read_json(args.input)
        if not isinstance(data, dict):
            raise SpecError("spec document must be a JSON object")
        spec = SymOdecoSpec.from_dict(data)
        k = args.k or data.get("k")
    else:
        if not args.n:
            raise SpecError("give --in or --n", field="n")
        spec = random_sym_spec(args.n, args.r or args.n, seed=run.seed, mixed_signs=args.mixed_signs)
        k = args.k
    if not isinstance(k, int) or k < 3:
        raise SpecError(f"order k must be an integer >= 3, got {k!r}", field="k")
    return spec, k


def cmd_odeco(args: argparse.Namespace) -> None:
    """Build, enumerate or certify an orthogonally decomposable tensor."""
    from src.errors import InvalidInputError
    from src.odeco import (
        certify_all,
        count_eigen_lines,
        count_nonzero_z_eigenpairs,
        enumerate_z_eigenpairs,
        odeco_build_sym,
        odeco_jacobian_check,
    )
    from src.reports import format_odeco_report, write_report
    from src.tensors import tensor_to_dict

    command = f"odeco {args.action}"
    try:
        _, run = prepare(args, command)
        spec, k = _odeco_spec(args, run)

        if args.action == "build":
            path = write_report(tensor_to_dict(odeco_build_sym(spec, k)), run.output)
            print(f"Tensor saved to: {path}")
            return

        eigenpairs = enumerate_z_eigenpairs(spec, k)
    except InvalidInputError as e:
        fail(str(e), EXIT_INPUT)

    result = {
        "spec": spec.to_dict(k),
        "k": k,
        "count": len(eigenpairs),
        "expected_count": count_nonzero_z_eigenpairs(spec, k),
        "lines": count_eigen_lines(spec, k),
        "pairs": [entry.to_dict() for entry in eigenpairs],
    }

    if args.action == "enumerate":
        checks = [odeco_jacobian_check(spec, k, entry) for entry in eigenpairs]
        result["jacobian_max_deviation"] = max((c.max_deviation for c in checks), default=0.0)
        result["jacobian_mismatches"] = sum(1 for c in checks if not c.matches or not c.nonsingular)
    else:
        reports = certify_all(spec, k, tol=run.cert_tol)
        for item, report in zip(result["pairs"], reports):
            item["certificate"] = report.to_dict()
        result["degenerate"] = sum(1 for report in reports if not report.nondegenerate)

    print(format_odeco_report(result))
    save(command, run, result)

    if result.get("degenerate"):
        fail(f"{result['degenerate']} odeco eigenpairs certified degenerate", EXIT_CONTRADICTION)
    if result.get("jacobian_mismatches"):
        fail(f"{result['jacobian_mismatches']} odeco Jacobians disagree with the block formula", EXIT_CONTRADICTION)


def cmd_census(args: argparse.Namespace) -> None:
    """Run a Monte Carlo census."""
    from src.census import CensusSettings, run_census
    from src.errors import InvalidInputError
    from src.reports import format_census_report

    command = f"census {args.kind}"
    try:
        _, run = prepare(args, command)
        settings = CensusSettings(
            residual_tol=run.residual_tol,
            cert_tol=run.cert_tol,
            grid=run.grid,
            starts=run.starts,
            maxit=run.maxit,
            threads=run.threads,
        )
        report = run_census(args.kind, k=args.k, trials=run.trials, seed=run.seed,
                            n=args.n, dims=args.dims, settings=settings)
    except InvalidInputError as e:
        fail(str(e), EXIT_INPUT)

    result = report.to_dict()
    print(format_census_report(result))
    save(command, run, result)

    if not report.passed:
        fail(f"census invariants failed: {', '.join(report.failed_invariants)}", EXIT_CENSUS)


def cmd_oracle(args: argparse.Namespace) -> None:
    """Run an n = 2 oracle on a tensor file."""
    from src.census import e_count_n2, sweep_z_n2
    from src.errors import InvalidInputError
    from src.reports import format_oracle_report
    from src.tensors import SymmetricTensor, load_tensor

    command = f"oracle {args.action}"
    try:
        _, run = prepare(args, command)
        tensor = load_tensor(args.input, symmetrize=args.symmetrize)
        if args.action == "sweep":
            if not isinstance(tensor, SymmetricTensor):
                tensor = SymmetricTensor(tensor)
            result = sweep_z_n2(tensor, grid=run.grid, tol=run.residual_tol).to_dict()
        else:
            result = e_count_n2(tensor).to_dict()
    except InvalidInputError as e:
        fail(str(e), EXIT_INPUT)

    print(format_oracle_report(args.action, result))
    save(command, run, result)


def cmd_tensor(args: argparse.Namespace) -> None:
    """Write a random Gaussian tensor file."""
    from src.errors import InvalidInputError
    from src.reports import write_report
    from src.tensors import random_symmetric, random_tensor, tensor_to_dict

    try:
        _, run = prepare(args, "tensor random")
        if args.symmetric:
            if not args.n:
                fail("--symmetric needs --n", EXIT_INPUT)
            tensor = random_symmetric(args.n, args.k, seed=run.seed)
        else:
            dims = args.dims or ([args.n] * args.k if args.n else None)
            if not dims:
                fail("give --dims or --n", EXIT_INPUT)
            tensor = random_tensor(dims, seed=run.seed)
    except InvalidInputError as e:
        fail(str(e), EXIT_INPUT)

    path = write_report(tensor_to_dict(tensor), run.output)
    print(f"Tensor saved to: {path}")


def add_common(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every command."""
    parser.add_argument("--config", default=None, help="Config file (default: config/config.yaml)")
    parser.add_argument("--out", default=None, help="Output file (default: results/<command>.json)")
    parser.add_argument("--seed", type=int, default=None, help="Base seed")
    parser.add_argument("--tol", type=float, default=None, help="Residual tolerance")
    parser.add_argument("--cert-tol", type=float, default=None, dest="cert_tol",
                        help="Relative nondegeneracy threshold")
    parser.add_argument("--maxit", type=int, default=None, help="Iteration cap")
    parser.add_argument("--starts", type=int, default=None, help="Multistart count (default: 50·k·n)")
    parser.add_argument("--grid", type=int, default=None, help="Sweep grid size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Tensor eigenpairs, nondegeneracy certificates and censuses",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py tensor random --n 2 --k 3 --symmetric --seed 1 --out t.json
  python main.py solve z --in t.json           Multistart Z-eigenpairs, certified
  python main.py solve svt --in t.json         Singular vector tuples
  python main.py solve h --in t.json           Exact H-eigenpairs (n = 2)
  python main.py odeco enumerate --n 3 --r 2 --k 4 --seed 5
  python main.py odeco certify --in spec.json
  python main.py census --kind z --n 2 --k 3 --trials 1000 --seed 7
  python main.py census --kind svt --dims 2 2 2 --k 3 --trials 500
  python main.py oracle sweep --in t.json
  python main.py oracle ecount --in t.json
        """,
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    solve_parser = subparsers.add_parser("solve", help="Solve and certify eigen-objects")
    solve_parser.add_argument("kind", choices=["z", "svt", "h"], help="Eigen-object kind")
    solve_parser.add_argument("--in", dest="input", required=True, help="Tensor JSON file")
    solve_parser.add_argument("--symmetrize", action="store_true",
                              help="Project onto symmetric tensors instead of rejecting")
    add_common(solve_parser)
    solve_parser.set_defaults(func=cmd_solve)

    odeco_parser = subparsers.add_parser("odeco", help="Orthogonally decomposable tensors")
    odeco_parser.add_argument("action", choices=["build", "enumerate", "certify"])
    odeco_parser.add_argument("--in", dest="input", default=None, help="Spec JSON file")
    odeco_parser.add_argument("--n", type=int, default=None, help="Dimension of a random spec")
    odeco_parser.add_argument("--r", type=int, default=None, help="Rank of a random spec (default: n)")
    odeco_parser.add_argument("--k", type=int, default=None, help="Tensor order")
    odeco_parser.add_argument("--mixed-signs", action="store_true", dest="mixed_signs",
                              help="Random spec weights of both signs")
    add_common(odeco_parser)
    odeco_parser.set_defaults(func=cmd_odeco)

    census_parser = subparsers.add_parser("census", help="Monte Carlo census")
    census_parser.add_argument("--kind", choices=["z", "svt", "h"], required=True)
    census_parser.add_argument("--n", type=int, default=None, help="Dimension (symmetric kinds)")
    census_parser.add_argument("--dims", type=int, nargs="+", default=None, help="Dimensions (svt)")
    census_parser.add_argument("--k", type=int, required=True, help="Tensor order")
    census_parser.add_argument("--trials", type=int, default=None, help="Number of trials")
    add_common(census_parser)
    census_parser.set_defaults(func=cmd_census)

    oracle_parser = subparsers.add_parser("oracle", help="n = 2 brute-force oracles")
    oracle_parser.add_argument("action", choices=["sweep", "ecount"])
    oracle_parser.add_argument("--in", dest="input", required=True, help="Tensor JSON file")
    oracle_parser.add_argument("--symmetrize", action="store_true")
    add_common(oracle_parser)
    oracle_parser.set_defaults(func=cmd_oracle)

    tensor_parser = subparsers.add_parser("tensor", help="Tensor files")
    tensor_parser.add_argument("action", choices=["random"])
    tensor_parser.add_argument("--n", type=int, default=None)
    tensor_parser.add_argument("--dims", type=int, nargs="+", default=None)
    tensor_parser.add_argument("--k", type=int, default=3)
    tensor_parser.add_argument("--symmetric", action="store_true")
    add_common(tensor_parser)
    tensor_parser.set_defaults(func=cmd_tensor)

    return parser


def main(argv=None) -> None:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        sys.exit(EXIT_OK)

    args.func(args)


if __name__ == "__main__":
    main()
