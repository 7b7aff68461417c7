"""
Command-line entry point `toruslab`.

Exit codes: 0 when every check passes, 1 when a check or a precondition fails, 2 for invalid
flags or descriptors, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from toruslab import models
from toruslab.errors import DomainError, ToruslabError
from toruslab.reports import atomic_write_text, dump_json, resolve_output, with_provenance
from .commands import COMMANDS
from .config import resolve_config

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool) -> None:
    """
    Attach a single stderr handler to the package logger.
    """
    root = logging.getLogger("toruslab")
    root.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    root.propagate = False


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", help="surface descriptor or TOML file (default: clifford)")
    common.add_argument("--resolution", type=int, help="grid resolution, a power of two in [32, 512]")
    common.add_argument("--seed", type=int, help="master seed (default: 42)")
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    equator = argparse.ArgumentParser(add_help=False)
    equator.add_argument("--pole", metavar="X,Y,Z,W", help="pole of the slicing equator")
    equator.add_argument("--tangent-at", metavar="U,V", help="use the normal at X(U, V) as pole")
    equator.add_argument("--ply", metavar="PATH", help="write the projected mesh and curves as PLY")
    equator.add_argument("--svg", metavar="PATH", help="write the projected curves as SVG")
    equator.add_argument(
        "--from", dest="projection_pole", metavar="X,Y,Z,W", help="projection pole inside S(v)"
    )

    samples = argparse.ArgumentParser(add_help=False)
    samples.add_argument("--samples", type=int, help="number of random equators (default: 200)")

    spectral = argparse.ArgumentParser(add_help=False)
    spectral.add_argument("--count", type=int, help="eigenpairs to compute (default: 6)")
    spectral.add_argument("--margin", type=float, help="relative λ₁ margin (default: 0.02)")
    spectral.add_argument(
        "--auto-margin", action="store_true", help="estimate the margin from a half-resolution mesh"
    )
    spectral.add_argument("--tol-residual", type=float, help="coordinate eigenresidual threshold")

    parser = argparse.ArgumentParser(
        prog="toruslab",
        description="Numerical checks for tori in the 3-sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser(
        "verify-clifford", parents=[common, samples, spectral], help="run the Clifford torus identity suite"
    )
    verify.add_argument("--alpha", type=float, help="Hölder exponent of the identity check (default: 0.5)")
    verify.add_argument("--tol-curvature", type=float, help="tolerance of the curvature identities")
    verify.add_argument("--tol-lambda", type=float, help="relative tolerance on λ₁ = 2")
    sub.add_parser("classify", parents=[common, equator], help="classify the intersection with an equator")
    sub.add_parser("scan", parents=[common, samples], help="check the two-piece property on random equators")
    spectrum = sub.add_parser("spectrum", parents=[common, spectral], help="compute leading eigenpairs")
    spectrum.add_argument("--eigenfunctions", metavar="PATH", help="dump eigenfunctions as a binary grid")
    sub.add_parser("project", parents=[common, equator], help="export stereographic figures")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = resolve_config(args)
        result = COMMANDS[config.command](config)
    except DomainError as exc:
        logger.error("%s", exc)
        return models.ExitCode.USAGE
    except ArithmeticError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return models.ExitCode.NUMERICAL
    except ToruslabError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return models.ExitCode.CHECK_FAILED

    if result.table is not None:
        print(result.table.to_string(index=False))
    document = with_provenance({**result.document, "pass": result.passed}, config.as_dict())
    if config.json_path is not None:
        atomic_write_text(resolve_output(config.json_path, config.output_dir), dump_json(document))
    code = models.ExitCode.PASS if result.passed else models.ExitCode.CHECK_FAILED
    logger.info("%s finished: %s", config.command, "pass" if result.passed else "fail")
    return code


if __name__ == "__main__":
    sys.exit(main())
