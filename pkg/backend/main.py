import logging
import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from config.settings import settings
from src.errors import QSeriesError
from src.catalog import (
    check_manifest,
    list_identities,
    load_catalog,
    load_file,
    matches,
    render_report,
    unmapped_labels,
    verify_suite,
    write_report,
)
from src.expr import evaluate, parse_expr, print_identity
from src.stringfn import StringParams, string_c
from src.api.routes import router, set_dependencies

# Setup logging
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad command-line input that argparse itself cannot detect."""


def parse_bindings(pairs: Optional[Sequence[str]]) -> Dict[str, int]:
    bindings: Dict[str, int] = {}
    for pair in pairs or ():
        name, sep, value = pair.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--param expects NAME=INT, got {pair!r}")
        try:
            bindings[name.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--param {name.strip()} needs an integer value, got {value!r}")
    return bindings


def coefficient_lines(series, order: int) -> List[str]:
    """'exponent coefficient' lines, zeros included, rationals as num/den."""
    return [f"{e} {c}" for e, c in series.dense(order)]


def create_app() -> FastAPI:
    set_dependencies(settings.CATALOG_DIR)

    app = FastAPI(
        title="q-series verification API",
        description="Coefficients, string functions and identity checks over truncated q-series",
        version="1.0.0"
    )

    # Add CORS
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["http://localhost:5173"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    app.include_router(router, prefix="/api/v1", tags=["q-series"])
    return app


class QSeriesCLI:
    """The subcommands behind ``main``; each returns an exit code."""

    def __init__(self, out=None):
        self.out = out or sys.stdout

    def _emit(self, lines: Sequence[str]):
        for line in lines:
            self.out.write(line + "\n")

    def coeffs(self, text: str, order: int, pairs: Optional[Sequence[str]]) -> int:
        bindings = parse_bindings(pairs)
        node = parse_expr(text, declared=bindings)
        series = evaluate(node, bindings, order, attempts=settings.PRECISION_ATTEMPTS)
        self._emit(coefficient_lines(series, order))
        return EXIT_OK

    def verify(self, suite: Optional[str], file: Optional[Path], order: int, jobs: int,
               report: Optional[Path], quiet: bool) -> int:
        logger.info("\n" + "="*70)
        logger.info("IDENTITY VERIFICATION")
        logger.info("="*70)

        if file is not None:
            identities = [i for i in load_file(file) if matches(i, suite)]
            logger.info(f"📂 Loaded {len(identities)} identities from {file}")
        else:
            identities = list_identities(settings.CATALOG_DIR, suite)
            if suite in (None, "all"):
                check_manifest(identities, settings.MANIFEST_FILE)
        if not identities:
            raise UsageError(f"no identities match {suite!r}")

        summary = verify_suite(
            identities, order, jobs=jobs, attempts=settings.PRECISION_ATTEMPTS,
            progress=not quiet and sys.stderr.isatty(),
        )
        if report is not None:
            report.parent.mkdir(parents=True, exist_ok=True)
            write_report(summary, report, timing=True)
        else:
            self.out.write(render_report(summary, timing=True))

        if summary.ok:
            logger.info("\n✅ Verification Complete! All instances passed.")
            return EXIT_OK
        logger.error(f"\n❌ {summary.failed} failures, {summary.errors} errors")
        return EXIT_FAILURES

    def string(self, p: int, pp: int, m: int, ell: int, order: int) -> int:
        params = StringParams.of(p, pp, m, ell)
        self._emit(coefficient_lines(string_c(params, order), order))
        return EXIT_OK

    def catalog_list(self, pattern: Optional[str]) -> int:
        for identity in list_identities(settings.CATALOG_DIR, pattern):
            self.out.write(f"{identity.name}\t{identity.anchor}\n")
        return EXIT_OK

    def catalog_show(self, name: str) -> int:
        for identity in load_catalog(settings.CATALOG_DIR):
            if identity.name == name:
                self.out.write(print_identity(identity) + "\n")
                return EXIT_OK
        raise UsageError(f"no identity named {name!r}")

    def catalog_audit(self) -> int:
        identities = load_catalog(settings.CATALOG_DIR)
        check_manifest(identities, settings.MANIFEST_FILE)
        logger.info("✅ Every manifest topic and statement label maps to a catalog identity")
        unmapped = unmapped_labels(identities, settings.MANIFEST_FILE)
        for label in unmapped:
            self.out.write(f"unmapped\t{label}\n")
        if unmapped:
            logger.info(f"📋 {len(unmapped)} equation labels have no catalog identity")
        return EXIT_OK

    def serve(self) -> int:
        logger.info("\n" + "="*70)
        logger.info("STARTING API SERVER")
        logger.info("="*70)

        app = create_app()

        logger.info("\n🌐 API Server Configuration:")
        logger.info(f"  Host: {settings.API_HOST}")
        logger.info(f"  Port: {settings.API_PORT}")
        logger.info(f"  Docs: http://localhost:{settings.API_PORT}/docs")

        uvicorn.run(
            app,
            host=settings.API_HOST,
            port=settings.API_PORT,
            log_level="info"
        )
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qseries",
        description="Exact q-series coefficients and identity verification"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    coeffs = commands.add_parser("coeffs", help="Print the coefficients of an expression")
    coeffs.add_argument("expr", help="Expression in the identity language")
    coeffs.add_argument("--order", type=int, default=settings.DEFAULT_ORDER, help="Truncation order")
    coeffs.add_argument("--param", action="append", metavar="NAME=INT", help="Bind a parameter (repeatable)")

    verify = commands.add_parser("verify", help="Verify catalog identities or an identity file")
    source = verify.add_mutually_exclusive_group()
    source.add_argument("--suite", metavar="PATTERN", help="Name or file glob; 'all' for everything")
    source.add_argument("--file", type=Path, help="Identity file to verify instead of the catalog")
    verify.add_argument("--order", type=int, default=settings.DEFAULT_ORDER, help="Truncation order")
    verify.add_argument("--jobs", type=int, default=settings.JOBS, help="Worker processes")
    verify.add_argument("--report", type=Path, help="Write the report here instead of standard output")
    verify.add_argument("--quiet", action="store_true", help="No progress bar")

    string = commands.add_parser("string", help="Print normalized string-function coefficients")
    string.add_argument("--p", type=int, required=True)
    string.add_argument("--pp", type=int, required=True, help="p'")
    string.add_argument("--m", type=int, required=True)
    string.add_argument("--l", type=int, required=True, dest="ell")
    string.add_argument("--order", type=int, default=settings.DEFAULT_ORDER, help="Truncation order")

    catalog = commands.add_parser("catalog", help="Inspect the built-in identity suite")
    actions = catalog.add_subparsers(dest="action", required=True)
    listing = actions.add_parser("list", help="Identity names and anchors")
    listing.add_argument("pattern", nargs="?", default=None)
    show = actions.add_parser("show", help="Print one identity in the identity language")
    show.add_argument("name")
    actions.add_parser("audit", help="Check manifest coverage")

    commands.add_parser("serve", help="Run the HTTP API")
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    cli = QSeriesCLI(out)
    try:
        order = getattr(args, "order", None)
        if order is not None and order < 0:
            raise UsageError(f"--order must be >= 0, got {order}")

        if args.command == "coeffs":
            return cli.coeffs(args.expr, args.order, args.param)

        elif args.command == "verify":
            if args.jobs < 1:
                raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
            return cli.verify(args.suite, args.file, args.order, args.jobs, args.report, args.quiet)

        elif args.command == "string":
            return cli.string(args.p, args.pp, args.m, args.ell, args.order)

        elif args.command == "catalog":
            if args.action == "list":
                return cli.catalog_list(args.pattern)
            elif args.action == "show":
                return cli.catalog_show(args.name)
            return cli.catalog_audit()

        elif args.command == "serve":
            return cli.serve()

    except UsageError as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except QSeriesError as e:
        logger.error(f"❌ {type(e).__name__}: {e}", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("\n\n⚠️ Interrupted by user")
        return EXIT_FAILURES
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
