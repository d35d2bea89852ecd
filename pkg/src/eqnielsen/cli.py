"""
Command surface: `objects`, `invariants`, `verify` and `report` over one JSON problem file.

Results go to stdout (or the report file), logs and errors to stderr. Exit codes: 0 success,
2 input error, 3 resource cap, 4 oracle mismatch, 5 internal failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .config import EngineConfig, load_config
from .errors import EngineError, InputError, OracleMismatch
from .pipeline import effective_config, list_objects, run_invariants, run_verification
from .problem_file import Problem, build_problem, load_problem_file
from .report import (
    invariant_report,
    object_table,
    render_invariants_text,
    render_objects_text,
    render_verification_text,
    to_json,
    verification_report,
    write_file_atomically,
)

logger = logging.getLogger(__name__)

TEXT = "text"
JSON = "json"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqnielsen",
        description="Equivariant Lefschetz and Nielsen invariants of G-simplicial self-maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="Problem file (JSON)")
        p.add_argument("--coset-cap", type=int, default=None,
                       help="Largest coset table tried for each fundamental group (env NF_COSET_CAP)")
        p.add_argument("--cover-search-cap", type=int, default=None,
                       help="Most candidate classes in the N^G cover search (env NF_COVER_SEARCH_CAP)")
        p.add_argument("--threads", type=int, default=None, help="Objects traced in parallel (env NF_THREADS)")
        return p

    for name, help_text in (("objects", "List the objects of the fundamental category"),
                            ("invariants", "Compute every invariant and the verdicts"),
                            ("verify", "Cross-check the engine against the independent oracles")):
        add(name, help_text).add_argument("--format", choices=[TEXT, JSON], default=TEXT,
                                          help="Output format (default: text)")
    add("report", "Write the JSON invariant report to a file").add_argument(
        "-o", "--output", required=True, help="Destination JSON file")
    return parser


def _load(args: argparse.Namespace, base: EngineConfig):
    problem = build_problem(load_problem_file(args.file))
    config = effective_config(base, problem, coset_cap=args.coset_cap,
                              cover_search_cap=args.cover_search_cap, threads=args.threads)
    return problem, config


def cmd_objects(problem: Problem, config: EngineConfig, fmt: str = TEXT) -> str:
    objs, gap = list_objects(problem, config)
    table = object_table(problem, objs, gap)
    logger.info(f"✅ {len(objs)} objects")
    return to_json(table) if fmt == JSON else render_objects_text(table)


def cmd_invariants(problem: Problem, config: EngineConfig, fmt: str = TEXT) -> str:
    report = invariant_report(run_invariants(problem, config))
    return to_json(report) if fmt == JSON else render_invariants_text(report)


def cmd_verify(problem: Problem, config: EngineConfig, fmt: str = TEXT):
    """Rendered check table and whether every applicable check passed."""
    verification = run_verification(run_invariants(problem, config))
    report = verification_report(verification)
    return (to_json(report) if fmt == JSON else render_verification_text(report)), verification.ok


def cmd_report(problem: Problem, config: EngineConfig, output: Path) -> Path:
    output = Path(output)
    if not output.parent.exists():
        raise InputError(f"output directory does not exist: {output.parent}")
    write_file_atomically(output, to_json(invariant_report(run_invariants(problem, config))))
    logger.info(f"✅ Report written to {output}")
    return output


def run(args: argparse.Namespace, base: EngineConfig) -> int:
    problem, config = _load(args, base)
    if args.command == "objects":
        sys.stdout.write(cmd_objects(problem, config, args.format))
    elif args.command == "invariants":
        sys.stdout.write(cmd_invariants(problem, config, args.format))
    elif args.command == "verify":
        text, ok = cmd_verify(problem, config, args.format)
        sys.stdout.write(text)
        if not ok:
            raise OracleMismatch("at least one oracle disagrees with the engine")
    else:
        cmd_report(problem, config, args.output)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        base = load_config()
        logging.basicConfig(level=getattr(logging, base.log_level), stream=sys.stderr,
                            format='%(asctime)s - %(levelname)s - %(message)s')
        return run(args, base)
    except EngineError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"❌ Unexpected failure: {e}")
        print(f"Error: internal failure: {e}", file=sys.stderr)
        return 5
