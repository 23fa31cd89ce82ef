"""
Main CLI entry point
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Any

from .core.analyzer import AlgebraAnalyzer, CorpusVerifier
from .core.constructions import (
    CORPUS_VERSION,
    QUIVER_PRESETS,
    GradedDivisionSpec,
    MatrixAlgebraSpec,
    builtin_corpus,
    graded_division_ring,
    graded_matrix_algebra,
    group_algebra,
    product_algebra,
    quaternion_cocycle,
    quiver_preset,
    trivial_extension,
    truncated_polynomial,
    upper_triangular,
)
from .core.grcore import GradedAlgebra
from .core.groups import FiniteGroup
from .core.suites import SUITES
from .formats.codec import dump_algebra, load_corpus, read_algebra_file
from .utils.config import load_config
from .utils.errors import EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, CapExceededError, InvalidInputError
from .utils.reports import ReportGenerator, render_analysis, render_verification, report_json, summary_json

# Setup logging; stdout carries the JSON output
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s [%(levelname)s] %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

CONSTRUCT_KINDS = (
    "matrix",
    "group-algebra",
    "trivial-extension",
    "product",
    "division",
    "truncated-polynomial",
    "upper-triangular",
    "quiver",
)


def split_labels(text: str) -> List[str]:
    """Split a comma separated label list, keeping commas inside parentheses"""
    out, depth, current = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(current.strip())
            current = ""
            continue
        depth += {"(": 1, ")": -1}.get(ch, 0)
        current += ch
    if current.strip():
        out.append(current.strip())
    return out


def parse_elements(G: FiniteGroup, text: Optional[str]) -> List[int]:
    if text is None or text in ("", "e", "trivial"):
        return [G.identity]
    if text == "full":
        return list(G.elements)
    return [G.index(label) for label in split_labels(text)]


def parse_support(G: FiniteGroup, text: Optional[str]) -> List[int]:
    """A subgroup given by generators, ``full`` or ``trivial``"""
    return sorted(G.subgroup_closure(parse_elements(G, text)))


def inner_algebra(name: str, p: int) -> GradedAlgebra:
    """Small trivially graded algebras named on the command line"""
    kind, _, size = name.rpartition("-")
    if name == "field":
        return truncated_polynomial(p, 1, label=f"F{p}")
    if not size.isdigit():
        raise InvalidInputError(f"unknown inner algebra {name!r}")
    k = int(size)
    if kind == "upper-triangular":
        return upper_triangular(p, k)
    if kind == "truncated":
        return truncated_polynomial(p, k)
    if kind == "fields":
        return product_algebra(*(truncated_polynomial(p, 1) for _ in range(k)), label=f"F{p}^{k}")
    raise InvalidInputError(f"unknown inner algebra {name!r}")


def construct(args: argparse.Namespace) -> GradedAlgebra:
    G = FiniteGroup.by_name(args.group)
    p = args.p
    name = args.name or ""
    if args.kind in ("matrix", "division"):
        H = parse_support(G, args.support)
        cocycle = quaternion_cocycle(G, p) if args.cocycle == "quaternion" else None
        delta = GradedDivisionSpec(G, tuple(H), p, cocycle)
        if args.kind == "division":
            return graded_division_ring(delta, label=name)
        return graded_matrix_algebra(MatrixAlgebraSpec(delta, tuple(parse_elements(G, args.shifts))), label=name)
    if args.kind == "group-algebra":
        return group_algebra(G, p, label=name)
    if args.kind == "trivial-extension":
        inner = inner_algebra(args.inner, p)
        return trivial_extension(inner, label=name or f"E({inner.label})")
    if args.kind == "product":
        if not args.inputs:
            raise InvalidInputError("product needs --inputs with at least one algebra file")
        return product_algebra(*(read_algebra_file(path) for path in args.inputs), label=name)
    if args.kind == "truncated-polynomial":
        x = parse_elements(G, args.x_degree)[0]
        return truncated_polynomial(p, args.m, G, x, label=name)
    if args.kind == "upper-triangular":
        shifts = parse_elements(G, args.shifts) if args.shifts else None
        n = len(shifts) if shifts else args.n
        return upper_triangular(p, n, G, shifts, label=name)
    if args.kind == "quiver":
        A = quiver_preset(args.preset, p, G, parse_elements(G, args.x_degree)[0])
        return A if not name else GradedAlgebra(A.p, A.group, A.degrees, A.structure, A.unit, A.names, name)
    raise InvalidInputError(f"unknown construction {args.kind!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Additional config file path")
    common.add_argument("--seed", type=int, help="Seed for randomized steps (overrides config)")
    common.add_argument("--verbose", "-v", action="store_true", help="Verbose logging")

    parser = argparse.ArgumentParser(description="Exact analysis of group-graded algebras over prime fields")
    sub = parser.add_subparsers(dest="command", required=True)

    for command, help_text in (("analyze", "Full report for an algebra file"), ("classify", "Classification only")):
        p = sub.add_parser(command, parents=[common], help=help_text)
        p.add_argument("file", help="Algebra file (JSON)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output-dir", help="Also write <name>_analysis.json and <name>_report.md here")
        p.add_argument("--name", help="Instance name used in reports")

    c = sub.add_parser("construct", parents=[common], help="Write a constructed algebra file to stdout")
    c.add_argument("kind", choices=CONSTRUCT_KINDS)
    c.add_argument("--group", default="trivial", help="Grading group, e.g. C4, C2xC2, S3")
    c.add_argument("--p", type=int, default=2, help="Prime")
    c.add_argument("--support", help="Generators of the support subgroup, 'full' or 'trivial'")
    c.add_argument("--shifts", help="Comma separated shift labels")
    c.add_argument("--cocycle", choices=("none", "quaternion"), default="none")
    c.add_argument("--inner", default="field", help="field, upper-triangular-N, truncated-M or fields-N")
    c.add_argument("--inputs", nargs="*", help="Algebra files for product")
    c.add_argument("--m", type=int, default=2, help="Truncation order")
    c.add_argument("--n", type=int, default=2, help="Matrix size")
    c.add_argument("--x-degree", help="Degree label of x or of the quiver arrows")
    c.add_argument("--preset", choices=sorted(QUIVER_PRESETS), default="cycle2-rad2")
    c.add_argument("--name", help="Instance name")

    v = sub.add_parser("verify", parents=[common], help="Run the verification suites over a corpus")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--corpus", default="builtin", help="'builtin', a corpus file or a directory of algebra files")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--output-dir", help="Also write verify_analysis.json and verify_report.md here")
    return parser


def _config(args: argparse.Namespace) -> Dict[str, Any]:
    config = load_config(args.config)
    if args.seed is not None:
        config["seed"] = args.seed
    return config


def run(args: argparse.Namespace) -> int:
    config = _config(args)

    if args.command in ("analyze", "classify"):
        A = read_algebra_file(args.file)
        name = args.name or A.label or "algebra"
        analyzer = AlgebraAnalyzer(config)
        report = analyzer.analyze(A, name) if args.command == "analyze" else analyzer.classify(A, name)
        sys.stdout.write(report_json(report) if args.format == "json" else render_analysis(report) + "\n")
        if args.output_dir:
            ReportGenerator(args.output_dir).generate_reports(report, name)
        return EXIT_OK

    if args.command == "construct":
        A = construct(args)
        sys.stdout.write(dump_algebra(A, args.name or ""))
        return EXIT_OK

    if args.command == "verify":
        if args.corpus == "builtin":
            instances = [(entry.name, entry.algebra) for entry in builtin_corpus()]
            logger.info(f"Builtin corpus version {CORPUS_VERSION}")
        else:
            instances = load_corpus(args.corpus)
        suites = SUITES if args.suite == "all" else (args.suite,)
        verifier = CorpusVerifier(config, suites)
        summary = verifier.verify(instances)
        sys.stdout.write(summary_json(summary) if args.format == "json" else render_verification(summary) + "\n")
        if args.output_dir:
            ReportGenerator(args.output_dir).generate_verification_reports(summary)
        if not verifier.all_passed(summary):
            logger.error(f"{summary['summary']['failed']} checks failed")
            return EXIT_VERIFY
        return EXIT_OK

    raise InvalidInputError(f"unknown command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    args = build_parser().parse_args(argv)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        return run(args)
    except InvalidInputError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except CapExceededError as e:
        logger.error(f"Resource cap exceeded: {e}")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
