"""
Command-line front end of the calculator.

Usage
-----
cplattice validate  FILE
cplattice info      FILE
cplattice ideal     FILE --set a,b
cplattice pairs     FILE [--kind o|t]
cplattice construct FILE (--quotient S | --restrict S | --omega S:S' | --nondegenerate)
cplattice structure FILE [--toeplitz | --relative S]
cplattice relcp     FILE --ideal S
cplattice check     FILE

Every command accepts `--format json|table|dot`, `--limit N`, `--config FILE.xml` and `-v`.
Ideal sets are comma-separated block labels; the empty set is written as "".

Exit codes: 0 success, 1 invalid input, 2 unmet precondition (or failed check),
3 unreadable or malformed input.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from cplattice.algebra.checks import run_invariant_suite
from cplattice.algebra.constructions import (
    is_hilbert_bimodule,
    nondegenerate_replacement,
    omega_correspondence,
    quotient_correspondence,
    restriction_correspondence,
)
from cplattice.algebra.correspondence import Correspondence, IdealSet
from cplattice.algebra.ideal_calculus import (
    closures,
    forward_image,
    invariance,
    inverse_image,
    relative_katsura,
    structural_ideals,
)
from cplattice.algebra.pairs import IdealPair, PairKind, enumerate_pairs, ideal_generated_by, relcp_analyze
from cplattice.algebra.structure import ox_structure, relative_structure, toeplitz_structure
from cplattice.common.errors import CPLatticeError, InputValidationError
from cplattice.common.params import OUTPUT_FORMATS, CalculatorParams
from cplattice.io import json_io
from cplattice.io.dot_io import lattice_to_dot
from cplattice.io.xml_io import read_xml_config

logger = logging.getLogger(__name__)

USAGE_EXIT_CODE = 1
CHECK_FAILED_EXIT_CODE = 2
TOWER_SEPARATOR = " -> "


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT_CODE, f"{self.prog}: error: {message}\n")


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _tower(ideals: Sequence[IdealSet]) -> str:
    return TOWER_SEPARATOR.join(str(i) for i in ideals)


def parse_ideal(corr: Correspondence, text: str) -> IdealSet:
    """
    Parses a comma-separated list of block labels; the empty string is the zero ideal.
    """
    labels = [part.strip() for part in text.split(",") if part.strip()]
    return corr.ideal(labels)


def parse_pair(corr: Correspondence, text: str) -> IdealPair:
    if ":" not in text:
        raise InputValidationError(f"pair must be written as 'S:S2', got {text!r}")
    first, second = text.split(":", 1)
    return IdealPair(parse_ideal(corr, first), parse_ideal(corr, second), PairKind.T)


class Command:
    """
    Output of one command: the JSON payload and its table rendering.
    """

    def __init__(self, payload, table: List[str], dot: Optional[str] = None, exit_code: int = 0):
        self.payload = payload
        self.table = table
        self.dot = dot
        self.exit_code = exit_code

    def render(self, output_format: str, indent: int) -> str:
        if output_format == "json":
            return json_io.render_json(self.payload, indent)
        if output_format == "dot":
            if self.dot is None:
                raise InputValidationError("dot output is only available for the pairs command")
            return self.dot
        return "\n".join(self.table) + "\n"


def cmd_validate(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    return Command({"valid": True, "blocks": corr.n}, ["valid", f"blocks: {corr.n}"])


def cmd_info(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    ideals = structural_ideals(corr)
    bimodule = is_hilbert_bimodule(corr)
    algebra = corr.algebra
    payload = {
        "blocks": [{"label": label, "dim": dim} for label, dim in zip(algebra.labels, algebra.dims)],
        **json_io.structural_to_json(ideals),
        "hilbert_bimodule": bimodule.is_bimodule,
        "bimodule_witness": bimodule.witness,
    }
    table = [
        "blocks: " + " ".join(f"{label}({dim})" for label, dim in zip(algebra.labels, algebra.dims)),
        f"ker: {ideals.ker}",
        f"compactly_acting: {ideals.compactly_acting}",
        f"katsura: {ideals.katsura}",
        f"hilbert_bimodule: {_flag(bimodule.is_bimodule)}",
    ]
    if bimodule.witness:
        table.append(f"bimodule_witness: {bimodule.witness}")
    return Command(payload, table)


def cmd_ideal(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    ideal = parse_ideal(corr, args.set)
    forward = forward_image(corr, ideal)
    inverse = inverse_image(corr, ideal)
    relative = relative_katsura(corr, ideal)
    flags = invariance(corr, ideal)
    report = closures(corr, ideal)
    generated = ideal_generated_by(corr, ideal)
    payload = {
        "ideal": json_io.ideal_to_json(ideal),
        "forward_image": json_io.ideal_to_json(forward),
        "inverse_image": json_io.ideal_to_json(inverse),
        "relative_katsura": json_io.ideal_to_json(relative),
        **json_io.invariance_to_json(flags),
        **json_io.closures_to_json(report),
        "generated_pair": json_io.pair_to_json(generated),
    }
    table = [
        f"ideal: {ideal}",
        f"forward_image: {forward}",
        f"inverse_image: {inverse}",
        f"relative_katsura: {relative}",
        f"positively_invariant: {_flag(flags.positively_invariant)}",
        f"negatively_invariant: {_flag(flags.negatively_invariant)}",
        f"invariant: {_flag(flags.invariant)}",
        f"forward_tower: {_tower(report.forward_tower)}",
        f"backward_tower: {_tower(report.backward_tower)}",
        f"positive_closure: {report.positive_closure}",
        f"negative_closure: {report.negative_closure}",
        f"invariant_closure: {report.invariant_closure}",
        f"generated_pair: {generated}",
    ]
    return Command(payload, table)


def cmd_pairs(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    lattice = enumerate_pairs(corr, args.kind, calc_params.enumeration_limit)
    table = [f"kind: {lattice.kind.value}", f"pairs: {len(lattice)}"]
    table += [f"{k} {pair}" for k, pair in enumerate(lattice)]
    table.append("covers:")
    table += [f"{low} < {high}" for low, high in lattice.covering_edges]
    return Command(json_io.lattice_to_json(lattice), table, dot=lattice_to_dot(lattice))


def cmd_construct(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    if args.quotient is not None:
        derived = quotient_correspondence(corr, parse_ideal(corr, args.quotient))
    elif args.restrict is not None:
        derived = restriction_correspondence(corr, parse_ideal(corr, args.restrict))
    elif args.omega is not None:
        derived = omega_correspondence(corr, parse_pair(corr, args.omega))
    else:
        derived = nondegenerate_replacement(corr)
    payload = json_io.derived_to_json(derived)
    return Command(payload, json_io.render_json(payload, calc_params.json_indent).splitlines())


def cmd_structure(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    if args.toeplitz:
        structure = toeplitz_structure(corr)
    elif args.relative is not None:
        structure = relative_structure(corr, parse_ideal(corr, args.relative))
    else:
        structure = ox_structure(corr)
    return Command(json_io.structure_to_json(structure), [str(structure)])


def cmd_relcp(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    report = relcp_analyze(corr, parse_ideal(corr, args.ideal))
    table = [
        f"ideal: {report.ideal}",
        f"tower: {_tower(report.tower)}",
        f"limit: {report.limit}",
        f"omega: {report.omega}",
        f"kernel_of_pi: {report.kernel_of_pi}",
        f"algebra_is_zero: {_flag(report.algebra_is_zero)}",
        f"pi_injective: {_flag(report.pi_injective)}",
    ]
    return Command(json_io.relcp_to_json(report), table)


def cmd_check(corr: Correspondence, args, calc_params: CalculatorParams) -> Command:
    results = run_invariant_suite(corr, calc_params.enumeration_limit)
    table = []
    for result in results:
        if result.passed:
            suffix = f" ({result.detail})" if result.detail else ""
            table.append(f"PASS {result.name}{suffix}")
        else:
            table.append(f"FAIL {result.name}: {result.detail}")
    failed = sum(1 for r in results if not r.passed)
    table.append(f"checks: {len(results)}, failed: {failed}")
    return Command(json_io.checks_to_json(results), table, exit_code=CHECK_FAILED_EXIT_CODE if failed else 0)


COMMANDS: Dict[str, Callable] = {
    "validate": cmd_validate,
    "info": cmd_info,
    "ideal": cmd_ideal,
    "pairs": cmd_pairs,
    "construct": cmd_construct,
    "structure": cmd_structure,
    "relcp": cmd_relcp,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("input", help="correspondence document (JSON)")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="output format")
    common.add_argument("--limit", type=int, default=None, help="enumeration limit on the number of blocks")
    common.add_argument("--config", default=None, help="XML configuration file")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    parser = _ArgumentParser(prog="cplattice", description="Ideal lattices of C*-correspondences over finite-block algebras")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    sub.add_parser("validate", parents=[common], help="validate a document")
    sub.add_parser("info", parents=[common], help="structural ideals and bimodule test")

    ideal = sub.add_parser("ideal", parents=[common], help="ideal calculus of one ideal")
    ideal.add_argument("--set", required=True, help="comma-separated block labels")

    pairs = sub.add_parser("pairs", parents=[common], help="T-pairs or O-pairs and their lattice")
    pairs.add_argument("--kind", type=str.upper, choices=[k.value for k in PairKind], default=PairKind.O.value)

    construct = sub.add_parser("construct", parents=[common], help="derived correspondences")
    which = construct.add_mutually_exclusive_group(required=True)
    which.add_argument("--quotient", metavar="S", help="quotient X_I")
    which.add_argument("--restrict", metavar="S", help="restriction Y_I")
    which.add_argument("--omega", metavar="S:S2", help="X_ω of a T-pair")
    which.add_argument("--nondegenerate", action="store_true", help="φ_X(A)X")

    structure = sub.add_parser("structure", parents=[common], help="matrix structure of O_X")
    variant = structure.add_mutually_exclusive_group()
    variant.add_argument("--toeplitz", action="store_true", help="Toeplitz algebra T_X")
    variant.add_argument("--relative", metavar="S", help="relative algebra O(J, X)")

    relcp = sub.add_parser("relcp", parents=[common], help="relative Cuntz-Pimsner analysis")
    relcp.add_argument("--ideal", required=True, metavar="S", help="the ideal J")

    sub.add_parser("check", parents=[common], help="run the invariant suite")
    return parser


def load_params(args) -> CalculatorParams:
    calc_params = read_xml_config(args.config) if args.config else CalculatorParams()
    if args.limit is not None:
        calc_params.enumeration_limit = args.limit
    if args.format is not None:
        calc_params.output_format = args.format
    if args.verbose:
        calc_params.log_level = "DEBUG"
    try:
        calc_params.validate()
    except ValueError as err:
        raise InputValidationError(str(err)) from None
    return calc_params


def run_command(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """
    Runs one command and returns its exit code.

    Parameters
    ----------
    argv : Sequence[str] | None
        Arguments without the program name; sys.argv[1:] when omitted.
    stdout, stderr : file-like | None
        Streams for command output and error messages.

    Returns
    -------
    int
        The process exit code.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        calc_params = load_params(args)
        logging.basicConfig(
            level=calc_params.log_level.upper(),
            format="%(levelname)s %(name)s: %(message)s",
            stream=stderr,
        )
        corr = json_io.read_input(args.input)
        logger.info("%s on %d blocks with %s", args.command, corr.n, calc_params)
        command = COMMANDS[args.command](corr, args, calc_params)
        stdout.write(command.render(calc_params.output_format, calc_params.json_indent))
    except CPLatticeError as err:
        stderr.write(f"{err.kind}: {err}\n")
        return err.exit_code
    return command.exit_code


def main() -> int:
    return run_command()


if __name__ == "__main__":
    sys.exit(main())
