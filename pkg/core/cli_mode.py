"""
CLI mode implementation for braidbook.
Provides the subcommand front end: braid expressions in, invariants,
FDTC estimates and verification tables (or JSON) out.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Optional, TextIO

from core import __version__
from core.braid_core import (
    BraidWord,
    closure_component_count,
    cycle_type,
    exponent_sum,
    flatten,
    is_positive_word,
    markov_destabilize,
    parse_expr,
    parse_word,
    render,
    self_linking_number,
)
from core.burau import (
    alexander_polynomial,
    burau_at_minus1,
    burau_word,
    h1_group_structure,
    knot_determinant,
)
from core.config import AppConfig, OutputFormat
from core.errors import BraidbookError, PreconditionError, UsageError
from core.orderings import bh_fdtc, dehornoy_floor, handle_reduce
from core.topology import (
    FdtcParams,
    open_book_report,
    stabilization_ledger,
    theorem12_report,
    verify_closed_forms,
    verify_prop41,
)
from utils.formatting import format_estimate, format_fields, format_table
from utils.serialization import (
    closed_form_to_json,
    dumps,
    estimate_to_json,
    laurent_to_json,
    ledger_to_json,
    matrix_to_json,
    page_to_json,
    prop41_row_to_json,
    report_to_json,
    sigma_class_to_json,
    theorem_to_json,
    word_to_json,
)

logger = logging.getLogger(__name__)

MARKOV_MOVES = ("stab+", "stab-", "destab")
BURAU_MODES = ("symbolic", "at-minus-one")


class CommandType(Enum):
    """Types of CLI commands."""
    STRUCTURE = "structure"
    REPRESENTATION = "representation"
    ORDERING = "ordering"
    VERIFY = "verify"


@dataclass
class Command:
    """A CLI command definition."""
    name: str
    description: str
    usage: str
    handler: Callable[[], int]
    type: CommandType
    needs_expression: bool = True


@dataclass
class CliConfig:
    """Resolved options of one invocation: defaults < config file < flags."""
    command: str
    strands: Optional[int] = None
    expression: Optional[str] = None
    max_power: Optional[int] = None
    denominator_bound: Optional[int] = None
    step_limit: int = 10 ** 6
    output_format: str = OutputFormat.TABLE.value
    k_max: int = 10
    burau_mode: str = "symbolic"
    bh: bool = False
    markov_move: Optional[str] = None
    colors_enabled: bool = True
    table_k_cap: int = 50
    workers: int = 1
    alexander_k_max: int = 3
    fdtc_k_max: int = 1

    @classmethod
    def from_args(cls, args: argparse.Namespace, app: Optional[AppConfig] = None) -> "CliConfig":
        app = app or AppConfig()

        def pick(name: str, default: Any) -> Any:
            value = getattr(args, name, None)
            return default if value is None else value

        return cls(
            command=args.command,
            strands=pick('strands', None),
            expression=pick('expression', None),
            max_power=pick('max_power', app.fdtc.max_power),
            denominator_bound=pick('denominator_bound', app.fdtc.denominator_bound),
            step_limit=pick('step_limit', app.ordering.step_limit),
            output_format=pick('output_format', app.output.format),
            k_max=pick('k_max', app.verify.k_max),
            burau_mode=pick('burau_mode', "symbolic"),
            bh=pick('bh', False),
            markov_move=pick('move', None),
            colors_enabled=app.output.colors_enabled and not pick('no_color', False),
            table_k_cap=app.output.table_k_cap,
            workers=pick('workers', app.verify.workers if args.command == "verify"
                         else app.fdtc.workers),
            alexander_k_max=app.verify.alexander_k_max,
            fdtc_k_max=app.verify.fdtc_k_max,
        )

    def validate(self, needs_expression: bool = True) -> None:
        """Check every option range; raises UsageError."""
        if needs_expression:
            if self.strands is None:
                raise UsageError("-n/--strands is required for this command")
            if not self.expression or not self.expression.strip():
                raise UsageError("a braid expression is required for this command")
        checks = [
            ("--strands", self.strands, 2),
            ("--max-power", self.max_power, 1),
            ("--denom-bound", self.denominator_bound, 1),
            ("--step-limit", self.step_limit, 1),
            ("--k-max", self.k_max, 1),
            ("--workers", self.workers, 1),
            ("table k cap", self.table_k_cap, 1),
        ]
        for flag, value, minimum in checks:
            if value is not None and (not isinstance(value, int) or value < minimum):
                raise UsageError(f"{flag} must be an integer >= {minimum}, got {value!r}")
        if self.output_format not in {f.value for f in OutputFormat}:
            raise UsageError(f"unknown output format {self.output_format!r}")
        if self.burau_mode not in BURAU_MODES:
            raise UsageError(f"unknown burau mode {self.burau_mode!r}")
        if self.markov_move is not None and self.markov_move not in MARKOV_MOVES:
            raise UsageError(f"unknown markov move {self.markov_move!r}")

    @property
    def as_json(self) -> bool:
        return self.output_format == OutputFormat.JSON.value

    def fdtc_params(self) -> FdtcParams:
        return FdtcParams(self.max_power, self.denominator_bound, self.step_limit, self.workers)


class BraidCLI:
    """
    Command dispatcher for braidbook.

    Features:
    - Braid expression parsing and canonical rendering
    - Burau matrices, Alexander polynomials and knot determinants
    - Dehornoy floors and FDTC estimates
    - Markov moves with their page ledger
    - The verification sweep with a pass/fail exit code
    """

    def __init__(self, config: CliConfig, out: Optional[TextIO] = None,
                 err: Optional[TextIO] = None):
        self.config = config
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.commands: Dict[str, Command] = {}
        self._init_commands()
        self.colors_enabled = config.colors_enabled and self._detect_color_support()

    def _detect_color_support(self) -> bool:
        """Detect if terminal supports colors."""
        if hasattr(self.out, 'isatty') and self.out.isatty():
            return os.environ.get("TERM") != "dumb"
        return False

    def _init_commands(self) -> None:
        """Initialize all CLI commands."""
        self._register_command(Command(
            name="parse",
            description="Parse an expression and print its word",
            usage='parse -n N "EXPR"',
            handler=self._cmd_parse,
            type=CommandType.STRUCTURE,
        ))
        self._register_command(Command(
            name="invariants",
            description="Structural, Burau and branched cover invariants",
            usage='invariants -n N "EXPR"',
            handler=self._cmd_invariants,
            type=CommandType.REPRESENTATION,
        ))
        self._register_command(Command(
            name="burau",
            description="Reduced Burau matrix, symbolic or at t = -1",
            usage='burau -n N "EXPR" [--symbolic|--at-minus-one]',
            handler=self._cmd_burau,
            type=CommandType.REPRESENTATION,
        ))
        self._register_command(Command(
            name="alexander",
            description="Alexander polynomial of the closure",
            usage='alexander -n N "EXPR"',
            handler=self._cmd_alexander,
            type=CommandType.REPRESENTATION,
        ))
        self._register_command(Command(
            name="fdtc",
            description="Fractional Dehn twist coefficient estimate",
            usage='fdtc -n N "EXPR" [--max-power P] [--denom-bound D] [--bh]',
            handler=self._cmd_fdtc,
            type=CommandType.ORDERING,
        ))
        self._register_command(Command(
            name="floor",
            description="Dehornoy floor and sigma class",
            usage='floor -n N "EXPR"',
            handler=self._cmd_floor,
            type=CommandType.ORDERING,
        ))
        self._register_command(Command(
            name="markov",
            description="Markov stabilization or destabilization",
            usage='markov <stab+|stab-|destab> -n N "EXPR"',
            handler=self._cmd_markov,
            type=CommandType.STRUCTURE,
        ))
        self._register_command(Command(
            name="verify",
            description="H_1 order formula, closed forms and the genus/FDTC theorem",
            usage="verify [--k-max K]",
            handler=self._cmd_verify,
            type=CommandType.VERIFY,
            needs_expression=False,
        ))

    def _register_command(self, command: Command) -> None:
        """Register a command."""
        self.commands[command.name] = command

    # Entry point

    def run(self) -> int:
        """Validate the configuration, run the command and return its exit code."""
        command = self.commands.get(self.config.command)
        if command is None:
            self._print_error(f"Unknown command: {self.config.command}")
            return UsageError.exit_code
        try:
            self.config.validate(command.needs_expression)
            return command.handler()
        except BraidbookError as e:
            logger.debug("%s failed", command.name, exc_info=True)
            self._print_error(str(e))
            return e.exit_code

    # Helpers

    def _word(self) -> BraidWord:
        return parse_word(self.config.expression, self.config.strands)

    def _emit(self, text: str) -> None:
        print(text, file=self.out)

    def _emit_json(self, data: Any) -> None:
        self._emit(dumps(data))

    def _print_error(self, msg: str) -> None:
        print(self._error(msg), file=self.err)

    # Commands

    def _cmd_parse(self) -> int:
        expr = parse_expr(self.config.expression, self.config.strands)
        w = flatten(expr, self.config.strands)
        if self.config.as_json:
            self._emit_json({"expression": render(expr), "word": word_to_json(w)})
        else:
            self._emit(format_fields([
                ("expression", render(expr)),
                ("strands", w.strands),
                ("word", str(w)),
                ("length", len(w)),
            ]))
        return 0

    def _cmd_invariants(self) -> int:
        w = self._word()
        n = w.strands
        components = closure_component_count(w)
        knot = components == 1
        alexander = alexander_polynomial(w) if knot else None
        determinant = None
        if knot:
            determinant = knot_determinant(w) if n % 2 else abs(alexander.evaluate(-1))
        odd_knot = knot and n % 2 == 1
        report = open_book_report(w, self.config.fdtc_params())
        page, order = report.page, report.h1_order
        group = h1_group_structure(w) if odd_knot else None

        if self.config.as_json:
            self._emit_json({
                "word": word_to_json(w),
                "exponent_sum": exponent_sum(w),
                "self_linking": self_linking_number(w),
                "cycle_type": cycle_type(w),
                "components": components,
                "positive": is_positive_word(w),
                "alexander": laurent_to_json(alexander) if alexander is not None else None,
                "determinant": str(determinant) if determinant is not None else None,
                "page": page_to_json(page),
                "h1_order": str(order) if order is not None else None,
                "derived_group_structure": group,
                "open_book": report_to_json(report),
            })
            return 0
        self._emit(format_fields([
            ("strands", n),
            ("length", len(w)),
            ("exponent sum", exponent_sum(w)),
            ("self-linking", self_linking_number(w)),
            ("cycle type", cycle_type(w)),
            ("components", components),
            ("positive", is_positive_word(w)),
            ("alexander", alexander.to_text() if alexander is not None else None),
            ("determinant", determinant),
            ("page", f"genus {page.genus}, {page.boundary_components} boundary, "
                     f"chi {page.euler_characteristic}"),
            ("h1 order", order),
            ("derived group structure (extension)", group),
            ("fdtc", format_estimate(report.fdtc_braid)),
            ("fdtc branched cover", format_estimate(report.fdtc_upstairs)),
            ("stein witness", report.stein_witness),
            ("non-destabilizable", report.non_destabilizable),
        ]))
        if not knot:
            self._emit(self._info(f"closure has {components} components; knot invariants skipped"))
        return 0

    def _cmd_burau(self) -> int:
        w = self._word()
        symbolic = self.config.burau_mode == "symbolic"
        matrix = burau_word(w) if symbolic else burau_at_minus1(w)
        if self.config.as_json:
            self._emit_json(matrix_to_json(matrix))
        else:
            self._emit(str(matrix))
        return 0

    def _cmd_alexander(self) -> int:
        w = self._word()
        poly = alexander_polynomial(w)
        determinant = abs(poly.evaluate(-1))
        if self.config.as_json:
            self._emit_json({"alexander": laurent_to_json(poly), "determinant": str(determinant),
                             "breadth": poly.degree_span()})
        else:
            self._emit(format_fields([("alexander", poly.to_text()),
                                      ("determinant", determinant),
                                      ("breadth", poly.degree_span())]))
        return 0

    def _cmd_fdtc(self) -> int:
        n = self.config.strands
        if self.config.bh and n % 2 == 0:
            raise PreconditionError(
                f"halving to the branched cover requires an odd strand count, got {n}")
        w = self._word()
        params = self.config.fdtc_params().resolve(n)
        est = params.estimate(w)
        upstairs = bh_fdtc(est, n) if n % 2 else None
        if self.config.as_json:
            self._emit_json({
                "estimate": estimate_to_json(est),
                "bh": estimate_to_json(upstairs),
                "max_power": params.max_power,
                "denominator_bound": params.denominator_bound,
            })
        else:
            self._emit(format_fields([
                ("interval", f"[{est.lower}, {est.upper}]"),
                ("pinned", est.pinned),
                ("powers examined", est.power_used),
                ("denominator bound", params.denominator_bound),
                ("branched cover", format_estimate(upstairs)),
            ]))
            if not est.is_pinned:
                self._emit(self._info("no unique value within the denominator bound"))
        return 0

    def _cmd_floor(self) -> int:
        w = self._word()
        value = dehornoy_floor(w, self.config.step_limit)
        reduced, cls = handle_reduce(w, self.config.step_limit)
        if self.config.as_json:
            self._emit_json({"floor": value, "sigma_class": sigma_class_to_json(cls),
                             "handle_free": word_to_json(reduced)})
        else:
            self._emit(format_fields([("floor", value), ("sigma class", str(cls)),
                                      ("handle-free word", str(reduced))]))
        return 0

    def _cmd_markov(self) -> int:
        w = self._word()
        move = self.config.markov_move
        if move == "destab":
            result = markov_destabilize(w)
            if self.config.as_json:
                self._emit_json({"applicable": result is not None,
                                 "word": word_to_json(result) if result is not None else None})
            elif result is None:
                self._emit(self._info("destabilization not applicable"))
            else:
                self._emit(format_fields([("word", str(result)), ("strands", result.strands)]))
            return 0
        ledger = stabilization_ledger(w, 1 if move == "stab+" else -1)
        if self.config.as_json:
            self._emit_json(ledger_to_json(ledger))
        else:
            self._emit(format_fields([
                ("word", str(ledger.word)),
                ("strands", ledger.word.strands),
                ("page before", f"genus {ledger.before.genus}, "
                                f"{ledger.before.boundary_components} boundary"),
                ("page after", f"genus {ledger.after.genus}, "
                               f"{ledger.after.boundary_components} boundary"),
                ("euler characteristic drop", ledger.euler_drop),
                ("open book stabilization", ledger.open_book_sign),
            ]))
        return 0

    def _cmd_verify(self) -> int:
        k_max = self.config.k_max
        if not self.config.as_json and k_max > self.config.table_k_cap:
            logger.warning("table output caps k_max at %d (requested %d); use --format json",
                           self.config.table_k_cap, k_max)
            k_max = self.config.table_k_cap
        rows = verify_prop41(k_max, self.config.workers)
        closed = verify_closed_forms()
        fdtc_params = self.config.fdtc_params()
        theorems = [
            theorem12_report(
                k,
                fdtc_params if k <= self.config.fdtc_k_max else None,
                with_alexander=k <= self.config.alexander_k_max,
            )
            for k in range(0, k_max + 1)
        ]
        passed = (all(r.passed for r in rows) and all(c.matches for c in closed)
                  and all(t.passed for t in theorems))

        if self.config.as_json:
            self._emit_json({
                "prop41": [prop41_row_to_json(r) for r in rows],
                "closed_forms": [closed_form_to_json(c) for c in closed],
                "theorem12": [theorem_to_json(t) for t in theorems],
                "passed": passed,
            })
        else:
            self._emit(format_table(
                ["k", "4k^2+4k-1", "det beta(2k+1,2k+3)", "det beta(2k+3,2k+1)",
                 "closed form", "pass"],
                [[r.k, r.predicted, r.determinant, r.determinant_swapped,
                  r.closed_form_match, r.passed] for r in rows]))
            self._emit("")
            matched = sum(c.matches for c in closed)
            self._emit(f"closed forms: {matched}/{len(closed)} match")
            self._emit("")
            self._emit(format_table(
                ["k", "genus", "det", "alexander equal", "self-linking equal",
                 "fdtc upstairs", "expected", "pass"],
                [[t.k, f"{t.larger.page.genus} vs {t.smaller.page.genus}",
                  f"{t.larger.determinant} / {t.smaller.determinant}",
                  t.alexander_equal, t.self_linking_equal,
                  format_estimate(t.larger.fdtc_upstairs), t.fdtc_predicted, t.passed]
                 for t in theorems]))
            self._emit("")
            self._emit(self._success("all checks passed") if passed
                       else self._error("some checks failed"))
        return 0 if passed else 1

    # Output styling

    def _success(self, msg: str) -> str:
        """Format success message."""
        if self.colors_enabled:
            return f"\033[32m✓ {msg}\033[0m"
        return f"✓ {msg}"

    def _error(self, msg: str) -> str:
        """Format error message."""
        if self.colors_enabled:
            return f"\033[31m✗ Error: {msg}\033[0m"
        return f"✗ Error: {msg}"

    def _info(self, msg: str) -> str:
        """Format info message."""
        if self.colors_enabled:
            return f"\033[34mℹ {msg}\033[0m"
        return f"ℹ {msg}"


def _common_options() -> argparse.ArgumentParser:
    """Options accepted both before and after the subcommand."""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument('-n', '--strands', type=int, help='Number of strands')
    common.add_argument('--format', dest='output_format',
                        choices=[f.value for f in OutputFormat], help='Output format')
    common.add_argument('--step-limit', type=int, help='Handle reduction step limit')
    common.add_argument('--max-power', type=int, help='Highest power used for FDTC')
    common.add_argument('--denom-bound', dest='denominator_bound', type=int,
                        help='Denominator bound for pinning FDTC values')
    common.add_argument('--k-max', type=int, help='Largest k for the verification sweep')
    common.add_argument('--workers', type=int, help='Worker processes for the sweep')
    common.add_argument('--no-color', action='store_true', help='Disable colored output')
    common.add_argument('-v', '--verbose', action='count', help='Increase log verbosity')
    common.add_argument('--config', metavar='DIR', help='Configuration directory')
    return common


def create_parser() -> argparse.ArgumentParser:
    """Create argument parser for CLI."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='braidbook',
        description='braidbook - braid, Burau and branched cover invariants',
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Expressions:
  s1 s2^-1        generators and inverses      d, dR    delta and its reverse
  D2              the full twist               beta(n,m) the family (d dR)^(m-1) d
  (EXPR)^k        powers, k may be negative

Examples:
  braidbook invariants -n 3 "beta(3,3)"
  braidbook fdtc -n 5 "beta(5,3)" --denom-bound 5
  braidbook markov stab+ -n 3 "d"
  braidbook verify --k-max 15 --format json
'''
    )
    parser.add_argument('--version', action='version', version=f'braidbook v{__version__}')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    for name, help_text in (("parse", "parse an expression"),
                            ("invariants", "invariants of a braid and its closure"),
                            ("alexander", "Alexander polynomial of the closure"),
                            ("floor", "Dehornoy floor")):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('expression', help='Braid expression')

    burau = subparsers.add_parser('burau', parents=[common], help='reduced Burau matrix')
    burau.add_argument('expression', help='Braid expression')
    mode = burau.add_mutually_exclusive_group()
    mode.add_argument('--symbolic', dest='burau_mode', action='store_const', const='symbolic',
                      help='Laurent polynomial entries (default)')
    mode.add_argument('--at-minus-one', dest='burau_mode', action='store_const',
                      const='at-minus-one', help='integer matrix f_* at t = -1')

    fdtc_parser = subparsers.add_parser('fdtc', parents=[common],
                                        help='fractional Dehn twist coefficient')
    fdtc_parser.add_argument('expression', help='Braid expression')
    fdtc_parser.add_argument('--bh', action='store_true',
                             help='require the branched cover value (odd n)')

    markov = subparsers.add_parser('markov', parents=[common], help='Markov moves')
    markov.add_argument('move', choices=MARKOV_MOVES, help='Move to apply')
    markov.add_argument('expression', help='Braid expression')

    subparsers.add_parser('verify', parents=[common], help='run the verification sweep')
    return parser


__all__ = ['BraidCLI', 'CliConfig', 'Command', 'CommandType', 'create_parser']
