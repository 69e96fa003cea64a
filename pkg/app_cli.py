"""
Command-line interface for the power-operations engine
"""

import argparse
import json
import logging
import sys

from core.adem_engine import AdemEngine
from core.completion import WindowSpec, completion_basis, structure_map
from core.config import STRATEGIES, EngineConfig
from core.equivariant_arith import (
    Permutation,
    Subgroup,
    double_coset_check,
    gamma_fixed_dim,
    gcd_binomials,
    in_family_T,
    op_pattern,
    weyl_group,
)
from core.errors import (
    FalsifiedHypothesisError,
    InputError,
    ParseError,
    StepBudgetExceeded,
)
from core.free_allowable import FreeAllowableAlgebra, GeneratorSet
from core.grammar import parse
from core.modp_arith import as_prime
from core.steenrod import steenrod_basis, steenrodize
from core.tate import parse_q_dims, tate_chart

COMMANDS = [
    'reduce', 'basis', 'completion', 'steenrodize', 'act',
    'family', 'weyl', 'doublecoset', 'oppattern', 'tatechart',
]


class _ArgumentParser(argparse.ArgumentParser):
    """Report bad arguments as input errors instead of exiting"""

    def error(self, message):
        raise InputError(message)


class PowerOpsCLI:
    """Dispatches one command and writes its result to stdout"""

    def __init__(self, args, out=None):
        self.args = args
        self.out = out or sys.stdout
        self.setup_logging()
        self.config = EngineConfig(
            prime=args.prime,
            side=args.side,
            step_budget=args.step_budget,
            cache_dir=args.cache_dir,
            strategy=args.strategy,
        )
        self.engine = AdemEngine.from_config(self.config)

    def setup_logging(self):
        """Log to stderr (and optionally a file); stdout carries results only"""
        level = logging.WARNING
        if self.args.verbose:
            level = logging.INFO
        if self.args.debug:
            level = logging.DEBUG
        handlers = [logging.StreamHandler(sys.stderr)]
        if self.args.log_file:
            handlers.append(logging.FileHandler(self.args.log_file))
        logging.basicConfig(
            level=level,
            format='%(asctime)s - %(levelname)s - %(message)s',
            handlers=handlers,
        )
        self.logger = logging.getLogger(__name__)

    # -- output ---------------------------------------------------------
    def emit(self, text=None, document=None):
        if self.args.json:
            print(json.dumps(document, indent=2, ensure_ascii=False), file=self.out)
        else:
            print(text, file=self.out)

    def emit_basis(self, items):
        labels = [str(item) for item in items]
        self.emit(
            "\n".join(labels) if labels else "(empty)",
            {"basis": labels, "count": len(labels)},
        )

    def require(self, value, flag):
        if value is None:
            raise InputError(f"{self.args.command} needs {flag}")
        return value

    def expression(self):
        return self.require(self.args.expression, "an expression argument")

    def generators(self):
        return GeneratorSet.from_strings(self.args.generator or [])

    def window(self):
        return WindowSpec(
            self.require(self.args.degree, "--degree"),
            self.args.excess_floor,
            self.args.length_cap,
            self.args.weight,
        )

    # -- commands -------------------------------------------------------
    def cmd_reduce(self):
        x = parse(self.expression(), self.config.prime, self.config.side)
        result = self.engine.reduce(x)
        self.logger.info("reduced %d terms to %d", len(x), len(result))
        self.emit(str(result), result.to_document())

    def cmd_steenrodize(self):
        x = parse(self.expression(), self.config.prime, "B")
        result = steenrodize(x, self.engine)
        self.emit(str(result), result.to_document())

    def cmd_basis(self):
        degree = self.require(self.args.degree, "--degree")
        if self.args.generator:
            algebra = FreeAllowableAlgebra(self.generators(), self.config.prime, self.engine)
            self.emit_basis(algebra.basis(degree, self.args.length_cap, self.args.product_cap))
        elif self.config.side == "A":
            self.emit_basis(steenrod_basis(degree, self.config.prime))
        else:
            self.emit_basis(completion_basis(self.window(), self.config.prime))

    def cmd_completion(self):
        source = self.window()
        if self.args.target_floor is None:
            self.emit_basis(completion_basis(source, self.config.prime))
            return
        target = WindowSpec(source.degree, self.args.target_floor, source.length_cap, source.weight)
        projection = structure_map(source, target, self.config.prime)
        lines = [
            f"{word} -> {image if image is not None else 0}"
            for word, image in sorted(projection.images.items())
        ]
        lines.append(f"surjective: {'yes' if projection.surjective else 'no'}")
        self.emit("\n".join(lines), projection.to_document())

    def cmd_act(self):
        op = parse(self.expression(), self.config.prime, "B")
        operand = self.require(self.args.operand, "an element argument")
        algebra = FreeAllowableAlgebra(self.generators(), self.config.prime, self.engine)
        result = algebra.apply_op(op, algebra.parse(operand))
        self.emit(str(result), result.to_document())

    def subgroup(self, n):
        if self.args.perm:
            return Subgroup(n, [Permutation.from_cycles(text, n) for text in self.args.perm])
        return Subgroup.cyclic(n)

    def cmd_family(self):
        if self.args.gcd_binomials is not None:
            value = gcd_binomials(self.args.gcd_binomials)
            self.emit(str(value), {"n": self.args.gcd_binomials, "gcd_binomials": value})
            return
        n = self.require(self.args.n, "-n or --gcd-binomials")
        H = self.subgroup(n)
        blocks = H.orbits()
        text = "\n".join([
            "orbits: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in blocks),
            f"gamma fixed dim: {gamma_fixed_dim(H)}",
            f"in family T: {'yes' if in_family_T(H) else 'no'}",
        ])
        self.emit(text, {
            "n": n,
            "order": H.order(),
            "orbits": [list(b) for b in blocks],
            "gamma_fixed_dim": gamma_fixed_dim(H),
            "in_family_T": in_family_T(H),
        })

    def cmd_weyl(self):
        n = self.require(self.args.n, "-n")
        W = weyl_group(n, self.subgroup(n))
        text = "\n".join([
            f"order: {W.order}",
            f"normalizer order: {W.normalizer.order()}",
            "representatives: " + ", ".join(str(x) for x in W.representatives),
        ])
        self.emit(text, W.to_document())

    def cmd_doublecoset(self):
        report = double_coset_check(self.config.prime)
        text = (
            f"p = {report.prime}: H ∩ xHx^-1 trivial for all {report.checked} x outside N(H); "
            f"{report.double_cosets} double cosets"
        )
        self.emit(text, report.to_document())

    def cmd_oppattern(self):
        k = self.require(self.args.k, "-k")
        value = op_pattern(self.config.prime, k)
        self.emit(str(value), {"prime": self.config.prime, "k": k, "dimension": value})

    def cmd_tatechart(self):
        q_dims = parse_q_dims(self.args.q_dims or "")
        window = tuple(self.require(self.args.window, "--window"))
        chart = tate_chart(q_dims, window, self.args.truncate, self.config.prime)
        self.emit("\n".join([chart.render()] + chart.legend), chart.to_document())

    def run(self):
        handler = getattr(self, f"cmd_{self.args.command}")
        handler()
        return 0


def build_parser():
    parser = _ArgumentParser(
        prog='app_cli.py',
        description='Power operations engine - Adem rewriting, free allowable algebras and friends',
    )
    parser.add_argument('command', choices=COMMANDS, help='Command to run')
    parser.add_argument('expression', nargs='?', help='Operation expression')
    parser.add_argument('operand', nargs='?', help='Algebra element (act)')
    parser.add_argument('-p', '--prime', type=int, default=2, help='Working prime')
    parser.add_argument('--side', choices=['B', 'A'], default='B', help='B = power operations, A = Steenrod')
    parser.add_argument('--degree', type=int, help='Degree of the enumeration')
    parser.add_argument('--excess-floor', type=int, default=0, help='Lowest excess in the window')
    parser.add_argument('--length-cap', type=int, default=2, help='Longest word in the window')
    parser.add_argument('--weight', type=int, help='Keep only words of this weight')
    parser.add_argument('--target-floor', type=int, help='Target floor of the structure map')
    parser.add_argument('--generator', action='append', metavar='NAME:DEGREE', help='Algebra generator (repeatable)')
    parser.add_argument('--product-cap', type=int, help='Most factors per monomial')
    parser.add_argument('--json', action='store_true', help='Machine-readable output')
    parser.add_argument('--step-budget', type=int, default=EngineConfig.step_budget, help='Rewrite steps per input term')
    parser.add_argument('--strategy', choices=STRATEGIES, default='leftmost', help='Which inadmissible pair goes first')
    parser.add_argument('--cache-dir', help='Persistent rewrite cache directory')
    parser.add_argument('-n', type=int, help='Degree of the symmetric group')
    parser.add_argument('-k', type=int, help='Degree for oppattern')
    parser.add_argument('--perm', action='append', metavar='CYCLES', help='Subgroup generator in cycle notation (repeatable)')
    parser.add_argument('--gcd-binomials', type=int, metavar='N', help='gcd of binom(N, k), 0 < k < N')
    parser.add_argument('--q-dims', help='Tate chart coefficients, e.g. "0:1,2:1"')
    parser.add_argument('--window', type=int, nargs=2, metavar=('S_MIN', 'S_MAX'), help='Tate chart columns')
    parser.add_argument('--truncate', type=int, metavar='M', help='Zero the Tate chart columns s < M')
    parser.add_argument('--verbose', action='store_true', help='Log progress')
    parser.add_argument('--debug', action='store_true', help='Log everything')
    parser.add_argument('--log-file', help='Also write the log to this file')
    return parser


def main(argv=None):
    """Run one command; returns the exit code"""
    try:
        args = build_parser().parse_intermixed_args(argv)
        as_prime(args.prime)
        return PowerOpsCLI(args).run()
    except ParseError as e:
        print(f"error: {e.reason}", file=sys.stderr)
        if e.text:
            print(e.caret(), file=sys.stderr)
        return 1
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (StepBudgetExceeded, FalsifiedHypothesisError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
