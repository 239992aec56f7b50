"""Command-line front end.

Subcommands: expand (digit expansions), invert (radical inverses), points
(CSV point sets), disc (exact star discrepancy), witness (lower-bound
certificates), growth (N D* / log^s N scans), verify-lemmas (self-checks
of the residue calculus against brute enumeration).

Exit codes: 0 success, 1 a verification check failed, 2 bad configuration
or arguments, 3 work-limit guardrail exceeded, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from ._kernels import BACKEND
from .congruence import (
    BoxDigits,
    fractional_sum_mod1,
    interval_residue,
    left_neighbor_offset,
    residue_system,
)
from .discrepancy import GuardrailExceeded, star_discrepancy
from .inverse import PermutationSpec, radical_inverse_truncated
from .numeration import RationalBase, expand_digits, reconstruct
from .sequence import (
    ConfigError,
    GeneratorConfig,
    point_set,
    read_points_csv,
    write_points_csv,
)
from .witness import (
    derive_params,
    growth_scan,
    multiplicative_order,
    verify_bound,
    window_average_brute,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_CONFIG = 2
EXIT_GUARDRAIL = 3
EXIT_IO = 4


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE",
                        help="generator configuration as JSON")
    parser.add_argument("--bases", metavar="LIST",
                        help='comma-separated bases, e.g. "2,3/2"')
    parser.add_argument("--reversal", action="store_true",
                        help="use digit-reversal permutations with --bases")


def _build_config(args: argparse.Namespace) -> GeneratorConfig:
    if getattr(args, "config", None):
        return GeneratorConfig.load(args.config)
    if getattr(args, "bases", None):
        bases = tuple(
            RationalBase.parse(tok.strip()) for tok in args.bases.split(",")
        )
        if getattr(args, "reversal", False):
            return GeneratorConfig(
                bases=bases,
                specs=tuple(PermutationSpec.reversal(b.u) for b in bases),
            )
        return GeneratorConfig.identity(bases)
    raise ConfigError("provide --config FILE or --bases LIST")


def _auto_depth(config: GeneratorConfig, horizon: int) -> int:
    """Smallest t with u_i^t >= horizon for every coordinate."""
    depth = 1
    for base in config.bases:
        q = 1
        while base.u**q < horizon:
            q += 1
        depth = max(depth, q)
    return depth


def cmd_expand(args: argparse.Namespace) -> int:
    base = RationalBase.parse(args.base)
    state = expand_digits(args.z, base, args.digits)
    line = ",".join(str(d) for d in state.digits)
    idx = state.termination_index
    if idx is not None:
        line += f" (terminated at {idx})"
    else:
        line += f" (no termination within {args.digits} digits)"
    print(line)
    if args.remainders:
        print("remainders: " + ",".join(str(z) for z in state.remainders))
    if args.check:
        for j in range(args.digits + 1):
            back = reconstruct(state.digits[:j], state.remainder(j), base)
            if back != args.z:
                print(f"reconstruction FAILED at prefix {j}: {back}",
                      file=sys.stderr)
                return EXIT_CHECK
        print(f"reconstruction ok for all prefixes up to {args.digits}")
    return EXIT_OK


def cmd_invert(args: argparse.Namespace) -> int:
    base = RationalBase.parse(args.base)
    if args.perm_file:
        with open(args.perm_file, encoding="utf-8") as fh:
            spec = PermutationSpec.from_json(json.load(fh))
    elif args.reversal:
        spec = PermutationSpec.reversal(base.u)
    else:
        spec = PermutationSpec.identity(base.u)
    value = radical_inverse_truncated(args.n, base, spec, args.t)
    if args.float:
        print(repr(float(value)))
    else:
        print(f"{value.numerator}/{value.denominator} (~{float(value):.12g})")
    return EXIT_OK


def cmd_points(args: argparse.Namespace) -> int:
    config = _build_config(args)
    t = args.t if args.t else _auto_depth(config, args.start + args.count)
    ps = point_set(config, args.start, args.count, t)
    if args.out == "-":
        write_points_csv(ps, sys.stdout, float_mode=args.float)
    else:
        write_points_csv(ps, args.out, float_mode=args.float)
        print(f"wrote {len(ps)} points (t = {t}) to {args.out}")
    return EXIT_OK


def cmd_disc(args: argparse.Namespace) -> int:
    if args.points:
        ps = read_points_csv(args.points)
    else:
        config = _build_config(args)
        t = args.t if args.t else _auto_depth(config, args.start + args.count)
        ps = point_set(config, args.start, args.count, t)
    d = star_discrepancy(ps, guardrail=args.guardrail)
    print(f"N = {len(ps)}, s = {ps.dim}, backend = {BACKEND}")
    print(f"D* = {d.numerator}/{d.denominator} (~{float(d):.12g})")
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    config = _build_config(args)
    levels = json.loads(args.levels) if args.levels else None
    params = derive_params(
        config,
        N=args.N,
        T=args.T,
        m=args.m,
        level_sets=levels,
        allow_override=args.override,
    )
    report = verify_bound(params)
    print(report.render())
    status = EXIT_OK if report.ok else EXIT_CHECK
    if args.brute:
        brute = window_average_brute(report.system, t=args.t,
                                     guardrail=args.guardrail)
        if brute == report.alpha:
            print(f"brute-force window average = {brute} (matches closed form)")
        else:
            print(f"brute-force window average = {brute} "
                  f"(MISMATCH vs closed form {report.alpha})")
            status = EXIT_CHECK
    return status


def cmd_growth(args: argparse.Namespace) -> int:
    config = _build_config(args)
    rows = growth_scan(
        config,
        n_max=args.n_max,
        n_min=args.n_min,
        stride=args.stride,
        t=args.t,
        guardrail=args.guardrail,
    )
    report = verify_bound(derive_params(config, m=1)) if config.s >= 2 else None
    print(f"backend = {BACKEND}; ratio = N D* / log^{config.s} N")
    header = f"{'N':>6}  {'D*':>12}  {'ratio':>10}  {'running max':>11}"
    print(header)
    for row in rows:
        cells = (
            f"{row.N:>6}  {float(row.dstar):>12.6g}  "
            f"{row.ratio:>10.6g}  {row.running_max:>11.6g}"
        )
        if args.exact:
            cells += f"  {row.dstar.numerator}/{row.dstar.denominator}"
        print(cells)
    if report is not None:
        print(
            f"asymptotic regime: constant ~ {report.constant_approx:.3e} "
            f"beyond N0 = {report.threshold_base}^{report.threshold_exponent} "
            "(symbolic only; this scan is diagnostic, not a test of the limit)"
        )
    return EXIT_OK


def _battery(deep: bool):
    """Self-check items: (name, ok, detail) triples, cheap enough for a CLI."""
    span = 60 if deep else 25
    results = []

    bases = [RationalBase(3, 2), RationalBase(4, 3), RationalBase(5, 2),
             RationalBase(2, 1)]
    bad = 0
    for base in bases:
        for z in range(-span, span + 1):
            state = expand_digits(z, base, 5)
            for j in range(6):
                if reconstruct(state.digits[:j], state.remainder(j), base) != z:
                    bad += 1
    results.append(("reconstruction-identity", bad == 0,
                    f"z in [-{span}, {span}], 4 bases, prefixes to 5"
                    + ("" if bad == 0 else f"; {bad} failures")))

    bad = 0
    for base in bases[:3]:
        digits = {
            z: tuple(expand_digits(z, base, 3).digits)
            for z in range(-span, span + 1)
        }
        for z1 in range(-span, span + 1):
            for z2 in range(z1, span + 1):
                for j in (1, 2, 3):
                    same = digits[z1][:j] == digits[z2][:j]
                    cong = (z1 - z2) % base.u**j == 0
                    if same != cong:
                        bad += 1
    results.append(("prefix-vs-congruence", bad == 0,
                    f"pairs in [-{span}, {span}]^2, 3 bases, prefixes to 3"
                    + ("" if bad == 0 else f"; {bad} failures")))

    bad = total = 0
    single_cases = [
        (RationalBase(3, 2), PermutationSpec.identity(3)),
        (RationalBase(3, 2), PermutationSpec.reversal(3)),
        (RationalBase(5, 2), PermutationSpec.identity(5)),
    ]
    for base, spec in single_cases:
        for k in (1, 2):
            mod = base.u**k
            for pattern in range(mod):
                digs = []
                rest = pattern
                for _ in range(k):
                    digs.append(rest % base.u)
                    rest //= base.u
                box = BoxDigits(digits=(tuple(digs),))
                res = interval_residue(0, box, spec, base)
                left = box.prefix_value(0, base)
                for n in range(2 * mod):
                    x = radical_inverse_truncated(n, base, spec, k + 1)
                    inside = left <= x < left + Fraction(1, mod)
                    total += 1
                    if inside != (n % mod == res):
                        bad += 1
    results.append(("interval-membership", bad == 0,
                    f"{total} point/interval pairs"
                    + ("" if bad == 0 else f"; {bad} failures")))

    config = GeneratorConfig.identity((RationalBase(2, 1), RationalBase(3, 2)))
    bad = total = 0
    for k1, k2 in ((1, 1), (2, 1), (1, 2)):
        for p1 in range(2**k1):
            for p2 in range(3**k2):
                digs1 = tuple((p1 >> b) & 1 for b in range(k1))
                d2, rest = [], p2
                for _ in range(k2):
                    d2.append(rest % 3)
                    rest //= 3
                box = BoxDigits(digits=(digs1, tuple(d2)))
                system = residue_system(box, config)
                lows = [box.prefix_value(i, base)
                        for i, base in enumerate(config.bases)]
                widths = [Fraction(1, m) for m in system.moduli]
                for n in range(2 * system.modulus):
                    pt = [
                        radical_inverse_truncated(n, base, spec, max(k1, k2) + 1)
                        for base, spec in zip(config.bases, config.specs)
                    ]
                    inside = all(
                        lo <= x < lo + w for lo, x, w in zip(lows, pt, widths)
                    )
                    total += 1
                    if inside != (n % system.modulus == system.joint_residue):
                        bad += 1
    results.append(("joint-membership", bad == 0,
                    f"{total} point/box pairs in bases 2 and 3/2"
                    + ("" if bad == 0 else f"; {bad} failures")))

    bad = total = 0
    base, spec = RationalBase(3, 2), PermutationSpec.identity(3)
    for pattern in range(9):
        digs = (pattern % 3, pattern // 3)
        if digs[-1] == 0:
            continue
        box = BoxDigits(digits=(digs,))
        _, res = left_neighbor_offset(0, box, spec, base)
        left = box.prefix_value(0, base) - Fraction(1, 9)
        for n in range(18):
            x = radical_inverse_truncated(n, base, spec, 3)
            inside = left <= x < left + Fraction(1, 9)
            total += 1
            if inside != (n % 9 == res):
                bad += 1
    results.append(("left-neighbor-membership", bad == 0,
                    f"{total} point/interval pairs at level 2"
                    + ("" if bad == 0 else f"; {bad} failures")))

    systems = [
        ("2,3/2", (RationalBase(2, 1), RationalBase(3, 2))),
        ("3/2,4/3", (RationalBase(3, 2), RationalBase(4, 3))),
        ("3/2,4/3,5/4", (RationalBase(3, 2), RationalBase(4, 3),
                         RationalBase(5, 4))),
        ("2,3,5/2", (RationalBase(2, 1), RationalBase(3, 1),
                     RationalBase(5, 2))),
    ]
    bad = total = 0
    for _, bs in systems:
        taus = []
        prod_u = 1
        for b in bs:
            prod_u *= b.u
        for b in bs:
            alpha = multiplicative_order(b.v % b.u, b.u)
            beta = multiplicative_order(b.u, prod_u // b.u)
            taus.append(math.lcm(alpha, beta))
        combos = [[]]
        for b in bs:
            combos = [c + [off] for c in combos for off in range(1, b.u)]
        for offsets in combos:
            total += 1
            if fractional_sum_mod1(bs, taus, offsets) == Fraction(1, 2):
                bad += 1
    results.append(("half-exclusion", bad == 0,
                    f"{total} offset vectors over 4 base systems"
                    + ("" if bad == 0 else f"; {bad} hit 1/2")))

    m = 3 if deep else 2
    params = derive_params(config, m=m)
    report = verify_bound(params)
    brute = window_average_brute(report.system)
    agree = report.ok and brute == report.alpha
    results.append(("witness-window-average", agree,
                    f"bases 2 and 3/2, m = {m}: closed {report.alpha} "
                    f"vs brute {brute}"))
    return results


def cmd_verify_lemmas(args: argparse.Namespace) -> int:
    results = _battery(args.deep)
    failures = 0
    for name, ok, detail in results:
        marker = "ok  " if ok else "FAIL"
        print(f"{marker} {name}: {detail}")
        if not ok:
            failures += 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbqmc",
        description="rational-base sequences, exact discrepancy, and "
                    "lower-bound witnesses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="digit expansion of an integer")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--base", required=True, metavar="U/V")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--remainders", action="store_true",
                   help="also print the remainder sequence")
    p.add_argument("--check", action="store_true",
                   help="verify the reconstruction identity for every prefix")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("invert", help="truncated permuted radical inverse")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", required=True, metavar="U/V")
    p.add_argument("--t", type=int, default=8, help="truncation level")
    p.add_argument("--perm-file", metavar="FILE",
                   help="permutation spec as JSON")
    p.add_argument("--reversal", action="store_true")
    p.add_argument("--float", action="store_true")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("points", help="write a point set as CSV")
    _add_config_args(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--t", type=int, default=0,
                   help="truncation level (default: resolves count points)")
    p.add_argument("--out", default="-", metavar="FILE")
    p.add_argument("--float", action="store_true",
                   help="decimal cells instead of exact p/q")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("disc", help="exact star discrepancy")
    _add_config_args(p)
    p.add_argument("--points", metavar="FILE", help="point-set CSV to measure")
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--guardrail", type=int, default=None,
                   help="work limit (also: RB_QMC_GUARDRAIL)")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("witness", help="lower-bound witness certificate")
    _add_config_args(p)
    p.add_argument("--N", type=int, default=None,
                   help="derive parameters from a sequence length")
    p.add_argument("--T", type=int, default=None, help="level horizon")
    p.add_argument("--m", type=int, default=None, help="levels per coordinate")
    p.add_argument("--levels", metavar="JSON",
                   help='explicit level sets, e.g. "[[2,4],[1,2]]"')
    p.add_argument("--override", action="store_true",
                   help="accept level sets that break the usual constraints")
    p.add_argument("--brute", action="store_true",
                   help="cross-check the window average by brute force")
    p.add_argument("--t", type=int, default=None,
                   help="truncation level for --brute")
    p.add_argument("--guardrail", type=int, default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("growth", help="N D* / log^s N over all prefixes")
    _add_config_args(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--exact", action="store_true",
                   help="append exact D* fractions")
    p.add_argument("--guardrail", type=int, default=None)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("verify-lemmas",
                       help="self-check the residue calculus by enumeration")
    p.add_argument("--deep", action="store_true", help="wider ranges")
    p.set_defaults(func=cmd_verify_lemmas)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardrailExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_GUARDRAIL
    except (ConfigError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
