"""Lower-bound witness construction for rational-base sequences.

The pipeline turns a generator configuration into an explicit certificate
that the star discrepancy of the sequence cannot decay faster than
log^s N / N:

1. pick levels: for each coordinate, the admissible digit levels are the
   multiples of tau_i = lcm(ord(v_i mod u_i), ord(u_i mod prod of the
   other numerators)) at which the permutation's zero/one preimage gap
   takes the most popular value b_i; the m smallest such levels per
   coordinate form the level sets;
2. anchor box: the target box [0, y) has y_i with digit 1 exactly at the
   level-set positions.  It splits into m^s digit boxes, and membership of
   the n-th point in each digit box is a single congruence on n whose
   offset A_j from the anchor index w_m comes out of the residue calculus
   in `congruence`;
3. window average: over the window of Ū_m consecutive indices starting at
   w_m, the average local discrepancy of [0, y) has the exact closed form
     sum over boxes of (1/2 - A_j/Ū_j - 1/(2 Ū_j)),
   which a brute-force pass over actual points reproduces term by term;
4. bound: all A_j/Ū_j collapse to one fraction c/P (P = prod u_i) that the
   digit-interval exclusion guarantees is never 1/2, so the average grows
   like m^s/P and forces a large local discrepancy somewhere in the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .congruence import (
    BoxDigits,
    fractional_sum_mod1,
    joint_left_residue,
    residue_system,
)
from .discrepancy import GuardrailExceeded, guardrail_limit, prefix_discrepancies
from .inverse import PermutationSpec
from .sequence import GeneratorConfig, ensure_valid, point_set


def multiplicative_order(a: int, modulus: int) -> int:
    """Least q >= 1 with a^q = 1 mod modulus (modulus 1: trivially 1)."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if modulus == 1:
        return 1
    if math.gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not a unit mod {modulus}")
    order, x = 1, a % modulus
    while x != 1:
        x = x * a % modulus
        order += 1
    return order


def level_offset(spec: PermutationSpec, r: int) -> int:
    """Preimage gap of digits 0 and 1 under the level-r permutation.

    This is the digit offset of the interval left-adjacent to an interval
    whose level-r digit is 1, reduced mod u; identity permutations give
    u - 1 at every level.
    """
    inv = spec.inverse_at(r)
    return (inv[0] - inv[1]) % spec.u


def window_depth(n: int, u0: int, s: int) -> int:
    """Largest q with u0^(q s) <= n, minus one; the level-search horizon."""
    if n < u0**s:
        raise ValueError(f"need n >= {u0**s} for even one usable level")
    q = 1
    while u0 ** ((q + 1) * s) <= n:
        q += 1
    return q - 1


@dataclass(frozen=True)
class WitnessParams:
    """Chosen levels and digit offsets for one witness construction."""

    config: GeneratorConfig
    mode: str
    m: int
    b: tuple[int, ...]
    level_sets: tuple[tuple[int, ...], ...]
    taus: tuple[int, ...]
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    N: Optional[int] = None
    T: Optional[int] = None
    overridden: bool = False

    @property
    def s(self) -> int:
        return self.config.s

    @property
    def base_product(self) -> int:
        return math.prod(base.u for base in self.config.bases)

    @property
    def window_modulus(self) -> int:
        """Ū_m: product of u_i to the deepest level per coordinate."""
        total = 1
        for base, levels in zip(self.config.bases, self.level_sets):
            total *= base.u ** levels[-1]
        return total

    @property
    def anchors(self) -> tuple[Fraction, ...]:
        """y_i = sum over level-set positions k of u_i^-k."""
        out = []
        for base, levels in zip(self.config.bases, self.level_sets):
            out.append(sum((Fraction(1, base.u**k) for k in levels), Fraction(0)))
        return tuple(out)

    @property
    def box_volume(self) -> Fraction:
        vol = Fraction(1)
        for y in self.anchors:
            vol *= y
        return vol

    @property
    def truncation_floor(self) -> int:
        """Smallest truncation depth that resolves every box membership."""
        return max(levels[-1] for levels in self.level_sets)

    def anchor_digits(self) -> BoxDigits:
        """Digit strings of the anchors: 1 at level-set positions, else 0."""
        rows = []
        for levels in self.level_sets:
            row = [0] * levels[-1]
            for k in levels:
                row[k - 1] = 1
            rows.append(tuple(row))
        return BoxDigits(digits=tuple(rows))


def _select_levels(
    config: GeneratorConfig, taus: Sequence[int], horizon: int
) -> tuple[tuple[int, ...], list[dict[int, list[int]]]]:
    """Most-popular offset value per coordinate over levels <= horizon.

    Returns the winning offsets and, per coordinate, the full map from
    offset value to the levels (multiples of tau_i) where it occurs.
    """
    winners = []
    tallies: list[dict[int, list[int]]] = []
    for base, spec, tau in zip(config.bases, config.specs, taus):
        tally: dict[int, list[int]] = {}
        for r in range(tau, horizon + 1, tau):
            e = level_offset(spec, r)
            tally.setdefault(e, []).append(r)
        tallies.append(tally)
        if not tally:
            raise ValueError(
                f"no admissible levels <= {horizon} for base {base} "
                f"(tau = {tau}); increase the horizon"
            )
        best = max(tally, key=lambda v: (len(tally[v]), -v))
        winners.append(best)
    return tuple(winners), tallies


def derive_params(
    config: GeneratorConfig,
    N: Optional[int] = None,
    T: Optional[int] = None,
    m: Optional[int] = None,
    level_sets: Optional[Sequence[Sequence[int]]] = None,
    allow_override: bool = False,
) -> WitnessParams:
    """Derive witness parameters from one of four entry points.

    Exactly one of N (auto mode), T, m, or level_sets must be given.
    N fixes the horizon T from the coarsest base; T caps the level search
    directly; m asks for the m smallest usable levels per coordinate with
    no horizon; explicit level_sets are validated (multiples of tau_i,
    constant offset per coordinate) unless allow_override is set.
    """
    ensure_valid(config)
    if config.s < 2:
        raise ValueError("the witness construction needs at least two coordinates")
    given = [x is not None for x in (N, T, m, level_sets)]
    if sum(given) != 1:
        raise ValueError("give exactly one of N, T, m, level_sets")

    us = [base.u for base in config.bases]
    prod_u = math.prod(us)
    alphas = tuple(
        multiplicative_order(base.v % base.u, base.u) for base in config.bases
    )
    betas = tuple(multiplicative_order(u, prod_u // u) for u in us)
    taus = tuple(math.lcm(a, be) for a, be in zip(alphas, betas))

    if level_sets is not None:
        chosen = tuple(tuple(sorted(int(k) for k in ks)) for ks in level_sets)
        if len(chosen) != config.s:
            raise ValueError("one level set per coordinate required")
        sizes = {len(ks) for ks in chosen}
        if len(sizes) != 1 or 0 in sizes:
            raise ValueError("level sets must be nonempty and equally sized")
        offsets = []
        for spec, tau, ks in zip(config.specs, taus, chosen):
            if len(set(ks)) != len(ks) or ks[0] < 1:
                raise ValueError(f"level set {ks} must be distinct positive levels")
            es = [level_offset(spec, k) for k in ks]
            if not allow_override:
                bad_tau = [k for k in ks if k % tau]
                if bad_tau:
                    raise ValueError(
                        f"levels {bad_tau} break the tau = {tau} divisibility; "
                        "pass allow_override to proceed anyway"
                    )
                if len(set(es)) != 1:
                    raise ValueError(
                        f"offset values {es} vary across the level set; "
                        "pass allow_override to proceed anyway"
                    )
            offsets.append(es[-1])
        return WitnessParams(
            config=config,
            mode="manual",
            m=len(chosen[0]),
            b=tuple(offsets),
            level_sets=chosen,
            taus=taus,
            alphas=alphas,
            betas=betas,
            overridden=allow_override,
        )

    if m is not None:
        if m < 1:
            raise ValueError("m must be >= 1")
        # per coordinate: first offset value to accumulate m levels wins
        winners, level_map = [], []
        for spec, tau in zip(config.specs, taus):
            tally: dict[int, list[int]] = {}
            r = 0
            while True:
                r += tau
                e = level_offset(spec, r)
                tally.setdefault(e, []).append(r)
                if len(tally[e]) == m:
                    winners.append(e)
                    level_map.append(tuple(tally[e]))
                    break
                if r > 10**6:
                    raise ValueError("no offset value reaches m within 1e6 levels")
        return WitnessParams(
            config=config,
            mode="manual",
            m=m,
            b=tuple(winners),
            level_sets=tuple(level_map),
            taus=taus,
            alphas=alphas,
            betas=betas,
        )

    if N is not None:
        horizon = window_depth(N, max(us), config.s)
        mode = "auto"
    else:
        horizon = T
        if horizon is None or horizon < 1:
            raise ValueError("T must be >= 1")
        mode = "manual"
    b, tallies = _select_levels(config, taus, horizon)
    depth = min(len(tally[bi]) for bi, tally in zip(b, tallies))
    if depth < 1:
        raise ValueError(f"no usable levels up to horizon {horizon}")
    chosen = tuple(tuple(tally[bi][:depth]) for bi, tally in zip(b, tallies))
    return WitnessParams(
        config=config,
        mode=mode,
        m=depth,
        b=b,
        level_sets=chosen,
        taus=taus,
        alphas=alphas,
        betas=betas,
        N=N,
        T=horizon,
    )


@dataclass(frozen=True)
class BoxResidue:
    """Membership congruence for one digit box: n = w + offset mod modulus."""

    j: tuple[int, ...]
    modulus: int
    offset: int


@dataclass(frozen=True)
class BoxSystem:
    """Anchor index plus the per-box congruences of the witness window."""

    params: WitnessParams
    anchor_index: int
    boxes: tuple[BoxResidue, ...]


def build_box_system(params: WitnessParams) -> BoxSystem:
    """Resolve the anchor index w_m and every box offset A_j.

    The anchor index is the joint residue of the full anchor digit
    pattern.  Box (j_1 .. j_s) truncates each anchor string at its j_i-th
    level-set position; its offset is the joint left-neighbor shift of
    that prefix box, combined across coordinates by CRT.
    """
    config = params.config
    anchor = params.anchor_digits()
    w = residue_system(anchor, config).joint_residue
    boxes = []
    for j in _multi_indices(params.m, params.s):
        rows = []
        for i, levels in enumerate(params.level_sets):
            depth = levels[j[i] - 1]
            rows.append(anchor.digits[i][:depth])
        prefix = BoxDigits(digits=tuple(rows))
        system = residue_system(prefix, config)
        # joint_left_residue gives anchor-prefix residue + shift; A_j is the
        # shift alone, and the prefix residue agrees with w mod this modulus
        offset = (joint_left_residue(prefix, config) - system.joint_residue) % system.modulus
        boxes.append(BoxResidue(j=j, modulus=system.modulus, offset=offset))
    return BoxSystem(params=params, anchor_index=w, boxes=tuple(boxes))


def _multi_indices(m: int, s: int):
    idx = [1] * s
    while True:
        yield tuple(idx)
        pos = s - 1
        while pos >= 0 and idx[pos] == m:
            idx[pos] = 1
            pos -= 1
        if pos < 0:
            return
        idx[pos] += 1


def window_average_closed(system: BoxSystem) -> Fraction:
    """Exact mean local discrepancy over the window, from the congruences.

    For a congruence class with modulus Q hit with offset A, the count
    among the first M window indices averages to M/Q + 1/2 - A/Q - 1/(2Q)
    over M = 1 .. Ū_m; subtracting the volume M/Q and summing boxes gives
    the closed form.
    """
    total = Fraction(0)
    for box in system.boxes:
        total += (
            Fraction(1, 2)
            - Fraction(box.offset, box.modulus)
            - Fraction(1, 2 * box.modulus)
        )
    return total


def window_average_brute(
    system: BoxSystem,
    t: Optional[int] = None,
    guardrail: Optional[int] = None,
) -> Fraction:
    """The same mean, from actual points and coordinate comparisons only.

    Generates the Ū_m window points at truncation t (default: the deepest
    level in play, which is enough to resolve every membership), counts
    [0, y) membership by comparing coordinates against the anchors, and
    averages the running local discrepancy.  No residue arithmetic is
    involved, so agreement with `window_average_closed` checks the whole
    congruence pipeline.
    """
    params = system.params
    width = params.window_modulus
    limit = guardrail_limit(guardrail)
    if width > limit:
        raise GuardrailExceeded(
            f"window of {width} points exceeds the limit {limit}"
        )
    if t is None:
        t = params.truncation_floor
    if t < params.truncation_floor:
        raise ValueError(
            f"truncation {t} cannot resolve levels down to {params.truncation_floor}"
        )
    ps = point_set(params.config, system.anchor_index, width, t)
    anchors = params.anchors
    weighted = 0
    for offset, pt in enumerate(ps.points):
        if all(x < y for x, y in zip(pt, anchors)):
            weighted += width - offset
    return Fraction(weighted, width) - params.box_volume * Fraction(width + 1, 2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class WitnessReport:
    """Verdicts and certificate values for one witness construction."""

    params: WitnessParams
    system: BoxSystem
    c_over_p: Fraction
    alpha: Fraction
    checks: tuple[CheckResult, ...]
    certified_sum: Fraction
    certified_range: int
    threshold_base: int
    threshold_exponent: int
    constant_approx: float

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        p = self.params
        lines = [
            f"bases: {', '.join(str(b) for b in p.config.bases)}",
            f"mode: {p.mode}"
            + (f" (N = {p.N})" if p.N is not None else "")
            + (f" horizon T = {p.T}" if p.T is not None else ""),
            f"orders alpha = {p.alphas}, beta = {p.betas}, tau = {p.taus}",
            f"offsets b = {p.b}",
            "level sets: "
            + "; ".join(
                f"x{i + 1}: {list(ks)}" for i, ks in enumerate(p.level_sets)
            ),
            f"m = {p.m}, window modulus = {p.window_modulus}, "
            f"anchor index = {self.system.anchor_index}",
            f"box ratio c/P = {self.c_over_p}",
            f"window average alpha = {self.alpha} "
            f"(~ {float(self.alpha):.6g})",
            f"certificate: some M <= {self.certified_range} has "
            f"M * D*_M >= {self.certified_sum} (~ {float(self.certified_sum):.6g})",
            f"asymptotic constant ~ {self.constant_approx:.3e}, valid past "
            f"N0 = {self.threshold_base}^{self.threshold_exponent} "
            "(symbolic only; never evaluated)",
        ]
        for c in self.checks:
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        return "\n".join(lines)


def asymptotic_threshold(config: GeneratorConfig) -> tuple[int, int]:
    """(base, exponent) of the symbolic validity threshold u0^(4 s u0^(s+1) P).

    u0 is the largest numerator.  Even for two coordinates in bases 2 and
    3/2 the threshold is 3^1296, far beyond anything enumerable; it is
    carried around as (base, exponent) and never evaluated.
    """
    u0 = max(base.u for base in config.bases)
    s = config.s
    prod_u = math.prod(base.u for base in config.bases)
    return u0, 4 * s * u0 ** (s + 1) * prod_u


def growth_constant(config: GeneratorConfig) -> float:
    """Float value of the asymptotic constant 1/(2^(s+2) s^s P u0^(s^2+s) log^s u0)."""
    u0 = max(base.u for base in config.bases)
    s = config.s
    prod_u = math.prod(base.u for base in config.bases)
    return 1.0 / (
        2 ** (s + 2) * s**s * prod_u * u0 ** (s * s + s) * math.log(u0) ** s
    )


def verify_bound(params: WitnessParams) -> WitnessReport:
    """Assemble the certificate and run every structural verdict.

    Checks: level sets respect tau-divisibility with constant offsets,
    every box ratio A_j/Ū_j equals the common fraction c/P, the exclusion
    c/P != 1/2 holds, the closed form matches its structural expansion
    m^s (1/2 - c/P) - (prod y_i)/2, and (when m >= 2P) the headline
    bound |alpha| >= m^s / (4P).
    """
    config = params.config
    system = build_box_system(params)
    prod_u = params.base_product
    checks: list[CheckResult] = []

    ok = True
    details = []
    for i, (spec, tau, ks) in enumerate(
        zip(config.specs, params.taus, params.level_sets)
    ):
        bad = [k for k in ks if k % tau or level_offset(spec, k) != params.b[i]]
        if bad:
            ok = False
            details.append(f"x{i + 1}: {bad}")
    checks.append(
        CheckResult(
            "level-sets",
            ok,
            "all levels are tau-multiples with the chosen offset"
            if ok
            else "violations at " + "; ".join(details),
        )
    )

    c_over_p = sum(
        (Fraction(bi, base.u) for bi, base in zip(params.b, config.bases)),
        Fraction(0),
    ) % 1
    ratios = {Fraction(box.offset, box.modulus) % 1 for box in system.boxes}
    constant = ratios == {c_over_p}
    checks.append(
        CheckResult(
            "constant-box-ratio",
            constant,
            f"every A_j/U_j = {c_over_p}"
            if constant
            else f"ratios vary: {sorted(ratios)} vs expected {c_over_p}",
        )
    )

    try:
        excl = fractional_sum_mod1(config.bases, params.taus, params.b)
        excl_ok = excl != Fraction(1, 2)
        excl_detail = f"sum = {excl} != 1/2"
    except ValueError as err:
        excl, excl_ok, excl_detail = None, False, f"not applicable: {err}"
    checks.append(CheckResult("exclusion", excl_ok, excl_detail))

    alpha = window_average_closed(system)
    structural = (
        Fraction(params.m**params.s) * (Fraction(1, 2) - c_over_p)
        - params.box_volume / 2
    )
    match = not constant or alpha == structural
    checks.append(
        CheckResult(
            "closed-form-structure",
            match,
            f"alpha = m^s (1/2 - c/P) - vol/2 = {alpha}"
            if match
            else f"alpha = {alpha} but structure gives {structural}",
        )
    )

    if params.m >= 2 * prod_u:
        target = Fraction(params.m**params.s, 4 * prod_u)
        big = abs(alpha) >= target
        checks.append(
            CheckResult(
                "headline-bound",
                big,
                f"|alpha| >= m^s/(4P) = {target}"
                if big
                else f"|alpha| = {abs(alpha)} < m^s/(4P) = {target}",
            )
        )
    else:
        checks.append(
            CheckResult(
                "headline-bound",
                True,
                f"m = {params.m} < 2P = {2 * prod_u}: asymptotic regime "
                "not entered, closed form stands on its own",
            )
        )

    base0, exponent = asymptotic_threshold(config)
    return WitnessReport(
        params=params,
        system=system,
        c_over_p=c_over_p,
        alpha=alpha,
        checks=tuple(checks),
        certified_sum=abs(alpha) / 2,
        certified_range=2 * params.window_modulus,
        threshold_base=base0,
        threshold_exponent=exponent,
        constant_approx=growth_constant(config),
    )


@dataclass(frozen=True)
class GrowthRow:
    N: int
    dstar: Fraction
    ratio: float
    running_max: float


def growth_scan(
    config: GeneratorConfig,
    n_max: int,
    n_min: int = 2,
    stride: int = 1,
    t: Optional[int] = None,
    guardrail: Optional[int] = None,
) -> list[GrowthRow]:
    """Exact D* of every prefix, reported as N D* / log^s N.

    Points are truncated once at depth t (default: the smallest per-base
    depth with u_i^t >= n_max) and prefixes N = n_min, n_min + stride, ...
    are measured exactly.  The running maximum of the ratio traces the
    growth constant; the asymptotic threshold itself is astronomically
    large and only ever reported symbolically.
    """
    ensure_valid(config)
    if n_max < n_min or n_min < 1:
        raise ValueError("need 1 <= n_min <= n_max")
    if t is None:
        t = max(
            next(q for q in range(1, 64) if base.u**q >= n_max)
            for base in config.bases
        )
    ps = point_set(config, 0, n_max, t)
    s = config.s
    ds = prefix_discrepancies(ps, guardrail=guardrail)
    rows: list[GrowthRow] = []
    running = 0.0
    for n in range(n_min, n_max + 1, stride):
        d = ds[n - 1]
        ratio = n * float(d) / math.log(n) ** s if n > 1 else math.inf
        running = max(running, ratio)
        rows.append(GrowthRow(N=n, dstar=d, ratio=ratio, running_max=running))
    return rows
