"""Exact Lebesgue measures for sublevel sets of shift compositions.

Iterated and generalized shifts over a constant base q are affine with
positive slope on each cylinder, so any finite composition is a piecewise
linear map with exact rational branches.  The measure of {z : map(z) < x}
is then a finite union of intervals computed branch by branch, and the
measure of {z : A(z) < B(z)} follows from the affine difference on a common
refinement.  A seeded digit-sampling Monte Carlo estimator provides an
independent stochastic cross-check, with a branch budget deciding when the
exact path gives way to it.

All interval endpoints are rationals; intervals are half-open [a, b), so
single boundary points (the dual representations of the same number) never
affect a measure.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

__all__ = [
    "BudgetExceededError",
    "IntervalUnion",
    "Branch",
    "PiecewiseLinearMap",
    "FamilyKind",
    "SetFamilySpec",
    "MonteCarloResult",
    "ScanRow",
    "plm_identity",
    "plm_constant",
    "plm_single_deletion",
    "plm_iter_shift",
    "plm_generalized_chain",
    "sublevel_set",
    "sublevel_measure",
    "comparison_measure",
    "monte_carlo_measure",
    "gk_scan",
    "DEFAULT_BRANCH_BUDGET",
    "DEFAULT_ITER_LIMIT",
]

DEFAULT_BRANCH_BUDGET = 10**6
DEFAULT_ITER_LIMIT = 8

_Z99 = 2.5758293035489004  # two-sided 99% normal quantile


class BudgetExceededError(RuntimeError):
    """Raised when an exact computation would exceed the branch budget."""


class IntervalUnion:
    """A finite union of disjoint half-open rational intervals in [0, 1)."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[Fraction, Fraction]]):
        self.pairs = self._normalize(pairs)

    @staticmethod
    def _normalize(pairs) -> tuple[tuple[Fraction, Fraction], ...]:
        cleaned = []
        for a, b in pairs:
            a, b = Fraction(a), Fraction(b)
            if not (0 <= a and b <= 1):
                raise ValueError("intervals must lie within [0, 1]")
            if a < b:
                cleaned.append((a, b))
        cleaned.sort()
        merged: list[list[Fraction]] = []
        for a, b in cleaned:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return tuple((a, b) for a, b in merged)

    @property
    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.pairs), Fraction(0))

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.pairs + other.pairs)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        for a, b in self.pairs:
            for c, d in other.pairs:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    out.append((lo, hi))
        return IntervalUnion(out)

    def complement(self) -> "IntervalUnion":
        """Complement within [0, 1)."""
        out = []
        cursor = Fraction(0)
        for a, b in self.pairs:
            if cursor < a:
                out.append((cursor, a))
            cursor = b
        if cursor < 1:
            out.append((cursor, Fraction(1)))
        return IntervalUnion(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalUnion) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        inner = ", ".join(f"[{a}, {b})" for a, b in self.pairs)
        return f"IntervalUnion({inner})"


@dataclass(frozen=True)
class Branch:
    """Affine piece z -> slope * z + intercept on the domain [lo, hi)."""

    lo: Fraction
    hi: Fraction
    slope: Fraction
    intercept: Fraction


class PiecewiseLinearMap:
    """An exact piecewise affine map whose branch domains partition [0, 1)."""

    __slots__ = ("branches", "_los")

    def __init__(self, branches: Sequence[Branch]):
        branches = tuple(sorted(branches, key=lambda br: br.lo))
        if not branches:
            raise ValueError("a map needs at least one branch")
        if branches[0].lo != 0 or branches[-1].hi != 1:
            raise ValueError("branches must cover [0, 1)")
        for left, right in zip(branches, branches[1:]):
            if left.hi != right.lo:
                raise ValueError("branch domains must tile [0, 1) exactly")
        for br in branches:
            if br.lo >= br.hi:
                raise ValueError("empty branch domain")
        self.branches = branches
        self._los = [br.lo for br in branches]

    def __len__(self) -> int:
        return len(self.branches)

    def apply(self, z: Fraction) -> Fraction:
        z = Fraction(z)
        if not 0 <= z < 1:
            raise ValueError("argument must lie in [0, 1)")
        br = self.branches[bisect_right(self._los, z) - 1]
        return br.slope * z + br.intercept

    def compose(self, then: "PiecewiseLinearMap", budget: int = DEFAULT_BRANCH_BUDGET) -> "PiecewiseLinearMap":
        """The map z -> then(self(z)).

        Supported for nonnegative slopes (shift compositions always have
        positive slopes; constant branches arise only from thresholds).
        """
        out: list[Branch] = []
        for br in self.branches:
            if br.slope < 0:
                raise ValueError("composition with negative slopes is not supported")
            if br.slope == 0:
                value = then.apply(br.intercept)
                out.append(Branch(br.lo, br.hi, Fraction(0), value))
                continue
            for nxt in then.branches:
                zlo = max(br.lo, (nxt.lo - br.intercept) / br.slope)
                zhi = min(br.hi, (nxt.hi - br.intercept) / br.slope)
                if zlo < zhi:
                    out.append(
                        Branch(
                            zlo,
                            zhi,
                            br.slope * nxt.slope,
                            nxt.slope * br.intercept + nxt.intercept,
                        )
                    )
            if len(out) > budget:
                raise BudgetExceededError(
                    f"composition exceeds branch budget {budget}"
                )
        return PiecewiseLinearMap(out)

    def subtract(self, other: "PiecewiseLinearMap") -> "PiecewiseLinearMap":
        """Pointwise difference self - other on the common refinement."""
        points = sorted({br.lo for br in self.branches} | {br.lo for br in other.branches} | {Fraction(1)})
        out = []
        for lo, hi in zip(points, points[1:]):
            a = self.branches[bisect_right(self._los, lo) - 1]
            b = other.branches[bisect_right(other._los, lo) - 1]
            out.append(Branch(lo, hi, a.slope - b.slope, a.intercept - b.intercept))
        return PiecewiseLinearMap(out)


def plm_identity() -> PiecewiseLinearMap:
    return PiecewiseLinearMap([Branch(Fraction(0), Fraction(1), Fraction(1), Fraction(0))])


def plm_constant(c) -> PiecewiseLinearMap:
    return PiecewiseLinearMap([Branch(Fraction(0), Fraction(1), Fraction(0), Fraction(c))])


def plm_iter_shift(
    q: int,
    n: int,
    limit: int = DEFAULT_ITER_LIMIT,
    budget: int = DEFAULT_BRANCH_BUDGET,
) -> PiecewiseLinearMap:
    """The n-fold digit drop: z -> q^n z - j on the j-th rank-n cylinder."""
    if q < 2:
        raise ValueError("q must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise BudgetExceededError(f"iterate count {n} over limit {limit}")
    count = q**n
    if count > budget:
        raise BudgetExceededError(f"{count} branches exceed budget {budget}")
    scale = Fraction(1, count)
    return PiecewiseLinearMap(
        [Branch(j * scale, (j + 1) * scale, Fraction(count), Fraction(-j)) for j in range(count)]
    )


def plm_single_deletion(q: int, m: int, budget: int = DEFAULT_BRANCH_BUDGET) -> PiecewiseLinearMap:
    """Deletion of digit position m as a map: affine on each rank-m cylinder.

    On the cylinder with digits c_1..c_m the map is
    z -> q z - (q - 1) * (c_1/q + .. + c_{m-1}/q^{m-1}) - c_m / q^{m-1}.
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    count = q**m
    if count > budget:
        raise BudgetExceededError(f"{count} branches exceed budget {budget}")
    scale = Fraction(1, count)
    qm1 = q ** (m - 1)
    out = []
    for j in range(count):
        head, c_m = divmod(j, q)
        intercept = Fraction(-((q - 1) * head + c_m), qm1)
        out.append(Branch(j * scale, (j + 1) * scale, Fraction(q), intercept))
    return PiecewiseLinearMap(out)


def plm_generalized_chain(
    q: int,
    indices: Sequence[int],
    budget: int = DEFAULT_BRANCH_BUDGET,
) -> PiecewiseLinearMap:
    """Sequential digit deletions at ``indices`` (first entry applied first)."""
    current = plm_identity()
    for m in indices:
        current = current.compose(plm_single_deletion(q, m, budget), budget)
    return current


def sublevel_set(plm: PiecewiseLinearMap, x) -> IntervalUnion:
    """{z : plm(z) < x} as an exact interval union.

    Boundary points where plm(z) = x are measure zero and may fall on either
    side of a half-open endpoint.
    """
    x = Fraction(x)
    pairs = []
    for br in plm.branches:
        if br.slope > 0:
            t = (x - br.intercept) / br.slope
            hi = min(br.hi, t)
            if br.lo < hi:
                pairs.append((br.lo, hi))
        elif br.slope == 0:
            if br.intercept < x:
                pairs.append((br.lo, br.hi))
        else:
            t = (x - br.intercept) / br.slope
            lo = max(br.lo, t)
            if lo < br.hi:
                pairs.append((lo, br.hi))
    return IntervalUnion(pairs)


def sublevel_measure(plm: PiecewiseLinearMap, x) -> Fraction:
    if not 0 <= Fraction(x) <= 1:
        raise ValueError("threshold must lie in [0, 1]")
    return sublevel_set(plm, x).measure


def comparison_measure(a: PiecewiseLinearMap, b: PiecewiseLinearMap) -> Fraction:
    """Exact measure of {z : a(z) < b(z)}."""
    return sublevel_set(a.subtract(b), Fraction(0)).measure


# --- set families ---------------------------------------------------------


class FamilyKind(Enum):
    ITER_SHIFT = "itershift"
    GEN_CHAIN = "genchain"
    SCHEDULE_CHAIN = "schedulechain"
    COMPARE_ITER = "compareiter"


@dataclass(frozen=True)
class SetFamilySpec:
    """One concrete shift-composition set, {z : op(z) < x} or {z : A(z) < B(z)}."""

    kind: FamilyKind
    q: int
    n: int = 0
    indices: tuple[int, ...] = ()
    a: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if self.kind is FamilyKind.ITER_SHIFT and self.n < 1:
            raise ValueError("iterate count must be >= 1")
        if self.kind in (FamilyKind.GEN_CHAIN, FamilyKind.SCHEDULE_CHAIN):
            if not self.indices or any(i < 1 for i in self.indices):
                raise ValueError("chain indices must be >= 1 and nonempty")
        if self.kind is FamilyKind.COMPARE_ITER and (self.a < 1 or self.b < 1):
            raise ValueError("compared iterates must be >= 1")

    @classmethod
    def iter_shift(cls, q: int, n: int) -> "SetFamilySpec":
        return cls(FamilyKind.ITER_SHIFT, q, n=n)

    @classmethod
    def gen_chain(cls, q: int, indices: Sequence[int]) -> "SetFamilySpec":
        return cls(FamilyKind.GEN_CHAIN, q, indices=tuple(indices))

    @classmethod
    def schedule_chain(cls, q: int, table: Sequence[int], count: int) -> "SetFamilySpec":
        if count < 1 or count > len(table):
            raise ValueError("count must address the lookup table")
        return cls(FamilyKind.SCHEDULE_CHAIN, q, indices=tuple(table[:count]))

    @classmethod
    def compare_iter(cls, q: int, a: int, b: int) -> "SetFamilySpec":
        return cls(FamilyKind.COMPARE_ITER, q, a=a, b=b)

    @property
    def param(self) -> str:
        if self.kind is FamilyKind.ITER_SHIFT:
            return str(self.n)
        if self.kind is FamilyKind.COMPARE_ITER:
            return f"{self.a}:{self.b}"
        return str(len(self.indices))

    def deleted_positions(self, horizon: int) -> list[int]:
        """Original digit positions removed by the composition, within horizon."""
        if self.kind is FamilyKind.ITER_SHIFT:
            return list(range(1, self.n + 1))
        remaining = list(range(1, horizon + 1))
        deleted = []
        for j in self.indices:
            if j > len(remaining):
                raise ValueError("horizon too small for the chain")
            deleted.append(remaining.pop(j - 1))
        return sorted(deleted)


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    halfwidth: float
    samples: int
    hits: int
    indeterminate: int

    def __iter__(self):
        yield self.estimate
        yield self.halfwidth


def _halfwidth(hits: int, samples: int) -> float:
    phat = hits / samples
    return _Z99 * math.sqrt(max(phat * (1.0 - phat), 0.0) / samples)


def _mc_block_threshold(
    q: int,
    x: Fraction,
    samples: int,
    rng: random.Random,
    draw_block: Callable[[random.Random], int],
    block_len: int,
    cap: int = 128,
) -> tuple[int, int]:
    """Count samples with composition value < x, refining digits on demand.

    ``draw_block`` returns the integer formed by the first ``block_len``
    digits of the composed value; the value then lies in
    [block, block + 1) / q^block_len and one extra digit per round shrinks
    the bracket until the comparison decides or the depth cap marks the
    sample indeterminate.
    """
    xn, xd = x.numerator, x.denominator
    hits = indet = 0
    q_block = q**block_len
    for _ in range(samples):
        block = draw_block(rng)
        scale = q_block
        depth = block_len
        while True:
            if (block + 1) * xd <= xn * scale:
                hits += 1
                break
            if block * xd >= xn * scale:
                break
            if depth >= cap:
                indet += 1
                break
            block = block * q + rng.randrange(q)
            scale *= q
            depth += 1
    return hits, indet


def monte_carlo_measure(
    spec: SetFamilySpec,
    x,
    samples: int,
    seed: int,
    guard: int = 16,
) -> MonteCarloResult:
    """Seeded uniform digit-sampling estimate of the set's measure.

    Digits of z are drawn uniformly; the composed value is bracketed from the
    surviving digits and compared against the threshold exactly, drawing more
    digits only when the bracket straddles it.  Deterministic for a fixed
    seed.  Undecidable samples past the depth cap are counted separately.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    q = spec.q

    if spec.kind is FamilyKind.COMPARE_ITER:
        hits = indet = 0
        a, b, cap = spec.a, spec.b, 256
        for _ in range(samples):
            digits: list[int] = []
            i = 1
            while True:
                need = max(a, b) + i
                while len(digits) < need:
                    digits.append(rng.randrange(q))
                da, db = digits[a + i - 1], digits[b + i - 1]
                if da != db:
                    hits += da < db
                    break
                i += 1
                if i > cap:
                    indet += 1
                    break
        return MonteCarloResult(hits / samples, _halfwidth(hits, samples), samples, hits, indet)

    x = Fraction(x)
    if spec.kind is FamilyKind.ITER_SHIFT:
        span = q ** (spec.n + guard)
        q_guard = q**guard
        block_len = guard

        def draw_block(r: random.Random) -> int:
            return r.randrange(span) % q_guard

    else:
        sim_horizon = max(spec.indices) + len(spec.indices) + guard
        deleted = set(spec.deleted_positions(sim_horizon))
        # the initial block must reach past the last deletion so that every
        # later refinement digit belongs to a surviving position
        top = max(deleted) + guard
        kept = [pos for pos in range(1, top + 1) if pos not in deleted]
        block_len = len(kept)
        powers = [q ** (top - pos) for pos in kept]
        span = q**top

        def draw_block(r: random.Random) -> int:
            u = r.randrange(span)
            block = 0
            for power in powers:
                block = block * q + (u // power) % q
            return block

    hits, indet = _mc_block_threshold(q, x, samples, rng, draw_block, block_len)
    return MonteCarloResult(hits / samples, _halfwidth(hits, samples), samples, hits, indet)


# --- experiment tables ------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    family: str
    param: str
    x: Optional[Fraction]
    measure: Fraction
    method: str
    samples: int = 0
    halfwidth: float = 0.0
    indeterminate: int = 0


def _exact_map(spec: SetFamilySpec, budget: int, iter_limit: int) -> PiecewiseLinearMap:
    if spec.kind is FamilyKind.ITER_SHIFT:
        return plm_iter_shift(spec.q, spec.n, limit=iter_limit, budget=budget)
    return plm_generalized_chain(spec.q, spec.indices, budget=budget)


def gk_scan(
    specs: Sequence[SetFamilySpec],
    x_grid: Sequence[Fraction],
    budget: int = DEFAULT_BRANCH_BUDGET,
    iter_limit: int = DEFAULT_ITER_LIMIT,
    samples: int = 10**5,
    seed: int = 0,
    allow_fallback: bool = True,
    log: Optional[Callable[[str], None]] = None,
) -> list[ScanRow]:
    """Measure table over a family of shift-composition sets.

    Each spec is computed exactly when its branch count fits the budget and
    otherwise falls back to Monte Carlo (per-row derived seeds keep the
    output deterministic).  Threshold families emit one row per grid value;
    comparison families emit a single row with empty threshold columns.
    No limits are extrapolated: rows report finite compositions only.
    """
    rows: list[ScanRow] = []
    counter = 0
    for spec in specs:
        family = spec.kind.value
        if spec.kind is FamilyKind.COMPARE_ITER:
            counter += 1
            try:
                a_map = plm_iter_shift(spec.q, spec.a, limit=iter_limit, budget=budget)
                b_map = plm_iter_shift(spec.q, spec.b, limit=iter_limit, budget=budget)
                value = comparison_measure(a_map, b_map)
                rows.append(ScanRow(family, spec.param, None, value, "exact"))
            except BudgetExceededError:
                if not allow_fallback:
                    raise
                if log:
                    log(f"{family} {spec.param}: budget exceeded, Monte Carlo fallback")
                mc = monte_carlo_measure(spec, Fraction(0), samples, seed + counter)
                rows.append(
                    ScanRow(
                        family,
                        spec.param,
                        None,
                        Fraction(mc.hits, mc.samples),
                        "mc",
                        mc.samples,
                        mc.halfwidth,
                        mc.indeterminate,
                    )
                )
            continue
        try:
            plm = _exact_map(spec, budget, iter_limit)
        except BudgetExceededError:
            if not allow_fallback:
                raise
            if log:
                log(f"{family} {spec.param}: budget exceeded, Monte Carlo fallback")
            plm = None
        for x in x_grid:
            counter += 1
            if plm is not None:
                rows.append(ScanRow(family, spec.param, Fraction(x), sublevel_measure(plm, x), "exact"))
            else:
                mc = monte_carlo_measure(spec, Fraction(x), samples, seed + counter)
                rows.append(
                    ScanRow(
                        family,
                        spec.param,
                        Fraction(x),
                        Fraction(mc.hits, mc.samples),
                        "mc",
                        mc.samples,
                        mc.halfwidth,
                        mc.indeterminate,
                    )
                )
    return rows


CSV_HEADER = "family,param,x_num,x_den,measure_num,measure_den,method,samples,halfwidth"


def rows_to_csv(rows: Sequence[ScanRow]) -> str:
    """Render scan rows in the fixed CSV schema (exact rows leave the
    sampling columns empty)."""
    lines = [CSV_HEADER]
    for row in rows:
        x_num = str(row.x.numerator) if row.x is not None else ""
        x_den = str(row.x.denominator) if row.x is not None else ""
        if row.method == "exact":
            samples = ""
            halfwidth = ""
        else:
            samples = str(row.samples)
            halfwidth = f"{row.halfwidth:.6g}"
        lines.append(
            ",".join(
                [
                    row.family,
                    row.param,
                    x_num,
                    x_den,
                    str(row.measure.numerator),
                    str(row.measure.denominator),
                    row.method,
                    samples,
                    halfwidth,
                ]
            )
        )
    return "\n".join(lines) + "\n"
