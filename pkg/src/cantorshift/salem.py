"""Generalized Salem functions built from a weight set and a digit reading order.

Given weights p_0 .. p_{q-1} in (-1, 1) summing to 1, with cumulative sums
beta_i strictly inside (0, 1) for i != 0, and a reading order (n_k) that is a
finite rearrangement of the positive integers, the function

    g(x) = beta_{d(n_1)} + sum_{k >= 2} beta_{d(n_k)} * prod_{j < k} p_{d(n_j)}

maps [0, 1] to [0, 1] (d(t) is the t-th digit of x in base q).  For equal
weights 1/q and the natural reading order this is the identity; unequal
positive weights give the classical strictly increasing singular function,
rearranged orders give functions without monotonicity intervals.

Evaluation here is exact: zeros tails terminate the series (beta_0 = 0) and
max tails sum geometrically to the running product, so every representable
expansion has a closed-form rational image.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .expansions import (
    BaseSpec,
    Cylinder,
    DigitExpansion,
    Tail,
    dual_representation,
    expansion_of,
)
from .shifts import generalized_shift, make_schedule

__all__ = [
    "DEFAULT_TOL",
    "WeightSet",
    "IndexSequence",
    "SalemFunction",
    "DistributionSpec",
    "Monotonicity",
    "ContinuityResult",
    "series_depth",
    "evaluate",
    "evaluate_float",
    "first_terms",
    "chain_expansion",
    "chain_value",
    "residual",
    "increment_product",
    "increment_endpoints",
    "increment_via_evaluate",
    "cylinder_increment",
    "integral_closed_form",
    "classify_monotonicity",
    "continuity_at",
    "distribution_function",
    "parse_function_spec",
    "format_function_spec",
]

DEFAULT_TOL = 1e-12

RationalLike = Union[Fraction, int, str]


@dataclass(frozen=True)
class WeightSet:
    """Digit weights p_0 .. p_{q-1} with their cumulative sums.

    Constraints: each p_i in (-1, 1), sum p_i = 1, and every cumulative sum
    beta_i = p_0 + .. + p_{i-1} strictly between 0 and 1 for i >= 1
    (beta_0 = 0).  Negative weights are allowed as long as the cumulative
    sums stay inside (0, 1); that forces p_0 > 0 and p_{q-1} > 0.
    """

    q: int
    p: tuple[Fraction, ...]
    beta: tuple[Fraction, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("q must be >= 2")
        p = tuple(Fraction(v) for v in self.p)
        if len(p) != self.q:
            raise ValueError(f"expected {self.q} weights, got {len(p)}")
        if any(not -1 < v < 1 for v in p):
            raise ValueError("weights must lie in (-1, 1)")
        if sum(p) != 1:
            raise ValueError("weights must sum to 1 exactly")
        beta = [Fraction(0)]
        for v in p[:-1]:
            beta.append(beta[-1] + v)
        if any(not 0 < b < 1 for b in beta[1:]):
            raise ValueError("cumulative sums must lie strictly in (0, 1)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "beta", tuple(beta))

    @property
    def max_abs(self) -> Fraction:
        return max(abs(v) for v in self.p)


@dataclass(frozen=True)
class IndexSequence:
    """Reading order n_1, n_2, ...: a permutation of {1..N} then the identity.

    Trailing fixed points of the permutation are stripped, so the identity
    order is always the empty prefix.
    """

    prefix: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        prefix = tuple(int(n) for n in self.prefix)
        if sorted(prefix) != list(range(1, len(prefix) + 1)):
            raise ValueError("prefix must be a permutation of 1..N")
        while prefix and prefix[-1] == len(prefix):
            prefix = prefix[:-1]
        steps = make_schedule(prefix).steps if prefix else ()
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "_steps", steps)

    @classmethod
    def identity(cls) -> "IndexSequence":
        return cls(())

    @property
    def size(self) -> int:
        return len(self.prefix)

    @property
    def is_identity(self) -> bool:
        return not self.prefix

    def n_at(self, k: int) -> int:
        if k < 1:
            raise ValueError("k must be >= 1")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return k

    def bar_at(self, k: int) -> int:
        """Single-deletion index for the k-th reading position."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if k <= len(self.prefix):
            return self._steps[k - 1]
        return 1

    def displaced(self) -> tuple[int, ...]:
        """Positions k with n_k != k (always finitely many here)."""
        return tuple(k for k, n in enumerate(self.prefix, start=1) if n != k)

    def induced_after(self, k: int) -> "IndexSequence":
        """Reading order of the remaining digits once the first k are deleted.

        Position n_{k+j} of the original stream sits at index
        n_{k+j} - #(deleted below it) among the survivors; the induced order
        is again a finite rearrangement.
        """
        if k < 0:
            raise ValueError("k must be >= 0")
        if k == 0:
            return self
        deleted = sorted(self.n_at(j) for j in range(1, k + 1))
        bound = max(self.size, deleted[-1]) - k
        values = []
        for j in range(1, bound + 1):
            n = self.n_at(k + j)
            values.append(n - bisect_left(deleted, n))
        return IndexSequence(tuple(values))


@dataclass(frozen=True)
class SalemFunction:
    weights: WeightSet
    seq: IndexSequence = IndexSequence()


@dataclass(frozen=True)
class DistributionSpec:
    """A Salem function whose weights are nonnegative, so it is a CDF."""

    weights: WeightSet
    seq: IndexSequence = IndexSequence()

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.weights.p):
            raise ValueError("distribution weights must be >= 0")


def series_depth(weights: WeightSet, tol: float) -> int:
    """Series length whose remainder bound (max|p|)^K / (1 - max|p|) < tol."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    pmax = float(weights.max_abs)
    if pmax == 0.0:
        return 1
    return max(1, math.ceil(math.log(tol) / math.log(pmax)))


def _check_base(f_q: int, e: DigitExpansion) -> None:
    if not (e.base.is_constant and e.base.tail_value == f_q):
        raise ValueError(f"expansion must use constant base {f_q}")


def evaluate(f: SalemFunction, e: DigitExpansion, tol: float = DEFAULT_TOL) -> Fraction:
    """Exact value of the function at an expansion.

    Terms beyond max(reading-prefix length, digit-prefix length) vanish for a
    zeros tail (beta_0 = 0) and sum geometrically to the running product for
    a max tail (beta_{q-1} = 1 - p_{q-1}), so the series is closed form.
    ``tol`` is validated for interface parity but never loosens the result.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    _check_base(f.weights.q, e)
    w = f.weights
    top = max(f.seq.size, len(e.prefix))
    total = Fraction(0)
    prod = Fraction(1)
    for k in range(1, top + 1):
        d = e.digit_at(f.seq.n_at(k))
        if w.beta[d]:
            total += w.beta[d] * prod
        prod *= w.p[d]
        if prod == 0 and e.tail is Tail.ZEROS:
            break
    if e.tail is Tail.MAX:
        total += prod
    return total


def evaluate_float(f: SalemFunction, digits: Sequence[int], terms: Optional[int] = None) -> float:
    """Float evaluation from a plain digit list (position k = digits[k-1]).

    Fast path for dense grids; digits beyond the list are treated as zero.
    """
    w = f.weights
    beta = [float(b) for b in w.beta]
    p = [float(v) for v in w.p]
    top = max(f.seq.size, len(digits)) if terms is None else terms
    total = 0.0
    prod = 1.0
    for k in range(1, top + 1):
        n = f.seq.n_at(k)
        d = digits[n - 1] if n <= len(digits) else 0
        total += beta[d] * prod
        prod *= p[d]
        if prod == 0.0:
            break
    return total


def first_terms(f: SalemFunction, e: DigitExpansion, count: int) -> list[Fraction]:
    """The leading ``count`` series terms, for inspection."""
    if count < 1:
        raise ValueError("count must be >= 1")
    _check_base(f.weights.q, e)
    w = f.weights
    terms = []
    prod = Fraction(1)
    for k in range(1, count + 1):
        d = e.digit_at(f.seq.n_at(k))
        terms.append(w.beta[d] * prod)
        prod *= w.p[d]
    return terms


def chain_expansion(f: SalemFunction, e: DigitExpansion, k: int) -> DigitExpansion:
    """The expansion after the first k scheduled deletions."""
    if k < 0:
        raise ValueError("k must be >= 0")
    for j in range(1, k + 1):
        e = generalized_shift(e, f.seq.bar_at(j))
    return e


def chain_value(f: SalemFunction, e: DigitExpansion, k: int, tol: float = DEFAULT_TOL) -> Fraction:
    """Function value at the k-th chain point.

    The surviving digits are read through the deletion-induced order (for
    the identity order this is a plain evaluation of the shifted point); a
    re-read through the original order would pair the wrong digits with the
    wrong series slots.
    """
    shifted = SalemFunction(f.weights, f.seq.induced_after(k))
    return evaluate(shifted, chain_expansion(f, e, k), tol)


def residual(f: SalemFunction, e: DigitExpansion, k: int, tol: float = DEFAULT_TOL) -> Fraction:
    """Defect of the k-th peeling identity, zero for a correct evaluator.

    chain_value(k-1) should equal beta_d + p_d * chain_value(k) with d the
    original digit at reading position k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_base(f.weights.q, e)
    w = f.weights
    d = e.digit_at(f.seq.n_at(k))
    lhs = chain_value(f, e, k - 1, tol)
    rhs = w.beta[d] + w.p[d] * chain_value(f, e, k, tol)
    return abs(lhs - rhs)


def increment_product(f: SalemFunction, values: Sequence[int]) -> Fraction:
    """Image increment over the set fixing the first r read digits: prod p."""
    if not values:
        raise ValueError("need at least one constrained digit")
    w = f.weights
    prod = Fraction(1)
    for c in values:
        if not 0 <= c < w.q:
            raise ValueError(f"digit {c} outside alphabet 0..{w.q - 1}")
        prod *= w.p[c]
    return prod


def increment_endpoints(
    f: SalemFunction, values: Sequence[int]
) -> tuple[DigitExpansion, DigitExpansion]:
    """Inf and sup of the set whose digits at positions n_1..n_r are fixed.

    Free positions take 0 in the inf and q-1 in the sup.
    """
    if not values:
        raise ValueError("need at least one constrained digit")
    q = f.weights.q
    base = BaseSpec.constant(q)
    positions = [f.seq.n_at(j) for j in range(1, len(values) + 1)]
    top = max(positions)
    lo = [0] * top
    hi = [q - 1] * top
    for pos, c in zip(positions, values):
        lo[pos - 1] = c
        hi[pos - 1] = c
    return (
        DigitExpansion(base, tuple(lo), Tail.ZEROS),
        DigitExpansion(base, tuple(hi), Tail.MAX),
    )


def increment_via_evaluate(
    f: SalemFunction, values: Sequence[int], tol: float = DEFAULT_TOL
) -> Fraction:
    """g(sup) - g(inf) over the digit-fixing set, by direct evaluation."""
    lo, hi = increment_endpoints(f, values)
    return evaluate(f, hi, tol) - evaluate(f, lo, tol)


def cylinder_increment(f: SalemFunction, c: Cylinder, tol: float = DEFAULT_TOL) -> Fraction:
    """g(sup) - g(inf) over a plain cylinder.

    Reduces to :func:`increment_product` when the reading order is the
    identity; for rearranged orders the sign can be either way.
    """
    _check_base(f.weights.q, DigitExpansion(c.base, c.word, Tail.ZEROS))
    lo = DigitExpansion(c.base, c.word, Tail.ZEROS)
    hi = DigitExpansion(c.base, c.word, Tail.MAX)
    return evaluate(f, hi, tol) - evaluate(f, lo, tol)


def integral_closed_form(f: SalemFunction) -> Fraction:
    """Lebesgue integral over [0, 1]: (sum of cumulative sums) / (q - 1)."""
    w = f.weights
    return Fraction(sum(w.beta), w.q - 1)


class Monotonicity:
    """Verdicts for the monotonicity classifier."""

    STRICTLY_INCREASING = "strictly_increasing"
    NON_DECREASING = "non_decreasing"
    CONSTANT_AE = "constant_ae"
    NO_MONOTONICITY_INTERVALS = "no_monotonicity_intervals"
    HAS_MONOTONICITY_INTERVAL = "has_monotonicity_interval"


def classify_monotonicity(f: SalemFunction) -> str:
    """Monotonicity verdict from the weights and the reading order.

    A zero weight kills every increment over sets fixing that digit, so the
    function is constant almost everywhere.  A negative weight (with a
    finite-rearrangement order, whose tail is the identity) flips increment
    signs densely: no monotonicity intervals; the single stated negative
    case extends to several negatives with the same verdict.  With positive
    weights, the identity order is strictly increasing and a finite
    rearrangement still owns monotone cylinders beyond the rearranged block.
    An order agreeing with the identity only finitely often cannot be a
    finite rearrangement, so that branch is unreachable here.
    """
    w = f.weights
    if any(v == 0 for v in w.p):
        return Monotonicity.CONSTANT_AE
    if any(v < 0 for v in w.p):
        return Monotonicity.NO_MONOTONICITY_INTERVALS
    if f.seq.is_identity:
        if all(v > 0 for v in w.p):
            return Monotonicity.STRICTLY_INCREASING
        return Monotonicity.NON_DECREASING
    return Monotonicity.HAS_MONOTONICITY_INTERVAL


@dataclass(frozen=True)
class ContinuityResult:
    """Either continuous, or a jump of the stated size."""

    jump: Optional[Fraction] = None

    @property
    def is_continuous(self) -> bool:
        return self.jump is None


def _dual_pair(e: DigitExpansion) -> tuple[DigitExpansion, DigitExpansion]:
    """Canonical (zeros form, max form) pair of a two-representation point."""
    if e.tail is Tail.ZEROS:
        digits = list(e.prefix)
        while digits and digits[-1] == 0:
            digits.pop()
        if not digits:
            raise ValueError("0 has a unique expansion")
        zeros_form = DigitExpansion(e.base, tuple(digits), Tail.ZEROS)
    else:
        zeros_form = dual_representation(e)
        if zeros_form is None:
            raise ValueError("1 has a unique expansion")
    max_form = dual_representation(zeros_form)
    assert max_form is not None
    return zeros_form, max_form


def continuity_at(f: SalemFunction, e: DigitExpansion, tol: float = DEFAULT_TOL) -> ContinuityResult:
    """Continuity at a point with two expansions (last nonzero digit at m).

    Continuous exactly when the reading order exhausts positions 1..m before
    ever reaching past m, finishing on m itself: with
    k0 = max{k : n_k <= m}, require n_{k0} = m and n_j <= m - 1 for j < k0.
    Otherwise the one-sided limits are the evaluations of the two dual
    forms and their difference is returned.
    """
    _check_base(f.weights.q, e)
    zeros_form, max_form = _dual_pair(e)
    m = len(zeros_form.prefix)
    seq = f.seq
    k0 = max(k for k in range(1, max(seq.size, m) + 1) if seq.n_at(k) <= m)
    ok = seq.n_at(k0) == m and all(seq.n_at(j) <= m - 1 for j in range(1, k0))
    if ok:
        return ContinuityResult(None)
    return ContinuityResult(evaluate(f, zeros_form, tol) - evaluate(f, max_form, tol))


def distribution_function(
    d: DistributionSpec, x: RationalLike, tol: float = DEFAULT_TOL
) -> Fraction:
    """CDF of a random number whose base-q digits are drawn independently,
    digit value i with probability p_i.

    Reassigning which draw lands in which position (the reading order) does
    not change the law, so the CDF pairs the k-th series slot with the k-th
    digit of x regardless of the order stored in the spec.  Non-terminating
    arguments are truncated at a depth putting the series remainder below
    ``tol``; truncation preserves monotonicity in x.
    """
    x = Fraction(x)
    if x < 0:
        return Fraction(0)
    if x >= 1:
        return Fraction(1)
    plain = SalemFunction(d.weights, IndexSequence())
    depth = max(series_depth(d.weights, tol), d.seq.size) + 8
    e = expansion_of(x, BaseSpec.constant(d.weights.q), depth, Tail.ZEROS)
    return evaluate(plain, e, tol)


# --- textual function specs ----------------------------------------------
#
#   q=2; p=0.3,0.7
#   q=2; p=3/10,7/10; seq=perm(2 1)
#
# ``seq`` omitted means the identity reading order.


def parse_function_spec(text: str) -> SalemFunction:
    q: Optional[int] = None
    p: Optional[list[Fraction]] = None
    seq = IndexSequence()
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not value:
            raise ValueError(f"missing value in spec fragment {part!r}")
        if key == "q":
            q = int(value)
        elif key == "p":
            p = [Fraction(tok.strip()) for tok in value.split(",") if tok.strip()]
        elif key == "seq":
            if not (value.startswith("perm(") and value.endswith(")")):
                raise ValueError(f"seq must look like perm(2 1), got {value!r}")
            entries = [int(tok) for tok in value[5:-1].split()]
            seq = IndexSequence(tuple(entries))
        else:
            raise ValueError(f"unknown spec key {key!r}")
    if q is None or p is None:
        raise ValueError("function spec needs both q= and p=")
    return SalemFunction(WeightSet(q, tuple(p)), seq)


def format_function_spec(f: SalemFunction) -> str:
    parts = [f"q={f.weights.q}", "p=" + ",".join(str(v) for v in f.weights.p)]
    if not f.seq.is_identity:
        parts.append("seq=perm(" + " ".join(str(n) for n in f.seq.prefix) + ")")
    return "; ".join(parts)
