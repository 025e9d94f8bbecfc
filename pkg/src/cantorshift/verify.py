"""Self-check suites behind the ``verify`` CLI subcommand.

Each suite returns (name, ok, detail) triples; a detail string carries the
counterexample when a check fails.  Checks are deterministic (fixed seeds)
and sized for interactive use; the pytest suite runs the heavyweight
versions.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import expansions as xp
from . import measure as me
from . import salem as sm
from . import shifts as sh

Check = tuple[str, bool, str]


def _random_expansion(rng: random.Random, cantor: bool = False, maxlen: int = 12) -> xp.DigitExpansion:
    if cantor:
        prefix = tuple(rng.randrange(2, 6) for _ in range(rng.randrange(0, 4)))
        base = xp.BaseSpec.cantor(prefix, rng.randrange(2, 6))
    else:
        base = xp.BaseSpec.constant(rng.choice([2, 3, 10]))
    n = rng.randrange(0, maxlen)
    digits = tuple(rng.randrange(base.base_at(k)) for k in range(1, n + 1))
    tail = rng.choice([xp.Tail.ZEROS, xp.Tail.MAX])
    return xp.DigitExpansion(base, digits, tail)


def _stream_oracle_delete(e: xp.DigitExpansion, positions, pad: int):
    """Remove digit/base positions by plain list surgery (oracle route)."""
    top = max([pad] + list(positions)) + 1
    digits = [e.digit_at(k) for k in range(1, top + 1)]
    bases = [e.base.base_at(k) for k in range(1, top + 1)]
    keep = [k for k in range(1, top + 1) if k not in set(positions)]
    return [digits[k - 1] for k in keep], [bases[k - 1] for k in keep]


def _matches_stream(result: xp.DigitExpansion, digits, bases) -> bool:
    return all(
        result.digit_at(k) == digits[k - 1] and result.base.base_at(k) == bases[k - 1]
        for k in range(1, len(digits) + 1)
    )


def suite_duality(_args) -> list[Check]:
    rng = random.Random(100)
    checks: list[Check] = []
    bad = ""
    ok = True
    for _ in range(400):
        e = _random_expansion(rng, cantor=rng.random() < 0.5)
        d = xp.dual_representation(e)
        if d is None:
            if xp.value_of(e) not in (0, 1):
                ok, bad = False, str(e)
                break
            continue
        if xp.value_of(d) != xp.value_of(e):
            ok, bad = False, str(e)
            break
    checks.append(("dual representations have equal values", ok, bad))

    ok, bad = True, ""
    for _ in range(300):
        e = _random_expansion(rng)
        x = xp.value_of(e)
        depth = max(len(e.prefix), 1) + 2
        rt = xp.expansion_of(x, e.base, depth, e.tail)
        if xp.value_of(rt) != x:
            ok, bad = False, str(e)
            break
    checks.append(("digit extraction round-trips terminating values", ok, bad))

    ok, bad = True, ""
    for _ in range(300):
        e = _random_expansion(rng, cantor=rng.random() < 0.5)
        text = xp.format_expansion(e)
        if xp.parse_expansion(text) != e:
            ok, bad = False, text
            break
    checks.append(("notation parser and printer round-trip", ok, bad))
    return checks


def suite_lemma1(_args) -> list[Check]:
    rng = random.Random(200)
    checks: list[Check] = []

    ok, bad = True, ""
    for _ in range(200):
        e = _random_expansion(rng, cantor=rng.random() < 0.5)
        m = rng.randrange(0, 5)
        lhs = e
        for _ in range(m):
            lhs = sh.generalized_shift(lhs, 2)
        lhs = sh.shift(lhs)
        if not xp.same_stream(lhs, sh.shift_n(e, m + 1)):
            ok, bad = False, f"{e} m={m}"
            break
    checks.append(("drop-first after m deletions at 2 equals (m+1)-fold shift", ok, bad))

    ok, bad = True, ""
    for _ in range(200):
        e = _random_expansion(rng, cantor=rng.random() < 0.5)
        k1, n = rng.randrange(1, 5), rng.randrange(1, 5)
        cur = e
        for k in range(k1, k1 + n):
            cur = sh.generalized_shift(cur, k)
        if not xp.same_stream(sh.shift_n(cur, k1 + n - 1), sh.shift_n(e, k1 + 2 * n - 1)):
            ok, bad = False, f"{e} k1={k1} n={n}"
            break
    checks.append(("consecutive deletion chain collapses to an iterated shift", ok, bad))

    ok, bad = True, ""
    for _ in range(200):
        e = _random_expansion(rng, cantor=rng.random() < 0.5)
        n = rng.randrange(2, 5)
        ks = sorted(rng.sample(range(1, 9), n), reverse=True)
        cur = e
        for k in ks:
            cur = sh.generalized_shift(cur, k)
        if not xp.same_stream(sh.shift_n(cur, ks[0] - n), sh.shift_n(e, ks[0])):
            ok, bad = False, f"{e} ks={ks}"
            break
    checks.append(("descending deletion chain collapses to an iterated shift", ok, bad))

    ok, bad = True, ""
    for _ in range(200):
        e = _random_expansion(rng, cantor=rng.random() < 0.5)
        m = rng.randrange(1, 6)
        x = xp.value_of(e)
        blk = e.base.block(m)
        lhs = x - xp.value_of(sh.generalized_shift(e, m))
        rhs = Fraction(e.digit_at(m), blk) + xp.value_of(sh.shift_n(e, m)) / blk * (1 - e.base.base_at(m))
        if lhs != rhs:
            ok, bad = False, f"{e} m={m}"
            break
    checks.append(("deletion difference identity holds exactly", ok, bad))

    ok, bad = True, ""
    for _ in range(200):
        e = _random_expansion(rng, cantor=rng.random() < 0.5, maxlen=6)
        digits = list(e.prefix)
        if not digits or digits[-1] == 0:
            continue
        m = len(digits)
        zeros_form = xp.DigitExpansion(e.base, tuple(digits), xp.Tail.ZEROS)
        max_form = xp.dual_representation(zeros_form)
        jump = xp.value_of(sh.generalized_shift(zeros_form, m)) - xp.value_of(
            sh.generalized_shift(max_form, m)
        )
        if jump != Fraction(-1, e.base.block(m - 1)):
            ok, bad = False, f"{zeros_form} m={m}"
            break
    checks.append(("one-sided gap at cylinder endpoints is -1/block(m-1)", ok, bad))
    return checks


def suite_compose(_args) -> list[Check]:
    rng = random.Random(300)
    ok, bad = True, ""
    for q in (2, 10):
        base = xp.BaseSpec.constant(q)
        digits = tuple(rng.randrange(q) for _ in range(12))
        e = xp.DigitExpansion(base, digits)
        for n1 in range(1, 9):
            for n2 in range(1, 9):
                lhs = sh.compose_two(e, n1, n2)
                rhs = sh.generalized_shift(sh.generalized_shift(e, n1), n2)
                if not xp.same_stream(lhs, rhs):
                    ok, bad = False, f"q={q} n1={n1} n2={n2}"
                    break
    return [("two-deletion closed form equals sequential deletions", ok, bad)]


def suite_schedule(_args) -> list[Check]:
    checks: list[Check] = []
    got = sh.make_schedule((1, 5, 7, 3, 6)).steps
    checks.append(("re-indexed steps of (1,5,7,3,6) are (1,4,5,2,3)", got == (1, 4, 5, 2, 3), str(got)))
    got = sh.make_schedule((1, 5, 7, 3, 6, 10, 2, 4, 8, 9)).steps
    checks.append(
        (
            "re-indexed steps of (1,5,7,3,6,10,2,4,8,9) are (1,4,5,2,3,5,1,1,1,1)",
            got == (1, 4, 5, 2, 3, 5, 1, 1, 1, 1),
            str(got),
        )
    )

    rng = random.Random(400)
    ok, bad = True, ""
    base = xp.BaseSpec.constant(10)
    e = xp.DigitExpansion(base, tuple(rng.randrange(10) for _ in range(10)))
    for size in range(0, 4):
        for subset in itertools.combinations(range(1, 6), size):
            for perm in itertools.permutations(subset):
                schedule = sh.make_schedule(perm)
                result = sh.delete_positions(e, schedule)
                digits, bases = _stream_oracle_delete(e, perm, pad=12)
                if not _matches_stream(result, digits, bases):
                    ok, bad = False, str(perm)
                    break
    checks.append(("scheduled deletions equal direct position removal", ok, bad))
    return checks


def _default_function(args) -> sm.SalemFunction:
    spec = getattr(args, "spec", None)
    if spec:
        return sm.parse_function_spec(spec)
    return sm.SalemFunction(sm.WeightSet(2, (Fraction(3, 10), Fraction(7, 10))))


def suite_system(args) -> list[Check]:
    rng = random.Random(500)
    configs = [
        _default_function(args),
        sm.SalemFunction(
            sm.WeightSet(2, (Fraction(3, 10), Fraction(7, 10))),
            sm.IndexSequence((1, 5, 7, 3, 6, 10, 2, 4, 8, 9)),
        ),
        sm.SalemFunction(sm.WeightSet(3, (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5)))),
    ]
    ok, bad = True, ""
    for f in configs:
        q = f.weights.q
        base = xp.BaseSpec.constant(q)
        for _ in range(25):
            e = xp.DigitExpansion(base, tuple(rng.randrange(q) for _ in range(12)))
            for k in range(1, 12):
                r = sm.residual(f, e, k)
                if r > Fraction(2, 10**12):
                    ok, bad = False, f"{sm.format_function_spec(f)} k={k} residual={r}"
                    break
    return [("peeling identities hold along deletion chains", ok, bad)]


def suite_integral(args) -> list[Check]:
    f = _default_function(args)
    if not f.seq.is_identity:
        return [("integral check needs the identity reading order", False, sm.format_function_spec(f))]
    q = f.weights.q
    closed = sm.integral_closed_form(f)

    level = 1
    while q ** (level + 1) <= 30000:
        level += 1
    cells = q**level
    lower = Fraction(0)
    stack = [(Fraction(0), Fraction(1), 0)]
    while stack:
        head, prod, depth = stack.pop()
        if depth == level:
            lower += head
            continue
        for d in range(q - 1, -1, -1):
            stack.append((head + f.weights.beta[d] * prod, prod * f.weights.p[d], depth + 1))
    lower /= cells
    corrected = lower * Fraction(cells, cells - 1)
    ok = abs(corrected - closed) <= Fraction(1, 10**8)
    detail = f"closed={closed} grid={corrected} cells={cells}"
    checks = [("closed form matches exact terminating-grid quadrature", ok, detail)]

    nodes = 20000
    beta = [float(b) for b in f.weights.beta]
    p = [float(v) for v in f.weights.p]
    depth = sm.series_depth(f.weights, 1e-12)
    total = 0.0
    for i in range(nodes):
        num, den = 2 * i + 1, 2 * nodes
        acc, prod_f = 0.0, 1.0
        for _ in range(depth):
            num *= q
            d, num = divmod(num, den)
            acc += beta[d] * prod_f
            prod_f *= p[d]
            if prod_f == 0.0:
                break
        total += acc
    est = total / nodes
    ok = abs(est - float(closed)) < 5e-3
    checks.append(("closed form matches midpoint quadrature", ok, f"closed={float(closed):.6f} est={est:.6f}"))
    return checks


def suite_continuity(args) -> list[Check]:
    f = _default_function(args)
    q = f.weights.q
    base = xp.BaseSpec.constant(q)
    rng = random.Random(600)
    checks: list[Check] = []

    ident = sm.SalemFunction(f.weights, sm.IndexSequence())
    ok, bad = True, ""
    for _ in range(150):
        digits = [rng.randrange(q) for _ in range(rng.randrange(1, 8))]
        if digits[-1] == 0:
            digits[-1] = rng.randrange(1, q)
        e = xp.DigitExpansion(base, tuple(digits))
        res = sm.continuity_at(ident, e)
        if not res.is_continuous:
            ok, bad = False, str(e)
            break
        other = xp.dual_representation(e)
        if sm.evaluate(ident, e) != sm.evaluate(ident, other):
            ok, bad = False, str(e)
            break
    checks.append(("identity order is continuous at two-expansion points", ok, bad))

    swapped = sm.SalemFunction(f.weights, sm.IndexSequence((2, 1)))
    e = xp.DigitExpansion(base, (1,))
    res = sm.continuity_at(swapped, e)
    jump_direct = sm.evaluate(swapped, e) - sm.evaluate(swapped, xp.dual_representation(e))
    ok = (not res.is_continuous) and res.jump == jump_direct and res.jump != 0
    checks.append(("swapped order jumps at the first cylinder endpoint", ok, f"jump={res.jump}"))
    return checks


def suite_distribution(_args) -> list[Check]:
    rng = random.Random(700)
    ok, bad = True, ""
    for _ in range(5):
        q = rng.choice([2, 3, 4])
        cuts = sorted(rng.sample(range(1, 40), q - 1))
        p = []
        prev = 0
        for c in cuts + [40]:
            p.append(Fraction(c - prev, 40))
            prev = c
        d = sm.DistributionSpec(sm.WeightSet(q, tuple(p)))
        if sm.distribution_function(d, Fraction(-1, 2)) != 0 or sm.distribution_function(d, 2) != 1:
            ok, bad = False, str(p)
            break
        prev_val = Fraction(-1)
        for i in range(0, 201):
            val = sm.distribution_function(d, Fraction(i, 200))
            if val < prev_val:
                ok, bad = False, f"p={p} x={Fraction(i, 200)}"
                break
            prev_val = val
    return [("distribution function is a monotone CDF", ok, bad)]


def suite_increment(_args) -> list[Check]:
    checks: list[Check] = []
    f = sm.SalemFunction(sm.WeightSet(2, (Fraction(3, 10), Fraction(7, 10))))
    ok, bad = True, ""
    for rank in range(1, 5):
        for word in itertools.product(range(2), repeat=rank):
            cyl = xp.Cylinder(xp.BaseSpec.constant(2), word)
            if sm.cylinder_increment(f, cyl) != sm.increment_product(f, word):
                ok, bad = False, str(word)
                break
    checks.append(("cylinder increments equal weight products (identity order)", ok, bad))

    ok = True
    for rank in (1, 2, 3):
        total = sum(
            sm.increment_product(f, word) for word in itertools.product(range(2), repeat=rank)
        )
        if total != 1:
            ok = False
    checks.append(("rank-r increments partition unity", ok, ""))
    return checks


def suite_measure(_args) -> list[Check]:
    checks: list[Check] = []
    ok, bad = True, ""
    for q in (2, 3):
        for n in range(1, 7):
            plm = me.plm_iter_shift(q, n)
            for x in (Fraction(1, 7), Fraction(1, 3), Fraction(2, 5)):
                if me.sublevel_measure(plm, x) != x:
                    ok, bad = False, f"q={q} n={n} x={x}"
    checks.append(("iterated shifts preserve Lebesgue measure", ok, bad))

    spec = me.SetFamilySpec.iter_shift(2, 2)
    exact = me.sublevel_measure(me.plm_iter_shift(2, 2), Fraction(1, 3))
    mc = me.monte_carlo_measure(spec, Fraction(1, 3), 100000, seed=42)
    ok = abs(mc.estimate - float(exact)) <= 4 * mc.halfwidth
    checks.append(
        ("Monte Carlo agrees with the exact measure", ok, f"exact={float(exact):.6f} mc={mc.estimate:.6f}")
    )

    a = me.plm_iter_shift(2, 2)
    b = me.plm_iter_shift(2, 1)
    cm = me.comparison_measure(a, b)
    spec = me.SetFamilySpec.compare_iter(2, 2, 1)
    mc = me.monte_carlo_measure(spec, 0, 100000, seed=43)
    ok = abs(mc.estimate - float(cm)) <= 4 * mc.halfwidth
    checks.append(("iterate comparison agrees with Monte Carlo", ok, f"exact={cm} mc={mc.estimate:.6f}"))
    return checks


SUITES = {
    "duality": suite_duality,
    "lemma1": suite_lemma1,
    "compose": suite_compose,
    "schedule": suite_schedule,
    "system": suite_system,
    "integral": suite_integral,
    "continuity": suite_continuity,
    "distribution": suite_distribution,
    "increment": suite_increment,
    "measure": suite_measure,
}


def run_suite(name: str, args) -> list[Check]:
    if name == "all":
        out: list[Check] = []
        for key in SUITES:
            out.extend(SUITES[key](args))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](args)
