"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest, or directly with ``python -m tests.test_acceptance``.
"""

import time

import numpy as np

from credalfusion import (
    CredalSet,
    EnsembleMeasures,
    EvidenceSet,
    Frame,
    PossibilityDist,
    choquet_integral,
    combine,
    condition,
    conditional_intervals,
    consistency_table,
    disjunction,
    ensemble_of,
    envelope_of,
    independent_product,
    observe_and_frechet,
    observe_and_independent,
    possibility_measure,
    possibility_of,
    upper_lower_conditioning,
)
from credalfusion.errors import TotalConflict
from credalfusion.oracle import riemann_choquet, simulate

from .acceptance_log import record
from .conftest import O1, O2, PRIOR_EXTREMES
from .instances import frame_of, random_credal, random_evidence

FRAME = Frame(("1", "2", "3"))
INSTANCES = 500

FIRST_TABLE = {
    (): (0, 0), ("1",): (0.5, 1), ("2",): (0, 0.5), ("3",): (0, 0.2),
    ("1", "2"): (0.8, 1), ("1", "3"): (0.5, 1), ("2", "3"): (0, 0.5), ("1", "2", "3"): (1, 1),
}
SECOND_TABLE = {
    (): (0, 0), ("1",): (0, 0.33), ("2",): (0.33, 1), ("3",): (0, 0.67),
    ("1", "2"): (0.33, 1), ("1", "3"): (0, 0.67), ("2", "3"): (0.67, 1), ("1", "2", "3"): (1, 1),
}
H_EXTREMES = [(0, 0, 0), (0.1, 0, 0), (0.05, 0.3, 0), (0.05, 0.18, 0.2), (0.08, 0, 0.2)]
# conditional over (1, 2, 3) and weight, as printed to two decimals
ENSEMBLE_TABLE = [
    ((1, 0, 0), 0.1), ((0.14, 0.86, 0), 0.35), ((0.12, 0.42, 0.46), 0.43), ((0.29, 0, 0.71), 0.28),
]
CHOQUET_TABLE = {
    ("1",): (0.12, 0.40), ("2",): (0.15, 0.78), ("3",): (0.09, 0.63),
    ("1", "2"): (0.37, 0.91), ("1", "3"): (0.22, 0.85), ("2", "3"): (0.60, 0.88),
}


def best_time(fn, repeats=200):
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def table_error(table, expected):
    return max(
        max(abs(table[FRAME.event(labels)][0] - lo), abs(table[FRAME.event(labels)][1] - up))
        for labels, (lo, up) in expected.items()
    )


def prior_c():
    return CredalSet.from_points(FRAME, PRIOR_EXTREMES)


def urn_prior():
    """Two urns, one mostly red and one mostly black, drawn from twice with replacement."""
    draw = Frame(("R", "B"))
    mostly_red = CredalSet.from_points(draw, [(0.99, 0.01)])
    mostly_black = CredalSet.from_points(draw, [(0.01, 0.99)])
    return disjunction(
        independent_product(mostly_red, mostly_red), independent_product(mostly_black, mostly_black)
    )


# -- criteria ----------------------------------------------------------------


def check_evidence_table():
    pi = PossibilityDist(FRAME, np.array(O1, dtype=float))
    err = table_error(consistency_table(pi), FIRST_TABLE)
    elapsed = best_time(lambda: consistency_table(pi))
    return record(
        "1 evidence-only interval table",
        err <= 0.005 and elapsed < 1e-3,
        f"max error {err:.2e}, best time {elapsed * 1e3:.3f} ms",
    )


def check_credal_envelope():
    c = prior_c()
    err = table_error(envelope_of(c), FIRST_TABLE)
    elapsed = best_time(lambda: envelope_of(c))
    return record(
        "2 credal envelope equals the evidence table",
        err <= 0.005 and elapsed < 1e-3,
        f"max error {err:.2e}, best time {elapsed * 1e3:.3f} ms",
    )


def check_observation_conjunction():
    obs = observe_and_independent(EvidenceSet.precise(FRAME, O1), EvidenceSet.precise(FRAME, O2))
    pi = possibility_of(obs)
    exact = bool(np.array_equal(pi.values, np.array(O1) * np.array(O2)))
    close = bool(np.allclose(pi.values, (0.1, 0.3, 0.2), atol=1e-15))
    err = table_error(consistency_table(pi), SECOND_TABLE)
    return record(
        "3 independent observation conjunction",
        exact and close and err <= 0.005,
        f"pi={np.round(pi.values, 12).tolist()}, table max error {err:.2e}",
    )


def check_fusion_extremes():
    h = combine(prior_c(), EvidenceSet.precise(FRAME, O2))
    expected = np.array(H_EXTREMES)
    matched = len(h.extremes) == len(expected) and all(
        np.min(np.max(np.abs(expected - v), axis=1)) <= 1e-9 for v in h.extremes
    )
    ens = ensemble_of(h)
    err, worst = 0.0, ""
    for cond, weight in ENSEMBLE_TABLE:
        k = int(np.argmin(np.abs(ens.weights - weight)))
        got = np.append(ens.conditionals[k], ens.weights[k])
        want = np.append(cond, weight)
        j = int(np.argmax(np.abs(got - want)))
        if abs(got[j] - want[j]) > err:
            err, worst = abs(got[j] - want[j]), f"{got[j]:.4f} vs printed {want[j]}"
    return record(
        "4 fusion extremes and ensemble table",
        matched and len(ens) == len(ENSEMBLE_TABLE) and err <= 0.005,
        f"{len(h.extremes)} extremes matched={matched}, ensemble max error {err:.4f} ({worst})",
    )


def check_choquet_table():
    table = condition(prior_c(), EvidenceSet.precise(FRAME, O2))
    err = table_error(table, CHOQUET_TABLE)
    return record("5 Choquet conditional intervals", err <= 0.005, f"max error {err:.4f}")


def check_urns():
    c = urn_prior()
    frame = c.frame
    p1 = (0.9801, 0.0099, 0.0099, 0.0001)
    has_p1 = any(np.max(np.abs(v - p1)) <= 1e-12 for v in c.extremes)
    red2, black2 = frame.event(["R,R", "B,R"]), frame.event(["R,B", "B,B"])
    table = condition(c, EvidenceSet.precise(frame, (1, 1, 0, 0)), [red2, black2])
    err = max(
        np.max(np.abs(np.array(table[red2]) - (0.9801, 0.9900))),
        np.max(np.abs(np.array(table[black2]) - (0.0100, 0.0199))),
    )
    return record(
        "6 two-urn example end to end",
        has_p1 and err <= 5e-5,
        f"second red {np.round(table[red2], 6).tolist()}, "
        f"second black {np.round(table[black2], 6).tolist()}, max error {err:.1e}",
    )


def _bayes_error(rng, m):
    frame = frame_of(m)
    p = rng.dirichlet(np.ones(m))
    like = rng.random(m)
    post = p * like / (p @ like)
    table = condition(CredalSet.from_points(frame, [p]), EvidenceSet.precise(frame, like))
    worst = 0.0
    for a in range(1 << m):
        want = sum(post[i] for i in range(m) if a >> i & 1)
        worst = max(worst, abs(table[a][0] - want), abs(table[a][1] - want))
    return worst


def check_properties():
    rng = np.random.default_rng(7)
    worst = dict.fromkeys(
        ["null", "envelope", "consistency", "nesting", "bayes", "maxitivity", "frechet"], 0.0
    )
    counts = dict.fromkeys(worst, 0)
    conflicts = 0
    for i in range(INSTANCES):
        m = 2 + i % 4
        full = (1 << m) - 1
        c, e = random_credal(rng, m), random_evidence(rng, m)

        env = envelope_of(c)
        worst["envelope"] = max(
            worst["envelope"], max(abs(env[a][0] - (1 - env[full ^ a][1])) for a in range(full + 1))
        )
        counts["envelope"] += 1

        pi = possibility_of(e)
        if pi.values.max() > 0:
            table = consistency_table(pi)
            worst["consistency"] = max(
                worst["consistency"],
                max(abs(table[a][0] + table[full ^ a][1] - 1) for a in range(full + 1)),
            )
            counts["consistency"] += 1
        for _ in range(8):
            a, b = (int(x) for x in rng.integers(0, full + 1, size=2))
            gap = abs(possibility_measure(pi, a | b) - max(possibility_measure(pi, a), possibility_measure(pi, b)))
            worst["maxitivity"] = max(worst["maxitivity"], gap)
        counts["maxitivity"] += 1

        try:
            ens = ensemble_of(combine(c, e))
        except TotalConflict:
            conflicts += 1
        else:
            choq, wide = conditional_intervals(ens), upper_lower_conditioning(ens)
            again = conditional_intervals(ensemble_of(combine(c, e.with_null())))
            worst["null"] = max(
                worst["null"],
                float(np.max(np.abs(again.lower - choq.lower))),
                float(np.max(np.abs(again.upper - choq.upper))),
            )
            counts["null"] += 1
            breach = np.maximum.reduce([
                wide.lower - choq.lower, choq.lower - choq.upper, choq.upper - wide.upper,
            ])
            worst["nesting"] = max(worst["nesting"], float(np.max(breach)))
            counts["nesting"] += 1

        worst["bayes"] = max(worst["bayes"], _bayes_error(rng, m))
        counts["bayes"] += 1

        e2 = random_evidence(rng, m)
        ind = possibility_of(observe_and_independent(e, e2)).values
        fre = possibility_of(observe_and_frechet(e, e2)).values
        worst["frechet"] = max(worst["frechet"], float(np.max(ind - fre)))
        counts["frechet"] += 1

    limits = {"null": 1e-12, "envelope": 1e-12, "consistency": 1e-12, "nesting": 1e-12,
              "bayes": 1e-9, "maxitivity": 0.0, "frechet": 1e-12}
    ok = True
    for name, limit in limits.items():
        good = worst[name] <= limit and counts[name] >= INSTANCES - conflicts * (name in ("null", "nesting"))
        ok &= record(f"7 property {name}", good, f"{counts[name]} instances, worst {worst[name]:.1e}")
    return ok


def check_oracles():
    start = time.perf_counter()
    rng = np.random.default_rng(11)
    gap = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        f = rng.random(n)
        f[rng.random(n) < 0.2] = rng.choice(f)
        g = EnsembleMeasures(rng.random(n) + 1e-3)
        for measure in (g.upper, g.lower):
            gap = max(gap, abs(choquet_integral(f, measure) - riemann_choquet(f, measure, 1e-4)))
    riemann_ok = record("8 Choquet layer sum vs Riemann sum", gap <= 1e-3, f"1000 instances, worst {gap:.1e}")

    obs1, obs2 = EvidenceSet.precise(FRAME, O1), EvidenceSet.precise(FRAME, O2)
    urns = urn_prior()
    cases = [
        ("prior C, O1", prior_c(), obs1),
        ("prior C, O2", prior_c(), obs2),
        ("prior C, O1 and O2", prior_c(), observe_and_independent(obs1, obs2)),
        ("urns, first red", urns, EvidenceSet.precise(urns.frame, (1, 1, 0, 0))),
    ]
    violations = 0
    for seed, (_, c, e) in enumerate(cases):
        reports = simulate(c, e, c.frame.all_events(), 100_000, seed)
        violations += sum(r.violated for r in reports)
    elapsed = time.perf_counter() - start
    mc_ok = record(
        "8 Monte Carlo possibility bound, all events",
        violations == 0 and elapsed < 30,
        f"{len(cases)} cases x 1e5 trials, {violations} violations, {elapsed:.1f} s total",
    )
    return riemann_ok and mc_ok


# -- pytest entry points -----------------------------------------------------


def test_evidence_table():
    assert check_evidence_table()


def test_credal_envelope():
    assert check_credal_envelope()


def test_observation_conjunction():
    assert check_observation_conjunction()


def test_fusion_extremes():
    assert check_fusion_extremes()


def test_choquet_table():
    assert check_choquet_table()


def test_urns():
    assert check_urns()


def test_properties():
    assert check_properties()


def test_oracles():
    assert check_oracles()


if __name__ == "__main__":
    results = [
        check_evidence_table(), check_credal_envelope(), check_observation_conjunction(),
        check_fusion_extremes(), check_choquet_table(), check_urns(), check_properties(),
        check_oracles(),
    ]
    raise SystemExit(0 if all(results) else 1)
