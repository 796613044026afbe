"""Built-in consistency checks, runnable from the CLI.

quick: special-function identities, pinned exact values, and the small
oracle suite (a few seconds).  full: adds the complete polynomial-versus-
integral sweep up to N = 120 and seeded statistical checks.

run_selftest accepts a beta_scale fault-injection knob so the test suite
can verify that a perturbed identity is actually caught; 1.0 means no
perturbation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import analytic, oracle
from .model import LossSemantics, PlacementStrategy, RecParams, SystemParams
from .simulator import SimConfig, WorkloadClass, simulate
from .specfun import beta, beta_real, reg_inc_beta, reg_inc_beta_complement

__all__ = ["CheckResult", "run_selftest"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _check_beta_identity(beta_scale: float) -> CheckResult:
    worst = 0.0
    for a in range(1, 11):
        for b in range(1, 11):
            exact = beta(a, b)
            real = beta_real(float(a), float(b)) * beta_scale
            worst = max(worst, abs(real - exact) / exact)
    return CheckResult(
        "beta-identity",
        worst <= 1e-12,
        f"binomial form vs log-Gamma form, worst rel diff {worst:.2e}",
    )


def _check_complement_identity() -> CheckResult:
    worst = 0.0
    for a in range(1, 7):
        for b in range(1, 7):
            for i in range(1, 20):
                x = i / 20
                s = reg_inc_beta(x, a, b) + reg_inc_beta_complement(x, a, b)
                worst = max(worst, abs(s - 1.0))
    return CheckResult(
        "complement-identity",
        worst <= 1e-14,
        f"I + (1-I) vs 1, worst abs diff {worst:.2e}",
    )


def _check_monotone_shift() -> CheckResult:
    worst = 0.0
    for p in range(1, 5):
        for q in range(0, 5):
            for i in range(1, 20):
                x = i / 20
                diff = reg_inc_beta(x, q + 1, p + 1) - reg_inc_beta(x, q + 1, p)
                closed = (
                    x ** (q + 1) * (1 - x) ** p * math.comb(p + q, p)
                )
                worst = max(worst, abs(diff - closed))
                if diff < -1e-15:
                    return CheckResult(
                        "monotone-shift-identity", False,
                        f"negative shift {diff:.2e} at x={x}, p={p}, q={q}",
                    )
    return CheckResult(
        "monotone-shift-identity",
        worst <= 1e-12,
        f"shift vs closed form, worst abs diff {worst:.2e}",
    )


def _check_quadrature_consistency() -> CheckResult:
    from scipy.integrate import quad

    worst = 0.0
    for a, b in ((1, 1), (2, 3), (3, 2), (5, 4), (6, 1)):
        for x in (0.1, 0.5, 0.9):
            direct, _ = quad(
                lambda t: t ** (a - 1) * (1 - t) ** (b - 1), 0.0, x,
                epsabs=1e-14, epsrel=1e-13,
            )
            worst = max(worst, abs(direct / beta(a, b) - reg_inc_beta(x, a, b)))
    return CheckResult(
        "incomplete-beta-quadrature",
        worst <= 1e-10,
        f"binomial sum vs integral definition, worst abs diff {worst:.2e}",
    )


def _check_survival_curve() -> CheckResult:
    for rec, system in (
        (RecParams(1, 0, 2), SystemParams(48, 5)),
        (RecParams(2, 1, 2), SystemParams(30, 7)),
    ):
        curve = analytic.survival_curve_random(rec, system)
        total = analytic.expect_random_sum(rec, system).value
        if curve.expected_value != total:
            return CheckResult(
                "survival-curve-sum", False,
                f"curve sum {curve.expected_value!r} != exact sum {total!r}",
            )
        if any(
            hi < lo
            for hi, lo in zip(curve.probabilities, curve.probabilities[1:])
        ):
            return CheckResult("survival-curve-sum", False, "curve not nonincreasing")
    return CheckResult(
        "survival-curve-sum", True, "curve sums equal the exact expectation"
    )


def _check_error_bounds() -> CheckResult:
    tol = analytic.DEFAULT_QUADRATURE_TOL
    worst = ""
    for p, q, r in ((1, 0, 2), (2, 1, 1), (3, 2, 2), (1, 2, 1)):
        rec = RecParams(p, q, r)
        for nodes, docs in ((12, 1), (48, 5), (96, 96)):
            system = SystemParams(nodes, docs)
            exact = analytic.expect_random_sum(rec, system).value
            integral = analytic.expect_random_integral(rec, system).value
            if abs(exact - integral) > 1.0 + nodes * tol:
                return CheckResult(
                    "additive-error-bounds", False,
                    f"|sum-integral| = {abs(exact - integral):.3f} at "
                    f"p={p} q={q} r={r} N={nodes} D={docs}",
                )
            if p == 1:
                closed = analytic.expect_random_p1_beta(q, r, system).value
                if abs(exact - closed) > 1.0:
                    return CheckResult(
                        "additive-error-bounds", False,
                        f"|sum-beta| = {abs(exact - closed):.3f} at "
                        f"q={q} r={r} N={nodes} D={docs}",
                    )
    return CheckResult(
        "additive-error-bounds", True, "integral and Beta forms stay within 1"
    )


def _symmetric_pairs(limit: int):
    for p in range(1, 4):
        for q in range(0, 3):
            for r in range(1, 4):
                rec = RecParams(p, q, r)
                g = rec.fragments
                for nodes in range(g, limit + 1, g):
                    yield rec, SystemParams(nodes, nodes // g)


def _check_exact_vs_integral(limit: int, name: str) -> CheckResult:
    worst = 0.0
    count = 0
    for rec, system in _symmetric_pairs(limit):
        exact = float(
            oracle.exact_symmetric_expectation(
                rec, system, LossSemantics.PER_CLUSTER
            )
        )
        integral = analytic.expect_symmetric_integral(rec, system).value
        worst = max(worst, abs(integral - exact) / exact)
        count += 1
    return CheckResult(
        name,
        worst <= 1e-8,
        f"{count} instances, worst rel diff {worst:.2e}",
    )


def _check_brute_vs_polynomial() -> CheckResult:
    cases = (
        (RecParams(1, 0, 2), SystemParams(4, 2), LossSemantics.PER_CLUSTER),
        (RecParams(1, 1, 1), SystemParams(8, 4), LossSemantics.PER_CLUSTER),
        (RecParams(2, 1, 2), SystemParams(6, 1), LossSemantics.PER_CLUSTER),
        (RecParams(2, 1, 2), SystemParams(6, 1), LossSemantics.MULTISET),
        (RecParams(2, 0, 1), SystemParams(8, 4), LossSemantics.MULTISET),
    )
    for rec, system, sem in cases:
        brute = oracle.brute_force_symmetric(rec, system, sem)
        poly = oracle.exact_symmetric_expectation(rec, system, sem)
        if brute != poly:
            return CheckResult(
                "brute-vs-polynomial", False,
                f"{brute} != {poly} at p={rec.p} q={rec.q} r={rec.r} "
                f"N={system.nodes} {sem.value}",
            )
    return CheckResult(
        "brute-vs-polynomial", True, f"{len(cases)} exact rational matches"
    )


def _check_brute_random() -> CheckResult:
    for rec, nodes, expected in (
        (RecParams(1, 0, 2), 3, Fraction(22, 9)),
        (RecParams(1, 1, 1), 3, Fraction(22, 9)),
        (RecParams(1, 0, 1), 3, Fraction(2)),
    ):
        system = SystemParams(nodes, 1)
        brute = oracle.brute_force_random(rec, system)
        if brute != expected:
            return CheckResult(
                "brute-random-pinned", False, f"{brute} != {expected}"
            )
        exact = analytic.expect_random_sum(rec, system).value
        if abs(float(brute) - exact) > 1e-12 * max(1.0, exact):
            return CheckResult(
                "brute-random-pinned", False,
                f"enumeration {float(brute)!r} vs sum {exact!r}",
            )
    return CheckResult(
        "brute-random-pinned", True, "enumeration matches the survival sum"
    )


def _check_pinned_values() -> CheckResult:
    pins = (
        (
            "symmetric (1,0,2) N=4",
            float(
                oracle.exact_symmetric_expectation(
                    RecParams(1, 0, 2), SystemParams(4, 2), LossSemantics.PER_CLUSTER
                )
            ),
            8 / 3,
        ),
        (
            "symmetric (1,1,1) N=8",
            analytic.expect_symmetric_p1_beta(1, 1, SystemParams(8, 4)).value,
            128 / 35,
        ),
        (
            "symmetric integral (1,0,2) N=4",
            analytic.expect_symmetric_integral(
                RecParams(1, 0, 2), SystemParams(4, 2)
            ).value,
            8 / 3,
        ),
    )
    for label, got, want in pins:
        if abs(got - want) > 1e-9 * want:
            return CheckResult(
                "pinned-values", False, f"{label}: {got!r} != {want!r}"
            )
    return CheckResult("pinned-values", True, f"{len(pins)} fixed points hold")


def _check_simulation_agreement() -> CheckResult:
    random_cfg = SimConfig(
        strategy=PlacementStrategy.RANDOM,
        classes=(WorkloadClass(RecParams(1, 0, 2), 5),),
        nodes=48,
        trials=4000,
        master_seed=1101,
    )
    summary = simulate(random_cfg)
    exact = analytic.expect_random_sum(RecParams(1, 0, 2), SystemParams(48, 5)).value
    if abs(summary.mean - exact) > 3 * summary.std_error:
        return CheckResult(
            "simulation-agreement", False,
            f"random: |{summary.mean:.3f} - {exact:.3f}| > 3 SE",
        )
    sym_cfg = SimConfig(
        strategy=PlacementStrategy.SYMMETRIC,
        classes=(WorkloadClass(RecParams(1, 1, 1), 48),),
        nodes=96,
        trials=4000,
        master_seed=1102,
    )
    summary = simulate(sym_cfg)
    exact = analytic.expect_symmetric_integral(
        RecParams(1, 1, 1), SystemParams(96, 48)
    ).value
    if abs(summary.mean - exact) > 3 * summary.std_error:
        return CheckResult(
            "simulation-agreement", False,
            f"symmetric: |{summary.mean:.3f} - {exact:.3f}| > 3 SE",
        )
    return CheckResult(
        "simulation-agreement", True, "seeded runs within 3 standard errors"
    )


def _check_d_invariance() -> CheckResult:
    rec = RecParams(1, 1, 1)
    lo = analytic.expect_symmetric_integral(rec, SystemParams(96, 48)).value
    hi = analytic.expect_symmetric_integral(rec, SystemParams(96, 480)).value
    if lo != hi:
        return CheckResult(
            "symmetric-d-invariance", False, f"{lo!r} != {hi!r} across D"
        )
    return CheckResult(
        "symmetric-d-invariance", True, "integral identical across valid D"
    )


def run_selftest(level: str = "quick", beta_scale: float = 1.0) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"level must be quick or full, got {level!r}")
    results = [
        _check_beta_identity(beta_scale),
        _check_complement_identity(),
        _check_monotone_shift(),
        _check_quadrature_consistency(),
        _check_survival_curve(),
        _check_error_bounds(),
        _check_exact_vs_integral(12, "symmetric-exact-vs-integral"),
        _check_brute_vs_polynomial(),
        _check_brute_random(),
        _check_pinned_values(),
        _check_d_invariance(),
    ]
    if level == "full":
        results.append(
            _check_exact_vs_integral(120, "symmetric-exact-vs-integral-full")
        )
        results.append(_check_simulation_agreement())
    return results
