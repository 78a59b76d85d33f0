"""Floating-point cross-check of the analytic layer.

Every formal parameter is replaced by a random rational in [-2, 2]; the
tangential covector is a random rational point of the unit sphere so that
the sphere reduction already applied to the integrand stays valid.  The
exact line integral is then compared with adaptive quadrature, and the
exact sphere integral with a Monte-Carlo estimate.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cases import compute_case
from .polys import PARAM_NAMES, XI_INDICES, FormalPoly
from .residue import integrate_sphere, numeric_line_integral

MC_SAMPLES = 200_000
MC_SIGMAS = 5.0


def random_rational(rng: random.Random, bound: int = 2, max_den: int = 8) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_sphere_point(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    """Rational point of S^2 via inverse stereographic projection."""
    a, b = random_rational(rng), random_rational(rng)
    d = 1 + a * a + b * b
    return (2 * a / d, 2 * b / d, (1 - a * a - b * b) / d)


def random_assignment(rng: random.Random) -> dict[str, Fraction]:
    out = {name: random_rational(rng) for name in PARAM_NAMES if not name.startswith("xi")}
    for name, val in zip(("xi1", "xi2", "xi3"), random_sphere_point(rng)):
        out[name] = val
    return out


def relative_error(exact: complex, approx: complex) -> float:
    scale = abs(exact)
    if scale == 0.0:
        return abs(approx)
    return abs(exact - approx) / scale


def _exact_complex(poly: FormalPoly, assignment) -> complex:
    val = complex(poly.evaluate(assignment))
    return val * math.pi ** poly.pi_power


def sphere_monte_carlo(poly: FormalPoly, samples: int, rng: np.random.Generator) -> tuple[complex, float]:
    """Estimate of the S^2 integral of a polynomial in xi1..xi3 and its standard error.

    ``poly`` must have every other parameter already substituted.
    """
    pts = rng.standard_normal((samples, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    slot = {idx: n for n, idx in enumerate(XI_INDICES)}
    vals = np.zeros(samples, dtype=complex)
    for mono, coeff in poly.terms.items():
        term = np.full(samples, complex(coeff))
        for idx, e in mono:
            if idx not in slot:
                raise ValueError(f"parameter {PARAM_NAMES[idx]} is still symbolic")
            term = term * pts[:, slot[idx]] ** e
        vals += term
    vals *= 4 * np.pi * math.pi ** poly.pi_power
    err = float(np.hypot(vals.real.std(ddof=1), vals.imag.std(ddof=1)) / np.sqrt(samples))
    return complex(vals.mean()), err


@dataclass(frozen=True)
class NumericCheck:
    case_id: str
    samples: int
    max_line_error: float
    sphere_deviation_sigmas: float
    passed: bool
    trivial: bool = False

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "max_line_rel_error": f"{self.max_line_error:.3e}",
            "sphere_deviation_sigmas": f"{self.sphere_deviation_sigmas:.2f}",
            "passed": self.passed,
            "trivial": self.trivial,
        }


def check_case(case_id: str, samples: int, tol: float, seed: int) -> NumericCheck:
    result = compute_case(case_id)
    f, line = result.integrand, result.line_integral
    if f is None or f.is_zero():
        return NumericCheck(case_id, 0, 0.0, 0.0, True, trivial=True)
    rng = random.Random(f"{seed}:{case_id}")
    worst = 0.0
    assignment = None
    for _ in range(samples):
        assignment = random_assignment(rng)
        exact = _exact_complex(line, assignment)
        approx = numeric_line_integral(f, assignment) * math.pi ** (line.pi_power - 1)
        worst = max(worst, relative_error(exact, approx))

    others = {k: v for k, v in assignment.items() if not k.startswith("xi")}
    reduced = line.substitute(others)
    exact_sphere = complex(integrate_sphere(reduced).const_value()) * math.pi ** (reduced.pi_power + 1)
    est, err = sphere_monte_carlo(reduced, MC_SAMPLES, np.random.default_rng(seed))
    dev = abs(est - exact_sphere) / err if err > 0 else abs(est - exact_sphere)
    passed = worst <= tol and dev <= MC_SIGMAS
    return NumericCheck(case_id, samples, worst, dev, passed)

