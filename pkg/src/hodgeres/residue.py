"""pi^+ projection, xi_n line integrals by residues, and S^2 sphere moments."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Callable

from .clifford import CliffordMatrix, trace_product
from .polys import XI_INDICES, FormalPoly, Jet, XiRational, partial_fractions
from .scalars import I, ONE, GaussianRational, PiScalar

TWO_PI_I = I * 2


class DecayError(ValueError):
    """The line integral over xi_n does not converge."""


def pi_plus(f):
    """Principal part at xi_n = +i; acts entrywise on matrices and jets."""
    if isinstance(f, CliffordMatrix):
        return f.map_entries(_pi_plus_scalar)
    if isinstance(f, Jet):
        return f.map(pi_plus)
    return _pi_plus_scalar(f)


def _pi_plus_scalar(f: XiRational) -> XiRational:
    if f.a == 0:
        return XiRational([], canonical=True)
    return partial_fractions(f).plus_function()


def residue_at_i(f: XiRational) -> FormalPoly:
    """Coefficient of 1/(xi_n - i) in the Laurent expansion at +i."""
    if f.a == 0:
        return FormalPoly.const(0)
    return partial_fractions(f).plus_part.get(1, FormalPoly.const(0))


def integrate_line(f: XiRational) -> FormalPoly:
    """Integral over the real xi_n line, closed in the upper half-plane.

    The result carries one extra power of pi.
    """
    if f.is_zero():
        return FormalPoly.const(0, pi_power=1)
    if f.numerator_degree() > f.denominator_degree() - 2:
        raise DecayError(
            f"integrand decays too slowly: numerator degree {f.numerator_degree()}, "
            f"denominator degree {f.denominator_degree()}"
        )
    res = residue_at_i(f)
    return res.scale(TWO_PI_I).with_pi(1)


def elementary_line_integrals(f: XiRational) -> list[tuple[int, int, int, GaussianRational]]:
    """(m, a, b, c) with int xi^m / ((xi - i)^a (xi + i)^b) d xi = c pi.

    One entry per xi_n power present in the numerator of ``f``; these are
    the scalar integrals a by-hand computation would look up.
    """
    out = []
    for m, coeff in enumerate(f.num):
        if coeff.is_zero():
            continue
        mono = XiRational([0] * m + [1], f.a, f.b)
        if mono.numerator_degree() > mono.denominator_degree() - 2:
            raise DecayError(f"xi_n^{m} term decays too slowly")
        val = residue_at_i(mono).scale(TWO_PI_I)
        out.append((m, f.a, f.b, val.const_value() if not val.is_zero() else GaussianRational(0)))
    return out


def format_pi_multiple(c: GaussianRational) -> str:
    """``pi/8``, ``-3pi/16``, ``(1/2+i)*pi``."""
    if c.is_zero():
        return "0"
    if not c.is_real():
        return f"{c}*pi"
    x = c.re
    sign = "-" if x < 0 else ""
    num, den = abs(x.numerator), x.denominator
    head = "pi" if num == 1 else f"{num}pi"
    return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"


def _double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


@dataclass(frozen=True)
class MomentIndex:
    exponents: tuple[int, int, int]

    def __post_init__(self):
        if len(self.exponents) != 3 or any(e < 0 for e in self.exponents):
            raise ValueError("a moment index has three non-negative exponents")


def sphere_moment_value(exponents) -> Fraction:
    """Integral of xi^alpha over the unit sphere S^2, divided by pi."""
    if any(e % 2 for e in exponents):
        return Fraction(0)
    total = sum(exponents)
    num = prod(_double_factorial(e - 1) for e in exponents)
    return Fraction(4 * num, _double_factorial(total + 1))


def sphere_moment(m: MomentIndex | tuple) -> PiScalar:
    exps = m.exponents if isinstance(m, MomentIndex) else tuple(m)
    return PiScalar(sphere_moment_value(exps), 1)


def integrate_sphere(p: FormalPoly) -> FormalPoly:
    """Replace every xi_1^a xi_2^b xi_3^c monomial by its sphere moment (adds pi^1)."""
    x1, x2, x3 = XI_INDICES
    slot = {x1: 0, x2: 1, x3: 2}

    def fn(mono, coeff):
        exps = [0, 0, 0]
        rest = []
        for idx, e in mono:
            if idx in slot:
                exps[slot[idx]] = e
            else:
                rest.append((idx, e))
        val = sphere_moment_value(exps)
        if not val:
            return []
        return [(tuple(rest), coeff * val)]

    return p.map_monomials(fn).with_pi(1)


# -- the boundary density summand ---------------------------------------------------

@dataclass(frozen=True)
class DensityIndex:
    r: int
    l: int
    k: int
    j: int
    alpha: int

    def __post_init__(self):
        if self.r + self.l - self.k - self.j - self.alpha != -3:
            raise ValueError("selection rule r + l - k - j - |alpha| = -3 violated")

    def prefactor(self) -> GaussianRational:
        """(-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!) for |alpha| <= 1."""
        power = self.alpha + self.j + self.k + 1
        return (-I) ** power / (factorial(self.alpha) * factorial(self.j + self.k + 1))

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.r, self.l, self.k, self.j, self.alpha)


def enumerate_cases(left_order: int, right_order: int) -> list[DensityIndex]:
    """All (r, l, k, j, |alpha|) with r <= left_order, l <= right_order."""
    out = []
    for r in range(left_order, -4 - right_order, -1):
        for l in range(right_order, -4 - left_order, -1):
            excess = r + l + 3
            if excess < 0:
                continue
            for k in range(excess + 1):
                for j in range(excess - k + 1):
                    out.append(DensityIndex(r, l, k, j, excess - k - j))
    return out


@dataclass
class DensityStep:
    """Intermediate artifacts of one density-term evaluation."""

    left_factor: CliffordMatrix | None = None
    right_factor: CliffordMatrix | None = None
    integrand: XiRational | None = None
    line_integral: FormalPoly | None = None
    sphere_integral: FormalPoly | None = None
    value: FormalPoly | None = None
    notes: list[str] = field(default_factory=list)


def _jet_part(jet: Jet, order: int):
    if order == 0:
        return jet.value
    if order == 1:
        return jet.require_dxn()
    raise ValueError("only first-order x_n jets are available")


def _xi_derivative(m: CliffordMatrix, times: int) -> CliffordMatrix:
    for _ in range(times):
        m = m.d_xi()
    return m


def density_term_value(idx: DensityIndex, left: Jet, right: Jet, step: DensityStep | None = None) -> FormalPoly:
    """One summand of the boundary density, integrated over xi_n and |xi'| = 1.

    ``left`` and ``right`` are the jets of sigma_r and sigma_l.  pi^+ is
    applied to the left factor after its derivatives.  Tangential
    x-derivatives vanish at x0, so |alpha| = 1 terms are zero.
    """
    step = step if step is not None else DensityStep()
    if idx.alpha > 0:
        step.notes.append("tangential x-derivative of the right factor vanishes at x0")
        step.value = FormalPoly.const(0, pi_power=2)
        return step.value
    left_m = pi_plus(_xi_derivative(_jet_part(left, idx.j), idx.k))
    right_m = _xi_derivative(_jet_part(right, idx.k), idx.j + 1)
    step.left_factor, step.right_factor = left_m, right_m
    integrand = trace_product(left_m, right_m).reduce_sphere()
    step.integrand = integrand
    line = integrate_line(integrand)
    step.line_integral = line
    sph = integrate_sphere(line)
    step.sphere_integral = sph
    step.value = sph.scale(idx.prefactor())
    return step.value


def numeric_line_integral(f: XiRational, assignment: dict) -> complex:
    """Adaptive quadrature of f over the real line with parameters assigned."""
    import warnings

    from scipy.integrate import IntegrationWarning, quad

    coeffs = [complex(c.evaluate(assignment)) for c in f.num]

    def value(x: float) -> complex:
        num = 0j
        for c in reversed(coeffs):
            num = num * x + c
        return num / ((x - 1j) ** f.a * (x + 1j) ** f.b)

    opts = dict(epsabs=0.0, epsrel=1e-12, limit=400)
    with warnings.catch_warnings():
        # a part that integrates to zero cannot meet a purely relative
        # tolerance; the caller compares against the exact value anyway
        warnings.simplefilter("ignore", IntegrationWarning)
        re, _ = quad(lambda x: value(x).real, -float("inf"), float("inf"), **opts)
        im, _ = quad(lambda x: value(x).imag, -float("inf"), float("inf"), **opts)
    return complex(re, im)


def monte_carlo_sphere_moment(exponents, samples: int, rng) -> tuple[float, float]:
    """Estimate of the S^2 moment and its standard error from uniform samples."""
    import numpy as np

    pts = rng.standard_normal((samples, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    vals = np.prod(pts ** np.asarray(exponents), axis=1) * 4 * np.pi
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(samples))
