"""Every boundary case of the two residue formulas, projected onto S1..S6.

Type I pairs pi^+(P D^-1) with pi^+(D^-2); type II pairs pi^+(P D^-2) with
pi^+(D^-1).  The "a" cases use P = K0 (the c(w) c(e_j) c(nabla_{e_j} v)
term), the "b" cases use P = -2 c(w) nabla_v.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Mapping

from .clifford import CliffordMatrix, c, chat, trace_product
from .polys import DIM, XI_INDICES, FormalPoly, Jet, XiRational, Dv, Dw, G, H, hp, v, w, _mono_str
from .residue import (
    DensityIndex,
    DensityStep,
    density_term_value,
    elementary_line_integrals,
    format_pi_multiple,
    sphere_moment_value,
)
from .scalars import GaussianRational
from . import symbols as sym

BASIS = ("S1", "S2", "S3", "S4", "S5", "S6")
GRADED = ("S2", "S4")  # carried with a factor h (or K after substitution)
BASES = ("hprime", "K")

CASE_IDS = (
    "PhiA",
    "PhiB1",
    "PhiB2",
    "PhiB3",
    "PhiB4",
    "PhiB5_A1",
    "PhiB5_A2",
    "PhiB5_A3",
    "PsiA",
    "PsiB1",
    "PsiB2",
    "PsiB3",
    "PsiB4_B1",
    "PsiB4_B2",
    "PsiB4_B3",
    "PsiB5_C1",
    "PsiB5_C2",
)

PHI_B = ("PhiB1", "PhiB2", "PhiB3", "PhiB4", "PhiB5_A1", "PhiB5_A2", "PhiB5_A3")
PSI_B = ("PsiB1", "PsiB2", "PsiB3", "PsiB4_B1", "PsiB4_B2", "PsiB4_B3", "PsiB5_C1", "PsiB5_C2")

GROUPS = {
    "PhiB5": ("PhiB5_A1", "PhiB5_A2", "PhiB5_A3"),
    "PsiB4": ("PsiB4_B1", "PsiB4_B2", "PsiB4_B3"),
    "PsiB5": ("PsiB5_C1", "PsiB5_C2"),
}

K_PER_H = Fraction(-2, 3)  # h'(0) = -(2/3) K


class UnrecognizedInvariantError(ArithmeticError):
    """A computed polynomial has monomials outside the span of S1..S6."""

    def __init__(self, message: str, monomials: list[str]):
        super().__init__(message + ": " + ", ".join(monomials))
        self.monomials = monomials


class UnknownCaseError(KeyError):
    pass


# -- invariant combinations ---------------------------------------------------------

@dataclass(frozen=True)
class InvariantCombo:
    """Exact coefficients over S1..S6, times pi^pi_power.

    In the ``hprime`` basis the S2 and S4 coefficients multiply h'(0); in
    the ``K`` basis they multiply K.
    """

    coeffs: tuple = (Fraction(0),) * len(BASIS)
    basis: str = "hprime"
    pi_power: int = 2

    def __post_init__(self):
        if len(self.coeffs) != len(BASIS):
            raise ValueError("an invariant combination has six coefficients")
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, basis: str = "hprime") -> "InvariantCombo":
        return cls(basis=basis)

    @classmethod
    def from_mapping(cls, data: Mapping[str, object], basis: str = "hprime", pi_power: int = 2) -> "InvariantCombo":
        unknown = set(data) - set(BASIS)
        if unknown:
            raise ValueError(f"unknown invariant names {sorted(unknown)}")
        return cls(tuple(Fraction(str(data.get(name, 0))) for name in BASIS), basis, pi_power)

    def __getitem__(self, name: str) -> Fraction:
        return self.coeffs[BASIS.index(name)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(BASIS, self.coeffs))

    def to_json(self) -> dict[str, str]:
        return {name: str(c) for name, c in zip(BASIS, self.coeffs)}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "InvariantCombo"):
        if self.basis != other.basis:
            raise ValueError("cannot combine invariants in different bases")
        if self.pi_power != other.pi_power and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot combine invariants with different powers of pi")

    def __add__(self, other: "InvariantCombo") -> "InvariantCombo":
        self._check(other)
        pp = self.pi_power if not self.is_zero() else other.pi_power
        return InvariantCombo(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.basis, pp)

    def __neg__(self):
        return InvariantCombo(tuple(-a for a in self.coeffs), self.basis, self.pi_power)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, x) -> "InvariantCombo":
        return InvariantCombo(tuple(a * x for a in self.coeffs), self.basis, self.pi_power)

    def __str__(self):
        grade = "h" if self.basis == "hprime" else "K"
        parts = []
        for name, c in zip(BASIS, self.coeffs):
            if not c:
                continue
            factor = f"{grade}*{name}" if name in GRADED else name
            parts.append(f"{c}*{factor}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def invariant_polys() -> dict[str, FormalPoly]:
    """The h-basis generators as polynomials (S2 and S4 carry the factor h)."""
    return dict(_invariant_polys())


@lru_cache(maxsize=None)
def _invariant_polys():
    tang = range(1, 4)
    s1 = sum((Dv(j) * w(j) + v(j) * Dw(j) for j in tang), FormalPoly.const(0))
    s2 = sum((v(j) * w(j) for j in tang), FormalPoly.const(0))
    s3 = Dv(4) * w(4) + v(4) * Dw(4)
    s4 = v(4) * w(4)
    s5 = sum((G(4, j) * w(j) for j in tang), FormalPoly.const(0))
    trace_h = sum((H(j, j) for j in range(1, 5)), FormalPoly.const(0))
    s6 = (
        trace_h * w(4)
        - sum((w(k) * H(4, k) for k in range(1, 5)), FormalPoly.const(0))
        + sum((w(j) * H(j, 4) for j in range(1, 5)), FormalPoly.const(0))
    )
    return (("S1", s1), ("S2", hp() * s2), ("S3", s3), ("S4", hp() * s4), ("S5", s5), ("S6", s6))


def combo_to_poly(combo: InvariantCombo) -> FormalPoly:
    if combo.basis != "hprime":
        raise ValueError("polynomial form is only defined in the h basis")
    total = FormalPoly.const(0, pi_power=combo.pi_power)
    for name, poly in _invariant_polys():
        total = total + poly.scale(combo[name]).with_pi(combo.pi_power)
    return total


def project(poly: FormalPoly, expected_pi: int = 2) -> InvariantCombo:
    """Exact coordinates of ``poly`` over S1..S6, or UnrecognizedInvariantError."""
    if poly.is_zero():
        return InvariantCombo.zero()
    if poly.pi_power != expected_pi:
        raise ValueError(f"expected a pi^{expected_pi} quantity, got pi^{poly.pi_power}")
    residual = FormalPoly._raw(dict(poly.terms), 0)
    coeffs = []
    for name, gen in _invariant_polys():
        pivot, pivot_coeff = next(iter(sorted(gen.terms.items(), key=lambda kv: kv[0])))
        c = residual.terms.get(pivot)
        if c is None:
            coeffs.append(Fraction(0))
            continue
        lam = c / pivot_coeff
        if not lam.is_real():
            raise ArithmeticError(f"non-real coefficient {lam} for {name}")
        coeffs.append(lam.re)
        residual = residual - gen.scale(lam)
    if not residual.is_zero():
        bad = []
        tangential_g = {f"G{i}{j}" for i in range(1, 4) for j in range(i + 1, 4)}
        for mono, coeff in residual.sorted_terms():
            bad.append(f"{coeff}*{_mono_str(mono)}")
        names = residual.variables()
        prefix = "unrecognized invariant"
        if names & tangential_g:
            prefix += " (tangential G_ij survived the trace)"
        raise UnrecognizedInvariantError(prefix, bad)
    return InvariantCombo(tuple(coeffs), "hprime", expected_pi)


def substitute_K(combo: InvariantCombo) -> InvariantCombo:
    """Rewrite h'(0) as -(2/3) K in the S2 and S4 coefficients."""
    if combo.basis == "K":
        return combo
    coeffs = tuple(c * K_PER_H if name in GRADED else c for name, c in zip(BASIS, combo.coeffs))
    return InvariantCombo(coeffs, "K", combo.pi_power)


def to_basis(combo: InvariantCombo, basis: str) -> InvariantCombo:
    if basis == combo.basis:
        return combo
    if basis == "K":
        return substitute_K(combo)
    coeffs = tuple(c / K_PER_H if name in GRADED else c for name, c in zip(BASIS, combo.coeffs))
    return InvariantCombo(coeffs, "hprime", combo.pi_power)


@dataclass(frozen=True)
class Comparison:
    match: bool
    diff: InvariantCombo


def compare(computed: InvariantCombo, expected: InvariantCombo) -> Comparison:
    if computed.basis != expected.basis:
        raise ValueError("compare needs both combinations in the same basis")
    diff = computed - expected
    return Comparison(diff.is_zero(), diff)


def assemble_total(parts: Iterable) -> InvariantCombo:
    total = InvariantCombo.zero()
    for p in parts:
        combo = p.computed if isinstance(p, CaseResult) else p
        if not combo.is_zero() and combo.pi_power != 2:
            raise ValueError("every boundary term must carry pi^2")
        total = total + combo
    return total


# -- case definitions ----------------------------------------------------------------

@dataclass(frozen=True)
class CaseSpec:
    case_id: str
    family: str  # "type I" or "type II"
    index: DensityIndex
    left: Callable[[], Jet]
    right: Callable[[], Jet]
    description: str


@dataclass
class TraceStep:
    title: str
    body: str
    anchor: str = ""


@dataclass
class CaseResult:
    case_id: str
    computed: InvariantCombo
    raw: FormalPoly
    index: DensityIndex
    steps: list[TraceStep] = field(default_factory=list)
    integrand: XiRational | None = None
    line_integral: FormalPoly | None = None


# left and right factors, cached because several cases share them

@lru_cache(maxsize=None)
def _type1_sigma0() -> Jet:
    o1, _ = sym.sigma_nabla_v()
    prod = o1.jet * sym.sigma_D_inv(-1).jet
    cw = sym.c_w_jet()
    return Jet(cw.value.scale(-2), cw.dxn.scale(-2)) * prod


@lru_cache(maxsize=None)
def _type1_pieces() -> dict:
    return sym.nabla_composed_pieces(sym.D_inv_expansion(), -1, sym.TYPE_I_PIECES)


@lru_cache(maxsize=None)
def _type2_sigma_m1() -> Jet:
    o1, _ = sym.sigma_nabla_v()
    prod = o1.jet * sym.sigma_Dsq_inv(-2).jet
    cw = sym.c_w_jet()
    return Jet(cw.value.scale(-2), cw.dxn.scale(-2)) * prod


@lru_cache(maxsize=None)
def _type2_pieces() -> dict:
    return sym.nabla_composed_pieces(sym.Dsq_inv_expansion(), -2, sym.TYPE_II_PIECES)


def _k0_D_inv() -> Jet:
    return Jet(sym.clifford_prefactor("K0") * sym.sigma_D_inv(-1).value, None)


def _k0_Dsq_inv() -> Jet:
    return Jet(sym.clifford_prefactor("K0").scale(sym.inv_norm(1)), None)


def _q2_part(*names: str) -> Callable[[], Jet]:
    def build() -> Jet:
        parts = sym.sigma_D_inv_2_parts()
        total = CliffordMatrix.zero()
        for n in names:
            total = total + parts[n]
        return Jet(total, None)

    return build


def _piece(pieces: Callable[[], dict], name: str) -> Callable[[], Jet]:
    return lambda: pieces()[name].jet


def _sym(fn, order) -> Callable[[], Jet]:
    return lambda: fn(order).jet


CASES: dict[str, CaseSpec] = {}


def _register(case_id, family, idx, left, right, description):
    CASES[case_id] = CaseSpec(case_id, family, DensityIndex(*idx), left, right, description)


_register("PhiA", "type I", (-1, -2, 0, 0, 0), _k0_D_inv, _sym(sym.sigma_Dsq_inv, -2),
          "K0 sigma_-1(D^-1) against d_xi_n sigma_-2(D^-2)")
_register("PhiB1", "type I", (0, -2, 0, 0, 1), _type1_sigma0, _sym(sym.sigma_Dsq_inv, -2),
          "tangential alpha term")
_register("PhiB2", "type I", (0, -2, 0, 1, 0), _type1_sigma0, _sym(sym.sigma_Dsq_inv, -2),
          "d_x_n on the left, d_xi_n^2 sigma_-2(D^-2)")
_register("PhiB3", "type I", (0, -2, 1, 0, 0), _type1_sigma0, _sym(sym.sigma_Dsq_inv, -2),
          "d_xi_n on the left, d_xi_n d_x_n sigma_-2(D^-2)")
_register("PhiB4", "type I", (0, -3, 0, 0, 0), _type1_sigma0, _sym(sym.sigma_Dsq_inv, -3),
          "sigma_0 against d_xi_n sigma_-3(D^-2)")
for _name in ("A1", "A2", "A3"):
    _register(f"PhiB5_{_name}", "type I", (-1, -2, 0, 0, 0), _piece(_type1_pieces, _name),
              _sym(sym.sigma_Dsq_inv, -2), f"piece {_name} of sigma_-1 against d_xi_n sigma_-2(D^-2)")
_register("PsiA", "type II", (-2, -1, 0, 0, 0), _k0_Dsq_inv, _sym(sym.sigma_D_inv, -1),
          "K0 |xi|^-2 against d_xi_n sigma_-1(D^-1)")
_register("PsiB1", "type II", (-1, -1, 0, 0, 1), _type2_sigma_m1, _sym(sym.sigma_D_inv, -1),
          "tangential alpha term")
_register("PsiB2", "type II", (-1, -1, 0, 1, 0), _type2_sigma_m1, _sym(sym.sigma_D_inv, -1),
          "d_x_n on the left, d_xi_n^2 sigma_-1(D^-1)")
_register("PsiB3", "type II", (-1, -1, 1, 0, 0), _type2_sigma_m1, _sym(sym.sigma_D_inv, -1),
          "d_xi_n on the left, d_xi_n d_x_n sigma_-1(D^-1)")
for _name in ("B1", "B2", "B3"):
    _register(f"PsiB4_{_name}", "type II", (-2, -1, 0, 0, 0), _piece(_type2_pieces, _name),
              _sym(sym.sigma_D_inv, -1), f"piece {_name} of sigma_-2 against d_xi_n sigma_-1(D^-1)")
_register("PsiB5_C1", "type II", (-1, -2, 0, 0, 0), _type2_sigma_m1, _q2_part("Q02", "deriv"),
          "sigma_-1 against d_xi_n of the Q_0^2 and derivative parts of sigma_-2(D^-1)")
_register("PsiB5_C2", "type II", (-1, -2, 0, 0, 0), _type2_sigma_m1, _q2_part("Q01"),
          "sigma_-1 against d_xi_n of the Q_0^1 part of sigma_-2(D^-1)")


def _describe_matrix(m: CliffordMatrix | None, limit: int = 6) -> str:
    if m is None:
        return "(not built)"
    if m.is_zero():
        return "0"
    lines = [f"{len(m.entries)} nonzero entries of 256"]
    for key in sorted(m.entries)[:limit]:
        lines.append(f"  [{key[0]},{key[1]}] = {m.entries[key]}")
    if len(m.entries) > limit:
        lines.append("  ...")
    return "\n".join(lines)


def _describe_jet(jet: Jet | None) -> str:
    if jet is None:
        return "(not needed)"
    dxn = "(not available)" if jet.dxn is None else _describe_matrix(jet.dxn)
    return f"value:\n{_describe_matrix(jet.value)}\nd/dx_n at x0:\n{dxn}"


def _sphere_moments_used(line: FormalPoly | None) -> str:
    if line is None or line.is_zero():
        return "none (line integral vanishes)"
    slots = {idx: n for n, idx in enumerate(XI_INDICES)}
    seen = set()
    for mono in line.terms:
        exps = [0, 0, 0]
        for idx, e in mono:
            if idx in slots:
                exps[slots[idx]] = e
        seen.add(tuple(exps))
    rows = []
    for exps in sorted(seen):
        val = sphere_moment_value(exps)
        rows.append(f"int_S2 xi1^{exps[0]} xi2^{exps[1]} xi3^{exps[2]} = {format_pi_multiple(GaussianRational(val))}")
    return "\n".join(rows)


def _elementary_integrals(f: XiRational | None) -> str:
    if f is None or f.is_zero():
        return "none (integrand vanishes)"
    rows = []
    for m, a, b, val in elementary_line_integrals(f):
        rows.append(f"int xi_n^{m} / ((xi_n - i)^{a} (xi_n + i)^{b}) d xi_n = {format_pi_multiple(val)}")
    return "\n".join(rows)


def _connection_pairing(step: DensityStep) -> list[TraceStep]:
    t = trace_product(sym.c_of("w") * sym.A_of_v(), sym.c_dxn())
    poly = t.num[0] if t.num else FormalPoly.const(0)
    s5 = dict(_invariant_polys())["S5"]
    same = poly == s5.scale(-8)
    body = f"tr[c(w) A(v) c(dx_n)] = {poly}"
    if same:
        body += "\n= -8 * S5, i.e. 16 times -1/2 <nabla_v d/dx_n, w^T>"
    return [TraceStep("connection term trace reduction", body, "trace of c(w) A(v) c(dx_n)")]


def _q01_trace_list(step: DensityStep) -> list[TraceStep]:
    conn = sym.ConnectionConstants.canonical()
    q1 = sym.sigma_D_inv(-1).value
    rows = []
    for i in range(1, DIM + 1):
        inner = conn._omega_sum(i, chat, chat)
        if inner.is_zero():
            rows.append(f"e_{i}: no connection term")
            continue
        part = -(q1 * (c(i) * inner).scale(Fraction(1, 4)) * q1)
        t = trace_product(step.left_factor, part.d_xi()).reduce_sphere()
        rows.append(f"e_{i}: tr[pi^+(sigma_-1) d_xi_n(-q_-1 c(e_{i}) omega chat chat q_-1 / 4)] = {t}")
    return [TraceStep("trace list for the Q_0^1 summands", "\n".join(rows), "Q_0^1 part of sigma_-2(D^-1)")]


_EXTRA_STEPS: dict[str, Callable[[DensityStep], list[TraceStep]]] = {
    "PhiB5_A2": _connection_pairing,
    "PsiB4_B1": _connection_pairing,
    "PsiB5_C2": _q01_trace_list,
}


def compute_case(case_id: str) -> CaseResult:
    if case_id not in CASES:
        raise UnknownCaseError(case_id)
    return _compute_case(case_id)


@lru_cache(maxsize=None)
def _compute_case(case_id: str) -> CaseResult:
    spec = CASES[case_id]
    idx = spec.index
    step = DensityStep()
    if idx.alpha:
        left = right = None
    else:
        left, right = spec.left(), spec.right()
    raw = density_term_value(idx, left, right, step)
    combo = project(raw)
    steps = [
        TraceStep("case", f"{spec.family}: {spec.description}\n"
                  f"(r, l, k, j, |alpha|) = {idx.as_tuple()}; prefactor {idx.prefactor()}",
                  "boundary density sum over r + l - k - j - |alpha| = -3"),
    ]
    if step.notes:
        steps.append(TraceStep("notes", "\n".join(step.notes), "x0 normalisation: tangential derivatives vanish"))
    steps.extend([
        TraceStep("left symbol jet", _describe_jet(left), "symbols of the operator and its parametrix at x0"),
        TraceStep("right symbol jet", _describe_jet(right), "symbols of D^-1 and D^-2 in the collar metric"),
        TraceStep(f"left factor: d_xi_n^{idx.k} d_x_n^{idx.j} then pi^+", _describe_matrix(step.left_factor),
                  "pi^+ as the principal part at xi_n = +i"),
        TraceStep(f"right factor: d_xi_n^{idx.j + 1} d_x_n^{idx.k}", _describe_matrix(step.right_factor),
                  "derivatives of the right symbol"),
    ])
    extra = _EXTRA_STEPS.get(case_id)
    if extra is not None and step.left_factor is not None:
        steps.extend(extra(step))
    steps.extend([
        TraceStep("traced integrand (|xi'| = 1)", str(step.integrand) if step.integrand is not None else "0",
                  "16 x 16 trace on Lambda* R^4"),
        TraceStep("elementary xi_n integrals", _elementary_integrals(step.integrand),
                  "residue at xi_n = +i, contour closed in the upper half plane"),
        TraceStep("xi_n line integral", str(step.line_integral) if step.line_integral is not None else "0",
                  "residue at xi_n = +i, contour closed in the upper half plane"),
        TraceStep("sphere moments used", _sphere_moments_used(step.line_integral), "moments of the unit sphere S^2"),
        TraceStep("integral over |xi'| = 1", str(step.sphere_integral) if step.sphere_integral is not None else "0",
                  "moments of the unit sphere S^2"),
        TraceStep("value with prefactor", str(raw), "prefactor (-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!)"),
        TraceStep("projection onto S1..S6 (h basis, units pi^2)", str(combo), "invariant basis S1..S6"),
    ])
    return CaseResult(case_id, combo, raw, idx, steps, step.integrand, step.line_integral)


def render_trace(result: CaseResult, anchor: str | None = None) -> str:
    """Plain-text derivation trace, one labelled block per step."""
    lines = [f"derivation trace for {result.case_id}"]
    if anchor:
        lines.append(f"published value: {anchor}")
    lines.append("")
    for n, st in enumerate(result.steps, 1):
        lines.append(f"[{n}] {st.title}")
        if st.anchor:
            lines.append(f"    anchor: {st.anchor}")
        lines.extend("    " + row for row in st.body.splitlines())
        lines.append("")
    return "\n".join(lines)


def compute_group(name: str) -> InvariantCombo:
    members = GROUPS.get(name, (name,))
    return assemble_total(compute_case(m) for m in members)


def family_total(family: str) -> InvariantCombo:
    ids = PHI_B if family == "Phi" else PSI_B
    return assemble_total(compute_case(c) for c in ids)


# -- shipped data ----------------------------------------------------------------------

def _load_json(name: str) -> dict:
    text = resources.files("hodgeres").joinpath("data", name).read_text(encoding="utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class ExpectedEntry:
    case_id: str
    combo: InvariantCombo
    anchor: str


@dataclass(frozen=True)
class ExpectedTable:
    cases: dict
    totals: dict
    theorems: dict


def load_expected() -> ExpectedTable:
    data = _load_json("expected/paper.json")
    cases = {
        e["case_id"]: ExpectedEntry(e["case_id"], InvariantCombo.from_mapping(e["coeffs"]), e["anchor"])
        for e in data["cases"]
    }
    totals = {
        e["case_id"]: ExpectedEntry(e["case_id"], InvariantCombo.from_mapping(e["coeffs"]), e["anchor"])
        for e in data["totals"]
    }
    theorems = {}
    for e in data["theorems"]:
        theorems[e["name"]] = {
            "boundary": InvariantCombo.from_mapping(e["coeffs"], basis=e["basis"]),
            "anchor": e["anchor"],
            "interior": e["interior"],
            "family": e["family"],
            "flags": tuple(e.get("flags", ())),
        }
    return ExpectedTable(cases, totals, theorems)


@dataclass(frozen=True)
class AllowlistEntry:
    case_id: str
    computed: InvariantCombo
    expected: InvariantCombo
    trace_file: str
    reason: str


def load_allowlist() -> dict[str, AllowlistEntry]:
    data = _load_json("allowlist.json")
    out = {}
    for e in data["entries"]:
        if not e.get("trace_file"):
            raise ValueError(f"allowlist entry for {e.get('case_id')} does not cite a trace file")
        out[e["case_id"]] = AllowlistEntry(
            e["case_id"],
            InvariantCombo.from_mapping(e["computed"]),
            InvariantCombo.from_mapping(e["expected"]),
            e["trace_file"],
            e["reason"],
        )
    return out
