"""Symbols of the Hodge-Dirac operator and of nabla_v at a boundary point x0.

All symbols are instantiated at |xi'| = 1, so |xi|^2 = 1 + xi_n^2.  Each
symbol carries a first-order x_n jet (value and d/dx_n at x0); tangential
x-derivatives vanish at x0 in the collar coordinates and are not stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .clifford import CliffordMatrix, c, chat, clifford_of_covector
from .polys import (
    DIM,
    FormalPoly,
    Jet,
    XiRational,
    Dv,
    Dw,
    G,
    H,
    hp,
    v,
    w,
    xi,
)
from .scalars import I

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

_ZERO_POLY = FormalPoly.const(0)


@dataclass(frozen=True)
class GradedSymbol:
    """One homogeneous component of a full symbol, as a jet of matrices.

    ``order`` is bookkeeping only: the |xi'| = 1 restriction destroys
    homogeneity, so it is never checked against the entries.
    """

    order: int
    jet: Jet
    label: str = ""

    @property
    def value(self) -> CliffordMatrix:
        return self.jet.value

    @property
    def dxn(self) -> CliffordMatrix:
        return self.jet.require_dxn()

    def d_xi(self) -> "GradedSymbol":
        return GradedSymbol(self.order - 1, self.jet.map(_d_xi), self.label)

    def scaled(self, factor) -> "GradedSymbol":
        return GradedSymbol(self.order, self.jet * factor, self.label)


def _d_xi(x):
    return x.d_xi()


def _as_matrix(x) -> CliffordMatrix:
    if isinstance(x, CliffordMatrix):
        return x
    return CliffordMatrix.scalar(x)


def matrix_jet(j: Jet) -> Jet:
    return Jet(_as_matrix(j.value), None if j.dxn is None else _as_matrix(j.dxn))


# -- elementary building blocks ------------------------------------------------

XI_N = XiRational.xi_n()


def inv_norm(power: int = 1) -> XiRational:
    """|xi|^(-2*power) at |xi'| = 1."""
    return XiRational.inv_norm_sq(power)


def c_xi_prime() -> CliffordMatrix:
    return _c_xi_prime()


@lru_cache(maxsize=None)
def _c_xi_prime() -> CliffordMatrix:
    return clifford_of_covector([xi(1), xi(2), xi(3), 0])


def c_dxn() -> CliffordMatrix:
    return c(DIM)


def c_of(vec_name: str) -> CliffordMatrix:
    """c(v) or c(w) from components in the orthonormal frame."""
    comp = {"v": v, "w": w, "Dv": Dv, "Dw": Dw}[vec_name]
    return clifford_of_covector([comp(k) for k in range(1, DIM + 1)])


def dxn_rules(target: str) -> dict[int, object]:
    """d/dx_j at x0 of |xi|^2 or c(xi'), for j = 1..4 (tangential ones vanish)."""
    if target == "norm_sq":
        rules = {j: XiRational.const(0) for j in range(1, DIM)}
        rules[DIM] = XiRational.const(hp())  # h |xi'|^2 with |xi'| = 1
        return rules
    if target == "c_xi_prime":
        rules = {j: CliffordMatrix.zero() for j in range(1, DIM)}
        rules[DIM] = c_xi_prime().scale(hp().scale(HALF))
        return rules
    raise ValueError(f"unknown x_n rule target {target!r}")


def c_xi_jet() -> Jet:
    """c(xi) = c(xi') + xi_n c(dx_n); c(dx_n) is x_n-independent in this frame."""
    value = c_xi_prime() + c_dxn().scale(XI_N)
    return Jet(value, dxn_rules("c_xi_prime")[DIM])


def inv_norm_jet(power: int = 1) -> Jet:
    """|xi|^(-2p) and its x_n derivative -p h |xi|^(-2p-2)."""
    d_norm = dxn_rules("norm_sq")[DIM]
    return Jet(inv_norm(power), (inv_norm(power + 1) * d_norm).scale(-power))


def c_w_jet() -> Jet:
    return Jet(c_of("w"), c_of("Dw"))


def v_dot_xi_jet() -> Jet:
    """sum_j v_j xi_j (xi_4 = xi_n) with jet sum_j Dv_j xi_j."""
    tang = v(1) * xi(1) + v(2) * xi(2) + v(3) * xi(3)
    dtang = Dv(1) * xi(1) + Dv(2) * xi(2) + Dv(3) * xi(3)
    value = XiRational([tang, v(4)])
    dxn = XiRational([dtang, Dv(4)])
    return Jet(value, dxn)


# -- connection data ---------------------------------------------------------------

@dataclass(frozen=True)
class ConnectionConstants:
    """Connection data of the collar metric at x0.

    ``omega[(s, t, i)]`` is omega_{s,t}(e_i).  Gamma, sigma and a are the
    contracted quantities Gamma^k, sigma^k, a^k with g^{ij}(x0) = delta.
    """

    omega: dict
    Gamma: tuple

    @classmethod
    def canonical(cls) -> "ConnectionConstants":
        half_h = hp().scale(HALF)
        omega = {}
        for k in range(1, DIM):
            omega[(k, DIM, k)] = -half_h
            omega[(DIM, k, k)] = half_h
        gamma = (_ZERO_POLY,) * (DIM - 1) + (hp().scale(Fraction(5, 2)),)
        return cls(omega, gamma)

    def _omega_sum(self, i: int, left, right) -> CliffordMatrix:
        total = CliffordMatrix.zero()
        for (s, t, ii), val in self.omega.items():
            if ii == i:
                total = total + (left(s) * right(t)).scale(val)
        return total

    def sigma(self, i: int) -> CliffordMatrix:
        return self._omega_sum(i, c, c).scale(-QUARTER)

    def a(self, i: int) -> CliffordMatrix:
        return self._omega_sum(i, chat, chat).scale(QUARTER)

    def Q0_1(self) -> CliffordMatrix:
        total = CliffordMatrix.zero()
        for i in range(1, DIM + 1):
            total = total + c(i) * self._omega_sum(i, chat, chat)
        return total.scale(QUARTER)

    def Q0_2(self) -> CliffordMatrix:
        total = CliffordMatrix.zero()
        for i in range(1, DIM + 1):
            total = total + c(i) * self._omega_sum(i, c, c)
        return total.scale(-QUARTER)

    def sigma0(self) -> CliffordMatrix:
        """sigma_0 of the Hodge-Dirac operator at x0."""
        return self.Q0_1() + self.Q0_2()


def collar_christoffel_oracle(dim: int = DIM) -> dict:
    """Independent Levi-Civita data for g = g_boundary/h(x_n) + dx_n^2 at x0.

    Uses Gamma_ij^k = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij) with
    g(x0) = delta, d_n g_ab = -h' delta_ab for tangential a, b, and the
    frame e_a = sqrt(h) d_a, e_n = d_n.  Returns contracted Gamma^k and
    omega_{s,t}(e_i) = g(nabla_{e_i} e_t, e_s), as FormalPoly in h.
    """
    n = dim
    hprime = hp()

    def dg(l: int, i: int, j: int) -> FormalPoly:
        # d_l g_ij at x0
        if l == n and i == j and i < n:
            return -hprime
        return _ZERO_POLY

    def christoffel(i: int, j: int, k: int) -> FormalPoly:
        return (dg(i, j, k) + dg(j, i, k) - dg(k, i, j)).scale(HALF)

    gamma = tuple(
        sum((christoffel(i, i, k) for i in range(1, n + 1)), _ZERO_POLY) for k in range(1, n + 1)
    )
    omega = {}
    for i in range(1, n + 1):
        for t in range(1, n + 1):
            # nabla_{e_i} e_t = e_i(frame coefficient) d_t + Gamma_it^s d_s (frame scale 1 at x0)
            for s in range(1, n + 1):
                val = christoffel(i, t, s)
                if t < n and i == n and s == t:
                    val = val + hprime.scale(HALF)  # d_n sqrt(h) at x0
                if not val.is_zero():
                    omega[(s, t, i)] = val
    return {"Gamma": gamma, "omega": omega}


# -- symbols of the Hodge-Dirac operator ------------------------------------------

def sigma_D() -> dict[int, GradedSymbol]:
    """p_1 = i c(xi) and p_0 = Q_0^1 + Q_0^2 at x0."""
    cx = c_xi_jet()
    p1 = GradedSymbol(1, cx * I, "p1")
    p0 = GradedSymbol(0, Jet(ConnectionConstants.canonical().sigma0(), None), "p0")
    return {1: p1, 0: p0}


def sigma_D_inv(order: int) -> GradedSymbol:
    if order == -1:
        return _sigma_D_inv_1()
    if order == -2:
        return _sigma_D_inv_2()
    raise ValueError(f"order {order} of D^-1 is not available")


@lru_cache(maxsize=None)
def _sigma_D_inv_1() -> GradedSymbol:
    jet = matrix_jet(c_xi_jet() * inv_norm_jet(1)) * I
    return GradedSymbol(-1, jet, "q_-1")


def sigma_D_inv_2_parts() -> dict[str, CliffordMatrix]:
    """Pieces of q_-2 = -q_-1 [p_0 q_-1 + d_xi_n p_1 D_x_n q_-1].

    ``Q01`` and ``Q02`` are the parts -q_-1 Q_0^k q_-1 coming from the two
    pieces of p_0; ``deriv`` is the x_n-derivative part.
    """
    return dict(_sigma_D_inv_2_parts())


@lru_cache(maxsize=None)
def _sigma_D_inv_2_parts():
    q1 = _sigma_D_inv_1()
    conn = ConnectionConstants.canonical()
    dp1 = c_dxn().scale(I)  # d/dxi_n of p_1
    minus_q = -q1.value
    q01 = minus_q * conn.Q0_1() * q1.value
    q02 = minus_q * conn.Q0_2() * q1.value
    deriv = minus_q * dp1 * q1.dxn.scale(-I)
    return (("Q01", q01), ("Q02", q02), ("deriv", deriv))


@lru_cache(maxsize=None)
def _sigma_D_inv_2() -> GradedSymbol:
    parts = dict(_sigma_D_inv_2_parts())
    total = parts["Q01"] + parts["Q02"] + parts["deriv"]
    return GradedSymbol(-2, Jet(total, None), "q_-2")


def sigma_D_inv_2_closed_form() -> CliffordMatrix:
    """c(xi) s0 c(xi)/|xi|^4 + c(xi)/|xi|^6 c(dx_n)[d_n c(xi) |xi|^2 - c(xi) d_n |xi|^2]."""
    cx = c_xi_jet()
    s0 = ConnectionConstants.canonical().sigma0()
    first = (cx.value * s0 * cx.value).scale(inv_norm(2))
    norm_sq = XiRational([1, 0, 1])
    bracket = cx.dxn.scale(norm_sq) - cx.value.scale(hp())
    second = (cx.value * c_dxn() * bracket).scale(inv_norm(3))
    return first + second


def sigma_Dsq_inv(order: int) -> GradedSymbol:
    if order == -2:
        return _sigma_Dsq_inv_2()
    if order == -3:
        return _sigma_Dsq_inv_3()
    raise ValueError(f"order {order} of D^-2 is not available")


@lru_cache(maxsize=None)
def _sigma_Dsq_inv_2() -> GradedSymbol:
    return GradedSymbol(-2, matrix_jet(inv_norm_jet(1)), "|xi|^-2")


def xi_components() -> list:
    """xi_1, xi_2, xi_3, xi_n as XiRationals."""
    return [XiRational.const(xi(1)), XiRational.const(xi(2)), XiRational.const(xi(3)), XI_N]


@lru_cache(maxsize=None)
def _sigma_Dsq_inv_3() -> GradedSymbol:
    conn = ConnectionConstants.canonical()
    comps = xi_components()
    bracket = CliffordMatrix.zero()
    for k in range(1, DIM + 1):
        term = CliffordMatrix.scalar(conn.Gamma[k - 1]) - conn.sigma(k).scale(2) + conn.a(k).scale(2)
        bracket = bracket + term.scale(comps[k - 1])
    first = bracket.scale(inv_norm(2)).scale(-I)
    # 2 xi^j xi_a xi_b d_j g^{ab}: only j = n, d_n g^{ab} = h delta_ab (tangential)
    metric = XI_N * XiRational.const(hp().scale(2))
    second = CliffordMatrix.scalar(metric * inv_norm(3)).scale(-I)
    return GradedSymbol(-3, Jet(first + second, None), "sigma_-3(D^-2)")


# -- nabla_v -------------------------------------------------------------------

def A_of_v() -> CliffordMatrix:
    """A(v) = 1/4 sum_ij G_ij (c_i c_j - chat_i chat_j)."""
    return _A_of_v()


@lru_cache(maxsize=None)
def _A_of_v() -> CliffordMatrix:
    total = CliffordMatrix.zero()
    for i in range(1, DIM + 1):
        for j in range(1, DIM + 1):
            g = G(i, j)
            if g.is_zero():
                continue
            total = total + (c(i) * c(j) - chat(i) * chat(j)).scale(g)
    return total.scale(QUARTER)


def sigma_nabla_v() -> tuple[GradedSymbol, GradedSymbol]:
    vx = v_dot_xi_jet()
    order1 = GradedSymbol(1, matrix_jet(vx * I), "sigma_1(nabla_v)")
    order0 = GradedSymbol(0, Jet(A_of_v(), None), "A(v)")
    return order1, order0


def clifford_prefactor(kind: str) -> CliffordMatrix:
    if kind == "K0":
        return _K0()
    if kind == "minus2cw":
        return c_of("w").scale(-2)
    raise ValueError(f"unknown prefactor {kind!r}")


@lru_cache(maxsize=None)
def _K0() -> CliffordMatrix:
    cw = c_of("w")
    total = CliffordMatrix.zero()
    for j in range(1, DIM + 1):
        c_nabla = clifford_of_covector([H(j, k) for k in range(1, DIM + 1)])
        total = total + cw * c(j) * c_nabla
    return total


# -- composition -------------------------------------------------------------------

@dataclass(frozen=True)
class CompositionTerm:
    left_order: int
    right_order: int
    alpha: int
    symbol: GradedSymbol


def _by_order(symbols: Sequence[GradedSymbol]) -> dict[int, GradedSymbol]:
    out = {}
    for s in symbols:
        if s.order in out:
            raise ValueError(f"duplicate order {s.order} in symbol expansion")
        out[s.order] = s
    return out


def compose_terms(left: Sequence[GradedSymbol], right: Sequence[GradedSymbol], target_order: int) -> list[CompositionTerm]:
    """Contributions to the ``target_order`` part of sigma(L o R) at x0.

    Uses sum_alpha (1/alpha!) d_xi^alpha sigma(L) D_x^alpha sigma(R) with
    D_x = -i d_x.  Only alpha in the x_n direction survives at x0, and the
    jets are first order, so an alpha of length 2 is accepted only when the
    second xi_n derivative of the left factor vanishes.
    """
    L, R = _by_order(left), _by_order(right)
    max_l, min_l = max(L), min(L)
    max_r, min_r = max(R), min(R)
    terms: list[CompositionTerm] = []
    alpha = 0
    while True:
        needed = target_order + alpha
        lo = needed - max_r
        if lo > max_l:
            break
        if lo < min_l or needed - max_l < min_r:
            raise ValueError(
                f"symbol expansions too shallow for order {target_order} "
                f"(need orders down to {lo} on the left and {needed - max_l} on the right)"
            )
        for a in range(max_l, lo - 1, -1):
            b = needed - a
            if b not in R or a not in L:
                continue
            ls, rs = L[a], R[b]
            if alpha == 0:
                jet = ls.jet * rs.jet
            elif alpha == 1:
                d_left = ls.jet.value.d_xi()
                jet = Jet(d_left * rs.dxn.scale(-I), None)
            else:
                d_left = ls.jet.value
                for _ in range(alpha):
                    d_left = d_left.d_xi()
                if not d_left.is_zero():
                    raise ValueError("composition needs x_n jets beyond first order")
                continue
            terms.append(CompositionTerm(a, b, alpha, GradedSymbol(target_order, jet)))
        alpha += 1
    return terms


def compose(left: Sequence[GradedSymbol], right: Sequence[GradedSymbol], target_order: int) -> GradedSymbol:
    terms = compose_terms(left, right, target_order)
    if not terms:
        return GradedSymbol(target_order, Jet(CliffordMatrix.zero(), CliffordMatrix.zero()))
    jet = terms[0].symbol.jet
    for t in terms[1:]:
        jet = jet + t.symbol.jet
    return GradedSymbol(target_order, jet)


def left_multiply(prefactor: Jet, sym: GradedSymbol, label: str = "") -> GradedSymbol:
    """Compose an x-dependent, xi-independent order-0 multiplier on the left."""
    return GradedSymbol(sym.order, prefactor * sym.jet, label or sym.label)


# -- the left factors of the two boundary formulas ------------------------------------

def D_inv_expansion() -> list[GradedSymbol]:
    return [sigma_D_inv(-1), sigma_D_inv(-2)]


def Dsq_inv_expansion() -> list[GradedSymbol]:
    return [sigma_Dsq_inv(-2), sigma_Dsq_inv(-3)]


# labels of the pieces of sigma(-2 c(w) nabla_v R) by (left order, right order, alpha)
TYPE_I_PIECES = {(1, -2, 0): "A1", (0, -1, 0): "A2", (1, -1, 1): "A3"}
TYPE_II_PIECES = {(0, -2, 0): "B1", (1, -3, 0): "B2", (1, -2, 1): "B3"}


def nabla_composed_pieces(right: Sequence[GradedSymbol], target_order: int, names: dict) -> dict[str, GradedSymbol]:
    """Labelled pieces of sigma_target(-2 c(w) nabla_v o R)."""
    o1, o0 = sigma_nabla_v()
    cw = c_w_jet()
    cw = Jet(cw.value.scale(-2), cw.dxn.scale(-2))
    out: dict[str, GradedSymbol] = {}
    for term in compose_terms([o1, o0], right, target_order):
        key = (term.left_order, term.right_order, term.alpha)
        name = names.get(key, f"L{term.left_order}R{term.right_order}a{term.alpha}")
        out[name] = left_multiply(cw, term.symbol, name)
    return out


def sum_pieces(pieces: dict[str, GradedSymbol], order: int, label: str) -> GradedSymbol:
    jet = None
    for name in sorted(pieces):
        jet = pieces[name].jet if jet is None else jet + pieces[name].jet
    if jet is None:
        jet = Jet(CliffordMatrix.zero(), CliffordMatrix.zero())
    return GradedSymbol(order, jet, label)
