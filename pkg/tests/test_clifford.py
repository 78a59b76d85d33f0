"""Clifford relations and the trace identities used by the boundary cases."""

from fractions import Fraction
from itertools import product

import pytest

from hodgeres.cases import invariant_polys
from hodgeres.clifford import (
    SIZE,
    CliffordMatrix,
    basis_label,
    build_generators,
    c,
    chat,
    clifford_of_covector,
    trace,
    trace_product,
    words,
)
from hodgeres.polys import FormalPoly, Dv, Dw, hp, v, w, xi
from hodgeres import symbols as sym

ID = CliffordMatrix.identity()
TR_ID = 16


def _anticommutator(a, b):
    return a * b + b * a


@pytest.mark.parametrize("i,j", list(product(range(1, 5), repeat=2)))
def test_clifford_relations(i, j):
    delta = 1 if i == j else 0
    assert _anticommutator(c(i), c(j)) == CliffordMatrix.scalar(-2 * delta)
    assert _anticommutator(chat(i), chat(j)) == CliffordMatrix.scalar(2 * delta)
    assert _anticommutator(c(i), chat(j)).is_zero()
    assert _anticommutator(chat(i), c(j)).is_zero()


def test_trace_of_identity():
    assert trace(ID) == 16


def test_generators_are_signed_permutations():
    cs, chats = build_generators()
    for g in cs + chats:
        assert len(g.entries) == SIZE
        assert {e.num[0].const_value() for e in g.entries.values()} <= {1, -1}


def test_traces_of_short_words_vanish():
    for i in range(1, 5):
        assert trace(c(i)).is_zero()
        assert trace(c(i) * chat(i)).is_zero()
    assert trace(words([c(1), c(2), c(3)])).is_zero()


def test_trace_product_agrees_with_product():
    a = c(1) * chat(2) + c(3).scale(v(1))
    b = c(2) * c(4) + chat(1).scale(w(3))
    assert trace_product(a, b) == trace(a * b)


def test_basis_labels():
    assert basis_label(0) == "{}"
    assert basis_label(0b1011) == "{1,2,4}"


def _poly(x) -> FormalPoly:
    """A constant XiRational as a polynomial."""
    return x.num[0] if x.num else FormalPoly.const(0)


def test_pairing_of_covectors():
    # tr[c(w) c(dx_n)] = -16 w_4
    assert _poly(trace(sym.c_of("w") * sym.c_dxn())) == w(4).scale(-TR_ID)


def test_divergence_trace_identity():
    # tr sum_j c(w) c(e_j) c(nabla_{e_j} v) c(dx_n) = 16 * S6
    s6 = invariant_polys()["S6"]
    assert _poly(trace(sym.clifford_prefactor("K0") * sym.c_dxn())) == s6.scale(TR_ID)


def test_connection_trace_identity():
    # tr[c(w) A(v) c(dx_n)] = -1/2 <nabla_v d/dx_n, w^T> tr[id] = -8 S5
    s5 = invariant_polys()["S5"]
    assert _poly(trace(sym.c_of("w") * sym.A_of_v() * sym.c_dxn())) == s5.scale(-8)


def test_hat_connection_trace_vanishes():
    from hodgeres.polys import G

    total = CliffordMatrix.zero()
    for j in range(1, 4):
        total = total + (chat(j) * chat(4) * c(4) * sym.c_of("w")).scale(G(4, j))
    assert trace(total).is_zero()


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), FormalPoly.const(0))


def test_normal_derivative_traces():
    xis = [xi(1), xi(2), xi(3)]
    cxp = sym.c_xi_prime()
    half_h = hp().scale(Fraction(1, 2))
    # sum_j xi_j tr[d_n(v_j c(w) c(xi'))] with d_n c(xi') = 1/2 h c(xi')
    lhs = FormalPoly.const(0)
    for j in range(1, 4):
        dn = (sym.c_of("w") * cxp).scale(Dv(j)) + (sym.c_of("Dw") * cxp).scale(v(j)) \
            + (sym.c_of("w") * cxp).scale(v(j) * half_h)
        lhs = lhs + _poly(trace(dn)) * xi(j)
    vt = _dot(xis, [v(j) for j in range(1, 4)])
    wt = _dot(xis, [w(k) for k in range(1, 4)])
    dvt = _dot(xis, [Dv(j) for j in range(1, 4)])
    dwt = _dot(xis, [Dw(k) for k in range(1, 4)])
    rhs = (dvt * wt + vt * dwt).scale(-1) - (vt * wt * half_h)
    assert lhs == rhs.scale(TR_ID)

    assert _poly(trace(sym.c_of("w") * cxp)) * vt == (vt * wt).scale(-TR_ID)
    dn_normal = (sym.c_of("w") * sym.c_dxn()).scale(Dv(4)) + (sym.c_of("Dw") * sym.c_dxn()).scale(v(4))
    assert _poly(trace(dn_normal)) == (Dv(4) * w(4) + v(4) * Dw(4)).scale(-TR_ID)
    assert _poly(trace((sym.c_of("w") * sym.c_dxn()).scale(v(4)))) == (v(4) * w(4)).scale(-TR_ID)


def test_curvature_term_traces():
    cw, c4, cxp = sym.c_of("w"), sym.c_dxn(), sym.c_xi_prime()
    xis = [xi(1), xi(2), xi(3)]
    first = sum((_poly(trace(cw * c(k) * c(4) * c4)) * xis[k - 1] for k in range(1, 4)), FormalPoly.const(0))
    assert first == _dot(xis, [w(k) for k in range(1, 4)]).scale(TR_ID)

    second = sum((_poly(trace(cw * c(k) * c(4) * cxp)) * xis[k - 1] for k in range(1, 4)), FormalPoly.const(0))
    # on |xi'| = 1 the k = j diagonal survives: -w_n |xi'|^2 tr[id]
    assert second.reduce_sphere() == w(4).scale(-TR_ID)

    for right in (c4, cxp):
        hatted = sum((_poly(trace(cw * chat(k) * chat(4) * right)) * xis[k - 1] for k in range(1, 4)),
                     FormalPoly.const(0))
        assert hatted.is_zero()


def test_normal_part_of_p0():
    conn = sym.ConnectionConstants.canonical()
    assert conn.Q0_2() == sym.c_dxn().scale(hp().scale(Fraction(-3, 4)))
    expected = CliffordMatrix.zero()
    for i in range(1, 4):
        expected = expected + c(i) * chat(i) * c(4) * chat(4)
    assert sym.c_dxn() * conn.Q0_1() == expected.scale(hp().scale(Fraction(-1, 4)))


def test_covector_map_is_linear():
    a = clifford_of_covector([v(1), v(2), v(3), v(4)])
    b = clifford_of_covector([w(1), w(2), w(3), w(4)])
    s = clifford_of_covector([v(k) + w(k) for k in range(1, 5)])
    assert a + b == s
    # c(a)^2 = -|a|^2
    sq = _dot([v(k) for k in range(1, 5)], [v(k) for k in range(1, 5)])
    assert a * a == CliffordMatrix.scalar(sq.scale(-1))
