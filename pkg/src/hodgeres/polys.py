"""Polynomials in the formal geometric parameters and rational functions of xi_n.

Parameters (the ring variables) are::

    v1..v4, w1..w4          components of the two vector fields at x0
    Dv1..Dv4, Dw1..Dw4      their d/dx_n derivatives at x0
    h                       h'(0)
    H11..H44                g(nabla_{e_j} v, e_k); no symmetry
    G12..G34                <nabla_v e_i, e_j>; antisymmetric, only i<j stored
    xi1..xi3                tangential covector components

Index 4 is the normal direction x_n.  ``XiRational`` is univariate in xi_n
with poles restricted to xi_n = +i and xi_n = -i.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Mapping

from .scalars import GaussianRational, I, MixedPiPowerError, ONE, ZERO

DIM = 4

# -- parameter registry -----------------------------------------------------

PARAM_NAMES: tuple[str, ...] = (
    tuple(f"v{j}" for j in range(1, 5))
    + tuple(f"w{j}" for j in range(1, 5))
    + tuple(f"Dv{j}" for j in range(1, 5))
    + tuple(f"Dw{j}" for j in range(1, 5))
    + ("h",)
    + tuple(f"H{j}{k}" for j in range(1, 5) for k in range(1, 5))
    + tuple(f"G{i}{j}" for i in range(1, 5) for j in range(i + 1, 5))
    + ("xi1", "xi2", "xi3")
)
PARAM_INDEX: dict[str, int] = {name: k for k, name in enumerate(PARAM_NAMES)}

XI_INDICES = tuple(PARAM_INDEX[f"xi{t}"] for t in (1, 2, 3))

Monomial = tuple  # sorted tuple of (param index, exponent) pairs


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for k, e in m2:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _mono_str(m: Monomial) -> str:
    parts = []
    for k, e in m:
        name = PARAM_NAMES[k]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class FormalPoly:
    """Sparse polynomial over Q(i), homogeneous in its power of pi.

    The pi grading is carried on the polynomial as a whole: adding two
    nonzero polynomials of different pi power is an error.
    """

    __slots__ = ("terms", "pi_power")

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None, pi_power: int = 0):
        if terms:
            self.terms = {m: c for m, c in terms.items() if not c.is_zero()}
        else:
            self.terms = {}
        self.pi_power = pi_power

    @classmethod
    def _raw(cls, terms: dict, pi_power: int = 0) -> "FormalPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p.pi_power = pi_power
        return p

    @classmethod
    def const(cls, c, pi_power: int = 0) -> "FormalPoly":
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return cls._raw({}, pi_power)
        return cls._raw({(): c}, pi_power)

    @classmethod
    def var(cls, name: str) -> "FormalPoly":
        return cls._raw({((PARAM_INDEX[name], 1),): ONE})

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self) -> GaussianRational:
        return self.terms.get((), ZERO)

    def variables(self) -> set[str]:
        return {PARAM_NAMES[k] for m in self.terms for k, _ in m}

    # -- arithmetic ------------------------------------------------------
    def _grade(self, other: "FormalPoly") -> int:
        if not self.terms:
            return other.pi_power
        if not other.terms:
            return self.pi_power
        if self.pi_power != other.pi_power:
            raise MixedPiPowerError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} polynomials"
            )
        return self.pi_power

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        pp = self._grade(other)
        if not other.terms:
            return FormalPoly._raw(dict(self.terms), pp)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
        return FormalPoly._raw(terms, pp)

    __radd__ = __add__

    def __neg__(self):
        return FormalPoly._raw({m: -c for m, c in self.terms.items()}, self.pi_power)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, FormalPoly):
            return NotImplemented
        pp = self.pi_power + other.pi_power
        if not self.terms or not other.terms:
            return FormalPoly._raw({}, pp)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                s = terms.get(m)
                terms[m] = c if s is None else s + c
        return FormalPoly._raw({m: c for m, c in terms.items() if not c.is_zero()}, pp)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "FormalPoly":
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return FormalPoly._raw({}, self.pi_power)
        if c == ONE:
            return self
        return FormalPoly._raw({m: v * c for m, v in self.terms.items()}, self.pi_power)

    def with_pi(self, extra: int) -> "FormalPoly":
        """Multiply by ``pi**extra``."""
        return FormalPoly._raw(dict(self.terms), self.pi_power + extra)

    def __pow__(self, n: int):
        result = FormalPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.pi_power == other.pi_power and self.terms == other.terms

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.pi_power if self.terms else 0))

    # -- structure -------------------------------------------------------
    def exponent_of(self, name: str) -> int:
        k = PARAM_INDEX[name]
        best = 0
        for m in self.terms:
            for idx, e in m:
                if idx == k and e > best:
                    best = e
        return best

    def map_monomials(self, fn: Callable[[Monomial, GaussianRational], Iterable[tuple[Monomial, GaussianRational]]]) -> "FormalPoly":
        terms: dict = {}
        for m, c in self.terms.items():
            for m2, c2 in fn(m, c):
                s = terms.get(m2)
                terms[m2] = c2 if s is None else s + c2
        return FormalPoly._raw({m: c for m, c in terms.items() if not c.is_zero()}, self.pi_power)

    def substitute(self, assignment: Mapping[str, "FormalPoly | int | Fraction | GaussianRational"]) -> "FormalPoly":
        """Replace the named parameters by polynomials or exact scalars."""
        sub = {PARAM_INDEX[k]: (_as_poly(v) if not isinstance(v, FormalPoly) else v) for k, v in assignment.items()}
        result = FormalPoly._raw({}, self.pi_power)
        cache: dict = {}
        for m, c in self.terms.items():
            kept = []
            factor = FormalPoly.const(c)
            for idx, e in m:
                if idx in sub:
                    key = (idx, e)
                    if key not in cache:
                        cache[key] = sub[idx] ** e
                    factor = factor * cache[key]
                else:
                    kept.append((idx, e))
            term = FormalPoly._raw({tuple(kept): ONE}) * factor
            result = result + term.with_pi(self.pi_power - term.pi_power) if term.terms else result
        return result

    def evaluate(self, assignment: Mapping[str, object]):
        """Evaluate with every variable assigned.

        Exact when all assigned values are int/Fraction/GaussianRational;
        returns a Python complex if any value is a float.
        """
        exact = all(isinstance(v, (int, Fraction, GaussianRational)) for v in assignment.values())
        total = ZERO if exact else 0j
        for m, c in self.terms.items():
            t = c if exact else complex(c)
            for idx, e in m:
                name = PARAM_NAMES[idx]
                if name not in assignment:
                    raise KeyError(f"no value for parameter {name}")
                val = assignment[name]
                if exact:
                    t = t * GaussianRational.coerce(val) ** e
                else:
                    t = t * complex(val) ** e
            total = total + t
        return total

    def reduce_sphere(self) -> "FormalPoly":
        """Normal form modulo xi1^2 + xi2^2 + xi3^2 = 1 (xi3^2 eliminated)."""
        x1, x2, x3 = XI_INDICES
        if not any(idx == x3 and e >= 2 for m in self.terms for idx, e in m):
            return self
        # (1 - xi1^2 - xi2^2)^q expanded once per q
        expansions: dict[int, list[tuple[Monomial, GaussianRational]]] = {}

        def expand(q: int):
            if q not in expansions:
                out = []
                for a in range(q + 1):
                    for b in range(q - a + 1):
                        coeff = Fraction(factorial(q), factorial(a) * factorial(b) * factorial(q - a - b))
                        if (a + b) % 2:
                            coeff = -coeff
                        mono = tuple(p for p in ((x1, 2 * a), (x2, 2 * b)) if p[1])
                        out.append((mono, GaussianRational(coeff)))
                expansions[q] = out
            return expansions[q]

        def fn(m, c):
            e3 = 0
            rest = []
            for idx, e in m:
                if idx == x3:
                    e3 = e
                else:
                    rest.append((idx, e))
            if e3 < 2:
                return [(m, c)]
            q, r = divmod(e3, 2)
            base = tuple(rest) + (((x3, r),) if r else ())
            base = tuple(sorted(base))
            return [(_mono_mul(base, mono), c * k) for mono, k in expand(q)]

        return self.map_monomials(fn)

    # -- display ---------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __repr__(self):
        return f"FormalPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            ms = _mono_str(m)
            if not ms:
                pieces.append(str(c))
            elif c == ONE:
                pieces.append(ms)
            elif c == -ONE:
                pieces.append("-" + ms)
            else:
                pieces.append(f"{c}*{ms}")
        s = " + ".join(pieces).replace("+ -", "- ")
        if self.pi_power:
            p = "pi" if self.pi_power == 1 else f"pi^{self.pi_power}"
            s = f"({s})*{p}"
        return s


def _as_poly(x):
    if isinstance(x, FormalPoly):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return FormalPoly.const(x)
    return None


# -- parameter constructors -------------------------------------------------

def P(name: str) -> FormalPoly:
    return FormalPoly.var(name)


def v(j: int) -> FormalPoly:
    return P(f"v{j}")


def w(j: int) -> FormalPoly:
    return P(f"w{j}")


def Dv(j: int) -> FormalPoly:
    return P(f"Dv{j}")


def Dw(j: int) -> FormalPoly:
    return P(f"Dw{j}")


def hp() -> FormalPoly:
    return P("h")


def H(j: int, k: int) -> FormalPoly:
    return P(f"H{j}{k}")


def G(i: int, j: int) -> FormalPoly:
    """Antisymmetric connection coefficient: G(j,i) = -G(i,j), G(i,i) = 0."""
    if i == j:
        return FormalPoly.const(0)
    if i < j:
        return P(f"G{i}{j}")
    return -P(f"G{j}{i}")


def xi(t: int) -> FormalPoly:
    return P(f"xi{t}")


def poly_arith(p: FormalPoly, q: FormalPoly, op: str) -> FormalPoly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


# -- univariate helpers over FormalPoly coefficients -----------------------

_ZP = FormalPoly.const(0)


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _uadd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else None
        y = b[k] if k < len(b) else None
        if x is None:
            out.append(y)
        elif y is None:
            out.append(x)
        else:
            out.append(x + y)
    return _trim(out)


def _umul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if y.is_zero():
                continue
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return _trim([c if c is not None else _ZP for c in out])


def _uscale(a: list, c) -> list:
    return _trim([x.scale(c) for x in a])


def _mul_linear(a: list, root: GaussianRational) -> list:
    """Multiply by (xi - root)."""
    if not a:
        return []
    out = [a[0].scale(-root)]
    for k in range(1, len(a)):
        out.append(a[k - 1] + a[k].scale(-root))
    out.append(a[-1])
    return _trim(out)


def _div_linear(a: list, root: GaussianRational) -> tuple[list, FormalPoly]:
    """Synthetic division by (xi - root): returns (quotient, remainder)."""
    if not a:
        return [], _ZP
    n = len(a) - 1
    q = [None] * n
    carry = a[n]
    for k in range(n - 1, -1, -1):
        q[k] = carry
        carry = a[k] + carry.scale(root)
    return _trim(q), carry


def _ueval(a: list, x: GaussianRational) -> FormalPoly:
    acc = _ZP
    for c in reversed(a):
        acc = acc.scale(x) + c
    return acc


def _uderiv(a: list) -> list:
    return _trim([a[k].scale(k) for k in range(1, len(a))])


def _taylor_shift(a: list, root: GaussianRational) -> list:
    """Coefficients of a(root + t) in powers of t."""
    out = []
    for k in range(len(a)):
        acc = _ZP
        p = ONE
        for j in range(k, len(a)):
            if not a[j].is_zero():
                acc = acc + a[j].scale(p * comb(j, k))
            p = p * root
        out.append(acc)
    return _trim(out)


MINUS_I = -I


class XiRational:
    """``N(xi_n) / ((xi_n - i)^a (xi_n + i)^b)`` with FormalPoly coefficients.

    Kept canonical: N is not divisible by (xi_n - i) when a > 0, nor by
    (xi_n + i) when b > 0, and the zero function has a = b = 0.
    """

    __slots__ = ("num", "a", "b")

    def __init__(self, num: Iterable = (), a: int = 0, b: int = 0, *, canonical: bool = False):
        coeffs = [c if isinstance(c, FormalPoly) else FormalPoly.const(c) for c in num]
        coeffs = _trim(coeffs)
        if a < 0 or b < 0:
            raise ValueError("pole orders must be non-negative")
        if canonical:
            self.num, self.a, self.b = coeffs, a, b
        else:
            self.num, self.a, self.b = _canonical(coeffs, a, b)

    @classmethod
    def const(cls, c) -> "XiRational":
        p = c if isinstance(c, FormalPoly) else FormalPoly.const(c)
        return cls([p], 0, 0, canonical=True)

    @classmethod
    def xi_n(cls) -> "XiRational":
        return cls([_ZP, FormalPoly.const(1)], canonical=True)

    @classmethod
    def inv_norm_sq(cls, power: int = 1) -> "XiRational":
        """``(1 + xi_n^2)^(-power)``."""
        return cls([FormalPoly.const(1)], power, power, canonical=True)

    @classmethod
    def from_poly(cls, coeffs: Iterable) -> "XiRational":
        return cls(coeffs)

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.a == 0 and self.b == 0

    def numerator_degree(self) -> int:
        return len(self.num) - 1

    def denominator_degree(self) -> int:
        return self.a + self.b

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _as_xi(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        A, B = max(self.a, other.a), max(self.b, other.b)
        n1 = _raise_denominator(self.num, A - self.a, B - self.b)
        n2 = _raise_denominator(other.num, A - other.a, B - other.b)
        return XiRational(_uadd(n1, n2), A, B)

    __radd__ = __add__

    def __neg__(self):
        return XiRational([-c for c in self.num], self.a, self.b, canonical=True)

    def __sub__(self, other):
        other = _as_xi(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_xi(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        other = _as_xi(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return XiRational([], canonical=True)
        num = _umul(self.num, other.num)
        # products of canonical factors only need cancelling across factors
        if (self.a and other.b) or (self.b and other.a) or (self.a and other.a) or (self.b and other.b):
            return XiRational(num, self.a + other.a, self.b + other.b)
        return XiRational(num, self.a + other.a, self.b + other.b)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        other = _as_xi(other)
        if other is None:
            return NotImplemented
        return other * self

    def scale(self, c) -> "XiRational":
        c = c if isinstance(c, GaussianRational) else GaussianRational.coerce(c)
        if c.is_zero():
            return XiRational([], canonical=True)
        return XiRational(_uscale(self.num, c), self.a, self.b, canonical=True)

    def mul_poly(self, p: FormalPoly) -> "XiRational":
        if p.is_zero() or not self.num:
            return XiRational([], canonical=True)
        return XiRational([c * p for c in self.num], self.a, self.b)

    def __pow__(self, n: int):
        result = XiRational.const(1)
        for _ in range(n):
            result = result * self
        return result

    def d_xi(self) -> "XiRational":
        """Exact d/dxi_n."""
        if not self.num:
            return self
        if self.a == 0 and self.b == 0:
            return XiRational(_uderiv(self.num), canonical=True)
        # N'(x-i)(x+i) - a N (x+i) - b N (x-i), over (x-i)^(a+1) (x+i)^(b+1)
        n = self.num
        t1 = _mul_linear(_mul_linear(_uderiv(n), I), MINUS_I)
        t2 = _uscale(_mul_linear(n, MINUS_I), -self.a) if self.a else []
        t3 = _uscale(_mul_linear(n, I), -self.b) if self.b else []
        return XiRational(_uadd(_uadd(t1, t2), t3), self.a + 1, self.b + 1)

    def map_coeffs(self, fn: Callable[[FormalPoly], FormalPoly]) -> "XiRational":
        return XiRational([fn(c) for c in self.num], self.a, self.b)

    def reduce_sphere(self) -> "XiRational":
        return self.map_coeffs(FormalPoly.reduce_sphere)

    def with_pi(self, extra: int) -> "XiRational":
        return XiRational([c.with_pi(extra) for c in self.num], self.a, self.b, canonical=True)

    # -- evaluation ------------------------------------------------------
    def coefficient_polys(self) -> list[FormalPoly]:
        return list(self.num)

    def substitute(self, assignment) -> "XiRational":
        return self.map_coeffs(lambda c: c.substitute(assignment))

    def evaluate(self, x, assignment: Mapping[str, object] | None = None):
        """Numerical value at xi_n = x (complex) with parameters assigned."""
        assignment = assignment or {}
        x = complex(x)
        num = 0j
        for c in reversed(self.num):
            val = c.evaluate(assignment) if c.terms and not c.is_const() else c.const_value()
            num = num * x + complex(val)
        den = (x - 1j) ** self.a * (x + 1j) ** self.b
        return num / den

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        other = _as_xi(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.num == other.num

    def __hash__(self):
        return hash((tuple(self.num), self.a, self.b))

    def __repr__(self):
        return f"XiRational({self})"

    def __str__(self):
        if not self.num:
            return "0"
        terms = []
        for k, c in enumerate(self.num):
            if c.is_zero():
                continue
            cs = str(c)
            if k == 0:
                terms.append(f"({cs})")
            elif k == 1:
                terms.append(f"({cs})*x")
            else:
                terms.append(f"({cs})*x^{k}")
        num = " + ".join(terms)
        den = []
        if self.a:
            den.append("(x-i)" + (f"^{self.a}" if self.a > 1 else ""))
        if self.b:
            den.append("(x+i)" + (f"^{self.b}" if self.b > 1 else ""))
        if not den:
            return num
        return f"[{num}] / [{'*'.join(den)}]"


def _as_xi(x):
    if isinstance(x, XiRational):
        return x
    if isinstance(x, FormalPoly):
        return XiRational.const(x)
    if isinstance(x, (int, Fraction, GaussianRational)):
        return XiRational.const(x)
    return None


def _raise_denominator(num: list, da: int, db: int) -> list:
    for _ in range(da):
        num = _mul_linear(num, I)
    for _ in range(db):
        num = _mul_linear(num, MINUS_I)
    return num


def _canonical(num: list, a: int, b: int):
    num = _trim(list(num))
    if not num:
        return [], 0, 0
    while a > 0:
        q, r = _div_linear(num, I)
        if not r.is_zero():
            break
        num, a = q, a - 1
    while b > 0:
        q, r = _div_linear(num, MINUS_I)
        if not r.is_zero():
            break
        num, b = q, b - 1
    return num, a, b


def xi_differentiate(f: XiRational) -> XiRational:
    return f.d_xi()


# -- partial fractions -------------------------------------------------------

def _laurent_principal(num: list, order: int, root: GaussianRational, other_root: GaussianRational, other_order: int) -> dict[int, FormalPoly]:
    """Principal part at ``root`` of num / ((x-root)^order (x-other_root)^other_order).

    Returns {m: c_m} for the terms c_m / (x - root)^m, m = 1..order.
    """
    if order == 0 or not num:
        return {}
    shifted = _taylor_shift(num, root)[:order]
    # (x - other_root)^(-k) with x = root + t:  (d + t)^(-k), d = root - other_root
    d = root - other_root
    d_inv = d.inverse()
    series = []
    base = d_inv ** other_order
    for n in range(order):
        # binom(-k, n) d^(-k-n); for k = 0 the factor is identically 1
        if other_order == 0:
            series.append(GaussianRational(1 if n == 0 else 0))
            continue
        coeff = GaussianRational(comb(other_order + n - 1, n) * (-1) ** n) * base * d_inv ** n
        series.append(coeff)
    out: dict[int, FormalPoly] = {}
    for m in range(1, order + 1):
        n = order - m  # power of t
        acc = _ZP
        for p in range(min(n, len(shifted) - 1) + 1):
            s = series[n - p]
            if not shifted[p].is_zero():
                acc = acc + shifted[p].scale(s)
        if not acc.is_zero():
            out[m] = acc
    return out


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Long division by a monic univariate polynomial ``den``."""
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [], _trim(num)
    q = [_ZP] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c.is_zero():
            continue
        q[k - dd] = c
        for j in range(dd + 1):
            num[k - dd + j] = num[k - dd + j] - c * den[j]
    return _trim(q), _trim(num[:dd])


class PartialFractions:
    """``poly_part + sum plus[m]/(x-i)^m + sum minus[m]/(x+i)^m``."""

    __slots__ = ("poly_part", "plus_part", "minus_part")

    def __init__(self, poly_part: list, plus_part: dict, minus_part: dict):
        self.poly_part = poly_part
        self.plus_part = plus_part
        self.minus_part = minus_part

    def recompose(self) -> XiRational:
        total = XiRational(self.poly_part)
        for m, c in self.plus_part.items():
            total = total + XiRational([c], m, 0, canonical=True)
        for m, c in self.minus_part.items():
            total = total + XiRational([c], 0, m, canonical=True)
        return total

    def plus_function(self) -> XiRational:
        total = XiRational([], canonical=True)
        for m, c in sorted(self.plus_part.items()):
            total = total + XiRational([c], m, 0, canonical=True)
        return total


def partial_fractions(f: XiRational) -> PartialFractions:
    plus = _laurent_principal(f.num, f.a, I, MINUS_I, f.b)
    minus = _laurent_principal(f.num, f.b, MINUS_I, I, f.a)
    den = _raise_denominator([FormalPoly.const(1)], f.a, f.b)
    poly_part, _ = _poly_divmod(f.num, den)
    return PartialFractions(poly_part, plus, minus)


# -- first-order x_n jets ------------------------------------------------------

class Jet:
    """Value and d/dx_n at x0, truncated at first order.

    ``dxn`` may be None when the derivative was not built; asking for it
    then raises.
    """

    __slots__ = ("value", "dxn")

    def __init__(self, value, dxn=None):
        self.value = value
        self.dxn = dxn

    @classmethod
    def constant(cls, value, zero):
        return cls(value, zero)

    def require_dxn(self):
        if self.dxn is None:
            raise ValueError("x_n-derivative of this symbol was not built")
        return self.dxn

    def __add__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        d = None if self.dxn is None or other.dxn is None else self.dxn + other.dxn
        return Jet(self.value + other.value, d)

    def __neg__(self):
        return Jet(-self.value, None if self.dxn is None else -self.dxn)

    def __sub__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Jet):
            if self.dxn is None or other.dxn is None:
                d = None
            else:
                d = self.dxn * other.value + self.value * other.dxn
            return Jet(self.value * other.value, d)
        # plain scalars carry no x dependence
        return Jet(self.value * other, None if self.dxn is None else self.dxn * other)

    def __rmul__(self, other):
        return Jet(other * self.value, None if self.dxn is None else other * self.dxn)

    def map(self, fn) -> "Jet":
        """Apply a linear x-independent operation (e.g. d/dxi_n, pi^+) componentwise."""
        return Jet(fn(self.value), None if self.dxn is None else fn(self.dxn))
