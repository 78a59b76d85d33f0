"""The two Clifford actions c = eps - iota and chat = eps + iota on Lambda* R^4.

Basis vectors of the exterior algebra are subsets of {1, 2, 3, 4}, indexed
in binary-counter order: bit t-1 of the index is set iff e_t is present.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .polys import DIM, FormalPoly, XiRational

SIZE = 2 ** DIM

_ZX = XiRational([], canonical=True)


def _as_entry(x) -> XiRational:
    if isinstance(x, XiRational):
        return x
    return XiRational.const(x)


class CliffordMatrix:
    """Sparse 16x16 matrix with XiRational entries (zero entries not stored)."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict | None = None):
        self.entries = {}
        if entries:
            for key, val in entries.items():
                val = _as_entry(val)
                if not val.is_zero():
                    self.entries[key] = val

    @classmethod
    def _raw(cls, entries: dict) -> "CliffordMatrix":
        m = cls.__new__(cls)
        m.entries = entries
        return m

    @classmethod
    def zero(cls) -> "CliffordMatrix":
        return cls._raw({})

    @classmethod
    def identity(cls) -> "CliffordMatrix":
        return cls.scalar(1)

    @classmethod
    def scalar(cls, x) -> "CliffordMatrix":
        x = _as_entry(x)
        if x.is_zero():
            return cls._raw({})
        return cls._raw({(k, k): x for k in range(SIZE)})

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.entries

    def __getitem__(self, key) -> XiRational:
        return self.entries.get(key, _ZX)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, CliffordMatrix):
            return NotImplemented
        out = dict(self.entries)
        for key, val in other.entries.items():
            cur = out.get(key)
            if cur is None:
                out[key] = val
            else:
                s = cur + val
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
        return CliffordMatrix._raw(out)

    def __neg__(self):
        return CliffordMatrix._raw({k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordMatrix):
            return _matmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, CliffordMatrix):
            return NotImplemented
        return self.scale(other)

    def scale(self, x) -> "CliffordMatrix":
        """Multiply every entry by a scalar, FormalPoly or XiRational."""
        if isinstance(x, FormalPoly):
            if x.is_zero():
                return CliffordMatrix._raw({})
            return self.map_entries(lambda e: e.mul_poly(x))
        if isinstance(x, XiRational):
            if x.is_zero():
                return CliffordMatrix._raw({})
            return self.map_entries(lambda e: e * x)
        return self.map_entries(lambda e: e.scale(x))

    def map_entries(self, fn: Callable[[XiRational], XiRational]) -> "CliffordMatrix":
        out = {}
        for k, val in self.entries.items():
            r = fn(val)
            if not r.is_zero():
                out[k] = r
        return CliffordMatrix._raw(out)

    def d_xi(self) -> "CliffordMatrix":
        return self.map_entries(XiRational.d_xi)

    def reduce_sphere(self) -> "CliffordMatrix":
        return self.map_entries(XiRational.reduce_sphere)

    def trace(self) -> XiRational:
        return trace(self)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CliffordMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __repr__(self):
        return f"CliffordMatrix({len(self.entries)} nonzero entries)"


def _matmul(A: CliffordMatrix, B: CliffordMatrix) -> CliffordMatrix:
    if not A.entries or not B.entries:
        return CliffordMatrix._raw({})
    rows_b: dict[int, list] = {}
    for (r, c), val in B.entries.items():
        rows_b.setdefault(r, []).append((c, val))
    acc: dict = {}
    for (r, k), a in A.entries.items():
        row = rows_b.get(k)
        if not row:
            continue
        for c, b in row:
            p = a * b
            cur = acc.get((r, c))
            acc[(r, c)] = p if cur is None else cur + p
    return CliffordMatrix._raw({k: v for k, v in acc.items() if not v.is_zero()})


def trace(m: CliffordMatrix) -> XiRational:
    total = _ZX
    for k in range(SIZE):
        e = m.entries.get((k, k))
        if e is not None:
            total = total + e
    return total


def trace_product(A: CliffordMatrix, B: CliffordMatrix) -> XiRational:
    """trace(A B) without forming the product."""
    total = _ZX
    for (r, c), a in A.entries.items():
        b = B.entries.get((c, r))
        if b is not None:
            total = total + a * b
    return total


# -- generators ----------------------------------------------------------------

def _sign_before(j: int, subset: int) -> int:
    """(-1)^(number of elements of subset smaller than j); j is 1-based."""
    below = subset & ((1 << (j - 1)) - 1)
    return -1 if bin(below).count("1") % 2 else 1


def _exterior(j: int) -> dict:
    out = {}
    bit = 1 << (j - 1)
    for s in range(SIZE):
        if not s & bit:
            out[(s | bit, s)] = _sign_before(j, s)
    return out


def _interior(j: int) -> dict:
    out = {}
    bit = 1 << (j - 1)
    for s in range(SIZE):
        if s & bit:
            out[(s & ~bit, s)] = _sign_before(j, s)
    return out


def _combine(eps: dict, iota: dict, sign_iota: int) -> CliffordMatrix:
    entries = dict(eps)
    for key, val in iota.items():
        entries[key] = entries.get(key, 0) + sign_iota * val
    return CliffordMatrix({k: v for k, v in entries.items() if v})


@lru_cache(maxsize=None)
def build_generators() -> tuple[tuple[CliffordMatrix, ...], tuple[CliffordMatrix, ...]]:
    """Return ``(c, chat)``; ``c[j-1]`` is c(e_j) and ``chat[j-1]`` is chat(e_j)."""
    c = tuple(_combine(_exterior(j), _interior(j), -1) for j in range(1, DIM + 1))
    chat = tuple(_combine(_exterior(j), _interior(j), +1) for j in range(1, DIM + 1))
    return c, chat


def c(j: int) -> CliffordMatrix:
    return build_generators()[0][j - 1]


def chat(j: int) -> CliffordMatrix:
    return build_generators()[1][j - 1]


def clifford_of_covector(coeffs: Sequence, hat: bool = False) -> CliffordMatrix:
    """``sum_i coeffs[i] c(e_{i+1})`` (or with chat when ``hat`` is set)."""
    if len(coeffs) != DIM:
        raise ValueError(f"expected {DIM} coefficients, got {len(coeffs)}")
    gens = build_generators()[1 if hat else 0]
    total = CliffordMatrix.zero()
    for coeff, gen in zip(coeffs, gens):
        total = total + gen.scale(coeff)
    return total


def basis_label(index: int) -> str:
    elems = [str(t) for t in range(1, DIM + 1) if index & (1 << (t - 1))]
    return "{" + ",".join(elems) + "}"


def words(gens: Iterable[CliffordMatrix]) -> CliffordMatrix:
    out = CliffordMatrix.identity()
    for g in gens:
        out = out * g
    return out
