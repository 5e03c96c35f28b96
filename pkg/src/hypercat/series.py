"""Formal power series route to the hypergraph Catalan numbers.

With phi(u) = sum_i departure_count(i+1, k) u^i and
H(u) = sum_i block_multinomial(i, k)/i! u^i, the series A(z) = z phi(A(z))
gives C_k(z) = z H(A(z)) and c_n^(k) = [z^(n+1)] C_k(z).

Coefficients are exact rationals. Integral values are kept as ``int`` (a
``Fraction`` with denominator 1 is normalised to ``int``) because every series
built here has integer coefficients and big-int products are much cheaper than
``Fraction`` products.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .closed_form import departure_count, root_degree_slice
from .combinatorics import block_multinomial, factorial

__all__ = [
    "TruncatedSeries",
    "BiSeries",
    "phi_series",
    "h_series",
    "solve_A",
    "fixed_point_residual",
    "ck_series",
    "extract_counts",
    "lagrange_extract",
    "root_degree_count",
    "laplace_at_one",
    "FunctionalEquationReport",
    "verify_functional_equation",
]

Scalar = Union[int, Fraction]


def _norm(c) -> Scalar:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"series coefficients must be exact rationals, got {type(c).__name__}")


class TruncatedSeries:
    """Power series known modulo ``z**(order+1)``.

    Immutable. Binary operations truncate to the smaller order.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: Optional[int] = None):
        c = [_norm(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            c = c[: order + 1] + [0] * (order + 1 - len(c))
        if not c:
            raise ValueError("a truncated series needs at least one coefficient")
        self._c: Tuple[Scalar, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: Sequence[Scalar]) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s._c = tuple(coeffs)
        return s

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls._raw((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls._raw((1,) + (0,) * order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> Tuple[Scalar, ...]:
        return self._c

    def __getitem__(self, i: int) -> Scalar:
        if i < 0:
            raise IndexError("negative coefficient index")
        if i > self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self._c[i]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __repr__(self):
        return f"TruncatedSeries({list(self._c)!r}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return TruncatedSeries._raw(self._c[: order + 1])

    def is_zero(self) -> bool:
        return not any(self._c)

    def valuation(self) -> Optional[int]:
        for i, c in enumerate(self._c):
            if c:
                return i
        return None

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        m = min(self.order, other.order)
        return TruncatedSeries._raw([_norm(a + b) for a, b in zip(self._c[: m + 1], other._c)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw([-a for a in self._c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor) -> "TruncatedSeries":
        factor = _norm(factor)
        return TruncatedSeries._raw([_norm(a * factor) for a in self._c])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        m = min(self.order, other.order)
        a, b = self._c, other._c
        out: List[Scalar] = [0] * (m + 1)
        a_nz = [(i, x) for i, x in enumerate(a[: m + 1]) if x]
        for i, x in a_nz:
            for j in range(m + 1 - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return TruncatedSeries._raw([_norm(c) for c in out])

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "TruncatedSeries":
        """Power by repeated squaring, truncated at ``self.order``."""
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = TruncatedSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, s: int = 1) -> "TruncatedSeries":
        """Multiply by ``z**s``; the order grows by ``s``."""
        return TruncatedSeries._raw((0,) * s + self._c)

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative, known to order ``order - 1``."""
        if self.order == 0:
            return TruncatedSeries.zero(0)
        return TruncatedSeries._raw([_norm(i * self._c[i]) for i in range(1, len(self._c))])

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(z))`` by Horner's rule; ``inner`` must have zero constant term."""
        if inner[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        m = min(self.order, inner.order)
        inner = inner.truncate(m)
        result = TruncatedSeries([self._c[m] if m <= self.order else 0], m)
        for i in range(m - 1, -1, -1):
            result = result * inner + self._c[i]
        return result

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._c)


def phi_series(k: int, order: int) -> TruncatedSeries:
    """phi(u) = sum_i block_multinomial(i+1, k)/(i+1)! u^i."""
    if k < 1 or order < 0:
        raise ValueError("phi_series needs k >= 1 and order >= 0")
    return TruncatedSeries._raw([departure_count(i + 1, k) for i in range(order + 1)])


def h_series(k: int, order: int) -> TruncatedSeries:
    """H(u) = sum_i block_multinomial(i, k)/i! u^i."""
    if k < 1 or order < 0:
        raise ValueError("h_series needs k >= 1 and order >= 0")
    return TruncatedSeries(
        [Fraction(block_multinomial(i, k), factorial(i)) for i in range(order + 1)]
    )


def _fixed_point(phi: Sequence[Scalar], order: int, outer: Optional[Sequence[Scalar]] = None):
    """Solve A = z*phi(A) coefficient by coefficient.

    ``pw[i][m]`` holds [z^m] A^i. At step ``m`` every [z^m] A^i with ``i >= 1``
    depends only on a_1..a_m, so a_(m+1) = sum_i phi_i [z^m] A^i is determined.
    When ``outer`` is given, [z^m] outer(A) for m <= order is accumulated from
    the same table. Cost is O(order^3 / 6) coefficient products.
    """
    a: List[Scalar] = [0] * (order + 1)
    pw: List[List[Scalar]] = [[1] + [0] * order]  # A^0
    composed: List[Scalar] = []
    for m in range(order + 1):
        if m >= 1:
            pw.append([0] * (order + 1))
            pw[1][m] = a[m]
            for i in range(2, m + 1):
                prev = pw[i - 1]
                acc = 0
                for j in range(1, m - i + 2):
                    aj = a[j]
                    if aj:
                        acc += aj * prev[m - j]
                pw[i][m] = _norm(acc)
        if m + 1 <= order:
            acc = 0
            for i in range(0, m + 1):
                if i < len(phi) and phi[i]:
                    acc += phi[i] * pw[i][m]
            a[m + 1] = _norm(acc)
        if outer is not None:
            acc = 0
            for i in range(0, m + 1):
                if i < len(outer) and outer[i]:
                    acc += outer[i] * pw[i][m]
            composed.append(_norm(acc))
    return a, composed


def solve_A(k: int, order: int) -> TruncatedSeries:
    """The unique A with A(0) = 0 and A = z*phi(A) modulo z^(order+1)."""
    if k < 1 or order < 1:
        raise ValueError("solve_A needs k >= 1 and order >= 1")
    a, _ = _fixed_point(phi_series(k, order).coeffs, order)
    return TruncatedSeries._raw(a)


def fixed_point_residual(A: TruncatedSeries, k: int) -> TruncatedSeries:
    """A - z*phi(A), computed independently by series composition."""
    phi = phi_series(k, A.order)
    return A - phi.compose(A).shift(1).truncate(A.order)


def ck_series(k: int, order: int) -> TruncatedSeries:
    """C_k(z) = z*H(A(z)) modulo z^(order+1).

    Every coefficient must come out integral; [z^(n+1)] is c_n^(k).
    """
    if k < 1 or order < 1:
        raise ValueError("ck_series needs k >= 1 and order >= 1")
    inner = order - 1
    phi = phi_series(k, max(inner, 0)).coeffs
    h = h_series(k, max(inner, 0)).coeffs
    _, h_of_a = _fixed_point(phi, inner, outer=h)
    c = TruncatedSeries._raw([0] + h_of_a)
    if not c.is_integral():
        bad = next(i for i, x in enumerate(c) if not isinstance(x, int))
        raise ArithmeticError(f"non-integral coefficient [z^{bad}] = {c[bad]} in C_{k}(z)")
    return c


def extract_counts(k: int, n_max: int) -> List[int]:
    """``[c_0^(k), ..., c_{n_max}^(k)]`` read off one C_k(z) expansion."""
    c = ck_series(k, n_max + 1)
    return [int(c[n + 1]) for n in range(n_max + 1)]


def lagrange_extract(n: int, k: int) -> int:
    """c_n^(k) = (1/n) [u^(n-1)] H'(u) phi(u)^n."""
    if n < 1 or k < 1:
        raise ValueError("lagrange_extract needs n >= 1 and k >= 1")
    order = n - 1
    phi_n = phi_series(k, order) ** n
    h_prime = h_series(k, order + 1).derivative()
    total = sum(h_prime[i] * phi_n[order - i] for i in range(order + 1))
    value = Fraction(total) / n
    if value.denominator != 1:
        raise ArithmeticError(f"Lagrange extraction gave non-integer {value}")
    return value.numerator


def root_degree_count(n: int, j: int, k: int) -> int:
    """c^(k)_{j,n}: k-tours on trees with ``n + 1`` vertices and root degree ``j``."""
    if n == 0 and j == 0:
        return 1
    if j < 1 or j > n:
        if n >= 0 and j >= 0:
            return 0
        raise ValueError(f"invalid (n, j) = ({n}, {j})")
    return root_degree_slice(n, j, k)


def laplace_at_one(poly: Dict[int, Scalar]) -> Scalar:
    """The Borel-type functional sum_m m! [t^m] on a polynomial ``{m: coeff}``."""
    return _norm(sum(factorial(m) * c for m, c in poly.items()))


class BiSeries:
    """Series in ``z`` truncated at ``order`` whose coefficients are polynomials in ``x``.

    Stored as ``terms[b] = {a: coeff}`` for the monomial ``x^a z^b``.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Optional[Dict[int, Dict[int, Scalar]]] = None):
        self.order = order
        self.terms: List[Dict[int, Scalar]] = [dict() for _ in range(order + 1)]
        for b, poly in (terms or {}).items():
            if b <= order:
                for a, c in poly.items():
                    c = _norm(c)
                    if c:
                        self.terms[b][a] = c

    def coefficient(self, a: int, b: int) -> Scalar:
        return self.terms[b].get(a, 0)

    def monomials(self):
        for b, poly in enumerate(self.terms):
            for a in sorted(poly):
                yield a, b

    def __add__(self, other: "BiSeries") -> "BiSeries":
        order = min(self.order, other.order)
        out = BiSeries(order)
        for b in range(order + 1):
            poly = dict(self.terms[b])
            for a, c in other.terms[b].items():
                poly[a] = poly.get(a, 0) + c
            out.terms[b] = {a: _norm(c) for a, c in poly.items() if c}
        return out

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            factor = _norm(other)
            out = BiSeries(self.order)
            out.terms = [{a: _norm(c * factor) for a, c in p.items() if c * factor} for p in self.terms]
            return out
        order = min(self.order, other.order)
        out = BiSeries(order)
        for b1 in range(order + 1):
            p1 = self.terms[b1]
            if not p1:
                continue
            for b2 in range(order + 1 - b1):
                p2 = other.terms[b2]
                if not p2:
                    continue
                target = out.terms[b1 + b2]
                for a1, c1 in p1.items():
                    for a2, c2 in p2.items():
                        target[a1 + a2] = target.get(a1 + a2, 0) + c1 * c2
        out.terms = [{a: _norm(c) for a, c in p.items() if c} for p in out.terms]
        return out

    __rmul__ = __mul__

    def shift_z(self) -> "BiSeries":
        """Multiply by ``z``; the order grows by one."""
        out = BiSeries(self.order + 1)
        out.terms = [dict()] + [dict(p) for p in self.terms]
        return out

    def exp(self) -> "BiSeries":
        """exp(self) for a series without ``z^0`` terms."""
        if self.terms[0]:
            raise ValueError("exp needs a series with no z^0 part")
        one = BiSeries(self.order, {0: {0: 1}})
        result = one
        term = one
        for j in range(1, self.order + 1):
            term = (term * self) * Fraction(1, j)
            result = result + term
        return result


@dataclass
class FunctionalEquationReport:
    k: int
    order: int
    ok: bool
    interior_checked: int
    boundary_skipped: int
    first_mismatch: Optional[Tuple[int, int, Scalar, Scalar]] = None

    def __bool__(self):
        return self.ok


def verify_functional_equation(k: int, order: int, counts=None) -> FunctionalEquationReport:
    """Check C_k(x,z) = z exp(x^k/k! L_{t=1}(t^(k-1)/(k-1)! C_k(t,z))) up to z^order.

    ``counts(n, j, k)`` supplies c^(k)_{j,n}; it defaults to the root-degree
    slices of the closed form. For a fixed power of ``z`` the ``t``-polynomial
    is finite, so the Laplace functional is exact there. Monomials with
    ``z``-degree ``order + 1`` appear on the right but need c^(k)_{j,order} on
    the left; they are counted as boundary and not compared.
    """
    if k < 1 or order < 2:
        raise ValueError("verify_functional_equation needs k >= 1 and order >= 2")
    if counts is None:
        counts = root_degree_count
    lhs_terms: Dict[int, Dict[int, Scalar]] = {}
    # L_{t=1}(t^(k-1)/(k-1)! C_k(t, z)) is a series in z alone.
    inner: Dict[int, Dict[int, Scalar]] = {}
    for n in range(order):
        b = n + 1
        poly_t: Dict[int, Scalar] = {}
        for j in range(0, n + 1):
            c = counts(n, j, k)
            if c:
                lhs_terms.setdefault(b, {})[k * j] = Fraction(c, factorial(k * j))
                poly_t[k * j + k - 1] = Fraction(c, factorial(k * j) * factorial(k - 1))
        value = laplace_at_one(poly_t)
        if value:
            inner[b] = {k: Fraction(value) / factorial(k)}
    lhs = BiSeries(order, lhs_terms)
    rhs = BiSeries(order - 1, inner).exp().shift_z()

    checked = 0
    mismatch = None
    for b in range(order + 1):
        xs = set(lhs.terms[b]) | set(rhs.terms[b])
        for a in sorted(xs):
            checked += 1
            left, right = lhs.coefficient(a, b), rhs.coefficient(a, b)
            if left != right and mismatch is None:
                mismatch = (a, b, left, right)
    rhs_ext = BiSeries(order, inner).exp().shift_z()
    boundary = len(rhs_ext.terms[order + 1])
    return FunctionalEquationReport(k, order, mismatch is None, checked, boundary, mismatch)
