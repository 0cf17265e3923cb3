"""Scalar backends, the Jacobi theta function, and the branch-free delta.

Two backends share one interface:

  * complex: ordinary complex floating point, infinite products truncated
    once the tail factors differ from 1 by less than 1e-18;
  * exact: truncated q-series with Fraction coefficients, all arithmetic
    exact modulo q^(N+1).

The basic building block is

    delta(a, b) = theta(ab) theta'(1) / (theta(a) theta(b))

computed via the branch-free rearrangement

    (ab-1)/((a-1)(b-1)) *
    prod_{n>=1} (1-q^n ab)(1-q^n/(ab))(1-q^n)^2
              / ((1-q^n a)(1-q^n/a)(1-q^n b)(1-q^n/b)),

in which the half-integer powers of theta cancel at the exponent level.
theta itself is exposed on the complex backend only (principal branch of
x^(1/2); branch-dependent, used for validation, never by the recursions).

Formal variables for a rank-r group are ordered (zeta_1..zeta_r,
nu_1..nu_r, h); a Monomial is an integer exponent vector over them.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .rootsys import COROOT, ROOT, LatticeVector, RootSystem, reflect

EXACT = "exact"
COMPLEX = "complex"

ZETA = "zeta"
NU = "nu"

_TAIL_EPS = 1e-18


class ZeroArgumentError(ValueError):
    """theta/delta received a zero argument."""


class SingularPointError(ArithmeticError):
    """A delta argument hit a pole (value 1, or too close to one in the
    complex backend), or a recursion coefficient is not invertible.
    Callers are expected to resample the point."""


@dataclass(frozen=True)
class QContext:
    backend: str
    order: int = 8
    q: complex = 0.3

    def __post_init__(self):
        if self.backend not in (EXACT, COMPLEX):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.order < 1:
            raise ValueError("truncation order must be >= 1")
        if self.backend == COMPLEX and abs(self.q) >= 1:
            raise ValueError("complex backend needs |q| < 1")

    def one(self):
        if self.backend == EXACT:
            return QSeries.constant(Fraction(1), self.order)
        return complex(1)

    def zero(self):
        if self.backend == EXACT:
            return QSeries.constant(Fraction(0), self.order)
        return complex(0)

    def is_zero(self, value, scale=None) -> bool:
        if self.backend == EXACT:
            return all(c == 0 for c in value.coeffs)
        tol = 1e-10 * (scale if scale else 1.0)
        return abs(value) < tol

    def magnitude(self, value) -> float:
        if self.backend == EXACT:
            return max((abs(float(c)) for c in value.coeffs), default=0.0)
        return abs(value)


class QSeries:
    """Truncated q-series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs):
        out = object.__new__(cls)
        object.__setattr__(out, "coeffs", tuple(coeffs))
        return out

    @classmethod
    def constant(cls, value, order):
        return cls._raw((Fraction(value),) + (Fraction(0),) * order)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == QSeries.constant(other, self.order)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QSeries({list(self.coeffs)!r})"

    def _coerce(self, other):
        if isinstance(other, QSeries):
            if other.order != self.order:
                raise ValueError("mixed truncation orders")
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QSeries._raw(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QSeries._raw(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = len(a)
        out = [Fraction(0)] * n
        for i, ai in enumerate(a):
            if ai:
                for j in range(n - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return QSeries._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.coeffs[0] == 0:
            raise SingularPointError("division by q-series with zero constant term")
        a, b = self.coeffs, other.coeffs
        n = len(a)
        out = [Fraction(0)] * n
        b0 = b[0]
        for k in range(n):
            acc = a[k]
            for j in range(1, k + 1):
                if b[j] and out[k - j]:
                    acc -= b[j] * out[k - j]
            out[k] = acc / b0
        return QSeries._raw(out)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def sum_at(self, q):
        """Numeric value of the truncated series at a concrete q."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * q + complex(c)
        return acc


def _mul_two_term(coeffs, n, c):
    """In place: coeffs *= (1 - c q^n), truncated."""
    for k in range(len(coeffs) - 1, n - 1, -1):
        if coeffs[k - n]:
            coeffs[k] -= c * coeffs[k - n]


def theta(x, ctx: QContext):
    """Jacobi theta x^(1/2)(1 - 1/x) prod (1-q^n x)(1-q^n/x), complex only.

    Principal branch of the square root; downstream identities use delta,
    which is branch-free.
    """
    if ctx.backend != COMPLEX:
        raise ValueError("theta is exposed on the complex backend only")
    x = complex(x)
    if x == 0:
        raise ZeroArgumentError("theta(0)")
    q = ctx.q
    val = cmath.sqrt(x) * (1 - 1 / x)
    qn = 1.0 + 0j
    big = max(abs(x), 1 / abs(x))
    n = 0
    while True:
        n += 1
        qn *= q
        if abs(qn) * big < _TAIL_EPS or n > 10_000:
            break
        val *= (1 - qn * x) * (1 - qn / x)
    return val


def theta_prime_one(ctx: QContext):
    """theta'(1) = prod_{n>=1} (1-q^n)^2."""
    if ctx.backend == EXACT:
        coeffs = [Fraction(0)] * (ctx.order + 1)
        coeffs[0] = Fraction(1)
        for n in range(1, ctx.order + 1):
            _mul_two_term(coeffs, n, Fraction(1))
            _mul_two_term(coeffs, n, Fraction(1))
        return QSeries._raw(coeffs)
    q = ctx.q
    val = 1.0 + 0j
    qn = 1.0 + 0j
    n = 0
    while True:
        n += 1
        qn *= q
        if abs(qn) < _TAIL_EPS or n > 10_000:
            break
        val *= (1 - qn) ** 2
    return val


def _delta_checked_args(a, b, exact):
    for x in (a, b):
        if x == 0:
            raise ZeroArgumentError("delta argument is 0")
        if exact:
            if x == 1:
                raise SingularPointError("delta argument is 1 (pole)")
        else:
            if abs(x - 1) < 1e-3:
                raise SingularPointError("delta argument within 1e-3 of 1 (pole)")


def _delta_exact(a: Fraction, b: Fraction, ctx: QContext) -> QSeries:
    _delta_checked_args(a, b, exact=True)
    n_ord = ctx.order
    ab = a * b
    lead = (ab - 1) / ((a - 1) * (b - 1))
    num = [Fraction(0)] * (n_ord + 1)
    num[0] = Fraction(1)
    den = list(num)
    inv_ab = 1 / ab
    inv_a = 1 / a
    inv_b = 1 / b
    one = Fraction(1)
    for n in range(1, n_ord + 1):
        _mul_two_term(num, n, ab)
        _mul_two_term(num, n, inv_ab)
        _mul_two_term(num, n, one)
        _mul_two_term(num, n, one)
        _mul_two_term(den, n, a)
        _mul_two_term(den, n, inv_a)
        _mul_two_term(den, n, b)
        _mul_two_term(den, n, inv_b)
    series = QSeries._raw(num) / QSeries._raw(den)
    return QSeries._raw(lead * c for c in series.coeffs)


def _delta_complex(a: complex, b: complex, ctx: QContext) -> complex:
    _delta_checked_args(a, b, exact=False)
    ab = a * b
    val = (ab - 1) / ((a - 1) * (b - 1))
    q = ctx.q
    mags = [abs(ab), 1 / abs(ab), abs(a), 1 / abs(a), abs(b), 1 / abs(b)]
    big = max(mags + [1.0])
    qn = 1.0 + 0j
    n = 0
    while True:
        n += 1
        qn *= q
        if abs(qn) * big < _TAIL_EPS or n > 10_000:
            break
        den = (1 - qn * a) * (1 - qn / a) * (1 - qn * b) * (1 - qn / b)
        if abs(den) < 1e-6:
            raise SingularPointError("delta argument hits a q-shifted pole")
        val *= (1 - qn * ab) * (1 - qn / ab) * (1 - qn) ** 2 / den
    return val


def delta(a, b, ctx: QContext):
    """delta(a, b) for scalar arguments; memoized per context values.

    >>> delta(Fraction(2), Fraction(3), QContext(EXACT, order=2)).coeffs[:2]
    (Fraction(5, 2), Fraction(-35, 6))
    """
    cache = _delta_caches.setdefault(ctx, {})
    key = (a, b)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if ctx.backend == EXACT:
        out = _delta_exact(Fraction(a), Fraction(b), ctx)
    else:
        out = _delta_complex(complex(a), complex(b), ctx)
    cache[key] = out
    return out


_delta_caches: dict = {}


# ---------------------------------------------------------------------------
# monomials and evaluation points


def var_names(rank: int) -> tuple[str, ...]:
    return tuple(
        [f"zeta{s}" for s in range(1, rank + 1)]
        + [f"nu{s}" for s in range(1, rank + 1)]
        + ["h"]
    )


@dataclass(frozen=True)
class Monomial:
    """Integer exponent vector over (zeta_1..zeta_r, nu_1..nu_r, h)."""

    exps: tuple[int, ...]

    @property
    def rank(self):
        return (len(self.exps) - 1) // 2

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def inverse(self) -> "Monomial":
        return Monomial(tuple(-a for a in self.exps))

    def power(self, k: int) -> "Monomial":
        return Monomial(tuple(k * a for a in self.exps))


def zeta_monomial(rank: int, root_coords) -> Monomial:
    """e^(-beta) for beta = sum c_t alpha_t, i.e. prod zeta_t^(c_t)."""
    c = tuple(root_coords)
    return Monomial(c + (0,) * rank + (0,))


def nu_monomial(rank: int, coroot_coords) -> Monomial:
    """h^gamma for gamma = sum c_t alpha_t^v, i.e. prod nu_t^(c_t)."""
    c = tuple(coroot_coords)
    return Monomial((0,) * rank + c + (0,))


def h_monomial(rank: int, k: int = 1) -> Monomial:
    return Monomial((0,) * (2 * rank) + (k,))


@dataclass(frozen=True)
class EvalPoint:
    """Nonzero scalar value per formal variable, constant in q."""

    ctx: QContext
    values: tuple

    @property
    def rank(self):
        return (len(self.values) - 1) // 2

    def value(self, name: str):
        return self.values[var_names(self.rank).index(name)]

    @property
    def h(self):
        return self.values[-1]

    def replace(self, updates: dict) -> "EvalPoint":
        names = var_names(self.rank)
        vals = list(self.values)
        for name, v in updates.items():
            vals[names.index(name)] = v
        return EvalPoint(self.ctx, tuple(vals))


def eval_monomial(point: EvalPoint, m: Monomial):
    """Product of assigned values to integer powers; never zero."""
    acc = None
    for v, e in zip(point.values, m.exps):
        if e == 0:
            continue
        term = v**e
        acc = term if acc is None else acc * term
    if acc is None:
        return Fraction(1) if point.ctx.backend == EXACT else complex(1)
    return acc


def transform_point(point: EvalPoint, s: int, sector: str, rs: RootSystem) -> EvalPoint:
    """Precompose with the simple reflection s on one sector of variables.

    nu-sector: the new value of nu_t is the old value of the monomial
    h^(s(alpha_t^v)); zeta-sector analogously with s(alpha_t). h and the
    other sector are untouched. Involutive per sector.
    """
    rank = rs.rank
    if sector not in (ZETA, NU):
        raise ValueError(f"unknown sector {sector!r}")
    offset = 0 if sector == ZETA else rank
    lattice = ROOT if sector == ZETA else COROOT
    old = point.values
    new = list(old)
    for t in range(1, rank + 1):
        image = reflect(rs, s, LatticeVector(_unit(rank, t), lattice)).coords
        acc = None
        for u, e in enumerate(image):
            if e == 0:
                continue
            term = old[offset + u] ** e
            acc = term if acc is None else acc * term
        new[offset + t - 1] = acc if acc is not None else old[offset + t - 1] ** 0
    return EvalPoint(point.ctx, tuple(new))


def _unit(rank, t):
    return tuple(1 if u == t - 1 else 0 for u in range(rank))


def twist_point(point: EvalPoint, matrix, rs: RootSystem) -> EvalPoint:
    """zeta-sector precomposition with a full Weyl matrix (column j = image
    of alpha_j); used by the R-matrix recursion's accumulated twists."""
    rank = rs.rank
    old = point.values
    new = list(old)
    for t in range(rank):
        acc = None
        for u in range(rank):
            e = matrix[u][t]
            if e == 0:
                continue
            term = old[u] ** e
            acc = term if acc is None else acc * term
        if acc is not None:
            new[t] = acc
    return EvalPoint(point.ctx, tuple(new))


# ---------------------------------------------------------------------------
# point sampling


def sample_point(rank: int, ctx: QContext, rng: Random) -> EvalPoint:
    """One random nonsingular candidate point; callers resample on
    SingularPointError raised downstream."""
    nvars = 2 * rank + 1
    if ctx.backend == EXACT:
        vals = tuple(_random_fraction(rng) for _ in range(nvars))
    else:
        vals = tuple(_random_annulus(rng) for _ in range(nvars))
    return EvalPoint(ctx, vals)


def _random_fraction(rng: Random) -> Fraction:
    while True:
        num = rng.randint(1, 99) * rng.choice((1, -1))
        den = rng.randint(1, 99)
        if num != den:  # value 1 is singular for every delta against h
            return Fraction(num, den)


def _random_annulus(rng: Random) -> complex:
    r = rng.uniform(0.5, 2.0)
    phi = rng.uniform(0.0, 2 * cmath.pi)
    return r * cmath.exp(1j * phi)


def with_resampling(make_point, compute, attempts: int = 10):
    """Run compute(point) with fresh points until it avoids singularities."""
    last = None
    for _ in range(attempts):
        point = make_point()
        try:
            return point, compute(point)
        except SingularPointError as err:
            last = err
    raise SingularPointError(
        f"no nonsingular point found after {attempts} resamples: {last}"
    )
