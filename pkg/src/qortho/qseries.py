"""Core q-analysis kernels: q-Pochhammer symbols, q-numbers, basic
hypergeometric series and Jackson's q-exponential.

All kernels are written against a generic real scalar: they work with
Python floats by default and with ``mpmath.mpf`` values when higher
precision is required.  No function keeps state; everything here is a
pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "QSeriesError",
    "DomainError",
    "NonConvergenceError",
    "SeriesDivergenceError",
    "DenominatorZeroError",
    "TailError",
    "Truncation",
    "QParams",
    "NeumaierSum",
    "q_pochhammer",
    "q_pochhammer_multi",
    "q_pochhammer_inf",
    "q_number",
    "phi_2_1",
    "phi_3_2",
    "jackson_Eq",
]

# Tolerance used to decide that a numerator parameter equals q^{-n} exactly
# (terminating series detection).  Absorbs float noise in parameter
# construction only; every terminating use in practice is an exact q^{-n}.
TERMINATION_RTOL = 1e-10


class QSeriesError(Exception):
    """Base class for q-series evaluation failures."""


class DomainError(QSeriesError, ValueError):
    """A parameter lies outside the admissible domain."""


class NonConvergenceError(QSeriesError, RuntimeError):
    """A series or product failed to converge within max_terms."""


class SeriesDivergenceError(QSeriesError, ValueError):
    """Nonterminating basic series with |z| >= 1."""


class DenominatorZeroError(QSeriesError, ZeroDivisionError):
    """A denominator Pochhammer factor vanishes before termination."""


class TailError(QSeriesError, RuntimeError):
    """A truncated-series tail could not be certified below tolerance."""


def _ln(x):
    """Natural log dispatching on the scalar type (float vs mpmath)."""
    if isinstance(x, (float, int)):
        return math.log(x)
    import mpmath

    return mpmath.log(x)


class NeumaierSum:
    """Compensated (Neumaier) accumulator.

    Keeps a running error term so that alternating q-series lose only
    O(eps * sum |t_k|) absolutely instead of O(eps * n * max partial sum).
    """

    __slots__ = ("_s", "_c", "terms", "max_abs_term")

    def __init__(self, zero=0.0):
        self._s = zero
        self._c = zero
        self.terms = 0
        self.max_abs_term = abs(zero)

    def add(self, term):
        t = self._s + term
        if abs(self._s) >= abs(term):
            self._c += (self._s - t) + term
        else:
            self._c += (term - t) + self._s
        self._s = t
        self.terms += 1
        a = abs(term)
        if a > self.max_abs_term:
            self.max_abs_term = a

    @property
    def value(self):
        return self._s + self._c


@dataclass(frozen=True)
class Truncation:
    """Series/product truncation policy.

    Stopping requires ``small_run`` consecutive negligible terms; running
    out of ``max_terms`` raises :class:`NonConvergenceError` rather than
    silently truncating.
    """

    rel_tol: float = 1e-12
    abs_tol: float = 0.0
    max_terms: int = 10000
    small_run: int = 10

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.abs_tol < 0:
            raise DomainError("abs_tol must be nonnegative")
        if self.max_terms < 1:
            raise DomainError("max_terms must be a positive integer")
        if self.small_run < 1:
            raise DomainError("small_run must be a positive integer")


@dataclass(frozen=True)
class QParams:
    """Parameter triple (q, a, b) with 0 < q < 1, 0 < a < 1/q, b < 0.

    The lowest weight l is derived from a = q^(2l-1).  The derived
    operator constants alpha, beta1, beta2 of the Jacobi-matrix
    realization are exposed read-only.
    """

    q: float
    a: float
    b: float

    def __post_init__(self):
        if not (0 < self.q < 1):
            raise DomainError("q must lie strictly in (0, 1)")
        if not (0 < self.a):
            raise DomainError("a must be positive")
        if not (self.a * self.q < 1):
            raise DomainError("a must be smaller than 1/q")
        if not (self.b < 0):
            raise DomainError("b must be negative")

    @classmethod
    def from_l(cls, q, l, b):
        """Construct from the lowest weight l > 0 via a = q^(2l-1)."""
        if not (l > 0):
            raise DomainError("l must be positive")
        return cls(q=q, a=q ** (2 * l - 1), b=b)

    @property
    def l(self):
        """Lowest weight, l = (1 + ln a / ln q) / 2."""
        return (1 + _ln(self.a) / _ln(self.q)) / 2

    @property
    def alpha(self):
        """(-b)^(1/2) q^l (1-q)."""
        return (-self.b) ** 0.5 * self.q**self.l * (1 - self.q)

    @property
    def beta1(self):
        """b (1+q)."""
        return self.b * (1 + self.q)

    @property
    def beta2(self):
        """b q + q^(2l) (b+1); note q^(2l) = a q."""
        return self.b * self.q + self.a * self.q * (self.b + 1)


def q_pochhammer(a, q, n: int):
    """Finite q-shifted factorial (a;q)_n = prod_{k<n} (1 - a q^k)."""
    if n < 0:
        raise DomainError("q_pochhammer order must be nonnegative")
    out = 1.0 if isinstance(a, float) and isinstance(q, float) else a * 0 + 1
    aqk = a
    for _ in range(n):
        out = out * (1 - aqk)
        aqk = aqk * q
    return out


def q_pochhammer_multi(params, q, n: int):
    """(a_1, ..., a_k; q)_n as a single product."""
    out = 1
    for a in params:
        out = out * q_pochhammer(a, q, n)
    return out


def _as_negative_q_power(u, q):
    """Return j if u == q^(-j) for an integer j >= 0 (within tolerance)."""
    try:
        if u == 1:
            return 0
        if not (u > 1):
            return None
    except TypeError:
        return None  # complex parameters never terminate
    j = round(-_ln(u) / _ln(q))
    if j >= 0 and abs(u * q**j - 1) <= TERMINATION_RTOL:
        return int(j)
    return None


def q_pochhammer_inf(a, q, t: Truncation = Truncation()):
    """Infinite product (a;q)_inf = prod_{k>=0} (1 - a q^k) for 0 < q < 1.

    Returns exactly 0 when a = q^(-j) for some integer j >= 0, where the
    (j+1)-st factor vanishes.
    """
    if not (0 < q < 1):
        raise DomainError("q must lie strictly in (0, 1)")
    if _as_negative_q_power(a, q) is not None:
        return 0.0 * a  # preserves scalar type
    out = 1 - a
    aqk = a * q
    run = 0
    for _ in range(t.max_terms):
        if abs(aqk) < t.rel_tol:
            run += 1
            if run >= t.small_run:
                return out
        else:
            run = 0
        out = out * (1 - aqk)
        aqk = aqk * q
    raise NonConvergenceError(
        f"(a;q)_inf did not converge within {t.max_terms} factors (a={a}, q={q})"
    )


def q_number(a, q):
    """[a]_q = (q^(a/2) - q^(-a/2)) / (q^(1/2) - q^(-1/2))."""
    if not (0 < q < 1):
        raise DomainError("q must lie strictly in (0, 1)")
    half = q**0.5
    return (q ** (a / 2) - q ** (-a / 2)) / (half - 1 / half)


def _phi_series(numerators, denominators, q, z, t: Truncation):
    """Sum the basic hypergeometric series with r = s+1 normalization:

        sum_k (n_1,...,n_r; q)_k / ((d_1,...,d_s; q)_k (q;q)_k) z^k.

    Terminating series (a numerator equal to q^(-n)) are summed exactly to
    the terminating index; nonterminating series require |z| < 1.
    """
    if not (0 < q < 1):
        raise DomainError("q must lie strictly in (0, 1)")

    terminate_at = None
    for u in numerators:
        j = _as_negative_q_power(u, q)
        if j is not None and (terminate_at is None or j < terminate_at):
            terminate_at = j

    # a denominator parameter q^{-j} zeroes the term denominators at k = j+1
    for d in denominators:
        j = _as_negative_q_power(d, q)
        if j is not None and (terminate_at is None or j < terminate_at):
            raise DenominatorZeroError(
                f"denominator parameter {d} equals q^-{j}; factor vanishes before termination"
            )

    if terminate_at is None and not abs(z) < 1:
        raise SeriesDivergenceError(
            f"nonterminating basic series needs |z| < 1, got |z| = {abs(z)}"
        )

    acc = NeumaierSum(z * 0.0 + q * 0.0)
    term = 1 + z * 0  # scalar 1 of the right type
    qk = 1 + z * 0
    run = 0
    k = 0
    while True:
        acc.add(term)
        if terminate_at is not None and k >= terminate_at:
            return acc.value
        if k >= t.max_terms:
            raise NonConvergenceError(
                f"basic series did not converge within {t.max_terms} terms"
            )
        ratio = z
        for u in numerators:
            ratio = ratio * (1 - u * qk)
        qk1 = qk * q
        for d in denominators:
            ratio = ratio / (1 - d * qk)
        term = term * ratio / (1 - qk1)
        qk = qk1
        k += 1
        if terminate_at is None:
            if abs(term) <= t.rel_tol * abs(acc.value) + t.abs_tol + t.rel_tol * 1e-300:
                run += 1
                if run >= t.small_run:
                    acc.add(term)
                    return acc.value
            else:
                run = 0


def phi_2_1(a, b, c, q, z, t: Truncation = Truncation()):
    """2phi1(a, b; c; q, z)."""
    return _phi_series((a, b), (c,), q, z, t)


def phi_3_2(a1, a2, a3, b1, b2, q, z, t: Truncation = Truncation()):
    """3phi2(a1, a2, a3; b1, b2; q, z)."""
    return _phi_series((a1, a2, a3), (b1, b2), q, z, t)


def jackson_Eq(z, q, t: Truncation = Truncation()):
    """Jackson's q-exponential E_q(z) = sum_n q^(n(n-1)/2) z^n / (q;q)_n.

    Equals the product (-z;q)_inf, hence vanishes at z = -q^(-j).  Near
    those zeros the alternating sum cancels almost completely; float
    inputs are then re-summed automatically at extended precision.
    """
    if not (0 < q < 1):
        raise DomainError("q must lie strictly in (0, 1)")
    j = _as_negative_q_power(-z, q)
    if j is not None:
        return 0.0 * z
    value, max_abs = _jackson_eq_sum(z, q, t)
    if isinstance(z, (int, float)) and isinstance(q, (int, float)):
        # cancellation guard: term-construction rounding ~ eps * sum|t_k|
        noise = 1e-16 * max_abs * 50
        if noise > 0.05 * t.rel_tol * (1 + abs(value)):
            import mpmath

            dps = int(math.log10(max(max_abs, 1.0)) + 30)
            with mpmath.workdps(dps):
                value_mp, _ = _jackson_eq_sum(
                    mpmath.mpf(z), mpmath.mpf(q), Truncation(rel_tol=10.0**(10 - dps), max_terms=t.max_terms)
                )
            return float(value_mp)
    return value


def _jackson_eq_sum(z, q, t: Truncation):
    acc = NeumaierSum(z * 0.0)
    term = 1 + z * 0
    qn = 1 + z * 0  # q^n
    run = 0
    for n in range(t.max_terms):
        acc.add(term)
        term = term * qn * z / (1 - qn * q)
        qn = qn * q
        if abs(term) <= t.rel_tol * abs(acc.value) + t.abs_tol + 1e-300:
            run += 1
            if run >= t.small_run:
                acc.add(term)
                return acc.value, acc.max_abs_term
        else:
            run = 0
    raise NonConvergenceError(f"E_q series did not converge within {t.max_terms} terms")
