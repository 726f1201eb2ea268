"""Big q-Laguerre and q-Meixner polynomial families.

Evaluation routes:

* terminating basic-hypergeometric series (the defining sums), with
  automatic precision escalation when the alternating sum cancels past
  what 64-bit floats can resolve;
* upward three-term recurrence, absolutely stable on the arguments the
  identities use;
* backward (minimal-solution) recurrence for whole sequences at spectral
  arguments a q^(j+1), b q^(j+1), where the polynomial values decay like
  q^(m^2/2) and forward recurrences lose all relative accuracy;
* coefficient extraction from the closed generating function, a route
  independent of all the recurrences.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Union

import mpmath
import numpy as np

from qortho.qseries import (
    DomainError,
    NeumaierSum,
    QParams,
    TailError,
    Truncation,
    _as_negative_q_power,
    phi_2_1,
    q_pochhammer,
    q_pochhammer_inf,
)

__all__ = [
    "Family",
    "Method",
    "PolyEval",
    "poly_eval",
    "big_q_laguerre",
    "big_q_laguerre_phi21",
    "big_q_laguerre_recurrence",
    "spectral_sequence",
    "match_spectral_point",
    "q_meixner",
    "dual_f",
    "dual_g",
    "generating_series",
    "generating_closed",
    "GeneratingDiagnostics",
    "q_inverse_meixner_relation",
    "classical_laguerre",
]

SPECTRAL_MATCH_RTOL = 1e-10
_MILLER_DPS = 30


# ---------------------------------------------------------------------------
# big q-Laguerre: series definitions


def _bigql_series_sum(n, x, a, b, q):
    """Terminating sum for 3phi2(q^-n, 0, x; aq, bq; q, q)."""
    acc = NeumaierSum(q * 0.0)
    term = 1 + q * 0
    for k in range(n + 1):
        acc.add(term)
        if k == n:
            break
        term = (
            term
            * (1 - q ** (k - n))
            * (1 - x * q**k)
            * q
            / ((1 - a * q ** (k + 1)) * (1 - b * q ** (k + 1)) * (1 - q ** (k + 1)))
        )
    return acc.value, acc.max_abs_term


def _escalated(sum_fn, args, value, max_abs, rel_tol):
    """Re-run a cancellation-prone sum in mpmath when float rounding is
    above rel_tol relative accuracy.

    The needed precision depends on the (unknown) true magnitude of the
    result, so the working precision is raised iteratively: each pass
    re-targets from the latest value estimate.  Capped at dps 400, past
    which the result is accepted with its (astronomically small) absolute
    error--this happens only for results that are exact zeros.
    """
    noise = 1e-16 * max_abs * 8
    if noise <= 0.05 * rel_tol * max(abs(value), 1e-30):
        return value
    log10_max = math.log10(max(max_abs, 1.0))
    est = abs(value)
    value_mp = None
    for _ in range(4):
        dps = max(25, int(log10_max - math.log10(rel_tol * max(est, 1e-290)) + 25))
        dps = min(dps, 400)
        with mpmath.workdps(dps):
            mp_args = [mpmath.mpf(v) if isinstance(v, float) else v for v in args]
            value_mp, max_abs_mp = sum_fn(*mp_args)
            log10_max = float(mpmath.log10(max_abs_mp)) if max_abs_mp > 0 else 0.0
            achieved = mpmath.mpf(10) ** (log10_max - dps + 2)
            if dps >= 400 or achieved <= rel_tol * max(abs(value_mp), mpmath.mpf("1e-290")):
                return float(value_mp)
            est = float(abs(value_mp)) or 1e-290
    return float(value_mp)


def _big_q_laguerre_raw(n, x, a, b, q, rel_tol=1e-13):
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if isinstance(x, float) and isinstance(q, float):
        value, max_abs = _bigql_series_sum(n, x, a, b, q)
        return _escalated(
            lambda nn_x, aa, bb, qq: _bigql_series_sum(n, nn_x, aa, bb, qq),
            (x, a, b, q),
            value,
            max_abs,
            rel_tol,
        )
    value, _ = _bigql_series_sum(n, x, a, b, q)
    return value


def big_q_laguerre(n: int, x, p: QParams, t: Truncation = Truncation()) -> float:
    """P_n(x; a, b; q) via the terminating 3phi2 definition."""
    return _big_q_laguerre_raw(n, x, p.a, p.b, p.q, rel_tol=min(t.rel_tol, 1e-13))


def big_q_laguerre_phi21(n: int, x, p: QParams, t: Truncation = Truncation()) -> float:
    """P_n via its 2phi1 form, (q^-n/b; q)_n^-1 2phi1(q^-n, aq/x; aq; q, x/b).

    Cross-check companion to :func:`big_q_laguerre`; requires x != 0.
    """
    if x == 0:
        raise DomainError("the 2phi1 form needs x != 0")
    a, b, q = p.a, p.b, p.q

    def _sum(xx, aa, bb, qq):
        acc = NeumaierSum(qq * 0.0)
        term = 1 + qq * 0
        z = xx / bb
        for k in range(n + 1):
            acc.add(term)
            if k == n:
                break
            term = (
                term
                * (1 - qq ** (k - n))
                * (1 - aa * qq / xx * qq**k)
                * z
                / ((1 - aa * qq ** (k + 1)) * (1 - qq ** (k + 1)))
            )
        pref = 1 + qq * 0
        for k in range(n):
            pref = pref * (1 - qq ** (k - n) / bb)
        return acc.value / pref, acc.max_abs_term * abs(1 / pref)

    if isinstance(x, float):
        value, max_abs = _sum(x, a, b, q)
        return _escalated(_sum, (x, a, b, q), value, max_abs, min(t.rel_tol, 1e-13))
    value, _ = _sum(x, a, b, q)
    return value


# ---------------------------------------------------------------------------
# recurrence route


def _recurrence_d(n, a, b, q):
    """Diagonal coefficient d_n = -ab q^(2n+1)(1+q) + q^(n+1)(a+ab+b)."""
    return -a * b * q ** (2 * n + 1) * (1 + q) + q ** (n + 1) * (a + a * b + b)


def big_q_laguerre_recurrence(n_max: int, x, p: QParams) -> list:
    """P_0(x), ..., P_{n_max}(x) by upward three-term recurrence.

    (1-aq^(n+1))(1-bq^(n+1)) P_{n+1} = (x - d_n) P_n + ab q^(n+1)(1-q^n) P_{n-1},
    seeded with P_0 = 1 (the n = 0 relation has no P_{-1} term).
    """
    a, b, q = p.a, p.b, p.q
    out = [1 + q * 0]
    if n_max == 0:
        return out
    prev = 0 * q
    cur = out[0]
    for n in range(n_max):
        nxt = ((x - _recurrence_d(n, a, b, q)) * cur + a * b * q ** (n + 1) * (1 - q**n) * prev) / (
            (1 - a * q ** (n + 1)) * (1 - b * q ** (n + 1))
        )
        out.append(nxt)
        prev, cur = cur, nxt
    return out


# ---------------------------------------------------------------------------
# spectral arguments: matching and minimal-solution sequences


def match_spectral_point(x, p: QParams, j_max: int = 500) -> Optional[tuple]:
    """Identify x with a q^(j+1) or b q^(j+1) within relative tolerance.

    Returns ("a", j) or ("b", j), or None when x is not a spectral point.
    """
    q = p.q
    if x > 0:
        j = round(math.log(x / p.a) / math.log(q)) - 1
        if 0 <= j <= j_max and abs(p.a * q ** (j + 1) - x) <= SPECTRAL_MATCH_RTOL * abs(x):
            return ("a", j)
    elif x < 0:
        j = round(math.log(x / p.b) / math.log(q)) - 1
        if 0 <= j <= j_max and abs(p.b * q ** (j + 1) - x) <= SPECTRAL_MATCH_RTOL * abs(x):
            return ("b", j)
    return None


_MILLER_CACHE: dict = {}


def spectral_sequence(p: QParams, branch: str, j: int, m_max: int) -> list:
    """P_0(lam), ..., P_{m_max}(lam) at lam = a q^(j+1) (branch "a") or
    b q^(j+1) (branch "b"), as mpmath floats.

    Computed by backward recurrence seeded deep in the tail, then
    normalized so P_0 = 1: at spectral points the polynomial sequence is
    the minimal solution of the three-term recurrence, so the forward
    direction cannot deliver relative accuracy at large m while the
    backward direction is self-correcting.
    """
    if branch not in ("a", "b"):
        raise DomainError("branch must be 'a' or 'b'")
    if j < 0:
        raise DomainError("spectral index must be nonnegative")
    key = (float(p.q), float(p.a), float(p.b), branch, j)
    cached = _MILLER_CACHE.get(key)
    if cached is not None and len(cached) > m_max:
        return cached[: m_max + 1]

    lam_f = (p.a if branch == "a" else p.b) * p.q ** (j + 1)
    # start index: the backward seed's contamination by the nonminimal
    # solution scales like 10^(h(M) - h(m_max)) where h(m) is the log10
    # size ratio of the two solutions; push M until 40 decades below.
    log10q = math.log10(p.q)
    slope = math.log10(-p.a * p.b) - 2 * math.log10(abs(lam_f))

    def h(m):
        return m * slope + m * (m + 3) / 2.0 * log10q

    M = m_max + max(15, j + 10)
    target = h(m_max) - 40.0
    while h(M + 1) > target and M < m_max + j + 800:
        M += 1

    with mpmath.workdps(_MILLER_DPS):
        q, a, b = mpmath.mpf(p.q), mpmath.mpf(p.a), mpmath.mpf(p.b)
        lam = (a if branch == "a" else b) * q ** (j + 1)
        seq = [mpmath.mpf(0)] * (M + 1)
        p_up = mpmath.mpf(0)  # P_{M+1} seed
        p_cur = mpmath.mpf(1)  # P_M seed (arbitrary scale)
        seq[M] = p_cur
        for m in range(M, 0, -1):
            am = (1 - a * q ** (m + 1)) * (1 - b * q ** (m + 1))
            cm = a * b * q ** (m + 1) * (1 - q**m)
            p_dn = (am * p_up + (_recurrence_d(m, a, b, q) - lam) * p_cur) / cm
            seq[m - 1] = p_dn
            p_up, p_cur = p_cur, p_dn
        p0 = seq[0]
        if p0 == 0:
            raise DomainError("backward recurrence normalization failed (P_0 = 0)")
        out = [seq[k] / p0 for k in range(M + 1)]

    _MILLER_CACHE[key] = out
    return out[: m_max + 1]


# ---------------------------------------------------------------------------
# q-Meixner family and duality


def q_meixner(n: int, m: int, bparam, c, q, t: Truncation = Truncation()) -> float:
    """M_n(q^-m; bparam, c; q) = 2phi1(q^-n, q^-m; bparam q; q, -q^(n+1)/c).

    Terminating at min(n, m); bparam may be negative.
    """
    if n < 0 or m < 0:
        raise DomainError("q-Meixner indices must be nonnegative")
    if not (0 < q < 1):
        raise DomainError("q must lie strictly in (0, 1)")
    if c == 0:
        raise DomainError("c must be nonzero")
    kmax = min(n, m)
    jz = _as_negative_q_power(bparam * q, q)
    if jz is not None and jz < kmax:
        raise DomainError(
            f"denominator parameter bparam*q = q^-{jz} vanishes before termination"
        )

    def _sum(bb, cc, qq):
        z = -(qq ** (n + 1)) / cc
        acc = NeumaierSum(qq * 0.0)
        term = 1 + qq * 0
        for k in range(kmax + 1):
            acc.add(term)
            if k == kmax:
                break
            term = (
                term
                * (1 - qq ** (k - n))
                * (1 - qq ** (k - m))
                * z
                / ((1 - bb * qq ** (k + 1)) * (1 - qq ** (k + 1)))
            )
        return acc.value, acc.max_abs_term

    if isinstance(q, float):
        value, max_abs = _sum(bparam, c, q)
        return _escalated(_sum, (bparam, c, q), value, max_abs, min(t.rel_tol, 1e-13))
    value, _ = _sum(bparam, c, q)
    return value


def dual_f(n: int, m: int, p: QParams, t: Truncation = Truncation()) -> float:
    """f_n(q^-m; a, b | q) = P_m evaluated at the spectral point a q^(n+1)."""
    return float(spectral_sequence(p, "a", n, m)[m])


def dual_g(n: int, m: int, p: QParams, t: Truncation = Truncation()) -> float:
    """g_n(q^-m; a, b | q) = P_m evaluated at the spectral point b q^(n+1)."""
    return float(spectral_sequence(p, "b", n, m)[m])


# ---------------------------------------------------------------------------
# generating function


class GeneratingDiagnostics(NamedTuple):
    value: float
    terms_used: int
    tail_estimate: float


def _generating_coefficient_ratio(n, a, b, q):
    """Ratio of consecutive series weights (aq,bq;q)_n q^(-n(n-1)/2)/(q;q)_n."""
    return (1 - a * q ** (n + 1)) * (1 - b * q ** (n + 1)) * q ** (-n) / (1 - q ** (n + 1))


def generating_series(
    x,
    tvar,
    p: QParams,
    n_max: int,
    t: Truncation = Truncation(),
    *,
    strict: bool = False,
    diagnostics: bool = False,
):
    """Partial sum of sum_n (aq,bq;q)_n q^(-n(n-1)/2)/(q;q)_n P_n(x) t^n.

    The tail is monitored through the last terms; in strict mode an
    uncertified tail raises :class:`TailError`.  The series converges only
    for |t| inside a radius that shrinks with the depth of the spectral
    argument; elsewhere the partial sums plateau and the tail estimate
    reports that honestly.
    """
    a, b, q = p.a, p.b, p.q
    hit = match_spectral_point(x, p) if isinstance(x, float) else None
    overflowed = False
    if hit is not None:
        # the weights grow like q^(-n(n-1)/2) while P_n shrinks faster;
        # form each term in mpmath so neither factor over/underflows
        seq = spectral_sequence(p, hit[0], hit[1], n_max)
        terms = []
        with mpmath.workdps(_MILLER_DPS):
            qm, am, bm, tm = map(mpmath.mpf, (q, a, b, tvar))
            coef = mpmath.mpf(1)
            tpow = mpmath.mpf(1)
            for n in range(n_max + 1):
                terms.append(float(coef * seq[n] * tpow))
                coef *= _generating_coefficient_ratio(n, am, bm, qm)
                tpow *= tm
    else:
        pvals = big_q_laguerre_recurrence(n_max, x, p)
        terms = []
        coef = 1.0
        tpow = 1.0
        for n in range(n_max + 1):
            term = coef * pvals[n] * tpow
            if not math.isfinite(term) or abs(term) > 1e280:
                overflowed = True  # manifestly divergent partial sums
                break
            terms.append(term)
            coef *= _generating_coefficient_ratio(n, a, b, q)
            tpow *= tvar

    acc = NeumaierSum()
    for term in terms:
        acc.add(term)
    value = acc.value

    tail = math.inf
    if tvar == 0:
        tail = 0.0
    elif not overflowed and len(terms) >= 3:
        t1, t2 = abs(terms[-2]), abs(terms[-1])
        if t2 == 0.0:
            tail = 0.0
        elif t2 < t1:
            r = t2 / t1
            tail = t2 * r / (1 - r)
        else:
            tail = t2  # not decaying; tail cannot be certified
    if strict and not (tail <= t.rel_tol * (1 + abs(value))):
        raise TailError(
            f"generating-series tail {float(tail):.3e} not negligible at n_max={n_max}"
        )
    if diagnostics:
        return GeneratingDiagnostics(value, len(terms), tail)
    return value


def generating_closed(x, tvar, p: QParams, t: Truncation = Truncation()) -> float:
    """Closed form of the generating function:

        (-abq^2 t;q)_inf / (-bqt;q)_inf * 2phi1(aq/x, 0; -1/(bt); q, x/b).

    The factor t inside the numerator Pochhammer comes straight out of
    the q-binomial theorem and is required for the t -> 0 limit to be 1.
    t = 0 or x = 0 are routed through the series form.

    The (a, b) roles in the formula are interchangeable (the series
    weights are symmetric); at a spectral argument the arrangement that
    makes the 2phi1 terminate is used, which is the one the term-by-term
    resummation actually proves there.
    """
    a, b, q = p.a, p.b, p.q
    if tvar == 0:
        return 1.0
    if x == 0:
        return generating_series(x, tvar, p, n_max=64, t=t, strict=True)
    hit = match_spectral_point(x, p) if isinstance(x, float) else None
    if hit is not None and hit[0] == "b":
        a, b = b, a
    pref = q_pochhammer_inf(-a * b * q * q * tvar, q, t) / q_pochhammer_inf(-b * q * tvar, q, t)
    return pref * phi_2_1(a * q / x, 0.0, -1.0 / (b * tvar), q, x / b, t)


def _generating_closed_complex(x: float, tc: complex, p: QParams, branch: str, j: int) -> complex:
    """Closed generating function at complex t, in the form terminating at
    the given spectral argument (parameter roles swapped on the b branch)."""
    a, b, q = p.a, p.b, p.q
    if branch == "b":
        a, b = b, a
    t = Truncation(rel_tol=1e-16, max_terms=4000, small_run=6)
    pref = q_pochhammer_inf(-a * b * q * q * tc, q, t) / q_pochhammer_inf(-b * q * tc, q, t)
    # terminating 2phi1(q^-j, 0; -1/(b t); q, x/b), j+1 terms
    acc = NeumaierSum(0j)
    term = 1 + 0j
    z = x / b
    for k in range(j + 1):
        acc.add(term)
        if k == j:
            break
        term = term * (1 - q ** (k - j)) * z / ((1 + q**k / (b * tc)) * (1 - q ** (k + 1)))
    return pref * acc.value


def _bigql_from_generating(n: int, x: float, p: QParams) -> float:
    """P_n(x) extracted as a Taylor coefficient of the closed generating
    function via FFT on a circle inside the first pole."""
    hit = match_spectral_point(x, p)
    if hit is None:
        raise DomainError(
            "generating-function extraction needs a spectral argument a q^(j+1) or b q^(j+1)"
        )
    branch, j = hit
    q = p.q
    radius = q ** (j - 1) / (abs(p.b) if branch == "a" else p.a)
    rho = 0.75 * radius
    m_samples = 256
    samples = np.empty(m_samples, dtype=complex)
    for k in range(m_samples):
        tc = rho * cmath.exp(2j * cmath.pi * k / m_samples)
        samples[k] = _generating_closed_complex(x, tc, p, branch, j)
    # Cauchy coefficients: c_n rho^n = (1/M) sum_k G(rho e^(i th_k)) e^(-i n th_k)
    coeffs = np.fft.fft(samples) / m_samples
    gcoef = coeffs[n].real / rho**n
    weight = (
        q_pochhammer(p.a * q, q, n)
        * q_pochhammer(p.b * q, q, n)
        * q ** (-n * (n - 1) / 2.0)
        / q_pochhammer(q, q, n)
    )
    return gcoef / weight


# ---------------------------------------------------------------------------
# base inversion q -> 1/q


def q_inverse_meixner_relation(n: int, x, bparam, c, q, t: Truncation = Truncation()):
    """Both sides of M_n(x; b, c; 1/q) = (-q^-n/c; q)_n P_n(qx/b; 1/b, -c; q).

    The left side is the terminating sum rewritten factor-by-factor into
    base q < 1 (summing at base 1/q > 1 overflows):

        M_n(x; b, c; 1/q) = sum_k (q^-n;q)_k (1/x;q)_k / ((q/b;q)_k (q;q)_k)
                            (-qx/(bc))^k.

    The right side's prefactor is forced by the x = 1 normalization
    M_n(1; b, c; 1/q) = 1 together with P_n's value at the argument q/b;
    an exact rational expansion at n = 2 confirms it.

    Returns (lhs, rhs).
    """
    if not (0 < q < 1):
        raise DomainError("q must lie strictly in (0, 1)")
    if bparam == 0 or c == 0 or x == 0:
        raise DomainError("x, bparam and c must be nonzero")
    jz = _as_negative_q_power(q / bparam, q)
    if jz is not None and jz < n:
        raise DomainError("denominator parameter q/b vanishes before termination")

    def _lhs_sum(xx, bb, cc, qq):
        acc = NeumaierSum(qq * 0.0)
        term = 1 + qq * 0
        z = -qq * xx / (bb * cc)
        for k in range(n + 1):
            acc.add(term)
            if k == n:
                break
            term = (
                term
                * (1 - qq ** (k - n))
                * (1 - qq**k / xx)
                * z
                / ((1 - qq ** (k + 1) / bb) * (1 - qq ** (k + 1)))
            )
        return acc.value, acc.max_abs_term

    if isinstance(x, float) and isinstance(q, float):
        value, max_abs = _lhs_sum(x, bparam, c, q)
        lhs = _escalated(_lhs_sum, (x, bparam, c, q), value, max_abs, min(t.rel_tol, 1e-13))
    else:
        lhs, _ = _lhs_sum(x, bparam, c, q)

    pref = 1 + q * 0
    for k in range(n):
        pref = pref * (1 + q ** (k - n) / c)
    rhs = pref * _big_q_laguerre_raw(n, q * x / bparam, 1 / bparam, -c, q, rel_tol=min(t.rel_tol, 1e-13))
    return lhs, rhs


# ---------------------------------------------------------------------------
# classical Laguerre polynomials


def classical_laguerre(n: int, alpha, x) -> float:
    """L_n^(alpha)(x) by the standard three-term recurrence."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    prev = 1.0 + x * 0
    if n == 0:
        return prev
    cur = 1 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


# ---------------------------------------------------------------------------
# evaluation dispatch


class Family(str, Enum):
    BIG_Q_LAGUERRE = "big-q-laguerre"
    Q_MEIXNER = "q-meixner"
    CLASSICAL_LAGUERRE = "classical-laguerre"


class Method(str, Enum):
    SERIES_DEF = "series"
    RECURRENCE = "recurrence"
    GENERATING = "generating"


@dataclass(frozen=True)
class PolyEval:
    """One polynomial evaluation request: family, degree, argument,
    parameters and the evaluation route to use."""

    family: Family
    degree: int
    argument: float
    params: Union[QParams, tuple, float]
    method: Method = Method.SERIES_DEF


def poly_eval(ev: PolyEval, t: Truncation = Truncation()) -> float:
    """Evaluate a :class:`PolyEval` request."""
    if ev.degree < 0:
        raise DomainError("degree must be nonnegative")
    if ev.family is Family.BIG_Q_LAGUERRE:
        if not isinstance(ev.params, QParams):
            raise DomainError("big q-Laguerre evaluation needs QParams")
        if ev.method is Method.SERIES_DEF:
            return float(big_q_laguerre(ev.degree, ev.argument, ev.params, t))
        if ev.method is Method.RECURRENCE:
            return float(big_q_laguerre_recurrence(ev.degree, ev.argument, ev.params)[-1])
        return _bigql_from_generating(ev.degree, ev.argument, ev.params)
    if ev.family is Family.Q_MEIXNER:
        bparam, c, q = ev.params
        if ev.method is not Method.SERIES_DEF:
            raise DomainError("q-Meixner supports the series route only")
        return float(q_meixner(ev.degree, int(ev.argument), bparam, c, q, t))
    if ev.family is Family.CLASSICAL_LAGUERRE:
        if ev.method is Method.SERIES_DEF:
            # monomial form sum_k (-1)^k binom(n+alpha, n-k) x^k / k!
            alpha = ev.params
            n = ev.degree
            total = 0.0
            for k in range(n + 1):
                binom = 1.0
                for i in range(n - k):
                    binom *= (alpha + k + 1 + i) / (i + 1)
                total += (-1) ** k * binom * ev.argument**k / math.factorial(k)
            return total
        return float(classical_laguerre(ev.degree, ev.params, ev.argument))
    raise DomainError(f"unknown family {ev.family}")
