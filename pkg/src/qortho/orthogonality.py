"""Numerical verification engines for the orthogonality, unitarity,
duality and biorthogonality identities.

Every verifier returns a :class:`VerificationReport` whose pass/fail
verdict is meaningful only when the truncation tail of the underlying
infinite sum has been certified below tolerance; otherwise the report
carries the third status "inconclusive".

Numerical strategy: sums over the spectral index n (eigenvalue label)
have geometrically decaying weights and are summed in plain floats with
compensation; sums over the basis index m have superexponentially
growing weights q^(-m(m-1)/2) balanced by the superexponential decay of
the polynomial values at spectral points, so their terms are formed in
log-magnitude/sign representation from extended-precision coefficient
sequences before being accumulated in floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

import mpmath

from qortho.qseries import (
    DomainError,
    NeumaierSum,
    NonConvergenceError,
    QParams,
    Truncation,
    phi_2_1,
    q_pochhammer,
    q_pochhammer_inf,
)
from qortho.polynomials import big_q_laguerre_recurrence, q_meixner
from qortho.operators import (
    _a_coeff_logs,
    _a_coeff_mpf_cached,
    _psi_phi_mpf_cached,
    normalization_c,
    normalization_cprime,
)

__all__ = [
    "VerificationReport",
    "RowCol",
    "DualPair",
    "dual_weight",
    "meixner_weight",
    "negative_b_meixner_weight",
    "verify_big_laguerre_orthogonality",
    "verify_identity_3637",
    "verify_unitarity",
    "verify_dual_orthogonality",
    "verify_meixner_orthogonality",
    "verify_negative_b_meixner_orthogonality",
    "verify_Eq_zero_identity",
    "verify_biorthogonality",
    "IDENTITY_FAMILIES",
    "run_identity_checks",
]

DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class VerificationReport:
    """Structured record of one identity check.

    For certified reports: passed <=> residual <= tolerance * (1 +
    max(|lhs|, |rhs|)).  When the tail estimate exceeds that bound the
    status is "inconclusive" and passed is forced False, since the
    computed lhs itself is then unreliable.
    """

    identity_id: str
    params: QParams
    indices: tuple
    lhs: float
    rhs: float
    residual: float
    terms_used: int
    tail_estimate: float
    passed: bool
    tolerance: float
    status: str
    note: str = ""


class RowCol(Enum):
    ROWS = "rows"
    COLUMNS = "columns"


class DualPair(Enum):
    FF = "ff"
    GG = "gg"
    FG = "fg"


def _finalize(identity_id, p, indices, lhs, rhs, terms_used, tail, tolerance, note="") -> VerificationReport:
    residual = abs(lhs - rhs)
    scale = 1.0 + max(abs(lhs), abs(rhs))
    certified = tail <= tolerance * scale
    residual_ok = residual <= tolerance * scale
    if not certified:
        status = "inconclusive"
        passed = False
    else:
        status = "pass" if residual_ok else "fail"
        passed = residual_ok
    return VerificationReport(
        identity_id=identity_id,
        params=p,
        indices=indices,
        lhs=float(lhs),
        rhs=float(rhs),
        residual=float(residual),
        terms_used=terms_used,
        tail_estimate=float(tail),
        passed=passed,
        tolerance=tolerance,
        status=status,
        note=note,
    )


def _certified_sum(terms: Callable[[int], float], t: Truncation, hard_cap: int = 2000):
    """Compensated sum of terms(0), terms(1), ... with an empirical
    geometric tail bound.

    Stops once small_run consecutive terms are below rel_tol relative to
    the running sum AND the recent term ratios certify a geometric tail.
    Returns (value, terms_used, tail_estimate); tail_estimate is inf when
    the ratio test never certifies within the cap.
    """
    acc = NeumaierSum()
    recent: list = []
    run = 0
    m = 0
    tail = math.inf
    while m <= hard_cap:
        term = terms(m)
        acc.add(term)
        recent.append(abs(term))
        if len(recent) > max(t.small_run, 4):
            recent.pop(0)
        if abs(term) <= t.rel_tol * (1.0 + abs(acc.value)):
            run += 1
            if run >= t.small_run:
                nz = [x for x in recent if x > 0.0]
                if len(nz) < 2:
                    tail = 0.0
                    break
                ratios = [b / a for a, b in zip(nz, nz[1:]) if a > 0.0]
                r = max(ratios) if ratios else 0.0
                # geometric extrapolation needs a contraction; keep
                # summing until the extrapolated tail itself is below
                # the relative target, not merely the last term
                if r < 0.995:
                    est = nz[-1] * r / (1.0 - r)
                    if est <= t.rel_tol * (1.0 + abs(acc.value)):
                        tail = est
                        break
                run = 0
        else:
            run = 0
        m += 1
    return acc.value, m + 1, tail


# ---------------------------------------------------------------------------
# constants shared by the closed-form sides


def _kc(p: QParams, t: Truncation) -> float:
    """(q, b/a, aq/b; q)_inf / ((aq, bq; q)_inf)."""
    q, a, b = p.q, p.a, p.b
    return (
        q_pochhammer_inf(q, q, t)
        * q_pochhammer_inf(b / a, q, t)
        * q_pochhammer_inf(a * q / b, q, t)
        / (q_pochhammer_inf(a * q, q, t) * q_pochhammer_inf(b * q, q, t))
    )


def _pref_a(m: int, p: QParams) -> float:
    """Eigencoefficient prefactor (-ab)^(-m/2) q^(-m(m+3)/4)
    ((aq,bq;q)_m/(q;q)_m)^(1/2); positive."""
    q, a, b = p.q, p.a, p.b
    return (
        (-a * b) ** (-m / 2.0)
        * q ** (-m * (m + 3) / 4.0)
        * (q_pochhammer(a * q, q, m) * q_pochhammer(b * q, q, m) / q_pochhammer(q, q, m)) ** 0.5
    )


def dual_weight(m: int, p: QParams) -> float:
    """Scalar-product weight of the dual-function space:

        (aq,bq;q)_m / ((q;q)_m (-abq^2)^m) q^(-m(m-1)/2);

    equals the squared eigencoefficient prefactor.  Strictly positive for
    b < 0 but grows superexponentially, so the verifiers never evaluate
    it in isolation at large m."""
    q, a, b = p.q, p.a, p.b
    w = (
        q_pochhammer(a * q, q, m)
        * q_pochhammer(b * q, q, m)
        / (q_pochhammer(q, q, m) * (-a * b * q * q) ** m)
        * q ** (-m * (m - 1) / 2.0)
    )
    if not w > 0:
        raise DomainError("dual weight lost positivity; parameter domain violated")
    return w


def meixner_weight(m: int, p: QParams) -> float:
    """Weight of the positive-parameter q-Meixner space (the dual weight
    with the upper-branch rescaling folded in):

        (aq;q)_m (-b/a)^m q^(m(m-1)/2) / ((bq;q)_m (q;q)_m)."""
    q, a, b = p.q, p.a, p.b
    w = (
        q_pochhammer(a * q, q, m)
        * (-b / a) ** m
        * q ** (m * (m - 1) / 2.0)
        / (q_pochhammer(b * q, q, m) * q_pochhammer(q, q, m))
    )
    if not w > 0:
        raise DomainError("q-Meixner weight lost positivity; parameter domain violated")
    return w


def negative_b_meixner_weight(m: int, p: QParams) -> float:
    """Weight of the negative-parameter q-Meixner space:

        (bq;q)_m (-a/b)^m q^(m(m-1)/2) / ((aq;q)_m (q;q)_m)."""
    q, a, b = p.q, p.a, p.b
    w = (
        q_pochhammer(b * q, q, m)
        * (-a / b) ** m
        * q ** (m * (m - 1) / 2.0)
        / (q_pochhammer(a * q, q, m) * q_pochhammer(q, q, m))
    )
    if not w > 0:
        raise DomainError("q-Meixner weight lost positivity; parameter domain violated")
    return w


# ---------------------------------------------------------------------------
# the q-integral orthogonality of the polynomial family


def _spectral_weighted_sum(branch: str, m: int, m2: int, p: QParams, t: Truncation):
    """sum_n w_n P_m(lam_n) P_m2(lam_n) over one spectral branch, with
    w_n = (q^(n+1); q)_inf (c q^(n+1)/d; q)_inf / (c q^(n+1); q)_inf q^n
    for branch value c and opposite value d."""
    q = p.q
    c, d = (p.a, p.b) if branch == "a" else (p.b, p.a)
    w0 = (
        q_pochhammer_inf(q, q, t)
        * q_pochhammer_inf(c * q / d, q, t)
        / q_pochhammer_inf(c * q, q, t)
    )
    deg = max(m, m2)
    state = {"w": w0, "n": -1}

    def term(n: int) -> float:
        if n != state["n"] + 1:  # _certified_sum iterates sequentially
            raise RuntimeError("nonsequential term access")
        state["n"] = n
        w = state["w"]
        if not w > 0:
            raise DomainError("orthogonality weight lost positivity")
        lam = c * q ** (n + 1)
        pv = big_q_laguerre_recurrence(deg, lam, p)
        state["w"] = w * q * (1 - c * q ** (n + 1)) / ((1 - q ** (n + 1)) * (1 - c * q ** (n + 1) / d))
        return w * pv[m] * pv[m2]

    return _certified_sum(term, t)


def verify_big_laguerre_orthogonality(
    m: int,
    m2: int,
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Orthogonality of the polynomial family over its two-branch
    discrete measure: the weighted sums over both spectral branches
    against the closed-form norm times a Kronecker delta."""
    sum_a, used_a, tail_a = _spectral_weighted_sum("a", m, m2, p, t)
    sum_b, used_b, tail_b = _spectral_weighted_sum("b", m, m2, p, t)
    lhs = sum_a - (p.b / p.a) * sum_b
    tail = tail_a + abs(p.b / p.a) * tail_b
    rhs = 0.0
    if m == m2:
        rhs = (
            _kc(p, t)
            * q_pochhammer(p.q, p.q, m)
            / (q_pochhammer(p.a * p.q, p.q, m) * q_pochhammer(p.b * p.q, p.q, m))
            * (-p.a * p.b) ** m
            * p.q ** (m * (m + 3) / 2.0)
        )
    return _finalize(
        "big-laguerre", p, (m, m2), lhs, rhs, used_a + used_b, tail, tolerance
    )


def verify_identity_3637(
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """The three-term two-sum evaluation (the degree-zero orthogonality)
    checked against its closed-form product value, with the equivalent
    basic-series form evaluated as a cross-check."""
    q, a, b = p.q, p.a, p.b
    sum_a, used_a, tail_a = _spectral_weighted_sum("a", 0, 0, p, t)
    sum_b, used_b, tail_b = _spectral_weighted_sum("b", 0, 0, p, t)
    lhs = sum_a - (b / a) * sum_b
    tail = tail_a + abs(b / a) * tail_b
    rhs = _kc(p, t)

    # equivalent form: prefactored 2phi1 evaluations at argument q
    lhs_phi = (
        q_pochhammer_inf(a * q / b, q, t)
        * q_pochhammer_inf(q, q, t)
        / q_pochhammer_inf(a * q, q, t)
        * phi_2_1(a * q, 0.0, a * q / b, q, q, t)
        - (b / a)
        * q_pochhammer_inf(b * q / a, q, t)
        * q_pochhammer_inf(q, q, t)
        / q_pochhammer_inf(b * q, q, t)
        * phi_2_1(b * q, 0.0, b * q / a, q, q, t)
    )
    cross = float(abs(lhs - lhs_phi))
    note = f"basic-series form agrees to {cross:.3e}"
    rep = _finalize("sears", p, (0, 0), lhs, rhs, used_a + used_b, tail, tolerance, note)
    if cross > 1e-11 * (1.0 + abs(lhs)) and rep.status == "pass":
        rep = replace(rep, status="fail", passed=False, note=note + " (cross-check failed)")
    return rep


# ---------------------------------------------------------------------------
# bilinear sums over the basis index (dual orthogonality, unitarity columns,
# biorthogonality)


def _branch_of_label(label: int) -> tuple:
    """Integer eigenvalue label -> (branch, branch index); nonnegative
    labels are the positive branch, negative labels the negative one."""
    return ("a", label) if label >= 0 else ("b", -label - 1)


def _c_of_label(label: int, p: QParams, t: Truncation) -> float:
    if label >= 0:
        return normalization_c(label, p, t)
    return normalization_cprime(-label - 1, p, t)


def _bilinear_terms(vals1, vals2) -> list:
    """Float terms vals1[m] * vals2[m] with the products formed in
    mpmath: full relative accuracy per term even where the two factors'
    magnitudes span hundreds of decades in opposite directions."""
    out = []
    with mpmath.workdps(30):
        for v1, v2 in zip(vals1, vals2):
            f = float(v1 * v2)
            if math.isinf(f):
                raise NonConvergenceError("bilinear term overflow")
            out.append(f)
    return out


def _bilinear_sum(
    coeff_fn,
    p: QParams,
    spec1: tuple,
    spec2: tuple,
    t: Truncation,
    m_cap: int = 320,
):
    """Certified sum over m of coeff(spec1)[m] * coeff(spec2)[m]."""
    m_cut = 48
    while True:
        vals1 = coeff_fn(p, spec1[0], spec1[1], m_cut)
        vals2 = coeff_fn(p, spec2[0], spec2[1], m_cut) if spec2 != spec1 else vals1
        arr = _bilinear_terms(vals1, vals2)
        value, used, tail = _certified_sum(lambda m: arr[m], t, hard_cap=m_cut)
        if tail <= t.rel_tol * (1.0 + abs(value)) or m_cut >= m_cap:
            return value, used, tail
        m_cut = min(2 * m_cut, m_cap)


def verify_dual_orthogonality(
    which: DualPair,
    n: int,
    n2: int,
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Orthogonality of the dual functions under the weight
    (aq,bq;q)_m / ((q;q)_m (-abq^2)^m) q^(-m(m-1)/2).

    That weight equals the squared eigencoefficient prefactor, so each
    term w_m f f' is formed as the product of the two eigencoefficient
    values in log representation; the cross case (one function from each
    branch) is an exact cancellation handled by the same extended-
    precision coefficients."""
    if n < 0 or n2 < 0:
        raise DomainError("dual indices must be nonnegative")
    which = DualPair(which)
    if which is DualPair.FF:
        spec1, spec2 = ("a", n), ("a", n2)
        rhs = normalization_c(n, p, t) ** -2.0 if n == n2 else 0.0
    elif which is DualPair.GG:
        spec1, spec2 = ("b", n), ("b", n2)
        rhs = normalization_cprime(n, p, t) ** -2.0 if n == n2 else 0.0
    else:
        spec1, spec2 = ("a", n), ("b", n2)
        rhs = 0.0
    lhs, used, tail = _bilinear_sum(_a_coeff_mpf_cached, p, spec1, spec2, t)
    return _finalize(f"dual-{which.value}", p, (n, n2), lhs, rhs, used, tail, tolerance)


def _rows_branch_sum(branch: str, i: int, j: int, p: QParams, t: Truncation):
    """sum_n c_n^2 a_i(lam_n) a_j(lam_n) over one spectral branch, with
    the terms formed from extended-precision coefficient logs."""
    deg = max(i, j)
    cfun = normalization_c if branch == "a" else normalization_cprime

    def term(n: int) -> float:
        s, l = _a_coeff_logs(p, branch, n, deg)
        cn = cfun(n, p, t)
        lg = l[i] + l[j] + 2.0 * math.log10(cn)
        if lg == -math.inf or lg < -300:
            return 0.0
        return s[i] * s[j] * 10.0**lg

    return _certified_sum(term, t, hard_cap=700)


def verify_unitarity(
    rowcol: RowCol,
    i: int,
    j: int,
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Row and column normalization of the connection matrix
    u_{mn} = c_n a_m(lam_n), lam indexed over both branches.

    Rows sum u_in u_jn over all eigenvalue labels (both branches);
    columns sum over the basis index and are the dual sums with the
    normalization constants attached.  Rows express the same identity as
    the polynomial orthogonality, rescaled by pref_i pref_j / Kc."""
    rowcol = RowCol(rowcol)
    if rowcol is RowCol.ROWS:
        if i < 0 or j < 0:
            raise DomainError("row indices must be nonnegative")
        sum_a, used_a, tail_a = _rows_branch_sum("a", i, j, p, t)
        sum_b, used_b, tail_b = _rows_branch_sum("b", i, j, p, t)
        lhs = sum_a + sum_b
        rhs = 1.0 if i == j else 0.0
        return _finalize(
            "unitarity-rows", p, (i, j), lhs, rhs, used_a + used_b, tail_a + tail_b, tolerance
        )
    spec1 = _branch_of_label(i)
    spec2 = _branch_of_label(j)
    ci = _c_of_label(i, p, t)
    cj = _c_of_label(j, p, t)
    value, used, tail = _bilinear_sum(_a_coeff_mpf_cached, p, spec1, spec2, t)
    lhs = ci * cj * value
    rhs = 1.0 if i == j else 0.0
    return _finalize("unitarity-columns", p, (i, j), lhs, rhs, used, ci * cj * tail, tolerance)


def verify_biorthogonality(
    m: int,
    n: int,
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Biorthogonality of the two non-self-adjoint eigenvector families:
    <Psi_m, Phi_n> = delta_mn over integer labels covering both spectral
    branches, computed as the coefficient inner product scaled by the
    normalization constants."""
    spec1 = _branch_of_label(m)
    spec2 = _branch_of_label(n)

    m_cut = 48
    m_cap = 320
    while True:
        psi_vals = _psi_phi_mpf_cached(p, spec1[0], spec1[1], m_cut)[0]
        phi_vals = _psi_phi_mpf_cached(p, spec2[0], spec2[1], m_cut)[1]
        arr = _bilinear_terms(psi_vals, phi_vals)
        value, used, tail = _certified_sum(lambda k: arr[k], t, hard_cap=m_cut)
        if tail <= t.rel_tol * (1.0 + abs(value)) or m_cut >= m_cap:
            break
        m_cut = min(2 * m_cut, m_cap)

    cm = _c_of_label(m, p, t)
    cn = _c_of_label(n, p, t)
    lhs = cm * cn * value
    rhs = 1.0 if m == n else 0.0
    return _finalize("biortho", p, (m, n), lhs, rhs, used, cm * cn * tail, tolerance)


# ---------------------------------------------------------------------------
# q-Meixner orthogonality relations


def _meixner_weighted_sum(first, second, n, n2, p, t: Truncation, use_mp: bool = False):
    """sum_m (first*q;q)_m (-second/first)^m q^(m(m-1)/2) / ((second*q;q)_m (q;q)_m)
    M_n(q^-m) M_n2(q^-m) with both polynomials in the (first, -second/first)
    parameterization."""
    q = mpmath.mpf(p.q) if use_mp else p.q
    fa = mpmath.mpf(first) if use_mp else first
    sa = mpmath.mpf(second) if use_mp else second
    state = {"w": 1.0 * q / q, "n": -1}

    def term(m: int) -> float:
        w = state["w"]
        if not w > 0:
            raise DomainError("orthogonality weight lost positivity")
        v1 = q_meixner(n, m, fa, -sa / fa, q, t)
        v2 = q_meixner(n2, m, fa, -sa / fa, q, t) if n2 != n else v1
        state["w"] = w * (1 - fa * q ** (m + 1)) * (-sa / fa) * q**m / (
            (1 - sa * q ** (m + 1)) * (1 - q ** (m + 1))
        )
        return w * v1 * v2

    return _certified_sum(term, t)


def _meixner_rhs(first, second, n, p, t: Truncation) -> float:
    q = p.q
    return (
        q_pochhammer_inf(second / first, q, t)
        / q_pochhammer_inf(second * q, q, t)
        * q_pochhammer(first * q / second, q, n)
        * q_pochhammer(q, q, n)
        / q_pochhammer(first * q, q, n)
        * q ** (-float(n))
    )


def verify_meixner_orthogonality(
    n: int,
    n2: int,
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """The classical q-Meixner orthogonality, realized here by the
    positive-parameter family M_n(q^-m; a, -b/a; q)."""
    lhs, used, tail = _meixner_weighted_sum(p.a, p.b, n, n2, p, t)
    rhs = _meixner_rhs(p.a, p.b, n, p, t) if n == n2 else 0.0
    return _finalize("meixner", p, (n, n2), lhs, rhs, used, tail, tolerance)


def verify_negative_b_meixner_orthogonality(
    n: int,
    n2: int,
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """The same orthogonality shape for the negative-parameter family
    M_n(q^-m; b, -a/b; q) with b < 0."""
    lhs, used, tail = _meixner_weighted_sum(p.b, p.a, n, n2, p, t)
    rhs = _meixner_rhs(p.b, p.a, n, p, t) if n == n2 else 0.0
    return _finalize("meixner-negb", p, (n, n2), lhs, rhs, used, tail, tolerance)


def verify_Eq_zero_identity(
    n: int,
    n2: int,
    p: QParams,
    t: Truncation = Truncation(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """The mixed-family cancellation

        sum_m (-1)^m q^(m(m-1)/2)/(q;q)_m M_n(q^-m; a,-b/a) M_n2(q^-m; b,-a/b) = 0.

    Expanding the polynomials in powers of q^-m reduces every
    contribution to the q-exponential E_q evaluated at one of its zeros
    -q^-j, which is why the alternating sum cancels exactly.  Computed
    with compensated summation; retried at extended precision if the
    64-bit residual exceeds tolerance."""

    def run(use_mp: bool):
        q = mpmath.mpf(p.q) if use_mp else p.q
        a = mpmath.mpf(p.a) if use_mp else p.a
        b = mpmath.mpf(p.b) if use_mp else p.b
        state = {"w": 1.0 * q / q}

        def term(m: int) -> float:
            w = state["w"]
            v1 = q_meixner(n, m, a, -b / a, q, t)
            v2 = q_meixner(n2, m, b, -a / b, q, t)
            state["w"] = -w * q**m / (1 - q ** (m + 1))
            return w * v1 * v2

        return _certified_sum(term, t)

    lhs, used, tail = run(use_mp=False)
    note = "every term reduces to E_q at a zero -q^-j"
    scale = 1.0 + abs(lhs)
    if abs(lhs) > tolerance * scale and tail <= tolerance * scale:
        with mpmath.workdps(40):
            lhs, used, tail = run(use_mp=True)
        note += "; retried at extended precision"
    return _finalize("eq-zero", p, (n, n2), lhs, 0.0, used, tail, tolerance, note)


# ---------------------------------------------------------------------------
# sweep driver


IDENTITY_FAMILIES = (
    "big-laguerre",
    "sears",
    "unitarity",
    "dual",
    "meixner",
    "meixner-negb",
    "eq-zero",
    "biortho",
)


def run_identity_checks(
    identity: str,
    p: QParams,
    t: Truncation = Truncation(),
    index_max: int = 8,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list:
    """All checks of one identity family over the default index grid,
    sorted by (identity_id, indices)."""
    if identity == "all":
        out = []
        for fam in IDENTITY_FAMILIES:
            out.extend(run_identity_checks(fam, p, t, index_max, tolerance))
        return out

    reports = []
    pairs_upper = [(i, j) for i in range(index_max + 1) for j in range(i, index_max + 1)]
    grid_full = [(i, j) for i in range(index_max + 1) for j in range(index_max + 1)]
    zlabels = list(range(-(index_max + 1), index_max + 1))
    zpairs = [(i, j) for i in zlabels for j in zlabels if i <= j]

    if identity == "big-laguerre":
        for i, j in pairs_upper:
            reports.append(verify_big_laguerre_orthogonality(i, j, p, t, tolerance))
    elif identity == "sears":
        reports.append(verify_identity_3637(p, t, tolerance))
    elif identity == "unitarity":
        for i, j in pairs_upper:
            reports.append(verify_unitarity(RowCol.ROWS, i, j, p, t, tolerance))
        for i, j in zpairs:
            reports.append(verify_unitarity(RowCol.COLUMNS, i, j, p, t, tolerance))
    elif identity == "dual":
        for i, j in pairs_upper:
            reports.append(verify_dual_orthogonality(DualPair.FF, i, j, p, t, tolerance))
            reports.append(verify_dual_orthogonality(DualPair.GG, i, j, p, t, tolerance))
        for i, j in grid_full:
            reports.append(verify_dual_orthogonality(DualPair.FG, i, j, p, t, tolerance))
    elif identity == "meixner":
        for i, j in pairs_upper:
            reports.append(verify_meixner_orthogonality(i, j, p, t, tolerance))
    elif identity == "meixner-negb":
        for i, j in pairs_upper:
            reports.append(verify_negative_b_meixner_orthogonality(i, j, p, t, tolerance))
    elif identity == "eq-zero":
        for i, j in grid_full:
            reports.append(verify_Eq_zero_identity(i, j, p, t, tolerance))
    elif identity == "biortho":
        for i, j in zpairs:
            reports.append(verify_biorthogonality(i, j, p, t, tolerance))
    else:
        raise DomainError(f"unknown identity family: {identity!r}")

    reports.sort(key=lambda r: (r.identity_id, r.indices))
    return reports
