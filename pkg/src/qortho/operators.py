"""Matrix realizations of the representation operators in the canonical
orthonormal basis f_n, together with their eigencoefficient sequences,
normalization constants and spectra.

The self-adjoint operator acts tridiagonally with

    diag[n] = q^(n+1)(a+ab+b) - ab q^(2n+1)(1+q),
    off[n]  = sqrt(-ab) q^((n+2)/2) sqrt((1-q^(n+1))(1-aq^(n+1))(1-bq^(n+1))),

its eigenvalues are the two geometric sequences a q^(n+1), b q^(n+1),
and its eigenvector coefficients are weighted big q-Laguerre values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import mpmath
import numpy as np

from qortho.qseries import (
    DomainError,
    NonConvergenceError,
    QParams,
    Truncation,
    q_pochhammer,
    q_pochhammer_inf,
)
from qortho.polynomials import (
    big_q_laguerre_recurrence,
    match_spectral_point,
    spectral_sequence,
)

__all__ = [
    "Tridiagonal",
    "CoefficientVector",
    "SpectralPoints",
    "GeneratorMatrices",
    "XiBasis",
    "build_generator_matrices",
    "build_A",
    "compose_A_from_generators",
    "build_A1_A2",
    "compose_A1_A2_from_generators",
    "eigen_coefficients",
    "recurrence_residuals",
    "normalization_c",
    "normalization_cprime",
    "spectrum_points",
    "eig_tridiagonal",
    "qJ0_inverse_action",
    "psi_phi_coefficients",
]


@dataclass(frozen=True)
class Tridiagonal:
    """Tridiagonal matrix; symmetric when lower and upper share storage."""

    dim: int
    diag: np.ndarray
    lower: np.ndarray  # lower[i] couples column i to row i+1
    upper: np.ndarray  # upper[i] couples column i+1 to row i

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("dim must be a positive integer")
        if len(self.diag) != self.dim or len(self.lower) != self.dim - 1 or len(self.upper) != self.dim - 1:
            raise DomainError("inconsistent tridiagonal band lengths")
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper))):
            raise DomainError("tridiagonal entries must be finite")

    @classmethod
    def symmetric(cls, diag, offdiag):
        off = np.asarray(offdiag, dtype=float)
        return cls(dim=len(diag), diag=np.asarray(diag, dtype=float), lower=off, upper=off)

    @property
    def is_symmetric(self) -> bool:
        return self.lower is self.upper or np.array_equal(self.lower, self.upper)

    @property
    def offdiag(self) -> np.ndarray:
        if not self.is_symmetric:
            raise DomainError("offdiag is only defined for the symmetric case")
        return self.lower

    def dense(self) -> np.ndarray:
        m = np.diag(self.diag)
        idx = np.arange(self.dim - 1)
        m[idx + 1, idx] = self.lower
        m[idx, idx + 1] = self.upper
        return m

    def transpose(self) -> "Tridiagonal":
        return Tridiagonal(dim=self.dim, diag=self.diag, lower=self.upper, upper=self.lower)

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[1:] += self.lower * v[:-1]
        out[:-1] += self.upper * v[1:]
        return out


@dataclass(frozen=True)
class CoefficientVector:
    """Expansion coefficients of a representation-space element in the
    orthonormal basis f_n; lam is the eigenvalue it represents."""

    coeffs: np.ndarray
    lam: float
    normalizable: bool = True


@dataclass(frozen=True)
class SpectralPoints:
    """The two geometric eigenvalue branches a q^(n+1) and b q^(n+1)."""

    upper: np.ndarray
    lower: np.ndarray

    def merged_by_magnitude(self) -> np.ndarray:
        both = np.concatenate([self.upper, self.lower])
        return both[np.argsort(-np.abs(both), kind="stable")]


class XiBasis(Enum):
    XI_UPPER = "upper"  # eigenvectors at a q^(n+1)
    XI_LOWER = "lower"  # eigenvectors at b q^(n+1)


# ---------------------------------------------------------------------------
# generator matrices and operator assembly


@dataclass(frozen=True)
class GeneratorMatrices:
    """Raising/lowering/diagonal generator data truncated to dim rows."""

    dim: int
    raising: np.ndarray  # raising[n] = coefficient of f_{n+1} in J+ f_n
    lowering: np.ndarray  # lowering[n] = coefficient of f_n in J- f_{n+1}
    qj0_diag: np.ndarray  # q^(l+n)
    j0_diag: np.ndarray  # l + n

    def jplus_dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim))
        idx = np.arange(self.dim - 1)
        m[idx + 1, idx] = self.raising
        return m

    def jminus_dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim))
        idx = np.arange(self.dim - 1)
        m[idx, idx + 1] = self.lowering
        return m


def jminus_action_factor(n: int, p: QParams) -> float:
    """Coefficient of f_{n-1} in J- f_n; zero at n = 0."""
    q, a = p.q, p.a
    if n == 0:
        return 0.0
    # q^(2l+n-1) = a q^n and q^(-(n+l-3/2)/2) = a^(-1/4) q^((1-n)/2)
    return a ** -0.25 * q ** ((1 - n) / 2.0) / (1 - q) * math.sqrt((1 - q**n) * (1 - a * q**n))


def jplus_action_factor(n: int, p: QParams) -> float:
    """Coefficient of f_{n+1} in J+ f_n."""
    q, a = p.q, p.a
    return a ** -0.25 * q ** (-n / 2.0) / (1 - q) * math.sqrt((1 - q ** (n + 1)) * (1 - a * q ** (n + 1)))


def build_generator_matrices(p: QParams, dim: int) -> GeneratorMatrices:
    """Raising/lowering couplings and the q^(J0) diagonal, rows 0..dim-1."""
    if dim < 2:
        raise DomainError("dim must be at least 2")
    n = np.arange(dim)
    q, a = p.q, p.a
    raising = np.array([jplus_action_factor(k, p) for k in range(dim - 1)])
    lowering = np.array([jminus_action_factor(k + 1, p) for k in range(dim - 1)])
    qj0 = math.sqrt(a * q) * q ** n.astype(float)  # q^l = sqrt(aq)
    j0 = p.l + n.astype(float)
    return GeneratorMatrices(dim=dim, raising=raising, lowering=lowering, qj0_diag=qj0, j0_diag=j0)


def _a_diag(p: QParams, n: np.ndarray) -> np.ndarray:
    q, a, b = p.q, p.a, p.b
    return q ** (n + 1) * (a + a * b + b) - a * b * q ** (2 * n + 1) * (1 + q)


def build_A(p: QParams, dim: int) -> Tridiagonal:
    """Symmetric tridiagonal matrix of the diagonalized operator."""
    if dim < 1:
        raise DomainError("dim must be a positive integer")
    n = np.arange(dim, dtype=float)
    diag = _a_diag(p, n)
    k = n[:-1]
    off = (
        math.sqrt(-p.a * p.b)
        * p.q ** ((k + 2) / 2)
        * np.sqrt((1 - p.q ** (k + 1)) * (1 - p.a * p.q ** (k + 1)) * (1 - p.b * p.q ** (k + 1)))
    )
    return Tridiagonal.symmetric(diag, off)


def compose_A_from_generators(p: QParams, dim: int) -> np.ndarray:
    """Assemble the operator from generator matrices:

        alpha q^(J0/4) (sqrt(1-b q^(J0-l)) J+ q^((J0-l)/2)
                        + q^((J0-l)/2) J- sqrt(1-b q^(J0-l))) q^(J0/4)
        - beta1 q^(2 J0) + beta2 q^(J0-l)

    The last row/column of the truncation is corrupted by the missing
    coupling to row dim, so comparisons must exclude them.
    """
    g = build_generator_matrices(p, dim)
    n = np.arange(dim, dtype=float)
    q, a, b = p.q, p.a, p.b
    q4 = (a * q) ** 0.125 * q ** (n / 4)  # q^((l+n)/4)
    q2 = q ** (n / 2)  # q^((J0-l)/2) diagonal
    s = np.sqrt(1 - b * q**n)  # sqrt(1 - b q^(J0-l)), positive since b < 0
    jp, jm = g.jplus_dense(), g.jminus_dense()
    core = (s[:, None] * jp) * q2[None, :] + (q2[:, None] * jm) * s[None, :]
    mat = p.alpha * (q4[:, None] * core * q4[None, :])
    mat -= np.diag(p.beta1 * a * q ** (2 * n + 1))  # q^(2J0) = a q^(2n+1)
    mat += np.diag(p.beta2 * q**n)
    return mat


def build_A1_A2(p: QParams, dim: int) -> tuple:
    """The non-self-adjoint pair (A1, A2) with A2 = A1^T exactly.

    A1 is the composition alpha q^(J0/4)(J+ q^(J0-l) + J- (1-b q^(J0-l)))
    q^(J0/4) - beta1 q^(2J0) + beta2 q^(J0-l), whose eigenvector
    coefficients carry the weight (-ab)^(-k/2) q^(-k) ((aq;q)_k/(q;q)_k)^(1/2);
    A2 is its transpose.  Shared entry arrays make the transpose relation
    exact by construction; the compositions themselves are validated
    against dense generator products in the tests.
    """
    if dim < 2:
        raise DomainError("dim must be at least 2")
    n = np.arange(dim, dtype=float)
    k = n[:-1]
    q, a, b = p.q, p.a, p.b
    w = np.sqrt((1 - q ** (k + 1)) * (1 - a * q ** (k + 1)))
    c = math.sqrt(-a * b)
    diag = _a_diag(p, n)
    lower1 = c * q ** (k + 1) * w  # A1[n+1, n]
    upper1 = c * q * (1 - b * q ** (k + 1)) * w  # A1[n, n+1]
    a1 = Tridiagonal(dim=dim, diag=diag, lower=lower1, upper=upper1)
    a2 = Tridiagonal(dim=dim, diag=diag, lower=upper1, upper=lower1)
    return a1, a2


def compose_A1_A2_from_generators(p: QParams, dim: int) -> tuple:
    """Dense assembly of the (A1, A2) compositions from generator matrices."""
    g = build_generator_matrices(p, dim)
    n = np.arange(dim, dtype=float)
    q, a, b = p.q, p.a, p.b
    q4 = (a * q) ** 0.125 * q ** (n / 4)
    dq = q**n  # q^(J0-l)
    db = 1 - b * q**n  # 1 - b q^(J0-l)
    jp, jm = g.jplus_dense(), g.jminus_dense()
    diagpart = np.diag(-p.beta1 * a * q ** (2 * n + 1) + p.beta2 * q**n)
    # operator composition reads right to left: X Y = apply Y, then X
    core1 = jp * dq[None, :] + jm * db[None, :]
    core2 = db[:, None] * jp + dq[:, None] * jm
    a1 = p.alpha * (q4[:, None] * core1 * q4[None, :]) + diagpart
    a2 = p.alpha * (q4[:, None] * core2 * q4[None, :]) + diagpart
    return a1, a2


# ---------------------------------------------------------------------------
# eigencoefficients


_COEFF_DPS = 30


def _pref_a_ratio(m, q, a, b):
    """pref_{m+1}/pref_m for (-ab)^(-m/2) q^(-m(m+3)/4) ((aq,bq;q)_m/(q;q)_m)^(1/2)."""
    return (
        (-a * b) ** mpmath.mpf("-0.5")
        * q ** (-(2 * m + 4) / mpmath.mpf(4))
        * mpmath.sqrt((1 - a * q ** (m + 1)) * (1 - b * q ** (m + 1)) / (1 - q ** (m + 1)))
    )


def _spectral_coeff_mpf(p: QParams, branch: str, j: int, m_max: int, ratio_fn=_pref_a_ratio):
    """Eigencoefficient values at a spectral point as exact-exponent
    mpmath floats: prefactor accumulated alongside the backward-recurrence
    polynomial sequence, so neither factor over- or underflows."""
    seq = spectral_sequence(p, branch, j, m_max)
    out = []
    with mpmath.workdps(_COEFF_DPS):
        q, a, b = mpmath.mpf(p.q), mpmath.mpf(p.a), mpmath.mpf(p.b)
        pref = mpmath.mpf(1)
        for m in range(m_max + 1):
            out.append(pref * seq[m])
            if m < m_max:
                pref *= ratio_fn(m, q, a, b)
    return out


def _mpf_to_float_array(values, what: str) -> np.ndarray:
    out = np.zeros(len(values))
    for i, v in enumerate(values):
        f = float(v)
        if math.isinf(f):
            raise OverflowError(f"{what} overflows float range at index {i}")
        out[i] = f
    return out


def _signed_logs(values):
    """(sign, log10|v|) float arrays from mpmath values."""
    signs = np.zeros(len(values))
    logs = np.full(len(values), -np.inf)
    with mpmath.workdps(_COEFF_DPS):
        for i, v in enumerate(values):
            if v != 0:
                signs[i] = 1.0 if v > 0 else -1.0
                logs[i] = float(mpmath.log10(abs(v)))
    return signs, logs


_A_COEFF_CACHE: dict = {}


def _a_coeff_mpf_cached(p: QParams, branch: str, j: int, m_max: int):
    """Cached eigencoefficient values (mpmath floats) at a spectral
    point; the sweep engines revisit the same points for many index
    pairs."""
    key = (float(p.q), float(p.a), float(p.b), branch, j)
    hit = _A_COEFF_CACHE.get(key)
    if hit is not None and len(hit) > m_max:
        return hit[: m_max + 1]
    out = _spectral_coeff_mpf(p, branch, j, m_max)
    _A_COEFF_CACHE[key] = out
    return out


def _a_coeff_logs(p: QParams, branch: str, j: int, m_max: int):
    """(sign, log10|a_m|) arrays of the eigencoefficients at the spectral
    point of the given branch/index, m = 0..m_max."""
    return _signed_logs(_a_coeff_mpf_cached(p, branch, j, m_max))


def eigen_coefficients(lam: float, p: QParams, m_max: int, t: Truncation = Truncation()) -> CoefficientVector:
    """Eigencoefficient sequence a_m(lam), m = 0..m_max, with a_0 = 1:

        a_m = (-ab)^(-m/2) q^(-m(m+3)/4) ((aq,bq;q)_m/(q;q)_m)^(1/2) P_m(lam).

    At spectral points the values are square-summable and computed from
    the backward-recurrence polynomial sequence; any other lam is allowed
    but flagged non-normalizable.
    """
    hit = match_spectral_point(lam, p)
    if hit is not None:
        vals = _spectral_coeff_mpf(p, hit[0], hit[1], m_max)
        coeffs = _mpf_to_float_array(vals, "eigencoefficients")
        return CoefficientVector(coeffs=coeffs, lam=lam, normalizable=True)

    # generic lam: polynomial route with the prefactor held in log space
    pvals = big_q_laguerre_recurrence(m_max, lam, p)
    coeffs = np.zeros(m_max + 1)
    logpref = 0.0
    q, a, b = p.q, p.a, p.b
    for m in range(m_max + 1):
        v = pvals[m]
        if v != 0.0:
            mag = logpref + math.log10(abs(v))
            if mag > 300:
                raise OverflowError(f"eigencoefficient overflow at m={m}")
            coeffs[m] = math.copysign(10.0**mag, v)
        if m < m_max:
            logpref += -0.5 * math.log10(-a * b) - (2 * m + 4) / 4.0 * math.log10(q) + 0.5 * (
                math.log10(1 - a * q ** (m + 1))
                + math.log10(1 - b * q ** (m + 1))
                - math.log10(1 - q ** (m + 1))
            )
    return CoefficientVector(coeffs=coeffs, lam=lam, normalizable=False)


def recurrence_residuals(vec: CoefficientVector, p: QParams) -> np.ndarray:
    """Row residuals |(A v)_m - lam v_m| / scale for interior rows
    1..m_max-1, where scale is the largest term magnitude in the row."""
    m_max = len(vec.coeffs) - 1
    tri = build_A(p, m_max + 1)
    v = vec.coeffs
    out = np.zeros(max(m_max - 1, 0))
    for m in range(1, m_max):
        terms = (
            tri.offdiag[m] * v[m + 1],
            tri.offdiag[m - 1] * v[m - 1],
            tri.diag[m] * v[m],
            -vec.lam * v[m],
        )
        scale = max(abs(x) for x in terms)
        res = abs(math.fsum(terms))
        out[m - 1] = res / scale if scale > 0 else res
    return out


# ---------------------------------------------------------------------------
# normalization constants


def normalization_c(n: int, p: QParams, t: Truncation = Truncation(), form: str = "finite") -> float:
    """Normalization constant of the upper-branch eigenvectors.

    Both printed forms are implemented; they agree to rounding and the
    tests cross-check them.
    """
    q, a, b = p.q, p.a, p.b
    if form == "finite":
        radicand = (
            q_pochhammer(a * q, q, n)
            * q_pochhammer_inf(b * q, q, t)
            * q**n
            / (q_pochhammer(a * q / b, q, n) * q_pochhammer(q, q, n) * q_pochhammer_inf(b / a, q, t))
        )
    elif form == "infinite":
        radicand = (
            q_pochhammer_inf(q ** (n + 1), q, t)
            * q_pochhammer_inf(a * q ** (n + 1) / b, q, t)
            * q_pochhammer_inf(a * q, q, t)
            * q_pochhammer_inf(b * q, q, t)
            * q**n
            / (
                q_pochhammer_inf(a * q ** (n + 1), q, t)
                * q_pochhammer_inf(q, q, t)
                * q_pochhammer_inf(b / a, q, t)
                * q_pochhammer_inf(a * q / b, q, t)
            )
        )
    else:
        raise DomainError("form must be 'finite' or 'infinite'")
    if not radicand > 0:
        raise DomainError(f"normalization radicand {radicand} not positive; parameter domain violated")
    return radicand**0.5


def normalization_cprime(n: int, p: QParams, t: Truncation = Truncation(), form: str = "finite") -> float:
    """Normalization constant of the lower-branch eigenvectors; the
    prefactor -b/a is positive for b < 0."""
    q, a, b = p.q, p.a, p.b
    if form == "finite":
        radicand = (
            (-b / a)
            * q**n
            * q_pochhammer(b * q, q, n)
            * q_pochhammer_inf(a * q, q, t)
            / (
                q_pochhammer(q, q, n)
                * q_pochhammer_inf(a * q / b, q, t)
                * q_pochhammer(b / a, q, n + 1)
            )
        )
    elif form == "infinite":
        radicand = (
            (-b / a)
            * q**n
            * q_pochhammer_inf(b * q ** (n + 1) / a, q, t)
            * q_pochhammer_inf(q ** (n + 1), q, t)
            * q_pochhammer_inf(a * q, q, t)
            * q_pochhammer_inf(b * q, q, t)
            / (
                q_pochhammer_inf(b * q ** (n + 1), q, t)
                * q_pochhammer_inf(q, q, t)
                * q_pochhammer_inf(b / a, q, t)
                * q_pochhammer_inf(a * q / b, q, t)
            )
        )
    else:
        raise DomainError("form must be 'finite' or 'infinite'")
    if not radicand > 0:
        raise DomainError(f"normalization radicand {radicand} not positive; parameter domain violated")
    return radicand**0.5


# ---------------------------------------------------------------------------
# spectrum


def spectrum_points(p: QParams, N: int) -> SpectralPoints:
    """The first N exact eigenvalues on each branch."""
    if N < 1:
        raise DomainError("N must be a positive integer")
    n = np.arange(N, dtype=float)
    return SpectralPoints(upper=p.a * p.q ** (n + 1), lower=p.b * p.q ** (n + 1))


def eig_tridiagonal(tri: Tridiagonal) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending.

    Bisection on the Sturm sign-count of the shifted LDL^T pivots:
    deterministic, and accurate to ~1e-15 * ||T|| even for the
    eigenvalues clustered near zero.
    """
    if not tri.is_symmetric:
        raise DomainError("eig_tridiagonal requires a symmetric matrix")
    d = np.asarray(tri.diag, dtype=float)
    n = d.size
    if n == 1:
        return d.copy()
    e = np.asarray(tri.offdiag, dtype=float)
    e2 = e * e
    rad = np.zeros(n)
    rad[:-1] += np.abs(e)
    rad[1:] += np.abs(e)
    lo = float(np.min(d - rad))
    hi = float(np.max(d + rad))
    norm = max(abs(lo), abs(hi), 1e-300)
    pivmin = 1e-290

    def count_below(xs: np.ndarray) -> np.ndarray:
        cnt = np.zeros(xs.shape, dtype=np.int64)
        dd = d[0] - xs
        dd = np.where(np.abs(dd) < pivmin, -pivmin, dd)
        cnt += dd < 0
        for i in range(1, n):
            dd = d[i] - xs - e2[i - 1] / dd
            dd = np.where(np.abs(dd) < pivmin, -pivmin, dd)
            cnt += dd < 0
        return cnt

    ks = np.arange(n)
    lob = np.full(n, lo - 1e-12 * norm)
    hib = np.full(n, hi + 1e-12 * norm)
    width_target = 1e-14 * norm
    for _ in range(120):
        done = (hib - lob) <= width_target
        if np.all(done):
            break
        mid = 0.5 * (lob + hib)
        below = count_below(mid) > ks
        hib = np.where(below, mid, hib)
        lob = np.where(below, lob, mid)
    else:
        raise NonConvergenceError("bisection failed to localize all eigenvalues")
    return 0.5 * (lob + hib)


# ---------------------------------------------------------------------------
# action of q^(-J0) on the eigenvector bases


def qJ0_inverse_action(basis: XiBasis, n: int, p: QParams, orthonormal: bool = False) -> tuple:
    """Tridiagonal coefficients (sub, diag, super) of q^(-J0) acting on
    the eigenvector family of the chosen branch; `orthonormal` selects
    the normalized-basis variant."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    q, a, b = p.q, p.a, p.b
    if basis is XiBasis.XI_UPPER:
        lead = a**-1.5
        diag = -lead * q ** (-2 * n - 1.5) * (b * (1 + q) - q ** (n + 1) * (a * b + a + b))
        if orthonormal:
            sup = lead * b * q ** (-2 * n - 2) * math.sqrt(
                (1 - a * q ** (n + 1)) * (1 - q ** (n + 1)) * (1 - a * q ** (n + 1) / b)
            )
            sub = lead * b * q ** (-2.0 * n) * math.sqrt(
                (1 - a * q**n) * (1 - q**n) * (1 - a * q**n / b)
            )
        else:
            sup = lead * b * q ** (-2 * n - 1.5) * (1 - a * q ** (n + 1))
            sub = lead * b * q ** (-2 * n - 0.5) * (1 - q**n) * (1 - a * q**n / b)
        return sub, diag, sup
    if basis is XiBasis.XI_LOWER:
        lead = math.sqrt(a) / b
        diag = -lead * q ** (-2 * n - 1.5) * (1 + q - q ** (n + 1) * (a * b + a + b) / a)
        if orthonormal:
            sup = lead * q ** (-2 * n - 2) * math.sqrt(
                (1 - b * q ** (n + 1)) * (1 - q ** (n + 1)) * (1 - b * q ** (n + 1) / a)
            )
            sub = lead * q ** (-2.0 * n) * math.sqrt(
                (1 - b * q**n) * (1 - q**n) * (1 - b * q**n / a)
            )
        else:
            sup = lead * q ** (-2 * n - 1.5) * (1 - b * q ** (n + 1))
            sub = lead * q ** (-2 * n - 0.5) * (1 - q**n) * (1 - b * q**n / a)
        return sub, diag, sup
    raise DomainError(f"unknown basis {basis}")


# ---------------------------------------------------------------------------
# eigenvectors of the non-self-adjoint pair


def _pref_psi_ratio(m, q, a, b):
    """Ratio for (-ab)^(-m/2) q^(-m) ((aq;q)_m/(q;q)_m)^(1/2)."""
    return (
        (-a * b) ** mpmath.mpf("-0.5")
        / q
        * mpmath.sqrt((1 - a * q ** (m + 1)) / (1 - q ** (m + 1)))
    )


def _pref_phi_ratio(m, q, a, b):
    """Ratio for (-ab)^(-m/2) q^(-m(m+1)/2) ((aq;q)_m/(q;q)_m)^(1/2) (bq;q)_m."""
    return (
        (-a * b) ** mpmath.mpf("-0.5")
        * q ** (-(m + 1))
        * mpmath.sqrt((1 - a * q ** (m + 1)) / (1 - q ** (m + 1)))
        * (1 - b * q ** (m + 1))
    )


_PSI_PHI_CACHE: dict = {}


def _psi_phi_mpf_cached(p: QParams, branch: str, j: int, m_max: int):
    """Cached coefficient values (mpmath floats) of the two
    non-self-adjoint eigenvector families at a spectral point."""
    key = (float(p.q), float(p.a), float(p.b), branch, j)
    hit = _PSI_PHI_CACHE.get(key)
    if hit is not None and len(hit[0]) > m_max:
        return hit[0][: m_max + 1], hit[1][: m_max + 1]
    psi = _spectral_coeff_mpf(p, branch, j, m_max, _pref_psi_ratio)
    phi = _spectral_coeff_mpf(p, branch, j, m_max, _pref_phi_ratio)
    _PSI_PHI_CACHE[key] = (psi, phi)
    return psi, phi


def _psi_phi_logs(p: QParams, branch: str, j: int, m_max: int):
    """Signed log10 coefficient arrays of the two eigenvector families at
    a spectral point."""
    psi, phi = _psi_phi_mpf_cached(p, branch, j, m_max)
    s_psi, l_psi = _signed_logs(psi)
    s_phi, l_phi = _signed_logs(phi)
    return s_psi, l_psi, s_phi, l_phi


def psi_phi_coefficients(lam: float, p: QParams, m_max: int, t: Truncation = Truncation()) -> tuple:
    """Coefficient vectors of the eigenvector families of A1 and A2:

        psi_k = (-ab)^(-k/2) q^(-k)        ((aq;q)_k/(q;q)_k)^(1/2) P_k(lam)
        phi_k = (-ab)^(-k/2) q^(-k(k+1)/2) ((aq;q)_k (bq;q)_k^2/(q;q)_k)^(1/2) P_k(lam)

    phi_k grows with k at deep spectral points; exceeding float range
    raises OverflowError (the biorthogonality engine works on the log
    forms instead and has no such limit).
    """
    hit = match_spectral_point(lam, p)
    if hit is None:
        raise DomainError("psi/phi coefficients are defined at spectral points")
    psi_vals, phi_vals = _psi_phi_mpf_cached(p, hit[0], hit[1], m_max)
    psi = _mpf_to_float_array(psi_vals, "psi coefficients")
    phi = _mpf_to_float_array(phi_vals, "phi coefficients")
    return (
        CoefficientVector(coeffs=psi, lam=lam, normalizable=True),
        CoefficientVector(coeffs=phi, lam=lam, normalizable=True),
    )
