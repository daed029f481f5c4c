"""Duration-distribution families with moment-matched parameterization.

Four families: truncated-normal, truncated-logistic, scaled-beta, uniform.
Each spec is parameterized so that its realized mean and standard deviation
equal the requested values to 1e-6 -- for the truncated families this is
post-truncation, with location/scale corrected by root-finding.  Default
truncation support is [0, mean + 6*std], which keeps durations non-negative
and gives the robust solvers a finite support to grid.

Sampling is inverse-transform from a seeded PCG64 generator, so every draw
is reproducible and support containment is automatic.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, stats

FAMILIES = ("truncated-normal", "truncated-logistic", "scaled-beta", "uniform")

_LOGISTIC_S = math.sqrt(3.0) / math.pi  # std -> scale for the logistic family
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(240)


class InfeasibleSpecError(ValueError):
    """Requested (mean, std, support) cannot be realized by the family."""


@dataclass(frozen=True)
class DistributionSpec:
    family: str
    mean: float
    std: float
    support_lo: float
    support_hi: float
    params: tuple  # family-specific: (loc, scale) or (alpha, beta)


@dataclass(frozen=True)
class MomentSummary:
    """Raw moments E[X^q] for q in Q, plus mean and std (M1 = mean,
    M2 = mean^2 + std^2)."""

    moments: dict
    mean: float
    std: float


def make_spec(family, mean, std, support=None):
    """Build a spec whose realized mean/std match the request to 1e-6.

    support is an optional (lo, hi) override; hi may be inf for the
    truncated families.  Raises InfeasibleSpecError when the family cannot
    attain the request on that support.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if mean <= 0 or std <= 0:
        raise InfeasibleSpecError("mean and std must be positive")

    if family == "uniform":
        half = math.sqrt(3.0) * std
        lo, hi = mean - half, mean + half
        if lo < 0:
            raise InfeasibleSpecError(
                f"uniform support [{lo:.4g}, {hi:.4g}] leaves the non-negative axis"
            )
        if support is not None and (lo < support[0] - 1e-12 or hi > support[1] + 1e-12):
            raise InfeasibleSpecError("uniform support exceeds the requested support")
        spec = DistributionSpec(family, mean, std, lo, hi, (lo, hi))
    else:
        lo, hi = support if support is not None else (0.0, mean + 6.0 * std)
        if lo < 0 or hi <= lo:
            raise InfeasibleSpecError("support must satisfy 0 <= lo < hi")
        if not (lo < mean < hi):
            raise InfeasibleSpecError("mean must lie inside the support")
        if family == "scaled-beta":
            spec = _fit_scaled_beta(mean, std, lo, hi)
        else:
            spec = _fit_truncated(family, mean, std, lo, hi)

    got_mean, got_std = _realized_mean_std(spec)
    if abs(got_mean - mean) > 1e-6 or abs(got_std - std) > 1e-6:
        raise InfeasibleSpecError(
            f"{family} parameter correction failed: realized "
            f"({got_mean:.8g}, {got_std:.8g}) vs requested ({mean:.8g}, {std:.8g})"
        )
    return spec


def _fit_scaled_beta(mean, std, lo, hi):
    width = hi - lo
    m = (mean - lo) / width
    v = (std / width) ** 2
    if v >= m * (1.0 - m):
        raise InfeasibleSpecError("beta method of moments needs var < m(1-m)")
    common = m * (1.0 - m) / v - 1.0
    alpha = m * common
    beta = (1.0 - m) * common
    if alpha <= 0 or beta <= 0:
        raise InfeasibleSpecError("beta method of moments gave non-positive shape")
    return DistributionSpec("scaled-beta", mean, std, lo, hi, (alpha, beta))


def _fit_truncated(family, mean, std, lo, hi):
    def residual(params):
        loc, log_scale = params
        m, s = _truncated_mean_std(family, loc, math.exp(log_scale), lo, hi)
        return [m - mean, s - std]

    start_scale = std if family == "truncated-normal" else std * _LOGISTIC_S
    sol = optimize.root(residual, x0=[mean, math.log(start_scale)], tol=1e-10)
    # hybr reports no-progress when the start is already at the numerical
    # noise floor of the moment evaluation; the residual is what matters
    if np.max(np.abs(sol.fun)) > 1e-7:
        raise InfeasibleSpecError(f"{family} correction did not converge: {sol.message}")
    loc, scale = float(sol.x[0]), float(math.exp(sol.x[1]))
    return DistributionSpec(family, mean, std, lo, hi, (loc, scale))


def _truncated_mean_std(family, loc, scale, lo, hi):
    if family == "truncated-normal":
        a = (lo - loc) / scale
        b = (hi - loc) / scale if np.isfinite(hi) else np.inf
        # beyond ~40 sigma the clipped mass is far below double precision;
        # clamping keeps truncnorm.stats well conditioned for the root-finder
        a = max(a, -40.0)
        b = np.inf if b > 40.0 else max(b, a + 1e-8)
        m, v = stats.truncnorm.stats(a, b, loc=loc, scale=scale, moments="mv")
        return float(m), float(np.sqrt(v))
    m1 = _truncated_moment("truncated-logistic", loc, scale, lo, hi, 1)
    m2 = _truncated_moment("truncated-logistic", loc, scale, lo, hi, 2)
    return m1, math.sqrt(max(m2 - m1 * m1, 0.0))


def _base_dist(family, loc, scale):
    return stats.norm(loc, scale) if family == "truncated-normal" else stats.logistic(loc, scale)


def _truncated_moment(family, loc, scale, lo, hi, q):
    """E[X^q] of the base density truncated to [lo, hi], by Gauss-Legendre."""
    base = _base_dist(family, loc, scale)
    hi_eff = min(hi, loc + 60.0 * scale) if np.isfinite(hi) else loc + 60.0 * scale
    lo_eff = max(lo, loc - 60.0 * scale)
    mass = base.cdf(hi_eff) - base.cdf(lo_eff)
    half = 0.5 * (hi_eff - lo_eff)
    x = lo_eff + half * (_GL_NODES + 1.0)
    vals = (x ** q) * base.pdf(x)
    return float(half * (_GL_WEIGHTS @ vals) / mass)


def _realized_mean_std(spec):
    if spec.family == "uniform":
        a, b = spec.params
        return 0.5 * (a + b), (b - a) / math.sqrt(12.0)
    if spec.family == "scaled-beta":
        alpha, beta = spec.params
        width = spec.support_hi - spec.support_lo
        m = alpha / (alpha + beta)
        v = alpha * beta / ((alpha + beta) ** 2 * (alpha + beta + 1.0))
        return spec.support_lo + width * m, width * math.sqrt(v)
    loc, scale = spec.params
    return _truncated_mean_std(spec.family, loc, scale, spec.support_lo, spec.support_hi)


def cdf(spec, x):
    x = np.asarray(x, dtype=float)
    lo, hi = spec.support_lo, spec.support_hi
    if spec.family == "uniform":
        a, b = spec.params
        out = np.clip((x - a) / (b - a), 0.0, 1.0)
    elif spec.family == "scaled-beta":
        alpha, beta = spec.params
        out = stats.beta.cdf((x - lo) / (hi - lo), alpha, beta)
    else:
        loc, scale = spec.params
        base = _base_dist(spec.family, loc, scale)
        c_lo, c_hi = base.cdf(lo), base.cdf(hi) if np.isfinite(hi) else 1.0
        out = np.clip((base.cdf(np.clip(x, lo, hi)) - c_lo) / (c_hi - c_lo), 0.0, 1.0)
    return out if out.ndim else float(out)


def quantile(spec, q):
    """Inverse CDF; accepts scalars or arrays in (0, 1)."""
    q_arr = np.asarray(q, dtype=float)
    if np.any((q_arr <= 0.0) | (q_arr >= 1.0)):
        raise ValueError("quantile level must lie strictly inside (0, 1)")
    lo, hi = spec.support_lo, spec.support_hi
    if spec.family == "uniform":
        a, b = spec.params
        out = a + q_arr * (b - a)
    elif spec.family == "scaled-beta":
        alpha, beta = spec.params
        out = lo + (hi - lo) * stats.beta.ppf(q_arr, alpha, beta)
    else:
        loc, scale = spec.params
        base = _base_dist(spec.family, loc, scale)
        c_lo, c_hi = base.cdf(lo), base.cdf(hi) if np.isfinite(hi) else 1.0
        out = base.ppf(c_lo + q_arr * (c_hi - c_lo))
    return out if q_arr.ndim else float(out)


def sample(spec, count, rng_seed):
    """Inverse-transform draws; identical seed gives identical vectors."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(rng_seed)
    u = rng.random(count)
    u = np.clip(u, 1e-16, 1.0 - 1e-16)
    return quantile(spec, u)


def fit_normal_mle(samples):
    """MLE of a normal: sample mean and the biased (1/N) standard deviation."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        raise ValueError("need at least 2 samples")
    mean = float(samples.mean())
    std = float(np.sqrt(np.mean((samples - mean) ** 2)))
    return mean, std


def moments(spec, orders):
    """Raw moments E[X^q] of a spec, analytic where available."""
    orders = _check_orders(orders)
    vals = {}
    for q in orders:
        if spec.family == "uniform":
            a, b = spec.params
            vals[q] = (b ** (q + 1) - a ** (q + 1)) / ((q + 1) * (b - a))
        elif spec.family == "scaled-beta" and spec.support_lo == 0.0:
            alpha, beta = spec.params
            prod = 1.0
            for j in range(q):
                prod *= (alpha + j) / (alpha + beta + j)
            vals[q] = spec.support_hi ** q * prod
        elif spec.family == "scaled-beta":
            alpha, beta = spec.params
            width = spec.support_hi - spec.support_lo
            draws_free = stats.beta.moment(np.arange(q + 1), alpha, beta)
            vals[q] = sum(
                math.comb(q, k) * spec.support_lo ** (q - k) * width ** k * draws_free[k]
                for k in range(q + 1)
            )
        else:
            loc, scale = spec.params
            vals[q] = _truncated_moment(
                spec.family, loc, scale, spec.support_lo, spec.support_hi, q
            )
    mean, std = _realized_mean_std(spec)
    return MomentSummary(moments=vals, mean=mean, std=std)


def empirical_moments(samples, orders):
    """Raw moments of data; std is the biased (1/N) estimate so that
    M2 = mean^2 + std^2 holds exactly."""
    orders = _check_orders(orders)
    samples = np.asarray(samples, dtype=float)
    vals = {q: float(np.mean(samples ** q)) for q in orders}
    mean = float(samples.mean())
    std = float(np.sqrt(np.mean((samples - mean) ** 2)))
    return MomentSummary(moments=vals, mean=mean, std=std)


def _check_orders(orders):
    orders = sorted(set(int(q) for q in orders))
    if not orders or orders[0] < 1:
        raise ValueError("moment orders must be positive integers")
    return orders
