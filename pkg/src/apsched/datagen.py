"""Synthetic appointment data: categorical covariates driving duration law.

Each job carries four categorical covariates (gender 0-1, day-of-month 0-29,
time-of-day 0-4, intensity 0-3).  The duration is drawn from the configured
family with covariate-dependent moments
    mean = 1 + 0.1*day + 0.4*time + 1.5*intensity
    std  = 0.1 + 0.2*gender + 0.2*intensity
plus additive U(-1, 1) noise, clamped at zero.  Consecutive rows are grouped
into scheduling periods of n jobs.  One-hot encoding is 2+30+5+4 = 41 wide.
"""

import csv
import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import distributions

COVARIATE_NAMES = ("gender", "day", "time", "intensity")
COVARIATE_SIZES = (2, 30, 5, 4)
ENCODED_WIDTH = sum(COVARIATE_SIZES)  # 41
_OFFSETS = np.concatenate([[0], np.cumsum(COVARIATE_SIZES)[:-1]])


@dataclass(frozen=True)
class JobRecord:
    gender: int
    day: int
    time: int
    intensity: int
    duration: float

    def __post_init__(self):
        _check_covariates(self.gender, self.day, self.time, self.intensity)
        if self.duration < 0:
            raise ValueError("duration must be non-negative")

    @property
    def covariates(self):
        return (self.gender, self.day, self.time, self.intensity)


@dataclass(frozen=True)
class Scaler:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("degenerate scaler: hi must exceed lo")

    def scale(self, values):
        return (np.asarray(values, dtype=float) - self.lo) / (self.hi - self.lo)

    def unscale(self, values):
        out = np.asarray(values, dtype=float) * (self.hi - self.lo) + self.lo
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FeatureDataset:
    """T periods of n jobs; covariates (T*n, 4) ints, durations (T*n,) raw
    time units.  scaler, when set, maps durations to [0, 1]."""

    covariates: np.ndarray
    durations: np.ndarray
    n: int
    family: str
    seeds: tuple  # (noise_seed, sample_seed)
    scaler: Scaler = None

    def __post_init__(self):
        cov = np.asarray(self.covariates, dtype=int)
        dur = np.asarray(self.durations, dtype=float)
        if cov.ndim != 2 or cov.shape[1] != 4 or cov.shape[0] != dur.size:
            raise ValueError("covariates must be (rows, 4) aligned with durations")
        if self.n < 2 or cov.shape[0] % self.n:
            raise ValueError("row count must be a multiple of the period size n >= 2")
        if np.any(dur < 0):
            raise ValueError("durations must be non-negative")
        for col, size in enumerate(COVARIATE_SIZES):
            if cov[:, col].min(initial=0) < 0 or cov[:, col].max(initial=0) >= size:
                raise ValueError(f"{COVARIATE_NAMES[col]} out of range")
        object.__setattr__(self, "covariates", cov)
        object.__setattr__(self, "durations", dur)

    @property
    def num_periods(self):
        return self.covariates.shape[0] // self.n

    @property
    def num_rows(self):
        return self.covariates.shape[0]

    def duration_matrix(self):
        """Durations grouped by period: (T, n)."""
        return self.durations.reshape(self.num_periods, self.n)

    @property
    def scaled_durations(self):
        if self.scaler is None:
            raise ValueError("dataset has no scaler; call scale_durations first")
        return self.scaler.scale(self.durations)

    def records(self):
        for (g, d, t, i), dur in zip(self.covariates, self.durations):
            yield JobRecord(int(g), int(d), int(t), int(i), float(dur))

    def subset(self, period_indices):
        """New dataset holding the given periods (scaler carried over)."""
        idx = np.asarray(period_indices, dtype=int)
        rows = (idx[:, None] * self.n + np.arange(self.n)).ravel()
        return replace(
            self, covariates=self.covariates[rows], durations=self.durations[rows]
        )


def _check_covariates(gender, day, time, intensity):
    for name, value, size in zip(
        COVARIATE_NAMES, (gender, day, time, intensity), COVARIATE_SIZES
    ):
        if not 0 <= value < size:
            raise ValueError(f"{name}={value} outside 0..{size - 1}")


def mean_std_from_covariates(covariates):
    """Duration mean/std implied by one covariate tuple (gender, day, time,
    intensity)."""
    gender, day, time, intensity = covariates
    _check_covariates(gender, day, time, intensity)
    mean = 1.0 + 0.1 * day + 0.4 * time + 1.5 * intensity
    std = 0.1 + 0.2 * gender + 0.2 * intensity
    return mean, std


_SPEC_CACHE = {}


def spec_for_covariates(family, covariates):
    mean, std = mean_std_from_covariates(covariates)
    key = (family, mean, std)
    spec = _SPEC_CACHE.get(key)
    if spec is None:
        spec = _SPEC_CACHE[key] = distributions.make_spec(family, mean, std)
    return spec


def generate(family, num_periods, n, noise_seed, sample_seed,
             fixed_covariates=None, with_noise=True):
    """Draw num_periods * n jobs; deterministic given the two seeds.

    Covariates are independent uniform over their ranges unless
    fixed_covariates pins them (useful for calibration checks); noise is
    U(-1, 1) added to the sampled duration, clamped at zero.
    """
    if num_periods < 1 or n < 2:
        raise ValueError("need num_periods >= 1 and n >= 2")
    rows = num_periods * n
    rng = np.random.default_rng(sample_seed)
    if fixed_covariates is None:
        cov = np.column_stack(
            [rng.integers(0, size, rows) for size in COVARIATE_SIZES]
        )
    else:
        _check_covariates(*fixed_covariates)
        cov = np.tile(np.asarray(fixed_covariates, dtype=int), (rows, 1))
    u = np.clip(rng.random(rows), 1e-16, 1.0 - 1e-16)

    durations = np.empty(rows)
    keys = cov[:, 0] * 1000000 + cov[:, 1] * 10000 + cov[:, 2] * 100 + cov[:, 3]
    for key in np.unique(keys):
        mask = keys == key
        combo = tuple(cov[np.argmax(mask)])
        spec = spec_for_covariates(family, combo)
        durations[mask] = distributions.quantile(spec, u[mask])

    if with_noise:
        noise = np.random.default_rng(noise_seed).uniform(-1.0, 1.0, rows)
        durations = np.maximum(durations + noise, 0.0)
    return FeatureDataset(
        covariates=cov,
        durations=durations,
        n=n,
        family=family,
        seeds=(noise_seed, sample_seed),
    )


def encode(dataset_or_covariates):
    """One-hot rows, column blocks gender|day|time|intensity (width 41)."""
    cov = (
        dataset_or_covariates.covariates
        if isinstance(dataset_or_covariates, FeatureDataset)
        else np.asarray(dataset_or_covariates, dtype=int)
    )
    rows = cov.shape[0]
    out = np.zeros((rows, ENCODED_WIDTH))
    r = np.arange(rows)
    for col in range(4):
        out[r, _OFFSETS[col] + cov[:, col]] = 1.0
    return out


def decode(encoded):
    """Inverse of encode: (rows, 41) one-hot back to covariate ints."""
    encoded = np.asarray(encoded)
    cols = []
    for col, size in enumerate(COVARIATE_SIZES):
        block = encoded[:, _OFFSETS[col]:_OFFSETS[col] + size]
        if not np.all(block.sum(axis=1) == 1):
            raise ValueError("block is not one-hot")
        cols.append(block.argmax(axis=1))
    return np.column_stack(cols)


def scale_durations(dataset, scaler=None):
    """Attach a min-max scaler (fitted on this dataset unless given)."""
    if scaler is None:
        lo = float(dataset.durations.min())
        hi = float(dataset.durations.max())
        scaler = Scaler(lo=lo, hi=hi)
    return replace(dataset, scaler=scaler)


def unscale(values, scaler):
    return scaler.unscale(values)


def save_dataset(dataset, csv_path):
    """CSV (gender,day,time,intensity,duration) plus a JSON sidecar with the
    scaler, period size, family and seeds.  Floats keep full precision so a
    reload is bit-exact."""
    csv_path = Path(csv_path)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([*COVARIATE_NAMES, "duration"])
        for (g, d, t, i), dur in zip(dataset.covariates, dataset.durations):
            writer.writerow([g, d, t, i, repr(float(dur))])
    sidecar = {
        "lo": dataset.scaler.lo if dataset.scaler else None,
        "hi": dataset.scaler.hi if dataset.scaler else None,
        "n": dataset.n,
        "family": dataset.family,
        "seeds": list(dataset.seeds),
    }
    with open(csv_path.with_suffix(".json"), "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path


def load_dataset(csv_path):
    csv_path = Path(csv_path)
    with open(csv_path.with_suffix(".json")) as fh:
        sidecar = json.load(fh)
    cov = []
    durations = []
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != [*COVARIATE_NAMES, "duration"]:
            raise ValueError(f"unexpected dataset header: {header}")
        for row in reader:
            cov.append([int(v) for v in row[:4]])
            durations.append(float(row[4]))
    scaler = None
    if sidecar.get("lo") is not None:
        scaler = Scaler(lo=sidecar["lo"], hi=sidecar["hi"])
    return FeatureDataset(
        covariates=np.asarray(cov, dtype=int),
        durations=np.asarray(durations, dtype=float),
        n=int(sidecar["n"]),
        family=sidecar["family"],
        seeds=tuple(sidecar["seeds"]),
        scaler=scaler,
    )
