"""Relaxation schedules and their diagnostics.

A schedule is an immutable description of a nonnegative coefficient sequence.
The convergence condition of interest is that the scaled sequence s_n = alpha_n * mu
stays in [0, 2] and the series sum s_n (2 - s_n) diverges. Divergence of a
series is not decidable from finitely many terms, so the diagnostic verdict is
an explicit numerical heuristic with an "indeterminate" outcome, never a proof.
"""

import math
from dataclasses import dataclass, field

import numpy as np

KINDS = (
    "constant",
    "cyclic",
    "harmonic-to-2",
    "geometric-to-2",
    "explicit",
    "random-uniform",
)


@dataclass(frozen=True)
class Schedule:
    """Immutable description of a relaxation sequence; generation is pure
    given (kind, params, index)."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value):
        if value < 0:
            raise ValueError("coefficient must be nonnegative")
        return cls("constant", {"value": float(value)})

    @classmethod
    def cyclic(cls, values):
        vals = [float(v) for v in values]
        if not vals or min(vals) < 0:
            raise ValueError("cyclic schedule needs a nonempty list of nonnegative values")
        return cls("cyclic", {"values": vals})

    @classmethod
    def harmonic_to_2(cls, offset=0):
        """alpha_n = 2 - 1/(n + 1 + offset): approaches 2 slowly enough that
        the divergent-series condition still holds."""
        if offset < 0:
            raise ValueError("offset must be nonnegative")
        return cls("harmonic-to-2", {"offset": int(offset)})

    @classmethod
    def geometric_to_2(cls, gap=1.0, ratio=0.5):
        """alpha_n = 2 - gap * ratio^n: approaches 2 so fast that the
        divergent-series condition fails."""
        if not (0 < gap <= 2):
            raise ValueError("gap must be in (0, 2]")
        if not (0 < ratio < 1):
            raise ValueError("ratio must be in (0, 1)")
        return cls("geometric-to-2", {"gap": float(gap), "ratio": float(ratio)})

    @classmethod
    def explicit(cls, values):
        vals = [float(v) for v in values]
        if vals and min(vals) < 0:
            raise ValueError("coefficients must be nonnegative")
        return cls("explicit", {"values": vals})

    @classmethod
    def random_uniform(cls, lo, hi, seed):
        if lo < 0 or hi < lo:
            raise ValueError("need 0 <= lo <= hi")
        if seed is None:
            raise ValueError("random schedules require a seed for reproducibility")
        return cls("random-uniform", {"lo": float(lo), "hi": float(hi), "seed": int(seed)})

    # -- generation --------------------------------------------------------

    def alphas(self, n):
        """First *n* coefficients as an array (prefix-stable for every kind)."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        p = self.params
        if self.kind == "constant":
            return np.full(n, p["value"])
        if self.kind == "cyclic":
            vals = np.asarray(p["values"])
            return np.resize(vals, n) if n else np.zeros(0)
        if self.kind == "harmonic-to-2":
            idx = np.arange(n, dtype=float)
            return 2.0 - 1.0 / (idx + 1.0 + p["offset"])
        if self.kind == "geometric-to-2":
            idx = np.arange(n, dtype=float)
            return 2.0 - p["gap"] * p["ratio"] ** idx
        if self.kind == "explicit":
            vals = p["values"]
            if n > len(vals):
                raise ValueError(f"explicit schedule has only {len(vals)} terms, {n} requested")
            return np.asarray(vals[:n])
        if self.kind == "random-uniform":
            rng = np.random.default_rng(p["seed"])
            return rng.uniform(p["lo"], p["hi"], n)
        raise AssertionError(self.kind)

    # -- serialization -----------------------------------------------------

    def to_dict(self):
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        kind = data.pop("kind", None)
        builders = {
            "constant": cls.constant,
            "cyclic": cls.cyclic,
            "harmonic-to-2": cls.harmonic_to_2,
            "geometric-to-2": cls.geometric_to_2,
            "explicit": cls.explicit,
            "random-uniform": cls.random_uniform,
        }
        if kind not in builders:
            raise ValueError(f"unknown schedule kind {kind!r}")
        try:
            return builders[kind](**data)
        except TypeError as exc:
            raise ValueError(f"bad parameters for schedule kind {kind!r}: {exc}") from exc


@dataclass(frozen=True)
class ScheduleDiagnostics:
    """Numerical diagnostics of the scaled sequence s_n = alpha_n * scaled_by."""

    scaled_by: float
    partial_sums: np.ndarray  # cumulative sums of s_n * (2 - s_n)
    in_box: bool
    box_eps: float  # largest eps with s_n in [eps, 2 - eps] for all n (0 if none)
    violations: int  # number of terms with s_n outside [0, 2]
    verdict: str  # diverges-numerically | converges-numerically | indeterminate

    def __post_init__(self):
        ps = np.asarray(self.partial_sums, dtype=float)
        ps.setflags(write=False)
        object.__setattr__(self, "partial_sums", ps)


def diagnose(schedule, mu, horizon=10_000, growth_threshold=50.0, growth_fraction=0.01):
    """Heuristic membership verdict for the divergent-series condition on the
    scaled sequence alpha_n * mu over a finite horizon.

    "diverges-numerically": partial sums exceed *growth_threshold* and the last
    quarter still contributes at least *growth_fraction* of the total.
    "converges-numerically": the tail contribution is numerically negligible.
    Anything else is "indeterminate". Terms outside [0, 2] are counted as
    violations of the admissible class (the verdict then only describes the
    series itself).
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    s = schedule.alphas(horizon) * mu
    violations = int(np.count_nonzero((s < 0) | (s > 2)))
    terms = s * (2.0 - s)
    cum = np.cumsum(terms)
    total = float(cum[-1])
    tail = total - float(cum[(3 * horizon) // 4 - 1]) if horizon >= 4 else total

    box_eps = float(max(0.0, min(np.min(s), 2.0 - np.max(s))))
    in_box = box_eps > 0.0

    if violations > 0:
        verdict = "indeterminate"
    elif total >= growth_threshold and tail >= growth_fraction * max(total, 1e-300):
        verdict = "diverges-numerically"
    elif abs(tail) <= 1e-9:
        verdict = "converges-numerically"
    else:
        verdict = "indeterminate"

    return ScheduleDiagnostics(
        scaled_by=float(mu),
        partial_sums=cum,
        in_box=in_box,
        box_eps=box_eps,
        violations=violations,
        verdict=verdict,
    )


def filter_poly(schedule, lam, n):
    """The filter polynomial prod_{j<n} (1 - alpha_j * lam); equals 1 at n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1.0
    return float(np.prod(1.0 - schedule.alphas(n) * lam))


def product_lemma_check(s_values, horizon=None):
    """For a sequence in [0, 2], returns (sum of s*(2-s), product of |1-s|)
    over the first *horizon* terms. Out-of-range values are rejected."""
    s = np.asarray(s_values, dtype=float)
    if horizon is not None:
        s = s[:horizon]
    if s.size and (s.min() < 0 or s.max() > 2):
        raise ValueError("sequence values must lie in [0, 2]")
    partial_sum = float(np.sum(s * (2.0 - s)))
    abs_product = float(np.prod(np.abs(1.0 - s)))
    return partial_sum, abs_product


def max_admissible_constant(nu, eps):
    """Largest constant relaxation with alpha * nu^2 <= 2 - eps; may exceed 2
    when nu < 1, which is the whole point of the scaled condition."""
    if not (0 < nu <= 1):
        raise ValueError("nu must be in (0, 1]")
    if not (0 < eps <= 1):
        raise ValueError("eps must be in (0, 1]")
    return (2.0 - eps) / (nu * nu)
