"""Continuous-time non-existence checks from sampled frequency-response data.

The conditions compare a weighted sum of real parts against the extremum
over all time shifts of an almost-periodic trigonometric sum.  No closed
form exists for incommensurate frequencies, so the extremum is sampled on a
time grid and padded by a Lipschitz bound; the padding always errs on the
side of rejecting, keeping a True answer sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

_CHUNK = 262144


@dataclass(frozen=True)
class CtCertificateInput:
    """Frequency samples, weights and time-sampling parameters.

    freqs are strictly increasing rad/s values; the last entry may be
    math.inf, in which case its value must be real (the high-frequency
    limit) and it is excluded from the time-dependent sum.  Weights are
    non-negative with at least one positive entry and are normalised to sum
    one.  Missing sampling parameters default to 200 base periods of the
    slowest component, resolved to 1/200 of the fastest one.
    """

    freqs: Sequence[float]
    values: Sequence[complex]
    lambdas: Sequence[float]
    t_horizon: Optional[float] = None
    t_step: Optional[float] = None

    def __post_init__(self):
        freqs = [float(f) for f in self.freqs]
        values = [complex(v) for v in self.values]
        lambdas = [float(x) for x in self.lambdas]
        if not (len(freqs) == len(values) == len(lambdas)) or not freqs:
            raise ValueError("freqs, values and lambdas must be equal-length and non-empty")
        if any(f <= 0.0 for f in freqs):
            raise ValueError("frequencies must be positive")
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise ValueError("frequencies must be strictly increasing")
        if any(math.isinf(f) for f in freqs[:-1]):
            raise ValueError("only the last frequency may be infinite")
        if any(l < 0.0 for l in lambdas) or not any(l > 0.0 for l in lambdas):
            raise ValueError("weights must be non-negative with at least one positive")
        if math.isinf(freqs[-1]) and abs(values[-1].imag) > 1e-12:
            raise ValueError("the value at infinite frequency must be real")
        total = sum(lambdas)
        object.__setattr__(self, "freqs", tuple(freqs))
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "lambdas", tuple(l / total for l in lambdas))
        finite = [f for f in freqs if not math.isinf(f)]
        if self.t_horizon is None and finite:
            object.__setattr__(self, "t_horizon", 200.0 * 2.0 * math.pi / min(finite))
        if self.t_step is None and finite:
            object.__setattr__(self, "t_step", (2.0 * math.pi / max(finite)) / 200.0)
        if finite:
            if not (self.t_horizon > 0.0 and self.t_step > 0.0):
                raise ValueError("t_horizon and t_step must be positive")

    def finite_parts(self):
        w, a, b, lam = [], [], [], []
        for f, v, l in zip(self.freqs, self.values, self.lambdas):
            if not math.isinf(f):
                w.append(f)
                a.append(v.real)
                b.append(v.imag)
                lam.append(l)
        return (np.array(w), np.array(a), np.array(b), np.array(lam))

    def lhs(self) -> float:
        return float(sum(l * v.real for l, v in zip(self.lambdas, self.values)))


def _sampled_extrema(inp: CtCertificateInput, time_lattice: bool):
    """(min, max) of the finite-frequency sum over the time grid, plus the pad."""
    w, a, b, lam = inp.finite_parts()
    if w.size == 0:
        return 0.0, 0.0, 0.0
    if time_lattice:
        t_all = np.arange(0.0, math.floor(inp.t_horizon) + 0.5, 1.0)
        pad = 0.0
    else:
        t_all = np.arange(0.0, inp.t_horizon + inp.t_step / 2.0, inp.t_step)
        pad = 0.5 * inp.t_step * float(np.sum(lam * np.hypot(a, b) * w))
    lo, hi = math.inf, -math.inf
    ca = lam * a
    cb = lam * b
    for start in range(0, t_all.size, _CHUNK):
        t = t_all[start : start + _CHUNK]
        arg = np.outer(t, w)
        # Re{ lam * (a + jb) e^{-jwt} } = lam*(a cos(wt) + b sin(wt))
        s = np.cos(arg) @ ca + np.sin(arg) @ cb
        lo = min(lo, float(s.min()))
        hi = max(hi, float(s.max()))
    return lo, hi, pad


def ct_check_odd(inp: CtCertificateInput, time_lattice: bool = False) -> bool:
    """Non-existence condition for the odd class.

    True when the weighted real-part sum is at most minus the sup over time
    of the absolute finite-frequency sum.  The sampled sup is enlarged by
    the Lipschitz pad, so True is trustworthy but marginal cases report
    False.  With time_lattice=True the time variable ranges over the
    integers 0..floor(t_horizon) exactly and no pad is applied.
    """
    lo, hi, pad = _sampled_extrema(inp, time_lattice)
    sup_abs = max(abs(lo), abs(hi))
    return inp.lhs() <= -(sup_abs + pad)


def ct_check_nonodd(inp: CtCertificateInput, time_lattice: bool = False) -> bool:
    """Non-existence condition without the oddness assumption.

    True when the weighted real-part sum is at most the inf over time of the
    finite-frequency sum; the sampled inf is shrunk by the Lipschitz pad.
    """
    lo, _, pad = _sampled_extrema(inp, time_lattice)
    return inp.lhs() <= lo - pad
