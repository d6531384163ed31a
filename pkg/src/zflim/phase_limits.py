"""Closed-form phase limitations and single-frequency slope bounds.

At a rational frequency the phase any multiplier of a class can reach is
capped in closed form; a plant whose shifted response leaves the reachable
cone at one such frequency therefore admits no multiplier of that class.
Both directions are used: the cap itself, and the largest slope k for which
G + 1/k still escapes the cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateDenominator, NotStable
from .lti_core import TransferFunction, evaluate, frequency_response, is_stable
from .rational_core import MONOTONE, ODD, CLASS_TAGS, RationalFrequency, period

DEFAULT_BETA_MAX = 50


@dataclass(frozen=True)
class PhaseBound:
    """Reachable-phase cap for one class at one rational frequency."""

    omega: RationalFrequency
    class_tag: str
    bound: float


@dataclass(frozen=True)
class SlopeBoundResult:
    """Best single-frequency slope bound found by a scan, with its witness."""

    k_upper: float
    witness_freq: Optional[RationalFrequency]
    class_tag: str


def phase_bound(rf: RationalFrequency, class_tag: str) -> float:
    """Largest |phase| reachable at omega by a multiplier of the class.

    (pi/2)*(1 - 1/beta), except (pi/2)*(1 - 2/beta) for the monotone class
    at even alpha, and exactly 0 at omega = pi.
    """
    if class_tag not in CLASS_TAGS:
        raise ValueError(f"unknown class tag {class_tag!r}")
    if rf.beta == 1:
        return 0.0
    if class_tag == MONOTONE and rf.alpha % 2 == 0:
        return (math.pi / 2.0) * (1.0 - 2.0 / rf.beta)
    return (math.pi / 2.0) * (1.0 - 1.0 / rf.beta)


def make_phase_bound(rf: RationalFrequency, class_tag: str) -> PhaseBound:
    return PhaseBound(rf, class_tag, phase_bound(rf, class_tag))


def single_freq_certificate(
    G: TransferFunction, rf: RationalFrequency, class_tag: str, tol: float = 0.0
) -> bool:
    """True when no multiplier of the class can restore positivity for G.

    Checks Re{G(e^{j*omega})(1 - e^{-j*omega*i})} <= tol over one period of
    i, and for the odd class also the 1 + e^{-j*omega*i} family.  tol = 0 is
    the exact non-strict condition; a small positive tol only serves to
    reproduce boundary cases in floating point.
    """
    if class_tag not in CLASS_TAGS:
        raise ValueError(f"unknown class tag {class_tag!r}")
    if not is_stable(G):
        raise NotStable("certificate applies to stable plants")
    g = evaluate(G, rf.omega)
    t = period(rf)
    i = np.arange(t)
    e = np.exp(-1j * rf.omega * i)
    if np.any((g * (1.0 - e)).real > tol):
        return False
    if class_tag == ODD and np.any((g * (1.0 + e)).real > tol):
        return False
    return True


def cone_slope_bound(G: TransferFunction, omega: float, beta_eff: int) -> float:
    """Slope k placing G + 1/k on the boundary of the half-angle pi/beta_eff
    cone around the negative real axis.

    Evaluates -tan(pi/b) / (R*tan(pi/b) + I) with R = Re{G(e^{j*omega})} and
    I = |Im{G(e^{j*omega})}|.  A positive value certifies that no multiplier
    of the matching class exists for G + 1/k.
    """
    if beta_eff < 2:
        raise ValueError("beta_eff must be at least 2")
    g = evaluate(G, omega)
    r, im = g.real, abs(g.imag)
    t = math.tan(math.pi / beta_eff)
    d = r * t + im
    if abs(d) < 1e-14:
        raise DegenerateDenominator(f"cone boundary degenerate at omega={omega!r}")
    return -t / d


def single_freq_upper_bound(
    G: TransferFunction, rf: RationalFrequency, class_tag: str
) -> Optional[float]:
    """Certified upper bound on the multiplier-existence slope from one frequency.

    Returns k > 0 such that no multiplier of the class exists for G + 1/k,
    or None when this frequency yields no positive bound.  At omega = pi the
    response is real and the bound reduces to -1/Re{G} when Re{G} < 0.
    """
    if class_tag not in CLASS_TAGS:
        raise ValueError(f"unknown class tag {class_tag!r}")
    if not is_stable(G):
        raise NotStable("bound applies to stable plants")
    if rf.beta == 1:
        r = evaluate(G, math.pi).real
        return -1.0 / r if r < 0.0 else None
    if class_tag == MONOTONE and rf.alpha % 2 == 0:
        beta_eff = rf.beta
    else:
        beta_eff = 2 * rf.beta
    try:
        k = cone_slope_bound(G, rf.omega, beta_eff)
    except DegenerateDenominator:
        return None
    return k if k > 0.0 else None


def coprime_pairs(beta_max: int) -> list[RationalFrequency]:
    """(1,1) plus every coprime (alpha, beta) with alpha < beta <= beta_max."""
    out = [RationalFrequency(1, 1)]
    for beta in range(2, beta_max + 1):
        for alpha in range(1, beta):
            if math.gcd(alpha, beta) == 1:
                out.append(RationalFrequency(alpha, beta))
    return out


def scan_upper_bound(
    G: TransferFunction, class_tag: str, beta_max: int = DEFAULT_BETA_MAX
) -> SlopeBoundResult:
    """Minimum single-frequency bound over all rational frequencies up to beta_max.

    One vectorised response evaluation covers the whole grid; the stability
    check runs once, not per frequency.
    """
    if class_tag not in CLASS_TAGS:
        raise ValueError(f"unknown class tag {class_tag!r}")
    if beta_max < 2:
        raise ValueError("beta_max must be at least 2")
    if not is_stable(G):
        raise NotStable("scan applies to stable plants")
    pairs = coprime_pairs(beta_max)
    g = frequency_response(G, np.array([rf.omega for rf in pairs]))
    r_parts, i_parts = g.real, np.abs(g.imag)
    beta_eff = np.array(
        [
            rf.beta if (class_tag == MONOTONE and rf.alpha % 2 == 0) else 2 * rf.beta
            for rf in pairs
        ]
    )
    tans = np.tan(np.pi / beta_eff)
    denom = r_parts * tans + i_parts
    with np.errstate(divide="ignore", invalid="ignore"):
        k_all = np.where(np.abs(denom) < 1e-14, np.nan, -tans / denom)
    # omega = pi: the response is real and the bound reduces to -1/R when R < 0
    k_all[0] = -1.0 / r_parts[0] if r_parts[0] < 0.0 else np.nan

    best = math.inf
    witness = None
    for rf, k in zip(pairs, k_all):
        if np.isfinite(k) and k > 0.0 and k < best:
            best, witness = float(k), rf
    return SlopeBoundResult(best, witness, class_tag)
