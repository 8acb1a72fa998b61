"""Root location for the exact and truncated characteristic functions.

``scan_roots`` brackets sign changes of phi or phi0 on a uniform grid and
refines each bracket with a safeguarded Brent iteration.  ``verify_localization``
checks the asymptotic pairing structure: above a threshold, every truncated root
has exactly one exact root in its epsilon-neighborhood and the complement holds
none.  ``closed_form_roots_half`` generates the explicit root sequence available
when the attachment sits at midspan.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .core import BeamParameters
from .freqeq import phi, phi0, phi0_prime

__all__ = [
    "ConfigurationError",
    "LocalizationPreconditionError",
    "Target",
    "Root",
    "PairingStatus",
    "RootPairing",
    "LocalizationReport",
    "scan_roots",
    "scan_with_suspects",
    "closed_form_roots_half",
    "verify_localization",
    "pair_mutual_nearest",
    "detect_rational_ratio",
]

_BRACKET_TOL = 1e-10
_RESIDUAL_FACTOR = 1e-9
_GRID_ZERO = 1e-13
_SUSPECT_LEVEL = 1e-10


class ConfigurationError(ValueError):
    """Raised for scan settings that would make root capture unreliable."""


class LocalizationPreconditionError(ValueError):
    """Raised when the requested neighborhoods are too wide to be disjoint."""


class Target(enum.Enum):
    Phi = "phi"
    Phi0 = "phi0"


@dataclass(frozen=True)
class Root:
    """A refined zero of a characteristic function.

    degenerate marks grid points where |f| < 1e-13 without a usable sign
    change (the bracket collapses to the point itself).
    """

    mu: float
    residual: float
    bracket: tuple
    iterations: int
    target: Target
    degenerate: bool = False


class PairingStatus(enum.Enum):
    PairedUnique = "paired_unique"
    NoExactRootInNeighborhood = "no_exact_root_in_neighborhood"
    MultipleExactRoots = "multiple_exact_roots"
    UnpairedExactRoot = "unpaired_exact_root"


@dataclass(frozen=True)
class RootPairing:
    truncated_root: float
    exact_root: Optional[float]
    distance: Optional[float]
    epsilon: float
    status: PairingStatus


@dataclass(frozen=True)
class LocalizationReport:
    threshold_M: float
    epsilon: float
    pairings: tuple
    stray_roots: tuple
    verdict: bool
    warning: Optional[str] = None
    min_abs_phi0_complement: Optional[float] = None
    min_abs_phi0_prime_neighborhoods: Optional[float] = None
    rational_ratio: Optional[tuple] = None


def _target_fn(target: Target, params: BeamParameters) -> Callable:
    if target is Target.Phi:
        return lambda mu: phi(mu, params)
    return lambda mu: phi0(mu, params.length, params.attachment_point)


def _brent(f: Callable, a: float, fa: float, b: float, fb: float):
    """Safeguarded Brent: bisection fallback, inverse-quadratic/secant steps.

    Returns (root, f(root), iterations, bracket).  Iterates until the bracket
    is below _BRACKET_TOL, then reports the best function value seen.
    """
    c, fc = a, fa
    d = e = b - a
    best_x, best_f = (a, fa) if abs(fa) < abs(fb) else (b, fb)
    iterations = 0
    for _ in range(200):
        iterations += 1
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 0.5 * _BRACKET_TOL + 2.0 * np.finfo(float).eps * abs(b)
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            break
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        b = b + (d if abs(d) > tol else math.copysign(tol, m))
        fb = f(b)
        if abs(fb) < abs(best_f):
            best_x, best_f = b, fb
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
    # polish: secant through the straddling pair pushes |f| from the
    # slope-limited ~|f'| * bracket level down to interpolation accuracy
    for _ in range(3):
        if fb == 0.0 or fc == 0.0 or fb == fc or b == c:
            break
        x = (b * fc - c * fb) / (fc - fb)
        if not (min(b, c) < x < max(b, c)):
            break
        fx = f(x)
        iterations += 1
        if abs(fx) < abs(best_f):
            best_x, best_f = x, fx
        if abs(fx) >= abs(fb) and abs(fx) >= abs(fc):
            break
        if (fx > 0.0) == (fb > 0.0):
            b, fb = x, fx
        else:
            c, fc = x, fx
    lo, hi = (b, c) if b < c else (c, b)
    # widen by one ulp so the reported root is strictly interior and the
    # endpoints still straddle the (simple) zero
    lo = float(np.nextafter(min(lo, best_x), -math.inf))
    hi = float(np.nextafter(max(hi, best_x), math.inf))
    return best_x, best_f, iterations, (lo, hi)


def scan_with_suspects(
    target: Target,
    params: BeamParameters,
    mu_min: float,
    mu_max: float,
    step: float,
) -> tuple:
    """Scan a window; return (roots, suspects).

    Suspects are grid local minima of |f| below 1e-10 without a sign change --
    near-tangent configurations that must not be silently promoted to roots.
    """
    if not (0.0 < mu_min < mu_max):
        raise ConfigurationError(f"window must satisfy 0 < mu_min < mu_max, got ({mu_min}, {mu_max})")
    if step <= 0.0:
        raise ConfigurationError(f"step must be positive, got {step}")
    max_step = math.pi / (4.0 * params.length)
    if step >= max_step:
        raise ConfigurationError(
            f"step {step:.6g} too coarse: must be below pi/(4 l) = {max_step:.6g}"
            " to resolve the sin(mu l) oscillation"
        )
    f = _target_fn(target, params)
    n = int(math.ceil((mu_max - mu_min) / step))
    grid = np.linspace(mu_min, mu_max, n + 1)
    values = np.asarray(f(grid), dtype=float)

    roots: list = []
    # grid points that are numerically exact zeros: degenerate brackets
    exact_hits = np.flatnonzero(np.abs(values) < _GRID_ZERO)
    for i in exact_hits:
        roots.append(
            Root(
                mu=float(grid[i]),
                residual=float(values[i]),
                bracket=(float(grid[i]), float(grid[i])),
                iterations=0,
                target=target,
                degenerate=True,
            )
        )
    sign = np.sign(values)
    sign[np.abs(values) < _GRID_ZERO] = 0.0
    crossings = np.flatnonzero(sign[:-1] * sign[1:] < 0.0)
    for i in crossings:
        x, fx, iters, bracket = _brent(
            f, float(grid[i]), float(values[i]), float(grid[i + 1]), float(values[i + 1])
        )
        fscale = 1.0 + max(abs(float(values[i])), abs(float(values[i + 1])))
        if abs(fx) > _RESIDUAL_FACTOR * fscale:
            continue  # refinement failed to meet the residual contract: not a root
        roots.append(
            Root(mu=float(x), residual=float(fx), bracket=bracket, iterations=iters, target=target)
        )
    roots.sort(key=lambda r: r.mu)
    # merge duplicates (a degenerate grid hit adjacent to a refined bracket)
    deduped: list = []
    for r in roots:
        if deduped and abs(r.mu - deduped[-1].mu) < 10.0 * _BRACKET_TOL:
            if deduped[-1].degenerate and not r.degenerate:
                deduped[-1] = r
            continue
        deduped.append(r)

    suspects: list = []
    absv = np.abs(values)
    for i in range(1, len(grid) - 1):
        if (
            absv[i] < _SUSPECT_LEVEL
            and absv[i] <= absv[i - 1]
            and absv[i] <= absv[i + 1]
            and sign[i - 1] * sign[i + 1] > 0.0
            and absv[i] >= _GRID_ZERO
        ):
            suspects.append((float(grid[i]), float(values[i])))
    return deduped, suspects


def scan_roots(
    target: Target,
    params: BeamParameters,
    mu_min: float,
    mu_max: float,
    step: float,
) -> list:
    """All roots of the target function in (mu_min, mu_max), sorted ascending."""
    roots, _ = scan_with_suspects(target, params, mu_min, mu_max, step)
    return roots


def closed_form_roots_half(l: float, count: int) -> list:
    """Truncated-equation roots for midspan attachment: (pi/l)(frac(j/2) + 2*floor(j/2))."""
    if count < 1:
        raise ConfigurationError(f"count must be >= 1, got {count}")
    out = []
    for j in range(1, count + 1):
        half = j / 2.0
        out.append((math.pi / l) * ((half - math.floor(half)) + 2.0 * math.floor(half)))
    return out


def detect_rational_ratio(l: float, l0: float, max_denominator: int = 10**6):
    """Return (p, q) if l0/l is genuinely a rational p/q, else None.

    Every double has continued-fraction convergents within ~1/q^2, so a flat
    tolerance would flag irrational ratios too.  Demand the error be far below
    the Dirichlet 1/q^2 level, which only true rationals achieve.
    """
    ratio = l0 / l
    frac = Fraction(ratio).limit_denominator(max_denominator)
    if abs(ratio - float(frac)) <= 1e-9 / frac.denominator**2:
        return (frac.numerator, frac.denominator)
    return None


def verify_localization(
    params: BeamParameters,
    epsilon: float,
    threshold_M: float,
    mu_max: float,
    step: Optional[float] = None,
) -> LocalizationReport:
    """Check the asymptotic localization structure on (threshold_M, mu_max].

    Every truncated root above the threshold must contain exactly one exact
    root in its epsilon-neighborhood, and the complement must contain none.
    """
    if epsilon <= 0.0:
        raise LocalizationPreconditionError(f"epsilon must be positive, got {epsilon}")
    rational = detect_rational_ratio(params.length, params.attachment_point)
    if threshold_M >= mu_max:
        return LocalizationReport(
            threshold_M=threshold_M,
            epsilon=epsilon,
            pairings=(),
            stray_roots=(),
            verdict=True,
            warning=(
                f"threshold_M = {threshold_M:.6g} is not below mu_max = {mu_max:.6g}:"
                " no anchors in range, verdict vacuously true"
            ),
            rational_ratio=rational,
        )
    if step is None:
        step = math.pi / (80.0 * params.length)
    lo = max(threshold_M, 1e-6)
    anchors = [r.mu for r in scan_roots(Target.Phi0, params, lo, mu_max, step)]
    anchors = [a for a in anchors if a > threshold_M]
    gaps = [b - a for a, b in zip(anchors, anchors[1:])]
    if gaps and epsilon >= 0.5 * min(gaps):
        i = int(np.argmin(gaps))
        raise LocalizationPreconditionError(
            f"epsilon = {epsilon:.6g} is not below half the minimum anchor gap"
            f" {min(gaps):.6g} (between {anchors[i]:.6g} and {anchors[i + 1]:.6g}):"
            " neighborhoods would overlap"
        )
    exact = [
        r.mu
        for r in scan_roots(Target.Phi, params, lo, mu_max + epsilon, step)
        if r.mu > threshold_M
    ]

    pairings = []
    claimed = set()
    for anchor in anchors:
        inside = [m for m in exact if abs(m - anchor) < epsilon]
        if len(inside) == 1:
            status = PairingStatus.PairedUnique
            partner, dist = inside[0], abs(inside[0] - anchor)
            claimed.add(partner)
        elif not inside:
            status, partner, dist = PairingStatus.NoExactRootInNeighborhood, None, None
        else:
            status = PairingStatus.MultipleExactRoots
            partner = min(inside, key=lambda m: abs(m - anchor))
            dist = abs(partner - anchor)
            claimed.update(inside)
        pairings.append(
            RootPairing(
                truncated_root=anchor,
                exact_root=partner,
                distance=dist,
                epsilon=epsilon,
                status=status,
            )
        )
    strays = tuple(
        m
        for m in exact
        if m <= mu_max and all(abs(m - anchor) >= epsilon for anchor in anchors)
    )
    verdict = bool(
        all(p.status is PairingStatus.PairedUnique for p in pairings) and not strays
    )

    # empirical margins: min |phi0| over the complement, min |phi0'| near anchors
    sample = np.linspace(lo, mu_max, 4001)
    in_neighborhood = np.zeros(sample.shape, dtype=bool)
    for anchor in anchors:
        in_neighborhood |= np.abs(sample - anchor) < epsilon
    l, l0 = params.length, params.attachment_point
    phi0_vals = np.abs(phi0(sample, l, l0))
    complement_vals = phi0_vals[(~in_neighborhood) & (sample > threshold_M)]
    margin_c = float(np.min(complement_vals)) if complement_vals.size else None
    margin_p = None
    if anchors:
        margin_p = float(min(abs(phi0_prime(a, l, l0)) for a in anchors))
    return LocalizationReport(
        threshold_M=threshold_M,
        epsilon=epsilon,
        pairings=tuple(pairings),
        stray_roots=strays,
        verdict=verdict,
        warning=None,
        min_abs_phi0_complement=margin_c,
        min_abs_phi0_prime_neighborhoods=margin_p,
        rational_ratio=rational,
    )


def pair_mutual_nearest(exact: list, truncated: list) -> list:
    """Mutual nearest-neighbour pairing of two sorted root lists.

    Returns rows (exact_mu or None, truncated_mu or None, status-string) --
    exact-bearing rows first in mu order, then leftover truncated roots.
    """

    def nearest(x, pool):
        return min(pool, key=lambda y: abs(y - x)) if pool else None

    rows = []
    used_truncated = set()
    for m in exact:
        t = nearest(m, truncated)
        if t is not None and nearest(t, exact) == m:
            rows.append((m, t, "paired"))
            used_truncated.add(t)
        else:
            rows.append((m, None, "exact_only"))
    for t in truncated:
        if t not in used_truncated:
            rows.append((None, t, "truncated_only"))
    return rows
