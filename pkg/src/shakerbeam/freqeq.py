"""Characteristic functions of the beam-shaker eigenvalue problem.

An eigenfrequency parameter mu > 0 must satisfy det M(mu) = 0, where M is the
4x4 interface matrix tying the two hinged half-spans together at the attachment
point.  Four evaluations are provided:

* ``det_M_closed``  -- closed-form expansion of det M (three term groups),
* ``det_M_oracle``  -- entry-by-entry assembly of M and an LU determinant,
* ``phi0``/``phi1``/``phi`` -- the exponentially scaled characteristic function
  Phi = Phi0 + Phi1 with det M = (m e^{mu l}/(8 rho mu)) * Phi; every hyperbolic
  in Phi1 is folded against e^{-mu l}, so phi is overflow-free for any mu,
* ``det_M3`` -- the 3x3 regularity determinant guarding mode reconstruction.

The unscaled determinants exist for cross-validation at moderate mu; production
root finding always uses phi.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import BeamParameters, DomainError, krylov

__all__ = [
    "RangeError",
    "FreqForm",
    "FreqEvaluation",
    "mu_hat",
    "interface_matrix",
    "det_M_closed",
    "det_M_oracle",
    "det_M_scale",
    "phi0",
    "phi1",
    "phi",
    "det_M3",
    "det_M3_scale",
    "evaluate",
]

# cosh overflows double just above exp(710); stay below with margin
_CLOSED_MAX_MUL = 690.0
# the 4x4 determinant forms products of two cosh(mu l0)-sized and two
# cosh(mu (l-l0))-sized entries, i.e. up to e^{2 mu l}; keep 2*170*2 < 709
_ORACLE_MAX_MUL = 170.0


class RangeError(ValueError):
    """Raised when an unscaled evaluation would overflow double precision."""


class FreqForm(enum.Enum):
    ExactClosedForm = "closed"
    ExactOracle4x4 = "oracle"
    TruncatedPhi0 = "phi0"
    PhiSum = "phi"


@dataclass(frozen=True)
class FreqEvaluation:
    """A characteristic-function sample, reported on the scaled (bounded) level.

    value_scaled is det M divided by the dominant growth factor
    m e^{mu l} / (8 rho mu) for the exact forms, and phi0/phi directly for the
    truncated/sum forms; the four forms therefore share zeros and scale.
    """

    mu: float
    value_scaled: float
    form: FreqForm


def mu_hat(mu: float, params: BeamParameters) -> float:
    """The attachment coefficient kappa/(EI) - (m/rho) mu^4."""
    return params.spring_stiffness / params.flexural_rigidity - (
        params.shaker_mass / params.linear_density
    ) * mu**4


def interface_matrix(mu: float, params: BeamParameters) -> np.ndarray:
    """The 4x4 interface matrix M on (u1(0), u3(0), u1(l), u3(l)).

    Rows: continuity of u, u', u'' across the attachment point, then the
    third-derivative force balance of the mass-spring unit.
    """
    if not mu > 0.0:
        raise DomainError(f"mu must be positive, got {mu!r}")
    l, l0 = params.length, params.attachment_point
    a = krylov(mu, l0)
    b = krylov(mu, l0 - l)
    m4 = mu**4
    mh = mu_hat(mu, params)
    return np.array(
        [
            [a.z2, a.z4, -b.z2, -b.z4],
            [a.z1, a.z3, -b.z1, -b.z3],
            [m4 * a.z4, a.z2, -m4 * b.z4, -b.z2],
            [m4 * a.z3 - mh * a.z2, a.z1 - mh * a.z4, -m4 * b.z3, -b.z1],
        ]
    )


def det_M_closed(mu: float, params: BeamParameters) -> float:
    """Closed-form det M: the m/(4 mu rho) group, -sin*sinh/mu^2, and the
    kappa/(4 EI mu^5) group."""
    if not mu > 0.0:
        raise DomainError(f"mu must be positive, got {mu!r}")
    l, l0 = params.length, params.attachment_point
    if mu * l > _CLOSED_MAX_MUL:
        raise RangeError(
            f"mu*l = {mu * l:.3g} exceeds the cosh overflow bound {_CLOSED_MAX_MUL};"
            " use the scaled characteristic function phi instead"
        )
    sl, cl = math.sin(mu * l), math.cos(mu * l)
    shl, chl = math.sinh(mu * l), math.cosh(mu * l)
    chd = math.cosh(mu * (l - 2 * l0))
    cd = math.cos(mu * (l - 2 * l0))
    mass_group = (params.shaker_mass / (4.0 * mu * params.linear_density)) * (
        (chd - chl) * sl + (cd - cl) * shl
    )
    spring_group = (
        params.spring_stiffness / (4.0 * params.flexural_rigidity * mu**5)
    ) * ((chl - chd) * sl + (cl - cd) * shl)
    return mass_group - sl * shl / mu**2 + spring_group


def det_M_scale(mu: float, params: BeamParameters) -> float:
    """Magnitude envelope of det_M_closed: sum of the term-group bounds.

    The natural yardstick for 'relative' agreement between determinant
    evaluations -- unlike |det M| itself it does not vanish at roots.
    """
    l, l0 = params.length, params.attachment_point
    ch = math.cosh(mu * l) + math.cosh(mu * (l - 2 * l0))
    return (
        (params.shaker_mass / (4.0 * mu * params.linear_density)) * 2.0 * ch
        + math.cosh(mu * l) / mu**2
        + (params.spring_stiffness / (4.0 * params.flexural_rigidity * mu**5)) * 2.0 * ch
    )


def det_M_oracle(mu: float, params: BeamParameters) -> float:
    """Independent det M: assemble the interface matrix entry-by-entry from
    Krylov values and take the LU (partial pivoting) determinant."""
    l = params.length
    if not mu > 0.0:
        raise DomainError(f"mu must be positive, got {mu!r}")
    if mu * l > _ORACLE_MAX_MUL:
        raise RangeError(
            f"mu*l = {mu * l:.3g} exceeds the oracle product bound {_ORACLE_MAX_MUL};"
            " use the scaled characteristic function phi instead"
        )
    return float(np.linalg.det(interface_matrix(mu, params)))


def phi0(mu, l: float, l0: float):
    """Truncated characteristic function 2 sin mu(l-l0) sin mu l0 - sin mu l.

    Accepts any real mu (arrays allowed); roots are sought on mu > 0.
    """
    mu = np.asarray(mu, dtype=float)
    out = 2.0 * np.sin(mu * (l - l0)) * np.sin(mu * l0) - np.sin(mu * l)
    return float(out) if out.ndim == 0 else out


def phi0_prime(mu, l: float, l0: float):
    """d phi0 / d mu, used for empirical localization margins."""
    mu = np.asarray(mu, dtype=float)
    out = (
        2.0 * (l - l0) * np.cos(mu * (l - l0)) * np.sin(mu * l0)
        + 2.0 * l0 * np.sin(mu * (l - l0)) * np.cos(mu * l0)
        - l * np.cos(mu * l)
    )
    return float(out) if out.ndim == 0 else out


def phi1(mu, params: BeamParameters):
    """Correction term Phi1 with every hyperbolic pre-folded against e^{-mu l}.

    sinh mu l * e^{-mu l} becomes (1 - e^{-2 mu l})/2 and so on; each folded
    factor is bounded by 1, so the evaluation neither overflows nor cancels
    catastrophically for any mu > 0.
    """
    mu = np.asarray(mu, dtype=float)
    if np.any(mu <= 0.0):
        raise DomainError("mu must be positive")
    l, l0 = params.length, params.attachment_point
    e2l = np.exp(-2.0 * mu * l)
    e2a = np.exp(-2.0 * mu * l0)
    e2b = np.exp(-2.0 * mu * (l - l0))
    sh = 0.5 * (1.0 - e2l)  # sinh(mu l) e^{-mu l}
    ch = 0.5 * (1.0 + e2l)  # cosh(mu l) e^{-mu l}
    chd = 0.5 * (e2a + e2b)  # cosh(mu (l - 2 l0)) e^{-mu l}
    s, c = np.sin(mu * l), np.cos(mu * l)
    cd = np.cos(mu * (l - 2.0 * l0))
    rho, m = params.linear_density, params.shaker_mass
    kap, ei = params.spring_stiffness, params.flexural_rigidity
    out = (
        2.0 * sh * cd
        - 2.0 * sh * c
        - 2.0 * ch * s
        + 2.0 * s * chd
        + (c + s - cd)
        - (8.0 * rho / (m * mu)) * sh * s
        + (2.0 * kap * rho / (ei * m * mu**4)) * ((ch - chd) * s + (c - cd) * sh)
    )
    return float(out) if out.ndim == 0 else out


def phi(mu, params: BeamParameters):
    """Scaled characteristic function phi0 + phi1; its positive zeros are
    exactly the positive zeros of det M."""
    return phi0(mu, params.length, params.attachment_point) + phi1(mu, params)


def det_M3(mu, l: float, l0: float):
    """Regularity determinant (sinh mu l0 sin mu l + sin mu l0 sinh mu l)/(2 mu^2)."""
    mu = np.asarray(mu, dtype=float)
    out = (
        np.sinh(mu * l0) * np.sin(mu * l) + np.sin(mu * l0) * np.sinh(mu * l)
    ) / (2.0 * mu**2)
    return float(out) if out.ndim == 0 else out


def det_M3_scale(mu: float, l: float, l0: float) -> float:
    """Max-abs entry of the 3x3 mode system matrix, the guard scale for det_M3."""
    a = krylov(mu, l0)
    b = krylov(mu, l0 - l)
    m4 = mu**4
    entries = (a.z2, a.z4, b.z2, b.z4, a.z1, a.z3, b.z1, b.z3, m4 * a.z4, m4 * b.z4)
    return max(abs(e) for e in entries)


def evaluate(mu: float, params: BeamParameters, form: FreqForm = FreqForm.PhiSum) -> FreqEvaluation:
    """Evaluate the characteristic function in the requested form, reported on
    the common scaled level (divided by the growth factor m e^{mu l}/(8 rho mu))."""
    if form is FreqForm.TruncatedPhi0:
        value = phi0(mu, params.length, params.attachment_point)
    elif form is FreqForm.PhiSum:
        value = phi(mu, params)
    else:
        det = det_M_closed(mu, params) if form is FreqForm.ExactClosedForm else det_M_oracle(mu, params)
        growth = (params.shaker_mass / (8.0 * params.linear_density * mu)) * math.exp(
            mu * params.length
        )
        value = det / growth
    return FreqEvaluation(mu=float(mu), value_scaled=float(value), form=form)
