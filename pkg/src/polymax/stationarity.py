"""Stationarity condition for local maxima of |p| on the unit disc.

A point z on the unit circle is a local maximum of |p| over the disc exactly
when it is a fixed point of

    fixed_point_map(z) = (p(z)/p'(z)) / |p(z)/p'(z)|,

i.e. when z points along its own Newton direction.  The distance
|z - fixed_point_map(z)| is the certification residual.  The same condition
is the zero set (away from zeros of p*p') of the pseudo-polynomial

    pseudo_polynomial(z) = p(z)*|p'(z)| - z*p'(z)*|p(z)|,

which the Pseudo-Newton iteration solves by freezing the two moduli at the
current iterate and taking one Newton step of the resulting polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .poly import Polynomial, eval_derivatives

# Zero tolerance guarding divisions: 1e-14 * (1 + coefficient scale).  Small
# enough that fixed points of interest (where |p| is at its maximum) are
# never mistaken for zeros.
SINGULAR_TOL_FACTOR = 1e-14

# A residual gap of at most this much off the unit circle is accepted; the
# residual itself already bounds | |z| - 1 | whenever the map is defined.
DEFAULT_BOUNDARY_TOL = 1e-10

DEFAULT_CERT_TOL = 1e-8


class SingularReason(Enum):
    P_ZERO = "PZero"
    P_PRIME_ZERO = "PPrimeZero"
    DERIVATIVE_ZERO = "DerivativeZero"


class SingularityError(ValueError):
    """Raised where a map is undefined (zero of p, p', or a step denominator)."""

    def __init__(self, reason: SingularReason, where: complex):
        super().__init__(f"{reason.value} at {where}")
        self.reason = reason
        self.where = where


@dataclass
class StepOutcome:
    next: complex
    singular: bool = False
    reason: SingularReason | None = None


@dataclass
class StationarityCertificate:
    point: complex
    residual: float       # |z - fixed_point_map(z)|; inf when map undefined
    modulus: float        # |p(z)|
    newton_ratio: float   # |p(z)/p'(z)|; inf when p'(z) ~ 0
    boundary_gap: float   # | |z| - 1 |
    accepted: bool


def singular_tolerance(p: Polynomial) -> float:
    return SINGULAR_TOL_FACTOR * (1.0 + p.coefficient_scale)


def _require_nonconstant(p: Polynomial):
    if p.degree < 1:
        raise ValueError("operation requires a nonconstant polynomial")


def newton_ratio(p: Polynomial, z: complex) -> complex:
    """p(z)/p'(z), the negated Newton step."""
    _require_nonconstant(p)
    v, d = eval_derivatives(p, z, 1)
    if abs(d) <= singular_tolerance(p):
        raise SingularityError(SingularReason.P_PRIME_ZERO, z)
    return v / d

def fixed_point_map(p: Polynomial, z: complex) -> complex:
    """Unit vector along p(z)/p'(z); its fixed points are the local maxima."""
    _require_nonconstant(p)
    tol = singular_tolerance(p)
    v, d = eval_derivatives(p, z, 1)
    if abs(v) <= tol:
        raise SingularityError(SingularReason.P_ZERO, z)
    if abs(d) <= tol:
        raise SingularityError(SingularReason.P_PRIME_ZERO, z)
    ratio = v / d
    return ratio / abs(ratio)


def residual(p: Polynomial, z: complex) -> float:
    """Distance |z - fixed_point_map(z)|; zero exactly at local maxima."""
    return abs(z - fixed_point_map(p, z))


def pseudo_polynomial(p: Polynomial, z: complex) -> complex:
    """p(z)|p'(z)| - z p'(z)|p(z)|; vanishes at local maxima and zeros of p*p'."""
    _require_nonconstant(p)
    v, d = eval_derivatives(p, z, 1)
    return v * abs(d) - z * d * abs(v)


def _frozen_eval(p: Polynomial, zk: complex, z: complex, order: int):
    """Value and derivatives at z of w(z) = p(z)*c1 - z*p'(z)*c2, where the
    weights c1 = |p'(zk)|, c2 = |p(zk)| are frozen at the iterate zk.

    Differentiating with the weights held constant:
        w'(z)  = p'(z)*c1 - (p'(z) + z*p''(z))*c2
        w''(z) = p''(z)*c1 - (2*p''(z) + z*p'''(z))*c2
    Returns [w(z), w'(z), ...] up to the requested order.
    """
    m = min(order + 1, p.degree)
    derivs = eval_derivatives(p, z, m)
    while len(derivs) < order + 2:
        derivs.append(0j)  # derivatives beyond the degree vanish
    vk, dk = eval_derivatives(p, zk, 1)
    c1, c2 = abs(dk), abs(vk)
    out = [derivs[0] * c1 - z * derivs[1] * c2]
    if order >= 1:
        out.append(derivs[1] * c1 - (derivs[1] + z * derivs[2]) * c2)
    if order >= 2:
        out.append(derivs[2] * c1 - (2.0 * derivs[2] + z * derivs[3]) * c2)
    return out


def pseudo_newton_step(p: Polynomial, zk: complex) -> StepOutcome:
    """One Newton step of the frozen-weight polynomial at zk."""
    _require_nonconstant(p)
    w, dw = _frozen_eval(p, zk, zk, 1)
    if abs(dw) <= singular_tolerance(p):
        return StepOutcome(zk, singular=True, reason=SingularReason.DERIVATIVE_ZERO)
    return StepOutcome(zk - w / dw)


def basic_family_step(p: Polynomial, zk: complex, m: int) -> StepOutcome:
    """Order-m root-finding step on the frozen-weight polynomial, m in {2, 3}.

    m=2 is the Newton step (identical to pseudo_newton_step); m=3 is the
    standard third-order member, z - 2*w*w' / (2*w'^2 - w*w'').
    """
    if m == 2:
        return pseudo_newton_step(p, zk)
    if m != 3:
        raise ValueError("basic family step supports m in {2, 3}")
    _require_nonconstant(p)
    w, dw, ddw = _frozen_eval(p, zk, zk, 2)
    denom = 2.0 * dw * dw - w * ddw
    if abs(denom) <= singular_tolerance(p):
        return StepOutcome(zk, singular=True, reason=SingularReason.DERIVATIVE_ZERO)
    return StepOutcome(zk - 2.0 * w * dw / denom)


def certify(p: Polynomial, z: complex, tol: float = DEFAULT_CERT_TOL,
            boundary_tol: float = DEFAULT_BOUNDARY_TOL) -> StationarityCertificate:
    """Evidence bundle for z being a local maximum of |p| over the disc.

    Accepted iff the residual is within tol and z sits on the unit circle
    within boundary_tol.  Where the fixed-point map is undefined (a zero of
    p or p') the certificate is rejected with an infinite residual; the
    query never raises.
    """
    _require_nonconstant(p)
    if tol <= 0.0:
        raise ValueError("certification tolerance must be positive")
    v, d = eval_derivatives(p, z, 1)
    modulus = abs(v)
    boundary_gap = abs(abs(z) - 1.0)
    stol = singular_tolerance(p)
    if abs(d) <= stol:
        ratio = math.inf
    else:
        ratio = modulus / abs(d)
    if modulus <= stol or abs(d) <= stol:
        res = math.inf
    else:
        unit = (v / d) / abs(v / d)
        res = abs(z - unit)
    accepted = res <= tol and boundary_gap <= boundary_tol
    return StationarityCertificate(
        point=z,
        residual=res,
        modulus=modulus,
        newton_ratio=ratio,
        boundary_gap=boundary_gap,
        accepted=accepted,
    )
