"""Ascent/descent direction geometry of |p| at a point.

At a point z0 with p(z0) != 0 the direction circle splits into k ascent and
k descent sectors of equal angle pi/k, where k is the smallest derivative
order with p^(k)(z0) != 0.  Writing conj(p(z0)) * p^(k)(z0) = r * e^(i*alpha),
a direction theta ascends exactly when k*theta + alpha reduces into
(-pi/2, pi/2) modulo 2*pi.  At a root of p every direction ascends.

Alongside the analytic classifier there is an independent sampling oracle
that probes |p| along the ray at a schedule of step sizes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .poly import Polynomial, eval_poly, derivative, eval_derivatives

# Scale-aware zero tolerances: 1e-12 * (1 + max coefficient modulus).
ZERO_TOL_FACTOR = 1e-12

# Width, in reduced angle, of the band around a sector edge reported as
# Boundary: exact edges are measure-zero and float-fragile.
BOUNDARY_MARGIN = 1e-9

# Default step schedule for the sampling oracle; unanimity across all four
# decades is required before committing to Ascent or Descent.
DEFAULT_ORACLE_STEPS = (1e-3, 1e-4, 1e-5, 1e-6)


class DirectionClass(Enum):
    ASCENT = "Ascent"
    DESCENT = "Descent"
    BOUNDARY = "Boundary"
    ASCENT_EVERYWHERE = "AscentEverywhere"


class OracleVerdict(Enum):
    ASCENT = "Ascent"
    DESCENT = "Descent"
    INCONCLUSIVE = "Inconclusive"


class DegenerateConeError(ValueError):
    """All derivatives up to the degree fall below the zero tolerance."""


@dataclass
class ModulusCone:
    """The (k, alpha, r) data of the sector picture at one point."""

    k: int
    alpha: float        # arg(conj(p(z0)) * p^(k)(z0)), reduced to [-pi, pi)
    magnitude: float    # |p(z0)| * |p^(k)(z0)|
    at_root: bool       # |p(z0)| below the value-zero tolerance

    def sector_edges(self) -> list[float]:
        """The 2k sector-edge directions in [0, 2*pi), sorted."""
        edges = []
        for n in range(2 * self.k):
            theta = (math.pi / 2.0 + n * math.pi - self.alpha) / self.k
            edges.append(theta % (2.0 * math.pi))
        return sorted(edges)


def _reduce_pmpi(x: float) -> float:
    """Reduce an angle into [-pi, pi)."""
    y = math.remainder(x, 2.0 * math.pi)
    if y >= math.pi:  # remainder returns (-pi, pi]; fold the closed end
        y = -math.pi
    return y


def zero_tolerance(p: Polynomial) -> float:
    return ZERO_TOL_FACTOR * (1.0 + p.coefficient_scale)


def compute_cone(p: Polynomial, z0: complex) -> ModulusCone:
    """Smallest nonvanishing derivative order and the angle alpha at z0."""
    if p.degree < 1:
        raise ValueError("cone geometry requires a nonconstant polynomial")
    tol = zero_tolerance(p)
    values = eval_derivatives(p, z0, p.degree)
    v0 = values[0]
    k = 0
    for j in range(1, p.degree + 1):
        if abs(values[j]) > tol:
            k = j
            break
    if k == 0:
        raise DegenerateConeError(
            f"all derivatives of order 1..{p.degree} vanish at {z0} "
            f"within tolerance {tol:g}")
    product = v0.conjugate() * values[k]
    return ModulusCone(
        k=k,
        alpha=_reduce_pmpi(cmath.phase(product)),
        magnitude=abs(v0) * abs(values[k]),
        at_root=abs(v0) <= tol,
    )


def classify_direction(p: Polynomial, z0: complex, theta: float) -> DirectionClass:
    """Analytic classification of the direction e^(i*theta) at z0."""
    cone = compute_cone(p, z0)
    return classify_with_cone(cone, theta)


def classify_with_cone(cone: ModulusCone, theta: float) -> DirectionClass:
    if cone.at_root:
        return DirectionClass.ASCENT_EVERYWHERE
    phi = _reduce_pmpi(cone.k * theta + cone.alpha)
    gap = abs(abs(phi) - math.pi / 2.0)
    if gap <= BOUNDARY_MARGIN:
        return DirectionClass.BOUNDARY
    if abs(phi) < math.pi / 2.0:
        return DirectionClass.ASCENT
    return DirectionClass.DESCENT


def sampled_direction_oracle(p: Polynomial, z0: complex, theta: float,
                             steps=DEFAULT_ORACLE_STEPS) -> OracleVerdict:
    """Probe |p| along z0 + t*e^(i*theta) at the given step sizes.

    Ascent/Descent only on unanimity over the whole schedule; any mixed or
    tied comparison is Inconclusive.  This is a finite stand-in for "strictly
    larger for every sufficiently small positive step".
    """
    steps = list(steps)
    if not steps or any(t <= 0.0 for t in steps):
        raise ValueError("steps must be a nonempty list of positive reals")
    base = abs(eval_poly(p, z0))
    direction = cmath.exp(1j * theta)
    ups = downs = 0
    for t in steps:
        v = abs(eval_poly(p, z0 + t * direction))
        if v > base:
            ups += 1
        elif v < base:
            downs += 1
    if ups == len(steps):
        return OracleVerdict.ASCENT
    if downs == len(steps):
        return OracleVerdict.DESCENT
    return OracleVerdict.INCONCLUSIVE
