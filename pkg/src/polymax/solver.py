"""Drivers that turn the iterations into an infinity-norm computation.

The hybrid pipeline seeds Pseudo-Newton orbits near every root of p (the
iteration reliably escapes a small punctured neighborhood of a root toward
a modulus maximum) and at uniform boundary points, projects converged
iterates onto the unit circle, certifies them, and merges the result with
an independent boundary scan, so the reported norm never depends on the
seeding heuristic alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .poly import Polynomial, derivative, eval_poly, boundary_modulus, TWO_PI
from .roots import find_roots
from .stationarity import (
    DEFAULT_BOUNDARY_TOL,
    DEFAULT_CERT_TOL,
    SingularityError,
    SingularReason,
    StationarityCertificate,
    basic_family_step,
    certify,
    fixed_point_map,
    pseudo_newton_step,
)

# An orbit has converged once three consecutive steps stay below this.
STEP_TOL = 1e-12
CONVERGE_STREAK = 3

FIXED_POINT_MAX_ITER = 1000   # generous: indifferent fixed points creep
PSEUDO_NEWTON_MAX_ITER = 200

GOLDEN_BRACKET_WIDTH = 1e-12
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

FLAT_SCAN_TOL = 1e-12


class Method(Enum):
    FIXED_POINT = "FixedPoint"
    PSEUDO_NEWTON = "PseudoNewton"
    BASIC_FAMILY_3 = "BasicFamily3"
    BOUNDARY_SCAN = "BoundaryScan"
    HYBRID = "Hybrid"


class OrbitOutcome(Enum):
    CONVERGED = "Converged"
    MAX_ITER_EXCEEDED = "MaxIterExceeded"
    SINGULAR = "Singular"


class NoCandidatesError(RuntimeError):
    """Every orbit failed and the boundary scan produced nothing certifiable."""


@dataclass
class OrbitTrace:
    seed: complex
    iterates: list[complex]
    outcome: OrbitOutcome
    iterations: int
    attractor: complex | None = None
    reason: SingularReason | None = None


@dataclass
class NormOptions:
    rng_seed: int = 42
    root_offset: float = 1e-2          # displacement of root-adjacent seeds
    jitter_seeds_per_root: int = 4
    fixed_point_max_iter: int = FIXED_POINT_MAX_ITER
    pseudo_newton_max_iter: int = PSEUDO_NEWTON_MAX_ITER
    scan_samples: int | None = None    # default max(256, 32 * degree)
    cert_tol: float = DEFAULT_CERT_TOL
    boundary_tol: float = DEFAULT_BOUNDARY_TOL
    dedupe_tol: float = 1e-6
    extra_seeds: tuple = ()


@dataclass
class NormReport:
    best_point: complex
    norm_value: float
    candidates: list[StationarityCertificate]
    method: Method
    seeds_used: int
    bernstein_ok: bool = True


def _run_orbit(step, seed: complex, max_iter: int) -> OrbitTrace:
    """Iterate `step` from seed until settled, singular, or capped.

    `iterations` counts the applications before the orbit settled, i.e. the
    index at which the final run of sub-tolerance steps began; a seed that
    is already fixed reports 0.
    """
    iterates = [seed]
    z = seed
    streak = 0
    settled_at = 0
    for k in range(max_iter):
        try:
            nxt = step(z)
        except SingularityError as err:
            return OrbitTrace(seed, iterates, OrbitOutcome.SINGULAR, k,
                              reason=err.reason)
        iterates.append(nxt)
        if abs(nxt - z) < STEP_TOL:
            if streak == 0:
                settled_at = k
            streak += 1
            if streak >= CONVERGE_STREAK:
                return OrbitTrace(seed, iterates, OrbitOutcome.CONVERGED,
                                  settled_at, attractor=nxt)
        else:
            streak = 0
        z = nxt
    return OrbitTrace(seed, iterates, OrbitOutcome.MAX_ITER_EXCEEDED, max_iter)


def fixed_point_orbit(p: Polynomial, seed: complex,
                      max_iter: int = FIXED_POINT_MAX_ITER) -> OrbitTrace:
    """Orbit of the unit-vector Newton-direction map."""
    return _run_orbit(lambda z: fixed_point_map(p, z), seed, max_iter)


def _unwrap(outcome):
    if outcome.singular:
        raise SingularityError(outcome.reason, outcome.next)
    return outcome.next


def pseudo_newton_orbit(p: Polynomial, seed: complex,
                        max_iter: int = PSEUDO_NEWTON_MAX_ITER) -> OrbitTrace:
    """Orbit of the frozen-weight Newton step."""
    return _run_orbit(lambda z: _unwrap(pseudo_newton_step(p, z)), seed, max_iter)


def basic_family_orbit(p: Polynomial, seed: complex,
                       max_iter: int = PSEUDO_NEWTON_MAX_ITER,
                       m: int = 3) -> OrbitTrace:
    """Orbit of the order-m frozen-weight step (m in {2, 3})."""
    return _run_orbit(lambda z: _unwrap(basic_family_step(p, z, m)), seed, max_iter)


def golden_section_max(f, a: float, b: float,
                       width: float = GOLDEN_BRACKET_WIDTH) -> tuple[float, float]:
    """Maximize f on [a, b], shrinking the bracket to the given width."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    return t, f(t)


def default_scan_samples(degree: int) -> int:
    # q(t) has at most 2*degree local maxima; oversample 16x.
    return max(256, 32 * degree)


def _polish_phase(p: Polynomial, t: float, lo: float, hi: float) -> float:
    """Newton-polish a boundary maximum of h(t) = |p(e^it)|^2 inside [lo, hi].

    Golden-section comparisons of nearly equal moduli stop being informative
    at location error ~sqrt(eps); a few Newton steps on h'(t) = 0 restore
    machine-precision placement.  On |z| = 1:

        h'(t)  = 2 Re(i z p'(z) conj(p(z)))
        h''(t) = 2 (|p'(z)|^2 - Re(z p'(z) conj(p(z))) - Re(z^2 p''(z) conj(p(z))))
    """
    dp = derivative(p)
    ddp = derivative(dp)
    for _ in range(8):
        z = complex(math.cos(t), math.sin(t))
        v = eval_poly(p, z)
        d = eval_poly(dp, z)
        dd = eval_poly(ddp, z)
        slope = 2.0 * (1j * z * d * v.conjugate()).real
        curve = 2.0 * (abs(d) ** 2 - (z * d * v.conjugate()).real
                       - (z * z * dd * v.conjugate()).real)
        if curve >= 0.0 or not math.isfinite(slope):
            break
        delta = slope / curve
        t_new = min(max(t - delta, lo), hi)
        if abs(t_new - t) < 1e-15:
            t = t_new
            break
        t = t_new
    return t


def boundary_scan(p: Polynomial, samples: int | None = None,
                  cert_tol: float = DEFAULT_CERT_TOL,
                  boundary_tol: float = DEFAULT_BOUNDARY_TOL,
                  ) -> list[StationarityCertificate]:
    """Certified refinements of every strict local maximum of |p(e^it)|
    found on a uniform grid of the circle."""
    if p.degree < 1:
        raise ValueError("boundary scan requires a nonconstant polynomial")
    if samples is None:
        samples = default_scan_samples(p.degree)
    if samples < 8:
        raise ValueError("boundary scan needs at least 8 samples")
    ts = TWO_PI * np.arange(samples) / samples
    qs = np.abs(eval_poly(p, np.exp(1j * ts)))

    if qs.max() - qs.min() <= FLAT_SCAN_TOL:
        # |p| is constant on the circle; any point maximizes, take t = 0.
        return [certify(p, 1.0 + 0.0j, cert_tol, boundary_tol)]

    h = TWO_PI / samples
    peaks = (qs > np.roll(qs, 1)) & (qs > np.roll(qs, -1))
    certs = []
    for j in np.flatnonzero(peaks):
        t0 = ts[j]
        t_star, _ = golden_section_max(lambda t: boundary_modulus(p, t),
                                       t0 - h, t0 + h)
        t_star = _polish_phase(p, t_star, t0 - h, t0 + h)
        z = complex(math.cos(t_star), math.sin(t_star))
        certs.append(certify(p, z, cert_tol, boundary_tol))
    return certs


def dense_scan_oracle(p: Polynomial, samples: int) -> float:
    """Brute-force norm reference: grid maximum of |p(e^it)| plus one
    golden-section refinement at the best bracket."""
    if samples < 1024:
        raise ValueError("dense scan oracle needs at least 1024 samples")
    ts = TWO_PI * np.arange(samples) / samples
    qs = np.abs(eval_poly(p, np.exp(1j * ts)))
    j = int(np.argmax(qs))
    h = TWO_PI / samples
    _, value = golden_section_max(lambda t: boundary_modulus(p, t),
                                  ts[j] - h, ts[j] + h)
    return max(value, float(qs[j]))


def _root_seeds(p: Polynomial, options: NormOptions) -> list[complex]:
    rng = np.random.default_rng(options.rng_seed)
    delta = options.root_offset
    seeds = []
    for r in find_roots(p).locations():
        direction = r / abs(r) if abs(r) > 1e-12 else 1.0 + 0.0j
        seeds.append(r + delta * direction)
        for _ in range(options.jitter_seeds_per_root):
            phi = rng.uniform(0.0, TWO_PI)
            seeds.append(r + delta * complex(math.cos(phi), math.sin(phi)))
    return seeds


def _boundary_seeds(degree: int) -> list[complex]:
    m = max(8, 4 * degree)
    return [complex(math.cos(TWO_PI * j / m), math.sin(TWO_PI * j / m))
            for j in range(m)]


_ORBIT_RUNNERS = {
    Method.FIXED_POINT: lambda p, seed, o: fixed_point_orbit(
        p, seed, o.fixed_point_max_iter),
    Method.PSEUDO_NEWTON: lambda p, seed, o: pseudo_newton_orbit(
        p, seed, o.pseudo_newton_max_iter),
    Method.BASIC_FAMILY_3: lambda p, seed, o: basic_family_orbit(
        p, seed, o.pseudo_newton_max_iter, m=3),
    Method.HYBRID: lambda p, seed, o: pseudo_newton_orbit(
        p, seed, o.pseudo_newton_max_iter),
}


def _dedupe(certs: list[StationarityCertificate],
            tol: float) -> list[StationarityCertificate]:
    """Keep, among candidates within tol of each other, the one with the
    smallest residual."""
    ranked = sorted(certs, key=lambda c: (c.residual, c.point.real, c.point.imag))
    kept: list[StationarityCertificate] = []
    for cert in ranked:
        if all(abs(cert.point - other.point) > tol for other in kept):
            kept.append(cert)
    kept.sort(key=lambda c: math.atan2(c.point.imag, c.point.real) % TWO_PI)
    return kept


def compute_norm(p: Polynomial, method: Method = Method.HYBRID,
                 options: NormOptions | None = None) -> NormReport:
    """Infinity norm of p over the unit disc, with certified candidates."""
    if p.degree < 1:
        raise ValueError("norm computation requires a nonconstant polynomial")
    options = options or NormOptions()

    certs: list[StationarityCertificate] = []
    seeds_used = 0

    if method in (Method.HYBRID, Method.BOUNDARY_SCAN):
        certs.extend(boundary_scan(p, options.scan_samples,
                                   options.cert_tol, options.boundary_tol))

    if method is not Method.BOUNDARY_SCAN:
        runner = _ORBIT_RUNNERS[method]
        seeds = _root_seeds(p, options) + _boundary_seeds(p.degree)
        seeds.extend(complex(s) for s in options.extra_seeds)
        seeds_used = len(seeds)
        for seed in seeds:
            trace = runner(p, seed, options)
            if trace.outcome is not OrbitOutcome.CONVERGED:
                continue
            z = trace.attractor
            if abs(z) > 0.0:
                z = z / abs(z)  # polish onto the circle, never a leap
            certs.append(certify(p, z, options.cert_tol, options.boundary_tol))

    accepted = [c for c in certs if c.accepted]
    if not accepted:
        raise NoCandidatesError(
            "no certified local maximum found; every orbit failed and the "
            "boundary scan produced no certifiable point")
    candidates = _dedupe(accepted, options.dedupe_tol)

    best = candidates[0]
    for cert in candidates[1:]:
        if cert.modulus > best.modulus:
            best = cert
    report = NormReport(
        best_point=best.point,
        norm_value=best.modulus,
        candidates=candidates,
        method=method,
        seeds_used=seeds_used,
    )
    report.bernstein_ok = bernstein_check(p, report)
    return report


def bernstein_check(p: Polynomial, report: NormReport) -> bool:
    """Derivative-ratio sanity bound at the reported maximizer: the Newton
    ratio |p/p'| at a global maximizer is at least 1/degree."""
    z = report.best_point
    v = eval_poly(p, z)
    d = eval_poly(derivative(p), z)
    if abs(d) == 0.0:
        return True
    return abs(v) / abs(d) >= 1.0 / p.degree - 1e-12
