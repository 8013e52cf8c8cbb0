"""Simultaneous root-finding, used to seed the norm solver near the zeros
of p and to validate the zero set of the pseudo-polynomial.

Durand-Kerner iteration on the monic normalization, with the classic
deterministic initial guesses (0.4 + 0.9i)^j.  Clustered estimates are
merged into multiple roots afterwards; a double root limits attainable
location accuracy to roughly sqrt(machine epsilon), hence the 1e-6
clustering radius.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Polynomial, eval_poly, derivative

DK_MAX_ITER = 500
DK_UPDATE_TOL = 1e-13
CLUSTER_TOL = 1e-6
DK_SEED_BASE = 0.4 + 0.9j


@dataclass
class RootSet:
    roots: list[tuple[complex, int]]   # (location, multiplicity)
    residual_bound: float              # max |p(location)| over the set
    converged: bool = True

    def locations(self) -> list[complex]:
        return [r for r, _ in self.roots]


def find_roots(p: Polynomial) -> RootSet:
    """All roots of p with multiplicities; deterministic for a given p."""
    n = p.degree
    if n < 1:
        raise ValueError("root finding requires degree >= 1")
    lead = p.coeffs[-1]
    monic = [c / lead for c in p.coeffs]

    if n == 1:
        z = -monic[0]
        return RootSet([(z, 1)], abs(eval_poly(p, z)))

    def mval(z: complex) -> complex:
        acc = monic[-1]
        for c in reversed(monic[:-1]):
            acc = acc * z + c
        return acc

    zs = [DK_SEED_BASE ** j for j in range(1, n + 1)]
    converged = False
    for _ in range(DK_MAX_ITER):
        biggest = 0.0
        for j in range(n):
            denom = 1.0 + 0.0j
            for k in range(n):
                if k != j:
                    denom *= zs[j] - zs[k]
            if denom == 0:
                continue  # coincident estimates; let the others separate them
            delta = mval(zs[j]) / denom
            zs[j] -= delta
            biggest = max(biggest, abs(delta))
        if biggest < DK_UPDATE_TOL:
            converged = True
            break

    clusters = _cluster(zs)
    roots = [(sum(c) / len(c), len(c)) for c in clusters]
    roots.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    bound = max(abs(eval_poly(p, r)) for r, _ in roots)
    return RootSet(roots, bound, converged)


def critical_points(p: Polynomial) -> RootSet:
    """Roots of p', with multiplicities."""
    if p.degree < 2:
        raise ValueError("critical points require degree >= 2")
    return find_roots(derivative(p))


def _cluster(points: list[complex]) -> list[list[complex]]:
    """Group points whose pairwise chains stay within CLUSTER_TOL."""
    remaining = sorted(points, key=lambda z: (z.real, z.imag))
    clusters: list[list[complex]] = []
    for z in remaining:
        for c in clusters:
            if any(abs(z - w) <= CLUSTER_TOL for w in c):
                c.append(z)
                break
        else:
            clusters.append([z])
    return clusters
