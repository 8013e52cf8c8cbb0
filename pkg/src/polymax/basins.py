"""Basin-of-attraction rasterizer for the fixed-point and Pseudo-Newton
iterations, emitting deterministic binary PPM images.

Attractors are the certified maxima computed once up front, so label
indices and palette assignment are stable across runs.  The whole grid is
iterated with numpy; per-pixel orbit semantics (step tolerance, three
confirming steps, singularity handling) match the scalar orbit runner, and
pixels freeze once settled so the result is independent of scheduling.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass

import numpy as np

from .poly import Polynomial, derivative, eval_poly
from .solver import (
    CONVERGE_STREAK,
    Method,
    NormOptions,
    STEP_TOL,
    compute_norm,
)
from .stationarity import singular_tolerance

CAPTURE_RADIUS = 1e-6

DEFAULT_SIZE = 600
DEFAULT_HALF_WIDTH = 1.5
DEFAULT_MAX_ITER = {Method.FIXED_POINT: 500, Method.PSEUDO_NEWTON: 100}

# Reasonably distinct base colors for attractor labels; the final palette
# entry colors unlabeled pixels.
BASE_COLORS = [
    (230, 57, 70), (29, 53, 87), (42, 157, 143), (233, 196, 106),
    (244, 162, 97), (38, 70, 83), (142, 202, 230), (255, 0, 110),
    (131, 56, 236), (58, 134, 255), (251, 86, 7), (6, 214, 160),
]


@dataclass
class GridSpec:
    """Square sampling window; pixel (0, 0) is the exact top-left corner."""

    center: complex = 0j
    half_width: float = DEFAULT_HALF_WIDTH
    width_px: int = DEFAULT_SIZE
    height_px: int = DEFAULT_SIZE

    def __post_init__(self):
        if self.half_width <= 0.0:
            raise ValueError("half_width must be positive")
        if self.width_px < 1 or self.height_px < 1:
            raise ValueError("pixel dimensions must be >= 1")

    def xs(self) -> np.ndarray:
        if self.width_px == 1:
            return np.array([self.center.real])
        return self.center.real + np.linspace(-self.half_width, self.half_width,
                                              self.width_px)

    def ys(self) -> np.ndarray:
        if self.height_px == 1:
            return np.array([self.center.imag])
        return self.center.imag + np.linspace(self.half_width, -self.half_width,
                                              self.height_px)

    def mesh(self) -> np.ndarray:
        """Complex plane coordinates, shape (height_px, width_px)."""
        return self.xs()[None, :] + 1j * self.ys()[:, None]


@dataclass
class BasinImage:
    spec: GridSpec
    labels: np.ndarray       # (h, w) int32; -1 where no attractor captured
    iter_counts: np.ndarray  # (h, w) int32; iterations to capture, or cap
    attractors: list[complex]
    max_iter: int

    def pixel_counts(self) -> list[int]:
        """Pixels per attractor label, with the unlabeled count last."""
        counts = [int(np.count_nonzero(self.labels == k))
                  for k in range(len(self.attractors))]
        counts.append(int(np.count_nonzero(self.labels == -1)))
        return counts


def _fixed_point_grid_step(p: Polynomial, dp: Polynomial, ddp: Polynomial,
                           z: np.ndarray, tol: float):
    v = eval_poly(p, z)
    d = eval_poly(dp, z)
    sing = (np.abs(v) <= tol) | (np.abs(d) <= tol)
    with np.errstate(all="ignore"):
        ratio = np.where(sing, 1.0, v / np.where(sing, 1.0, d))
        nxt = ratio / np.abs(ratio)
    return np.where(sing, z, nxt), sing


def _pseudo_newton_grid_step(p: Polynomial, dp: Polynomial, ddp: Polynomial,
                             z: np.ndarray, tol: float):
    v = eval_poly(p, z)
    d = eval_poly(dp, z)
    dd = eval_poly(ddp, z)
    c1 = np.abs(d)
    c2 = np.abs(v)
    w = v * c1 - z * d * c2
    dw = d * c1 - (d + z * dd) * c2
    sing = np.abs(dw) <= tol
    with np.errstate(all="ignore"):
        nxt = z - w / np.where(sing, 1.0, dw)
    return np.where(sing, z, nxt), sing


_GRID_STEPS = {
    Method.FIXED_POINT: _fixed_point_grid_step,
    Method.PSEUDO_NEWTON: _pseudo_newton_grid_step,
}


def render_basins(p: Polynomial, method: Method, spec: GridSpec | None = None,
                  max_iter: int | None = None,
                  options: NormOptions | None = None) -> BasinImage:
    """Label every pixel of the grid with the certified maximum its orbit
    reaches (within the capture radius), plus the iteration count."""
    if p.degree < 1:
        raise ValueError("basin rendering requires a nonconstant polynomial")
    if method not in _GRID_STEPS:
        raise ValueError("basin rendering supports FixedPoint and PseudoNewton")
    spec = spec or GridSpec()
    if max_iter is None:
        max_iter = DEFAULT_MAX_ITER[method]

    attractors = [c.point for c in
                  compute_norm(p, Method.HYBRID, options).candidates]

    dp = derivative(p)
    ddp = derivative(dp)
    tol = singular_tolerance(p)
    step = _GRID_STEPS[method]

    z = spec.mesh()
    shape = z.shape
    streak = np.zeros(shape, dtype=np.int32)
    settled_at = np.zeros(shape, dtype=np.int32)
    converged = np.zeros(shape, dtype=bool)
    frozen = np.zeros(shape, dtype=bool)

    for k in range(max_iter):
        active = ~frozen
        if not active.any():
            break
        za = z[active]
        nxt, sing = step(p, dp, ddp, za, tol)
        tiny = np.abs(nxt - za) < STEP_TOL
        streak_a = streak[active]
        settled_a = settled_at[active]
        settled_a[tiny & (streak_a == 0)] = k
        streak_a = np.where(tiny, streak_a + 1, 0)
        conv = (streak_a >= CONVERGE_STREAK) & ~sing

        z[active] = nxt
        streak[active] = streak_a
        settled_at[active] = settled_a
        converged[active] |= conv
        frozen[active] = sing | conv

    labels = np.full(shape, -1, dtype=np.int32)
    iter_counts = np.full(shape, max_iter, dtype=np.int32)
    if attractors:
        points = np.array(attractors, dtype=complex)
        dist = np.abs(z[..., None] - points[None, None, :])
        nearest = np.argmin(dist, axis=-1)
        captured = converged & (np.min(dist, axis=-1) <= CAPTURE_RADIUS)
        labels[captured] = nearest[captured]
        iter_counts[captured] = settled_at[captured]
    return BasinImage(spec, labels, iter_counts, attractors, max_iter)


def default_palette(n_attractors: int) -> list[tuple[int, int, int]]:
    """n_attractors label colors plus black for unlabeled pixels."""
    colors = list(BASE_COLORS[:n_attractors])
    k = 0
    while len(colors) < n_attractors:
        # extend deterministically around the hue wheel
        h = (k * 0.381966) % 1.0
        r, g, b = colorsys.hsv_to_rgb(h, 0.65, 0.95)
        colors.append((int(r * 255), int(g * 255), int(b * 255)))
        k += 1
    colors.append((0, 0, 0))
    return colors


def write_ppm(image: BasinImage, palette=None) -> bytes:
    """Binary PPM (P6) bytes: attractor colors darkened linearly with the
    iteration count down to 40% at the cap; unlabeled pixels take the last
    palette entry, unshaded."""
    if palette is None:
        palette = default_palette(len(image.attractors))
    palette = [tuple(int(v) for v in rgb) for rgb in palette]
    if len(palette) < len(image.attractors) + 1:
        raise ValueError(
            f"palette has {len(palette)} colors; need at least "
            f"{len(image.attractors) + 1} (one per attractor plus unlabeled)")

    h, w = image.labels.shape
    cap = max(image.max_iter, 1)
    shade = 1.0 - 0.6 * (image.iter_counts.astype(float) / cap)

    rgb = np.empty((h, w, 3), dtype=np.uint8)
    unlabeled = image.labels < 0
    for ch in range(3):
        base = np.zeros((h, w))
        for k in range(len(image.attractors)):
            mask = image.labels == k
            if mask.any():
                base[mask] = palette[k][ch] * shade[mask]
        base[unlabeled] = palette[-1][ch]
        rgb[..., ch] = (base + 0.5).astype(np.uint8)

    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    return header + rgb.tobytes()
