"""Numeric verification of Haar measure facts on the ax+b group.

The group is G = {(a, b) : a > 0} with (a,b)(a',b') = (aa', b + ab'),
left Haar density da db / a^2, modular function Delta(a,b) = 1/a.  This
module checks, in double precision: the group axioms, the two Jacobian
determinants (alpha^2 for left translation, alpha for right), left
invariance of the Haar integral, the right-translation scaling
(R_(alpha,beta))_* mu = alpha mu, and multiplicativity of Delta.

Unlike the finite modules this one is inherently approximate; tolerances
are part of every contract.  Test functions are compactly supported
polynomial bumps so that supports, and their pullbacks under the
translations being tested, stay inside {a > 0} where the density is
finite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss


class SupportOutOfDomain(ValueError):
    """A support box (or its pullback) touches the boundary a <= 0."""


class StencilOutOfDomain(ValueError):
    """A finite-difference stencil would leave {a > 0}."""


class ToleranceNotReached(RuntimeError):
    def __init__(self, depth: int, active_cells: int, estimate: float):
        self.depth = depth
        self.active_cells = active_cells
        self.estimate = estimate
        super().__init__(
            f"quadrature not converged after depth {depth} "
            f"({active_cells} cells still active, estimate {estimate!r})"
        )


@dataclass(frozen=True)
class AffineElement:
    a: float
    b: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"scale must be positive, got {self.a}")


IDENTITY = AffineElement(1.0, 0.0)


def affine_mul(g: AffineElement, h: AffineElement) -> AffineElement:
    """(a,b)(a',b') = (aa', b + ab')."""
    return AffineElement(g.a * h.a, g.b + g.a * h.b)


def affine_inv(g: AffineElement) -> AffineElement:
    """(a,b)^-1 = (1/a, -b/a)."""
    return AffineElement(1.0 / g.a, -g.b / g.a)


def haar_density(p: AffineElement) -> float:
    """Left Haar density 1/a^2 at p."""
    return 1.0 / (p.a * p.a)


def modular_function(g: AffineElement) -> float:
    """Delta(a, b) = 1/a."""
    return 1.0 / g.a


@dataclass(frozen=True)
class TestFunction:
    """Polynomial bump supported on [a0-ra, a0+ra] x [b0-rb, b0+rb].

    value = (1 - ta^2)^k (1 - tb^2)^k inside the box, 0 outside, where
    ta, tb are the box-normalized coordinates.  C^(k-1) smooth; values
    in [0, 1].  The support box must sit strictly inside {a > 0}.
    """

    center_a: float
    center_b: float
    radius_a: float
    radius_b: float
    smoothness: int = 3

    def __post_init__(self):
        if self.radius_a <= 0 or self.radius_b <= 0:
            raise ValueError("radii must be positive")
        if self.smoothness < 1:
            raise ValueError("smoothness must be >= 1")
        if self.center_a - self.radius_a <= 0:
            raise SupportOutOfDomain(
                f"support reaches a = {self.center_a - self.radius_a} <= 0"
            )

    @property
    def support(self) -> tuple[float, float, float, float]:
        return (
            self.center_a - self.radius_a,
            self.center_a + self.radius_a,
            self.center_b - self.radius_b,
            self.center_b + self.radius_b,
        )

    def values(self, a, b):
        """Vectorized evaluation; accepts scalars or numpy arrays."""
        ta = (np.asarray(a, dtype=float) - self.center_a) / self.radius_a
        tb = (np.asarray(b, dtype=float) - self.center_b) / self.radius_b
        pa = np.maximum(0.0, 1.0 - ta * ta) ** self.smoothness
        pb = np.maximum(0.0, 1.0 - tb * tb) ** self.smoothness
        return pa * pb

    def __call__(self, a, b):
        return self.values(a, b)


def numeric_jacobian(side: str, g: AffineElement, p: AffineElement, h: float = 1e-4) -> float:
    """Central-difference Jacobian determinant of L_g or R_g at p.

    side "left": p -> g p; side "right": p -> p g.  The four-point
    stencil must stay inside {a > 0}.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if h <= 0:
        raise ValueError("step must be positive")
    if p.a - h <= 0:
        raise StencilOutOfDomain(f"stencil reaches a = {p.a - h} <= 0")

    def phi(a: float, b: float) -> AffineElement:
        q = AffineElement(a, b)
        return affine_mul(g, q) if side == "left" else affine_mul(q, g)

    up = phi(p.a + h, p.b)
    um = phi(p.a - h, p.b)
    vp = phi(p.a, p.b + h)
    vm = phi(p.a, p.b - h)
    du_da = (up.a - um.a) / (2 * h)
    dv_da = (up.b - um.b) / (2 * h)
    du_db = (vp.a - vm.a) / (2 * h)
    dv_db = (vp.b - vm.b) / (2 * h)
    return du_da * dv_db - du_db * dv_da


_GL_NODES, _GL_WEIGHTS = leggauss(8)
_GL_W2 = np.outer(_GL_WEIGHTS, _GL_WEIGHTS)

_MAX_ACTIVE_CELLS = 200000


def _gl_cells(func, cells: np.ndarray) -> np.ndarray:
    """Tensor Gauss-Legendre (8x8) on each cell; cells is (m, 4)."""
    x0, x1, y0, y1 = cells[:, 0], cells[:, 1], cells[:, 2], cells[:, 3]
    hx = (x1 - x0) / 2.0
    hy = (y1 - y0) / 2.0
    xs = (x0 + x1)[:, None] / 2.0 + hx[:, None] * _GL_NODES[None, :]
    ys = (y0 + y1)[:, None] / 2.0 + hy[:, None] * _GL_NODES[None, :]
    vals = func(xs[:, :, None], ys[:, None, :])
    return hx * hy * np.einsum("mij,ij->m", vals, _GL_W2)


def _subdivide(cells: np.ndarray) -> np.ndarray:
    """Split each cell into 4 quadrants, contiguous per parent."""
    x0, x1, y0, y1 = cells[:, 0], cells[:, 1], cells[:, 2], cells[:, 3]
    xm = (x0 + x1) / 2.0
    ym = (y0 + y1) / 2.0
    m = len(cells)
    children = np.empty((m, 4, 4))
    children[:, 0] = np.stack([x0, xm, y0, ym], axis=1)
    children[:, 1] = np.stack([x0, xm, ym, y1], axis=1)
    children[:, 2] = np.stack([xm, x1, y0, ym], axis=1)
    children[:, 3] = np.stack([xm, x1, ym, y1], axis=1)
    return children.reshape(4 * m, 4)


def _adaptive_quadrature(func, box, tol: float, max_depth: int) -> float:
    """Adaptive tensor-GL integral of func over box, to relative tol.

    Wave-based: every active cell is compared against the sum of its
    four children; cells meeting their area-proportional share of the
    absolute tolerance are banked, the rest stay active one level
    deeper.  Summation order is fixed by cell index, so results are
    deterministic.  Raises ToleranceNotReached instead of returning a
    silently unconverged value.
    """
    x0, x1, y0, y1 = box
    total_area = (x1 - x0) * (y1 - y0)
    if total_area <= 0:
        raise ValueError("empty integration box")
    cells = np.array([[x0, x1, y0, y1]], dtype=float)
    coarse = _gl_cells(func, cells)
    accepted = 0.0
    tol_abs = None
    for depth in range(max_depth + 1):
        children = _subdivide(cells)
        child_vals = _gl_cells(func, children)
        fine = child_vals.reshape(-1, 4).sum(axis=1)
        if tol_abs is None:
            estimate = abs(float(fine.sum()))
            tol_abs = tol * max(estimate, 1e-300)
        areas = (cells[:, 1] - cells[:, 0]) * (cells[:, 3] - cells[:, 2])
        err = np.abs(fine - coarse)
        accept = err <= tol_abs * (areas / total_area)
        accepted += float(fine[accept].sum())
        keep = ~accept
        if not keep.any():
            return accepted
        child_keep = np.repeat(keep, 4)
        cells = children[child_keep]
        coarse = child_vals[child_keep]
        if len(cells) > _MAX_ACTIVE_CELLS:
            raise ToleranceNotReached(depth, len(cells), accepted + float(fine[keep].sum()))
    raise ToleranceNotReached(max_depth, len(cells), accepted + float(coarse.sum()))


def _pulled_back_box(f: TestFunction, translate) -> tuple[float, float, float, float]:
    """Bounding box of {p : T(p) in supp f} for T absent, L_g, or R_g."""
    a_lo, a_hi, b_lo, b_hi = f.support
    if translate is None:
        return a_lo, a_hi, b_lo, b_hi
    side, g = translate
    alpha, beta = g.a, g.b
    if side == "left":
        # L_g(p) = (alpha p.a, beta + alpha p.b): box maps to box
        return (
            a_lo / alpha,
            a_hi / alpha,
            (b_lo - beta) / alpha,
            (b_hi - beta) / alpha,
        )
    if side == "right":
        # R_g(p) = (alpha p.a, p.b + beta p.a): the preimage of the box
        # is a parallelogram; bound its b-extent over the a-range
        pa_lo = a_lo / alpha
        pa_hi = a_hi / alpha
        shift_lo = min(beta * pa_lo, beta * pa_hi)
        shift_hi = max(beta * pa_lo, beta * pa_hi)
        return pa_lo, pa_hi, b_lo - shift_hi, b_hi - shift_lo
    raise ValueError(f"translate side must be 'left' or 'right', got {side!r}")


def integrate(
    f: TestFunction,
    translate: tuple[str, AffineElement] | None = None,
    tol: float = 1e-8,
    max_depth: int = 30,
) -> float:
    """Integral of f(T(p)) / a^2 da db over the pulled-back support box.

    translate is None (T = identity), ("left", g) for T = L_g, or
    ("right", g) for T = R_g.  The integration box must lie in {a > 0}.
    """
    box = _pulled_back_box(f, translate)
    if box[0] <= 0:
        raise SupportOutOfDomain(
            f"pulled-back support reaches a = {box[0]} <= 0"
        )
    if translate is None:
        func = lambda a, b: f.values(a, b) / (a * a)
    else:
        side, g = translate
        alpha, beta = g.a, g.b
        if side == "left":
            func = lambda a, b: f.values(alpha * a, beta + alpha * b) / (a * a)
        else:
            func = lambda a, b: f.values(alpha * a, b + beta * a) / (a * a)
    return _adaptive_quadrature(func, box, tol, max_depth)


def _rel_err(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def run_verification_suite(
    trials: int = 100,
    tol: float = 1e-6,
    seed: int = 0,
    quad_tol: float = 1e-8,
    jacobian_step: float = 1e-4,
    arithmetic_pairs: int = 1000,
    jacobian_points: int = 10,
) -> dict:
    """Seeded end-to-end numeric audit; returns a JSON-ready report.

    Categories and tolerances: group axioms and Delta multiplicativity
    at 1e-12 relative (pure arithmetic); Jacobians, left invariance,
    right scaling, and the Delta(g^-1) consistency at tol (default
    1e-6) relative.
    """
    start = time.perf_counter()
    rng = random.Random(seed)

    def random_element(lo=0.1, hi=10.0):
        return AffineElement(rng.uniform(lo, hi), rng.uniform(-10.0, 10.0))

    max_assoc = 0.0
    max_inverse = 0.0
    max_modular = 0.0
    for _ in range(arithmetic_pairs):
        g = random_element()
        h = random_element()
        k = random_element()
        lhs = affine_mul(affine_mul(g, h), k)
        rhs = affine_mul(g, affine_mul(h, k))
        # the b-components are sums whose terms can nearly cancel, so
        # measure their difference against the term magnitudes, not the
        # (possibly tiny) result
        b_scale = max(
            abs(lhs.b),
            abs(rhs.b),
            abs(g.b) + abs(g.a * h.b) + abs(g.a * h.a * k.b),
        )
        max_assoc = max(
            max_assoc,
            _rel_err(lhs.a, rhs.a),
            abs(lhs.b - rhs.b) / max(b_scale, 1e-300),
        )
        r = affine_mul(g, affine_inv(g))
        l = affine_mul(affine_inv(g), g)
        scale = max(1.0, abs(g.b))
        max_inverse = max(
            max_inverse,
            abs(r.a - 1.0),
            abs(r.b) / scale,
            abs(l.a - 1.0),
            abs(l.b) / scale,
        )
        max_modular = max(
            max_modular,
            _rel_err(modular_function(affine_mul(g, h)),
                     modular_function(g) * modular_function(h)),
        )

    max_jac_left = 0.0
    max_jac_right = 0.0
    for _ in range(jacobian_points):
        g = AffineElement(rng.uniform(0.5, 3.0), rng.uniform(-5.0, 5.0))
        p = AffineElement(rng.uniform(0.5, 5.0), rng.uniform(-5.0, 5.0))
        jl = numeric_jacobian("left", g, p, jacobian_step)
        jr = numeric_jacobian("right", g, p, jacobian_step)
        max_jac_left = max(max_jac_left, _rel_err(jl, g.a * g.a))
        max_jac_right = max(max_jac_right, _rel_err(jr, g.a))

    max_left_inv = 0.0
    max_right_scale = 0.0
    max_delta_consistency = 0.0
    for _ in range(trials):
        f = TestFunction(
            center_a=rng.uniform(1.0, 5.0),
            center_b=rng.uniform(-3.0, 3.0),
            radius_a=rng.uniform(0.2, 0.5),
            radius_b=rng.uniform(0.5, 1.5),
            smoothness=3,
        )
        g = AffineElement(rng.uniform(0.5, 2.0), rng.uniform(-2.0, 2.0))
        baseline = integrate(f, None, tol=quad_tol)
        left = integrate(f, ("left", g), tol=quad_tol)
        right = integrate(f, ("right", g), tol=quad_tol)
        max_left_inv = max(max_left_inv, _rel_err(left, baseline))
        factor = right / baseline
        max_right_scale = max(max_right_scale, _rel_err(factor, g.a))
        max_delta_consistency = max(
            max_delta_consistency,
            _rel_err(factor, modular_function(affine_inv(g))),
        )

    elapsed = time.perf_counter() - start
    arithmetic_tol = 1e-12
    checks = {
        "associativity": (max_assoc, arithmetic_tol),
        "inverse_law": (max_inverse, arithmetic_tol),
        "modular_multiplicativity": (max_modular, arithmetic_tol),
        "jacobian_left": (max_jac_left, tol),
        "jacobian_right": (max_jac_right, tol),
        "left_invariance": (max_left_inv, tol),
        "right_scaling": (max_right_scale, tol),
        "modular_consistency": (max_delta_consistency, tol),
    }
    return {
        "kind": "axb-verify",
        "seed": seed,
        "trials": trials,
        "arithmetic_pairs": arithmetic_pairs,
        "jacobian_points": jacobian_points,
        "jacobian_step": jacobian_step,
        "quadrature_tolerance": quad_tol,
        "tolerance": tol,
        "arithmetic_tolerance": arithmetic_tol,
        "max_errors": {name: err for name, (err, _) in checks.items()},
        "failures": [name for name, (err, bound) in checks.items() if err > bound],
        "passed": all(err <= bound for err, bound in checks.values()),
        "elapsed": elapsed,
    }
