"""Floating-point verification of the Lagrangian construction.

Samples points on the real locus by damped Newton projection, assembles the
tangent frame of the immersed total space at torus-shifted points, and
measures quadric residuals, the frame's smallest singular value (immersion)
and the symplectic pullback (the Lagrangian property).  Everything is
seed-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceFailure, DegenerateSystem, RankDeficient
from .lattices import column_lattice
from .linalg import RationalMatrix, solve_unique
from .quadrics import QuadricSystem, validate

ACCEPT_TOLERANCE = 1e-12
LAGRANGIAN_TOLERANCE = 1e-9
RANK_THRESHOLD = 1e-8

NEWTON_MAX_ITERATIONS = 100
NEWTON_MIN_DAMPING = 1e-6


@dataclass(frozen=True)
class SamplePoint:
    u: np.ndarray
    residual: float


@dataclass(frozen=True)
class TangentFrame:
    base: SamplePoint
    phi: np.ndarray
    vectors: np.ndarray          # complex (m, m): columns are frame vectors
    min_singular_value: float


@dataclass(frozen=True)
class ResidualReport:
    samples: int
    max_quadric_residual: float
    min_frame_singular_value: float
    max_symplectic_pullback: float
    seed: int


def _float_system(system: QuadricSystem) -> tuple[np.ndarray, np.ndarray]:
    gamma = np.array([[float(e) for e in row] for row in system.gamma.entries])
    c = np.array([float(e) for e in system.c])
    return gamma, c


def _newton_project(gamma: np.ndarray, c: np.ndarray, u0: np.ndarray,
                    tolerance: float) -> np.ndarray | None:
    """Project a seed point onto the intersection of quadrics.

    Least-norm Newton steps on the residual, halving the step while the
    residual fails to decrease; returns None when the iteration stalls.
    """
    u = u0.copy()
    residual = gamma @ (u * u) - c
    norm = np.max(np.abs(residual))
    for _ in range(NEWTON_MAX_ITERATIONS):
        if norm <= tolerance:
            return u
        jac = 2.0 * gamma * u[None, :]
        jjt = jac @ jac.T
        try:
            step = jac.T @ np.linalg.solve(jjt, -residual)
        except np.linalg.LinAlgError:
            return None
        damping = 1.0
        while damping >= NEWTON_MIN_DAMPING:
            candidate = u + damping * step
            cand_residual = gamma @ (candidate * candidate) - c
            cand_norm = np.max(np.abs(cand_residual))
            if cand_norm < norm:
                u, residual, norm = candidate, cand_residual, cand_norm
                break
            damping *= 0.5
        else:
            return None
    return u if norm <= tolerance else None


def sample_points(system: QuadricSystem, count: int, seed: int,
                  tolerance: float = ACCEPT_TOLERANCE) -> tuple[SamplePoint, ...]:
    """Draw ``count`` accepted points on the real locus, deterministically.

    Standard-normal seeds are Newton-projected; starting points that fail to
    converge are rejected.  Raises when more than half of the attempted
    projections fail, which signals a near-degenerate system.
    """
    report = validate(system)
    if not report.nonempty_nondegenerate:
        raise DegenerateSystem("sampling requires a valid system")
    gamma, c = _float_system(system)
    rng = np.random.default_rng(seed)
    accepted: list[SamplePoint] = []
    attempts = 0
    max_attempts = 2 * count
    while len(accepted) < count and attempts < max_attempts:
        attempts += 1
        u0 = rng.standard_normal(system.m)
        u = _newton_project(gamma, c, u0, tolerance)
        if u is None:
            continue
        residual = float(np.max(np.abs(gamma @ (u * u) - c)))
        accepted.append(SamplePoint(u, residual))
    if len(accepted) < count:
        raise ConvergenceFailure(
            f"only {len(accepted)} of {attempts} projections converged"
        )
    return tuple(accepted)


def tangent_frame(system: QuadricSystem, sample: SamplePoint, phi: np.ndarray,
                  rank_threshold: float = RANK_THRESHOLD) -> TangentFrame:
    """Tangent frame of the immersed total space at a torus-shifted point.

    The first block carries the tangent space of the real locus (numerical
    kernel of the quadric Jacobian) rotated by the torus phases, the second
    the torus directions themselves.  The frame must have full numerical
    rank at an accepted sample of a valid system.
    """
    gamma, _ = _float_system(system)
    u = sample.u
    m = system.m
    r = system.quadric_count
    theta = 2.0 * np.pi * (gamma.T @ phi)          # phase per coordinate
    phases = np.exp(1j * theta)
    jac = 2.0 * gamma * u[None, :]
    _, _, vt = np.linalg.svd(jac)
    kernel = vt[r:]                                 # (n, m) orthonormal rows
    columns = []
    for v in kernel:
        columns.append(v * phases)
    for j in range(r):
        columns.append(2j * np.pi * gamma[j, :] * u * phases)
    frame = np.array(columns).T                     # (m, m) complex
    stacked = np.vstack([frame.real, frame.imag])   # (2m, m) real
    sigma = np.linalg.svd(stacked, compute_uv=False)
    smallest = float(sigma[-1]) if sigma.size else 0.0
    if smallest < rank_threshold:
        raise RankDeficient(
            f"frame singular value {smallest:.3e} below threshold {rank_threshold:.1e}"
        )
    return TangentFrame(sample, phi, frame, smallest)


def lagrangian_residual(frame: TangentFrame | np.ndarray) -> float:
    """Largest normalised symplectic pairing over all frame vector pairs.

    The standard form evaluates as the imaginary part of the Hermitian
    product; on an exactly Lagrangian tangent space every pairing vanishes.
    """
    vectors = frame.vectors if isinstance(frame, TangentFrame) else frame
    m = vectors.shape[1]
    worst = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            xi, eta = vectors[:, i], vectors[:, j]
            omega = float(np.imag(np.vdot(xi, eta)))
            scale = float(np.linalg.norm(xi) * np.linalg.norm(eta))
            if scale > 0:
                worst = max(worst, abs(omega) / scale)
    return worst


def corrupted_frame(frame: TangentFrame, quadric_count: int) -> np.ndarray:
    """Negative control: multiply the first torus direction by i.

    Torus directions occupy the trailing ``quadric_count`` columns; the
    corruption breaks the isotropy of the torus block pairings whenever
    there are at least two quadrics.
    """
    vectors = frame.vectors.copy()
    first_torus = vectors.shape[1] - quadric_count
    vectors[:, first_torus] *= 1j
    return vectors


def dual_basis_floats(system: QuadricSystem) -> np.ndarray:
    """Rows span a fundamental domain of the dual lattice, as floats."""
    full, scale = column_lattice(system)
    r = system.quadric_count
    b_true = RationalMatrix.from_rows(
        [[Fraction(x, scale) for x in row] for row in full.basis], r
    )
    rows = []
    for j in range(r):
        rhs = [Fraction(1 if i == j else 0) for i in range(r)]
        d = solve_unique(b_true, rhs)
        assert d is not None
        rows.append([float(e) for e in d])
    return np.array(rows)


def verify_lagrangian(system: QuadricSystem, count: int, seed: int,
                      accept_tolerance: float = ACCEPT_TOLERANCE,
                      rank_threshold: float = RANK_THRESHOLD) -> ResidualReport:
    """Sample the locus and aggregate immersion and Lagrangian residuals.

    Torus parameters are drawn uniformly from a fundamental domain of the
    dual lattice; the report carries the worst observed values.
    """
    samples = sample_points(system, count, seed, accept_tolerance)
    dual = dual_basis_floats(system)
    rng = np.random.default_rng(seed + 1)
    max_residual = 0.0
    min_sigma = np.inf
    max_omega = 0.0
    for sample in samples:
        phi = rng.random(system.quadric_count) @ dual
        frame = tangent_frame(system, sample, phi, rank_threshold)
        max_residual = max(max_residual, sample.residual)
        min_sigma = min(min_sigma, frame.min_singular_value)
        max_omega = max(max_omega, lagrangian_residual(frame))
    return ResidualReport(
        samples=len(samples),
        max_quadric_residual=max_residual,
        min_frame_singular_value=float(min_sigma),
        max_symplectic_pullback=max_omega,
        seed=seed,
    )
