"""Numerical minimization of the average subsystem purity.

States are parameterized by 2 * 2**n unconstrained reals (interleaved real
and imaginary parts) with normalization folded into the objective, Rayleigh
quotient style, so the objective is scale invariant and the gradient is
orthogonal to the radial direction.  Minimization runs scipy's L-BFGS-B
(first order, analytic gradient) from seeded Haar-random starts; restarts
are independent and the merge picks the lowest value, ties by restart index.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .states import PureState, half_size, make_state, purity_profile


@dataclass(frozen=True)
class OptimizerConfig:
    n: int
    restarts: int = 20
    max_iterations: int = 2000
    grad_tol: float = 1e-8
    value_tol: float = 1e-14
    seed: int = 0

    def __post_init__(self):
        if not 2 <= self.n <= 12:
            raise ValueError(f"n must be in [2, 12], got {self.n}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.grad_tol <= 0 or self.value_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class OptimizationResult:
    best_state: PureState
    pi_me: float
    sigma_me: float
    iterations_used: int
    converged: bool
    best_restart: int
    restart_traces: tuple[tuple[float, ...], ...] = field(repr=False)


def _infer_n(params: np.ndarray) -> int:
    size = params.size
    n = (size // 2).bit_length() - 1
    if size != 2 << n or n < 1:
        raise ValueError(f"parameter vector length must be 2 * 2**n, got {size}")
    return n


def _subset_axes(n: int) -> list[tuple[list[int], np.ndarray]]:
    """Per size-floor(n/2) subset: transpose order and its inverse."""
    m = half_size(n)
    plans = []
    for sub in itertools.combinations(range(n), m):
        rest = [i for i in range(n) if i not in sub]
        order = list(sub) + rest
        plans.append((order, np.argsort(order)))
    return plans


def _value_and_grad(params: np.ndarray) -> tuple[float, np.ndarray]:
    """Average subsystem purity of the encoded state and its gradient.

    For each marginal, writing M for the reshaped normalized amplitudes,
    d(purity)/d(conj psi) = 2 * rho M; the normalization chain rule then
    projects out the component of the gradient along psi.
    """
    n = _infer_n(params)
    m = half_size(n)
    amps = params[0::2] + 1j * params[1::2]
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ValueError("parameter vector is identically zero")
    psi = amps / norm

    plans = _subset_axes(n)
    shape = [2] * n
    total = 0.0
    gsum = np.zeros_like(psi)
    for order, inverse in plans:
        mat = psi.reshape(shape).transpose(order).reshape(1 << m, -1)
        rho = mat @ mat.conj().T
        total += float(np.vdot(rho, rho).real)
        gsum += (rho @ mat).reshape(shape).transpose(inverse).reshape(-1)
    count = len(plans)
    value = total / count
    g = (2.0 / count) * gsum
    # Remove the radial component, then undo the normalization scale.
    g = (g - psi * np.vdot(psi, g).real) / norm
    grad = np.empty_like(params)
    grad[0::2] = 2.0 * g.real
    grad[1::2] = 2.0 * g.imag
    return value, grad


def objective(params: np.ndarray) -> float:
    """Average subsystem purity of the state encoded by `params` (scale invariant)."""
    params = np.asarray(params, dtype=np.float64).reshape(-1)
    return _value_and_grad(params)[0]


def gradient(params: np.ndarray) -> np.ndarray:
    """Analytic gradient of :func:`objective`."""
    params = np.asarray(params, dtype=np.float64).reshape(-1)
    return _value_and_grad(params)[1]


def params_from_state(state: PureState) -> np.ndarray:
    """Interleaved real/imaginary encoding of a state's amplitudes."""
    out = np.empty(2 * state.dim)
    out[0::2] = state.amplitudes.real
    out[1::2] = state.amplitudes.imag
    return out


def state_from_params(params: np.ndarray) -> PureState:
    params = np.asarray(params, dtype=np.float64).reshape(-1)
    n = _infer_n(params)
    return make_state(n, params[0::2] + 1j * params[1::2], normalize=True)


def sigma_me(state: PureState) -> float:
    """Population standard deviation of the floor(n/2)-qubit subsystem purities."""
    values = [p for _, p in purity_profile(state, half_size(state.n_qubits))]
    mean = math.fsum(values) / len(values)
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / len(values))


def minimize(config: OptimizerConfig) -> OptimizationResult:
    """Minimize the average subsystem purity over pure states of config.n qubits.

    Deterministic for a fixed config: restart r draws its start from the
    generator seeded with (config.seed, r).  Non-convergence of a restart is
    reported through the `converged` flag, never as an error.
    """
    best_val = math.inf
    best_x = None
    best_restart = -1
    best_converged = False
    iterations = 0
    traces: list[tuple[float, ...]] = []

    for r in range(config.restarts):
        rng = np.random.default_rng([config.seed, r])
        x0 = rng.standard_normal(2 << config.n)
        trace: list[float] = []

        def record(xk, _trace=trace):
            val = objective(xk)
            _trace.append(min(val, _trace[-1]) if _trace else val)

        res = scipy.optimize.minimize(
            _value_and_grad,
            x0,
            jac=True,
            method="L-BFGS-B",
            callback=record,
            options={
                "maxiter": config.max_iterations,
                "gtol": config.grad_tol,
                "ftol": config.value_tol,
                "maxcor": 20,
            },
        )
        iterations += int(res.nit)
        final = float(res.fun)
        trace.append(min(final, trace[-1]) if trace else final)
        traces.append(tuple(trace))
        if final < best_val:
            best_val = final
            best_x = res.x
            best_restart = r
            best_converged = bool(res.success)

    state = state_from_params(best_x)
    assert best_val >= 2.0 ** -half_size(config.n) - 1e-9
    return OptimizationResult(
        best_state=state,
        pi_me=best_val,
        sigma_me=sigma_me(state),
        iterations_used=iterations,
        converged=best_converged,
        best_restart=best_restart,
        restart_traces=tuple(traces),
    )
