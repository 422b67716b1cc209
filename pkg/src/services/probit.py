"""
Probit regression posterior under a g-prior and its Gaussian plug-in proposal.

    P(y_i = 1 | theta) = Phi(x_i' theta),   theta ~ N(0, n (X'X)^{-1})

log Phi uses scipy.special.log_ndtr, which switches to an asymptotic series
in the far lower tail, so the posterior stays finite for every finite theta.
"""
from __future__ import annotations
from logging import Logger
from typing import Optional

import numpy as np
from scipy import linalg
from scipy.special import log_ndtr

from src.domain.errors import MleConvergenceError, SingularHessianError
from src.domain.probit import MleFit, ProbitData
from src.services.models import BaseModelPair

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


def _signs(y: np.ndarray) -> np.ndarray:
    return 2.0 * y - 1.0


def _inverse_mills(z: np.ndarray) -> np.ndarray:
    # phi(z) / Phi(z), stable in the lower tail
    return np.exp(-0.5 * z * z - _LOG_SQRT_2PI - log_ndtr(z))


class ProbitPosterior:
    def __init__(self, data: ProbitData):
        self.data = data
        self.gram = data.gram
        self._signs = _signs(data.y)

    @property
    def dimension(self) -> int:
        return self.data.d

    def log_likelihood(self, theta: np.ndarray) -> float:
        z = self._signs * (self.data.X @ np.asarray(theta, dtype=float))
        return float(np.sum(log_ndtr(z)))

    def log_prior(self, theta: np.ndarray) -> float:
        theta = np.asarray(theta, dtype=float)
        return float(-theta @ self.gram @ theta / (2.0 * self.data.n))

    def log_posterior(self, theta: np.ndarray) -> float:
        return self.log_likelihood(theta) + self.log_prior(theta)

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        """Gradient of the log-likelihood (no prior term)."""
        z = self._signs * (self.data.X @ np.asarray(theta, dtype=float))
        return self.data.X.T @ (self._signs * _inverse_mills(z))

    def hessian(self, theta: np.ndarray) -> np.ndarray:
        """Hessian of the log-likelihood (no prior term)."""
        z = self._signs * (self.data.X @ np.asarray(theta, dtype=float))
        lam = _inverse_mills(z)
        weights = lam * (z + lam)
        return -(self.data.X.T * weights) @ self.data.X


def log_posterior(post: ProbitPosterior, theta: np.ndarray) -> float:
    return post.log_posterior(theta)


def fit_mle(
    data: ProbitData,
    tol: float = 1e-8,
    max_iter: int = 100,
    logger: Optional[Logger] = None,
) -> MleFit:
    """Newton-Raphson with step halving on the probit log-likelihood.

    Converged when the gradient max-norm and the Newton step max-norm are both
    below `tol` / sqrt(tol); under complete separation the step never shrinks
    and MleConvergenceError is raised.
    """
    post = ProbitPosterior(data)
    theta = np.zeros(data.d)
    current = post.log_likelihood(theta)
    step_tol = np.sqrt(tol)
    for iteration in range(1, max_iter + 1):
        grad = post.gradient(theta)
        info = -post.hessian(theta)
        try:
            step = linalg.solve(info, grad, assume_a="pos")
        except (linalg.LinAlgError, ValueError) as e:
            if iteration == 1:
                raise SingularHessianError(f"Observed information is singular at the starting point: {e}") from e
            # information collapsing along the path means theta is running off to infinity
            raise MleConvergenceError(
                f"Newton-Raphson diverged at iteration {iteration}; the data may be separable"
            ) from e

        if np.max(np.abs(grad)) <= tol and np.max(np.abs(step)) <= step_tol:
            return _finish(post, theta, iteration, logger)

        scale = 1.0
        for _ in range(50):
            candidate = theta + scale * step
            value = post.log_likelihood(candidate)
            if value >= current:
                break
            scale *= 0.5
        else:
            raise MleConvergenceError(
                f"Step halving found no increase of the log-likelihood at iteration {iteration} "
                f"(theta={np.round(theta, 6).tolist()})"
            )
        theta, current = candidate, value
        if logger is not None:
            logger.debug(f"Newton iteration {iteration}: loglik={current:.10g} |grad|={np.max(np.abs(grad)):.3g}")

    raise MleConvergenceError(
        f"Newton-Raphson did not converge in {max_iter} iterations "
        f"(theta={np.round(theta, 6).tolist()}); the data may be separable"
    )


def _finish(post: ProbitPosterior, theta: np.ndarray, iterations: int, logger: Optional[Logger]) -> MleFit:
    info = -post.hessian(theta)
    try:
        sigma = linalg.inv(info)
    except (linalg.LinAlgError, ValueError) as e:
        raise SingularHessianError(f"Observed information is singular at the MLE: {e}") from e
    sigma = 0.5 * (sigma + sigma.T)
    try:
        linalg.cholesky(sigma, lower=True)
    except linalg.LinAlgError as e:
        raise SingularHessianError("Inverse observed information is not positive definite") from e
    grad_norm = float(np.max(np.abs(post.gradient(theta))))
    if logger is not None:
        logger.info(f"Probit MLE converged in {iterations} iterations: theta_hat={np.round(theta, 6).tolist()}")
    return MleFit(theta_hat=theta, sigma_hat=sigma, iterations=iterations, grad_norm=grad_norm)


class ProbitModel(BaseModelPair):
    """Posterior target with the independent N(theta_hat, c * Sigma_hat) proposal."""

    def __init__(self, posterior: ProbitPosterior, fit: MleFit, c: float):
        if c <= 0:
            raise ValueError("Scale factor c must be positive")
        self.posterior = posterior
        self.fit = fit
        self.c = float(c)
        self.dimension = posterior.dimension
        self.coordinate_names = posterior.data.names
        self._chol = linalg.cholesky(self.c * fit.sigma_hat, lower=True)

    def log_target(self, x: np.ndarray) -> float:
        return self.posterior.log_posterior(x)

    def log_targets(self, points: np.ndarray) -> np.ndarray:
        # one mat-vec per point keeps each value independent of batch size
        return np.array([self.posterior.log_posterior(x) for x in np.atleast_2d(points)], dtype=float)

    def log_proposal(self, x: np.ndarray) -> float:
        return float(self.log_proposals(np.atleast_2d(x))[0])

    def log_proposals(self, points: np.ndarray) -> np.ndarray:
        centered = np.atleast_2d(points) - self.fit.theta_hat
        scaled = linalg.solve_triangular(self._chol, centered.T, lower=True)
        return -0.5 * np.sum(scaled ** 2, axis=0)

    def sample_proposal(self, rng: np.random.Generator) -> np.ndarray:
        return self.fit.theta_hat + self._chol @ rng.standard_normal(self.dimension)

    def sample_proposals(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.fit.theta_hat + rng.standard_normal((size, self.dimension)) @ self._chol.T

    def initial_point(self, rng: np.random.Generator) -> np.ndarray:
        return self.fit.theta_hat.copy()


def probit_model(
    data: ProbitData,
    c: float,
    fit: Optional[MleFit] = None,
    tol: float = 1e-8,
    max_iter: int = 100,
    logger: Optional[Logger] = None,
) -> ProbitModel:
    if c <= 0:
        raise ValueError("Scale factor c must be positive")
    if fit is None:
        fit = fit_mle(data, tol=tol, max_iter=max_iter, logger=logger)
    return ProbitModel(ProbitPosterior(data), fit, c)
