from abc import ABC, abstractmethod

import numpy as np

from src.domain.estimation import HyperParams, OptimizerKind


def clip_grad_norm(grads: dict[str, np.ndarray], max_norm: float) -> float:
    """Rescale in place so the global L2 norm is at most max_norm. Returns the norm before clipping."""
    total = float(np.sqrt(sum(float((g.astype(np.float64) ** 2).sum()) for g in grads.values())))
    if total > max_norm:
        scale = max_norm / (total + 1e-6)
        for g in grads.values():
            g *= scale
    return total


class Optimizer(ABC):

    def __init__(self, learning_rate: float):
        self.learning_rate = learning_rate

    @abstractmethod
    def step(self, params: dict[str, np.ndarray], grads: dict[str, np.ndarray]) -> None:
        pass


class SGD(Optimizer):

    def step(self, params: dict[str, np.ndarray], grads: dict[str, np.ndarray]) -> None:
        for name, g in grads.items():
            params[name] -= self.learning_rate * g


class Adam(Optimizer):

    def __init__(self, learning_rate: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        super().__init__(learning_rate)
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m: dict[str, np.ndarray] = {}
        self._v: dict[str, np.ndarray] = {}

    def step(self, params: dict[str, np.ndarray], grads: dict[str, np.ndarray]) -> None:
        self.t += 1
        correction1 = 1.0 - self.beta1 ** self.t
        correction2 = 1.0 - self.beta2 ** self.t
        for name, g in grads.items():
            m = self._m.setdefault(name, np.zeros_like(g))
            v = self._v.setdefault(name, np.zeros_like(g))
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            m_hat = m / correction1
            v_hat = v / correction2
            params[name] -= (self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)).astype(g.dtype)


def make_optimizer(hp: HyperParams) -> Optimizer:
    if hp.optimizer == OptimizerKind.SGD:
        return SGD(hp.learning_rate)
    return Adam(hp.learning_rate)
