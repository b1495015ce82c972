"""ADAM optimizer and soft target-network updates."""

import numpy as np


class Adam:
    """Bias-corrected ADAM over a fixed list of parameter arrays."""

    def __init__(self, params, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = float(lr)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.eps = float(eps)
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def step(self, params, grads):
        """Update `params` in place from aligned `grads`."""
        if len(params) != len(self.m) or len(grads) != len(self.m):
            raise ValueError("parameter/gradient lists do not match optimizer state")
        self.t += 1
        c1 = 1.0 - self.beta1**self.t
        c2 = 1.0 - self.beta2**self.t
        # folded form of lr * (m/c1) / (sqrt(v/c2) + eps)
        alpha = self.lr * np.sqrt(c2) / c1
        eps = self.eps * np.sqrt(c2)
        for p, g, m, v in zip(params, grads, self.m, self.v):
            if p.shape != g.shape:
                raise ValueError(f"gradient shape {g.shape} does not match parameter {p.shape}")
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * np.square(g)
            denom = np.sqrt(v)
            denom += eps
            np.divide(m, denom, out=denom)
            denom *= alpha
            p -= denom


def soft_update(target, online, tau: float) -> None:
    """target <- tau * online + (1 - tau) * target, parameter-wise.

    `target` and `online` are networks exposing `params()` with
    identical architectures.
    """
    t_params = target.params()
    o_params = online.params()
    if len(t_params) != len(o_params):
        raise ValueError("networks have different parameter counts")
    for tp, op in zip(t_params, o_params):
        if tp.shape != op.shape:
            raise ValueError(f"parameter shapes differ: {tp.shape} vs {op.shape}")
        tp *= 1.0 - tau
        tp += tau * op
