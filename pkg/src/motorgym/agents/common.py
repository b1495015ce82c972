import numpy as np


def epsilon_greedy(q_values, epsilon: float, rng: np.random.Generator) -> int:
    """Argmax action with probability 1-epsilon, else uniform over all.

    Ties resolve to the lowest index.
    """
    q_values = np.asarray(q_values)
    if q_values.size == 0:
        raise ValueError("q_values must be non-empty")
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(0, q_values.size))
    return int(np.argmax(q_values))


def linear_schedule(start: float, end: float, fraction_done: float) -> float:
    """Linear interpolation clamped to the end value."""
    f = min(max(fraction_done, 0.0), 1.0)
    return start + (end - start) * f
