"""Classic-control RL environments actuated through a PID-controlled DC motor."""

__version__ = "0.1.0"
