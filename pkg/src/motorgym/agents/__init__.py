from .common import epsilon_greedy, linear_schedule
from .ddpg import DdpgAgent
from .dqn import DqnAgent
from .ppo import PpoAgent, ppo_gae
from .sarsa import SarsaAgent, sarsa_update
from .tiles import TileCoder, q_value

AGENT_CLASSES = {
    cls.agent_id: cls for cls in (SarsaAgent, DqnAgent, DdpgAgent, PpoAgent)
}

__all__ = [
    "AGENT_CLASSES",
    "DdpgAgent",
    "DqnAgent",
    "PpoAgent",
    "SarsaAgent",
    "TileCoder",
    "epsilon_greedy",
    "linear_schedule",
    "ppo_gae",
    "q_value",
    "sarsa_update",
]
