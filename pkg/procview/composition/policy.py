import random
from dataclasses import dataclass

LEFT = "left"
RIGHT = "right"

ROUND_ROBIN = "round_robin"
FIXED = "fixed"
SEEDED_RANDOM = "seeded_random"


@dataclass(frozen=True)
class ChooserPolicy:
    """
    How the ``@`` connector picks the branch to start.

    The choice for the ``k``-th incoming event (counting from 0) depends only
    on ``k`` and the policy, so a policy is deterministic given the number of
    events seen so far.

    Attributes:
        kind (str): ``round_robin``, ``fixed`` or ``seeded_random``.
        first (str): Branch chosen by a fixed policy, ``left`` or ``right``.
        seed (int): Seed of a seeded-random policy.
    """

    kind: str = ROUND_ROBIN
    first: str = LEFT
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (ROUND_ROBIN, FIXED, SEEDED_RANDOM):
            raise ValueError(
                f"`kind` expects one of round_robin, fixed, seeded_random, "
                f"but got {self.kind!r}."
            )
        if self.first not in (LEFT, RIGHT):
            raise ValueError(
                f"`first` expects 'left' or 'right', but got {self.first!r}."
            )

    @classmethod
    def round_robin(cls) -> "ChooserPolicy":
        return cls(ROUND_ROBIN)

    @classmethod
    def fixed(cls, first: str) -> "ChooserPolicy":
        return cls(FIXED, first=first)

    @classmethod
    def seeded_random(cls, seed: int) -> "ChooserPolicy":
        return cls(SEEDED_RANDOM, seed=seed)

    def choose(self, k: int) -> str:
        """Branch for the ``k``-th event."""
        if self.kind == FIXED:
            return self.first
        if self.kind == ROUND_ROBIN:
            return LEFT if k % 2 == 0 else RIGHT
        return LEFT if random.Random(f"{self.seed}:{k}").random() < 0.5 else RIGHT

    def __str__(self):
        if self.kind == FIXED:
            return self.first
        if self.kind == ROUND_ROBIN:
            return "rr"
        return f"random {self.seed}"


@dataclass(frozen=True)
class RestartPolicy:
    """
    Restart gating of a non-autonomous loop.

    Attributes:
        allow_restart_while_running (bool): Forward a start that arrives while
            the body runs instead of dropping it.
        min_gap_ticks (int): Minimal distance between two activations of the
            body; at least 1.
    """

    allow_restart_while_running: bool = False
    min_gap_ticks: int = 1

    def __post_init__(self):
        if self.min_gap_ticks < 1:
            raise ValueError(
                f"`min_gap_ticks` must be at least 1, but got {self.min_gap_ticks}."
            )

    def __str__(self):
        restart = "true" if self.allow_restart_while_running else "false"
        return f"restart={restart} gap={self.min_gap_ticks}"
