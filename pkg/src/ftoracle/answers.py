from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional


class Case(str, enum.Enum):
    NO_FAULT_EFFECT = "NO_FAULT_EFFECT"
    DETOUR_PATH = "DETOUR_PATH"
    DOUBLED_BASE = "DOUBLED_BASE"
    S_PRIME_CANDIDATE = "S_PRIME_CANDIDATE"
    BUCKET_CANDIDATE = "BUCKET_CANDIDATE"


@dataclass(frozen=True)
class Answer:
    """Estimated post-failure distance; ``inf`` means unreachable."""

    value: float
    case: Case
    bucket: Optional[int] = None  # set for BUCKET_CANDIDATE

    @property
    def reachable(self) -> bool:
        return not math.isinf(self.value)

    @property
    def tag(self) -> str:
        if self.case is Case.BUCKET_CANDIDATE:
            return f"BUCKET_CANDIDATE({self.bucket})"
        return self.case.value


# the two oracles share one answer type
Answer2 = Answer
AnswerEps = Answer
