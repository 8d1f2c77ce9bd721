"""
Named constants for the extraction pipeline.

Every factor the proofs multiply by s, t or n lives in PipelineConstants so a
run can record exactly which table it used. Strict mode only accepts the
default table.
"""
import hashlib
import math

from pydantic import BaseModel, ConfigDict, Field

DENSE_CACHE_LIMIT = 4096          # build a full n x n matrix up to this order
EXHAUSTIVE_PAIR_LIMIT = 2000      # property (iii) checked on all pairs below this |U|
SAMPLED_PAIR_COUNT = 1000         # pairs drawn above the limit
ORACLE_NODE_BUDGET = 100_000_000  # search nodes before an oracle answers "unknown"
MAX_LABEL = 2**32 - 1


class PipelineConstants(BaseModel):
    model_config = ConfigDict(frozen=True)

    lemma2_factor: int = Field(310, description="structured subgraph needs n >= 310st")
    robust_divisor: int = Field(5, description="t-robust vertices keep n/5 edges")
    bad_divisor: int = Field(15, description="bad vertices carry n/15 rogue edges")
    bad_factor: int = Field(30, description="|B| >= 30st forces a dense rogue class")
    part_factor: int = Field(2, description="parts stay below 2s vertices")
    rogue_cap_factor: int = Field(4, description="prune rogue degree >= 4st")
    window_factor: int = Field(8, description="S_1 spans 8st positions")
    bin_region_factor: int = Field(168, description="S_2 spans 168st positions")
    gap_factor: int = Field(176, description="dyadic gap needs 176st vertices")
    pigeonhole_factor: int = Field(180, description="pruned |U| >= 180st log t")
    activation_probability: float = Field(0.125, description="bin activation rate")
    overflow_factor: int = Field(2, description="|B| >= 2st links early")
    theorem_factor: int = Field(3600, description="strict gate n >= 3600st log t")
    retry_factor: int = Field(64, description="tail retries = 64 ceil(log2(t+1))")

    @classmethod
    def default(cls) -> "PipelineConstants":
        return cls()

    def is_default(self) -> bool:
        return self == PipelineConstants()

    def digest(self) -> str:
        payload = self.model_dump_json().encode("utf-8")
        return hashlib.sha256(payload).hexdigest()

    def strict_order(self, s: int, t: int) -> int:
        """Smallest n the strict gate accepts for (s, t)."""
        return self.theorem_factor * s * t * log2_ceil(t)

    def default_retries(self, t: int) -> int:
        return self.retry_factor * math.ceil(math.log2(t + 1))


def log2_ceil(t: int) -> int:
    """ceil(log2(max(t, 2))), so t = 1 never zeroes a bound."""
    return math.ceil(math.log2(max(t, 2)))
