from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from .core.trees import TreeSpec


class MonoEmbedding(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    variant: Literal["MonoEmbedding"] = "MonoEmbedding"
    color: int
    mapping: List[int] = Field(..., alias="map")


class RainbowPath(BaseModel):
    variant: Literal["RainbowPath"] = "RainbowPath"
    path: List[int]

    @property
    def length(self) -> int:
        return max(len(self.path) - 1, 0)


class ProperEmbedding(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    variant: Literal["ProperEmbedding"] = "ProperEmbedding"
    mapping: List[int] = Field(..., alias="map")


class Failure(BaseModel):
    variant: Literal["Failure"] = "Failure"
    stage: str
    reason: str


Certificate = Annotated[
    Union[MonoEmbedding, RainbowPath, ProperEmbedding, Failure],
    Field(discriminator="variant"),
]
CertificateAdapter: TypeAdapter = TypeAdapter(Certificate)


class Verdict(BaseModel):
    ok: bool
    reason: Optional[str] = None


class CertificateDocument(BaseModel):
    """What the CLI writes: a certificate plus the target it answers."""

    certificate: Certificate
    tree: Optional[TreeSpec] = None
    t: Optional[int] = None
    seed: Optional[int] = None


class PipelineTrace(BaseModel):
    """Per-stage sizes of one extract run. Field order is the output order."""

    seed: int
    mode: str
    n: int
    s: int
    t: int
    constants_digest: str
    robust_count: Optional[int] = None
    path_length: Optional[int] = None
    rogue_count: Optional[int] = None
    bad_count: Optional[int] = None
    u_size: Optional[int] = None
    part_count: Optional[int] = None
    repair_deletions: Optional[int] = None
    pruned_size: Optional[int] = None
    forward_count: Optional[int] = None
    f: Optional[int] = None
    ell: Optional[int] = None
    bin_count: Optional[int] = None
    retries: Optional[int] = None
    branch: Optional[str] = None
    outcome: Optional[str] = None
    stage: Optional[str] = None


class OracleResult(BaseModel):
    status: Literal["exact", "unknown"]
    value: Optional[int] = None
    witness: Optional[List[int]] = None
    nodes: int = 0


def dump_certificate(cert) -> str:
    return cert.model_dump_json(by_alias=True, indent=2)


def parse_certificate(text: str):
    return CertificateAdapter.validate_json(text)
