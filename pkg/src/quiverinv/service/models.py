"""Pydantic request/response models for the quiverinv service.

Algebras and representations travel as their text-file formats; dimension
vectors and weights are integer lists in vertex declaration order.  Every
response echoes the tool version, the seed, the caps in force and any
caveat flags, so that reports are reproducible byte for byte.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


DEFAULT_SEED = 101


class ReportEnvelope(BaseModel):
    tool_version: str
    seed: int
    caps: dict = Field(default_factory=dict)
    caveats: list[str] = Field(default_factory=list)


# -- algebra ---------------------------------------------------------------


class AlgebraCheckRequest(BaseModel):
    algebra_text: str
    l_max: int = 12
    seed: int = DEFAULT_SEED


class AlgebraCheckResponse(ReportEnvelope):
    verdict: str
    bound: int | None = None
    dimension: int | None = None
    vertices: list[str]
    basis: list[str] | None = None
    notes: list[str] = Field(default_factory=list)


# -- forms -------------------------------------------------------------------


class FormsRequest(BaseModel):
    algebra_text: str
    d: list[int]
    l_max: int = 6
    weight_from: list[int] | None = None
    weight_kind: str = "difference"
    seed: int = DEFAULT_SEED


class FormsResponse(ReportEnvelope):
    euler_matrix: list[list[int]]
    tits: int
    q_class: str
    weight: list[int] | None = None


# -- stability ----------------------------------------------------------------


class KingRequest(BaseModel):
    algebra_text: str
    rep_text: str
    theta: list[int]
    seed: int = DEFAULT_SEED


class KingResponse(ReportEnvelope):
    status: str
    witness: list[int] | None = None
    notes: list[str] = Field(default_factory=list)


class FactorOut(BaseModel):
    d: list[int]
    witness_available: bool
    witness_text: str | None = None


class JHRequest(BaseModel):
    algebra_text: str
    rep_text: str
    theta: list[int]
    seed: int = DEFAULT_SEED


class JHResponse(ReportEnvelope):
    factors: list[FactorOut]
    notes: list[str] = Field(default_factory=list)


class DecompositionRequest(BaseModel):
    algebra_text: str
    theta: list[int]
    d: list[int] | None = None
    samples: int = 5
    seed: int = DEFAULT_SEED
    zero_arrows: list[str] | None = None
    rep_texts: list[str] | None = None


class PartOut(BaseModel):
    multiplicity: int
    d: list[int]


class DecompositionResponse(ReportEnvelope):
    parts: list[PartOut]
    agreement: int
    sample_count: int
    disagreement: bool
    notes: list[str] = Field(default_factory=list)


class ModuliDimensionRequest(BaseModel):
    algebra_text: str
    theta: list[int]
    d: list[int] | None = None
    samples: int = 5
    seed: int = DEFAULT_SEED
    zero_arrows: list[str] | None = None
    rep_texts: list[str] | None = None


class ModuliDimensionResponse(ReportEnvelope):
    value: int
    component_dim: int
    ambient_dim: int
    jacobian_rank: int
    group_dim: int
    notes: list[str] = Field(default_factory=list)


# -- semi-invariants -----------------------------------------------------------


class SiSeriesRequest(BaseModel):
    algebra_text: str
    d: list[int]
    theta: list[int]
    m_max: int = 3
    degree_cap: int = 24
    seed: int = DEFAULT_SEED


class SiSeriesResponse(ReportEnvelope):
    dims: list[int]


class PartIn(BaseModel):
    d: list[int]
    multiplicity: int = 1


class SiFactorizationRequest(BaseModel):
    algebra_text: str
    theta: list[int]
    parts: list[PartIn]
    m_max: int = 3
    degree_cap: int = 24
    seed: int = DEFAULT_SEED
    zero_arrows: list[str] | None = None


class SiFactorizationResponse(ReportEnvelope):
    passed: bool
    ambient_dims: list[int]
    expected_dims: list[int]
    factor_dims: dict


class SiClassifyRequest(BaseModel):
    algebra_text: str
    theta: list[int]
    d: list[int] | None = None
    decomposition: list[PartIn]
    seed: int = DEFAULT_SEED


class SiClassifyResponse(ReportEnvelope):
    kind: str
    exponents: list[int]
    transcendence_degree: int
    shape: str
    notes: list[str] = Field(default_factory=list)


# -- tilting --------------------------------------------------------------------


class TiltContextRequest(BaseModel):
    algebra_text: str
    summand_texts: list[str]
    seed: int = DEFAULT_SEED


class TiltContextResponse(ReportEnvelope):
    is_tilting: bool
    pd: int | None = None
    self_ext_dim: int
    summand_count: int
    basic: bool
    b_algebra_text: str
    u: list[list[int]]
    context_text: str


class TiltWellPositionedRequest(BaseModel):
    algebra_text: str
    summand_texts: list[str]
    theta: list[int]
    bound: int = 4
    samples_per_vector: int = 3
    seed: int = DEFAULT_SEED
    zero_arrows: list[str] | None = None


class TiltWellPositionedResponse(ReportEnvelope):
    verdict: str
    bound: int
    semistable_dims: list[list[int]]
    case1_counterexamples: list[str]
    case2_counterexamples: list[str]
    functor_ambiguous: bool
    notes: list[str] = Field(default_factory=list)


class TiltTransportRequest(BaseModel):
    algebra_text: str
    summand_texts: list[str]
    rep_text: str
    theta: list[int]
    case: str = "auto"          # auto | case1 | case2
    bound: int = 4
    samples_per_vector: int = 3
    seed: int = DEFAULT_SEED
    zero_arrows: list[str] | None = None


class TiltTransportResponse(ReportEnvelope):
    case: str
    functor: str
    theta_prime: list[int]
    image_dims: list[int]
    image_text: str
    stability_status: str
    notes: list[str] = Field(default_factory=list)


class TiltTorsionRequest(BaseModel):
    algebra_text: str
    summand_texts: list[str]
    rep_text: str
    seed: int = DEFAULT_SEED


class TiltTorsionResponse(ReportEnvelope):
    membership: str
    notes: list[str] = Field(default_factory=list)


# -- generic decomposition --------------------------------------------------------


class DecompGenericRequest(BaseModel):
    algebra_text: str
    d: list[int]
    samples: int = 5
    seed: int = DEFAULT_SEED
    zero_arrows: list[str] | None = None
    rep_texts: list[str] | None = None


class DecompPartOut(BaseModel):
    multiplicity: int
    d: list[int]
    q_label: str


class DecompGenericResponse(ReportEnvelope):
    parts: list[DecompPartOut]
    confidence: int
    sample_count: int
    disagreement: bool
    generic_root: str
    notes: list[str] = Field(default_factory=list)


class DecompPredictRequest(BaseModel):
    algebra_text: str
    decomposition: list[PartIn]
    seed: int = DEFAULT_SEED


class DecompPredictResponse(ReportEnvelope):
    transcendence_degree: int
    field_shape: str
    notes: list[str] = Field(default_factory=list)


class VersionResponse(BaseModel):
    tool_version: str
