"""Request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str
    lexicons_loaded: bool
    topic_models_loaded: bool


class DescriptorModel(BaseModel):
    index: int
    code: str
    subgroup: str
    branch: str
    kind: str


class RegistryResponse(BaseModel):
    features: list[DescriptorModel]


class FeatureSetResponse(BaseModel):
    name: str
    codes: list[str]


class TopicMeasuresRequest(BaseModel):
    probs: list[float] = Field(description="topic distribution, any order")
    threshold: float = 0.01


class TopicMeasuresResponse(BaseModel):
    sorted_probs: list[float]
    count: int
    richness: float
    clarity: float
    noise: float


class ExtractRequest(BaseModel):
    annotations: dict = Field(description="annotation JSON payload")
    feature_set: str = "T1"
    threshold: float = 0.01


class DocumentFeatures(BaseModel):
    doc_id: str
    label: int | None
    values: dict[str, float]


class ExtractResponse(BaseModel):
    feature_set: str
    codes: list[str]
    features: list[DocumentFeatures]


class FeatureRow(BaseModel):
    doc_id: str
    label: int | None = None
    values: dict[str, float]


class SoftLabelRow(BaseModel):
    doc_id: str
    fold: int
    split: str
    probs: list[float]


class EvaluateRequest(BaseModel):
    rows: list[FeatureRow]
    soft_labels: list[SoftLabelRow] | None = None
    broadcast_soft_labels: bool = False
    feature_set: str | None = None
    model: str = "logreg"
    model_params: dict = Field(default_factory=dict)
    folds: int = 5
    seed: int = 0


class MetricSummary(BaseModel):
    folds: list[float]
    mean: float


class EvaluateResponse(BaseModel):
    accuracy: MetricSummary
    f1: MetricSummary
    precision: MetricSummary
    recall: MetricSummary
    qwk: MetricSummary
