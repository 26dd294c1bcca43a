"""Topic-distribution measures and the advanced-semantic feature subgroups.

Given a document's sorted topic-probability list (descending, thresholded,
topic ids discarded), three statistics describe its shape:

* richness  = sum_i p_i * i           (1-based index rewards longer lists)
* clarity   = mean_i (max(p) - p_i)   (skew toward the dominant topic)
* noise     = n * sum (p - mean)^4 / (sum (p - mean)^2)^2   (kurtosis form)

The full subgroup extracts richness/clarity/noise/topic-count for each of
twelve models: three training-corpus families (W, B, O) by four topic sizes
(50, 100, 150, 200).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..annotations import AnnotatedDocument, preprocess_for_lda
from ..topics import LdaModel, SortedTopicList, infer_topics, sorted_topic_list

_VARIANCE_FLOOR = 1e-12

MODEL_FAMILIES = ("W", "B", "O")
TOPIC_SIZES = (50, 100, 150, 200)
_SIZE_SUFFIX = {50: "05", 100: "10", 150: "15", 200: "20"}

FAMILY_SUBGROUP = {"W": "WoKF", "B": "WBKF", "O": "OSKF"}


class AdSemConfigError(ValueError):
    pass


def richness(topic_list: SortedTopicList) -> float:
    """Sum of probability times 1-based rank; 0 for an empty list."""
    return sum(p * i for i, p in enumerate(topic_list.probs, start=1))


def clarity(topic_list: SortedTopicList) -> float:
    """Mean deviation from the largest probability; 0 for empty lists."""
    probs = topic_list.probs
    if not probs:
        return 0.0
    top = probs[0]
    return sum(top - p for p in probs) / len(probs)


def noise(topic_list: SortedTopicList) -> float:
    """Kurtosis-style tailedness of the list; 0 when degenerate (n < 2 or
    the squared-deviation term vanishes). Invariant under positive scaling."""
    probs = topic_list.probs
    n = len(probs)
    if n < 2:
        return 0.0
    mean = sum(probs) / n
    m2 = sum((p - mean) ** 2 for p in probs)
    if m2 < _VARIANCE_FLOOR:
        return 0.0
    m4 = sum((p - mean) ** 4 for p in probs)
    return n * m4 / (m2 * m2)


@dataclass
class AdSemConfig:
    """Twelve trained models plus the list-inclusion threshold.

    ``models`` maps (family, topic_size) to a loaded model. ``from_dir``
    resolves files named like W50.json, B100.json, O200.json.
    """

    models: dict[tuple[str, int], LdaModel] = field(default_factory=dict)
    threshold: float = 0.01

    @classmethod
    def from_dir(cls, directory: str | Path, threshold: float = 0.01) -> "AdSemConfig":
        directory = Path(directory)
        models = {}
        for family in MODEL_FAMILIES:
            for size in TOPIC_SIZES:
                path = directory / f"{family}{size}.json"
                if not path.exists():
                    raise AdSemConfigError(
                        f"missing topic model for the {FAMILY_SUBGROUP[family]} "
                        f"{size}-topic features: {path}"
                    )
                models[(family, size)] = LdaModel.load(path)
        return cls(models=models, threshold=threshold)

    def require(self, family: str, size: int) -> LdaModel:
        model = self.models.get((family, size))
        if model is None:
            raise AdSemConfigError(
                f"no model configured for the {FAMILY_SUBGROUP[family]} {size}-topic features"
            )
        return model


def measures_from_list(topic_list: SortedTopicList) -> dict[str, float]:
    return {
        "Rich": richness(topic_list),
        "Clar": clarity(topic_list),
        "Nois": noise(topic_list),
        "Topc": float(topic_list.count),
    }


def extract_adsem(
    doc: AnnotatedDocument,
    config: AdSemConfig,
    stopwords: frozenset[str],
    families: tuple[str, ...] = MODEL_FAMILIES,
) -> dict[str, float]:
    """The 48 advanced-semantic features (or fewer if ``families`` is cut down).

    A document with no in-vocabulary evidence for a model gets zeros for that
    model's four features: with nothing observed the posterior is just the
    prior, and a prior-only list says nothing about the text.
    """
    tokens = preprocess_for_lda(doc, stopwords)
    out: dict[str, float] = {}
    for family in families:
        for size in TOPIC_SIZES:
            model = config.require(family, size)
            suffix = _SIZE_SUFFIX[size]
            if tokens and any(t in model.vocabulary.term_to_id for t in tokens):
                theta = infer_topics(model, tokens)
                values = measures_from_list(sorted_topic_list(theta, config.threshold))
            else:
                values = {"Rich": 0.0, "Clar": 0.0, "Nois": 0.0, "Topc": 0.0}
            for measure, value in values.items():
                out[f"{family}{measure}{suffix}_S"] = value
    return out
