"""Per-document feature extraction, dispatched by subgroup."""

from __future__ import annotations

from dataclasses import dataclass, field

from joblib import Parallel, delayed

from .. import registry
from ..annotations import AnnotatedDocument, Dataset, load_stopwords
from ..lexicons import AoaLexicon, SubtlexLexicon
from .adsem import AdSemConfig, extract_adsem
from .disco import extract_endf, extract_engf
from .lxsem import extract_psyf, extract_ttrf, extract_varf, extract_worf
from .shatr import extract_shaf, extract_traf
from .synta import extract_phrf, extract_posf, extract_trsf

_ADSEM_SUBGROUPS = {"WoKF": "W", "WBKF": "B", "OSKF": "O"}


class ExtractionError(ValueError):
    pass


@dataclass
class FeatureVector:
    doc_id: str
    values: dict[str, float] = field(default_factory=dict)


@dataclass
class ExtractionContext:
    """Everything extraction needs beyond the document itself."""

    aoa: AoaLexicon = field(default_factory=AoaLexicon)
    subtlex: SubtlexLexicon = field(default_factory=SubtlexLexicon)
    adsem: AdSemConfig | None = None
    stopwords: frozenset[str] = field(default_factory=load_stopwords)


def extract_features(
    doc: AnnotatedDocument,
    set_name: str = "T1",
    context: ExtractionContext | None = None,
) -> FeatureVector:
    """Extract the features of a named set for one document.

    Only the subgroups the set touches are computed. Topic-model subgroups
    require ``context.adsem``.
    """
    context = context or ExtractionContext()
    subgroups = registry.set_subgroups(set_name)
    values: dict[str, float] = {}

    adsem_families = tuple(
        code for sub, code in _ADSEM_SUBGROUPS.items() if sub in subgroups
    )
    if adsem_families:
        if context.adsem is None:
            raise ExtractionError(
                f"feature set {set_name!r} needs topic models for subgroups "
                f"{sorted(s for s in subgroups if s in _ADSEM_SUBGROUPS)}; none configured"
            )
        values.update(extract_adsem(doc, context.adsem, context.stopwords, adsem_families))

    if "EnDF" in subgroups:
        values.update(extract_endf(doc))
    if "EnGF" in subgroups:
        values.update(extract_engf(doc))
    if "PhrF" in subgroups:
        values.update(extract_phrf(doc))
    if "TrSF" in subgroups:
        values.update(extract_trsf(doc))
    if "POSF" in subgroups:
        values.update(extract_posf(doc))
    if "VarF" in subgroups:
        values.update(extract_varf(doc))
    if "TTRF" in subgroups:
        values.update(extract_ttrf(doc))
    if "PsyF" in subgroups:
        values.update(extract_psyf(doc, context.aoa))
    if "WorF" in subgroups:
        values.update(extract_worf(doc, context.subtlex))
    if "ShaF" in subgroups:
        values.update(extract_shaf(doc))
    if "TraF" in subgroups:
        values.update(extract_traf(doc))

    wanted = registry.resolve_set(set_name)
    return FeatureVector(doc_id=doc.doc_id, values={code: values[code] for code in wanted})


def extract_dataset(
    dataset: Dataset,
    set_name: str = "T1",
    context: ExtractionContext | None = None,
    n_jobs: int = 1,
) -> list[FeatureVector]:
    """Extract features for every document; output order follows the dataset
    regardless of worker count."""
    context = context or ExtractionContext()
    if n_jobs == 1:
        return [extract_features(d, set_name, context) for d in dataset.documents]
    return Parallel(n_jobs=n_jobs, backend="threading")(
        delayed(extract_features)(d, set_name, context) for d in dataset.documents
    )
