"""FastAPI service wrapping the feature-extraction and evaluation core.

The expensive shared state (two lexicons, up to twelve topic models) loads
once per process from a data directory and serves every request; batch
clients use the CLI against the same core instead.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, registry
from ..annotations import AnnotationError, dataset_from_mapping, load_stopwords
from ..features import ExtractionContext, extract_dataset
from ..features.adsem import AdSemConfig, AdSemConfigError, measures_from_list
from ..hybrid import HybridConfig, PipelineError, SoftLabelError, run_hybrid
from ..lexicons import load_aoa, load_subtlex
from ..ml.folds import FoldError, stratified_folds
from ..registry import RegistryError
from ..tables import FeatureTable
from ..topics import sorted_topic_list
from . import schemas


class ServiceState:
    def __init__(self, data_dir: Path | None):
        self.context = ExtractionContext()
        self.lexicons_loaded = False
        self.topic_models_loaded = False
        if data_dir is None:
            return
        lexicon_dir = data_dir / "lexicons"
        aoa = lexicon_dir / "aoa.csv"
        subtlex = lexicon_dir / "subtlex.csv"
        if aoa.exists() and subtlex.exists():
            self.context.aoa = load_aoa(aoa)
            self.context.subtlex = load_subtlex(subtlex)
            self.lexicons_loaded = True
        model_dir = data_dir / "lda"
        if model_dir.is_dir():
            try:
                self.context.adsem = AdSemConfig.from_dir(model_dir)
                self.topic_models_loaded = True
            except AdSemConfigError:
                pass  # partial model sets stay unloaded; extraction will say so

    def context_for(self, threshold: float, stopwords_path: str | None = None) -> ExtractionContext:
        context = ExtractionContext(
            aoa=self.context.aoa,
            subtlex=self.context.subtlex,
            adsem=self.context.adsem,
            stopwords=self.context.stopwords if stopwords_path is None else load_stopwords(stopwords_path),
        )
        if context.adsem is not None and threshold != context.adsem.threshold:
            context.adsem = AdSemConfig(models=context.adsem.models, threshold=threshold)
        return context


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="readlab", version=__version__)
    state = ServiceState(Path(data_dir) if data_dir else None)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(
            status="ok",
            version=__version__,
            lexicons_loaded=state.lexicons_loaded,
            topic_models_loaded=state.topic_models_loaded,
        )

    @app.get("/registry", response_model=schemas.RegistryResponse)
    def get_registry():
        return schemas.RegistryResponse(
            features=[schemas.DescriptorModel(**d.__dict__) for d in registry.registry()]
        )

    @app.get("/registry/sets/{name}", response_model=schemas.FeatureSetResponse)
    def get_feature_set(name: str):
        try:
            codes = registry.resolve_set(name)
        except RegistryError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return schemas.FeatureSetResponse(name=name, codes=codes)

    @app.post("/measures/topic-list", response_model=schemas.TopicMeasuresResponse)
    def topic_measures(request: schemas.TopicMeasuresRequest):
        lst = sorted_topic_list(request.probs, request.threshold)
        values = measures_from_list(lst)
        return schemas.TopicMeasuresResponse(
            sorted_probs=list(lst.probs),
            count=lst.count,
            richness=values["Rich"],
            clarity=values["Clar"],
            noise=values["Nois"],
        )

    @app.post("/extract", response_model=schemas.ExtractResponse)
    def extract(request: schemas.ExtractRequest):
        try:
            codes = registry.resolve_set(request.feature_set)
        except RegistryError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        try:
            dataset = dataset_from_mapping(request.annotations)
        except AnnotationError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        context = state.context_for(request.threshold)
        try:
            vectors = extract_dataset(dataset, request.feature_set, context)
        except (AdSemConfigError, ValueError) as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        labels = {d.doc_id: d.label for d in dataset.documents}
        return schemas.ExtractResponse(
            feature_set=request.feature_set,
            codes=codes,
            features=[
                schemas.DocumentFeatures(doc_id=v.doc_id, label=labels[v.doc_id], values=v.values)
                for v in vectors
            ],
        )

    @app.post("/evaluate", response_model=schemas.EvaluateResponse)
    def evaluate(request: schemas.EvaluateRequest):
        from ..features import FeatureVector

        if not request.rows:
            raise HTTPException(status_code=422, detail="no feature rows")
        codes = sorted({c for row in request.rows for c in row.values})
        ordered = [d.code for d in registry.registry() if d.code in set(codes)]
        table = FeatureTable(
            doc_ids=[r.doc_id for r in request.rows],
            labels=[r.label for r in request.rows],
            codes=ordered,
            vectors=[FeatureVector(doc_id=r.doc_id, values=r.values) for r in request.rows],
        )
        dataset = table.as_eval_dataset()
        config = HybridConfig(
            feature_set=request.feature_set if request.feature_set else ordered,
            model=request.model,
            model_params=request.model_params,
            n_folds=request.folds,
            seed=request.seed,
        )
        try:
            folds = stratified_folds(table.labels, k=request.folds, seed=request.seed)
            soft = None
            if request.soft_labels:
                soft = {}
                for row in request.soft_labels:
                    probs = np.asarray(row.probs, dtype=np.float64)
                    if abs(float(probs.sum()) - 1.0) > 1e-3 or (probs < 0).any():
                        raise SoftLabelError(
                            f"probabilities for doc {row.doc_id!r} fold {row.fold} do not sum to 1"
                        )
                    targets = range(len(folds)) if (request.broadcast_soft_labels or row.fold == -1) \
                        else [row.fold]
                    for f in targets:
                        soft.setdefault(f, {})[row.doc_id] = probs
            report, _ = run_hybrid(dataset, table.vectors, config, soft=soft, folds=folds)
        except (FoldError, SoftLabelError, PipelineError, RegistryError, ValueError) as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return schemas.EvaluateResponse(**report.to_mapping())

    return app
