"""Batch command-line interface.

Subcommands: extract, lda-train, evaluate, curve, serve. Machine-readable
output goes to stdout or the requested file; progress and warnings go to
stderr. Exit codes: 0 success, 1 runtime error, 2 usage error. The
READLAB_DATA_DIR environment variable supplies the default lexicon/model
root (expects lexicons/aoa.csv, lexicons/subtlex.csv, lda/{W,B,O}{K}.json).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import httpx

from . import __version__, registry
from .annotations import load_annotations, load_stopwords
from .features import ExtractionContext, extract_dataset
from .features.adsem import AdSemConfig
from .hybrid import HybridConfig, data_size_curve, ingest_soft_labels, run_hybrid
from .lexicons import load_aoa, load_subtlex
from .ml import stratified_folds
from .tables import (
    read_features_csv,
    write_curve_csv,
    write_features_csv,
    write_report_json,
)
from .topics import LdaModel, TrainingConfig, train_lda


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _data_dir() -> Path | None:
    root = os.environ.get("READLAB_DATA_DIR")
    return Path(root) if root else None


def _feature_set(value: str) -> str:
    if value not in registry.SET_DEFINITIONS:
        raise argparse.ArgumentTypeError(
            f"unknown feature set {value!r} (known: {', '.join(sorted(registry.SET_DEFINITIONS))})"
        )
    return value


def _sizes(value: str) -> list[int]:
    try:
        start, end, step = (int(p) for p in value.split(":"))
        out = list(range(start, end + 1, step))
        if not out or step <= 0:
            raise ValueError
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"sizes must be START:END:STEP with positive step, got {value!r}"
        ) from None


def _build_context(args) -> ExtractionContext:
    data_dir = _data_dir()
    lexicon_dir = Path(args.lexicons) if args.lexicons else (data_dir / "lexicons" if data_dir else None)
    model_dir = Path(args.lda_models) if args.lda_models else (data_dir / "lda" if data_dir else None)
    stopwords = load_stopwords(args.stopwords)

    context = ExtractionContext(stopwords=stopwords)
    if lexicon_dir is not None:
        aoa_path = lexicon_dir / "aoa.csv"
        subtlex_path = lexicon_dir / "subtlex.csv"
        if aoa_path.exists():
            context.aoa = load_aoa(aoa_path)
        else:
            _log(f"warning: {aoa_path} not found; age-of-acquisition features will be 0")
        if subtlex_path.exists():
            context.subtlex = load_subtlex(subtlex_path)
        else:
            _log(f"warning: {subtlex_path} not found; word-familiarity features will be 0")
    else:
        _log("warning: no lexicon directory configured; lexicon features will be 0")

    needs_models = bool(registry.set_subgroups(args.set) & {"WoKF", "WBKF", "OSKF"})
    if needs_models:
        if model_dir is None:
            raise RuntimeError(
                f"feature set {args.set!r} includes topic-model features; "
                "pass --lda-models or set READLAB_DATA_DIR"
            )
        context.adsem = AdSemConfig.from_dir(model_dir, threshold=args.threshold)
    return context


def _make_client(base_url: str) -> httpx.Client:
    # separated so tests can swap in an in-process transport
    return httpx.Client(base_url=base_url, timeout=300.0)


def cmd_extract(args) -> int:
    codes = registry.resolve_set(args.set)
    if args.server:
        payload = json.loads(Path(args.annotations).read_text(encoding="utf-8"))
        with _make_client(args.server) as client:
            response = client.post(
                "/extract",
                json={"annotations": payload, "feature_set": args.set, "threshold": args.threshold},
            )
            if response.status_code != 200:
                raise RuntimeError(f"service error {response.status_code}: {response.text}")
            body = response.json()
        from .features import FeatureVector

        vectors = [FeatureVector(doc_id=r["doc_id"], values=r["values"]) for r in body["features"]]
        labels = {r["doc_id"]: r["label"] for r in body["features"]}
    else:
        dataset = load_annotations(args.annotations)
        context = _build_context(args)
        vectors = extract_dataset(dataset, args.set, context, n_jobs=args.jobs)
        labels = {d.doc_id: d.label for d in dataset.documents}
    write_features_csv(args.out, vectors, labels, codes)
    _log(f"wrote {len(vectors)} rows x {2 + len(codes)} columns to {args.out}")
    return 0


def cmd_lda_train(args) -> int:
    corpus = []
    with open(args.corpus, "r", encoding="utf-8") as fh:
        for line in fh:
            corpus.append(line.split())
    config = TrainingConfig(
        tau0=args.tau0, kappa=args.kappa, batch_size=args.batch_size,
        passes=args.passes, alpha=args.alpha, eta=args.eta,
    )
    model = train_lda(corpus, args.topics, config, seed=args.seed)
    model.save(args.out)
    per_pass = ", ".join(f"{p:.2f}" for p in model.perplexity_log)
    _log(f"trained {args.topics}-topic model on {len(corpus)} documents; "
         f"perplexity per pass: {per_pass}")
    return 0


def _load_eval_inputs(args):
    table = read_features_csv(args.features)
    n_classes = table.n_classes()
    dataset = table.as_eval_dataset()
    config = HybridConfig(
        feature_set=args.set if args.set else table.codes,
        model=args.model,
        model_params=_model_params(args),
        n_folds=args.folds,
        seed=args.seed,
    )
    folds = stratified_folds(table.labels, k=args.folds, seed=args.seed)
    soft = None
    if args.soft_labels:
        soft = ingest_soft_labels(args.soft_labels, dataset, folds,
                                  broadcast=args.broadcast_soft_labels)
    return dataset, table, config, folds, soft, n_classes


def _model_params(args) -> dict:
    params: dict = {}
    if args.model == "logreg":
        params["c"] = args.c
        params["penalty"] = args.penalty
    else:
        params["n_trees"] = args.n_trees
        if args.max_depth is not None:
            params["max_depth"] = args.max_depth
        params["max_features"] = args.max_features
    return params


def cmd_evaluate(args) -> int:
    dataset, table, config, folds, soft, _ = _load_eval_inputs(args)
    report, _ = run_hybrid(dataset, table.vectors, config, soft=soft, folds=folds)
    write_report_json(args.report, report)
    mean = report.mean()
    _log("mean: " + "  ".join(f"{k}={v:.4f}" for k, v in mean.items()))
    return 0


def cmd_curve(args) -> int:
    dataset, table, config, _, soft, _ = _load_eval_inputs(args)
    rows = data_size_curve(dataset, table.vectors, config, soft,
                           sizes=args.sizes, nested=args.nested)
    write_curve_csv(args.out, rows)
    _log(f"wrote {len(rows)} curve rows to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    app = create_app(data_dir=_data_dir())
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="readlab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"readlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract features from an annotation file")
    p.add_argument("--annotations", required=True)
    p.add_argument("--set", type=_feature_set, default="T1")
    p.add_argument("--out", required=True)
    p.add_argument("--lexicons", help="directory with aoa.csv and subtlex.csv")
    p.add_argument("--lda-models", help="directory with {W,B,O}{50,100,150,200}.json")
    p.add_argument("--stopwords", help="stopword file, one word per line")
    p.add_argument("--threshold", type=float, default=0.01,
                   help="inclusion threshold for the sorted topic list")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--server", help="delegate extraction to a running service at this URL")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("lda-train", help="train a topic model on a token-per-line corpus")
    p.add_argument("--corpus", required=True, help="one whitespace-tokenized document per line")
    p.add_argument("--topics", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tau0", type=float, default=1.0)
    p.add_argument("--kappa", type=float, default=0.5)
    p.add_argument("--batch-size", type=int, default=256)
    p.add_argument("--passes", type=int, default=5)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lda_train)

    common_eval = argparse.ArgumentParser(add_help=False)
    common_eval.add_argument("--features", required=True, help="feature CSV from extract")
    common_eval.add_argument("--soft-labels", help="CSV doc_id,fold,split,p_0..p_{K-1}")
    common_eval.add_argument("--broadcast-soft-labels", action="store_true",
                             help="reuse each soft-label row for every fold")
    common_eval.add_argument("--model", choices=["logreg", "rf"], default="logreg")
    common_eval.add_argument("--set", type=_feature_set, default=None,
                             help="restrict to a named feature set (default: all CSV columns)")
    common_eval.add_argument("--folds", type=int, default=5)
    common_eval.add_argument("--seed", type=int, default=0)
    common_eval.add_argument("--c", type=float, default=1.0)
    common_eval.add_argument("--penalty", choices=["l1", "l2"], default="l1")
    common_eval.add_argument("--n-trees", type=int, default=800)
    common_eval.add_argument("--max-depth", type=int, default=None)
    common_eval.add_argument("--max-features", default="sqrt")

    p = sub.add_parser("evaluate", parents=[common_eval],
                       help="cross-validated evaluation of features (+ optional soft labels)")
    p.add_argument("--report", required=True, help="output JSON path")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("curve", parents=[common_eval],
                       help="accuracy as a function of training-set size")
    p.add_argument("--sizes", type=_sizes, default=list(range(50, 751, 50)),
                   metavar="START:END:STEP")
    p.add_argument("--nested", action="store_true",
                   help="smaller samples are prefixes of larger ones")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "lda-train" and args.topics < 2:
        parser.error("--topics must be at least 2")
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - single surface for runtime errors
        _log(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
