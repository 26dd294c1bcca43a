"""Latent Dirichlet allocation trained with online variational Bayes.

Mean-field variational inference in the Hoffman et al. online formulation:
minibatch E steps fit per-document topic weights gamma, the M step blends the
topic-word variational parameter lambda with step size rho_t = (tau0 + t)^-kappa.
Per-pass perplexity on the training corpus is logged so callers can watch
convergence. Everything is seeded and deterministic.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import gammaln, psi

MODEL_FORMAT_VERSION = 1

_MEAN_CHANGE_THRESH = 1e-3
_MAX_E_ITER = 100


class TopicModelError(ValueError):
    pass


@dataclass
class Vocabulary:
    term_to_id: dict[str, int]
    doc_freq: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.term_to_id)

    @classmethod
    def from_corpus(cls, corpus: list[list[str]]) -> "Vocabulary":
        term_to_id: dict[str, int] = {}
        doc_freq: dict[str, int] = {}
        for doc in corpus:
            for term in set(doc):
                doc_freq[term] = doc_freq.get(term, 0) + 1
        for term in sorted(doc_freq):
            term_to_id[term] = len(term_to_id)
        return cls(term_to_id=term_to_id, doc_freq=doc_freq)


@dataclass
class TrainingConfig:
    tau0: float = 1.0
    kappa: float = 0.5
    batch_size: int = 256
    passes: int = 5
    alpha: float | None = None  # default 1/K
    eta: float | None = None  # default 1/K


@dataclass
class LdaModel:
    n_topics: int
    alpha: float
    eta: float
    vocabulary: Vocabulary
    lam: np.ndarray  # K x V variational parameter of the topic-word Dirichlets
    config: TrainingConfig
    seed: int
    perplexity_log: list[float] = field(default_factory=list)

    @property
    def topic_word(self) -> np.ndarray:
        """Row-normalized topic-word distributions (rows sum to 1)."""
        return self.lam / self.lam.sum(axis=1, keepdims=True)

    def save(self, path: str | Path) -> None:
        payload = {
            "format_version": MODEL_FORMAT_VERSION,
            "n_topics": self.n_topics,
            "alpha": self.alpha,
            "eta": self.eta,
            "terms": [t for t, _ in sorted(self.vocabulary.term_to_id.items(), key=lambda kv: kv[1])],
            "doc_freq": self.vocabulary.doc_freq,
            "lambda": self.lam.tolist(),
            "config": {
                "tau0": self.config.tau0,
                "kappa": self.config.kappa,
                "batch_size": self.config.batch_size,
                "passes": self.config.passes,
            },
            "seed": self.seed,
            "perplexity_log": self.perplexity_log,
        }
        Path(path).write_text(json.dumps(payload), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "LdaModel":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        version = payload.get("format_version")
        if version != MODEL_FORMAT_VERSION:
            raise TopicModelError(f"{path}: unsupported model format version {version!r}")
        terms = payload["terms"]
        vocab = Vocabulary(
            term_to_id={t: i for i, t in enumerate(terms)},
            doc_freq={t: int(c) for t, c in payload.get("doc_freq", {}).items()},
        )
        config = TrainingConfig(**payload["config"])
        return cls(
            n_topics=int(payload["n_topics"]),
            alpha=float(payload["alpha"]),
            eta=float(payload["eta"]),
            vocabulary=vocab,
            lam=np.asarray(payload["lambda"], dtype=np.float64),
            config=config,
            seed=int(payload["seed"]),
            perplexity_log=[float(x) for x in payload.get("perplexity_log", [])],
        )


def _dirichlet_expectation(alpha: np.ndarray) -> np.ndarray:
    """E[log theta] for theta ~ Dir(alpha), row-wise for matrices."""
    if alpha.ndim == 1:
        return psi(alpha) - psi(alpha.sum())
    return psi(alpha) - psi(alpha.sum(axis=1))[:, np.newaxis]


def _docs_to_counts(corpus: list[list[str]], vocab: Vocabulary):
    """Each document as (unique word ids, counts); out-of-vocabulary dropped."""
    ids_list, cts_list = [], []
    for doc in corpus:
        counts: dict[int, int] = {}
        for term in doc:
            wid = vocab.term_to_id.get(term)
            if wid is not None:
                counts[wid] = counts.get(wid, 0) + 1
        ids = np.fromiter(sorted(counts), dtype=np.int64, count=len(counts))
        cts = np.array([counts[w] for w in ids], dtype=np.float64)
        ids_list.append(ids)
        cts_list.append(cts)
    return ids_list, cts_list


def _e_step_doc(ids, cts, exp_elog_beta, alpha, gamma0=None):
    """Fit gamma for one document against fixed topics; returns (gamma, phi norm)."""
    n_topics = exp_elog_beta.shape[0]
    if len(ids) == 0:
        return np.full(n_topics, alpha), None
    gamma = gamma0 if gamma0 is not None else np.full(n_topics, alpha + cts.sum() / n_topics)
    exp_elog_theta = np.exp(_dirichlet_expectation(gamma))
    beta_d = exp_elog_beta[:, ids]
    phinorm = exp_elog_theta @ beta_d + 1e-100
    for _ in range(_MAX_E_ITER):
        last_gamma = gamma
        gamma = alpha + exp_elog_theta * (beta_d @ (cts / phinorm))
        exp_elog_theta = np.exp(_dirichlet_expectation(gamma))
        phinorm = exp_elog_theta @ beta_d + 1e-100
        if np.mean(np.abs(gamma - last_gamma)) < _MEAN_CHANGE_THRESH:
            break
    return gamma, phinorm


def _corpus_bound(ids_list, cts_list, lam, alpha, eta):
    """Variational lower bound on log p(corpus); used for the perplexity log."""
    n_topics, n_terms = lam.shape
    elog_beta = _dirichlet_expectation(lam)
    exp_elog_beta = np.exp(elog_beta)
    score = 0.0
    for ids, cts in zip(ids_list, cts_list):
        gamma, _ = _e_step_doc(ids, cts, exp_elog_beta, alpha)
        elog_theta = _dirichlet_expectation(gamma)
        if len(ids):
            # E[log p(words)] via log-sum-exp over topics per word
            log_phi = elog_theta[:, np.newaxis] + elog_beta[:, ids]
            mx = log_phi.max(axis=0)
            score += float((cts * (mx + np.log(np.exp(log_phi - mx).sum(axis=0)))).sum())
        score += float(((alpha - gamma) * elog_theta).sum())
        score += float((gammaln(gamma) - gammaln(alpha)).sum())
        score += float(gammaln(alpha * n_topics) - gammaln(gamma.sum()))
    score += float(((eta - lam) * elog_beta).sum())
    score += float((gammaln(lam) - gammaln(eta)).sum())
    score += float((gammaln(eta * n_terms) - gammaln(lam.sum(axis=1))).sum())
    return score


def train_lda(
    corpus: list[list[str]],
    n_topics: int,
    config: TrainingConfig | None = None,
    seed: int = 0,
) -> LdaModel:
    """Train an LDA model on preprocessed token lists.

    The corpus is swept ``config.passes`` times in minibatches; each pass logs
    perplexity (exp of negative bound per token) on the full training corpus.
    """
    if n_topics < 2:
        raise TopicModelError(f"n_topics must be >= 2, got {n_topics}")
    config = config or TrainingConfig()
    vocab = Vocabulary.from_corpus(corpus)
    if vocab.size == 0:
        raise TopicModelError("empty vocabulary: every token was filtered out of the corpus")

    alpha = config.alpha if config.alpha is not None else 1.0 / n_topics
    eta = config.eta if config.eta is not None else 1.0 / n_topics
    n_docs = len(corpus)
    rng = np.random.default_rng(seed)

    lam = rng.gamma(100.0, 1.0 / 100.0, (n_topics, vocab.size))
    ids_list, cts_list = _docs_to_counts(corpus, vocab)
    total_tokens = sum(float(c.sum()) for c in cts_list)

    update_count = 0
    perplexity_log: list[float] = []
    batch = max(1, config.batch_size)
    for _ in range(config.passes):
        order = rng.permutation(n_docs)
        for start in range(0, n_docs, batch):
            chunk = order[start:start + batch]
            exp_elog_beta = np.exp(_dirichlet_expectation(lam))
            sstats = np.zeros_like(lam)
            for d in chunk:
                ids, cts = ids_list[d], cts_list[d]
                if len(ids) == 0:
                    continue
                gamma, phinorm = _e_step_doc(ids, cts, exp_elog_beta, alpha)
                exp_elog_theta = np.exp(_dirichlet_expectation(gamma))
                sstats[:, ids] += np.outer(exp_elog_theta, cts / phinorm)
            sstats *= exp_elog_beta
            rho = (config.tau0 + update_count) ** (-config.kappa)
            lam = (1 - rho) * lam + rho * (eta + (n_docs / len(chunk)) * sstats)
            update_count += 1
        if total_tokens > 0:
            bound = _corpus_bound(ids_list, cts_list, lam, alpha, eta)
            perplexity_log.append(float(np.exp(-bound / total_tokens)))

    return LdaModel(
        n_topics=n_topics,
        alpha=alpha,
        eta=eta,
        vocabulary=vocab,
        lam=lam,
        config=config,
        seed=seed,
        perplexity_log=perplexity_log,
    )


def infer_topics(model: LdaModel, tokens: list[str]) -> np.ndarray:
    """Posterior topic distribution theta for a token list; sums to 1.

    Out-of-vocabulary tokens are ignored. With no usable evidence the
    symmetric prior yields the uniform distribution.
    """
    counts: dict[int, int] = {}
    for term in tokens:
        wid = model.vocabulary.term_to_id.get(term)
        if wid is not None:
            counts[wid] = counts.get(wid, 0) + 1
    if not counts:
        return np.full(model.n_topics, 1.0 / model.n_topics)
    ids = np.fromiter(sorted(counts), dtype=np.int64, count=len(counts))
    cts = np.array([counts[w] for w in ids], dtype=np.float64)
    exp_elog_beta = np.exp(_dirichlet_expectation(model.lam))
    gamma, _ = _e_step_doc(ids, cts, exp_elog_beta, model.alpha)
    return gamma / gamma.sum()


@dataclass(frozen=True)
class SortedTopicList:
    """Descending topic probabilities above an inclusion threshold.

    Topic identities are deliberately discarded; only the shape of the
    distribution matters downstream.
    """

    probs: tuple[float, ...]

    @property
    def count(self) -> int:
        return len(self.probs)


def sorted_topic_list(theta, threshold: float = 0.01) -> SortedTopicList:
    """Entries of theta strictly above ``threshold``, sorted descending."""
    kept = sorted((float(p) for p in theta if p > threshold), reverse=True)
    return SortedTopicList(probs=tuple(kept))


def has_vocabulary_overlap(model: LdaModel, tokens: list[str]) -> bool:
    return any(t in model.vocabulary.term_to_id for t in tokens)
