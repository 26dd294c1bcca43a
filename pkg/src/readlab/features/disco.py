"""Discourse features: entity density, grid transition ratios, local coherence.

The entity grid is the classic sentence-by-entity matrix of grammatical roles
(S subject, O object, X other, N absent). Transition ratios count role pairs
in adjacent sentences; local coherence scores project the bipartite
sentence-entity graph onto sentences three ways (unweighted, shared-entity
weighted, role-weighted) and average outgoing edge weight per sentence.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..annotations import AnnotatedDocument

ROLES = ("S", "O", "X", "N")
# Within a sentence the most prominent role wins: S > O > X.
_ROLE_RANK = {"S": 3, "O": 2, "X": 1}
# Role weights for the accumulated (PA) projection.
_PA_WEIGHT = {"S": 3.0, "O": 2.0, "X": 1.0}


@dataclass
class EntityGrid:
    entity_ids: list[str]  # column order: first mention order
    n_sentences: int
    cells: dict[tuple[int, str], str]  # (sentence, entity) -> S/O/X; absent = N

    def role(self, sentence: int, entity_id: str) -> str:
        return self.cells.get((sentence, entity_id), "N")


def extract_endf(doc: AnnotatedDocument) -> dict[str, float]:
    """Entity-density features: mention and unique-entity counts with
    per-sentence and per-token variants."""
    n_mentions = len(doc.mentions)
    n_unique = len({m.entity_id for m in doc.mentions})
    n_sent = doc.sentence_count
    n_tok = doc.token_count
    return {
        "to_EntiM_C": float(n_mentions),
        "as_EntiM_C": n_mentions / n_sent if n_sent else 0.0,
        "at_EntiM_C": n_mentions / n_tok if n_tok else 0.0,
        "to_UEnti_C": float(n_unique),
        "as_UEnti_C": n_unique / n_sent if n_sent else 0.0,
        "at_UEnti_C": n_unique / n_tok if n_tok else 0.0,
    }


def build_grid(doc: AnnotatedDocument) -> EntityGrid:
    entity_ids: list[str] = []
    cells: dict[tuple[int, str], str] = {}
    for mention in doc.mentions:
        if mention.entity_id not in entity_ids:
            entity_ids.append(mention.entity_id)
        key = (mention.sentence_index, mention.entity_id)
        current = cells.get(key)
        if current is None or _ROLE_RANK[mention.role] > _ROLE_RANK[current]:
            cells[key] = mention.role
    return EntityGrid(entity_ids=entity_ids, n_sentences=doc.sentence_count, cells=cells)


def transition_ratios(grid: EntityGrid) -> dict[str, float]:
    """The 16 adjacent-sentence role-transition ratios; they sum to 1 when any
    transition exists, and are all 0 for single-sentence or entity-free docs."""
    counts = {(a, b): 0 for a in ROLES for b in ROLES}
    total = len(grid.entity_ids) * max(grid.n_sentences - 1, 0)
    if total > 0:
        for entity in grid.entity_ids:
            for s in range(grid.n_sentences - 1):
                counts[(grid.role(s, entity), grid.role(s + 1, entity))] += 1
    return {
        f"ra_{a}{b}ToT_C": (counts[(a, b)] / total if total else 0.0)
        for a in ROLES
        for b in ROLES
    }


def _sentence_entities(grid: EntityGrid) -> list[dict[str, str]]:
    per_sentence: list[dict[str, str]] = [{} for _ in range(grid.n_sentences)]
    for (sentence, entity), role in grid.cells.items():
        per_sentence[sentence][entity] = role
    return per_sentence


def local_coherence(grid: EntityGrid) -> dict[str, float]:
    """Six graph-projection coherence scores.

    For every sentence pair (i, j), i < j, sharing at least one entity:
    PU counts the pair once, PW counts shared entities, PA sums the product
    of role weights per shared entity. Each score is total edge weight over
    sentence count; the D variants divide each edge by the pair distance.
    """
    n_sent = grid.n_sentences
    out = {code: 0.0 for code in
           ("LoCohPA_S", "LoCohPW_S", "LoCohPU_S", "LoCoDPA_S", "LoCoDPW_S", "LoCoDPU_S")}
    if n_sent == 0:
        return out
    per_sentence = _sentence_entities(grid)
    pa = pw = pu = dpa = dpw = dpu = 0.0
    for i in range(n_sent):
        for j in range(i + 1, n_sent):
            shared = per_sentence[i].keys() & per_sentence[j].keys()
            if not shared:
                continue
            w_pa = sum(_PA_WEIGHT[per_sentence[i][e]] * _PA_WEIGHT[per_sentence[j][e]]
                       for e in shared)
            w_pw = float(len(shared))
            distance = j - i
            pa += w_pa
            pw += w_pw
            pu += 1.0
            dpa += w_pa / distance
            dpw += w_pw / distance
            dpu += 1.0 / distance
    out["LoCohPA_S"] = pa / n_sent
    out["LoCohPW_S"] = pw / n_sent
    out["LoCohPU_S"] = pu / n_sent
    out["LoCoDPA_S"] = dpa / n_sent
    out["LoCoDPW_S"] = dpw / n_sent
    out["LoCoDPU_S"] = dpu / n_sent
    return out


def extract_engf(doc: AnnotatedDocument) -> dict[str, float]:
    grid = build_grid(doc)
    out = transition_ratios(grid)
    out.update(local_coherence(grid))
    return out


def extract_disco(doc: AnnotatedDocument) -> dict[str, float]:
    out = extract_endf(doc)
    out.update(extract_engf(doc))
    return out
