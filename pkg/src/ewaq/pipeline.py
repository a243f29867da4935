"""Passage re-ranking by entailment degree and answer-sentence extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from ewaq.entailment import EntailmentScore, Thresholds, entailment_score
from ewaq.lexicon import Lexicon
from ewaq.retrieval import Passage
from ewaq.textproc import DEFAULT_CONFIG, ProcessedText, TextConfig, preprocess, split_sentences

DEFAULT_TOP_K = 5


class EmptyQuestionError(ValueError):
    def __init__(self) -> None:
        super().__init__("empty question")


@dataclass(frozen=True)
class RankedPassage:
    passage: Passage
    score: EntailmentScore
    new_rank: int

    def to_dict(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "id": self.passage.id,
            "source_rank": self.passage.source_rank,
            "new_rank": self.new_rank,
            "status": self.score.status.value,
        }
        if self.score.succeeded:
            record["degree"] = self.score.degree
        return record


@dataclass(frozen=True)
class Answer:
    sentence: str
    passage_id: str
    passage_new_rank: int
    degree: float

    def to_dict(self) -> dict[str, Any]:
        return {"sentence": self.sentence, "passage_id": self.passage_id, "degree": self.degree}


def _rank_key(item: tuple[Passage, EntailmentScore]) -> tuple:
    passage, score = item
    if score.succeeded:
        return (0, -score.cos_hut, passage.source_rank)
    return (1, 0.0, passage.source_rank)


def order_scored(scored: Sequence[tuple[Passage, EntailmentScore]]) -> list[RankedPassage]:
    """Successes by degree descending, then failures; ties by source rank."""
    ordered = sorted(scored, key=_rank_key)
    return [RankedPassage(p, s, i) for i, (p, s) in enumerate(ordered, start=1)]


def rerank(
    question: ProcessedText,
    passages: Sequence[Passage],
    lex: Lexicon,
    th: Thresholds = Thresholds(),
    config: TextConfig = DEFAULT_CONFIG,
) -> list[RankedPassage]:
    if question.length == 0:
        raise EmptyQuestionError()
    scored = [(p, entailment_score(question, preprocess(p.text, lex, config), lex, th)) for p in passages]
    return order_scored(scored)


def best_sentence(
    question: ProcessedText,
    ranked: RankedPassage,
    lex: Lexicon,
    th: Thresholds = Thresholds(),
    config: TextConfig = DEFAULT_CONFIG,
) -> Answer | None:
    """Highest-degree entailing sentence of one passage; earliest wins ties."""
    best: Answer | None = None
    for sentence in split_sentences(ranked.passage.text, config):
        score = entailment_score(question, preprocess(sentence, lex, config), lex, th)
        if score.succeeded and (best is None or score.cos_hut > best.degree):
            best = Answer(sentence, ranked.passage.id, ranked.new_rank, score.cos_hut)
    return best


def extract_answer(
    question: ProcessedText,
    ranked: Sequence[RankedPassage],
    lex: Lexicon,
    th: Thresholds = Thresholds(),
    k: int = DEFAULT_TOP_K,
    config: TextConfig = DEFAULT_CONFIG,
) -> Answer | None:
    """Best entailing sentence across the first ``k`` re-ranked passages.

    Ties go to the better-ranked passage, then the earlier sentence. Returns
    None when no sentence passes the entailment conditions.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    best: Answer | None = None
    for rp in sorted(ranked[:k], key=lambda r: r.new_rank):
        candidate = best_sentence(question, rp, lex, th, config)
        if candidate is not None and (best is None or candidate.degree > best.degree):
            best = candidate
    return best
