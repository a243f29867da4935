"""Scoring system answers against gold answers."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from ewaq.entailment import Thresholds
from ewaq.lexicon import Lexicon
from ewaq.pipeline import DEFAULT_TOP_K, best_sentence, extract_answer, rerank
from ewaq.retrieval import CorpusError, PassageSource
from ewaq.textproc import DEFAULT_CONFIG, TextConfig, detect_why, preprocess

log = logging.getLogger(__name__)

DEFAULT_EVAL_K = 3
DEFAULT_LIMIT = 7


@dataclass(frozen=True)
class TestRecord:
    __test__ = False  # keep pytest from collecting this

    question_id: str
    question: str
    gold_answer: str

    def __post_init__(self) -> None:
        for name in ("question_id", "question", "gold_answer"):
            if not getattr(self, name):
                raise ValueError(f"test record field {name!r} is empty")


@dataclass(frozen=True)
class EvalReport:
    total: int
    answered: int
    correct: int
    accuracy_at_k: float
    precision: float
    recall: float
    f_measure: float
    k: int

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_table(self, system: str = "EWAQ") -> str:
        rows = [
            ("The system", "The accuracy", "Precision", "Recall", "F-measure"),
            (
                system,
                f"{100 * self.accuracy_at_k:.2f}",
                f"{self.precision:.4f}",
                f"{self.recall:.4f}",
                f"{self.f_measure:.4f}",
            ),
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        lines.append(f"(accuracy@{self.k}; answered {self.answered}/{self.total}, correct {self.correct})")
        return "\n".join(lines)


def load_testset(path: str | os.PathLike[str]) -> list[TestRecord]:
    path = Path(path)
    records = []
    try:
        text = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path}: not valid UTF-8") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            record = TestRecord(str(obj["question_id"]), obj["question"], obj["gold_answer"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CorpusError(f"{path}:{lineno}: bad test record ({exc})") from exc
        if not detect_why(record.question):
            log.warning("%s:%d: question %r is not a why-question", path, lineno, record.question_id)
        records.append(record)
    return records


def match_gold(candidate: str, gold: str, lex: Lexicon, config: TextConfig = DEFAULT_CONFIG) -> bool:
    """Term-set containment in either direction, with a non-empty smaller side."""
    cand = preprocess(candidate, lex, config).terms
    ref = preprocess(gold, lex, config).terms
    small, big = (cand, ref) if len(cand) <= len(ref) else (ref, cand)
    return bool(small) and small <= big


def metrics(correct: int, answered: int, total: int) -> tuple[float, float, float]:
    """Precision, recall and F-measure; 0 wherever a denominator vanishes."""
    if not 0 <= correct <= answered <= total:
        raise ValueError(f"need 0 <= correct <= answered <= total, got {correct}, {answered}, {total}")
    precision = correct / answered if answered else 0.0
    recall = correct / total if total else 0.0
    denom = precision + recall
    f_measure = 2 * precision * recall / denom if denom else 0.0
    return precision, recall, f_measure


def accuracy_at_k(found: Sequence[bool], k: int) -> float:
    """Fraction of questions whose gold answer was found within the first ``k`` results.

    ``k`` is recorded for validation only; ``found`` must already reflect it.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not found:
        log.warning("accuracy over an empty question list; reporting 0")
        return 0.0
    return sum(bool(f) for f in found) / len(found)


def found_within(hits: Iterable[bool], k: int) -> bool:
    return any(hit for _, hit in zip(range(k), hits))


def run_eval(
    testset: Sequence[TestRecord],
    run: PassageSource,
    lex: Lexicon,
    th: Thresholds = Thresholds(),
    k: int = DEFAULT_EVAL_K,
    limit: int = DEFAULT_LIMIT,
    top_k: int = DEFAULT_TOP_K,
    config: TextConfig = DEFAULT_CONFIG,
) -> EvalReport:
    """Re-rank each question's passages, extract answers and score them.

    A question counts towards accuracy@k when the best sentence of any of its
    first ``k`` re-ranked passages matches the gold answer.
    """
    found: list[bool] = []
    answered = correct = 0
    for record in testset:
        hits = gold_hits(record, run, lex, th, limit, top_k, config)
        found.append(found_within(hits.per_rank, k))
        if hits.answer is not None:
            answered += 1
            correct += match_gold(hits.answer, record.gold_answer, lex, config)
    precision, recall, f_measure = metrics(correct, answered, len(testset))
    return EvalReport(
        total=len(testset),
        answered=answered,
        correct=correct,
        accuracy_at_k=accuracy_at_k(found, k),
        precision=precision,
        recall=recall,
        f_measure=f_measure,
        k=k,
    )


@dataclass(frozen=True)
class QuestionHits:
    per_rank: tuple[bool, ...]  # gold matched by the best sentence of the passage at each new rank
    answer: str | None  # extracted answer sentence over the top passages


def gold_hits(
    record: TestRecord,
    run: PassageSource,
    lex: Lexicon,
    th: Thresholds = Thresholds(),
    limit: int = DEFAULT_LIMIT,
    top_k: int = DEFAULT_TOP_K,
    config: TextConfig = DEFAULT_CONFIG,
) -> QuestionHits:
    question = preprocess(record.question, lex, config)
    passages = run.fetch(record.question_id, limit)
    if not passages:
        log.warning("no passages for question %r; counted as unanswered", record.question_id)
        return QuestionHits((), None)
    if question.length == 0:
        log.warning("question %r is empty after preprocessing", record.question_id)
        return QuestionHits((False,) * len(passages), None)
    ranked = rerank(question, passages, lex, th, config)
    per_rank = []
    for rp in ranked:
        best = best_sentence(question, rp, lex, th, config)
        per_rank.append(best is not None and match_gold(best.sentence, record.gold_answer, lex, config))
    answer = extract_answer(question, ranked, lex, th, top_k, config)
    return QuestionHits(tuple(per_rank), answer.sentence if answer else None)
