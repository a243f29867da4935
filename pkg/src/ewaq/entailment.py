"""Directional cosine entailment between a candidate answer text T and a
question H (T entails H).

Given c common roots, question length n and passage length m::

    cos_t   = sqrt(c / m)
    cos_h   = sqrt(c / n)
    cos_hut = sqrt(4 c^2 / ((n + c) (m + c)))

Entailment holds when m >= n, cos_h >= cos_hut >= cos_t, and the three
threshold conditions pass; the degree of entailment is then cos_hut.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any

from ewaq.lexicon import Lexicon
from ewaq.textproc import ProcessedText


class Status(str, enum.Enum):
    SUCCESS = "Success"
    LENGTH_PRECONDITION_FAILED = "LengthPreconditionFailed"
    PRIMARY_ORDER_FAILED = "PrimaryOrderFailed"
    COND11_FAILED = "Cond11Failed"
    COND12_FAILED = "Cond12Failed"
    COND13_FAILED = "Cond13Failed"
    EMPTY_INPUT = "EmptyInput"


@dataclass(frozen=True)
class Thresholds:
    tau1: float = 0.095  # max cos_hut - cos_t
    tau2: float = 0.2  # max cos_h - cos_hut
    tau3: float = 0.5  # min of the largest cosine

    def __post_init__(self) -> None:
        for name in ("tau1", "tau2", "tau3"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class EntailmentScore:
    c: int
    n: int
    m: int
    cos_t: float | None
    cos_h: float | None
    cos_hut: float | None
    status: Status

    @property
    def succeeded(self) -> bool:
        return self.status is Status.SUCCESS

    @property
    def degree(self) -> float | None:
        return self.cos_hut if self.succeeded else None

    def to_dict(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "c": self.c,
            "n": self.n,
            "m": self.m,
            "cos_t": self.cos_t,
            "cos_h": self.cos_h,
            "cos_hut": self.cos_hut,
            "status": self.status.value,
        }
        if self.succeeded:
            record["degree"] = self.degree
        return record


def common_count(question: ProcessedText, passage: ProcessedText, lex: Lexicon) -> int:
    """Number of distinct question roots equal or related to some passage root."""
    p_terms = passage.terms
    c = 0
    for q in question.terms:
        if q in p_terms or not lex.neighbours.get(q, frozenset()).isdisjoint(p_terms):
            c += 1
    return c


def compute_cosines(c: int, n: int, m: int) -> tuple[float, float, float]:
    if n < 1 or m < 1:
        raise ValueError(f"lengths must be positive, got n={n}, m={m}")
    if not 0 <= c <= min(n, m):
        raise ValueError(f"common count {c} outside [0, min(n, m)]")
    cos_t = math.sqrt(c / m)
    cos_h = math.sqrt(c / n)
    cos_hut = math.sqrt(4 * c * c / ((n + c) * (m + c)))
    return cos_t, cos_h, cos_hut


def check_conditions(
    cos_t: float, cos_h: float, cos_hut: float, n: int, m: int, th: Thresholds = Thresholds()
) -> Status:
    """First failing check, in fixed order, or SUCCESS. Comparisons are exact."""
    if m < n:
        return Status.LENGTH_PRECONDITION_FAILED
    if not cos_h >= cos_hut >= cos_t:
        return Status.PRIMARY_ORDER_FAILED
    if cos_hut - cos_t > th.tau1:
        return Status.COND11_FAILED
    if cos_h - cos_hut > th.tau2:
        return Status.COND12_FAILED
    if max(cos_t, cos_h, cos_hut) < th.tau3:
        return Status.COND13_FAILED
    return Status.SUCCESS


def score_counts(c: int, n: int, m: int, th: Thresholds = Thresholds()) -> EntailmentScore:
    if n == 0 or m == 0:
        return EntailmentScore(c, n, m, None, None, None, Status.EMPTY_INPUT)
    if m < n:
        # c may exceed m here, so the cosines are left undefined
        return EntailmentScore(c, n, m, None, None, None, Status.LENGTH_PRECONDITION_FAILED)
    cos_t, cos_h, cos_hut = compute_cosines(c, n, m)
    status = check_conditions(cos_t, cos_h, cos_hut, n, m, th)
    return EntailmentScore(c, n, m, cos_t, cos_h, cos_hut, status)


def entailment_score(
    question: ProcessedText,
    passage: ProcessedText,
    lex: Lexicon,
    th: Thresholds = Thresholds(),
) -> EntailmentScore:
    n, m = question.length, passage.length
    if n == 0 or m == 0:
        return EntailmentScore(0, n, m, None, None, None, Status.EMPTY_INPUT)
    return score_counts(common_count(question, passage, lex), n, m, th)
