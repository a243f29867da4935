"""Stored retrieval runs: JSON-lines files of engine-ranked passages.

Each line is ``{"question_id": str, "rank": int, "id": str, "text": str}``.
Ranks within a question must run 1..N without gaps or repeats.
"""

from __future__ import annotations

import json
import os
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Protocol

_FIELDS = {"question_id": str, "rank": int, "id": str, "text": str}


class CorpusError(ValueError):
    """Malformed run file."""


@dataclass(frozen=True)
class Passage:
    id: str
    source_rank: int
    text: str

    def __post_init__(self) -> None:
        if self.source_rank < 1:
            raise ValueError(f"source_rank must be >= 1, got {self.source_rank}")
        if not self.text:
            raise ValueError(f"passage {self.id!r} has empty text")


class PassageSource(Protocol):
    """Anything that can hand out a question's first ``limit`` passages."""

    def fetch(self, question_id: str, limit: int) -> list[Passage]: ...


class CorpusRun:
    """Immutable question_id -> rank-ordered passages mapping."""

    def __init__(self, entries: Mapping[str, Iterable[Passage]] | None = None):
        self._entries: Mapping[str, tuple[Passage, ...]] = MappingProxyType(
            {qid: tuple(sorted(ps, key=lambda p: p.source_rank)) for qid, ps in (entries or {}).items()}
        )

    @property
    def entries(self) -> Mapping[str, tuple[Passage, ...]]:
        return self._entries

    def question_ids(self) -> list[str]:
        return list(self._entries)

    def __contains__(self, question_id: object) -> bool:
        return question_id in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CorpusRun) and dict(self._entries) == dict(other._entries)

    def fetch(self, question_id: str, limit: int) -> list[Passage]:
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        return list(self._entries.get(question_id, ())[:limit])


def fetch(run: PassageSource, question_id: str, limit: int) -> list[Passage]:
    return run.fetch(question_id, limit)


def _parse_line(path: Path, lineno: int, line: str) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise CorpusError(f"{path}:{lineno}: expected a JSON object")
    for name, kind in _FIELDS.items():
        if name not in obj:
            raise CorpusError(f"{path}:{lineno}: missing field {name!r}")
        value = obj[name]
        if not isinstance(value, kind) or isinstance(value, bool):
            raise CorpusError(f"{path}:{lineno}: field {name!r} must be {kind.__name__}")
    if obj["rank"] < 1:
        raise CorpusError(f"{path}:{lineno}: rank must be >= 1")
    if not obj["text"].strip():
        raise CorpusError(f"{path}:{lineno}: empty passage text")
    return obj


def load_corpus(path: str | os.PathLike[str]) -> CorpusRun:
    path = Path(path)
    try:
        text = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path}: not valid UTF-8") from exc

    by_question: dict[str, dict[int, Passage]] = defaultdict(dict)
    ids: dict[str, set[str]] = defaultdict(set)
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        obj = _parse_line(path, lineno, line)
        qid, rank, pid = obj["question_id"], obj["rank"], obj["id"]
        if rank in by_question[qid]:
            raise CorpusError(f"{path}:{lineno}: duplicate rank {rank} for question {qid!r}")
        if pid in ids[qid]:
            raise CorpusError(f"{path}:{lineno}: duplicate passage id {pid!r} for question {qid!r}")
        by_question[qid][rank] = Passage(pid, rank, obj["text"])
        ids[qid].add(pid)

    for qid, ranked in by_question.items():
        expected = set(range(1, len(ranked) + 1))
        if set(ranked) != expected:
            missing = sorted(expected - set(ranked))
            raise CorpusError(f"{path}: question {qid!r} has a rank gap (missing {missing})")
    return CorpusRun({qid: ranked.values() for qid, ranked in by_question.items()})


def dump_corpus(run: CorpusRun, path: str | os.PathLike[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for qid, passages in run.entries.items():
            for p in passages:
                record = {"question_id": qid, "rank": p.source_rank, "id": p.id, "text": p.text}
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
