"""File-backed lexical resources: stop words, surface->root table and a
root-level semantic relation table.

Directory layout::

    stopwords.txt   one word per line, '#' comments
    roots.tsv       surface<TAB>root
    relations.tsv   rootA<TAB>rootB[<TAB>relation_type]

Blank lines and '#' comment lines are ignored in all three files. A missing
file yields an empty collection and a logged warning.
"""

from __future__ import annotations

import logging
import os
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterator, Mapping

from ewaq.textproc import normalize

log = logging.getLogger(__name__)

ENV_VAR = "EWAQ_LEXICON_DIR"
STOPWORDS_FILE = "stopwords.txt"
ROOTS_FILE = "roots.tsv"
RELATIONS_FILE = "relations.tsv"


class LexiconError(ValueError):
    """Raised for unreadable or malformed lexicon files."""


@dataclass(frozen=True)
class Lexicon:
    stopwords: frozenset[str] = frozenset()
    roots: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}))
    relations: Mapping[frozenset[str], str | None] = field(
        default_factory=lambda: MappingProxyType({})
    )
    # derived lookups, rebuilt from the fields above
    known_roots: frozenset[str] = field(init=False, repr=False, compare=False)
    neighbours: Mapping[str, frozenset[str]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        object.__setattr__(self, "roots", MappingProxyType(dict(self.roots)))
        rels = {}
        for pair, label in dict(self.relations).items():
            pair = frozenset(pair)
            if not 1 <= len(pair) <= 2:
                raise LexiconError(f"relation must join two roots, got {sorted(pair)}")
            rels[pair] = label
        object.__setattr__(self, "relations", MappingProxyType(rels))
        object.__setattr__(self, "known_roots", frozenset(self.roots.values()))
        adj: dict[str, set[str]] = defaultdict(set)
        for pair in rels:
            a, b = sorted(pair)[0], sorted(pair)[-1]
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(
            self, "neighbours", MappingProxyType({k: frozenset(v) for k, v in adj.items()})
        )

    def related(self, a: str, b: str) -> bool:
        return a == b or b in self.neighbours.get(a, ())

    def relation_type(self, a: str, b: str) -> str | None:
        return self.relations.get(frozenset((a, b)))


def related_roots(lex: Lexicon, a: str, b: str) -> bool:
    """Reflexive, symmetric one-hop relation test between two roots."""
    return lex.related(a, b)


def _lines(path: Path) -> Iterator[tuple[int, str]]:
    try:
        text = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise LexiconError(f"{path}: not valid UTF-8 ({exc.reason} at byte {exc.start})") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip(" ")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line


def _fields(path: Path, lineno: int, line: str, allowed: tuple[int, ...]) -> list[str]:
    parts = [normalize(p.strip()) for p in line.split("\t")]
    if len(parts) not in allowed or not all(parts[:2]):
        want = " or ".join(str(n) for n in allowed)
        raise LexiconError(f"{path.name}:{lineno}: expected {want} non-empty tab-separated fields")
    return parts


def load_lexicon(dir_path: str | os.PathLike[str]) -> Lexicon:
    base = Path(dir_path)
    if not base.is_dir():
        raise LexiconError(f"lexicon directory not found: {base}")

    stopwords: set[str] = set()
    roots: dict[str, str] = {}
    relations: dict[frozenset[str], str | None] = {}

    path = base / STOPWORDS_FILE
    if path.exists():
        for _, line in _lines(path):
            word = normalize(line.strip())
            if word:
                stopwords.add(word)
    else:
        log.warning("no %s in %s; stop-word filtering disabled", STOPWORDS_FILE, base)

    path = base / ROOTS_FILE
    if path.exists():
        for lineno, line in _lines(path):
            surface, root = _fields(path, lineno, line, (2,))
            roots[surface] = root
    else:
        log.warning("no %s in %s; using light stemming only", ROOTS_FILE, base)

    path = base / RELATIONS_FILE
    if path.exists():
        for lineno, line in _lines(path):
            parts = _fields(path, lineno, line, (2, 3))
            label = parts[2] if len(parts) == 3 and parts[2] else None
            relations[frozenset(parts[:2])] = label
    else:
        log.warning("no %s in %s; matching on root identity only", RELATIONS_FILE, base)

    return Lexicon(frozenset(stopwords), roots, relations)


def bundled_lexicon_dir() -> Path:
    return Path(str(resources.files("ewaq") / "data" / "lexicon"))


def default_lexicon_dir() -> Path:
    """$EWAQ_LEXICON_DIR if set, else the bundled mini-lexicon."""
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else bundled_lexicon_dir()
