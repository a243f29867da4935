"""Arabic text preprocessing: normalization, tokenization, stemming, sentence
splitting and why-question detection.

Every function here is pure. A :class:`TextConfig` carries the few tunable
knobs; the module-level default is used when none is passed.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from ewaq.lexicon import Lexicon

# harakat, tanween, shadda, sukun plus the Quranic annotation marks
_DIACRITICS = re.compile("[\u0610-\u061A\u064B-\u065F\u0670\u06D6-\u06ED]")
_TATWEEL = "\u0640"
_ALEF_VARIANTS = str.maketrans({"آ": "ا", "أ": "ا", "إ": "ا", "ى": "ي"})
_TAA_MARBUTA = str.maketrans({"ة": "ه"})

# A token is a run of letters/digits, allowing embedded combining marks and tatweel.
_TOKEN = re.compile("(?:[^\\W_]|[\u0610-\u061A\u064B-\u065F\u0670\u06D6-\u06ED])+")

PREFIXES = ("وال", "بال", "كال", "فال", "ال", "و", "ف", "ب", "ك", "ل")
SUFFIXES = ("ها", "هم", "كم", "نا", "ات", "ان", "ون", "ين", "ية", "ه", "ة", "ي")
MIN_STEM = 2

DEFAULT_WHY_PARTICLES = ("لماذا", "لمَ", "لم", "ما سبب", "ما السبب")


@dataclass(frozen=True)
class TextConfig:
    """Run-time switches for preprocessing."""

    extra_delimiters: tuple[str, ...] = ()
    fold_taa_marbuta: bool = False
    why_particles: tuple[str, ...] = DEFAULT_WHY_PARTICLES


DEFAULT_CONFIG = TextConfig()


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    root: str


@dataclass(frozen=True)
class ProcessedText:
    """Stop-word-filtered tokens of a text and the distinct roots they reduce to.

    ``length`` is the number of distinct roots; it plays the role of the
    question length when built from a question and of the passage length when
    built from a passage.
    """

    tokens: tuple[Token, ...]
    terms: frozenset[str] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", frozenset(t.root for t in self.tokens))

    @property
    def length(self) -> int:
        return len(self.terms)


class Stemmer(Protocol):
    def __call__(self, word: str, lex: Lexicon) -> str: ...


def normalize(text: str, config: TextConfig = DEFAULT_CONFIG) -> str:
    text = unicodedata.normalize("NFC", text)
    text = _DIACRITICS.sub("", text).replace(_TATWEEL, "")
    text = text.translate(_ALEF_VARIANTS)
    if config.fold_taa_marbuta:
        text = text.translate(_TAA_MARBUTA)
    return text


def tokenize(text: str) -> list[str]:
    """Split on whitespace and punctuation, dropping the separators."""
    return _TOKEN.findall(text)


def light_stem(word: str) -> str:
    """Strip one longest-matching prefix, then one longest-matching suffix.

    A strip is skipped when it would leave fewer than two letters.
    """
    for prefix in PREFIXES:  # ordered longest first
        if word.startswith(prefix) and len(word) - len(prefix) >= MIN_STEM:
            word = word[len(prefix):]
            break
    for suffix in sorted(SUFFIXES, key=len, reverse=True):
        if word.endswith(suffix) and len(word) - len(suffix) >= MIN_STEM:
            word = word[: -len(suffix)]
            break
    return word


def stem(word: str, lex: Lexicon) -> str:
    """Reduce a normalized word to its root.

    The lexicon's surface->root table wins and a known root is returned
    unchanged. Otherwise the word is light-stemmed and the stripped form is
    looked up once more, so clitic-prefixed forms of listed words still
    reach their root.
    """
    if not word:
        raise ValueError("cannot stem an empty word")
    root = lex.roots.get(word)
    if root is not None:
        return root
    if word in lex.known_roots:
        return word
    stripped = light_stem(word)
    return lex.roots.get(stripped, stripped)


def preprocess(
    text: str,
    lex: Lexicon,
    config: TextConfig = DEFAULT_CONFIG,
    stemmer: Stemmer = stem,
) -> ProcessedText:
    tokens = []
    for surface in tokenize(text):
        norm = normalize(surface, config)
        if not norm or norm in lex.stopwords:
            continue
        tokens.append(Token(surface, norm, stemmer(norm, lex)))
    return ProcessedText(tuple(tokens))


def split_sentences(passage_text: str, config: TextConfig = DEFAULT_CONFIG) -> list[str]:
    delimiters = (".",) + tuple(d for d in config.extra_delimiters if d != ".")
    pattern = "|".join(re.escape(d) for d in delimiters)
    return [s.strip() for s in re.split(pattern, passage_text) if s.strip()]


def detect_why(question: str, config: TextConfig = DEFAULT_CONFIG) -> bool:
    """True when any why-particle occurs as a whole-token sequence in the question."""
    words = tokenize(normalize(question, config))
    if not words:
        return False
    for particle in config.why_particles:
        needle = tokenize(normalize(particle, config))
        if not needle:
            continue
        width = len(needle)
        if any(words[i : i + width] == needle for i in range(len(words) - width + 1)):
            return True
    return False
