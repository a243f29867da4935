"""Entailment-conditioned passage re-ranking and answer extraction for Arabic
why-questions."""

from ewaq.entailment import (
    EntailmentScore,
    Status,
    Thresholds,
    check_conditions,
    common_count,
    compute_cosines,
    entailment_score,
)
from ewaq.evalkit import EvalReport, TestRecord, accuracy_at_k, match_gold, metrics, run_eval
from ewaq.lexicon import Lexicon, LexiconError, load_lexicon, related_roots
from ewaq.pipeline import Answer, RankedPassage, extract_answer, rerank
from ewaq.retrieval import CorpusError, CorpusRun, Passage, fetch, load_corpus
from ewaq.textproc import (
    ProcessedText,
    TextConfig,
    Token,
    detect_why,
    normalize,
    preprocess,
    split_sentences,
    stem,
    tokenize,
)

__version__ = "0.1.0"
