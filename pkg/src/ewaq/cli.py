"""Command-line entry point.

Exit codes: 0 success, 1 entailment failed (score), 2 no answer,
64 usage error, 65 bad input data.
"""

from __future__ import annotations

import functools
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

import click

from ewaq.entailment import Thresholds, entailment_score
from ewaq.evalkit import DEFAULT_EVAL_K, DEFAULT_LIMIT, load_testset, run_eval
from ewaq.lexicon import ENV_VAR, Lexicon, LexiconError, default_lexicon_dir, load_lexicon
from ewaq.pipeline import DEFAULT_TOP_K, extract_answer, rerank
from ewaq.retrieval import CorpusError, load_corpus
from ewaq.textproc import DEFAULT_WHY_PARTICLES, TextConfig, detect_why, preprocess

EXIT_OK = 0
EXIT_NOT_ENTAILED = 1
EXIT_NO_ANSWER = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65


class UsageFailure(click.UsageError):
    exit_code = EXIT_USAGE


@dataclass(frozen=True)
class CliConfig:
    lexicon_dir: Path
    thresholds: Thresholds
    top_k: int
    limit: int
    eval_k: int
    output: str
    text: TextConfig

    def load_lexicon(self) -> Lexicon:
        return load_lexicon(self.lexicon_dir)


def _common_options(fn: Callable) -> Callable:
    options = [
        click.option("--lexicon-dir", type=click.Path(file_okay=False, path_type=Path), envvar=ENV_VAR,
                     help=f"Lexicon directory (default: ${ENV_VAR}, else the bundled mini-lexicon)."),
        click.option("--tau1", type=click.FloatRange(0, 1), default=0.095, show_default=True),
        click.option("--tau2", type=click.FloatRange(0, 1), default=0.2, show_default=True),
        click.option("--tau3", type=click.FloatRange(0, 1), default=0.5, show_default=True),
        click.option("--top-k", type=click.IntRange(min=1), default=DEFAULT_TOP_K, show_default=True,
                     help="Passages searched for the answer sentence."),
        click.option("--limit", type=click.IntRange(min=1), default=DEFAULT_LIMIT, show_default=True,
                     help="Passages fetched per question."),
        click.option("--k", "eval_k", type=click.IntRange(min=1), default=DEFAULT_EVAL_K, show_default=True,
                     help="Rank cutoff for accuracy@k."),
        click.option("--output", type=click.Choice(["json", "table"]), default="json", show_default=True),
        click.option("--delimiters", default="", help="Extra sentence delimiters besides '.', e.g. '؟!?'."),
        click.option("--fold-taa-marbuta", is_flag=True, help="Fold taa marbuta into haa."),
        click.option("--why-particle", "why_particles", multiple=True,
                     help="Override the why-particle list (repeatable)."),
    ]

    @functools.wraps(fn)
    def wrapper(lexicon_dir, tau1, tau2, tau3, top_k, limit, eval_k, output, delimiters,
                fold_taa_marbuta, why_particles, **kwargs):
        cfg = CliConfig(
            lexicon_dir=lexicon_dir or default_lexicon_dir(),
            thresholds=Thresholds(tau1, tau2, tau3),
            top_k=top_k,
            limit=limit,
            eval_k=eval_k,
            output=output,
            text=TextConfig(
                extra_delimiters=tuple(delimiters),
                fold_taa_marbuta=fold_taa_marbuta,
                why_particles=tuple(why_particles) or DEFAULT_WHY_PARTICLES,
            ),
        )
        return fn(cfg, **kwargs)

    for option in reversed(options):
        wrapper = option(wrapper)
    return wrapper


def _emit(cfg: CliConfig, doc: Any, table: Callable[[], str]) -> None:
    if cfg.output == "table":
        click.echo(table())
    else:
        click.echo(json.dumps(doc, ensure_ascii=False, indent=2))


def _table(rows: Sequence[Sequence[Any]]) -> str:
    cells = [["" if v is None else (f"{v:.4f}" if isinstance(v, float) else str(v)) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells)


def _warn(message: str) -> None:
    click.echo(f"warning: {message}", err=True)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli() -> None:
    """Entailment-based re-ranking and answer extraction for Arabic why-questions."""


@cli.command("preprocess")
@click.option("--text", required=True, help="Text to preprocess.")
@_common_options
def cmd_preprocess(cfg: CliConfig, text: str) -> int:
    processed = preprocess(text, cfg.load_lexicon(), cfg.text)
    doc = {
        "tokens": [{"surface": t.surface, "normalized": t.normalized, "root": t.root} for t in processed.tokens],
        "terms": sorted(processed.terms),
        "length": processed.length,
    }
    rows = [("surface", "normalized", "root")] + [(t.surface, t.normalized, t.root) for t in processed.tokens]
    _emit(cfg, doc, lambda: _table(rows) + f"\nlength: {processed.length}")
    return EXIT_OK


@cli.command("score")
@click.option("--question", required=True)
@click.option("--passage", required=True)
@_common_options
def cmd_score(cfg: CliConfig, question: str, passage: str) -> int:
    lex = cfg.load_lexicon()
    q = preprocess(question, lex, cfg.text)
    if q.length == 0:
        raise UsageFailure("empty question after preprocessing")
    score = entailment_score(q, preprocess(passage, lex, cfg.text), lex, cfg.thresholds)
    doc = score.to_dict()
    _emit(cfg, doc, lambda: _table([("field", "value")] + list(doc.items())))
    return EXIT_OK if score.succeeded else EXIT_NOT_ENTAILED


def _ranked_doc(cfg: CliConfig, question: str, question_id: str, corpus: Path, with_answer: bool):
    lex = cfg.load_lexicon()
    is_why = detect_why(question, cfg.text)
    if not is_why:
        _warn("question is not a why-question; proceeding anyway")
    q = preprocess(question, lex, cfg.text)
    if q.length == 0:
        raise UsageFailure("empty question after preprocessing")
    passages = load_corpus(corpus).fetch(question_id, cfg.limit)
    ranked = rerank(q, passages, lex, cfg.thresholds, cfg.text)
    doc: dict[str, Any] = {"question": question, "is_why": is_why, "ranked": [r.to_dict() for r in ranked]}
    answer = None
    if with_answer:
        answer = extract_answer(q, ranked, lex, cfg.thresholds, cfg.top_k, cfg.text)
        doc["answer"] = answer.to_dict() if answer else None
    rows = [("new_rank", "id", "source_rank", "status", "degree")]
    rows += [(r.new_rank, r.passage.id, r.passage.source_rank, r.score.status.value, r.score.degree) for r in ranked]

    def table() -> str:
        out = _table(rows)
        if with_answer:
            out += "\nanswer: " + (f"{answer.sentence} ({answer.passage_id}, {answer.degree:.4f})" if answer else "none")
        return out

    return doc, table, ranked, answer


_question_opts = [
    click.option("--question", required=True),
    click.option("--question-id", required=True, help="Key of the question's passages in the corpus."),
    click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path),
                 help="JSON-lines retrieval run."),
]


def _with_question_opts(fn: Callable) -> Callable:
    for option in reversed(_question_opts):
        fn = option(fn)
    return fn


@cli.command("rerank")
@_with_question_opts
@_common_options
def cmd_rerank(cfg: CliConfig, question: str, question_id: str, corpus: Path) -> int:
    doc, table, ranked, _ = _ranked_doc(cfg, question, question_id, corpus, with_answer=False)
    _emit(cfg, doc, table)
    if not ranked:
        _warn(f"no passages for question {question_id!r}")
    return EXIT_OK


@cli.command("answer")
@_with_question_opts
@_common_options
def cmd_answer(cfg: CliConfig, question: str, question_id: str, corpus: Path) -> int:
    doc, table, _, answer = _ranked_doc(cfg, question, question_id, corpus, with_answer=True)
    _emit(cfg, doc, table)
    if answer is None:
        click.echo("no answer", err=True)
        return EXIT_NO_ANSWER
    return EXIT_OK


@cli.command("eval")
@click.option("--testset", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="JSON-lines test set {question_id, question, gold_answer}.")
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--system", default="EWAQ", show_default=True, help="Row label in table output.")
@_common_options
def cmd_eval(cfg: CliConfig, testset: Path, corpus: Path, system: str) -> int:
    lex = cfg.load_lexicon()
    report = run_eval(load_testset(testset), load_corpus(corpus), lex, cfg.thresholds,
                      k=cfg.eval_k, limit=cfg.limit, top_k=cfg.top_k, config=cfg.text)
    _emit(cfg, report.to_dict(), lambda: report.to_table(system))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=sys.stderr)
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="ewaq", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except (LexiconError, CorpusError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_DATAERR
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
