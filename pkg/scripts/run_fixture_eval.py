"""Evaluate the pipeline on the bundled fixture and print a per-question trace.

    python scripts/run_fixture_eval.py [--k 1 3 5] [--trace]
"""

import argparse

from ewaq.entailment import Thresholds
from ewaq.evalkit import load_testset, run_eval
from ewaq.lexicon import bundled_lexicon_dir, load_lexicon
from ewaq.pipeline import extract_answer, rerank
from ewaq.retrieval import load_corpus
from ewaq.textproc import preprocess
from importlib import resources

FIXTURE = resources.files("ewaq") / "data" / "fixture"


def trace(testset, run, lex, th):
    for record in testset:
        q = preprocess(record.question, lex)
        ranked = rerank(q, run.fetch(record.question_id, 7), lex, th)
        print(f"{record.question_id}  {record.question}  (n={q.length})")
        for r in ranked:
            degree = f"{r.score.degree:.4f}" if r.score.succeeded else "----"
            print(f"   {r.new_rank}. passage {r.passage.source_rank}  {r.score.status.value:<26} {degree}")
        answer = extract_answer(q, ranked, lex, th)
        print("   answer:", f"{answer.sentence} [{answer.degree:.4f}]" if answer else "none")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=int, nargs="+", default=[1, 3, 5])
    parser.add_argument("--trace", action="store_true")
    args = parser.parse_args()

    lex = load_lexicon(bundled_lexicon_dir())
    run = load_corpus(FIXTURE / "corpus.jsonl")
    testset = load_testset(FIXTURE / "testset.jsonl")
    th = Thresholds()
    if args.trace:
        trace(testset, run, lex, th)
        print()
    for k in args.k:
        print(run_eval(testset, run, lex, th, k=k).to_table())
        print()


if __name__ == "__main__":
    main()
