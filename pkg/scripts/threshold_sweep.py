"""Sweep the three entailment thresholds on the bundled fixture.

Prints accuracy@k, precision and the share of passages that entail for each
(tau1, tau2, tau3) on a small grid, to show how sensitive the fixture
results are to the threshold choice.
"""

import argparse
import itertools
from importlib import resources

from ewaq.entailment import Thresholds
from ewaq.evalkit import load_testset, run_eval
from ewaq.lexicon import bundled_lexicon_dir, load_lexicon
from ewaq.pipeline import rerank
from ewaq.retrieval import load_corpus
from ewaq.textproc import preprocess

FIXTURE = resources.files("ewaq") / "data" / "fixture"


def main():
    parser = argparse.ArgumentParser(description="threshold sensitivity on the bundled fixture")
    parser.add_argument("--k", type=int, default=1)
    args = parser.parse_args()

    lex = load_lexicon(bundled_lexicon_dir())
    run = load_corpus(FIXTURE / "corpus.jsonl")
    testset = load_testset(FIXTURE / "testset.jsonl")
    questions = {r.question_id: preprocess(r.question, lex) for r in testset}

    print(f"{'tau1':>6} {'tau2':>6} {'tau3':>6} {'acc@' + str(args.k):>7} {'prec':>6} {'entail%':>8}")
    for tau1, tau2, tau3 in itertools.product((0.05, 0.095, 0.15), (0.1, 0.2, 0.3), (0.5, 0.7)):
        th = Thresholds(tau1, tau2, tau3)
        report = run_eval(testset, run, lex, th, k=args.k)
        ranked = [r for qid, q in questions.items() for r in rerank(q, run.fetch(qid, 7), lex, th)]
        share = sum(r.score.succeeded for r in ranked) / len(ranked)
        print(f"{tau1:>6} {tau2:>6} {tau3:>6} {report.accuracy_at_k:>7.2f} {report.precision:>6.2f} {100 * share:>7.1f}%")


if __name__ == "__main__":
    main()
