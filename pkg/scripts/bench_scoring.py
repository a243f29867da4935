"""Time re-ranking of a synthetic 250 x 7 workload (60-token passages)."""

import random
import time
from importlib import resources

from ewaq.lexicon import bundled_lexicon_dir, load_lexicon
from ewaq.pipeline import rerank
from ewaq.retrieval import Passage, load_corpus
from ewaq.textproc import preprocess


def main(questions=250, passages=7, tokens=60, repeats=5):
    rng = random.Random(0)
    lex = load_lexicon(bundled_lexicon_dir())
    run = load_corpus(resources.files("ewaq") / "data" / "fixture" / "corpus.jsonl")
    vocab = sorted({w for ps in run.entries.values() for p in ps for w in p.text.replace(".", " ").split()})
    work = []
    for qi in range(questions):
        q = rng.sample(vocab, 5)
        ps = [Passage(f"{qi}-{pi}", pi + 1, " ".join(q[:4] + rng.choices(vocab, k=tokens - 4)))
              for pi in range(passages)]
        work.append((" ".join(q), ps))
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        for q, ps in work:
            rerank(preprocess(q, lex), ps, lex)
        timings.append(time.perf_counter() - start)
    print(f"{questions} x {passages} passages: best {min(timings) * 1000:.0f} ms, "
          f"worst {max(timings) * 1000:.0f} ms over {repeats} runs")


if __name__ == "__main__":
    main()
