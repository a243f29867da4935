"""Brute-force reference of the whole re-rank/extract pipeline.

Written separately from the package: its own file parsing, normalization,
tokenizer, stemmer, overlap count, cosines and ordering. Used to pin the
golden fixture results.
"""

import json
import unicodedata
from pathlib import Path

from oracles import cosines_oracle, status_oracle

HARAKAT = set(chr(cp) for cp in list(range(0x0610, 0x061B)) + list(range(0x064B, 0x0660)) + [0x0670]
              + list(range(0x06D6, 0x06EE)))
FOLD = {"آ": "ا", "أ": "ا", "إ": "ا", "ى": "ي"}
PREFIXES = ["وال", "بال", "كال", "فال", "ال", "و", "ف", "ب", "ك", "ل"]
SUFFIXES = ["ها", "هم", "كم", "نا", "ات", "ان", "ون", "ين", "ية", "ه", "ة", "ي"]


def ref_normalize(text):
    out = []
    for ch in unicodedata.normalize("NFC", text):
        if ch in HARAKAT or ch == "ـ":
            continue
        out.append(FOLD.get(ch, ch))
    return "".join(out)


def ref_tokenize(text):
    tokens, cur = [], ""
    for ch in text:
        cat = unicodedata.category(ch)
        if cat[0] in "LNM" and ch != "_":
            cur += ch
        else:
            if cur:
                tokens.append(cur)
            cur = ""
    if cur:
        tokens.append(cur)
    return tokens


def _data_lines(path):
    if not path.exists():
        return []
    rows = []
    for line in path.read_text(encoding="utf-8").split("\n"):
        if line.strip() == "" or line.strip().startswith("#"):
            continue
        rows.append([ref_normalize(f.strip()) for f in line.split("\t")])
    return rows


def ref_lexicon(lex_dir):
    lex_dir = Path(lex_dir)
    stop = {row[0] for row in _data_lines(lex_dir / "stopwords.txt")}
    roots = {}
    for row in _data_lines(lex_dir / "roots.tsv"):
        roots[row[0]] = row[1]
    pairs = set()
    for row in _data_lines(lex_dir / "relations.tsv"):
        pairs.add((row[0], row[1]))
    return stop, roots, pairs


def _strip(word):
    best = ""
    for p in PREFIXES:
        if word.startswith(p) and len(word) - len(p) >= 2 and len(p) > len(best):
            best = p
    word = word[len(best):]
    best = ""
    for s in SUFFIXES:
        if word.endswith(s) and len(word) - len(s) >= 2 and len(s) > len(best):
            best = s
    return word[: len(word) - len(best)]


def ref_stem(word, roots):
    if word in roots:
        return roots[word]
    if word in set(roots.values()):
        return word
    stripped = _strip(word)
    return roots.get(stripped, stripped)


def ref_terms(text, lexicon):
    stop, roots, _ = lexicon
    terms = set()
    for tok in ref_tokenize(ref_normalize(text)):
        if tok and tok not in stop:
            terms.add(ref_stem(tok, roots))
    return terms


def ref_score(q_terms, p_terms, lexicon):
    """(status, degree-or-None) for a question/passage term-set pair."""
    pairs = lexicon[2]
    n, m = len(q_terms), len(p_terms)
    if n == 0 or m == 0:
        return "EmptyInput", None
    c = 0
    for q in q_terms:
        if any(q == p or (q, p) in pairs or (p, q) in pairs for p in p_terms):
            c += 1
    status = status_oracle(c, n, m)
    return status, (cosines_oracle(c, n, m)[2] if status == "Success" else None)


def ref_sentences(text):
    return [s.strip() for s in text.split(".") if s.strip()]


def ref_rerank(question, passages, lexicon):
    """passages: list of (id, source_rank, text). Returns [(id, status, degree)] in new order."""
    q = ref_terms(question, lexicon)
    scored = [(pid, rank, *ref_score(q, ref_terms(text, lexicon), lexicon)) for pid, rank, text in passages]
    remaining = list(scored)
    ordered = []
    while remaining:
        # pick the best remaining passage by explicit comparison
        best = remaining[0]
        for cand in remaining[1:]:
            b_ok, c_ok = best[2] == "Success", cand[2] == "Success"
            if c_ok and not b_ok:
                best = cand
            elif c_ok == b_ok:
                if c_ok and cand[3] > best[3]:
                    best = cand
                elif (not c_ok or cand[3] == best[3]) and cand[1] < best[1]:
                    best = cand
        remaining.remove(best)
        ordered.append(best)
    return [(pid, status, degree) for pid, _, status, degree in ordered]


def ref_answer(question, ranked_texts, lexicon, k=5):
    """ranked_texts: passage texts in re-ranked order. Returns (sentence, passage_index, degree) or None."""
    q = ref_terms(question, lexicon)
    candidates = []
    for pi, text in enumerate(ranked_texts[:k]):
        for si, sentence in enumerate(ref_sentences(text)):
            status, degree = ref_score(q, ref_terms(sentence, lexicon), lexicon)
            if status == "Success":
                candidates.append((degree, pi, si, sentence))
    if not candidates:
        return None
    top = max(d for d, *_ in candidates)
    winners = sorted(c for c in candidates if c[0] == top)
    degree, pi, _, sentence = min(winners, key=lambda c: (c[1], c[2]))
    return sentence, pi, degree


def ref_best_sentence(question, text, lexicon):
    return ref_answer(question, [text], lexicon, k=1)


def ref_gold_match(candidate, gold, lexicon):
    a, b = ref_terms(candidate, lexicon), ref_terms(gold, lexicon)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    return len(small) > 0 and small.issubset(big)


def load_jsonl(path):
    return [json.loads(line) for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]


def ref_run(corpus_path, testset_path, lex_dir, limit=7, top_k=5):
    """Per question: re-rank order, extracted answer, and per-rank gold hits."""
    lexicon = ref_lexicon(lex_dir)
    corpus = {}
    for row in load_jsonl(corpus_path):
        corpus.setdefault(row["question_id"], []).append((row["id"], row["rank"], row["text"]))
    results = {}
    for rec in load_jsonl(testset_path):
        passages = sorted(corpus.get(rec["question_id"], []), key=lambda p: p[1])[:limit]
        ranked = ref_rerank(rec["question"], passages, lexicon)
        texts = {pid: text for pid, _, text in passages}
        ranked_texts = [texts[pid] for pid, _, _ in ranked]
        answer = ref_answer(rec["question"], ranked_texts, lexicon, k=top_k)
        hits = []
        for text in ranked_texts:
            best = ref_best_sentence(rec["question"], text, lexicon)
            hits.append(best is not None and ref_gold_match(best[0], rec["gold_answer"], lexicon))
        results[rec["question_id"]] = {
            "order": [pid for pid, _, _ in ranked],
            "statuses": [s for _, s, _ in ranked],
            "answer": None if answer is None else (answer[0], ranked[answer[1]][0], answer[2]),
            "hits": hits,
        }
    return results
