"""Brute-force reference for the evaluation fixture.

Scores every sample from the lexicon file directly and counts, label by
label, whether each score clears the threshold. Writes the expected
confusion counts and metrics for thresholds 0.1 to 0.9.
"""
import json
import pathlib
import re

DATA = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data"
TOPICS = ["exercise", "family", "food", "friends", "god", "health", "love", "recreation", "school", "sleep", "work"]
EMOTIONS = [
    "afraid", "angry", "anxious", "ashamed", "awkward", "bored", "calm", "confused", "disgusted",
    "excited", "frustrated", "happy", "jealous", "nostalgic", "proud", "sad", "satisfied", "surprised",
]
LABELS = TOPICS + EMOTIONS


def scores(text, lexicon):
    tokens = [t.lower() for t in re.split(r"[^0-9A-Za-z]+", text) if t]
    grams = tokens + [f"{a} {b}" for a, b in zip(tokens, tokens[1:])]
    miss = {label: 1.0 for label in LABELS}
    for g in grams:
        for label, w in lexicon.get(g, []):
            miss[label] = miss[label] * (1.0 - w)
    return {label: 1.0 - m for label, m in miss.items()}


def metrics(tp, fp, tn, fn):
    f1 = None
    if tp + fp and tp + fn and tp:
        p, r = tp / (tp + fp), tp / (tp + fn)
        f1 = 2 * p * r / (p + r)
    na = None
    if tp + fn and tn + fp:
        na = (tp / (tp + fn) + tn / (tn + fp)) / 2
    return f1, na


def main():
    lexicon = {e["keyword"]: e["labels"] for e in json.loads((DATA / "lexicon.json").read_text())["entries"]}
    days = json.loads((DATA / "fixtures/dataset.json").read_text())
    samples = [s for d in days for s in d["sub_entries"]]
    scored = [scores(s["text"], lexicon) for s in samples]
    rows = []
    for i in range(1, 10):
        t = i / 10
        per = {label: [0, 0, 0, 0] for label in LABELS}
        for s, sc in zip(samples, scored):
            truth = set(s["topics"]) | set(s["emotions"])
            for label in LABELS:
                pred, act = sc[label] > t, label in truth
                per[label][{(True, True): 0, (True, False): 1, (False, False): 2, (False, True): 3}[(pred, act)]] += 1
        tp, fp, tn, fn = (sum(c[k] for c in per.values()) for k in range(4))
        f1, na = metrics(tp, fp, tn, fn)
        macro = [metrics(*c) for c in per.values()]
        rows.append({
            "threshold": t,
            "counts": {"tp": tp, "fp": fp, "tn": tn, "fn": fn},
            "f1": f1,
            "norm_acc": na,
            "macro_f1": sum(m[0] or 0.0 for m in macro) / len(LABELS),
            "macro_norm_acc": sum(m[1] or 0.0 for m in macro) / len(LABELS),
        })
    (DATA / "fixtures/dataset_expected.json").write_text(json.dumps(rows, indent=1) + "\n")


if __name__ == "__main__":
    main()
