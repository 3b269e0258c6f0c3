"""
Scoring an extract against a golden summary
===========================================

ROUGE-N recall, precision and F1 under the different tokenization options.
"""

from pathlib import Path

from corank import rouge_text

data = Path(__file__).parent / "data"
extracted = (data / "chikungunya_extracted.txt").read_text()
golden = (data / "chikungunya_golden.txt").read_text()

for stem in (False, True):
    for stopwords in (False, True):
        print(f"stem={stem!s:<5} stopwords removed={stopwords!s:<5}", end="")
        for n in (1, 2, 3):
            s = rouge_text(extracted, golden, n, stem=stem, stopwords=stopwords)
            print(f"  R-{n} {s.recall:.3f}/{s.precision:.3f}/{s.f1:.3f}", end="")
        print()

# Swapping the arguments swaps recall and precision
a = rouge_text(extracted, golden, 2)
b = rouge_text(golden, extracted, 2)
print(a.recall == b.precision, a.precision == b.recall)
