"""
Summarizing a news article
==========================

Runs the full pipeline on a short article about a mosquito-borne virus
and shows what each stage produced.
"""

from pathlib import Path

from corank import PipelineConfig, summarize_text

text = (Path(__file__).parent / "data" / "chikungunya.txt").read_text()

result = summarize_text(text)
print(f"{len(result.records)} sentences, {result.graph.n_edges} similarity edges")

# Tokens after stopword removal and stemming
for r in result.records[:3]:
    print(r.index, r.tokens)

print(f"\n{len(result.detection.communities)} communities "
      f"after {result.detection.state.iteration - 1} rounds")
for c in result.detection.communities[:5]:
    print(f"  {c.sorted_members()}  {c.phi:.3f}")

print("\npicks in order:")
for p in result.selection.picks:
    print(f"  sentence {p.node} from community {p.community}, weighted degree {p.weighted_degree:.3f}")

print("\nsummary:\n" + result.summary.text)

# A word budget instead of a sentence count
short = summarize_text(text, PipelineConfig().updated({"word_budget": 60}))
print(f"\n60-word summary ({len(short.summary.text.split())} words):\n" + short.summary.text)
