"""
Scoring a small corpus
======================

Summarizes every document listed in a manifest and averages ROUGE recall,
the same thing ``corank corpus data/manifest.json`` prints.
"""

from pathlib import Path

from corank import PipelineConfig
from corank.cli import corpus_report, format_report, load_manifest

manifest = Path(__file__).parent / "data" / "manifest.json"
entries = load_manifest(manifest)

for k in (2, 3, 4):
    report = corpus_report(entries, PipelineConfig().updated({"k": k}))
    print(f"k = {k}")
    print(format_report(report))
    print()
