"""Sentence segmentation, tokenization, stopword removal and Porter stemming."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files

from nltk.stem.porter import PorterStemmer


@dataclass(frozen=True)
class SentenceRecord:
    index: int
    raw: str
    tokens: tuple[str, ...]


def _load_list(name: str) -> frozenset[str]:
    text = files("corank.data").joinpath(name).read_text(encoding="utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


STOPWORDS = _load_list("stopwords.txt")
ABBREVIATIONS = _load_list("abbreviations.txt")

# terminator run, then any closing quotes/brackets, then whitespace or end
_TERMINATOR = re.compile(r"""[.?!]+["'”’)\]]*(?=\s|$)""")
_PARAGRAPH = re.compile(r"\n\s*\n")
_WORD = re.compile(r"[^\W_]+")
_LEADING_PUNCT = "\"'(“‘["

_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def _is_abbreviation(chunk: str, dot: int) -> bool:
    start = dot
    while start > 0 and not chunk[start - 1].isspace():
        start -= 1
    word = chunk[start:dot].lstrip(_LEADING_PUNCT).lower()
    if word in ABBREVIATIONS:
        return True
    return len(word) == 1 and word.isalpha()


def _split_paragraph(par: str) -> list[str]:
    out = []
    start = 0
    for m in _TERMINATOR.finditer(par):
        if m.group().rstrip("\"'”’)]") == "." and _is_abbreviation(par, m.start()):
            continue
        out.append(par[start:m.end()])
        start = m.end()
    out.append(par[start:])
    return [" ".join(s.split()) for s in out if s.strip()]


def segment_sentences(text: str) -> list[str]:
    """Split on ``.``, ``?`` and ``!`` followed by whitespace, and on blank lines.

    A lone period after a listed abbreviation or a single letter does not
    end a sentence. Internal whitespace is collapsed to single spaces.
    """
    sentences = []
    for par in _PARAGRAPH.split(text):
        sentences.extend(_split_paragraph(par))
    return sentences


def tokenize(sentence: str) -> list[str]:
    return _WORD.findall(sentence.lower())


def remove_stopwords(tokens: list[str]) -> list[str]:
    return [t for t in tokens if t not in STOPWORDS]


@lru_cache(maxsize=65536)
def porter_stem(word: str) -> str:
    return _stemmer.stem(word)


def normalize(sentence: str) -> tuple[str, ...]:
    tokens = [porter_stem(t) for t in remove_stopwords(tokenize(sentence))]
    # a stem can land on a stopword ("ones" -> "on")
    return tuple(t for t in tokens if t and t not in STOPWORDS)


def preprocess_document(text: str) -> list[SentenceRecord]:
    return [
        SentenceRecord(i, raw, normalize(raw))
        for i, raw in enumerate(segment_sentences(text))
    ]
