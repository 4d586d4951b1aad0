"""Domain filtering: frequency exploration, term dictionaries, string
matching, and the merge of the two filtering routes.

The exploration step emits ranked word/hashtag lists as editable label
files; once a curator fills in the Tourism / NotTourism labels, the
dictionary drives both the string-matching filter and the automatic
topic/cluster selectors.
"""

from __future__ import annotations

import csv
import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus
from .errors import DataError
from .preprocess import TokenizedDoc
from .storage import write_csv

log = logging.getLogger(__name__)

TOURISM = "Tourism"
NOT_TOURISM = "NotTourism"


@dataclass(frozen=True)
class ExplorationReport:
    top_words: tuple[tuple[str, int], ...]
    top_hashtags: tuple[tuple[str, int], ...]
    n: int


@dataclass(frozen=True)
class TermDictionary:
    entries: dict[str, tuple[str, int]]  # term -> (label, frequency)

    def terms(self, label: str) -> frozenset[str]:
        return frozenset(t for t, (lab, _) in self.entries.items() if lab == label)

    @property
    def tourism_terms(self) -> frozenset[str]:
        return self.terms(TOURISM)


def _ranked(counter: Counter, n: int) -> tuple[tuple[str, int], ...]:
    return tuple(sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))[:n])


def explore(corpus: Corpus, docs: Sequence[TokenizedDoc], n: int = 1000) -> ExplorationReport:
    """Rank the corpus's lemmas and hashtags by occurrence count.

    Both lists count with multiplicity; ties break lexicographically.
    """
    if len(docs) != len(corpus.records):
        raise DataError("docs must be parallel to corpus records")
    words: Counter = Counter()
    for doc in docs:
        words.update(doc.lemmas)
    hashtags: Counter = Counter()
    for record in corpus.records:
        hashtags.update(record.hashtags)
    return ExplorationReport(_ranked(words, n), _ranked(hashtags, n), n)


def write_label_file(path: str | Path, ranked: Sequence[tuple[str, int]]) -> int:
    """Emit a term,label,frequency CSV with the label column left blank."""
    return write_csv(
        path, ["term", "label", "frequency"], [[term, "", freq] for term, freq in ranked]
    )


def load_dictionary(path: str | Path) -> TermDictionary:
    """Read a curated term,label,frequency CSV.

    Blank labels are ignored with a warning; a term may carry exactly one
    label, so conflicting duplicates abort the load.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"dictionary file not found: {path}")
    entries: dict[str, tuple[str, int]] = {}
    blank = 0
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for line_no, row in enumerate(reader, start=2):
            term = (row.get("term") or "").strip().casefold()
            label = (row.get("label") or "").strip()
            if not term:
                continue
            if not label:
                blank += 1
                continue
            if label not in (TOURISM, NOT_TOURISM):
                raise DataError(f"{path.name} line {line_no}: unknown label {label!r}")
            freq = int(row.get("frequency") or 0)
            if term in entries:
                if entries[term][0] != label:
                    raise DataError(
                        f"{path.name} line {line_no}: term {term!r} labeled twice"
                    )
                continue
            entries[term] = (label, freq)
    if blank:
        log.warning("%s: ignored %d unlabeled rows", path.name, blank)
    return TermDictionary(entries)


def match_strings(
    corpus: Corpus,
    docs: Sequence[TokenizedDoc],
    dictionary: TermDictionary,
    min_hits: int = 3,
) -> Corpus:
    """Keep tweets whose lemma stream hits domain-labeled terms often enough.

    Occurrences count with multiplicity: three repeats of one term
    qualify just like three distinct terms.
    """
    if len(docs) != len(corpus.records):
        raise DataError("docs must be parallel to corpus records")
    tourism = dictionary.tourism_terms
    if not tourism:
        raise DataError("dictionary has no Tourism entries")
    kept = []
    for record, doc in zip(corpus.records, docs):
        hits = sum(1 for lem in doc.lemmas if lem in tourism)
        if hits >= min_hits:
            kept.append(record)
    return Corpus(tuple(kept), corpus.lang_filter)


def merge_results(a: Corpus, b: Corpus, mode: str = "union") -> Corpus:
    """Combine the two filtering routes' outputs by tweet id.

    union (default): every id once, a's order first then b's novel ids.
    exclusive: ids present in both corpora are dropped entirely.
    An id carrying different texts in a and b signals corrupted inputs.
    """
    if mode not in ("union", "exclusive"):
        raise DataError(f"unknown merge mode {mode!r}")
    a_by_id = {r.id: r for r in a.records}
    for record in b.records:
        other = a_by_id.get(record.id)
        if other is not None and other.text != record.text:
            raise DataError(f"id {record.id!r} carries different texts in the inputs")
    b_ids = {r.id for r in b.records}
    if mode == "union":
        merged = list(a.records)
        merged.extend(r for r in b.records if r.id not in a_by_id)
    else:
        merged = [r for r in a.records if r.id not in b_ids]
        merged.extend(r for r in b.records if r.id not in a_by_id)
    return Corpus(tuple(merged), a.lang_filter)
