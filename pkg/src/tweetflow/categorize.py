"""Sub-category assignment and gazetteer entity extraction.

Categories are exclusive: the first rule in precedence order that matches
a tweet's lemma stream wins, with a configurable fallback for tweets that
are on-domain but unspecific. Place extraction is a longest-match scan of
the normalized text against the gazetteer, so "polignano a mare" is found
before its substring "mare".
"""

from __future__ import annotations

import csv
import functools
import json
import logging
import re
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

from .corpus import TweetRecord
from .errors import DataError
from .preprocess import TokenizedDoc, normalize

log = logging.getLogger(__name__)

DEFAULT_FALLBACK = "General Tourism"

CITY = "city"
ATTRACTION = "attraction"


@dataclass(frozen=True)
class CategoryRule:
    name: str
    keywords: frozenset[str]
    regexes: tuple[re.Pattern, ...]


@dataclass(frozen=True)
class CategoryRules:
    categories: tuple[CategoryRule, ...]
    fallback: str = DEFAULT_FALLBACK

    def names(self) -> list[str]:
        return [c.name for c in self.categories] + [self.fallback]


@dataclass(frozen=True)
class Place:
    name: str          # canonical, multiword joined with '_'
    kind: str          # city | attraction
    aliases: tuple[str, ...]
    lat: float
    lon: float

    def match_forms(self) -> list[tuple[str, ...]]:
        """Token sequences this place can appear as in normalized text."""
        forms = {tuple(normalize(self.name.replace("_", " ")).split())}
        for alias in self.aliases:
            toks = tuple(normalize(alias).split())
            if toks:
                forms.add(toks)
        return sorted(forms)


@dataclass(frozen=True)
class Gazetteer:
    places: tuple[Place, ...]

    def by_name(self) -> dict[str, Place]:
        return {p.name: p for p in self.places}


@dataclass(frozen=True)
class EntityMentions:
    tweet_id: str
    cities: tuple[str, ...]
    attractions: tuple[str, ...]
    hashtags: tuple[str, ...]
    adjectives: tuple[tuple[str, str], ...]  # (adjective, positive|negative)


def load_category_rules(path: str | Path) -> CategoryRules:
    """Read the category -> keywords/regexes config (JSON)."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"category rules file not found: {path}")
    raw = json.loads(path.read_text(encoding="utf-8"))
    categories = []
    seen = set()
    for entry in raw.get("categories", []):
        name = entry["name"]
        if name in seen:
            raise DataError(f"duplicate category name {name!r}")
        seen.add(name)
        categories.append(
            CategoryRule(
                name=name,
                keywords=frozenset(k.casefold() for k in entry.get("keywords", [])),
                regexes=tuple(re.compile(p) for p in entry.get("regexes", [])),
            )
        )
    return CategoryRules(tuple(categories), raw.get("fallback", DEFAULT_FALLBACK))


def load_gazetteer(path: str | Path) -> Gazetteer:
    """Read the name,kind,aliases,lat,lon gazetteer CSV."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"gazetteer file not found: {path}")
    places = []
    seen = set()
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for line_no, row in enumerate(reader, start=2):
            name = (row.get("name") or "").strip()
            kind = (row.get("kind") or "").strip()
            if not name:
                continue
            if name in seen:
                raise DataError(f"{path.name} line {line_no}: duplicate place {name!r}")
            if kind not in (CITY, ATTRACTION):
                raise DataError(f"{path.name} line {line_no}: bad kind {kind!r}")
            seen.add(name)
            aliases = tuple(a for a in (row.get("aliases") or "").split("|") if a)
            places.append(
                Place(
                    name=name,
                    kind=kind,
                    aliases=aliases,
                    lat=float(row["lat"]),
                    lon=float(row["lon"]),
                )
            )
    return Gazetteer(tuple(places))


def assign_category(doc: TokenizedDoc, rules: CategoryRules) -> str:
    """First matching category in precedence order, else the fallback."""
    lemma_set = set(doc.lemmas)
    lemma_text = " ".join(doc.lemmas)
    for rule in rules.categories:
        if lemma_set & rule.keywords:
            return rule.name
        if any(rx.search(lemma_text) for rx in rule.regexes):
            return rule.name
    return rules.fallback


def matching_categories(doc: TokenizedDoc, rules: CategoryRules) -> list[str]:
    """Every category whose rules match, in precedence order (debug aid for
    inspecting how exclusive assignment resolved overlaps)."""
    lemma_set = set(doc.lemmas)
    lemma_text = " ".join(doc.lemmas)
    matches = [
        rule.name
        for rule in rules.categories
        if lemma_set & rule.keywords or any(rx.search(lemma_text) for rx in rule.regexes)
    ]
    return matches or [rules.fallback]


@functools.lru_cache(maxsize=8)
def _gazetteer_index(gazetteer: Gazetteer) -> dict[tuple[str, ...], Place]:
    index: dict[tuple[str, ...], Place] = {}
    for place in gazetteer.places:
        for form in place.match_forms():
            existing = index.get(form)
            # deterministic collision rule: lexicographically smaller canonical wins
            if existing is None or place.name < existing.name:
                index[form] = place
    return index


def extract_entities(
    record: TweetRecord,
    doc: TokenizedDoc,
    gazetteer: Gazetteer,
    adjective_lexicon: Mapping[str, float],
) -> EntityMentions:
    """Scan for place mentions, polarity-tagged adjectives, and hashtags.

    The place scan is greedy longest-match over the normalized raw text,
    so no reported mention is a token-substring of another mention at the
    same position. Adjectives are lemmas found in the valence lexicon.
    """
    index = _gazetteer_index(gazetteer)
    max_len = max((len(form) for form in index), default=0)
    tokens = normalize(record.text).split()
    cities: list[str] = []
    attractions: list[str] = []
    pos = 0
    while pos < len(tokens):
        matched = None
        for length in range(min(max_len, len(tokens) - pos), 0, -1):
            window = tuple(tokens[pos:pos + length])
            place = index.get(window)
            if place is not None:
                matched = (place, length)
                break
        if matched is None:
            pos += 1
            continue
        place, length = matched
        (cities if place.kind == CITY else attractions).append(place.name)
        pos += length

    adjectives = []
    for lemma in doc.lemmas:
        valence = adjective_lexicon.get(lemma)
        if valence:
            adjectives.append((lemma, "positive" if valence > 0 else "negative"))

    return EntityMentions(
        tweet_id=record.id,
        cities=tuple(cities),
        attractions=tuple(attractions),
        hashtags=record.hashtags,
        adjectives=tuple(adjectives),
    )


@dataclass(frozen=True)
class CategoryReport:
    distribution: tuple[tuple[str, int, float], ...]          # (category, count, percent)
    top_words: dict[str, tuple[tuple[str, int], ...]]          # category -> top lemmas
    top_attractions: dict[str, tuple[tuple[str, int], ...]]    # category -> top attractions


def category_report(
    assignments: Mapping[str, str],
    docs: Sequence[TokenizedDoc],
    mentions: Sequence[EntityMentions] = (),
    rules: CategoryRules | None = None,
    top_n_words: int = 15,
    top_n_attractions: int = 3,
) -> CategoryReport:
    """Distribution plus per-category frequent lemmas and attractions.

    `assignments` maps tweet_id to category; docs (and mentions, if given)
    must cover exactly the assigned tweets. Percentages sum to 100 within
    rounding.
    """
    if not assignments:
        raise DataError("no category assignments to report")
    counts: Counter = Counter(assignments.values())
    total = sum(counts.values())
    names = rules.names() if rules is not None else sorted(counts)
    for name in counts:
        if name not in names:
            names.append(name)
    distribution = tuple(
        (name, counts.get(name, 0), 100.0 * counts.get(name, 0) / total)
        for name in names
    )

    words_by_cat: dict[str, Counter] = {name: Counter() for name in names}
    for doc in docs:
        cat = assignments.get(doc.tweet_id)
        if cat is None:
            raise DataError(f"tweet {doc.tweet_id!r} has no category")
        words_by_cat[cat].update(doc.lemmas)
    attractions_by_cat: dict[str, Counter] = {name: Counter() for name in names}
    for mention in mentions:
        cat = assignments.get(mention.tweet_id)
        if cat is None:
            raise DataError(f"tweet {mention.tweet_id!r} has no category")
        attractions_by_cat[cat].update(mention.attractions)

    def ranked(counter: Counter, n: int) -> tuple[tuple[str, int], ...]:
        return tuple(sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))[:n])

    return CategoryReport(
        distribution=distribution,
        top_words={name: ranked(words_by_cat[name], top_n_words) for name in names},
        top_attractions={
            name: ranked(attractions_by_cat[name], top_n_attractions) for name in names
        },
    )
