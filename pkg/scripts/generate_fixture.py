#!/usr/bin/env python3
"""Generate the bundled 200-tweet fixture corpus (deterministic).

Layout: 120 English / 80 Italian rows, three exact text duplicates of
earlier rows, a tourism/noise mix per language with both positive and
negative sentiment, and place mentions covering the bundled gazetteer.
Regenerating overwrites tests/fixtures/corpus200.jsonl.
"""

from __future__ import annotations

import json
import random
import re
import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
OUT = REPO / "tests" / "fixtures" / "corpus200.jsonl"

EN_PLACES = [
    "Polignano a Mare", "Otranto", "Gallipoli", "Monopoli", "Ostuni",
    "Alberobello", "Vieste", "Bari", "Lecce", "Santa Maria di Leuca",
    "Torre dell'Orso", "Punta Prosciutto", "Baia dei Turchi", "Castel del Monte",
]
IT_PLACES = [
    "Polignano a Mare", "Otranto", "Gallipoli", "Taranto", "Ostuni",
    "Alberobello", "Torre dell'Orso", "Torre Colimena", "Valle d'Itria",
    "Grotte di Castellana", "Ponte Girevole", "Torre Sant'Andrea",
    "Campomarino di Maruggio", "Porto Selvaggio", "Lecce",
]
EN_ADJ = ["beautiful", "wonderful", "stunning", "amazing", "lovely", "charming", "magical"]
IT_ADJ = ["bellissimo", "meraviglioso", "stupendo", "incantevole", "splendido", "fantastico"]

EN_TOURISM = [
    ("Loving the {adj} beach at {place} this summer, the sea is so clear! #puglia #summer", "Sea"),
    ("Sunset swim at {place} today. A {adj} holiday on the Adriatic coast #sea #travel", "Sea"),
    ("The beach near {place} is {adj}, crystal sea and warm sand everywhere #beachlife", "Sea"),
    ("Spent the whole holiday by the sea in {place}, {adj} beaches and sunshine #summer", "Sea"),
    ("Visited the {adj} trulli of {place} on our trip, ancient houses and history #travel", "Historical"),
    ("The old castle in {place} is {adj}, so much history to visit on this trip #art", "Historical"),
    ("A {adj} cathedral and baroque monuments in {place}, history lovers must visit #culture", "Historical"),
    ("Walking among {adj} olive trees near {place}, pure nature on this holiday #nature", "Nature"),
    ("The natural park at {place} is {adj}, olive groves and quiet trails to visit #trip", "Nature"),
    ("Hiking the {adj} caves and nature reserve near {place} on holiday #outdoors", "Nature"),
    ("Our hotel in {place} has a {adj} pool, best resort stay of the trip #holiday", "Hotel"),
    ("Booked a {adj} masseria villa near {place} for the holiday, great stay #travel", "Hotel"),
    ("The resort at {place} is {adj}, lovely rooms and a quiet pool to relax #hotel", "Hotel"),
    ("Dinner at a {adj} restaurant in {place}: fresh seafood, pasta and primitivo wine", "Restaurant"),
    ("The food in {place} is {adj}! Burrata, orecchiette and local wine on this trip", "Restaurant"),
    ("Tasting {adj} wine and focaccia at {place}, the restaurant scene is great #food", "Restaurant"),
    ("A {adj} taranta concert tonight in {place}, music and dance all summer #festival", "Music"),
    ("The music festival at {place} was {adj}, danced until sunrise on holiday #concert", "Music"),
    ("What a {adj} trip around {place}, so many places to visit and enjoy #travel #holiday", "General Tourism"),
    ("Travel tip: {place} is a {adj} destination for a relaxed holiday, enjoy the visit", "General Tourism"),
    ("Visited Castello Svevo in Bari today, what a {adj} castle to see on holiday #history", "Historical"),
    ("From Lecce to Torre dell'Orso for a {adj} day at the beach, the sea sparkled #sea", "Sea"),
    ("Climbed up to Castel del Monte near Andria, {adj} monument and endless views #travel", "Historical"),
    ("Boat trip from Gallipoli to Porto Selvaggio: {adj} nature and a quiet clear sea", "Nature"),
    ("Santa Maria di Leuca from Otranto by bike, a {adj} stretch of coast to enjoy #trip", "Sea"),
]
EN_TOURISM_NEG = [
    ("Sadly the beach at {place} was dirty and crowded today, a disappointing holiday #beach", "Sea"),
    ("Our hotel near {place} was terrible: noisy rooms and rude staff, bad holiday stay", "Hotel"),
    ("The restaurant in {place} was awful, overpriced food and poor wine. Avoid this trip", "Restaurant"),
    ("Worst visit ever: the castle at {place} was closed and the trip felt ruined #travel", "Historical"),
    ("The sea at {place} looked ugly this holiday, boring beach and expensive bars", "Sea"),
]
EN_NOISE = [
    "What a match! Johnny vs Ciampa at NXT Takeover {n} tonight #wwe #nxt",
    "Ciampa wins match {n} again, NXT wrestling at its best #nxttakeover",
    "Can Johnny win the big match at Takeover {n}? NXT picks tonight #wrestling",
    "Wrestlemania {n} rumors: Ciampa and Johnny main event on NXT #wwe",
    "The wrestler from the NXT roster had a great match on Takeover night {n}",
    "New covid cases reported in the region today: {n}, stay safe out there #covid19",
    "Lockdown update: {n} covid cases rising again this week, wear a mask",
    "The covid vaccine rollout continues in the region, {n} long lines today",
    "Regional election results tonight: {n} districts, the vote could change the government",
    "Politics again: the candidate promises {n} jobs before the regional election #vote",
]
IT_TOURISM = [
    ("Il mare a {place} è {adj}, spiaggia pulita e tramonto da sogno #weareinpuglia #estate", "Sea"),
    ("Vacanza al mare a {place}: un litorale {adj} e acqua cristallina in spiaggia #mare #estate", "Sea"),
    ("Un giorno {adj} in spiaggia a {place}, il mare qui è un paradiso #vacanza", "Sea"),
    ("Il borgo di {place} è {adj}: trulli, storia e arte da visitare #viaggio", "Historical"),
    ("Il castello di {place} è {adj}, monumenti antichi e storia ovunque #arte", "Historical"),
    ("Passeggiata tra gli ulivi vicino {place}, panorama {adj} e natura pura in vacanza #natura", "Nature"),
    ("Il parco naturale di {place} è {adj}, grotte e riserva da visitare #viaggio", "Nature"),
    ("Soggiorno {adj} in masseria con piscina vicino {place}, che vacanza #hotel", "Hotel"),
    ("Hotel {adj} a {place}, camere curate e piscina sul mare #vacanza #resort", "Hotel"),
    ("Che pranzo {adj} al ristorante di {place}: orecchiette, burrata e vino primitivo #food", "Restaurant"),
    ("Il cibo a {place} è {adj}: pranzo di pesce e vino locale al ristorante #cucina", "Restaurant"),
    ("Concerto {adj} di pizzica stasera a {place}, musica e taranta fino a notte #festival", "Music"),
    ("Che viaggio {adj} a {place}, turismo lento e borghi da visitare #vacanza #viaggiare", "General Tourism"),
    ("Consiglio un viaggio {adj} a {place}, turismo e relax in vacanza #turismo", "General Tourism"),
    ("Il Ponte Girevole di Taranto al tramonto è {adj} #weareinpuglia", "Sea"),
    ("Da Lecce a Torre dell'Orso: mare {adj} e spiaggia da sogno #estate", "Sea"),
    ("La Basilica di San Nicola a Bari è un monumento {adj}, quanta storia #arte", "Historical"),
    ("Da Otranto alla Baia dei Turchi, un litorale {adj} per la vacanza #mare", "Sea"),
    ("Visita alle Grotte di Castellana da Monopoli, un percorso {adj} nella natura #viaggio", "Nature"),
]
IT_TOURISM_NEG = [
    ("Che delusione la spiaggia a {place}: sporca e affollata, vacanza rovinata #mare", "Sea"),
    ("Ristorante caro e pessimo vicino {place}, servizio terribile. Viaggio da dimenticare", "Restaurant"),
    ("Hotel rumoroso e brutto a {place}, la peggiore vacanza degli ultimi anni", "Hotel"),
    ("Il mare a {place} oggi era sporco, spiaggia triste e bar costosi #delusione", "Sea"),
]
IT_NOISE = [
    "Nuovi casi covid oggi: {n}, contagi in aumento nella regione #covid",
    "Quarantena e mascherina: la regione annuncia {n} nuove regole covid",
    "Il governo discute le misure covid, {n} casi positivi in crescita",
    "Elezioni regionali: il candidato del governo in tour elettorale, tappa {n} #elezioni",
    "Politica: il presidente della regione risponde sulle elezioni, question time {n}",
    "Sondaggi elezioni: il candidato guadagna {n} punti sul governo uscente",
]


def build_rows() -> list[dict]:
    rng = random.Random(20200601)
    rows: list[tuple[str, str]] = []  # (lang, text)
    seen: set[str] = set()
    counter = [100]

    def fill(template: str) -> str:
        text = template
        if "{n}" in text:
            counter[0] += 1
            text = text.replace("{n}", str(counter[0]))
        return text

    def take(pool, count, places, adjectives, lang):
        for i in range(count):
            template = pool[i % len(pool)]
            base = template[0] if isinstance(template, tuple) else template
            for _attempt in range(100):
                text = fill(base)
                if "{place}" in text:
                    text = text.replace("{place}", rng.choice(places))
                if "{adj}" in text:
                    text = text.replace("{adj}", rng.choice(adjectives))
                if text not in seen:
                    break
            else:
                raise RuntimeError(f"could not make a unique row from {base!r}")
            seen.add(text)
            rows.append((lang, text))

    # English: 72 tourism (62 positive / 10 negative) + 46 noise = 118, plus 2 duplicates
    take(EN_TOURISM, 62, EN_PLACES, EN_ADJ, "en")
    take(EN_TOURISM_NEG, 10, EN_PLACES, EN_ADJ, "en")
    take(EN_NOISE, 46, EN_PLACES, EN_ADJ, "en")
    # Italian: 50 tourism (42 positive / 8 negative) + 29 noise = 79, plus 1 duplicate
    take(IT_TOURISM, 42, IT_PLACES, IT_ADJ, "it")
    take(IT_TOURISM_NEG, 8, IT_PLACES, IT_ADJ, "it")
    take(IT_NOISE, 29, IT_PLACES, IT_ADJ, "it")

    # three exact duplicates of earlier rows (same language)
    rows.append(("en", rows[0][1]))
    rows.append(("en", rows[70][1]))
    rows.append(("it", rows[120][1]))

    order = list(range(len(rows)))
    rng.shuffle(order)
    start = datetime(2020, 6, 1, 8, 0, 0, tzinfo=timezone.utc)
    out = []
    for pos, idx in enumerate(order):
        lang, text = rows[idx]
        row = {
            "id": f"t{pos + 1:04d}",
            "text": text,
            "lang": lang,
            "created_at": (start + timedelta(minutes=pos)).isoformat(),
        }
        # half the rows carry an explicit hashtags field, half rely on extraction
        if pos % 2 == 0:
            row["hashtags"] = sorted({tag.casefold() for tag in re.findall(r"#(\w+)", text)})
        out.append(row)
    return out


def main() -> int:
    sys.path.insert(0, str(REPO / "src"))
    from tweetflow.preprocess import normalize

    rows = build_rows()
    assert len(rows) == 200, len(rows)
    langs = [r["lang"] for r in rows]
    assert langs.count("en") == 120 and langs.count("it") == 80
    normalized = [normalize(r["text"]) for r in rows]
    assert len(set(normalized)) == 197, len(set(normalized))

    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, ensure_ascii=False) + "\n")
    print(f"wrote {len(rows)} rows to {OUT}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
