"""Deterministic tweet-corpus mining pipeline.

Filters a generic tweet corpus down to a domain subset (tourism by
default), categorizes and sentiment-scores it, and analyzes the resulting
word co-occurrence and place networks with centrality and community
detection algorithms. Every stage is seeded and reproducible bit for bit.
"""

__version__ = "0.1.0"
