"""Descriptive semantic role labeling: corpus conversion, description
encoding and decoding, label casting, scoring and analysis."""

import json

from ._dsrl import (
    Corpus,
    DsrlError,
    Inventory,
    cosine,
    decode,
    downsample,
    embed,
    encode,
    health,
    retrieve,
    run_pipeline,
    score,
)
from . import _dsrl


def stats(corpus, inventory):
    return json.loads(_dsrl.stats_json(corpus, inventory))


def partition_table(gold, pred, train, scorer=None):
    text = _dsrl.partition_table(gold, pred, train, scorer)
    return [json.loads(line) for line in text.splitlines() if line]


__all__ = [
    "Corpus",
    "DsrlError",
    "Inventory",
    "cosine",
    "decode",
    "downsample",
    "embed",
    "encode",
    "health",
    "partition_table",
    "retrieve",
    "run_pipeline",
    "score",
    "stats",
]
