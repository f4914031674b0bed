from __future__ import annotations

import pytest

from corpus_loader import load_corpus
from zonefast.grammar import parse_records
from zonefast.oracle import oracle_parse

CORPUS = load_corpus()


def first_error(errors):
    return errors[0].position if errors else None


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 300
    assert len({label for label, _ in CORPUS}) == len(CORPUS)


@pytest.mark.parametrize("label,data", CORPUS, ids=[label for label, _ in CORPUS])
def test_fast_path_matches_oracle(label, data):
    listing = oracle_parse(data, name="snippet")
    for kernel in ("scalar", "v256"):
        records, errors = parse_records(data, kernel=kernel, name="snippet", max_window=4096)
        assert records == listing.records
        assert first_error(errors) == first_error(listing.errors)
