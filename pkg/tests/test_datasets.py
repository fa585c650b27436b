"""Bundled monthly flow series: counts, checksums, and loading."""

import hashlib

import numpy as np
import pytest

from frechetfit import DomainError, load_bundled
from frechetfit.datasets import BUNDLED

# sha256 over newline-joined reprs, frozen at transcription time
FIXTURES = {
    "may": ("6d1838a3eee526b70928b88438d2e48d04588252a0646228510fc21ef99da7c4", 40),
    "june": ("91c583f7d56a4bf4a5d9a96f6a7522a3510bf300d6fff202433addf84fdfdccd", 39),
    "july": ("d7ea2ec4ec8b8b5ed3661667baddad492ac5749fbda448d7e6f4a8c9d02276a6", 39),
    "august": ("1a3c3a1d2217ffaff6cfdcfedcbf5f98875b2d26e0bba00d6ba0adf393417d4f", 41),
    "september": ("6bb9e7b2c0a581ac1aa3f973efc5d34edb70b42bcb1b4ed5cdb6dfd4c3452395", 39),
}


def canonical_digest(values) -> str:
    return hashlib.sha256("\n".join(repr(float(v)) for v in values).encode()).hexdigest()


class TestBundled:
    def test_names(self):
        assert set(BUNDLED) == set(FIXTURES)

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_counts_and_checksums(self, name):
        digest, count = FIXTURES[name]
        values = BUNDLED[name]
        assert len(values) == count
        assert canonical_digest(values) == digest

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_all_positive(self, name):
        assert all(v > 0 for v in BUNDLED[name])

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_load_bundled(self, name):
        s = load_bundled(name)
        assert s.n == FIXTURES[name][1]
        assert sorted(BUNDLED[name]) == s.sorted_values.tolist()
        assert np.all(np.diff(s.sorted_values) >= 0)

    def test_case_insensitive(self):
        assert load_bundled("May").n == 40

    def test_unknown_name(self):
        with pytest.raises(DomainError):
            load_bundled("march")

    def test_reparse_roundtrip(self):
        # serializing and re-parsing the values reproduces the fixture hash
        for name, values in BUNDLED.items():
            text = "\n".join(f"{v!r}" for v in values)
            parsed = [float(line) for line in text.splitlines()]
            assert parsed == list(values)
            assert canonical_digest(parsed) == FIXTURES[name][0]
