from __future__ import annotations

import pytest

from spex.extremal import enumerate_graphs
from spex.subgraphs import ForbiddenFamily

_cache: dict = {}


def enumerated(n: int, family: ForbiddenFamily | None = None):
    """Session-cached enumeration results (these are expensive at n >= 8)."""
    key = (n, family.cycle_lengths if family else None)
    if key not in _cache:
        _cache[key] = list(enumerate_graphs(n, family))
    return _cache[key]


@pytest.fixture(scope="session")
def enum_by_n():
    return enumerated
