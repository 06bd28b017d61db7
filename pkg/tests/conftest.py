from __future__ import annotations

import pytest

from alcove import build_root_system, enumerate_alcove
from alcove.fusion import AlcoveContext


@pytest.fixture(scope="session")
def alcove_ctx():
    """Shared cached constructor so tests reuse fusion tables."""

    def make(lie_type: str, level: int) -> AlcoveContext:
        return enumerate_alcove(build_root_system(lie_type), level)

    return make
