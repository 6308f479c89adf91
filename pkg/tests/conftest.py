import pytest

from causaltrust.lexicon import default_lexicon


@pytest.fixture(scope="session")
def lex():
    """Default lexicon on the production grid size."""
    return default_lexicon(1000)


@pytest.fixture(scope="session")
def lex_small():
    """Default lexicon on a coarse grid, for cheap property tests."""
    return default_lexicon(200)
