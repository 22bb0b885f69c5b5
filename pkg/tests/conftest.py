from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from cantor_repr import BinSeq, canonicalize
from cantor_repr.oracle import load_corpus

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "cantor_repr" / "corpus"

bits = st.text(alphabet="01", max_size=8)
periods = st.text(alphabet="01", min_size=1, max_size=8)
binseqs = st.builds(canonicalize, bits, periods)
words = st.text(alphabet="01", max_size=10)


def unrolled_sum(x: BinSeq, n: int, base: int = 2, scale: int = 1) -> Fraction:
    """Independent truncated sum ``sum_{i<=n} scale * x_i / base**i``."""
    s = x.prefix(n)
    return sum((Fraction(scale * int(b), base**i) for i, b in enumerate(s, 1)), Fraction(0))


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def corpus_dir():
    return CORPUS_DIR


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
