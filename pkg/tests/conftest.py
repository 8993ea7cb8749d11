import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


import itertools  # noqa: E402

import pytest  # noqa: E402

from polybu.genetics import lp_realize  # noqa: E402
from polybu.verify import monogenic_codes, two_gene_codes  # noqa: E402


@pytest.fixture(scope="session")
def realizable_codes():
    """Every LP-realizable monogenic and two-gene singleton code with n <= 10."""
    out = []
    for n in range(4, 11):
        for code in itertools.chain(monogenic_codes(n), two_gene_codes(n)):
            if lp_realize(code) is not None:
                out.append(code)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
