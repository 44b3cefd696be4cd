import functools

import pytest

from twistact.fixtures import FIXTURES, fixture
from twistact.globalization import globalize


@functools.lru_cache(maxsize=None)
def cached_globalization(name):
    return globalize(fixture(name))


@pytest.fixture(params=sorted(FIXTURES))
def fixture_name(request):
    return request.param


@pytest.fixture
def glob_of():
    return cached_globalization


_LINES = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request, capsys):
    """report(n, title, results): print and remember one PASS/FAIL line, then assert."""
    lines = request.config.stash.setdefault(_LINES, [])

    def report(n, title, results):
        failed = [label for label, ok in results if not ok]
        line = f"{'PASS' if not failed else 'FAIL'} criterion {n}: {title}"
        if failed:
            line += f" (failed: {', '.join(failed)})"
        lines.append(line)
        with capsys.disabled():
            print(f"\n{line}")
        assert not failed, line

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
