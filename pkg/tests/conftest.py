from pathlib import Path

import pytest
from hypothesis import settings

from ewaq.lexicon import Lexicon, bundled_lexicon_dir, load_lexicon

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "src" / "ewaq" / "data" / "fixture"


@pytest.fixture(scope="session")
def lex_dir() -> Path:
    return bundled_lexicon_dir()


@pytest.fixture(scope="session")
def lex(lex_dir) -> Lexicon:
    return load_lexicon(lex_dir)


@pytest.fixture
def empty_lex() -> Lexicon:
    return Lexicon()


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return FIXTURE_DIR / "corpus.jsonl"


@pytest.fixture(scope="session")
def testset_path() -> Path:
    return FIXTURE_DIR / "testset.jsonl"


def write_lexicon(tmp_path, stopwords=None, roots=None, relations=None) -> Path:
    """Write whichever lexicon files are given (raw text) into tmp_path."""
    for name, body in (("stopwords.txt", stopwords), ("roots.tsv", roots), ("relations.tsv", relations)):
        if body is not None:
            (tmp_path / name).write_text(body, encoding="utf-8")
    return tmp_path


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion reported in the summary")


_acceptance: dict[int, tuple[str, str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not report.failed:
        return
    marker = next((m for m in getattr(report, "_acceptance", ())), None)
    if marker is None:
        return
    number, title = marker
    detail = dict(report.user_properties).get("detail", "")
    _acceptance[number] = ("PASS" if report.passed else "FAIL", title, detail)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result()._acceptance = [tuple(marker.args)]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        status, title, detail = _acceptance[number]
        line = f"[{number}] {status}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
