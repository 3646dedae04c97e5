import functools

import pytest
from hypothesis import settings

from pdcore.inputs import CORPUS, load_corpus
from pdcore.rees import build_rees

settings.register_profile("pdcore", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("pdcore")


@functools.lru_cache(maxsize=None)
def corpus_module(name):
    return load_corpus(name)


@functools.lru_cache(maxsize=None)
def corpus_rees(name, seed=1):
    return build_rees(corpus_module(name), seed)


@pytest.fixture(params=CORPUS)
def corpus_name(request):
    return request.param


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
