import random

import pytest
from hypothesis import strategies as st

from ibisgroups.perm import Permutation


def permutations(min_degree=1, max_degree=9):
    """Strategy for Permutation objects of a drawn degree."""
    return st.integers(min_degree, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation))


def perm_pairs(max_degree=9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.tuples(st.permutations(list(range(n))).map(Permutation),
                            st.permutations(list(range(n))).map(Permutation)))


@pytest.fixture
def rng():
    return random.Random(12345)


# -- acceptance reporting ---------------------------------------------------------
# Tests marked ``acceptance(key, text)`` are summarized one line per key at the
# end of the run.  A key fails if any of its tests did not pass; an xfail
# (a claim that exact computation contradicts) is reported as FAIL with reason.

_acceptance: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(key, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or (rep.when != "call" and not rep.failed and not rep.skipped):
        return
    key, text = mark.args
    entry = _acceptance.setdefault(key, {"text": text, "status": "PASS", "notes": []})
    if hasattr(rep, "wasxfail"):
        entry["status"] = "FAIL"
        entry["notes"].append(rep.wasxfail)
    elif rep.failed:
        entry["status"] = "FAIL"
        entry["notes"].append(f"{item.name} failed")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance):
        e = _acceptance[key]
        line = f"{e['status']} criterion {key}: {e['text']}"
        if e["notes"]:
            line += " [" + "; ".join(e["notes"]) + "]"
        terminalreporter.write_line(line)
