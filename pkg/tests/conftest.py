import pytest
from hypothesis import strategies as st

from rigchain.polycore import IntPoly, NatPoly

_CRITERIA: dict[int, dict] = {}


def P(text: str) -> NatPoly:
    return NatPoly.parse(text)


def Z(text: str) -> IntPoly:
    return IntPoly.parse(text)


def nat_polys(max_degree=4, max_coeff=3, min_degree=0):
    return st.dictionaries(
        st.integers(0, max_degree), st.integers(1, max_coeff), max_size=max_degree + 1
    ).map(NatPoly).filter(lambda q: q.degree >= min_degree)


def int_polys(max_degree=4, bound=5):
    return st.dictionaries(
        st.integers(0, max_degree), st.integers(-bound, bound), max_size=max_degree + 1
    ).map(IntPoly)


def high_ps(max_degree=4, max_coeff=2):
    """p with nonzero constant term and degree >= 2."""
    return st.tuples(
        st.integers(1, max_coeff),
        st.integers(2, max_degree),
        st.dictionaries(st.integers(1, max_degree), st.integers(0, max_coeff)),
    ).map(lambda t: NatPoly({0: t[0], t[1]: 1, **{e: c for e, c in t[2].items() if e < t[1]}}))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    n, text = marker.args
    entry = _CRITERIA.setdefault(n, {"text": text, "passed": 0, "failed": 0})
    if rep.failed:
        entry["failed"] += 1
    elif rep.when == "call":
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        status = "PASS" if entry["failed"] == 0 and entry["passed"] else "FAIL"
        terminalreporter.write_line(
            f"{status}  criterion {n}: {entry['text']} "
            f"({entry['passed']} passed, {entry['failed']} failed)"
        )
