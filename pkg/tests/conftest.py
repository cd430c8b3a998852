from fractions import Fraction

import pytest

from pjroot.cli import parse_transfer_function
from pjroot.polycore import grevlex
from pjroot.groebner import reduce
from pjroot.parsing import parse_polynomial

PENCIL = ("x", "y", "k_d", "k_n")
HOM = ("x", "y", "z", "k_d", "k_n")

PLANTS = {
    "imag_poles": "s/(s^2+1)",
    "double_pole": "(s+1)/s^2",
    "third_order": "1/(s*((s+4)^2+4^2))",
    "equal_degree": "(1-s^2)/(1+s^2)",
}


def P(text, variables=HOM):
    return parse_polynomial(text, variables)


def same_up_to_scalar(a, b):
    """True when a = c*b for a nonzero rational c."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    ta, tb = a.terms, b.terms
    if set(ta) != set(tb):
        return False
    m = next(iter(ta))
    c = ta[m] / tb[m]
    return all(ta[k] == c * tb[k] for k in ta)


def match_up_to_scalar(computed, expected):
    """Each expected polynomial equals exactly one computed element up to scalar."""
    computed = list(computed)
    if len(computed) != len(expected):
        return False
    left = list(computed)
    for e in expected:
        hit = next((c for c in left if same_up_to_scalar(c, e)), None)
        if hit is None:
            return False
        left.remove(hit)
    return True


def mutually_reduce(a, b, order):
    return all(reduce(f, b, order).is_zero() for f in a) and all(reduce(f, a, order).is_zero() for f in b)


@pytest.fixture(scope="session")
def plants():
    return {name: parse_transfer_function(text) for name, text in PLANTS.items()}


@pytest.fixture(scope="session")
def closures(plants):
    from pjroot.pjrl import projective_closure

    return {name: projective_closure(G) for name, G in plants.items()}


@pytest.fixture
def pencil_order():
    return grevlex(*PENCIL)


def frac(v):
    return Fraction(v)


# -- acceptance summary ----------------------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
