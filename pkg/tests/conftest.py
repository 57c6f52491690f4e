import functools

import pytest

from semirigid import rigidity
from semirigid.shell.generators import generate

# name -> (generator kind, params); the field defaults per kind
FIXTURES = {
    "k": ("bimodule_proj", {"algebra": "k"}),
    "dual": ("bimodule_proj", {"algebra": "dual"}),
    "kxk": ("bimodule_proj", {"algebra": "kxk"}),
    "z2": ("group_proj", {"group": "z2", "char": 2}),
    "add_dual": ("algebra_add", {"algebra": "dual"}),
    "zero": ("zero", {}),
    "y0": ("linear_semigroup", {"preset": "y0"}),
    "xy0": ("linear_semigroup", {"preset": "xy0"}),
    "star": ("linear_semigroup", {"preset": "star"}),
}

RIGID = ("k", "dual", "kxk", "z2", "add_dual")


@functools.lru_cache(maxsize=None)
def doc(name):
    kind, params = FIXTURES[name]
    return generate(kind, **params)


@functools.lru_cache(maxsize=None)
def cert(name):
    c = rigidity.build_certificate(doc(name).semigroup)
    assert c is not None, "no certificate for %s" % name
    return c


@pytest.fixture
def docs():
    return doc


@pytest.fixture
def certs():
    return cert


# criterion number -> "PASS" | "FAIL", filled by the acceptance suite
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line("criterion %2d: %s" % (n, ACCEPTANCE[n]))
