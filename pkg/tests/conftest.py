import pytest

from homalg.harness.families import linear, nakayama
from homalg.quiver import compile_presentation
from homalg.textformat import load_algebra


def alg_from_text(text):
    return load_algebra(text)[0]


@pytest.fixture(scope="session")
def cyc3():
    """Oriented 3-cycle with radical square zero."""
    return compile_presentation(nakayama(3, 2))


@pytest.fixture(scope="session")
def a2():
    return compile_presentation(linear(2))


@pytest.fixture(scope="session")
def a3rad2():
    return compile_presentation(linear(3, (1,)))


@pytest.fixture(scope="session")
def kx3():
    return alg_from_text("vertex 1\narrow x 1 1\nrelation x*x*x\n")


@pytest.fixture(scope="session")
def semisimple2():
    return alg_from_text("vertex 1\nvertex 2\n")
