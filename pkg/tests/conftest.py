import pytest
from hypothesis import strategies as st

from stanleylab.core import Monomial, MonomialIdeal, StanleyLabError, validate_pair
from stanleylab.io import fixture

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def boundary():
    return fixture("boundary").pair


@pytest.fixture(scope="session")
def top4():
    return fixture("top4").pair


@pytest.fixture(scope="session")
def covering():
    return fixture("covering").pair


@pytest.fixture(scope="session")
def covering_full():
    return fixture("covering_full").pair


@pytest.fixture(scope="session")
def chain3():
    return fixture("chain3").pair


def m(n, *vs):
    return Monomial.from_vars(vs, n)


@st.composite
def ideal_pairs(draw, max_n=5):
    """Random valid pairs, small enough for exhaustive checks."""
    n = draw(st.integers(2, max_n))
    masks = st.integers(1, (1 << n) - 1)
    I_masks = draw(st.lists(masks, min_size=1, max_size=4))
    I = MonomialIdeal.generated_by([Monomial(x, n) for x in I_masks], n)
    d = I.min_degree()
    J_masks = draw(st.lists(masks, max_size=4))
    J_gens = [Monomial(x, n) for x in J_masks]
    J_gens = [g for g in J_gens if g.degree >= d + 1 and I.contains(g)]
    J = MonomialIdeal.generated_by(J_gens, n)
    try:
        return validate_pair(I, J)
    except StanleyLabError:
        from hypothesis import assume

        assume(False)
