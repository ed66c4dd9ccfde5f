import pytest

from midfix.fixcat import algebra, coalgebra, one_element_algebra
from midfix.signature import Term, signature


@pytest.fixture
def nat_sig():
    return signature([("z", 0), ("s", 1)])


def rank1(sig, symbol, *args):
    return Term(sig, 1, ("op", symbol, tuple(("var", x) for x in args)))


@pytest.fixture
def parity_algebra(nat_sig):
    return algebra(
        nat_sig,
        ["0", "1"],
        {
            rank1(nat_sig, "z"): "0",
            rank1(nat_sig, "s", "0"): "1",
            rank1(nat_sig, "s", "1"): "0",
        },
    )


@pytest.fixture
def loop_coalgebra(nat_sig):
    # p unfolds forever: b(p) = s(p)
    return coalgebra(nat_sig, ["p"], {"p": rank1(nat_sig, "s", "p")})


@pytest.fixture
def stopped_coalgebra(nat_sig):
    # p terminates immediately: b(p) = z
    return coalgebra(nat_sig, ["p"], {"p": rank1(nat_sig, "z")})


@pytest.fixture
def one_algebra(nat_sig):
    return one_element_algebra(nat_sig)
