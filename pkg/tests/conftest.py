import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from syzlab.modules import QuotientRing  # noqa: E402
from syzlab.poly import PolyRing  # noqa: E402

P = 32003


class Fixture:
    """A quotient ring with its variables exposed by name."""

    def __init__(self, names, rels=lambda *v: []):
        self.S = PolyRing(list(names), P)
        self.vars = self.S.gens()
        self.R = QuotientRing(self.S, rels(*self.vars))
        for n, v in zip(names, self.vars):
            setattr(self, n, v)

    def free(self, degs=(0,)):
        return self.R.free(degs)

    def cyc(self, *gens, twist=0):
        return self.R.cyclic(list(gens), twist)

    def ideal(self, *gens):
        return self.R.ideal(list(gens))

    @property
    def k(self):
        return self.R.residue_field()


@pytest.fixture(scope="session")
def S2():
    return Fixture("xy")


@pytest.fixture(scope="session")
def H2():
    """F_p[x,y]/(xy)."""
    return Fixture("xy", lambda x, y: [x * y])


@pytest.fixture(scope="session")
def H4():
    """F_p[x,y,z,w]/(xy)."""
    return Fixture("xyzw", lambda x, y, z, w: [x * y])


@pytest.fixture(scope="session")
def C4():
    """F_p[x,y,z,w]/(xy,zw), codimension 2."""
    return Fixture("xyzw", lambda x, y, z, w: [x * y, z * w])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
