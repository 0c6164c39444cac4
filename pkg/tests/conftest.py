import random

import pytest

from procview.process.process_component import ProcessComponent
from tests.utils import FIXED, echo_spec

DOCUMENT = """\
// runs for `d` active ticks
process Fixed(d: Int = 3) {
  init: k: Int = 0;
  initProcess: k := 1;
  wcet: d;
  ending: k >= d;
  calc: k := k + 1;
}

// emits the last value received on `a` before its start
process Echo {
  in a: Int;
  out y: Int;
  buf: a = 0;
  init: k: Int = 0;
  initProcess: k := 1;
  asm: msg(1, a);
  wcet: 2;
  ending: k >= 2;
  calc: k := k + 1;
  calcF: y := [aBuf];
}

compose Pipeline = Fixed(d=3) ; Fixed(d=5)
compose Fork = Fixed(d=2) || Fixed(d=4)
compose Pick = Fixed(d=2) (+)[right] Fixed(d=4)
compose Handoff = Fixed(d=2) ; Echo
compose Ticker = loop(auto 2) Fixed(d=3)
compose Gate = loop(manual gap=3) Echo

env Once { entry @ 0 = [ev]; }
env Twice { entry @ 0 = [ev]; entry @ 10 = [ev]; }
env Feed { entry @ 0 = [ev]; Echo.a @ 1 = [7]; }
"""


@pytest.fixture
def rng():
    """
    Fixture providing a seeded random generator, so generated cases are
    reproducible.
    """
    return random.Random(1234)


@pytest.fixture
def fixed_component():
    """
    Fixture to create a component of the fixed-duration process (d = 3).
    """
    return ProcessComponent(FIXED)


@pytest.fixture
def echo_component():
    """
    Fixture to create a component of the Echo process.
    """
    return ProcessComponent(echo_spec())


@pytest.fixture
def document_text():
    return DOCUMENT


@pytest.fixture
def spec_file(tmp_path):
    """
    Fixture writing the sample document to a temporary ``.pspec`` file.
    """
    path = tmp_path / "sample.pspec"
    path.write_text(DOCUMENT, encoding="utf-8")
    return str(path)
