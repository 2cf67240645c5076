import random

import pytest
from hypothesis import strategies as st

from partpoly.laurent import LaurentPoly


def laurent_polys(max_terms: int = 6, exp_range: int = 6, coeff_range: int = 30):
    return st.dictionaries(
        st.integers(-exp_range, exp_range),
        st.integers(-coeff_range, coeff_range),
        max_size=max_terms,
    ).map(LaurentPoly)


def nonzero_laurent_polys(**kw):
    return laurent_polys(**kw).filter(lambda p: not p.is_zero())


def random_poly(rng: random.Random, width: int = 8, coeff: int = 6) -> LaurentPoly:
    low = rng.randint(-width, width)
    return LaurentPoly.from_dense(low, [rng.randint(-coeff, coeff) for _ in range(rng.randint(1, width))])


@pytest.fixture
def rng():
    return random.Random(12345)


_CRITERIA: dict[int, str] = {}


def record_criterion(k: int, ok: bool, detail: str) -> None:
    _CRITERIA[k] = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])
