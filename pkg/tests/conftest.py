from fractions import Fraction

from hypothesis import settings, strategies as st

from f1hall.laurent import LaurentPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

VARS = ("s", "sigma", "tau")


@st.composite
def laurent(draw, vars=VARS, max_terms=4, bound=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(-bound, bound)) for _ in vars)
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(vars, terms)


@st.composite
def laurent_s(draw, max_terms=4, bound=3):
    return draw(laurent(vars=("s",), max_terms=max_terms, bound=bound))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.REPORT, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
