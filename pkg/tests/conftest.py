import itertools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from segal_lab.fincat import (cyclic_group_category, discrete_category, interval_category,
                              iso_interval_category, make_category, monoid_category)

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def poset_category(n, relations):
    """Poset on 0..n-1 generated by the given pairs i < j."""
    le = {(i, i) for i in range(n)} | {(i, j) for i, j in relations if i < j}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True
    return make_category(range(n), {p: p for p in le}, {i: (i, i) for i in range(n)},
                         lambda g, f: (f[0], g[1]), name="poset")


@st.composite
def posets(draw, max_objects=4):
    n = draw(st.integers(1, max_objects))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return poset_category(n, rel)


def idempotent_category():
    return monoid_category(("1", "e"), "1", lambda g, f: "1" if g == f == "1" else "e",
                           name="idempotent")


def small_categories(max_size=3):
    return st.one_of(
        st.integers(0, max_size).map(interval_category),
        st.integers(0, max_size - 1).map(lambda n: iso_interval_category(n)[0]),
        st.integers(1, max_size).map(cyclic_group_category),
        st.integers(1, max_size).map(lambda n: discrete_category(range(n))),
        st.just(idempotent_category()),
        posets(max_size),
    )


# one line per acceptance criterion, shown in the terminal summary even when output is captured
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
