from fractions import Fraction
from itertools import permutations
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

small_fractions = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))


def matrices(max_rows=4, max_cols=4, min_rows=0, min_cols=0):
    return st.integers(min_rows, max_rows).flatmap(lambda r: st.integers(min_cols, max_cols).flatmap(
        lambda c: st.lists(st.lists(small_fractions, min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows: (r, c, rows))))


def perm_sign(p):
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def det(rows):
    """Leibniz formula; independent of elimination."""
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def brute_rank(rows, ncols):
    """Largest nonvanishing minor."""
    from itertools import combinations
    nrows = len(rows)
    for k in range(min(nrows, ncols), 0, -1):
        for rs in combinations(range(nrows), k):
            for cs in combinations(range(ncols), k):
                if det([[rows[r][c] for c in cs] for r in rs]) != 0:
                    return k
    return 0


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
