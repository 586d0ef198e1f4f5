import itertools
import math

import pytest
from hypothesis import settings, strategies as st

from orbihom.complex import build_complex
from orbihom.exactalg import IntMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def leibniz_det(rows):
    """Determinant by the permutation expansion; independent of the library's elimination."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, p in enumerate(perm):
            prod *= rows[i][p]
            if not prod:
                break
        total += -prod if inversions % 2 else prod
    return total


def minor_gcd_invariant_factors(m):
    """Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k-minors."""
    rows = m.tolist()
    nr, nc = m.shape
    out, prev = [], 1
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in itertools.combinations(range(nr), k):
            for ci in itertools.combinations(range(nc), k):
                g = math.gcd(g, leibniz_det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4, values=st.integers(-12, 12)):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    return IntMatrix(r, c, [[draw(values) for _ in range(c)] for _ in range(r)])


@st.composite
def weighted_complexes(draw, max_vertices=6, max_dim=2):
    """Small random divisibly-weighted complexes: vertex weights from one divisor lattice."""
    n = draw(st.integers(1, max_vertices))
    base = draw(st.sampled_from([1, 2, 4, 6, 12, 30, 36]))
    divisors = [d for d in range(1, base + 1) if base % d == 0]
    weights = [draw(st.sampled_from(divisors)) for _ in range(n)]
    simplices = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=max_dim + 1),
                              max_size=8))
    def chain_ok(s):
        ws = sorted(weights[v] for v in s)
        return all(b % a == 0 for a, b in zip(ws, ws[1:]))
    return build_complex(weights, [sorted(s) for s in simplices if chain_ok(s)])


@pytest.fixture
def edge_12():
    return build_complex({"x0": 1, "x1": 2}, [["x0", "x1"]])


@pytest.fixture
def path_212():
    return build_complex({"x0": 2, "m": 1, "x1": 2}, [["x0", "m"], ["m", "x1"]])


_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion covered by a test")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, text = mark.args
    entry = _criteria.setdefault(n, [text, True])
    if call.excinfo is not None:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, ok = _criteria[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
