import random

import pytest
from hypothesis import HealthCheck, settings

from ich.instance import CanonicalInstance, Helper

settings.register_profile(
    "ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pair7_instance() -> CanonicalInstance:
    """The two-helper example: users 0..6, helper 0 serves 0-3, helper 1 serves 4-6."""
    return CanonicalInstance(
        7,
        (
            Helper(frozenset({4, 5}), frozenset({0, 1, 2, 3})),
            Helper(frozenset({1, 2}), frozenset({4, 5, 6})),
        ),
    )


def c5_witness():
    """One vertex each of five k=4 categories inducing a 5-cycle (0-based partitions)."""
    # categories V0->12, V0->23, V1->03, V2->0, V3->01 with user ids 0..4
    return CanonicalInstance(
        5,
        (
            Helper(frozenset({1, 2}), frozenset({0})),
            Helper(frozenset({0, 3, 4}), frozenset({1, 2})),
            Helper(frozenset({1, 4}), frozenset({3})),
            Helper(frozenset({2, 3}), frozenset({4})),
        ),
    )


def random_canonical(rng: random.Random, k: int, n: int, density: float = 0.5, uncovered: float = 0.0) -> CanonicalInstance:
    """Users spread over k helpers; each helper caches each foreign user w.p. ``density``."""
    homes = []
    for u in range(n):
        homes.append(None if rng.random() < uncovered else (u % k if u < k else rng.randrange(k)))
    helpers = []
    for j in range(k):
        nb = frozenset(u for u in range(n) if homes[u] == j)
        cache = frozenset(u for u in range(n) if homes[u] != j and rng.random() < density)
        helpers.append(Helper(cache, nb))
    return CanonicalInstance(n, tuple(helpers))


def random_g2_bounded(rng: random.Random, k: int, max_g2: int, n_max: int | None = None, density: float | None = None):
    """Random canonical instance whose G2 has at most ``max_g2`` vertices."""
    from ich.sigraph import build_side_info_graph, decompose

    n_max = n_max or max_g2 + 3
    while True:
        n = rng.randint(k, n_max)
        d = density if density is not None else rng.uniform(0.2, 0.9)
        inst = random_canonical(rng, k, n, d)
        dec = decompose(build_side_info_graph(inst))
        if len(dec.g2) <= max_g2:
            return inst, dec


@pytest.fixture
def pair7():
    return pair7_instance()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}")
