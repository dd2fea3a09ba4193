import numpy as np
import pytest

from slackbridge._validate import (
    LEDGER,
    LedgerEntry,
    random_profile,
    random_test_function,
    run_ledger,
)


def test_entry_line():
    """Entries print as one status line."""

    assert LedgerEntry("T-integral", True, 10, "max gap 0").line() == (
        "T-integral: PASS (10 cases) max gap 0"
    )
    assert LedgerEntry("theta-parity", False, 3).line() == (
        "theta-parity: FAIL (3 cases)"
    )


def test_keys_are_unique():

    keys = [key for key, _ in LEDGER]

    assert len(keys) == len(set(keys)) == 14


@pytest.mark.parametrize(
    "key", ["envelope-oracle", "T-integral", "T-monotone", "chi-gamma-lipschitz"]
)
def test_exact_entries_pass(key):
    """Entries checked to rounding pass on a handful of cases."""

    (entry,) = run_ledger(cases=5, keys=[key])

    assert entry.key == key
    assert entry.cases == 5
    assert entry.passed, entry.line()


def test_selection_keeps_the_ledger_order():
    """Entries come out in ledger order whatever the selection order."""

    entries = run_ledger(cases=2, keys=["chi-gamma-lipschitz", "envelope-oracle"])

    assert [entry.key for entry in entries] == [
        "envelope-oracle",
        "chi-gamma-lipschitz",
    ]


def test_same_seed_same_outcome():
    """A seed fixes every drawn case."""

    first = run_ledger(seed=7, cases=3, keys=["T-l1-contraction"])
    second = run_ledger(seed=7, cases=3, keys=["T-l1-contraction"])

    assert first == second


def test_random_functions():
    """Profiles span the grid and test functions vanish at the ends."""

    rng = np.random.default_rng(0)
    profile = random_profile(rng, 32, -1.0, 2.0)
    phi = random_test_function(rng, 32, -1.0, 2.0)

    assert profile.n == 32
    assert (profile.a, profile.b) == (-1.0, 2.0)
    assert np.all(np.isfinite(profile.values))
    assert phi.values[0] == phi.values[-1] == 0.0
