from __future__ import annotations

import random

import pytest

from padic_asai.hilbert_eigensystem import validate_packet
from padic_asai.properties import CHECKS, random_packet, run_check, run_suite


@pytest.mark.parametrize("check", CHECKS, ids=lambda c: c.name)
def test_every_check_passes(check):
    result = run_check(check, seed=42, trials=40)
    assert result.passed, result.line()


def test_suite_is_order_independent():
    full = {r.name: r for r in run_suite(11, 20)}
    alone = run_suite(11, 20, only={"q-fiber"})
    assert alone == [full["q-fiber"]]


def test_failures_are_reported_not_raised():
    def broken(rng, trials):
        if rng.random() >= 0:
            raise AssertionError("drew a nonnegative number")

    result = run_check(type(CHECKS[0])("broken", broken), seed=1, trials=1)
    assert not result.passed
    assert result.line() == "FAIL broken: counterexample drew a nonnegative number"


@pytest.mark.parametrize("seed", range(30))
def test_random_packets_are_valid(seed):
    pkt = random_packet(random.Random(seed), symbolic=seed % 2 == 0)
    assert validate_packet(pkt) == []
