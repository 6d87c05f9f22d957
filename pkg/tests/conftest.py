from __future__ import annotations

import sys

import pytest

from mtfr.fixtures import power_only_network, single_failure_network, six_cycle_network
from mtfr.model import Mode
from mtfr.randgen import GenConfig, derive_seed, gen_cycle_sampled


@pytest.fixture
def cascade_net():
    return single_failure_network()


@pytest.fixture
def power_only_net():
    return power_only_network()


@pytest.fixture
def six_cycle():
    return six_cycle_network()


@pytest.fixture
def six_cycle_bi():
    return six_cycle_network(Mode.BIDIRECTIONAL)


def random_instances(count: int, max_n: int, base_seed: int = 0, min_n: int = 1):
    """Deterministic list of (seed, spec) with N cycling through min_n..max_n."""
    out = []
    span = max_n - min_n + 1
    for i in range(count):
        n = min_n + i % span
        seed = derive_seed(base_seed, n, i)
        out.append((seed, gen_cycle_sampled(GenConfig(n_per_side=n, max_cycle_len=6, seed=seed))))
    return out


_acceptance_failed: dict[int, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_") and report.failed:
        _acceptance_failed[int(name.split("_")[1])] = name


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = list(getattr(mod, "RESULTS", None) or [])
    numbered = {int(s.split("]")[1].split(".")[0]): s for s in lines}
    for num, name in _acceptance_failed.items():
        numbered.setdefault(num, f"[FAIL] {num:2d}. {name}: error before a verdict was recorded")
    if not numbered:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(numbered):
        terminalreporter.write_line(numbered[num])
