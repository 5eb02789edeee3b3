"""Shared fixtures and the acceptance-criteria terminal summary.

Acceptance tests carry their criterion number in the test name
(test_cNN_...); the summary hook folds their outcomes into one verdict line
per criterion so a full run ends with a readable scorecard.
"""

import re

import pytest

from npcrel import compare_strategies, load_config

_CRITERION = re.compile(r"test_c(\d+)_")

_TITLES = {
    1: "reference failure-rate table within 0.5%",
    2: "MTTF reproduction",
    3: "stress-factor spot values",
    4: "thermal chain exactness and linearity",
    5: "closed-form conduction audit",
    6: "switching-loss enumeration cross-check",
    7: "strategy ordering properties",
    8: "capacitor lifetime laws",
    9: "midpoint voltage behaviour",
    10: "deterministic report output",
}


@pytest.fixture(scope="session")
def cfg():
    """Bundled defaults in reference mode."""
    return load_config()


@pytest.fixture(scope="session")
def cfg_model():
    """Bundled defaults with every stress factor derived from the models."""
    return load_config(mode="model")


@pytest.fixture(scope="session")
def reference_report(cfg):
    return compare_strategies(cfg)


@pytest.fixture(scope="session")
def model_report(cfg_model):
    return compare_strategies(cfg_model)


def pytest_terminal_summary(terminalreporter):
    buckets = {}
    for status in ("passed", "failed", "error", "xfailed", "xpassed", "skipped"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            match = _CRITERION.search(nodeid)
            if match is None:
                continue
            buckets.setdefault(int(match.group(1)), []).append(status)
    if not buckets:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(_TITLES):
        statuses = buckets.get(num, [])
        if not statuses:
            verdict = "NOT RUN"
        elif any(s in ("failed", "error", "xpassed") for s in statuses):
            verdict = "FAIL"
        elif "xfailed" in statuses:
            verdict = "KNOWN-FAIL (documented fixture defect)"
        else:
            verdict = "PASS"
        terminalreporter.write_line(f"ACCEPTANCE {num:2d} {_TITLES[num]}: {verdict}")
