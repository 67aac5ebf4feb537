import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="also run slow tests (large secant cross-checks)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: needs --slow to run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="slow test: pass --slow to enable")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
