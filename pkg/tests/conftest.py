"""Shared fixture data: the worked example used throughout the test suite.

The array, its heap tree, the dual/reversed-dual trees and all three
parenthesis strings were derived independently by hand from the definitions
and are frozen here; encoder/decoder tests must reproduce them byte for byte.
"""

import pytest

from dualtree.tree import OrdinalTree

FIX_A = [2, 7, 8, 1, 6, 4, 3, 5]

ROOT = 0  # sentinel label used by build_minheap

FIX_T_CHILDREN = {ROOT: (1, 4), 1: (2,), 2: (3,), 4: (5, 6, 7), 7: (8,)}
FIX_TSTAR_CHILDREN = {ROOT: (8, 7, 4), 7: (6,), 6: (5,), 4: (3, 2, 1)}
FIX_HAT_CHILDREN = {ROOT: (4, 7, 8), 4: (1, 2, 3), 7: (6,), 6: (5,)}

FIX_BP = "(((()))(()()(())))"
FIX_DFUDS = "((()()())((()))())"
FIX_DFUDS_TSTAR = "(((())()())((())))"

FIX_INTERVALS = [(1, 4), (3, 6), (5, 9), (8, 10)]

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fix_t():
    return OrdinalTree.from_children(ROOT, FIX_T_CHILDREN)


@pytest.fixture
def fix_tstar():
    return OrdinalTree.from_children(ROOT, FIX_TSTAR_CHILDREN)


@pytest.fixture
def fix_hat():
    return OrdinalTree.from_children(ROOT, FIX_HAT_CHILDREN)
