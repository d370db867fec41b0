from __future__ import annotations

import pytest
from hypothesis import settings

from monadsum.finset import Atom, FinSet
from monadsum.monad import builtin

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


@pytest.fixture
def one():
    return FinSet([Atom("a")])


@pytest.fixture
def two():
    return FinSet([Atom("a"), Atom("b")])


@pytest.fixture
def three():
    return FinSet([Atom("a"), Atom("b"), Atom("c")])


@pytest.fixture
def maybe():
    return builtin("maybe")


@pytest.fixture
def powerset():
    return builtin("powerset")
