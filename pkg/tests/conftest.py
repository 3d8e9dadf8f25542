import pytest

from entwine.zoo import named_example


@pytest.fixture(scope="session")
def examples():
    """Shared fixture structures, built once per session."""
    names = ("trivial-k", "trivial-z2", "z2", "z3", "sweedler", "graded-z2")
    return {name: named_example(name) for name in names}
