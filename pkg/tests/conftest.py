import pytest

from morita.semigroups import (
    brandt,
    chain_semilattice,
    cyclic_group,
    group_with_zero,
    symmetric_inverse_monoid,
)


@pytest.fixture(scope="session")
def b12():
    return brandt(cyclic_group(1), 2)


@pytest.fixture(scope="session")
def b13():
    return brandt(cyclic_group(1), 3)


@pytest.fixture(scope="session")
def bc22():
    return brandt(cyclic_group(2), 2)


@pytest.fixture(scope="session")
def c2z():
    return group_with_zero(cyclic_group(2))


@pytest.fixture(scope="session")
def chain2():
    return chain_semilattice(2)


@pytest.fixture(scope="session")
def chain3():
    return chain_semilattice(3)


@pytest.fixture(scope="session")
def sim2():
    return symmetric_inverse_monoid(2)


@pytest.fixture(scope="session")
def small_corpus():
    """Everything small enough for quadratic-or-worse exhaustive sweeps."""
    return [
        cyclic_group(1),
        cyclic_group(2),
        cyclic_group(3),
        chain_semilattice(2),
        chain_semilattice(3),
        brandt(cyclic_group(1), 2),
        group_with_zero(cyclic_group(2)),
        symmetric_inverse_monoid(2),
    ]
