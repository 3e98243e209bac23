import pytest

from ellnet import EllipticNet, ReducedNet, WeierstrassCurve, rational_point

# Fixture curves and generators; the table convention lists Q before P.
E1_COEFFS = (0, 0, 0, 0, -11)
E2_COEFFS = (0, 1, 7, 28, 0)
P1 = rational_point(3, 4)
Q1 = rational_point(15, 58)
P2 = rational_point(0, 0)
Q2 = rational_point(1, 3)


@pytest.fixture(scope="session")
def e1():
    return WeierstrassCurve(*E1_COEFFS)


@pytest.fixture(scope="session")
def e2():
    return WeierstrassCurve(*E2_COEFFS)


@pytest.fixture(scope="session")
def net1(e1):
    """E1 net in table orientation (Q, P); shared memo across tests."""
    return EllipticNet(e1, (Q1, P1))


@pytest.fixture(scope="session")
def net1_pq(e1):
    """E1 net in the symmetry-example orientation (P, Q)."""
    return EllipticNet(e1, (P1, Q1))


@pytest.fixture(scope="session")
def net2(e2):
    return EllipticNet(e2, (Q2, P2))


@pytest.fixture(scope="session")
def reduced1_pq(net1_pq):
    """Cached reductions of the (P, Q) net at the symmetry-example primes."""
    return {p: ReducedNet(net1_pq, p) for p in (7, 11, 19, 61, 89)}


@pytest.fixture(scope="session")
def symmetry_data(reduced1_pq):
    from ellnet import build_symmetry_data

    return {p: build_symmetry_data(net) for p, net in reduced1_pq.items()}
