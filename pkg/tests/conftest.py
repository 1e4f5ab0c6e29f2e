import numpy as np
import pytest

from flagcurv import LieAlgebraSpec


def su2_tensor():
    c = np.zeros((3, 3, 3))
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        c[i, j, k] = 1.0
        c[j, i, k] = -1.0
    return c


def heisenberg_tensor():
    c = np.zeros((3, 3, 3))
    c[0, 1, 2] = 1.0
    c[1, 0, 2] = -1.0
    return c


def change_basis(c, T):
    """Structure tensor in the basis f_a = sum_i T[a, i] e_i."""
    # [f_a, f_b] in old coordinates, then re-express in the f-basis.
    old = np.einsum("ai,bj,ijk->abk", T, T, c)
    return np.einsum("abk,kc->abc", old, np.linalg.inv(T))


@pytest.fixture
def su2():
    return LieAlgebraSpec(3, su2_tensor())


@pytest.fixture
def heisenberg():
    return LieAlgebraSpec(3, heisenberg_tensor())


@pytest.fixture
def abelian3():
    return LieAlgebraSpec(3, np.zeros((3, 3, 3)))


@pytest.fixture
def su2_plus_r():
    c = np.zeros((4, 4, 4))
    c[:3, :3, :3] = su2_tensor()
    return LieAlgebraSpec(4, c)


@pytest.fixture
def su2_u1():
    """su(2) in the adapted basis (e3, e1, e2): h = span of the first vector."""
    c = np.zeros((3, 3, 3))
    for i, j, k, v in [(1, 2, 0, 1.0), (0, 1, 2, 1.0), (0, 2, 1, -1.0)]:
        c[i, j, k] = v
        c[j, i, k] = -v
    return LieAlgebraSpec(3, c)


@pytest.fixture
def su2_double():
    c = np.zeros((6, 6, 6))
    c[:3, :3, :3] = su2_tensor()
    c[3:, 3:, 3:] = su2_tensor()
    return LieAlgebraSpec(6, c)
