import pytest

from vmrange import fixtures


@pytest.fixture
def density3d():
    return fixtures.density_3d()


@pytest.fixture
def atoms4():
    return fixtures.atoms_1d_four()


@pytest.fixture
def atoms3():
    return fixtures.atoms_1d_three()
