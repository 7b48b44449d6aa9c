import pytest

from sympspin import standard_symplectic_form


@pytest.fixture(scope="session")
def space2():
    return standard_symplectic_form(2)


@pytest.fixture(scope="session")
def space3():
    return standard_symplectic_form(3)
