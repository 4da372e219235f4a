import pytest

from kpgm.model import MoleculeSpec


@pytest.fixture(scope="session")
def null_spec():
    """Zero-coupling system: both wells switched off."""
    return MoleculeSpec(name="null", De=0.0, re=1.0, alpha=1.0, D=0.0, b=0.0)


@pytest.fixture(scope="session")
def derived_spec():
    """Standard generic fixture used for frozen oracle values."""
    return MoleculeSpec(name="derived", De=1.0, re=1.5, alpha=0.4, D=0.5, b=1.2)


@pytest.fixture(scope="session")
def kratzer_spec():
    """Kratzer-only well (D = 0): the primary closed form is exact here."""
    return MoleculeSpec(name="kratzer", De=5.0, re=1.2, alpha=0.6, D=0.0, b=0.0)


@pytest.fixture(scope="session")
def deep_spec():
    """Deeper generic well holding three bound states at ell = 0 and 1."""
    return MoleculeSpec(name="deep", De=5.0, re=1.2, alpha=0.6, D=0.5, b=0.8)
