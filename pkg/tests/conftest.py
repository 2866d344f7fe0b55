from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from r2forms import BinaryForm, ProblemInstance, Region

settings.register_profile("default", deadline=None, max_examples=80)
settings.load_profile("default")

REPO_ROOT = Path(__file__).resolve().parents[1]
GOLDEN_PATH = REPO_ROOT / "instances" / "golden.json"


def unit_square(c: float = 8.0) -> Region:
    F = Fraction
    return Region(((F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))), c)


def shifted_square(c: float = 8.0) -> Region:
    F = Fraction
    return Region(((F(1), F(1)), (F(2), F(1)), (F(2), F(2)), (F(1), F(2))), c)


@pytest.fixture(scope="session")
def golden_path():
    return GOLDEN_PATH


@pytest.fixture(scope="session")
def golden():
    L = BinaryForm(1, (1, 0))
    C = BinaryForm(3, (1, 0, 1, 1))
    return ProblemInstance(L, C, shifted_square())


# Two perturbed form pairs used by the density consistency suites; the cubics
# are irreducible (no rational roots) but that is not required for densities.
PERTURBED_FORMS = [
    (BinaryForm(1, (1, 1)), BinaryForm(3, (1, 0, -1, 1))),
    (BinaryForm(1, (2, 3)), BinaryForm(3, (2, 0, 1, 1))),
]
