"""
Shared fixtures: prime fields at torsion levels 1, 2 and 3
"""
import pytest

from syzygy.schemas.field import PrimeFieldConfig
from syzygy.schemas.ring import RingSpec
from syzygy.services.field_service import field_service


@pytest.fixture(scope="session")
def field() -> PrimeFieldConfig:
    return field_service.prime_field(level=1)


@pytest.fixture(scope="session")
def field_level2() -> PrimeFieldConfig:
    return field_service.prime_field(level=2)


@pytest.fixture(scope="session")
def field_level3() -> PrimeFieldConfig:
    return field_service.prime_field(level=3)


@pytest.fixture(scope="session")
def small_field() -> PrimeFieldConfig:
    return PrimeFieldConfig(p=101)


@pytest.fixture
def p4_ring(field) -> RingSpec:
    return RingSpec(num_vars=4, field=field)
