"""
Prime field selection
"""
import logging
from typing import Optional

from sympy import isprime, nextprime
from sympy.ntheory import primitive_root

from syzygy.core.config import defaults
from syzygy.core.errors import UsageError
from syzygy.schemas.field import PrimeFieldConfig

logger = logging.getLogger(__name__)

MAX_PRIME = 1 << 26


class FieldService:
    """Builds PrimeFieldConfig instances for a torsion level"""

    def default_prime(self, level: int = 1) -> int:
        """Smallest prime >= prime_floor with p = 1 mod level"""
        candidate = defaults.prime_floor - 1
        while True:
            candidate = nextprime(candidate)
            if (candidate - 1) % level == 0:
                return int(candidate)

    def prime_field(self, level: int = 1, prime: Optional[int] = None) -> PrimeFieldConfig:
        """Field for a session at torsion level `level` (1 for canonical work)"""
        if level < 1:
            raise UsageError(f"Torsion level must be >= 1, got {level}")
        if prime is None:
            prime = self.default_prime(level)
        elif prime >= MAX_PRIME:
            raise UsageError(f"--prime {prime} must be below 2^26")
        elif not isprime(prime):
            raise UsageError(f"--prime {prime} is not prime")
        elif level > 1 and (prime - 1) % level != 0:
            raise UsageError(f"--prime {prime} is not 1 mod {level}")

        zeta = 1
        if level > 1:
            zeta = pow(int(primitive_root(prime)), (prime - 1) // level, prime)
        logger.debug(f"Prime field F_{prime} with level {level}, zeta={zeta}")
        return PrimeFieldConfig(p=prime, required_root_order=level, zeta=zeta)


field_service = FieldService()
