from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime


class PrimeFieldConfig(BaseModel):
    """The prime field F_p and a fixed primitive root of unity of order required_root_order"""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=2, lt=2**26, description="Prime modulus (below 2^26 so dot products stay exact in int64)")
    required_root_order: int = Field(default=1, ge=1, description="Torsion level l the field must support")
    zeta: int = Field(default=1, description="Primitive l-th root of unity in F_p")

    @model_validator(mode="after")
    def validate_field(self):
        """Validate primality, the congruence p = 1 mod l and the order of zeta"""
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        level = self.required_root_order
        if level > 1 and (self.p - 1) % level != 0:
            raise ValueError(f"p={self.p} is not 1 mod {level}; no primitive {level}-th roots of unity")
        if pow(self.zeta, level, self.p) != 1:
            raise ValueError(f"zeta={self.zeta} does not satisfy zeta^{level} = 1")
        for k in range(1, level):
            if pow(self.zeta, k, self.p) == 1:
                raise ValueError(f"zeta={self.zeta} has order {k} < {level}")
        return self

    def reduce(self, value: int) -> int:
        return value % self.p

    def inverse(self, value: int) -> int:
        return pow(value % self.p, -1, self.p)

    def root_of_unity(self, power: int) -> int:
        """zeta^power"""
        return pow(self.zeta, power % self.required_root_order, self.p)
