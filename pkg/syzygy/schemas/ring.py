from math import comb
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from syzygy.schemas.field import PrimeFieldConfig


class RingSpec(BaseModel):
    """S = F_p[x_0, ..., x_r]"""

    model_config = ConfigDict(frozen=True)

    num_vars: int = Field(..., ge=1, description="Number of variables r+1")
    field: PrimeFieldConfig = Field(..., description="Coefficient field")

    @property
    def r(self) -> int:
        return self.num_vars - 1

    @property
    def p(self) -> int:
        return self.field.p

    def monomial_count(self, degree: int) -> int:
        if degree < 0:
            return 0
        return comb(degree + self.r, self.r)


class IdealGenerator(BaseModel):
    """A homogeneous form given by its coefficients on the lex monomial basis of its degree"""

    model_config = ConfigDict(frozen=True)

    degree: int = Field(..., ge=0, description="Degree of the form")
    coefficients: List[int] = Field(..., description="Coefficients over monomial_basis(ring, degree)")


class HomogeneousIdeal(BaseModel):
    """Ideal given by homogeneous generators"""

    model_config = ConfigDict(frozen=True)

    ring: RingSpec
    generators: List[IdealGenerator] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_generators(self):
        """Each generator is nonzero and has one coefficient per monomial of its degree"""
        for k, gen in enumerate(self.generators):
            expected = self.ring.monomial_count(gen.degree)
            if len(gen.coefficients) != expected:
                raise ValueError(
                    f"Generator {k} of degree {gen.degree} has {len(gen.coefficients)} coefficients, expected {expected}"
                )
            if all(c % self.ring.p == 0 for c in gen.coefficients):
                raise ValueError(f"Generator {k} is zero mod {self.ring.p}")
        return self

    @property
    def min_degree(self) -> int:
        if not self.generators:
            return 0
        return min(gen.degree for gen in self.generators)

