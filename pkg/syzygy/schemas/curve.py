from enum import Enum
from math import lcm
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from syzygy.schemas.field import PrimeFieldConfig


class BundleKind(str, Enum):
    """Which linear system a section basis spans"""
    CANONICAL = "canonical"
    PARACANONICAL = "paracanonical"
    TWIST = "twist"
    ADJOINT_CANONICAL = "adjoint-canonical"
    CUSTOM = "custom"


class NodalRationalCurve(BaseModel):
    """P^1 with the points a_i and b_i glued to a node, all in the affine chart"""

    model_config = ConfigDict(frozen=True)

    field: PrimeFieldConfig
    genus: int = Field(..., ge=0)
    nodes: List[Tuple[int, int]] = Field(default_factory=list, description="Glued pairs (a_i, b_i)")
    seed: int = Field(default=0, description="Seed the nodes were drawn with")

    @model_validator(mode="after")
    def validate_nodes(self):
        """g node pairs, 2g pairwise distinct points"""
        if len(self.nodes) != self.genus:
            raise ValueError(f"Genus {self.genus} needs {self.genus} node pairs, got {len(self.nodes)}")
        points = [x % self.field.p for pair in self.nodes for x in pair]
        if len(set(points)) != len(points):
            raise ValueError("Node points are not pairwise distinct")
        return self

    @property
    def node_points(self) -> List[int]:
        return [x for pair in self.nodes for x in pair]


class NodalPlaneCurve(BaseModel):
    """Plane curve F = 0 of degree d with delta certified ordinary double points"""

    model_config = ConfigDict(frozen=True)

    field: PrimeFieldConfig
    degree: int = Field(..., ge=1)
    coefficients: List[int] = Field(..., description="F over the lex monomial basis of ternary forms of degree d")
    nodes: List[Tuple[int, int]] = Field(default_factory=list, description="Affine node coordinates (x, y)")
    sample_points: List[Tuple[int, int]] = Field(default_factory=list, description="Smooth affine points of F = 0")
    seed: int = 0

    @model_validator(mode="after")
    def validate_points(self):
        """Sample points distinct and disjoint from the nodes"""
        if len(set(self.sample_points)) != len(self.sample_points):
            raise ValueError("Sample points are not pairwise distinct")
        if set(self.sample_points) & set(self.nodes):
            raise ValueError("A sample point coincides with a node")
        return self

    @property
    def genus(self) -> int:
        return (self.degree - 1) * (self.degree - 2) // 2 - len(self.nodes)


class TorsionBundle(BaseModel):
    """Degree-0 bundle eta on a nodal rational curve, given by its gluing constants"""

    model_config = ConfigDict(frozen=True)

    field: PrimeFieldConfig
    level: int = Field(..., ge=0, description="l, or 0 for a general non-torsion bundle")
    constants: List[int] = Field(..., description="c_1 .. c_g in F_p^*")

    @model_validator(mode="after")
    def validate_constants(self):
        p = self.field.p
        for k, c in enumerate(self.constants):
            if c % p == 0:
                raise ValueError(f"Gluing constant c_{k + 1} is zero")
            if self.level > 0 and pow(c, self.level, p) != 1:
                raise ValueError(f"c_{k + 1}={c} is not an {self.level}-th root of unity")
        return self

    @property
    def is_trivial(self) -> bool:
        return all(c % self.field.p == 1 for c in self.constants)

    def order(self) -> Optional[int]:
        """Multiplicative order of eta = lcm of the orders of the c_i; None when not torsion"""
        if self.level == 0:
            return None
        p = self.field.p
        order = 1
        for c in self.constants:
            k = next(k for k in range(1, self.level + 1) if pow(c, k, p) == 1)
            order = lcm(order, k)
        return order


class LineBundleData(BaseModel):
    """
    A line bundle on a curve model as evaluation data: section_values[i, k]
    is the i-th section at the k-th sample point, up to one nonzero scalar per
    point.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    field: PrimeFieldConfig
    kind: BundleKind
    degree: int = Field(..., ge=0)
    genus: int = Field(..., ge=0)
    h0: int = Field(..., ge=1)
    zero_bound: int = Field(..., ge=0, description="Max zeros on the sample set of a nonzero section, per unit of q")
    sample_points: np.ndarray = Field(..., repr=False)
    section_values: np.ndarray = Field(..., repr=False)
    level: int = Field(default=1, description="Torsion level of the twisting bundle, 0 when general")
    constants: List[int] = Field(default_factory=list, description="Gluing constants used")
    label: str = ""

    @model_validator(mode="after")
    def validate_sections(self):
        if self.section_values.shape != (self.h0, len(self.sample_points)):
            raise ValueError(
                f"Section values of shape {self.section_values.shape} do not match h0={self.h0} and {len(self.sample_points)} points"
            )
        return self

    @property
    def sample_count(self) -> int:
        return len(self.sample_points)
