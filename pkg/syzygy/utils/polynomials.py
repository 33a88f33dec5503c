"""
Univariate and ternary polynomial helpers over F_p.

Coefficient vectors are numpy int64 arrays with entries below p < 2^26, so a
single product fits comfortably in int64; every helper reduces after each
multiplication.
"""
from typing import List, Sequence, Tuple

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_from_int_poly

Exponent = Tuple[int, ...]


def power_table(points, top: int, p: int) -> np.ndarray:
    """table[k] = points^k mod p for k = 0..top"""
    points = np.asarray(points, dtype=np.int64) % p
    table = np.ones((top + 1,) + points.shape, dtype=np.int64)
    for k in range(1, top + 1):
        table[k] = table[k - 1] * points % p
    return table


def evaluate(coefficients, points, p: int) -> np.ndarray:
    """Horner evaluation of sum_k c_k t^k at every point"""
    points = np.asarray(points, dtype=np.int64) % p
    values = np.zeros(points.shape, dtype=np.int64)
    for c in reversed(list(coefficients)):
        values = (values * points + int(c)) % p
    return values


def evaluation_matrix(points, degree: int, p: int) -> np.ndarray:
    """Rows t_k^0 .. t_k^degree, one row per point"""
    return power_table(points, degree, p).T.copy()


def product_of_differences(value: int, roots: Sequence[int], p: int) -> int:
    """prod (value - root) mod p"""
    result = 1
    for root in roots:
        result = result * ((value - root) % p) % p
    return result


def affine_roots(coefficients: Sequence[int], p: int) -> List[int]:
    """Distinct roots in F_p of sum_k c_k y^k, via factorisation over GF(p)"""
    dense = gf_from_int_poly([int(c) % p for c in reversed(list(coefficients))], p)
    if len(dense) < 2:
        return []
    _, factors = gf_factor(ZZ.map(dense), p, ZZ)
    roots = []
    for factor, _ in factors:
        if len(factor) == 2:
            roots.append(int(-factor[1]) % p)
    return sorted(roots)


def evaluate_forms(forms: np.ndarray, monomials: Sequence[Exponent], points, p: int) -> np.ndarray:
    """
    Values of ternary forms at affine points (x, y, 1).

    forms has one row of coefficients per form over `monomials`; points is an
    (N, 2) array. Returns a (len(forms), N) array.
    """
    points = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    top = max((max(m[0], m[1]) for m in monomials), default=0)
    xs = power_table(points[:, 0], top, p)
    ys = power_table(points[:, 1], top, p)
    monomial_values = np.stack([xs[a] * ys[b] % p for a, b, _ in monomials]) if monomials else np.zeros((0, len(points)), dtype=np.int64)
    forms = np.asarray(forms, dtype=np.int64) % p
    values = np.zeros((forms.shape[0], points.shape[0]), dtype=np.int64)
    for k in range(len(monomials)):
        values = (values + np.outer(forms[:, k], monomial_values[k])) % p
    return values


def form_derivative_rows(monomials: Sequence[Exponent], point: Tuple[int, int], p: int) -> np.ndarray:
    """
    Rows of the linear functionals F -> F_x(P), F_y(P), F_z(P) at P = (x, y, 1),
    over the coefficient vector of F.
    """
    x, y = point
    rows = np.zeros((3, len(monomials)), dtype=np.int64)
    for k, (a, b, c) in enumerate(monomials):
        if a:
            rows[0, k] = a * pow(x, a - 1, p) * pow(y, b, p) % p
        if b:
            rows[1, k] = b * pow(x, a, p) * pow(y, b - 1, p) % p
        if c:
            rows[2, k] = c * pow(x, a, p) * pow(y, b, p) % p
    return rows


def affine_derivatives(coefficients: Sequence[int], monomials: Sequence[Exponent], point: Tuple[int, int], p: int) -> dict:
    """f, f_x, f_y, f_xx, f_xy, f_yy of f(x, y) = F(x, y, 1) at a point"""
    x, y = point
    values = dict.fromkeys(("f", "fx", "fy", "fxx", "fxy", "fyy"), 0)

    def term(coeff: int, a: int, b: int) -> int:
        if a < 0 or b < 0:
            return 0
        return coeff * pow(x, a, p) * pow(y, b, p) % p

    for coeff, (a, b, _) in zip(coefficients, monomials):
        coeff = int(coeff) % p
        if not coeff:
            continue
        values["f"] += term(coeff, a, b)
        values["fx"] += term(coeff * a, a - 1, b)
        values["fy"] += term(coeff * b, a, b - 1)
        values["fxx"] += term(coeff * a * (a - 1), a - 2, b)
        values["fxy"] += term(coeff * a * b, a - 1, b - 1)
        values["fyy"] += term(coeff * b * (b - 1), a, b - 2)
    return {key: value % p for key, value in values.items()}


def line_restriction(coefficients: Sequence[int], monomials: Sequence[Exponent], x: int, degree: int, p: int) -> List[int]:
    """Coefficients in y (low to high) of f(x, y) for a fixed x"""
    restricted = [0] * (degree + 1)
    for coeff, (a, b, _) in zip(coefficients, monomials):
        coeff = int(coeff) % p
        if coeff:
            restricted[b] = (restricted[b] + coeff * pow(x, a, p)) % p
    return restricted
