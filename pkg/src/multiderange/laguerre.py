"""Scaled generalized Laguerre polynomials with exact integer coefficients.

scaled_laguerre(k) is k! times the generalized Laguerre polynomial with
superscript a-1:

    sum_{i=0}^{k} (-1)^i C(k, i) (a+i)(a+i+1)...(a+k-1) x^i

The k! scaling keeps every x-coefficient an integer polynomial in a, and is
exactly the per-block factorial prefactor of the derangement enumerator, so
it cancels by construction downstream.
"""

from __future__ import annotations

from functools import cache
from math import comb
from typing import Sequence

from .polys import ALPHA_ONE, AlphaPoly, XPoly


@cache
def scaled_laguerre(k: int) -> XPoly:
    """k! * L_k with superscript a-1, as an XPoly.

    deg_x = k, the x^k coefficient is (-1)^k, and the constant term is the
    rising factorial a(a+1)...(a+k-1).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    # tails[i] = (a+i)(a+i+1)...(a+k-1), built down from the empty product
    tails = [ALPHA_ONE] * (k + 1)
    for i in range(k - 1, -1, -1):
        tails[i] = AlphaPoly((i, 1)) * tails[i + 1]
    coeffs = []
    for i in range(k + 1):
        sign = -1 if i % 2 else 1
        coeffs.append(tails[i] * (sign * comb(k, i)))
    return XPoly(coeffs)


def laguerre_product(shape: Sequence[int]) -> XPoly:
    """Product of scaled_laguerre(k) over the blocks of a shape.

    Zero blocks contribute a factor 1.  Factors are multiplied in
    nondecreasing k to keep intermediate degrees balanced; the result is
    independent of order.
    """
    ks = sorted(k for k in shape if k)
    if any(k < 0 for k in shape):
        raise ValueError("shape entries must be nonnegative")
    out = XPoly((ALPHA_ONE,))
    for k in ks:
        out = out * scaled_laguerre(k)
    return out
