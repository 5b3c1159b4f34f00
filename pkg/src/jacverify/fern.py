"""Fern weight elements.

A fern of length k is a path v_0, ..., v_k in which every path vertex
v_0, ..., v_{k-1} carries d-1 extra leaf children.  Given a root label u0,
a leftmost-leaf label uk and a level labeling nu assigning labels to the
extra leaves, the fern weight sums, over all labelings of the interior
path vertices, the product of one a[parent, child] factor per edge:

    z = sum over lam(1..k-1) in [1,n]  of
        prod_{i=1..k} ( a[lam(i-1), lam(i)] * prod_j a[lam(i-1), nu(i,j)] )

with lam(0) = u0 and lam(k) = uk fixed.  The empty path (k = 0) carries
weight 1 when u0 = uk and 0 otherwise; that convention is what makes the
degree-1 specialization reduce to powers of the symbolic matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .poly import DomainError, Poly, a_


@dataclass(frozen=True)
class FernLabeling:
    """Root/leaf labels and level labeling of one fern."""

    d: int
    n: int
    k: int
    u0: int
    uk: int
    nu: tuple

    def __post_init__(self):
        if self.d < 1 or self.n < 1 or self.k < 0:
            raise DomainError("need d, n >= 1 and k >= 0")
        if not (1 <= self.u0 <= self.n and 1 <= self.uk <= self.n):
            raise DomainError("root and leaf labels must lie in [1,n]")
        if len(self.nu) != self.k:
            raise DomainError(f"labeling has {len(self.nu)} rows, expected {self.k}")
        for row in self.nu:
            if len(row) != self.d - 1:
                raise DomainError("every level must have width d-1")
            if any(not 1 <= e <= self.n for e in row):
                raise DomainError("labels must lie in [1,n]")


def z_fern(fl: FernLabeling) -> Poly:
    """The fern weight element as a polynomial in the a-variables."""
    return _path_sum(fl.d, fl.n, fl.u0, fl.uk, fl.nu)


def _path_sum(d: int, n: int, u0: int, uk: int, nu) -> Poly:
    k = len(nu)
    if k == 0:
        return Poly.one(n) if u0 == uk else Poly.zero(n)
    total = Poly.zero(n)
    for interior in itertools.product(range(1, n + 1), repeat=k - 1):
        lam = (u0,) + interior + (uk,)
        term = Poly.one(n)
        for i in range(1, k + 1):
            term = term * a_(n, lam[i - 1], lam[i])
            for lab in nu[i - 1]:
                term = term * a_(n, lam[i - 1], lab)
        total = total + term
    return total


def z_fern_is_homogeneous(fl: FernLabeling) -> bool:
    """True iff the fern weight is zero or homogeneous of a-degree k*d."""
    z = z_fern(fl)
    if z.is_zero():
        return True
    degs = {sum(m) for m in z.terms}
    return degs == {fl.k * fl.d} and z.is_homogeneous_in_a()
