"""Compositions, level labelings, subset permutations, last-rep indices.

All enumerations return tuples in a fixed deterministic order so that any
output derived from them is reproducible run to run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial

from .poly import DomainError

Composition = tuple  # n nonnegative parts
LevelLabeling = tuple  # k rows, each a (d-1)-tuple of labels in [1,n]


def composition_weight(alpha: Composition) -> int:
    return sum(alpha)


def enumerate_compositions(m: int, n: int) -> list:
    """All compositions of m into n nonnegative parts, lexicographically
    decreasing, so (m, 0, ..., 0) comes first."""
    if n < 1:
        raise DomainError("need at least one part")
    if m < 0:
        raise DomainError("negative weight")
    if n == 1:
        return [(m,)]
    out = []
    for first in range(m, -1, -1):
        for rest in enumerate_compositions(m - first, n - 1):
            out.append((first,) + rest)
    return out


def composition_sub(alpha: Composition, alpha1: Composition) -> Composition:
    """Pointwise difference; parts may not go negative."""
    if len(alpha) != len(alpha1):
        raise DomainError("length mismatch")
    diff = tuple(a - b for a, b in zip(alpha, alpha1))
    if any(p < 0 for p in diff):
        raise DomainError(f"{alpha1} is not dominated by {alpha}")
    return diff


def composition_sub_or_none(alpha: Composition, alpha1: Composition):
    try:
        return composition_sub(alpha, alpha1)
    except DomainError:
        return None


def labeling_content(nu: LevelLabeling, n: int) -> Composition:
    """The composition counting how often each label occurs in nu."""
    counts = [0] * n
    for row in nu:
        for entry in row:
            counts[entry - 1] += 1
    return tuple(counts)


def enumerate_level_labelings(alpha: Composition, k: int, d: int) -> list:
    """All k-level labelings (rows of width d-1 over [1,n]) with content alpha.

    Ordered lexicographically on the flattened label sequence; the count is
    the multinomial coefficient (k(d-1) choose alpha).
    """
    n = len(alpha)
    length = k * (d - 1)
    if composition_weight(alpha) != length:
        raise DomainError(
            f"content weight {composition_weight(alpha)} != k(d-1) = {length}"
        )
    rows_of = lambda seq: tuple(seq[i * (d - 1):(i + 1) * (d - 1)] for i in range(k))
    out = []
    counts = list(alpha)

    def rec(prefix):
        if len(prefix) == length:
            out.append(rows_of(tuple(prefix)))
            return
        for r in range(n):
            if counts[r]:
                counts[r] -= 1
                prefix.append(r + 1)
                rec(prefix)
                prefix.pop()
                counts[r] += 1

    rec([])
    return out


def count_level_labelings(alpha: Composition, k: int, d: int) -> int:
    length = k * (d - 1)
    total = factorial(length)
    for p in alpha:
        total //= factorial(p)
    return total


@dataclass(frozen=True)
class SubsetPermutation:
    """An ordered subset S of [1,n] with a permutation of S.

    ``sigma`` lists images elementwise: sigma[i] is where S[i] maps.  k = 0
    gives the empty subset with zero cycles (weight sign +1).
    """

    S: tuple
    sigma: tuple
    cycle_count: int

    @staticmethod
    def make(S: tuple, sigma: tuple) -> "SubsetPermutation":
        if sorted(set(S)) != list(S):
            raise DomainError("S must be strictly increasing and distinct")
        if sorted(sigma) != list(S):
            raise DomainError("sigma must permute S")
        return SubsetPermutation(S, sigma, cycle_count(S, sigma))

    def as_mapping(self) -> dict:
        return dict(zip(self.S, self.sigma))

    def image_of(self, s: int) -> int:
        return self.sigma[self.S.index(s)]


def cycle_count(S, sigma):
    """Number of orbits of the permutation given as parallel (S, images)."""
    mapping = dict(zip(S, sigma))
    seen = set()
    cycles = 0
    for start in S:
        if start in seen:
            continue
        cycles += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = mapping[cur]
    return cycles


def permutation_cycles(S: tuple, sigma: tuple) -> list:
    """Cycles as tuples, each starting at its smallest element, sorted."""
    mapping = dict(zip(S, sigma))
    seen = set()
    cycles = []
    for start in sorted(S):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = mapping[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = mapping[cur]
        cycles.append(tuple(cyc))
    return cycles


def enumerate_subset_permutations(n: int, k: int) -> list:
    """Every (S, sigma) with S a k-subset of [1,n]; binom(n,k) * k! pairs."""
    if not 0 <= k <= n:
        raise DomainError(f"k={k} outside [0,{n}]")
    out = []
    for S in itertools.combinations(range(1, n + 1), k):
        for images in itertools.permutations(S):
            out.append(SubsetPermutation.make(S, images))
    return out


def count_subset_permutations(n: int, k: int) -> int:
    return comb(n, k) * factorial(k)


@dataclass(frozen=True)
class LastRep:
    """Indices (l1, l2) of the final repetition in a label sequence.

    l1 is the largest index whose value reappears later; l2 is the unique
    later index carrying the same value.  Maximality of l1 forces every
    entry after l1 to be distinct, which pins l2.
    """

    l1: int
    l2: int


def last_rep_indices(lam) -> LastRep | None:
    """Last-rep indices of the sequence, or None when all entries differ."""
    for l1 in range(len(lam) - 2, -1, -1):
        for l2 in range(l1 + 1, len(lam)):
            if lam[l2] == lam[l1]:
                return LastRep(l1, l2)
    return None


def last_rep_is_valid(lam, rep: LastRep) -> bool:
    """Check the three defining conditions of a last-rep pair directly."""
    l1, l2 = rep.l1, rep.l2
    if not (0 <= l1 < l2 < len(lam)):
        return False
    if lam[l1] != lam[l2]:
        return False
    tail = lam[l1 + 1:]
    return len(set(tail)) == len(tail)
