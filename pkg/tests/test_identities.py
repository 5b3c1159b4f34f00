"""Both identities vanish; the two-ones relation is reported faithfully."""

from fractions import Fraction

import pytest

from jacverify.combinatorics import (
    composition_sub_or_none,
    enumerate_compositions,
    enumerate_level_labelings,
)
from jacverify.fern import FernLabeling, z_fern
from jacverify.generators import DLinearSpec, JKey
from jacverify.identities import (
    IdentityInstance,
    cayley_hamilton_numeric,
    check_relation_2_1s,
    generator_set,
    identity1_lhs,
    identity2_lhs,
    relation_report,
)
from jacverify.poly import DomainError, Poly, a_


def _fern(d, n, u0, un, nu):
    return z_fern(FernLabeling(d, n, len(nu), u0, un, nu))


def test_identity1_d1_matches_trace_expansion():
    """At degree 1 the sum telescopes matrix powers against minor sums."""
    n = 2
    gens = generator_set(DLinearSpec(1, n))
    for u0 in (1, 2):
        for un in (1, 2):
            inst = IdentityInstance("identity1", 1, n, (0, 0), u0, un)
            direct = Poly.zero(n)
            for k in range(n + 1):
                power = _fern(1, n, u0, un, ((),) * (n - k))
                direct = direct + power * gens[JKey(k, (0, 0))]
            assert identity1_lhs(inst) == direct
            assert direct.is_zero()


def test_identity1_d2_vanishes():
    inst = IdentityInstance("identity1", 2, 2, (2, 0), 1, 1)
    assert identity1_lhs(inst).is_zero()


def test_identity1_partial_sum_is_minus_top_generator():
    """Dropping the k=n term leaves minus the full-subset generator."""
    d, n = 2, 2
    gens = generator_set(DLinearSpec(d, n))
    for alpha in enumerate_compositions(n * (d - 1), n):
        for u0 in (1, 2):
            for un in (1, 2):
                partial = Poly.zero(n)
                for k in range(n):
                    for alpha1 in enumerate_compositions(k * (d - 1), n):
                        rem = composition_sub_or_none(alpha, alpha1)
                        if rem is None:
                            continue
                        for nu in enumerate_level_labelings(rem, n - k, d):
                            partial = partial + _fern(d, n, u0, un, nu) * gens[JKey(k, alpha1)]
                expected = Poly.zero(n)
                if u0 == un:
                    expected = -gens[JKey(n, alpha)]
                assert partial == expected


def test_identity2_reference_expansion():
    """The pinned instance splits into the binomial fern term plus one
    generator multiple, and the two cancel exactly."""
    d, n = 2, 2
    inst = IdentityInstance("identity2", d, n, (2, 0), 1, 2, (1,))
    gens = generator_set(DLinearSpec(d, n))
    k0 = _fern(d, n, 1, 2, ((1,), (1,)))  # binom(1,1) = 1 labeling survives
    k1 = a_(n, 1, 2) * a_(n, 1, 1) * gens[JKey(1, (1, 0))]
    assert identity2_lhs(inst) == k0 + k1
    assert (k0 + k1).is_zero()


def test_identity2_more_instances_vanish():
    assert identity2_lhs(
        IdentityInstance("identity2", 2, 2, (1, 1), 1, 2, (2,))
    ).is_zero()
    assert identity2_lhs(
        IdentityInstance("identity2", 3, 2, (2, 2), 2, 1, (1, 2))
    ).is_zero()


def test_identity2_preconditions():
    with pytest.raises(DomainError):
        IdentityInstance("identity2", 2, 2, (2, 0), 1, 1, (1,))
    with pytest.raises(DomainError):
        IdentityInstance("identity2", 2, 2, (2, 0), 1, 2, None)
    with pytest.raises(DomainError):
        IdentityInstance("identity1", 2, 2, (1, 0), 1, 1)


def test_identity1_summands_homogeneous():
    d, n = 2, 2
    gens = generator_set(DLinearSpec(d, n))
    for alpha in enumerate_compositions(n * (d - 1), n):
        for k in range(n + 1):
            for alpha1 in enumerate_compositions(k * (d - 1), n):
                rem = composition_sub_or_none(alpha, alpha1)
                if rem is None:
                    continue
                for nu in enumerate_level_labelings(rem, n - k, d):
                    summand = _fern(d, n, 1, 2, nu) * gens[JKey(k, alpha1)]
                    for m in summand.terms:
                        assert sum(m) == n * d


def test_relation_d2_reports_both_leaf_labels():
    diffs = {v: check_relation_2_1s(2, (1, 0), (1, 0), 1, v) for v in (1, 2)}
    for diff in diffs.values():
        if not diff.is_zero():
            assert diff.is_homogeneous_in_a()
            assert {sum(m) for m in diff.terms} == {4}


@pytest.mark.parametrize("d", [2, 3])
def test_relation_grid_structure(d):
    report = relation_report(d)
    expected = sum(1 for a1 in enumerate_compositions(d - 1, 2) if a1[0] >= 1) \
        * len(enumerate_compositions(d - 1, 2)) * 2 * 2
    assert len(report.entries) == expected
    assert report.structurally_ok


def test_relation_rejects_bad_inputs():
    with pytest.raises(DomainError):
        check_relation_2_1s(2, (0, 1), (1, 0), 1, 1)
    with pytest.raises(DomainError):
        check_relation_2_1s(2, (1, 0), (2, 0), 1, 1)


def test_cayley_hamilton_hand_matrix():
    # A = [[1,2],[3,4]]: A^2 - 5A - 2I = 0 since tr = 5 and det = -2
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    A2 = [[sum(A[i][k] * A[k][j] for k in range(2)) for j in range(2)]
          for i in range(2)]
    for i in range(2):
        for j in range(2):
            residual = A2[i][j] - 5 * A[i][j] - (2 if i == j else 0)
            assert residual == 0


def test_cayley_hamilton_numeric_small():
    assert cayley_hamilton_numeric(1, 5, seed=1).ok
    assert cayley_hamilton_numeric(2, 10, seed=2).ok
    report = cayley_hamilton_numeric(4, 3, seed=3)
    assert report.ok and not report.failures
