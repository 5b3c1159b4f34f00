"""Homogeneous ideal membership by exact linear algebra, with certificates.

The generator ideal is graded, so a homogeneous degree-D polynomial lies
in it iff it lies in the span of (monomial times generator) products of
degree D.  ``build_basis`` materializes those products for one degree and
row-reduces them over the rationals, remembering how each reduced row
combines the originals; ``membership`` then reduces a target against the
pivots and reads off an exact certificate

    target = sum_k coeff_poly[k] * generator[k] + residual

where residual = 0 exactly when the target is a member.  Everything is
Fraction arithmetic on sparse monomial-indexed rows; nothing is ever
rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import enumerate_compositions
from .fern import FernLabeling, z_fern
from .generators import DLinearSpec, JKey
from .identities import generator_set
from .inverse import coefficient_c, inverse_series
from .poly import DomainError, Poly, monomial_key


@dataclass
class BasisRow:
    key: JKey
    multiplier: tuple  # exponent tuple of the monomial factor
    product: Poly


@dataclass
class HomogeneousBasis:
    """Degree slice of the ideal: generator multiples plus echelon data."""

    spec: DLinearSpec
    degree: int
    rows: list = field(default_factory=list)
    _pivots: dict = field(default_factory=dict)  # monomial -> (rowvec, combo)

    def reduced_matrix(self) -> list:
        """The row-reduced rows as printable data, sorted by pivot."""
        out = []
        for pivot in sorted(self._pivots, key=monomial_key, reverse=True):
            rowvec, _ = self._pivots[pivot]
            out.append({
                "pivot": str(Poly(self.spec.n, {pivot: Fraction(1)})),
                "row": str(Poly(self.spec.n, rowvec)),
            })
        return out


def a_monomials_of_degree(n: int, degree: int) -> list:
    """Exponent tuples of all a-variable monomials with the given degree."""
    shift = 1 + n
    out = []
    for comp in enumerate_compositions(degree, n * n):
        out.append((0,) * shift + comp)
    return out


def build_basis(spec: DLinearSpec, degree: int) -> HomogeneousBasis:
    """Products (monomial of degree D - k*d) x (generator of degree k*d)."""
    if degree < 0:
        raise DomainError("degree must be nonnegative")
    d, n = spec.d, spec.n
    gens = generator_set(spec)
    basis = HomogeneousBasis(spec, degree)
    for key in gens.keys_sorted():
        if key.k == 0:
            continue
        gen_deg = key.k * d
        if gen_deg > degree:
            continue
        gen = gens[key]
        if gen.is_zero():
            continue
        for mult in a_monomials_of_degree(n, degree - gen_deg):
            product = Poly(n, {mult: Fraction(1)}) * gen
            basis.rows.append(BasisRow(key, mult, product))

    order = sorted(range(len(basis.rows)),
                   key=lambda i: (len(basis.rows[i].product.terms), i))
    for idx in order:
        residual, acc = _reduce(dict(basis.rows[idx].product.terms), basis._pivots)
        if residual:
            lead = max(residual, key=monomial_key)
            lc = residual[lead]
            vec = {m: c / lc for m, c in residual.items()}
            combo = {idx: 1 / lc}
            for i, c in acc.items():
                s = combo.get(i, 0) - c / lc
                if s:
                    combo[i] = s
                elif i in combo:
                    del combo[i]
            basis._pivots[lead] = (vec, combo)
    return basis


def _reduce(vec: dict, pivots: dict):
    """Split vec as residual + sum(acc[i] * original row i) using the pivots.

    Pivot rows are normalized to leading coefficient 1 and each remembers
    its own expression in original rows, so the returned decomposition is
    exact.
    """
    acc: dict = {}
    residual: dict = {}
    while vec:
        lead = max(vec, key=monomial_key)
        coeff = vec.pop(lead)
        hit = pivots.get(lead)
        if hit is None:
            residual[lead] = coeff
            continue
        rowvec, rowcombo = hit
        for m, c in rowvec.items():
            if m == lead:
                continue
            s = vec.get(m, 0) - coeff * c
            if s:
                vec[m] = s
            elif m in vec:
                del vec[m]
        for i, c in rowcombo.items():
            s = acc.get(i, 0) + coeff * c
            if s:
                acc[i] = s
            elif i in acc:
                del acc[i]
    return residual, acc


@dataclass
class MembershipCertificate:
    """target = sum of (generator coefficient) products + residual, exactly."""

    target: Poly
    combination: list  # (JKey, Poly) pairs, zero coefficients dropped
    residual: Poly

    @property
    def member(self) -> bool:
        return self.residual.is_zero()


def membership(spec: DLinearSpec, p: Poly,
               basis: HomogeneousBasis | None = None) -> MembershipCertificate:
    """Exact membership decision with a certificate; p must be homogeneous."""
    n = spec.n
    if p.n != n:
        raise DomainError("polynomial has the wrong ambient dimension")
    if not p.is_homogeneous_in_a():
        raise DomainError("membership needs a homogeneous a-variable polynomial")
    if p.is_zero():
        return MembershipCertificate(p, [], Poly.zero(n))

    degree = p.total_degree()
    if basis is None:
        basis = build_basis(spec, degree)
    elif basis.degree != degree or basis.spec != spec:
        raise DomainError("basis was built for a different degree slice")

    residual, combo = _reduce(dict(p.terms), basis._pivots)

    by_key: dict = {}
    for idx, c in combo.items():
        row = basis.rows[idx]
        add = Poly(n, {row.multiplier: c})
        by_key[row.key] = by_key.get(row.key, Poly.zero(n)) + add
    combination = [(key, poly) for key, poly in sorted(by_key.items())
                   if not poly.is_zero()]
    return MembershipCertificate(p, combination, Poly(n, residual))


def certificate_residual(spec: DLinearSpec, cert: MembershipCertificate) -> Poly:
    """Re-multiply a certificate: target - sum(coeff * generator) - residual."""
    gens = generator_set(spec)
    total = Poly.zero(spec.n)
    for key, coeff in cert.combination:
        total = total + coeff * gens[key]
    return cert.target - total - cert.residual


# -- fern lemma sweep ------------------------------------------------------


@dataclass
class FernMembershipReport:
    d: int
    entries: list = field(default_factory=list)  # (u0, u2, nu, certificate)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_fern_lemmas(d: int) -> FernMembershipReport:
    """Every length-2 fern weight in two variables lies in the ideal.

    One representative labeling per within-row content class suffices,
    since the weight depends on each row only through its content.
    """
    if d < 1:
        raise DomainError("d must be positive")
    n = 2
    spec = DLinearSpec(d, n)
    report = FernMembershipReport(d)
    basis = build_basis(spec, 2 * d)
    row = lambda ones: (1,) * ones + (2,) * (d - 1 - ones)
    for u0 in (1, 2):
        for u2 in (1, 2):
            for m1 in range(d):
                for m2 in range(d):
                    nu = (row(m1), row(m2))
                    z = z_fern(FernLabeling(d, n, 2, u0, u2, nu))
                    cert = membership(spec, z, basis)
                    report.entries.append((u0, u2, nu, cert))
                    if not cert.member:
                        report.failures.append((u0, u2, nu, str(cert.residual)))
                    elif not certificate_residual(spec, cert).is_zero():
                        report.failures.append((u0, u2, nu, "certificate mismatch"))
    return report


# -- inverse coefficient sweep ---------------------------------------------


@dataclass
class TheoremEntry:
    i: int
    alpha: tuple
    N: int
    exceptional: bool
    member: bool
    certificate: MembershipCertificate | None


@dataclass
class TheoremReport:
    d: int
    N_list: list
    entries: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def exceptional_entries(self) -> list:
        return [e for e in self.entries if e.exceptional]


def verify_main_theorem(d: int, N_list) -> TheoremReport:
    """Membership of every inverse-series coefficient at the listed orders.

    Orders below 2d come only from height-one trees and form the expected
    exceptional set: they are reported with their actual status but never
    asserted.  Orders 2d and above must all be members.
    """
    n = 2
    spec = DLinearSpec(d, n)
    N_list = sorted(set(N_list))
    for N in N_list:
        if N < d or N % d != 0:
            raise DomainError(f"order {N} is not a positive multiple of d")
    report = TheoremReport(d, N_list)
    series = inverse_series(spec, max(N_list))
    bases: dict = {}
    for N in N_list:
        exceptional = N < 2 * d
        leaves = 1 + (d - 1) * N // d
        if N not in bases:
            bases[N] = build_basis(spec, N)
        for i in (1, 2):
            for alpha in enumerate_compositions(leaves, n):
                c = coefficient_c(spec, i, alpha, N, series)
                if c.is_zero():
                    report.entries.append(TheoremEntry(i, alpha, N, exceptional, True, None))
                    continue
                cert = membership(spec, c, bases[N])
                report.entries.append(
                    TheoremEntry(i, alpha, N, exceptional, cert.member, cert)
                )
                if not certificate_residual(spec, cert).is_zero():
                    report.failures.append((i, alpha, N, "certificate mismatch"))
                elif not cert.member and not exceptional:
                    report.failures.append((i, alpha, N, str(cert.residual)))
    return report
