"""Shift representatives of module classes and their verification.

Attached to a pair (I, phi) of an inertia subgroup and a Frobenius coset
are two group-ring lattices.  The forward representative lives over a
cyclic group and is the integral ideal generated by the inertia norm
N_I and the element 1 - lift(phi)^{-1} + #I; it depends on the chosen
coset lift.  The backward representative exists over any finite abelian
group: with nu = N_I / #I it is spanned by nu and 1 - nu*phi^{-1}
inside (1/#I) Z[G], and is exactly independent of the lift because
nu absorbs translation by I.

The verification routines certify, with exact integer arithmetic, the
three structural facts the representatives rest on: the kernel of
(a, b) |-> a (tau - 1) + b (1 - phi^{-1} + #I) has the expected two
generators over the group ring, the backward representative sits in an
extension of the full group ring by the norm line, and two pairs with
the same inertia and decomposition data are related by multiplication
by an explicit unit, checked p-adically at a precision that certifies
exact equality of local lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import intmat as im
from .abelian import (
    FinAbGroup,
    GroupElement,
    Subgroup,
    cyclic_subgroup,
    prime_factors,
    quotient_data,
)
from .errors import (
    ContainmentError,
    ParentMismatchError,
    PrecisionError,
    ScopeError,
    UnitNotFoundError,
)
from .grouprings import GroupRing, GroupRingElem, IdealLattice


@dataclass(frozen=True)
class ShiftRep:
    """One lattice representative of the class of a pair (I, phi).

    direction +1 is the forward (ideal) representative and records the
    lift actually used in frob; direction -1 is the backward
    representative, for which frob is any representative of the coset.
    """

    direction: int
    inertia: Subgroup
    frob: GroupElement
    lattice: IdealLattice


def canonical_lift(inertia: Subgroup, elem: GroupElement) -> GroupElement:
    """Lexicographically smallest representative of elem + inertia."""
    if inertia.group is not elem.group:
        raise ParentMismatchError("subgroup and element of different groups")
    best = None
    for t in inertia.elements():
        cand = elem + t
        if best is None or cand.coords < best.coords:
            best = cand
    return best


def forward_rep(
    ring: GroupRing,
    inertia: Subgroup,
    frob: GroupElement,
    lift: GroupElement | None = None,
) -> ShiftRep:
    """Forward representative: the ideal (N_I, 1 - lift^{-1} + #I).

    Only defined over cyclic groups; the lattice genuinely depends on
    the chosen lift of the coset frob + I, so the lift used is returned.
    Default lift: the canonical (lex-least) coset representative.
    """
    group = ring.group
    if not group.is_cyclic:
        raise ScopeError("forward representative needs a cyclic group")
    if lift is None:
        lift = canonical_lift(inertia, frob)
    elif not inertia.contains(lift - frob):
        raise ContainmentError("lift is not in the coset of frob")
    n_i = ring.norm_element(inertia)
    gtilde = ring.one() - ring.delta(-lift) + ring.one().scale(inertia.order)
    lat = IdealLattice.from_elements(ring, [n_i, gtilde])
    return ShiftRep(1, inertia, lift, lat)


def backward_rep(
    ring: GroupRing, inertia: Subgroup, frob: GroupElement
) -> ShiftRep:
    """Backward representative: the lattice (nu, 1 - nu phi^{-1}) with
    nu = N_I / #I, inside (1/#I) Z[G].  Independent of the coset lift;
    inertia must be nontrivial."""
    if inertia.is_trivial:
        raise ScopeError("backward representative needs nontrivial inertia")
    nu = ring.norm_element(inertia).scale(Fraction(1, inertia.order))
    w2 = ring.one() - nu * ring.delta(-frob)
    lat = IdealLattice.from_elements(ring, [nu, w2])
    return ShiftRep(-1, inertia, frob, lat)


def _min_generator(sub: Subgroup) -> GroupElement:
    # deterministic: first full-order element in enumeration order
    n = sub.order
    for e in sub.elements():
        if e.order() == n:
            return e
    raise ScopeError("subgroup is not cyclic")


@dataclass(frozen=True)
class KernelReport:
    kernel_matches: bool
    projection_matches: bool

    @property
    def ok(self) -> bool:
        return self.kernel_matches and self.projection_matches


def verify_kernel_presentation(
    ring: GroupRing,
    inertia: Subgroup,
    frob: GroupElement,
    lift: GroupElement | None = None,
) -> KernelReport:
    """Certify the two-generator presentation of the relation kernel.

    For tau a generator of (cyclic, nontrivial) inertia and
    g = 1 - lift^{-1} + #I, the kernel of (a, b) |-> a (tau - 1) + b g
    inside Z[G]^2 is claimed to be generated over the group ring by
    (N_I, 0) and (g, 1 - tau).  Both that equality and the claim that
    the first projection of the kernel is the ideal (N_I, g) are checked
    as exact lattice identities.
    """
    if inertia.is_trivial or not inertia.is_cyclic:
        raise ScopeError("inertia must be nontrivial cyclic")
    if lift is None:
        lift = canonical_lift(inertia, frob)
    elif not inertia.contains(lift - frob):
        raise ContainmentError("lift is not in the coset of frob")
    n = ring.n
    tau = _min_generator(inertia)
    t_minus_1 = ring.delta(tau) - ring.one()
    n_i = ring.norm_element(inertia)
    g = ring.one() - ring.delta(-lift) + ring.one().scale(inertia.order)
    stacked = ring.mult_matrix(t_minus_1) + ring.mult_matrix(g)
    kernel = im.left_kernel(stacked)
    # claimed generators, closed under translation by the whole group
    one_minus_tau = ring.one() - ring.delta(tau)
    claimed = []
    for gamma in ring.elems:
        a = n_i.translate(gamma)
        claimed.append(list(a.coeffs) + [0] * n)
        b1 = g.translate(gamma)
        b2 = one_minus_tau.translate(gamma)
        claimed.append(list(b1.coeffs) + list(b2.coeffs))
    kernel_matches = im.lattice_eq(kernel, claimed)
    proj = [row[:n] for row in kernel]
    ideal = IdealLattice.from_elements(ring, [n_i, g])
    assert ideal.den == 1
    projection_matches = im.lattice_eq(proj, [list(r) for r in ideal.basis])
    return KernelReport(kernel_matches, projection_matches)


def _rational_solve_left(rows, target):
    """The unique rational x with x @ rows = target, for rows of full
    row rank; None when the system is inconsistent."""
    k = len(rows)
    width = len(target)
    # columns of the transposed system, eliminated with fractions
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])]
           for j in range(width)]
    pivots = []
    r = 0
    for c in range(k):
        piv = None
        for i in range(r, width):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pr = aug[r]
        inv = Fraction(1) / pr[c]
        aug[r] = [v * inv for v in pr]
        for i in range(width):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if r < k:
        return None
    for i in range(r, width):
        if aug[i][k]:
            return None
    x = [Fraction(0)] * k
    for row_idx, c in enumerate(pivots):
        x[c] = aug[row_idx][k]
    return x


@dataclass(frozen=True)
class ExtensionReport:
    image_matches: bool
    preimage_is_standard: bool
    embedding_primitive: bool

    @property
    def ok(self) -> bool:
        return (
            self.image_matches
            and self.preimage_is_standard
            and self.embedding_primitive
        )


def verify_extension_sequence(
    ring: GroupRing, inertia: Subgroup, frob: GroupElement
) -> ExtensionReport:
    """Certify that the backward representative L sits in the same
    extension as the full group ring.

    With nu = N_I/#I and pi the projection of Q[G] killing exactly
    nu Q[G], three exact facts are checked: pi(L) = pi(Z[G]); the
    preimage of L under multiplication by nu on Q[G/I] is exactly
    Z[G/I]; and the coordinates of the nu-image inside L form a
    primitive full-rank sublattice (all Smith invariants 1).
    """
    lat = backward_rep(ring, inertia, frob).lattice
    n = ring.n
    den = lat.den
    basis = [list(r) for r in lat.basis]
    n_i = ring.norm_element(inertia)
    mn = ring.mult_matrix(n_i)
    ker_rows = im.right_kernel(mn)
    kcols = im.mat_transpose(ker_rows)
    # (a) image under pi agrees with the image of the full group ring
    bk = im.mat_mul(basis, kcols)
    full_rows = [[den * v for v in row] for row in kcols]
    image_matches = im.lattice_eq(bk, full_rows)
    # (b) preimage of L under multiplication by nu is the standard lattice
    qd = quotient_data(ring.group, inertia)
    cosets = list(qd.group.elements())
    nbar = len(cosets)
    fnum = []
    for dbar in cosets:
        x = n_i.translate(qd.lift(dbar))
        fnum.append(list(x.coeffs))
    assert den == inertia.order
    coeff_rows = im.left_kernel(bk)
    w_rows = [im.vec_mat(c, basis) for c in coeff_rows]
    pre = []
    ok_pre = True
    for w in w_rows:
        a = _rational_solve_left(fnum, w)
        if a is None:
            ok_pre = False
            break
        pre.append(a)
    if ok_pre:
        lcm_den = 1
        for row in pre:
            for v in row:
                lcm_den = lcm_den * v.denominator // gcd(lcm_den, v.denominator)
        int_rows = [
            [int(v * lcm_den) for v in row] for row in pre
        ]
        std = [
            [lcm_den if i == j else 0 for j in range(nbar)] for i in range(nbar)
        ]
        preimage_is_standard = im.lattice_eq(int_rows, std)
    else:
        preimage_is_standard = False
    # (c) nu-image coordinates in L are a primitive rank-nbar sublattice
    hb, pivb = im.hnf_with_pivots(basis)
    coords = []
    ok_c = True
    for row in fnum:
        c = im.span_coefficients(hb, pivb, row)
        if c is None:
            ok_c = False
            break
        coords.append(c)
    if ok_c:
        inv = im.invariant_factors(coords, n)
        diag = im.snf_diagonal(coords, n)
        rank = sum(1 for d in diag if d)
        embedding_primitive = rank == nbar and not inv
    else:
        embedding_primitive = False
    return ExtensionReport(image_matches, preimage_is_standard, embedding_primitive)


def _p_adic_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n:
        n //= p
        v += 1
    return v


def verify_unit_transport(
    ring: GroupRing,
    inertia: Subgroup,
    frob_a: GroupElement,
    frob_b: GroupElement,
    precision: int | None = None,
) -> bool:
    """Transport the backward representative of (I, phi_a) onto that of
    (I, phi_b) by an explicit unit multiplier, p-adically.

    Requires the group to be a p-group and the two pairs to share both
    inertia and decomposition subgroup.  A unit u of Z_p[G/I] with
    u (1 - phi_a^{-1}) = 1 - phi_b^{-1} is solved for modulo p^M; the
    multiplier w = 1 + nu (u~ - 1) then carries lattice A onto lattice
    B up to rows in p^M Z^n, and M is chosen large enough that equality
    of the two lattices modulo p^M Z^n certifies equality of their
    p-adic completions.  Returns that equality; a missing unit raises.
    """
    group = ring.group
    ps = sorted(prime_factors(group.order))
    if len(ps) != 1:
        raise ScopeError("unit transport needs a nontrivial p-group")
    p = ps[0]
    dec_a = inertia.join(cyclic_subgroup(frob_a))
    dec_b = inertia.join(cyclic_subgroup(frob_b))
    if dec_a != dec_b:
        raise ScopeError("pairs have different decomposition subgroups")
    lat_a = backward_rep(ring, inertia, frob_a).lattice
    lat_b = backward_rep(ring, inertia, frob_b).lattice
    n = ring.n
    common = lat_a.den * inertia.order
    common = common * lat_b.den // gcd(common, lat_b.den)
    needed = n * _p_adic_valuation(common, p) + 1
    if precision is None:
        prec = needed
    elif precision < needed:
        raise PrecisionError(
            f"precision p^{precision} below certified bound p^{needed}"
        )
    else:
        prec = precision
    q = p**prec
    qd = quotient_data(group, inertia)
    qring = GroupRing(qd.group)
    nbar = qring.n
    tmat = qring.mult_matrix(
        qring.one() - qring.delta(-qd.proj(frob_a))
    )
    target = list(
        (qring.one() - qring.delta(-qd.proj(frob_b))).coeffs
    )
    stacked = [list(r) for r in tmat]
    for j in range(nbar):
        stacked.append([q if i == j else 0 for i in range(nbar)])
    sol = im.solve_left(stacked, target)
    if sol is None:
        raise UnitNotFoundError(
            "no unit carries one coset difference to the other"
        )
    u = [c % q for c in sol[:nbar]]
    aug = sum(u) % q
    if aug % p == 0:
        fixed = False
        for row in im.left_kernel(stacked):
            k = [c % q for c in row[:nbar]]
            ka = sum(k) % q
            if ka % p:
                c = ((1 - aug) * pow(ka, -1, q)) % q
                u = [(a + c * b) % q for a, b in zip(u, k)]
                fixed = True
                break
        if not fixed:
            raise UnitNotFoundError("solution space contains no unit")
    # lift u along the canonical coset representatives and form the
    # multiplier w = 1 + nu (u~ - 1)
    ucoeffs = [0] * n
    for idx, dbar in enumerate(qring.elems):
        ucoeffs[ring.index_of(qd.lift(dbar))] += u[idx]
    utilde = ring.from_coeffs(tuple(ucoeffs))
    nu = ring.norm_element(inertia).scale(Fraction(1, inertia.order))
    w = ring.one() + nu * (utilde - ring.one())
    transported = lat_a.multiply_element(w)
    assert common % transported.den == 0 and common % lat_b.den == 0
    rows_a = [
        [v * (common // transported.den) for v in row]
        for row in transported.basis
    ]
    rows_b = [
        [v * (common // lat_b.den) for v in row] for row in lat_b.basis
    ]
    mod_rows = [[q if i == j else 0 for j in range(n)] for i in range(n)]
    return im.lattice_eq(rows_a + mod_rows, rows_b + mod_rows)
