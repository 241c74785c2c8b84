"""Tate cohomology of finite modules, cohomological triviality, and
character components of p-parts.

For a finite module M = Z^g / L with commuting integer actions and a
subgroup H of the acting group, the two Tate groups in play are

    H^0  = (H-invariants of M) / (norm image + L)
    H^-1 = (kernel of the norm on M) / (augmentation image + L)

both computed as quotients of explicit lattices in Z^g and returned as
modules again, so the residual action can be compared.

Module comparison deliberately avoids automorphism enumeration: two
cyclic modules over the same ring are isomorphic exactly when their
annihilator lattices coincide, and a generator search over the cosets
certifies cyclicity.  A bounded Hom-space sweep covers small non-cyclic
cases; anything larger is reported as undecided rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import intmat as im
from . import polys
from .abelian import (
    FinAbGroup,
    GroupElement,
    Subgroup,
    cyclic_subgroup,
    quotient_data,
    sylow,
)
from .errors import ParentMismatchError, PrecisionError, ScopeError
from .grouprings import FiniteModule, GroupRing, inertia_module


# ---------------------------------------------------------------------------
# Tate cohomology


@dataclass(frozen=True)
class TateResult:
    subgroup: Subgroup
    h0: FiniteModule
    hminus1: FiniteModule


def norm_matrix(module: FiniteModule, sub: Subgroup):
    """Matrix of the sum of the actions of all elements of sub."""
    n = module.rank
    out = im.zeros(n, n)
    for e in sub.elements():
        a = module.action_matrix(e)
        for i in range(n):
            row = out[i]
            arow = a[i]
            for j in range(n):
                row[j] += arow[j]
    return out


def _coords_rows(basis_rows, vec_rows):
    h, u, piv = im.hnf_with_transform(basis_rows)
    pv = [next(j for j, x in enumerate(r) if x) for r in h]
    out = []
    for v in vec_rows:
        c = im.span_coefficients(h, pv, list(v))
        if c is None:
            raise ParentMismatchError("vector not in the containing lattice")
        x = [0] * len(basis_rows)
        for ci, urow in zip(c, u):
            if ci:
                for j in range(len(x)):
                    x[j] += ci * urow[j]
        out.append(x)
    return out


def _quotient_module(module: FiniteModule, big_rows, small_rows) -> FiniteModule:
    """The module big/small in the coordinates of big, with the induced action."""
    coords_small = _coords_rows(big_rows, small_rows)
    actions = []
    for g in module.group.generators():
        a = module.action_matrix(g)
        img = [im.vec_mat(list(r), a) for r in big_rows]
        actions.append(_coords_rows(big_rows, img))
    return FiniteModule.build(module.group, coords_small, actions)


def tate_cohomology(module: FiniteModule, sub: Subgroup) -> TateResult:
    if sub.group != module.group:
        raise ParentMismatchError("subgroup of a different group")
    n = module.rank
    rel = [list(r) for r in module.relations]
    gens = sub.generators()

    # invariants: x with x(A_h - 1) in L for the subgroup generators
    inv = im.identity(n)
    for h in gens:
        a = module.action_matrix(h)
        d = [[a[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
        pre = im.preimage_lattice(None, d, rel)
        inv = im.lattice_intersection(inv, pre)

    nm = norm_matrix(module, sub)
    norm_image = im.lattice_sum([im.vec_mat(list(e), nm) for e in im.identity(n)], rel)
    h0 = _quotient_module(module, inv, [list(r) for r in norm_image])

    # norm kernel: x with x N in L
    ker = im.preimage_lattice(None, nm, rel)
    aug_rows = list(rel)
    for h in gens:
        a = module.action_matrix(h)
        for i in range(n):
            aug_rows.append([a[i][j] - (1 if i == j else 0) for j in range(n)])
    aug = im.hnf(aug_rows, n)
    hm1 = _quotient_module(module, ker, aug)
    return TateResult(sub, h0, hm1)


def closed_form_inertia_tate(
    group: FinAbGroup, inertia: Subgroup, frob: GroupElement, sub: Subgroup
) -> FiniteModule:
    """Predicted Tate module of an inertia module: the group ring of the
    quotient by (decomposition subgroup + sub), modulo #(inertia meet sub)."""
    from .abelian import cyclic_subgroup

    dec = inertia.join(cyclic_subgroup(frob))
    big = dec.join(sub)
    c = inertia.meet(sub).order
    qd = quotient_data(group, big)
    qring = GroupRing(qd.group)
    n = qring.n
    relations = [[c if i == j else 0 for j in range(n)] for i in range(n)]
    actions = [qring.translation_matrix(qd.proj(g)) for g in group.generators()]
    return FiniteModule.build(group, relations, actions)


def is_cohomologically_trivial(module: FiniteModule) -> bool:
    """Nakayama test: both Tate groups vanish for every Sylow subgroup."""
    if module.order == 1:
        return True
    for q in module.group.primes():
        t = tate_cohomology(module, sylow(module.group, q))
        if t.h0.order != 1 or t.hminus1.order != 1:
            return False
    return True


def p_part(module: FiniteModule, p: int) -> FiniteModule:
    """The p-primary part, presented as a quotient of the same Z^g.

    Quotienting by p^e M (p^e the p-part of the exponent) kills every
    q-primary part for q != p, where p^e is invertible, and fixes the
    p-part, which p^e annihilates.
    """
    exp = module.exponent()
    pe = 1
    while exp % p == 0:
        exp //= p
        pe *= p
    if exp == 1:
        return module
    n = module.rank
    extra = [[pe if i == j else 0 for j in range(n)] for i in range(n)]
    return module.with_extra_relations(extra)


# ---------------------------------------------------------------------------
# module comparison


@dataclass(frozen=True)
class ComparisonOutcome:
    decided: bool
    isomorphic: bool | None
    method: str


def coset_representatives(module: FiniteModule, cap: int):
    """All coset representatives of Z^g / relations, or None past cap."""
    if module.order > cap:
        return None
    n = module.rank
    if n == 0:
        return [[]]
    diag, u, v = im.snf_with_transform([list(r) for r in module.relations], n)
    vinv = im.unimodular_inverse(v)
    reps = []
    idx = [i for i, d in enumerate(diag) if d > 1]
    counters = [0] * len(idx)
    while True:
        y = [0] * n
        for c, i in zip(counters, idx):
            y[i] = c
        reps.append(im.vec_mat(y, vinv))
        k = 0
        while k < len(idx):
            counters[k] += 1
            if counters[k] < diag[idx[k]]:
                break
            counters[k] = 0
            k += 1
        else:
            return reps


def find_cyclic_generator(module: FiniteModule, cap: int = 30_000):
    """(generator coords, searched_all): a coset rep generating the module
    over the group ring, or None.  searched_all=False means capacity ran
    out before the search was complete."""
    if module.order == 1:
        return [0] * module.rank, True
    reps = coset_representatives(module, cap)
    if reps is None:
        return None, False
    if module.group.order > cap:
        return None, False
    n = module.rank
    rel = [list(r) for r in module.relations]
    acts = [module.action_matrix(g) for g in module.group.elements()]
    for x in reps:
        rows = [im.vec_mat(x, a) for a in acts] + rel
        h = im.hnf(rows, n)
        if len(h) == n and all(h[i][i] == 1 for i in range(n)):
            return x, True
    return None, True


def annihilator_lattice(module: FiniteModule, x, ring: GroupRing):
    """The lattice {c in Z^{|G|} : sum_g c_g (x.g) lies in relations}."""
    rows = [im.vec_mat(list(x), module.action_matrix(g)) for g in ring.elems]
    return im.preimage_lattice(None, rows, [list(r) for r in module.relations])


def module_equivalent(
    m1: FiniteModule, m2: FiniteModule, cap: int = 30_000, hom_dim_cap: int = 256
) -> ComparisonOutcome:
    """Decide whether two finite modules over the same group are
    isomorphic as modules.

    Route 1: abelian invariants must match.  Route 2: if both are cyclic
    over the group ring, isomorphism is equality of annihilator lattices.
    Route 3: bounded Hom-space sweep.  Whatever remains is reported
    undecided rather than approximated.
    """
    if m1.group != m2.group:
        raise ParentMismatchError("modules over different groups")
    if m1.invariants() != m2.invariants():
        return ComparisonOutcome(True, False, "abelian-invariants")
    if m1.order == 1:
        return ComparisonOutcome(True, True, "both-trivial")

    x1, full1 = find_cyclic_generator(m1, cap)
    x2, full2 = find_cyclic_generator(m2, cap)
    if x1 is not None and x2 is not None:
        ring = GroupRing(m1.group)
        a1 = annihilator_lattice(m1, x1, ring)
        a2 = annihilator_lattice(m2, x2, ring)
        return ComparisonOutcome(True, a1 == a2, "cyclic-annihilator")
    if x1 is None and full1 and x2 is not None:
        return ComparisonOutcome(True, False, "cyclicity-mismatch")
    if x2 is None and full2 and x1 is not None:
        return ComparisonOutcome(True, False, "cyclicity-mismatch")
    if x1 is None and x2 is None and full1 and full2:
        return _hom_space_compare(m1, m2, cap, hom_dim_cap)
    return ComparisonOutcome(False, None, "skipped:generator-search-capacity")


def _hom_space_compare(m1, m2, cap, hom_dim_cap) -> ComparisonOutcome:
    g1, g2 = m1.rank, m2.rank
    if g1 * g2 > hom_dim_cap:
        return ComparisonOutcome(False, None, "skipped:hom-dimension")
    rel2 = [list(r) for r in m2.relations]

    # unknown flat vector phi of length g1*g2; conditions stack into one map
    def flat_index(i, j):
        return i * g2 + j

    conditions = []
    for r in m1.relations:
        # row r of relations must map into rel2: map phi -> r.Phi
        mat = im.zeros(g1 * g2, g2)
        for i in range(g1):
            if r[i]:
                for j in range(g2):
                    mat[flat_index(i, j)][j] += r[i]
        conditions.append(mat)
    for ga, gb in zip(m1.gen_actions, m2.gen_actions):
        a = [list(row) for row in ga]
        b = [list(row) for row in gb]
        # rows of A.Phi - Phi.B must land in rel2
        for i in range(g1):
            mat = im.zeros(g1 * g2, g2)
            for k in range(g1):
                if a[i][k]:
                    for j in range(g2):
                        mat[flat_index(k, j)][j] += a[i][k]
            for j in range(g2):
                for jj in range(g2):
                    if b[j][jj]:
                        mat[flat_index(i, j)][jj] -= b[j][jj]
            conditions.append(mat)
    width = g2 * len(conditions)
    fmat = [[0] * width for _ in range(g1 * g2)]
    for ci, mat in enumerate(conditions):
        for r in range(g1 * g2):
            row = mat[r]
            base = ci * g2
            for j in range(g2):
                if row[j]:
                    fmat[r][base + j] = row[j]
    tgt = []
    for ci in range(len(conditions)):
        for rr in rel2:
            row = [0] * width
            for j in range(g2):
                row[ci * g2 + j] = rr[j]
            tgt.append(row)
    sol = im.preimage_lattice(None, fmat, tgt, width)
    # trivial homs: every row of phi inside rel2
    triv = []
    for i in range(g1):
        for rr in rel2:
            row = [0] * (g1 * g2)
            for j in range(g2):
                row[flat_index(i, j)] = rr[j]
            triv.append(row)
    triv = im.hnf(triv, g1 * g2)
    coords = _coords_rows(sol, triv)
    diag, u, v = im.snf_with_transform(coords, len(sol))
    hom_order = 1
    for d in diag:
        hom_order *= max(d, 1)
    if hom_order > cap:
        return ComparisonOutcome(False, None, "skipped:hom-count")
    vinv = im.unimodular_inverse(v)
    idx = [i for i, d in enumerate(diag) if d > 1]
    counters = [0] * len(idx)
    while True:
        y = [0] * len(sol)
        for c, i in zip(counters, idx):
            y[i] = c
        w = im.vec_mat(im.vec_mat(y, vinv), sol)
        phi_rows = [[w[flat_index(i, j)] for j in range(g2)] for i in range(g1)]
        full = im.hnf(phi_rows + rel2, g2)
        if len(full) == g2 and all(full[i][i] == 1 for i in range(g2)):
            return ComparisonOutcome(True, True, "hom-search")
        k = 0
        while k < len(idx):
            counters[k] += 1
            if counters[k] < diag[idx[k]]:
                break
            counters[k] = 0
            k += 1
        else:
            break
    return ComparisonOutcome(True, False, "hom-search")


# ---------------------------------------------------------------------------
# characters of the prime-to-p part and their components


@dataclass(frozen=True)
class ChiClass:
    """A p-adic conjugacy class of characters of the prime-to-p part of
    the acting group.

    gen_orders are the orders of the canonical independent generators of
    that part (one per group factor, trivial ones dropped); values[i] is
    the exponent of the character at generator i, so the class is the
    orbit of the tuple under multiplication by p, recorded by its
    lex-least member.
    """

    p: int
    gen_orders: tuple
    values: tuple

    @property
    def order(self) -> int:
        out = 1
        for m, b in zip(self.gen_orders, self.values):
            o = m // gcd(m, b)
            out = out * o // gcd(out, o)
        return out

    @property
    def is_trivial(self) -> bool:
        return not any(self.values)


def complement_generators(group: FinAbGroup, p: int):
    """Canonical generators of the prime-to-p part of the group.

    Returns (gens, orders): gens[i] is p^a * e_j for the j-th standard
    generator e_j of order p^a * m_j, orders[i] = m_j; factors with
    trivial prime-to-p part are skipped.
    """
    gens = []
    orders = []
    for j, d in enumerate(group.factors):
        pe = 1
        while d % p == 0:
            d //= p
            pe *= p
        if d > 1:
            coords = [0] * group.rank
            coords[j] = pe
            gens.append(group.element(tuple(coords)))
            orders.append(d)
    return gens, orders


def _classes_from_orders(gen_orders, p: int) -> list[ChiClass]:
    tuples = [()]
    for m in gen_orders:
        tuples = [t + (b,) for t in tuples for b in range(m)]
    seen = set()
    out = []
    for t in tuples:
        if t in seen:
            continue
        orbit = set()
        cur = t
        while cur not in orbit:
            orbit.add(cur)
            cur = tuple((b * p) % m for b, m in zip(cur, gen_orders))
        canon = min(orbit)
        if canon not in seen:
            out.append(ChiClass(p, tuple(gen_orders), canon))
        seen |= orbit
    out.sort(key=lambda c: c.values)
    return out


def character_classes(group: FinAbGroup, p: int) -> list[ChiClass]:
    """Conjugacy classes of characters of the prime-to-p part of the
    group under exponent-multiplication by p, canonical order."""
    _, orders = complement_generators(group, p)
    for m in orders:
        if m % p == 0:
            raise ValueError("generator orders must be prime to p")
    return _classes_from_orders(tuple(orders), p)


_LIFT_CACHE: dict = {}


def lifted_cyclotomic_factor(m: int, p: int, prec: int):
    """A canonical monic factor of the m-th cyclotomic polynomial over
    the p-adics, truncated mod p^prec: the Hensel lift of the lex-least
    irreducible factor mod p.  Exact for m = 1."""
    key = (m, p, prec)
    if key in _LIFT_CACHE:
        return _LIFT_CACHE[key]
    if m == 1:
        out = (-1, 1)
    else:
        factors = polys.factor_cyclotomic_mod_p(m, p)
        h0 = factors[0]
        if len(factors) == 1:
            out = polys.cyclotomic(m)
        else:
            g0 = (1,)
            for f in factors[1:]:
                g0 = polys.poly_reduce_mod(polys.poly_mul(g0, f), p)
            h, _ = polys.hensel_lift(polys.cyclotomic(m), h0, g0, p, prec)
            out = h
    _LIFT_CACHE[key] = out
    return out


_TRACE_CACHE: dict = {}


def _root_power_traces(m: int, p: int, prec: int):
    """traces[k] = trace of zeta^k from Z_p[zeta] down to Z_p, mod
    p^prec, for zeta a root of the canonical lifted factor of the m-th
    cyclotomic polynomial; k = 0..m-1."""
    key = (m, p, prec)
    if key in _TRACE_CACHE:
        return _TRACE_CACHE[key]
    h = lifted_cyclotomic_factor(m, p, prec)
    q = p**prec
    traces = []
    xk = (1,)
    for _ in range(m):
        mat = polys.mult_matrix_mod(h, xk)
        tr = sum(mat[i][i] for i in range(len(mat))) % q
        traces.append(tr)
        xk = polys.poly_mul(xk, (0, 1))
        _, xk = polys.poly_divmod_monic(xk, h)
        xk = polys.poly_reduce_mod(xk, q)
    _TRACE_CACHE[key] = traces
    return traces


def _p_exponent(n: int, p: int):
    """(e, rest) with n = p^e * rest, p not dividing rest."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def chi_idempotent_matrix(module: FiniteModule, chi: ChiClass, prec: int):
    """Action on the module of the conjugacy-class idempotent of chi,
    with entries reduced mod p^prec.

    The idempotent is (1/#D) * sum over elements d of the prime-to-p
    part D of the trace of chi(d^{-1}) times d; the trace over the
    p-adic coefficient field makes every coefficient p-integral, and all
    arithmetic is exact integer arithmetic mod p^prec.
    """
    p = chi.p
    q = p**prec
    gens, orders = complement_generators(module.group, p)
    if tuple(orders) != chi.gen_orders:
        raise ParentMismatchError("character domain does not match group")
    n = module.rank
    size = 1
    for mi in orders:
        size *= mi
    inv_size = pow(size % q, -1, q) if q > 1 else 0
    m = chi.order
    traces = _root_power_traces(m, p, prec)
    # chi(gens[i]) = zeta_m ^ cexp[i]
    cexp = []
    for b, mi in zip(chi.values, orders):
        assert (b * m) % mi == 0
        cexp.append((b * m // mi) % m)
    gen_pows = []
    for g, mi in zip(gens, orders):
        a = module.action_matrix(g)
        pows = [im.identity(n)]
        for _ in range(mi - 1):
            nxt = im.mat_mul(pows[-1], a)
            pows.append([[x % q for x in row] for row in nxt])
        gen_pows.append(pows)
    out = im.zeros(n, n)
    coords = [0] * len(orders)
    while True:
        e_val = 0
        for y, c in zip(coords, cexp):
            e_val = (e_val + y * c) % m
        coeff = (traces[(-e_val) % m] * inv_size) % q
        if coeff:
            act = im.identity(n)
            for pows, y in zip(gen_pows, coords):
                if y:
                    act = im.mat_mul(act, pows[y])
            for i in range(n):
                row = out[i]
                arow = act[i]
                for j in range(n):
                    row[j] = (row[j] + coeff * arow[j]) % q
        k = len(coords) - 1
        while k >= 0:
            coords[k] += 1
            if coords[k] < orders[k]:
                break
            coords[k] = 0
            k -= 1
        if k < 0:
            break
    sq = im.mat_mul(out, out)
    assert all(
        (sq[i][j] - out[i][j]) % q == 0 for i in range(n) for j in range(n)
    ), "idempotent check failed"
    return out


def chi_component(
    module: FiniteModule, chi: ChiClass, prec: int | None = None
) -> FiniteModule:
    """The direct summand of a p-primary module cut out by the
    conjugacy-class idempotent of chi, presented as the quotient of the
    module by (1 - e_chi).

    Exact as long as p^prec annihilates the module, which is the default
    precision; a smaller explicit precision raises."""
    p = chi.p
    e, rest = _p_exponent(module.exponent(), p)
    if rest != 1:
        raise ScopeError("module is not p-primary; take its p-part first")
    if prec is None:
        prec = max(e, 1)
    if prec < e:
        raise PrecisionError(f"precision p^{prec} below module exponent p^{e}")
    if e == 0:
        return module
    ep = chi_idempotent_matrix(module, chi, prec)
    n = module.rank
    extra = [
        [(1 if i == j else 0) - ep[i][j] for j in range(n)] for i in range(n)
    ]
    return module.with_extra_relations(extra)


# ---------------------------------------------------------------------------
# inertia-module analysis bundles


@dataclass(frozen=True)
class ChiComponentRow:
    chi: ChiClass
    component: FiniteModule


@dataclass(frozen=True)
class ChiAnalysis:
    module: FiniteModule
    rows: tuple
    partition_ok: bool


def chi_analysis(
    group: FinAbGroup,
    inertia: Subgroup,
    frob: GroupElement,
    p: int,
    prec: int | None = None,
) -> ChiAnalysis:
    """All chi-components of the p-part of the inertia module.

    partition_ok records that the component orders multiply to the order
    of the p-part, which is what exactness of the idempotent
    decomposition predicts; the idempotents are additionally checked to
    sum to the identity at working precision.
    """
    ring = GroupRing(group)
    mod = inertia_module(ring, inertia, frob)
    mp = p_part(mod, p)
    e, _ = _p_exponent(mp.exponent(), p)
    eff = max(e, 1) if prec is None else prec
    rows = []
    prod = 1
    total = im.zeros(mp.rank, mp.rank)
    for chi in character_classes(group, p):
        comp = chi_component(mp, chi, prec)
        rows.append(ChiComponentRow(chi, comp))
        prod *= comp.order
        if e > 0:
            ep = chi_idempotent_matrix(mp, chi, eff)
            total = im.mat_add(total, ep)
    if e > 0:
        q = p**eff
        n = mp.rank
        assert all(
            (total[i][j] - (1 if i == j else 0)) % q == 0
            for i in range(n)
            for j in range(n)
        ), "idempotents do not sum to the identity"
    return ChiAnalysis(mp, tuple(rows), prod == mp.order)


@dataclass(frozen=True)
class CriterionRow:
    chi: ChiClass
    component_ct: bool
    predicted_ct: bool

    @property
    def agree(self) -> bool:
        return self.component_ct == self.predicted_ct


@dataclass(frozen=True)
class CriterionReport:
    rows: tuple
    all_agree: bool


def _chi_exponent_at(chi: ChiClass, orders, pparts, coords):
    """Exponent k with chi(projection of the element to the prime-to-p
    part) = zeta_m^k, for an element given by its group coordinates."""
    m = chi.order
    k = 0
    for b, mi, pe, x in zip(chi.values, orders, pparts, coords):
        y = (x * pow(pe, -1, mi)) % mi
        k = (k + y * ((b * m) // mi)) % m
    return k


def component_triviality_pair(
    group: FinAbGroup,
    inertia: Subgroup,
    frob: GroupElement,
    p: int,
    chi: ChiClass,
    prec: int | None = None,
):
    """Both sides of the component-triviality equivalence for one
    character class: (component is zero or cohomologically trivial,
    p-part of inertia is trivial or chi is nontrivial on the
    decomposition subgroup)."""
    ring = GroupRing(group)
    mod = inertia_module(ring, inertia, frob)
    mp = p_part(mod, p)
    comp = chi_component(mp, chi, prec)
    lhs = comp.order == 1 or is_cohomologically_trivial(comp)
    rhs = _predicted_component_triviality(group, inertia, frob, p, chi)
    return lhs, rhs


def _predicted_component_triviality(group, inertia, frob, p, chi) -> bool:
    gens, orders = complement_generators(group, p)
    if tuple(orders) != chi.gen_orders:
        raise ParentMismatchError("character domain does not match group")
    pparts = []
    for j, d in enumerate(group.factors):
        e, rest = _p_exponent(d, p)
        if rest > 1:
            pparts.append(p**e)
    if inertia.order % p != 0:
        return True
    dec = inertia.join(cyclic_subgroup(frob))
    for g in dec.generators():
        if _chi_exponent_at(chi, orders, pparts, g.coords) != 0:
            return True
    return False


def triviality_criterion(
    group: FinAbGroup,
    inertia: Subgroup,
    frob: GroupElement,
    p: int,
    prec: int | None = None,
) -> CriterionReport:
    """Check, for every character class of the prime-to-p part, that the
    chi-component of the p-part of the inertia module is
    trivial-or-cohomologically-trivial exactly when the p-part of
    inertia is trivial or chi is nontrivial on the decomposition
    subgroup."""
    ring = GroupRing(group)
    mod = inertia_module(ring, inertia, frob)
    mp = p_part(mod, p)
    rows = []
    for chi in character_classes(group, p):
        comp = chi_component(mp, chi, prec)
        lhs = comp.order == 1 or is_cohomologically_trivial(comp)
        rhs = _predicted_component_triviality(group, inertia, frob, p, chi)
        rows.append(CriterionRow(chi, lhs, rhs))
    return CriterionReport(tuple(rows), all(r.agree for r in rows))
