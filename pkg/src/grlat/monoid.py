"""The combinatorial index sets attached to a finite abelian group and
the structure map between the monoids they span.

Over a group G the generators of interest are pairs (I, phi) with I a
nontrivial elementary subgroup, collapsed to pairs (I, D) where
D = I v <phi> must make D/I cyclic.  Locally, over the maximal
p-quotient G_p, the targets are tuples (p, H, Istar, Dstar) with G/H
cyclic of order prime to p.  The structure map beta sends (I, D) to the
sum of basis vectors over all target tuples whose data match the images
of I and D in G_p, and the analysis below certifies its decomposition
law, injectivity on the irreducible locus, irreducibility of the
generator images, and the freeness verdict for the image monoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from .abelian import (
    FinAbGroup,
    GroupElement,
    Subgroup,
    cyclic_subgroup,
    enumerate_subgroups,
    is_elementary,
    prime_factors,
    quotient_data,
    sylow,
    sylow_complement,
)
from .errors import CapacityError, ParentMismatchError, ScopeError

# decomposition searches and bounded injectivity sweeps refuse to spawn
# more candidate vectors than this
VECTOR_CAP = 400_000


@dataclass(frozen=True)
class InertiaPair:
    """(I, phi): nontrivial elementary inertia plus a coset of G/I,
    stored through its canonical (lex-least) lift."""

    inertia: Subgroup
    frob: GroupElement

    def __post_init__(self):
        if self.inertia.group != self.frob.group:
            raise ParentMismatchError("subgroup and element parents differ")
        if self.inertia.is_trivial:
            raise ScopeError("inertia must be nontrivial")
        if not is_elementary(self.inertia.structure()):
            raise ScopeError("inertia must be elementary")

    @property
    def decomposition(self) -> Subgroup:
        return self.inertia.join(cyclic_subgroup(self.frob))


@dataclass(frozen=True)
class DecompositionPair:
    """(I, D) with I nontrivial elementary, I inside D, D/I cyclic."""

    inertia: Subgroup
    dec: Subgroup

    def __post_init__(self):
        if self.inertia.is_trivial:
            raise ScopeError("inertia must be nontrivial")
        if not is_elementary(self.inertia.structure()):
            raise ScopeError("inertia must be elementary")
        if not self.inertia.is_subset_of(self.dec):
            raise ScopeError("inertia must sit inside the decomposition part")
        qd = quotient_data(self.inertia.group, self.inertia)
        if not qd.push(self.dec).is_cyclic:
            raise ScopeError("quotient dec/inertia must be cyclic")

    def sort_key(self):
        return (self.inertia.basis, self.dec.basis)


@dataclass(frozen=True)
class LocalTuple:
    """(p, H, Istar, Dstar): H with G/H cyclic of order prime to p, and
    a pair of subgroups of the maximal p-quotient with Istar nontrivial
    and Dstar/Istar cyclic."""

    p: int
    h: Subgroup
    istar: Subgroup
    dstar: Subgroup

    def sort_key(self):
        return (self.p, self.h.basis, self.istar.basis, self.dstar.basis)


@dataclass(frozen=True)
class SetFamily:
    """All index sets of one group, in canonical order.

    stilde: the (I, phi) generator pairs; s_pairs: the (I, D) pairs;
    projection[i]: index into s_pairs of the image of stilde[i];
    s_p: per-prime pair lists over the maximal p-quotients;
    t_tuples: the target index set;
    s_prime / s_dprime: indices into s_pairs of the irreducible locus
    (D noncyclic or #I a prime power) and of the prime-power-#I locus.
    """

    group: FinAbGroup
    stilde: tuple
    s_pairs: tuple
    projection: tuple
    s_p: dict
    t_tuples: tuple
    s_prime: tuple
    s_dprime: tuple

    @property
    def counts(self):
        return {
            "stilde": len(self.stilde),
            "s": len(self.s_pairs),
            "t": len(self.t_tuples),
            "s_prime": len(self.s_prime),
            "s_dprime": len(self.s_dprime),
        }


def _cyclic_quotient_pairs(group: FinAbGroup):
    """(I, D) pairs over the given group with I nontrivial elementary
    and D/I cyclic, canonically ordered."""
    subs = enumerate_subgroups(group)
    out = []
    for inertia in subs:
        if inertia.is_trivial or not is_elementary(inertia.structure()):
            continue
        qd = quotient_data(group, inertia)
        for dec in subs:
            if inertia.is_subset_of(dec) and qd.push(dec).is_cyclic:
                out.append(DecompositionPair(inertia, dec))
    out.sort(key=DecompositionPair.sort_key)
    return out


def build_sets(group: FinAbGroup) -> SetFamily:
    """Enumerate every index set of the group, including the projection
    from generator pairs to (I, D) pairs and the local pair sets over
    each maximal p-quotient."""
    subs = enumerate_subgroups(group)
    s_pairs = _cyclic_quotient_pairs(group)
    s_index = {
        (pr.inertia.basis, pr.dec.basis): i for i, pr in enumerate(s_pairs)
    }
    stilde = []
    for inertia in subs:
        if inertia.is_trivial or not is_elementary(inertia.structure()):
            continue
        qd = quotient_data(group, inertia)
        for cbar in qd.group.elements():
            lift = qd.lift(cbar)
            best = lift
            for t in inertia.elements():
                cand = lift + t
                if cand.coords < best.coords:
                    best = cand
            stilde.append(InertiaPair(inertia, best))
    stilde.sort(key=lambda pr: (pr.inertia.basis, pr.frob.coords))
    projection = tuple(
        s_index[(pr.inertia.basis, pr.decomposition.basis)] for pr in stilde
    )
    primes = sorted(prime_factors(group.order))
    s_p = {}
    t_tuples = []
    for p in primes:
        qd_p = quotient_data(group, sylow_complement(group, p))
        s_p[p] = tuple(_cyclic_quotient_pairs(qd_p.group))
        hs = []
        for h in subs:
            qh = quotient_data(group, h)
            if qh.group.is_cyclic and qh.group.order % p != 0:
                hs.append(h)
        for h in hs:
            for pr in s_p[p]:
                t_tuples.append(LocalTuple(p, h, pr.inertia, pr.dec))
    t_tuples.sort(key=LocalTuple.sort_key)
    s_prime = tuple(
        i
        for i, pr in enumerate(s_pairs)
        if not pr.dec.is_cyclic or len(prime_factors(pr.inertia.order)) == 1
    )
    s_dprime = tuple(
        i
        for i, pr in enumerate(s_pairs)
        if len(prime_factors(pr.inertia.order)) == 1
    )
    return SetFamily(
        group,
        tuple(stilde),
        tuple(s_pairs),
        projection,
        s_p,
        tuple(t_tuples),
        s_prime,
        s_dprime,
    )


def beta(family: SetFamily, pair: DecompositionPair) -> tuple:
    """Image of an (I, D) pair: the 0/1 vector over the target tuples
    marking every (p, H, Istar, Dstar) with D inside H and the images of
    I and D in the maximal p-quotient equal to Istar and Dstar."""
    group = family.group
    images = {}
    for p in sorted(prime_factors(pair.inertia.order)):
        qd_p = quotient_data(group, sylow_complement(group, p))
        images[p] = (qd_p.push(pair.inertia), qd_p.push(pair.dec))
    out = []
    for t in family.t_tuples:
        hit = 0
        img = images.get(t.p)
        if (
            img is not None
            and pair.dec.is_subset_of(t.h)
            and img[0] == t.istar
            and img[1] == t.dstar
        ):
            hit = 1
        out.append(hit)
    return tuple(out)


def cardinality_formulas(group: FinAbGroup):
    """Closed-form (#S, #T) for a cyclic group, from the exponents of
    its order; a noncyclic group is out of scope."""
    if not group.is_cyclic:
        raise ScopeError("cardinality formulas need a cyclic group")
    exps = list(prime_factors(group.order).values())
    s_val = 1
    t_val = 1
    for e in exps:
        s_val *= (e + 1) * (e + 2) // 2
        t_val *= e + 1
    s_val -= t_val
    t_val = sum(exps) * t_val // 2
    return s_val, t_val


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vec_le(a, b):
    return all(x <= y for x, y in zip(a, b))


class _MonoidMembership:
    """Decides membership in the monoid generated by 0/1-free generator
    vectors, by depth-first search over dominated generator subtractions
    with a shared memo."""

    def __init__(self, generators):
        self.gens = sorted(set(g for g in generators if any(g)), reverse=True)
        self.memo = {}

    def contains(self, vec) -> bool:
        if not any(vec):
            return True
        if vec in self.memo:
            return self.memo[vec]
        self.memo[vec] = False  # cuts cycles; sums only shrink, so safe
        out = False
        for g in self.gens:
            if _vec_le(g, vec) and self.contains(_vec_sub(vec, g)):
                out = True
                break
        self.memo[vec] = out
        return out

    def decomposable(self, vec) -> bool:
        """vec = a + b with both parts nonzero members."""
        for g in self.gens:
            if _vec_le(g, vec):
                rest = _vec_sub(vec, g)
                if any(rest) and self.contains(rest):
                    return True
        return False


@dataclass(frozen=True)
class FreenessReport:
    family: SetFamily
    beta_values: tuple
    decomposition_ok: bool
    injective_on_irreducibles: bool
    irreducibility_ok: bool
    bounded_injectivity_ok: bool
    bound: int
    bound_reduced: bool
    verdict: str
    counts_consistent: bool

    @property
    def bounded_injectivity_expected(self) -> bool:
        # a collision among small combinations is a witness against
        # freeness, so it is only a failure when the verdict is FREE
        return self.verdict == "FREE"

    @property
    def all_checks_pass(self) -> bool:
        return (
            self.decomposition_ok
            and self.injective_on_irreducibles
            and self.irreducibility_ok
            and (self.bounded_injectivity_ok or not self.bounded_injectivity_expected)
            and self.counts_consistent
        )


def analyze_monoid(
    group: FinAbGroup, bound: int | None = None
) -> FreenessReport:
    """Full structural analysis of the image monoid of one group.

    Checks performed: the decomposition law for every (I, D) with D
    cyclic and #I not a prime power; pairwise distinctness of the images
    of the irreducible locus; irreducibility of each such image inside
    the image monoid by exhaustive dominated search; injectivity of the
    restricted map on all vectors of coordinate sum <= bound; and the
    freeness verdict with its cardinality certificate.

    With bound=None the default sum bound 3 shrinks deterministically
    until the candidate-vector count fits the cap; an explicit bound is
    honored strictly and may raise a capacity error.
    """
    if bound is not None and bound < 2:
        raise ScopeError("bound must be at least 2")
    family = build_sets(group)
    s_pairs = family.s_pairs
    beta_values = tuple(beta(family, pr) for pr in s_pairs)
    pair_index = {
        (pr.inertia.basis, pr.dec.basis): i for i, pr in enumerate(s_pairs)
    }
    # decomposition law on S minus the irreducible locus
    decomposition_ok = True
    sprime_set = set(family.s_prime)
    for i, pr in enumerate(s_pairs):
        if i in sprime_set:
            continue
        total = None
        for p in sorted(prime_factors(pr.inertia.order)):
            part = pr.inertia.meet(sylow(group, p))
            j = pair_index[(part.basis, pr.dec.basis)]
            v = beta_values[j]
            total = v if total is None else tuple(
                a + b for a, b in zip(total, v)
            )
        if total != beta_values[i]:
            decomposition_ok = False
            break
    prime_vals = [beta_values[i] for i in family.s_prime]
    injective = len(set(prime_vals)) == len(prime_vals)
    membership = _MonoidMembership(beta_values)
    irreducible_ok = all(
        any(v) and not membership.decomposable(v) for v in prime_vals
    )
    requested = 3 if bound is None else bound
    effective = requested
    if bound is None:
        while effective > 0 and _vector_count(len(prime_vals), effective) > VECTOR_CAP:
            effective -= 1
    bounded_ok = _bounded_injectivity(prime_vals, effective)
    free = group.is_cyclic or len(prime_factors(group.order)) <= 1
    nt = len(family.t_tuples)
    np_ = len(family.s_prime)
    verdict = "FREE" if free else "NOT-FREE"
    counts_consistent = (np_ == nt) if free else (np_ > nt)
    return FreenessReport(
        family,
        beta_values,
        decomposition_ok,
        injective,
        irreducible_ok,
        bounded_ok,
        effective,
        effective != requested,
        verdict,
        counts_consistent,
    )


def _vector_count(k: int, bound: int) -> int:
    count = 1
    num = 1
    for i in range(1, bound + 1):
        num = num * (k + i - 1) // i
        count += num
    return count


def _bounded_injectivity(generators, bound: int) -> bool:
    """All formal nonnegative combinations of the generators with
    coordinate sum <= bound have pairwise distinct values."""
    k = len(generators)
    count = _vector_count(k, bound)
    if count > VECTOR_CAP:
        raise CapacityError(
            f"{count} candidate vectors exceed the cap {VECTOR_CAP}"
        )
    width = len(generators[0]) if generators else 0
    zero = (0,) * width
    seen = {zero: (0,) * k}
    frontier = [(zero, (0,) * k, 0)]
    for _ in range(bound):
        nxt = []
        for val, expo, start in frontier:
            for idx in range(start, k):
                g = generators[idx]
                nval = tuple(a + b for a, b in zip(val, g))
                nexpo = list(expo)
                nexpo[idx] += 1
                nexpo = tuple(nexpo)
                prev = seen.get(nval)
                if prev is not None and prev != nexpo:
                    return False
                seen[nval] = nexpo
                nxt.append((nval, nexpo, idx))
        frontier = nxt
    return True


def subgroup_recovery_ok(group: FinAbGroup) -> bool:
    """Every subgroup D equals the intersection of all H containing D
    with cyclic quotient G/H."""
    subs = enumerate_subgroups(group)
    cyc = []
    for h in subs:
        if quotient_data(group, h).group.is_cyclic:
            cyc.append(h)
    for d in subs:
        acc = None
        for h in cyc:
            if d.is_subset_of(h):
                acc = h if acc is None else acc.meet(h)
        if acc is None or acc != d:
            return False
    return True
