"""Finite abelian groups, their subgroups and quotients.

A group is a chain of invariant factors d_1 | d_2 | ... | d_k, all >= 2,
and its elements are coordinate tuples mod the d_i.  A subgroup is stored
as the row-HNF basis of its preimage lattice L with
diag(d) Z^k <= L <= Z^k, which makes joins, meets, images and preimages
plain lattice arithmetic (see intmat).

make_group() accepts any factor list and CRT-normalizes it, so callers
can say make_group([6, 3]) and get the canonical chain (3, 6).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterator

from . import intmat as im
from .errors import (
    CapacityError,
    ContainmentError,
    InvalidFactorError,
    ParentMismatchError,
)

ELEMENT_CAP = 1_000_000
SUBGROUP_CAP = 10_000


def _lcm(a, b):
    return a * b // gcd(a, b)


def prime_factors(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def make_group(factors) -> "FinAbGroup":
    """Build a group from arbitrary positive integer factors.

    Factors equal to 1 are dropped; anything < 1 is rejected.  The result
    is the canonical invariant-factor chain, e.g. [6, 3] -> (3, 6) and
    [4, 6] -> (2, 12).
    """
    pows: dict[int, list[int]] = {}
    for f in factors:
        if not isinstance(f, int) or f < 1:
            raise InvalidFactorError(f"factor {f!r} is not a positive integer")
        if f == 1:
            continue
        for p, e in prime_factors(f).items():
            pows.setdefault(p, []).append(e)
    k = max((len(v) for v in pows.values()), default=0)
    chain = [1] * k
    for p, exps in pows.items():
        exps.sort()
        # align the largest exponents with the last invariant factor
        for i, e in enumerate(exps):
            chain[k - len(exps) + i] *= p ** e
    return FinAbGroup(tuple(chain))


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group prod Z/d_i with d_1 | d_2 | ... | d_k, d_i >= 2."""

    factors: tuple[int, ...]

    def __post_init__(self):
        prev = 1
        for d in self.factors:
            if not isinstance(d, int) or d < 2:
                raise InvalidFactorError(f"invariant factor {d!r} must be an int >= 2")
            if d % prev:
                raise InvalidFactorError(
                    f"factors {self.factors} do not form a divisibility chain"
                )
            prev = d

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    def primes(self):
        return sorted(prime_factors(self.order))

    def element(self, coords) -> "GroupElement":
        coords = tuple(c % d for c, d in zip(coords, self.factors))
        if len(coords) != self.rank:
            raise InvalidFactorError(
                f"need {self.rank} coordinates, got {len(coords)}"
            )
        return GroupElement(self, coords)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list["GroupElement"]:
        return [
            self.element(tuple(1 if j == i else 0 for j in range(self.rank)))
            for i in range(self.rank)
        ]

    def elements(self, cap: int = ELEMENT_CAP) -> Iterator["GroupElement"]:
        if self.order > cap:
            raise CapacityError(
                f"group of order {self.order} exceeds element cap {cap}"
            )
        coords = [0] * self.rank
        while True:
            yield GroupElement(self, tuple(coords))
            i = 0
            while i < self.rank:
                coords[i] += 1
                if coords[i] < self.factors[i]:
                    break
                coords[i] = 0
                i += 1
            else:
                return

    def __repr__(self):
        if not self.factors:
            return "FinAbGroup(trivial)"
        return "FinAbGroup(%s)" % " x ".join("Z/%d" % d for d in self.factors)


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    coords: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple((a + b) % d for a, b, d in zip(self.coords, other.coords, self.group.factors)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group, tuple((-a) % d for a, d in zip(self.coords, self.group.factors))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, n: int) -> "GroupElement":
        return GroupElement(
            self.group, tuple((a * n) % d for a, d in zip(self.coords, self.group.factors))
        )

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        out = 1
        for a, d in zip(self.coords, self.group.factors):
            out = _lcm(out, d // gcd(d, a))
        return out

    def _check(self, other):
        if self.group != other.group:
            raise ParentMismatchError("elements live in different groups")

    def __repr__(self):
        return f"elt{self.coords}"


class Subgroup:
    """Subgroup of a FinAbGroup, held as the HNF basis of its preimage lattice."""

    __slots__ = ("group", "basis")

    def __init__(self, group: FinAbGroup, basis):
        self.group = group
        self.basis = im.frozen(basis)

    # -- constructors -------------------------------------------------------

    @classmethod
    def trivial(cls, group: FinAbGroup) -> "Subgroup":
        return cls(group, [[group.factors[i] if j == i else 0 for j in range(group.rank)] for i in range(group.rank)])

    @classmethod
    def full(cls, group: FinAbGroup) -> "Subgroup":
        return cls(group, im.identity(group.rank))

    @classmethod
    def from_generators(cls, group: FinAbGroup, gens) -> "Subgroup":
        rows = [list(g.coords) for g in gens]
        for g in gens:
            if g.group != group:
                raise ParentMismatchError("generator from a different group")
        rows += [
            [group.factors[i] if j == i else 0 for j in range(group.rank)]
            for i in range(group.rank)
        ]
        return cls(group, im.hnf(rows, group.rank))

    # -- basic data ---------------------------------------------------------

    @property
    def order(self) -> int:
        k = self.group.rank
        if k == 0:
            return 1
        return self.group.order // im.lattice_index(self.basis, k)

    def structure(self) -> tuple[int, ...]:
        """Invariant factors of this subgroup as an abstract group."""
        k = self.group.rank
        if k == 0 or self.order == 1:
            return ()
        dmat = [[self.group.factors[i] if j == i else 0 for j in range(k)] for i in range(k)]
        coords = im.lattice_quotient_coords(self.basis, dmat)
        return im.invariant_factors(coords, k)

    def as_group(self) -> FinAbGroup:
        return FinAbGroup(self.structure())

    @property
    def is_cyclic(self) -> bool:
        return len(self.structure()) <= 1

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def generators(self) -> list[GroupElement]:
        out = []
        for row in self.basis:
            e = self.group.element(row)
            if not e.is_zero:
                out.append(e)
        return out

    # -- predicates and arithmetic ------------------------------------------

    def contains(self, elem: GroupElement) -> bool:
        if elem.group != self.group:
            raise ParentMismatchError("element from a different group")
        h, piv = self.basis, [next(j for j, x in enumerate(r) if x) for r in self.basis]
        return im.in_span(list(map(list, self.basis)), piv, list(elem.coords))

    def is_subset_of(self, other: "Subgroup") -> bool:
        self._check(other)
        return im.lattice_contains(list(map(list, other.basis)), list(map(list, self.basis)))

    def join(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        return Subgroup(self.group, im.lattice_sum(self.basis, other.basis))

    def meet(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        return Subgroup(
            self.group,
            im.lattice_intersection(list(map(list, self.basis)), list(map(list, other.basis))),
        )

    def elements(self, cap: int = ELEMENT_CAP) -> list[GroupElement]:
        if self.order > cap:
            raise CapacityError(f"subgroup of order {self.order} exceeds cap {cap}")
        out = [e for e in self.group.elements() if self.contains(e)]
        assert len(out) == self.order
        return out

    def cyclic_generator(self) -> GroupElement:
        n = self.order
        for e in self.elements():
            if e.order() == n:
                return e
        raise InvalidFactorError("subgroup is not cyclic")

    def _check(self, other):
        if self.group != other.group:
            raise ParentMismatchError("subgroups of different groups")

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group == other.group
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.group, self.basis))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.group!r})"


def cyclic_subgroup(elem: GroupElement) -> Subgroup:
    return Subgroup.from_generators(elem.group, [elem])


def enumerate_subgroups(group: FinAbGroup, cap: int = SUBGROUP_CAP) -> list[Subgroup]:
    """All subgroups, by closing the cyclic ones under joins.

    Every subgroup is a join of cyclic subgroups, so the closure is
    complete.  Raises CapacityError if the count passes cap or the group
    itself is too large to iterate.
    """
    cyclics = []
    seen = set()
    for e in group.elements():
        s = cyclic_subgroup(e)
        if s.basis not in seen:
            seen.add(s.basis)
            cyclics.append(s)
    subs = {s.basis: s for s in cyclics}
    frontier = list(cyclics)
    while frontier:
        cur = frontier.pop()
        for c in cyclics:
            j = cur.join(c)
            if j.basis not in subs:
                if len(subs) >= cap:
                    raise CapacityError(
                        f"more than {cap} subgroups in {group!r}"
                    )
                subs[j.basis] = j
                frontier.append(j)
    out = list(subs.values())
    out.sort(key=lambda s: (s.order, s.basis))
    return out


def sylow(group: FinAbGroup, p: int) -> Subgroup:
    """The p-Sylow subgroup (trivial when p does not divide the order)."""
    k = group.rank
    rows = []
    for i in range(k):
        d = group.factors[i]
        pe = 1
        while d % p == 0:
            d //= p
            pe *= p
        rows.append([group.factors[i] // pe if j == i else 0 for j in range(k)])
    return Subgroup(group, im.hnf(rows, k) if rows else [])


def sylow_complement(group: FinAbGroup, p: int) -> Subgroup:
    """The subgroup of order prime to p (the product of the other Sylows)."""
    k = group.rank
    rows = []
    for i in range(k):
        d = group.factors[i]
        pe = 1
        while d % p == 0:
            d //= p
            pe *= p
        rows.append([pe if j == i else 0 for j in range(k)])
    return Subgroup(group, im.hnf(rows, k) if rows else [])


@dataclass(frozen=True)
class QuotientData:
    """A quotient G/S with explicit projection and section maps.

    proj is x -> (x @ V)[idx] mod s computed from the Smith form of the
    subgroup lattice; lift sends a quotient element to one preimage.
    """

    source: FinAbGroup
    group: FinAbGroup
    kernel: Subgroup
    _v: tuple
    _vinv: tuple
    _snf: tuple
    _idx: tuple

    def proj(self, elem: GroupElement) -> GroupElement:
        if elem.group != self.source:
            raise ParentMismatchError("element not in the source group")
        y = im.vec_mat(list(elem.coords), [list(r) for r in self._v])
        return self.group.element(tuple(y[i] for i in self._idx))

    def lift(self, qelem: GroupElement) -> GroupElement:
        if qelem.group != self.group:
            raise ParentMismatchError("element not in the quotient group")
        k = self.source.rank
        y = [0] * k
        for c, i in zip(qelem.coords, self._idx):
            y[i] = c
        x = im.vec_mat(y, [list(r) for r in self._vinv])
        return self.source.element(tuple(x))

    def push(self, sub: Subgroup) -> Subgroup:
        if sub.group != self.source:
            raise ParentMismatchError("subgroup not in the source group")
        vcols = [[r[i] for i in self._idx] for r in self._v]
        rows = [im.vec_mat(list(b), vcols) for b in sub.basis]
        qk = self.group.rank
        rows += [
            [self.group.factors[i] if j == i else 0 for j in range(qk)]
            for i in range(qk)
        ]
        return Subgroup(self.group, im.hnf(rows, qk))

    def pull(self, qsub: Subgroup) -> Subgroup:
        if qsub.group != self.group:
            raise ParentMismatchError("subgroup not in the quotient group")
        vcols = [[r[i] for i in self._idx] for r in self._v]
        lat = im.preimage_lattice(None, vcols, [list(r) for r in qsub.basis])
        return Subgroup(self.source, lat)


def quotient_data(group: FinAbGroup, sub: Subgroup) -> QuotientData:
    if sub.group != group:
        raise ParentMismatchError("subgroup of a different group")
    k = group.rank
    if k == 0:
        return QuotientData(group, group, sub, (), (), (), ())
    diag, u, v = im.snf_with_transform([list(r) for r in sub.basis], k)
    assert len(diag) == k and all(d > 0 for d in diag)
    idx = tuple(i for i, d in enumerate(diag) if d > 1)
    q = FinAbGroup(tuple(diag[i] for i in idx))
    vinv = im.unimodular_inverse(v)
    return QuotientData(
        group, q, sub, im.frozen(v), im.frozen(vinv), tuple(diag), idx
    )


# ---------------------------------------------------------------------------
# classification helpers


def noncyclic_sylow_primes(factors: tuple[int, ...]):
    """Primes p whose p-Sylow is noncyclic: those dividing d_{k-1}."""
    if len(factors) < 2:
        return frozenset()
    return frozenset(prime_factors(factors[-2]))


def elementary_primes(factors: tuple[int, ...]):
    """Primes p such that the group is (p-group) x (cyclic prime-to-p).

    For a cyclic nontrivial group this is every prime divisor of the
    order; for the trivial group the convention here is the empty set.
    """
    nc = noncyclic_sylow_primes(factors)
    if len(nc) > 1:
        return frozenset()
    if len(nc) == 1:
        return nc
    if not factors:
        return frozenset()
    return frozenset(prime_factors(factors[-1]))


def is_elementary(factors: tuple[int, ...]) -> bool:
    """True when at most one Sylow subgroup is noncyclic (trivial group: True)."""
    if not factors:
        return True
    return len(noncyclic_sylow_primes(factors)) <= 1
