"""Integral group rings of finite abelian groups, their ideal lattices,
and finitely generated torsion modules.

Ring elements are dense coefficient tuples over a fixed enumeration of
the group, with int or Fraction entries.  A lattice in the rational
group algebra is (den, rows): the row span of an integer HNF basis,
divided by den, kept gcd-reduced so equal lattices compare equal.

Modules are presented as Z^n / (relation lattice) with one integer
action matrix per group generator, acting on row vectors from the
right.  Finiteness (full-rank relations) is enforced at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from . import intmat as im
from .abelian import FinAbGroup, GroupElement, Subgroup
from .errors import (
    CapacityError,
    ContainmentError,
    InfiniteModuleError,
    NotFullRankError,
    ParentMismatchError,
)

RING_ORDER_CAP = 4096


class GroupRing:
    """Z[G] for a finite abelian G, with cached index arithmetic."""

    def __init__(self, group: FinAbGroup, cap: int = RING_ORDER_CAP):
        if group.order > cap:
            raise CapacityError(
                f"group of order {group.order} exceeds ring cap {cap}"
            )
        self.group = group
        self.n = group.order
        self.elems = list(group.elements())
        self._index = {e.coords: i for i, e in enumerate(self.elems)}
        # difference table: sub[i][j] = index of elems[i] - elems[j]
        self._sub = None

    def index_of(self, elem: GroupElement) -> int:
        return self._index[elem.coords]

    def _sub_table(self):
        if self._sub is None:
            n = self.n
            tbl = []
            for ei in self.elems:
                row = [0] * n
                for j, ej in enumerate(self.elems):
                    row[j] = self._index[(ei - ej).coords]
                tbl.append(row)
            self._sub = tbl
        return self._sub

    # -- element constructors ------------------------------------------------

    def zero(self) -> "GroupRingElem":
        return GroupRingElem(self, (0,) * self.n)

    def one(self) -> "GroupRingElem":
        return self.delta(self.group.zero())

    def delta(self, elem: GroupElement) -> "GroupRingElem":
        if elem.group != self.group:
            raise ParentMismatchError("element from a different group")
        c = [0] * self.n
        c[self.index_of(elem)] = 1
        return GroupRingElem(self, tuple(c))

    def from_coeffs(self, coeffs) -> "GroupRingElem":
        coeffs = tuple(coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"need {self.n} coefficients")
        return GroupRingElem(self, coeffs)

    def norm_element(self, sub: Subgroup) -> "GroupRingElem":
        """Sum of the delta elements over a subgroup."""
        if sub.group != self.group:
            raise ParentMismatchError("subgroup of a different group")
        c = [0] * self.n
        for e in sub.elements():
            c[self.index_of(e)] = 1
        return GroupRingElem(self, tuple(c))

    def full_norm(self) -> "GroupRingElem":
        return GroupRingElem(self, (1,) * self.n)

    def augmentation_generators(self) -> list["GroupRingElem"]:
        """delta_g - 1 over the group generators; they generate the
        augmentation ideal as a ring ideal."""
        one = self.one()
        return [self.delta(g) - one for g in self.group.generators()]

    # -- matrices --------------------------------------------------------------

    def mult_matrix(self, x: "GroupRingElem"):
        """Rows M with (coeffs of y) @ M = coeffs of y*x."""
        if x.ring is not self:
            raise ParentMismatchError("element of a different ring")
        sub = self._sub_table()
        n = self.n
        xc = x.coeffs
        return [[xc[sub[k][i]] for k in range(n)] for i in range(n)]

    def translation_matrix(self, elem: GroupElement):
        return self.mult_matrix(self.delta(elem))

    def __repr__(self):
        return f"GroupRing({self.group!r})"


@dataclass(frozen=True)
class GroupRingElem:
    ring: GroupRing
    coeffs: tuple

    def _check(self, other):
        if self.ring is not other.ring:
            raise ParentMismatchError("elements of different rings")

    def __add__(self, other):
        self._check(other)
        return GroupRingElem(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return GroupRingElem(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return GroupRingElem(self.ring, tuple(-a for a in self.coeffs))

    def scale(self, c):
        return GroupRingElem(self.ring, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        sub = self.ring._sub_table()
        n = self.ring.n
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i, ai in enumerate(a):
            if ai:
                for k in range(n):
                    bj = b[sub[k][i]]
                    if bj:
                        out[k] += ai * bj
        return GroupRingElem(self.ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not defined here")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def augmentation(self):
        return sum(self.coeffs)

    def is_integral(self):
        return all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1) for c in self.coeffs)

    def translate(self, elem: GroupElement) -> "GroupRingElem":
        """Multiply by delta_elem (a coefficient permutation)."""
        return self * self.ring.delta(elem)

    def __repr__(self):
        terms = []
        for c, e in zip(self.coeffs, self.ring.elems):
            if c:
                terms.append(f"{c}*d{e.coords}")
        return " + ".join(terms) if terms else "0"


def _coeffs_to_int_rows(elems):
    """Common-denominator integer rows for a list of ring elements."""
    den = 1
    for e in elems:
        for c in e.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
    rows = []
    for e in elems:
        rows.append([int(c * den) for c in e.coeffs])
    return den, rows


class IdealLattice:
    """A full-rank lattice (1/den) * rowspan(basis) inside Q[G].

    basis is a canonical integer row-HNF; gcd(den, content(basis)) = 1,
    so equal lattices have identical (den, basis).
    """

    __slots__ = ("ring", "den", "basis")

    def __init__(self, ring: GroupRing, den: int, rows):
        if den < 1:
            raise ValueError("denominator must be positive")
        h = im.hnf([list(r) for r in rows], ring.n)
        if len(h) != ring.n:
            raise NotFullRankError(
                f"lattice rank {len(h)} < ring rank {ring.n}"
            )
        g = den
        for r in h:
            for x in r:
                if x:
                    g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            den //= g
            h = [[x // g for x in r] for r in h]
        self.ring = ring
        self.den = den
        self.basis = im.frozen(h)

    # -- constructors --------------------------------------------------------

    @classmethod
    def standard(cls, ring: GroupRing) -> "IdealLattice":
        return cls(ring, 1, im.identity(ring.n))

    @classmethod
    def from_elements(cls, ring: GroupRing, elems, orbit: bool = True) -> "IdealLattice":
        """Lattice spanned by elems; with orbit=True, their full G-orbit,
        i.e. the ideal they generate."""
        xs = list(elems)
        if orbit:
            orbit_elems = []
            for x in xs:
                for g in ring.elems:
                    orbit_elems.append(x.translate(g))
            xs = orbit_elems
        den, rows = _coeffs_to_int_rows(xs)
        return cls(ring, den, rows)

    # -- structure -----------------------------------------------------------

    def integral_index(self) -> int:
        """[Z^n : den * L], the index of the cleared-denominator lattice."""
        return im.lattice_index([list(r) for r in self.basis], self.ring.n)

    def index_in(self, other: "IdealLattice") -> int:
        """[other : self]; raises ContainmentError if self is not inside other."""
        inv = self.invariants_in(other)
        out = 1
        for d in inv:
            out *= d
        return out

    def invariants_in(self, other: "IdealLattice") -> tuple:
        """Invariant factors of other/self (requires self <= other)."""
        a, b = self._aligned(other)
        coords = im.lattice_quotient_coords(b, a)  # rows of self in basis of other
        return im.invariant_factors(coords, self.ring.n)

    def _aligned(self, other):
        """Integer bases of self and other over a common denominator."""
        if self.ring is not other.ring:
            raise ParentMismatchError("lattices in different rings")
        l = self.den * other.den // gcd(self.den, other.den)
        sa = l // self.den
        sb = l // other.den
        a = [[x * sa for x in r] for r in self.basis]
        b = [[x * sb for x in r] for r in other.basis]
        return a, b

    def contains(self, other: "IdealLattice") -> bool:
        b, a = other._aligned(self)
        return im.lattice_contains(a, b)

    def contains_element(self, x: GroupRingElem) -> bool:
        den, rows = _coeffs_to_int_rows([x])
        l = den * self.den // gcd(den, self.den)
        v = [c * (l // den) for c in rows[0]]
        a = [[c * (l // self.den) for c in r] for r in self.basis]
        h, piv = im.hnf_with_pivots(a)
        return im.in_span(h, piv, v)

    def is_gamma_stable(self) -> bool:
        for g in self.ring.group.generators():
            m = self.ring.translation_matrix(g)
            imb = [im.vec_mat(list(r), m) for r in self.basis]
            if not im.lattice_contains([list(r) for r in self.basis], imb):
                return False
        return True

    # -- arithmetic ------------------------------------------------------------

    def scale(self, q) -> "IdealLattice":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("scale factor must be positive")
        num, d = q.numerator, q.denominator
        rows = [[x * num for x in r] for r in self.basis]
        return IdealLattice(self.ring, self.den * d, rows)

    def multiply_element(self, x: GroupRingElem) -> "IdealLattice":
        den, rows = _coeffs_to_int_rows([x])
        xi = self.ring.from_coeffs(tuple(rows[0]))
        m = self.ring.mult_matrix(xi)
        out = [im.vec_mat(list(r), m) for r in self.basis]
        return IdealLattice(self.ring, self.den * den, out)

    def sum(self, other: "IdealLattice") -> "IdealLattice":
        a, b = self._aligned(other)
        l = self.den * other.den // gcd(self.den, other.den)
        return IdealLattice(self.ring, l, a + b)

    def meet(self, other: "IdealLattice") -> "IdealLattice":
        a, b = self._aligned(other)
        l = self.den * other.den // gcd(self.den, other.den)
        return IdealLattice(self.ring, l, im.lattice_intersection(a, b))

    def elements(self) -> list[GroupRingElem]:
        """Basis rows as ring elements (with the denominator applied)."""
        out = []
        for r in self.basis:
            if self.den == 1:
                out.append(self.ring.from_coeffs(tuple(r)))
            else:
                out.append(self.ring.from_coeffs(tuple(Fraction(x, self.den) for x in r)))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, IdealLattice)
            and self.ring is other.ring
            and self.den == other.den
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((id(self.ring), self.den, self.basis))

    def __repr__(self):
        return f"IdealLattice(den={self.den}, index={self.integral_index()})"


@dataclass(frozen=True)
class FiniteModule:
    """Finite module Z^n / relations with an abelian group action.

    gen_actions[i] is the integer matrix of the i-th group generator,
    acting on row vectors from the right.  The relation lattice must be
    full rank (otherwise the module is infinite and rejected).
    """

    group: FinAbGroup
    rank: int
    relations: tuple
    gen_actions: tuple

    @classmethod
    def build(cls, group: FinAbGroup, relations, gen_actions) -> "FiniteModule":
        n = len(gen_actions[0]) if gen_actions else (len(relations[0]) if relations else 0)
        h = im.hnf([list(r) for r in relations], n)
        if len(h) != n:
            raise InfiniteModuleError(
                f"relation lattice has rank {len(h)} < {n}; module is infinite"
            )
        mod = cls(group, n, im.frozen(h), tuple(im.frozen(a) for a in gen_actions))
        mod.validate()
        return mod

    @property
    def order(self) -> int:
        if self.rank == 0:
            return 1
        return im.lattice_index([list(r) for r in self.relations], self.rank)

    def invariants(self) -> tuple:
        if self.rank == 0:
            return ()
        return im.invariant_factors([list(r) for r in self.relations], self.rank)

    def exponent(self) -> int:
        inv = self.invariants()
        return inv[-1] if inv else 1

    def action_matrix(self, elem: GroupElement):
        if elem.group != self.group:
            raise ParentMismatchError("element of a different group")
        out = im.identity(self.rank)
        for c, a in zip(elem.coords, self.gen_actions):
            if c:
                out = im.mat_mul(out, im.mat_pow([list(r) for r in a], c))
        return out

    def validate(self):
        n = self.rank
        rel = [list(r) for r in self.relations]
        h, piv = im.hnf_with_pivots(rel, n)
        for gi, a in enumerate(self.gen_actions):
            a = [list(r) for r in a]
            # relations must be stable under the action
            for r in rel:
                if not im.in_span(h, piv, im.vec_mat(r, a)):
                    raise ContainmentError(
                        f"relations not stable under generator {gi}"
                    )
            # generator order annihilates the quotient
            d = self.group.factors[gi]
            ad = im.mat_pow(a, d)
            for i in range(n):
                row = [ad[i][j] - (1 if i == j else 0) for j in range(n)]
                if not im.in_span(h, piv, row):
                    raise ContainmentError(
                        f"generator {gi} does not have order dividing {d} on the module"
                    )
        # pairwise commutation on the quotient
        for i in range(len(self.gen_actions)):
            for j in range(i + 1, len(self.gen_actions)):
                a = [list(r) for r in self.gen_actions[i]]
                b = [list(r) for r in self.gen_actions[j]]
                ab = im.mat_mul(a, b)
                ba = im.mat_mul(b, a)
                for r in range(n):
                    row = [ab[r][c] - ba[r][c] for c in range(n)]
                    if not im.in_span(h, piv, row):
                        raise ContainmentError("generator actions do not commute on the module")

    def with_extra_relations(self, extra_rows) -> "FiniteModule":
        rows = [list(r) for r in self.relations] + [list(r) for r in extra_rows]
        return FiniteModule.build(self.group, rows, self.gen_actions)

    def __repr__(self):
        return f"FiniteModule(order={self.order}, invariants={self.invariants()})"


def module_from_lattice_pair(big: IdealLattice, small: IdealLattice) -> FiniteModule:
    """The G-module big/small for nested G-stable lattices."""
    a, b = small._aligned(big)  # integer bases over a common denominator
    coords_small = im.lattice_quotient_coords(b, a)
    ring = big.ring
    n = ring.n
    actions = []
    for g in ring.group.generators():
        m = ring.translation_matrix(g)
        rows = []
        for r in b:
            img = im.vec_mat(r, m)
            rows.append(_coords_in(b, img))
        actions.append(rows)
    return FiniteModule.build(ring.group, coords_small, actions)


def _coords_in(basis_rows, v):
    h, u, piv = im.hnf_with_transform(basis_rows)
    c = im.span_coefficients(h, [next(j for j, x in enumerate(r) if x) for r in h], list(v))
    if c is None:
        raise ContainmentError("vector not in lattice")
    x = [0] * len(basis_rows)
    for ci, urow in zip(c, u):
        if ci:
            for j in range(len(x)):
                x[j] += ci * urow[j]
    return x


def regular_module(ring: GroupRing, rel: IdealLattice) -> FiniteModule:
    """Z[G]/rel as a module, for an integral G-stable full-rank ideal lattice."""
    if rel.den != 1:
        raise ContainmentError("relation lattice must be integral")
    actions = [ring.translation_matrix(g) for g in ring.group.generators()]
    return FiniteModule.build(ring.group, [list(r) for r in rel.basis], actions)


def inertia_module(ring: GroupRing, inertia: Subgroup, frob: GroupElement) -> FiniteModule:
    """The module Z[G/I] / (1 - fbar^{-1} + #I) attached to (I, frob).

    The parent group acts through its quotient by I; frob is any element
    of the parent whose class mod I plays the Frobenius role.
    """
    from .abelian import quotient_data

    group = ring.group
    if inertia.group != group or frob.group != group:
        raise ParentMismatchError("inputs from a different group")
    qd = quotient_data(group, inertia)
    qring = GroupRing(qd.group)
    fbar = qd.proj(frob)
    tau = qring.one() - qring.delta(-fbar) + qring.one().scale(inertia.order)
    rel = IdealLattice.from_elements(qring, [tau], orbit=True)
    # the parent group acts through the quotient
    actions = [qring.translation_matrix(qd.proj(g)) for g in group.generators()]
    return FiniteModule.build(group, [list(r) for r in rel.basis], actions)
