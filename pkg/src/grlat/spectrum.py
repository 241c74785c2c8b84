"""Valuation spectrum experiments over cyclic p-power group rings.

Samples elements x = (sigma - 1)*u + p^r*eps in Z[Z/p^r], computes the
valuation c_i of each cyclotomic character value by an integer
resultant, cross-checks the sum of the c_i against the p-valuation of
a quotient cardinality obtained from a Smith form, and tests whether
the total lands in the predicted value set.

The two totals come from genuinely independent computations (resultant
arithmetic vs integer lattice indices), so their agreement on every
sample is the oracle identity the module exists to exercise.
"""

from dataclasses import dataclass
from random import Random

from .abelian import FinAbGroup, make_group, prime_factors
from .errors import CapacityError, DegenerateElementError, ScopeError
from .grouprings import GroupRing, GroupRingElem, IdealLattice
from .polys import cyclotomic, resultant_monic

MAX_RESAMPLE = 512


def _ord_p(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _check_scope(p: int, r: int) -> None:
    if r < 1:
        raise ScopeError("level r must be at least 1")
    facs = prime_factors(p)
    if p < 3 or p % 2 == 0 or facs != {p: 1}:
        raise ScopeError("p must be an odd prime")


def cyclic_ring(p: int, r: int) -> GroupRing:
    """Group ring Z[Z/p^r] with the generator at element index 1."""
    _check_scope(p, r)
    return GroupRing(make_group([p**r]))


def element_poly(x: GroupRingElem) -> list:
    """Polynomial representative of x under sigma -> X.

    Valid for rings built by cyclic_ring, whose element order is
    0, sigma, sigma^2, ... in sequence.
    """
    return list(x.coeffs)


def char_valuation(x: GroupRingElem, i: int) -> int:
    """p-adic valuation of the i-th level character value of x.

    Equals ord_p of Res(Phi_{p^i}, f_x); by total ramification of the
    p^i-th cyclotomic field at p this is the normalized additive local
    valuation of the character value.  Raises if the character kills x.
    """
    m = x.ring.group.order
    p = min(prime_factors(m))
    if i < 1 or p**i > m:
        raise ScopeError("character level out of range")
    res = resultant_monic(cyclotomic(p**i), element_poly(x))
    if res == 0:
        raise DegenerateElementError(f"character at level {i} vanishes on the element")
    return _ord_p(res, p)


@dataclass(frozen=True)
class SpectrumSample:
    """One sampled element with both valuation totals precomputed.

    a_values uses None where the corresponding character kills u
    (infinite valuation); c_values is always finite by construction.
    """

    p: int
    r: int
    u: tuple
    epsilon: int
    x: tuple
    c_values: tuple
    a_values: tuple
    snf_total: int
    membership: bool
    attempts: int

    @property
    def total(self) -> int:
        return sum(self.c_values)


def predicted_membership(v: int, p: int, r: int, n: int = 1) -> bool:
    """Whether v lies in {rn, r(n+1), ..., r(n+p-1)} or beyond r(n+p-1)."""
    if n < 1:
        raise ScopeError("n must be at least 1")
    _check_scope(p, r)
    top = r * (n + p - 1)
    if v > top:
        return True
    return v % r == 0 and r * n <= v <= top


def build_sample(p: int, r: int, ucoeffs, epsilon: int = 1, attempts: int = 1) -> SpectrumSample:
    """Assemble x = (sigma-1)*u + p^r*epsilon and compute both totals."""
    _check_scope(p, r)
    if epsilon % p == 0:
        raise ScopeError("epsilon must be prime to p")
    ring = cyclic_ring(p, r)
    n = ring.group.order
    if len(ucoeffs) != n:
        raise ScopeError(f"expected {n} coefficients")
    u = ring.from_coeffs(list(ucoeffs))
    sigma = ring.delta(ring.group.element((1,)))
    x = (sigma - ring.one()) * u + ring.one().scale(p**r * epsilon)
    c_values = tuple(char_valuation(x, i) for i in range(1, r + 1))
    a_values = []
    fu = element_poly(u)
    for i in range(1, r + 1):
        res = resultant_monic(cyclotomic(p**i), fu)
        a_values.append(None if res == 0 else _ord_p(res, p))
    ideal = IdealLattice.from_elements(ring, [ring.full_norm(), x])
    snf_total = _ord_p(ideal.integral_index(), p)
    # the oracle identity; a failure here is a broken claim, not bad input
    assert sum(c_values) == snf_total, (c_values, snf_total)
    return SpectrumSample(
        p,
        r,
        tuple(ucoeffs),
        epsilon,
        tuple(x.coeffs),
        c_values,
        tuple(a_values),
        snf_total,
        predicted_membership(snf_total, p, r, 1),
        attempts,
    )


def sample_spectrum(p: int, r: int, coeff_exp: int = 5, count: int = 100, seed: int = 0):
    """Draw count nondegenerate samples, coefficients uniform in [0, p^coeff_exp).

    Each slot reseeds from (seed, slot, attempt), so runs with the same
    parameters are reproducible bit for bit and dropping the count only
    truncates the list.  Rejected degenerate draws stay visible through
    the attempts field of the surviving sample.
    """
    _check_scope(p, r)
    if coeff_exp < 1:
        raise ScopeError("coeff_exp must be at least 1")
    n = p**r
    bound = p**coeff_exp
    samples = []
    for slot in range(count):
        for attempt in range(MAX_RESAMPLE):
            rng = Random(f"{seed}:{slot}:{attempt}")
            ucoeffs = tuple(rng.randrange(bound) for _ in range(n))
            try:
                samples.append(build_sample(p, r, ucoeffs, 1, attempt + 1))
                break
            except DegenerateElementError:
                continue
        else:
            raise CapacityError(f"slot {slot}: {MAX_RESAMPLE} degenerate draws in a row")
    return samples


@dataclass(frozen=True)
class ClaimReport:
    """Outcome of the per-sample structural claims."""

    augmentation_ok: bool
    dichotomy_ok: bool
    case1_ok: bool
    case2_ok: bool

    @property
    def ok(self) -> bool:
        return self.augmentation_ok and self.dichotomy_ok and self.case1_ok and self.case2_ok


def verify_claims(sample: SpectrumSample) -> ClaimReport:
    """Check the augmentation shape, the low-valuation dichotomy, and
    the two case consequences on one sample.

    Low case (some finite a_i < p-1): all a_i must be equal, and when
    1+a_1 < r(p-1) the total must be r*(1+a_1), landing in
    {r, ..., (p-1)r}.  High case (every a_i >= p-1, vanishing counts as
    infinite): every c_i >= min(p, r*p^{i-1}*(p-1)) and the total at
    least their sum.  For r >= 2 both strictness conditions hold
    automatically and the checks reduce to total == r*(1+a_1) resp.
    all c_i >= p with total >= pr; only at r = 1 can the level-1
    character value tie the constant term and escape the sharp form.
    """
    p, r = sample.p, sample.r
    ring = cyclic_ring(p, r)
    aug = ring.from_coeffs(list(sample.x)).augmentation()
    augmentation_ok = aug == p**r * sample.epsilon and sample.epsilon % p != 0
    finite = [a for a in sample.a_values if a is not None]
    low = bool(finite) and min(finite) < p - 1
    if low:
        dichotomy_ok = len(finite) == len(sample.a_values) and len(set(finite)) == 1
        a1 = sample.a_values[0]
        if dichotomy_ok and 1 + a1 < r * (p - 1):
            case1_ok = sample.total == r * (1 + a1) and r <= sample.total <= r * (p - 1)
        else:
            # tied leading valuations: only a lower bound survives
            case1_ok = dichotomy_ok and sample.total >= p - 1
        case2_ok = True
    else:
        dichotomy_ok = True
        case1_ok = True
        floors = [min(p, r * p ** (i - 1) * (p - 1)) for i in range(1, r + 1)]
        case2_ok = all(c >= f for c, f in zip(sample.c_values, floors)) and sample.total >= sum(
            floors
        )
    return ClaimReport(augmentation_ok, dichotomy_ok, case1_ok, case2_ok)
