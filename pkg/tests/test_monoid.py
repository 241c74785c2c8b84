"""Index sets, the marking map, and the freeness analysis.

Set cardinalities for the anchor groups are frozen from first
principles (the closed-form count for cyclic groups is checked against
direct enumeration), and the degradation path of the bounded
injectivity sweep is pinned.
"""

import pytest

from grlat.abelian import make_group, prime_factors, sylow
from grlat.errors import CapacityError, ScopeError
from grlat.monoid import (
    analyze_monoid,
    beta,
    build_sets,
    cardinality_formulas,
    subgroup_recovery_ok,
)

FROZEN_COUNTS = {
    (9,): {"stilde": 4, "s": 3, "t": 3, "s_prime": 3, "s_dprime": 3},
    (2, 3, 5): {"stilde": 42, "s": 19, "t": 12, "s_prime": 12, "s_dprime": 12},
    (3, 6): {"stilde": 48, "s": 32, "t": 23, "s_prime": 28, "s_dprime": 23},
}


def test_frozen_counts():
    for facs, expected in FROZEN_COUNTS.items():
        fam = build_sets(make_group(list(facs)))
        assert fam.counts == expected, facs


def test_stilde_structure():
    fam = build_sets(make_group([9]))
    for pair in fam.stilde:
        assert not pair.inertia.is_trivial
        assert pair.decomposition.contains(pair.frob)
    assert len(fam.projection) == len(fam.stilde)
    assert set(fam.projection) == set(range(len(fam.s_pairs)))


def test_cardinality_formulas_anchor():
    assert cardinality_formulas(make_group([12])) == (12, 9)
    assert cardinality_formulas(make_group([9])) == (3, 3)
    assert cardinality_formulas(make_group([30])) == (19, 12)
    with pytest.raises(ScopeError):
        cardinality_formulas(make_group([3, 3]))


def test_cardinality_formulas_match_enumeration():
    for facs in ([4], [9], [12], [15], [30], [100]):
        g = make_group(facs)
        s_val, t_val = cardinality_formulas(g)
        fam = build_sets(g)
        assert s_val == fam.counts["s"], facs
        assert t_val == fam.counts["t"], facs


def test_decomposition_law_direct():
    # beta of a mixed-order pair is the sum over its Sylow slices
    g = make_group([15])
    fam = build_sets(g)
    mixed = [
        pr
        for pr in fam.s_pairs
        if len(prime_factors(pr.inertia.order)) > 1 and pr.dec.is_cyclic
    ]
    assert mixed
    by_key = {(pr.inertia.basis, pr.dec.basis): pr for pr in fam.s_pairs}
    for pr in mixed:
        total = None
        for p in sorted(prime_factors(pr.inertia.order)):
            part = pr.inertia.meet(sylow(g, p))
            v = beta(fam, by_key[(part.basis, pr.dec.basis)])
            total = v if total is None else tuple(a + b for a, b in zip(total, v))
        assert total == beta(fam, pr)


def test_beta_injective_on_irreducibles_z9():
    fam = build_sets(make_group([9]))
    values = [beta(fam, fam.s_pairs[i]) for i in fam.s_prime]
    assert all(any(v) for v in values)
    assert len(set(values)) == len(values)


def test_analysis_free_cyclic():
    rep = analyze_monoid(make_group([9]))
    assert rep.verdict == "FREE"
    assert rep.all_checks_pass
    assert rep.bounded_injectivity_ok
    assert rep.bound == 3 and not rep.bound_reduced
    rep30 = analyze_monoid(make_group([30]))
    assert rep30.verdict == "FREE" and rep30.all_checks_pass


def test_analysis_not_free_mixed():
    rep = analyze_monoid(make_group([3, 6]))
    assert rep.verdict == "NOT-FREE"
    assert not rep.bounded_injectivity_expected
    assert rep.all_checks_pass
    counts = rep.family.counts
    assert counts["s_prime"] > counts["t"]


def test_bound_degradation():
    g = make_group([2, 2, 2, 2])
    rep = analyze_monoid(g)
    assert rep.bound == 2 and rep.bound_reduced
    assert rep.all_checks_pass
    with pytest.raises(CapacityError):
        analyze_monoid(g, bound=3)


def test_bound_guard():
    with pytest.raises(ScopeError):
        analyze_monoid(make_group([9]), bound=1)


def test_sprime_vs_t_count_law():
    # #S' >= #T always, equality exactly for cyclic or prime-power order
    for facs in (
        [4],
        [9],
        [15],
        [30],
        [100],
        [2, 2],
        [3, 3],
        [2, 4],
        [8, 8],
        [2, 6],
        [3, 6],
        [6, 6],
    ):
        g = make_group(facs)
        fam = build_sets(g)
        np_, nt = fam.counts["s_prime"], fam.counts["t"]
        assert np_ >= nt, facs
        expect_eq = g.is_cyclic or len(prime_factors(g.order)) == 1
        assert (np_ == nt) == expect_eq, facs


def test_subgroup_recovery():
    for facs in ([9], [3, 3], [2, 6], [30]):
        assert subgroup_recovery_ok(make_group(facs)), facs
