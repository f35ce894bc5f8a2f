import itertools
import math

import pytest

from dfaorev.complexity import (
    corollary_lower_bound,
    formula_F,
    formula_G,
    lemma_tau,
    stirling2,
    tau_ulm_size,
    valid_splits,
    verify_lemma_tau,
)
from dfaorev.monoid import OutputMap, tau_orbit_size, u_lm_generators


def set_partitions(items):
    """Brute-force enumeration of all set partitions."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]


def partition_count(l, i):
    return sum(1 for p in set_partitions(list(range(l))) if len(p) == i)


def disjoint_count(k, l, m):
    return sum(
        1 for f in itertools.product(range(k), repeat=l + m) if not set(f[:l]) & set(f[l:])
    )


def test_stirling_examples():
    for l in range(1, 8):
        assert stirling2(l, l) == 1
        assert stirling2(l, 1) == 1
    assert stirling2(4, 2) == 7 == partition_count(4, 2)
    assert stirling2(5, 3) == 25 == partition_count(5, 3)
    assert stirling2(0, 0) == 1
    assert stirling2(3, 0) == 0
    assert stirling2(2, 5) == 0


@pytest.mark.parametrize("l", range(0, 8))
def test_stirling_matches_partitions(l):
    for i in range(0, l + 1):
        assert stirling2(l, i) == partition_count(l, i)


def test_formula_F_examples():
    assert formula_F(3, 2, 3) == 30 == disjoint_count(3, 2, 3)
    assert formula_F(4, 2, 3) == 204 == disjoint_count(4, 2, 3)
    assert formula_F(2, 1, 1) == 2


@pytest.mark.parametrize("k", range(2, 7))
def test_formula_F_against_enumeration(k):
    for n in range(2, 7):
        if k**n > 50_000:
            continue
        for l in range(1, n):
            assert formula_F(k, l, n - l) == disjoint_count(k, l, n - l)


def test_formula_G_cases():
    assert formula_G(2, 3, 4) == 1
    assert formula_G(3, 2, 3) == 3
    assert formula_G(4, 2, 3) == 6
    assert formula_G(7, 4, 6) == 12


def test_tau_ulm_size_examples():
    assert tau_ulm_size(3, 2, 3) == 243 - 30 + 3 == 216
    assert tau_ulm_size(4, 2, 3) == 1024 - 204 + 6 == 826
    assert tau_ulm_size(3, 3, 4) == 2125


@pytest.mark.parametrize("args", [(1, 2, 3), (5, 2, 3), (3, 3, 2), (3, 0, 4)])
def test_tau_ulm_size_preconditions(args):
    with pytest.raises(ValueError):
        tau_ulm_size(*args)


def test_big_values_are_exact():
    n = 60
    v = tau_ulm_size(7, 29, 31)
    assert v == 7**n - formula_F(7, 29, 31) + math.lcm(29, 31)
    assert v > 2**64


def test_valid_splits():
    for n in (1, 2, 3, 4, 6):
        assert valid_splits(n) == []
    assert valid_splits(5) == [(2, 3)]
    assert valid_splits(9) == [(2, 7), (4, 5)]


def test_corollary_examples():
    assert corollary_lower_bound(2, 5).value == 31
    b = corollary_lower_bound(6, 9)
    assert b.value == 9657446
    assert (b.l, b.m) == (4, 5)
    with pytest.raises(ValueError, match="undefined"):
        corollary_lower_bound(3, 6)
    with pytest.raises(ValueError):
        corollary_lower_bound(5, 5)


@pytest.mark.parametrize("n", [5, 7, 8, 9, 10, 11, 13])
def test_binary_output_bound_is_one_short(n):
    assert corollary_lower_bound(2, n).value == 2**n - 1


def test_five_eight_cell_by_orbit():
    # the k=5, n=8 cell, recomputed from the monoid itself
    assert corollary_lower_bound(5, 8).value == 369020
    gens = u_lm_generators(3, 5)
    assert tau_orbit_size(gens, lemma_tau(5, 3, 5)) == 369020


def test_lemma_tau_examples():
    assert lemma_tau(6, 3, 5).to_list() == [1, 2, 3, 4, 5, 6, 6, 6]
    assert lemma_tau(5, 4, 5).to_list() == [1, 2, 3, 3, 4, 5, 5, 5, 5]
    assert lemma_tau(3, 4, 4).to_list() == [1, 1, 1, 1, 2, 3, 3, 3]
    assert lemma_tau(3, 2, 2).to_list() == [1, 2, 3, 3]
    assert lemma_tau(2, 3, 4).to_list() == [1, 1, 1, 2, 2, 2, 2]


def test_lemma_tau_all_properties_sweep():
    count = 0
    for n in range(2, 10):
        for l in range(1, n // 2 + 1):
            m = n - l
            for k in range(2, n):
                check = verify_lemma_tau(lemma_tau(k, l, m), k, l, m)
                assert check.all(), (k, l, m, check)
                count += 1
    assert count > 50


def test_verify_rejects_constant_tau():
    check = verify_lemma_tau(OutputMap([0] * 5, 3), 3, 2, 3)
    assert not check.surjective
    assert not check.all()


def test_alpha_orbit_of_lemma_tau_is_lcm():
    assert verify_lemma_tau(lemma_tau(4, 2, 3), 4, 2, 3).alpha_orbit_size == 6


@pytest.mark.parametrize("l, m", [(2, 3), (2, 5), (3, 4)])
def test_theorem_end_to_end(l, m):
    gens = u_lm_generators(l, m)
    for k in range(2, l + m):
        t = lemma_tau(k, l, m)
        assert tau_orbit_size(gens, t) == tau_ulm_size(k, l, m)


def test_formula_below_full_count():
    for k in range(3, 7):
        for n in (5, 7, 8, 9):
            for l, m in valid_splits(n):
                if k < n and formula_F(k, l, m) > formula_G(k, l, m):
                    assert tau_ulm_size(k, l, m) < k**n
