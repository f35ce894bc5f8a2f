import itertools
import math
import random

import pytest

from dfaorev.monoid import (
    GeneratorValidationError,
    OutputMap,
    close,
    closure_size,
    full_tm_generators,
    tau_orbit,
    tau_orbit_size,
    u_lm_alpha,
    u_lm_candidates,
    u_lm_contains,
    u_lm_generators,
    u_lm_size,
    v1n_generators,
    v_dn_contains,
    v_dn_size,
    v_n_generators,
)
from dfaorev.transforms import Permutation, Transformation, compose, identity, parse_cycles, permutation_order

from conftest import T, tau


def test_close_identity():
    assert len(close([identity(4)])) == 1


def test_close_errors():
    with pytest.raises(ValueError):
        close([])
    with pytest.raises(ValueError):
        close([T("[1,2]"), T("[1,2,3]")])


@pytest.mark.parametrize("n, size", [(2, 4), (3, 24), (4, 176), (5, 2110), (6, 32262)])
def test_v_n_closure_sizes(n, size):
    m = close(v_n_generators(n))
    assert len(m) == size
    assert closure_size(v_n_generators(n)) == size


def test_u23_closure_size():
    assert len(close(u_lm_generators(2, 3))) == 1857


def test_closure_invariants():
    m = close(v_n_generators(4))
    assert identity(4) in m
    for x in m:
        for g in m.generators:
            assert compose(g, x) in m
            assert compose(x, g) in m
    assert len(close(list(m.elements))) == len(m)


@pytest.mark.parametrize("n", [1, 3, 4])
def test_full_tm_closure(n):
    assert len(close(full_tm_generators(n))) == n**n


def test_full_tm_generators_shape():
    f1, f2, f3 = full_tm_generators(4)
    assert f1 == parse_cycles("(1,2,3,4)", 4)
    assert f2 == parse_cycles("(1,2)", 4)
    assert f3 == T("[2,2,3,4]")


def test_single_permutation_closure_is_cyclic():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 7)
        images = list(range(n))
        rng.shuffle(images)
        p = Permutation(images)
        assert len(close([p])) == permutation_order(p)


def test_tau_orbit_examples():
    t = tau("[1,2,1]")
    assert tau_orbit([identity(3)], t) == {t}
    assert tau_orbit_size(full_tm_generators(4), tau("[1,2,3,3]")) == 81
    assert tau_orbit_size(v_n_generators(5), tau("[1,2,1,2,3]")) == 218


def test_tau_orbit_degree_mismatch():
    with pytest.raises(ValueError):
        tau_orbit([identity(3)], tau("[1,2]"))


def test_tau_orbit_matches_closure_composition():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 5)
        k = rng.randint(1, 3)
        gens = [Transformation(rng.randrange(n) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        t = OutputMap((rng.randrange(k) for _ in range(n)), k)
        expected = {t.after(m) for m in close(gens)}
        assert tau_orbit(gens, t) == expected


def test_tau_orbit_sparse_path():
    # k^n above the bitmap threshold switches to set bookkeeping
    gens = v_n_generators(5)
    big = OutputMap([0, 1, 0, 1, 2], 40)
    small = OutputMap([0, 1, 0, 1, 2], 3)
    assert tau_orbit_size(gens, big) == tau_orbit_size(gens, small) == 218


def test_output_map():
    t = OutputMap.parse("[1,2,2]", 3)
    assert not t.is_surjective()
    assert OutputMap.parse("[3,1,2]").is_surjective()
    assert t.after(T("[3,3,1]")) == tau("[2,2,1]")
    with pytest.raises(ValueError):
        OutputMap([0, 3], 2)


# -- U_{l,m} -------------------------------------------------------------------


def test_u_lm_contains_examples():
    assert u_lm_contains(identity(5), 2, 3)
    assert u_lm_contains(T("[1,1,1,1,1]"), 2, 3)
    alpha = u_lm_alpha(2, 3)
    assert alpha == parse_cycles("(1,2)(3,4,5)", 5)
    assert u_lm_contains(alpha, 2, 3)
    # a permutation outside <alpha>
    assert not u_lm_contains(parse_cycles("(1,3)", 5), 2, 3)
    with pytest.raises(ValueError):
        u_lm_contains(identity(4), 2, 3)


def _filter_count(l, m):
    n = l + m
    return sum(u_lm_contains(t, l, m) for t in itertools.product(range(n), repeat=n))


@pytest.mark.parametrize("l, m", [(1, 1), (1, 2), (2, 2), (2, 3), (1, 4)])
def test_u_lm_size_matches_predicate(l, m):
    assert u_lm_size(l, m) == _filter_count(l, m)


def test_u_lm_size_values():
    assert u_lm_size(2, 3) == 1857
    # for l = m = 1, alpha is the identity; [1,1] merges the parts and misses 2
    assert u_lm_size(1, 1) == 2
    assert {t for t in itertools.product(range(2), repeat=2) if u_lm_contains(t, 1, 1)} == {(0, 1), (0, 0)}
    assert max(u_lm_size(2, 5), u_lm_size(3, 4)) == 610871


def test_u_lm_generators_first_candidate_for_u23():
    alpha, beta = u_lm_generators(2, 3)
    assert alpha == parse_cycles("(1,2)(3,4,5)", 5)
    assert beta == T("[3,2,3,4,1]") == u_lm_candidates(2, 3)[0]


@pytest.mark.parametrize("l, m", [(2, 3), (2, 5), (3, 4)])
def test_u_lm_generators_validated(l, m):
    gens = u_lm_generators(l, m)
    elems = close(gens)
    assert len(elems) == u_lm_size(l, m)
    assert all(u_lm_contains(t, l, m) for t in elems)


def test_u_lm_generators_preconditions():
    for l, m in [(1, 4), (2, 4), (3, 3), (3, 2)]:
        with pytest.raises(ValueError):
            u_lm_generators(l, m)
    with pytest.raises(GeneratorValidationError):
        u_lm_generators(2, 7)


# -- V^d_n ---------------------------------------------------------------------


def test_v_dn_contains_examples():
    assert v_dn_contains(identity(5), 1)
    for d in range(1, 6):
        assert v_dn_contains(T("[2,2,2,2,2]"), d)
    assert not v_dn_contains(parse_cycles("(1,2)", 5), 1)
    assert v_dn_size(1, 5) == sum(v_dn_contains(t, 1) for t in itertools.product(range(5), repeat=5)) == 2110


@pytest.mark.parametrize("n", range(2, 6))
def test_v_dn_with_d_equal_n(n):
    powers = set(close([Permutation((i + 1) % n for i in range(n))]))
    expected = 0
    for t in itertools.product(range(n), repeat=n):
        member = t in powers or len(set(t)) < n
        expected += member
        assert v_dn_contains(t, n) == member
    assert v_dn_size(n, n) == expected


def test_v_n_generators_table():
    alpha, beta = v_n_generators(6)
    assert alpha == parse_cycles("(1,2,3,4,5,6)", 6)
    assert beta == T("[1,4,1,5,6,2]")
    with pytest.raises(ValueError):
        v_n_generators(7)


def test_hard_coded_beta6_generates_v2_not_v1():
    m = close(v_n_generators(6))
    assert len(m) == v_dn_size(2, 6) == 32262
    assert all(v_dn_contains(t, 2) for t in m)
    assert v_dn_size(1, 6) == 31032


@pytest.mark.parametrize("n", range(2, 8))
def test_v1n_generators_validated(n):
    gens = v1n_generators(n)
    assert closure_size(gens) == v_dn_size(1, n)
    if n <= 6:
        assert all(v_dn_contains(t, 1) for t in close(gens))
