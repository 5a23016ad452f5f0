from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccat.modloc import (
    CapTooSmall,
    FinCommRing,
    RingAxiomError,
    RingModule,
    abelian_group_types,
    enumerate_modules,
    find_module_iso,
    fraction_operations_consistent,
    localize_module,
    localize_ring,
    mult_set,
    verify_localization_adjunction,
)


def pair_classes(m, S):
    """Count classes of Z/m × S under the relation generated by u(tx − sy) = 0, by flood fill."""
    pairs = [(x, s) for x in range(m) for s in S]
    seen, classes = set(), 0
    for start in pairs:
        if start in seen:
            continue
        classes += 1
        stack = [start]
        seen.add(start)
        while stack:
            x, s = stack.pop()
            for y, t in pairs:
                if (y, t) not in seen and any(u * (t * x - s * y) % m == 0 for u in S):
                    seen.add((y, t))
                    stack.append((y, t))
    return classes


def crt_order(m, S):
    """Primary components of Z/m survive unless some member of S is divisible by the prime."""
    out, n, p = 1, m, 2
    while n > 1:
        if n % p == 0:
            k = 1
            while n % p == 0:
                n //= p
                k *= p
            if not any(s % p == 0 for s in S):
                out *= k
        p += 1
    return out


def closure(m, gens):
    S = {1 % m} | {g % m for g in gens}
    while True:
        new = {s * t % m for s in S for t in S} - S
        if not new:
            return sorted(S)
        S |= new


@pytest.mark.parametrize("m,gens,expected", [
    (6, [1, 3], 2),
    (4, [1, 2], 1),
    (6, [1, 2, 4], 3),
    (12, [1, 3, 9], 4),
    (8, [0, 1, 2, 4], 1),
    (6, [1, 5], 6),
    (7, [1], 7),
])
def test_ring_orders(m, gens, expected):
    A = FinCommRing.integers_mod(m)
    S = mult_set(A, gens, close=True)
    assert sorted(S.members) == closure(m, gens)
    F = localize_ring(A, S)
    assert F.order == expected == pair_classes(m, sorted(S.members)) == crt_order(m, S.members)
    assert not F.ring.violations()
    assert F.inverts()


def test_z6_elements():
    A = FinCommRing.integers_mod(6)
    F = localize_ring(A, mult_set(A, [1, 3]))
    assert [F.label(c) for c in F.ring.elements] == ["0/1", "1/1"]


def test_unclosed_set_rejected():
    A = FinCommRing.integers_mod(4)
    with pytest.raises(RingAxiomError):
        mult_set(A, [1, 2])
    with pytest.raises(RingAxiomError):
        mult_set(A, [3])


def test_ring_axioms_detected():
    r = range(3)
    add = [[(a + b) % 3 for b in r] for a in r]
    mul = [[(a * b + 1) % 3 for b in r] for a in r]
    assert FinCommRing(add, mul).violations()
    assert not FinCommRing.integers_mod(6).violations()


def test_module_examples():
    A = FinCommRing.integers_mod(6)
    S = mult_set(A, [1, 3])
    FM = localize_module(RingModule.regular(A), S)
    assert FM.order == 2
    assert FM.eta[2] == FM.eta[0]
    same = localize_module(RingModule.regular(A), mult_set(A, [1]))
    assert same.order == 6 and len(set(same.eta)) == 6
    torsion = next(M for M in enumerate_modules(A, 3) if M.n == 3)
    assert localize_module(torsion, S).order == 1


def group_count(m, cap):
    """Abelian groups of order ≤ cap whose exponent divides m, as sorted cyclic factor lists."""
    found = set()

    def rec(order, factors):
        found.add(tuple(sorted(factors)))
        for d in range(2, m + 1):
            if m % d == 0 and order * d <= cap:
                rec(order * d, factors + [d])

    rec(1, [])
    # two factor lists give the same group iff they have the same elementary divisors
    def divisors(fs):
        out = []
        for f in fs:
            n, p = f, 2
            while n > 1:
                if n % p == 0:
                    k = 1
                    while n % p == 0:
                        n //= p
                        k *= p
                    out.append(k)
                p += 1
        return tuple(sorted(out))

    return len({divisors(fs) for fs in found})


@pytest.mark.parametrize("m", [2, 4, 6])
def test_module_enumeration_counts(m):
    A = FinCommRing.integers_mod(m)
    mods = enumerate_modules(A, 8)
    assert len(mods) == group_count(m, 8)
    for M, N in product(mods, repeat=2):
        if M is not N:
            assert find_module_iso(M, N) is None
    assert all(not M.violations() for M in mods)


def test_abelian_group_types():
    assert sorted(abelian_group_types(8)) == [(2, 2, 2), (2, 4), (8,)]


def test_adjunction_z6():
    A = FinCommRing.integers_mod(6)
    S = mult_set(A, [1, 3])
    rep = verify_localization_adjunction(A, S, 6)
    assert rep.ok, rep.witnesses
    local = [M for M in enumerate_modules(A, 6) if M.acts_bijectively(3)]
    assert len(rep.local_modules) == len(local) == 3


@pytest.mark.parametrize("gens", [[1], [1, 5]])
def test_adjunction_trivial_cases(gens):
    A = FinCommRing.integers_mod(6)
    rep = verify_localization_adjunction(A, mult_set(A, gens), 6)
    assert rep.ok
    assert len(rep.local_modules) == rep.modules


def test_adjunction_zero_ring():
    A = FinCommRing.integers_mod(4)
    rep = verify_localization_adjunction(A, mult_set(A, [1, 2], close=True), 8)
    assert rep.ok
    assert rep.fraction_modules == 1
    assert rep.local_modules == [enumerate_modules(A, 1)[0].name]


def test_cap_must_be_positive():
    A = FinCommRing.integers_mod(2)
    with pytest.raises(CapTooSmall):
        verify_localization_adjunction(A, mult_set(A, [1]), 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 16), st.lists(st.integers(0, 15), max_size=3))
def test_random_localizations(m, gens):
    A = FinCommRing.integers_mod(m)
    S = mult_set(A, gens, close=True)
    F = localize_ring(A, S)
    assert F.order == crt_order(m, S.members)
    assert fraction_operations_consistent(F)
    assert F.inverts()
