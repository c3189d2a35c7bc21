import json
import math

import pytest

from latcensus import lattice
from latcensus.errors import CapExceededError, NotPrimitiveError, SingularMatrixError
from latcensus.rng import SplitMix64


def test_hnf_examples():
    b = lattice.hnf_canonicalize([[2, 0], [0, 2]])
    assert b.rows == ((2, 0), (0, 2))
    b = lattice.hnf_canonicalize([[2, 0], [1, 1]])
    assert b.rows == ((1, 1), (0, 2))
    # any unimodular matrix spans Z^n
    assert lattice.hnf_canonicalize([[2, 1], [1, 1]]) == lattice.HnfBasis.identity(2)


def test_hnf_idempotent_and_singular():
    b = lattice.hnf_canonicalize([[3, 1], [0, 4]])
    assert lattice.hnf_canonicalize(b.rows) == b
    with pytest.raises(SingularMatrixError):
        lattice.hnf_canonicalize([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        lattice.hnf_canonicalize([[1, 2, 3], [4, 5, 6]])


def test_hnf_validation():
    with pytest.raises(ValueError):
        lattice.HnfBasis([[1, 0], [1, 2]])  # not upper triangular
    with pytest.raises(ValueError):
        lattice.HnfBasis([[1, 3], [0, 2]])  # entry above pivot not reduced
    with pytest.raises(ValueError):
        lattice.HnfBasis([[0, 0], [0, 2]])  # zero pivot


def test_hnf_canonicality_under_unimodular_action():
    rng = SplitMix64(321)
    for trial in range(200):
        n = 2 + trial % 3
        rows = [[rng.randbelow(21) - 10 for _ in range(n)] for _ in range(n)]
        try:
            h = lattice.hnf_canonicalize(rows)
        except SingularMatrixError:
            continue
        u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(10):
            i, j = rng.randbelow(n), rng.randbelow(n)
            if i != j:
                c = rng.randbelow(5) - 2
                u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        mixed = [
            [sum(u[i][k] * rows[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        assert lattice.hnf_canonicalize(mixed) == h
        assert lattice.smith_invariants(lattice.hnf_canonicalize(mixed)) == lattice.smith_invariants(h)


def test_smith_examples():
    assert lattice.smith_invariants(lattice.HnfBasis([[2, 0], [0, 2]])).chain == (2, 2)
    assert lattice.smith_invariants(lattice.HnfBasis([[1, 1], [0, 2]])).chain == (2,)
    assert lattice.smith_invariants(lattice.HnfBasis.identity(3)).chain == ()
    # regression: entries both left and above pivots (used to cycle forever)
    assert lattice.smith_invariants(lattice.HnfBasis([[1, 0, 1], [0, 1, 1], [0, 0, 3]])).chain == (3,)


def test_smith_order_equals_index():
    rng = SplitMix64(99)
    for _ in range(60):
        n = 2 + rng.randbelow(3)
        q = 1 + rng.randbelow(40)
        for k, b in enumerate(lattice._enumerate_sublattices(n, q)):
            if k >= 8:
                break
            inv = lattice.smith_invariants(b)
            assert inv.order == q
            assert inv.rank <= n


def test_invariant_factors_validation():
    with pytest.raises(ValueError):
        lattice.InvariantFactors((1, 2))
    with pytest.raises(ValueError):
        lattice.InvariantFactors((2, 3))  # 2 does not divide 3
    inv = lattice.InvariantFactors((2, 6))
    assert inv.order == 12 and inv.rank == 2


def test_cocyclic_and_rank():
    assert lattice.is_cocyclic(lattice.HnfBasis([[1, 1], [0, 2]]))
    assert lattice.quotient_rank(lattice.HnfBasis([[1, 1], [0, 2]])) == 1
    assert not lattice.is_cocyclic(lattice.HnfBasis([[2, 0], [0, 2]]))
    assert lattice.quotient_rank(lattice.HnfBasis([[2, 0], [0, 2]])) == 2
    assert lattice.is_cocyclic(lattice.HnfBasis.identity(4))
    assert lattice.quotient_rank(lattice.HnfBasis.identity(4)) == 0


def test_count_sublattices():
    assert lattice.count_sublattices(2, 6) == 12  # sigma(6)
    assert lattice.count_sublattices(3, 2) == 7
    for n in (1, 2, 5):
        assert lattice.count_sublattices(n, 1) == 1
    # sigma identity in dimension 2
    for q in range(1, 80):
        sigma = sum(d for d in range(1, q + 1) if q % d == 0)
        assert lattice.count_sublattices(2, q) == sigma


def test_count_sublattices_upto_matches_pointwise():
    for n in (1, 2, 3, 4):
        table = lattice.count_sublattices_upto(n, 40)
        for q in range(1, 41):
            assert table[q] == lattice.count_sublattices(n, q)


def test_enumerate_examples():
    got = [b.rows for b in lattice.enumerate_sublattices(2, 2)]
    assert got == [((1, 0), (0, 2)), ((1, 1), (0, 2)), ((2, 0), (0, 1))]
    assert [b.rows for b in lattice.enumerate_sublattices(1, 7)] == [((7,),)]
    assert sum(1 for _ in lattice.enumerate_sublattices(3, 2)) == 7


def test_enumerate_complete_and_duplicate_free():
    for n in (2, 3):
        for q in range(1, 31):
            seen = set()
            for b in lattice.enumerate_sublattices(n, q):
                assert b not in seen
                assert b.index == q
                seen.add(b)
            assert len(seen) == lattice.count_sublattices(n, q)


def test_enumerate_cap():
    with pytest.raises(CapExceededError):
        list(lattice.enumerate_sublattices(4, 60, cap=10))


def test_congruence_vector_basics():
    v = lattice.CongruenceVector(7, (1, 2))
    assert v.is_primitive
    assert lattice.are_equivalent(v, lattice.CongruenceVector(7, (3, 6)))  # lambda = 3
    assert lattice.are_equivalent(v, v)
    u = lattice.CongruenceVector(4, (1, 0))
    w = lattice.CongruenceVector(4, (2, 0))
    assert not lattice.are_equivalent(u, w)  # w is not even primitive
    with pytest.raises(ValueError):
        lattice.are_equivalent(v, u)


def test_lattice_from_congruence_examples():
    b = lattice.lattice_from_congruence(lattice.CongruenceVector(2, (1, 1)))
    assert b.rows == ((1, 1), (0, 2))
    assert lattice.lattice_from_congruence(
        lattice.CongruenceVector(1, (0, 0, 0))
    ) == lattice.HnfBasis.identity(3)
    b5 = lattice.lattice_from_congruence(lattice.CongruenceVector(5, (0, 1)))
    assert b5.rows == ((1, 0), (0, 5))
    with pytest.raises(NotPrimitiveError):
        lattice.lattice_from_congruence(lattice.CongruenceVector(4, (2, 2)))


def test_congruence_lattice_properties():
    # index q, cyclic quotient of order q, class-invariance
    rng = SplitMix64(5150)
    for _ in range(150):
        n = 2 + rng.randbelow(3)
        q = 2 + rng.randbelow(30)
        a = tuple(rng.randbelow(q) for _ in range(n))
        if math.gcd(*a, q) != 1:
            continue
        v = lattice.CongruenceVector(q, a)
        b = lattice.lattice_from_congruence(v)
        assert b.index == q
        assert lattice.smith_invariants(b).chain == (q,)
        lam = 1 + rng.randbelow(q - 1)
        if math.gcd(lam, q) == 1:
            scaled = lattice.CongruenceVector(q, v.scaled(lam))
            assert lattice.lattice_from_congruence(scaled) == b


def test_membership_of_constructed_lattice():
    # every row of the basis satisfies the defining congruence
    v = lattice.CongruenceVector(12, (3, 4, 1))
    b = lattice.lattice_from_congruence(v)
    for row in b.rows:
        assert sum(c * x for c, x in zip(v.a, row)) % 12 == 0


def test_sampler_support_and_determinism():
    support = {lattice.sample_cocyclic(2, 2, seed) for seed in range(40)}
    expected = {b for b in lattice.enumerate_sublattices(2, 2)}
    assert support == expected  # all three index-2 lattices are co-cyclic
    assert lattice.sample_cocyclic(4, 1, 3) == lattice.HnfBasis.identity(4)
    seen_q4 = {lattice.sample_cocyclic(2, 4, seed) for seed in range(200)}
    assert len(seen_q4) == 6
    assert lattice.HnfBasis([[2, 0], [0, 2]]) not in seen_q4
    a = [b.to_json() for b in lattice.sample_cocyclic_stream(2, 12, 20, 77)]
    b = [b.to_json() for b in lattice.sample_cocyclic_stream(2, 12, 20, 77)]
    assert a == b


def test_json_round_trip():
    b = lattice.HnfBasis([[1, 1, 0], [0, 2, 1], [0, 0, 3]])
    doc = b.to_json()
    assert lattice.HnfBasis.from_json(doc) == b
    assert json.loads(doc) == {"n": 3, "rows": [[1, 1, 0], [0, 2, 1], [0, 0, 3]]}
    with pytest.raises(ValueError):
        lattice.HnfBasis.from_json('{"n": 2, "rows": [[1, 0], [1, 2]]}')
