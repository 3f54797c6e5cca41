"""Tests for the GF(2) linear-algebra layer.

Oracle strategy: brute-force reference implementations (explicit vector
enumeration, membership checks) are compared against the fast versions
on seeded random inputs, plus hand-checked fixed values.
"""

import random

import pytest

from storagecodes.gf2 import (
    BitMatrix,
    BitVector,
    EnumerationCapError,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    rank,
    rref,
    solve,
    span_contains,
    subspace_intersect,
    subspace_sum,
    subspaces_of,
)


def random_subspace(rng: random.Random, m: int, max_rows: int = None) -> Subspace:
    max_rows = m if max_rows is None else max_rows
    k = rng.randrange(0, max_rows + 1)
    vecs = [BitVector(m, rng.randrange(1 << m)) for _ in range(k)]
    return Subspace.spanned_by(m, vecs)


def all_vectors(s: Subspace) -> set:
    return {v.word for v in s.vectors()}


# ---------------------------------------------------------------------------
# vectors and matrices


def test_bitvector_string_round_trip():
    # coordinate 0 is written first: "1001" is e0 + e3
    v = BitVector.from_string("1001")
    assert v.length == 4
    assert v.word == 0b1001
    assert v.bit(0) == 1 and v.bit(1) == 0 and v.bit(3) == 1
    assert v.to_string() == "1001"


def test_bitvector_unit_and_zero():
    assert BitVector.unit(5, 2).to_string() == "00100"
    assert BitVector.zero(3).is_zero()
    with pytest.raises(ValueError):
        BitVector(4, 1 << 4)
    with pytest.raises(ValueError):
        BitVector(0, 0)
    with pytest.raises(ValueError):
        BitVector.from_string("10x1")


def test_bitvector_xor_and_dot():
    a = BitVector.from_string("1100")
    b = BitVector.from_string("0110")
    assert (a ^ b).to_string() == "1010"
    assert a.dot(b) == 1  # overlap in coordinate 1 only
    assert a.dot(a) == 0  # even weight


def test_bitmatrix_round_trip_and_transpose():
    mat = BitMatrix.from_strings(["110", "011"])
    assert mat.to_strings() == ["110", "011"]
    t = mat.transpose()
    assert t.col_count == 2
    assert t.to_strings() == ["10", "11", "01"]


def test_mat_vec_is_rowwise_parity():
    mat = BitMatrix.from_strings(["110", "011"])
    x = BitVector.from_string("101")
    y = mat.mat_vec(x)
    # row 0: x0 + x1 = 1, row 1: x1 + x2 = 1
    assert y.to_string() == "11"


def test_mat_vec_matches_explicit_sum_random():
    rng = random.Random(11)
    for _ in range(100):
        m = rng.randrange(1, 9)
        rows = rng.randrange(1, 6)
        mat = BitMatrix.from_words(m, [rng.randrange(1 << m) for _ in range(rows)])
        x = BitVector(m, rng.randrange(1 << m))
        got = mat.mat_vec(x)
        for i, row in enumerate(mat.rows):
            expect = sum(row.bit(c) * x.bit(c) for c in range(m)) % 2
            assert got.bit(i) == expect


# ---------------------------------------------------------------------------
# elimination and solving


def test_rref_fixed_example():
    mat = BitMatrix.from_strings(["111", "011", "100"])
    reduced, rk = rref(mat)
    assert rk == 2
    assert reduced.to_strings() == ["100", "011"]


def test_rref_drops_zero_rows_and_is_idempotent():
    rng = random.Random(5)
    for _ in range(100):
        m = rng.randrange(1, 9)
        rows = rng.randrange(0, 7)
        mat = BitMatrix.from_words(m, [rng.randrange(1 << m) for _ in range(rows)])
        reduced, rk = rref(mat)
        assert reduced.row_count == rk
        again, rk2 = rref(reduced)
        assert again.words() == reduced.words() and rk2 == rk
        assert rank(mat) == rk


def test_solve_round_trip_random():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randrange(1, 9)
        rows = rng.randrange(1, 9)
        mat = BitMatrix.from_words(m, [rng.randrange(1 << m) for _ in range(rows)])
        x = BitVector(m, rng.randrange(1 << m))
        rhs = mat.mat_vec(x)
        got = solve(mat, rhs)
        assert got is not None
        assert mat.mat_vec(got) == rhs


def test_solve_detects_inconsistency():
    # x0 = 0 and x0 = 1 simultaneously
    mat = BitMatrix.from_strings(["10", "10"])
    assert solve(mat, BitVector.from_string("01")) is None
    assert solve(mat, BitVector.from_string("11")) == BitVector.from_string("10")


def test_solve_unique_when_full_column_rank():
    mat = BitMatrix.from_strings(["10", "01", "11"])
    x = BitVector.from_string("11")
    assert solve(mat, mat.mat_vec(x)) == x


# ---------------------------------------------------------------------------
# subspaces


def test_subspace_canonical_equality():
    # two different generating sets of the same plane compare equal
    a = Subspace.spanned_by(3, [BitVector.from_string("110"), BitVector.from_string("011")])
    b = Subspace.spanned_by(3, [BitVector.from_string("101"), BitVector.from_string("110")])
    assert a == b
    assert a.dim == 2


def test_subspace_rejects_non_canonical_basis():
    with pytest.raises(ValueError):
        Subspace(3, BitMatrix.from_strings(["110", "100"]))


def test_span_contains_matches_enumeration():
    rng = random.Random(13)
    for _ in range(50):
        m = rng.randrange(1, 8)
        s = random_subspace(rng, m)
        members = all_vectors(s)
        for w in range(1 << m):
            assert span_contains(s, BitVector(m, w)) == (w in members)


def test_vectors_yields_whole_subspace_once():
    s = Subspace.spanned_by(4, [BitVector.from_string("1100"), BitVector.from_string("0011")])
    vecs = list(s.vectors())
    assert len(vecs) == 4
    assert len({v.word for v in vecs}) == 4
    assert vecs[0].is_zero()


def test_subspace_sum_is_join():
    rng = random.Random(17)
    for _ in range(50):
        m = rng.randrange(1, 8)
        a, b = random_subspace(rng, m), random_subspace(rng, m)
        join = subspace_sum([a, b])
        # the sum of two subspaces is exactly {x + y : x in A, y in B}
        closure = {x ^ y for x in all_vectors(a) for y in all_vectors(b)}
        assert all_vectors(join) == closure


def test_subspace_sum_rejects_empty_list():
    with pytest.raises(ValueError):
        subspace_sum([])


def test_intersection_matches_enumeration():
    rng = random.Random(19)
    for _ in range(100):
        m = rng.randrange(1, 8)
        a, b = random_subspace(rng, m), random_subspace(rng, m)
        inter = subspace_intersect(a, b)
        assert all_vectors(inter) == all_vectors(a) & all_vectors(b)


def test_dimension_formula_random_pairs():
    # dim(A) + dim(B) = dim(A+B) + dim(A∩B)
    rng = random.Random(23)
    for _ in range(300):
        m = rng.randrange(1, 9)
        a, b = random_subspace(rng, m), random_subspace(rng, m)
        assert a.dim + b.dim == subspace_sum([a, b]).dim + subspace_intersect(a, b).dim


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 0) == 1
    assert gaussian_binomial(4, 1) == 15
    assert gaussian_binomial(4, 2) == 35
    assert gaussian_binomial(4, 3) == 15
    assert gaussian_binomial(4, 4) == 1
    assert gaussian_binomial(5, 2) == 155
    assert gaussian_binomial(3, 5) == 0


def test_enumerate_subspaces_complete_and_distinct():
    for m in range(1, 6):
        for d in range(0, m + 1):
            seen = set(
                tuple(s.basis.words()) for s in enumerate_subspaces(m, d)
            )
            assert len(seen) == gaussian_binomial(m, d)


def test_enumerate_subspaces_cap():
    with pytest.raises(EnumerationCapError):
        list(enumerate_subspaces(6, 3, cap=10))


def test_subspaces_of_enumerates_inside_space():
    s = Subspace.spanned_by(
        5, [BitVector.from_string("11000"), BitVector.from_string("00110"), BitVector.from_string("00001")]
    )
    lines = list(subspaces_of(s, 1))
    assert len(lines) == gaussian_binomial(3, 1)
    for line in lines:
        assert line.dim == 1
        assert s.contains_subspace(line)
    planes = list(subspaces_of(s, 2))
    assert len(planes) == gaussian_binomial(3, 2)
    assert len({tuple(p.basis.words()) for p in planes}) == len(planes)
    assert list(subspaces_of(s, 4)) == []
