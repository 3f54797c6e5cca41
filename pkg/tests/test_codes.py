"""Tests for storage codes, recovery sets, and repair plans."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from storagecodes.codes import (
    CodeError,
    CodeParams,
    RepairPlan,
    StorageCode,
    find_repair_plan,
    is_recovery_set,
    permute_coordinates,
    permute_plan,
    rate_and_overhead,
    recovery_dimension,
    repair_locality,
    validate,
    validate_plan,
)
from storagecodes.gf2 import BitVector, Subspace, subspace_sum


def four_rotations():
    """The 2-dim rotating-subspace code on GF(2)^4 used throughout."""
    return StorageCode.from_basis_strings(
        [
            ["1000", "0011"],
            ["0100", "1001"],
            ["0010", "1100"],
            ["0001", "0110"],
        ]
    )


def replicated_pair():
    """Two identical nodes plus two distinct ones; k = 3."""
    return StorageCode.from_basis_strings([["10"], ["10"], ["01"], ["11"]])


# ---------------------------------------------------------------------------
# parameters and validation


def test_code_params_ordering_invariant():
    CodeParams(4, 4, 2, 3, 2, 1)
    with pytest.raises(CodeError):
        CodeParams(4, 4, 3, 2, 2, 1)  # k > r
    with pytest.raises(CodeError):
        CodeParams(4, 4, 2, 4, 2, 1)  # r > n-1
    with pytest.raises(CodeError):
        CodeParams(4, 4, 0, 2, 2, 1)  # nonpositive


def test_code_params_str():
    assert str(CodeParams(4, 4, 2, 3, 2, 1)) == "(4; 4,2,3,2,1)"


def test_validate_accepts_good_code():
    assert validate(four_rotations()) == []


def test_validate_flags_dependent_rows():
    code = StorageCode.from_basis_strings([["100", "100"], ["010", "001"]])
    problems = validate(code)
    assert any("dependent" in p for p in problems)


def test_validate_flags_non_spanning_code():
    code = StorageCode.from_basis_strings([["100"], ["100"], ["010"]])
    problems = validate(code)
    assert any("span" in p for p in problems)


# ---------------------------------------------------------------------------
# recovery


def test_recovery_sets_of_rotating_code():
    code = four_rotations()
    # every 2-subset spans GF(2)^4
    for pair in combinations(range(4), 2):
        assert is_recovery_set(code, pair)
    for i in range(4):
        assert not is_recovery_set(code, [i])
    assert recovery_dimension(code) == 2


def test_recovery_dimension_brute_force_random():
    rng = random.Random(31)
    trials = 0
    while trials < 30:
        m = rng.randrange(2, 5)
        n = rng.randrange(2, 6)
        alpha = rng.randrange(1, m + 1)
        bases = []
        for _ in range(n):
            rows = []
            while len(rows) < alpha:
                w = rng.randrange(1, 1 << m)
                rows.append(w)
            bases.append(["".join("1" if (w >> i) & 1 else "0" for i in range(m)) for w in rows])
        code = StorageCode.from_basis_strings(bases)
        if validate(code):
            continue
        trials += 1
        sizes = [
            size
            for size in range(1, n + 1)
            if any(is_recovery_set(code, s) for s in combinations(range(n), size))
        ]
        assert recovery_dimension(code) == min(sizes)


def test_rate_and_overhead():
    rate, overhead = rate_and_overhead(four_rotations())
    assert rate == Fraction(1, 2)
    assert overhead == Fraction(1, 1)


# ---------------------------------------------------------------------------
# repair plans


def test_find_repair_plan_rotating_code():
    code = four_rotations()
    plan = find_repair_plan(code, 0, [1, 2, 3], beta=1)
    assert plan is not None
    assert validate_plan(code, plan) == []
    joint = subspace_sum([plan.repair_spaces[i] for i in plan.helpers])
    assert joint.contains_subspace(code.subspaces[0])


def test_repair_plan_rejects_self_help():
    with pytest.raises(CodeError):
        RepairPlan(0, (0, 1), {0: Subspace.zero(2), 1: Subspace.zero(2)}, 1)


def test_repair_plan_space_keys_must_match_helpers():
    s = Subspace.spanned_by(2, [BitVector.from_string("10")])
    with pytest.raises(CodeError):
        RepairPlan(0, (1, 2), {1: s}, 1)


def test_validate_plan_flags_wrong_dimension():
    code = four_rotations()
    plan = RepairPlan(
        0,
        (1, 2, 3),
        {
            1: code.subspaces[1],  # dim 2, beta says 1
            2: Subspace.spanned_by(4, [BitVector.from_string("0010")]),
            3: Subspace.spanned_by(4, [BitVector.from_string("0001")]),
        },
        1,
    )
    problems = validate_plan(code, plan)
    assert any("dim" in p for p in problems)


def test_validate_plan_flags_space_outside_helper():
    code = four_rotations()
    plan = RepairPlan(
        0,
        (1, 2, 3),
        {
            1: Subspace.spanned_by(4, [BitVector.from_string("0010")]),  # not in node 1
            2: Subspace.spanned_by(4, [BitVector.from_string("0010")]),
            3: Subspace.spanned_by(4, [BitVector.from_string("0001")]),
        },
        1,
    )
    problems = validate_plan(code, plan)
    assert any("not inside" in p for p in problems)


def test_validate_plan_flags_non_covering_plan():
    code = four_rotations()
    plan = RepairPlan(
        0,
        (2, 3),
        {
            2: Subspace.spanned_by(4, [BitVector.from_string("0010")]),
            3: Subspace.spanned_by(4, [BitVector.from_string("0001")]),
        },
        1,
    )
    problems = validate_plan(code, plan)
    assert any("cover" in p for p in problems)


def test_find_repair_plan_none_when_bandwidth_too_small():
    code = four_rotations()
    # one helper with beta=1 cannot deliver a 2-dim space
    assert find_repair_plan(code, 0, [1], beta=1) is None


def test_find_repair_plan_single_copy_helper():
    code = replicated_pair()
    plan = find_repair_plan(code, 0, [1], beta=1)
    assert plan is not None
    assert plan.helpers == (1,)


def test_find_repair_plan_is_deterministic():
    code = four_rotations()
    a = find_repair_plan(code, 0, [1, 2, 3], beta=1)
    b = find_repair_plan(code, 0, [1, 2, 3], beta=1)
    assert a == b


# ---------------------------------------------------------------------------
# locality


def brute_locality(code, beta):
    worst = 0
    for failed in range(code.n):
        others = [i for i in range(code.n) if i != failed]
        best = None
        for size in range(1, code.n):
            for subset in combinations(others, size):
                if find_repair_plan(code, failed, subset, beta) is not None:
                    best = size
                    break
            if best is not None:
                break
        if best is None:
            return None
        worst = max(worst, best)
    return worst


def test_repair_locality_rotating_code():
    code = four_rotations()
    assert repair_locality(code, beta=1) == 3
    # with beta = 2 two full helper spaces span everything, and no single
    # helper's space equals the failed one, so the locality is 2
    assert repair_locality(code, beta=2) == 2


def test_repair_locality_matches_brute_force():
    codes = [
        four_rotations(),
        replicated_pair(),
        StorageCode.from_basis_strings([["100"], ["010"], ["001"], ["111"]]),
    ]
    for code in codes:
        for beta in (1, 2):
            assert repair_locality(code, beta) == brute_locality(code, beta)


def test_repair_locality_none_when_unrepairable():
    # node 0's space is not contained in the span of the others
    code = StorageCode.from_basis_strings([["10"], ["01"], ["01"]])
    assert repair_locality(code, beta=1) is None


# ---------------------------------------------------------------------------
# symmetry helpers


def test_permute_coordinates_rotation_is_automorphism():
    code = four_rotations()
    rotated = permute_coordinates(code, [1, 2, 3, 0])
    # the rotation maps node i's space onto node i+1's space
    for i in range(4):
        assert rotated.subspaces[i] == code.subspaces[(i + 1) % 4]


def test_permute_plan_carries_validity():
    code = four_rotations()
    plan = find_repair_plan(code, 0, [1, 2, 3], beta=1)
    node_map = {i: (i + 1) % 4 for i in range(4)}
    moved = permute_plan(plan, [1, 2, 3, 0], node_map)
    assert moved.failed == 1
    assert validate_plan(code, moved) == []
