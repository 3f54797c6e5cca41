"""Exact-repair storage codes as families of GF(2) subspaces.

A code assigns each of n storage nodes an alpha-dimensional storage
space inside the m-dimensional message space.  A node's stored block is
the vector of inner products of the message with its basis rows, so the
stated (not canonicalized) basis of each node is part of the code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

from .gf2 import (
    BitMatrix,
    BitVector,
    Subspace,
    rank,
    subspace_sum,
    subspaces_of,
)


class CodeError(ValueError):
    """Raised for structurally invalid codes or parameters."""


@dataclass(frozen=True)
class CodeParams:
    """The (m; n, k, r, alpha, beta) profile of a storage code."""

    m: int
    n: int
    k: int
    r: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        for name in ("m", "n", "k", "r", "alpha", "beta"):
            if getattr(self, name) < 1:
                raise CodeError(f"{name} must be positive")
        if not self.k <= self.r <= self.n - 1:
            raise CodeError(f"need k <= r <= n-1, got k={self.k}, r={self.r}, n={self.n}")

    def __str__(self) -> str:
        return f"({self.m}; {self.n},{self.k},{self.r},{self.alpha},{self.beta})"


@dataclass(frozen=True)
class StorageCode:
    """n storage nodes with fixed basis matrices over GF(2)^m."""

    message_dim: int
    alpha: int
    node_bases: Tuple[BitMatrix, ...]

    @classmethod
    def from_basis_strings(cls, bases: Sequence[Sequence[str]]) -> "StorageCode":
        mats = tuple(BitMatrix.from_strings(rows) for rows in bases)
        if not mats:
            raise CodeError("a storage code needs at least one node")
        return cls(mats[0].col_count, mats[0].row_count, mats)

    @property
    def n(self) -> int:
        return len(self.node_bases)

    @cached_property
    def subspaces(self) -> Tuple[Subspace, ...]:
        return tuple(
            Subspace.spanned_by(self.message_dim, mat.rows) for mat in self.node_bases
        )

    def basis_strings(self) -> List[List[str]]:
        return [mat.to_strings() for mat in self.node_bases]


def validate(code: StorageCode) -> List[str]:
    """Check the StorageCode invariants; return human-readable violations."""
    violations: List[str] = []
    if code.n < 1:
        violations.append("code has no nodes")
        return violations
    for i, mat in enumerate(code.node_bases):
        if mat.col_count != code.message_dim:
            violations.append(
                f"node {i}: basis width {mat.col_count} != message dimension {code.message_dim}"
            )
        if mat.row_count != code.alpha:
            violations.append(
                f"node {i}: {mat.row_count} basis rows, expected alpha = {code.alpha}"
            )
        elif rank(mat) != code.alpha:
            violations.append(f"node {i}: basis rows are dependent (dim < alpha)")
    if not violations:
        total = subspace_sum(list(code.subspaces))
        if total.dim != code.message_dim:
            violations.append(
                f"node subspaces span only dimension {total.dim} of {code.message_dim}"
            )
    return violations


def is_recovery_set(code: StorageCode, indices: Sequence[int]) -> bool:
    """True iff the chosen nodes' storage spaces span the message space."""
    idx = sorted(set(indices))
    for i in idx:
        if not 0 <= i < code.n:
            raise IndexError(f"node index {i} out of range")
    if not idx:
        return code.message_dim == 0
    return subspace_sum([code.subspaces[i] for i in idx]).dim == code.message_dim


def recovery_dimension(code: StorageCode) -> int:
    """Size of the smallest recovery set (searched by increasing size)."""
    for size in range(1, code.n + 1):
        for subset in combinations(range(code.n), size):
            if is_recovery_set(code, subset):
                return size
    raise CodeError("no recovery set exists; the code does not validate")


def rate_and_overhead(code: StorageCode) -> Tuple[Fraction, Fraction]:
    """Coding rate m/(n*alpha) and excess storage overhead (n*alpha-m)/m."""
    m = code.message_dim
    stored = code.n * code.alpha
    return Fraction(m, stored), Fraction(stored - m, m)


@dataclass
class RepairPlan:
    """A repair recipe: helpers and one beta-dim repair space per helper."""

    failed: int
    helpers: Tuple[int, ...]
    repair_spaces: Dict[int, Subspace]
    beta: int

    def __post_init__(self) -> None:
        self.helpers = tuple(sorted(self.helpers))
        if self.failed in self.helpers:
            raise CodeError("the failed node cannot be its own helper")
        if set(self.repair_spaces) != set(self.helpers):
            raise CodeError("repair_spaces must cover exactly the helper set")


def validate_plan(code: StorageCode, plan: RepairPlan) -> List[str]:
    """Check the RepairPlan invariants against a code."""
    violations: List[str] = []
    if not 0 <= plan.failed < code.n:
        return [f"failed index {plan.failed} out of range"]
    for i in plan.helpers:
        if not 0 <= i < code.n:
            violations.append(f"helper index {i} out of range")
            continue
        w = plan.repair_spaces[i]
        if w.dim != plan.beta:
            violations.append(f"repair space of helper {i} has dim {w.dim}, expected beta = {plan.beta}")
        if not code.subspaces[i].contains_subspace(w):
            violations.append(f"repair space of helper {i} is not inside its storage space")
    if not violations:
        joint = subspace_sum([plan.repair_spaces[i] for i in plan.helpers])
        if not joint.contains_subspace(code.subspaces[plan.failed]):
            violations.append("repair spaces do not jointly cover the failed node's space")
    return violations


def find_repair_plan(
    code: StorageCode,
    failed: int,
    helpers: Sequence[int],
    beta: int,
    cap: Optional[int] = None,
) -> Optional[RepairPlan]:
    """Search for a valid repair plan over the given helper set.

    Depth-first over helpers in index order, enumerating beta-dimensional
    subspaces of each helper's storage space in canonical order; a branch
    is pruned when the chosen spaces plus all remaining helpers' full
    spaces can no longer cover the failed node's space.  Returns the
    first plan found (deterministic) or None.
    """
    helper_list = tuple(sorted(set(helpers)))
    if failed in helper_list:
        raise CodeError("the failed node cannot be its own helper")
    for i in helper_list + (failed,):
        if not 0 <= i < code.n:
            raise IndexError(f"node index {i} out of range")
    target = code.subspaces[failed]
    if len(helper_list) * beta < target.dim:
        return None

    suffix_spans: List[Subspace] = [Subspace.zero(code.message_dim)]
    for i in reversed(helper_list):
        suffix_spans.append(subspace_sum([code.subspaces[i], suffix_spans[-1]]))
    suffix_spans.reverse()  # suffix_spans[t] = sum of helpers t.. full spaces

    chosen: Dict[int, Subspace] = {}

    def covered(partial: Subspace, depth: int) -> bool:
        return subspace_sum([partial, suffix_spans[depth]]).contains_subspace(target)

    def dfs(depth: int, partial: Subspace) -> bool:
        if depth == len(helper_list):
            return partial.contains_subspace(target)
        helper = helper_list[depth]
        for w in subspaces_of(code.subspaces[helper], beta, cap):
            extended = subspace_sum([partial, w])
            if not covered(extended, depth + 1):
                continue
            chosen[helper] = w
            if dfs(depth + 1, extended):
                return True
            del chosen[helper]
        return False

    if not covered(Subspace.zero(code.message_dim), 0):
        return None
    if dfs(0, Subspace.zero(code.message_dim)):
        return RepairPlan(failed, helper_list, dict(chosen), beta)
    return None


def repair_locality(
    code: StorageCode, beta: int, cap: Optional[int] = None
) -> Optional[int]:
    """Smallest r such that every node has some repair set of size r.

    Per node the helper-set size is minimized; the result is the maximum
    over nodes.  Returns None when some node has no repair set of any
    size up to n-1.
    """
    worst = 0
    for failed in range(code.n):
        others = [i for i in range(code.n) if i != failed]
        best: Optional[int] = None
        lower = max(1, ceil(code.subspaces[failed].dim / beta))
        for size in range(lower, code.n):
            for subset in combinations(others, size):
                if find_repair_plan(code, failed, subset, beta, cap) is not None:
                    best = size
                    break
            if best is not None:
                break
        if best is None:
            return None
        worst = max(worst, best)
    return worst


def permute_coordinates(code: StorageCode, perm: Sequence[int]) -> StorageCode:
    """Apply the coordinate permutation e_i -> e_perm[i] to every basis.

    Test utility for checking code symmetries (automorphisms).
    """
    m = code.message_dim
    if sorted(perm) != list(range(m)):
        raise CodeError("perm must be a permutation of 0..m-1")
    new_bases = []
    for mat in code.node_bases:
        words = []
        for row in mat.rows:
            w = 0
            for i in range(m):
                if row.bit(i):
                    w |= 1 << perm[i]
            words.append(w)
        new_bases.append(BitMatrix.from_words(m, words))
    return StorageCode(m, code.alpha, tuple(new_bases))


def permute_plan(plan: RepairPlan, perm: Sequence[int], node_map: Dict[int, int]) -> RepairPlan:
    """Carry a repair plan along a coordinate permutation plus node relabeling."""
    m = next(iter(plan.repair_spaces.values())).ambient_dim

    def map_space(s: Subspace) -> Subspace:
        rows = []
        for row in s.basis.rows:
            w = 0
            for i in range(m):
                if row.bit(i):
                    w |= 1 << perm[i]
            rows.append(BitVector(m, w))
        return Subspace.spanned_by(m, rows)

    return RepairPlan(
        node_map[plan.failed],
        tuple(node_map[i] for i in plan.helpers),
        {node_map[i]: map_space(w) for i, w in plan.repair_spaces.items()},
        plan.beta,
    )
