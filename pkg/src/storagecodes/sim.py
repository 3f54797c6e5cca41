"""Data-plane simulator: encode, fail, repair, decode, with a full trace.

The simulator carries the true message internally for verification
only; every protocol-visible quantity (stored blocks, transferred
repair symbols) is computed from node-local data, and restoration is
asserted against the out-of-band truth after every repair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from .codes import (
    CodeError,
    RepairPlan,
    StorageCode,
    find_repair_plan,
    validate_plan,
)
from .constructions import FunctionalSpec
from .gf2 import BitMatrix, BitVector, Subspace, rank, solve, subspaces_of


class SimulationError(RuntimeError):
    """An internal consistency assertion failed during a scenario."""


class StuckError(SimulationError):
    """Functional repair found no spec-satisfying replacement subspace."""


EXACT = "exact"
FUNCTIONAL = "functional"


@dataclass
class TraceEvent:
    """One simulator event as an ordered flat record."""

    epoch: int
    kind: str
    payload: Tuple[Tuple[str, str], ...]

    def to_record(self) -> str:
        fields = [f"epoch={self.epoch}", f"kind={self.kind}"]
        fields += [f"{k}={v}" for k, v in self.payload]
        return " ".join(fields)


def _space_text(space: Subspace) -> str:
    return "+".join(space.basis.to_strings())


@dataclass
class SystemState:
    """Per-node stored blocks plus the metadata needed to repair them."""

    mode: str
    message_dim: int
    alpha: int
    bases: List[BitMatrix]
    stored: Dict[int, BitVector]
    live: Set[int]
    epoch: int = 0
    trace: List[TraceEvent] = field(default_factory=list)
    code: Optional[StorageCode] = None  # exact mode: the fixed code
    plans: Optional[Dict[int, RepairPlan]] = None
    beta: Optional[int] = None
    spec: Optional[FunctionalSpec] = None  # functional mode
    message: Optional[BitVector] = None  # verification only, not protocol data

    @property
    def n(self) -> int:
        return len(self.bases)

    def subspaces(self) -> List[Subspace]:
        return [Subspace.spanned_by(self.message_dim, b.rows) for b in self.bases]

    def record(self, kind: str, *payload: Tuple[str, str]) -> None:
        self.trace.append(TraceEvent(self.epoch, kind, tuple(payload)))


def encode(
    code: StorageCode,
    x: BitVector,
    plans: Optional[Dict[int, RepairPlan]] = None,
    beta: Optional[int] = None,
) -> SystemState:
    """Store B_i . x on every node i; all nodes live, epoch 0."""
    if x.length != code.message_dim:
        raise CodeError("message length must equal the code's message dimension")
    stored = {i: mat.mat_vec(x) for i, mat in enumerate(code.node_bases)}
    state = SystemState(
        mode=EXACT,
        message_dim=code.message_dim,
        alpha=code.alpha,
        bases=list(code.node_bases),
        stored=stored,
        live=set(range(code.n)),
        code=code,
        plans=plans,
        beta=beta,
        message=x,
    )
    state.record(
        "encode",
        ("nodes", str(code.n)),
        ("symbols_stored", str(code.n * code.alpha)),
    )
    return state


def encode_functional(
    spec: FunctionalSpec, bases: Sequence[BitMatrix], x: BitVector
) -> SystemState:
    """Functional-mode bootstrap from an initial spec-satisfying assignment."""
    if x.length != spec.ambient_dim:
        raise CodeError("message length must equal the spec's ambient dimension")
    if len(bases) != spec.node_count:
        raise CodeError("wrong number of initial node bases")
    spaces = [Subspace.spanned_by(spec.ambient_dim, b.rows) for b in bases]
    problems = spec.violations(spaces)
    if problems:
        raise CodeError("initial state violates the specification: " + "; ".join(problems))
    stored = {i: b.mat_vec(x) for i, b in enumerate(bases)}
    state = SystemState(
        mode=FUNCTIONAL,
        message_dim=spec.ambient_dim,
        alpha=spec.node_dim,
        bases=list(bases),
        stored=stored,
        live=set(range(spec.node_count)),
        spec=spec,
        beta=spec.beta,
        message=x,
    )
    state.record(
        "encode",
        ("nodes", str(spec.node_count)),
        ("symbols_stored", str(spec.node_count * spec.node_dim)),
    )
    return state


def fail(state: SystemState, node: int) -> None:
    """Mark a node failed; its stored block is discarded."""
    if node not in state.live:
        raise SimulationError(f"node {node} is not live")
    state.live.discard(node)
    state.stored.pop(node, None)
    state.record("fail", ("node", str(node)))


def collect(state: SystemState, indices: Sequence[int]) -> Optional[BitVector]:
    """Decode the message from a set of live nodes, or None if undecodable."""
    idx = sorted(set(indices))
    for i in idx:
        if i not in state.live:
            raise SimulationError(f"cannot collect from non-live node {i}")
    stacked = state.bases[idx[0]]
    for i in idx[1:]:
        stacked = stacked.stack(state.bases[i])
    ok = rank(stacked) == state.message_dim
    result: Optional[BitVector] = None
    if ok:
        rhs_word = 0
        pos = 0
        for i in idx:
            rhs_word |= state.stored[i].word << pos
            pos += state.bases[i].row_count
        result = solve(stacked, BitVector(pos, rhs_word))
        if result is None:
            raise SimulationError("recovery-set decode was inconsistent")
    state.record(
        "collect",
        ("nodes", ",".join(map(str, idx))),
        ("ok", str(int(ok))),
    )
    return result


def _coefficients(mat: BitMatrix, target: BitVector) -> BitVector:
    """Express target as a combination of mat's rows (must be solvable)."""
    combo = solve(mat.transpose(), target)
    if combo is None:
        raise SimulationError("vector is not in the expected row span")
    return combo


def exact_repair(state: SystemState, plan: RepairPlan) -> None:
    """Rebuild a failed node bit-for-bit from its helpers' repair symbols."""
    if state.mode != EXACT or state.code is None:
        raise SimulationError("exact_repair requires exact mode")
    if plan.failed in state.live:
        raise SimulationError(f"node {plan.failed} is still live; fail it first")
    for h in plan.helpers:
        if h not in state.live:
            raise SimulationError(f"helper {h} is not live")
    problems = validate_plan(state.code, plan)
    if problems:
        raise SimulationError("invalid repair plan: " + "; ".join(problems))

    # Each helper projects its stored block onto its repair-space basis.
    transfer_rows: List[BitVector] = []
    transfer_symbols: List[int] = []
    for h in plan.helpers:
        basis_h = state.bases[h]
        for w in plan.repair_spaces[h].basis.rows:
            coeff = _coefficients(basis_h, w)
            transfer_rows.append(w)
            transfer_symbols.append(coeff.dot(state.stored[h]))

    # The newcomer re-expresses its own basis rows in the repair vectors.
    wmat = BitMatrix(tuple(transfer_rows), state.message_dim)
    target_basis = state.code.node_bases[plan.failed]
    sym_vec = BitVector(
        len(transfer_symbols),
        sum(bit << i for i, bit in enumerate(transfer_symbols)),
    )
    restored_word = 0
    for i, b in enumerate(target_basis.rows):
        combo = _coefficients(wmat, b)
        if combo.dot(sym_vec):
            restored_word |= 1 << i
    restored = BitVector(target_basis.row_count, restored_word)

    assert state.message is not None
    expected = target_basis.mat_vec(state.message)
    if restored != expected:
        raise SimulationError("exact repair did not restore the stored block")

    state.stored[plan.failed] = restored
    state.live.add(plan.failed)
    state.epoch += 1
    state.record(
        "repair-exact",
        ("node", str(plan.failed)),
        ("helpers", ",".join(map(str, plan.helpers))),
        ("symbols_transferred", str(len(transfer_symbols))),
        ("spaces", ";".join(f"{h}:{_space_text(plan.repair_spaces[h])}" for h in plan.helpers)),
    )


def functional_repair(state: SystemState, failed: int) -> None:
    """Replace a failed node's subspace with any spec-satisfying choice.

    Each survivor contributes one vector a_i of its space (beta = 1
    download); the candidate replacement is a node_dim-dimensional
    subspace of the span of the a_i.  Survivor vector tuples are tried
    in lexicographic order of their textual encodings and candidate
    subspaces in canonical enumeration order; the first combination
    satisfying the specification wins, making repairs replayable.
    """
    if state.mode != FUNCTIONAL or state.spec is None:
        raise SimulationError("functional_repair requires functional mode")
    if failed in state.live:
        raise SimulationError(f"node {failed} is still live; fail it first")
    spec = state.spec
    survivors = sorted(state.live)
    if len(survivors) != spec.node_count - 1:
        raise SimulationError("exactly one node may be failed at a time")
    spaces = {i: Subspace.spanned_by(state.message_dim, state.bases[i].rows) for i in survivors}
    if spec.violations([spaces[i] for i in survivors]):
        raise SimulationError("survivors no longer satisfy the specification")

    survivor_vectors = {
        i: sorted(
            (v for v in spaces[i].vectors() if not v.is_zero()),
            key=lambda v: v.to_string(),
        )
        for i in survivors
    }

    def choose() -> Optional[Tuple[Dict[int, BitVector], Subspace]]:
        def rec(depth: int, picked: Dict[int, BitVector]):
            if depth == len(survivors):
                amat = BitMatrix(tuple(picked[i] for i in survivors), state.message_dim)
                span = Subspace.spanned_by(state.message_dim, amat.rows)
                for cand in subspaces_of(span, spec.node_dim):
                    trial = [spaces[i] for i in survivors] + [cand]
                    if spec.satisfied(trial):
                        return dict(picked), cand
                return None
            i = survivors[depth]
            for v in survivor_vectors[i]:
                picked[i] = v
                hit = rec(depth + 1, picked)
                if hit:
                    return hit
                del picked[i]
            return None

        return rec(0, {})

    hit = choose()
    if hit is None:
        raise StuckError(f"no spec-satisfying replacement exists for node {failed}")
    picked, new_space = hit

    # Downloads: one symbol a_i . x per survivor, computed node-locally.
    downloads: List[int] = []
    amat_rows: List[BitVector] = []
    for i in survivors:
        coeff = _coefficients(state.bases[i], picked[i])
        downloads.append(coeff.dot(state.stored[i]))
        amat_rows.append(picked[i])
    amat = BitMatrix(tuple(amat_rows), state.message_dim)
    dl_vec = BitVector(len(downloads), sum(b << i for i, b in enumerate(downloads)))

    new_basis = new_space.basis
    stored_word = 0
    for i, row in enumerate(new_basis.rows):
        combo = _coefficients(amat, row)
        if combo.dot(dl_vec):
            stored_word |= 1 << i
    new_stored = BitVector(new_basis.row_count, stored_word)

    assert state.message is not None
    if new_stored != new_basis.mat_vec(state.message):
        raise SimulationError("functional repair produced inconsistent symbols")

    state.bases[failed] = new_basis
    state.stored[failed] = new_stored
    state.live.add(failed)
    state.epoch += 1
    state.record(
        "repair-functional",
        ("node", str(failed)),
        ("helpers", ",".join(map(str, survivors))),
        ("symbols_transferred", str(len(downloads))),
        ("vectors", ";".join(f"{i}:{picked[i].to_string()}" for i in survivors)),
        ("new_basis", "+".join(new_basis.to_strings())),
    )


ScriptItem = Union[Tuple[str], Tuple[str, int], Tuple[str, Sequence[int]]]


def run_scenario(state: SystemState, script: Sequence[ScriptItem]) -> List[TraceEvent]:
    """Execute fail / repair / collect events in order; return the trace.

    Repairs auto-select a plan: exact mode prefers the cached canonical
    plan for the failed node and otherwise searches one over all live
    helpers; functional mode uses the deterministic choice rule.  Only
    one node may be failed at any time, and every collect on a recovery
    set must decode the original message.
    """
    pending: Optional[int] = None
    for item in script:
        op = item[0]
        if op == "fail":
            if pending is not None:
                raise SimulationError("two simultaneous failures are not allowed")
            node = int(item[1])  # type: ignore[arg-type]
            fail(state, node)
            pending = node
        elif op == "repair":
            if pending is None:
                raise SimulationError("repair without a failed node")
            if state.mode == EXACT:
                plan = state.plans.get(pending) if state.plans else None
                if plan is None:
                    if state.beta is None:
                        raise SimulationError("exact mode needs cached plans or beta")
                    plan = find_repair_plan(
                        state.code, pending, sorted(state.live), state.beta
                    )
                    if plan is None:
                        raise SimulationError(f"node {pending} is not repairable")
                exact_repair(state, plan)
            else:
                functional_repair(state, pending)
            pending = None
        elif op == "collect":
            indices = list(item[1])  # type: ignore[arg-type]
            result = collect(state, indices)
            if result is not None and result != state.message:
                raise SimulationError("collect decoded the wrong message")
        else:
            raise SimulationError(f"unknown script op {op!r}")
    return state.trace


def random_failure_script(n: int, rounds: int, seed: int) -> List[ScriptItem]:
    """rounds single-failure repair rounds with a seeded node choice."""
    rng = random.Random(seed)
    script: List[ScriptItem] = []
    for _ in range(rounds):
        script.append(("fail", rng.randrange(n)))
        script.append(("repair",))
    return script


def trace_to_text(trace: Sequence[TraceEvent]) -> str:
    return "\n".join(ev.to_record() for ev in trace) + "\n" if trace else ""
