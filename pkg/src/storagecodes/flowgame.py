"""Information-flow graphs and the KILLER/BUILDER min-cut game.

Every storage-node incarnation is a capacitated in->out edge; a rebuilt
incarnation additionally receives one beta-edge from each helper's out
vertex.  The data collector attaches to the out vertices of all live
incarnations, and the game value is the smallest collector-side min cut
KILLER can force within a finite number of kill/rebuild rounds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import bounds

DEFAULT_MEMO_CAP = 10**6

INFINITE = -1  # sentinel for unbounded edge capacity


class CapExceededError(RuntimeError):
    """Raised when the game search exceeds its memo-table cap."""


@dataclass(frozen=True)
class Incarnation:
    """One storage-node incarnation: internal capacity plus helper edges."""

    alpha: int
    helpers: Tuple[Tuple[int, int], ...]  # (incarnation id, beta); empty = initial


@dataclass(frozen=True)
class FlowGraph:
    """Capacitated DAG of incarnations with a live-node frontier."""

    nodes: Tuple[Incarnation, ...]
    live: FrozenSet[int]


def initial_graph(n: int, alpha: int) -> FlowGraph:
    """n isolated live nodes, each fed from the source with capacity alpha."""
    if n < 2:
        raise ValueError("need n >= 2")
    if alpha < 1:
        raise ValueError("alpha must be positive")
    return FlowGraph(tuple(Incarnation(alpha, ()) for _ in range(n)), frozenset(range(n)))


def kill(g: FlowGraph, node: int) -> FlowGraph:
    """Remove a node from the live set; its vertices stay in the DAG."""
    if node not in g.live:
        raise ValueError(f"node {node} is not live")
    return FlowGraph(g.nodes, g.live - {node})


def rebuild(g: FlowGraph, helpers: Iterable[int], alpha: int, beta: int) -> FlowGraph:
    """Add a new live incarnation fed by beta-edges from the given helpers."""
    helper_ids = tuple(sorted(set(helpers)))
    for h in helper_ids:
        if h not in g.live:
            raise ValueError(f"helper {h} is not live")
    newcomer = Incarnation(alpha, tuple((h, beta) for h in helper_ids))
    return FlowGraph(g.nodes + (newcomer,), g.live | {len(g.nodes)})


# ---------------------------------------------------------------------------
# max flow


def _dinic(n_vertices: int, edges: List[Tuple[int, int, int]], s: int, t: int) -> int:
    """Exact integral max flow (Dinic) on integer capacities."""
    head: List[int] = []
    to: List[int] = []
    cap: List[int] = []
    adj: List[List[int]] = [[] for _ in range(n_vertices)]
    for u, v, c in edges:
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)

    flow = 0
    while True:
        level = [-1] * n_vertices
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    queue.append(to[e])
        if level[t] < 0:
            return flow
        it = [0] * n_vertices

        def dfs(u: int, pushed: int) -> int:
            if u == t:
                return pushed
            while it[u] < len(adj[u]):
                e = adj[u][it[u]]
                v = to[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    got = dfs(v, min(pushed, cap[e]))
                    if got:
                        cap[e] -= got
                        cap[e ^ 1] += got
                        return got
                it[u] += 1
            return 0

        while True:
            pushed = dfs(s, 1 << 62)
            if not pushed:
                break
            flow += pushed


def build_flow_network(
    g: FlowGraph, collect_on: Optional[Sequence[int]] = None
) -> Tuple[int, List[Tuple[int, int, int]], int, int]:
    """Vertex count, edge list (with INFINITE resolved), source, sink."""
    collect = sorted(g.live) if collect_on is None else sorted(set(collect_on))
    for i in collect:
        if not 0 <= i < len(g.nodes):
            raise ValueError(f"collector target {i} does not exist")
    n = len(g.nodes)
    source, sink = 0, 1
    vin = lambda i: 2 + 2 * i
    vout = lambda i: 3 + 2 * i
    finite_total = sum(inc.alpha for inc in g.nodes) + sum(
        b for inc in g.nodes for _, b in inc.helpers
    )
    unbounded = finite_total + 1
    edges: List[Tuple[int, int, int]] = []
    for i, inc in enumerate(g.nodes):
        if inc.helpers:
            for h, b in inc.helpers:
                edges.append((vout(h), vin(i), b))
        else:
            edges.append((source, vin(i), unbounded))
        edges.append((vin(i), vout(i), inc.alpha))
    for i in collect:
        edges.append((vout(i), sink, unbounded))
    return 2 + 2 * n, edges, source, sink


def collector_value(g: FlowGraph, collect_on: Optional[Sequence[int]] = None) -> int:
    """Max source-to-collector flow; the collector spans the live frontier.

    Passing collect_on restricts the collector to an explicit set of
    incarnations (used to replay the classic cutset-bound argument).
    """
    n_vertices, edges, s, t = build_flow_network(g, collect_on)
    return _dinic(n_vertices, edges, s, t)


def dimakis_cutset_value(n: int, k: int, r: int, alpha: int, beta: int) -> int:
    """Replay the classic worst-case repair sequence and read off its cut.

    k initial nodes fail one by one; newcomer j connects to all previous
    newcomers plus r-j surviving initial nodes, and the collector is
    restricted to the k newcomers.  The result reproduces the cutset
    bound exactly.
    """
    if not 1 <= k <= r <= n - 1:
        raise ValueError("need 1 <= k <= r <= n-1")
    g = initial_graph(n, alpha)
    newcomers: List[int] = []
    for j in range(k):
        g = kill(g, n - 1 - j)
        live_initials = [i for i in range(n) if i in g.live and i < n]
        helpers = newcomers + live_initials[: r - j]
        g = rebuild(g, helpers, alpha, beta)
        newcomers.append(len(g.nodes) - 1)
    return collector_value(g, collect_on=newcomers)


# ---------------------------------------------------------------------------
# canonical state keys

def _ancestors_of_live(g: FlowGraph) -> List[int]:
    seen = set()
    stack = list(g.live)
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(h for h, _ in g.nodes[v].helpers)
    return sorted(seen)


def canonical_key(g: FlowGraph) -> str:
    """Isomorphism-invariant key of the game-relevant part of the graph.

    Only ancestors of live incarnations can influence any future
    collector value, so the key is a canonical form of that subgraph
    (iterated color refinement with individualization on ties).
    """
    rel = _ancestors_of_live(g)
    index = {v: i for i, v in enumerate(rel)}
    n = len(rel)
    helpers = [
        tuple(sorted((b, index[h]) for h, b in g.nodes[v].helpers)) for v in rel
    ]
    children: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for b, h in helpers[i]:
            children[h].append((b, i))
    live = [rel[i] in g.live for i in range(n)]
    alphas = [g.nodes[v].alpha for v in rel]

    def refine(colors: List[int]) -> List[int]:
        while True:
            signatures = [
                (
                    colors[i],
                    tuple(sorted((b, colors[h]) for b, h in helpers[i])),
                    tuple(sorted((b, colors[c]) for b, c in children[i])),
                )
                for i in range(n)
            ]
            mapping = {sig: j for j, sig in enumerate(sorted(set(signatures)))}
            new = [mapping[sig] for sig in signatures]
            if new == colors:
                return colors
            colors = new

    def encode(order: List[int]) -> str:
        pos = {v: i for i, v in enumerate(order)}
        parts = []
        for v in order:
            hs = ",".join(f"{b}:{pos[h]}" for b, h in sorted((b, h) for b, h in helpers[v]))
            parts.append(f"{int(live[v])}|{alphas[v]}|{hs}")
        return ";".join(parts)

    def canonize(colors: List[int]) -> str:
        colors = refine(colors)
        classes: Dict[int, List[int]] = {}
        for i, c in enumerate(colors):
            classes.setdefault(c, []).append(i)
        ambiguous = [members for members in classes.values() if len(members) > 1]
        if not ambiguous:
            order = sorted(range(n), key=lambda i: colors[i])
            return encode(order)
        target = min(ambiguous, key=lambda ms: (len(ms), colors[ms[0]]))
        best: Optional[str] = None
        fresh = max(colors) + 1
        for member in target:
            branched = list(colors)
            branched[member] = fresh
            candidate = canonize(branched)
            if best is None or candidate < best:
                best = candidate
        return best  # type: ignore[return-value]

    initial = [
        (live[i], alphas[i], len(helpers[i]) == 0) for i in range(n)
    ]
    mapping = {sig: j for j, sig in enumerate(sorted(set(initial)))}
    return canonize([mapping[sig] for sig in initial])


# ---------------------------------------------------------------------------
# the game

KILLER = "KILLER"
BUILDER = "BUILDER"

Move = Tuple[str, Tuple[int, ...]]  # ("kill", (node,)) or ("rebuild", helpers)


@dataclass
class GameState:
    """One position of the KILLER/BUILDER game."""

    graph: FlowGraph
    to_move: str
    r: int
    alpha: int
    beta: int
    history_min_cut: int


@dataclass
class GameValue:
    """Certified game value: min cut guaranteed within the searched horizon.

    capped records that deepening stopped early because the memo-table
    cap was hit; the value is still a valid certificate for the horizon
    actually searched.
    """

    value: int
    horizon: int
    principal_line: Tuple[Move, ...]
    capped: bool = False


def make_game(n: int, r: int, alpha: int, beta: int) -> GameState:
    if not 1 <= r <= n - 1:
        raise ValueError("need 1 <= r <= n-1")
    g = initial_graph(n, alpha)
    return GameState(g, KILLER, r, alpha, beta, collector_value(g))


_INF = float("inf")


class _Searcher:
    """Alpha-beta minimax over kill/rebuild rounds with a transposition table.

    A table entry maps (canonical key, rounds left) to a fail-soft value
    with an EXACT/LOWER/UPPER flag plus the best continuation.
    """

    EXACT, LOWER, UPPER = 0, 1, 2

    def __init__(self, r: int, alpha: int, beta: int, memo_cap: int) -> None:
        self.r = r
        self.alpha = alpha
        self.beta = beta
        self.memo_cap = memo_cap
        self.table: Dict[Tuple[str, int], Tuple[float, int, Tuple[Move, ...]]] = {}
        self.table_b: Dict[Tuple[str, int], Tuple[float, int, Tuple[Move, ...]]] = {}
        # Window-independent per-position caches, keyed by the labeled graph:
        # deduplicated kill moves and sorted rebuild candidates with cuts.
        self.kill_cache: Dict[FlowGraph, List[Tuple[int, FlowGraph, str]]] = {}
        self.cand_cache: Dict[FlowGraph, List[Tuple[int, Tuple[int, ...], FlowGraph]]] = {}

    def _check_cap(self) -> None:
        if len(self.table) + len(self.table_b) >= self.memo_cap:
            raise CapExceededError(f"transposition table exceeded {self.memo_cap} entries")

    def _kills(self, g: FlowGraph) -> List[Tuple[int, FlowGraph, str]]:
        hit = self.kill_cache.get(g)
        if hit is None:
            hit = []
            seen = set()
            for victim in sorted(g.live, reverse=True):  # newest first
                killed = kill(g, victim)
                kkey = canonical_key(killed)
                if kkey in seen:
                    continue
                seen.add(kkey)
                hit.append((victim, killed, kkey))
            self.kill_cache[g] = hit
        return hit

    def _candidates(self, g: FlowGraph) -> List[Tuple[int, Tuple[int, ...], FlowGraph]]:
        hit = self.cand_cache.get(g)
        if hit is None:
            hit = [
                (collector_value(child), helpers, child)
                for helpers in combinations(sorted(g.live), self.r)
                for child in (rebuild(g, helpers, self.alpha, self.beta),)
            ]
            hit.sort(key=lambda t: -t[0])  # highest cut first
            self.cand_cache[g] = hit
        return hit

    def search(
        self,
        g: FlowGraph,
        rounds: int,
        lo: float,
        hi: float,
        key: Optional[str] = None,
    ) -> Tuple[float, Tuple[Move, ...]]:
        """Value of the next `rounds` full rounds, KILLER to move.

        Fail-soft: a result <= lo is an upper bound on the true value and
        a result >= hi is a lower bound.  Returns the optimal minimum
        over collector values of the states visited after each rebuild
        (inf when rounds == 0).
        """
        if rounds == 0:
            return _INF, ()
        key = canonical_key(g) if key is None else key
        entry = (key, rounds)
        hit = self.table.get(entry)
        if hit is not None:
            value, flag, line = hit
            if flag == self.EXACT or (flag == self.LOWER and value >= hi) or (
                flag == self.UPPER and value <= lo
            ):
                return value, line

        best: float = _INF
        best_line: Tuple[Move, ...] = ()
        orig_lo, orig_hi = lo, hi
        for victim, killed, kkey in self._kills(g):
            value, line = self._builder(killed, rounds, lo, hi, kkey)
            if value < best:
                best = value
                best_line = (("kill", (victim,)),) + line
            hi = min(hi, best)
            if best <= lo:
                break
        self._check_cap()
        if best <= orig_lo:
            flag = self.UPPER  # cutoff: true value is at most best
        elif best >= orig_hi:
            flag = self.LOWER  # children were window-pruned: at least best
        else:
            flag = self.EXACT
        self.table[entry] = (best, flag, best_line)
        return best, best_line

    def _builder(
        self, g: FlowGraph, rounds: int, lo: float, hi: float, kkey: str
    ) -> Tuple[float, Tuple[Move, ...]]:
        """BUILDER replies to a kill; value folds in the post-rebuild cut."""
        entry = (kkey, rounds)
        hit = self.table_b.get(entry)
        if hit is not None:
            value, flag, line = hit
            if flag == self.EXACT or (flag == self.LOWER and value >= hi) or (
                flag == self.UPPER and value <= lo
            ):
                return value, line

        candidates = self._candidates(g)
        best: float = -_INF
        best_line: Tuple[Move, ...] = ()
        orig_lo, orig_hi = lo, hi
        for cv, helpers, child in candidates:
            if cv <= best:
                break  # min(cv, .) can no longer improve the max
            if cv <= lo:
                # Below the window: every remaining candidate is capped by
                # this cv, so report it as a fail-soft upper bound.
                if cv > best:
                    best = cv
                    best_line = (("rebuild", helpers),)
                break
            sub, line = self.search(child, rounds - 1, lo, hi)
            value = min(cv, sub)
            if value > best:
                best = value
                best_line = (("rebuild", helpers),) + line
            lo = max(lo, best)
            if best >= hi:
                break
        self._check_cap()
        if best >= orig_hi:
            flag = self.LOWER
        elif best <= orig_lo:
            flag = self.UPPER
        else:
            flag = self.EXACT
        self.table_b[entry] = (best, flag, best_line)
        return best, best_line


def minimax(
    state: GameState,
    horizon: int,
    memo_cap: Optional[int] = None,
    target: Optional[int] = None,
) -> GameValue:
    """Optimal-play value over at most `horizon` kill/rebuild rounds.

    Uses iterative deepening: if the memo cap is hit at some depth, the
    deepest completed depth is returned (deepening monotonicity makes
    any completed depth a valid upper-bound certificate).

    With a target, deepening stops at the first depth whose value is
    certified <= target; the value is exact at that depth and remains a
    valid upper bound for every deeper horizon.  Intermediate depths are
    probed with a single null-window search, which is much cheaper than
    an exact evaluation.
    """
    if horizon < 1:
        raise ValueError("need horizon >= 1")
    if state.to_move != KILLER:
        raise ValueError("search starts on KILLER's move")
    memo_cap = DEFAULT_MEMO_CAP if memo_cap is None else memo_cap
    start_cut = collector_value(state.graph)
    result: Optional[GameValue] = None
    value = start_cut
    line: Tuple[Move, ...] = ()
    searcher = _Searcher(state.r, state.alpha, state.beta, memo_cap)
    capped = False

    def exact_at_depth(depth: int, upper: int) -> Tuple[int, Tuple[Move, ...]]:
        # Descending null windows walk the value down from a known upper
        # bound; one final exact-band pass yields a genuine principal line.
        v = upper
        while v > 0:
            got, _ = searcher.search(state.graph, depth, v - 1, v)
            if got >= v:
                break
            v = int(got)  # fail-soft upper bound; keep descending
        got, got_line = searcher.search(state.graph, depth, v - 1, v + 1)
        if got < _INF:
            return min(v, int(got)), got_line
        return v, ()

    depths = list(range(1, horizon + 1))
    for depth in depths:
        try:
            if target is not None:
                probe, _ = searcher.search(state.graph, depth, target, target + 1)
                if probe > target:
                    continue  # lower bound above the target: deepen
                value = min(value, int(probe))
            value, line = exact_at_depth(depth, value)
        except CapExceededError:
            capped = True
            break
        result = GameValue(min(start_cut, value), depth, line)
        if result.value == 0:
            break
        if target is not None and result.value <= target:
            break
    if result is None and not capped and target is not None:
        # never certified <= target: fall back to the exact full-horizon value
        try:
            value, line = exact_at_depth(horizon, value)
            result = GameValue(min(start_cut, value), horizon, line)
        except CapExceededError:
            capped = True
    if result is None:
        raise CapExceededError(
            f"memo cap {memo_cap} hit before any horizon completed"
        )
    result.capped = capped
    return result


@dataclass
class GameReport:
    """verify_theorem outcome: game value against the closed-form bound."""

    case: str
    n: int
    r: int
    alpha: int
    beta: int
    horizon_requested: int
    horizon_searched: int
    value: int
    formula: int
    holds: bool
    tight: bool
    principal_line: Tuple[Move, ...]
    capped: bool = False

    def to_record(self) -> str:
        line = " ".join(f"{kind}:{','.join(map(str, args))}" for kind, args in self.principal_line)
        return (
            f"case={self.case} n={self.n} r={self.r} alpha={self.alpha} beta={self.beta} "
            f"horizon={self.horizon_searched} value={self.value} formula={self.formula} "
            f"holds={int(self.holds)} tight={int(self.tight)} line={line}"
        )


CASE_R2 = "r2"


def verify_theorem(
    bound_case: str,
    n: int,
    r: int,
    alpha: int,
    beta: int,
    horizon: int,
    memo_cap: Optional[int] = None,
) -> GameReport:
    """Run the game and compare its value to the matching rate bound."""
    if bound_case == bounds.CASE_ALPHA_EQ_BETA:
        if alpha != beta:
            raise ValueError("case alpha_eq_beta requires alpha == beta")
        formula = bounds.theorem1_bound(bound_case, n, r, alpha)
    elif bound_case == bounds.CASE_ALPHA_EQ_R_BETA:
        if alpha != r * beta:
            raise ValueError("case alpha_eq_r_beta requires alpha == r*beta")
        formula = bounds.theorem1_bound(bound_case, n, r, alpha)
    elif bound_case == CASE_R2:
        if r != 2:
            raise ValueError("case r2 requires r == 2")
        formula = bounds.theorem2_bound(n, alpha, beta)
    else:
        raise ValueError(f"unknown case {bound_case!r}")
    state = make_game(n, r, alpha, beta)
    # Certify against the formula: deepening stops at the first horizon
    # whose (exact) value meets the bound, which it then certifies for
    # every deeper horizon as well.
    game = minimax(state, horizon, memo_cap, target=formula)
    return GameReport(
        case=bound_case,
        n=n,
        r=r,
        alpha=alpha,
        beta=beta,
        horizon_requested=horizon,
        horizon_searched=game.horizon,
        value=game.value,
        formula=formula,
        holds=game.value <= formula,
        tight=game.value == formula,
        principal_line=game.principal_line,
        capped=game.capped,
    )
