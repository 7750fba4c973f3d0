"""Exhaustive searches for weighted zero-sum constants.

Every constant here is ``1 + L`` where L is the largest length of a sequence
that fails the constant's property.  Failing sequences are closed under
taking subsequences, so the failing lengths form an initial segment and one
maximal search settles the value.

The search walks sequences as chains built from the largest element index
downward, which visits each fixed length in colex order; the colex-least
witness therefore falls out of the traversal order.  A node carries the
per-length weighted subsum table of its partial sequence; a node whose table
already contains zero in a forbidden row is dead, and so is every extension,
which is what keeps the walk far below the raw binomial counts.  A greedy
pass seeds the branch-and-bound threshold before the walk starts.

Determinism contract: the set of nodes visited depends only on the search
inputs, never on the thread count.  The walk forks into one task per topmost
element; tasks never share discoveries mid-flight, and their results merge
in element order.  Reported node counts and witnesses are therefore
byte-stable across runs and across ``threads`` settings.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from zerosum.groups import GroupSpec
from zerosum.sequences import (
    Sequence,
    WeightSet,
    oracle_has_weighted_zero_of_length,
    oracle_has_weighted_zero_up_to,
    oracle_nonempty_subsums,
)

DEFAULT_NODE_BUDGET = 50_000_000


class SearchBudgetExceeded(RuntimeError):
    """The search hit its node budget before finishing; no partial answer."""

    def __init__(self, nodes: int, budget: int):
        super().__init__(f"search exceeded node budget ({nodes} > {budget})")
        self.nodes = nodes
        self.budget = budget


class ConstantKind(str, Enum):
    DAVENPORT = "davenport"
    ETA = "eta"
    EGZ = "egz"
    HARBORTH = "harborth"
    CRITICAL = "critical"


# kind -> (default mode, needs weights)
_KIND_MODE = {
    ConstantKind.DAVENPORT: "multiset",
    ConstantKind.ETA: "multiset",
    ConstantKind.EGZ: "multiset",
    ConstantKind.HARBORTH: "squarefree",
    ConstantKind.CRITICAL: "squarefree",
}


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one constant computation.

    ``wall_time_ms`` is the only field that varies between identical runs;
    serialization leaves it out unless asked, so default reports are
    byte-identical across runs and thread counts.
    """

    kind: ConstantKind
    group: GroupSpec
    weights: WeightSet | None
    value: int
    witness: Sequence
    nodes_visited: int
    wall_time_ms: float

    def to_dict(self, include_perf: bool = False) -> dict:
        out = {
            "schema": 1,
            "type": "search_report",
            "kind": self.kind.value,
            "group": self.group.spec_string,
            "weights": list(self.weights.classes) if self.weights is not None else None,
            "value": self.value,
            "witness": self.witness.literal(),
            "nodes_visited": self.nodes_visited,
        }
        if include_perf:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


def _default_threads() -> int:
    raw = os.environ.get("ZEROSUM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"ZEROSUM_THREADS must be an integer, got {raw!r}") from None
    return max(n, 1)


# -- node state ----------------------------------------------------------------


def _rows_engine(group: GroupSpec, weights: WeightSet, zero_lengths: tuple[int, ...]):
    """Per-length subsum table state; dead when a forbidden row hits zero."""
    from zerosum.sequences import _weight_ops

    cap = zero_lengths[-1]
    ops_table = _weight_ops(group, weights)
    zl = zero_lengths

    def push(rows: list[int], g: int, new_size: int):
        hi = min(new_size, cap)
        new = rows.copy()
        for j in range(hi, 0, -1):
            prev = rows[j - 1]
            if prev:
                acc = new[j]
                for ops in ops_table[g]:
                    x = prev
                    for m1, s1, m2, s2 in ops:
                        x = ((x & m1) << s1) | ((x & m2) >> s2)
                    acc |= x
                new[j] = acc
        dead = False
        for j in zl:
            if j > hi:
                break
            if new[j] & 1:
                dead = True
                break
        return new, dead

    init = [1] + [0] * cap
    return init, push


def _coverage_engine(group: GroupSpec):
    """Nonempty subsum state for the critical number; dead when sums cover G."""
    full = group.full_mask
    translate = group.translate_bits

    def push(ne: int, g: int, new_size: int):
        new = ne | translate(ne, g) | (1 << g)
        return new, new == full

    return 0, push


# -- greedy seeding --------------------------------------------------------------


def _greedy_longest(universe, init_state, push, squarefree: bool, ltop: int):
    """Grow maximal failing sequences from every cyclic start; best length seeds
    the branch-and-bound threshold."""
    best = 0
    nodes = 0
    u = len(universe)
    for start in range(u):
        state = init_state.copy() if isinstance(init_state, list) else init_state
        size = 0
        if squarefree:
            for off in range(u):
                g = universe[(start + off) % u]
                nodes += 1
                st2, dead = push(state, g, size + 1)
                if not dead:
                    state, size = st2, size + 1
        else:
            grew = True
            while grew and size < ltop:
                grew = False
                for off in range(u):
                    if size == ltop:
                        break
                    g = universe[(start + off) % u]
                    nodes += 1
                    st2, dead = push(state, g, size + 1)
                    if not dead:
                        state, size = st2, size + 1
                        grew = True
        if size > best:
            best = size
    return best, nodes


# -- search tasks -----------------------------------------------------------------


def _max_task_squarefree(universe, init_state, push, threshold, budget):
    """Best failing length within the subtree of one topmost element."""

    def run(m: int):
        nodes = 1
        if nodes > budget:
            raise SearchBudgetExceeded(nodes, budget)
        best = threshold
        best_chain = None
        state, dead = push(init_state, universe[m], 1)
        if dead:
            return best, None, nodes, False
        if 1 > best:
            best, best_chain = 1, (m,)
        chain = [m]

        def rec(p: int, state, size: int):
            nonlocal nodes, best, best_chain
            for c in range(max(0, best - size), p):
                if c < best - size:
                    continue
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(nodes, budget)
                st2, dead = push(state, universe[c], size + 1)
                if dead:
                    continue
                if size + 1 > best:
                    best = size + 1
                    best_chain = tuple(chain) + (c,)
                chain.append(c)
                rec(c, st2, size + 1)
                chain.pop()

        rec(m, state, 1)
        return best, best_chain, nodes, False

    return run


def _max_task_multiset(universe, init_state, push, threshold, ltop, budget):
    def run(m: int):
        nodes = 1
        if nodes > budget:
            raise SearchBudgetExceeded(nodes, budget)
        best = threshold
        best_chain = None
        hit_cap = False
        state, dead = push(init_state, universe[m], 1)
        if dead:
            return best, None, nodes, False
        if 1 > best:
            best, best_chain = 1, (m,)
        if ltop == 1:
            return best, best_chain, nodes, True
        chain = [m]

        def rec(p: int, state, size: int):
            nonlocal nodes, best, best_chain, hit_cap
            for c in range(p + 1):
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(nodes, budget)
                st2, dead = push(state, universe[c], size + 1)
                if dead:
                    continue
                if size + 1 > best:
                    best = size + 1
                    best_chain = tuple(chain) + (c,)
                if size + 1 == ltop:
                    hit_cap = True
                    continue
                chain.append(c)
                rec(c, st2, size + 1)
                chain.pop()

        rec(m, state, 1)
        return best, best_chain, nodes, hit_cap

    return run


def _exact_task(universe, init_state, push, target, squarefree: bool, collect: bool, budget):
    """All (or the colex-first) failing sequences of one exact length within
    the subtree of one topmost element."""

    def run(m: int):
        hits: list[tuple[int, ...]] = []
        if squarefree and m < target - 1:
            return hits, 0
        nodes = 1
        if nodes > budget:
            raise SearchBudgetExceeded(nodes, budget)
        state, dead = push(init_state, universe[m], 1)
        if dead:
            return hits, nodes
        if target == 1:
            hits.append((m,))
            return hits, nodes
        chain = [m]

        def rec(p: int, state, size: int) -> bool:
            nonlocal nodes
            need = target - size
            if squarefree:
                candidates = range(need - 1, p)
            else:
                candidates = range(p + 1)
            for c in candidates:
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(nodes, budget)
                st2, dead = push(state, universe[c], size + 1)
                if dead:
                    continue
                if size + 1 == target:
                    hits.append(tuple(chain) + (c,))
                    if not collect:
                        return True
                    continue
                chain.append(c)
                stop = rec(c, st2, size + 1)
                chain.pop()
                if stop:
                    return True
            return False

        rec(m, state, 1)
        return hits, nodes

    return run


def _orbit_task(universe, init_state, push, threshold, squarefree: bool, ltop, budget, auts):
    """Value-only scan over orbit representatives (lex-least first elements).

    Chains grow from the smallest element upward here; a child is skipped
    when an automorphism fixing the chosen prefix maps it to a smaller
    element, which never prunes the lex-least member of an orbit.
    """
    u = len(universe)

    def run(m: int):
        nodes = 0
        best = threshold
        hit_cap = False
        e_m = universe[m]
        if any(p[e_m] < e_m for p in auts):
            return best, nodes, False
        nodes = 1
        if nodes > budget:
            raise SearchBudgetExceeded(nodes, budget)
        state, dead = push(init_state, e_m, 1)
        if dead:
            return best, nodes, False
        if 1 > best:
            best = 1
        if not squarefree and ltop == 1:
            return best, nodes, True
        stab0 = [p for p in auts if p[e_m] == e_m]

        def rec(p: int, state, size: int, stab):
            nonlocal nodes, best, hit_cap
            lo = p + 1 if squarefree else p
            for c in range(lo, u):
                if squarefree and size + 1 + (u - 1 - c) <= best:
                    break
                e_c = universe[c]
                if any(s[e_c] < e_c for s in stab):
                    continue
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(nodes, budget)
                st2, dead = push(state, e_c, size + 1)
                if dead:
                    continue
                if size + 1 > best:
                    best = size + 1
                if not squarefree and size + 1 == ltop:
                    hit_cap = True
                    continue
                rec(c, st2, size + 1, [s for s in stab if s[e_c] == e_c])

        rec(m, state, 1, stab0)
        return best, nodes, hit_cap

    return run


def _run_tasks(task_fn, roots, threads: int):
    if threads > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(task_fn, roots))
    return [task_fn(m) for m in roots]


# -- search driver -----------------------------------------------------------------


@dataclass(frozen=True)
class MaxFailingResult:
    length: int
    witness: Sequence
    nodes_visited: int
    census: tuple[Sequence, ...] | None = None


def _initial_ltop(group: GroupSpec) -> int:
    return group.exponent + group.order.bit_length() + 3


def _search_max_failing(
    group: GroupSpec,
    weights: WeightSet | None,
    kind: ConstantKind,
    mode: str,
    *,
    threads: int,
    node_budget: int,
    orbit_pruning: bool,
    want_census: bool,
) -> MaxFailingResult:
    squarefree = mode == "squarefree"
    exp = group.exponent
    if kind is ConstantKind.CRITICAL:
        universe = tuple(range(1, group.order))
    else:
        universe = tuple(range(group.order))

    ltop = len(universe) if squarefree else _initial_ltop(group)
    safety = 4 * group.order + exp + 8

    def build_engine(cur_ltop: int):
        if kind is ConstantKind.CRITICAL:
            return _coverage_engine(group)
        if kind in (ConstantKind.HARBORTH, ConstantKind.EGZ):
            zl = (exp,)
        elif kind is ConstantKind.ETA:
            zl = tuple(range(1, exp + 1))
        else:  # davenport
            zl = tuple(range(1, cur_ltop + 1))
        return _rows_engine(group, weights, zl)

    total_nodes = 0
    while True:
        init_state, push = build_engine(ltop)
        threshold, greedy_nodes = _greedy_longest(universe, init_state, push, squarefree, ltop)
        total_nodes += greedy_nodes
        if not squarefree and threshold >= ltop:
            ltop *= 2
            if ltop > safety:
                raise RuntimeError(f"failing lengths for {kind.value} on {group} keep growing past {safety}")
            continue

        roots = range(len(universe))
        if orbit_pruning:
            auts = group.automorphisms
            task = _orbit_task(universe, init_state, push, threshold, squarefree, ltop, node_budget, auts)
            results = _run_tasks(task, roots, threads)
            round_nodes = sum(r[1] for r in results)
            best = max([threshold] + [r[0] for r in results])
            hit_cap = any(r[2] for r in results)
            best_chain = None
        else:
            if squarefree:
                task = _max_task_squarefree(universe, init_state, push, threshold, node_budget)
            else:
                task = _max_task_multiset(universe, init_state, push, threshold, ltop, node_budget)
            results = _run_tasks(task, roots, threads)
            round_nodes = sum(r[2] for r in results)
            best = threshold
            best_chain = None
            for r in results:
                if r[0] > best:
                    best, best_chain = r[0], r[1]
            hit_cap = any(r[3] for r in results)
        total_nodes += round_nodes
        if total_nodes > node_budget:
            raise SearchBudgetExceeded(total_nodes, node_budget)
        if hit_cap:
            ltop *= 2
            if ltop > safety:
                raise RuntimeError(f"failing lengths for {kind.value} on {group} keep growing past {safety}")
            continue
        length = best
        break

    census: tuple[Sequence, ...] | None = None
    witness_chain: tuple[int, ...] | None = None
    if length == 0:
        witness = Sequence.empty(group)
        if want_census:
            census = (witness,)
    else:
        need_scan = want_census or best_chain is None or orbit_pruning
        if need_scan:
            init_state, push = build_engine(ltop)
            task = _exact_task(universe, init_state, push, length, squarefree, want_census, node_budget)
            results = _run_tasks(task, roots, threads)
            total_nodes += sum(r[1] for r in results)
            if total_nodes > node_budget:
                raise SearchBudgetExceeded(total_nodes, node_budget)
            all_hits = [h for r in results for h in r[0]]
            if not all_hits:
                raise AssertionError("internal: no witness at the established failing length")
            witness_chain = all_hits[0]
            if want_census:
                census = tuple(
                    Sequence.from_indices(group, [universe[p] for p in hit]) for hit in all_hits
                )
        else:
            witness_chain = best_chain
        witness = Sequence.from_indices(group, [universe[p] for p in witness_chain])
    return MaxFailingResult(length=length, witness=witness, nodes_visited=total_nodes, census=census)


def _validate_witness(kind: ConstantKind, group: GroupSpec, weights: WeightSet | None, witness: Sequence) -> None:
    """Re-check the witness through the recursive oracle, never the tables."""
    if kind is ConstantKind.CRITICAL:
        assert witness.is_squarefree and witness.multiplicity(0) == 0
        covered = oracle_nonempty_subsums(witness)
        assert covered != set(range(group.order)), "critical witness covers the group"
        return
    exp = group.exponent
    if kind in (ConstantKind.HARBORTH, ConstantKind.EGZ):
        assert not oracle_has_weighted_zero_of_length(witness, weights, exp)
        if kind is ConstantKind.HARBORTH:
            assert witness.is_squarefree
    elif kind is ConstantKind.ETA:
        assert not oracle_has_weighted_zero_up_to(witness, weights, exp)
    else:  # davenport
        assert not oracle_has_weighted_zero_up_to(witness, weights, witness.length)


def _compute(
    kind: ConstantKind,
    group: GroupSpec,
    weights: WeightSet | None,
    *,
    mode: str | None = None,
    threads: int | None = None,
    node_budget: int | None = None,
    orbit_pruning: bool = False,
    want_census: bool = False,
):
    t0 = time.perf_counter()
    if kind is ConstantKind.CRITICAL:
        if weights is not None:
            raise ValueError("the critical number takes no weight set")
        if group.order < 3:
            raise ValueError(f"critical number needs |G| >= 3, got {group.order}")
    else:
        if weights is None:
            raise ValueError(f"{kind.value} needs a weight set")
        if weights.modulus != group.exponent:
            raise ValueError(
                f"weight modulus {weights.modulus} does not match exponent {group.exponent} of {group}"
            )
    mode = mode or _KIND_MODE[kind]
    if mode not in ("squarefree", "multiset"):
        raise ValueError(f"unknown search mode {mode!r}")
    if kind in (ConstantKind.HARBORTH, ConstantKind.CRITICAL) and mode != "squarefree":
        raise ValueError(f"{kind.value} is defined over squarefree sequences")
    threads = threads if threads is not None else _default_threads()
    node_budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    result = _search_max_failing(
        group,
        weights,
        kind,
        mode,
        threads=threads,
        node_budget=node_budget,
        orbit_pruning=orbit_pruning,
        want_census=want_census,
    )
    value = result.length + 1
    _validate_witness(kind, group, weights, result.witness)
    assert result.witness.length == value - 1
    if kind in (ConstantKind.HARBORTH, ConstantKind.EGZ):
        assert value >= group.exponent
    if kind is ConstantKind.HARBORTH:
        assert value <= group.order + 1
    wall_ms = (time.perf_counter() - t0) * 1000.0
    report = SearchReport(
        kind=kind,
        group=group,
        weights=weights,
        value=value,
        witness=result.witness,
        nodes_visited=result.nodes_visited,
        wall_time_ms=wall_ms,
    )
    return report, result.census


def max_failing_length(
    group: GroupSpec,
    weights: WeightSet | None,
    kind: ConstantKind,
    mode: str | None = None,
    **opts,
) -> MaxFailingResult:
    """Largest length of a sequence failing the kind's property, with witness."""
    report, _ = _compute(kind, group, weights, mode=mode, **opts)
    return MaxFailingResult(
        length=report.value - 1, witness=report.witness, nodes_visited=report.nodes_visited
    )


def harborth(group: GroupSpec, weights: WeightSet, **opts) -> SearchReport:
    """Least g such that every squarefree sequence of length >= g has a
    weighted zero-sum subsequence of length exp(G)."""
    return _compute(ConstantKind.HARBORTH, group, weights, **opts)[0]


def egz(group: GroupSpec, weights: WeightSet, **opts) -> SearchReport:
    """Least s such that every sequence of length >= s has a weighted
    zero-sum subsequence of length exp(G)."""
    return _compute(ConstantKind.EGZ, group, weights, **opts)[0]


def eta(group: GroupSpec, weights: WeightSet, **opts) -> SearchReport:
    """Least e such that every sequence of length >= e has a nonempty
    weighted zero-sum subsequence of length <= exp(G)."""
    return _compute(ConstantKind.ETA, group, weights, **opts)[0]


def davenport(group: GroupSpec, weights: WeightSet, **opts) -> SearchReport:
    """Least D such that every sequence of length >= D has a nonempty
    weighted zero-sum subsequence."""
    return _compute(ConstantKind.DAVENPORT, group, weights, **opts)[0]


def critical_number(group: GroupSpec, **opts) -> SearchReport:
    """Least c such that every zero-free squarefree set of size >= c has
    nonempty subset sums covering all of G."""
    return _compute(ConstantKind.CRITICAL, group, None, **opts)[0]


def compute_constant(kind: ConstantKind, group: GroupSpec, weights: WeightSet | None, **opts) -> SearchReport:
    return _compute(kind, group, weights, **opts)[0]


def failing_census(
    kind: ConstantKind, group: GroupSpec, weights: WeightSet | None, **opts
) -> tuple[SearchReport, tuple[Sequence, ...]]:
    """The report plus every failing sequence of the maximal failing length."""
    report, census = _compute(kind, group, weights, want_census=True, **opts)
    assert census is not None
    return report, census


def exists_failing_sequence(
    group: GroupSpec,
    weights: WeightSet,
    length: int,
    zero_lengths: Iterable[int],
    *,
    mode: str = "multiset",
    threads: int | None = None,
    node_budget: int | None = None,
) -> bool:
    """Whether some length-``length`` sequence avoids weighted zero-sums at
    every length in ``zero_lengths``.  Exhaustive up to dead-branch pruning."""
    zl = tuple(sorted(set(int(j) for j in zero_lengths)))
    if not zl or zl[0] < 1:
        raise ValueError("zero_lengths must be positive")
    if length == 0:
        return True
    threads = threads if threads is not None else _default_threads()
    node_budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    squarefree = mode == "squarefree"
    universe = tuple(range(group.order))
    if squarefree and length > group.order:
        return False
    init_state, push = _rows_engine(group, weights, zl)
    task = _exact_task(universe, init_state, push, length, squarefree, False, node_budget)
    results = _run_tasks(task, range(len(universe)), threads)
    if sum(r[1] for r in results) > node_budget:
        raise SearchBudgetExceeded(sum(r[1] for r in results), node_budget)
    return any(r[0] for r in results)
