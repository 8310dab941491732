"""Randomized unbiased estimators of the directed Hamiltonian cycle count.

One trial commits to a random permutation arc by arc.  The working matrix
starts as the adjacency matrix; after a row is expanded, the chosen column is
swapped with the column sitting at the expanded row's own position and both
the row and that position are deleted.  The swap keeps one invariant alive:
for every remaining row, the column at the row's own position is exactly the
arc that would close the partial cycle too early, so excluding it makes every
surviving branch a full Hamiltonian cycle.  The trial value is the product of
the candidate-set sizes, an unbiased estimate of the cycle count: a cycle
selected with probability 1/x contributes value x.

Row order is a policy:

* ``ascending``   - always expand the top row (classic fixed order),
* ``follow-path`` - expand the endpoint of the partial cycle, i.e. a
  self-avoiding walk from the start vertex with a final closing test,
* ``table``       - look the next row position up in a fixed integer matrix,
  indexed by the step and the previously chosen column position.

Monte Carlo aggregation keeps mean and sample variance as exact rationals;
floats appear only in reporting fields.  Per-trial sub-streams come from
``SeedSequence(entropy=seed, spawn_key=(trial,))`` feeding PCG64, so serial
and parallel execution agree bit for bit.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import PolicyError
from .graphs import CycleWitness, DiGraph


@dataclass(frozen=True)
class RowOrderPolicy:
    """Strategy for which row the estimator expands at each step."""

    kind: str
    start: int | None = None
    table: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.kind == "ascending":
            if self.start is not None or self.table is not None:
                raise PolicyError("ascending policy takes no parameters")
        elif self.kind == "follow-path":
            if self.table is not None:
                raise PolicyError("follow-path policy takes no table")
            if not isinstance(self.start, int) or self.start < 1:
                raise PolicyError(f"follow-path start must be a vertex label >= 1, got {self.start!r}")
        elif self.kind == "table":
            if self.start is not None:
                raise PolicyError("table policy takes no start vertex")
            self._validate_table()
        else:
            raise PolicyError(f"unknown policy kind {self.kind!r}")

    def _validate_table(self):
        table = self.table
        if not table:
            raise PolicyError("table policy needs a non-empty square matrix")
        n = len(table)
        for i, row in enumerate(table):
            if len(row) != n:
                raise PolicyError(f"table row {i + 1} has {len(row)} entries, expected {n}")
            hi = n - i
            for j, b in enumerate(row):
                if not isinstance(b, int) or not 1 <= b <= hi:
                    raise PolicyError(
                        f"table entry ({i + 1},{j + 1}) = {b!r} outside 1..{hi}"
                    )

    @classmethod
    def ascending(cls) -> "RowOrderPolicy":
        return cls("ascending")

    @classmethod
    def follow_path(cls, start: int) -> "RowOrderPolicy":
        return cls("follow-path", start=start)

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]]) -> "RowOrderPolicy":
        table = tuple(tuple(int(x) for x in row) for row in rows)
        return cls("table", table=table)

    def describe(self) -> str:
        if self.kind == "ascending":
            return "ascending"
        if self.kind == "follow-path":
            return f"follow-path:{self.start}"
        digest = hashlib.sha256(repr(self.table).encode()).hexdigest()[:8]
        return f"table:{len(self.table)}x{len(self.table)}:{digest}"


@dataclass(frozen=True)
class TrialOutcome:
    """One estimator run: big-integer value, optional cycle, multipliers."""

    value: int
    witness: CycleWitness | None
    p_factors: tuple[int, ...]


@dataclass(frozen=True)
class EstimateReport:
    """Aggregated Monte Carlo statistics over independent trials."""

    trials: int
    sum: int
    mean: Fraction
    sample_variance: Fraction
    standard_error: float
    zero_fraction: float
    seed: int
    policy: str


def trial_stream(seed: int, trial_index: int) -> np.random.Generator:
    """Deterministic sub-stream for one trial.

    This is the documented splittable construction:
    ``Generator(PCG64(SeedSequence(entropy=seed, spawn_key=(trial_index,))))``.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial_index,))
    return np.random.Generator(np.random.PCG64(ss))


def _check_policy(g: DiGraph, policy: RowOrderPolicy) -> None:
    if policy.kind == "follow-path" and policy.start > g.n:
        raise PolicyError(f"follow-path start {policy.start} out of range for n={g.n}")
    if policy.kind == "table" and len(policy.table) != g.n:
        k = len(policy.table)
        raise PolicyError(f"table policy is {k}x{k} but the graph has n={g.n}")


def _bit_positions(x: int) -> list[int]:
    out = []
    while x:
        b = x & -x
        out.append(b.bit_length() - 1)
        x ^= b
    return out


def _cycle_order(succ: dict[int, int], n: int) -> list[int]:
    order = [0]
    cur = succ[0]
    while cur != 0 and len(order) <= n:
        order.append(cur)
        cur = succ[cur]
    if cur != 0 or len(order) != n:
        raise AssertionError("chosen arcs did not form a single full cycle")
    return order


def _run_matrix(g: DiGraph, policy: RowOrderPolicy, choose: Callable[[list[int]], int]):
    """Matrix-form trial for the ascending and table policies.

    Returns (p_factors_so_far, cycle_vertex_order_or_None).  ``choose`` gets
    the candidate column positions in ascending order and returns one of them.
    """
    n, adj = g.n, g.rows
    rows = list(range(n))      # remaining row vertices, by position
    labels = list(range(n))    # remaining column labels, by position
    succ: dict[int, int] = {}
    ps: list[int] = []
    k = 0                      # previously chosen column position
    table = policy.table
    for step in range(n):
        m = n - step
        if table is None:
            gpos = 0
        else:
            want = table[step][k]
            if not 1 <= want <= m:
                raise PolicyError(
                    f"table entry ({step + 1},{k + 1}) selects row {want} of a {m}x{m} matrix"
                )
            gpos = want - 1
        u = rows[gpos]
        row = adj[u]
        if m == 1:
            closing = row >> labels[0] & 1
            ps.append(closing)
            if not closing:
                return ps, None
            succ[u] = labels[0]
            return ps, _cycle_order(succ, n)
        cand = [p for p in range(m) if p != gpos and row >> labels[p] & 1]
        if not cand:
            return ps, None
        J = choose(cand)
        ps.append(len(cand))
        succ[u] = labels[J]
        k = J
        labels[gpos], labels[J] = labels[J], labels[gpos]
        del rows[gpos]
        del labels[gpos]
    raise AssertionError("unreachable")


def _run_walk(g: DiGraph, start0: int, choose: Callable[[list[int]], int]):
    """Self-avoiding-walk trial for the follow-path policy.

    Step 1 offers every out-neighbor of the start; later steps offer the
    unvisited out-neighbors of the current endpoint; the last multiplier is
    the closing arc back to the start (1 or 0).
    """
    n, adj = g.n, g.rows
    visited = 1 << start0
    cur = start0
    order = [start0]
    ps: list[int] = []
    for _ in range(n - 1):
        avail = adj[cur] & ~visited
        if not avail:
            return ps, None
        cand = _bit_positions(avail)
        v = choose(cand)
        ps.append(len(cand))
        visited |= 1 << v
        order.append(v)
        cur = v
    closing = adj[cur] >> start0 & 1
    ps.append(closing)
    return ps, (order if closing else None)


def _run(g: DiGraph, policy: RowOrderPolicy, choose: Callable[[list[int]], int]):
    if policy.kind == "follow-path":
        return _run_walk(g, policy.start - 1, choose)
    return _run_matrix(g, policy, choose)


def _make_outcome(g: DiGraph, ps: list[int], cycle: list[int] | None) -> TrialOutcome:
    factors = tuple(ps) + (0,) * (g.n - len(ps))
    value = 1
    for p in factors:
        value *= p
    witness = None
    if cycle is not None:
        witness = CycleWitness.canonical([v + 1 for v in cycle], directed=True)
    return TrialOutcome(value=value, witness=witness, p_factors=factors)


def trial_with_policy(g: DiGraph, policy: RowOrderPolicy, stream: np.random.Generator) -> TrialOutcome:
    """One randomized trial under the given row-order policy."""
    _check_policy(g, policy)
    ps, cycle = _run(g, policy, lambda cand: cand[int(stream.integers(len(cand)))])
    return _make_outcome(g, ps, cycle)


def trial_ascending(g: DiGraph, stream: np.random.Generator) -> TrialOutcome:
    """One randomized trial with the fixed ascending row order."""
    return trial_with_policy(g, RowOrderPolicy.ascending(), stream)


class _Probe(Exception):
    """A replayed trial reached a choice point beyond its prefix."""

    def __init__(self, width: int):
        self.width = width


def _replay_chooser(prefix: tuple[int, ...], denom: list[int]):
    it = iter(prefix)

    def choose(cand: list[int]) -> int:
        try:
            idx = next(it)
        except StopIteration:
            raise _Probe(len(cand)) from None
        denom[0] *= len(cand)
        return cand[idx]

    return choose


def enumerate_branches(g: DiGraph, policy: RowOrderPolicy) -> Iterator[tuple[Fraction, TrialOutcome]]:
    """Exhaustively enumerate the estimator's random decision tree.

    Yields (probability, outcome) for every branch; the probability is the
    exact product of 1/|candidates| along the branch.  Runs the very same
    trial code, replayed along each choice prefix, so what it enumerates is
    what the randomized trials do.
    """
    _check_policy(g, policy)
    stack: list[tuple[int, ...]] = [()]
    while stack:
        prefix = stack.pop()
        denom = [1]
        try:
            ps, cycle = _run(g, policy, _replay_chooser(prefix, denom))
        except _Probe as probe:
            stack.extend(prefix + (idx,) for idx in range(probe.width - 1, -1, -1))
            continue
        yield Fraction(1, denom[0]), _make_outcome(g, ps, cycle)


def estimate(g: DiGraph, policy: RowOrderPolicy, trials: int, seed: int) -> EstimateReport:
    """Run independent trials and aggregate them exactly.

    Trial ``t`` uses ``trial_stream(seed, t)``, so the report is a pure
    function of (graph, policy, trials, seed) no matter how trials are
    scheduled; the exact rational aggregation is order-insensitive.
    """
    if not isinstance(trials, int) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    _check_policy(g, policy)
    total = 0
    total_sq = 0
    zeros = 0
    for t in range(trials):
        value = trial_with_policy(g, policy, trial_stream(seed, t)).value
        total += value
        total_sq += value * value
        if value == 0:
            zeros += 1
    mean = Fraction(total, trials)
    if trials > 1:
        variance = (Fraction(total_sq) - Fraction(total * total, trials)) / (trials - 1)
    else:
        variance = Fraction(0)
    return EstimateReport(
        trials=trials,
        sum=total,
        mean=mean,
        sample_variance=variance,
        standard_error=math.sqrt(variance / trials),
        zero_fraction=zeros / trials,
        seed=seed,
        policy=policy.describe(),
    )
