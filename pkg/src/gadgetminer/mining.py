"""Candidate gadget mining over circuit graphs.

A candidate is the subgraph induced by a chosen subset of CNOT gates: the
chosen endpoints, their cnot edges, and fresh time edges chaining the
chosen endpoints per qubit.  Rejections are values, not exceptions: the
extractor always returns a candidate and the filters return booleans, so
callers can compose or audit them independently.

Filter pipeline, in order:
  1. empty nodes: an unchosen gate endpoint inside the candidate's span on
     a shared qubit would be left dangling, so the candidate is tainted;
  2. closure and connectivity of the candidate graph;
  3. stationarity: adjacent chosen gates (sharing a qubit with no chosen
     gate between them on any shared qubit) must not commute, otherwise
     the block can be slid apart and is not a rigid unit.
"""

from __future__ import annotations

import math
import time as _time
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .graph import (
    CircuitGraph,
    GraphEdge,
    is_closed,
    is_connected,
)


@dataclass(frozen=True)
class SubgraphCandidate:
    """One extracted CNOT subset with provenance."""

    source_circuit: str
    layers: tuple[int, ...]
    graph: CircuitGraph
    tainted: bool


@dataclass
class MiningLimits:
    max_candidates: int | None = None
    time_budget: float | None = None


@dataclass
class MiningResult:
    candidates: list[SubgraphCandidate] = field(default_factory=list)
    truncated: bool = False
    reason: str = ""
    subsets_total: int = 0
    subsets_examined: int = 0


def ordered_cnot_edges(graph: CircuitGraph) -> tuple[GraphEdge, ...]:
    """Cnot edges in layer order; ties broken by node id for graphs not
    produced by circuit conversion."""
    return tuple(sorted(graph.cnot_edges,
                        key=lambda e: (graph.node(e.src).layer, e.src)))


def enumerate_cnot_subsets(graph: CircuitGraph, c_g: int):
    """Yield all size-c_g subsets of the graph's cnot edges in layer order,
    binomial(C_T, c_g) in total."""
    cnots = ordered_cnot_edges(graph)
    if not 1 <= c_g <= len(cnots):
        raise ValueError(
            f"subset size {c_g} out of range for {len(cnots)} cnot edges")
    return combinations(cnots, c_g)


class _HostIndex:
    """Per-host lookup tables shared across extractions."""

    __slots__ = ("graph", "qubit_layers")

    def __init__(self, graph: CircuitGraph):
        self.graph = graph
        layers: dict[int, list[int]] = defaultdict(list)
        for nd in graph.nodes:
            layers[nd.qubit].append(nd.layer)
        for seq in layers.values():
            seq.sort()
        self.qubit_layers = layers


def _extract(host: _HostIndex, subset) -> SubgraphCandidate:
    graph = host.graph
    nodes = []
    per_qubit: dict[int, list] = defaultdict(list)
    layers = []
    for e in subset:
        c = graph.node(e.src)
        t = graph.node(e.dst)
        nodes.append(c)
        nodes.append(t)
        per_qubit[c.qubit].append(c)
        per_qubit[t.qubit].append(t)
        layers.append(c.layer)
    edges = list(subset)
    tainted = False
    for q, nds in per_qubit.items():
        nds.sort(key=lambda nd: nd.layer)
        host_layers = host.qubit_layers[q]
        for a, b in zip(nds, nds[1:]):
            edges.append(GraphEdge(a.id, b.id, "time"))
            # any host endpoint strictly inside (a.layer, b.layer) on this
            # qubit belongs to an unchosen gate and would be orphaned
            if bisect_left(host_layers, b.layer) > bisect_right(host_layers, a.layer):
                tainted = True
    return SubgraphCandidate(
        source_circuit=graph.source_circuit,
        layers=tuple(sorted(layers)),
        graph=CircuitGraph(nodes, edges, source_circuit=graph.source_circuit),
        tainted=tainted,
    )


def extract_candidate(graph: CircuitGraph, subset) -> SubgraphCandidate:
    """Build the candidate for one cnot-edge subset of the host graph."""
    return _extract(_HostIndex(graph), tuple(subset))


def passes_empty_node_filter(candidate: SubgraphCandidate) -> bool:
    return not candidate.tainted


def passes_closure_filter(candidate: SubgraphCandidate) -> bool:
    return is_connected(candidate.graph) and is_closed(candidate.graph)


def _candidate_gates(candidate: SubgraphCandidate):
    """(layer, control_qubit, target_qubit) per chosen gate, layer order."""
    g = candidate.graph
    gates = []
    for e in g.cnot_edges:
        c = g.node(e.src)
        t = g.node(e.dst)
        gates.append((c.layer, c.qubit, t.qubit))
    gates.sort()
    return gates


def passes_stationarity_filter(candidate: SubgraphCandidate) -> bool:
    """Adjacent chosen gates must not commute.

    Two chosen gates are adjacent when they share a qubit and no other
    chosen gate acts on any shared qubit strictly between them.  A
    commuting adjacent pair means the candidate is not held in place by
    its own gates and the same composite appears in a slid variant."""
    gates = _candidate_gates(candidate)
    m = len(gates)
    for i in range(m):
        li, ci, ti = gates[i]
        for j in range(i + 1, m):
            lj, cj, tj = gates[j]
            shared = {ci, ti} & {cj, tj}
            if not shared:
                continue
            blocked = False
            for k in range(m):
                if k == i or k == j:
                    continue
                lk, ck, tk = gates[k]
                if li < lk < lj and ({ck, tk} & shared):
                    blocked = True
                    break
            if blocked:
                continue
            if ci != tj and ti != cj:  # adjacent pair commutes
                return False
    return True


def contract_timelines(candidate: SubgraphCandidate) -> SubgraphCandidate:
    """Contract pass-through idle nodes: an n-labeled node whose only edges
    are one incoming and one outgoing time edge is dropped and its chain
    reconnected.  Extracted candidates carry no such nodes, so this is an
    identity for them."""
    g = candidate.graph
    time_in: dict[int, list[GraphEdge]] = defaultdict(list)
    time_out: dict[int, list[GraphEdge]] = defaultdict(list)
    for e in g.time_edges:
        time_out[e.src].append(e)
        time_in[e.dst].append(e)
    deg = g.degrees()
    removable = {
        nd.id
        for nd in g.nodes
        if nd.label == "n" and deg[nd.id] == 2
        and len(time_in[nd.id]) == 1 and len(time_out[nd.id]) == 1
    }
    if not removable:
        return candidate
    # follow each chain of removable nodes to its surviving endpoint
    edges: list[GraphEdge] = list(g.cnot_edges)
    seen: set[tuple[int, int]] = set()
    for e in g.time_edges:
        if e.src in removable:
            continue
        dst = e.dst
        while dst in removable:
            dst = time_out[dst][0].dst
        if (e.src, dst) not in seen:
            seen.add((e.src, dst))
            edges.append(GraphEdge(e.src, dst, "time") if dst != e.dst else e)
    nodes = [nd for nd in g.nodes if nd.id not in removable]
    contracted = CircuitGraph(nodes, edges, source_circuit=g.source_circuit)
    return SubgraphCandidate(
        source_circuit=candidate.source_circuit,
        layers=candidate.layers,
        graph=contracted,
        tainted=candidate.tainted,
    )


def _supports_connected(supports) -> bool:
    """Union-find over gates joined by shared qubits.  Equivalent to
    connectivity of the extracted candidate graph, cheaper to test."""
    m = len(supports)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict[int, int] = {}
    for i, (cq, tq) in enumerate(supports):
        for q in (cq, tq):
            if q in owner:
                ra, rb = find(i), find(owner[q])
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[q] = i
    root = find(0)
    return all(find(i) == root for i in range(m))


def mine_circuit(
    graph: CircuitGraph,
    c_g: int,
    limits: MiningLimits | None = None,
    early_reject: bool = True,
) -> MiningResult:
    """Run the full pipeline over every size-c_g cnot subset of the graph.

    Subsets are visited in deterministic combinations order.  early_reject
    skips subsets whose gates do not hang together via shared qubits; such
    candidates always fail the connectivity filter, so the flag never
    changes the output, only the cost."""
    if c_g < 1:
        raise ValueError(f"subset size {c_g} must be >= 1")
    limits = limits or MiningLimits()
    cnots = ordered_cnot_edges(graph)
    if c_g > len(cnots):
        return MiningResult()
    host = _HostIndex(graph)
    supports = []
    for e in cnots:
        supports.append((graph.node(e.src).qubit, graph.node(e.dst).qubit))
    total = math.comb(len(cnots), c_g)
    deadline = None
    if limits.time_budget is not None:
        deadline = _time.monotonic() + limits.time_budget
    result = MiningResult(subsets_total=total)
    kept = result.candidates
    examined = 0
    for idx_subset in combinations(range(len(cnots)), c_g):
        examined += 1
        if deadline is not None and (examined & 0xFF) == 0:
            if _time.monotonic() > deadline:
                examined -= 1  # current subset not processed
                result.truncated = True
                result.reason = "time_budget"
                break
        if early_reject and not _supports_connected(
                [supports[i] for i in idx_subset]):
            continue
        cand = _extract(host, tuple(cnots[i] for i in idx_subset))
        if cand.tainted:
            continue
        if not passes_closure_filter(cand):
            continue
        if not passes_stationarity_filter(cand):
            continue
        kept.append(contract_timelines(cand))
        if (limits.max_candidates is not None
                and len(kept) >= limits.max_candidates
                and examined < total):
            result.truncated = True
            result.reason = "max_candidates"
            break
    result.subsets_examined = examined
    return result
