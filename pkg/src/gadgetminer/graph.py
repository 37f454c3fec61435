"""Labeled directed graphs derived from CNOT circuits.

Every CNOT endpoint becomes a node labeled "c" (control) or "t" (target);
a "cnot" edge runs control -> target within a gate, and "time" edges chain
consecutive endpoints on each qubit in layer order.  Spectator qubits never
produce nodes.  The label "n" is reserved for hand-built graphs that model
qubits idling through a region.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .circuit import Circuit

NODE_LABELS = ("c", "t", "n")
EDGE_KINDS = ("cnot", "time")


class GraphError(ValueError):
    """Raised for malformed graphs."""


@dataclass(frozen=True)
class GraphNode:
    id: int
    qubit: int
    layer: int
    label: str


@dataclass(frozen=True)
class GraphEdge:
    src: int
    dst: int
    kind: str


class CircuitGraph:
    """Immutable node/edge container with cached adjacency.

    Construction validates ids, endpoint existence, labels and edge kinds;
    structural invariants tied to circuit conversion (one cnot edge per
    c/t node, time edges along single qubits) hold for converted graphs
    but are not enforced here, since pruning can legitimately break them.
    """

    __slots__ = ("nodes", "cnot_edges", "time_edges", "source_circuit",
                 "_by_id", "_adj")

    def __init__(self, nodes, edges, source_circuit: str = ""):
        self.nodes: tuple[GraphNode, ...] = tuple(
            sorted(nodes, key=lambda nd: nd.id))
        cnot = []
        time = []
        by_id: dict[int, GraphNode] = {}
        for nd in self.nodes:
            if nd.id in by_id:
                raise GraphError(f"duplicate node id {nd.id}")
            if nd.label not in NODE_LABELS:
                raise GraphError(f"unknown node label {nd.label!r}")
            by_id[nd.id] = nd
        seen = set()
        for e in edges:
            if e.src not in by_id or e.dst not in by_id:
                raise GraphError(f"edge {e.src}->{e.dst} references missing node")
            if e.kind == "cnot":
                cnot.append(e)
            elif e.kind == "time":
                time.append(e)
            else:
                raise GraphError(f"unknown edge kind {e.kind!r}")
            key = (e.src, e.dst, e.kind)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        self.cnot_edges: tuple[GraphEdge, ...] = tuple(
            sorted(cnot, key=lambda e: (e.src, e.dst)))
        self.time_edges: tuple[GraphEdge, ...] = tuple(
            sorted(time, key=lambda e: (e.src, e.dst)))
        self.source_circuit = source_circuit
        self._by_id = by_id
        self._adj: dict[int, list[int]] | None = None

    @property
    def edges(self) -> tuple[GraphEdge, ...]:
        return self.cnot_edges + self.time_edges

    def node(self, node_id: int) -> GraphNode:
        return self._by_id[node_id]

    def has_node(self, node_id: int) -> bool:
        return node_id in self._by_id

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def __eq__(self, other) -> bool:
        if not isinstance(other, CircuitGraph):
            return NotImplemented
        return (self.nodes == other.nodes
                and self.cnot_edges == other.cnot_edges
                and self.time_edges == other.time_edges)

    def __hash__(self):
        return hash((self.nodes, self.cnot_edges, self.time_edges))

    def adjacency(self) -> dict[int, list[int]]:
        """Undirected neighbor lists, one entry per incident edge."""
        if self._adj is None:
            adj: dict[int, list[int]] = {nd.id: [] for nd in self.nodes}
            for e in self.edges:
                adj[e.src].append(e.dst)
                adj[e.dst].append(e.src)
            self._adj = adj
        return self._adj

    def degrees(self) -> dict[int, int]:
        return {nid: len(nbrs) for nid, nbrs in self.adjacency().items()}

    @property
    def qubits_touched(self) -> tuple[int, ...]:
        return tuple(sorted({nd.qubit for nd in self.nodes}))

    def __repr__(self):
        return (f"CircuitGraph(nodes={len(self.nodes)}, "
                f"cnot={len(self.cnot_edges)}, time={len(self.time_edges)})")


def circuit_to_graph(circuit: Circuit) -> CircuitGraph:
    """Gate i yields control node 2i and target node 2i+1; per-qubit time
    edges chain consecutive endpoints in layer order."""
    nodes: list[GraphNode] = []
    edges: list[GraphEdge] = []
    per_qubit: dict[int, list[int]] = defaultdict(list)
    for i, g in enumerate(circuit.gates):
        cid, tid = 2 * i, 2 * i + 1
        nodes.append(GraphNode(cid, g.control, g.layer, "c"))
        nodes.append(GraphNode(tid, g.target, g.layer, "t"))
        edges.append(GraphEdge(cid, tid, "cnot"))
        per_qubit[g.control].append(cid)
        per_qubit[g.target].append(tid)
    for ids in per_qubit.values():
        for a, b in zip(ids, ids[1:]):
            edges.append(GraphEdge(a, b, "time"))
    return CircuitGraph(nodes, edges, source_circuit=circuit.name)


def prune_open_parts(graph: CircuitGraph) -> CircuitGraph:
    """Iteratively delete nodes of undirected degree <= 1 (with incident
    edges) until the remainder has minimum degree >= 2 or is empty.  This
    removes path- and star-like appendages while preserving every cycle."""
    all_edges = graph.edges
    deg = {nd.id: 0 for nd in graph.nodes}
    incident: dict[int, list[int]] = {nd.id: [] for nd in graph.nodes}
    for idx, e in enumerate(all_edges):
        deg[e.src] += 1
        deg[e.dst] += 1
        incident[e.src].append(idx)
        incident[e.dst].append(idx)
    dead_nodes: set[int] = set()
    dead_edges: set[int] = set()
    stack = [nid for nid, d in deg.items() if d <= 1]
    while stack:
        v = stack.pop()
        if v in dead_nodes or deg[v] > 1:
            continue
        dead_nodes.add(v)
        for idx in incident[v]:
            if idx in dead_edges:
                continue
            dead_edges.add(idx)
            e = all_edges[idx]
            other = e.dst if e.src == v else e.src
            if other not in dead_nodes:
                deg[other] -= 1
                if deg[other] <= 1:
                    stack.append(other)
    if not dead_nodes:
        return graph
    nodes = [nd for nd in graph.nodes if nd.id not in dead_nodes]
    edges = [e for idx, e in enumerate(all_edges) if idx not in dead_edges]
    return CircuitGraph(nodes, edges, source_circuit=graph.source_circuit)


def is_closed(graph: CircuitGraph) -> bool:
    """True when the graph is non-empty and already fixed under
    prune_open_parts, i.e. every node sits on a cycle-supporting core."""
    if graph.is_empty:
        return False
    return len(prune_open_parts(graph)) == len(graph)


def is_connected(graph: CircuitGraph) -> bool:
    """Connectivity of the undirected skeleton; empty graphs are not
    connected."""
    if graph.is_empty:
        return False
    adj = graph.adjacency()
    seen = {graph.nodes[0].id}
    stack = [graph.nodes[0].id]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(graph)


def graph_to_json_dict(graph: CircuitGraph) -> dict:
    return {
        "nodes": [
            {"id": nd.id, "qubit": nd.qubit, "layer": nd.layer,
             "label": nd.label}
            for nd in graph.nodes
        ],
        "edges": [
            {"from": e.src, "to": e.dst, "kind": e.kind}
            for e in graph.edges
        ],
    }


def graph_from_json_dict(data: dict, source_circuit: str = "") -> CircuitGraph:
    try:
        nodes = [
            GraphNode(int(nd["id"]), int(nd["qubit"]), int(nd["layer"]),
                      str(nd["label"]))
            for nd in data["nodes"]
        ]
        edges = [
            GraphEdge(int(e["from"]), int(e["to"]), str(e["kind"]))
            for e in data["edges"]
        ]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    return CircuitGraph(nodes, edges, source_circuit=source_circuit)


def graph_to_dot(graph: CircuitGraph) -> str:
    """GraphViz rendering; cnot edges solid, time edges dashed."""
    lines = ["digraph gadget {"]
    for nd in graph.nodes:
        lines.append(
            f'  n{nd.id} [label="{nd.label} q{nd.qubit} l{nd.layer}"];')
    for e in graph.cnot_edges:
        lines.append(f"  n{e.src} -> n{e.dst};")
    for e in graph.time_edges:
        lines.append(f"  n{e.src} -> n{e.dst} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
