"""Canonical certificates and isomorphism-class grouping.

Two candidate graphs are the same gadget exactly when their certificates
are equal.  The certificate is built in two stages: iterated color
refinement over the four directed relations (cnot out/in, time out/in)
partitions the nodes into order-invariant classes, then a backtracking
search over within-class orderings picks the lexicographically minimal
adjacency encoding.  The header pins the node count and per-position
labels, so equal certificates reconstruct identical ordered graphs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from . import kernels
from .graph import CircuitGraph, graph_to_json_dict
from .mining import SubgraphCandidate

CERT_VERSION = b"GM1"
MAX_CERT_NODES = 64
CSV_HEADER = "certificate_prefix,C_g,N_r,n_qubits_touched"
_LABEL_CODE = {"c": 0, "t": 1, "n": 2}


class CertificateSizeError(ValueError):
    """Raised when a graph exceeds the certificate node bound."""


def _refine_colors(n: int, init: list[int], rels) -> list[int]:
    """Iterated partition refinement: a node's new color ranks the tuple of
    its old color and the sorted neighbor-color multiset under each
    relation.  Stops at the fixpoint; ranks are stable across isomorphic
    graphs because they depend only on structure."""
    colors = init
    while True:
        sigs = [
            (colors[v],)
            + tuple(tuple(sorted(colors[u] for u in rel[v])) for rel in rels)
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def certificate(graph: CircuitGraph, max_nodes: int = MAX_CERT_NODES) -> bytes:
    """Canonical byte string; equal certificates iff isomorphic graphs
    (matching labels and all edge kinds/directions)."""
    n = len(graph)
    if n > max_nodes:
        raise CertificateSizeError(
            f"graph has {n} nodes, certificate bound is {max_nodes}")
    nodes = graph.nodes
    index = {nd.id: i for i, nd in enumerate(nodes)}
    out_c = [0] * n
    in_c = [0] * n
    out_t = [0] * n
    in_t = [0] * n
    rel_out_c: list[list[int]] = [[] for _ in range(n)]
    rel_in_c: list[list[int]] = [[] for _ in range(n)]
    rel_out_t: list[list[int]] = [[] for _ in range(n)]
    rel_in_t: list[list[int]] = [[] for _ in range(n)]
    for e in graph.cnot_edges:
        a, b = index[e.src], index[e.dst]
        out_c[a] |= 1 << b
        in_c[b] |= 1 << a
        rel_out_c[a].append(b)
        rel_in_c[b].append(a)
    for e in graph.time_edges:
        a, b = index[e.src], index[e.dst]
        out_t[a] |= 1 << b
        in_t[b] |= 1 << a
        rel_out_t[a].append(b)
        rel_in_t[b].append(a)
    label_rank = {lab: i for i, lab in
                  enumerate(sorted({nd.label for nd in nodes}))}
    init = [label_rank[nd.label] for nd in nodes]
    colors = _refine_colors(
        n, init, (rel_out_c, rel_in_c, rel_out_t, rel_in_t))
    by_color: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        by_color.setdefault(c, []).append(i)
    class_sizes = []
    class_nodes = []
    for c in sorted(by_color):
        members = by_color[c]
        class_sizes.append(len(members))
        class_nodes.extend(members)
    body = kernels.canonical_encoding(
        n, class_sizes, class_nodes, out_c, in_c, out_t, in_t)
    header = bytearray(CERT_VERSION)
    header.append(n)
    for p in range(n):
        header.append(_LABEL_CODE[nodes[class_nodes[p]].label])
    return bytes(header) + body


def certificate_digest(cert: bytes) -> str:
    """Hex digest of a certificate.  Raw certificates share a long common
    header (version, size, labels), so short display prefixes come from
    the digest, which differs in its first characters."""
    return hashlib.sha256(cert).hexdigest()


@dataclass
class GadgetClass:
    """All mined occurrences of one isomorphism class."""

    certificate: bytes
    representative: SubgraphCandidate
    occurrences: list[SubgraphCandidate]

    @property
    def n_r(self) -> int:
        return len(self.occurrences)

    @property
    def c_g(self) -> int:
        return len(self.representative.graph.cnot_edges)

    @property
    def n_qubits_touched(self) -> int:
        return len(self.representative.graph.qubits_touched)


def group_candidates(
    candidates, max_nodes: int = MAX_CERT_NODES
) -> list[GadgetClass]:
    """Group candidates by certificate.  The representative is the first
    occurrence in input order; classes are sorted by descending N_r with
    certificate bytes breaking ties, so the output is deterministic for a
    deterministic input order."""
    by_cert: dict[bytes, GadgetClass] = {}
    order: list[bytes] = []
    for cand in candidates:
        try:
            cert = certificate(cand.graph, max_nodes=max_nodes)
        except CertificateSizeError as exc:
            raise CertificateSizeError(
                f"{exc} (candidate from {cand.source_circuit!r} "
                f"layers {list(cand.layers)})") from exc
        cls = by_cert.get(cert)
        if cls is None:
            by_cert[cert] = GadgetClass(cert, cand, [cand])
            order.append(cert)
        else:
            cls.occurrences.append(cand)
    classes = [by_cert[c] for c in order]
    classes.sort(key=lambda cls: (-cls.n_r, cls.certificate))
    return classes


def identify_gadgets(classes, n_c: int = 1) -> list[GadgetClass]:
    """Keep classes repeated more often than the cutoff: N_r > n_c."""
    if n_c < 1:
        raise ValueError(f"repetition cutoff {n_c} must be >= 1")
    return [cls for cls in classes if cls.n_r > n_c]


def classes_to_json_obj(classes) -> list[dict]:
    return [
        {
            "certificate": cls.certificate.hex(),
            "n_r": cls.n_r,
            "c_g": cls.c_g,
            "representative_graph": graph_to_json_dict(
                cls.representative.graph),
            "occurrences": [
                {"circuit": occ.source_circuit, "layers": list(occ.layers)}
                for occ in cls.occurrences
            ],
        }
        for cls in classes
    ]


def classes_to_csv(classes) -> str:
    lines = [CSV_HEADER]
    for cls in classes:
        lines.append(
            f"{certificate_digest(cls.certificate)[:12]},{cls.c_g},{cls.n_r},"
            f"{cls.n_qubits_touched}")
    return "\n".join(lines) + "\n"
