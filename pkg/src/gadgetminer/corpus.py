"""Circuit corpora: ingestion, encoder generation, statistics, disk format.

A corpus is an ordered list of entries deduplicated by the tableau digest
of the encoding unitary (with basis-flip prefixes for |+> ancillas), which
identifies exactly the circuits implementing the same Clifford map.  The
grouped canonical form of the prepared state is stored alongside but is
too coarse a key for CNOT-only circuits, where every encoder stabilizes a
group with the same row-echelon form.

Corpus directory layout: one circuit text file per entry plus
manifest.json carrying digests, per-entry code data, the generator config
and seed, and the format version.

All generator randomness flows through random.Random (Mersenne Twister)
seeded with the config's 64-bit seed, so corpora are reproducible
byte-for-byte.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from . import kernels
from .circuit import Circuit, load_circuit, serialize_circuit
from .tableau import (
    CanonicalForm,
    code_distance,
    encoder_code,
    encoder_tableau,
    generator_weights,
)

MANIFEST_NAME = "manifest.json"
FORMAT_VERSION = 1
CIRCUIT_SUFFIXES = (".txt", ".json")


class CorpusError(ValueError):
    """Raised for malformed or empty corpora and bad generator configs."""


class GenerationError(RuntimeError):
    """Raised when encoder search exhausts its attempt budget."""


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def connectivity_pairs(kind: str, n: int,
                       path: str | Path | None = None) -> tuple[tuple[int, int], ...]:
    """Undirected qubit pairs for a named pattern: all-to-all, nearest
    neighbor on a line, next-to-nearest neighbor, or one "a b" pair per
    line from a file."""
    if kind == "all":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "nn":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif kind == "nnn":
        pairs = [(i, i + 1) for i in range(n - 1)]
        pairs += [(i, i + 2) for i in range(n - 2)]
    elif kind == "file":
        if path is None:
            raise CorpusError("connectivity kind 'file' needs a path")
        pairs = []
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise CorpusError(
                    f"bad connectivity line {lineno}: {raw!r}")
            a, b = int(parts[0]), int(parts[1])
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise CorpusError(
                    f"bad connectivity pair ({a}, {b}) at line {lineno}")
            pairs.append((min(a, b), max(a, b)))
    else:
        raise CorpusError(f"unknown connectivity kind {kind!r}")
    return tuple(sorted(set(pairs)))


def _pairs_connected(pairs, n: int) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return n <= 1 or len({find(i) for i in range(n)}) == 1


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    k: int
    target_d: int
    connectivity: tuple[tuple[int, int], ...]
    max_gates: int = 25
    attempts: int = 2000
    seed: int = 0
    method: str = "hillclimb"
    count: int = 20
    connectivity_name: str = ""

    def __post_init__(self):
        if not 0 <= self.k < self.n:
            raise CorpusError(f"need 0 <= k < n, got k={self.k} n={self.n}")
        if self.target_d < 1:
            raise CorpusError(f"target distance {self.target_d} must be >= 1")
        if self.method not in ("random", "hillclimb"):
            raise CorpusError(f"unknown method {self.method!r}")
        if self.max_gates < 1 or self.attempts < 1 or self.count < 1:
            raise CorpusError("max_gates, attempts and count must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise CorpusError("seed must fit in 64 bits")
        for a, b in self.connectivity:
            if a == b or not (0 <= a < self.n and 0 <= b < self.n):
                raise CorpusError(f"bad connectivity pair ({a}, {b})")
        if self.n > 1 and not _pairs_connected(self.connectivity, self.n):
            raise CorpusError("connectivity does not connect all qubits")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "target_d": self.target_d,
            "connectivity": [list(p) for p in self.connectivity],
            "connectivity_name": self.connectivity_name,
            "max_gates": self.max_gates,
            "attempts": self.attempts,
            "seed": self.seed,
            "method": self.method,
            "count": self.count,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> GeneratorConfig:
        return cls(
            n=obj["n"],
            k=obj["k"],
            target_d=obj["target_d"],
            connectivity=tuple((a, b) for a, b in obj["connectivity"]),
            connectivity_name=obj.get("connectivity_name", ""),
            max_gates=obj["max_gates"],
            attempts=obj["attempts"],
            seed=obj["seed"],
            method=obj["method"],
            count=obj["count"],
        )


@dataclass(frozen=True)
class CorpusEntry:
    """One deduplicated circuit with its dedup digest and code data.

    k counts the logical (non-ancilla) qubits, 0 when unknown; x_ancillas
    lists ancillas prepared in |+> instead of |0>; distance is the exact
    code distance when it has been computed."""

    name: str
    circuit: Circuit
    digest: str
    origin: str
    k: int = 0
    x_ancillas: tuple[int, ...] = ()
    distance: int | None = None

    def code(self):
        return encoder_code(self.circuit, self.k, self.x_ancillas)

    def canonical_form(self) -> CanonicalForm:
        return self.code().canonical()


@dataclass
class Corpus:
    entries: list[CorpusEntry] = field(default_factory=list)
    config: GeneratorConfig | None = None
    warnings: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def circuits(self) -> list[Circuit]:
        return [e.circuit for e in self.entries]

    def digests(self) -> set[str]:
        return {e.digest for e in self.entries}


def entry_digest(circuit: Circuit, x_ancillas=()) -> str:
    """Dedup key: digest of the full encoding tableau."""
    return encoder_tableau(circuit, x_ancillas).digest()


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------


def _circuit_files(paths) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(sorted(
                f for f in p.iterdir()
                if f.is_file() and f.suffix in CIRCUIT_SUFFIXES))
        else:
            files.append(p)
    return files


def ingest(paths) -> Corpus:
    """Parse circuit files (or directories of them), deduplicating by
    tableau digest.  Duplicates produce warnings, not errors."""
    corpus = Corpus()
    seen: dict[str, str] = {}
    names: set[str] = set()
    for path in _circuit_files(paths):
        try:
            circuit = load_circuit(path)
        except (OSError, ValueError) as exc:
            raise CorpusError(f"{path}: {exc}") from exc
        digest = entry_digest(circuit)
        if digest in seen:
            corpus.warnings.append(
                f"duplicate circuit {path} matches entry {seen[digest]!r}")
            continue
        name = circuit.name or path.stem
        base, i = name, 1
        while name in names:
            name = f"{base}_{i}"
            i += 1
        names.add(name)
        seen[digest] = name
        corpus.entries.append(CorpusEntry(
            name=name,
            circuit=Circuit(circuit.n_qubits, circuit.gates, name=name),
            digest=digest,
            origin="ingested",
        ))
    return corpus


# ---------------------------------------------------------------------------
# Encoder generation
# ---------------------------------------------------------------------------


def _generator_masks(tableau, n: int, k: int) -> tuple[list[int], list[int]]:
    """X/Z masks of the encoded state's stabilizer generators.

    The tableau must come from encoder_tableau, whose H prefix folds the
    |+> preparations in; the state stabilizer is then the image of Z_j for
    every ancilla wire, i.e. stabilizer row n+j regardless of basis."""
    gx, gz = [], []
    for j in range(k, n):
        p = tableau.row_pauli(n + j)
        gx.append(p.x)
        gz.append(p.z)
    return gx, gz


def _violations(tableau, n: int, k: int, target_d: int) -> tuple[int, ...]:
    """Counts of undetected nontrivial Paulis at each weight below the
    target distance; all-zero means the target is met."""
    gx, gz = _generator_masks(tableau, n, k)
    return tuple(kernels.pauli_weight_profile(gx, gz, n, target_d - 1))


def _propose_random(sub: random.Random, cfg: GeneratorConfig, directed, x_set):
    gates = [directed[sub.randrange(len(directed))]
             for _ in range(cfg.max_gates)]
    return gates


def _propose_hillclimb(sub: random.Random, cfg: GeneratorConfig, directed, x_set):
    """Greedy gate appension scored by the violation profile, with a random
    kick on plateaus.  Stops as soon as the profile is clean."""
    t = encoder_tableau(Circuit.from_pairs(cfg.n, ()), x_set)
    gates: list[tuple[int, int]] = []
    target = (0,) * (cfg.target_d - 1)
    cur = _violations(t, cfg.n, cfg.k, cfg.target_d)
    while cur != target and len(gates) < cfg.max_gates:
        best = None
        best_moves: list[tuple[int, int]] = []
        for mv in directed:
            trial = t.copy()
            trial.cnot(*mv)
            s = _violations(trial, cfg.n, cfg.k, cfg.target_d)
            if best is None or s < best:
                best, best_moves = s, [mv]
            elif s == best:
                best_moves.append(mv)
        if best is not None and best < cur:
            mv = best_moves[sub.randrange(len(best_moves))]
        else:
            mv = directed[sub.randrange(len(directed))]
        t.cnot(*mv)
        gates.append(mv)
        cur = _violations(t, cfg.n, cfg.k, cfg.target_d)
    return gates


def generate_encoders(cfg: GeneratorConfig) -> Corpus:
    """Propose connectivity-respecting CNOT encoders until cfg.count
    distinct ones meet the target distance or attempts run out.

    Each attempt draws its own |+>-ancilla subset and gate randomness from
    a per-attempt stream split off the seed, then keeps the circuit iff no
    logical operator of weight < target_d exists.  Kept entries carry the
    exact distance and are deduplicated by tableau digest."""
    if cfg.n > 15:
        raise CorpusError(
            f"generation needs brute-force distance checks, n={cfg.n} > 15")
    if not cfg.connectivity and cfg.n > 1:
        raise CorpusError("empty connectivity")
    directed = []
    for a, b in cfg.connectivity:
        directed.append((a, b))
        directed.append((b, a))
    directed.sort()
    propose = (_propose_random if cfg.method == "random"
               else _propose_hillclimb)
    rng = random.Random(cfg.seed)
    corpus = Corpus(config=cfg)
    seen: set[str] = set()
    ancillas = list(range(cfg.k, cfg.n))
    best_distance = 0
    for attempt in range(cfg.attempts):
        sub = random.Random(rng.getrandbits(63))
        x_set = frozenset(q for q in ancillas if sub.random() < 0.5)
        gates = propose(sub, cfg, directed, x_set)
        circuit = Circuit.from_pairs(cfg.n, gates)
        code = encoder_code(circuit, cfg.k, x_set)
        gx = [g.x for g in code.generators]
        gz = [g.z for g in code.generators]
        low = kernels.min_logical_weight(gx, gz, cfg.n, cfg.target_d - 1)
        if low:
            # rejected: low is this proposal's exact distance
            best_distance = max(best_distance, low)
            continue
        distance = code_distance(code) if cfg.k > 0 else None
        if distance is not None:
            best_distance = max(best_distance, distance)
        digest = entry_digest(circuit, x_set)
        if digest in seen:
            continue
        seen.add(digest)
        name = f"enc_{len(corpus.entries):04d}"
        corpus.entries.append(CorpusEntry(
            name=name,
            circuit=Circuit(cfg.n, circuit.gates, name=name),
            digest=digest,
            origin="generated",
            k=cfg.k,
            x_ancillas=tuple(sorted(x_set)),
            distance=distance,
        ))
        if len(corpus.entries) >= cfg.count:
            break
    if not corpus.entries:
        raise GenerationError(
            f"no encoder found within {cfg.attempts} attempts: "
            f"best distance {best_distance} < target {cfg.target_d}")
    if len(corpus.entries) < cfg.count:
        corpus.warnings.append(
            f"found {len(corpus.entries)} of {cfg.count} encoders "
            f"within {cfg.attempts} attempts")
    return corpus


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def corpus_stats(corpus: Corpus) -> dict:
    """Per-corpus CX-count aggregates, mean canonical generator weight
    (pooled over all entries' generators), and a code-parameter histogram."""
    if not corpus.entries:
        raise CorpusError("empty corpus")
    counts = [e.circuit.cx_count for e in corpus.entries]
    pooled: list[int] = []
    hist: dict[str, int] = {}
    for e in corpus.entries:
        weights, _ = generator_weights(e.code())
        pooled.extend(weights)
        d = "?" if e.distance is None else str(e.distance)
        label = f"[[{e.circuit.n_qubits},{e.k},{d}]]"
        hist[label] = hist.get(label, 0) + 1
    return {
        "size": len(corpus.entries),
        "cx_count": {
            "mean": sum(counts) / len(counts),
            "min": min(counts),
            "max": max(counts),
        },
        "mean_generator_weight": sum(pooled) / len(pooled),
        "code_parameters": dict(sorted(hist.items())),
    }


# ---------------------------------------------------------------------------
# Disk format
# ---------------------------------------------------------------------------


def save_corpus(corpus: Corpus, directory: str | Path) -> Path:
    """Write one circuit text file per entry plus manifest.json.  Output is
    byte-identical for identical corpora."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for e in corpus.entries:
        filename = f"{e.name}.txt"
        (directory / filename).write_text(serialize_circuit(e.circuit))
        entries.append({
            "name": e.name,
            "file": filename,
            "digest": e.digest,
            "canonical_digest": e.canonical_form().digest(),
            "origin": e.origin,
            "n": e.circuit.n_qubits,
            "k": e.k,
            "x_ancillas": list(e.x_ancillas),
            "distance": e.distance,
        })
    manifest = {
        "format_version": FORMAT_VERSION,
        "config": corpus.config.to_json_dict() if corpus.config else None,
        "seed": corpus.config.seed if corpus.config else None,
        "entries": entries,
    }
    (directory / MANIFEST_NAME).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return directory


def load_corpus(directory: str | Path) -> Corpus:
    """Read a corpus directory, re-verifying every entry's digest."""
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    if not manifest_path.is_file():
        raise CorpusError(f"{directory} has no {MANIFEST_NAME}")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{manifest_path}: {exc}") from exc
    if manifest.get("format_version") != FORMAT_VERSION:
        raise CorpusError(
            f"unsupported corpus format {manifest.get('format_version')!r}")
    config = None
    if manifest.get("config"):
        config = GeneratorConfig.from_json_dict(manifest["config"])
    corpus = Corpus(config=config)
    for obj in manifest.get("entries", ()):
        try:
            name = obj["name"]
            circuit = load_circuit(directory / obj["file"])
            circuit = Circuit(circuit.n_qubits, circuit.gates, name=name)
            x_anc = tuple(obj.get("x_ancillas", ()))
            entry = CorpusEntry(
                name=name,
                circuit=circuit,
                digest=obj["digest"],
                origin=obj.get("origin", "ingested"),
                k=obj.get("k", 0),
                x_ancillas=x_anc,
                distance=obj.get("distance"),
            )
        except (KeyError, OSError, ValueError) as exc:
            raise CorpusError(f"{directory}: bad entry: {exc}") from exc
        actual = entry_digest(entry.circuit, entry.x_ancillas)
        if actual != entry.digest:
            raise CorpusError(
                f"{directory}: digest mismatch for entry {name!r}")
        corpus.entries.append(entry)
    return corpus

