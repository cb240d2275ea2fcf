"""Text formats: hypergraph JSON documents, CSV matrices and snapshots, state dumps.

All numeric output uses 17 significant digits with a '.' decimal separator,
so identical inputs produce byte-identical files.  Vertex labels are 1-based
in every external format.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph
from .hyperstate import QubitStateVector
from .wigner import Wavefunction, WignerField

__all__ = [
    "SCHEMA_VERSION",
    "fmt17",
    "parse_hypergraph",
    "serialize_hypergraph",
    "write_matrix_csv",
    "dump_state",
    "parse_state",
    "write_state",
    "write_snapshot",
    "read_wavefunction",
    "write_wavefunction",
]

SCHEMA_VERSION = 1


def fmt17(x: float) -> str:
    """Fixed 17-significant-digit decimal rendering (round-trips float64)."""
    return format(float(x), ".17g")


def _require_number(value, path: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{path}: expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise ValueError(f"{path}: expected a finite number, got {value!r}")
    if positive and not v > 0:
        raise ValueError(f"{path}: expected a positive number, got {value!r}")
    return v


def _require_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{path}: expected an integer, got {value!r}")
    return value


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the JSON hypergraph document into the domain type.

    Shape: {"vertices": n, "vertex_weights": [...]?, "edges":
    [{"members": [ints], "weight": number?}, ...]}.  Missing weights default
    to 1.  Errors carry the offending document path.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValueError(f"document root: expected an object, got {type(doc).__name__}")
    if "vertices" not in doc:
        raise ValueError("document: missing required key 'vertices'")
    n = _require_int(doc["vertices"], "vertices")
    if n < 1:
        raise ValueError(f"vertices: must be >= 1, got {n}")

    weights = None
    if doc.get("vertex_weights") is not None:
        raw = doc["vertex_weights"]
        if not isinstance(raw, list):
            raise ValueError("vertex_weights: expected a list")
        if len(raw) != n:
            raise ValueError(f"vertex_weights: expected {n} entries, got {len(raw)}")
        weights = [
            _require_number(w, f"vertex_weights[{i}]", positive=True)
            for i, w in enumerate(raw)
        ]

    edges = []
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise ValueError("edges: expected a list")
    for j, e in enumerate(raw_edges):
        if not isinstance(e, dict):
            raise ValueError(f"edges[{j}]: expected an object")
        if "members" not in e:
            raise ValueError(f"edges[{j}]: missing required key 'members'")
        raw_members = e["members"]
        if not isinstance(raw_members, list):
            raise ValueError(f"edges[{j}].members: expected a list")
        members = []
        for i, v in enumerate(raw_members):
            v = _require_int(v, f"edges[{j}].members[{i}]")
            if not 1 <= v <= n:
                raise ValueError(
                    f"edges[{j}].members[{i}]: vertex {v} out of range 1..{n}"
                )
            members.append(v)
        weight = _require_number(e.get("weight", 1), f"edges[{j}].weight", positive=True)
        edges.append((members, weight))

    return Hypergraph(n, edges, vertex_weights=weights)


def serialize_hypergraph(h: Hypergraph) -> str:
    """Render the domain object back to its JSON document form."""
    doc = {
        "schema": SCHEMA_VERSION,
        "vertices": h.n_vertices,
        "vertex_weights": list(h.vertex_weights),
        "edges": [
            {"members": sorted(members), "weight": weight}
            for members, weight in h.hyperedges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def write_matrix_csv(
    path: Path,
    matrix: np.ndarray,
    row_labels: Sequence[str],
    col_labels: Sequence[str],
) -> None:
    """Labeled CSV: header of column labels, one labeled row per matrix row."""
    mat = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    lines = [",".join([""] + list(col_labels))]
    for label, row in zip(row_labels, mat):
        lines.append(",".join([label] + [fmt17(x) for x in row]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def dump_state(s: QubitStateVector) -> str:
    """One line per basis state: bitstring (qubit 1 leftmost), real part, imaginary part."""
    lines = [
        f"{label} {fmt17(a.real)} {fmt17(a.imag)}"
        for label, a in zip(s.basis_labels(), s.amplitudes)
    ]
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> QubitStateVector:
    """Inverse of dump_state."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("state dump is empty")
    n = len(rows[0][0])
    amps = np.zeros(2**n, dtype=np.complex128)
    if len(rows) != 2**n:
        raise ValueError(f"state dump has {len(rows)} lines, expected {2**n}")
    for ln, row in enumerate(rows):
        if len(row) != 3:
            raise ValueError(f"state dump line {ln + 1}: expected 'bits re im'")
        bits, re, im = row
        if len(bits) != n or any(c not in "01" for c in bits):
            raise ValueError(f"state dump line {ln + 1}: bad bitstring {bits!r}")
        amps[int(bits, 2)] = float(re) + 1j * float(im)
    return QubitStateVector(n, amps)


def write_state(path: Path, s: QubitStateVector) -> None:
    path.write_text(dump_state(s), encoding="utf-8")


def write_snapshot(directory: Path, index: int, field: WignerField) -> tuple[Path, Path]:
    """Write one snapshot as CSV plus a JSON metadata sidecar.

    CSV rows run from p_max down to p_min, one column per position cell.
    """
    csv_path = directory / f"snapshot_{index:04d}.csv"
    meta_path = directory / f"snapshot_{index:04d}.meta.json"
    lines = [",".join(fmt17(x) for x in row) for row in field.values[::-1]]
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    g = field.grid
    meta = {
        "n_q": g.n_q,
        "n_p": g.n_p,
        "q_min": g.q_min,
        "q_max": g.q_max,
        "p_min": g.p_min,
        "p_max": g.p_max,
        "mass": g.mass,
        "hbar": g.hbar,
        "t": field.t,
        "field_mode": field.field_mode,
    }
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return csv_path, meta_path


def write_wavefunction(path: Path, psi: Wavefunction) -> None:
    """CSV of position-basis samples: q,re,im per cell center."""
    q = psi.q_min + (np.arange(psi.n_q) + 0.5) * psi.dq
    lines = ["q,re,im"]
    for qi, a in zip(q, psi.samples):
        lines.append(f"{fmt17(qi)},{fmt17(a.real)},{fmt17(a.imag)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_wavefunction(path: Path) -> Wavefunction:
    """Inverse of write_wavefunction; the q column must be uniformly spaced."""
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]
    if lines and lines[0].lower().replace(" ", "") == "q,re,im":
        lines = lines[1:]
    if len(lines) < 2:
        raise ValueError(f"{path}: wavefunction file needs at least 2 samples")
    qs, amps = [], []
    for ln, line in enumerate(lines):
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"{path}:{ln + 1}: expected 'q,re,im'")
        try:
            qs.append(float(parts[0]))
            amps.append(float(parts[1]) + 1j * float(parts[2]))
        except ValueError:
            raise ValueError(f"{path}:{ln + 1}: non-numeric value") from None
    q = np.array(qs)
    dq = q[1] - q[0]
    if dq <= 0 or not np.allclose(np.diff(q), dq, rtol=1e-9, atol=1e-12):
        raise ValueError(f"{path}: q column is not uniformly increasing")
    return Wavefunction(float(q[0] - dq / 2), float(q[-1] + dq / 2), np.array(amps))
