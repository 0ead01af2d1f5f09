"""Term embeddings and query-document term similarity.

Embeddings are read from the plain-text vector format: a header line
``"<count> <dimension>"`` followed by one ``"term v1 ... vD"`` line per
term. Similarity between two terms is the cosine of their vectors, with
one override: terms that share a stem always score exactly 1.0, even if
one or both are missing from the table.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import LoadError
from .stemming import stem


@dataclass(frozen=True)
class EmbeddingTable:
    """Immutable term -> vector map; every vector has length ``dimension``."""

    dimension: int
    entries: dict[str, np.ndarray] = field(default_factory=dict)

    def __contains__(self, term: str) -> bool:
        return term in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def vector(self, term: str) -> np.ndarray | None:
        return self.entries.get(term)


def load_embeddings(source) -> EmbeddingTable:
    """Parse an embedding table from a text stream, bytes, or string.

    Terms are case-folded to lowercase. Raises :class:`LoadError` naming
    the offending line on a malformed header or entry, an inconsistent
    dimension, an all-zero vector, or a duplicate term.
    """
    if isinstance(source, bytes):
        source = io.StringIO(source.decode("utf-8"))
    elif isinstance(source, str):
        source = io.StringIO(source)

    header = source.readline()
    if not header:
        raise LoadError("empty embedding stream")
    parts = header.split()
    if len(parts) != 2:
        raise LoadError("malformed header at line 1: expected '<count> <dimension>'")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise LoadError("malformed header at line 1: expected two integers") from None
    if count < 0 or dim <= 0:
        raise LoadError("malformed header at line 1: non-positive count or dimension")

    entries: dict[str, np.ndarray] = {}
    lineno = 1
    for line in source:
        lineno += 1
        if not line.strip():
            continue
        fields = line.split()
        term = fields[0].lower()
        if len(fields) - 1 != dim:
            raise LoadError(f"inconsistent dimension at line {lineno}")
        try:
            vec = np.array([float(v) for v in fields[1:]], dtype=np.float64)
        except ValueError:
            raise LoadError(f"malformed vector component at line {lineno}") from None
        if not np.all(np.isfinite(vec)):
            raise LoadError(f"non-finite vector component at line {lineno}")
        if not np.any(vec):
            raise LoadError(f"zero vector at line {lineno}")
        if term in entries:
            raise LoadError(f"duplicate term {term!r} at line {lineno}")
        entries[term] = vec
    if len(entries) != count:
        raise LoadError(
            f"header declares {count} entries but stream holds {len(entries)}"
        )
    return EmbeddingTable(dimension=dim, entries=entries)


def save_embeddings(table: EmbeddingTable) -> str:
    """Serialize a table back to the text format (insertion order kept).

    Components are written with shortest round-trip formatting, so
    load(save(table)) reproduces every vector bit for bit.
    """
    lines = [f"{len(table.entries)} {table.dimension}"]
    for term, vec in table.entries.items():
        lines.append(term + " " + " ".join(repr(float(v)) for v in vec))
    return "\n".join(lines) + "\n"


def term_similarity(a: str, b: str, table: EmbeddingTable) -> float:
    """Similarity in [-1, 1]: 1.0 for stem-equal terms, else vector cosine.

    Terms absent from the table (with differing stems) score 0.0, a
    neutral no-match. The stem check runs before any lookup, so
    stem-equal out-of-vocabulary pairs still score 1.0.
    """
    if stem(a) == stem(b):
        return 1.0
    va = table.vector(a)
    vb = table.vector(b)
    if va is None or vb is None:
        return 0.0
    cos = float(np.dot(va, vb) / (np.linalg.norm(va) * np.linalg.norm(vb)))
    # Guard against rounding drift past the mathematical bound.
    return min(1.0, max(-1.0, cos))
