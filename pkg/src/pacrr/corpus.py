"""Corpus handling: tokenization, IDF statistics, query-term selection,
file parsing, and a synthetic corpus generator for desk-scale training.

File formats:
  documents  JSON lines, one object per line with "id" and "text" fields
  topics     one query per line: "id<TAB>title<TAB>description"
  qrels      whitespace-separated "qid 0 docid label" lines
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, replace

import numpy as np

from .embeddings import EmbeddingTable
from .errors import LoadError

_TOKEN_RE = re.compile(r"[a-z0-9]+")


@dataclass(frozen=True)
class Document:
    id: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Query:
    id: str
    title_tokens: tuple[str, ...]
    description_tokens: tuple[str, ...]
    selected_terms: tuple[str, ...] = ()


@dataclass(frozen=True)
class CorpusStats:
    doc_count: int
    doc_freq: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class TrainingTriple:
    """One pairwise preference: positive_doc outranks negative_doc."""

    query: Query
    positive_doc: Document
    negative_doc: Document

    def __post_init__(self):
        if self.positive_doc.id == self.negative_doc.id:
            raise ValueError("positive and negative documents must differ")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on runs of non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


def build_corpus_stats(documents) -> CorpusStats:
    doc_freq: dict[str, int] = {}
    n = 0
    for doc in documents:
        n += 1
        for term in set(doc.tokens):
            doc_freq[term] = doc_freq.get(term, 0) + 1
    return CorpusStats(doc_count=n, doc_freq=doc_freq)


def idf(term: str, stats: CorpusStats) -> float:
    """Smoothed inverse document frequency: ln((N + 1) / (df + 1))."""
    if stats.doc_count < 1:
        raise ValueError("corpus statistics must cover at least one document")
    df = stats.doc_freq.get(term, 0)
    return math.log((stats.doc_count + 1) / (df + 1))


def select_query_terms(query: Query, stats: CorpusStats, max_terms: int) -> list[str]:
    """Pick up to ``max_terms`` query terms, favouring rare ones.

    Title and description tokens are concatenated, deduplicated keeping
    first occurrences, and then the lowest-IDF terms are dropped until
    ``max_terms`` remain. Original order is preserved among survivors;
    IDF ties drop the later-occurring term first.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    seen = set()
    terms = []
    for t in list(query.title_tokens) + list(query.description_tokens):
        if t not in seen:
            seen.add(t)
            terms.append(t)
    if not terms:
        raise ValueError("query has no terms")
    if len(terms) <= max_terms:
        return terms
    # Dropping lowest-IDF repeatedly equals keeping the max_terms best by
    # (idf, earlier position); position breaks exact IDF ties.
    ranked = sorted(
        range(len(terms)), key=lambda i: (idf(terms[i], stats), -i), reverse=True
    )
    keep = set(ranked[:max_terms])
    return [t for i, t in enumerate(terms) if i in keep]


def with_selected_terms(query: Query, stats: CorpusStats, max_terms: int) -> Query:
    return replace(
        query, selected_terms=tuple(select_query_terms(query, stats, max_terms))
    )


# ---------------------------------------------------------------------------
# Parsers and writers


def parse_docs_jsonl(stream) -> list[Document]:
    docs = []
    seen = set()
    for lineno, line in enumerate(_iter_lines(stream), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            raise LoadError(f"invalid JSON at line {lineno}") from None
        if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
            raise LoadError(f"missing 'id' or 'text' field at line {lineno}")
        doc_id = str(obj["id"])
        if doc_id in seen:
            raise LoadError(f"duplicate document id {doc_id!r} at line {lineno}")
        seen.add(doc_id)
        docs.append(Document(id=doc_id, tokens=tuple(tokenize(obj["text"]))))
    return docs


def parse_trec_topics(stream) -> list[Query]:
    queries = []
    seen = set()
    for lineno, line in enumerate(_iter_lines(stream), start=1):
        if not line.strip():
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise LoadError(
                f"expected 'id<TAB>title<TAB>description' at line {lineno}"
            )
        qid, title, description = parts
        if qid in seen:
            raise LoadError(f"duplicate query id {qid!r} at line {lineno}")
        seen.add(qid)
        queries.append(
            Query(
                id=qid,
                title_tokens=tuple(tokenize(title)),
                description_tokens=tuple(tokenize(description)),
            )
        )
    return queries


def parse_qrels(stream) -> dict[tuple[str, str], int]:
    labels: dict[tuple[str, str], int] = {}
    for lineno, line in enumerate(_iter_lines(stream), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4:
            raise LoadError(f"expected 'qid 0 docid label' at line {lineno}")
        qid, _, docid, label = parts
        try:
            value = int(label)
        except ValueError:
            raise LoadError(f"non-integer label at line {lineno}") from None
        key = (qid, docid)
        if key in labels:
            raise LoadError(f"duplicate judgment for {qid}/{docid} at line {lineno}")
        labels[key] = value
    return labels


def write_docs_jsonl(documents) -> str:
    lines = [
        json.dumps({"id": d.id, "text": " ".join(d.tokens)}) for d in documents
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def write_topics(queries) -> str:
    lines = [
        "\t".join((q.id, " ".join(q.title_tokens), " ".join(q.description_tokens)))
        for q in queries
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def write_qrels(labels: dict[tuple[str, str], int]) -> str:
    lines = [f"{qid} 0 {docid} {label}" for (qid, docid), label in labels.items()]
    return "\n".join(lines) + ("\n" if lines else "")


def _iter_lines(stream):
    if isinstance(stream, bytes):
        stream = stream.decode("utf-8")
    if isinstance(stream, str):
        return iter(stream.splitlines())
    return iter(stream)


# ---------------------------------------------------------------------------
# Training triples


def make_training_triples(
    queries, documents, qrels: dict[tuple[str, str], int]
) -> list[TrainingTriple]:
    """All (query, higher-label doc, lower-label doc) pairs under the qrels."""
    by_id = {d.id: d for d in documents}
    triples = []
    for query in queries:
        judged = [
            (doc_id, label)
            for (qid, doc_id), label in qrels.items()
            if qid == query.id and doc_id in by_id
        ]
        for pos_id, pos_label in judged:
            for neg_id, neg_label in judged:
                if pos_label > neg_label:
                    triples.append(
                        TrainingTriple(query, by_id[pos_id], by_id[neg_id])
                    )
    return triples


# ---------------------------------------------------------------------------
# Synthetic corpus

_EMBEDDING_DIM = 64
_QUERY_TERMS = 4
_RELEVANT_SHARE = 0.3


@dataclass(frozen=True)
class SyntheticCorpus:
    queries: list[Query]
    documents: list[Document]
    qrels: dict[tuple[str, str], int]
    embeddings: EmbeddingTable


def generate_synthetic_corpus(
    seed: int,
    vocab_size: int,
    n_queries: int,
    docs_per_query: int,
    doc_len: int,
) -> SyntheticCorpus:
    """Build a deterministic corpus with a known relevance structure.

    Each query gets its own disjoint set of terms. Relevant documents embed
    two contiguous query bigrams plus extra lone query terms; non-relevant
    documents carry at most one scattered query term and never two adjacent
    ones, so adjacency (not term overlap alone) separates the classes.
    Embeddings are random unit vectors.
    """
    if min(vocab_size, n_queries, docs_per_query, doc_len) < 1:
        raise ValueError("all corpus parameters must be >= 1")
    if doc_len < 2 * _QUERY_TERMS:
        raise ValueError(f"doc_len must be at least {2 * _QUERY_TERMS}")
    if vocab_size < n_queries * _QUERY_TERMS + 2 * _QUERY_TERMS:
        raise ValueError(
            "vocab_size too small for "
            f"{n_queries} queries of {_QUERY_TERMS} disjoint terms each"
        )

    rng = np.random.default_rng([seed % 2**32, 0x5EED])
    vocab = [f"w{i:04d}" for i in range(vocab_size)]

    order = rng.permutation(vocab_size)
    query_term_ids = order[: n_queries * _QUERY_TERMS].reshape(
        n_queries, _QUERY_TERMS
    )

    n_relevant = max(1, int(round(_RELEVANT_SHARE * docs_per_query)))
    if docs_per_query > 1:
        n_relevant = min(n_relevant, docs_per_query - 1)

    queries: list[Query] = []
    documents: list[Document] = []
    qrels: dict[tuple[str, str], int] = {}

    for qi in range(n_queries):
        qid = f"q{qi + 1:03d}"
        terms = [vocab[t] for t in query_term_ids[qi]]
        query = Query(
            id=qid,
            title_tokens=tuple(terms[:2]),
            description_tokens=tuple(terms[2:]),
            selected_terms=tuple(terms),
        )
        queries.append(query)

        background_ids = np.array(
            [i for i in range(vocab_size) if i not in set(query_term_ids[qi])]
        )
        for di in range(docs_per_query):
            doc_id = f"{qid}-d{di + 1:03d}"
            relevant = di < n_relevant
            tokens = [
                vocab[t] for t in rng.choice(background_ids, size=doc_len)
            ]
            if relevant:
                _insert_relevant_structure(tokens, terms, rng)
            else:
                _insert_nonrelevant_structure(tokens, terms, rng)
            documents.append(Document(id=doc_id, tokens=tuple(tokens)))
            qrels[(qid, doc_id)] = 1 if relevant else 0

    vectors = rng.standard_normal((vocab_size, _EMBEDDING_DIM))
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    vectors = vectors / np.maximum(norms, 1e-12)
    table = EmbeddingTable(
        dimension=_EMBEDDING_DIM,
        entries={term: vectors[i].copy() for i, term in enumerate(vocab)},
    )
    return SyntheticCorpus(queries, documents, qrels, table)


def _insert_relevant_structure(tokens: list[str], terms: list[str], rng) -> None:
    # Two adjacent-term bigrams plus lone occurrences of every query term.
    segments = [terms[0:2], terms[2:4], [terms[0]], [terms[1]], [terms[2]]]
    slots = _disjoint_slots(len(tokens), [len(s) for s in segments], rng)
    for start, segment in zip(slots, segments):
        tokens[start : start + len(segment)] = segment


def _insert_nonrelevant_structure(tokens: list[str], terms: list[str], rng) -> None:
    # At most one scattered query term; background never contains query
    # terms, so a single insertion cannot form a query bigram.
    if rng.random() < 0.5:
        pos = int(rng.integers(0, len(tokens)))
        tokens[pos] = terms[int(rng.integers(0, len(terms)))]


def _disjoint_slots(length: int, sizes: list[int], rng) -> list[int]:
    """Start offsets for segments that never touch, with a one-token gap."""
    for _ in range(1000):
        starts = sorted(
            int(rng.integers(0, length - size + 1)) for size in sorted(sizes)
        )
        candidate = sorted(
            zip(starts, sorted(sizes, reverse=False)), key=lambda p: p[0]
        )
        ok = True
        for (s1, n1), (s2, _) in zip(candidate, candidate[1:]):
            if s1 + n1 + 1 > s2:
                ok = False
                break
        if ok:
            return [s for s, _ in candidate]
    raise ValueError("doc_len too small to place the required query structure")
