"""Clustering of pairwise match decisions into author identities.

Matching is not transitive on its own (a~b and b~c do not force a~c), so
aliases are grouped by the transitive closure of the matched pairs: every
connected component becomes one author.
"""

from __future__ import annotations

import multiprocessing
from collections import defaultdict
from typing import Iterable, Mapping

from . import fastscan
from .baselines import bird_match, simple_match
from .errors import DuplicateAliasIdError, UniverseMismatchError
from .normalize import Alias
from .rules import DEFAULT_CONFIG, MatcherConfig, is_match, score_pair

METHODS = ("gambit", "simple", "bird")
ENGINES = ("auto", "python", "numba")

# below this pair count the compiled scan is not worth dispatching to
_NUMBA_MIN_PAIRS = 20_000
# below this row count extra worker processes cost more than they save
_WORKERS_MIN_ALIASES = 512


class Partition:
    """An assignment of every alias id to an author id.

    Labels are canonical: each author is named after the lexicographically
    smallest alias id it contains. Two partitions that group the same ids
    the same way therefore compare equal no matter how they were labelled
    originally.
    """

    def __init__(self, assignment: Mapping[str, str]):
        groups: dict[str, list[str]] = defaultdict(list)
        for alias_id, author_id in assignment.items():
            groups[author_id].append(alias_id)
        self._assignment: dict[str, str] = {}
        for members in groups.values():
            label = min(members)
            for alias_id in members:
                self._assignment[alias_id] = label

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[str]]) -> "Partition":
        assignment = {}
        for members in clusters:
            members = list(members)
            label = min(members)
            for alias_id in members:
                if alias_id in assignment:
                    raise DuplicateAliasIdError(
                        f"alias id {alias_id!r} appears in more than one cluster")
                assignment[alias_id] = label
        return cls(assignment)

    @property
    def assignment(self) -> dict[str, str]:
        return dict(self._assignment)

    def author_of(self, alias_id: str) -> str:
        return self._assignment[alias_id]

    def same_author(self, id_a: str, id_b: str) -> bool:
        return self._assignment[id_a] == self._assignment[id_b]

    def clusters(self) -> dict[str, list[str]]:
        """Author id -> sorted member alias ids."""
        out: dict[str, list[str]] = defaultdict(list)
        for alias_id, author_id in self._assignment.items():
            out[author_id].append(alias_id)
        return {author: sorted(members) for author, members in out.items()}

    def universe(self) -> frozenset[str]:
        return frozenset(self._assignment)

    def author_count(self) -> int:
        return len(set(self._assignment.values()))

    def __len__(self) -> int:
        return len(self._assignment)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._assignment == other._assignment

    def __repr__(self) -> str:
        return (f"Partition({len(self._assignment)} aliases, "
                f"{self.author_count()} authors)")


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]  # path halving
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def _decide(method: str, cfg: MatcherConfig):
    if method == "gambit":
        return lambda a, b: is_match(score_pair(a, b, cfg), cfg)
    if method == "simple":
        return lambda a, b: simple_match(a, b, cfg)
    if method == "bird":
        return lambda a, b: bird_match(a, b, cfg)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _scan_rows_python(aliases: list[Alias], rows, method: str,
                      cfg: MatcherConfig) -> list[tuple[int, int]]:
    decide = _decide(method, cfg)
    n = len(aliases)
    pairs = []
    for i in rows:
        a = aliases[i]
        for j in range(i + 1, n):
            if decide(a, aliases[j]):
                pairs.append((i, j))
    return pairs


def _resolve_encoding(aliases: list[Alias], engine: str, method: str,
                      cfg: MatcherConfig):
    """Pick the scan engine; returns an EncodedCorpus or None for pure Python."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    _decide(method, cfg)  # validate method up front
    if engine == "python":
        return None
    n = len(aliases)
    if engine == "auto" and n * (n - 1) // 2 < _NUMBA_MIN_PAIRS:
        return None
    enc = fastscan.encode_corpus(aliases) if fastscan.available() else None
    if enc is None and engine == "numba":
        raise ValueError("numba engine unavailable (numba not importable or "
                         "alias fields not latin-1 encodable)")
    return enc


_WORKER_STATE = None


def _init_worker(aliases, method, cfg, engine):
    global _WORKER_STATE
    enc = _resolve_encoding(aliases, engine, method, cfg)
    _WORKER_STATE = (aliases, method, cfg, enc)


def _scan_stripe(rows):
    aliases, method, cfg, enc = _WORKER_STATE
    if enc is None:
        return _scan_rows_python(aliases, rows, method, cfg)
    return fastscan.scan_matches(enc, rows, method, cfg)


def matched_pairs(aliases: list[Alias], method: str = "gambit",
                  cfg: MatcherConfig = DEFAULT_CONFIG, workers: int = 1,
                  engine: str = "auto") -> list[tuple[int, int]]:
    """All matching index pairs (i, j) with i < j.

    ``workers`` > 1 splits rows across processes; row i of the triangular
    scan compares alias i against all later ones, so rows are dealt
    round-robin to balance the shrinking row lengths. The result is the
    same pair set regardless of worker count or engine.
    """
    n = len(aliases)
    rows = range(n - 1)
    if workers > 1 and n >= _WORKERS_MIN_ALIASES:
        stripes = [list(rows[w::workers]) for w in range(workers)]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers, initializer=_init_worker,
                      initargs=(aliases, method, cfg, engine)) as pool:
            chunks = pool.map(_scan_stripe, stripes)
        pairs = [p for chunk in chunks for p in chunk]
        pairs.sort()
        return pairs
    enc = _resolve_encoding(aliases, engine, method, cfg)
    if enc is None:
        return _scan_rows_python(aliases, rows, method, cfg)
    return fastscan.scan_matches(enc, rows, method, cfg)


def disambiguate(aliases: list[Alias], method: str = "gambit",
                 cfg: MatcherConfig = DEFAULT_CONFIG, workers: int = 1,
                 engine: str = "auto") -> Partition:
    """Group aliases into authors: match all pairs, then take the
    transitive closure of the matches."""
    ids = [a.id for a in aliases]
    seen = set()
    for alias_id in ids:
        if alias_id in seen:
            raise DuplicateAliasIdError(f"duplicate alias id {alias_id!r}")
        seen.add(alias_id)

    dsu = _DisjointSet(len(aliases))
    for i, j in matched_pairs(aliases, method, cfg, workers, engine):
        dsu.union(i, j)
    return Partition({ids[k]: ids[dsu.find(k)] for k in range(len(ids))})


def merge_partitions(p1: Partition, p2: Partition) -> Partition:
    """Finest common coarsening: two aliases share an author in the result
    iff they are connected through same-author links of either input."""
    if p1.universe() != p2.universe():
        raise UniverseMismatchError(
            f"partitions cover different alias ids "
            f"({len(p1)} vs {len(p2)} aliases)")
    ids = sorted(p1.universe())
    index = {alias_id: k for k, alias_id in enumerate(ids)}
    dsu = _DisjointSet(len(ids))
    for part in (p1, p2):
        for members in part.clusters().values():
            first = index[members[0]]
            for other in members[1:]:
                dsu.union(first, index[other])
    return Partition({alias_id: ids[dsu.find(k)] for alias_id, k in index.items()})
