"""Signed graph representation, edge-list I/O, degeneracy and generators."""

from __future__ import annotations

import heapq
import io
import json
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO

POSITIVE = 1
NEGATIVE = -1

_SIGN_TOKENS = {
    "triple": {"+": POSITIVE, "-": NEGATIVE, "−": NEGATIVE},
    "snap_sign": {
        "+": POSITIVE,
        "-": NEGATIVE,
        "−": NEGATIVE,
        "1": POSITIVE,
        "+1": POSITIVE,
        "-1": NEGATIVE,
        "−1": NEGATIVE,
    },
}


class GraphError(ValueError):
    """Base class for graph construction and ingestion errors."""


class EdgeListParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SignConflictError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class SignedGraph:
    """Immutable undirected signed graph over vertices ``0..n-1``.

    ``pos_adj[v]`` and ``neg_adj[v]`` are sorted tuples of neighbour ids;
    ``pos[v]`` and ``neg[v]`` hold the same neighbourhoods as frozensets for
    fast intersection. ``labels`` maps ids back to the tokens of the input.
    """

    __slots__ = ("n", "pos_adj", "neg_adj", "pos", "neg", "m_pos", "m_neg", "labels")

    def __init__(
        self,
        n: int,
        pos_edges: Iterable[tuple[int, int]] = (),
        neg_edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[str] | None = None,
    ):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        pos: list[set[int]] = [set() for _ in range(n)]
        neg: list[set[int]] = [set() for _ in range(n)]
        for target, edges in ((pos, pos_edges), (neg, neg_edges)):
            for u, v in edges:
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
                if u == v:
                    raise SelfLoopError(f"self-loop on vertex {u}")
                target[u].add(v)
                target[v].add(u)
        for v in range(n):
            if pos[v] & neg[v]:
                u = min(pos[v] & neg[v])
                raise SignConflictError(f"pair ({v}, {u}) carries both signs")
        self.n = n
        self.pos = tuple(frozenset(s) for s in pos)
        self.neg = tuple(frozenset(s) for s in neg)
        self.pos_adj = tuple(tuple(sorted(s)) for s in pos)
        self.neg_adj = tuple(tuple(sorted(s)) for s in neg)
        self.m_pos = sum(len(s) for s in pos) // 2
        self.m_neg = sum(len(s) for s in neg) // 2
        if labels is None:
            self.labels = tuple(str(v) for v in range(n))
        else:
            if len(labels) != n:
                raise GraphError("label map length must equal n")
            self.labels = tuple(labels)

    def __setattr__(self, name, value):
        if hasattr(self, "labels"):
            raise AttributeError("SignedGraph is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, m_pos={self.m_pos}, m_neg={self.m_neg})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.pos_adj == other.pos_adj
            and self.neg_adj == other.neg_adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.pos_adj, self.neg_adj))

    @property
    def m(self) -> int:
        return self.m_pos + self.m_neg

    def sign(self, u: int, v: int) -> int:
        """Return +1, -1 or 0 (no edge) for the pair ``(u, v)``."""
        if v in self.pos[u]:
            return POSITIVE
        if v in self.neg[u]:
            return NEGATIVE
        return 0

    def degree(self, v: int) -> int:
        return len(self.pos_adj[v]) + len(self.neg_adj[v])

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield each edge once as ``(u, v, sign)`` with ``u < v``."""
        for u in range(self.n):
            for v in self.pos_adj[u]:
                if u < v:
                    yield u, v, POSITIVE
            for v in self.neg_adj[u]:
                if u < v:
                    yield u, v, NEGATIVE

    def positive_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, s in self.edges() if s == POSITIVE]

    def negative_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, s in self.edges() if s == NEGATIVE]

    def with_edges(
        self, pos_edges: Iterable[tuple[int, int]], neg_edges: Iterable[tuple[int, int]]
    ) -> "SignedGraph":
        """New graph on the same vertex ids and labels with the given edges."""
        return SignedGraph(self.n, pos_edges, neg_edges, labels=self.labels)

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "SignedGraph":
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        pos_e = [e for e in self.positive_edges() if e not in drop]
        neg_e = [e for e in self.negative_edges() if e not in drop]
        return self.with_edges(pos_e, neg_e)

    def induced(self, keep: Iterable[int]) -> "SignedGraph":
        """Drop every edge touching a vertex outside ``keep``; ids are unchanged."""
        ks = set(keep)
        pos_e = [(u, v) for u, v in self.positive_edges() if u in ks and v in ks]
        neg_e = [(u, v) for u, v in self.negative_edges() if u in ks and v in ks]
        return self.with_edges(pos_e, neg_e)


@dataclass(frozen=True)
class BalancedClique:
    """Two-sided vertex set, stored with the smallest vertex on the left."""

    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        left, right = frozenset(self.left), frozenset(self.right)
        if left & right:
            raise ValueError("clique sides must be disjoint")
        if not left or (right and min(right) < min(left)):
            left, right = right, left
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def of(cls, left: Iterable[int], right: Iterable[int]) -> "BalancedClique":
        return cls(frozenset(left), frozenset(right))

    def __len__(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def vertices(self) -> frozenset[int]:
        return self.left | self.right

    @property
    def min_side(self) -> int:
        return min(len(self.left), len(self.right))

    @property
    def max_side(self) -> int:
        return max(len(self.left), len(self.right))

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.left)), tuple(sorted(self.right)))

    def __repr__(self) -> str:
        return f"BalancedClique(L={sorted(self.left)}, R={sorted(self.right)})"


@dataclass(frozen=True)
class DegeneracyResult:
    order: tuple[int, ...]
    sigma: int
    sign_scope: str


@dataclass(frozen=True)
class GraphStats:
    n: int
    m_pos: int
    m_neg: int
    max_pos_degree: int
    max_neg_degree: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m_pos": self.m_pos,
            "m_neg": self.m_neg,
            "max_pos_degree": self.max_pos_degree,
            "max_neg_degree": self.max_neg_degree,
        }


def _normalize_format(fmt: str) -> str:
    fmt = fmt.replace("-", "_")
    if fmt not in _SIGN_TOKENS:
        raise ValueError(f"unknown edge-list format {fmt!r}")
    return fmt


def _label_order(labels: list[str]) -> list[str]:
    # all-integer labels are numbered by value so "0..n-1" inputs keep their ids
    try:
        return sorted(labels, key=int)
    except ValueError:
        return labels


def load_edge_list(source: TextIO | str, format: str = "triple") -> SignedGraph:
    """Parse a signed edge list.

    Each data line is ``u v s``. ``triple`` accepts ``+``/``-`` signs,
    ``snap_sign`` additionally accepts ``1``/``-1``. Blank lines and lines
    starting with ``#`` are skipped. Labels are renumbered densely.
    """
    fmt = _normalize_format(format)
    tokens = _SIGN_TOKENS[fmt]
    if isinstance(source, str):
        source = io.StringIO(source)

    first_seen: dict[str, None] = {}
    signs: dict[tuple[str, str], int] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise EdgeListParseError(lineno, f"expected 3 fields, got {len(parts)}")
        a, b, s = parts
        if s not in tokens:
            raise EdgeListParseError(lineno, f"unknown sign token {s!r}")
        if a == b:
            raise SelfLoopError(f"line {lineno}: self-loop on {a!r}")
        key = (a, b) if a < b else (b, a)
        sign = tokens[s]
        prev = signs.get(key)
        if prev is not None and prev != sign:
            raise SignConflictError(f"line {lineno}: pair {key} appears with both signs")
        signs[key] = sign
        first_seen.setdefault(a)
        first_seen.setdefault(b)

    labels = _label_order(list(first_seen))
    index = {lab: i for i, lab in enumerate(labels)}
    pos_e, neg_e = [], []
    for (a, b), sign in signs.items():
        (pos_e if sign == POSITIVE else neg_e).append((index[a], index[b]))
    return SignedGraph(len(labels), pos_e, neg_e, labels=labels)


def dump_edge_list(g: SignedGraph, out: TextIO, format: str = "triple") -> None:
    """Write ``g`` as an edge list readable by :func:`load_edge_list`."""
    fmt = _normalize_format(format)
    plus, minus = ("+", "-") if fmt == "triple" else ("1", "-1")
    for u, v, s in g.edges():
        out.write(f"{g.labels[u]} {g.labels[v]} {plus if s > 0 else minus}\n")


def edge_list_text(g: SignedGraph, format: str = "triple") -> str:
    buf = io.StringIO()
    dump_edge_list(g, buf, format)
    return buf.getvalue()


def degeneracy(g: SignedGraph, scope: str = "all_edges") -> DegeneracyResult:
    """Min-degree peeling; ties go to the smallest vertex id."""
    if scope == "all_edges":
        adj = [g.pos[v] | g.neg[v] for v in range(g.n)]
    elif scope == "positive_only":
        adj = list(g.pos)
    else:
        raise ValueError(f"unknown sign scope {scope!r}")
    deg = [len(a) for a in adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order = []
    sigma = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        sigma = max(sigma, d)
        for u in adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return DegeneracyResult(tuple(order), sigma, scope)


def check_balanced_clique(g: SignedGraph, c: BalancedClique) -> bool:
    for v in c.left | c.right:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} not in graph with n={g.n}")
    for side, other in ((c.left, c.right), (c.right, c.left)):
        for v in side:
            if not (side - {v}) <= g.pos[v]:
                return False
            if not other <= g.neg[v]:
                return False
    return True


def graph_stats(g: SignedGraph) -> GraphStats:
    return GraphStats(
        n=g.n,
        m_pos=g.m_pos,
        m_neg=g.m_neg,
        max_pos_degree=max((len(a) for a in g.pos_adj), default=0),
        max_neg_degree=max((len(a) for a in g.neg_adj), default=0),
    )


def split_groups(n: int, rng_seed: int, group_ratio: tuple[int, int] = (4, 1)) -> list[int]:
    """Randomly assign each of ``n`` vertices to group 0 or 1 at the given ratio."""
    big, small = group_ratio
    n_small = (n * small) // (big + small)
    ids = list(range(n))
    random.Random(rng_seed).shuffle(ids)
    group = [0] * n
    for v in ids[:n_small]:
        group[v] = 1
    return group


def synthesize_signed(
    base_edges: Iterable[tuple[int, int]],
    group_ratio: tuple[int, int] = (4, 1),
    rng_seed: int = 0,
    n: int | None = None,
) -> SignedGraph:
    """Sign an unsigned graph: same-group edges positive, cross-group negative."""
    edges = {(min(u, v), max(u, v)) for u, v in base_edges}
    if n is None:
        n = 1 + max((v for e in edges for v in e), default=-1)
    group = split_groups(n, rng_seed, group_ratio)
    pos_e = [(u, v) for u, v in edges if group[u] == group[v]]
    neg_e = [(u, v) for u, v in edges if group[u] != group[v]]
    return SignedGraph(n, pos_e, neg_e)


def random_signed_graph(n: int, edge_prob: float, sign_prob: float, rng: random.Random) -> SignedGraph:
    """Erdos-Renyi pairs, each present with ``edge_prob``, positive with ``sign_prob``."""
    pos_e, neg_e = [], []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                (pos_e if rng.random() < sign_prob else neg_e).append((u, v))
    return SignedGraph(n, pos_e, neg_e)


def random_base_edges(n: int, m: int, rng: random.Random) -> list[tuple[int, int]]:
    """``m`` distinct random pairs on ``n`` vertices (uniform G(n, m))."""
    if n < 2:
        return []
    m = min(m, n * (n - 1) // 2)
    seen: set[tuple[int, int]] = set()
    while len(seen) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            seen.add((u, v) if u < v else (v, u))
    return sorted(seen)


def format_clique(g: SignedGraph, c: BalancedClique, output: str = "text") -> str:
    left = [g.labels[v] for v in sorted(c.left)]
    right = [g.labels[v] for v in sorted(c.right)]
    if output == "jsonl":
        return json.dumps({"left": [_json_label(x) for x in left], "right": [_json_label(x) for x in right]})
    return "L:{" + ",".join(left) + "} R:{" + ",".join(right) + "}"


def _json_label(label: str):
    try:
        return int(label)
    except ValueError:
        return label
