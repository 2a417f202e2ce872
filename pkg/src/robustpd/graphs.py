"""Immutable graphs, family generators, and the edge-list text format.

Vertices are always ``0..n-1`` and adjacency is kept as one Python int
bitmask per vertex, so set operations on neighborhoods are single integer
ops regardless of graph size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import EdgeListError, ParameterError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A finite simple undirected graph with a fixed vertex ordering.

    The ordering is part of the graph's identity: solvers break ties
    lexicographically on vertex indices, so equal graphs produce equal
    witnesses. Instances are immutable and safe to share between workers.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        if n < 1:
            raise ParameterError("n: vertex count must be >= 1")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}): vertex out of range for n={n}")
            if u == v:
                raise ParameterError(f"edge ({u}, {v}): self-loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ParameterError("labels: must have one entry per vertex")
        self.n = n
        self.adj = tuple(adj)
        self.labels = labels
        self.full_mask = (1 << n) - 1

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in iter_bits(self.adj[u]):
                if v > u:
                    out.append((u, v))
        return out

    def label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def vertex_by_label(self, text: str) -> int:
        if self.labels is not None:
            try:
                return self.labels.index(text)
            except ValueError:
                pass
        try:
            v = int(text)
        except ValueError:
            raise ParameterError(f"set: unknown vertex label {text!r}") from None
        if not 0 <= v < self.n:
            raise ParameterError(f"set: vertex {v} out of range for n={self.n}")
        return v

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            grown = seen
            for v in iter_bits(frontier):
                grown |= self.adj[v]
            frontier = grown & ~seen
            seen = grown
        return seen == self.full_mask

    def __eq__(self, other: object) -> bool:
        # Labels are display metadata, not identity: parse(render(g)) == g.
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family plus its parameters.

    Kinds: ``path``, ``cycle``, ``star``, ``complete``, ``kab``, ``kparts``,
    ``grid``, ``custom`` (edge-list text in ``edge_text``).
    """

    kind: str
    args: tuple[int, ...] = ()
    edge_text: str | None = field(default=None, compare=False)

    def describe(self) -> str:
        if self.kind == "grid":
            return f"grid:{self.args[0]}x{self.args[1]}"
        if self.kind == "custom":
            return "custom"
        return f"{self.kind}:{','.join(str(a) for a in self.args)}"


_FAMILY_ARITY = {"path": 1, "cycle": 1, "star": 1, "complete": 1, "kab": 2, "grid": 2}


def parse_family(text: str) -> FamilySpec:
    """Parse a family string such as ``grid:4x4``, ``kab:3,4`` or ``kparts:3,3,3``."""
    kind, sep, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "kn":
        kind = "complete"
    if not sep or not rest.strip():
        raise ParameterError(f"family: missing parameters in {text!r}")
    rest = rest.strip()
    try:
        if kind == "grid":
            parts = tuple(int(p) for p in rest.lower().split("x"))
        else:
            parts = tuple(int(p) for p in rest.split(","))
    except ValueError:
        raise ParameterError(f"family: non-integer parameter in {text!r}") from None
    if kind == "kparts":
        if len(parts) < 2:
            raise ParameterError("kparts: needs at least two part sizes")
        return FamilySpec("kparts", parts)
    if kind not in _FAMILY_ARITY:
        raise ParameterError(f"family: unknown kind {kind!r}")
    if len(parts) != _FAMILY_ARITY[kind]:
        raise ParameterError(f"{kind}: expected {_FAMILY_ARITY[kind]} parameter(s), got {len(parts)}")
    return FamilySpec(kind, parts)


def build(spec: FamilySpec) -> Graph:
    """Build the canonical graph of a family with deterministic numbering.

    Numbering conventions: paths/cycles along the walk; stars put the center
    at vertex 0; ``kab`` numbers side A first; ``kparts`` numbers the parts
    consecutively; grids are row-major with 1-indexed ``(row,col)`` labels.
    """
    kind, args = spec.kind, spec.args
    if kind == "custom":
        if spec.edge_text is None:
            raise ParameterError("custom: edge_text is required")
        return parse_edge_list(spec.edge_text)
    if any(a < 1 for a in args):
        raise ParameterError(f"{kind}: parameters must be positive, got {args}")
    if kind == "path":
        (n,) = args
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        (n,) = args
        if n < 3:
            raise ParameterError("cycle: needs n >= 3")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "star":
        (leaves,) = args
        labels = ["center"] + [f"leaf{i}" for i in range(1, leaves + 1)]
        return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], labels)
    if kind == "complete":
        (n,) = args
        return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "kab":
        a, b = args
        labels = [f"x{i}" for i in range(1, a + 1)] + [f"y{j}" for j in range(1, b + 1)]
        return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], labels)
    if kind == "kparts":
        sizes = args
        n = sum(sizes)
        offsets = []
        acc = 0
        for s in sizes:
            offsets.append(acc)
            acc += s
        part_of = []
        for idx, s in enumerate(sizes):
            part_of.extend([idx] * s)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if part_of[u] != part_of[v]]
        labels = [f"p{part_of[v] + 1}_{v - offsets[part_of[v]] + 1}" for v in range(n)]
        return Graph(n, edges, labels)
    if kind == "grid":
        rows, cols = args
        n = rows * cols
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        labels = [f"({r + 1},{c + 1})" for r in range(rows) for c in range(cols)]
        return Graph(n, edges, labels)
    raise ParameterError(f"family: unknown kind {kind!r}")


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format.

    Strict by design: every malformed line, out-of-range index, self-loop,
    duplicate edge, or line-count mismatch is an error.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise EdgeListError("empty edge-list input")
    header = lines[0].split()
    if len(header) != 2:
        raise EdgeListError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise EdgeListError(f"header must be integers, got {lines[0]!r}") from None
    if n < 1:
        raise EdgeListError("vertex count must be >= 1")
    if m < 0:
        raise EdgeListError("edge count must be >= 0")
    if len(lines) - 1 != m:
        raise EdgeListError(f"expected {m} edge lines, found {len(lines) - 1}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for ln in lines[1:]:
        tokens = ln.split()
        if len(tokens) != 2:
            raise EdgeListError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListError(f"edge line must be integers, got {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        edges.append((u, v))
    return Graph(n, edges)


def render_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def terminal_structures(g: Graph, v: int) -> tuple[int, int]:
    """Count terminal paths and terminal cycles hanging off ``v``.

    A terminal path runs from ``v`` through degree-2 vertices to a leaf; a
    terminal cycle returns to ``v`` with every internal vertex of degree 2.
    Each cycle is discovered from both of its end neighbors, hence the
    halving.
    """
    if not 0 <= v < g.n:
        raise ParameterError(f"vertex {v} out of range for n={g.n}")
    paths = 0
    cycle_walks = 0
    for u in g.neighbors(v):
        prev, cur = v, u
        while True:
            if cur == v:
                cycle_walks += 1
                break
            d = g.degree(cur)
            if d == 1:
                paths += 1
                break
            if d != 2:
                break
            nxt = next(w for w in iter_bits(g.adj[cur]) if w != prev)
            prev, cur = cur, nxt
    return paths, cycle_walks // 2
