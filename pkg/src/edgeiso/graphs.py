"""Simple undirected graphs with bit-vector adjacency.

Vertices are dense integers ``0..n-1``.  Each adjacency row is a Python
int used as a bit mask, so every subset edge count in this package
reduces to popcounts of row intersections.  Graphs never change after
construction, which keeps them safe to share across threads.

The module also hosts the constructor expression grammar
(``complete(4)``, ``join(X,Y)``, ``power(complete(2),3)``, ...) and the
edge-list text format accepted by the command line front end.
"""

from __future__ import annotations

import os
import re
from collections.abc import Iterable, Iterator

from .errors import CapacityError, InputError

# Hard cap on vertex count.  Everything here is exact and desk scale;
# adjacency rows are n-bit ints and profiles scan 2^n subsets, so there
# is no point pretending larger graphs are in scope.
MAX_VERTICES = 4096


def bit_indices(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph: no loops, no parallel edges.

    ``adj[v]`` is the neighbor set of ``v`` as a bit mask.  Duplicate
    edges in the input are merged; reversed duplicates too, since both
    directions set the same pair of bits.
    """

    __slots__ = ("n", "adj", "name")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), name: str | None = None):
        if n < 1:
            raise InputError(f"vertex count must be at least 1, got {n}")
        if n > MAX_VERTICES:
            raise CapacityError(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.adj = tuple(rows)
        self.name = name

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, sorted."""
        out = []
        for u in range(self.n):
            higher = self.adj[u] >> (u + 1)
            for k in bit_indices(higher):
                out.append((u, u + 1 + k))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InputError(f"vertex pair ({u},{v}) out of range for n={self.n}")
        return bool(self.adj[u] >> v & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        label = self.name or "graph"
        return f"Graph({label}, n={self.n}, m={self.edge_count()})"

    def display_name(self) -> str:
        return self.name if self.name else f"graph(n={self.n})"


class VertexSet:
    """A subset of a graph's vertices, stored as a bit mask.

    Construction validates that every member is inside ``0..n-1``.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, members: Iterable[int] = ()):
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise InputError(f"vertex {v} out of range for n={n}")
            mask |= 1 << v
        self.n = n
        self.mask = mask

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "VertexSet":
        if mask < 0 or mask >> n:
            raise InputError(f"mask {mask:#x} has bits outside 0..{n - 1}")
        vs = cls.__new__(cls)
        vs.n = n
        vs.mask = mask
        return vs

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return bit_indices(self.mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexSet) and (self.n, self.mask) == (other.n, other.mask)

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"

    def to_hex(self) -> str:
        return hex(self.mask)


def as_mask(g: Graph, a) -> int:
    """Normalize a VertexSet, bit mask, or iterable of vertices to a mask."""
    if isinstance(a, VertexSet):
        mask = a.mask
    elif isinstance(a, int):
        mask = a
    else:
        mask = VertexSet(g.n, a).mask
    if mask < 0 or mask >> g.n:
        raise InputError(f"vertex set {mask:#x} has members outside 0..{g.n - 1}")
    return mask


# ============================================================
# Edge counting primitives
# ============================================================

def induced_edges(g: Graph, a) -> int:
    """Number of edges with both endpoints in ``a``."""
    mask = as_mask(g, a)
    adj = g.adj
    total = 0
    for v in bit_indices(mask):
        total += (adj[v] & mask).bit_count()
    return total // 2


def cross_edges(g: Graph, a, b) -> int:
    """Edges writable with one endpoint in ``a`` and the other in ``b``.

    The sets may overlap; an edge inside the overlap is counted once.
    With ``a == b`` this equals ``induced_edges(g, a)``.
    """
    am = as_mask(g, a)
    bm = as_mask(g, b)
    adj = g.adj
    ordered = 0
    for v in bit_indices(am):
        ordered += (adj[v] & bm).bit_count()
    # ordered counts overlap-internal edges twice, everything else once
    return ordered - induced_edges(g, am & bm)


def boundary_edges(g: Graph, a) -> int:
    """Number of edges with exactly one endpoint in ``a``."""
    mask = as_mask(g, a)
    outside = g.full_mask & ~mask
    adj = g.adj
    total = 0
    for v in bit_indices(mask):
        total += (adj[v] & outside).bit_count()
    return total


def degrees(g: Graph) -> tuple[int, ...]:
    """Degree sequence indexed by vertex."""
    return tuple(row.bit_count() for row in g.adj)


def is_regular(g: Graph) -> tuple[bool, int | None]:
    """(True, r) if every vertex has degree r, else (False, None)."""
    degs = degrees(g)
    if all(d == degs[0] for d in degs):
        return True, degs[0]
    return False, None


# ============================================================
# Constructors
# ============================================================

def from_edge_list(n: int, edges: Iterable[tuple[int, int]], name: str | None = None) -> Graph:
    return Graph(n, edges, name=name)


def complete(n: int) -> Graph:
    _require_positive(n, "complete")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)], name=f"complete({n})")


def empty_graph(n: int) -> Graph:
    _require_positive(n, "empty")
    return Graph(n, (), name=f"empty({n})")


def path(n: int) -> Graph:
    _require_positive(n, "path")
    return Graph(n, [(i, i + 1) for i in range(n - 1)], name=f"path({n})")


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle({n})")


def star(n: int) -> Graph:
    """Star on n vertices: center 0 joined to every leaf."""
    _require_positive(n, "star")
    return Graph(n, [(0, i) for i in range(1, n)], name=f"star({n})")


def petersen() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))          # outer cycle
        edges.append((5 + i, 5 + (i + 2) % 5))  # inner five-cycle, step two
        edges.append((i, 5 + i))                # spokes
    return Graph(10, edges, name="petersen")


def graph_union(a: Graph, b: Graph) -> Graph:
    """Disjoint union; b's vertices are relabeled to follow a's."""
    edges = a.edges() + [(u + a.n, v + a.n) for u, v in b.edges()]
    name = _compose_name("union", a, b)
    return Graph(a.n + b.n, edges, name=name)


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    g = graph_union(a, b)
    edges = g.edges() + [(u, a.n + v) for u in range(a.n) for v in range(b.n)]
    return Graph(a.n + b.n, edges, name=_compose_name("join", a, b))


def cartesian_product(a: Graph, b: Graph) -> Graph:
    """Cartesian product; vertex (x, y) gets label x * b.n + y.

    (x, y) and (u, v) are adjacent when x == u and yv is an edge of b,
    or xu is an edge of a and y == v.
    """
    n = a.n * b.n
    if n > MAX_VERTICES:
        raise CapacityError(
            f"product on {a.n}*{b.n} vertices exceeds the {MAX_VERTICES}-vertex cap")
    edges = []
    for x in range(a.n):
        base = x * b.n
        for u, v in b.edges():
            edges.append((base + u, base + v))
    for u, v in a.edges():
        for y in range(b.n):
            edges.append((u * b.n + y, v * b.n + y))
    return Graph(n, edges, name=_compose_name("product", a, b))


def cartesian_power(g: Graph, d: int) -> Graph:
    """Iterated Cartesian product.

    Coordinate tuples (x1, ..., xd) map to base-n labels with x1 most
    significant, so numeric label order equals lex order on tuples.
    """
    if d < 1:
        raise InputError(f"power exponent must be at least 1, got {d}")
    if g.n ** d > MAX_VERTICES:
        raise CapacityError(
            f"power on {g.n}^{d} vertices exceeds the {MAX_VERTICES}-vertex cap")
    out = g
    for _ in range(d - 1):
        out = cartesian_product(out, g)
    label = g.name if g.name else f"graph(n={g.n})"
    return Graph(out.n, out.edges(), name=f"power({label},{d})")


def relabel(g: Graph, order: Iterable[int]) -> Graph:
    """Permute labels so that new vertex k is old vertex order[k]."""
    seq = tuple(order)
    if sorted(seq) != list(range(g.n)):
        raise InputError("relabel order must be a permutation of all vertices")
    pos = [0] * g.n
    for new, old in enumerate(seq):
        pos[old] = new
    edges = [(pos[u], pos[v]) for u, v in g.edges()]
    return Graph(g.n, edges, name=f"relabel({g.display_name()})")


# The two building blocks of the join construction below: X is a pair
# of disjoint paths on 3 and 2 vertices, Y is two disjoint triangles.
def graph_x() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (3, 4)], name="X")


def graph_y() -> Graph:
    return Graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)], name="Y")


def graph_z(k: int) -> Graph:
    """X joined with k copies of Y; Z(2) has 17 vertices and 111 edges."""
    _require_positive(k, "Z")
    g = graph_x()
    for _ in range(k):
        g = join(g, graph_y())
    return Graph(g.n, g.edges(), name=f"Z({k})")


def _require_positive(n: int, what: str) -> None:
    if n < 1:
        raise InputError(f"{what} needs at least 1 vertex, got {n}")


def _compose_name(op: str, a: Graph, b: Graph) -> str | None:
    if a.name and b.name:
        return f"{op}({a.name},{b.name})"
    return None


# ============================================================
# Constructor expression grammar
# ============================================================
#
#   expr  := NAME | NAME '(' arg {',' arg} ')'
#   arg   := expr | INT
#
# Names are case-insensitive.  Integer arguments are only valid where a
# count is expected.

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[(),])")

_FAMILIES = {
    "complete": complete,
    "path": path,
    "cycle": cycle,
    "star": star,
    "empty": empty_graph,
    "z": graph_z,
}

_ATOMS = {
    "petersen": petersen,
    "x": graph_x,
    "y": graph_y,
}


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise InputError(f"bad character in expression at: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def named(expression: str) -> Graph:
    """Build a graph from a constructor expression like ``join(X,Y)``."""
    tokens = _tokenize(expression)
    if not tokens:
        raise InputError("empty graph expression")
    value, rest = _parse_expr(tokens)
    if rest:
        raise InputError(f"trailing tokens in expression: {' '.join(rest)}")
    if not isinstance(value, Graph):
        raise InputError("expression is a number, not a graph")
    return value


def _parse_expr(tokens: list[str]):
    head, rest = tokens[0], tokens[1:]
    if head.isdigit():
        return int(head), rest
    if head in "(),":
        raise InputError(f"unexpected {head!r} in expression")
    name = head.lower()
    if rest and rest[0] == "(":
        args, rest = _parse_args(rest[1:])
        return _apply(name, args), rest
    if name in _ATOMS:
        return _ATOMS[name](), rest
    raise InputError(f"unknown graph name {head!r}")


def _parse_args(tokens: list[str]):
    args = []
    while True:
        if not tokens:
            raise InputError("unterminated argument list")
        value, tokens = _parse_expr(tokens)
        args.append(value)
        if not tokens:
            raise InputError("unterminated argument list")
        sep, tokens = tokens[0], tokens[1:]
        if sep == ")":
            return args, tokens
        if sep != ",":
            raise InputError(f"expected ',' or ')' in arguments, got {sep!r}")


def _apply(name: str, args: list):
    if name in _FAMILIES:
        if len(args) != 1 or not isinstance(args[0], int):
            raise InputError(f"{name}(...) takes one integer argument")
        return _FAMILIES[name](args[0])
    if name in ("union", "join", "product"):
        if len(args) != 2 or not all(isinstance(a, Graph) for a in args):
            raise InputError(f"{name}(...) takes two graph arguments")
        fn = {"union": graph_union, "join": join, "product": cartesian_product}[name]
        return fn(args[0], args[1])
    if name == "power":
        if len(args) != 2 or not isinstance(args[0], Graph) or not isinstance(args[1], int):
            raise InputError("power(...) takes a graph and an integer exponent")
        return cartesian_power(args[0], args[1])
    if name in _ATOMS:
        if args:
            raise InputError(f"{name} takes no arguments")
        return _ATOMS[name]()
    raise InputError(f"unknown constructor {name!r}")


# ============================================================
# Edge-list text format
# ============================================================
#
#   # optional comments
#   n 5
#   0 1
#   1 2

def parse_edge_list(text: str, name: str | None = None) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise InputError(f"line {lineno}: expected header 'n <count>', got {raw!r}")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: vertex labels must be integers, got {raw!r}")
        edges.append((u, v))
    if n is None:
        raise InputError("missing 'n <count>' header line")
    return Graph(n, edges, name=name)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def load_graph(source: str) -> Graph:
    """Load a graph from an edge-list file path or constructor expression.

    An existing file wins over an expression of the same spelling.
    """
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse_edge_list(fh.read(), name=os.path.basename(source))
    return named(source)
