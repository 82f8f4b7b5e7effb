"""Labeled directed graphs over a finite mode alphabet.

Graphs here are the combinatorial side of path-complete Lyapunov analysis:
finitely many nodes, and edges carrying a mode label from ``1..M``.  The
module provides construction and validation, the path-completeness check
(a universality test run by subset construction), completeness flags,
transposition, strongly connected components, minimality diagnostics and
an exhaustive simulation-relation search.

All graph values are immutable after construction and every function is
pure, so everything is safe to share between threads.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import total_ordering


_ATOM_FORBIDDEN = re.compile(r"[{}(),∘\s]")

COMP_SEP = "∘"  # the ring operator used in composed node names, e.g. "a∘1"


@total_ordering
class NodeId:
    """Structured node identity.

    A node is an atom, a multiset or subset of nodes, a (node, label)
    composition pair, or a word of labels.  Children of collection
    variants are kept in canonical (lexicographic) order and subset
    children are deduplicated, so structurally equal nodes always render
    to the same string.  Identity, hashing and ordering all go through
    that canonical string: lifted nodes stay traceable to their origin
    while graph equality stays insensitive to construction order.
    """

    __slots__ = ("kind", "value", "_text")

    def __init__(self, kind, value, _text=None):
        self.kind = kind
        self.value = value
        self._text = _text if _text is not None else _render(kind, value)

    @staticmethod
    def atom(name: str) -> "NodeId":
        if not isinstance(name, str) or not name:
            raise ValueError("atom name must be a non-empty string")
        if _ATOM_FORBIDDEN.search(name):
            raise ValueError(f"atom name {name!r} contains a reserved character")
        return NodeId("atom", name)

    @staticmethod
    def multiset(children) -> "NodeId":
        kids = tuple(sorted(children))
        if not kids or not all(isinstance(c, NodeId) for c in kids):
            raise ValueError("multiset children must be a non-empty NodeId collection")
        return NodeId("multiset", kids)

    @staticmethod
    def subset(children) -> "NodeId":
        kids = []
        for c in sorted(children):
            if not isinstance(c, NodeId):
                raise ValueError("subset children must be NodeIds")
            if not kids or kids[-1] != c:
                kids.append(c)
        if not kids:
            raise ValueError("subset must be non-empty")
        return NodeId("subset", tuple(kids))

    @staticmethod
    def comp(base: "NodeId", label: int) -> "NodeId":
        if not isinstance(base, NodeId):
            raise ValueError("composition base must be a NodeId")
        if not isinstance(label, int) or label < 1:
            raise ValueError("composition label must be a positive integer")
        return NodeId("comp", (base, label))

    @staticmethod
    def word(labels) -> "NodeId":
        labs = tuple(int(x) for x in labels)
        if any(x < 1 for x in labs):
            raise ValueError("word letters must be positive integers")
        return NodeId("word", labs)

    def __str__(self):
        return self._text

    def __repr__(self):
        return f"NodeId({self._text!r})"

    def __eq__(self, other):
        return isinstance(other, NodeId) and self._text == other._text

    def __lt__(self, other):
        if not isinstance(other, NodeId):
            return NotImplemented
        return self._text < other._text

    def __hash__(self):
        return hash(self._text)


def _render(kind, value):
    if kind == "atom":
        return value
    if kind in ("multiset", "subset"):
        return "{" + ",".join(str(c) for c in value) + "}"
    if kind == "comp":
        base, label = value
        return f"{base}{COMP_SEP}{label}"
    if kind == "word":
        return "(" + ",".join(str(x) for x in value) + ")"
    raise ValueError(f"unknown NodeId kind {kind!r}")


def parse_node_id(text: str) -> NodeId:
    """Parse the string form of a node back into a :class:`NodeId`.

    Brace collections parse as subsets when their members are distinct and
    as multisets otherwise; the two render identically, so round-tripping
    preserves graph identity.
    """
    node, rest = _parse_node(text.strip())
    if rest:
        raise ValueError(f"trailing characters in node name {text!r}")
    return node


def _parse_node(s):
    if not s:
        raise ValueError("empty node name")
    if s[0] == "{":
        children, rest = [], s[1:]
        while True:
            child, rest = _parse_node(rest)
            children.append(child)
            if not rest:
                raise ValueError("unterminated '{' in node name")
            if rest[0] == ",":
                rest = rest[1:]
                continue
            if rest[0] == "}":
                rest = rest[1:]
                break
            raise ValueError(f"unexpected character {rest[0]!r} in node name")
        distinct = len(set(children)) == len(children)
        node = NodeId.subset(children) if distinct else NodeId.multiset(children)
    elif s[0] == "(":
        end = s.index(")") if ")" in s else -1
        if end < 0:
            raise ValueError("unterminated '(' in node name")
        inner = s[1:end]
        labels = [int(x) for x in inner.split(",")] if inner else []
        node, rest = NodeId.word(labels), s[end + 1:]
        return _maybe_comp(node, rest)
    else:
        m = _ATOM_FORBIDDEN.search(s)
        end = m.start() if m else len(s)
        if end == 0:
            raise ValueError(f"cannot parse node name starting at {s!r}")
        node, rest = NodeId.atom(s[:end]), s[end:]
        return _maybe_comp(node, rest)
    return _maybe_comp(node, rest)


def _maybe_comp(node, rest):
    while rest.startswith(COMP_SEP):
        m = re.match(r"\d+", rest[1:])
        if not m:
            raise ValueError(f"missing label after {COMP_SEP!r}")
        node = NodeId.comp(node, int(m.group()))
        rest = rest[1 + m.end():]
    return node, rest


Edge = tuple  # (src: NodeId, dst: NodeId, label: int)


@dataclass(frozen=True)
class LabeledGraph:
    """Directed multigraph with edges labeled over ``1..alphabet_size``."""

    alphabet_size: int
    nodes: tuple
    edges: tuple

    def node_index(self) -> dict:
        return {s: k for k, s in enumerate(self.nodes)}

    def out_edges(self, node: NodeId):
        return [e for e in self.edges if e[0] == node]

    def in_edges(self, node: NodeId):
        return [e for e in self.edges if e[1] == node]

    def __str__(self):
        edges = ", ".join(f"({a},{b},{i})" for a, b, i in self.edges)
        return f"LabeledGraph(M={self.alphabet_size}, |S|={len(self.nodes)}, E=[{edges}])"


def make_graph(alphabet_size: int, nodes, edges) -> LabeledGraph:
    """Build a validated graph with canonical node ordering.

    Duplicate edges collapse; an edge endpoint outside ``nodes``, a label
    outside ``1..alphabet_size`` or an empty node set raises ``ValueError``.
    """
    if not isinstance(alphabet_size, int) or alphabet_size < 1:
        raise ValueError("alphabet_size must be an integer >= 1")
    node_tuple = tuple(sorted(set(nodes)))
    if not node_tuple:
        raise ValueError("graph needs at least one node")
    known = set(node_tuple)
    seen = set()
    for a, b, i in edges:
        if a not in known or b not in known:
            raise ValueError(f"edge ({a},{b},{i}) references an unknown node")
        if not isinstance(i, int) or not 1 <= i <= alphabet_size:
            raise ValueError(f"edge label {i} outside 1..{alphabet_size}")
        seen.add((a, b, i))
    return LabeledGraph(alphabet_size, node_tuple, tuple(sorted(seen)))


def common_lyapunov_graph(alphabet_size: int) -> LabeledGraph:
    """The one-node graph with a self-loop per mode."""
    a = NodeId.atom("a")
    return make_graph(alphabet_size, [a], [(a, a, i) for i in range(1, alphabet_size + 1)])


def transpose(g: LabeledGraph) -> LabeledGraph:
    """Reverse the direction of every edge, keeping labels."""
    return LabeledGraph(g.alphabet_size, g.nodes, tuple(sorted((b, a, i) for a, b, i in g.edges)))


def _label_successor_masks(g: LabeledGraph):
    """Per-label successor bitmasks: masks[i][k] = OR of destinations of node k."""
    idx = g.node_index()
    masks = [[0] * len(g.nodes) for _ in range(g.alphabet_size + 1)]
    for a, b, i in g.edges:
        masks[i][idx[a]] |= 1 << idx[b]
    return masks


def is_path_complete(g: LabeledGraph) -> bool:
    """Whether every finite word over the alphabet labels some path in ``g``.

    Runs the subset construction from the full node set: a word has no
    path exactly when its letter-by-letter successor sets reach the empty
    set, so the graph is path-complete iff the empty set is unreachable.
    Visited subsets are memoized; the worst case is ``2^|S|`` states.
    """
    masks = _label_successor_masks(g)
    full = (1 << len(g.nodes)) - 1
    seen = {full}
    stack = [full]
    while stack:
        q = stack.pop()
        for i in range(1, g.alphabet_size + 1):
            nxt, m = 0, q
            while m:
                low = m & -m
                nxt |= masks[i][low.bit_length() - 1]
                m ^= low
            if nxt == 0:
                return False
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def completeness_flags(g: LabeledGraph) -> tuple:
    """``(complete, co_complete)`` per node/label edge coverage.

    Complete means every (node, label) pair has an outgoing edge;
    co-complete means every pair has an incoming edge.
    """
    out_pairs = {(a, i) for a, _, i in g.edges}
    in_pairs = {(b, i) for _, b, i in g.edges}
    labels = range(1, g.alphabet_size + 1)
    complete = all((s, i) in out_pairs for s in g.nodes for i in labels)
    co_complete = all((s, i) in in_pairs for s in g.nodes for i in labels)
    return complete, co_complete


def strongly_connected_components(g: LabeledGraph) -> list:
    """SCCs of the underlying digraph (labels ignored), topologically ordered.

    Iterative Tarjan over the canonical node order; the returned partition
    lists components so that every edge of the condensation goes from an
    earlier component to a later one.
    """
    idx = g.node_index()
    n = len(g.nodes)
    succ = [[] for _ in range(n)]
    for a, b, _ in g.edges:
        j = idx[b]
        if j not in succ[idx[a]]:
            succ[idx[a]].append(j)
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack, sccs = [], []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(succ[v])):
                w = succ[v][k]
                if index[w] is None:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(frozenset(g.nodes[k] for k in comp))
    sccs.reverse()  # Tarjan emits reverse topological order
    return sccs


def induced_subgraph(g: LabeledGraph, nodes) -> LabeledGraph:
    """Subgraph on ``nodes`` with every edge whose endpoints both lie inside."""
    keep = set(nodes)
    return make_graph(g.alphabet_size, keep,
                      [e for e in g.edges if e[0] in keep and e[1] in keep])


def path_complete_components(g: LabeledGraph) -> list:
    """Induced subgraphs of the SCCs that are themselves path-complete."""
    out = []
    for comp in strongly_connected_components(g):
        sub = induced_subgraph(g, comp)
        if is_path_complete(sub):
            out.append(sub)
    return out


def check_assumption_minimal(g: LabeledGraph) -> tuple:
    """``(strongly_connected, edge_minimal)`` minimality diagnostics.

    ``edge_minimal`` holds when removing any single edge destroys
    path-completeness.  A graph that is not path-complete to begin with
    reports ``edge_minimal=False`` (with a warning), since the notion
    only makes sense for path-complete graphs.
    """
    sc = len(strongly_connected_components(g)) == 1
    if not is_path_complete(g):
        warnings.warn("graph is not path-complete; edge minimality reported as False")
        return sc, False
    for e in g.edges:
        rest = LabeledGraph(g.alphabet_size, g.nodes,
                            tuple(x for x in g.edges if x != e))
        if is_path_complete(rest):
            return sc, False
    return sc, True


@dataclass(frozen=True)
class SimulationMap:
    """Total node map witnessing that one graph simulates another.

    ``mapping[x]`` lives in the simulating graph; for every edge
    ``(a, b, i)`` of the simulated graph, ``(mapping[a], mapping[b], i)``
    is an edge of the simulating graph.
    """

    mapping: dict = field(hash=False)

    def __getitem__(self, node):
        return self.mapping[node]


def find_simulation(g: LabeledGraph, h: LabeledGraph):
    """Search for a map ``R`` from nodes of ``h`` into ``g`` preserving edges.

    Exhaustive backtracking in canonical node order: ``h`` nodes are
    assigned one at a time, candidates tried in canonical ``g`` order, and
    a partial map is abandoned as soon as an ``h`` edge with both
    endpoints assigned has no counterpart in ``g``.  The first witness in
    that deterministic order is returned, or ``None`` when no simulation
    map exists.
    """
    if g.alphabet_size != h.alphabet_size:
        raise ValueError("alphabet sizes differ")
    g_edges = set(g.edges)
    h_nodes = list(h.nodes)
    incident = [
        [(a, b, i) for (a, b, i) in h.edges
         if max(h_nodes.index(a), h_nodes.index(b)) == k]
        for k in range(len(h_nodes))
    ]
    assign = {}

    def consistent(k):
        for a, b, i in incident[k]:
            if (assign[a], assign[b], i) not in g_edges:
                return False
        return True

    def extend(k):
        if k == len(h_nodes):
            return True
        for cand in g.nodes:
            assign[h_nodes[k]] = cand
            if consistent(k) and extend(k + 1):
                return True
        del assign[h_nodes[k]]
        return False

    if extend(0):
        return SimulationMap(dict(assign))
    return None
