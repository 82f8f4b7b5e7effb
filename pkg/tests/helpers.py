"""Shared test utilities: named graphs, random generators, oracles."""

import itertools

import numpy as np

from pclyap import LabeledGraph, MatrixSet, NodeId, is_path_complete, make_graph, strongly_connected_components

A, B, C, D = (NodeId.atom(x) for x in "abcd")
P, Q, R = (NodeId.atom(x) for x in "pqr")


def branching_graph():
    """Three nodes, no self-loops, heavy branching through the middle node."""
    return make_graph(2, [P, Q, R],
                      [(P, Q, 1), (Q, P, 1), (Q, P, 2), (Q, R, 1), (Q, R, 2), (R, Q, 2)])


def loop_pair_graph():
    """Two nodes with loops (a,1) and (b,2) plus forward/backward switches."""
    return make_graph(2, [A, B], [(A, A, 1), (A, B, 1), (B, A, 2), (B, B, 2)])


def toggle_graph():
    """Self-loops on label 2, node exchange on label 1."""
    return make_graph(2, [A, B], [(A, A, 2), (A, B, 1), (B, A, 1), (B, B, 2)])


def memory_one_graph():
    """Records the last mode: loops (a,1), (b,2), switches (a,b,2), (b,a,1)."""
    return make_graph(2, [A, B], [(A, A, 1), (A, B, 2), (B, A, 1), (B, B, 2)])


def demo_graph():
    """Four-node graph used by the worked JSR example."""
    return make_graph(2, [A, B, C, D],
                      [(A, B, 1), (B, A, 1), (B, C, 1), (B, D, 1), (C, D, 1),
                       (D, D, 2), (D, C, 2), (D, A, 2)])


def demo_matrices():
    """The 3x3 positive switching system of the worked example."""
    return MatrixSet.from_matrices([
        np.array([[0.2, 0.0, 0.0], [0.6, 0.6, 0.5], [0.6, 0.3, 0.2]]),
        np.array([[0.1, 0.2, 0.3], [0.2, 0.0, 0.5], [0.1, 0.6, 0.7]]),
    ])


def broadcast_matrices(n):
    """A_i = column i broadcast to every coordinate: A_i x = x_i * ones."""
    return MatrixSet.from_matrices([np.outer(np.ones(n), np.eye(n)[i]) for i in range(n)])


def edge_set(g):
    return {(str(a), str(b), i) for a, b, i in g.edges}


def find_isomorphism(g: LabeledGraph, h: LabeledGraph):
    """Exhaustive label-preserving node bijection search (small graphs only)."""
    if g.alphabet_size != h.alphabet_size or len(g.nodes) != len(h.nodes):
        return None
    if len(g.edges) != len(h.edges):
        return None
    h_edges = set(h.edges)
    for perm in itertools.permutations(h.nodes):
        mapping = dict(zip(g.nodes, perm))
        if all((mapping[a], mapping[b], i) in h_edges for a, b, i in g.edges):
            return mapping
    return None


def is_isomorphic(g, h):
    return find_isomorphism(g, h) is not None


def path_complete_by_word_enumeration(g: LabeledGraph, max_len: int) -> bool:
    """Independent oracle: try every word up to max_len by naive path search."""
    succ = {(s, i): set() for s in g.nodes for i in range(1, g.alphabet_size + 1)}
    for a, b, i in g.edges:
        succ[(a, i)].add(b)
    for length in range(1, max_len + 1):
        for word in itertools.product(range(1, g.alphabet_size + 1), repeat=length):
            current = set(g.nodes)
            for letter in word:
                current = set().union(*(succ[(s, letter)] for s in current)) if current else set()
                if not current:
                    break
            if not current:
                return False
    return True


def random_graph(rng, n_nodes, alphabet, density=0.35):
    nodes = [NodeId.atom(f"n{k}") for k in range(n_nodes)]
    edges = [(a, b, i) for a in nodes for b in nodes
             for i in range(1, alphabet + 1) if rng.random() < density]
    return make_graph(alphabet, nodes, edges)


def random_path_complete_graph(rng, max_nodes=5, max_labels=3):
    """Random strongly connected path-complete graph.

    Mixes three families: complete graphs (one random successor set per
    node/label), their transposes (co-complete), and rejection-sampled
    dense graphs.  Strong connectivity is enforced by adding a random
    cycle through all nodes when missing.
    """
    from pclyap import transpose as transpose_graph

    n_nodes = int(rng.integers(1, max_nodes + 1))
    alphabet = int(rng.integers(1, max_labels + 1))
    nodes = [NodeId.atom(f"n{k}") for k in range(n_nodes)]
    style = rng.random()
    while True:
        if style < 0.8:
            edges = set()
            for s in nodes:
                for i in range(1, alphabet + 1):
                    succs = [t for t in nodes if rng.random() < 0.3]
                    if not succs:
                        succs = [nodes[int(rng.integers(0, n_nodes))]]
                    edges.update((s, t, i) for t in succs)
        else:
            edges = {(a, b, i) for a in nodes for b in nodes
                     for i in range(1, alphabet + 1) if rng.random() < 0.5}
        order = list(rng.permutation(n_nodes))
        for k in range(n_nodes):
            s, t = nodes[order[k]], nodes[order[(k + 1) % n_nodes]]
            edges.add((s, t, int(rng.integers(1, alphabet + 1))))
        g = make_graph(alphabet, nodes, edges)
        if len(strongly_connected_components(g)) == 1 and is_path_complete(g):
            if style >= 0.8 or rng.random() < 0.5:
                return g
            return transpose_graph(g)


def random_matrix_set(rng, n=None, size=None, scale_to_unit=True):
    """Random nonnegative matrices, rescaled so the brute-force upper bound
    of length-1 products lands in [0.5, 2] (keeps bisection brackets small)."""
    n = n if n is not None else int(rng.integers(1, 5))
    size = size if size is not None else int(rng.integers(1, 4))
    mats = [rng.random((n, n)) for _ in range(size)]
    if scale_to_unit:
        top = max(float(m.sum(axis=1).max()) for m in mats)
        target = 0.5 + 1.5 * rng.random()
        mats = [m * (target / top) for m in mats]
    return MatrixSet.from_matrices(mats)


def random_monomial_matrix_set(rng, n=None, size=None):
    """Invertible nonnegative matrices with nonnegative inverses
    (permutation times positive diagonal)."""
    n = n if n is not None else int(rng.integers(1, 5))
    size = size if size is not None else int(rng.integers(1, 4))
    mats = []
    for _ in range(size):
        perm = rng.permutation(n)
        m = np.zeros((n, n))
        for row, col in enumerate(perm):
            m[row, col] = 0.2 + 1.5 * rng.random()
        mats.append(m)
    return MatrixSet.from_matrices(mats)
