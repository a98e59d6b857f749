"""Independent brute-force oracles used to cross-check the implementation.

Everything here is deliberately written against the *definitions* (path
enumeration, explicit blocking rules, exhaustive adjustment checks, direct
double sums) rather than reusing the package's algorithms.
"""

from __future__ import annotations

import numpy as np

from scmdist import Dag


def random_dag(rng: np.random.Generator, d: int, p_edge: float = 0.4) -> Dag:
    names = [f"v{k}" for k in range(d)]
    order = list(rng.permutation(names))
    edges = []
    for a in range(d):
        for b in range(a + 1, d):
            if rng.random() < p_edge:
                edges.append((order[a], order[b]))
    return Dag(names, edges)


def transitive_closure(g: Dag) -> dict:
    """Floyd-Warshall reachability over directed edges."""
    nodes = list(g.nodes)
    idx = {n: k for k, n in enumerate(nodes)}
    d = len(nodes)
    reach = [[False] * d for _ in range(d)]
    for u, v in g.edges:
        reach[idx[u]][idx[v]] = True
    for k in range(d):
        for i in range(d):
            if reach[i][k]:
                for j in range(d):
                    if reach[k][j]:
                        reach[i][j] = True
    return {(a, b): reach[idx[a]][idx[b]] for a in nodes for b in nodes}


def _all_paths(g: Dag, a: str, b: str):
    """All simple paths between a and b in the skeleton, as node sequences."""
    neighbors = {n: set() for n in g.nodes}
    for u, v in g.edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    paths = []

    def walk(node, path):
        if node == b:
            paths.append(list(path))
            return
        for nxt in sorted(neighbors[node]):
            if nxt not in path:
                path.append(nxt)
                walk(nxt, path)
                path.pop()

    walk(a, [a])
    return paths


def _descendants(g: Dag, v: str) -> set:
    out, frontier = set(), [v]
    while frontier:
        for u, w in g.edges:
            if u == frontier[0] and w not in out:
                out.add(w)
                frontier.append(w)
        frontier.pop(0)
    return out


def _path_active(g: Dag, path, z: set) -> bool:
    """Standard d-connection rules applied node by node along one path."""
    for k in range(1, len(path) - 1):
        prev, node, nxt = path[k - 1], path[k], path[k + 1]
        into_prev = (prev, node) in g.edges
        into_next = (nxt, node) in g.edges
        collider = into_prev and into_next
        if collider:
            if node not in z and not (_descendants(g, node) & z):
                return False
        else:
            if node in z:
                return False
    return True


def d_separated_bruteforce(g: Dag, a: str, b: str, z) -> bool:
    z = set(z)
    return not any(_path_active(g, p, z) for p in _all_paths(g, a, b))


def _is_causal_path(g: Dag, path) -> bool:
    return all((path[k], path[k + 1]) in g.edges for k in range(len(path) - 1))


def valid_adjustment_bruteforce(g: Dag, i: str, j: str, z) -> bool:
    """Exhaustive single-node adjustment criterion via path enumeration."""
    z = set(z)
    if j in z:
        return j not in _descendants(g, i)
    paths = _all_paths(g, i, j)
    causal_nodes = set()
    for p in paths:
        if _is_causal_path(g, p):
            causal_nodes.update(p[1:])
    forbidden = set(causal_nodes)
    for w in causal_nodes:
        forbidden |= _descendants(g, w)
    if z & forbidden:
        return False
    for p in paths:
        if not _is_causal_path(g, p) and _path_active(g, p, z):
            return False
    return True


def sid_bruteforce(g1: Dag, g2: Dag) -> int:
    count = 0
    for i in g1.nodes:
        z = g1.parents(i)
        for j in g1.nodes:
            if i != j and not valid_adjustment_bruteforce(g2, i, j, z):
                count += 1
    return count


def mimd_sq_double_sum(w1, y1, w2, y2, bandwidth_sq: float) -> float:
    """Scalar-by-scalar expansion of the squared embedding distance."""
    from scmdist import KernelConfig, gaussian_kernel

    cfg = KernelConfig(bandwidth_sq)
    total = 0.0
    for s in range(len(w1)):
        for t in range(len(w1)):
            total += w1[s] * w1[t] * gaussian_kernel(y1[s], y1[t], cfg)
    for s in range(len(w2)):
        for t in range(len(w2)):
            total += w2[s] * w2[t] * gaussian_kernel(y2[s], y2[t], cfg)
    for s in range(len(w1)):
        for t in range(len(w2)):
            total -= 2.0 * w1[s] * w2[t] * gaussian_kernel(y1[s], y2[t], cfg)
    return total


def mmd_vstat_naive(a: np.ndarray, b: np.ndarray, bandwidth_sq: float) -> float:
    """Full-matrix V-statistic for 1-D or multi-D samples."""
    a = np.atleast_2d(np.asarray(a, dtype=float).T).T
    b = np.atleast_2d(np.asarray(b, dtype=float).T).T

    def k(u, w):
        sq = ((u[:, None, :] - w[None, :, :]) ** 2).sum(axis=2)
        return np.exp(-sq / (2.0 * bandwidth_sq))

    sq = (k(a, a).mean() + k(b, b).mean() - 2.0 * k(a, b).mean())
    return float(np.sqrt(max(sq, 0.0)))
