"""Tree and path decompositions: validation, text IO, vertex-disjoint
linkages via Menger (unit-vertex-capacity max flow), and a desk-scale
tree-decomposition builder.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graphs import Graph, Separation, components_within, vset


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]  # decomposition-tree edges

    @property
    def order(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def adhesion(self) -> int:
        return max(
            (
                len(set(self.bags[i]) & set(self.bags[i + 1]))
                for i in range(len(self.bags) - 1)
            ),
            default=0,
        )

    @property
    def proper(self) -> bool:
        for i in range(len(self.bags) - 1):
            a, b = set(self.bags[i]), set(self.bags[i + 1])
            if a <= b or b <= a:
                return False
        return True

    def boundary(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(sorted(set(self.bags[i]) & set(self.bags[j])))


@dataclass(frozen=True)
class DecompositionVerdict:
    ok: bool
    violation: str | None = None
    adhesion: int | None = None
    width: int | None = None
    proper: bool | None = None


def validate_decomposition(
    G: Graph, D: TreeDecomposition | PathDecomposition
) -> DecompositionVerdict:
    """Check edge coverage and per-vertex connectivity; report adhesion,
    width and properness for path decompositions."""
    bags = D.bags
    if not bags:
        return DecompositionVerdict(G.n == 0, None if G.n == 0 else "no bags")
    bag_sets = [set(b) for b in bags]
    for u, v in G.edges():
        if not any(u in b and v in b for b in bag_sets):
            return DecompositionVerdict(False, f"edge ({u},{v}) uncovered")
    if isinstance(D, PathDecomposition):
        for v in range(G.n):
            hits = [i for i, b in enumerate(bag_sets) if v in b]
            if not hits:
                return DecompositionVerdict(False, f"vertex {v} in no bag")
            if hits != list(range(hits[0], hits[-1] + 1)):
                return DecompositionVerdict(False, f"vertex {v} trace not consecutive")
        return DecompositionVerdict(
            True, adhesion=D.adhesion, width=D.width, proper=D.proper
        )
    adj = D.adjacency()
    for v in range(G.n):
        hits = {i for i, b in enumerate(bag_sets) if v in b}
        if not hits:
            return DecompositionVerdict(False, f"vertex {v} in no bag")
        start = min(hits)
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in hits and y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != hits:
            return DecompositionVerdict(False, f"vertex {v} trace not connected")
    return DecompositionVerdict(True, width=D.width)


# ---------------------------------------------------------------------------
# text format: "path k" | "tree k", "edge a b" lines (trees), "bag v1 v2 ..."
# ---------------------------------------------------------------------------

def parse_decomposition(text: str) -> TreeDecomposition | PathDecomposition:
    kind: str | None = None
    k = 0
    edges: list[tuple[int, int]] = []
    bags: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] in ("path", "tree"):
            kind = parts[0]
            k = int(parts[1])
        elif parts[0] == "edge":
            edges.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "bag":
            bags.append(vset(int(p) for p in parts[1:]))
        else:
            raise ValueError(f"line {lineno}: unknown record {parts[0]!r}")
    if kind is None:
        raise ValueError("missing 'path k' or 'tree k' header")
    if len(bags) != k:
        raise ValueError(f"expected {k} bags, found {len(bags)}")
    if kind == "path":
        return PathDecomposition(tuple(bags))
    return TreeDecomposition(tuple(bags), tuple(edges))


def write_decomposition(D: TreeDecomposition | PathDecomposition) -> str:
    lines = []
    if isinstance(D, PathDecomposition):
        lines.append(f"path {D.order}")
    else:
        lines.append(f"tree {D.order}")
        lines.extend(f"edge {a} {b}" for a, b in D.edges)
    lines.extend("bag " + " ".join(map(str, bag)) for bag in D.bags)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Menger linkage by unit-vertex-capacity augmenting paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Linkage:
    """Pairwise vertex-disjoint A-B paths, each stored as a vertex sequence
    from its A-end to its B-end."""

    paths: tuple[tuple[int, ...], ...]

    def vertices(self) -> set[int]:
        return {v for p in self.paths for v in p}


def find_linkage(G: Graph, A: Iterable[int], B: Iterable[int]) -> Linkage | Separation:
    """Either |A| vertex-disjoint A-B paths or a separation of order < |A|
    with A on one side and B on the other (Menger's dichotomy).

    A and B may intersect; shared vertices yield zero-length paths.
    """
    A, B = vset(A), vset(B)
    if len(A) != len(B):
        raise ValueError(f"|A|={len(A)} != |B|={len(B)}")
    n = G.n
    # node 2v = v_in, 2v+1 = v_out, source = 2n, sink = 2n+1;
    # only the in->out arcs have capacity 1, so the min cut is a vertex cut
    source, sink = 2 * n, 2 * n + 1
    big = n + 1
    cap: dict[tuple[int, int], int] = {}
    orig: dict[tuple[int, int], int] = {}
    succ: dict[int, list[int]] = {}

    def link(u: int, w: int, c: int) -> None:
        cap[(u, w)] = cap.get((u, w), 0) + c
        cap.setdefault((w, u), 0)
        orig[(u, w)] = orig.get((u, w), 0) + c
        succ.setdefault(u, []).append(w)
        succ.setdefault(w, []).append(u)

    for v in range(n):
        link(2 * v, 2 * v + 1, 1)
    for u, v in G.edges():
        link(2 * u + 1, 2 * v, big)
        link(2 * v + 1, 2 * u, big)
    for a in A:
        link(source, 2 * a, big)
    for b in B:
        link(2 * b + 1, sink, big)

    flow = 0
    while True:
        # BFS for an augmenting path
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            x = queue.popleft()
            for y in succ.get(x, ()):
                if y not in prev and cap.get((x, y), 0) > 0:
                    prev[y] = x
                    queue.append(y)
        if sink not in prev:
            break
        x = sink
        while x != source:
            p = prev[x]
            cap[(p, x)] -= 1
            cap[(x, p)] += 1
            x = p
        flow += 1

    if flow == len(A):
        # an arc carries flow iff its residual capacity dropped below the
        # original; unit vertex capacity makes the walk deterministic
        def flow_on(u: int, w: int) -> int:
            return orig.get((u, w), 0) - cap.get((u, w), 0)

        paths = []
        for a in A:
            assert flow_on(source, 2 * a) > 0
            path = [a]
            v = a
            while True:
                v_out = 2 * v + 1
                if flow_on(v_out, sink) > 0:
                    break
                nxt = next(
                    y for y in succ.get(v_out, ()) if flow_on(v_out, y) > 0
                )
                v = nxt // 2
                path.append(v)
            paths.append(tuple(path))
        return Linkage(tuple(paths))

    # min cut: residual-reachable set from source
    reach = {source}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in succ.get(x, ()):
            if y not in reach and cap.get((x, y), 0) > 0:
                reach.add(y)
                queue.append(y)
    cut = {v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach}
    left = {v for v in range(n) if 2 * v in reach or 2 * v + 1 in reach} | cut
    right = (set(range(n)) - left) | cut
    sep = Separation(vset(left), vset(right))
    sep.validate(G)
    assert sep.order < len(A)
    assert set(A) <= set(sep.left) and set(B) <= set(sep.right)
    return sep


# ---------------------------------------------------------------------------
# desk-scale tree decompositions via elimination orderings
# ---------------------------------------------------------------------------

def _decomposition_from_order(G: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition from an elimination ordering (fill-in chordalization)."""
    n = G.n
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(G.adj[v]) for v in range(n)]
    bags: list[tuple[int, ...]] = []
    edges: list[tuple[int, int]] = []
    bag_of: dict[int, int] = {}
    later_sets: list[set[int]] = []
    for idx, v in enumerate(order):
        later = {u for u in nbrs[v] if pos[u] > idx}
        later_sets.append(later)
        for a in later:
            for b in later:
                if a < b and b not in nbrs[a]:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
        bags.append(vset(later | {v}))
        bag_of[v] = idx
    for idx, v in enumerate(order):
        later = later_sets[idx]
        if later:
            nxt = min(later, key=lambda u: pos[u])
            edges.append((idx, bag_of[nxt]))
    return TreeDecomposition(tuple(bags), tuple(edges))


def treewidth_decomposition(G: Graph, k: int | None = None) -> TreeDecomposition:
    """Tree decomposition via the min-fill heuristic; if a width bound k is
    given and missed, fall back to exhaustive elimination orderings for
    small graphs."""
    if G.n == 0:
        return TreeDecomposition(((),), ())
    # min-fill greedy
    nbrs = [set(G.adj[v]) for v in range(G.n)]
    alive = set(range(G.n))
    order: list[int] = []
    while alive:
        def fill(v: int) -> tuple[int, int]:
            around = [u for u in nbrs[v] if u in alive]
            missing = sum(
                1
                for a, b in combinations(around, 2)
                if b not in nbrs[a]
            )
            return (missing, v)

        v = min(alive, key=fill)
        around = [u for u in nbrs[v] if u in alive]
        for a, b in combinations(around, 2):
            nbrs[a].add(b)
            nbrs[b].add(a)
        alive.remove(v)
        order.append(v)
    td = _decomposition_from_order(G, order)
    if k is None or td.width <= k:
        return td
    if G.n <= 11:
        from itertools import permutations

        best = td
        for perm in permutations(range(G.n)):
            cand = _decomposition_from_order(G, perm)
            if cand.width < best.width:
                best = cand
                if best.width <= k:
                    return best
        return best
    return td


def restore_properness(P: PathDecomposition) -> tuple[PathDecomposition, list[tuple[int, int]]]:
    """Drop bags contained in a neighbor bag, returning the interval
    partition of input bags that witnesses the coarsening."""
    bags = [set(b) for b in P.bags]
    intervals = [[i, i] for i in range(len(bags))]
    changed = True
    while changed:
        changed = False
        for i in range(len(bags) - 1):
            a, b = bags[i], bags[i + 1]
            if a <= b or b <= a:
                bags[i] = a | b
                intervals[i] = [intervals[i][0], intervals[i + 1][1]]
                del bags[i + 1]
                del intervals[i + 1]
                changed = True
                break
    return (
        PathDecomposition(tuple(vset(b) for b in bags)),
        [tuple(iv) for iv in intervals],
    )
