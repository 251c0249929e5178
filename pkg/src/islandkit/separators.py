"""Balanced-separator oracles and the recursive shattering construction.

shatter() removes a small vertex set X so that every component of G - X
has at most C vertices, following the Lipton-Tarjan style recursion: cut,
recurse on components, stop at size C.  The rank bookkeeping (log base
3/2 of subgraph sizes) is recorded in the trace and strictly decreases
along every root-leaf path because separations are 2/3-balanced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .graphs import (
    Graph,
    GraphValidityError,
    Separation,
    bfs_levels,
    components_within,
    induced_subgraph,
    vset,
)
from .islands import GraphTooLarge, as_fraction

BALANCE_NUM, BALANCE_DEN = 2, 3  # the fixed 2/3 balance constant


class SeparatorContractError(RuntimeError):
    """An oracle returned an unbalanced or over-budget separation."""


class ShatterBudgetError(RuntimeError):
    """No component bound within the retry limit met the epsilon budget."""


@dataclass(frozen=True)
class SeparatorBudget:
    """A named non-decreasing order bound f for balanced separators.

    Families: "constant" (f = c), "sqrt" (f = c*sqrt(n)) and
    "n_over_log2" (f = c*n/log^2 n).  The last two are significantly
    sublinear: the sum of f((3/2)^i)/(3/2)^i converges.
    """

    family: str
    coeff: float = 1.0

    def f(self, n: int) -> int:
        if n <= 1:
            return max(0, math.ceil(self.coeff))
        if self.family == "constant":
            return math.ceil(self.coeff)
        if self.family == "sqrt":
            return math.ceil(self.coeff * math.sqrt(n))
        if self.family == "n_over_log2":
            return math.ceil(self.coeff * n / math.log(n) ** 2)
        raise ValueError(f"unknown budget family {self.family!r}")

    def _term(self, i: int) -> float:
        x = 1.5**i
        if self.family == "constant":
            return self.coeff / x
        if self.family == "sqrt":
            return self.coeff / math.sqrt(x)
        if self.family == "n_over_log2":
            return self.coeff / (i * math.log(1.5)) ** 2 if i > 0 else self.coeff
        raise ValueError(f"unknown budget family {self.family!r}")

    def tail_sum(self, i0: int) -> float:
        """Upper bound on sum_{i >= i0} f((3/2)^i)/(3/2)^i."""
        if self.family in ("constant", "sqrt"):
            # geometric with ratio 1/1.5 resp. 1/sqrt(1.5)
            ratio = 1 / 1.5 if self.family == "constant" else 1 / math.sqrt(1.5)
            return self._term(i0) / (1 - ratio)
        # quadratic decay: sum_{i>=i0} c/(i ln 1.5)^2 <= c/ln(1.5)^2 * 1/(i0-1)
        i0 = max(i0, 2)
        return self.coeff / math.log(1.5) ** 2 / (i0 - 1)

    def is_significantly_sublinear(self) -> bool:
        return self.tail_sum(2) < math.inf and self.family in (
            "constant",
            "sqrt",
            "n_over_log2",
        )

    def component_bound(self, epsilon) -> int:
        """C = ceil((3/2)^i0) for the least i0 whose tail sum drops below
        (2/3) * epsilon, mirroring the shattering proof."""
        eps = float(as_fraction(epsilon))
        target = eps * BALANCE_NUM / BALANCE_DEN
        i0 = 0
        while self.tail_sum(i0) > target:
            i0 += 1
            if i0 > 10_000:
                raise ShatterBudgetError("budget family tail sum converges too slowly")
        return math.ceil(1.5**i0)


def _balanced_split(sizes: list[int], n_total: int) -> tuple[list[int], list[int]] | None:
    """Split component indices into two groups, each of total size at most
    (2/3) n_total.  Exact subset-sum for few components, greedy otherwise."""
    limit = BALANCE_NUM * n_total  # compare 3*size <= 2*n
    idx = sorted(range(len(sizes)), key=lambda i: -sizes[i])
    if len(sizes) <= 16:
        best = None
        for r in range(len(sizes) + 1):
            for group in combinations(range(len(sizes)), r):
                a = sum(sizes[i] for i in group)
                b = sum(sizes) - a
                if BALANCE_DEN * a <= limit and BALANCE_DEN * b <= limit:
                    best = (list(group), [i for i in range(len(sizes)) if i not in group])
                    return best
        return None
    g1: list[int] = []
    g2: list[int] = []
    s1 = s2 = 0
    for i in idx:
        if s1 <= s2:
            g1.append(i)
            s1 += sizes[i]
        else:
            g2.append(i)
            s2 += sizes[i]
    if BALANCE_DEN * s1 <= limit and BALANCE_DEN * s2 <= limit:
        return g1, g2
    return None


def brute_force_separator(G: Graph, max_order: int | None = None) -> Separation:
    """Minimum-order balanced separation of a tiny graph by exhaustion.

    Separations with both strict sides non-empty are preferred; if none
    exists at any order (e.g. complete graphs), empty strict sides are
    allowed.  Ties break lexicographically on the cut set.
    """
    n = G.n
    if n > 16:
        raise GraphTooLarge(f"n={n} exceeds brute-force separator cap 16")
    cap = n if max_order is None else min(max_order, n)

    def search(require_nonempty: bool) -> Separation | None:
        for k in range(cap + 1):
            for cut in combinations(range(n), k):
                rest = [v for v in range(n) if v not in set(cut)]
                comps = components_within(G, rest)
                sizes = [len(c) for c in comps]
                split = _balanced_split(sizes, n)
                if split is None:
                    continue
                g1, g2 = split
                side1 = sorted(v for i in g1 for v in comps[i])
                side2 = sorted(v for i in g2 for v in comps[i])
                if require_nonempty and (not side1 or not side2):
                    # try the exhaustive alternative groupings before giving up
                    found = None
                    for r in range(1, len(comps)):
                        for group in combinations(range(len(comps)), r):
                            a = sum(sizes[i] for i in group)
                            b = sum(sizes) - a
                            if (
                                BALANCE_DEN * a <= BALANCE_NUM * n
                                and BALANCE_DEN * b <= BALANCE_NUM * n
                            ):
                                found = group
                                break
                        if found:
                            break
                    if not found:
                        continue
                    side1 = sorted(v for i in found for v in comps[i])
                    side2 = sorted(
                        v for i in range(len(comps)) if i not in set(found) for v in comps[i]
                    )
                sep = Separation(vset(side1 + list(cut)), vset(side2 + list(cut)))
                sep.validate(G)
                return sep
        return None

    sep = search(require_nonempty=True)
    if sep is None:
        sep = search(require_nonempty=False)
    if sep is None:
        raise SeparatorContractError("no balanced separation within order cap")
    return sep


def bfs_level_separator(G: Graph) -> Separation:
    """Heuristic: remove the smallest BFS level (root 0) whose removal
    leaves components that split into two 2/3-balanced groups."""
    if G.n == 0:
        raise GraphValidityError("empty graph")
    levels = bfs_levels(G, 0)
    if sum(len(l) for l in levels) != G.n:
        raise GraphValidityError("bfs_level_separator requires a connected graph")
    best: tuple[int, int, Separation] | None = None  # (|level|, index, sep)
    for idx, level in enumerate(levels):
        rest = [v for v in range(G.n) if v not in set(level)]
        comps = components_within(G, rest)
        split = _balanced_split([len(c) for c in comps], G.n)
        if split is None:
            continue
        g1, g2 = split
        side1 = [v for i in g1 for v in comps[i]]
        side2 = [v for i in g2 for v in comps[i]]
        sep = Separation(vset(side1 + list(level)), vset(side2 + list(level)))
        key = (len(level), idx)
        if best is None or key < best[:2]:
            best = (len(level), idx, sep)
    assert best is not None  # some level always balances
    best[2].validate(G)
    return best[2]


@dataclass(frozen=True)
class TraceNode:
    node: int
    parent: int  # -1 for roots
    size: int
    separator_size: int  # 0 for leaves
    rank: int

    def to_json(self) -> dict:
        return {
            "node": self.node,
            "parent": self.parent,
            "size": self.size,
            "separator_size": self.separator_size,
            "rank": self.rank,
        }


@dataclass(frozen=True)
class ShatterReport:
    X: tuple[int, ...]
    C: int
    epsilon_used: Fraction
    tree_trace: tuple[TraceNode, ...]

    def to_json(self) -> dict:
        return {
            "X": list(self.X),
            "C": self.C,
            "epsilon_used": str(self.epsilon_used),
            "tree_trace": [t.to_json() for t in self.tree_trace],
        }


SeparatorOracle = Callable[[Graph], Separation]


def _rank(size: int) -> int:
    return math.floor(math.log(size) / math.log(1.5)) if size >= 1 else 0


def _shatter_once(
    G: Graph, C: int, oracle: SeparatorOracle, budget: SeparatorBudget | None
) -> tuple[set[int], list[TraceNode]]:
    X: set[int] = set()
    trace: list[TraceNode] = []
    counter = 0
    # stack of (vertex subset, parent trace id); top-level components are roots
    stack: list[tuple[tuple[int, ...], int]] = [
        (comp, -1) for comp in reversed(components_within(G, range(G.n)))
    ]
    while stack:
        subset, parent = stack.pop()
        node_id = counter
        counter += 1
        size = len(subset)
        if size <= C:
            trace.append(TraceNode(node_id, parent, size, 0, _rank(size)))
            continue
        sub, relabel = induced_subgraph(G, subset)
        back = {new: old for old, new in relabel.items()}
        sep = oracle(sub)
        sep.validate(sub)
        cut_local = sep.cut
        strict_left = len(set(sep.left) - set(sep.right))
        strict_right = len(set(sep.right) - set(sep.left))
        if BALANCE_DEN * strict_left > BALANCE_NUM * size or (
            BALANCE_DEN * strict_right > BALANCE_NUM * size
        ):
            raise SeparatorContractError(
                f"oracle returned unbalanced separation at node {node_id} (size {size})"
            )
        if budget is not None and len(cut_local) > budget.f(size):
            raise SeparatorContractError(
                f"oracle exceeded budget f({size})={budget.f(size)} at node {node_id}"
            )
        if not cut_local:
            raise SeparatorContractError(
                f"oracle returned an empty cut for a connected subgraph at node {node_id}"
            )
        cut = {back[v] for v in cut_local}
        X.update(cut)
        trace.append(TraceNode(node_id, parent, size, len(cut), _rank(size)))
        rest = set(subset) - cut
        for comp in reversed(components_within(G, rest)):
            stack.append((comp, node_id))
    return X, trace


def verify_shatter(G: Graph, X, C: int, epsilon) -> None:
    """Re-check the shatter post-conditions from scratch."""
    eps = as_fraction(epsilon)
    Xs = set(X)
    if Fraction(len(Xs)) > eps * G.n:
        raise ShatterBudgetError(f"|X|={len(Xs)} exceeds epsilon*n={eps * G.n}")
    for comp in components_within(G, set(range(G.n)) - Xs):
        if len(comp) > C:
            raise ShatterBudgetError(f"component of size {len(comp)} exceeds C={C}")


def shatter(
    G: Graph,
    epsilon,
    oracle: SeparatorOracle,
    budget: SeparatorBudget | None = None,
    max_retries: int = 20,
) -> ShatterReport:
    """Remove X with |X| <= epsilon*n so all components of G - X have <= C
    vertices.

    With a provable budget, C comes from the budget's tail sum (as in the
    proof) and any oracle violation is an error.  Without one, C starts
    small and doubles until the epsilon budget is met post-hoc.
    """
    eps = as_fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if G.n == 0:
        return ShatterReport((), 0, eps, ())
    if budget is not None:
        candidates = [budget.component_bound(eps)]
    else:
        c0 = max(2, math.ceil(math.sqrt(G.n)))
        candidates = []
        c = c0
        for _ in range(max_retries):
            candidates.append(c)
            c *= 2
    last_err: Exception | None = None
    for C in candidates:
        if C >= G.n:
            # single leaf per component, X empty
            X_set: set[int] = set()
            trace = [
                TraceNode(i, -1, len(comp), 0, _rank(len(comp)))
                for i, comp in enumerate(components_within(G, range(G.n)))
            ]
            verify_shatter(G, X_set, C, eps)
            return ShatterReport((), C, eps, tuple(trace))
        X_set, trace = _shatter_once(G, C, oracle, budget)
        try:
            verify_shatter(G, X_set, C, eps)
        except ShatterBudgetError as err:
            last_err = err
            continue
        return ShatterReport(tuple(sorted(X_set)), C, eps, tuple(trace))
    raise ShatterBudgetError(
        f"no component bound met the epsilon budget after {len(candidates)} tries: {last_err}"
    )


def default_shatterer(G: Graph, epsilon) -> ShatterReport:
    """BFS-level oracle with adaptive component bound; the standard choice
    for the sparse island extraction."""
    return shatter(G, epsilon, bfs_level_separator)
