"""Dense factor algebra and variable elimination.

A factor is a nonnegative table over a tuple of variable ids. Elimination
repeatedly multiplies the factors mentioning a variable and sums it out;
the order is chosen by the min-degree heuristic on the interaction graph,
with lexicographic tie-breaks so results and reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Factor", "min_degree_order", "eliminate"]


@dataclass(frozen=True)
class Factor:
    scope: tuple[str, ...]
    values: np.ndarray  # shape matches the scope's cardinalities

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.ndim != len(self.scope):
            raise ValueError(
                f"factor over {self.scope} has array of rank {self.values.ndim}"
            )

    def cardinality(self, var: str) -> int:
        return self.values.shape[self.scope.index(var)]

    def multiply(self, other: "Factor") -> "Factor":
        scope = list(self.scope) + [v for v in other.scope if v not in self.scope]
        a = _align(self, scope)
        b = _align(other, scope)
        return Factor(tuple(scope), a * b)

    def sum_out(self, var: str) -> "Factor":
        i = self.scope.index(var)
        scope = self.scope[:i] + self.scope[i + 1:]
        return Factor(scope, self.values.sum(axis=i))

    def restrict(self, var: str, index: int) -> "Factor":
        i = self.scope.index(var)
        scope = self.scope[:i] + self.scope[i + 1:]
        return Factor(scope, np.take(self.values, index, axis=i))

    def transpose(self, scope) -> "Factor":
        scope = tuple(scope)
        if set(scope) != set(self.scope):
            raise ValueError(f"cannot transpose {self.scope} to {scope}")
        perm = [self.scope.index(v) for v in scope]
        return Factor(scope, np.transpose(self.values, perm))

    def total(self) -> float:
        return float(self.values.sum())


def _align(f: Factor, scope: list[str]) -> np.ndarray:
    """View of the factor broadcastable over the given super-scope."""
    perm = sorted(range(len(f.scope)), key=lambda i: scope.index(f.scope[i]))
    arr = np.transpose(f.values, perm)
    shape = [1] * len(scope)
    j = 0
    for i, var in enumerate(scope):
        if var in f.scope:
            shape[i] = arr.shape[j]
            j += 1
    return arr.reshape(shape)


def min_degree_order(scopes, eliminate_vars) -> list[str]:
    """Min-degree elimination order over the interaction graph of the given
    factor scopes, restricted to ``eliminate_vars``; ties break
    lexicographically by id."""
    neighbors: dict[str, set[str]] = {}
    for scope in scopes:
        for v in scope:
            neighbors.setdefault(v, set()).update(w for w in scope if w != v)
    for v in eliminate_vars:
        neighbors.setdefault(v, set())
    remaining = set(eliminate_vars)
    order = []
    while remaining:
        v = min(remaining, key=lambda u: (len(neighbors[u] & set(neighbors)), u))
        order.append(v)
        nbrs = neighbors.pop(v)
        for a in nbrs:
            if a in neighbors:
                neighbors[a].discard(v)
                neighbors[a].update(b for b in nbrs if b != a and b in neighbors)
        remaining.discard(v)
    return order


def eliminate(factors, keep, order=None) -> Factor:
    """Multiply all factors and sum out everything not in ``keep``.

    Returns a factor whose scope is exactly the kept variables that appear
    somewhere in the inputs (in sorted order). Unnormalized: callers decide
    whether the total is a probability mass to divide by.
    """
    factors = list(factors)
    keep = set(keep)
    all_vars = {v for f in factors for v in f.scope}
    if order is None:
        order = min_degree_order([f.scope for f in factors], all_vars - keep)
    for var in order:
        touching = [f for f in factors if var in f.scope]
        if not touching:
            continue
        prod = touching[0]
        for f in touching[1:]:
            prod = prod.multiply(f)
        factors = [f for f in factors if var not in f.scope]
        factors.append(prod.sum_out(var))
    if not factors:
        return Factor((), np.asarray(1.0))
    result = factors[0]
    for f in factors[1:]:
        result = result.multiply(f)
    kept_sorted = tuple(sorted(result.scope))
    return result.transpose(kept_sorted)
