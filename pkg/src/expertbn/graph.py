"""Discrete variables and directed acyclic graph substrate.

A network structure is a set of named discrete variables (each with an
ordered list of at least two exclusive states) plus directed edges. The
``Dag`` object is validated once at construction and immutable afterwards,
so it can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExpertBnError

__all__ = [
    "Variable",
    "Dag",
    "Family",
    "CycleDetected",
    "UnknownEndpoint",
    "DuplicateEdge",
    "SelfLoop",
    "InvalidVariable",
    "validate_dag",
    "topological_order",
    "moralize",
]


class CycleDetected(ExpertBnError):
    """The edge set contains a directed cycle."""

    code = "cycle_detected"

    def __init__(self, path: list[str]):
        self.path = list(path)
        super().__init__("directed cycle: " + " -> ".join(self.path))


class UnknownEndpoint(ExpertBnError):
    """An edge references a variable id that was not declared."""

    code = "unknown_endpoint"

    def __init__(self, edge: tuple[str, str], missing: str):
        self.edge = edge
        self.missing = missing
        super().__init__(f"edge {edge[0]}->{edge[1]} references unknown variable {missing!r}")


class DuplicateEdge(ExpertBnError):
    code = "duplicate_edge"

    def __init__(self, edge: tuple[str, str]):
        self.edge = edge
        super().__init__(f"edge {edge[0]}->{edge[1]} appears more than once")


class SelfLoop(ExpertBnError):
    """Rejected at edge insertion rather than by the cycle check."""

    code = "self_loop"

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"self-loop on {variable!r}")


class InvalidVariable(ExpertBnError):
    code = "invalid_variable"


@dataclass(frozen=True)
class Variable:
    """A discrete variable with ordered, exclusive states.

    State order as given at construction defines table axes everywhere;
    nothing is ever re-sorted implicitly. The first state is conventionally
    the "event" state in questionnaires; the last is the reference state
    whose probability is derived by complement.
    """

    id: str
    states: tuple[str, ...]
    description: str = ""
    group: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.id:
            raise InvalidVariable("variable id must be a non-empty string")
        if len(self.states) < 2:
            raise InvalidVariable(f"variable {self.id!r} needs at least 2 states")
        if len(set(self.states)) != len(self.states):
            raise InvalidVariable(f"variable {self.id!r} has duplicate state labels")

    @property
    def cardinality(self) -> int:
        return len(self.states)

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise InvalidVariable(f"variable {self.id!r} has no state {state!r}") from None


@dataclass(frozen=True)
class Family:
    """One child with its full parent set (parents in sorted-id order)."""

    child: str
    parents: tuple[str, ...]

    def members(self) -> tuple[str, ...]:
        return (self.child, *self.parents)


class Dag:
    """Validated directed acyclic graph over a fixed variable set.

    Immutable after construction. Use :func:`validate_dag` to build one;
    the constructor performs the same checks.
    """

    def __init__(self, variables, edges):
        vs = list(variables)
        self._variables: dict[str, Variable] = {}
        for v in vs:
            if v.id in self._variables:
                raise InvalidVariable(f"duplicate variable id {v.id!r}")
            self._variables[v.id] = v

        self._parents: dict[str, list[str]] = {v.id: [] for v in vs}
        self._children: dict[str, list[str]] = {v.id: [] for v in vs}
        seen: set[tuple[str, str]] = set()
        for src, dst in edges:
            if src == dst:
                raise SelfLoop(src)
            for end in (src, dst):
                if end not in self._variables:
                    raise UnknownEndpoint((src, dst), end)
            if (src, dst) in seen:
                raise DuplicateEdge((src, dst))
            seen.add((src, dst))
            self._parents[dst].append(src)
            self._children[src].append(dst)
        for vid in self._variables:
            self._parents[vid].sort()
            self._children[vid].sort()
        self._edges = frozenset(seen)
        self._assert_acyclic()
        self._depth = self._compute_depths()

    # -- structure queries -------------------------------------------------

    @property
    def variable_ids(self) -> list[str]:
        return sorted(self._variables)

    @property
    def variables(self) -> list[Variable]:
        return [self._variables[i] for i in self.variable_ids]

    @property
    def edges(self) -> set[tuple[str, str]]:
        return set(self._edges)

    def variable(self, vid: str) -> Variable:
        try:
            return self._variables[vid]
        except KeyError:
            raise InvalidVariable(f"unknown variable {vid!r}") from None

    def has_variable(self, vid: str) -> bool:
        return vid in self._variables

    def parents(self, vid: str) -> tuple[str, ...]:
        return tuple(self._parents[vid])

    def children(self, vid: str) -> tuple[str, ...]:
        return tuple(self._children[vid])

    def roots(self) -> list[str]:
        return [v for v in self.variable_ids if not self._parents[v]]

    def family(self, child: str) -> Family:
        return Family(child=child, parents=self.parents(child))

    def families(self) -> list[Family]:
        """One family per variable; roots get an empty parent tuple."""
        return [self.family(v) for v in self.variable_ids]

    def ancestors(self, vids) -> set[str]:
        """All strict ancestors of the given variables."""
        out: set[str] = set()
        stack = list(vids)
        while stack:
            v = stack.pop()
            for p in self._parents[v]:
                if p not in out:
                    out.add(p)
                    stack.append(p)
        return out

    def cardinality(self, vid: str) -> int:
        return self.variable(vid).cardinality

    def depth(self, vid: str) -> int:
        return self._depth[vid]

    # -- internals ----------------------------------------------------------

    def _assert_acyclic(self):
        # Kahn's algorithm; on failure, walk the leftover subgraph to name
        # one concrete cycle for the error message.
        indeg = {v: len(self._parents[v]) for v in self._variables}
        queue = [v for v, d in indeg.items() if d == 0]
        done = 0
        while queue:
            v = queue.pop()
            done += 1
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        if done == len(self._variables):
            return
        remaining = {v for v, d in indeg.items() if d > 0}
        start = sorted(remaining)[0]
        path, seen = [start], {start}
        v = start
        while True:
            v = sorted(p for p in self._parents[v] if p in remaining)[0]
            if v in seen:
                cycle = path[path.index(v):] + [v]
                cycle.reverse()
                raise CycleDetected(cycle)
            path.append(v)
            seen.add(v)

    def _compute_depths(self) -> dict[str, int]:
        depth: dict[str, int] = {}

        def rec(v: str) -> int:
            if v not in depth:
                depth[v] = 1 + max((rec(p) for p in self._parents[v]), default=-1)
            return depth[v]

        for v in self._variables:
            rec(v)
        return depth

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self.variables == other.variables and self._edges == other._edges

    def __repr__(self):
        return f"Dag({len(self._variables)} variables, {len(self._edges)} edges)"


def validate_dag(variables, edges) -> Dag:
    """Build a validated Dag or raise a structured error.

    Errors: :class:`CycleDetected` (with one concrete cycle),
    :class:`UnknownEndpoint`, :class:`DuplicateEdge`, :class:`SelfLoop`.
    """
    return Dag(variables, edges)


def topological_order(dag: Dag) -> list[str]:
    """Deterministic topological order of all variable ids.

    Nodes are ranked by depth (longest path from a root) and then
    lexicographically by id, so reports are reproducible and variables at
    the same structural level stay together.
    """
    return sorted(dag.variable_ids, key=lambda v: (dag.depth(v), v))


def moralize(dag: Dag) -> list[frozenset[str]]:
    """Clique families of the moral graph: {child} ∪ parents per child,
    plus a singleton per root. These are the generators handed to the
    log-linear layer.
    """
    out = []
    for fam in dag.families():
        out.append(frozenset(fam.members()))
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))
