"""Log-linear view of a network: generating classes, representability,
interaction-order reduction and parameter counting.

A network over discrete variables is equivalent to an unsaturated
log-linear model whose generating class is the set of moral-graph families.
Dropping every interaction above order two (keeping only the child-parent
pairs, plus any expert-retained triples) is what makes elicitation cheap:
only marginals and first-order conditionals remain to be asked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ExpertBnError
from .graph import Dag, moralize

__all__ = [
    "LogLinearModel",
    "InteractionSpec",
    "UnknownInteraction",
    "MissingCardinality",
    "NodeCount",
    "ParameterCounts",
    "COUNT_CONVENTIONS",
    "bn_to_loglinear",
    "check_representable",
    "reduce_to_order_two",
    "count_parameters",
]


class UnknownInteraction(ExpertBnError):
    code = "unknown_interaction"

    def __init__(self, child: str, pair: tuple[str, str]):
        self.child = child
        self.pair = tuple(sorted(pair))
        super().__init__(
            f"interaction ({self.pair[0]},{self.pair[1]}) -> {child}: both members "
            f"must be parents of the child"
        )


class MissingCardinality(ExpertBnError):
    code = "missing_cardinality"

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"no cardinality known for variable {variable!r}")


@dataclass(frozen=True)
class InteractionSpec:
    """An expert-retained three-way association: one child and two of its
    parents whose joint influence is elicited directly."""

    child: str
    parent_pair: tuple[str, str]

    def __post_init__(self):
        a, b = self.parent_pair
        object.__setattr__(self, "parent_pair", (a, b) if a <= b else (b, a))

    def validate(self, dag: Dag) -> None:
        parents = set(dag.parents(self.child))
        if not set(self.parent_pair) <= parents or len(set(self.parent_pair)) != 2:
            raise UnknownInteraction(self.child, self.parent_pair)


@dataclass(frozen=True)
class LogLinearModel:
    """A generating class: the maximal variable subsets whose interaction
    terms (and all their sub-terms) are retained.

    Canonical form: no generator is a subset of another, every variable
    appears in at least one generator.
    """

    variables: tuple[str, ...]
    generating_class: tuple[frozenset[str], ...]

    @staticmethod
    def from_generators(variables, generators) -> "LogLinearModel":
        gens = _maximalize(generators)
        variables = tuple(sorted(variables))
        covered = set().union(*gens) if gens else set()
        missing = set(variables) - covered
        if missing:
            raise ExpertBnError(f"variables outside every generator: {sorted(missing)}")
        return LogLinearModel(variables=variables, generating_class=gens)

    def contains(self, subset) -> bool:
        s = frozenset(subset)
        return any(s <= g for g in self.generating_class)

    def covered_pairs(self) -> set[frozenset[str]]:
        pairs: set[frozenset[str]] = set()
        for g in self.generating_class:
            for a, b in itertools.combinations(sorted(g), 2):
                pairs.add(frozenset((a, b)))
        return pairs

    def notation(self) -> str:
        """Bracket notation, e.g. ``[ABC][AD][BD]`` (members sorted)."""
        parts = ["[" + "".join(sorted(g)) + "]" for g in self.generating_class]
        return "".join(parts)


def _maximalize(generators) -> tuple[frozenset[str], ...]:
    gens = {frozenset(g) for g in generators}
    maximal = [g for g in gens if not any(g < h for h in gens)]
    return tuple(sorted(maximal, key=lambda g: (len(g), tuple(sorted(g)))))


def bn_to_loglinear(dag: Dag) -> LogLinearModel:
    """Generating class of the equivalent log-linear model: the maximal
    moral-graph families."""
    return LogLinearModel.from_generators(dag.variable_ids, moralize(dag))


def check_representable(model: LogLinearModel) -> list[frozenset[str]]:
    """Subsets blocking a network representation.

    A subset S (|S| >= 3) is a violation when every 2-subset of S is
    retained as a direct association (a maximal pair generator) while S
    itself is not covered. Pairs that only ride inside a larger generator
    do not count: that generator already carries their joint term, which is
    why a family model like [ABC][AD][BD] passes even though A-B, A-D and
    B-D are all covered. A triangle of maximal pair generators, by
    contrast, cannot be the family set of any acyclic graph (each pair
    would have to be a distinct child's family, closing a directed cycle),
    so those sets are exactly the ones the higher-order repair must add.

    Returns all violating subsets, sorted; empty means representable.
    """
    pair_graph: dict[str, set[str]] = {v: set() for v in model.variables}
    for g in model.generating_class:
        if len(g) != 2:
            continue
        a, b = sorted(g)
        pair_graph[a].add(b)
        pair_graph[b].add(a)

    violations = [
        clique for clique in _cliques_of_size_3_plus(pair_graph)
        if not model.contains(clique)
    ]
    return sorted(violations, key=lambda s: (len(s), tuple(sorted(s))))


def _cliques_of_size_3_plus(adj: dict[str, set[str]]) -> list[frozenset[str]]:
    """All cliques of size >= 3, grown incrementally from edges.

    The pair graphs seen here are sparse (child-parent pairs of a DAG), so
    plain breadth-wise expansion is ample.
    """
    order = sorted(adj)
    rank = {v: i for i, v in enumerate(order)}
    edges = {
        (a, b)
        for a in order
        for b in adj[a]
        if rank[a] < rank[b]
    }
    current = {tuple(sorted(e)) for e in edges}
    out: list[frozenset[str]] = []
    while current:
        nxt: set[tuple[str, ...]] = set()
        for clique in current:
            last = clique[-1]
            # extend only with higher-ranked common neighbours: each clique
            # is generated exactly once, in sorted member order
            common = set.intersection(*(adj[v] for v in clique))
            for v in sorted(common):
                if rank[v] > rank[last]:
                    nxt.add(clique + (v,))
        out.extend(frozenset(c) for c in nxt)
        current = nxt
    return out


def reduce_to_order_two(
    dag: Dag,
    keep: set[InteractionSpec] | frozenset[InteractionSpec] = frozenset(),
) -> tuple[LogLinearModel, list[frozenset[str]]]:
    """Drop all interactions above order two, keeping child-parent pairs
    plus the expert-retained triples, then repair representability.

    Repair is conservative: while violations exist, the violating set is
    added as a generator (smallest, lexicographically first, first) and
    logged. Adding never discards elicited associations, unlike deletion.

    Returns (model, repair_log).
    """
    for spec in keep:
        spec.validate(dag)

    generators: list[frozenset[str]] = []
    for fam in dag.families():
        if not fam.parents:
            generators.append(frozenset({fam.child}))
        for p in fam.parents:
            generators.append(frozenset({fam.child, p}))
    for spec in keep:
        generators.append(frozenset({spec.child, *spec.parent_pair}))

    model = LogLinearModel.from_generators(dag.variable_ids, generators)
    repair_log: list[frozenset[str]] = []
    while True:
        violations = check_representable(model)
        if not violations:
            break
        add = violations[0]
        repair_log.append(add)
        model = LogLinearModel.from_generators(
            model.variables, list(model.generating_class) + [add]
        )
    return model, repair_log


# -- parameter counting ----------------------------------------------------

COUNT_CONVENTIONS = ("paper", "prune-binary", "full")

_CONVENTION_NOTES = {
    "paper": "one retained first-order conditional per child-parent edge",
    "prune-binary": (
        "one retained conditional per binary parent (the complement-state "
        "conditional is pruned); every state retained for parents with 3+ states"
    ),
    "full": "every parent state retained, nothing pruned",
}


@dataclass(frozen=True)
class NodeCount:
    variable: str
    classical: int
    reduced_marginals: int
    reduced_conditionals: int

    @property
    def reduced_total(self) -> int:
        return self.reduced_marginals + self.reduced_conditionals


@dataclass(frozen=True)
class ParameterCounts:
    convention: str
    convention_note: str
    nodes: tuple[NodeCount, ...]

    @property
    def classical_total(self) -> int:
        return sum(n.classical for n in self.nodes)

    @property
    def reduced_total(self) -> int:
        return sum(n.reduced_total for n in self.nodes)

    def node(self, vid: str) -> NodeCount:
        for n in self.nodes:
            if n.variable == vid:
                return n
        raise KeyError(vid)


def count_parameters(
    dag: Dag,
    convention: str = "paper",
    cardinalities: dict[str, int] | None = None,
) -> ParameterCounts:
    """Free-parameter counts per node, classical vs reduced.

    classical: a root costs (card-1); a child costs (card-1) x the product
    of its parent cardinalities (one free row entry per parent combination).

    reduced: every variable costs its marginal block (card-1); each
    child-parent edge costs retained first-order conditionals per the
    chosen convention (see ``COUNT_CONVENTIONS``). Conditional costs are
    attributed to the child node.

    ``cardinalities`` overrides the state counts from the Dag (useful for
    exploring assignments); every variable must then be present.
    """
    if convention not in COUNT_CONVENTIONS:
        raise ExpertBnError(
            f"unknown convention {convention!r}; pick one of {COUNT_CONVENTIONS}"
        )

    def card(vid: str) -> int:
        if cardinalities is not None:
            if vid not in cardinalities:
                raise MissingCardinality(vid)
            return cardinalities[vid]
        return dag.cardinality(vid)

    nodes = []
    for vid in dag.variable_ids:
        parents = dag.parents(vid)
        classical = card(vid) - 1
        for p in parents:
            classical *= card(p)
        conditionals = 0
        for p in parents:
            if convention == "paper":
                retained = 1
            elif convention == "prune-binary":
                retained = 1 if card(p) == 2 else card(p)
            else:
                retained = card(p)
            conditionals += (card(vid) - 1) * retained
        nodes.append(
            NodeCount(
                variable=vid,
                classical=classical,
                reduced_marginals=card(vid) - 1,
                reduced_conditionals=conditionals,
            )
        )
    return ParameterCounts(
        convention=convention,
        convention_note=_CONVENTION_NOTES[convention],
        nodes=tuple(nodes),
    )
