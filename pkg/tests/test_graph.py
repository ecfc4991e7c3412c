import pytest
from hypothesis import given, settings, strategies as st

from expertbn.graph import (
    CycleDetected,
    DuplicateEdge,
    SelfLoop,
    UnknownEndpoint,
    Variable,
    moralize,
    topological_order,
    validate_dag,
)
from expertbn.fixtures import application_dag, four_variable_dag


def binary(*names):
    return [Variable(n, ("yes", "no")) for n in names]


class TestValidateDag:
    def test_diamond_is_valid(self):
        dag = four_variable_dag()
        assert dag.parents("C") == ("A", "B")
        assert dag.parents("A") == ("D",)
        assert dag.children("D") == ("A", "B")

    def test_empty_edges(self):
        dag = validate_dag(binary("A"), [])
        assert dag.parents("A") == ()
        assert dag.roots() == ["A"]

    def test_two_cycle(self):
        with pytest.raises(CycleDetected) as exc:
            validate_dag(binary("A", "B"), [("A", "B"), ("B", "A")])
        path = exc.value.path
        assert path[0] == path[-1]
        assert set(path) == {"A", "B"}

    def test_longer_cycle_named(self):
        with pytest.raises(CycleDetected) as exc:
            validate_dag(
                binary("A", "B", "C", "D"),
                [("A", "B"), ("B", "C"), ("C", "A"), ("A", "D")],
            )
        path = exc.value.path
        assert path[0] == path[-1]
        assert len(path) == 4

    def test_unknown_endpoint(self):
        with pytest.raises(UnknownEndpoint):
            validate_dag(binary("A"), [("A", "B")])

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdge):
            validate_dag(binary("A", "B"), [("A", "B"), ("A", "B")])

    def test_self_loop_rejected_at_insertion(self):
        with pytest.raises(SelfLoop):
            validate_dag(binary("A"), [("A", "A")])

    def test_variable_needs_two_states(self):
        from expertbn.graph import InvalidVariable

        with pytest.raises(InvalidVariable):
            Variable("A", ("only",))
        with pytest.raises(InvalidVariable):
            Variable("A", ("x", "x"))


class TestTopologicalOrder:
    def test_diamond(self):
        assert topological_order(four_variable_dag()) == ["D", "A", "B", "C"]

    def test_isolated_node(self):
        dag = validate_dag(binary("Z"), [])
        assert topological_order(dag) == ["Z"]

    def test_application_groups_in_order(self):
        dag = application_dag()
        order = topological_order(dag)
        group_rank = {"environment": 0, "degradation": 1, "observation": 2, "interest": 3}
        ranks = [group_rank[dag.variable(v).group] for v in order]
        assert ranks == sorted(ranks)
        assert order[-1] == "E"

    def test_parents_precede_children_on_application(self):
        dag = application_dag()
        pos = {v: i for i, v in enumerate(topological_order(dag))}
        for src, dst in dag.edges:
            assert pos[src] < pos[dst]


class TestMoralize:
    def test_diamond_generators(self):
        gens = set(moralize(four_variable_dag()))
        assert gens == {
            frozenset({"A", "D"}),
            frozenset({"B", "D"}),
            frozenset({"C", "A", "B"}),
            frozenset({"D"}),
        }

    def test_edgeless(self):
        dag = validate_dag(binary("A", "B"), [])
        assert set(moralize(dag)) == {frozenset({"A"}), frozenset({"B"})}

    def test_application_has_22_families(self):
        dag = application_dag()
        fams = moralize(dag)
        assert len(fams) == 22
        # each non-root appears as the child of exactly one family
        by_child = [f for f in fams if len(f) > 1]
        assert len(by_child) == 13
        assert frozenset({"E", "O1", "O5", "O2p"}) in fams


# -- properties over random dags -------------------------------------------------

@st.composite
def random_dag(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    names = [f"N{i}" for i in range(n)]
    edges = []
    for j in range(1, n):
        for i in range(j):
            if draw(st.booleans()):
                edges.append((names[i], names[j]))
    return validate_dag(binary(*names), edges)


@given(random_dag())
@settings(max_examples=60, deadline=None)
def test_topological_order_is_edge_respecting_permutation(dag):
    order = topological_order(dag)
    assert sorted(order) == dag.variable_ids
    pos = {v: i for i, v in enumerate(order)}
    for src, dst in dag.edges:
        assert pos[src] < pos[dst]


@given(random_dag())
@settings(max_examples=60, deadline=None)
def test_moralize_covers_every_variable(dag):
    fams = moralize(dag)
    covered = set().union(*fams)
    assert covered == set(dag.variable_ids)
    children = [f for f in fams if len(f) > 1 or not dag.parents(next(iter(f)))]
    # every variable is the child of exactly one family
    assert len(fams) == len(dag.variable_ids)


@given(
    st.lists(
        st.tuples(st.sampled_from("ABCD"), st.sampled_from("ABCD")),
        max_size=8,
    )
)
@settings(max_examples=80, deadline=None)
def test_validate_dag_is_total(edges):
    from expertbn.errors import ExpertBnError

    try:
        dag = validate_dag(binary("A", "B", "C", "D"), edges)
    except ExpertBnError as exc:
        assert exc.code in {"cycle_detected", "duplicate_edge", "self_loop"}
        assert exc.payload()["code"] == exc.code
    else:
        assert dag.edges == set(edges)
