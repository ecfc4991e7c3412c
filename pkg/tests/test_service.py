import json

import pytest
from fastapi.testclient import TestClient

from expertbn.modelfile import dumps_model, loads_model
from expertbn.service import create_app
from expertbn.fixtures import (
    application_model,
    single_parent_demo_model,
    two_parent_demo_model,
)


@pytest.fixture()
def client():
    return TestClient(create_app())


def model_body(model, **extra):
    return {"model": json.loads(dumps_model(model)), **extra}


def open_session(client, model, **extra) -> str:
    r = client.post("/sessions", json=model_body(model, **extra))
    assert r.status_code == 200, r.text
    return r.json()["session_id"]


def empty_demo_model():
    """The single-parent demo dag with no statements."""
    mod = single_parent_demo_model()
    from expertbn.modelfile import Model

    return Model(dag=mod.dag, metadata=dict(mod.metadata))


class TestSessions:
    def test_open_and_questions(self, client):
        sid = open_session(client, empty_demo_model(), expert="e1")
        r = client.get(f"/sessions/{sid}/questions")
        assert r.status_code == 200
        questions = r.json()["questions"]
        assert len(questions) == 6
        assert questions[0]["target"]["kind"] == "marginal"

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope/questions").status_code == 404

    def test_answers_shrink_question_queue(self, client):
        sid = open_session(client, empty_demo_model(), expert="e1")
        r = client.put(
            f"/sessions/{sid}/answers",
            json={
                "answers": [
                    {
                        "target": {"kind": "marginal", "variable": "A", "state": "0"},
                        "value": "0.33",
                    }
                ]
            },
        )
        assert r.status_code == 200
        body = r.json()["answers"][0]
        assert body["accepted"] is True
        remaining = client.get(f"/sessions/{sid}/questions").json()["questions"]
        assert len(remaining) == 5

    def test_bad_answer_reported_not_fatal(self, client):
        sid = open_session(client, empty_demo_model())
        r = client.put(
            f"/sessions/{sid}/answers",
            json={
                "answers": [
                    {
                        "target": {"kind": "marginal", "variable": "A", "state": "0"},
                        "value": "1.7",
                    },
                    {
                        "target": {"kind": "marginal", "variable": "A", "state": "0"},
                        "value": "0.33",
                    },
                ]
            },
        )
        out = r.json()["answers"]
        assert out[0]["accepted"] is False
        assert out[0]["error"]["code"] == "out_of_range"
        assert out[1]["accepted"] is True

    def test_missing_body_field_400(self, client):
        sid = open_session(client, empty_demo_model())
        r = client.put(f"/sessions/{sid}/answers", json={"nope": []})
        assert r.status_code == 400
        assert "error" in r.json()


class TestConsistencyFeedback:
    def test_demo_values_flag_pair_and_deltas_arrive(self, client):
        sid = open_session(client, empty_demo_model(), expert="e1")
        demo = single_parent_demo_model()
        answers = [
            {
                "target": json.loads(dumps_model(demo))["statements"][i]["target"],
                "value": json.loads(dumps_model(demo))["statements"][i]["value"],
            }
            for i in range(7)
        ]
        r = client.put(f"/sessions/{sid}/answers", json={"answers": answers})
        per_answer = r.json()["answers"]
        # the last answer completes the pair; its delta reports inconsistency
        last = per_answer[-1]
        assert last["pairs"], "expected consistency deltas for the affected pair"
        pair = last["pairs"][0]
        assert pair["inconsistent"] is True
        assert pair["residual"] == "0.0655"

        full = client.get(f"/sessions/{sid}/consistency").json()
        assert full["ok"] is False
        assert full["pairs"][0]["residual"] == "0.0655"

    def test_two_parent_hull_violation_surfaces(self, client):
        sid = open_session(client, two_parent_demo_model())
        report = client.get(f"/sessions/{sid}/consistency").json()
        by_parent = {p["parent"]: p for p in report["pairs"]}
        assert by_parent["A"]["hull_flag"] is True
        assert by_parent["A"]["degenerate_boundary"] is True
        assert by_parent["B"]["hull_flag"] is False


class TestReconcileFlow:
    def test_propose_accept_clears_inconsistency(self, client):
        sid = open_session(client, single_parent_demo_model(),
                           tolerance="0.05")
        r = client.post(f"/sessions/{sid}/reconcile", json={"mode": "paper"})
        proposals = r.json()["proposals"]
        assert len(proposals) == 1
        aid = proposals[0]["id"]
        assert proposals[0]["new_value"].startswith("0.3492")

        r = client.post(f"/sessions/{sid}/actions/{aid}/accept")
        assert r.status_code == 200
        assert r.json()["consistency"]["ok"] is True

        # audit trail lands in the session model
        doc = client.get(f"/sessions/{sid}/model").json()
        assert len(doc["actions"]) == 1
        assert doc["actions"][0]["kind"] == "replace_conditional"

    def test_reject_leaves_store_untouched(self, client):
        sid = open_session(client, single_parent_demo_model())
        proposals = client.post(f"/sessions/{sid}/reconcile", json={}).json()["proposals"]
        aid = proposals[0]["id"]
        before = client.get(f"/sessions/{sid}/model").json()
        r = client.post(f"/sessions/{sid}/actions/{aid}/reject")
        assert r.status_code == 200
        after = client.get(f"/sessions/{sid}/model").json()
        assert before == after
        # accepting a rejected proposal is a 404
        assert client.post(f"/sessions/{sid}/actions/{aid}/accept").status_code == 404

    def test_conflicting_accept_409(self, client):
        sid = open_session(client, single_parent_demo_model())
        # two rounds of proposals against the same basis
        p1 = client.post(f"/sessions/{sid}/reconcile", json={"mode": "strict"}).json()["proposals"]
        p2 = client.post(f"/sessions/{sid}/reconcile", json={"mode": "paper"}).json()["proposals"]
        a1, a2 = p1[0]["id"], p2[0]["id"]
        assert client.post(f"/sessions/{sid}/actions/{a1}/accept").status_code == 200
        # the second proposal's recorded old value no longer matches
        r = client.post(f"/sessions/{sid}/actions/{a2}/accept")
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "stale_proposal"

    def test_accept_then_replay_audit_from_saved_model(self, client):
        sid = open_session(client, single_parent_demo_model())
        proposals = client.post(f"/sessions/{sid}/reconcile", json={}).json()["proposals"]
        client.post(f"/sessions/{sid}/actions/{proposals[0]['id']}/accept")
        doc = client.get(f"/sessions/{sid}/model").json()
        final = loads_model(json.dumps(doc))
        initial = single_parent_demo_model()
        for action in final.actions:
            initial.record_action(action)
        assert dumps_model(initial) == dumps_model(final)


class TestInferAndWhatif:
    def test_infer_synthesizes_on_demand(self, client):
        mod = application_model()
        r = client.post(
            "/infer",
            json=model_body(mod, query="E", evidence={"Ab": "high"}),
        )
        assert r.status_code == 200
        body = r.json()
        assert set(body["distribution"]) == {"degraded", "sound"}
        assert body["evidence"] == {"Ab": "high"}

    def test_vacuous_whatif_identical_posteriors(self, client):
        mod = application_model()
        ad = mod.store.marginal_distribution("Ad")
        scenario = {
            "name": "noop",
            "actions": [
                {
                    "task": {"id": "T_noop", "states": ["applied", "skipped"]},
                    "prior": {"applied": "0.5", "skipped": "0.5"},
                    "target": "Ad",
                    "table": {
                        "applied": {"adverse": repr(ad["adverse"]), "normal": repr(ad["normal"])},
                        "skipped": {"adverse": repr(ad["adverse"]), "normal": repr(ad["normal"])},
                    },
                }
            ],
        }
        r = client.post(
            "/whatif",
            json=model_body(mod, target="E", scenarios=[scenario]),
        )
        assert r.status_code == 200
        body = r.json()
        assert body["base"]["distribution"] == body["scenarios"]["noop"]["distribution"]

    def test_infer_validation_400(self, client):
        mod = application_model()
        r = client.post("/infer", json=model_body(mod))
        assert r.status_code == 400
        r = client.post("/infer", json={"query": "E"})
        assert r.status_code == 400

    def test_concurrent_sessions_are_isolated(self, client):
        sid1 = open_session(client, single_parent_demo_model())
        sid2 = open_session(client, two_parent_demo_model())
        p1 = client.post(f"/sessions/{sid1}/reconcile", json={}).json()["proposals"]
        client.post(f"/sessions/{sid1}/actions/{p1[0]['id']}/accept")
        doc2 = client.get(f"/sessions/{sid2}/model").json()
        assert doc2["actions"] == []
