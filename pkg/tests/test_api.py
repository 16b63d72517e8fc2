"""The play service: sessions, legality, engine replies, analysis."""

from __future__ import annotations

import json
import random

import pytest
from fastapi.testclient import TestClient

import setnim as sn
from setnim.api import create_app, session_from_json


@pytest.fixture()
def client():
    return TestClient(create_app())


def new_game(client, spec, heights, first="human"):
    response = client.post(
        "/games", json={"spec": spec, "heights": heights, "first": first}
    )
    assert response.status_code == 201, response.text
    return response.json()


NN63 = {"family": "NN", "n": 6, "k": 3}
NN10 = {"family": "NN", "n": 10, "k": 5}


class TestSessions:
    def test_create_and_fetch(self, client):
        session = new_game(client, {"family": "NN", "n": 5, "k": 3}, [3, 1, 2, 1, 3])
        assert session["status"] == "ongoing"
        assert session["to_move"] == "human"
        again = client.get(f"/games/{session['id']}").json()
        assert again == session

    def test_terminal_start_rejected(self, client):
        response = client.post(
            "/games", json={"spec": NN63, "heights": [0, 0, 0, 0, 0, 0]}
        )
        assert response.status_code == 400
        assert "degenerate" in response.json()["error"]["message"]

    def test_unknown_session(self, client):
        response = client.get("/games/nope")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == 404

    def test_bad_spec_rejected(self, client):
        response = client.post(
            "/games", json={"spec": {"family": "NN", "n": 5, "k": 9}, "heights": [1] * 5}
        )
        assert response.status_code == 400

    def test_snapshot_round_trip(self, client, tmp_path):
        snap_client = TestClient(create_app(snapshot_dir=str(tmp_path)))
        session = new_game(snap_client, NN63, [1, 1, 1, 1, 1, 1])
        snap_client.post(
            f"/games/{session['id']}/moves",
            json={"set": 1, "removals": [1, 0, 0, 0, 0, 0]},
        )
        raw = json.loads((tmp_path / f"{session['id']}.json").read_text())
        rebuilt = session_from_json(raw)
        assert list(rebuilt.position) == [0, 1, 1, 1, 1, 1]
        assert rebuilt.status == "ongoing"

    def test_replay_determinism(self, client):
        session = new_game(client, NN63, [2, 1, 1, 1, 1, 2])
        client.post(
            f"/games/{session['id']}/moves",
            json={"set": 1, "removals": [1, 1, 0, 0, 0, 0]},
        )
        client.post(f"/games/{session['id']}/engine-move")
        state = client.get(f"/games/{session['id']}").json()
        rebuilt = session_from_json(state)
        assert list(rebuilt.position) == state["heights"]
        assert rebuilt.status == state["status"]


class TestHumanMoves:
    def test_legal_move_updates_history(self, client):
        session = new_game(client, NN63, [1, 1, 1, 1, 1, 1])
        response = client.post(
            f"/games/{session['id']}/moves",
            json={"set": 2, "removals": [0, 1, 1, 0, 0, 0]},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["heights"] == [1, 0, 0, 1, 1, 1]
        assert body["to_move"] == "engine"
        assert len(body["history"]) == 1

    @pytest.mark.parametrize(
        "move,fragment",
        [
            ({"set": 1, "removals": [9, 0, 0, 0, 0, 0]}, "exceeds height"),
            ({"set": 1, "removals": [0, 0, 0, 0, 0, 0]}, "at least one token"),
            ({"set": 1, "removals": [0, 0, 0, 1, 0, 0]}, "outside the chosen move set"),
            ({"set": 40, "removals": [1, 0, 0, 0, 0, 0]}, "out of range"),
        ],
    )
    def test_illegal_moves_surface_the_invariant(self, client, move, fragment):
        session = new_game(client, NN63, [1, 1, 1, 1, 1, 1])
        response = client.post(f"/games/{session['id']}/moves", json=move)
        assert response.status_code == 400
        assert fragment in response.json()["error"]["message"]

    def test_wrong_turn_conflicts(self, client):
        session = new_game(client, NN63, [1, 1, 1, 1, 1, 1], first="engine")
        response = client.post(
            f"/games/{session['id']}/moves",
            json={"set": 1, "removals": [1, 0, 0, 0, 0, 0]},
        )
        assert response.status_code == 409

    def test_winning_human_move_ends_the_game(self, client):
        session = new_game(client, {"family": "NN", "n": 3, "k": 2}, [1, 0, 1])
        response = client.post(
            f"/games/{session['id']}/moves",
            json={"set": 3, "removals": [1, 0, 1]},
        )
        body = response.json()
        assert body["status"] == "won" and body["winner"] == "human"
        follow_up = client.post(f"/games/{session['id']}/engine-move")
        assert follow_up.status_code == 409


class TestEngine:
    def test_certified_reply_at_the_worked_position(self, client):
        session = new_game(
            client, NN10, [2, 15, 8, 4, 5, 4, 5, 5, 5, 8], first="engine"
        )
        response = client.post(f"/games/{session['id']}/engine-move")
        assert response.status_code == 200
        body = response.json()
        assert body["move"] == {
            "set": 3, "removals": [0, 0, 5, 4, 5, 4, 3, 0, 0, 0],
        }
        assert "note" not in body
        assert body["session"]["heights"] == [2, 15, 3, 0, 0, 0, 2, 5, 5, 8]

    def test_stalling_reply_is_flagged_and_deterministic(self, client):
        spec = {"family": "NN", "n": 4, "k": 2}
        first = new_game(client, spec, [1, 2, 1, 2], first="engine")
        r1 = client.post(f"/games/{first['id']}/engine-move").json()
        assert r1["note"] == "no winning move exists"
        second = new_game(client, spec, [1, 2, 1, 2], first="engine")
        r2 = client.post(f"/games/{second['id']}/engine-move").json()
        assert r1["move"] == r2["move"]
        # one token off the tallest stack (ties broken low)
        assert r1["move"]["removals"] == [0, 1, 0, 0]

    def test_budget_errors_surface_as_service_unavailable(self):
        client = TestClient(create_app(oracle=sn.Oracle(max_options=5)))
        session = new_game(
            client, {"family": "SET", "n": 3, "move_sets": [[1, 2], [2, 3]]},
            [3, 3, 3], first="engine",
        )
        response = client.post(f"/games/{session['id']}/engine-move")
        assert response.status_code == 503


class TestAnalysisAndHint:
    def test_balanced_report(self, client):
        session = new_game(client, NN10, [4, 20, 0, 0, 0, 4, 2, 7, 6, 5])
        body = client.get(f"/games/{session['id']}/analysis").json()
        assert body["outcome"] == "P"
        assert body["SE"] is True and body["ME"] is True

    def test_unbalanced_report_carries_the_gaps(self, client):
        session = new_game(client, NN10, [4, 21, 3, 2, 3, 4, 2, 7, 6, 5])
        body = client.get(f"/games/{session['id']}/analysis").json()
        assert body["outcome"] == "N"
        assert body["Delta"] == 9 and body["delta"] == 7
        assert body["derived"]["s"] == [29, 12, 11, 16, 19]

    def test_oracle_report_for_generic_specs(self, client):
        session = new_game(
            client, {"family": "SET", "n": 3, "move_sets": [[1, 2], [2, 3]]},
            [1, 1, 1],
        )
        body = client.get(f"/games/{session['id']}/analysis").json()
        assert body["source"] == "oracle"
        assert body["derived"] is None

    def test_hint_highlights_the_certified_move(self, client):
        session = new_game(client, NN10, [2, 15, 8, 4, 5, 4, 5, 5, 5, 8])
        body = client.get(f"/games/{session['id']}/hint").json()
        assert body["move"] == {
            "set": 3, "removals": [0, 0, 5, 4, 5, 4, 3, 0, 0, 0],
        }
        assert body["result"] == [2, 15, 3, 0, 0, 0, 2, 5, 5, 8]

    def test_hint_on_balanced_positions(self, client):
        session = new_game(client, {"family": "NN", "n": 3, "k": 2}, [1, 1, 1])
        body = client.get(f"/games/{session['id']}/hint").json()
        assert body["move"] is None
        assert body["message"] == "no winning move"


class TestPlayouts:
    def test_engine_wins_after_any_human_blunder(self, client, oracle):
        # short version of the acceptance playout: human starts on a
        # balanced position, so every engine decision point is a win
        spec = sn.necklace(6, 3)
        members = sorted(
            pos for pos, out in oracle.classify_all(spec, 2).items()
            if out == "P" and any(pos)
        )
        rng = random.Random(42)
        for start in rng.sample(members, 10):
            session = new_game(client, NN63, list(start))
            sid = session["id"]
            state = session
            while state["status"] == "ongoing":
                if state["to_move"] == "human":
                    pos = tuple(state["heights"])
                    moves = list(sn.legal_moves(spec, pos))
                    move = rng.choice(moves)
                    state = client.post(
                        f"/games/{sid}/moves",
                        json={"set": move.set_index,
                              "removals": list(move.removals)},
                    ).json()
                else:
                    state = client.post(f"/games/{sid}/engine-move").json()["session"]
            assert state["winner"] == "engine"
