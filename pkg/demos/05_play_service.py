"""A complete game against the engine over the HTTP play service.

This demo drives the FastAPI app in-process; `setnim serve` exposes the
same endpoints over a real socket for the browser client in frontend/.
"""

import random

from fastapi.testclient import TestClient

import setnim as sn
from setnim.api import create_app

client = TestClient(create_app())
rng = random.Random(1)

session = client.post(
    "/games",
    json={"spec": {"family": "NN", "n": 6, "k": 3}, "heights": [2, 1, 1, 1, 1, 2]},
).json()
sid = session["id"]
print("analysis says:", client.get(f"/games/{sid}/analysis").json()["outcome"])

spec = sn.necklace(6, 3)
state = session
while state["status"] == "ongoing":
    if state["to_move"] == "human":
        move = rng.choice(list(sn.legal_moves(spec, tuple(state["heights"]))))
        state = client.post(
            f"/games/{sid}/moves",
            json={"set": move.set_index, "removals": list(move.removals)},
        ).json()
        print("human plays", move.removals, "->", state["heights"])
    else:
        reply = client.post(f"/games/{sid}/engine-move").json()
        state = reply["session"]
        print("engine plays", reply["move"]["removals"], "->", state["heights"])

print("winner:", state["winner"], "after", len(state["history"]), "moves")
