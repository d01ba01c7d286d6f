"""HTTP API tests; every payload is validated against the published schema."""

import json
from importlib.resources import files

import jsonschema
import pytest
from fastapi.testclient import TestClient

from zahlenschlacht.core import GameConfig, ResidueVector
from zahlenschlacht.registry import load_playable
from zahlenschlacht.service import create_app
from zahlenschlacht.session import MODE_HOT_SEAT, MODE_VS_BOT, SessionStore
from zahlenschlacht.strategy_a import PlanPolicy, opening_plan

_SCHEMA = json.loads(
    files("zahlenschlacht").joinpath("data/api_schema.json").read_text("utf-8")
)


def check(instance, def_name: str):
    jsonschema.validate(
        instance=instance,
        schema={"$ref": f"#/$defs/{def_name}", "$defs": _SCHEMA["$defs"]},
        cls=jsonschema.Draft202012Validator,
    )


def make_client(tmp_path=None):
    store = SessionStore()
    static = (tmp_path / "absent") if tmp_path else None
    return TestClient(create_app(store=store, static_dir=static)), store


def expect_error(response, code: str, status: int):
    assert response.status_code == status
    body = response.json()
    check(body, "error")
    assert body["code"] == code
    assert body["httpStatus"] == status


def test_variants_listing():
    client, _ = make_client()
    response = client.get("/variants")
    assert response.status_code == 200
    body = response.json()
    check(body, "variants_response")
    assert {"n": 15, "d": 7} in body["vs_bot"]
    assert {"n": 17, "d": 7} not in body["vs_bot"]
    assert {"n": 14, "d": 7} not in body["vs_bot"]
    assert len(body["vs_bot"]) == len(load_playable())


def test_create_game_vs_bot():
    client, _ = make_client()
    response = client.post(
        "/games",
        json={"n": 15, "d": 7, "mode": "vs_bot", "seed": 1},
        headers={"origin": "http://localhost:5173"},
    )
    assert response.status_code == 201
    view = response.json()
    check(view, "session_view")
    assert len(view["live"]) == 15
    assert view["to_move"] == "A"
    assert view["residues"]["8"] == 1
    assert response.headers["access-control-allow-origin"] == "*"


@pytest.mark.parametrize(
    "body,code",
    [
        ({"n": 3, "d": 7, "mode": "hot_seat"}, "invalid_config"),
        ({"n": 15, "d": 1, "mode": "hot_seat"}, "invalid_config"),
        ({"n": 15, "d": 7, "mode": "tournament"}, "invalid_config"),
        ({"n": 15, "d": 7}, "invalid_config"),  # mode missing
        ({"n": 14, "d": 7, "mode": "vs_bot"}, "unknown_variant"),
        ({"n": 17, "d": 7, "mode": "vs_bot"}, "unknown_variant"),
    ],
)
def test_create_game_rejections(body, code):
    client, _ = make_client()
    expect_error(client.post("/games", json=body), code, 400)


def test_view_roundtrip_and_missing_session():
    client, _ = make_client()
    view = client.post(
        "/games", json={"n": 15, "d": 9, "mode": "hot_seat"}
    ).json()
    got = client.get(f"/games/{view['id']}")
    assert got.status_code == 200
    assert got.json() == view
    expect_error(client.get("/games/absent"), "session_not_found", 404)
    expect_error(
        client.post("/games/absent/moves", json={"number": 1}),
        "session_not_found",
        404,
    )


def test_moves_and_event_log():
    client, _ = make_client()
    game = client.post(
        "/games", json={"n": 15, "d": 7, "mode": "vs_bot"}
    ).json()
    url = f"/games/{game['id']}/moves"

    response = client.post(url, json={"number": 1})
    assert response.status_code == 200
    body = response.json()
    check(body, "moves_response")
    assert [e["actor"] for e in body["events"]] == ["A", "B"]
    assert body["view"]["to_move"] == "A"

    expect_error(client.post(url, json={"number": 1}), "illegal_move", 400)
    expect_error(client.post(url, json={"number": 99}), "illegal_move", 400)
    expect_error(client.post(url, json={}), "invalid_config", 400)

    log = client.get(f"/games/{game['id']}/events")
    assert log.status_code == 200
    check(log.json(), "events_response")
    assert [e["seq"] for e in log.json()["events"]] == [1, 2]


def test_finished_session_rejects_moves():
    client, _ = make_client()
    game = client.post("/games", json={"n": 5, "d": 3, "mode": "hot_seat"}).json()
    url = f"/games/{game['id']}/moves"
    for number in (3, 1, 2):
        last = client.post(url, json={"number": number}).json()
    assert last["view"]["status"] == "finished"
    assert last["view"]["winner"] == "A"
    expect_error(client.post(url, json={"number": 4}), "session_finished", 409)


def test_wrong_seat_rejected():
    client, store = make_client()
    game = client.post("/games", json={"n": 15, "d": 7, "mode": "vs_bot"}).json()
    session = store.get(game["id"])
    with session.lock:
        session.board = session.board.remove(1)  # leave B on the clock
    expect_error(
        client.post(f"/games/{game['id']}/moves", json={"number": 2}),
        "not_your_turn",
        409,
    )


def _counts_from_view(view) -> ResidueVector:
    d = view["config"]["d"]
    counts = [0] * d
    for number in view["live"]:
        counts[number % d] += 1
    return ResidueVector(tuple(counts))


def _drive_constructive_game(client, seed: int):
    """Play Z(15,7) through the API with the first-player plan; returns
    (human numbers played, all events, final view)."""
    config = GameConfig(15, 7)
    policy = PlanPolicy(config, opening_plan(config))
    view = client.post(
        "/games", json={"n": 15, "d": 7, "mode": "vs_bot", "seed": seed}
    ).json()
    url = f"/games/{view['id']}/moves"

    humans = []
    residue = policy.opening(_counts_from_view(view))
    while True:
        number = min(a for a in view["live"] if a % 7 == residue)
        humans.append(number)
        body = client.post(url, json={"number": number}).json()
        view = body["view"]
        if view["status"] == "finished":
            events = client.get(f"/games/{view['id']}/events").json()["events"]
            return humans, events, view
        residue = policy.respond(
            _counts_from_view(view), body["events"][-1]["residue"]
        )


def test_scripted_optimal_game_over_api():
    client, _ = make_client()
    humans, events, view = _drive_constructive_game(client, seed=1)
    assert view["status"] == "finished"
    assert view["winner"] == "A"
    assert sum(view["final_pair"]) % 7 == 0
    assert len(events) == 13  # 15 numbers down to a final pair
    check(view, "session_view")


def test_api_equals_direct_engine():
    client, _ = make_client()
    humans, api_events, api_view = _drive_constructive_game(client, seed=5)

    store = SessionStore()
    session = store.create(GameConfig(15, 7), MODE_VS_BOT, seed=5)
    for number in humans:
        store.submit_move(session.id, number)
    direct_view = store.view(session.id)

    def strip(event):
        return {k: v for k, v in event.items() if k != "ts"}

    assert [strip(e) for e in api_events] == [
        strip(e) for e in store.events(session.id)
    ]
    api_view.pop("id")
    direct_view.pop("id")
    assert api_view == direct_view


def test_static_mount(tmp_path):
    # without a built UI the root 404s; with one, index.html is served
    client, _ = make_client(tmp_path)
    assert client.get("/").status_code == 404

    ui = tmp_path / "dist"
    ui.mkdir()
    (ui / "index.html").write_text("<title>zahlenschlacht</title>", "utf-8")
    served = TestClient(create_app(store=SessionStore(), static_dir=ui))
    response = served.get("/")
    assert response.status_code == 200
    assert "zahlenschlacht" in response.text
    # API routes still win over the static mount
    assert served.get("/variants").status_code == 200
