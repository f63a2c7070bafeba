"""HTTP game service: session flows, error codes, engine optimality."""

import itertools

import pytest
from fastapi.testclient import TestClient

from fograph import engine, service
from fograph.graphs import Graph, enumerate_graphs, graph6_encode, is_isomorphic


@pytest.fixture()
def client():
    service.SESSIONS.clear()
    return TestClient(service.app)


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i)])


K1 = graph6_encode(Graph(1))
K2 = graph6_encode(complete(2))


def make(client, **kw):
    payload = {"g": K1, "h": K2, "role": "Spoiler", "k": 2}
    payload.update(kw)
    r = client.post("/sessions", json=payload)
    assert r.status_code == 201
    return r.json()["id"]


class TestCreation:
    def test_ok(self, client):
        sid = make(client)
        state = client.get(f"/sessions/{sid}").json()
        assert state["status"] == "awaiting-human"
        assert state["g"] == K1 and state["h"] == K2
        assert state["round"] == 0

    def test_bad_role(self, client):
        r = client.post("/sessions", json={"g": K1, "h": K2,
                                           "role": "Referee", "k": 2})
        assert r.status_code == 422

    def test_bad_k(self, client):
        r = client.post("/sessions", json={"g": K1, "h": K2,
                                           "role": "Spoiler", "k": 0})
        assert r.status_code == 422

    def test_bad_graph6(self, client):
        r = client.post("/sessions", json={"g": "D?", "h": K2,
                                           "role": "Spoiler", "k": 2})
        assert r.status_code == 422

    def test_infeasible(self, client):
        big = graph6_encode(Graph(60))
        r = client.post("/sessions", json={"g": big, "h": big,
                                           "role": "Spoiler", "k": 30})
        assert r.status_code == 422

    def test_duplicator_gets_pending(self, client):
        sid = make(client, role="Duplicator")
        state = client.get(f"/sessions/{sid}").json()
        assert state["pending"] is not None
        assert state["history"][0]["by"] == "engine"


class TestSpoilerFlow:
    def test_two_move_win(self, client):
        sid = make(client)
        r = client.post(f"/sessions/{sid}/moves",
                        json={"side": "H", "vertex": 0})
        assert r.status_code == 200
        state = r.json()
        assert state["round"] == 1 and state["status"] == "awaiting-human"
        state = client.post(f"/sessions/{sid}/moves",
                            json={"side": "H", "vertex": 1}).json()
        assert state["status"] == "spoiler-won"
        assert state["round"] == 2
        assert len(state["history"]) == 4

    def test_move_after_end_409(self, client):
        sid = make(client)
        client.post(f"/sessions/{sid}/moves", json={"side": "H", "vertex": 0})
        client.post(f"/sessions/{sid}/moves", json={"side": "H", "vertex": 1})
        r = client.post(f"/sessions/{sid}/moves",
                        json={"side": "H", "vertex": 0})
        assert r.status_code == 409

    def test_unknown_vertex_400(self, client):
        sid = make(client)
        r = client.post(f"/sessions/{sid}/moves",
                        json={"side": "G", "vertex": 5})
        assert r.status_code == 400

    def test_bad_side_400(self, client):
        sid = make(client)
        r = client.post(f"/sessions/{sid}/moves",
                        json={"side": "X", "vertex": 0})
        assert r.status_code == 400

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope").status_code == 404
        r = client.post("/sessions/nope/moves",
                        json={"side": "G", "vertex": 0})
        assert r.status_code == 404

    def test_alternation_budget_400(self, client):
        g6 = graph6_encode(complete(3))
        h6 = graph6_encode(Graph.from_edges(3, [(0, 1), (1, 2)]))
        sid = make(client, g=g6, h=h6, k=3, alt=0)
        client.post(f"/sessions/{sid}/moves", json={"side": "G", "vertex": 0})
        r = client.post(f"/sessions/{sid}/moves",
                        json={"side": "H", "vertex": 0})
        assert r.status_code == 400


class TestDuplicatorFlow:
    def test_reply_same_side_400(self, client):
        sid = make(client, role="Duplicator")
        state = client.get(f"/sessions/{sid}").json()
        side = state["pending"][0]
        name = "G" if side == 0 else "H"
        r = client.post(f"/sessions/{sid}/moves",
                        json={"side": name, "vertex": 0})
        assert r.status_code == 400

    def test_isomorphic_inputs_survive(self, client):
        g6 = graph6_encode(complete(2))
        sid = make(client, g=g6, h=g6, role="Duplicator", k=2)
        for _ in range(2):
            state = client.get(f"/sessions/{sid}").json()
            hints = client.get(f"/sessions/{sid}/analysis").json()["hints"]
            best = max(hints, key=lambda h: h["value"])
            state = client.post(f"/sessions/{sid}/moves",
                                json={"side": best["side"],
                                      "vertex": best["vertex"]}).json()
        assert state["status"] == "duplicator-won"


class TestAnalysis:
    def test_values_match_engine(self, client):
        g6 = graph6_encode(complete(3))
        h6 = graph6_encode(Graph.from_edges(3, [(0, 1), (1, 2)]))
        sid = make(client, g=g6, h=h6, k=3)
        hints = client.get(f"/sessions/{sid}/analysis").json()
        assert hints["budget"] == 3
        best = min(h["value"] for h in hints["hints"] if h["value"] is not None)
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        h = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert best == engine.distinguishing_depth(g, h)

    def test_terminal_empty(self, client):
        sid = make(client)
        client.post(f"/sessions/{sid}/moves", json={"side": "H", "vertex": 0})
        client.post(f"/sessions/{sid}/moves", json={"side": "H", "vertex": 1})
        assert client.get(f"/sessions/{sid}/analysis").json() == \
            {"budget": 0, "hints": []}

    def test_pending_replies(self, client):
        sid = make(client, role="Duplicator")
        data = client.get(f"/sessions/{sid}/analysis").json()
        assert data["pending"] is not None
        sides = {h["side"] for h in data["hints"]}
        assert len(sides) == 1  # all replies land in the other graph


class TestEngineOptimality:
    def pairs(self):
        pool = [g for n in (1, 2, 3) for g in enumerate_graphs(n)]
        for g, h in itertools.combinations(pool, 2):
            if g.n == h.n and is_isomorphic(g, h):
                continue
            yield g, h

    def test_human_spoiler_with_hints_wins_at_depth(self, client):
        for g, h in self.pairs():
            d = engine.distinguishing_depth(g, h)
            sid = make(client, g=graph6_encode(g), h=graph6_encode(h),
                       role="Spoiler", k=d)
            state = client.get(f"/sessions/{sid}").json()
            while state["status"] == "awaiting-human":
                hints = client.get(f"/sessions/{sid}/analysis").json()["hints"]
                live = [x for x in hints if x["value"] is not None]
                best = min(live, key=lambda x: (x["value"], x["side"],
                                                x["vertex"]))
                state = client.post(f"/sessions/{sid}/moves",
                                    json={"side": best["side"],
                                          "vertex": best["vertex"]}).json()
            assert state["status"] == "spoiler-won", (g, h)

    def test_engine_spoiler_beats_all_replies(self, client):
        # exhaustive human duplicator play: every reply sequence loses
        # within the true distinguishing depth
        for g, h in self.pairs():
            d = engine.distinguishing_depth(g, h)
            frontier = [()]
            while frontier:
                prefix = frontier.pop()
                sid = make(client, g=graph6_encode(g), h=graph6_encode(h),
                           role="Duplicator", k=d)
                state = client.get(f"/sessions/{sid}").json()
                ok = True
                for v in prefix:
                    state = client.post(f"/sessions/{sid}/moves",
                                        json={"side": "G" if
                                              state["pending"][0] == 1 else "H",
                                              "vertex": v}).json()
                    if state["status"] != "awaiting-human":
                        ok = False
                        break
                if not ok:
                    assert state["status"] == "spoiler-won", (g, h, prefix)
                    continue
                if state["status"] != "awaiting-human":
                    assert state["status"] == "spoiler-won", (g, h, prefix)
                    continue
                reply_graph = h if state["pending"][0] == 0 else g
                frontier.extend(prefix + (v,) for v in range(reply_graph.n))
        assert True
