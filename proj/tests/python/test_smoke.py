import json
import math
from pathlib import Path

import pytest

import ssls

TOY = Path(__file__).resolve().parents[2] / "data" / "toy_fixture.yaml"


@pytest.fixture(scope="module")
def toy():
    return ssls.load_fixture(str(TOY))


def test_toy_selection(toy):
    for algo in ("exact", "approx", "exactplus", "fast", "brute"):
        r = ssls.select(toy, algo, k=2)
        assert sorted(r.locations) == [5, 7], algo
        assert r.score == pytest.approx(1.451, abs=2.5e-3)
    assert sorted(ssls.select(toy, "exact", k=2, alpha=1.0).locations) == [6, 7]


def test_scores_and_metrics(toy):
    rel = ssls.relevance(toy, 0.5)
    assert rel[6] == pytest.approx(0.564, abs=2.5e-3)
    assert ssls.diversity(toy, 6, 2) == pytest.approx(0.533, abs=1e-3)
    assert ssls.score(toy, [8, 5]) == pytest.approx(1.199, abs=2.5e-3)
    assert ssls.social_entropy(toy, [6, 7]) == 1.0
    assert ssls.precision([5, 7], [7, 5]) == 1.0
    assert ssls.mmd(toy, list(range(1, 11))) == 0.0
    assert 0.0 <= ssls.social_coverage(toy, [5, 7], 1.0) <= 100.0


def test_json_and_telemetry(toy):
    r = ssls.select(toy, "exact", k=2)
    doc = json.loads(ssls.result_json(toy, r, k=2))
    assert [s["label"] for s in doc["selected"]] == ["p5", "p7"]
    assert r.telemetry["pruned_property2"] > 0
    assert r.telemetry["wall_ms"] >= 0.0


def test_errors(toy):
    with pytest.raises(ssls.DomainError):
        ssls.select(toy, "exact", k=11)
    with pytest.raises(ValueError):
        ssls.select(toy, "nope", k=2)
    with pytest.raises(KeyError):
        ssls.score(toy, [99])
    with pytest.raises(ssls.ParseError):
        ssls.load_fixture(str(Path(__file__)))


def test_synthetic_agrees_with_brute():
    for seed in range(20):
        ctx = ssls.synthetic_context(candidates=9, seed=seed)
        exact = ssls.select(ctx, "exact", k=3, alpha=0.3, omega=0.7)
        brute = ssls.select(ctx, "brute", k=3, alpha=0.3, omega=0.7)
        assert exact.score == brute.score
        assert ssls.select(ctx, "fast", k=3, alpha=0.3, omega=0.7).score <= exact.score
        gne = [ssls.select(ctx, "gne", k=3, seed=5).locations for _ in range(2)]
        assert gne[0] == gne[1]


def test_graph_roundtrip(tmp_path):
    edges = tmp_path / "edges.tsv"
    checkins = tmp_path / "checkins.tsv"
    edges.write_text("1\t2\n2\t3\n1\t3\n")
    checkins.write_text(
        "1\t2010-10-01T00:00:00Z\t10.0\t20.0\t100\n"
        "1\t2010-10-02T00:00:00Z\t10.1\t20.1\t101\n"
        "2\t2010-10-03T00:00:00Z\t10.0\t20.0\t100\n"
        "3\t2010-10-04T00:00:00Z\t10.2\t20.2\t102\n"
    )
    g = ssls.load_graph(str(edges), str(checkins))
    assert g.users == [1, 2, 3]
    assert g.edge_count == 3
    snap = tmp_path / "g.snapshot"
    g.write_snapshot(str(snap))
    again = ssls.load_snapshot(str(snap))
    assert again.stats() == g.stats()
    ctx = ssls.query_context(again, 1)
    assert ctx.candidates == [100, 101]
    r = ssls.select(ctx, "exact", k=2)
    assert sorted(r.locations) == [100, 101]
    assert math.isfinite(r.score)
    with pytest.raises(KeyError):
        ssls.query_context(again, 42)
