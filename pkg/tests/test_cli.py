import json

import pytest

from pclyap import serialize
from pclyap.cli import main, render_report
from pclyap import (
    backward_composition_lift,
    composition_lift,
    de_bruijn,
    max_lift,
    sum_lift,
)

import helpers


@pytest.fixture
def demo_files(tmp_path):
    g5 = tmp_path / "demo_graph.json"
    g5.write_text(serialize.dumps(serialize.graph_to_dict(helpers.demo_graph())))
    mats = tmp_path / "demo_matrices.json"
    mats.write_text(serialize.dumps(serialize.matrix_set_to_dict(helpers.demo_matrices())))
    clf = tmp_path / "clf.json"
    clf.write_text(serialize.dumps(serialize.graph_to_dict(
        helpers.loop_pair_graph())))
    return {"graph": str(g5), "matrices": str(mats), "clf": str(clf)}


def run(capsysbinary, argv):
    code = main(argv)
    out = capsysbinary.readouterr()
    return code, out.out.decode(), out.err.decode()


# ------------------------------------------------------------------- check

def test_check_path_complete(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary, ["check", demo_files["graph"]])
    assert code == 0
    assert "path-complete: true" in out
    assert "complete: false" in out
    assert "co-complete: false" in out


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_check_exit_one_when_not_path_complete(tmp_path, capsysbinary):
    from pclyap import NodeId, make_graph
    a = NodeId.atom("a")
    g = make_graph(2, [a], [(a, a, 1)])
    path = tmp_path / "g.json"
    path.write_text(serialize.dumps(serialize.graph_to_dict(g)))
    code, out, _ = run(capsysbinary, ["check", str(path)])
    assert code == 1
    assert "path-complete: false" in out


def test_check_json_format(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary, ["check", demo_files["graph"], "--format", "json"])
    data = json.loads(out)
    assert data["path_complete"] is True
    assert data["strongly_connected"] is True


# -------------------------------------------------------------------- lift

@pytest.mark.parametrize("kind,builder", [
    ("sum:2", lambda g: sum_lift(g, 2)),
    ("max", max_lift),
    ("comp", composition_lift),
    ("backcomp", backward_composition_lift),
])
def test_lift_kinds_round_trip(demo_files, capsysbinary, kind, builder):
    import warnings
    code, out, _ = run(capsysbinary, ["lift", demo_files["clf"], "--kind", kind])
    assert code == 0
    parsed = serialize.graph_from_dict(json.loads(out))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        expected = builder(helpers.loop_pair_graph())
    assert parsed == expected


def test_lift_de_bruijn(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary,
                       ["lift", demo_files["clf"], "--kind", "debruijn:2,3"])
    assert code == 0
    assert serialize.graph_from_dict(json.loads(out)) == de_bruijn(2, 3)


def test_lift_bad_kind(demo_files, capsysbinary):
    code, _, err = run(capsysbinary, ["lift", demo_files["clf"], "--kind", "boom"])
    assert code == 2
    assert "error" in err


# ---------------------------------------------------------------- simulate

def test_simulate_positive(demo_files, tmp_path, capsysbinary):
    from pclyap import common_lyapunov_graph
    clf_path = tmp_path / "g0.json"
    clf_path.write_text(serialize.dumps(serialize.graph_to_dict(common_lyapunov_graph(2))))
    code, out, _ = run(capsysbinary, ["simulate", str(clf_path), demo_files["graph"]])
    assert code == 0
    data = json.loads(out)
    assert data["simulates"] is True
    assert set(data["map"].values()) == {"a"}


def test_simulate_negative(tmp_path, capsysbinary):
    g1 = tmp_path / "g1.json"
    g1.write_text(serialize.dumps(serialize.graph_to_dict(helpers.branching_graph())))
    g2 = tmp_path / "g2.json"
    g2.write_text(serialize.dumps(serialize.graph_to_dict(helpers.loop_pair_graph())))
    code, out, _ = run(capsysbinary, ["simulate", str(g1), str(g2)])
    assert code == 1
    assert json.loads(out)["simulates"] is False


# ------------------------------------------------------------------- bound

def test_bound_demo_graph(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary,
                       ["bound", demo_files["graph"], demo_files["matrices"],
                        "--flavor", "dual"])
    assert code == 0
    assert "rho[dual,G](A) = 1.27363" in out


def test_bound_json_contains_certificate(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary,
                       ["bound", demo_files["graph"], demo_files["matrices"],
                        "--flavor", "dual", "--format", "json"])
    data = json.loads(out)
    assert data["gamma"] == pytest.approx(1.2736270512, abs=5e-6)
    assert set(data["certificate"]["vectors"]) == {"a", "b", "c", "d"}


# --------------------------------------------------------------- hierarchy

def test_hierarchy_csv(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary,
                       ["hierarchy", demo_files["matrices"], "--lmax", "2"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "step,kind,level,rho_G,lower,upper"
    assert len(lines) == 5
    assert lines[1].startswith("(1),dual,1,")


def test_hierarchy_json(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary,
                       ["hierarchy", demo_files["matrices"], "--lmax", "1",
                        "--format", "json"])
    data = json.loads(out)
    assert len(data["rows"]) == 2
    assert data["rows"][0]["rho_G"] == pytest.approx(1.3409991733, abs=5e-6)


# ------------------------------------------------------------------ oracle

def test_oracle(demo_files, capsysbinary):
    code, out, _ = run(capsysbinary,
                       ["oracle", demo_files["matrices"], "--depth", "4"])
    assert code == 0
    assert "lower = 1.069" in out
    assert "upper = " in out


# ------------------------------------------------------------ input errors

def test_malformed_json_exit_two(tmp_path, capsysbinary):
    bad = tmp_path / "bad.json"
    bad.write_text('{"alphabet": 2, "nodes": ["a"], "edges": [[')
    code, _, err = run(capsysbinary, ["check", str(bad)])
    assert code == 2
    assert "line" in err and "column" in err


def test_semantic_error_exit_two(tmp_path, capsysbinary):
    bad = tmp_path / "bad.json"
    bad.write_text('{"alphabet": 2, "nodes": ["a"], "edges": [["a", "a", 9]]}')
    code, _, err = run(capsysbinary, ["check", str(bad)])
    assert code == 2
    assert "label" in err


def test_missing_file_exit_two(capsysbinary):
    code, _, err = run(capsysbinary, ["check", "/nonexistent/g.json"])
    assert code == 2
    assert "error" in err


# ------------------------------------------------------------- determinism

def test_reports_are_deterministic(demo_files, capsysbinary):
    argv = ["hierarchy", demo_files["matrices"], "--lmax", "2"]
    _, first, _ = run(capsysbinary, argv)
    _, second, _ = run(capsysbinary, argv)
    assert first == second


def test_graph_round_trip_through_json():
    corpus = [
        helpers.demo_graph(),
        helpers.toggle_graph(),
        de_bruijn(2, 3),
        sum_lift(helpers.toggle_graph(), 2),
        max_lift(helpers.toggle_graph()),
    ]
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        corpus.append(composition_lift(helpers.memory_one_graph()))
    for g in corpus:
        assert serialize.graph_from_dict(json.loads(
            serialize.dumps(serialize.graph_to_dict(g)))) == g


def test_render_report_rejects_unknown_pairs():
    with pytest.raises(ValueError):
        render_report({"kind": "oracle", "lower": 1.0, "upper": 2.0}, "csv")
    with pytest.raises(ValueError):
        render_report({"kind": "mystery"}, "text")


def test_matrix_set_round_trip():
    mats = helpers.demo_matrices()
    back = serialize.matrix_set_from_dict(json.loads(
        serialize.dumps(serialize.matrix_set_to_dict(mats))))
    assert back.size == mats.size and back.n == mats.n
    for left, right in zip(back.matrices, mats.matrices):
        assert (left == right).all()


def test_certificate_round_trip():
    from pclyap import rho_bound
    g = helpers.toggle_graph()
    mats = helpers.demo_matrices()
    cert = rho_bound(g, mats, "dual").certificate
    back = serialize.certificate_from_dict(json.loads(
        serialize.dumps(serialize.certificate_to_dict(cert))))
    assert back.flavor == cert.flavor and back.gamma == cert.gamma
    assert set(back.vectors) == set(cert.vectors)
    for node, vec in cert.vectors.items():
        assert (back.vectors[node] == vec).all()
