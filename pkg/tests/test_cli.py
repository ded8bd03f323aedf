import json
import subprocess
import sys

import pytest

from robustnet.cli import main
from robustnet.consensus import AdversaryScript, ConsensusConfig
from robustnet.graph_core import Graph, read_edge_list, write_edge_list


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fig1_file(tmp_path, capsys):
    path = tmp_path / "fig1.txt"
    assert run(["fig1", "--n", 16, "-o", path], capsys)[0] == 0
    return path


def test_generate_is_deterministic(tmp_path, capsys):
    a = run(["generate", "--n", 6, "--k", 3, "--p", 0.4, "--seed", 5], capsys)[1]
    b = run(["generate", "--n", 6, "--k", 3, "--p", 0.4, "--seed", 5], capsys)[1]
    assert a == b and a.splitlines()[0].split()[0] == "18"
    layers = tmp_path / "layers.txt"
    code, _, _ = run(["generate", "--n", 5, "--x", 1.0, "--r", 2, "--intra", "ring",
                      "--layers", layers], capsys)
    assert code == 0
    assert layers.read_text().splitlines()[:6] == ["0 0", "1 0", "2 0", "3 0", "4 0", "5 1"]


def test_generate_needs_exactly_one_of_p_and_x(capsys):
    assert run(["generate", "--n", 5], capsys)[0] == 2
    assert run(["generate", "--n", 5, "--p", 0.1, "--x", 0], capsys)[0] == 2
    assert run(["generate", "--n", 5, "--k", 1, "--p", 0.1], capsys)[0] == 2


def test_analyze_fig1(fig1_file, capsys):
    code, out, _ = run(["analyze", fig1_file], capsys)
    assert code == 0
    rep = json.loads(out)
    assert (rep["d_min"], rep["kappa"], rep["robustness_exact"]) == (4, 4, 1)
    assert rep["i_exact"] == {"num": 1, "den": 2}
    assert rep["i_argmin"] == list(range(8))
    assert rep["robustness_certified"] <= rep["robustness_exact"]
    assert rep["i_lower"] <= 0.5 <= rep["i_upper"]


def test_analyze_above_cap_skips_exact(fig1_file, capsys):
    code, out, _ = run(["analyze", fig1_file, "--robust-cap", 10, "--iso-cap", 10], capsys)
    rep = json.loads(out)
    assert code == 0 and "robustness_exact" not in rep and "i_exact" not in rep


def test_cap_raise_warns(fig1_file, capsys):
    code, _, err = run(["analyze", fig1_file, "--robust-cap", 22], capsys)
    assert code == 0 and "warning" in err


def test_robustness_subcommand(fig1_file, capsys):
    code, out, _ = run(["robustness", fig1_file, "--r", 2], capsys)
    verdict = json.loads(out)
    assert code == 0 and verdict["status"] == "not_robust"
    assert verdict["witness_s1"] == list(range(8))
    code, out, _ = run(["robustness", fig1_file, "--r", 5, "--method", "certify"], capsys)
    assert json.loads(out)["method"] == "min_degree_refutation"


def test_robustness_cap_and_indeterminate(tmp_path, fig1_file, capsys):
    big = tmp_path / "big.txt"
    write_edge_list(Graph.complete(21), big)
    assert run(["robustness", big, "--r", 1], capsys)[0] == 2
    # lambda2/2 < 1 and exact i(G) = 1/2: neither certificate settles r = 2
    assert run(["robustness", fig1_file, "--r", 2, "--method", "certify"], capsys)[0] == 3


def test_bad_inputs_exit_2(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run(["analyze", empty], capsys)[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    code, _, err = run(["analyze", bad], capsys)
    assert code == 2 and "line" in err
    assert run(["analyze", tmp_path / "missing.txt"], capsys)[0] == 2
    assert run(["sweep-growth", "--n-list", "20", "--c", "0.5"], capsys)[0] == 2
    assert run(["sweep-threshold"], capsys)[0] == 2


def test_spectral_formats(tmp_path, capsys):
    path = tmp_path / "k3.txt"
    write_edge_list(Graph.complete(3), path)
    out = json.loads(run(["spectral", path], capsys)[1])
    assert out["eigenvalues"] == pytest.approx([0, 3, 3], abs=1e-9)
    assert out["lambda2"] == pytest.approx(3)
    csv_lines = run(["spectral", path, "--format", "csv"], capsys)[1].splitlines()
    assert csv_lines[0] == "graph_id,index,eigenvalue" and csv_lines[1].startswith("k3,1,")


def test_sweep_output_independent_of_workers(tmp_path, capsys):
    args = ["sweep-threshold", "--n-list", "5,6", "--k", 2, "--r", 2, "--x=-1,1",
            "--trials", 6, "--seed", 9, "--metrics", "min_deg_ge_r,robust_exact,lambda2"]
    outs = []
    for w in (1, 2):
        path = tmp_path / f"w{w}.csv"
        assert run(args + ["--workers", w, "-o", path], capsys)[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].decode().splitlines()[0].startswith("family,n,k,r,x_or_c,p,metric")


def test_sweep_from_spec_file(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n_list": [20], "p_rule": "c_over_threshold",
                                "c_values": [2.0], "trials": 3,
                                "metrics": ["lambda2_over_np", "d_max_bound"]}))
    code, out, _ = run(["sweep-growth", "--spec", spec, "--workers", 1], capsys)
    assert code == 0 and len(out.splitlines()) == 3
    spec.write_text(json.dumps({"n_list": [20], "bogus": 1}))
    assert run(["sweep-growth", "--spec", spec], capsys)[0] == 2


def test_consensus_subcommand(tmp_path, fig1_file, capsys):
    scenario = tmp_path / "s.json"
    ConsensusConfig(1, tuple(float(v < 8) for v in range(16)),
                    {0: AdversaryScript("constant", c=1.0)}, rounds_max=50).dump(scenario)
    trace = tmp_path / "trace.csv"
    code, out, _ = run(["consensus", fig1_file, "--scenario", scenario, "--trace", trace],
                       capsys)
    summary = json.loads(out)
    assert code == 0 and summary["f_local"] and summary["validity"]
    lines = trace.read_text().splitlines()
    assert lines[0] == "round,node,value,is_adversary"
    assert len(lines) == 1 + 16 * (summary["rounds"] + 1)
    first = trace.read_bytes()
    run(["consensus", fig1_file, "--scenario", scenario, "--trace", trace], capsys)
    assert trace.read_bytes() == first


def test_module_entry_point_help():
    res = subprocess.run([sys.executable, "-m", "robustnet", "--help"], capture_output=True,
                         text=True, check=True)
    for name in ("generate", "fig1", "analyze", "robustness", "spectral", "sweep-threshold",
                 "sweep-growth", "consensus"):
        assert name in res.stdout


def test_fig1_roundtrip(fig1_file):
    g = read_edge_list(fig1_file)
    assert g.node_count == 16 and g.edge_count == 36
