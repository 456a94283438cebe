import json
import subprocess
import sys

import pytest

from kneserlab.cli import RunConfig, build_parser
from kneserlab.errors import InvalidInput


def run(args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "kneserlab.cli", *args], input=stdin,
                          capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def objs(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


@pytest.fixture(scope="module")
def petersen_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "petersen.json"
    code, out, _ = run(["gen", "--family", "petersen"])
    assert code == 0
    path.write_text(out)
    return path


def test_pipeline_chi_of_kg52():
    code, h, _ = run(["gen", "--family", "complete-uniform", "--n", "5", "--k", "2"])
    assert code == 0
    code, g, _ = run(["kneser"], h)
    assert code == 0
    code, out, err = run(["chi"], g)
    assert code == 0 and "chi = 3" in err
    cert = objs(out)[0]
    assert cert["value"] == 3 and cert["seed"] == 7


def test_output_is_sorted_json_lines(petersen_file, tmp_path):
    dest = tmp_path / "o.jsonl"
    code, out, _ = run(["chic", "-i", str(petersen_file), "-o", str(dest), "--seed", "3"])
    assert code == 0
    line = out.strip()
    assert line == json.dumps(json.loads(line), sort_keys=True, separators=(",", ":"))
    assert dest.read_text().strip() == line
    assert json.loads(line)["value"] == "3/1" and json.loads(line)["seed"] == 3


def test_tampered_ktt_exit_1(petersen_file, tmp_path):
    code, out, _ = run(["ktt", "-i", str(petersen_file)])
    assert code == 0
    cert = objs(out)[0]
    good = tmp_path / "good.json"
    good.write_text(json.dumps(cert))
    assert run(["check", str(good)])[0] == 0
    # swap b_1 for a same-colored vertex that misses a_2
    from kneserlab.corpus import Coloring, Graph

    g = Graph.from_json(cert["params"]["graph"])
    c = Coloring.from_json(cert["params"]["coloring"])
    a = [v - 1 for v in cert["witness"]["a_side"]]
    b = [v - 1 for v in cert["witness"]["b_side"]]
    cand = next(v for v in range(g.m) if v not in a + b and c[v] == c[b[0]] and not g.adjacent(a[1], v))
    cert["witness"]["b_side"][0] = cand + 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    code, out, err = run(["check-witness", str(bad)])
    assert code == 1
    assert f"a_2 = {a[1] + 1} and b_1 = {cand + 1} are not adjacent" in err
    assert objs(out)[0]["ok"] is False


def test_invalid_input_exit_2():
    assert run(["kneser"], '{"n": 3, "edges": [[1, 9]]}')[0] == 2
    assert run(["chi"], "not json")[0] == 2
    assert run(["chi"], '{"n": 3, "edges": [[1, 2]]}')[0] == 2  # hypergraph where a graph is expected


def test_cap_exit_3(petersen_file):
    code, _, err = run(["xind", "-i", str(petersen_file), "--guard", "10"])
    assert code == 3 and "110" in err


def test_no_witness_exit_1():
    code, g, _ = run(["gen", "--family", "cycle", "--n", "5"])
    code, _, err = run(["ktt"], g)
    assert code == 1 and "no colorful" in err


def test_witness_commands(petersen_file):
    for args in (["zigzag"], ["klm", "--I", "1", "--J", "2,3"], ["klm", "--I", "1", "--J", "2,3", "--search"], ["path"], ["xind"], ["tristar"]):
        code, out, err = run([*args, "-i", str(petersen_file)])
        assert code == 0, (args, err)
        assert objs(out)


def test_hypergraph_commands():
    code, h, _ = run(["gen", "--family", "partition-matroid", "--parts", "3,3", "--r", "1,1", "--k", "2"])
    assert code == 0 and len(objs(h)[0]["edges"]) == 9
    for args, value in ((["cd2"], 0), (["alt"], None), (["alt", "--min"], None), (["nice"], True)):
        code, out, err = run(args, h)
        assert code == 0, err
        if value is not None:
            assert objs(out)[0]["value"] == value


def test_fan_commands():
    code, out, _ = run(["fan-count", "--first-sign", "2"])
    assert code == 0 and objs(out)[0]["value"] == 1
    code, out, _ = run(["fan-count", "--random", "3", "--seed", "4"])
    assert code == 0 and objs(out)[0]["value"] % 2 == 1
    assert run(["chen", "--random", "4", "--gamma", "2"])[0] == 0
    assert run(["chen", "--first-sign", "3"])[0] == 2  # gamma missing
    code, out, _ = run(["circuit", "--first-sign", "2"])
    assert code == 0 and len(objs(out)[0]["witness"]["alternating"]) == 2


def test_labeling_from_stdin():
    table = {"+": 1, "-": -1}
    code, out, _ = run(["fan-count"], json.dumps({"n": 1, "m": 1, "table": table}))
    assert code == 0 and objs(out)[0]["value"] == 1


def test_product_constructive():
    h1 = run(["gen", "--family", "complete-uniform", "--n", "5", "--k", "2"])[1]
    code, prod, _ = run(["product"], h1 + h1)
    assert code == 0
    g = objs(prod)[0]
    assert g["m"] == 100 and len(g["factors"]) == 2
    code, out, err = run(["ktt", "--constructive"], prod)
    assert code == 0, err
    assert run(["check", "-"], out)[0] == 0


def test_verify_command(petersen_file):
    code, out, _ = run(["verify", "-i", str(petersen_file), "--predicate", "ktt", "--workers", "1"])
    rep = objs(out)[0]
    assert code == 0 and rep["total"] == 20 and rep["passed"] == 20
    code, out, _ = run(["verify", "-i", str(petersen_file), "--predicate", "klm", "--sample", "3", "--seed", "2"])
    assert code == 0 and objs(out)[0]["sampled"]


def test_table_subset():
    code, out, err = run(["table", "--suite", "acceptance", "--seed", "7", "--only", "1,10"])
    assert code == 0
    assert [o["criterion"] for o in objs(out)] == [1, 10]
    assert err.count("[PASS]") == 2


def test_gen_families():
    for fam, args, key, size in [("complete", ["--n", "4"], "adj", 6), ("fnmk", ["--n", "3", "--m", "1", "--k", "2"], "edges", 6),
                                 ("complete-bipartite", ["--n", "2", "--m", "3"], "adj", 6), ("random-graph", ["--n", "5"], "adj", None)]:
        code, out, _ = run(["gen", "--family", fam, *args])
        assert code == 0
        if size is not None:
            assert len(objs(out)[0][key]) == size


def test_run_config_validation():
    with pytest.raises(InvalidInput):
        RunConfig("chi", None, None, 7, None, 0, 1, 1, 1)
    with pytest.raises(InvalidInput):
        RunConfig("chi", None, None, 7, -1, 1, 1, 1, 1)
    args = build_parser().parse_args(["chi"])
    assert args.workers >= 1 and args.seed == 7
