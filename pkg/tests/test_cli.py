import io
import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from raagqi import fixtures as F
from raagqi.cli import EX_DATAERR, EX_USAGE, main, to_dot
from raagqi.graph import graph_isomorphic, parse_graph

ROOT = Path(__file__).resolve().parents[1]
SHIPPED = ROOT / "fixtures"


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fx")
    code, _ = run("fixtures", "--dump", str(d))
    assert code == 0
    return d


def test_shipped_fixtures_match_registry():
    for name, fx in F.FIXTURES.items():
        G = parse_graph((SHIPPED / f"{name}.json").read_text(), "json")
        assert G == fx.graph


def test_classify_hex2(fixture_dir):
    code, out = run("classify", str(fixture_dir / "hex2.json"))
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "raagqi.type-report/1"
    assert doc["type_II"] is True and doc["weak_type_I"] is False
    assert "explanation" not in doc
    _, out = run("classify", str(fixture_dir / "hex2.json"), "--explain")
    assert json.loads(out)["explanation"]["weak_type_I"] == {"separating_star": "a1"}


def test_prime_graph_hex2_with_outputs(fixture_dir, tmp_path):
    dot, cx, fig = tmp_path / "p.dot", tmp_path / "c.json", tmp_path / "f.png"
    code, out = run("prime-graph", str(fixture_dir / "hex2.json"), "--emit-dot", str(dot),
                    "--emit-complex", str(cx), "--figure", str(fig))
    doc = json.loads(out)
    assert code == 0 and doc["index"] == 2
    G = parse_graph(json.dumps(doc["prime_graph"]), "json")
    assert graph_isomorphic(G, F.get("c6")) is not None
    # DOT holds all and only the prime graph's vertices and edges
    text = dot.read_text()
    nodes = set(re.findall(r'^  "([^"]+)";$', text, re.M))
    edges = {frozenset(e) for e in re.findall(r'^  "([^"]+)" -- "([^"]+)";$', text, re.M)}
    assert nodes == set(G.vertices) and edges == set(G.edges)
    complex_doc = json.loads(cx.read_text())
    assert len(complex_doc["ultrafilters"]) == 2 and complex_doc["edges"] == [{"vertices": [0, 1], "wall": 0}]
    assert all(isinstance(h, str) for U in complex_doc["ultrafilters"] for h in U)
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_qi_exit_codes(fixture_dir):
    code, out = run("qi", str(fixture_dir / "ex819a.json"), str(fixture_dir / "ex819b.json"))
    assert code == 1 and json.loads(out)["verdict"] == "no"
    code, _ = run("qi", "fixture:hex2", "fixture:c6")
    assert code == 0
    code, _ = run("qi", "fixture:f2", "fixture:p3")
    assert code in (1, 2)


def test_qi_unknown_and_budget(tmp_path):
    f3 = tmp_path / "f3.txt"
    f3.write_text("v x\nv y\nv z\n")
    code, out = run("qi", "fixture:f2", str(f3))
    assert code == 2 and json.loads(out)["route"] == "undecided"
    code, out = run("qi", "fixture:f2", str(f3), "--budget", "2")
    assert code == 0 and json.loads(out)["route"] == "special-subgroup-search"


def test_special_and_ball():
    code, out = run("special", "fixture:f2", "--domain", '[[], ["a"]]')
    doc = json.loads(out)
    assert code == 0 and doc["index"] == 2 and len(doc["defining_graph"]["vertices"]) == 3
    code, out = run("ball", "fixture:k2", "-r", "1")
    assert code == 0 and json.loads(out)["size"] == 5


def test_out_and_prime():
    code, out = run("out", "fixture:p3")
    assert code == 0 and any(not t["adjacent"] for t in json.loads(out)["transvections"])
    code, out = run("prime", "fixture:ph")
    assert json.loads(out)["vertices"]["p1"]["tuple"] == [1, 1]


@pytest.mark.parametrize("argv", [
    ("classify", "fixture:hex3"), ("prime", "fixture:hex3"), ("prime-graph", "fixture:hex3"),
    ("qi", "fixture:hex2", "fixture:hex3"), ("out", "fixture:star3"), ("fixtures",),
])
def test_byte_deterministic(argv):
    assert run(*argv) == run(*argv)


def test_usage_errors():
    assert run()[0] == EX_USAGE
    assert run("bogus")[0] == EX_USAGE
    assert run("ball", "fixture:k2")[0] == EX_USAGE
    assert run("ball", "fixture:k2", "-r", "x")[0] == EX_USAGE
    assert run("qi", "fixture:k2", "fixture:k2", "--budget", "-1")[0] == EX_USAGE


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("a b\nb a\n")
    assert run("classify", str(bad))[0] == EX_DATAERR
    assert run("classify", str(tmp_path / "missing.json"))[0] == EX_DATAERR
    assert run("classify", "fixture:nope")[0] == EX_DATAERR
    assert run("prime-graph", "fixture:c4")[0] == EX_DATAERR
    assert run("special", "fixture:f2", "--domain", '[[], ["a", "a"]]')[0] == EX_DATAERR
    assert run("special", "fixture:f2", "--domain", "{")[0] == EX_DATAERR


def test_emitted_graph_round_trips():
    code, out = run("fixtures", "hex3")
    doc = json.loads(out)
    assert parse_graph(json.dumps(doc["graph"]), "json") == F.get("hex3")
    assert doc["expected"]["index"] == {"value": 3, "provenance": "DERIVED"}


def test_to_dot_includes_isolated_vertices():
    text = to_dot(F.get("f2"))
    assert '"a";' in text and "--" not in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "raagqi", "qi", "fixture:ex819a", "fixture:ex819b"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stdout)["verdict"] == "no"
