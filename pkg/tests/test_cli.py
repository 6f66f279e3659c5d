import json
import subprocess
import sys

import pytest

from twotopos.cli import main
from twotopos.core import chain, functors, identity_functor, point, to_terminal
from twotopos.corpus import cat
from twotopos.serialize import category_to_json, dump_json, functor_to_json
from twotopos.span import map_to_span


def write(tmp_path, name, doc):
    p = tmp_path / name
    dump_json(doc, p)
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_omega_suite_passes_at_two(capsys):
    code, doc = run(capsys, ["run", "omega", "--lambda", "2"])
    assert code == 0 and doc["suite"] == "omega" and doc["seed"] == 7
    ids = [c["id"] for c in doc["checks"]]
    assert ids == sorted(ids)


def test_omega_suite_reports_the_product_witness_at_three(capsys):
    code, doc = run(capsys, ["run", "omega", "--lambda", "3"])
    assert code == 1
    bad = {c["id"]: c for c in doc["checks"] if c["verdict"] == "fail"}
    assert bad["cc:product-classifier"]["witness"] == [2, 2]


def test_unknown_suite_is_a_config_error(capsys):
    assert main(["run", "nonsense"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["run", "omega", "--out", str(out)])
    assert code == 0
    assert "omega:" in capsys.readouterr().out
    assert json.loads(out.read_text())["suite"] == "omega"


def test_comma_command(tmp_path, capsys):
    one = identity_functor(chain(2))
    path = write(tmp_path, "cs.json", {"f": functor_to_json(one), "g": functor_to_json(one)})
    code, doc = run(capsys, ["comma", "--cospan", path, "--verify", "--probes", "tiny"])
    assert code == 0
    assert len(doc["apex"]["objects"]) == 3
    assert all(c["verdict"] != "fail" for c in doc["checks"])


def test_fib_command(tmp_path, capsys):
    path = write(tmp_path, "f.json", functor_to_json(point(chain(2), 1)))
    code, doc = run(capsys, ["fib", "check", "--functor", path, "--chevalley", "--discrete"])
    assert code == 0
    assert doc["fibration"] is False and doc["opfibration"] is True
    assert doc["chevalley"]["verdict"] == "agree"
    assert doc["discrete_opfibration"] is True


def test_missing_required_option(capsys):
    # argparse enforces --functor before any command runs
    with pytest.raises(SystemExit):
        main(["fib", "check"])


def test_span_compose_and_classify(tmp_path, capsys):
    f = functors(cat("2"), cat("3"))[2]
    g = functors(cat("3"), cat("2"))[1]
    s1 = write(tmp_path, "s1.json", {"left": functor_to_json(map_to_span(f).left), "right": functor_to_json(map_to_span(f).right)})
    s2 = write(tmp_path, "s2.json", {"left": functor_to_json(map_to_span(g).left), "right": functor_to_json(map_to_span(g).right)})
    code, doc = run(capsys, ["span", "compose", "--spans", s1, s2])
    assert code == 0 and len(doc["left"]["dom"]["objects"]) == 2
    p = write(tmp_path, "p.json", functor_to_json(point(chain(3), 2)))
    code, doc = run(capsys, ["span", "classify", "--functor", p])
    assert code == 0
    assert sorted(v for _, v in doc["obj_map"]) == [0, 0, 1]
    assert main(["span", "classify"]) == 2


def test_kan_lan(tmp_path, capsys):
    g = point(chain(2), 0)
    f = point(chain(3), 1)
    gp, fp = write(tmp_path, "g.json", functor_to_json(g)), write(tmp_path, "f.json", functor_to_json(f))
    code, doc = run(capsys, ["kan", "lan", "--data", gp, fp])
    assert code == 0 and doc["verified"] is True
    # the left extension of a point at the bottom is constant at that point
    assert sorted(v for _, v in doc["extension"]["obj_map"]) == [1, 1]
    assert main(["kan", "lan", "--data", gp]) == 2


def test_yoneda_psh(tmp_path, capsys):
    c = write(tmp_path, "c.json", category_to_json(chain(3)))
    code, doc = run(capsys, ["yoneda", "psh", "--category", c])
    assert code == 0 and doc["objects"] == 4
    f = write(tmp_path, "f.json", functor_to_json(identity_functor(cat("par"))))
    code, doc = run(capsys, ["yoneda", "admissible", "--functor", f])
    assert code == 0 and doc["admissible"] is False


def test_omega_cosieves(tmp_path, capsys):
    c = write(tmp_path, "c.json", category_to_json(cat("vee")))
    code, doc = run(capsys, ["omega", "cosieves", "--category", c])
    assert code == 0
    assert len(doc["cosieves"]) == 5  # up-sets of two bottoms under one top


def test_glob_sp(capsys):
    code, doc = run(capsys, ["glob", "sp", "--trunc", "2"])
    assert code == 0 and doc["level_objects"] == [2, 5, 8] and doc["globular"]
    code, doc = run(capsys, ["glob", "ik", "--trunc", "2", "--k", "1", "--limit", "2"])
    assert code == 0 and len(doc["padded"]) == 2
    assert main(["glob", "ik", "--trunc", "1", "--k", "3"]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "twotopos", "omega", "cc-check", "--lambda", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["lambda"] == 2
