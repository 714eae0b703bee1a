import json
from pathlib import Path

import pytest

from sysrel import corpus as C
from sysrel import io
from sysrel.approx import decide_empty_n, decide_inclusion_n
from sysrel.cli import main
from sysrel.encoders.distance import NormalDistance
from sysrel.sca import member

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    C.write_corpus(d)
    return d


@pytest.mark.parametrize("name", sorted(C.machines()))
def test_transducer_round_trip(name):
    T = C.machines()[name]
    text = io.serialize_transducer(T)
    assert io.parse_transducer(text) == T
    assert io.serialize_transducer(io.parse_transducer(text)) == text


@pytest.mark.parametrize("name", sorted(C.scas()))
def test_sca_round_trip(name, corpus_dir):
    A = C.scas()[name]
    loaded = io.load_sca(corpus_dir / "scas" / f"{name.lower()}.sca")
    assert loaded == A


@pytest.mark.parametrize("name", sorted(C.pdas()))
def test_pda_round_trip(name):
    P = C.pdas()[name]
    assert io.parse_pda(io.serialize_pda(P)) == P


def test_distance_round_trip():
    for mode in ("separated", "positional"):
        d = NormalDistance(C.BINARY, order=("b", "a", "_"), mode=mode)
        assert io.parse_distance(io.serialize_distance(d)) == d


def test_shipped_corpus_is_current(corpus_dir):
    fresh = sorted(p.relative_to(corpus_dir) for p in corpus_dir.rglob("*") if p.is_file())
    shipped = sorted(p.relative_to(CORPUS) for p in CORPUS.rglob("*") if p.is_file())
    assert fresh == shipped
    for rel in fresh:
        assert (corpus_dir / rel).read_text() == (CORPUS / rel).read_text(), rel


MINIMAL = "sys-transducer v1\nalphabet a _\npad _\ninitial q\ntrans q a a q\ntrans q _ _ q\n"


def test_parse_errors():
    with pytest.raises(io.ParseError):
        io.parse_transducer(MINIMAL.replace("pad _\n", ""))
    with pytest.raises(io.ParseError):
        io.parse_transducer(MINIMAL.replace("sys-transducer v1", "sys-transducer v2"))
    with pytest.raises(io.ParseError):
        io.parse_transducer(MINIMAL + "trans q a\n")
    with pytest.raises(io.ParseError):
        io.parse_transducer(MINIMAL + "colour red\n")
    with pytest.raises(io.ParseError):
        io.parse_transducer(MINIMAL.replace("trans q a a q", "trans q z a q"))
    with pytest.raises(io.ParseError):
        io.parse_sca('sys-sca v1\nouter a\naccept "a" "b"\n')
    with pytest.raises(io.ParseError):
        io.parse_sca('sys-sca v1\nouter a\nmap a = x.syst\naccept "a\n', loader=lambda p: None)
    with pytest.raises(io.ParseError):
        io.parse_pda("pda v1\nstates q\n")
    with pytest.raises(io.ParseError):
        io.parse_distance("alphabet v1\nletters a _\n")


def test_duplicates_and_comments():
    T = io.parse_transducer("# a comment\n" + MINIMAL + "trans q a a q\n")
    assert len(T.transitions) == 2
    assert io.detect(MINIMAL) == "transducer" and io.detect("nothing") is None


def test_jsonl(tmp_path):
    path = tmp_path / "r.jsonl"
    io.write_jsonl([{"n": 1}, {"n": 2}], path)
    assert io.read_jsonl(path) == [{"n": 1}, {"n": 2}]


# -- command line ---------------------------------------------------------------------


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_validate(capsys, corpus_dir, tmp_path):
    code, out = run(capsys, "validate", corpus_dir / "machines" / "push_a.syst")
    assert code == 0 and out.out.startswith("valid")
    bad = tmp_path / "bad.syst"
    bad.write_text(MINIMAL.replace("trans q _ _ q", "trans q _ a q"))
    code, out = run(capsys, "validate", bad)
    assert code == 4 and "non-pad output" in out.out
    code, _ = run(capsys, "validate", corpus_dir / "scas" / "stack.sca")
    assert code == 0
    code, _ = run(capsys, "validate", corpus_dir / "pda" / "counter.pda")
    assert code == 0
    code, _ = run(capsys, "validate", tmp_path / "missing.syst")
    assert code == 3


def test_apply(capsys, corpus_dir):
    code, out = run(capsys, "apply", corpus_dir / "machines" / "push_a.syst", "--input", "a b",
                    "--strip-absorb")
    assert code == 0 and "finite image, 1 word(s)" in out.out and "a b a" in out.out
    code, out = run(capsys, "apply", corpus_dir / "machines" / "loopy.syst", "--input", "a")
    assert code == 0 and out.out.startswith("infinite image") and "digraph" in out.out


def test_compose_and_project(capsys, corpus_dir, tmp_path):
    target = tmp_path / "c.syst"
    code, _ = run(capsys, "compose", corpus_dir / "machines" / "push_a.syst",
                  corpus_dir / "machines" / "push_b.syst", "-o", target)
    assert code == 0 and io.load_transducer(target).report.is_valid
    code, out = run(capsys, "project", corpus_dir / "machines" / "id.syst", "-n", "1")
    assert code == 0 and out.out.splitlines()[0] == "# level 1, 4 pairs"
    code, _ = run(capsys, "project", corpus_dir / "machines" / "id.syst", "-n", "0")
    assert code == 3


def test_chi(capsys, corpus_dir, tmp_path):
    dot = tmp_path / "chi.dot"
    code, out = run(capsys, "chi", corpus_dir / "scas" / "pushes.sca", "--pair", "a", "a b",
                    "-n", "2", "--dot", dot)
    assert code == 0 and "nonempty" in out.out and dot.read_text().startswith("digraph")
    code, _ = run(capsys, "chi", corpus_dir / "scas" / "pushes.sca", "--pair", "a", "b", "-n", "1")
    assert code == 1


def test_approx_and_include(capsys, corpus_dir, tmp_path):
    report = tmp_path / "rep.jsonl"
    code, out = run(capsys, "approx", corpus_dir / "scas" / "empty_f.sca", "-n", "2",
                    "--problem", "empty", "--report", report)
    assert code == 0 and json.loads(out.out)["verdict"] is True
    assert io.read_jsonl(report)[0]["problem"] == "empty"
    code, _ = run(capsys, "approx", corpus_dir / "scas" / "stack.sca", "-n", "1",
                  "--problem", "empty")
    assert code == 1 and not decide_empty_n(C.scas()["STACK"], 1).verdict
    code, _ = run(capsys, "approx", corpus_dir / "scas" / "all_id.sca", "-n", "1",
                  "--problem", "universal")
    assert code == 0
    code, out = run(capsys, "include", corpus_dir / "scas" / "finite.sca",
                    corpus_dir / "scas" / "finite_super.sca", "-n", "3")
    assert code == 0
    code, _ = run(capsys, "include", corpus_dir / "scas" / "finite_super.sca",
                  corpus_dir / "scas" / "finite.sca", "-n", "3")
    lib = decide_inclusion_n(C.scas()["FINITE_SUPER"], C.scas()["FINITE"], 3).verdict
    assert code == (0 if lib else 1) == 1
    code, _ = run(capsys, "include", corpus_dir / "scas" / "stack.sca",
                  corpus_dir / "scas" / "finite.sca", "-n", "1")
    assert code == 3


def test_lim(capsys, corpus_dir, tmp_path):
    report = tmp_path / "lim.jsonl"
    code, out = run(capsys, "lim", corpus_dir / "scas" / "finite_super.sca",
                    corpus_dir / "scas" / "finite.sca", "--upto", "3", "--report", report)
    assert code == 0
    assert [r["lim"] for r in io.read_jsonl(report)] == ["1", "1/2", "1/3"]
    assert "n=2 verdict=0 lim=1/2" in out.out


def test_reach(capsys, corpus_dir):
    sca = corpus_dir / "scas" / "stack.sca"
    code, out = run(capsys, "reach", sca, "--pair", "a b", "a b")
    assert code == 0 and "empty word" in out.out
    code, out = run(capsys, "reach", sca, "--pair", "", "a b")
    assert code == 0 and "pa pb" in out.out
    code, _ = run(capsys, "reach", corpus_dir / "scas" / "pushes.sca", "--pair", "a", "b")
    assert code == 1
    code, out = run(capsys, "reach", corpus_dir / "scas" / "grow.sca", "--pair", "", "b",
                    "--max-len", "3", "--max-level", "2")
    assert code == 2 and out.out.startswith("exhausted")


def test_encode_pda(capsys, corpus_dir, tmp_path):
    code, out = run(capsys, "encode-pda", corpus_dir / "pda" / "counter.pda", "-o", tmp_path)
    assert code == 0
    A = io.load_sca(tmp_path / "counter.sca")
    assert member(A, ("a", "a", "b", "b")) and not member(A, ("a", "b", "b"))
    legend = json.loads((tmp_path / "counter.legend.json").read_text())
    assert legend["@p"] == ["control", "p"]
    bad = tmp_path / "bad.pda"
    bad.write_text("pda v1\nstates q\ninputs a\nstack Z\ninitial q\nstart Z\nmove q - Z q Z\n")
    code, _ = run(capsys, "encode-pda", bad, "-o", tmp_path)
    assert code == 4


def test_dist(capsys, corpus_dir):
    code, out = run(capsys, "dist", corpus_dir / "abp-positional.alphabet", "b", "")
    assert code == 0 and "val(b) = 1/3" in out.out and "dist = 1/3" in out.out
    code, out = run(capsys, "dist", corpus_dir / "abp-separated.alphabet", "a", "a")
    assert "dist = 0" in out.out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["approx", "x.sca", "-n", "1"])
    assert exc.value.code == 3
