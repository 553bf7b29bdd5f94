import json

import numpy as np
import pytest

from gsk import transforms as T
from gsk.cli import main
from gsk.io import write_signal
from gsk.verify import INVARIANTS, band_limited_noise


@pytest.fixture
def tone_csv(tmp_path):
    dt = 1 / 128
    path = tmp_path / "tone.csv"
    write_signal(T.Signal1D(np.cos(2 * np.pi * 8 * dt * np.arange(256)), dt), str(path))
    return str(path)


def rows(path):
    return [line for line in open(path) if not line.startswith("#")]


def test_stockwell_rows(tone_csv, tmp_path):
    out = str(tmp_path / "coef.csv")
    assert main(["transform", "--kind", "stockwell", "--in", tone_csv, "--out", out, "--n-freq", "64"]) == 0
    assert len(rows(out)) == 64


@pytest.mark.parametrize("kind", ["cwt", "stft", "stockwell"])
def test_transform_deterministic_across_threads(kind, tone_csv, tmp_path, monkeypatch):
    outs = []
    for threads in ("1", "2", "2"):
        monkeypatch.setenv("GSK_THREADS", threads)
        out = tmp_path / f"{kind}{len(outs)}.csv"
        assert main(["transform", "--kind", kind, "--in", tone_csv, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_transform_to_stdout(tone_csv, capsys):
    assert main(["transform", "--kind", "stft", "--in", tone_csv, "--hop", "16", "--sigma-t", "0.1"]) == 0
    assert capsys.readouterr().out.startswith("# kind=STFT")


def test_empty_input(tmp_path, capsys):
    p = tmp_path / "empty.csv"
    p.write_text("")
    assert main(["transform", "--kind", "stockwell", "--in", str(p)]) == 3


def test_parse_error_reports_line(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("# dt=0.1\n1\n2\noops\n")
    assert main(["transform", "--kind", "cwt", "--in", str(p)]) == 3
    assert "line 4" in capsys.readouterr().err


def test_missing_input(tmp_path):
    assert main(["transform", "--kind", "cwt", "--in", str(tmp_path / "nope.csv")]) == 3


def test_reconstruct(tmp_path, capsys):
    dt = 1 / 128
    p = tmp_path / "noise.csv"
    write_signal(T.Signal1D(band_limited_noise(512, dt, 2, 20, 5), dt), str(p))
    assert main(["transform", "--kind", "cwt", "--reconstruct", "--in", str(p),
                 "--f-min", "0.5", "--f-max", "50", "--n-scales", "48"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("relative L2 error:")
    assert float(out.split(":")[1]) <= 1e-2


def test_reconstruct_inadmissible(tone_csv):
    assert main(["transform", "--kind", "cwt", "--window", "gaussian", "--reconstruct",
                 "--in", tone_csv]) == 4


def test_reconstruct_only_for_cwt(tone_csv):
    assert main(["transform", "--kind", "stft", "--reconstruct", "--in", tone_csv]) == 2


def orbit_rows(capsys, *argv):
    code = main(["orbits", *argv])
    lines = capsys.readouterr().out.splitlines()
    return code, [line.split(",") for line in lines[1:]], lines[:1]


def test_orbits_gaff(capsys):
    code, data, header = orbit_rows(capsys, "--group", "gaff", "--point", "1,1", "--steps", "100")
    assert code == 0 and header == ["step,coord1,coord2,label"]
    assert len(data) == 100 and {r[3] for r in data} == {"HALF_PLANE_POS"}


def test_orbits_degenerate(capsys):
    code, data, _ = orbit_rows(capsys, "--group", "gaff", "--point", "0,0")
    assert code == 0 and len(data) == 1 and data[0][3] == "DEGENERATE"


def test_orbits_gms_scaling(capsys):
    _, boosts, _ = orbit_rows(capsys, "--group", "gms", "--point", "1,1,1", "--kappa", "1", "--boosts-only")
    np.testing.assert_allclose([float(r[2]) for r in boosts], 0.5, atol=1e-12)
    _, data, _ = orbit_rows(capsys, "--group", "gms", "--point", "1,1,1", "--kappa", "1", "--seed", "3")
    # with dilations k2 moves (by e^{-2 sigma} per step) but keeps its sign
    k2 = np.array([float(r[2]) for r in data])
    assert k2.size == 100 and np.ptp(k2) > 0.1 and np.all(k2 > 0)
    assert {r[3] for r in data} == {"PARABOLA_INTERIOR(1)"}


def test_orbits_chart_singularity(capsys):
    assert main(["orbits", "--group", "gms", "--point", "0,1,1"]) == 5
    assert main(["orbits", "--group", "gs", "--point", "1,0"]) == 5


def test_orbits_usage_errors(capsys):
    assert main(["orbits", "--group", "gms", "--point", "1,1,1", "--kappa", "2"]) == 2
    assert main(["orbits", "--group", "gaff", "--point", "a,b"]) == 2
    assert main(["orbits", "--group", "gaff", "--point", "1,2,3"]) == 2
    assert main(["orbits", "--group", "nope", "--point", "1,1"]) == 2


def test_orbits_seeded(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["orbits", "--group", "heis", "--point", "2,1", "--seed", "9", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_cocycles_seed7(capsys):
    assert main(["verify", "--suite", "cocycles", "--seed", "7", "--samples", "1000"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_verify_bogus():
    assert main(["verify", "--suite", "bogus"]) == 2
    assert main(["verify", "--suite", "groups", "--samples", "0"]) == 2


def test_verify_all_json(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "--suite", "all", "--samples", "20", "--seed", "4", "--json-out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert set(doc) == {"suite", "seed", "checks", "pass"}
    assert doc["seed"] == 4 and doc["pass"] is True
    names = [c["name"] for c in doc["checks"]]
    assert names == [f"{s}.{n}" for s, inv in INVARIANTS.items() for n in inv]
    assert all(set(c) == {"name", "defect", "tol", "pass"} for c in doc["checks"])


def test_dump_atlas(capsys):
    assert main(["dump-atlas", "--M", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["groups"]) == 16
    gms = next(g for g in doc["groups"] if g["id"] == "GMS")
    assert gms["constants"] == {"M": 2.0} and gms["arity"] == 5
    assert {"source": "HEIS", "target": "GMS"}.items() <= next(
        e for e in doc["embeddings"] if e["source"] == "HEIS").items()


def test_no_command():
    assert main([]) == 2
