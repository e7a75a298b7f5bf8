import json
import math
import subprocess


def run(cli, *args, check_code=None):
    proc = subprocess.run([cli, *map(str, args)], capture_output=True, text=True)
    if check_code is not None:
        assert proc.returncode == check_code, proc.stderr
    return proc


def report(cli, *args, code=0):
    proc = run(cli, *args, check_code=code)
    return json.loads(proc.stdout)


def test_report_envelope(cli):
    r = report(cli, "classify-isometry", "1,1,0,1")
    assert r["schema"] == "adsgeom.report/1"
    assert r["tool"] == "adsgeom"
    assert r["status"] == "ok"
    assert r["error"] is None
    assert r["seed"] == 42
    assert r["input_digest"].startswith("sha256:") and len(r["input_digest"]) == 7 + 64
    assert "seconds" not in r


def test_classify_isometry_examples(cli):
    elliptic = report(cli, "classify-isometry", "0,-1,1,0")["result"]["class"]
    assert elliptic["kind"] == "elliptic"
    assert math.isclose(elliptic["angle"], math.pi, abs_tol=1e-12)

    assert report(cli, "classify-isometry", "1,1,0,1")["result"]["class"]["kind"] == "parabolic_positive"

    r = report(cli, "classify-isometry", "2.7182818,0,0,0.3678794")
    assert r["result"]["class"]["kind"] == "hyperbolic"
    assert abs(r["result"]["class"]["translation_length"] - 2) < 1e-6
    assert any("determinant" in d for d in r["diagnostics"])


def test_classify_isometry_rejects_bad_input(cli):
    for text in ["1,2,3", "a,b,c,d", "2,0,0,2"]:
        proc = run(cli, "classify-isometry", text, check_code=1)
        assert json.loads(proc.stdout)["status"] == "input_error"
        assert proc.stderr.startswith("adsgeom: input_error")


def test_classify_link_examples(cli, data):
    massive = report(cli, "classify-link", data / "massive_link.json")["result"]
    assert massive["type"]["kind"] == "massive_particle"
    assert massive["mass"] == 0.5

    misner = report(cli, "classify-link", data / "misner_link.json")["result"]
    assert misner["type"]["kind"] == "misner"
    assert misner["causality"]["causal"] is False

    odd = report(cli, "classify-link", data / "odd_degree_link.json", code=2)
    assert odd["status"] == "precondition_failed"
    assert "even" in odd["error"]


def test_surface_examples(cli, data):
    assert report(cli, "surface", "classify", data / "collision_triangle.json")["result"]["interaction"] == "causally_regular"
    assert report(cli, "surface", "classify", data / "all_past_triangle.json")["result"]["interaction"] == "big_crunch"
    ccc = report(cli, "surface", "check-ccc", data / "first_return_plain.json")["result"]["ccc"]
    assert ccc["has_ccc"] is True
    assert len(ccc["closed_leaves"]) == 2


def test_spacetime_examples(cli, data):
    curv = report(cli, "spacetime", data / "warped_pi.json", "--check", "curvature")["result"]["checks"]["curvature"]
    assert curv["pass"] and curv["max_deviation"] < 1e-4

    dual = report(cli, "spacetime", data / "btz_quotient.json", "--check", "duality")["result"]["checks"]["duality"]
    assert dual["max_abs_inner"] < 1e-9

    rt = report(cli, "spacetime", data / "surgery.json", "--check", "surgery-roundtrip")["result"]["checks"]
    assert rt["surgery-roundtrip"]["restored"] is True

    bad = report(cli, "spacetime", data / "surgery_mismatch.json", code=2)
    assert "angle mismatch" in bad["error"]

    wrong = report(cli, "spacetime", data / "warped_pi.json", "--check", "duality", code=2)
    assert wrong["status"] == "precondition_failed"


def test_check_suites(cli):
    r = report(cli, "check", "isometry-oracle")
    assert r["result"]["pass"] is True
    assert sum(p["cases"] for p in r["result"]["properties"]) >= 10_000

    poly = report(cli, "--seed", 7, "check", "polyhedra-bihyperbolic")
    assert poly["seed"] == 7 and poly["result"]["pass"] is True

    sweep = report(cli, "check", "ccc-sweep")["result"]["properties"]
    threshold = next(p for p in sweep if p["name"] == "negative_threshold")
    assert math.isfinite(threshold["details"]["threshold"])

    assert report(cli, "check", "no-such-suite", code=1)["status"] == "input_error"


def test_polyhedron(cli, data):
    r = report(cli, "polyhedron", data / "random_polyhedron.json")["result"]
    assert r["type"] == "bi_hyperbolic"
    assert r["induced"]["positive_mass"] is True
    assert r["causal"] is True
    compact = report(cli, "polyhedron", data / "compact_tetrahedron.json")["result"]
    assert compact["type"] == "compact"
    assert compact["induced"]["is_hs_structure"] is False
    assert compact["causal"] is None
    pyramid = report(cli, "polyhedron", data / "compact_bipyramid.json")
    assert pyramid["result"]["causal"] == "undecidable"
    assert any("undecidable" in d for d in pyramid["diagnostics"])
    kinds = sorted(e["type"]["kind"] for e in pyramid["result"]["induced"]["particle_dictionary"])
    assert kinds == ["btz", "btz", "tachyon", "tachyon", "tachyon"]


def test_exit_codes(cli, data, tmp_path):
    assert run(cli).returncode == 1
    assert run(cli, "classify-link", tmp_path / "missing.json").returncode == 1
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(cli, "classify-link", broken).returncode == 1
    assert run(cli, "--tolerance", "-1", "check", "ccc-sweep").returncode == 1
    assert run(cli, "--version").returncode == 0


def test_reports_are_byte_identical(cli, data, tmp_path):
    for args in (["spacetime", data / "warped_pi.json", "--check", "curvature", "--check", "time-function"],
                 ["surface", "classify", data / "collision_triangle.json"],
                 ["check", "btz-duality"]):
        first = run(cli, *args, check_code=0).stdout
        second = run(cli, *args, check_code=0).stdout
        assert first == second
    out = tmp_path / "r.json"
    run(cli, "--out", out, "surface", "classify", data / "collision_triangle.json", check_code=0)
    assert out.read_text() == run(cli, "surface", "classify", data / "collision_triangle.json").stdout


def test_digest_tracks_input_and_seed(cli, data):
    a = report(cli, "check", "ccc-sweep")["input_digest"]
    b = report(cli, "--seed", 1, "check", "ccc-sweep")["input_digest"]
    c = report(cli, "check", "btz-duality")["input_digest"]
    assert len({a, b, c}) == 3


def test_svg_is_deterministic(cli, data, tmp_path):
    for source in ("collision_triangle.json", "first_return_plain.json"):
        one, two = tmp_path / "1.svg", tmp_path / "2.svg"
        run(cli, "plot", data / source, "--out", one, check_code=0)
        run(cli, "plot", data / source, "--out", two, check_code=0)
        text = one.read_text()
        assert text.startswith("<svg") or text.startswith("<?xml")
        assert text == two.read_text()
    side = tmp_path / "side.svg"
    run(cli, "--svg", side, "surface", "check-ccc", data / "collision_triangle.json", check_code=0)
    assert "<svg" in side.read_text()


def test_timing_flag(cli):
    r = report(cli, "--timing", "check", "ccc-sweep")
    assert r["seconds"] >= 0
