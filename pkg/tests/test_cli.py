import json

import pytest

from thh import cli


def run(argv):
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def test_group_json_schema_and_key_order():
    code, out = run(["group", "--prime", "2", "--target", "ell",
                     "--degree", "18", "--reduced", "--format", "json"])
    assert code == 0
    rec = json.loads(out)
    assert list(rec) == ["prime", "target", "coefficients", "degree",
                         "free_rank", "torsion", "generators"]
    assert rec["degree"] == 18
    assert rec["free_rank"] == 0
    assert rec["torsion"] == [4]
    assert all(set(g) == {"label", "order"} for g in rec["generators"])


def test_group_json_round_trips_bytes():
    code, out = run(["group", "--prime", "3", "--degree", "22",
                     "--format", "json"])
    assert code == 0
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_group_torsion_sorted_ascending():
    code, out = run(["group", "--prime", "2", "--max-degree", "40",
                     "--format", "json"])
    assert code == 0
    for rec in json.loads(out):
        assert rec["torsion"] == sorted(rec["torsion"])


def test_table_and_json_numeric_agreement():
    code_j, out_j = run(["group", "--prime", "2", "--max-degree", "24",
                         "--format", "json"])
    code_t, out_t = run(["group", "--prime", "2", "--max-degree", "24"])
    assert code_j == code_t == 0
    rows = out_t.strip().splitlines()[1:]
    for rec, row in zip(json.loads(out_j), rows):
        deg, free = row.split()[:2]
        assert int(deg) == rec["degree"]
        assert int(free) == rec["free_rank"]


def test_ko_target_spot_value():
    code, out = run(["group", "--prime", "2", "--target", "ko",
                     "--degree", "5", "--reduced", "--format", "json"])
    assert code == 0
    rec = json.loads(out)
    assert (rec["free_rank"], rec["torsion"]) == (1, [])


def test_ko_requires_prime_two():
    code, _ = run(["group", "--prime", "3", "--target", "ko", "--degree", "5"])
    assert code == 2


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["verify", "--suite", "bogus"])
    assert cli.main(["verify", "--suite", "bogus"]) == 2


def test_composite_prime_is_usage_error():
    code, _ = run(["group", "--prime", "6", "--degree", "0"])
    assert code == 2


def test_verify_exit_zero_on_clean_suite():
    code, out = run(["verify", "--suite", "section4", "--prime", "2",
                     "--level", "2"])
    assert code == 0
    assert "0 failures" in out


def test_chart_svg_deterministic(tmp_path):
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    for path in (a, b):
        code, _ = run(["chart", "torsion", "--prime", "2", "--degree", "18",
                       "--max-degree", "40", "--out", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("<svg")


def test_chart_empty_range_is_usage_error():
    code, _ = run(["chart", "torsion", "--prime", "2", "--degree", "10",
                   "--max-degree", "4"])
    assert code == 2


def test_chart_json_dots():
    code, out = run(["chart", "ko-answer", "--prime", "2", "--max-degree",
                     "20", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"dots", "lines"}
    assert [5, 0, "free"] in data["dots"]
