import io

import numpy as np
import pytest

from falak import cli, harness, shatir
from falak.errors import PreconditionViolated, SpanMismatch
from falak.sexagesimal import sx
from falak.sphere import wrap180


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def _csv(text):
    lines = text.strip().splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


def test_ephem_single_sun_row():
    code, text = run("ephem", "--body", "sun", "--model", "shatir3d", "--t0", "0")
    header, rows = _csv(text)
    assert code == 0 and header == "t_days,body,lon_deg,lat_deg,dist"
    assert len(rows) == 1
    assert abs(float(rows[0][2]) - sx("280;33,31")) <= 2 / 3600


def test_ephem_accepts_yazdegerd_dates():
    _, a = run("ephem", "--body", "mars", "--yz", "702/1/1")
    _, b = run("ephem", "--body", "mars", "--t0", "365")
    assert a == b


def test_ephem_moon_month():
    code, text = run("ephem", "--body", "moon", "--model", "shatir-planar", "--t0", "0", "--t1", "30", "--step", "1")
    _, rows = _csv(text)
    assert len(rows) == 31
    assert all(51 <= float(r[4]) <= 69 for r in rows)


def test_ephem_equivalent_models_print_identically():
    grid = ("--t0", "0", "--t1", "3650", "--step", "10")
    _, a = run("ephem", "--body", "saturn", "--model", "urdi", *grid)
    _, b = run("ephem", "--body", "saturn", "--model", "shatir3d", "--tilts", "main", *grid)
    lon_a = [r[2] for r in _csv(a)[1]]
    lon_b = [r[2] for r in _csv(b)[1]]
    assert lon_a == lon_b


def test_ephem_is_deterministic():
    args = ("ephem", "--body", "venus", "--t0", "-100", "--t1", "100", "--step", "7")
    assert run(*args) == run(*args)


def test_exit_codes(tmp_path):
    assert run("ephem", "--body", "sun", "--t0", "0", "--step", "0")[0] == 2
    assert run("ephem", "--body", "sun", "--model", "urdi", "--t0", "0")[0] == 2
    assert run("errors", "--body", "sun", "--reference", str(tmp_path / "missing.csv"))[0] == 3
    assert run("ephem", "--body", "sun")[0] == 2


def test_sexagesimal_flags():
    _, a = run("ephem", "--body", "sun", "--t0", "0;30")
    _, b = run("ephem", "--body", "sun", "--t0", "0.5")
    assert a == b


def _reference(tmp_path, body, t0, t1, step, shift=0.0, model="shatir3d"):
    path = tmp_path / f"{body}.csv"
    lines = ["t_days,body,lon_deg,lat_deg"]
    for rec in harness.ephemeris(body, model, t0, t1, step):
        lines.append(f"{rec.t},{body},{(rec.longitude + shift) % 360!r},{rec.latitude!r}")
    path.write_text("\n".join(lines) + "\n")
    return path


def test_errors_self_comparison(tmp_path):
    path = _reference(tmp_path, "jupiter", 0, 1000, 25)
    with open(path) as fh:
        ref = harness.read_reference(fh)
    table = harness.error_table("jupiter", "shatir3d", ref, [sx("0;0,1"), sx("0;1"), 1.0])
    assert table.longitude == (1.0, 1.0, 1.0)
    assert table.latitude == (1.0, 1.0, 1.0)


def test_errors_constructed_offset(tmp_path):
    path = _reference(tmp_path, "mars", 0, 1000, 25, shift=sx("0;30"))
    with open(path) as fh:
        ref = harness.read_reference(fh)
    table = harness.error_table("mars", "shatir3d", ref, [sx("0;20"), sx("0;40")])
    assert table.longitude == (0.0, 1.0)


def test_errors_wraps_across_zero():
    ref = [harness.ReferenceRow(0.0, "sun", 0.0, 0.0)]
    rec = harness.position("shatir3d", "sun", 0.0)
    shifted = [harness.ReferenceRow(0.0, "sun", (rec.longitude + 359.5) % 360, 0.0)]
    table = harness.error_table("sun", "shatir3d", shifted, [0.6])
    assert table.lon_errors[0] == pytest.approx(0.5, abs=1e-9)
    assert ref


def test_errors_span_mismatch(tmp_path):
    path = _reference(tmp_path, "saturn", 0, 100, 10)
    with open(path) as fh:
        ref = harness.read_reference(fh)
    with pytest.raises(SpanMismatch):
        harness.error_table("saturn", "shatir3d", ref, [1.0], span=(-10, 50))
    with pytest.raises(SpanMismatch):
        harness.error_table("mars", "shatir3d", ref, [1.0])


def test_errors_cli_prints_quantile_rows(tmp_path):
    path = _reference(tmp_path, "saturn", 0, 3650, 5, shift=0.1)
    code, text = run("errors", "--body", "saturn", "--reference", str(path), "--thresholds", "0;5,0;7")
    assert code == 0
    lines = text.splitlines()
    assert lines[1].split("\t")[1] == "0.000000" and lines[2].split("\t")[1] == "1.000000"
    levels = [line.split("\t")[0] for line in lines[4:]]
    assert levels == ["0.50", "0.70", "0.90", "0.95", "0.98"]


def test_quantile_matches_numpy():
    rng = np.random.default_rng(11)
    errors = list(rng.exponential(size=2001))
    for level in harness.TAB_LEVELS:
        expected = np.quantile(errors, level, method="inverted_cdf")
        assert harness.quantile(errors, level) == expected


@pytest.mark.parametrize("text", [
    "t,body,lon,lat\n0,sun,1,0\n",
    "t_days,body,lon_deg,lat_deg\n0,sun,360,0\n",
    "t_days,body,lon_deg,lat_deg\n1,sun,10,0\n1,sun,11,0\n",
    "t_days,body,lon_deg,lat_deg\n0,sun,10;30,0\n",
    "t_days,body,lon_deg,lat_deg,dist\n0,sun,10,0\n",
])
def test_reference_rejects_bad_files(text):
    with pytest.raises(PreconditionViolated):
        harness.read_reference(io.StringIO(text))


def test_reference_times_are_per_body():
    rows = harness.read_reference(io.StringIO("t_days,body,lon_deg,lat_deg,dist\n0,sun,1,0,60\n0,moon,2,1,60\n"))
    assert [r.body for r in rows] == ["sun", "moon"] and rows[1].distance == 60


def test_no_stations_for_sun_and_moon():
    assert harness.find_stations("sun", "shatir3d", 0, 400, 2) == []
    assert harness.find_stations("moon", "shatir3d", 0, 60, 0.25) == []
    assert not harness.ratio_criterion("sun").retrogrades
    assert not harness.ratio_criterion("moon").retrogrades


@pytest.mark.parametrize("body", shatir.PLANETS)
def test_planets_satisfy_the_retrogradation_ratio(body):
    assert harness.ratio_criterion(body).retrogrades


def _elongation(t):
    sun = harness.position("shatir3d", "sun", t).longitude
    mars = harness.position("shatir3d", "mars", t).longitude
    return wrap180(mars - sun)


def test_mars_stations_bracket_opposition():
    stations = harness.find_stations("mars", "shatir3d", 0, 780, 2)
    assert [s.kind for s in stations] == ["direct->retro", "retro->direct"]
    first, second = stations
    # Opposition: the elongation passes through 180 between the stations.
    grid = np.linspace(first.t, second.t, 200)
    elong = [abs(_elongation(t)) for t in grid]
    assert max(elong) > 179


def test_station_is_a_zero_of_the_rate():
    st = harness.find_stations("mars", "shatir3d", 0, 780, 2)[0]
    before = harness.longitude_rate("mars", "shatir3d", st.t - 0.01)
    after = harness.longitude_rate("mars", "shatir3d", st.t + 0.01)
    assert before > 0 > after


def test_stations_cli_reports_criterion():
    code, text = run("stations", "--body", "sun", "--t0", "0", "--t1", "30", "--step", "5")
    assert code == 0 and text.strip().endswith("no retrogradation")


def test_table_cli():
    code, text = run("table", "--body", "saturn", "--step", "30")
    rows = [line.split("\t") for line in text.splitlines()[1:]]
    assert code == 0 and len(rows) == 6
    assert rows[2][:2] == ["90;0,0", "-6;29,50"]


def test_cosmo_cli_report():
    code, text = run("cosmo", "--report")
    saturn = [line for line in text.splitlines() if line.startswith("saturn")][0]
    assert code == 0 and saturn.split("\t")[3] == "79051 7/23"
    assert run("cosmo", "--errata")[0] == 0


def test_eqtime_cli():
    code, text = run("eqtime", "--t", "0")
    assert code == 0 and len(text.splitlines()) == 2


def test_compare_cli():
    code, text = run("compare", "--a", "shatir", "--b", "tusi", "--body", "jupiter")
    assert code == 0 and float(text.split("\t")[-1]) < 1e-9
    code, text = run("compare", "--a", "shatir", "--b", "ptolemy", "--body", "sun", "--curve",
                     "--t0", "0", "--t1", "10", "--step", "5")
    assert code == 0 and len(text.splitlines()) == 4


def test_check_cli_passes():
    code, text = run("check", "--samples", "50")
    assert code == 0 and all(line.startswith("PASS") for line in text.splitlines())


def test_check_cli_reports_failures():
    code, text = run("check", "--samples", "5", "--tolerance", "0")
    assert code == 1 and "FAIL" in text
