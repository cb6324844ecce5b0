import json

import pytest

from torcrep.cli import GroupSpec, build_parser, group_from_spec, main, parse_group
from torcrep.errors import DimensionMismatch, GroupSyntaxError, NotInSL
from torcrep.fans import fan_to_json
from torcrep.svg import junior_graph_svg


def test_parse_single_generator():
    spec = parse_group("6:(1,2,3)")
    assert spec == GroupSpec(3, ((6, (1, 2, 3)),))


def test_parse_comments_and_blank_lines():
    text = "# the order-7 example\n\n7:(1,1,2,3)\n"
    spec = parse_group(text)
    assert spec.n == 4
    assert spec.generators == ((7, (1, 1, 2, 3)),)


def test_parse_multiple_generators_semicolon():
    spec = parse_group("2:(1,1,0,0);2:(0,0,1,1)")
    assert len(spec.generators) == 2
    group = group_from_spec(spec)
    assert group.order == 4


def test_parse_rejects_non_sl():
    with pytest.raises(NotInSL):
        parse_group("6:(1,2,2)")


def test_parse_rejects_syntax():
    with pytest.raises(GroupSyntaxError) as info:
        parse_group("6:1,2,3")
    assert info.value.line == 1


def test_parse_rejects_out_of_range():
    with pytest.raises(GroupSyntaxError):
        parse_group("6:(1,2,9)")


def test_parse_rejects_mixed_dimension():
    with pytest.raises(DimensionMismatch):
        parse_group("2:(1,1)\n3:(1,1,1)")


def test_parse_rejects_empty():
    with pytest.raises(GroupSyntaxError):
        parse_group("# nothing\n")


def test_analyze_exit_codes(capsys):
    assert main(["analyze", "6:(1,2,3)"]) == 0
    out = capsys.readouterr().out
    assert "group order 6" in out
    assert "4 junior point(s)" in out
    assert "no crepant obstruction" in out


def test_analyze_obstructed(capsys):
    assert main(["analyze", "2:(1,1,1,1)"]) == 0
    out = capsys.readouterr().out
    assert "not generated by juniors" in out
    assert main(["analyze", "7:(1,1,2,3)"]) == 0
    out = capsys.readouterr().out
    assert "Hilbert basis contains senior elements" in out


def test_bad_group_is_input_error(capsys):
    assert main(["analyze", "6:(1,2,2)"]) == 2


def test_resolve_and_verify_round_trip(tmp_path, capsys):
    fan_path = tmp_path / "z6.json"
    code = main([
        "resolve", "6:(1,2,3)", "--sequence", "g1,g2,g3,g4",
        "--out", str(fan_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "maximal cones (Euler number): 6" in out
    assert "crepant: True" in out
    data = json.loads(fan_path.read_text())
    assert data["euler"] == 6

    report = tmp_path / "report.json"
    code = main(["verify", str(fan_path), "6:(1,2,3)", "--out", str(report)])
    assert code == 0
    bundle = json.loads(report.read_text())
    assert bundle["all_verified"]
    assert bundle["coverage"] is True
    assert len(bundle["certificates"]) == 4
    assert bundle["class_group"]["rank"] == 4

    # re-verifying the emitted fan yields the identical bundle
    report2 = tmp_path / "report2.json"
    assert main(["verify", str(fan_path), "6:(1,2,3)", "--out", str(report2)]) == 0
    assert report.read_text() == report2.read_text()


def test_resolve_alternate_sequence_distinct(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["resolve", "6:(1,2,3)", "--sequence", "g1,g2,g3,g4",
                 "--out", str(a)]) == 0
    assert main(["resolve", "6:(1,2,3)", "--sequence", "g4,g3,g1,g2",
                 "--out", str(b)]) == 0
    fan_a = json.loads(a.read_text())["fan"]
    fan_b = json.loads(b.read_text())["fan"]
    assert fan_a != fan_b
    assert fan_a["rays"] == fan_b["rays"]


def test_resolve_search_hilbert(tmp_path, capsys):
    out = tmp_path / "z7.json"
    assert main(["resolve", "7:(1,1,2,3)", "--search", "hilbert",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["euler"] == 14
    assert data["smooth"] and not data["crepant"]
    assert main(["verify", str(out), "7:(1,1,2,3)"]) == 0


def test_resolve_search_juniors_not_found(capsys):
    assert main(["resolve", "7:(1,1,2,3)", "--search", "juniors"]) == 3


def test_resolve_sequence_through_seniors(tmp_path, capsys):
    # the Hilbert sequence names two-age elements explicitly
    out = tmp_path / "z7seq.json"
    assert main(["resolve", "7:(1,1,2,3)", "--sequence", "g1,g3,g4,g5",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["euler"] == 14 and data["smooth"]


def test_resolve_unknown_name(capsys):
    assert main(["resolve", "6:(1,2,3)", "--sequence", "g9"]) == 2


def test_verify_wrong_group(tmp_path, capsys):
    fan_path = tmp_path / "z6.json"
    main(["resolve", "6:(1,2,3)", "--sequence", "g1,g2,g3,g4",
          "--out", str(fan_path)])
    assert main(["verify", str(fan_path), "5:(1,2,2)"]) == 2


def test_verify_non_smooth_fan_fails(tmp_path, capsys):
    # the singular 4-cone minimal model of the order-7 group
    import torcrep

    z7 = torcrep.close_group([torcrep.LatticePoint((1, 1, 2, 3), 7)])
    fan = torcrep.star_subdivision(
        torcrep.sigma_fan(z7.lattice), torcrep.LatticePoint((1, 1, 2, 3), 7)
    )
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(torcrep.fan_to_json(fan)))
    assert main(["verify", str(path), "7:(1,1,2,3)"]) == 1
    out = capsys.readouterr().out
    assert "not smooth" in out


def test_group_file_input(tmp_path, capsys):
    path = tmp_path / "group.txt"
    path.write_text("# order six\n6:(1,2,3)\n")
    assert main(["analyze", str(path), "--file"]) == 0


def test_export_graph(tmp_path, capsys):
    fan_path = tmp_path / "z6.json"
    main(["resolve", "6:(1,2,3)", "--sequence", "g1,g2,g3,g4",
          "--out", str(fan_path)])
    svg1 = tmp_path / "a.svg"
    svg2 = tmp_path / "b.svg"
    assert main(["export-graph", str(fan_path), "6:(1,2,3)",
                 "--svg", str(svg1)]) == 0
    assert main(["export-graph", str(fan_path), "6:(1,2,3)",
                 "--svg", str(svg2)]) == 0
    assert svg1.read_bytes() == svg2.read_bytes()
    body = svg1.read_text()
    assert body.startswith("<?xml")
    assert body.count("<line") == 12  # edge count of the 6-triangle graph


def test_export_graph_dimension_guard(tmp_path, capsys):
    fan_path = tmp_path / "z7.json"
    main(["resolve", "7:(1,1,2,3)", "--search", "hilbert", "--out", str(fan_path)])
    assert main(["export-graph", str(fan_path), "7:(1,1,2,3)",
                 "--svg", str(tmp_path / "x.svg")]) == 2


def test_export_graph_trivial_group(tmp_path):
    fan_path = tmp_path / "triv.json"
    from torcrep.fans import sigma_fan
    from torcrep.groups import close_group

    triv = close_group([], n=3)
    fan_path.write_text(json.dumps(fan_to_json(sigma_fan(triv.lattice))))
    svg_path = tmp_path / "triv.svg"
    assert main(["export-graph", str(fan_path), "1:(0,0,0)",
                 "--svg", str(svg_path)]) == 0
    assert svg_path.read_text().count("<line") == 3  # bare triangle


def test_svg_edge_count_order6(z6, z6_result):
    svg = junior_graph_svg(z6_result.fan, z6)
    # a 6-triangle planar triangulation of the simplex has 12 edges
    assert svg.count("<line") == 12
    assert svg.count("<circle") == 7


def test_parser_help_smoke():
    parser = build_parser()
    assert parser.prog == "torcrep"
