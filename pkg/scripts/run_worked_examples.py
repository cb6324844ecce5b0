#!/usr/bin/env python3
"""Reproduce the worked examples end to end and write all artifacts.

Runs the order-6, order-5, order-7 and order-2 groups through analysis,
resolution (or obstruction reporting), verification and graph export.
Outputs land in the directory given by --out (default ./worked_examples).
"""

import argparse
import json
from pathlib import Path

from torcrep.cli import main as torcrep_main
from torcrep.errors import ResolutionNotFound
from torcrep.fans import fan_to_json, fans_equal, make_cone, make_fan, validate_fan
from torcrep.groups import close_group
from torcrep.lattice import LatticePoint
from torcrep.resolve import certify_fan, resolve, search_resolution

CASES = [
    ("z6", "6:(1,2,3)", "g1,g2,g3,g4"),
    ("z6_alt", "6:(1,2,3)", "g4,g3,g1,g2"),
    ("z5", "5:(1,2,2)", "g1,g2"),
    ("z7_hilbert", "7:(1,1,2,3)", None),  # via --search hilbert
]

OBSTRUCTED = ["2:(1,1,1,1)", "7:(1,1,2,3)"]


def nonstar_model(outdir: Path) -> None:
    """The hand-entered crepant model of the order-6 singularity."""
    z6 = close_group([LatticePoint((1, 2, 3), 6)])
    pts = {
        "e1": LatticePoint((6, 0, 0), 6), "e2": LatticePoint((0, 6, 0), 6),
        "e3": LatticePoint((0, 0, 6), 6), "g1": LatticePoint((1, 2, 3), 6),
        "g2": LatticePoint((2, 4, 0), 6), "g3": LatticePoint((3, 0, 3), 6),
        "g4": LatticePoint((4, 2, 0), 6),
    }
    triangles = [
        ("e3", "g1", "g3"), ("g3", "g1", "g4"), ("e1", "g3", "g4"),
        ("g4", "g1", "g2"), ("g2", "g1", "e2"), ("e2", "g1", "e3"),
    ]
    fan = make_fan(z6.lattice, [make_cone([pts[a] for a in t]) for t in triangles])
    validate_fan(fan)
    summary = certify_fan(z6, fan, star_sequence=False)
    assert summary.smooth and summary.crepant
    # not reachable by any star-subdivision order of the four juniors
    from itertools import permutations

    for perm in permutations(z6.juniors):
        assert not fans_equal(resolve(z6, perm).fan, fan)
    path = outdir / "z6_nonstar.json"
    path.write_text(json.dumps(fan_to_json(fan), sort_keys=True, indent=1) + "\n")
    print(f"== hand-entered non-star model -> {path}")
    code = torcrep_main(["verify", str(path), "6:(1,2,3)",
                         "--out", str(outdir / "z6_nonstar_report.json")])
    assert code == 0
    torcrep_main(["export-graph", str(path), "6:(1,2,3)",
                  "--svg", str(outdir / "z6_nonstar.svg")])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="worked_examples")
    args = parser.parse_args()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    for name, group, sequence in CASES:
        print(f"== {name}: torcrep analyze {group}")
        torcrep_main(["analyze", group])
        fan_path = outdir / f"{name}.json"
        cmd = ["resolve", group, "--out", str(fan_path)]
        cmd += ["--sequence", sequence] if sequence else ["--search", "hilbert"]
        print(f"== {name}: torcrep {' '.join(cmd[:2])} ...")
        assert torcrep_main(cmd) == 0
        report = outdir / f"{name}_report.json"
        assert torcrep_main(["verify", str(fan_path), group,
                             "--out", str(report)]) == 0
        data = json.loads(fan_path.read_text())
        if data["fan"]["lattice"]["n"] == 3:
            torcrep_main(["export-graph", str(fan_path), group,
                          "--svg", str(outdir / f"{name}.svg")])

    print("== obstructed groups")
    for group in OBSTRUCTED:
        torcrep_main(["analyze", group])
        try:
            search_resolution(
                close_group([LatticePoint(
                    tuple(int(x) for x in group.split("(")[1][:-1].split(",")),
                    int(group.split(":")[0]))]),
                "juniors_only",
            )
            raise AssertionError("obstructed group must not resolve crepantly")
        except ResolutionNotFound as exc:
            print(f"   {group}: {exc}")

    nonstar_model(outdir)
    print(f"all artifacts written to {outdir}/")


if __name__ == "__main__":
    main()
