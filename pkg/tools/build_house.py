#!/usr/bin/env python3
"""Generate the two-storey house golden space file.

Two unit cells stacked along z: the complex of the prism [0,1]x[0,1]x[0,2]
split at z=1.  Naming scheme (coordinates index the minimal corner):

    v<x><y><z>    vertex at (x, y, z)
    ex<y><z>      edge along x at height z, side y
    ey<x><z>      edge along y
    ez<x><y><z>   vertical edge from z to z+1
    fz<z>         horizontal face at height z
    fx<x><z>      wall face with normal x, storey z
    fy<y><z>      wall face with normal y, storey z
    s<z>          solid of storey z

Incidence follows the classical chain: solid -> faces -> edges -> vertices.
Vertices carry their coordinates as attributes.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from topodata import Space
from topodata.io import serialize_space


def vertex(x, y, z):
    return f"v{x}{y}{z}"


def build_house() -> Space:
    elements = []
    attributes = {}
    incidence = []

    for x in (0, 1):
        for y in (0, 1):
            for z in (0, 1, 2):
                name = vertex(x, y, z)
                elements.append(name)
                attributes[name] = {"x": str(x), "y": str(y), "z": str(z)}

    for y in (0, 1):
        for z in (0, 1, 2):
            elements.append(f"ex{y}{z}")
            incidence += [(f"ex{y}{z}", vertex(0, y, z)), (f"ex{y}{z}", vertex(1, y, z))]
    for x in (0, 1):
        for z in (0, 1, 2):
            elements.append(f"ey{x}{z}")
            incidence += [(f"ey{x}{z}", vertex(x, 0, z)), (f"ey{x}{z}", vertex(x, 1, z))]
    for x in (0, 1):
        for y in (0, 1):
            for z in (0, 1):
                elements.append(f"ez{x}{y}{z}")
                incidence += [(f"ez{x}{y}{z}", vertex(x, y, z)),
                              (f"ez{x}{y}{z}", vertex(x, y, z + 1))]

    for z in (0, 1, 2):
        elements.append(f"fz{z}")
        incidence += [(f"fz{z}", f"ex0{z}"), (f"fz{z}", f"ex1{z}"),
                      (f"fz{z}", f"ey0{z}"), (f"fz{z}", f"ey1{z}")]
    for x in (0, 1):
        for z in (0, 1):
            elements.append(f"fx{x}{z}")
            incidence += [(f"fx{x}{z}", f"ey{x}{z}"), (f"fx{x}{z}", f"ey{x}{z + 1}"),
                          (f"fx{x}{z}", f"ez{x}0{z}"), (f"fx{x}{z}", f"ez{x}1{z}")]
    for y in (0, 1):
        for z in (0, 1):
            elements.append(f"fy{y}{z}")
            incidence += [(f"fy{y}{z}", f"ex{y}{z}"), (f"fy{y}{z}", f"ex{y}{z + 1}"),
                          (f"fy{y}{z}", f"ez0{y}{z}"), (f"fy{y}{z}", f"ez1{y}{z}")]

    for z in (0, 1):
        elements.append(f"s{z}")
        incidence += [(f"s{z}", f"fz{z}"), (f"s{z}", f"fz{z + 1}"),
                      (f"s{z}", f"fx0{z}"), (f"s{z}", f"fx1{z}"),
                      (f"s{z}", f"fy0{z}"), (f"s{z}", f"fy1{z}")]

    return Space("house", elements, incidence, attributes)


def main():
    house = build_house()
    out = Path(__file__).resolve().parents[1] / "tests" / "data" / "house.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(serialize_space(house), encoding="utf-8")
    print(f"wrote {out}: {len(house)} elements, dimensions {house.dimension_histogram()}")


if __name__ == "__main__":
    main()
