#!/usr/bin/env python3
"""Writes the datum fixtures in this directory. Run from anywhere; output is deterministic."""

import copy
import json
from pathlib import Path

HERE = Path(__file__).resolve().parent


def vertex(vid, genus=0, boundary=False):
    return {"id": vid, "vtype": "type2", "genus": genus, "boundary": boundary}


def point(vid):
    return {"id": vid, "vtype": "type1", "genus": 0, "boundary": False}


def edge(eid, tail, head, length, opposite):
    return {"id": eid, "tail": tail, "head": head, "length": length, "opposite": opposite}


def leg(lid, tail):
    return {"id": lid, "tail": tail, "head": "p_" + lid, "length": "inf"}


def p1(level, num, den, marked):
    return {"level": level, "form": {"p1": {"num": num, "den": den, "marked": marked}}}


def datum(vertices, edges, legs, reductions, re):
    vs = list(vertices) + [point("p_" + l["id"]) for l in legs]
    return {"vertices": vs, "edges": edges, "legs": legs, "reductions": reductions, "re": re}


def bond(eid, fid, tail, head, length):
    return [edge(eid, tail, head, length, fid), edge(fid, head, tail, length, eid)]


# dz/(z(z-1)) on one vertex, legs at 0, 1, infinity
P1_THREE_LEGS = datum(
    [vertex("x")], [], [leg("a", "x"), leg("b", "x"), leg("c", "x")],
    {"x": p1("0", ["1"], ["0", "-1", "1"], {"a": "0", "b": "1", "c": "inf"})},
    {"a": "-1", "b": "1", "c": "0"})


def slope1(length="1", scale=1):
    """x at level 0 with dz/z^2, y at level `length` with dz/(z(z-1)); slope 1 on e."""
    lv = length
    return datum(
        [vertex("x"), vertex("y")], bond("e", "f", "x", "y", length),
        [leg("a", "x"), leg("b", "x"), leg("c", "y"), leg("d", "y")],
        {"x": p1("0", ["1"], ["0", "0", "1"], {"e": "0", "a": "1", "b": "inf"}),
         "y": p1(lv, ["1"], ["0", "-1", "1"], {"c": "0", "d": "1", "f": "inf"})},
        {"e": "0", "f": "0", "a": "0", "b": "0",
         "c": f"-{scale}*t^({'-' + lv})", "d": f"{scale}*t^({'-' + lv})"})


# slope -1: the same chain read from the other end
TWO_VERTEX_SLOPE_M1 = datum(
    [vertex("x"), vertex("y")], bond("e", "f", "x", "y", "1"),
    [leg("a", "x"), leg("b", "x"), leg("c", "y"), leg("d", "y")],
    {"x": p1("1", ["1"], ["0", "-1", "1"], {"a": "0", "b": "1", "e": "inf"}),
     "y": p1("0", ["1"], ["0", "0", "1"], {"f": "0", "c": "1", "d": "inf"})},
    {"e": "0", "f": "0", "a": "-t^-1", "b": "t^-1", "c": "0", "d": "0"})

# slope 0 with a nonzero residue across the edge
TWO_VERTEX_SLOPE_0 = datum(
    [vertex("x"), vertex("y")], bond("e", "f", "x", "y", "2"),
    [leg("a", "x"), leg("b", "x"), leg("c", "y"), leg("d", "y")],
    {"x": p1("0", ["1"], ["0", "-1", "1"], {"e": "0", "a": "1", "b": "inf"}),
     "y": p1("0", ["1"], ["0", "-1", "1"], {"c": "0", "f": "1", "d": "inf"})},
    {"e": "-1 + 2*t", "f": "1 - 2*t", "a": "1 - 2*t", "b": "0", "c": "-1 + 2*t", "d": "0"})

# slope 2: dz/z^3 at x, dz/(z(z-1)(z-2)) at y
TWO_VERTEX_SLOPE_2 = datum(
    [vertex("x"), vertex("y")], bond("e", "f", "x", "y", "1"),
    [leg("a", "x"), leg("b", "x"), leg("c", "y"), leg("d", "y"), leg("g", "y")],
    {"x": p1("0", ["1"], ["0", "0", "0", "1"], {"e": "0", "b": "1", "a": "inf"}),
     "y": p1("2", ["1"], ["0", "2", "-3", "1"], {"c": "0", "d": "1", "g": "2", "f": "inf"})},
    {"e": "0", "f": "0", "a": "0", "b": "0", "c": "1/2*t^-2", "d": "-t^-2", "g": "1/2*t^-2"})

# a loop at a single vertex
LOOP = datum(
    [vertex("x")], bond("e", "f", "x", "x", "1"), [leg("a", "x")],
    {"x": p1("0", ["1"], ["0", "-1", "1"], {"e": "0", "f": "1", "a": "inf"})},
    {"e": "-1 + t", "f": "1 - t", "a": "0"})

# a boundary vertex whose residues do not balance
BOUNDARY = datum(
    [vertex("x", boundary=True)], [], [leg("a", "x"), leg("b", "x"), leg("c", "x")],
    {"x": p1("0", ["1"], ["0", "-1", "1"], {"a": "0", "b": "1", "c": "inf"})},
    {"a": "-1 + t", "b": "1", "c": "0"})

# x at level 0 below y, w at level 1 joined by a slope-0 edge
TWO_LEVEL_GRC = datum(
    [vertex("x"), vertex("y"), vertex("w")],
    bond("e1", "f1", "x", "y", "1") + bond("e2", "f2", "x", "w", "1") + bond("h", "hop", "y", "w", "1"),
    [leg("a", "x"), leg("b", "x"), leg("c", "y"), leg("d", "w")],
    {"x": p1("0", ["-1", "2"], ["0", "0", "1", "-2", "1"], {"e1": "0", "e2": "1", "b": "1/2", "a": "inf"}),
     "y": p1("1", ["1"], ["0", "-1", "1"], {"h": "0", "c": "1", "f1": "inf"}),
     "w": p1("1", ["1"], ["0", "-1", "1"], {"d": "0", "hop": "1", "f2": "inf"})},
    {"e1": "0", "f1": "0", "e2": "0", "f2": "0", "a": "0", "b": "0",
     "h": "-t^-1 + 2", "hop": "t^-1 - 2", "c": "t^-1 - 2", "d": "-t^-1 + 2"})

# four legs on P^1 with Puiseux corrections to the residues
P1_FOUR_LEGS = datum(
    [vertex("x")], [], [leg("a", "x"), leg("b", "x"), leg("c", "x"), leg("d", "x")],
    {"x": p1("0", ["1"], ["0", "2", "-3", "1"], {"a": "0", "b": "1", "c": "2", "d": "inf"})},
    {"a": "1/2 + t^(1/3)", "b": "-1 - 2*t^(1/3) + t^(5/2)", "c": "1/2 + t^(1/3) - t^(5/2)", "d": "0"})

# chain x - y - z with slopes 1 and 1
THREE_VERTEX_CHAIN = datum(
    [vertex("x"), vertex("y"), vertex("z")],
    bond("e", "f", "x", "y", "1") + bond("g", "h", "y", "z", "1"),
    [leg("a", "x"), leg("b", "x"), leg("c", "z"), leg("d", "z")],
    {"x": p1("0", ["1"], ["0", "0", "1"], {"e": "0", "a": "1", "b": "inf"}),
     "y": p1("1", ["1"], ["0", "0", "1"], {"g": "0", "f": "inf"}),
     "z": p1("2", ["1"], ["0", "-1", "1"], {"c": "0", "d": "1", "h": "inf"})},
    {"e": "0", "f": "0", "g": "0", "h": "0", "a": "0", "b": "0", "c": "-t^-2", "d": "t^-2"})


def with_changes(base, **edits):
    d = copy.deepcopy(base)
    for path, value in edits.items():
        node = d
        keys = path.split("__")
        for k in keys[:-1]:
            node = node[int(k)] if isinstance(node, list) else node[k]
        node[keys[-1]] = value
    return d


FIXTURES = {
    "p1_three_legs": P1_THREE_LEGS,
    "two_vertex_slope-1": TWO_VERTEX_SLOPE_M1,
    "two_vertex_slope0": TWO_VERTEX_SLOPE_0,
    "two_vertex_slope1": slope1(),
    "two_vertex_slope1_half": slope1("1/2"),
    "two_vertex_slope2": TWO_VERTEX_SLOPE_2,
    "loop": LOOP,
    "boundary_vertex": BOUNDARY,
    "two_level_grc": TWO_LEVEL_GRC,
    "p1_four_legs": P1_FOUR_LEGS,
    "three_vertex_chain": THREE_VERTEX_CHAIN,
    # deliberate failures, one per validator condition
    "bad_slope": with_changes(slope1(), edges__0__length="2/3", edges__1__length="2/3"),
    "bad_condition1": with_changes(
        slope1(), reductions__x={"level": "0", "form": {"abstract": {
            "log_order": {"e": 1, "a": 0, "b": 0}, "residue": {"e": "0", "a": "1", "b": "-1"}}}},
        re__a="1", re__b="-1"),
    "bad_condition2": with_changes(P1_THREE_LEGS, re__a="-2", re__b="2"),
    "bad_condition3": with_changes(P1_THREE_LEGS, re__a="-1 + t"),
    "bad_condition4": with_changes(P1_THREE_LEGS, re__a="-1 + t", re__c="-t"),
    "bad_alternating": with_changes(TWO_VERTEX_SLOPE_0, re__f="1 - 3*t", re__c="-1 + 3*t"),
    "bad_slope0_level": with_changes(TWO_VERTEX_SLOPE_0, re__e="-t^-1", re__f="t^-1", re__a="t^-1", re__c="-t^-1"),
    "bad_degree": with_changes(P1_THREE_LEGS, reductions__x={"level": "0", "form": {"abstract": {
        "log_order": {"a": 0, "b": 0, "c": 2}, "residue": {"a": "-1", "b": "1", "c": "0"}}}}),
    "bad_abstract_residue": with_changes(P1_THREE_LEGS, reductions__x={"level": "0", "form": {"abstract": {
        "log_order": {"a": 0, "b": 0, "c": 1}, "residue": {"a": "-1", "b": "1", "c": "3"}}}}),
    "bad_p1_support": with_changes(P1_THREE_LEGS, reductions__x={"level": "0", "form": {"p1": {
        "num": ["-2", "1"], "den": ["0", "-1", "1"], "marked": {"a": "0", "b": "1", "c": "inf"}}}},
        re__a="2", re__b="-1", re__c="-1"),
    "bad_residue_theorem": with_changes(P1_THREE_LEGS, reductions__x={"level": "0", "form": {"p1": {
        "num": ["1"], "den": ["0", "1", "0", "1"], "marked": {"a": "0", "b": "1", "c": "inf"}}}}),
}


def main():
    for name, d in FIXTURES.items():
        (HERE / f"{name}.json").write_text(json.dumps(d, indent=1) + "\n")


if __name__ == "__main__":
    main()
