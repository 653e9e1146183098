#!/usr/bin/env python3
"""Regenerate the glued-algebra fixtures from their set-level definitions.

Each element is (block, frozenset-of-atoms). Operations inside a block are the
powerset operations; across blocks both arguments are pushed into the lower
block through the block homomorphism first. The output tables are what the
Rust side loads as the hand-written fixtures.
"""
import itertools
import json
import pathlib
import sys

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def powerset(atoms):
    return [frozenset(c) for r in range(len(atoms) + 1) for c in itertools.combinations(atoms, r)]


def build(blocks, pi, names, top, bottom):
    # blocks: {"B": atoms, "R": atoms}; pi: function on frozensets B -> R
    elems = [(b, s) for b in blocks for s in powerset(blocks[b])]
    index = {e: i for i, e in enumerate(elems)}

    def down(e):
        b, s = e
        return ("R", pi(s)) if b == "B" else e

    def meet(e, f):
        if e[0] == f[0]:
            return (e[0], e[1] & f[1])
        e, f = down(e), down(f)
        return ("R", e[1] & f[1])

    def join(e, f):
        if e[0] == f[0]:
            return (e[0], e[1] | f[1])
        e, f = down(e), down(f)
        return ("R", e[1] | f[1])

    def neg(e):
        return (e[0], frozenset(blocks[e[0]]) - e[1])

    name = lambda e: names[e]
    return {
        "elements": [name(e) for e in elems],
        "top": name(top),
        "bottom": name(bottom),
        "meet": [[name(meet(e, f)) for f in elems] for e in elems],
        "join": [[name(join(e, f)) for f in elems] for e in elems],
        "neg": [name(neg(e)) for e in elems],
    }


def example1():
    blocks = {"B": ["x", "y", "z"], "R": ["x", "y"]}
    pi = lambda s: s & frozenset(["x", "y"])
    short = {frozenset(): "0", frozenset("x"): "X", frozenset("y"): "Y", frozenset("z"): "Z",
             frozenset("xy"): "XvY", frozenset("xz"): "XvZ", frozenset("yz"): "YvZ",
             frozenset("xyz"): "1"}
    names = {}
    for b in blocks:
        for s in powerset(blocks[b]):
            n = short[s] if s != frozenset(blocks[b]) else "1"
            names[(b, s)] = f"{n}_{b}"
    return build(blocks, pi, names, ("B", frozenset("xyz")), ("R", frozenset()))


def appendix_a():
    blocks = {"B": ["y", "ny"], "R": ["x", "nx"]}
    # atoms of R both sit under Y_B, so Y_B -> 1_R and nY_B -> 0_R
    pi = lambda s: frozenset(["x", "nx"]) if "y" in s else frozenset()
    label = {("B", frozenset()): "0_B", ("B", frozenset(["y"])): "Y_B",
             ("B", frozenset(["ny"])): "nY_B", ("B", frozenset(["y", "ny"])): "1_B",
             ("R", frozenset()): "0_R", ("R", frozenset(["x"])): "X_R",
             ("R", frozenset(["nx"])): "nX_R", ("R", frozenset(["x", "nx"])): "1_R"}
    return build(blocks, pi, label, ("B", frozenset(["y", "ny"])), ("R", frozenset()))


def example2(alg):
    fk = {n: n for n in alg["elements"]}
    fk.update({"X_R": "0_R", "Y_R": "0_R", "X_B": "0_B", "Y_B": "0_B",
               "XvZ_B": "Z_B", "YvZ_B": "Z_B"})
    out = dict(alg)
    out["fk"] = [fk[n] for n in alg["elements"]]
    return out


def render(data):
    lines = ["{"]
    keys = list(data)
    for i, k in enumerate(keys):
        v = data[k]
        comma = "," if i + 1 < len(keys) else ""
        if isinstance(v, list) and v and isinstance(v[0], list):
            rows = ",\n    ".join(json.dumps(r) for r in v)
            lines.append(f'  "{k}": [\n    {rows}\n  ]{comma}')
        else:
            lines.append(f'  "{k}": {json.dumps(v)}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def main():
    e1 = example1()
    files = {
        "example1.rba.json": e1,
        "appendixA.rba.json": appendix_a(),
        "example2.mrba.json": example2(e1),
    }
    for name, data in files.items():
        (OUT / name).write_text(render(data))
        print("wrote", OUT / name, file=sys.stderr)


if __name__ == "__main__":
    main()
