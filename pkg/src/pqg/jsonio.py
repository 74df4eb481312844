"""File formats: spaces, paths, homotopies, morphisms, reports.

All numbers are written as shortest exact decimal representations (the
Python float repr), so serialize/parse round-trips are bit-exact, and
every writer emits sorted keys so reports are byte-deterministic.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .prequantum import (
    Morphism,
    PeriodGroup,
    Phase,
    cyclic_group,
    generated_group,
    zero_group,
)
from .paths import SampledHomotopy, SampledPath, make_path
from .spaces import SpaceModel, cone, euclidean, sphere2
from .symmetry import Diffeo, LieGenerator, rotation_from_axis_angle


def space_to_dict(space: SpaceModel) -> dict:
    d = {"space": space.kind, "normalization": space.normalization}
    if space.kind == "euclidean":
        d["n"] = space.n
    if space.kind == "cone":
        d["m"] = space.m
    return d


def space_from_dict(d: dict) -> SpaceModel:
    kind = d["space"]
    norm = float(d.get("normalization", 1.0))
    if kind == "euclidean":
        return euclidean(int(d.get("n", 1)), norm)
    if kind == "sphere2":
        return sphere2(norm)
    if kind == "cone":
        return cone(int(d["m"]), norm)
    raise ValueError(f"unknown space kind {kind!r}")


def path_to_dict(gamma: SampledPath) -> dict:
    return {
        "space": space_to_dict(gamma.space),
        "knots": [[float(t), [float(c) for c in p]]
                  for t, p in zip(gamma.times, gamma.points)],
    }


def path_from_dict(d: dict) -> SampledPath:
    space = space_from_dict(d["space"])
    times = [k[0] for k in d["knots"]]
    points = [k[1] for k in d["knots"]]
    return make_path(space, times, points)


def homotopy_to_dict(sigma: SampledHomotopy) -> dict:
    return {
        "space": space_to_dict(sigma.space),
        "fixed_ends": bool(sigma.fixed_ends),
        "grid": [[[float(c) for c in p] for p in row] for row in sigma.grid],
    }


def homotopy_from_dict(d: dict) -> SampledHomotopy:
    space = space_from_dict(d["space"])
    return SampledHomotopy(space, np.asarray(d["grid"], dtype=float),
                           fixed_ends=bool(d.get("fixed_ends", True)))


def group_to_dict(g: PeriodGroup) -> dict:
    if g.variant == "zero":
        return {"kind": "zero"}
    if g.variant == "cyclic":
        return {"kind": "cyclic", "a": float(g.a)}
    return {"kind": "generated", "gens": [float(x) for x in g.generators]}


def group_from_dict(d: dict) -> PeriodGroup:
    kind = d["kind"]
    if kind == "zero":
        return zero_group()
    if kind == "cyclic":
        return cyclic_group(float(d["a"]))
    if kind == "generated":
        return generated_group(*[float(x) for x in d["gens"]])
    raise ValueError(f"unknown group kind {kind!r}")


def morphism_to_dict(m: Morphism) -> dict:
    return {
        "src": [float(c) for c in m.src],
        "dst": [float(c) for c in m.dst],
        "phase": float(m.phase.value),
        "group": group_to_dict(m.phase.group),
        "trivialization": m.trivialization,
    }


def morphism_from_dict(d: dict, space: SpaceModel) -> Morphism:
    group = group_from_dict(d["group"])
    return Morphism(space, tuple(map(float, d["src"])), tuple(map(float, d["dst"])),
                    Phase(float(d["phase"]), group),
                    trivialization=d.get("trivialization", "reference"))


def diffeo_from_dict(d: dict, space: SpaceModel) -> Diffeo:
    if "rotation" in d:
        spec = d["rotation"]
        R = rotation_from_axis_angle(spec["axis"], float(spec["angle"]))
        return Diffeo.rotation3(space, R)
    if "symplectic" in d:
        spec = d["symplectic"]
        return Diffeo.symplectic_affine(space, spec["S"], spec.get("b"))
    if "deck" in d:
        return Diffeo.deck(space, int(d["deck"]))
    raise ValueError("unknown diffeo descriptor")


def generator_from_dict(d: dict, space: SpaceModel) -> LieGenerator:
    spec = d.get("generator", d)
    if "axis" in spec:
        return LieGenerator.rotation(space, spec["axis"])
    return LieGenerator.hamiltonian(space, spec.get("lin"), spec.get("quad"))


def dumps_canonical(obj, compact: bool = False) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, newline."""
    if compact:
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_json(path, obj, compact: bool = False) -> None:
    with open(path, "w") as f:
        f.write(dumps_canonical(obj, compact))


def read_json(path):
    with open(path) as f:
        return json.load(f)


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        h.update(f.read())
    return h.hexdigest()


def report_to_csv(report: dict) -> str:
    """Flattened key,value rows for tabular consumers, in deterministic
    order."""
    lines = ["key,value"]

    def emit(prefix: str, obj) -> None:
        if isinstance(obj, dict):
            for k in sorted(obj):
                emit(f"{prefix}{k}.", obj[k])
        elif isinstance(obj, list):
            for i, item in enumerate(obj):
                emit(f"{prefix}{i}.", item)
        else:
            lines.append(f"{prefix[:-1]},{obj}")

    emit("", report)
    return "\n".join(lines) + "\n"
