"""Reference computations whose outputs are committed as JSON golden files."""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path

from . import classify, config, cubic27, fibration, scroll
from .lattice import Lattice, format_rational

GOLDEN_DIR = Path(__file__).parent / "golden"


def jsonable(obj):
    """Plain JSON data from results: rationals become "p/q", tuples become lists."""
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if obj is scroll.CONTAINS_ALL:
        return "CONTAINS_ALL"
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=1) + "\n"


def suite_cubic() -> dict:
    S = cubic27.enumerate_lines()
    G = cubic27.incidence_graph(S)
    sr = cubic27.simple_roots()
    return {
        "lines": list(S.labels),
        "families": S.family_counts(),
        "degrees": sorted({len(v) for v in G.values()}),
        "triangles": len(cubic27.triangles(S)),
        "double_sixes": len(cubic27.double_sixes(S)),
        "roots": len(cubic27.roots()),
        "automorphism_order": cubic27.incidence_automorphism_order(G),
        "simple_roots": [list(f.coords) for f in sr.roots],
        "simple_root_type": sr.dynkin,
    }


def champion_spec() -> fibration.FibrationSpec:
    return fibration.FibrationSpec.tame((2, 3, 7))


def suite_champion() -> dict:
    delta = fibration.delta_of(champion_spec())
    return {
        "delta": delta,
        "plurigenera": [fibration.plurigenus(delta, m) for m in range(1, 101)],
        "nu_kappa": fibration.nu_kappa(delta),
    }


def duval_types() -> list[str]:
    return [f"A{n}" for n in range(1, 11)] + [f"D{n}" for n in range(4, 11)] + ["E6", "E7", "E8"]


def suite_duval() -> dict:
    out = {}
    for kind in duval_types():
        r = config.classify_singularity(config.dynkin_config(kind))
        out[kind] = {
            "z_num": r.z_num, "z_squared": r.z_squared, "kind": r.kind,
            "multiplicity": r.multiplicity, "embedding_dimension": r.embedding_dimension,
            "ade": r.du_val,
        }
    return out


def suite_torsion() -> dict:
    tors = fibration.torsion_multisets(4)
    return {
        "torsion": tors,
        "orders": [fibration.nu_kappa(fibration.delta_of(fibration.FibrationSpec.tame(t))).torsion_order
                   for t in tors],
        "p12_le1": fibration.p12_le1_multisets(),
    }


def suite_famous() -> dict:
    return {"constraints": list(classify.FAMOUS_TABLE_CONSTRAINTS), "rows": classify.famous_table()}


def suite_scroll() -> dict:
    return {
        "maroni": {str(g): scroll.maroni_admissible(g) for g in range(3, 11)},
        "cubic_range": {str(k): scroll.relative_cubic_range(k) for k in range(-3, 2)},
        "canonical": {
            str(t): scroll.canonical_class(scroll.ScrollSpec(t))
            for t in [(0, 0), (0, 1), (0, 2), (1, 1, 1), (1, 2, 3)]
        },
        "h0": {
            "F(1,1) M": scroll.h0(scroll.ScrollSpec((1, 1)), scroll.M),
            "F(1,2,3) 2M-4L": scroll.h0(scroll.ScrollSpec((1, 2, 3)), scroll.ScrollDivisor(-4, 2)),
        },
    }


def suite_zariski() -> dict:
    L = Lattice(((0, 1), (1, -2)), ("E", "G"))
    A = config.Ambient(L, (L.unit(0), L.unit(1)), ("E", "G"))
    return {
        "E+G": config.zariski_decomposition(A, L.vector((1, 1))),
        "E+2G mobile": config.mobile_reduction(A, L.vector((1, 2))),
    }


SUITES = {
    "cubic": suite_cubic,
    "champion": suite_champion,
    "duval": suite_duval,
    "torsion": suite_torsion,
    "famous": suite_famous,
    "scroll": suite_scroll,
    "zariski": suite_zariski,
}


def golden_path(name: str) -> Path:
    return GOLDEN_DIR / f"{name}.json"


def check(name: str) -> bool:
    """True when the suite's output is byte-identical to its golden file."""
    path = golden_path(name)
    if not path.exists():
        raise FileNotFoundError(path)
    return path.read_text() == dumps(SUITES[name]())


def update(name: str) -> Path:
    path = golden_path(name)
    path.write_text(dumps(SUITES[name]()))
    return path
