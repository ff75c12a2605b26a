"""JSON forms with exact-string scalars."""
from __future__ import annotations

import json
from fractions import Fraction

from .matroid import ValuatedMatroid
from .poly import Flavor, TropPoly
from .scalar import format_scalar, parse_scalar


def _key(u):
    """JSON-safe ground label: exponent tuples become lists."""
    return list(u) if isinstance(u, tuple) else u


def _unkey(x):
    return tuple(x) if isinstance(x, list) else x


def trop_to_json(F: TropPoly) -> dict:
    return {"flavor": F.flavor.value,
            "nvars": F.nvars,
            "terms": [{"coef": format_scalar(a), "exp": list(u)} for u, a in F.sorted_terms()]}


def trop_from_json(doc: dict) -> TropPoly:
    terms = [(tuple(t["exp"]), parse_scalar(str(t["coef"]))) for t in doc["terms"]]
    nvars = doc.get("nvars")
    if nvars is None:
        if not terms:
            raise ValueError("an empty term list needs 'nvars'")
        nvars = len(terms[0][0])
    return TropPoly(terms, nvars, Flavor(doc.get("flavor", "projective")))


def matroid_to_json(vm: ValuatedMatroid) -> dict:
    """Ground, rank and every finite basis value."""
    return {"ground": [_key(e) for e in vm.ground],
            "rank": vm.rank,
            "p": [{"B": [_key(e) for e in vm.ordered(B)], "val": format_scalar(v)}
                  for B, v in sorted(vm.table().items(),
                                     key=lambda kv: [vm.ground.index(e) for e in vm.ordered(kv[0])])]}


def matroid_from_json(doc: dict, **kw) -> ValuatedMatroid:
    ground = [_unkey(e) for e in doc["ground"]]
    table = {}
    for entry in doc["p"]:
        B = frozenset(_unkey(e) for e in entry["B"])
        if B in table:
            raise ValueError(f"basis {entry['B']} listed twice")
        table[B] = parse_scalar(str(entry["val"]))
    return ValuatedMatroid(ground, int(doc["rank"]), table, provenance="SYNTHETIC", **kw)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, default=_default)


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")
