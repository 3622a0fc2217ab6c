"""Instance files shared by every subcommand, and canonical JSON output."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact
from .lattice import Lattice, Subgroup
from .polytope import Polytope

log = logging.getLogger(__name__)

TOP_FIELDS = {"dim", "lattice", "bodies", "q", "basis_e", "subgroup", "params"}
PARAM_TYPES = {
    "r": "int", "t": "rat", "S": "intvecs", "i": "int", "n": "rat", "r_max": "int",
    "v1": "ratvec", "v2": "ratvec", "a": "intvecs", "level": "rat", "axis": "int",
    "budget": "int",
}


class InstanceError(ValueError):
    """Malformed instance; the message names the offending line or field."""


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _rat(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InstanceError(f"field {where}: expected an integer or a 'p/q' string")
    try:
        return exact.rat(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"field {where}: {exc}") from None


def _int(value, where: str) -> int:
    if isinstance(value, bool):
        raise InstanceError(f"field {where}: expected an integer")
    if isinstance(value, int):
        return value
    x = _rat(value, where)
    if x.denominator != 1:
        raise InstanceError(f"field {where}: expected an integer")
    return int(x)


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise InstanceError(f"field {where}: expected a list")
    return value


def _vec(value, where, dim, conv):
    items = _list(value, where)
    if dim is not None and len(items) != dim:
        raise InstanceError(f"field {where}: expected {dim} entries, got {len(items)}")
    return tuple(conv(v, f"{where}[{k}]") for k, v in enumerate(items))


def _vecs(value, where, dim, conv):
    return tuple(_vec(v, f"{where}[{k}]", dim, conv) for k, v in enumerate(_list(value, where)))


@dataclass
class Instance:
    dim: int
    lattice: Lattice
    bodies: tuple
    names: tuple
    q: Optional[tuple] = None
    basis_e: Optional[tuple] = None
    subgroup: Optional[Subgroup] = None
    params: dict = field(default_factory=dict)

    @property
    def body(self) -> Polytope:
        if not self.bodies:
            raise InstanceError("field bodies: at least one body is required")
        return self.bodies[0]

    def param(self, name: str, default=None, required: bool = False):
        if name in self.params:
            return self.params[name]
        if required:
            raise InstanceError(f"field params.{name}: required for this command")
        return default

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "lattice": {"basis": [[exact.fmt(x) for x in v] for v in self.lattice.vectors]},
            "bodies": [{"name": n, "vertices": [[exact.fmt(x) for x in g] for g in b.generators]}
                       for n, b in zip(self.names, self.bodies)],
        }
        if self.q is not None:
            out["q"] = list(self.q)
        if self.basis_e is not None:
            out["basis_e"] = [list(v) for v in self.basis_e]
        if self.subgroup is not None:
            out["subgroup"] = {"gens": [list(g) for g in self.subgroup.gens]}
        if self.params:
            out["params"] = {k: _param_json(v) for k, v in self.params.items()}
        return out


def _param_json(v):
    if isinstance(v, Fraction):
        return exact.fmt(v)
    if isinstance(v, tuple):
        return [_param_json(x) for x in v]
    return v


_CONVERTERS = {
    "int": lambda v, w, d: _int(v, w),
    "rat": lambda v, w, d: _rat(v, w),
    "intvecs": lambda v, w, d: _vecs(v, w, d, _int),
    "ratvec": lambda v, w, d: _vec(v, w, d, _rat),
}


def instance_from_dict(data) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("top level: expected a JSON object")
    for key in sorted(set(data) - TOP_FIELDS):
        log.warning("ignoring unknown field %r", key)
    if "dim" not in data:
        raise InstanceError("field dim: missing")
    dim = _int(data["dim"], "dim")
    if dim < 1:
        raise InstanceError("field dim: must be positive")

    lat_data = data.get("lattice")
    if lat_data is None:
        lattice = Lattice.standard(dim)
    else:
        if not isinstance(lat_data, dict) or "basis" not in lat_data:
            raise InstanceError("field lattice: expected an object with a basis")
        basis = _vecs(lat_data["basis"], "lattice.basis", dim, _rat)
        if len(basis) != dim:
            raise InstanceError(f"field lattice.basis: expected {dim} vectors")
        try:
            lattice = Lattice(basis)
        except ValueError as exc:
            raise InstanceError(f"field lattice.basis: {exc}") from None

    bodies, names = [], []
    for k, b in enumerate(_list(data.get("bodies", []), "bodies")):
        where = f"bodies[{k}]"
        if not isinstance(b, dict) or "vertices" not in b:
            raise InstanceError(f"field {where}: expected an object with vertices")
        verts = _vecs(b["vertices"], f"{where}.vertices", dim, _rat)
        if not verts:
            raise InstanceError(f"field {where}.vertices: empty")
        bodies.append(Polytope(verts))
        name = b.get("name", f"K{k + 1}")
        if not isinstance(name, str):
            raise InstanceError(f"field {where}.name: expected a string")
        names.append(name)

    q = None
    if "q" in data:
        q = _vec(data["q"], "q", None, _int)
        if any(v <= 0 for v in q):
            raise InstanceError("field q: entries must be positive")
    basis_e = None
    if "basis_e" in data:
        basis_e = _vecs(data["basis_e"], "basis_e", dim, _int)
    subgroup = None
    if "subgroup" in data:
        sg = data["subgroup"]
        if not isinstance(sg, dict) or "gens" not in sg:
            raise InstanceError("field subgroup: expected an object with gens")
        subgroup = Subgroup(dim, _vecs(sg["gens"], "subgroup.gens", dim, _int))

    params = {}
    raw = data.get("params", {})
    if not isinstance(raw, dict):
        raise InstanceError("field params: expected an object")
    for key, value in raw.items():
        kind = PARAM_TYPES.get(key)
        if kind is None:
            log.warning("ignoring unknown field params.%s", key)
            continue
        params[key] = _CONVERTERS[kind](value, f"params.{key}", dim)
    return Instance(dim, lattice, tuple(bodies), tuple(names), q, basis_e, subgroup, params)


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(data)


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def polytope_json(p: Polytope) -> dict:
    return {"dim": p.dim, "vertices": [[exact.fmt(x) for x in g] for g in p.generators]}
