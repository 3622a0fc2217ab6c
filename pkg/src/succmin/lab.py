"""Seeded instance generation and verification campaigns with JSONL logs."""

from __future__ import annotations

import dataclasses
import itertools
import json
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import constructive, exact, verifiers
from .counting import count_G
from .instances import Instance, canonical_json, instance_from_dict
from .lattice import Lattice, Subgroup, integer_points, raster_points
from .minima import successive_minima
from .polytope import Polytope
from .verifiers import (BUDGET_EXHAUSTED, HOLDS, INCONCLUSIVE, VIOLATED, ConditionFailed,
                        ConjectureInstance, PreconditionViolated, VerificationReport)

log = logging.getLogger(__name__)

VERSION = "0.1.0"
REJECTED = "rejected"
SHRINK = Fraction(3, 4)


@dataclass(frozen=True)
class GenConfig:
    dim: int = 2
    body_count: tuple = (1, 1)
    vertices: tuple = (3, 6)
    denom: int = 3
    magnitude: int = 2
    symmetric: bool = False
    seed: int = 0
    trials: int = 20
    random_lattice: bool = False
    shrink_attempts: int = 8
    budget: int = 10 ** 5

    def __post_init__(self):
        object.__setattr__(self, "body_count", tuple(self.body_count))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        positive = [self.dim, self.denom, self.magnitude, self.trials, self.shrink_attempts,
                    self.budget, *self.body_count, *self.vertices]
        if any(int(v) <= 0 for v in positive):
            raise ValueError("all generator bounds must be positive")
        if self.body_count[0] > self.body_count[1] or self.vertices[0] > self.vertices[1]:
            raise ValueError("range bounds out of order")

    def to_json(self) -> dict:
        out = dataclasses.asdict(self)
        out["body_count"] = list(self.body_count)
        out["vertices"] = list(self.vertices)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GenConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)


def instance_rng(cfg: GenConfig, statement: str, index: int) -> random.Random:
    """Independent stream per instance so records do not depend on order."""
    return random.Random(f"{cfg.seed}:{statement}:{index}")


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def _rand_rat(rng: random.Random, cfg: GenConfig) -> Fraction:
    den = rng.randint(1, cfg.denom)
    return Fraction(rng.randint(-cfg.magnitude * den, cfg.magnitude * den), den)


def gen_body(cfg: GenConfig, rng: random.Random, vertex_count: Optional[int] = None) -> Polytope:
    k = vertex_count if vertex_count is not None else rng.randint(*cfg.vertices)
    pts = []
    for _ in range(k):
        p = tuple(_rand_rat(rng, cfg) for _ in range(cfg.dim))
        pts.append(p)
        if cfg.symmetric:
            pts.append(tuple(-v for v in p))
    return Polytope(tuple(pts))


def gen_full_body(cfg: GenConfig, rng: random.Random, attempts: int = 50) -> Polytope:
    count = None
    for _ in range(attempts):
        p = gen_body(cfg, rng, count)
        count = max(cfg.vertices[1], cfg.dim + 1)
        if p.full_dimensional:
            return p.reduced()
    return Polytope.cube(cfg.dim).reduced()


def gen_unimodular(d: int, rng: random.Random, steps: int = 4, bound: int = 2) -> tuple:
    """Product of random elementary integer matrices."""
    m = [list(r) for r in exact.int_identity(d)]
    if d == 1:
        return ((rng.choice((1, -1)),),)
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        c = rng.randint(-bound, bound)
        for row in m:
            row[j] += c * row[i]
    return tuple(tuple(r) for r in m)


def gen_lattice(cfg: GenConfig, rng: random.Random) -> Lattice:
    """Basis U * diag(s) with U unimodular and s in {1/2, 1, 3/2}."""
    if not cfg.random_lattice:
        return Lattice.standard(cfg.dim)
    u = gen_unimodular(cfg.dim, rng)
    diag = [rng.choice((Fraction(1, 2), Fraction(1), Fraction(3, 2))) for _ in range(cfg.dim)]
    cols = exact.transpose(u)
    return Lattice(tuple(tuple(diag[i] * x for x in cols[i]) for i in range(cfg.dim)))


def shrink(p: Polytope, factor=SHRINK) -> Polytope:
    """Scale toward the vertex centroid."""
    verts = p.vertices
    c = tuple(sum(col) / len(verts) for col in zip(*verts))
    return Polytope(tuple(tuple(ci + factor * (x - ci) for x, ci in zip(v, c)) for v in verts))


def gen_conjecture_instance(cfg: GenConfig, rng: random.Random, tail_divisible: bool = False):
    """A ConjectureInstance passing both admissibility conditions, or None when
    shrinking does not reach an admissible instance.

    With ``tail_divisible`` q also satisfies q_{d+1} | q_d | ... | q_3."""
    d = cfg.dim
    lat = gen_lattice(cfg, rng)
    n = rng.randint(*cfg.body_count)
    bodies = [gen_body(cfg, rng).reduced() for _ in range(n)]
    q = sorted((rng.randint(1, 4) for _ in range(d + 1)), reverse=True)
    if tail_divisible:
        for i in range(d - 1, 1, -1):
            q[i] = q[i + 1] * rng.randint(1, 2)
        q[:2] = sorted((max(v, q[2] if d >= 2 else 1) for v in q[:2]), reverse=True)
    basis = exact.transpose(gen_unimodular(d, rng))
    inst = None
    for _ in range(cfg.shrink_attempts + 1):
        inst = ConjectureInstance(lat, basis, tuple(bodies), tuple(q))
        if verifiers.conjecture_conditions(inst) is None:
            return inst
        bodies = [shrink(b) for b in bodies]
    return None


def conjecture_to_instance(inst: ConjectureInstance) -> Instance:
    names = tuple(f"K{k + 1}" for k in range(len(inst.bodies)))
    return Instance(inst.dim, inst.lattice, inst.bodies, names, inst.q, inst.basis)


def instance_to_conjecture(inst: Instance) -> ConjectureInstance:
    if inst.q is None or inst.basis_e is None:
        raise PreconditionViolated("instance needs q and basis_e")
    return ConjectureInstance(inst.lattice, inst.basis_e, inst.bodies, inst.q)


# --------------------------------------------------------------------------
# per-statement instance makers and runners
# --------------------------------------------------------------------------

def _single(cfg, rng):
    lat = gen_lattice(cfg, rng)
    return Instance(cfg.dim, lat, (gen_full_body(cfg, rng),), ("K1",))


def _with_param(make_params):
    def make(cfg, rng):
        inst = _single(cfg, rng)
        inst.params.update(make_params(inst, rng))
        return inst
    return make


def _lemma21_params(inst, rng):
    prof = successive_minima(inst.body, inst.lattice)
    i = rng.randint(1, inst.dim)
    # any n > 2 / lambda_i; q_i is the smallest integer choice
    return {"i": i, "n": Fraction(prof.q[i - 1]) + Fraction(rng.randint(0, 3), 4)}


def _random_subgroup(d, rng, full=True):
    gens = []
    for row in range(d):
        g = [0] * d
        g[row] = rng.randint(1, 3)
        for col in range(row + 1, d):
            g[col] = rng.randint(0, 2)
        gens.append(tuple(g))
    if not full:
        gens = gens[: rng.randint(1, d)]
    return Subgroup(d, tuple(gens))


def _make_subgroup(full):
    def make(cfg, rng):
        inst = _single(cfg, rng)
        inst.subgroup = _random_subgroup(cfg.dim, rng, full)
        inst.params["r_max"] = 6
        return inst
    return make


def _make_lemma421(cfg, rng):
    inst = _single(cfg, rng)
    prof = successive_minima(inst.body, inst.lattice)
    inst.params["a"] = prof.a
    inst.params["i"] = rng.randint(1, cfg.dim)
    return inst


def _make_conjecture(cfg, rng):
    c = gen_conjecture_instance(cfg, rng)
    return None if c is None else conjecture_to_instance(c)


def _make_thm411(cfg, rng):
    c = gen_conjecture_instance(cfg, rng, tail_divisible=True)
    return None if c is None else conjecture_to_instance(c)


def _lattice_free(cfg, rng, lat):
    """A small body missing the lattice, or None."""
    body = gen_full_body(cfg, rng)
    for _ in range(cfg.shrink_attempts + 1):
        if not integer_points(lat.body_in_coords(body)):
            return body
        body = shrink(body, Fraction(1, 2))
    return None


def _make_lemma23(cfg, rng):
    lat = gen_lattice(cfg, rng)
    body = _lattice_free(cfg, rng, lat)
    if body is None:
        return None
    t = Fraction(rng.randint(5, 16), 4)
    return Instance(cfg.dim, lat, (body,), ("K1",), params={"t": t})


def _make_lemma24(cfg, rng):
    lat = gen_lattice(cfg, rng)
    r = rng.randint(1, 3)
    t = r + rng.randint(1, 3)
    body = gen_full_body(cfg, rng)
    size = rng.randint(1, 4)
    s = tuple(sorted({tuple(rng.randint(-3, 3) for _ in range(cfg.dim)) for _ in range(size)}))
    coords = lat.body_in_coords(body)
    for _ in range(cfg.shrink_attempts + 1):
        if constructive.lemma24_conditions(coords, s, r) is None:
            return Instance(cfg.dim, lat, (body,), ("K1",), params={"r": r, "t": t, "S": s})
        body = shrink(body, Fraction(1, 2))
        coords = lat.body_in_coords(body)
    return None


def _translation_ok(bodies, lat, r):
    coords = [lat.body_in_coords(b) for b in bodies]
    for i in range(len(coords)):
        for j in range(len(coords)):
            if i != j and constructive.pair_hits(coords[i], coords[j], r):
                return False
    return True


def _make_translation(cfg, rng):
    lat = gen_lattice(cfg, rng)
    n = rng.randint(*cfg.body_count)
    r = rng.randint(1, 3)
    t = rng.randint(r, 6)
    bodies = [gen_body(cfg, rng).reduced() for _ in range(n)]
    for _ in range(cfg.shrink_attempts + 1):
        if _translation_ok(bodies, lat, r):
            names = tuple(f"K{k + 1}" for k in range(n))
            return Instance(cfg.dim, lat, tuple(bodies), names, params={"r": r, "t": t})
        bodies = [shrink(b, Fraction(1, 2)) for b in bodies]
    return None


def run_statement(statement: str, inst: Instance, budget: int = 10 ** 5) -> VerificationReport:
    """Run one statement on an instance (also used by the command line)."""
    k, lat = (inst.body, inst.lattice) if inst.bodies else (None, inst.lattice)
    if statement in SINGLE_BODY:
        return SINGLE_BODY[statement](k, lat)
    if statement == "brunn-minkowski":
        return verifiers.check_brunn_minkowski(k)
    if statement == "lemma21":
        prof = successive_minima(k, lat)
        return verifiers.check_lemma21(k, lat, prof, inst.param("i", required=True),
                                       inst.param("n", required=True))
    if statement == "lemma22":
        sub = inst.subgroup
        if sub is None:
            raise PreconditionViolated("lemma22 needs a subgroup")
        return verifiers.check_lemma22(k, lat, sub)
    if statement == "monotonicity":
        sub = inst.subgroup or Subgroup(inst.dim, exact.int_identity(inst.dim))
        return verifiers.check_monotonicity(k, lat, sub, inst.param("r_max", 6))
    if statement == "lemma421":
        return verifiers.check_lemma421(k, lat, inst.param("a", required=True),
                                        inst.param("i", required=True))
    if statement == "conjecture321":
        return verifiers.verify_conjecture321(instance_to_conjecture(inst))
    if statement == "thm411":
        return verifiers.verify_thm411(instance_to_conjecture(inst))
    if statement in CONSTRUCTIONS:
        return CONSTRUCTIONS[statement](inst, budget)
    raise KeyError(f"unknown statement {statement!r}")


SINGLE_BODY: dict = {
    "thm311": verifiers.verify_thm311,
    "ineq3": verifiers.verify_ineq3,
    "thm312": verifiers.verify_thm312,
    "ineq4": verifiers.verify_ineq4,
    "minkowski2": verifiers.verify_minkowski2,
    "cor411": verifiers.verify_cor411,
    "thm421chain": verifiers.evaluate_thm421_chain,
}


def construct_lemma23(inst: Instance, budget=None) -> VerificationReport:
    res = constructive.lemma23_descent(inst.body, inst.lattice, inst.param("t", required=True))
    return VerificationReport("lemma23", HOLDS, Fraction(0), Fraction(0), None,
                              {"v": list(res.v), "steps": res.steps, "counts": list(res.counts)})


def construct_lemma24(inst: Instance, budget=None) -> VerificationReport:
    res = constructive.lemma24_run(inst.body, inst.param("S", required=True), inst.lattice,
                                   inst.param("r", required=True), inst.param("t", required=True))
    steps = [s for kind, _, s in res.trace]
    return VerificationReport("lemma24", HOLDS, Fraction(0), Fraction(0), None,
                              {"S_prime": [list(v) for v in res.translated], "steps": steps})


def construct_lemma321(inst: Instance, budget=None) -> VerificationReport:
    x = constructive.lemma321_parallelogram(inst.body, inst.param("v1", required=True),
                                            inst.param("v2", required=True))
    return VerificationReport("lemma321", HOLDS, Fraction(0), Fraction(0), None, {"x": list(x)})


def construct_translation(inst: Instance, budget=10 ** 5) -> VerificationReport:
    budget = inst.param("budget", budget)
    out = constructive.translation_problem_search(inst.bodies, inst.lattice, inst.param("r", required=True),
                                                  inst.param("t", required=True), budget)
    if out.status == constructive.FOUND:
        verdict, witness = HOLDS, None
    elif out.status == constructive.NO_SOLUTION:
        verdict, witness = VIOLATED, {"instance": "no translation exists modulo t"}
    else:
        verdict, witness = BUDGET_EXHAUSTED, None
    return VerificationReport("translation-problem", verdict, Fraction(out.nodes), Fraction(budget),
                              witness, out.to_json())


CONSTRUCTIONS: dict = {
    "lemma23": construct_lemma23,
    "lemma24": construct_lemma24,
    "lemma321": construct_lemma321,
    "translation-problem": construct_translation,
}

MAKERS: dict = {
    **{name: _single for name in ("thm311", "ineq3", "thm312", "ineq4", "minkowski2", "cor411",
                                  "thm421chain", "brunn-minkowski")},
    "lemma21": _with_param(_lemma21_params),
    "lemma22": _make_subgroup(True),
    "monotonicity": _make_subgroup(False),
    "lemma421": _make_lemma421,
    "conjecture321": _make_conjecture,
    "thm411": _make_thm411,
    "lemma23": _make_lemma23,
    "lemma24": _make_lemma24,
    "translation-problem": _make_translation,
}

STATEMENTS = tuple(sorted(MAKERS))


def is_theorem(statement: str, dim: int) -> bool:
    """Whether a violation would contradict a proven statement."""
    if statement in ("monotonicity", "translation-problem"):
        return False
    if statement == "conjecture321":
        return dim <= 2
    if statement == "ineq4":
        return dim <= 3
    return True


# --------------------------------------------------------------------------
# independent confirmation
# --------------------------------------------------------------------------

def _raster_count(k: Polytope, lat: Lattice) -> int:
    return len(raster_points(k, lat))


def confirm_violation(statement: str, inst_json: dict, budget: int) -> bool:
    """Re-load the instance, re-run the statement, and recount every body by
    LP rasterization (a different enumeration path)."""
    inst = instance_from_dict(json.loads(canonical_json(inst_json)))
    for b in inst.bodies:
        if b.full_dimensional and count_G(b, inst.lattice)[0] != _raster_count(b, inst.lattice):
            return False
    if statement == "translation-problem":
        return _translation_exhaustive(inst) is None
    report = run_statement(statement, inst, budget)
    return report.verdict == VIOLATED


def _translation_exhaustive(inst: Instance):
    """Plain product search over all shift tuples; returns one or None."""
    t = Fraction(inst.param("t"))
    if t.denominator != 1:
        raise PreconditionViolated("t must be an integer")
    t = int(t)
    coords = [inst.lattice.body_in_coords(b) for b in inst.bodies]
    res = list(itertools.product(range(t), repeat=inst.dim))
    zero = tuple([0] * inst.dim)
    for rest in itertools.product(res, repeat=len(coords) - 1):
        shifts = (zero,) + rest
        if constructive.translation_valid(coords, shifts, t):
            return shifts
    return None


# --------------------------------------------------------------------------
# campaigns
# --------------------------------------------------------------------------

def run_one(statement: str, cfg: GenConfig, index: int) -> dict:
    rng = instance_rng(cfg, statement, index)
    inst = MAKERS[statement](cfg, rng)
    record = {"config": cfg.to_json(), "index": index, "statement": statement,
              "timestamp": None, "version": VERSION}
    if inst is None:
        record.update(instance=None, report={"verdict": REJECTED, "reason": "no admissible instance"})
        return record
    inst_json = inst.to_json()
    record["instance"] = inst_json
    try:
        report = run_statement(statement, inst, cfg.budget)
    except (PreconditionViolated, ConditionFailed) as exc:
        record["report"] = {"verdict": REJECTED, "reason": str(exc)}
        return record
    out = report.to_json()
    if report.verdict == VIOLATED:
        out["confirmed"] = confirm_violation(statement, inst_json, cfg.budget)
    record["report"] = out
    return record


def run_campaign(statement: str, cfg: GenConfig, out_path: Optional[str] = None,
                 progress: Optional[Callable[[int], None]] = None) -> dict:
    """Generate cfg.trials instances, verify each, write one JSON line per
    instance (ordered by index) and return summary counts."""
    if statement not in MAKERS:
        raise KeyError(f"unknown statement {statement!r}")
    summary = {HOLDS: 0, VIOLATED: 0, INCONCLUSIVE: 0, REJECTED: 0, BUDGET_EXHAUSTED: 0}
    confirmed = 0
    lines = []
    for index in range(cfg.trials):
        rec = run_one(statement, cfg, index)
        verdict = rec["report"]["verdict"]
        summary[verdict] += 1
        if rec["report"].get("confirmed"):
            confirmed += 1
        lines.append(canonical_json(rec))
        if progress:
            progress(index)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")
    return {"statement": statement, "counts": summary, "confirmed_violations": confirmed,
            "theorem": is_theorem(statement, cfg.dim), "trials": cfg.trials, "log": out_path}


def load_records(path: str) -> list:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
