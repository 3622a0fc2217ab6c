import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DATA
from succmin import exact, lab, verifiers
from succmin.instances import instance_from_dict, load_instance

F = Fraction


def test_config_round_trip_and_validation():
    cfg = lab.GenConfig(dim=3, symmetric=True, vertices=(2, 4))
    assert lab.GenConfig.from_json(json.loads(json.dumps(cfg.to_json()))) == cfg
    with pytest.raises(ValueError):
        lab.GenConfig.from_json({"dimension": 2})
    with pytest.raises(ValueError):
        lab.GenConfig(trials=0)
    with pytest.raises(ValueError):
        lab.GenConfig(vertices=(5, 3))


def test_config_file_loads():
    cfg = lab.GenConfig.from_json(json.loads((DATA / "campaign_ineq4.json").read_text()))
    assert cfg.dim == 3 and cfg.symmetric and cfg.random_lattice


def test_instance_rng_is_order_independent():
    cfg = lab.GenConfig(seed=5)
    a = lab.instance_rng(cfg, "ineq4", 3).random()
    lab.instance_rng(cfg, "ineq4", 2).random()
    assert lab.instance_rng(cfg, "ineq4", 3).random() == a
    assert lab.instance_rng(cfg, "ineq3", 3).random() != a


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_symmetric_bodies(seed, d):
    cfg = lab.GenConfig(dim=d, symmetric=True)
    p = lab.gen_body(cfg, random.Random(seed))
    assert p.is_symmetric()


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_full_bodies_and_lattices(seed, d):
    rng = random.Random(seed)
    cfg = lab.GenConfig(dim=d, random_lattice=True)
    assert lab.gen_full_body(cfg, rng).full_dimensional
    assert exact.is_unimodular(lab.gen_unimodular(d, rng))
    lat = lab.gen_lattice(cfg, rng)
    assert exact.det(lat.vectors) != 0


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_shrink_stays_inside_and_scales_volume(seed, d):
    p = lab.gen_full_body(lab.GenConfig(dim=d), random.Random(seed))
    s = lab.shrink(p)
    assert all(p.contains(v) for v in s.vertices)
    assert s.volume() == lab.SHRINK ** d * p.volume()


@given(st.integers(0, 10 ** 6), st.integers(1, 2), st.booleans())
def test_generated_conjecture_instances_are_admissible(seed, d, tail):
    cfg = lab.GenConfig(dim=d, body_count=(1, 3), vertices=(1, 3), denom=4)
    inst = lab.gen_conjecture_instance(cfg, random.Random(seed), tail)
    if inst is None:
        return
    assert verifiers.conjecture_conditions(inst) is None
    assert list(inst.q) == sorted(inst.q, reverse=True)
    if tail:
        assert all(inst.q[i] % inst.q[i + 1] == 0 for i in range(2, d))


def test_conjecture_instance_conversion():
    inst = load_instance(DATA / "conjecture2d.json")
    conj = lab.instance_to_conjecture(inst)
    back = lab.conjecture_to_instance(conj)
    assert back.q == inst.q and back.bodies == inst.bodies


@pytest.mark.parametrize("statement", ["ineq4", "lemma23", "translation-problem", "conjecture321"])
def test_campaign_is_byte_identical(tmp_path, statement):
    cfg = lab.GenConfig(dim=2, trials=4, seed=11, body_count=(2, 3))
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    sa = lab.run_campaign(statement, cfg, str(a))
    sb = lab.run_campaign(statement, cfg, str(b))
    assert a.read_bytes() == b.read_bytes()
    assert {k: v for k, v in sa.items() if k != "log"} == {k: v for k, v in sb.items() if k != "log"}
    assert sum(sa["counts"].values()) == cfg.trials


@pytest.mark.parametrize("statement", lab.STATEMENTS)
def test_records_reload_and_reverify(tmp_path, statement):
    cfg = lab.GenConfig(dim=2, trials=3, seed=2, vertices=(2, 4))
    out = tmp_path / "log.jsonl"
    lab.run_campaign(statement, cfg, str(out))
    records = lab.load_records(str(out))
    assert [r["index"] for r in records] == list(range(cfg.trials))
    for rec in records:
        assert rec["statement"] == statement and rec["version"] == lab.VERSION
        assert lab.GenConfig.from_json(rec["config"]) == cfg
        if rec["report"]["verdict"] == lab.REJECTED:
            continue
        inst = instance_from_dict(rec["instance"])
        again = lab.run_statement(statement, inst, cfg.budget)
        assert again.to_json() == {k: v for k, v in rec["report"].items() if k != "confirmed"}
        if rec["report"]["verdict"] == verifiers.VIOLATED:
            assert "confirmed" in rec["report"]


def test_campaign_summary_shape():
    s = lab.run_campaign("ineq4", lab.GenConfig(dim=2, trials=2))
    assert set(s["counts"]) == {"holds", "violated", "inconclusive", "rejected", "budget_exhausted"}
    assert s["theorem"] and s["log"] is None


def test_unknown_statement():
    with pytest.raises(KeyError):
        lab.run_campaign("thm999", lab.GenConfig())


def test_theorem_status():
    assert lab.is_theorem("ineq4", 3) and not lab.is_theorem("ineq4", 4)
    assert lab.is_theorem("conjecture321", 2) and not lab.is_theorem("conjecture321", 3)
    assert not lab.is_theorem("monotonicity", 2)
    assert not lab.is_theorem("translation-problem", 1)


def test_confirmation_rejects_holding_instances():
    inst = load_instance(DATA / "cube3.json")
    assert not lab.confirm_violation("ineq4", inst.to_json(), 100)
    tr = load_instance(DATA / "translation1d.json")
    assert not lab.confirm_violation("translation-problem", tr.to_json(), 100)


def test_exhaustive_translation_agrees_with_search():
    tr = load_instance(DATA / "translation1d.json")
    shifts = lab._translation_exhaustive(tr)
    assert shifts == ((0,), (2,))


def test_inadmissible_input_is_rejected():
    # [0, 1] contains lattice points, so the descent has nothing to start from
    bad = {"dim": 1, "bodies": [{"vertices": [[0], [1]]}], "params": {"t": 2}}
    with pytest.raises(verifiers.PreconditionViolated):
        lab.run_statement("lemma23", instance_from_dict(bad))
