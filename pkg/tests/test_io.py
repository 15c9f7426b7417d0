import json

import pytest

from softtop import io, oracle
from softtop.errors import AxiomViolation, ParseError, UnknownLabel
from softtop.product_topology import product_topology
from softtop.topology import SoftSpace, SoftTopology


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path


def test_indiscrete_document(fixtures_dir):
    S = io.parse_space(fixtures_dir / "indiscrete.json")
    assert len(S.opens) == 2


def test_missing_union_names_the_pair(fixtures_dir):
    with pytest.raises(AxiomViolation) as info:
        io.parse_space(fixtures_dir / "missing_union.json")
    assert info.value.verdict.kind == "not_closed_under_union"
    assert "(F, H)" in str(info.value)


def test_missing_param_is_empty_row(fixtures_dir):
    S, named = io.parse_space_with_names(fixtures_dir / "generated.json")
    assert named["F"].rows() == {"e1": ["a"], "e2": []}
    assert len(S.opens) == 5


def test_parse_errors(tmp_path):
    with pytest.raises(ParseError):
        io.parse_space(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(ParseError):
        io.parse_space(bad)
    with pytest.raises(ParseError):
        io.parse_space(write(tmp_path, "a.json", {"universe": ["a"]}))
    with pytest.raises(ParseError):
        io.parse_space(write(tmp_path, "b.json", {"universe": ["a"], "params": ["e"], "topology": "weird"}))
    with pytest.raises(ParseError):
        io.parse_space(write(tmp_path, "c.json", {"universe": ["a"], "params": ["e"], "soft_sets": {"null": {}}}))
    with pytest.raises(UnknownLabel):
        io.parse_space(write(tmp_path, "d.json", {"universe": ["a"], "params": ["e"], "topology": ["null", "absolute", "Q"]}))
    with pytest.raises(UnknownLabel):
        io.parse_space(write(tmp_path, "e.json", {"universe": ["a"], "params": ["e"], "soft_sets": {"F": {"e": ["z"]}}}))


def test_mapping_documents(fixtures_dir, tmp_path):
    m, X, Y = io.parse_mapping_with_spaces(fixtures_dir / "identity.json")
    assert m.phi == (0, 1) and X == Y
    with pytest.raises(ParseError):
        io.parse_mapping(write(tmp_path, "m.json", {"phi": {"a": "a"}, "psi": {"e1": "e1", "e2": "e2"}}), X.ctx, Y.ctx)
    with pytest.raises(ParseError):
        io.parse_mapping(write(tmp_path, "n.json", {"phi": [], "psi": {}}), X.ctx, Y.ctx)


def test_lemma_config(fixtures_dir):
    X, targets = io.parse_lemma_config(fixtures_dir / "lemma_identity.json")
    assert len(targets) == 1 and targets[0][0] == X


def test_roundtrip_product(fixtures_dir, tmp_path):
    spaces = [io.parse_space(fixtures_dir / n) for n in ("one_open.json", "generated.json")]
    prod = product_topology(spaces)
    path = tmp_path / "p.json"
    io.write_space(prod, path)
    text = path.read_bytes()
    assert b"\r" not in text and b"(a,a)" in text
    back = io.parse_space(path)
    assert back.ctx.universe == prod.ctx.universe
    assert [G.mask for G in back.opens] == [G.mask for G in prod.opens]


def test_roundtrip_random_spaces(tmp_path):
    cfg = oracle.OracleConfig()
    for i in range(30):
        S = oracle.random_space(cfg, oracle.rng_for(5, i))
        path = tmp_path / f"s{i}.json"
        io.write_space(S, path)
        assert io.parse_space(path).topology.keys() == S.topology.keys()


def test_emit_names(ctx, one_open):
    doc = io.emit_space(one_open)
    assert doc.topology[0] == "null" and doc.topology[-1] == "absolute"
    assert list(doc.soft_sets.values()) == [{"e1": ["a"], "e2": ["a"]}]
    assert io.emit_space(SoftSpace(ctx, SoftTopology.indiscrete(ctx))).topology == ["null", "absolute"]
