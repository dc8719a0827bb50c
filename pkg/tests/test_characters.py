import json
from fractions import Fraction

import numpy as np
import pytest

from corpus import groups, table
from primhom.characters import (
    CharacterTable, character_table, dim_fixed_subspace, dixon_prime, induced_trivial_character,
    load_table, save_table, table_from_json, table_to_json,
)
from primhom.cyclo import CycloMatrix, CycloNumber
from primhom.errors import OrthogonalityError, SchemaError
from primhom.groups import cyclic_group

z = CycloNumber.zeta


def test_z2():
    T = character_table(cyclic_group(2))
    assert T.chars == [[1, 1], [1, -1]]


def test_s3_degrees():
    T = table("S3")
    assert len(T) == 3 and T.dims == [1, 1, 2]


def test_order24_metacyclic():
    T = table("Meta(3,8,2)")
    assert sum(d * d for d in T.dims) == 24
    assert len(T) == 12


@pytest.mark.parametrize("name", sorted(groups()))
def test_tables_on_corpus(name):
    G = groups()[name]
    T = table(name)
    T.check_orthogonality()
    assert len(T) == len(G.classes)
    assert T.chars[0] == [1] * len(T)
    assert T.dims == sorted(T.dims)
    for row in T.chars:
        for v in row:
            assert G.exponent % v.N == 0


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "Dic12", "Heis3"])
def test_fast_and_slow_orthogonality_agree(name):
    table(name).check_orthogonality_slow()


@pytest.mark.parametrize("name", sorted(groups()))
def test_fixed_dimensions(name):
    G = groups()[name]
    T = table(name)
    dims = T.dims
    for g in range(G.order):
        fixed = [dim_fixed_subspace(T, i, g) for i in range(len(T))]
        assert all(0 <= f <= d for f, d in zip(fixed, dims))
        assert fixed[0] == 1
        # the regular representation restricted to <g> has |G|/ord(g) fixed vectors
        assert sum(f * d for f, d in zip(fixed, dims)) == G.order // G.element_order(g)


def test_fixed_dimension_examples():
    T = character_table(cyclic_group(2))
    assert dim_fixed_subspace(T, 1, 1) == 0
    S = table("S3")
    G = groups()["S3"]
    three_cycle = next(g for g in range(6) if G.element_order(g) == 3)
    assert dim_fixed_subspace(S, 2, three_cycle) == 0
    # rotation by 120 degrees has no fixed vector: explicit 2x2 check
    w = z(3)
    R = CycloMatrix([[w, 0], [0, w ** 2]])
    assert (R - CycloMatrix.identity(2)).rank() == 2


def test_induced_examples():
    G = cyclic_group(4)
    assert induced_trivial_character(G, 0) == [4, 0, 0, 0]
    g2 = G.power(1, 2)
    got = induced_trivial_character(G, g2)
    T = character_table(G)
    assert [got[T.class_of[x]] for x in range(4)] == [2, 0, 2, 0]


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "Dic12", "Meta(3,8,2)", "S4", "Gamma", "Sigma12"])
def test_frobenius_reciprocity(name):
    G = groups()[name]
    T = table(name)
    for g in range(G.order):
        ind = induced_trivial_character(G, g)
        assert T.multiplicities(ind) == [dim_fixed_subspace(T, i, g) for i in range(len(T))]
        assert T.inner(ind, T.chars[0]) == 1


def test_dixon_prime():
    p = dixon_prime(24, 24)
    assert p % 24 == 1 and p > 2 * 24 ** 0.5
    assert dixon_prime(1, 1) >= 3


def test_save_load_round_trip(tmp_path):
    for name in ("Z2", "Dic12", "Gamma"):
        T = table(name)
        path = tmp_path / f"{name}.json"
        save_table(T, path)
        assert load_table(path, groups()[name]) == T
        assert load_table(path) == T or load_table(path).same_up_to_row_order(T)


def test_load_rejects_corrupted_row(tmp_path):
    obj = table_to_json(table("S3"))
    obj["chars"][1][1] = {"N": 1, "c": ["2/1"]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    with pytest.raises(OrthogonalityError):
        load_table(path)


def test_load_rejects_schema(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"group": {"kind": "cyclic", "m": 2}, "classes": "nope"}))
    with pytest.raises(SchemaError):
        load_table(path)
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_table(path)


def test_hand_written_s3_table():
    G = groups()["S3"]
    S = table("S3")
    # classes in the computed order; rows permuted on purpose
    k = S.classes
    sign = [1 if G.element_order(r) != 2 else -1 for r, _ in k]
    two = [{1: 2, 2: 0, 3: -1}[G.element_order(r)] for r, _ in k]
    obj = {"group": S.group.spec, "classes": [list(c) for c in k],
           "chars": [two, [1, 1, 1], sign]}
    T = table_from_json(json.loads(json.dumps(obj)), G)
    assert T.same_up_to_row_order(S)


def test_table_value_lookup():
    G = groups()["Q8"]
    T = table("Q8")
    for g in range(G.order):
        assert T.value(0, g) == 1
    two = T.dims.index(2)
    minus_one = next(g for g in range(8) if G.element_order(g) == 2)
    assert T.value(two, minus_one) == -2


def test_multiplicities_of_regular_character():
    G = groups()["S4"]
    T = table("S4")
    reg = [Fraction(G.order) if r == 0 else Fraction(0) for r, _ in T.classes]
    assert T.multiplicities(reg) == T.dims


def test_complex_valued_inner():
    T = table("Meta(7,3,2)")
    for i, row in enumerate(T.chars):
        assert T.multiplicities(row) == [int(j == i) for j in range(len(T))]
