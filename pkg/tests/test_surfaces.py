import itertools
import json

import pytest

from corpus import groups, table
from primhom.characters import character_table
from primhom.errors import NotAnAutomorphism, SchemaError
from primhom.groups import Homomorphism, abelian_group, cyclic_group
from primhom.orbits import automorphism_orbit_images, primitive_image_set
from primhom.surfaces import (
    SurfacePreset, inner_automorphism, irrscc_set, load_preset, preserves_peripheral, preset_from_json,
    preset_to_json, scc_image_set, sigma12_example_check, sigma12_example_group, sigma12_preset,
)
from primhom.words import Automorphism, Word

A, B, C = Word.gen(1), Word.gen(2), Word.gen(3)


def test_preset_validates():
    p = sigma12_preset()
    assert p.validate()
    for f in p.autos:
        for i in range(3):
            x = Word.gen(i + 1)
            assert f.inverse()(f(x)) == x and f(f.inverse()(x)) == x


def test_peripheral_preservation_examples():
    per = sigma12_preset().peripheral
    # swapping b and c sends [b, c] a to [c, b] a, not conjugate to it or its inverse
    assert not preserves_peripheral(Automorphism((A, C, B), (A, C, B)), per)
    # b -> a b is an automorphism but moves the puncture class [b, c] a
    push = Automorphism((A, A * B, C), (A, A.inverse() * B, C))
    assert not preserves_peripheral(push, per)
    assert preserves_peripheral(inner_automorphism(3, 2), per)


def test_preset_rejects_bad_auto():
    p = sigma12_preset()
    bad = SurfacePreset(3, [Automorphism((A, A * B, C), (A, A.inverse() * B, C))], [B], p.peripheral)
    with pytest.raises(NotAnAutomorphism):
        bad.validate()


def test_trivial_target():
    G = cyclic_group(1)
    assert scc_image_set(Homomorphism(G, [0, 0, 0]), sigma12_preset()) == {0}


def test_rank_mismatch():
    G = groups()["S3"]
    with pytest.raises(ValueError):
        scc_image_set(Homomorphism(G, G.gen_indices), sigma12_preset())


def test_sigma12_claims():
    rep = sigma12_example_check()
    assert rep["ok"], rep["checks"]
    assert rep["order"] == sigma12_example_group().order == 24
    assert len(rep["irrscc_rows"]) < rep["num_irr"]


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "Q8", "Dic12", "Sigma12", "S4", "Heis3"])
def test_scc_images_are_primitive_images(name):
    G = groups()[name]
    gens = list(G.gen_indices)
    imgs = (gens + [G.mul(*gens)] * 3)[:3]
    phi = Homomorphism(G, imgs)
    scc = scc_image_set(phi, sigma12_preset())
    prim = primitive_image_set(phi, track_words=False).images
    assert scc <= prim
    assert {G.conjugate(g, h) for g in scc for h in range(G.order)} == scc


@pytest.mark.parametrize("moduli", [[2], [3], [2, 2], [4], [6]])
def test_abelian_irrscc_is_everything(moduli):
    G = abelian_group(moduli)
    gens = list(G.gen_indices)
    phi = Homomorphism(G, (gens * 3)[:3])
    T = character_table(G)
    rep = irrscc_set(phi, T, sigma12_preset())
    assert rep.rows == list(range(len(T)))


def test_preset_json_round_trip(tmp_path):
    p = sigma12_preset()
    obj = json.loads(json.dumps(preset_to_json(p)))
    q = preset_from_json(obj)
    assert [f.images for f in q.autos] == [f.images for f in p.autos]
    path = tmp_path / "preset.json"
    path.write_text(json.dumps(obj))
    assert [f.name for f in load_preset(path).autos] == [f.name for f in p.autos]
    with pytest.raises(SchemaError):
        preset_from_json({"rank": 3})
    obj["autos"][0] = ["a1", "a1 a2", "a3"]
    obj["inverses"][0] = ["a1", "a1^-1 a2", "a3"]
    with pytest.raises(NotAnAutomorphism):
        preset_from_json(obj)


def test_preset_images_stable_under_extra_compositions():
    """Adding short compositions of peripheral-preserving automorphisms
    (including swaps of the punctures) does not enlarge the image set."""
    p = sigma12_preset()
    G = sigma12_example_group()
    phi = Homomorphism(G, G.gen_indices)
    base = scc_image_set(phi, p)
    extra = []
    for f, g in itertools.product(p.autos, repeat=2):
        h = f.then(g)
        extra.append(h)
        extra.append(h.inverse())
    for f, g, h in itertools.islice(itertools.product(p.autos, repeat=3), 0, None, 7):
        extra.append(f.then(g).then(h))
    assert all(preserves_peripheral(f, p.peripheral) for f in extra)
    more = automorphism_orbit_images(phi, p.autos + extra, p.scc_seeds)
    assert more == base


def test_scc_images_independent_of_nonseparating_seed():
    p = sigma12_preset()
    G = sigma12_example_group()
    phi = Homomorphism(G, G.gen_indices)
    assert scc_image_set(phi, p) == automorphism_orbit_images(phi, p.autos, [C])
