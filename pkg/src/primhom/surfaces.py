"""Simple closed curves on the twice-punctured torus.

pi_1 of the torus with two punctures is free on a, b, c, where a is a loop
around one puncture and b, c generate the homology of the torus; the loop
around the other puncture is ([b, c] a)^-1.  An automorphism of F_3 that
permutes the two peripheral conjugacy classes (up to inversion) is induced
by a homeomorphism, so its action carries simple closed curves to simple
closed curves.  Every nonseparating simple closed curve is a mapping class
image of b, hence the images of b under the group generated by the preset
automorphisms (together with inner automorphisms) are exactly the
elements representing nonseparating simple closed curves, provided the
preset generates the pure mapping class group.

The preset uses the Dehn twists about b and c, and twists about the curves
b' = ab and c' = a^-1 c which cobound annuli containing the puncture a with
b and c.  Modulo the twists about b and c, these give the point pushes of
the puncture along b and c, so by the Birman exact sequence the four
twists generate the pure mapping class group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .characters import CharacterTable, dim_fixed_subspace
from .errors import NotAnAutomorphism, SchemaError
from .groups import FiniteGroup, Homomorphism, polycyclic_group
from .orbits import automorphism_orbit_images, primitive_image_set
from .words import Automorphism, Word, are_conjugate, format_word, parse_word, word_from_json

A, B, C = Word.gen(1), Word.gen(2), Word.gen(3)


def _auto(images: Sequence[Word], inverse: Sequence[Word], name: str) -> Automorphism:
    return Automorphism(tuple(images), tuple(inverse), name)


def inner_automorphism(n: int, k: int) -> Automorphism:
    """Conjugation x -> a_k x a_k^-1."""
    g = Word.gen(k)
    ident = [Word.gen(i + 1) for i in range(n)]
    return _auto([g * x * g.inverse() for x in ident], [g.inverse() * x * g for x in ident], f"inn(a{k})")


@dataclass
class SurfacePreset:
    rank: int
    autos: list[Automorphism]
    scc_seeds: list[Word]
    peripheral: list[Word]
    separating_seeds: list[Word] = field(default_factory=list)
    name: str = ""

    def validate(self):
        for a in self.autos:
            if a.rank != self.rank:
                raise NotAnAutomorphism(f"{a.name}: rank {a.rank} != {self.rank}")
            if not preserves_peripheral(a, self.peripheral):
                raise NotAnAutomorphism(f"{a.name} does not preserve the peripheral structure")
        return True


def _peripheral_match(u: Word, v: Word) -> bool:
    return are_conjugate(u, v) or are_conjugate(u, v.inverse())


def preserves_peripheral(alpha: Automorphism, peripheral: Sequence[Word]) -> bool:
    """alpha permutes the peripheral conjugacy classes, up to inversion."""
    images = [alpha(p) for p in peripheral]
    remaining = list(peripheral)
    for w in images:
        hit = next((i for i, p in enumerate(remaining) if _peripheral_match(w, p)), None)
        if hit is None:
            return False
        remaining.pop(hit)
    return True


def sigma12_preset() -> SurfacePreset:
    twists = [
        _auto([A, B * C, C], [A, B * C.inverse(), C], "T_c"),                       # b -> b c
        _auto([A, B, C * B.inverse()], [A, B, C * B], "T_b"),                       # c -> c b^-1
        _auto([A, A.inverse() * C * B, C], [A, C.inverse() * A * B, C], "T_c'"),    # b -> a^-1 c b
        _auto([A, B, A * B * C], [A, B, B.inverse() * A.inverse() * C], "T_b'"),    # c -> a b c
    ]
    inner = [inner_automorphism(3, k) for k in (1, 2, 3)]
    preset = SurfacePreset(
        rank=3,
        autos=twists + inner,
        scc_seeds=[B],
        peripheral=[A, B.commutator(C) * A],
        separating_seeds=[A, B.commutator(C) * A, B.commutator(C)],
        name="sigma_1_2",
    )
    preset.validate()
    return preset


def sigma12_example_group() -> FiniteGroup:
    """<a, b, c | a^3, b^4, b a b^-1 = a^2, c^2 = b^2, c a c^-1 = a, c b c^-1 = b^3>.

    Built by collection from the relations (a normal, then b, then c), so the
    order is whatever the relations force.
    """
    return polycyclic_group(
        [3, 4, 2],
        powers={2: [1, 1]},                                        # c^2 = b^2
        conjugates={(1, 0): [0, 0, 1], (2, 0): [0, 2], (2, 1): [1, 1, 1, 2]},
        names=["a", "b", "c"],
        name="Sigma12Example",
    )


# --------------------------------------------------------------------------

def scc_image_set(phi: Homomorphism, preset: SurfacePreset, *, separating: bool = False,
                  budget: int | None = None) -> frozenset[int]:
    """phi-images of elements representing nonseparating simple closed curves
    (with ``separating=True``, of the peripheral and separating curves instead)."""
    if phi.rank != preset.rank:
        raise ValueError(f"homomorphism has rank {phi.rank}, preset has rank {preset.rank}")
    seeds = preset.separating_seeds if separating else preset.scc_seeds
    return automorphism_orbit_images(phi, preset.autos, seeds, budget=budget)


@dataclass
class IrrsccReport:
    rows: list[int]
    bound: list[int]            # multiplicity bound per row
    images: list[int]

    def to_json(self) -> dict:
        return {"irrscc_rows": self.rows, "bound_mult": self.bound, "scc_images": self.images}


def irrscc_set(phi: Homomorphism, T: CharacterTable, preset: SurfacePreset, images=None) -> IrrsccReport:
    if images is None:
        images = scc_image_set(phi, preset)
    reps = {}
    for g in images:
        reps.setdefault(int(T.class_of[g]), g)
    rows = [i for i in range(len(T)) if any(dim_fixed_subspace(T, i, g) > 0 for g in reps.values())]
    # multiplicity of V_i allowed in the scc span: rank(pi_1) - 1 copies of dim V_i for
    # rows in Irrscc, plus the trivial summand.  (The closed-surface form 2g-2 does not
    # apply to a punctured surface; the free-group count is the one that matches H_1.)
    bound = [((phi.rank - 1) * d if i in rows else 0) + (1 if i == 0 else 0) for i, d in enumerate(T.dims)]
    return IrrsccReport(rows, bound, sorted(int(g) for g in images))


def sigma12_example_check(preset: SurfacePreset | None = None) -> dict:
    from .characters import character_table

    preset = preset or sigma12_preset()
    G = sigma12_example_group()
    phi = Homomorphism(G, G.gen_indices)
    scc = scc_image_set(phi, preset)
    sep = scc_image_set(phi, preset, separating=True)
    prim = primitive_image_set(phi, track_words=False, check_redundant=False).images
    T = character_table(G)
    irr = irrscc_set(phi, T, preset, scc)
    checks = {
        "autos_verified": preset.validate(),
        "identity_not_scc_image": 0 not in scc,
        "identity_not_separating_image": 0 not in sep,
        "identity_primitive_image": 0 in prim,
        "scc_subset_of_primitive": scc <= prim,
        "irrscc_proper": len(irr.rows) < len(T),
    }
    return {"ok": all(checks.values()), "order": G.order, "checks": checks,
            "scc_images": sorted(scc), "primitive_images": sorted(prim),
            "irrscc_rows": irr.rows, "num_irr": len(T), "bound_mult": irr.bound}


# --------------------------------------------------------------------------
# preset files

def preset_to_json(p: SurfacePreset) -> dict:
    fmt = lambda ws: [format_word(w) for w in ws]
    return {"rank": p.rank, "autos": [fmt(a.images) for a in p.autos],
            "inverses": [fmt(a.inverse_images) for a in p.autos],
            "seeds": fmt(p.scc_seeds), "peripheral": fmt(p.peripheral), "names": [a.name for a in p.autos]}


def preset_from_json(obj: dict) -> SurfacePreset:
    try:
        rank = int(obj["rank"])
        autos = [_auto([word_from_json(w) for w in imgs], [word_from_json(w) for w in inv],
                       (obj.get("names") or [""] * len(obj["autos"]))[k])
                 for k, (imgs, inv) in enumerate(zip(obj["autos"], obj["inverses"], strict=True))]
        preset = SurfacePreset(rank, autos, [word_from_json(w) for w in obj["seeds"]],
                               [word_from_json(w) for w in obj["peripheral"]])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, NotAnAutomorphism):
            raise
        raise SchemaError(f"malformed preset: {exc}") from exc
    preset.validate()
    return preset


def load_preset(path) -> SurfacePreset:
    return preset_from_json(json.loads(Path(path).read_text()))
