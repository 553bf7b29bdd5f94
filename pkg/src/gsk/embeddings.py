"""Homomorphisms between the bundled groups (the subgroup/extension flowchart).

Restriction arrows are stored as inclusions of the subgroup into the bigger
group. Extension arrows go the direction in which a homomorphism exists: a
trivial extension has a homomorphic section ``g -> (-zeta(g), g)``, a
non-trivial one only has the projection ``(theta, g) -> g``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import groups as G
from .errors import DescriptorMismatchError, UnknownEmbeddingError
from .groups import GroupDescriptor, GroupElement


@dataclass(frozen=True)
class EmbeddingMap:
    source: GroupDescriptor
    target: GroupDescriptor
    map: Callable = field(compare=False, repr=False)
    note: str = ""

    def __call__(self, g: GroupElement) -> GroupElement:
        return embed(g, self)

    def then(self, other: "EmbeddingMap") -> "EmbeddingMap":
        """``other`` after ``self``."""
        if self.target != other.source:
            raise DescriptorMismatchError(
                f"cannot chain {self.source.tag}->{self.target.tag} with "
                f"{other.source.tag}->{other.target.tag}")
        return EmbeddingMap(self.source, other.target,
                            lambda x, f=self.map, h=other.map: h(f(x)),
                            f"{self.note}; {other.note}")


def embed(g: GroupElement, e: EmbeddingMap) -> GroupElement:
    if g.group != e.source:
        raise DescriptorMismatchError(f"{g.group.tag} is not the source {e.source.tag}")
    return GroupElement(e.target, e.map(g.params))


def identity_embedding(desc: GroupDescriptor) -> EmbeddingMap:
    return EmbeddingMap(desc, desc, lambda x: tuple(x), "identity")


def flowchart_atlas(M: float = 1.0, p: float = 0.5) -> list[EmbeddingMap]:
    """The flowchart arrows, one homomorphism each."""
    g0 = G.galilei()
    gaff = G.affine_galilei()
    shear = G.shearlet()
    wav = G.wavelet()
    gs = G.galilei_schrodinger()
    gms = G.galilei_schrodinger_mass(M)
    gmsp = G.galilei_schrodinger_mass_prime(M)
    gts = G.galilei_schrodinger_trivial()
    heis = G.heisenberg()
    wh = G.weyl_heisenberg()
    sw = G.stockwell()

    atlas = [EmbeddingMap(g0, gaff, lambda x: (x[0], x[1], x[2], 0.0, 0.0), "sigma=tau=0")]
    for pp in dict.fromkeys((float(p), 1.0, -0.5)):
        gph = G.extended_heisenberg(pp)
        m = 1.0 / (pp + 1.0)
        atlas.append(EmbeddingMap(gph, gaff, lambda x, m=m: (x[0], x[1], x[2], x[3], m * x[3]),
                                  f"tau=sigma/(p+1), p={pp:g}"))
    atlas += [
        EmbeddingMap(shear, G.extended_heisenberg(1.0),
                     lambda x: (x[3], x[2], x[1], math.log(x[0])),
                     "e^sigma->mu, v->nu, a->alpha, b->beta"),
        EmbeddingMap(wav, shear, lambda x: (math.exp(x[1]), 0.0, x[0], 0.0), "b=v=0"),
        EmbeddingMap(gs, G.extended_heisenberg(-0.5), lambda x: tuple(x), "p=-1/2, tau=2sigma"),
        EmbeddingMap(gms, gs, lambda x: tuple(x[1:]), "projection, drop theta"),
        EmbeddingMap(gmsp, gs, lambda x: tuple(x[1:]), "projection, drop theta"),
        EmbeddingMap(gs, gts, lambda x: (-x[1] * math.exp(-x[3]),) + tuple(x),
                     "section theta=-zeta_T(g)"),
        EmbeddingMap(heis, gms, lambda x, M=M: (x[0], 0.0, x[1], x[2] / M, 0.0),
                     "b=sigma=0, Mv->p, a->q"),
        EmbeddingMap(wh, gmsp, lambda x, M=M: (x[0], 0.0, x[1], x[2] / M, 0.0),
                     "b=sigma=0, Mv->p, a->q"),
        EmbeddingMap(sw, gts, lambda x: (x[0], 0.0, x[2], 0.0, -math.log(x[1])),
                     "v=b=0, e^-sigma->gamma, a->delta"),
        EmbeddingMap(wav, sw, lambda x: (-math.exp(-x[1]) * x[0], math.exp(-x[1]), x[0]),
                     "section theta=-zeta_s, gamma=e^-sigma, delta=a"),
    ]
    return atlas


def direct_embeddings(M: float = 1.0) -> list[EmbeddingMap]:
    """Subgroup inclusions used by the representation restrictions but not drawn as arrows."""
    gaff = G.affine_galilei()
    return [
        EmbeddingMap(G.wavelet(), gaff, lambda x: (0.0, x[0], 0.0, x[1], 0.0), "b=v=tau=0"),
    ]


def find_embedding(source: GroupDescriptor, target: GroupDescriptor,
                   M: float | None = None, p: float = 0.5) -> EmbeddingMap:
    """A direct entry if there is one, otherwise the shortest chain of flowchart arrows.

    The mass constant is taken from whichever endpoint carries one unless given.
    """
    if M is None:
        consts = dict(source.constants) | dict(target.constants)
        M = consts.get("M", 1.0)
    if source.id == "GPH":
        p = source.const("p")
    if source == target:
        return identity_embedding(source)
    for e in direct_embeddings(M) + flowchart_atlas(M, p):
        if e.source == source and e.target == target:
            return e
    arrows = flowchart_atlas(M, p)
    queue = deque([(source, None)])
    seen = {source}
    while queue:
        node, path = queue.popleft()
        for e in arrows:
            if e.source != node or e.target in seen:
                continue
            chain = e if path is None else path.then(e)
            if e.target == target:
                return chain
            seen.add(e.target)
            queue.append((e.target, chain))
    raise UnknownEmbeddingError(f"no embedding {source.tag} -> {target.tag}")


def wh_intertwiner(M: float = 1.0) -> np.ndarray:
    return np.diag([1.0, 1.0 / M, 1.0, 1.0])
