"""Weighted chain complexes and chain maps induced by simplicial maps."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .complex import Simplex, WeightedComplex, embed_ids, faces
from .errors import CompositionNotZero, InvalidMap
from .exactalg import IntMatrix


def weighted_boundary(K: WeightedComplex, n: int) -> IntMatrix:
    """Matrix of the weighted boundary ``C_n -> C_{n-1}`` over canonical bases.

    The column of an n-simplex has ``(-1)^i * w(s) / w(face_i)`` in the row of
    its i-th face.
    """
    cols = K.simplices(n)
    rows = K.simplices(n - 1) if n >= 1 else ()
    m = IntMatrix(len(rows), len(cols))
    if n < 1:
        return m
    for j, s in enumerate(cols):
        w = K.weight(s)
        for i, f in enumerate(faces(s)):
            m[K.index(f), j] = (-1) ** i * (w // K.weight(f))
    return m


def relative_weighted_boundary(K: WeightedComplex, A: WeightedComplex | None, n: int) -> IntMatrix:
    """Weighted boundary on ``C_*(K) / C_*(A)``: rows and columns of A removed."""
    if A is None or A.n_vertices == 0:
        return weighted_boundary(K, n)
    inA = embed_ids(A, K)
    full = weighted_boundary(K, n)
    keep_cols = [j for j, s in enumerate(K.simplices(n)) if s not in inA]
    keep_rows = [i for i, s in enumerate(K.simplices(n - 1)) if s not in inA] if n >= 1 else []
    return full.submatrix(keep_rows, keep_cols)


@dataclass
class ChainComplexData:
    """Bases and boundary matrices of an absolute or relative weighted chain complex.

    ``boundaries[n]`` maps ``C_n -> C_{n-1}``; ``boundaries[0]`` is the
    zero map to the (empty) group in degree -1.
    """

    complex: WeightedComplex
    basis: list[list[Simplex]]
    boundaries: list[IntMatrix]
    relative_to: WeightedComplex | None = None
    _positions: list[dict[Simplex, int]] = field(default_factory=list, repr=False)

    @property
    def kind(self) -> str:
        return "absolute" if self.relative_to is None else "relative"

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    def rank(self, n: int) -> int:
        return len(self.basis[n]) if 0 <= n < len(self.basis) else 0

    def boundary(self, n: int) -> IntMatrix:
        """``d_n``, with empty matrices outside the stored range."""
        if 0 <= n < len(self.boundaries):
            return self.boundaries[n]
        return IntMatrix(self.rank(n - 1), self.rank(n))

    def position(self, n: int, simplex: Simplex) -> int | None:
        return self._positions[n].get(simplex) if 0 <= n < len(self._positions) else None

    def counts(self) -> list[int]:
        return [len(b) for b in self.basis]


def chain_complex(K: WeightedComplex, rel: WeightedComplex | None = None) -> ChainComplexData:
    """Assemble ``(C_*(K, rel), weighted boundary)`` and check ``d o d = 0``."""
    inA = embed_ids(rel, K) if rel is not None else set()
    basis = [[s for s in K.simplices(n) if s not in inA] for n in range(K.dim + 1)]
    positions = [{s: i for i, s in enumerate(b)} for b in basis]
    boundaries = []
    for n in range(K.dim + 1):
        m = IntMatrix(len(basis[n - 1]) if n else 0, len(basis[n]))
        if n:
            for j, s in enumerate(basis[n]):
                w = K.weight(s)
                for i, f in enumerate(faces(s)):
                    r = positions[n - 1].get(f)
                    if r is not None:
                        m[r, j] = (-1) ** i * (w // K.weight(f))
        boundaries.append(m)
    for n in range(1, K.dim):
        if not (boundaries[n] @ boundaries[n + 1]).is_zero():
            raise CompositionNotZero(f"weighted boundary squares to a nonzero map in degree {n + 1}")
    return ChainComplexData(K, basis, boundaries, rel, positions)


class MapKind(enum.Enum):
    WEIGHT_PRESERVING = "weight-preserving"
    MORPHISM = "morphism"


def _sort_with_sign(verts: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort ascending and return the permutation sign; sign 0 on repeats."""
    v = list(verts)
    if len(set(v)) != len(v):
        return tuple(sorted(set(v))), 0
    sign = 1
    for i in range(len(v)):
        for j in range(len(v) - 1 - i):
            if v[j] > v[j + 1]:
                v[j], v[j + 1] = v[j + 1], v[j]
                sign = -sign
    return tuple(v), sign


@dataclass
class SimplicialMapData:
    """A vertex map ``source -> target`` that sends simplices to simplices."""

    source: WeightedComplex
    target: WeightedComplex
    vertex_map: tuple[int, ...]
    kind: MapKind = MapKind.WEIGHT_PRESERVING

    def __post_init__(self):
        self.vertex_map = tuple(int(v) for v in self.vertex_map)
        if len(self.vertex_map) != self.source.n_vertices:
            raise InvalidMap("vertex map must cover every source vertex")
        for s in self.source.simplices():
            img = self.image(s)
            if img not in self.target:
                raise InvalidMap(f"image {list(self.target.label(img))} of {list(self.source.label(s))} "
                                 "is not a simplex of the target")
            w, w2 = self.source.weight(s), self.target.weight(img)
            if self.kind is MapKind.WEIGHT_PRESERVING and w2 != w:
                raise InvalidMap(f"map is not weight-preserving on {list(self.source.label(s))}")
            if self.kind is MapKind.MORPHISM and w % w2:
                raise InvalidMap(f"target weight {w2} does not divide source weight {w} "
                                 f"on {list(self.source.label(s))}")

    @classmethod
    def from_names(cls, source, target, mapping: Mapping[str, str], kind=MapKind.WEIGHT_PRESERVING):
        vm = [target.vertex_id(mapping[n]) for n in source.names]
        return cls(source, target, vm, kind)

    def image(self, simplex: Simplex) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def compose(self, after: "SimplicialMapData") -> "SimplicialMapData":
        """``after o self``."""
        kind = (MapKind.WEIGHT_PRESERVING
                if self.kind is after.kind is MapKind.WEIGHT_PRESERVING else MapKind.MORPHISM)
        return SimplicialMapData(self.source, after.target,
                                 [after.vertex_map[v] for v in self.vertex_map], kind)


def induced_chain_map(f: SimplicialMapData, n: int,
                      source: ChainComplexData | None = None,
                      target: ChainComplexData | None = None) -> IntMatrix:
    """Matrix of ``f_#`` in degree ``n``.

    A simplex goes to ``sign * w(s)/w'(f(s)) * f(s)``, the sign being the
    parity of sorting the image vertices; collapsed simplices go to zero.
    When chain complexes are given, their (possibly relative) bases are used
    and images outside the target basis are dropped.
    """
    src_basis = source.basis[n] if source is not None and n <= source.top else (
        [] if source is not None else list(f.source.simplices(n)))
    if target is not None:
        tgt_rank = target.rank(n)
        tpos = lambda s: target.position(n, s)  # noqa: E731
    else:
        tgt_rank = f.target.count(n)
        tpos = lambda s: f.target.index(s) if s in f.target else None  # noqa: E731
    m = IntMatrix(tgt_rank, len(src_basis))
    for j, s in enumerate(src_basis):
        img, sign = _sort_with_sign([f.vertex_map[v] for v in s])
        if not sign:
            continue
        r = tpos(img)
        if r is None:
            continue
        m[r, j] = sign * (f.source.weight(s) // f.target.weight(img))
    return m
