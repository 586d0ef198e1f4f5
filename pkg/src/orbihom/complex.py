"""Weighted simplicial complexes.

A simplex is a strictly increasing tuple of vertex ids; that ascending order
is its canonical orientation. Every complex carries vertex names so that
subcomplexes, subdivisions and products can be matched up by label.
"""

from __future__ import annotations

import enum
import itertools
import math
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import (
    FaceDivisibilityViolation,
    NonDivisibleChain,
    NotASubcomplex,
    NotDivisiblyWeighted,
    SimplexNotInComplex,
    UnknownVertex,
    ValidationError,
)

Simplex = tuple[int, ...]

INF = math.inf


class SimplexClass(enum.Enum):
    REGULAR = "regular"
    SEMI_REGULAR = "semi-regular"
    SINGULAR = "singular"


def faces(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces; face ``i`` omits the vertex at position ``i``."""
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def all_faces(simplex: Simplex) -> Iterable[Simplex]:
    """Every non-empty face, the simplex itself included."""
    for k in range(1, len(simplex) + 1):
        yield from itertools.combinations(simplex, k)


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a // math.gcd(a, b) * b, values, 1)


def is_divisibility_chain(weights: Iterable[int]) -> bool:
    ws = sorted(weights)
    return all(b % a == 0 for a, b in zip(ws, ws[1:]))


class WeightedComplex:
    """Finite simplicial complex with a positive weight on every simplex.

    Treat instances as immutable. Use :func:`build_complex` rather than the
    constructor, which trusts its inputs.
    """

    def __init__(self, names: Sequence[str], vertex_weights: Sequence[int],
                 weights: Mapping[Simplex, int]):
        self.names = tuple(names)
        self.vertex_weights = tuple(int(w) for w in vertex_weights)
        self._weights = dict(weights)
        by_dim: dict[int, list[Simplex]] = {}
        for s in self._weights:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self.dim = max(by_dim) if by_dim else -1
        self._simplices = tuple(tuple(sorted(by_dim.get(d, ()))) for d in range(self.dim + 1))
        self._index = {s: i for simp in self._simplices for i, s in enumerate(simp)}
        self._name_index = {n: i for i, n in enumerate(self.names)}
        self.divisibly_weighted = all(
            is_divisibility_chain(self.vertex_weights[v] for v in s)
            and max(self.vertex_weights[v] for v in s) == w
            for s, w in self._weights.items()
        )

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_weights)

    def simplices(self, n: int | None = None) -> tuple[Simplex, ...]:
        """Simplices of dimension ``n`` in lexicographic order, or all of them."""
        if n is None:
            return tuple(s for simp in self._simplices for s in simp)
        if 0 <= n <= self.dim:
            return self._simplices[n]
        return ()

    def count(self, n: int) -> int:
        return len(self.simplices(n))

    def index(self, simplex: Simplex) -> int:
        """Position of ``simplex`` within its dimension."""
        try:
            return self._index[tuple(simplex)]
        except KeyError:
            raise SimplexNotInComplex(f"{list(simplex)} is not a simplex of this complex") from None

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self._weights

    def weight(self, simplex: Simplex) -> int:
        try:
            return self._weights[tuple(simplex)]
        except KeyError:
            raise SimplexNotInComplex(f"{list(simplex)} is not a simplex of this complex") from None

    @property
    def weights(self) -> dict[Simplex, int]:
        return dict(self._weights)

    def vertex_id(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {name!r}") from None

    def label(self, simplex: Simplex) -> tuple[str, ...]:
        return tuple(self.names[v] for v in simplex)

    def maximal_simplices(self) -> list[Simplex]:
        covered = set()
        for s in self._weights:
            if len(s) > 1:
                covered.update(faces(s))
        return sorted((s for s in self._weights if s not in covered), key=lambda s: (len(s), s))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.count(d) for d in range(self.dim + 1))

    def max_weight(self) -> int:
        return max(self._weights.values(), default=1)

    def vertex_order_key(self, v: int) -> tuple[int, int]:
        """Total order refining weights: by (weight, id)."""
        return (self.vertex_weights[v], v)

    def __eq__(self, other):
        if not isinstance(other, WeightedComplex):
            return NotImplemented
        return (self.names == other.names and self.vertex_weights == other.vertex_weights
                and self._weights == other._weights)

    def __repr__(self):
        counts = [self.count(d) for d in range(self.dim + 1)]
        return f"WeightedComplex(vertices={self.n_vertices}, counts={counts})"


def _face_closure(maximal: Iterable[Simplex]) -> set[Simplex]:
    out: set[Simplex] = set()
    for s in maximal:
        if s in out:
            continue
        out.update(all_faces(s))
    return out


def build_complex(vertex_weights, maximal_simplices: Iterable[Sequence] = (),
                  explicit_simplex_weights: Mapping | None = None,
                  names: Sequence[str] | None = None) -> WeightedComplex:
    """Face-close ``maximal_simplices`` and assign weights.

    ``vertex_weights`` is a sequence indexed by vertex id or a mapping from
    vertex name to weight (names then become ids in insertion order).
    Simplices may be given by ids or by names. Simplices without an explicit
    weight get the lcm of their vertex weights, which must then form a
    divisibility chain.
    """
    if isinstance(vertex_weights, Mapping):
        names = [str(k) for k in vertex_weights]
        wv = [int(w) for w in vertex_weights.values()]
    else:
        wv = [int(w) for w in vertex_weights]
        names = [str(n) for n in names] if names is not None else [str(i) for i in range(len(wv))]
    if len(names) != len(wv):
        raise ValidationError("names and vertex weights differ in length")
    if len(set(names)) != len(names):
        raise ValidationError("duplicate vertex names")
    for n, w in zip(names, wv):
        if w < 1:
            raise ValidationError(f"vertex {n!r} has non-positive weight {w}")
    name_index = {n: i for i, n in enumerate(names)}

    def resolve(simplex) -> Simplex:
        ids = []
        for v in simplex:
            if isinstance(v, str) and v in name_index:
                ids.append(name_index[v])
            elif isinstance(v, int) and not isinstance(v, bool) and 0 <= v < len(wv):
                ids.append(v)
            else:
                raise UnknownVertex(f"simplex {list(simplex)} references unknown vertex {v!r}")
        if not ids:
            raise ValidationError("empty simplex")
        if len(set(ids)) != len(ids):
            raise ValidationError(f"simplex {list(simplex)} repeats a vertex")
        return tuple(sorted(ids))

    explicit = {}
    for s, w in (explicit_simplex_weights or {}).items():
        rs = resolve(s)
        if int(w) < 1:
            raise ValidationError(f"simplex {list(s)} has non-positive weight {w}")
        explicit[rs] = int(w)

    maximal = [resolve(s) for s in maximal_simplices]
    maximal += [s for s in explicit]
    maximal += [(v,) for v in range(len(wv))]
    closure = _face_closure(maximal)

    weights: dict[Simplex, int] = {}
    for s in closure:
        if len(s) == 1:
            w = wv[s[0]]
            if s in explicit and explicit[s] != w:
                raise ValidationError(f"explicit weight {explicit[s]} of vertex {names[s[0]]!r} "
                                      f"disagrees with its vertex weight {w}")
            weights[s] = w
        elif s in explicit:
            weights[s] = explicit[s]
        else:
            vw = [wv[v] for v in s]
            if not is_divisibility_chain(vw):
                raise NonDivisibleChain([names[v] for v in s], vw)
            weights[s] = max(vw)

    for s, w in weights.items():
        if len(s) > 1:
            for f in faces(s):
                if w % weights[f]:
                    raise FaceDivisibilityViolation([names[v] for v in f], weights[f],
                                                    [names[v] for v in s], w)
    return WeightedComplex(names, wv, weights)


def classify(K: WeightedComplex, simplex: Simplex) -> SimplexClass:
    simplex = tuple(simplex)
    w = K.weight(simplex)
    if w == 1:
        return SimplexClass.REGULAR
    # every face contains a vertex and face weights are multiples of vertex weights
    if all(K.vertex_weights[v] >= 2 for v in simplex):
        return SimplexClass.SINGULAR
    return SimplexClass.SEMI_REGULAR


def class_counts(K: WeightedComplex) -> dict[SimplexClass, list[int]]:
    """Per-dimension simplex counts for each class."""
    out = {c: [0] * (K.dim + 1) for c in SimplexClass}
    for s in K.simplices():
        out[classify(K, s)][len(s) - 1] += 1
    return out


def subcomplex(K: WeightedComplex, keep: Iterable[Simplex]) -> WeightedComplex:
    """Subcomplex on the given (face-closed) simplices, vertices reindexed densely.

    Vertex names and weights are inherited from ``K``.
    """
    keep = set(map(tuple, keep))
    verts = sorted({v for s in keep for v in s})
    remap = {v: i for i, v in enumerate(verts)}
    weights = {tuple(remap[v] for v in s): K.weight(s) for s in keep}
    return WeightedComplex([K.names[v] for v in verts], [K.vertex_weights[v] for v in verts], weights)


def singular_subcomplex(K: WeightedComplex) -> WeightedComplex:
    return subcomplex(K, (s for s in K.simplices() if classify(K, s) is SimplexClass.SINGULAR))


def n_stage_subcomplex(K: WeightedComplex, n) -> WeightedComplex:
    """Singular simplices of weight at most ``n``; ``n`` may be ``math.inf``."""
    if n != INF and (int(n) != n or n < 0):
        raise ValueError(f"stage must be a non-negative integer or inf, got {n!r}")
    return subcomplex(K, (s for s in K.simplices()
                          if classify(K, s) is SimplexClass.SINGULAR and K.weight(s) <= n))


def simplex_in(A: WeightedComplex, K: WeightedComplex, simplex: Simplex) -> bool:
    """Whether a simplex of ``K`` (by ids of K) lies in ``A`` (matched by names)."""
    try:
        ids = tuple(sorted(A.vertex_id(K.names[v]) for v in simplex))
    except UnknownVertex:
        return False
    return ids in A


def embed_ids(A: WeightedComplex, K: WeightedComplex) -> set[Simplex]:
    """Simplices of ``A`` written in the vertex ids of ``K``; raises if ``A`` is not inside ``K``."""
    out = set()
    for s in A.simplices():
        try:
            ids = tuple(sorted(K.vertex_id(A.names[v]) for v in s))
        except UnknownVertex:
            raise NotASubcomplex(f"vertex of {list(A.label(s))} is not in the ambient complex") from None
        if ids not in K or K.weight(ids) != A.weight(s):
            raise NotASubcomplex(f"simplex {list(A.label(s))} is not a simplex of the ambient complex "
                                 "with the same weight")
        out.add(ids)
    return out


def cartesian_product(K: WeightedComplex, K2: WeightedComplex) -> WeightedComplex:
    """Staircase triangulation of ``K x K2``; the weight of a pair is the product.

    Both factors' vertices are ordered by (weight, id); product simplices are
    monotone lattice paths through pairs of simplices.
    """
    if not (K.divisibly_weighted and K2.divisibly_weighted):
        raise NotDivisiblyWeighted("cartesian product needs divisibly-weighted factors")
    pairs = [(a, b) for a in range(K.n_vertices) for b in range(K2.n_vertices)]
    pid = {p: i for i, p in enumerate(pairs)}
    names = [f"({K.names[a]},{K2.names[b]})" for a, b in pairs]
    wv = [K.vertex_weights[a] * K2.vertex_weights[b] for a, b in pairs]

    maximal = []
    for s in K.maximal_simplices():
        s = sorted(s, key=K.vertex_order_key)
        for t in K2.maximal_simplices():
            t = sorted(t, key=K2.vertex_order_key)
            p, q = len(s) - 1, len(t) - 1
            # choose which of the p+q steps move in the first factor
            for steps in itertools.combinations(range(p + q), p):
                i = j = 0
                path = [pid[(s[0], t[0])]]
                for k in range(p + q):
                    if k in steps:
                        i += 1
                    else:
                        j += 1
                    path.append(pid[(s[i], t[j])])
                maximal.append(path)
    return build_complex(wv, maximal, names=names)


def relabel(K: WeightedComplex, names: Sequence[str]) -> WeightedComplex:
    return WeightedComplex(names, K.vertex_weights, K.weights)
