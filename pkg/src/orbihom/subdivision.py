"""Barycentric subdivision of divisibly-weighted complexes.

Vertices of ``Sd(K)`` are barycenters ``b_s`` of simplices of ``K`` with
weight ``min{w(v) : v in s}``; simplices are flags ``s_0 < ... < s_l`` and
weigh ``w(b_{s_0})``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chains import (
    MapKind,
    SimplicialMapData,
    _sort_with_sign,
    chain_complex,
    induced_chain_map,
    weighted_boundary,
)
from .complex import Simplex, WeightedComplex, build_complex, embed_ids, faces
from .errors import CompositionNotZero, NotDivisiblyWeighted
from .exactalg import IntMatrix
from .homology import WT, Theory, homology, homology_map_from_chain_maps

Chain = dict[Simplex, int]


@dataclass
class SubdivisionRecord:
    source: WeightedComplex
    result: WeightedComplex
    barycenter_of: list[Simplex]
    _chain_cache: dict[Simplex, Chain] = field(default_factory=dict, repr=False)

    def barycenter(self, simplex: Simplex) -> int:
        return self._bary_index[tuple(simplex)]

    def __post_init__(self):
        self._bary_index = {s: i for i, s in enumerate(self.barycenter_of)}


def _barycenter_name(K: WeightedComplex, s: Simplex) -> str:
    if len(s) == 1:
        return K.names[s[0]]
    return "b(" + ",".join(K.label(s)) + ")"


def barycentric_subdivide(K: WeightedComplex) -> SubdivisionRecord:
    if not K.divisibly_weighted:
        raise NotDivisiblyWeighted("barycentric subdivision needs a divisibly-weighted complex")
    # vertices of K keep their ids; higher barycenters follow in (dim, lex) order
    bary = list(K.simplices())
    idx = {s: i for i, s in enumerate(bary)}
    names = [_barycenter_name(K, s) for s in bary]
    wv = [min(K.vertex_weights[v] for v in s) for s in bary]

    maximal = []
    for top in K.maximal_simplices():
        # a maximal flag is a permutation: drop vertices one at a time
        for perm in itertools.permutations(top):
            flag = [idx[tuple(sorted(perm[i:]))] for i in range(len(perm))]
            maximal.append(flag)
    result = build_complex(wv, maximal, names=names)
    return SubdivisionRecord(K, result, bary)


def _cone(b: int, chain: Chain) -> Chain:
    """``b . c``: put ``b`` in front of every simplex, then re-sort with sign."""
    out: Chain = {}
    for s, c in chain.items():
        t, sign = _sort_with_sign((b,) + s)
        if sign:
            out[t] = out.get(t, 0) + sign * c
    return {s: c for s, c in out.items() if c}


def sd_chain(rec: SubdivisionRecord, simplex: Simplex) -> Chain:
    """``Sd_#(s) = b_s . Sd_#(weighted boundary of s)`` with ``Sd_#(v) = v``."""
    simplex = tuple(simplex)
    cached = rec._chain_cache.get(simplex)
    if cached is not None:
        return cached
    K = rec.source
    b = rec.barycenter(simplex)
    if len(simplex) == 1:
        out = {(b,): 1}
    else:
        w = K.weight(simplex)
        acc: Chain = {}
        for i, f in enumerate(faces(simplex)):
            coeff = (-1) ** i * (w // K.weight(f))
            for t, c in sd_chain(rec, f).items():
                acc[t] = acc.get(t, 0) + coeff * c
        out = _cone(b, {t: c for t, c in acc.items() if c})
    rec._chain_cache[simplex] = out
    return out


def sd_chain_map(rec: SubdivisionRecord, n: int) -> IntMatrix:
    """Matrix of ``Sd_# : C_n(K) -> C_n(Sd K)`` over canonical bases."""
    src = rec.source.simplices(n)
    R = rec.result
    cols = []
    for s in src:
        cols.append({R.index(t): c for t, c in sd_chain(rec, s).items()})
    return IntMatrix.from_columns(R.count(n), cols)


def pi_projection(rec: SubdivisionRecord) -> SimplicialMapData:
    """Send ``b_s`` to the least vertex of ``s`` in the (weight, id) order."""
    K = rec.source
    vm = [min(s, key=K.vertex_order_key) for s in rec.barycenter_of]
    return SimplicialMapData(rec.result, K, vm, MapKind.WEIGHT_PRESERVING)


def check_sd_chain_map(rec: SubdivisionRecord) -> bool:
    """``d Sd_# == Sd_# d`` in every degree."""
    K, R = rec.source, rec.result
    for n in range(1, K.dim + 1):
        lhs = weighted_boundary(R, n) @ sd_chain_map(rec, n)
        rhs = sd_chain_map(rec, n - 1) @ weighted_boundary(K, n)
        if lhs != rhs:
            return False
    return True


def _restrict(m: IntMatrix, row_basis, col_basis, row_all, col_all) -> IntMatrix:
    rpos = {s: i for i, s in enumerate(row_all)}
    cpos = {s: i for i, s in enumerate(col_all)}
    return m.submatrix([rpos[s] for s in row_basis], [cpos[s] for s in col_basis])


def verify_subdivision_invariance(K: WeightedComplex, theory: Theory = WT,
                                  rec: SubdivisionRecord | None = None) -> bool:
    """Groups of ``K`` and ``Sd K`` agree and ``pi_* o Sd_*`` is the identity."""
    rec = rec or barycentric_subdivide(K)
    if not check_sd_chain_map(rec):
        raise CompositionNotZero("subdivision operator is not a chain map")
    R = rec.result
    if not homology(K, theory).same_groups(homology(R, theory)):
        return False
    A, AR = theory.subcomplex(K), theory.subcomplex(R)
    cK, cR = chain_complex(K, A), chain_complex(R, AR)
    sd = [_restrict(sd_chain_map(rec, n), cR.basis[n], cK.basis[n], R.simplices(n), K.simplices(n))
          for n in range(K.dim + 1)]
    if A is not None:
        # Sd_# must carry the relative subcomplex into the subdivided one
        inA, inAR = embed_ids(A, K), embed_ids(AR, R)
        for s in inA:
            if any(t not in inAR for t in sd_chain(rec, s)):
                return False
    pi = pi_projection(rec)
    pim = [induced_chain_map(pi, n, cR, cK) for n in range(K.dim + 1)]
    sd_star = homology_map_from_chain_maps(sd, cK, cR)
    pi_star = homology_map_from_chain_maps(pim, cR, cK)
    return (pi_star @ sd_star).is_identity()


def pi_sd_is_identity(rec: SubdivisionRecord) -> bool:
    """Chain-level ``pi_# o Sd_# == id`` on ``C_*(K)``."""
    pi = pi_projection(rec)
    for n in range(rec.source.dim + 1):
        prod = induced_chain_map(pi, n) @ sd_chain_map(rec, n)
        if prod != IntMatrix.identity(rec.source.count(n)):
            return False
    return True


def iterated_subdivision(K: WeightedComplex, times: int) -> list[SubdivisionRecord]:
    out = []
    for _ in range(times):
        rec = barycentric_subdivide(K)
        out.append(rec)
        K = rec.result
    return out
