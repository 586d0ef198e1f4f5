"""Weighted (wt), stratified (st) and n-stage homology of weighted complexes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .chains import ChainComplexData, MapKind, SimplicialMapData, chain_complex, induced_chain_map
from .complex import (
    INF,
    SimplexClass,
    WeightedComplex,
    class_counts,
    embed_ids,
    n_stage_subcomplex,
    singular_subcomplex,
    subcomplex,
)
from .errors import InvalidMap, MorphismOnStHomology
from .exactalg import HomologyBasis, HomologyGroup, IntMatrix, homology_basis, rank_mod_p, smith_normal_form


@dataclass(frozen=True)
class Theory:
    """Which subcomplex chains are taken relative to.

    ``stage`` is ``None`` for wt-homology, ``math.inf`` for st-homology and a
    finite integer for the n-stage variant.
    """

    stage: float | int | None = None

    @classmethod
    def parse(cls, text: str) -> "Theory":
        t = text.strip().lower()
        if t == "wt":
            return WT
        if t == "st":
            return ST
        if t.startswith("st-stage="):
            val = t.split("=", 1)[1]
            if val in ("inf", "infinity"):
                return cls(INF)
            return cls.stage_n(int(val))
        raise ValueError(f"unknown theory {text!r}; expected wt, st or st-stage=N")

    @classmethod
    def stage_n(cls, n) -> "Theory":
        """The n-stage theory; stage 0 relativises to nothing and is wt itself."""
        if n == INF:
            return ST
        if n < 0:
            raise ValueError("stage must be non-negative")
        return WT if n == 0 else cls(int(n))

    @property
    def name(self) -> str:
        if self.stage is None:
            return "wt"
        if self.stage == INF:
            return "st"
        return f"st-stage={self.stage}"

    @property
    def is_relative(self) -> bool:
        return self.stage is not None

    def subcomplex(self, K: WeightedComplex) -> WeightedComplex | None:
        if self.stage is None:
            return None
        if self.stage == INF:
            return singular_subcomplex(K)
        return n_stage_subcomplex(K, self.stage)

    def __str__(self):
        return self.name


WT = Theory(None)
ST = Theory(INF)


@dataclass(frozen=True)
class CoefficientRing:
    """``Z``, ``Q``, a prime field ``F_p`` or ``Z/m``."""

    kind: str = "Z"
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp", "Zm"):
            raise ValueError(f"unknown coefficient ring {self.kind!r}")
        if self.kind == "Fp" and not _is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")
        if self.kind == "Zm" and self.modulus < 2:
            raise ValueError("Z/m needs m >= 2")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        t = text.strip()
        if t in ("Z", "Q"):
            return cls(t)
        for kind in ("Fp", "Zm"):
            if t.startswith(kind + "="):
                return cls(kind, int(t.split("=", 1)[1]))
        raise ValueError(f"unknown coefficient ring {text!r}; expected Z, Q, Fp=<p> or Zm=<m>")

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "Fp")

    def __str__(self):
        return self.kind if self.kind in ("Z", "Q") else f"{self.kind}={self.modulus}"


INTEGERS = CoefficientRing("Z")
RATIONALS = CoefficientRing("Q")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass
class HomologyProfile:
    """Homology groups in degrees ``0..dim K``; higher degrees are zero.

    Over a field, ``groups[j].rank`` is the vector-space dimension.
    ``witnesses[j]`` lists representative cycles (over ``basis[j]``) for the
    generators, paired with their orders (0 = infinite order).
    """

    theory: Theory
    groups: list[HomologyGroup]
    ring: CoefficientRing = INTEGERS
    witnesses: list[list[tuple[list[int], int]]] | None = None
    basis: list[list[tuple[str, ...]]] | None = field(default=None, repr=False)

    def __getitem__(self, j: int) -> HomologyGroup:
        return self.groups[j] if 0 <= j < len(self.groups) else HomologyGroup()

    @property
    def ranks(self) -> list[int]:
        return [g.rank for g in self.groups]

    def same_groups(self, other: "HomologyProfile") -> bool:
        n = max(len(self.groups), len(other.groups))
        return all(self[j] == other[j] for j in range(n))

    def __str__(self):
        return ", ".join(f"H{j}={g}" for j, g in enumerate(self.groups))


def _profile_from_chain_complex(cc: ChainComplexData, theory: Theory, witnesses: bool) -> HomologyProfile:
    top = cc.complex.dim
    snfs = [smith_normal_form(cc.boundary(n)) for n in range(top + 2)]
    groups = []
    for n in range(top + 1):
        free = cc.rank(n) - snfs[n].rank - snfs[n + 1].rank
        groups.append(HomologyGroup(free, tuple(d for d in snfs[n + 1].diagonal if d > 1)))
    wit = None
    if witnesses:
        wit = []
        for n in range(top + 1):
            hb = homology_basis(cc.boundary(n), cc.boundary(n + 1), cc.rank(n))
            wit.append(list(zip(hb.generators, hb.orders)))
    labels = [[cc.complex.label(s) for s in b] for b in cc.basis]
    return HomologyProfile(theory, groups, INTEGERS, wit, labels)


def homology(K: WeightedComplex, theory: Theory = WT, witnesses: bool = False) -> HomologyProfile:
    return _profile_from_chain_complex(chain_complex(K, theory.subcomplex(K)), theory, witnesses)


def wt_homology(K: WeightedComplex, witnesses: bool = False) -> HomologyProfile:
    return homology(K, WT, witnesses)


def st_homology(K: WeightedComplex, witnesses: bool = False) -> HomologyProfile:
    return homology(K, ST, witnesses)


def n_stage_st_homology(K: WeightedComplex, n, witnesses: bool = False) -> HomologyProfile:
    return homology(K, Theory.stage_n(n), witnesses)


def coefficient_groups(groups: Sequence[HomologyGroup], ring: CoefficientRing) -> list[HomologyGroup]:
    """Universal coefficients: ``H_j(C; G) = H_j (x) G + Tor(H_{j-1}, G)``."""
    if ring.kind == "Z":
        return list(groups)
    out = []
    for j, g in enumerate(groups):
        prev = groups[j - 1].torsion if j else ()
        if ring.kind == "Q":
            out.append(HomologyGroup(g.rank))
        elif ring.kind == "Fp":
            p = ring.modulus
            out.append(HomologyGroup(g.rank + sum(1 for d in g.torsion if d % p == 0)
                                     + sum(1 for d in prev if d % p == 0)))
        else:
            m = ring.modulus
            orders = [m] * g.rank + [math.gcd(d, m) for d in g.torsion] + [math.gcd(d, m) for d in prev]
            out.append(HomologyGroup.from_orders(0, orders))
    return out


def homology_with_coefficients(K: WeightedComplex, theory: Theory, ring: CoefficientRing) -> HomologyProfile:
    integral = homology(K, theory)
    return HomologyProfile(theory, coefficient_groups(integral.groups, ring), ring)


def betti_numbers_mod_p(K: WeightedComplex, rel: WeightedComplex | None, p: int) -> list[int]:
    """Dimensions of homology over F_p computed directly by elimination mod p.

    Shares no code with the Smith-form pipeline; used as an independent check.
    """
    cc = chain_complex(K, rel)
    ranks = [rank_mod_p(cc.boundary(n), p) for n in range(K.dim + 2)]
    return [cc.rank(n) - ranks[n] - ranks[n + 1] for n in range(K.dim + 1)]


def unweighted(K: WeightedComplex) -> WeightedComplex:
    """The same complex with every weight 1 (classical simplicial chains)."""
    return WeightedComplex(K.names, [1] * K.n_vertices, {s: 1 for s in K.simplices()})


def classical_betti_mod_p(K: WeightedComplex, rel: WeightedComplex | None, p: int) -> list[int]:
    """Classical F_p Betti numbers of ``K`` (or of the pair ``(K, rel)``)."""
    U = unweighted(K)
    R = subcomplex(U, embed_ids(rel, K)) if rel is not None else None
    return betti_numbers_mod_p(U, R, p)


@dataclass
class HomologyMap:
    """A homomorphism between homology groups in chosen generator bases.

    Entries in rows of finite-order target generators are reduced modulo
    that order.
    """

    matrices: list[IntMatrix]
    target_orders: list[list[int]]

    def __matmul__(self, other: "HomologyMap") -> "HomologyMap":
        """``self o other``."""
        mats = []
        for n, (a, b) in enumerate(zip(self.matrices, other.matrices)):
            mats.append(_reduce_rows(a @ b, self.target_orders[n]))
        return HomologyMap(mats, self.target_orders)

    def is_identity(self) -> bool:
        for m, orders in zip(self.matrices, self.target_orders):
            if m.rows != m.cols:
                return False
            if _reduce_rows(m, orders) != _reduce_rows(IntMatrix.identity(m.rows), orders):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, HomologyMap):
            return NotImplemented
        return self.matrices == other.matrices


def _reduce_rows(m: IntMatrix, orders: Sequence[int]) -> IntMatrix:
    out = m.copy()
    for i, o in enumerate(orders):
        if o:
            for j in range(m.cols):
                out[i, j] = out[i, j] % o
    return out


def _bases(cc: ChainComplexData) -> list[HomologyBasis]:
    return [homology_basis(cc.boundary(n), cc.boundary(n + 1), cc.rank(n)) for n in range(cc.complex.dim + 1)]


def homology_map_from_chain_maps(chain_maps: Sequence[IntMatrix], source: ChainComplexData,
                                 target: ChainComplexData) -> HomologyMap:
    """Express a chain map on homology generators of ``source`` and ``target``."""
    sb, tb = _bases(source), _bases(target)
    mats, orders = [], []
    for n in range(len(sb)):
        tgt = tb[n] if n < len(tb) else None
        n_rows = len(tgt.orders) if tgt else 0
        m = IntMatrix(n_rows, len(sb[n].orders))
        if tgt is not None:
            for j, cyc in enumerate(sb[n].generators):
                image = chain_maps[n].apply(cyc)
                for i, c in enumerate(tgt.coordinates(image)):
                    m[i, j] = c
        mats.append(m)
        orders.append(list(tgt.orders) if tgt else [])
    return HomologyMap(mats, orders)


def induced_homology_map(f: SimplicialMapData, theory: Theory = WT) -> HomologyMap:
    """``f_*`` in SNF-derived generator bases; morphisms only act on wt-homology."""
    if theory.is_relative and f.kind is MapKind.MORPHISM:
        raise MorphismOnStHomology("morphisms do not induce maps on stratified homology; "
                                   "use a weight-preserving map")
    A, A2 = theory.subcomplex(f.source), theory.subcomplex(f.target)
    if A is not None:
        inA2 = embed_ids(A2, f.target)
        for s in embed_ids(A, f.source):
            if f.image(s) not in inA2:
                raise InvalidMap("map does not send the relative subcomplex into the target's")
    src, tgt = chain_complex(f.source, A), chain_complex(f.target, A2)
    maps = [induced_chain_map(f, n, src, tgt) for n in range(f.source.dim + 1)]
    return homology_map_from_chain_maps(maps, src, tgt)


def nonsingular_counts(K: WeightedComplex) -> list[int]:
    """Number of regular plus semi-regular simplices in each dimension."""
    cc = class_counts(K)
    return [a + b for a, b in zip(cc[SimplexClass.REGULAR], cc[SimplexClass.SEMI_REGULAR])]


def euler_check(K: WeightedComplex) -> tuple[int, int, bool]:
    """Alternating st-homology rank sum against the alternating non-singular simplex count."""
    lhs = sum((-1) ** j * r for j, r in enumerate(st_homology(K).ranks))
    rhs = sum((-1) ** j * c for j, c in enumerate(nonsingular_counts(K)))
    return lhs, rhs, lhs == rhs


def les_rank_check(K: WeightedComplex) -> bool:
    """Rational consistency of ``H(SK) -> H(K) -> h(K) -> H_{-1}(SK)``.

    The alternating dimension sum along an exact sequence vanishes.
    """
    S = singular_subcomplex(K)
    total = 0
    for j, r in enumerate(wt_homology(S).ranks if S.n_vertices else []):
        total += (-1) ** j * r
    for j, r in enumerate(wt_homology(K).ranks):
        total -= (-1) ** j * r
    for j, r in enumerate(st_homology(K).ranks):
        total += (-1) ** j * r
    return total == 0
