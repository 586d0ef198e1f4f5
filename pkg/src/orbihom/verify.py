"""Seeded property suites that check structural identities on random input.

Each case derives its own seed string from ``(suite, seed, index)`` so a
failure can be replayed alone with :func:`run_case`.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex import WeightedComplex, singular_subcomplex
from .generators import generate_random, random_simplex
from .homology import (
    ST,
    WT,
    CoefficientRing,
    betti_numbers_mod_p,
    classical_betti_mod_p,
    coefficient_groups,
    euler_check,
    st_homology,
    wt_homology,
)
from .subdivision import (
    barycentric_subdivide,
    check_sd_chain_map,
    pi_sd_is_identity,
    verify_subdivision_invariance,
)

SUITES = ("simplex", "subdivision", "coefficients", "euler")
PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.cases - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def format(self) -> str:
        lines = [f"suite {self.suite}: {self.passed}/{self.cases} pass (seed {self.seed})"]
        lines += [f"  FAIL case {case}: {msg}" for case, msg in self.failures]
        return "\n".join(lines)


def case_seed(suite: str, seed: int, index: int) -> str:
    return f"{suite}:{seed}:{index}"


def _small_random(rng: random.Random, dim: int = 2) -> WeightedComplex:
    return generate_random(dim=dim, n_vertices=rng.randint(4, 9), n_simplices=rng.randint(3, 12),
                           seed=rng.random())


def _simplex_case(cs: str) -> str | None:
    rng = random.Random(cs)
    dim = rng.randint(0, 5)
    K = random_simplex(dim, seed=rng.random())
    groups = wt_homology(K).groups
    if not (groups[0].rank == 1 and not groups[0].torsion and all(g.is_trivial for g in groups[1:])):
        return f"wt of {dim}-simplex {K.vertex_weights} is {[str(g) for g in groups]}"
    if dim == 0:
        return None
    K = random_simplex(dim, seed=rng.random(), semi_regular=True)
    ws = min(w for w in K.vertex_weights if w > 1)
    groups = st_homology(K).groups
    if not (groups[0].rank == 0 and groups[0].torsion == (ws,) and all(g.is_trivial for g in groups[1:])):
        return f"st of semi-regular simplex {K.vertex_weights} is {[str(g) for g in groups]}, expected Z/{ws}"
    return None


def _subdivision_case(cs: str) -> str | None:
    rng = random.Random(cs)
    K = _small_random(rng)
    rec = barycentric_subdivide(K)
    if not check_sd_chain_map(rec):
        return "Sd is not a chain map"
    if not pi_sd_is_identity(rec):
        return "pi o Sd differs from the identity on chains"
    for theory in (WT, ST):
        if not verify_subdivision_invariance(K, theory, rec):
            return f"{theory.name} homology changed under subdivision"
    return None


def _coefficients_case(cs: str) -> str | None:
    rng = random.Random(cs)
    K = _small_random(rng, dim=rng.randint(1, 3))
    A = singular_subcomplex(K)
    coprime = [p for p in PRIMES if all(w % p for w in K.vertex_weights)]
    for p in rng.sample(coprime, 3):
        if betti_numbers_mod_p(K, None, p) != classical_betti_mod_p(K, None, p):
            return f"wt over F_{p} differs from classical homology"
        if betti_numbers_mod_p(K, A, p) != classical_betti_mod_p(K, A, p):
            return f"st over F_{p} differs from classical relative homology"
    # the universal-coefficient route must agree with direct elimination for every p
    for p in (2, 3, 5):
        ring = CoefficientRing("Fp", p)
        for theory, rel in ((WT, None), (ST, A)):
            via_uct = [g.rank for g in coefficient_groups(wt_homology(K).groups if rel is None
                                                          else st_homology(K).groups, ring)]
            if via_uct != betti_numbers_mod_p(K, rel, p):
                return f"{theory.name} over F_{p}: UCT {via_uct} vs elimination {betti_numbers_mod_p(K, rel, p)}"
    return None


def _euler_case(cs: str) -> str | None:
    rng = random.Random(cs)
    K = _small_random(rng, dim=rng.randint(1, 3))
    lhs, rhs, ok = euler_check(K)
    return None if ok else f"alternating rank sum {lhs} != alternating cell count {rhs}"


_CASES = {
    "simplex": _simplex_case,
    "subdivision": _subdivision_case,
    "coefficients": _coefficients_case,
    "euler": _euler_case,
}


def run_case(suite: str, cs: str) -> str | None:
    """Run one case; returns a failure message or ``None``."""
    try:
        return _CASES[suite](cs)
    except Exception as e:  # a crash is a failure of the case, not of the run
        return f"{type(e).__name__}: {e}"


def _run_args(args: tuple[str, str]) -> str | None:
    return run_case(*args)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("ORBIHOM_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(suite: str, seed: int = 0, cases: int = 50, threads: int | None = None) -> SuiteReport:
    if suite not in _CASES:
        raise ValueError(f"unknown suite {suite!r}")
    seeds = [case_seed(suite, seed, i) for i in range(cases)]
    threads = thread_count() if threads is None else threads
    if threads > 1 and cases > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_args, [(suite, s) for s in seeds]))
    else:
        results = [run_case(suite, s) for s in seeds]
    failures = [(s, msg) for s, msg in zip(seeds, results) if msg is not None]
    return SuiteReport(suite, seed, cases, failures)


def run_suites(name: str = "all", seed: int = 0, cases: int = 50) -> list[SuiteReport]:
    names = SUITES if name == "all" else (name,)
    return [run_suite(s, seed, cases) for s in names]
