"""Example pseudo-orbifolds and random divisibly-weighted complexes.

Every family places its singular points on pairwise non-adjacent vertices
whose neighbours are all regular, so the singular set is exactly the chosen
isolated points. Labelling used throughout:

* ``v1..vn`` singular vertices, in the order their weights were given;
* ``u*`` regular ring vertices, ``c`` a cone apex, ``p+``/``p-`` poles;
* surfaces: ``P`` the polygon corner, ``<letter><i>`` points on polygon
  sides, ``q*`` the inner ring and ``z`` the centre.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complex import WeightedComplex, build_complex, is_divisibility_chain
from .errors import InvalidSpec

FAMILIES = ("interval1", "interval2", "disk", "triangle", "teardrop", "football", "sphere", "surface")


@dataclass(frozen=True)
class ExampleSpec:
    family: str
    weights: tuple[int, ...] = ()
    genus: int = 0
    crosscaps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(k) for k in self.weights))
        if self.family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if any(k < 2 for k in self.weights):
            raise InvalidSpec("singular weights must be at least 2")
        n = len(self.weights)
        expected = {"interval1": (1,), "interval2": (2,), "triangle": (3,), "teardrop": (1,), "football": (2,)}
        if self.family in expected and n not in expected[self.family]:
            raise InvalidSpec(f"{self.family} takes {expected[self.family][0]} weight(s), got {n}")
        if self.family == "disk" and n < 1:
            raise InvalidSpec("disk needs at least one singular point")
        if self.family == "sphere" and n < 3:
            raise InvalidSpec("sphere needs n >= 3 singular points; use teardrop or football")
        if self.family == "surface":
            if self.genus < 0 or self.crosscaps < 0 or (self.genus and self.crosscaps):
                raise InvalidSpec("surface takes either g>=0 or c>=0, not both")

    @classmethod
    def parse(cls, text: str) -> "ExampleSpec":
        """Parse ``family:args``, e.g. ``sphere:6,12,27``, ``surface:g=2;k=3,3``."""
        fam, _, args = text.strip().partition(":")
        fam = fam.strip().lower()
        try:
            if fam == "surface":
                genus = crosscaps = 0
                ks: tuple[int, ...] = ()
                for part in filter(None, (p.strip() for p in args.split(";"))):
                    key, _, val = part.partition("=")
                    if key == "g":
                        genus = int(val)
                    elif key == "c":
                        crosscaps = int(val)
                    elif key == "k":
                        ks = _int_list(val)
                    else:
                        raise InvalidSpec(f"unknown surface parameter {key!r}")
                return cls(fam, ks, genus, crosscaps)
            ks = _int_list(args)
            if fam == "interval2" and len(ks) == 1:
                ks = (ks[0], ks[0])
            return cls(fam, ks)
        except ValueError as e:
            raise InvalidSpec(f"cannot parse example spec {text!r}: {e}") from None

    def __str__(self):
        ks = ",".join(map(str, self.weights))
        if self.family == "surface":
            head = f"c={self.crosscaps}" if self.crosscaps else f"g={self.genus}"
            return f"surface:{head};k={ks}" if ks else f"surface:{head}"
        return f"{self.family}:{ks}"


def _int_list(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(",") if x.strip())


def generate(spec: ExampleSpec | str) -> WeightedComplex:
    if isinstance(spec, str):
        spec = ExampleSpec.parse(spec)
    ks = spec.weights
    if spec.family == "interval1":
        return build_complex({"x0": 1, "x1": ks[0]}, [["x0", "x1"]])
    if spec.family == "interval2":
        return build_complex({"x0": ks[0], "m": 1, "x1": ks[1]}, [["x0", "m"], ["m", "x1"]])
    if spec.family in ("disk", "triangle"):
        return disk(ks)
    if spec.family in ("teardrop", "football", "sphere"):
        return sphere(ks)
    return connected_sum_surface(spec)


def _ring(ks, length: int) -> tuple[list[str], dict[str, int]]:
    """Cycle of ``length`` vertices with singular points at even positions."""
    names, weights = [], {}
    singular = {2 * i: k for i, k in enumerate(ks)}
    for pos in range(length):
        if pos in singular:
            name = f"v{pos // 2 + 1}"
            weights[name] = singular[pos]
        else:
            name = f"u{pos}"
            weights[name] = 1
        names.append(name)
    return names, weights


def disk(ks) -> WeightedComplex:
    """Cone over a ring; singular points sit on the boundary circle."""
    ring, weights = _ring(ks, max(3, 2 * len(ks)))
    weights = {"c": 1, **weights}
    L = len(ring)
    return build_complex(weights, [["c", ring[i], ring[(i + 1) % L]] for i in range(L)])


def sphere(ks) -> WeightedComplex:
    """Suspension of a ring with singular points at even ring positions."""
    ring, weights = _ring(ks, max(4, 2 * len(ks)))
    weights = {"p+": 1, "p-": 1, **weights}
    L = len(ring)
    tris = []
    for i in range(L):
        a, b = ring[i], ring[(i + 1) % L]
        tris += [["p+", a, b], ["p-", a, b]]
    return build_complex(weights, tris)


def _polygon_word(genus: int, crosscaps: int) -> list[tuple[str, int]]:
    if crosscaps:
        return [(f"a{i}", 1) for i in range(1, crosscaps + 1) for _ in range(2)]
    word = []
    for i in range(1, genus + 1):
        word += [(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)]
    return word


def connected_sum_surface(spec: ExampleSpec) -> WeightedComplex:
    """Closed surface from a polygon word with an annulus-and-cone interior.

    Each polygon side is cut into ``s >= 3`` edges so the identified boundary
    stays simplicial; singular points go on alternate inner-ring vertices.
    """
    if spec.family != "surface":
        raise InvalidSpec("connected_sum_surface needs a surface spec")
    ks = spec.weights
    word = _polygon_word(spec.genus, spec.crosscaps)
    if not word:
        if len(ks) >= 3:
            return sphere(ks)
        return sphere(ks) if ks else sphere(())
    sides = len(word)
    s = max(3, -(-2 * len(ks) // sides))
    boundary: list[str] = []
    for letter, direction in word:
        interior = [f"{letter}_{i}" for i in range(1, s)]
        if direction < 0:
            interior.reverse()
        boundary += ["P"] + interior
    L = len(boundary)
    inner = []
    weights: dict[str, int] = {"z": 1}
    for name in boundary:
        weights.setdefault(name, 1)
    singular = {2 * i: k for i, k in enumerate(ks)}
    for pos in range(L):
        if pos in singular:
            name = f"v{pos // 2 + 1}"
            weights[name] = singular[pos]
        else:
            name = f"q{pos}"
            weights[name] = 1
        inner.append(name)
    tris = []
    for i in range(L):
        j = (i + 1) % L
        tris += [[boundary[i], boundary[j], inner[i]], [boundary[j], inner[i], inner[j]], ["z", inner[i], inner[j]]]
    return build_complex(weights, tris)


def random_divisor_chain(rng: random.Random, limit: int = 720) -> list[int]:
    """Random chain ``1 | c1 | ... | N`` for a random ``N <= limit``."""
    n = rng.randint(1, limit)
    chain = [n]
    while chain[-1] > 1:
        divs = [d for d in range(1, chain[-1]) if chain[-1] % d == 0]
        chain.append(rng.choice(divs))
    return sorted(chain)


def random_simplex(dim: int, seed=None, semi_regular: bool = False, limit: int = 720) -> WeightedComplex:
    """A single divisibly-weighted ``dim``-simplex with weights from a divisor chain.

    With ``semi_regular`` the simplex has at least one regular and one
    singular vertex.
    """
    rng = random.Random(seed)
    while True:
        chain = random_divisor_chain(rng, limit)
        ws = sorted(rng.choice(chain) for _ in range(dim + 1))
        if semi_regular:
            if dim < 1:
                raise ValueError("a semi-regular simplex has dimension at least 1")
            ws[0] = 1
            if ws[-1] == 1:
                continue
        break
    rng.shuffle(ws)
    return build_complex(ws, [list(range(dim + 1))])


def generate_random(dim: int = 2, n_vertices: int = 8, n_simplices: int = 12,
                    weight_pool=None, seed=None, limit: int = 720) -> WeightedComplex:
    """Random divisibly-weighted complex, deterministic for a given seed.

    Vertex weights are drawn from the divisors of a random ``N <= limit``
    (or from ``weight_pool``), half of them forced regular; candidate
    simplices whose vertex weights do not form a divisibility chain are
    rejected.
    """
    if not 0 <= dim <= 5:
        raise ValueError("dim must be between 0 and 5")
    rng = random.Random(seed)
    if weight_pool is None:
        n = rng.randint(1, limit)
        pool = [d for d in range(1, n + 1) if n % d == 0]
    else:
        pool = list(weight_pool)
    wv = [1 if rng.random() < 0.5 else rng.choice(pool) for _ in range(n_vertices)]
    simplices = []
    attempts = 0
    while len(simplices) < n_simplices and attempts < 50 * n_simplices:
        attempts += 1
        k = rng.randint(1, min(dim + 1, n_vertices))
        s = sorted(rng.sample(range(n_vertices), k))
        if is_divisibility_chain(wv[v] for v in s):
            simplices.append(s)
    return build_complex(wv, simplices)
