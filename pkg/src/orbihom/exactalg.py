"""Exact integer matrices, Smith normal form and abelian group presentations.

All arithmetic uses Python ``int`` so entries never overflow. Matrices are
stored densely; the Smith reduction works on a sparse copy because boundary
matrices are overwhelmingly zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import CompositionNotZero, DimensionMismatch


class IntMatrix:
    """Dense row-major matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise DimensionMismatch(f"data does not have shape {rows}x{cols}")
            self._data = [[int(x) for x in r] for r in data]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m._data[i][i] = 1
        return m

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict[int, int]]) -> "IntMatrix":
        """Build from sparse columns given as ``{row: value}`` dicts."""
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                m._data[i][j] = v
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def __setitem__(self, idx, value):
        i, j = idx
        self._data[i][j] = int(value)

    def row(self, i: int) -> list[int]:
        return list(self._data[i])

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self._data]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, self._data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self._data)] if self.rows else [[] for _ in range(self.cols)])

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(not x for r in self._data for x in r)

    def nonzeros(self) -> Iterable[tuple[int, int, int]]:
        for i, r in enumerate(self._data):
            for j, x in enumerate(r):
                if x:
                    yield i, j, x

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(row_idx), len(col_idx), [[self._data[i][j] for j in col_idx] for i in row_idx])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = IntMatrix(self.rows, other.cols)
        odata = other._data
        for i, r in enumerate(self._data):
            acc = out._data[i]
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(odata[k]):
                        if b:
                            acc[j] += a * b
        return out

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        nz = [(j, v) for j, v in enumerate(vec) if v]
        return [sum(r[j] * v for j, v in nz) for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self._data))))

    def __repr__(self):
        return f"IntMatrix({self.rows}, {self.cols}, {self._data!r})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = m.rows
    if n != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group ``Z^rank + Z/t1 + Z/t2 + ...``.

    ``torsion`` holds invariant factors, each at least 2, with t1 | t2 | ...
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.rank < 0:
            raise ValueError("negative rank")
        if any(x < 2 for x in t):
            raise ValueError(f"torsion coefficients must be >= 2, got {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion coefficients {t} are not a divisibility chain")

    @classmethod
    def from_orders(cls, rank: int, orders: Iterable[int]) -> "HomologyGroup":
        """Normalise an arbitrary list of cyclic orders into invariant-factor form."""
        return cls(rank, invariant_factor_form(orders))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d: dict) -> "HomologyGroup":
        return cls(int(d["rank"]), tuple(d.get("torsion", ())))


def invariant_factor_form(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors (>= 2) of the direct sum of cyclic groups Z/o."""
    diag = [abs(int(o)) for o in orders if abs(int(o)) != 1]
    if any(o == 0 for o in diag):
        raise ValueError("Z/0 is not a finite cyclic group")
    diag.sort()
    n = len(diag)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = diag[i], diag[j]
            if b % a:
                g = gcd(a, b)
                diag[i], diag[j] = g, a // g * b
    return tuple(d for d in diag if d > 1)


@dataclass
class SmithDecomposition:
    """``U @ M @ V == D`` with D diagonal, d1 | d2 | ... | dr > 0.

    The transform fields are ``None`` unless requested. ``U_inv`` and
    ``V_inv`` are the exact inverses of ``U`` and ``V``.
    """

    D: IntMatrix
    rank: int
    U: IntMatrix | None = None
    V: IntMatrix | None = None
    U_inv: IntMatrix | None = None
    V_inv: IntMatrix | None = None

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(self.rank)]

    @property
    def invariant_factors(self) -> list[int]:
        return self.diagonal


class _Transform:
    """Identity matrix kept as sparse vectors (rows or columns) for accumulating operations.

    ``combine(dst, src, q)`` performs ``vec[dst] -= q * vec[src]``, which is a
    row operation for row storage and a column operation for column storage.
    """

    def __init__(self, n: int):
        self.vecs = [{i: 1} for i in range(n)]

    def combine(self, dst, src, q):
        vd = self.vecs[dst]
        for k, v in self.vecs[src].items():
            x = vd.get(k, 0) - q * v
            if x:
                vd[k] = x
            else:
                vd.pop(k, None)


def _lin(a: int, va: dict, b: int, vb: dict) -> dict:
    """Sparse ``a*va + b*vb``."""
    out = {}
    if a:
        for k, v in va.items():
            out[k] = a * v
    if b:
        for k, v in vb.items():
            x = out.get(k, 0) + b * v
            if x:
                out[k] = x
            else:
                out.pop(k, None)
    return out


def _from_vectors(n: int, vecs: list[dict], as_rows: bool) -> IntMatrix:
    m = IntMatrix(n, n)
    for a, vec in enumerate(vecs):
        for b, v in vec.items():
            if as_rows:
                m._data[a][b] = v
            else:
                m._data[b][a] = v
    return m


class _Sparse:
    """Sparse working matrix: row dicts plus column -> row-set index."""

    def __init__(self, m: IntMatrix):
        self.rows = [dict() for _ in range(m.rows)]
        self.colrows = [set() for _ in range(m.cols)]
        for i, j, v in m.nonzeros():
            self.rows[i][j] = v
            self.colrows[j].add(i)

    def add_row(self, dst, src, q):
        rd = self.rows[dst]
        for j, v in self.rows[src].items():
            x = rd.get(j, 0) - q * v
            if x:
                if j not in rd:
                    self.colrows[j].add(dst)
                rd[j] = x
            elif j in rd:
                del rd[j]
                self.colrows[j].discard(dst)

    def add_col(self, dst, src, q):
        for i in list(self.colrows[src]):
            r = self.rows[i]
            x = r.get(dst, 0) - q * r[src]
            if x:
                if dst not in r:
                    self.colrows[dst].add(i)
                r[dst] = x
            elif dst in r:
                del r[dst]
                self.colrows[dst].discard(i)


def smith_normal_form(m: IntMatrix, want_transforms: bool = False) -> SmithDecomposition:
    """Smith normal form of ``m``.

    Pivots are chosen by smallest absolute value (ties broken by fill-in
    estimate), entries in the pivot row and column are reduced by integer
    division until only the pivot remains, and the resulting diagonal is
    finally brought into divisibility order by gcd/lcm exchanges.
    """
    nr, nc = m.rows, m.cols
    work = _Sparse(m)
    if want_transforms:
        # U and V_inv are stored by rows, U_inv and V by columns
        U, Uinv, V, Vinv = _Transform(nr), _Transform(nr), _Transform(nc), _Transform(nc)

    def row_op(dst, src, q):
        work.add_row(dst, src, q)
        if want_transforms:
            U.combine(dst, src, q)
            Uinv.combine(src, dst, -q)

    def col_op(dst, src, q):
        work.add_col(dst, src, q)
        if want_transforms:
            V.combine(dst, src, q)
            Vinv.combine(src, dst, -q)

    pivots: list[tuple[int, int, int]] = []
    done_rows: set[int] = set()
    sweep = 0

    def unit_pivot():
        # cheap pass: first column (in order) holding a unit entry, shortest row wins
        nonlocal sweep
        while sweep < nc:
            j = sweep
            best = None
            for i in work.colrows[j]:
                if i in done_rows:
                    continue
                if abs(work.rows[i][j]) == 1 and (best is None or (len(work.rows[i]), i) < best):
                    best = (len(work.rows[i]), i)
            sweep += 1
            if best is not None:
                return best[1], j
        return None

    def global_pivot():
        best = None
        for i, r in enumerate(work.rows):
            if not r or i in done_rows:
                continue
            lr = len(r) - 1
            for j, v in r.items():
                key = (abs(v), lr * (len(work.colrows[j]) - 1), i, j)
                if best is None or key < best:
                    best = key
        return None if best is None else best[2:]

    while True:
        found = unit_pivot() or global_pivot()
        if found is None:
            break
        pi, pj = found
        while True:
            p = work.rows[pi][pj]
            for k in list(work.colrows[pj]):
                if k != pi:
                    row_op(k, pi, work.rows[k][pj] // p)
            for l in list(work.rows[pi]):
                if l != pj:
                    col_op(l, pj, work.rows[pi][l] // p)
            if len(work.rows[pi]) == 1 and len(work.colrows[pj]) == 1:
                break
            # leftover remainders are smaller than |p|; pivot on the smallest
            cands = [(abs(work.rows[k][pj]), k, pj) for k in work.colrows[pj]]
            cands += [(abs(v), pi, l) for l, v in work.rows[pi].items()]
            _, pi, pj = min(cands)
        pivots.append((pi, pj, work.rows[pi][pj]))
        done_rows.add(pi)

    r = len(pivots)
    row_order = [p[0] for p in pivots]
    col_order = [p[1] for p in pivots]
    seen_r, seen_c = set(row_order), set(col_order)
    row_order += [i for i in range(nr) if i not in seen_r]
    col_order += [j for j in range(nc) if j not in seen_c]
    diag = [p[2] for p in pivots]

    if want_transforms:
        u = [U.vecs[i] for i in row_order]
        uinv = [Uinv.vecs[i] for i in row_order]
        v = [V.vecs[j] for j in col_order]
        vinv = [Vinv.vecs[j] for j in col_order]
        for k in range(r):
            if diag[k] < 0:
                diag[k] = -diag[k]
                u[k] = {c: -x for c, x in u[k].items()}
                uinv[k] = {c: -x for c, x in uinv[k].items()}
    else:
        diag = [abs(d) for d in diag]

    for i in range(r):
        for j in range(i + 1, r):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            diag[i], diag[j] = g, ag * b
            if not want_transforms:
                continue
            u[i], u[j] = _lin(x, u[i], y, u[j]), _lin(-bg, u[i], ag, u[j])
            uinv[i], uinv[j] = _lin(ag, uinv[i], bg, uinv[j]), _lin(-y, uinv[i], x, uinv[j])
            v[i], v[j] = _lin(1, v[i], 1, v[j]), _lin(-y * bg, v[i], x * ag, v[j])
            vinv[i], vinv[j] = _lin(x * ag, vinv[i], y * bg, vinv[j]), _lin(-1, vinv[i], 1, vinv[j])

    D = IntMatrix(nr, nc)
    for k, d in enumerate(diag):
        D._data[k][k] = d
    out = SmithDecomposition(D=D, rank=r)
    if want_transforms:
        out.U = _from_vectors(nr, u, as_rows=True)
        out.U_inv = _from_vectors(nr, uinv, as_rows=False)
        out.V = _from_vectors(nc, v, as_rows=False)
        out.V_inv = _from_vectors(nc, vinv, as_rows=True)
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b) for a, b > 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def invariant_factors(m: IntMatrix) -> list[int]:
    return smith_normal_form(m).diagonal


def rank(m: IntMatrix) -> int:
    return smith_normal_form(m).rank


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank over the prime field F_p by plain Gaussian elimination."""
    rows = [[x % p for x in r] for r in m.tolist()]
    rk = 0
    ncols = m.cols
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], -1, p)
        prow = [(x * inv) % p for x in rows[rk]]
        rows[rk] = prow
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        rk += 1
    return rk


def homology_from_boundaries(d_n: IntMatrix, d_nplus1: IntMatrix, n_basis_size: int) -> HomologyGroup:
    """``ker d_n / im d_{n+1}`` for a chain group of rank ``n_basis_size``."""
    if d_n.cols != n_basis_size or d_nplus1.rows != n_basis_size:
        raise DimensionMismatch(
            f"boundary shapes {d_n.shape} and {d_nplus1.shape} do not meet at a chain group of rank {n_basis_size}"
        )
    if not (d_n @ d_nplus1).is_zero():
        raise CompositionNotZero("consecutive boundary maps do not compose to zero")
    r_n = rank(d_n)
    snf = smith_normal_form(d_nplus1)
    return HomologyGroup(n_basis_size - r_n - snf.rank, tuple(d for d in snf.diagonal if d > 1))


@dataclass
class HomologyBasis:
    """Generators of ``ker d_n / im d_{n+1}`` with coordinate extraction.

    ``generators[k]`` is a cycle over the chain basis; ``orders[k]`` is its
    order in homology (0 for infinite). Torsion generators come first in
    invariant-factor order, then free generators.
    """

    group: HomologyGroup
    generators: list[list[int]]
    orders: list[int]
    _kernel_coords: IntMatrix = field(repr=False)
    _P: IntMatrix = field(repr=False)
    _offset: int = field(repr=False)

    def coordinates(self, cycle: Sequence[int]) -> list[int]:
        """Coordinates of a cycle's class; torsion coordinates reduced mod order."""
        x = self._kernel_coords.apply(list(cycle))
        y = self._P.apply(x)[self._offset:]
        return [c % o if o else c for c, o in zip(y, self.orders)]


def homology_basis(d_n: IntMatrix, d_nplus1: IntMatrix, n_basis_size: int) -> HomologyBasis:
    """Explicit generators for ``ker d_n / im d_{n+1}`` via two Smith reductions."""
    if d_n.cols != n_basis_size or d_nplus1.rows != n_basis_size:
        raise DimensionMismatch("boundary shapes do not match the chain group")
    if not (d_n @ d_nplus1).is_zero():
        raise CompositionNotZero("consecutive boundary maps do not compose to zero")
    s1 = smith_normal_form(d_n, want_transforms=True)
    r = s1.rank
    m = n_basis_size
    kernel_idx = list(range(r, m))
    # columns of V past the rank span ker d_n; matching rows of V^-1 give coordinates
    K = s1.V.submatrix(list(range(m)), kernel_idx)
    kernel_coords = s1.V_inv.submatrix(kernel_idx, list(range(m)))
    B = kernel_coords @ d_nplus1
    s2 = smith_normal_form(B, want_transforms=True)
    z = len(kernel_idx)
    diag = s2.diagonal
    offset = sum(1 for d in diag if d == 1)
    orders = [d for d in diag if d > 1] + [0] * (z - s2.rank)
    gens = []
    for k in range(offset, z):
        coeffs = s2.U_inv.column(k)
        gens.append(K.apply(coeffs))
    group = HomologyGroup(z - s2.rank, tuple(d for d in diag if d > 1))
    return HomologyBasis(group, gens, orders, kernel_coords, s2.U, offset)
