"""Exact linear algebra over Q and integer lattice tools.

Everything here is deterministic: row reduction pivots on the first nonzero
entry in column order (exact arithmetic needs no numerical pivoting), so
kernels, particular solutions and canonical witnesses are reproducible
across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    NonRationalRoot,
    UnsolvableSystem,
    UnsupportedShape,
)


class RationalMatrix:
    """A sparse matrix of exact rationals; zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise DimensionMismatch(f"entry ({i},{j}) outside {rows}x{cols}")
                v = Fraction(v)
                if v:
                    self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        m = cls(r, c)
        for i, row in enumerate(rows):
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
            for j, v in enumerate(row):
                v = Fraction(v)
                if v:
                    m.entries[(i, j)] = v
        return m

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "RationalMatrix":
        c = len(cols)
        r = len(cols[0]) if cols else 0
        m = cls(r, c)
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                v = Fraction(v)
                if v:
                    m.entries[(i, j)] = v
        return m

    def get(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def dense_rows(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        m = RationalMatrix(self.cols, self.rows)
        m.entries = {(j, i): v for (i, j), v in self.entries.items()}
        return m

    def mat_vec(self, x: Sequence[Fraction]) -> List[Fraction]:
        if len(x) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if x[j]:
                out[i] += v * x[j]
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"<RationalMatrix {self.rows}x{self.cols}, {len(self.entries)} entries>"


def _rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [v / pv for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rref(matrix: RationalMatrix) -> Tuple[RationalMatrix, List[int]]:
    rows, pivots = _rref(matrix.dense_rows())
    return RationalMatrix.from_rows(rows) if rows else RationalMatrix(0, matrix.cols), pivots


def rref_solve(
    matrix: RationalMatrix, b: Sequence
) -> Tuple[Optional[List[Fraction]], List[List[Fraction]]]:
    """Solve ``A x = b`` exactly.

    Returns ``(particular, kernel_basis)``; ``particular`` is None when b is
    outside the column space.  The particular solution sets all free
    variables to zero, which makes witnesses canonical.
    """
    b = [Fraction(v) for v in b]
    if len(b) != matrix.rows:
        raise DimensionMismatch("right-hand side has wrong length")
    n = matrix.cols
    aug = matrix.dense_rows()
    for i, row in enumerate(aug):
        row.append(b[i])
    if not aug:
        aug = []
    rows, pivots = _rref(aug) if aug else ([], [])

    particular: Optional[List[Fraction]] = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        if c == n:  # pivot in the augmented column: inconsistent
            particular = None
            break
        particular[c] = rows[r][n]
    if not aug and any(b):
        particular = None

    pivot_cols = [c for c in pivots if c < n]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, c in enumerate(pivot_cols):
            vec[c] = -rows[r][fc]
        kernel.append(vec)
    return particular, kernel


def kernel_basis(matrix: RationalMatrix) -> List[List[Fraction]]:
    return rref_solve(matrix, [0] * matrix.rows)[1]


def row_space_basis(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Independent spanning rows in reduced echelon form, with their pivots."""
    if not rows:
        return [], []
    reduced, pivots = _rref([list(r) for r in rows])
    return [reduced[i] for i in range(len(pivots))], pivots


def reduce_mod_rows(
    vec: Sequence[Fraction], rows: List[List[Fraction]], pivots: List[int]
) -> List[Fraction]:
    """Reduce ``vec`` modulo the row space of an echelon basis."""
    v = [Fraction(x) for x in vec]
    for row, p in zip(rows, pivots):
        if v[p]:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    return v


# -- Smith normal form -------------------------------------------------------


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul_int(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            if a[i][k]:
                aik = a[i][k]
                for j in range(cols):
                    if b[k][j]:
                        out[i][j] += aik * b[k][j]
    return out


def smith_form(matrix: Sequence[Sequence[int]]):
    """Smith normal form ``U * M * V = D`` with unimodular U, V.

    D is diagonal with non-negative entries and d[i] | d[i+1]; the
    reconstruction identity is re-checked before returning.
    """
    original = [list(map(int, row)) for row in matrix]
    a = [row[:] for row in original]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # locate a minimal-magnitude nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        # clear row and column t; restart if a remainder shrinks the pivot
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the whole trailing block for the divisor chain
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    d = [[a[i][j] if i == j else 0 for j in range(n)] for i in range(m)]
    if _mat_mul_int(_mat_mul_int(u, original), v) != d:
        raise ArithmeticError("Smith reduction lost the transform identity")
    return u, d, v


# -- multiplicative systems ----------------------------------------------------


@dataclass(frozen=True)
class MultiplicativeSystem:
    """Equations ``prod_i x_i**e_i = constant`` over nonzero rationals."""

    unknowns: Tuple[str, ...]
    equations: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        for exps, const in self.equations:
            if len(exps) != len(self.unknowns):
                raise DimensionMismatch("exponent vector length mismatch")
            if const == 0:
                raise UnsupportedShape("multiplicative constants must be nonzero")

    @classmethod
    def make(cls, unknowns: Sequence[str], equations: Iterable) -> "MultiplicativeSystem":
        eqs = tuple((tuple(int(e) for e in exps), Fraction(c)) for exps, c in equations)
        return cls(tuple(unknowns), eqs)

    def satisfied_by(self, values: Sequence[Fraction]) -> bool:
        for exps, const in self.equations:
            acc = Fraction(1)
            for v, e in zip(values, exps):
                acc *= Fraction(v) ** e
            if acc != const:
                return False
        return True


@dataclass
class MultiplicativeSolutions:
    """Finite solutions plus free lattice directions when the lattice is
    rank-deficient; the full solution set is every listed solution scaled by
    ``t**u`` componentwise for any nonzero rational t and direction u."""

    solutions: List[Tuple[Fraction, ...]]
    free_directions: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return not self.free_directions


def _prime_factors(n: int):
    n = abs(n)
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuation_vector(c: Fraction, primes: Sequence[int]) -> List[int]:
    num = _prime_factors(c.numerator)
    den = _prime_factors(c.denominator)
    return [num.get(p, 0) - den.get(p, 0) for p in primes]


def _solve_gf2(rows: List[List[int]], rhs: List[int]):
    """Solve a linear system over GF(2); returns (particular, kernel) or None."""
    if not rows:
        return [0] * 0, []
    n = len(rows[0])
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(aug)) if aug[i][c] % 2), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        for i in range(len(aug)):
            if i != r and aug[i][c] % 2:
                aug[i] = [(x + y) % 2 for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] % 2:
            return None
    particular = [0] * n
    for i, c in enumerate(pivots):
        particular[c] = aug[i][n] % 2
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for i, c in enumerate(pivots):
            vec[c] = aug[i][fc] % 2
        kernel.append(vec)
    return particular, kernel


def solve_multiplicative_system(system: MultiplicativeSystem) -> MultiplicativeSolutions:
    """Solve ``prod x_i**e_i = c`` equations over nonzero rationals.

    Decomposes constants and unknowns into sign times prime valuations: the
    valuations satisfy an integer linear system per prime (solved through the
    Smith form), the signs a GF(2) system.  When the exponent lattice has
    full column rank the solution set is finite; otherwise the kernel
    directions are reported symbolically.  Solutions can only involve primes
    dividing some constant: any other prime's valuations satisfy the
    homogeneous system, which is covered by the reported kernel directions
    (and in the full-rank case forces valuation zero).
    """
    k = len(system.unknowns)
    if not system.equations:
        return MultiplicativeSolutions(
            solutions=[tuple(Fraction(1) for _ in range(k))],
            free_directions=[
                tuple(1 if i == j else 0 for j in range(k)) for i in range(k)
            ],
        )
    exponent_rows = [list(exps) for exps, _ in system.equations]
    constants = [c for _, c in system.equations]

    primes = sorted(
        {
            p
            for c in constants
            for p in (*_prime_factors(c.numerator), *_prime_factors(c.denominator))
        }
    )

    u, d, v = smith_form(exponent_rows)
    m = len(exponent_rows)
    diag = [d[i][i] for i in range(min(m, k))]

    free_cols = [j for j in range(k) if j >= len(diag) or diag[j] == 0]
    free_directions = [tuple(v[i][j] for i in range(k)) for j in free_cols]

    # one integer valuation vector per prime
    valuations = {}
    for p_idx, p in enumerate(primes):
        w = [_valuation_vector(c, primes)[p_idx] for c in constants]
        uw = [sum(u[i][j] * w[j] for j in range(m)) for i in range(m)]
        y = [0] * k
        for i in range(min(m, k)):
            if diag[i] == 0:
                if uw[i] != 0:
                    raise UnsolvableSystem(
                        f"no rational solution: prime {p} constraint is inconsistent"
                    )
                continue
            if uw[i] % diag[i]:
                raise NonRationalRoot(
                    f"prime {p}: valuation {Fraction(uw[i], diag[i])} is not an integer"
                )
            y[i] = uw[i] // diag[i]
        for i in range(min(m, k), m):
            if uw[i] != 0:
                raise UnsolvableSystem(
                    f"no rational solution: prime {p} constraint is inconsistent"
                )
        valuations[p] = [sum(v[i][j] * y[j] for j in range(k)) for i in range(k)]

    # sign system over GF(2)
    sign_rhs = [1 if c < 0 else 0 for c in constants]
    sign_solution = _solve_gf2([row[:] for row in exponent_rows], sign_rhs)
    if sign_solution is None:
        raise UnsolvableSystem("no rational solution: the sign system is inconsistent")
    sign_particular, sign_kernel = sign_solution
    if len(sign_kernel) > 20:
        raise UnsupportedShape("too many free signs to enumerate")

    magnitudes = [Fraction(1)] * k
    for p in primes:
        for i in range(k):
            magnitudes[i] *= Fraction(p) ** valuations[p][i]

    solutions = []
    for mask in range(1 << len(sign_kernel)):
        signs = sign_particular[:]
        for b, vec in enumerate(sign_kernel):
            if (mask >> b) & 1:
                signs = [(s + t) % 2 for s, t in zip(signs, vec)]
        sol = tuple(
            magnitudes[i] * (-1 if signs[i] else 1) for i in range(k)
        )
        solutions.append(sol)
    solutions = sorted(set(solutions))

    solutions = [s for s in solutions if system.satisfied_by(s)]
    if not solutions and not free_directions:
        raise UnsolvableSystem("no rational solution")
    return MultiplicativeSolutions(solutions=solutions, free_directions=free_directions)
