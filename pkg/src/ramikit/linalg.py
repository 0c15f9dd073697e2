"""Exact integer and mod-p linear algebra on small dense matrices.

Matrices are lists of rows of Python ints, so every computation is carried
out in arbitrary precision; no floating point enters anywhere.  This is
essential for Smith normal form on rewritten presentations, where naive
elimination can blow entries up well past 2**63.
"""

from __future__ import annotations

from dataclasses import dataclass

IntMatrix = list[list[int]]


class NotPrime(ValueError):
    """Raised when a modulus expected to be prime is not."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("incompatible shapes")
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)] if a else []


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(mat: IntMatrix, check: bool = True
                      ) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith normal form with unimodular transforms.

    Returns ``(diag, L, R)`` with ``L * mat * R`` diagonal, the nonnegative
    diagonal entries ``diag[0] | diag[1] | ...`` forming a divisibility chain
    (trailing zeros allowed).  Pivots are chosen by minimal absolute value to
    limit entry growth.  With ``check=True`` the factorization and the
    unimodularity of both transforms are verified exactly.
    """
    a = [row[:] for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    left = identity_matrix(nrows)
    right = identity_matrix(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        arow, lsrc = a[src], left[src]
        for j in range(ncols):
            a[dst][j] += q * arow[j]
        for j in range(nrows):
            left[dst][j] += q * lsrc[j]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # minimal nonzero |entry| in the trailing block as pivot
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = abs(a[i][j])
                if v and (pivot is None or v < pivot[0]):
                    pivot = (v, i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            # clear column t below/above the pivot
            dirty = False
            for i in range(nrows):
                if i != t and a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(ncols):
                if j != t and a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            add_row(t, t, -2)
        t += 1

    diag = [a[i][i] for i in range(limit)]
    if check:
        full = mat_mul(mat_mul(left, mat), right)
        for i in range(nrows):
            for j in range(ncols):
                want = diag[i] if i == j and i < limit else 0
                if full[i][j] != want:
                    raise AssertionError("smith normal form reconstruction failed")
        if abs(det(left)) != 1 or abs(det(right)) != 1:
            raise AssertionError("smith normal form transform not unimodular")
    return diag, left, right


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors of a finitely generated abelian group."""

    free_rank: int
    torsion: tuple[int, ...]  # ascending divisibility chain, each > 1

    def __post_init__(self) -> None:
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion factors must exceed 1")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def hom_dim_to_fp(self, p: int) -> int:
        """Dimension of the homomorphisms into the field with p elements."""
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        return self.free_rank + sum(1 for d in self.torsion if d % p == 0)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "1"


def cokernel_invariants(mat: IntMatrix, n_cols: int) -> AbelianInvariants:
    """Invariants of Z^n_cols modulo the row space of ``mat``."""
    if mat:
        diag, _, _ = smith_normal_form(mat)
    else:
        diag = []
    nonzero = [d for d in diag if d != 0]
    return AbelianInvariants(
        free_rank=n_cols - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


def fp_rank(mat: IntMatrix, p: int) -> int:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    m = [[v % p for v in row] for row in mat]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[rank])]
        rank += 1
    return rank


def fp_nullspace(mat: IntMatrix, p: int, n_cols: int | None = None
                 ) -> list[list[int]]:
    """Basis of the right nullspace of ``mat`` over the field with p elements.

    Vectors live on the columns (one coordinate per generator when ``mat`` is
    a relator exponent matrix); the dimension is ``n_cols - rank_p(mat)``.
    Pass ``n_cols`` explicitly when ``mat`` has no rows.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n_cols is None:
        if not mat:
            raise ValueError("n_cols required for a matrix with no rows")
        n_cols = len(mat[0])
    m = [[v % p for v in row] for row in mat]
    # reduced row echelon form, tracking pivot columns
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    free_cols = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * n_cols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-m[r][fc]) % p
        basis.append(vec)
    return basis
