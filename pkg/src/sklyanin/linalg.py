"""Scalar and matrix kernel: exact rationals, prime fields, complex floats.

Three arithmetic modes share one rank/nullspace interface:

* ``exact``   -- arbitrary-precision rationals (``fractions.Fraction``);
  ranks come from integer Gaussian elimination and are certified.
* ``prime``   -- entries mod a prime ``p < 2**31``, so every intermediate
  product fits in 62 bits and elimination vectorizes over int64.
* ``complex`` -- hardware doubles by default, mpmath software floats when
  the session precision is raised; ranks are certified by a singular-value
  gap ratio and refuse to guess on borderline spectra.

Everything here is a pure function of its inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import mpmath
import numpy as np

__all__ = [
    "IllConditioned",
    "BadPrime",
    "Mat",
    "mat_exact",
    "mat_complex",
    "mat_mod",
    "rank",
    "nullspace",
    "solve_homogeneous_over_random_prime",
    "EchelonForm",
    "echelon_exact",
    "nullspace_exact",
    "rank_mod_p",
    "random_prime",
    "is_prime",
    "rank_complex",
    "nullspace_complex",
    "set_precision",
    "get_precision",
    "GAP_RATIO",
]

#: Minimum ratio sigma_rank / sigma_{rank+1} for a complex rank to count as
#: certified.  Below this the spectrum has no usable cliff and we raise
#: rather than mis-rank.
GAP_RATIO = 1.0e3

DEFAULT_TOL = 1.0e-9

_precision_bits = 53


def set_precision(bits: int) -> None:
    """Set the session-wide complex working precision in bits.

    53 selects hardware doubles (numpy); anything larger switches the
    complex-mode kernel to mpmath software floats.
    """
    global _precision_bits
    if bits < 24:
        raise ValueError("precision below single float makes no sense here")
    _precision_bits = int(bits)
    if bits > 53:
        mpmath.mp.prec = int(bits)


def get_precision() -> int:
    return _precision_bits


class IllConditioned(Exception):
    """The singular-value gap cannot certify a rank at this tolerance."""


class BadPrime(Exception):
    """A denominator vanished mod the sampled prime; redraw."""


# ---------------------------------------------------------------------------
# Mat container
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mat:
    """Dense matrix with a single arithmetic mode.

    ``entries`` is row-major: a tuple of row tuples in exact/prime mode, or
    a numpy array in complex mode.  ``p`` is the modulus in prime mode.
    """

    rows: int
    cols: int
    entries: object
    mode: str  # "exact" | "prime" | "complex"
    p: int | None = None


def mat_exact(rows: Sequence[Sequence[Fraction | int]]) -> Mat:
    r = [tuple(Fraction(v) for v in row) for row in rows]
    ncols = len(r[0]) if r else 0
    if any(len(row) != ncols for row in r):
        raise ValueError("ragged rows")
    return Mat(len(r), ncols, tuple(r), "exact")


def mat_complex(arr) -> Mat:
    a = np.asarray(arr, dtype=complex)
    return Mat(a.shape[0], a.shape[1], a, "complex")


def mat_mod(arr, p: int) -> Mat:
    a = np.asarray(arr, dtype=np.int64) % p
    return Mat(a.shape[0], a.shape[1], a, "prime", p)


def rank(m: Mat, tol: float = DEFAULT_TOL) -> int:
    """Rank of ``m``; certified in every mode.

    In complex mode, raises IllConditioned when the singular spectrum has
    no gap of ratio >= GAP_RATIO at the tolerance cut.
    """
    if m.mode == "exact":
        return echelon_exact(m.entries).rank
    if m.mode == "prime":
        return rank_mod_p(m.entries, m.p)
    return rank_complex(m.entries, tol)


def nullspace(m: Mat, tol: float = DEFAULT_TOL):
    """Basis of the right kernel; orthonormal columns in complex mode."""
    if m.mode == "exact":
        return nullspace_exact(m.entries)
    if m.mode == "prime":
        return _nullspace_mod_p(m.entries, m.p)
    return nullspace_complex(m.entries, tol)


def solve_homogeneous_over_random_prime(m: Mat, seed: int) -> int:
    """Kernel dimension of an exact-rational matrix over a random prime.

    Equals the rational kernel dimension with high probability; callers
    needing certainty should sample two or more primes and keep the
    max-rank (= min-nullity) outcome.  Raises BadPrime when some entry's
    denominator is divisible by the sampled prime.
    """
    if m.mode != "exact":
        raise ValueError("expects an exact-mode matrix")
    rng = random.Random(seed)
    p = random_prime(rng)
    arr = np.zeros((m.rows, m.cols), dtype=np.int64)
    for i, row in enumerate(m.entries):
        for j, v in enumerate(row):
            v = Fraction(v)
            if v.denominator % p == 0:
                raise BadPrime(f"denominator of entry ({i},{j}) vanishes mod {p}")
            arr[i, j] = v.numerator * pow(v.denominator, p - 2, p) % p
    return m.cols - rank_mod_p(arr, p)


# ---------------------------------------------------------------------------
# Exact mode: integer echelon forms
# ---------------------------------------------------------------------------


def _int_rows(rows) -> list[list[int]]:
    """Clear denominators row by row and strip common content."""
    out = []
    for row in rows:
        den = 1
        for v in row:
            v = Fraction(v)
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(Fraction(v) * den) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


class EchelonForm:
    """Row-echelon form over the integers, built online.

    Rows are kept primitive (content 1) and sorted by pivot column, which
    makes membership tests a single reduction pass.
    """

    def __init__(self):
        self._rows: list[tuple[int, list[int]]] = []  # (pivot col, row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        return [p for p, _ in self._rows]

    def reduce(self, vec: Sequence[int]) -> list[int]:
        """Reduce an integer vector against the echelon rows."""
        v = list(vec)
        for pc, row in self._rows:
            if v[pc]:
                f1, f2 = row[pc], v[pc]
                v = [a * f1 - b * f2 for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        """True iff ``vec`` (ints or Fractions) lies in the row space."""
        v = _int_rows([vec])[0]
        return not any(self.reduce(v))

    def insert(self, vec: Sequence[int]) -> bool:
        """Reduce and insert; returns True when the row enlarged the space."""
        v = self.reduce(vec)
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            return False
        v = [x // g for x in v]
        pc = next(i for i, x in enumerate(v) if x)
        self._rows.append((pc, v))
        self._rows.sort(key=lambda t: t[0])
        return True

    def rows(self) -> list[list[int]]:
        return [row for _, row in self._rows]


def echelon_exact(rows) -> EchelonForm:
    """Echelon form of rational rows via fraction-free elimination."""
    ech = EchelonForm()
    for row in _int_rows(rows):
        ech.insert(row)
    return ech


def nullspace_exact(rows) -> list[tuple[Fraction, ...]]:
    """Right-kernel basis of a rational matrix, exact.

    Uses reduced row echelon over Fractions; fine at the sizes where an
    exact basis (rather than just a rank) is wanted.
    """
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# Prime mode: vectorized elimination, p < 2**31
# ---------------------------------------------------------------------------

_P_LO, _P_HI = 2**30, 2**31

# deterministic Miller-Rabin witness set, valid for all n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = _P_LO, hi: int = _P_HI) -> int:
    """A random prime in [lo, hi); defaults keep products 62-bit safe."""
    while True:
        n = rng.randrange(lo, hi) | 1
        if is_prime(n):
            return n


def rank_mod_p(arr, p: int) -> int:
    """Rank over F_p by forward elimination, int64-vectorized.

    Requires p < 2**31: products of two reduced entries then stay below
    2**62 and a difference of two such products cannot overflow int64.
    """
    if p >= _P_HI:
        raise BadPrime(f"p={p} too large for 62-bit-safe vectorized elimination")
    M = np.array(arr, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r, c:] = M[r, c:] * inv % p
        col = M[r + 1 :, c]
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[r + 1 + nzr, c:] = (M[r + 1 + nzr, c:] - np.outer(col[nzr], M[r, c:])) % p
        r += 1
    return r


def _nullspace_mod_p(arr, p: int) -> list[tuple[int, ...]]:
    """Kernel basis over F_p (small matrices; plain RREF)."""
    M = np.array(arr, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = M[r] * pow(int(M[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(cols) if c not in pivots):
        vec = [0] * cols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = int(-M[i, fc] % p)
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# Complex mode: SVD with gap certification (numpy or mpmath)
# ---------------------------------------------------------------------------


def _is_mp_matrix(A) -> bool:
    return isinstance(A, mpmath.matrix)


def _mp_svd(A):
    """mpmath SVD padded to expose a complete right factor.

    mpmath returns A = U * diag(S) * V with V of shape min(m,n) x n; padding
    wide matrices with zero rows leaves the spectrum unchanged and makes V
    square, so kernel vectors can be read off its rows.
    """
    m, n = A.rows, A.cols
    if m < n:
        P = mpmath.zeros(n, n)
        for i in range(m):
            for j in range(n):
                P[i, j] = A[i, j]
        A = P
    U, S, V = mpmath.mp.svd(mpmath.matrix(A), compute_uv=True)
    svals = [abs(S[i]) for i in range(S.rows)]
    return svals, V


def _certified_rank_from_svals(svals, tol: float) -> int:
    if not svals or float(svals[0]) == 0.0:
        return 0
    smax = float(svals[0])
    if tol <= 0:
        raise ValueError("complex mode needs tol > 0")
    cut = tol * smax
    r = sum(1 for s in svals if float(s) > cut)
    if r == 0:
        raise IllConditioned(
            f"largest singular value {smax:.3e} sits below its own tolerance cut"
        )
    if r < len(svals) and float(svals[r]) > 0:
        ratio = float(svals[r - 1]) / float(svals[r])
        if ratio < GAP_RATIO:
            raise IllConditioned(
                f"singular-value gap ratio {ratio:.3e} < {GAP_RATIO:.0e} at rank {r}"
            )
    return r


def rank_complex(A, tol: float = DEFAULT_TOL) -> int:
    """Certified numerical rank: count of sigma > tol*sigma_max, with a
    mandatory spectral cliff of ratio >= GAP_RATIO right at the cut."""
    if _is_mp_matrix(A):
        svals, _ = _mp_svd(A)
        return _certified_rank_from_svals(svals, tol)
    M = np.asarray(A, dtype=complex)
    if M.size == 0:
        return 0
    svals = np.linalg.svd(M, compute_uv=False)
    return _certified_rank_from_svals(list(svals), tol)


def nullspace_complex(A, tol: float = DEFAULT_TOL):
    """Orthonormal right-kernel basis (columns); certified like rank_complex."""
    if _is_mp_matrix(A):
        svals, V = _mp_svd(A)
        r = _certified_rank_from_svals(svals, tol)
        n = V.cols
        out = mpmath.zeros(n, n - r)
        for k in range(r, n):
            for j in range(n):
                out[j, k - r] = mpmath.conj(V[k, j])
        return out
    M = np.asarray(A, dtype=complex)
    _, svals, vh = np.linalg.svd(M)
    svals = list(svals) + [0.0] * (M.shape[1] - len(svals))
    r = _certified_rank_from_svals(svals, tol)
    return vh[r:].conj().T
