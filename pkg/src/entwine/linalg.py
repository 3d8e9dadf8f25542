"""Exact dense/sparse linear algebra over Q and prime fields.

Matrices are stored as scipy integer sparse matrices together with a single
positive denominator, so a matrix is num/den entrywise.  All arithmetic is
exact: products and sums are guarded against int64 overflow and fall back to
arbitrary-precision Python integers when a bound is exceeded (which does not
happen for the structure constants handled here, but keeps user input safe).

Rank / kernel / image / solve go through a sparse reduced row echelon form
with exact scalar arithmetic (Fraction over Q, modular inverses over F_p).
RREF is canonical, which keeps every downstream computation reproducible
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .errors import (
    FieldMismatchError,
    InconsistentQuotientError,
    ShapeMismatchError,
    StructureParseError,
)

_I64_GUARD = 2**62
_IDENTITY_CACHE: dict = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: the rationals ('Q') or a prime field ('Fp', p)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("rationals carry no characteristic")
        elif self.kind == "Fp":
            if self.p is None or self.p < 2 or not _is_prime(self.p):
                raise ValueError(f"not a prime: {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("Fp", p)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        if text == "Q":
            return FieldSpec("Q")
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise StructureParseError(f"bad field spec {text!r}") from None
            try:
                return FieldSpec.prime(p)
            except ValueError as exc:
                raise StructureParseError(str(exc)) from None
        raise StructureParseError(f"bad field spec {text!r}")

    def __str__(self):
        return "Q" if self.kind == "Q" else f"Fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p


QQ = FieldSpec.rationals()


def parse_coeff(text) -> Fraction:
    """Parse a coefficient given as 'a' or 'a/b' (decimal integers)."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise StructureParseError(f"bad coefficient {text!r}")
    s = text.strip()
    try:
        if "/" in s:
            a, b = s.split("/", 1)
            num, den = int(a), int(b)
            if den == 0:
                raise StructureParseError(f"zero denominator in {text!r}")
            return Fraction(num, den)
        return Fraction(int(s))
    except ValueError:
        raise StructureParseError(f"bad coefficient {text!r}") from None


def format_coeff(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _coeff_to_field(field: FieldSpec, value) -> tuple[int, int]:
    """Return (numerator, denominator) of value normalised into the field."""
    frac = parse_coeff(value)
    if field.kind == "Q":
        return frac.numerator, frac.denominator
    p = field.p
    if frac.denominator % p == 0:
        raise StructureParseError(f"denominator of {frac} not invertible mod {p}")
    num = frac.numerator * pow(frac.denominator, p - 2, p) % p
    return num, 1


class Mat:
    """Immutable exact matrix over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "_num", "_den", "_rref_cache")

    def __init__(self, field: FieldSpec, num, den: int = 1):
        if den <= 0:
            num, den = -num, -den
        self.field = field
        self._num = num.tocsr() if not sp.issparse(num) or num.format != "csr" else num
        if self._num.dtype != np.int64:
            # scipy returns float64 for some degenerate kron/stack results
            if self._num.nnz and not np.all(self._num.data == np.trunc(self._num.data)):
                raise ShapeMismatchError("non-integer data reached the integer engine")
            self._num = self._num.astype(np.int64)
        self._num.sum_duplicates()
        self.rows, self.cols = self._num.shape
        if field.kind == "Fp":
            if den != 1:
                inv = pow(den % field.p, field.p - 2, field.p)
                self._num = self._mod(self._num * inv)
                den = 1
            else:
                self._num = self._mod(self._num)
        self._den = den
        self._rref_cache = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def zeros(field, rows, cols) -> "Mat":
        return Mat(field, sp.csr_matrix((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(field, n) -> "Mat":
        key = (field, n)
        cached = _IDENTITY_CACHE.get(key)
        if cached is None:
            cached = Mat(field, sp.identity(n, dtype=np.int64, format="csr"))
            _IDENTITY_CACHE[key] = cached
        return cached

    @staticmethod
    def from_triples(field, rows, cols, triples) -> "Mat":
        """Build from (row, col, coeff) triples; absent entries are zero."""
        nums, dens = [], []
        ii, jj = [], []
        for i, j, v in triples:
            if not (0 <= i < rows and 0 <= j < cols):
                raise StructureParseError(f"index ({i},{j}) out of range {rows}x{cols}")
            n, d = _coeff_to_field(field, v)
            if n == 0:
                continue
            ii.append(i)
            jj.append(j)
            nums.append(n)
            dens.append(d)
        den = math.lcm(*dens) if dens else 1
        data = [n * (den // d) for n, d in zip(nums, dens)]
        if any(abs(x) >= _I64_GUARD for x in data):
            raise StructureParseError("coefficients too large for the engine")
        m = sp.coo_matrix(
            (np.array(data, dtype=np.int64), (ii, jj)), shape=(rows, cols)
        )
        return Mat(field, m.tocsr(), den)

    @staticmethod
    def from_rows(field, rows_data) -> "Mat":
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows else 0
        triples = []
        for i, row in enumerate(rows_data):
            if len(row) != cols:
                raise ShapeMismatchError("ragged rows")
            for j, v in enumerate(row):
                triples.append((i, j, v))
        return Mat.from_triples(field, rows, cols, triples)

    @staticmethod
    def column(field, values) -> "Mat":
        return Mat.from_rows(field, [[v] for v in values])

    # -- helpers -----------------------------------------------------------

    def _mod(self, num):
        num = num.tocsr()
        num.data %= self.field.p
        num.eliminate_zeros()
        return num

    def _max_abs(self) -> int:
        if self._num.nnz == 0:
            return 0
        return int(np.abs(self._num.data).max())

    def _check_field(self, other: "Mat"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def normalized(self) -> "Mat":
        if self.field.kind == "Fp" or self._den == 1:
            return self
        if self._num.nnz == 0:
            return Mat(self.field, self._num, 1)
        g = int(np.gcd.reduce(np.abs(self._num.data)))
        g = math.gcd(g, self._den)
        if g <= 1:
            return self
        num = self._num.copy()
        num.data //= g
        return Mat(self.field, num, self._den // g)

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeMismatchError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bound = self._max_abs() * other._max_abs() * max(self.cols, 1)
        if bound < _I64_GUARD:
            num = self._num @ other._num
            return Mat(self.field, num, self._den * other._den).normalized()
        return self._slow_matmul(other)

    def _slow_matmul(self, other: "Mat") -> "Mat":
        a = self._num.tocoo()
        rows_map: dict[int, dict[int, int]] = {}
        for i, j, v in zip(a.row, a.col, a.data):
            rows_map.setdefault(int(i), {})[int(j)] = int(v)
        b = other._num.tocsr()
        triples = []
        for i, arow in rows_map.items():
            acc: dict[int, int] = {}
            for k, av in arow.items():
                start, end = b.indptr[k], b.indptr[k + 1]
                for idx in range(start, end):
                    j = int(b.indices[idx])
                    acc[j] = acc.get(j, 0) + av * int(b.data[idx])
            for j, v in acc.items():
                if v:
                    triples.append((i, j, Fraction(v, self._den * other._den)))
        return Mat.from_triples(self.field, self.rows, other.cols, triples)

    def _aligned(self, other: "Mat"):
        den = math.lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        if max(self._max_abs() * fa, other._max_abs() * fb) >= _I64_GUARD:
            raise StructureParseError("entry growth beyond engine bounds")
        return self._num * fa, other._num * fb, den

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatchError("shape mismatch in addition")
        a, b, den = self._aligned(other)
        return Mat(self.field, a + b, den).normalized()

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(self.field, -self._num, self._den)

    def scale(self, value) -> "Mat":
        n, d = _coeff_to_field(self.field, value)
        if abs(n) * self._max_abs() >= _I64_GUARD:
            raise StructureParseError("entry growth beyond engine bounds")
        return Mat(self.field, self._num * n, self._den * d).normalized()

    def transpose(self) -> "Mat":
        return Mat(self.field, self._num.transpose().tocsr(), self._den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        if self.field != other.field or (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def is_zero(self) -> bool:
        return self._num.nnz == 0

    @property
    def nnz(self) -> int:
        return self._num.nnz

    def entry(self, i, j) -> Fraction:
        v = int(self._num[i, j])
        if self.field.kind == "Fp":
            return Fraction(v)
        return Fraction(v, self._den)

    def col_vector(self, j) -> "Mat":
        return Mat(self.field, self._num[:, j].tocsr(), self._den)

    def select_columns(self, idx) -> "Mat":
        return Mat(self.field, self._num[:, idx].tocsr(), self._den)

    def select_rows(self, idx) -> "Mat":
        return Mat(self.field, self._num[idx, :].tocsr(), self._den)

    def to_fraction_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        coo = self._num.tocoo()
        for i, j, v in zip(coo.row, coo.col, coo.data):
            out[int(i)][int(j)] = Fraction(int(v), self._den)
        return out

    def triples(self):
        """Yield (i, j, Fraction) over nonzero entries, row-major order."""
        csr = self._num
        for i in range(self.rows):
            for idx in range(csr.indptr[i], csr.indptr[i + 1]):
                yield i, int(csr.indices[idx]), Fraction(int(csr.data[idx]), self._den)

    def __repr__(self):
        return f"Mat({self.field}, {self.rows}x{self.cols}, nnz={self.nnz})"

    # -- echelon form -------------------------------------------------------

    def _row_dicts(self):
        csr = self._num
        rows = []
        for i in range(self.rows):
            row = {}
            for idx in range(csr.indptr[i], csr.indptr[i + 1]):
                row[int(csr.indices[idx])] = Fraction(int(csr.data[idx]), self._den)
            rows.append(row)
        return rows

    def _row_dicts_mod(self):
        csr = self._num
        rows = []
        for i in range(self.rows):
            row = {}
            for idx in range(csr.indptr[i], csr.indptr[i + 1]):
                v = int(csr.data[idx]) % self.field.p
                if v:
                    row[int(csr.indices[idx])] = v
            rows.append(row)
        return rows

    def rref(self):
        """Canonical reduced row echelon data: (pivot_cols, pivot_rows).

        pivot_rows[k] is a dict col->coeff for the row whose pivot is
        pivot_cols[k]; pivots are 1 and pivot columns are cleared elsewhere.
        """
        if self._rref_cache is None:
            if self.field.kind == "Q":
                self._rref_cache = _rref_q(self._row_dicts(), self.cols)
            else:
                self._rref_cache = _rref_p(self._row_dicts_mod(), self.cols, self.field.p)
        return self._rref_cache


def _rref_q(rowdicts, ncols):
    pool = [r for r in rowdicts if r]
    piv: list[tuple[int, dict]] = []
    for c in range(ncols):
        best_i, best_key = None, None
        for i, r in enumerate(pool):
            v = r.get(c)
            if v is not None and v != 0:
                key = (0 if v.denominator == 1 and abs(v.numerator) == 1 else 1, len(r))
                if best_key is None or key < best_key:
                    best_key, best_i = key, i
        if best_i is None:
            continue
        row = pool.pop(best_i)
        pv = row[c]
        if pv != 1:
            row = {k: v / pv for k, v in row.items()}
        for r in pool:
            v = r.get(c)
            if v:
                for k, w in row.items():
                    nv = r.get(k, 0) - v * w
                    if nv:
                        r[k] = nv
                    elif k in r:
                        del r[k]
        for _, prow in piv:
            v = prow.get(c)
            if v:
                for k, w in row.items():
                    nv = prow.get(k, 0) - v * w
                    if nv:
                        prow[k] = nv
                    elif k in prow:
                        del prow[k]
        piv.append((c, row))
        pool = [r for r in pool if r]
    piv.sort(key=lambda t: t[0])
    return tuple(c for c, _ in piv), [r for _, r in piv]


def _rref_p(rowdicts, ncols, p):
    pool = [r for r in rowdicts if r]
    piv: list[tuple[int, dict]] = []
    for c in range(ncols):
        best_i, best_key = None, None
        for i, r in enumerate(pool):
            if c in r:
                key = (0 if r[c] in (1, p - 1) else 1, len(r))
                if best_key is None or key < best_key:
                    best_key, best_i = key, i
        if best_i is None:
            continue
        row = pool.pop(best_i)
        pv = row[c]
        if pv != 1:
            inv = pow(pv, p - 2, p)
            row = {k: v * inv % p for k, v in row.items()}
        for bucket in (pool, [pr for _, pr in piv]):
            for r in bucket:
                v = r.get(c)
                if v:
                    for k, w in row.items():
                        nv = (r.get(k, 0) - v * w) % p
                        if nv:
                            r[k] = nv
                        elif k in r:
                            del r[k]
        piv.append((c, row))
        pool = [r for r in pool if r]
    piv.sort(key=lambda t: t[0])
    return tuple(c for c, _ in piv), [r for _, r in piv]


# -- public operations ------------------------------------------------------


def rank(m: Mat) -> int:
    return len(m.rref()[0])


def kernel_basis(m: Mat) -> list[Mat]:
    """Null space basis in reduced echelon form, one vector per free column."""
    piv_cols, piv_rows = m.rref()
    piv_set = set(piv_cols)
    basis = []
    for fc in range(m.cols):
        if fc in piv_set:
            continue
        triples = [(fc, 0, 1)]
        for c, row in zip(piv_cols, piv_rows):
            v = row.get(fc)
            if v:
                triples.append((c, 0, -v))
        basis.append(Mat.from_triples(m.field, m.cols, 1, triples))
    return basis


def image_basis(m: Mat) -> list[Mat]:
    """Basis of the column space: the original columns at pivot positions."""
    piv_cols, _ = m.rref()
    return [m.col_vector(j) for j in piv_cols]


def solve(m: Mat, b: Mat) -> Mat | None:
    """Some x with m @ x = b, or None when the system is inconsistent."""
    m._check_field(b)
    if b.rows != m.rows or b.cols != 1:
        raise ShapeMismatchError("right-hand side has wrong shape")
    aug = hstack([m, b])
    piv_cols, piv_rows = aug.rref()
    triples = []
    for c, row in zip(piv_cols, piv_rows):
        if c == m.cols:
            return None
        v = row.get(m.cols)
        if v:
            triples.append((c, 0, v))
    return Mat.from_triples(m.field, m.cols, 1, triples)


def from_columns(field, length, columns) -> Mat:
    if not columns:
        return Mat.zeros(field, length, 0)
    triples = []
    for j, col in enumerate(columns):
        if col.rows != length or col.cols != 1:
            raise ShapeMismatchError("column of wrong length")
        for i, _, v in col.triples():
            triples.append((i, j, v))
    return Mat.from_triples(field, length, len(columns), triples)


def hstack(mats: list[Mat]) -> Mat:
    field = mats[0].field
    rows = mats[0].rows
    triples = []
    off = 0
    for m in mats:
        if m.field != field:
            raise FieldMismatchError("mixed fields in hstack")
        if m.rows != rows:
            raise ShapeMismatchError("mixed heights in hstack")
        for i, j, v in m.triples():
            triples.append((i, j + off, v))
        off += m.cols
    return Mat.from_triples(field, rows, off, triples)


def vstack(mats: list[Mat]) -> Mat:
    field = mats[0].field
    cols = mats[0].cols
    triples = []
    off = 0
    for m in mats:
        if m.field != field:
            raise FieldMismatchError("mixed fields in vstack")
        if m.cols != cols:
            raise ShapeMismatchError("mixed widths in vstack")
        for i, j, v in m.triples():
            triples.append((i + off, j, v))
        off += m.rows
    return Mat.from_triples(field, off, cols, triples)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; leftmost tensor factor is most significant."""
    a._check_field(b)
    if a._max_abs() * b._max_abs() >= _I64_GUARD:
        raise StructureParseError("entry growth beyond engine bounds")
    shape = (a.rows * b.rows, a.cols * b.cols)
    A, B = a._num.tocoo(), b._num.tocoo()
    if A.nnz == 0 or B.nnz == 0:
        return Mat(a.field, sp.csr_matrix(shape, dtype=np.int64), 1)
    # vectorized COO outer product: much faster than scipy's kron for the
    # many small factors composed here
    row = (A.row.astype(np.int64)[:, None] * b.rows + B.row[None, :]).ravel()
    col = (A.col.astype(np.int64)[:, None] * b.cols + B.col[None, :]).ravel()
    data = (A.data[:, None] * B.data[None, :]).ravel()
    num = sp.csr_matrix((data, (row, col)), shape=shape)
    return Mat(a.field, num, a._den * b._den).normalized()


def kron_all(mats: list[Mat]) -> Mat:
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def quotient_with_projection(sub: list[Mat], big: list[Mat], field=None, length=None):
    """Complete span(sub) to span(big); return (class_basis, reduce).

    reduce maps any vector of span(big) to its coordinates on class_basis
    modulo span(sub).  Raises InconsistentQuotientError when span(sub) is not
    contained in span(big) or reduce is fed a vector outside span(big).
    """
    if not sub and not big:
        if field is None:
            raise ShapeMismatchError("empty quotient needs explicit field/length")

        def reduce_zero(v: Mat):
            if not v.is_zero():
                raise InconsistentQuotientError("vector outside span(big)")
            return ()

        return [], reduce_zero
    probe = (big or sub)[0]
    field = probe.field
    length = probe.rows
    big_mat = from_columns(field, length, big)
    sub_mat = from_columns(field, length, sub)
    scan = hstack([sub_mat, big_mat])
    piv_cols, _ = scan.rref()
    if len(piv_cols) != rank(big_mat):
        raise InconsistentQuotientError("span(sub) not contained in span(big)")
    # pivot columns past the sub block are exactly the greedy completion of
    # sub to a basis of span(big), scanning big in the given order
    chosen = [big[j - len(sub)] for j in piv_cols if j >= len(sub)]
    class_mat = from_columns(field, length, chosen)
    combined = hstack([sub_mat, class_mat])

    def reduce(v: Mat):
        x = solve(combined, v)
        if x is None:
            raise InconsistentQuotientError("vector outside span(big)")
        return tuple(x.entry(len(sub) + k, 0) for k in range(len(chosen)))

    return chosen, reduce
