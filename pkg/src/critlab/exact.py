"""Exact integer matrix kernel: Smith normal form, determinants, ranks over
prime fields, and per-prime elementary-divisor profiles.

Two routes are deliberately kept independent so they can cross-check each
other:

* ``snf`` runs integer elimination with minimal-absolute-value pivoting and
  produces the full invariant-factor chain (optionally with unimodular
  transform witnesses).
* ``elem_divisor_profile`` never forms the integer Smith form; it eliminates
  modulo p^B with valuation-aware pivoting, which keeps entries bounded and
  scales to matrices whose integer Smith form would be expensive.

``rank_mod_p`` is a third, plain Gaussian elimination over F_p, used as an
oracle for the e_0 entry of the profiles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime
from .intmatrix import IntMatrix


@dataclass(frozen=True)
class SnfResult:
    """Diagonal of the Smith form plus optional transform witnesses.

    invariant_factors has length min(rows, cols): a nonnegative, divisibility
    -chained prefix of nonzero entries followed by zeros.  When witnesses are
    requested, P @ M @ Q equals the diagonal matrix of the factors and both
    P and Q have determinant +-1.
    """

    invariant_factors: tuple[int, ...]
    P: IntMatrix | None = None
    Q: IntMatrix | None = None

    @property
    def nonzero_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 0)

    @property
    def zero_count(self) -> int:
        return len(self.invariant_factors) - len(self.nonzero_factors)


def snf(m: IntMatrix, want_witnesses: bool = False) -> SnfResult:
    """Smith normal form by elimination with minimal-|pivot| selection.

    The pivot at each stage is forced to divide every entry of the remaining
    submatrix (offending rows are folded into the pivot row), so the
    divisibility chain holds by construction.
    """
    R, C = m.rows, m.cols
    A = m.to_rows()
    P = [[int(i == j) for j in range(R)] for i in range(R)] if want_witnesses else None
    Q = [[int(i == j) for j in range(C)] for i in range(C)] if want_witnesses else None
    size = min(R, C)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if P is not None:
            P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if Q is not None:
            for row in Q:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        Ad, As = A[dst], A[src]
        for jj in range(C):
            Ad[jj] += c * As[jj]
        if P is not None:
            Pd, Ps = P[dst], P[src]
            for jj in range(R):
                Pd[jj] += c * Ps[jj]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        if Q is not None:
            for row in Q:
                row[dst] += c * row[src]

    for t in range(size):
        # smallest nonzero entry of the working submatrix becomes the pivot
        pi = pj = -1
        best = 0
        for i in range(t, R):
            rowi = A[i]
            for j in range(t, C):
                x = rowi[j]
                if x and (best == 0 or -best < x < best):
                    best = abs(x)
                    pi, pj = i, j
            if best == 1:
                break
        if pi < 0:
            break  # submatrix is zero; remaining factors are 0
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            pivot = A[t][t]
            restart = False
            for i in range(t + 1, R):
                x = A[i][t]
                if x:
                    q = x // pivot
                    if q:
                        add_row(i, t, -q)
                    if A[i][t]:
                        # remainder is strictly smaller than |pivot|
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, C):
                x = A[t][j]
                if x:
                    q = x // pivot
                    if q:
                        add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # row t and column t are clear; force pivot | rest of submatrix
            offender = -1
            for i in range(t + 1, R):
                rowi = A[i]
                for j in range(t + 1, C):
                    if rowi[j] % pivot:
                        offender = i
                        break
                if offender >= 0:
                    break
            if offender < 0:
                break
            add_row(t, offender, 1)

    factors = []
    for t in range(size):
        d = A[t][t]
        if d < 0:
            d = -d
            if P is not None:
                P[t] = [-x for x in P[t]]
        factors.append(d)

    return SnfResult(
        tuple(factors),
        IntMatrix.from_rows(P) if P is not None else None,
        IntMatrix.from_rows(Q) if Q is not None else None,
    )


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), -1)
            if swap < 0:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            ai, ak = a[i], a[k]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * pk - aik * ak[j]) // prev
            ai[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank of the entrywise mod-p reduction over the field with p elements."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    R, C = m.rows, m.cols
    a = [[x % p for x in row] for row in m.to_rows()]
    rank = 0
    for j in range(C):
        piv = next((i for i in range(rank, R) if a[i][j]), -1)
        if piv < 0:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][j], -1, p)
        arank = a[rank]
        if inv != 1:
            for jj in range(j, C):
                arank[jj] = arank[jj] * inv % p
        for i in range(rank + 1, R):
            f = a[i][j]
            if f:
                ai = a[i]
                for jj in range(j, C):
                    ai[jj] = (ai[jj] - f * arank[jj]) % p
        rank += 1
        if rank == R:
            break
    return rank


@dataclass(frozen=True)
class ElemDivisorProfile:
    """Multiplicities of p^i among the elementary divisors of a matrix.

    multiplicities[i] is the number of nonzero invariant factors whose p-part
    is exactly p^i (so multiplicities[0] counts the factors coprime to p);
    kernel_rank counts the zero invariant factors.
    """

    p: int
    multiplicities: tuple[int, ...]
    kernel_rank: int

    def e(self, i: int) -> int:
        return self.multiplicities[i] if 0 <= i < len(self.multiplicities) else 0

    @property
    def rank(self) -> int:
        return sum(self.multiplicities)

    @property
    def total_valuation(self) -> int:
        return sum(i * e for i, e in enumerate(self.multiplicities))


def _valuation_bound(m: IntMatrix, p: int) -> int:
    """Upper bound on v_p(product of nonzero invariant factors).

    The product of the nonzero invariant factors divides the gcd of the
    maximal-rank minors, and every minor is Hadamard-bounded by the product
    of the row norms; so v_p is at most log_p of that product.
    """
    prod2 = 1
    for i in range(m.rows):
        s = sum(x * x for x in m.row(i))
        if s > 1:
            prod2 *= s
    bound = 0
    pw = 1
    p2 = p * p
    while pw <= prod2:
        pw *= p2
        bound += 1
    return bound


def elem_divisor_profile(
    m: IntMatrix, p: int, val_bound: int | None = None
) -> ElemDivisorProfile:
    """Per-prime elementary-divisor multiplicities without integer SNF.

    Eliminates modulo p^B, pivoting on a minimal-p-valuation entry at each
    stage; the pivot valuations are then exactly the p-exponents of the
    elementary divisors.  B must exceed every true exponent: the default is
    a Hadamard-style bound plus one; pass ``val_bound`` (any upper bound on
    v_p of the product of nonzero invariant factors, e.g. the valuation of a
    known spanning-tree count) to tighten it.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    R, C = m.rows, m.cols
    size = min(R, C)
    if size == 0:
        return ElemDivisorProfile(p, (), 0)
    B = (val_bound if val_bound is not None else _valuation_bound(m, p)) + 1
    mod = p**B
    a = [[x % mod for x in row] for row in m.to_rows()]
    exps: list[int] = []
    for t in range(size):
        best_v = -1
        pi = pj = -1
        for i in range(t, R):
            rowi = a[i]
            for j in range(t, C):
                r = rowi[j]
                if r:
                    v = 0
                    while r % p == 0:
                        r //= p
                        v += 1
                    if best_v < 0 or v < best_v:
                        best_v = v
                        pi, pj = i, j
            if best_v == 0:
                break
        if pi < 0:
            break  # everything that remains is 0 mod p^B: zero invariant factors
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        v = best_v
        exps.append(v)
        pv = p**v
        unit_inv = pow(a[t][t] // pv, -1, mod)
        rowt = a[t]
        for i in range(t + 1, R):
            x = a[i][t]
            if x:
                mult = (x // pv) * unit_inv % mod
                ai = a[i]
                for j in range(t, C):
                    ai[j] = (ai[j] - mult * rowt[j]) % mod
        for j in range(t + 1, C):
            x = rowt[j]
            if x:
                mult = (x // pv) * unit_inv % mod
                # column t is already clear below the pivot, so only row t moves
                rowt[j] = (rowt[j] - mult * rowt[t]) % mod
    if exps:
        mult_list = [0] * (max(exps) + 1)
        for v in exps:
            mult_list[v] += 1
    else:
        mult_list = []
    return ElemDivisorProfile(p, tuple(mult_list), size - len(exps))


def profile_from_factors(factors, p: int, size: int | None = None) -> ElemDivisorProfile:
    """Profile derived from a known invariant-factor list (cross-check path)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    factors = list(factors)
    if size is None:
        size = len(factors)
    exps = []
    zeros = 0
    for d in factors:
        if d == 0:
            zeros += 1
            continue
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        exps.append(v)
    zeros += size - len(factors)
    if exps:
        mult_list = [0] * (max(exps) + 1)
        for v in exps:
            mult_list[v] += 1
    else:
        mult_list = []
    return ElemDivisorProfile(p, tuple(mult_list), zeros)
