"""p-adic filtrations attached to an integer matrix, and the dimension
identities tying them to elementary-divisor multiplicities.

For a map given by a matrix m and a prime p, the domain filters into the
descending chain of sublattices whose images are divisible by p^i, and the
codomain collects the ascending chain of those images divided by p^i (which
stabilizes to the purification of the image).  Writing e_i for the
multiplicity of p^i among the elementary divisors, the mod-p reductions
satisfy, for every i >= 0:

    dim (domain level i)   = dim kernel-bar + e_i + e_{i+1} + ...
    dim (codomain level i) = e_0 + e_1 + ... + e_i

``verify_filtration_dims`` computes both sides independently (lattice
chains on one side, a mod-p^B elimination profile on the other) and reports
whether they agree at every level up to stabilization.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ElemDivisorProfile, elem_divisor_profile, rank_mod_p
from .intmatrix import IntMatrix
from .lattices import Lattice, kernel_basis


def _diagonalize_mod(m: IntMatrix, p: int, i: int):
    """Valuation-aware elimination of m modulo p^i with a column tracker.

    Returns (pivot_valuations, q, rank) where q is an integer lift of the
    invertible mod-p^i column transform: m*q is diagonal mod p^i with the
    first ``rank`` diagonal entries of the recorded valuations (< i) and
    everything else divisible by p^i.  All entries stay below p^i.
    """
    R, C = m.rows, m.cols
    mod = p**i
    a = [[x % mod for x in row] for row in m.to_rows()]
    q = [[int(r == c) for c in range(C)] for r in range(C)]
    exps: list[int] = []
    for t in range(min(R, C)):
        best_v = -1
        pi_ = pj = -1
        for r in range(t, R):
            rowr = a[r]
            for c in range(t, C):
                x = rowr[c]
                if x:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    if best_v < 0 or v < best_v:
                        best_v = v
                        pi_, pj = r, c
            if best_v == 0:
                break
        if pi_ < 0:
            break
        if pi_ != t:
            a[t], a[pi_] = a[pi_], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in q:
                row[t], row[pj] = row[pj], row[t]
        v = best_v
        pv = p**v
        unit_inv = pow(a[t][t] // pv, -1, mod)
        rowt = a[t]
        for r in range(t + 1, R):
            x = a[r][t]
            if x:
                mult = (x // pv) * unit_inv % mod
                ar = a[r]
                for c in range(t, C):
                    ar[c] = (ar[c] - mult * rowt[c]) % mod
        for c in range(t + 1, C):
            x = rowt[c]
            if x:
                mult = (x // pv) * unit_inv % mod
                # below the pivot column t is already clear, so only row t
                # changes in a; the tracker gets the full column operation
                rowt[c] = (rowt[c] - mult * rowt[t]) % mod
                for row in q:
                    row[c] = (row[c] - mult * row[t]) % mod
        exps.append(v)
    return exps, q, len(exps)


def filtration_M(m: IntMatrix, p: int, i: int) -> Lattice:
    """Sublattice of Z^cols whose images under m are divisible by p^i.

    Membership of x depends only on x mod p^i, so the lattice is the full
    preimage of ker(m mod p^i): eliminate modulo p^i tracking column
    operations, read the kernel off the diagonal form, lift, and add p^i
    times the standard basis.
    """
    if i < 0:
        raise ValueError("filtration level must be nonnegative")
    C = m.cols
    if i == 0:
        return Lattice(C, ([int(r == c) for c in range(C)] for r in range(C)))
    exps, q, rank = _diagonalize_mod(m, p, i)
    mod = p**i
    out = Lattice(C)
    for k in range(rank):
        scale = p ** (i - exps[k])
        out.add_vector([scale * q[x][k] % mod for x in range(C)])
    for j in range(rank, C):
        out.add_vector([q[x][j] % mod for x in range(C)])
    for x in range(C):
        vec = [0] * C
        vec[x] = mod
        out.add_vector(vec)
    return out


def filtration_N(m: IntMatrix, p: int, i: int) -> Lattice:
    """Lattice of images of the level-i domain sublattice, divided by p^i."""
    if i < 0:
        raise ValueError("filtration level must be nonnegative")
    pi = p**i
    out = Lattice(m.rows)
    for b in filtration_M(m, p, i).rows:
        y = m.mul_vector(b)
        if any(x % pi for x in y):
            raise AssertionError("image not divisible by p^i; filtration bug")
        out.add_vector([x // pi for x in y])
    return out


@dataclass(frozen=True)
class FiltrationReport:
    """Measured reduction dimensions of both chains, with the pass verdict."""

    p: int
    dims_M: tuple[int, ...]
    dims_N: tuple[int, ...]
    kernel_dim: int
    passed: bool

    @property
    def max_i(self) -> int:
        return len(self.dims_M) - 1

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "dims_M": list(self.dims_M),
            "dims_N": list(self.dims_N),
            "kernel_dim": self.kernel_dim,
            "pass": self.passed,
        }


def verify_filtration_dims(
    m: IntMatrix, p: int, profile: ElemDivisorProfile | None = None
) -> FiltrationReport:
    """Check both dimension identities at every level up to stabilization.

    The multiplicities e_i come from ``elem_divisor_profile`` (or a caller-
    supplied profile); the chain dimensions are measured from the lattices
    themselves.  Depth is capped at 1 + v_p(product of invariant factors),
    beyond which both chains are provably stable.
    """
    if profile is None:
        profile = elem_divisor_profile(m, p)
    depth = profile.total_valuation + 1
    kern = kernel_basis(m)
    if kern:
        kernel_dim = rank_mod_p(IntMatrix.from_rows(kern), p)
    else:
        kernel_dim = 0
    dims_m = []
    dims_n = []
    for i in range(depth + 1):
        dims_m.append(filtration_M(m, p, i).dim_mod(p))
        dims_n.append(filtration_N(m, p, i).dim_mod(p))
    top = len(profile.multiplicities)
    expect_m = [
        kernel_dim + sum(profile.e(k) for k in range(i, top)) for i in range(depth + 1)
    ]
    expect_n = [sum(profile.e(k) for k in range(0, i + 1)) for i in range(depth + 1)]
    passed = dims_m == expect_m and dims_n == expect_n
    return FiltrationReport(p, tuple(dims_m), tuple(dims_n), kernel_dim, passed)
