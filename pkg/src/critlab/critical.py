"""Critical groups of graphs and the invariants that cross-check them.

The critical group is the torsion part of the cokernel of the Laplacian;
its invariant factors come straight out of the Smith form, its order equals
the spanning-tree count of a connected graph, and the number of even
invariant factors equals the dimension of the binary bicycle space.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import factorize
from .exact import determinant, snf
from .graphs import Graph, InfeasibleParametersError, SrgSpectrum, laplacian_matrix
from .intmatrix import IntMatrix


@dataclass(frozen=True)
class CriticalGroup:
    """Invariant-factor presentation of the critical group.

    invariant_factors lists only the nontrivial factors (> 1), in ascending
    (divisibility) order; order is their product; free_rank is the number of
    zero invariant factors of the Laplacian, i.e. the number of connected
    components.
    """

    invariant_factors: tuple[int, ...]
    order: int
    free_rank: int

    def order_factored(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.invariant_factors:
            for p, e in factorize(d).items():
                out[p] = out.get(p, 0) + e
        return out


def critical_group(g: Graph) -> CriticalGroup:
    """Critical group from the Smith form of the full Laplacian."""
    result = snf(laplacian_matrix(g))
    nontrivial = tuple(d for d in result.invariant_factors if d > 1)
    order = 1
    for d in nontrivial:
        order *= d
    return CriticalGroup(nontrivial, order, result.zero_count)


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees, as the reduced-Laplacian determinant.

    Deleting row and column 0 of the Laplacian and taking the determinant
    needs no eigenvalues and returns 0 for disconnected graphs.
    """
    if g.n == 0:
        raise ValueError("empty graph has no spanning tree count")
    lap = laplacian_matrix(g)
    reduced = [
        [lap[i, j] for j in range(1, g.n)] for i in range(1, g.n)
    ]
    if g.n == 1:
        return 1
    return determinant(IntMatrix.from_rows(reduced))


def bicycle_dimension(g: Graph) -> int:
    """Dimension of the binary bicycle space of a connected graph.

    Equals the number of even invariant factors of the Laplacian; the
    brute-force meaning (even-degree edge sets that are also in the cut
    space) is exercised by the test suite.
    """
    if not g.is_connected():
        raise ValueError("bicycle dimension is defined here for connected graphs")
    return sum(1 for d in critical_group(g).invariant_factors if d % 2 == 0)


def predicted_order_from_spectrum(spectrum: SrgSpectrum, v: int) -> dict[int, int]:
    """Factored critical-group order of a connected SRG from its spectrum.

    The Laplacian eigenvalues are k minus the adjacency eigenvalues; the
    order is their product over the nonzero ones, divided by v.  Everything
    stays factored, so the result is exact; a non-integral quotient raises
    InfeasibleParametersError.
    """
    if spectrum.v != v:
        raise ValueError(
            f"vertex count {v} does not match spectrum (v={spectrum.v})"
        )
    k = spectrum.k
    acc: dict[int, int] = {}

    def accumulate(n: int, times: int):
        if n <= 0:
            raise InfeasibleParametersError(
                "nonpositive Laplacian eigenvalue for a connected graph"
            )
        for p, e in factorize(n).items():
            acc[p] = acc.get(p, 0) + e * times

    if spectrum.theta.is_integral:
        accumulate(k - spectrum.theta.to_int(), spectrum.m_theta)
        accumulate(k - spectrum.tau.to_int(), spectrum.m_tau)
    else:
        if spectrum.m_theta != spectrum.m_tau:
            raise InfeasibleParametersError(
                "irrational eigenvalues with unequal multiplicities"
            )
        # (k - theta)(k - tau) is rational: use the norm, once per conjugate pair
        a, disc = spectrum.theta.a, spectrum.theta.disc
        norm4 = (2 * k - a) ** 2 - disc
        if norm4 % 4:
            raise InfeasibleParametersError("eigenvalue norm is not an integer")
        accumulate(norm4 // 4, spectrum.m_theta)
    for p, e in factorize(v).items():
        have = acc.get(p, 0) - e
        if have < 0:
            raise InfeasibleParametersError(
                f"spectrum order is not divisible by v={v}"
            )
        if have:
            acc[p] = have
        else:
            acc.pop(p, None)
    return dict(sorted(acc.items()))
