"""Constraint analysis for critical groups of strongly regular graphs.

For an SRG with parameters (v, k, lam, mu), the defining relation of the
adjacency matrix turns into a quadratic identity for the Laplacian,
(L - c*I) L = -w*I + mu*J with c = 2k - lam + mu and w = mu*v.  Restricted
to the sublattice of zero-sum vectors the J term vanishes, so every
elementary divisor of the restricted map divides w; the same bound holds
for the critical group.  Primes whose square does not divide w therefore
have forced multiplicities (the valuation of the group order), while for
higher prime powers the admissible multiplicity vectors form a small number
of one-parameter families cut out by eigenvalue rank inequalities.  This
module mechanizes that pipeline for arbitrary feasible parameters and any
prime, which is what lets the same code be validated on the real Moore
graphs of valency 2, 3 and 7 and then applied to the hypothetical valency-57
parameter set (v, k, lam, mu) = (3250, 57, 0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, is_prime, prime_power_divisors, valuation
from .critical import predicted_order_from_spectrum
from .graphs import (
    Graph,
    InfeasibleParametersError,
    SrgParams,
    laplacian_matrix,
    srg_spectrum,
)
from .intmatrix import IntMatrix


class ContradictionError(Exception):
    """The constraint system admits no nonnegative solution.

    For a parameter set that is supposed to describe an actual graph this
    outcome would disprove existence, so it is raised loudly instead of
    being returned as an empty list.
    """


@dataclass(frozen=True)
class LaplacianIdentity:
    """Quadratic identity (L - shift*I) L = -w*I + j_coeff*J."""

    shift: int
    w: int
    j_coeff: int

    @property
    def w_factored(self) -> dict[int, int]:
        return factorize(self.w)

    def holds_on(self, g: Graph) -> bool:
        """Entrywise verification on an actual graph."""
        n = g.n
        lap = laplacian_matrix(g)
        lhs = (lap - self.shift * IntMatrix.identity(n)) @ lap
        rhs = (-self.w) * IntMatrix.identity(n) + self.j_coeff * IntMatrix.ones(n, n)
        return lhs == rhs


def derive_laplacian_identity(params: SrgParams) -> LaplacianIdentity:
    """Expand (k*I - L)^2 = k*I + lam*(k*I - L) + mu*(J - (k*I - L) - I).

    Collecting terms gives shift c = 2k - lam + mu and constant
    w = k(k - 1 - lam) + mu(k + 1), which the SRG counting identity reduces
    to w = mu*v.  Requires mu >= 1 (connected, diameter-2 case).
    """
    v, k, lam, mu = params.as_tuple()
    if mu < 1:
        raise InfeasibleParametersError(
            "the Laplacian identity derivation needs mu >= 1"
        )
    c = 2 * k - lam + mu
    w = k * (k - 1 - lam) + mu * (k + 1)
    assert w == mu * v, "SRG counting identity should force w = mu*v"
    return LaplacianIdentity(shift=c, w=w, j_coeff=mu)


@dataclass(frozen=True)
class DivisorBound:
    """Prime powers that can occur as elementary divisors (divisors of w)."""

    w: int
    allowed: tuple[int, ...]


def divisor_bound(identity: LaplacianIdentity) -> DivisorBound:
    """Every elementary divisor of the zero-sum restriction divides w."""
    return DivisorBound(identity.w, tuple(prime_power_divisors(identity.w)))


@dataclass(frozen=True)
class AffineExpr:
    """Integer affine expression const + coeff * var."""

    const: int
    coeff: int
    var: str = "t"

    def __call__(self, value: int) -> int:
        return self.const + self.coeff * value

    def __str__(self) -> str:
        c0, c1 = self.const, self.coeff
        if c1 == 0:
            return str(c0)
        if c1 == 1:
            if c0 == 0:
                return self.var
            if c0 < 0:
                return f"{self.var} - {-c0}"
            return f"{c0} + {self.var}"
        if c1 == -1:
            return f"{c0} - {self.var}"
        if c1 > 0:
            return f"{c0} + {c1}*{self.var}"
        return f"{c0} - {-c1}*{self.var}"


@dataclass(frozen=True)
class SolutionFamily:
    """One-parameter family of admissible multiplicity vectors.

    exprs[i] gives the multiplicity of q^i as a function of the free
    parameter t over the inclusive range t_range; rank_exprs rewrites the
    multiplicities for i >= 1 as functions of the q-rank e_0 (empty when
    that rewrite is not integral).
    """

    case_label: int
    prime: int
    t_range: tuple[int, int]
    exprs: tuple[AffineExpr, ...]
    rank_exprs: tuple[AffineExpr, ...]

    def evaluate(self, t: int) -> tuple[int, ...]:
        if not (self.t_range[0] <= t <= self.t_range[1]):
            raise ValueError(f"t={t} outside range {self.t_range}")
        return tuple(ex(t) for ex in self.exprs)

    def contains(self, multiplicities) -> int | None:
        """Parameter value matching the given (e_0, e_1, ...) or None."""
        top = len(self.exprs)
        vec = list(multiplicities)
        if any(vec[top:]):
            return None
        vec = vec[:top] + [0] * (top - len(vec))
        pivot = next((ex for ex in self.exprs if ex.coeff != 0), None)
        if pivot is None:
            t = self.t_range[0]
        else:
            i = self.exprs.index(pivot)
            num = vec[i] - pivot.const
            if num % pivot.coeff:
                return None
            t = num // pivot.coeff
        if not (self.t_range[0] <= t <= self.t_range[1]):
            return None
        if all(ex(t) == vec[i] for i, ex in enumerate(self.exprs)):
            return t
        return None

    def to_json_dict(self) -> dict:
        return {
            "case": self.case_label,
            "prime": self.prime,
            "param": "t",
            "t_range": list(self.t_range),
            "e": [str(ex) for ex in self.exprs],
            "e_of_rank": [str(ex) for ex in self.rank_exprs],
        }


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _solve_affine(eqs, n_unknowns: int, free: int):
    """Solve a square-after-parametrization linear system exactly.

    eqs is a list of (coefficients, rhs) with len(eqs) == n_unknowns - 1.
    Treating unknown ``free`` as the parameter t, returns per-unknown
    (const, coeff) integer pairs, or None if the system is singular or the
    solution is not integer-affine in t.
    """
    others = [i for i in range(n_unknowns) if i != free]
    if len(eqs) != len(others):
        raise ValueError("system is not square after fixing the free unknown")
    # augmented rows: coefficients on the non-free unknowns, then the affine
    # right-hand side (constant part, t part)
    rows = []
    for coeffs, rhs in eqs:
        row = [Fraction(coeffs[i]) for i in others]
        row.append(Fraction(rhs))
        row.append(Fraction(-coeffs[free]))
        rows.append(row)
    n = len(others)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), -1)
        if piv < 0:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    solution: list[tuple[int, int] | None] = [None] * n_unknowns
    solution[free] = (0, 1)
    for pos, idx in enumerate(others):
        c0, c1 = rows[pos][n], rows[pos][n + 1]
        if c0.denominator != 1 or c1.denominator != 1:
            return None
        solution[idx] = (int(c0), int(c1))
    return solution


def _family_from_solution(label, q, solution, cons, z):
    """Range-restrict an affine solution by nonnegativity and rank bounds.

    cons entries are (mult, kind, j): kind "N" bounds the prefix sum
    e_0 + ... + e_j from below by mult, kind "M" bounds z + e_j + ... + e_top.
    Returns a SolutionFamily, or None when the range is empty.
    """
    top = len(solution) - 1
    lo, hi = None, None
    feasible = True

    def require_at_least(c0, c1, bound):
        # constrain c0 + c1*t >= bound
        nonlocal lo, hi, feasible
        if c1 == 0:
            if c0 < bound:
                feasible = False
        elif c1 > 0:
            need = _ceil_div(bound - c0, c1)
            lo = need if lo is None else max(lo, need)
        else:
            cap = (c0 - bound) // (-c1)
            hi = cap if hi is None else min(hi, cap)

    for c0, c1 in solution:
        require_at_least(c0, c1, 0)
    for mult, kind, j in cons:
        if kind == "N":
            idxs = range(0, j + 1)
            base = 0
        else:
            idxs = range(j, top + 1)
            base = z
        c0 = base + sum(solution[i][0] for i in idxs)
        c1 = sum(solution[i][1] for i in idxs)
        require_at_least(c0, c1, mult)
    if not feasible:
        return None
    if all(c1 == 0 for _, c1 in solution):
        lo, hi = 0, 0  # fully determined solution; degenerate parameter
    if lo is None or hi is None:
        raise AssertionError("parameter range should be bounded")
    if lo > hi:
        return None

    exprs = tuple(AffineExpr(c0, c1) for c0, c1 in solution)
    e0_const, e0_coeff = solution[0]
    rank_exprs: tuple[AffineExpr, ...] = ()
    if e0_coeff in (1, -1):
        # t = e0_coeff * (e0 - e0_const); substitute into each expression
        rank_exprs = tuple(
            AffineExpr(
                c0 - c1 * e0_coeff * e0_const, c1 * e0_coeff, "e0"
            )
            for c0, c1 in solution[1:]
        )
    elif e0_coeff == 0:
        rank_exprs = tuple(AffineExpr(c0, 0, "e0") for c0, _ in solution[1:])
    return SolutionFamily(label, q, (lo, hi), exprs, rank_exprs)


def _eigenvalue_constraints(spectrum, q: int, bound_exp: int):
    """Rank inequalities contributed by Laplacian eigenvalues.

    An eigenvalue with q-valuation j >= 1 and multiplicity m pins its
    saturated eigenvector lattice inside both chains at level j, giving
    m <= e_0 + ... + e_j (codomain chain) and m <= z + e_j + ... (domain
    chain).  Irrational (conference) eigenvalues contribute nothing.
    """
    cons = []
    if spectrum.theta.is_integral:
        for eig, mult in (
            (spectrum.k - spectrum.theta.to_int(), spectrum.m_theta),
            (spectrum.k - spectrum.tau.to_int(), spectrum.m_tau),
        ):
            j = valuation(eig, q)
            if j >= 1:
                if j > bound_exp:
                    raise AssertionError(
                        "eigenvalue valuation exceeds the divisor bound"
                    )
                cons.append((mult, "N", j))
                cons.append((mult, "M", j))
    return cons


def enumerate_families(params: SrgParams, q: int) -> list[SolutionFamily]:
    """All maximal families of admissible q-multiplicity vectors.

    Unknowns are e_0..e_J with J the q-valuation of w.  Two equations always
    hold: the multiplicities count every nonzero invariant factor
    (sum e_i = v - 1 for a connected graph) and carry the full q-valuation
    of the group order (sum i*e_i = v_q(order)).  For J <= 2 that is already
    a <=1-parameter system.  For J = 3 the eigenvalue inequalities include a
    complementary prefix/suffix pair whose total slack is v - m_theta -
    m_tau = 1; splitting the slack gives the finitely many cases, each a
    one-parameter family.  Raises ContradictionError when no solutions
    exist, and ValueError for bound exponents this reduction does not cover.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    ident = derive_laplacian_identity(params)
    bound_exp = valuation(ident.w, q)
    spectrum = srg_spectrum(params)
    order = predicted_order_from_spectrum(spectrum, params.v)
    val = order.get(q, 0)
    z = 1  # kernel dimension: connected since mu >= 1
    count = params.v - z

    if bound_exp == 0:
        if val:
            raise ContradictionError(
                f"q={q} divides the group order but is excluded by the "
                f"divisor bound w={ident.w}"
            )
        return [
            SolutionFamily(1, q, (0, 0), (AffineExpr(count, 0),), ())
        ]

    cons = _eigenvalue_constraints(spectrum, q, bound_exp)
    base_eqs = [
        ([1] * (bound_exp + 1), count),
        (list(range(bound_exp + 1)), val),
    ]

    if bound_exp == 1:
        e1, e0 = val, count - val
        solution = [(e0, 0), (e1, 0)]
        fam = _family_from_solution(1, q, solution, cons, z)
        if fam is None:
            raise ContradictionError(
                f"no nonnegative multiplicity vector for q={q} ({params})"
            )
        return [fam]

    if bound_exp == 2:
        solution = _solve_affine(base_eqs, 3, free=2)
        fam = _family_from_solution(1, q, solution, cons, z)
        if fam is None:
            raise ContradictionError(
                f"no nonnegative multiplicity vector for q={q} ({params})"
            )
        return [fam]

    if bound_exp == 3:
        pair = None
        for ma, kind_a, ja in cons:
            if kind_a != "N":
                continue
            for mb, kind_b, jb in cons:
                if kind_b == "M" and jb == ja + 1:
                    pair = (ma, ja, mb, jb)
                    break
            if pair:
                break
        if pair is None:
            raise ValueError(
                "no complementary pair of rank inequalities; cannot reduce "
                "to one-parameter families"
            )
        ma, ja, mb, jb = pair
        slack = params.v - (ma + mb)
        if slack < 0:
            raise ContradictionError(
                f"rank inequalities are jointly unsatisfiable for q={q}"
            )
        fams = []
        for s1 in range(slack + 1):
            prefix = [1 if i <= ja else 0 for i in range(bound_exp + 1)]
            eqs = base_eqs + [(prefix, ma + s1)]
            solution = _solve_affine(eqs, bound_exp + 1, free=bound_exp)
            if solution is None:
                continue
            fam = _family_from_solution(s1 + 1, q, solution, cons, z)
            if fam is not None:
                fams.append(fam)
        if not fams:
            raise ContradictionError(
                f"no nonnegative multiplicity vector for q={q} ({params})"
            )
        return fams

    raise ValueError(
        f"divisor bound allows exponent {bound_exp} for q={q}; only "
        "exponents up to 3 reduce to one-parameter families here"
    )


def forced_multiplicities(params: SrgParams, q: int):
    """Multiplicity forced for q, or the families when q^2 divides w.

    When the divisor bound allows q only to the first power, every q-part
    elementary divisor is q itself, so the multiplicity equals the
    q-valuation of the group order.  Returns 0 when q does not divide the
    order at all.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    ident = derive_laplacian_identity(params)
    order = predicted_order_from_spectrum(srg_spectrum(params), params.v)
    val = order.get(q, 0)
    if val == 0:
        return 0
    bound_exp = valuation(ident.w, q)
    if bound_exp == 0:
        raise ContradictionError(
            f"q={q} divides the group order but not w={ident.w}"
        )
    if bound_exp == 1:
        return val
    return enumerate_families(params, q)


def family_membership(profile, families) -> tuple[int, int] | None:
    """Which family (case label, parameter value) a measured profile fits.

    ``profile`` may be an ElemDivisorProfile or a bare multiplicity
    sequence.  Returns None when no family matches.
    """
    mults = tuple(getattr(profile, "multiplicities", profile))
    for fam in families:
        t = fam.contains(mults)
        if t is not None:
            return fam.case_label, t
    return None


def analyze(params: SrgParams, primes=()) -> dict:
    """Full constraint report for a parameter set, as a JSON-ready dict.

    Always contains the Laplacian identity, the divisor bound, the factored
    group order, and the forced multiplicities of every order prime whose
    bound exponent is 1.  Families are enumerated for each prime in
    ``primes``.
    """
    ident = derive_laplacian_identity(params)
    bound = divisor_bound(ident)
    spectrum = srg_spectrum(params)
    order = predicted_order_from_spectrum(spectrum, params.v)
    forced = {}
    for qq in sorted(order):
        if valuation(ident.w, qq) == 1:
            forced[str(qq)] = order[qq]
    families = {}
    for qq in primes:
        families[str(qq)] = [
            fam.to_json_dict() for fam in enumerate_families(params, qq)
        ]
    v, k, lam, mu = params.as_tuple()
    return {
        "schema": 1,
        "params": {"v": v, "k": k, "lambda": lam, "mu": mu},
        "identity": {
            "c": ident.shift,
            "w": ident.w,
            "j_coeff": ident.j_coeff,
            "w_factored": {str(p): e for p, e in sorted(ident.w_factored.items())},
        },
        "divisor_bound": list(bound.allowed),
        "order_factored": {str(p): e for p, e in order.items()},
        "forced": forced,
        "families": families,
    }
