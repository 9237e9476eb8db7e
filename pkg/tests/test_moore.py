import pytest

import critlab.moore as moore_mod
from critlab import (
    ContradictionError,
    IntMatrix,
    SrgParams,
    analyze,
    cycle_graph,
    derive_laplacian_identity,
    divisor_bound,
    elem_divisor_profile,
    enumerate_families,
    family_membership,
    filtration_M,
    filtration_N,
    forced_multiplicities,
    hoffman_singleton_graph,
    kernel_basis,
    laplacian_matrix,
    petersen_graph,
)

MOORE57 = SrgParams(3250, 57, 0, 1)
HOSI = SrgParams(50, 7, 0, 1)
PETERSEN = SrgParams(10, 3, 0, 1)
C5 = SrgParams(5, 2, 0, 1)


class TestLaplacianIdentity:
    def test_moore57(self):
        ident = derive_laplacian_identity(MOORE57)
        assert ident.shift == 115
        assert ident.w == 3250
        assert ident.w_factored == {2: 1, 5: 3, 13: 1}
        assert ident.j_coeff == 1

    def test_hoffman_singleton_params(self):
        ident = derive_laplacian_identity(HOSI)
        assert (ident.shift, ident.w) == (15, 50)

    def test_petersen_params(self):
        ident = derive_laplacian_identity(PETERSEN)
        assert (ident.shift, ident.w) == (7, 10)

    @pytest.mark.parametrize(
        "params,graph",
        [
            (C5, cycle_graph(5)),
            (PETERSEN, petersen_graph()),
            (HOSI, hoffman_singleton_graph()),
        ],
    )
    def test_identity_holds_entrywise(self, params, graph):
        assert derive_laplacian_identity(params).holds_on(graph)

    def test_identity_fails_on_wrong_graph(self):
        assert not derive_laplacian_identity(PETERSEN).holds_on(cycle_graph(10))

    def test_mu_2_srg_has_j_coefficient_2(self):
        # Clebsch parameters: (L - cI)L = -wI + 2J
        ident = derive_laplacian_identity(SrgParams(16, 5, 0, 2))
        assert ident.j_coeff == 2
        assert ident.w == 32


class TestDivisorBound:
    def test_moore57(self):
        ident = derive_laplacian_identity(MOORE57)
        assert set(divisor_bound(ident).allowed) == {2, 5, 25, 125, 13}

    def test_petersen(self):
        assert divisor_bound(derive_laplacian_identity(PETERSEN)).allowed == (2, 5)

    def test_hoffman_singleton(self):
        assert divisor_bound(derive_laplacian_identity(HOSI)).allowed == (2, 5, 25)


class TestForcedMultiplicities:
    def test_moore57_prime_2(self):
        assert forced_multiplicities(MOORE57, 2) == 1728

    def test_moore57_prime_13(self):
        assert forced_multiplicities(MOORE57, 13) == 1519

    def test_prime_coprime_to_order(self):
        assert forced_multiplicities(MOORE57, 3) == 0
        assert forced_multiplicities(C5, 2) == 0

    def test_moore57_prime_5_defers_to_families(self):
        result = forced_multiplicities(MOORE57, 5)
        assert isinstance(result, list)
        assert len(result) == 2

    def test_hosi_prime_2(self):
        assert forced_multiplicities(HOSI, 2) == 20

    def test_forced_matches_measured_e1(self):
        # the real graphs realize the forced value at q = 2
        for params, graph in ((PETERSEN, petersen_graph()), (HOSI, hoffman_singleton_graph())):
            prof = elem_divisor_profile(laplacian_matrix(graph), 2)
            assert forced_multiplicities(params, 2) == prof.e(1)

    def test_non_prime_rejected(self):
        with pytest.raises(ValueError):
            forced_multiplicities(MOORE57, 6)


class TestEnumerateFamiliesMoore57:
    def test_exactly_two_families(self):
        fams = enumerate_families(MOORE57, 5)
        assert [f.case_label for f in fams] == [1, 2]

    def test_case_1_expressions(self):
        fam = enumerate_families(MOORE57, 5)[0]
        assert [str(e) for e in fam.exprs] == ["3 + t", "1517 - t", "1729 - t", "t"]
        assert fam.t_range == (0, 1517)
        assert [str(e) for e in fam.rank_exprs] == [
            "1520 - e0",
            "1732 - e0",
            "e0 - 3",
        ]

    def test_case_2_expressions(self):
        fam = enumerate_families(MOORE57, 5)[1]
        assert [str(e) for e in fam.exprs] == ["2 + t", "1519 - t", "1728 - t", "t"]
        assert fam.t_range == (0, 1519)
        assert [str(e) for e in fam.rank_exprs] == [
            "1521 - e0",
            "1730 - e0",
            "e0 - 2",
        ]

    def test_sum_rules_across_ranges(self):
        for fam in enumerate_families(MOORE57, 5):
            lo, hi = fam.t_range
            for t in (lo, (lo + hi) // 2, hi):
                e = fam.evaluate(t)
                assert all(x >= 0 for x in e)
                assert sum(e) + 1 == 3250
                assert sum(i * x for i, x in enumerate(e)) == 4975

    def test_families_cover_every_solution(self):
        # exhaustive scan: for each 5-rank e0 in [0, 3250], solve the linear
        # system directly (e2 and e1 in terms of e0 and e3) and collect every
        # nonnegative solution satisfying the four rank inequalities; the two
        # family parametrizations must produce exactly that set
        fams = enumerate_families(MOORE57, 5)
        covered = set()
        for fam in fams:
            lo, hi = fam.t_range
            for t in range(lo, hi + 1):
                covered.add(fam.evaluate(t))
        admissible = set()
        for e0 in range(0, 3251):
            lo3 = max(0, 2 * e0 - 1523)  # e1 = 1523 - 2 e0 + e3 >= 0
            hi3 = (1726 + e0) // 2  # e2 = 1726 + e0 - 2 e3 >= 0
            for e3 in range(lo3, hi3 + 1):
                e2 = 1726 + e0 - 2 * e3
                e1 = 1523 - 2 * e0 + e3
                if e0 + e1 < 1520:
                    continue
                if 1 + e1 + e2 + e3 < 1520:
                    continue
                if e0 + e1 + e2 < 1729:
                    continue
                if 1 + e2 + e3 < 1729:
                    continue
                admissible.add((e0, e1, e2, e3))
        assert covered == admissible


class TestEnumerateFamiliesOtherParams:
    def test_hosi_families_contain_measured_profile(self):
        fams = enumerate_families(HOSI, 5)
        prof = elem_divisor_profile(laplacian_matrix(hoffman_singleton_graph()), 5)
        hit = family_membership(prof, fams)
        assert hit is not None

    def test_hosi_family_range(self):
        (fam,) = enumerate_families(HOSI, 5)
        assert fam.t_range == (0, 20)
        assert [str(e) for e in fam.exprs] == ["2 + t", "47 - 2*t", "t"]

    def test_hosi_coverage_by_scan(self):
        (fam,) = enumerate_families(HOSI, 5)
        covered = {fam.evaluate(t) for t in range(fam.t_range[0], fam.t_range[1] + 1)}
        admissible = set()
        for e2 in range(0, 24):  # e1 = 47 - 2 e2 >= 0
            e1 = 47 - 2 * e2
            e0 = 49 - e1 - e2
            if e0 < 0:
                continue
            # eigenvalue 5 has multiplicity 28, eigenvalue 10 multiplicity 21
            if e0 + e1 < 28 or e0 + e1 < 21:
                continue
            if 1 + e1 + e2 < 28 or 1 + e1 + e2 < 21:
                continue
            admissible.add((e0, e1, e2))
        assert covered == admissible

    def test_measured_hosi_profile_satisfies_rank_inequalities(self):
        prof = elem_divisor_profile(laplacian_matrix(hoffman_singleton_graph()), 5)
        e0, e1, e2 = prof.e(0), prof.e(1), prof.e(2)
        assert 28 <= e0 + e1
        assert 21 <= e0 + e1
        assert 28 <= 1 + e1 + e2
        assert 21 <= 1 + e2 + e1

    def test_petersen_forced_at_5(self):
        assert forced_multiplicities(PETERSEN, 5) == 3

    def test_conference_params_have_no_eigen_constraints(self):
        (fam,) = enumerate_families(C5, 5)
        assert fam.evaluate(fam.t_range[0]) == (3, 1)

    def test_unsupported_bound_exponent(self):
        # Clebsch parameters put 2^5 in the bound; no one-parameter reduction
        with pytest.raises(ValueError):
            enumerate_families(SrgParams(16, 5, 0, 2), 2)


class TestFamilyMembership:
    def test_case_1_start(self):
        fams = enumerate_families(MOORE57, 5)
        assert family_membership((3, 1517, 1729, 0), fams) == (1, 0)

    def test_case_2_start(self):
        fams = enumerate_families(MOORE57, 5)
        assert family_membership((2, 1519, 1728, 0), fams) == (2, 0)

    def test_totals_violation_rejected(self):
        fams = enumerate_families(MOORE57, 5)
        assert family_membership((0, 0, 0, 0), fams) is None

    def test_interior_points(self):
        fams = enumerate_families(MOORE57, 5)
        assert family_membership((103, 1417, 1629, 100), fams) == (1, 100)
        assert family_membership((102, 1419, 1628, 100), fams) == (2, 100)

    def test_out_of_range_rejected(self):
        fams = enumerate_families(MOORE57, 5)
        # t = 1518 exceeds the case-1 range and misses case 2
        vec = tuple(e(1518) for e in fams[0].exprs)
        assert family_membership(vec, fams) is None


class TestContradictionOutcomes:
    def test_unsatisfiable_valuation_raises(self, monkeypatch):
        monkeypatch.setattr(
            moore_mod, "predicted_order_from_spectrum", lambda s, v: {5: 10**7}
        )
        with pytest.raises(ContradictionError):
            enumerate_families(MOORE57, 5)

    def test_forced_path_contradiction(self, monkeypatch):
        monkeypatch.setattr(
            moore_mod, "predicted_order_from_spectrum", lambda s, v: {5: 60}
        )
        with pytest.raises(ContradictionError):
            enumerate_families(C5, 5)

    def test_prime_outside_bound_with_order_share(self, monkeypatch):
        monkeypatch.setattr(
            moore_mod, "predicted_order_from_spectrum", lambda s, v: {3: 4}
        )
        with pytest.raises(ContradictionError):
            forced_multiplicities(MOORE57, 3)

    def test_infeasible_constant_solution_is_dropped(self):
        assert (
            moore_mod._family_from_solution(1, 5, [(-1, 0), (1, 0)], [], 1) is None
        )


class TestEigenlatticeMechanism:
    """The rank inequalities come from eigenvector lattices landing in the
    filtration chains; check that concretely on the real graphs."""

    def test_petersen_eigenvalue_5_lands_in_level_1(self):
        lap = laplacian_matrix(petersen_graph())
        eig = kernel_basis(lap - 5 * IntMatrix.identity(10))
        assert len(eig) == 4
        n1 = filtration_N(lap, 5, 1)
        m1 = filtration_M(lap, 5, 1)
        for vec in eig:
            assert vec in n1
            assert vec in m1

    def test_hosi_eigenvalues_land_in_level_1(self):
        lap = laplacian_matrix(hoffman_singleton_graph())
        n1 = filtration_N(lap, 5, 1)
        m1 = filtration_M(lap, 5, 1)
        eig5 = kernel_basis(lap - 5 * IntMatrix.identity(50))
        eig10 = kernel_basis(lap - 10 * IntMatrix.identity(50))
        assert (len(eig5), len(eig10)) == (28, 21)
        for vec in eig5:
            assert vec in n1  # eigenvalue 5 = 5 * unit: images/5 recover the vector
            assert vec in m1
        for vec in eig10:
            assert [2 * x for x in vec] in n1  # images/5 give twice the vector
            assert vec in m1

    def test_hosi_dims_bound_the_multiplicities(self):
        lap = laplacian_matrix(hoffman_singleton_graph())
        assert filtration_N(lap, 5, 1).dim_mod(5) >= 28
        assert filtration_M(lap, 5, 1).dim_mod(5) >= 28 - 1  # kernel supplies 1
        assert filtration_N(lap, 5, 1).dim_mod(5) >= 21


class TestAnalyzeReport:
    def test_moore57_report(self):
        report = analyze(MOORE57, primes=(5,))
        assert report["schema"] == 1
        assert report["identity"]["c"] == 115
        assert report["identity"]["w_factored"] == {"2": 1, "5": 3, "13": 1}
        assert report["divisor_bound"] == [2, 5, 13, 25, 125]
        assert report["order_factored"] == {"2": 1728, "5": 4975, "13": 1519}
        assert report["forced"] == {"2": 1728, "13": 1519}
        assert len(report["families"]["5"]) == 2

    def test_families_json_shape(self):
        report = analyze(MOORE57, primes=(5,))
        fam = report["families"]["5"][0]
        assert fam["case"] == 1
        assert fam["t_range"] == [0, 1517]
        assert fam["e"] == ["3 + t", "1517 - t", "1729 - t", "t"]
        assert fam["e_of_rank"] == ["1520 - e0", "1732 - e0", "e0 - 3"]
