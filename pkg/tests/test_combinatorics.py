import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamecalc.combinatorics import (
    PartitionPair,
    PartitionSeq,
    PmPolynomial,
    StirlingTable,
    bell_number,
    bell_polynomial_value,
    check_sum_identities,
    enumerate_Dhat_m,
    enumerate_Dhkw,
    enumerate_Djw,
    enumerate_Dm,
    fdb_coeff_complex,
    fdb_coeff_real,
    pm_coeff_explicit,
    pm_coeff_recursive,
    pm_coeff_stirling,
    pm_evaluate,
    pm_polynomial,
    stirling2,
)
from tamecalc.errors import DomainError

from oracles import PM_TABLE, partitions_bruteforce, pm_coeff_series, stirling_bruteforce

P = PartitionSeq


class TestStirling:
    @pytest.mark.parametrize("j,m,val", [(1, 1, 1), (2, 4, 7), (2, 6, 31), (3, 5, 25), (4, 6, 65)])
    def test_values(self, j, m, val):
        assert stirling2(j, m) == val

    @pytest.mark.parametrize("m", range(1, 8))
    def test_against_surjection_count(self, m):
        for j in range(1, m + 1):
            assert stirling2(j, m) == stirling_bruteforce(j, m)

    def test_edges_and_recurrence(self):
        for m in range(1, 15):
            assert stirling2(1, m) == 1 and stirling2(m, m) == 1
            for j in range(2, m + 1):
                assert stirling2(j, m + 1) == stirling2(j - 1, m) + j * stirling2(j, m)

    def test_table_matches_function(self):
        t = StirlingTable.build(10)
        assert all(t(j, m) == stirling2(j, m) for m in range(1, 11) for j in range(1, m + 1))

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            stirling2(0, 3)
        with pytest.raises(DomainError):
            stirling2(4, 3)


class TestPmCoefficients:
    @pytest.mark.parametrize("m", range(1, 7))
    def test_low_order_table(self, m):
        assert dict(pm_polynomial(m).coeffs) == PM_TABLE[m]

    @pytest.mark.parametrize("args,val", [((1, 1, 0), 1), ((4, 3, 1), 4), ((6, 2, 0), 31), ((2, 1, 1), 2), ((5, 3, 1), 30)])
    def test_spot_values(self, args, val):
        assert pm_coeff_recursive(*args) == val
        assert pm_coeff_explicit(*args) == val

    def test_generating_function_oracle(self):
        for m in range(1, 11):
            for j in range(1, m + 1):
                for l in range(0, m - j + 1):
                    assert pm_coeff_recursive(m, j, l) == pm_coeff_series(m, j, l)

    def test_three_routes_agree(self):
        for m in range(1, 13):
            for j in range(1, m + 1):
                for l in range(0, m - j + 1):
                    r = pm_coeff_recursive(m, j, l)
                    assert r == pm_coeff_explicit(m, j, l) == pm_coeff_stirling(m, j, l)
                    assert r == math.comb(m, l) * stirling2(j, m - l)
                    assert r > 0

    def test_leading_coefficient(self):
        assert all(pm_coeff_explicit(m, m, 0) == 1 for m in range(1, 13))

    def test_range_errors(self):
        for args in [(3, 0, 0), (3, 4, 0), (3, 2, 2), (3, 1, -1)]:
            with pytest.raises(DomainError):
                pm_coeff_recursive(*args)
        with pytest.raises(DomainError):
            pm_polynomial(0)

    def test_row_sums_are_bell_numbers(self):
        for m in range(1, 11):
            poly = pm_polynomial(m)
            row = sum(poly[(j, 0)] for j in range(1, m + 1))
            assert row == bell_number(m) == bell_polynomial_value(m, [1] * m)

    def test_json_roundtrip(self):
        poly = pm_polynomial(7)
        back = PmPolynomial.from_json(poly.to_json())
        assert back.m == 7 and dict(back.coeffs) == dict(poly.coeffs)


class TestEvaluate:
    def test_p1(self):
        assert pm_evaluate(pm_polynomial(1), {(1, 0): 2.5}, 3.0) == 7.5

    def test_zero_nu(self):
        assert pm_evaluate(pm_polynomial(5), {}, 2.0) == 0.0

    @pytest.mark.parametrize("J", range(1, 9))
    def test_monomial_substitution_gives_power(self, J):
        for m in range(1, 9):
            nu = {(j, 0): math.perm(J, j) for j in range(1, min(J, m) + 1)}
            assert pm_evaluate(pm_polynomial(m), nu, 1.0) == J**m

    def test_negative_inputs_rejected(self):
        with pytest.raises(DomainError):
            pm_evaluate(pm_polynomial(2), {(1, 0): 1.0}, -1.0)
        with pytest.raises(DomainError):
            pm_evaluate(pm_polynomial(2), {(1, 0): -1.0}, 1.0)


class TestPartitions:
    def test_examples(self):
        assert enumerate_Djw(1, 4) == [P((0, 0, 0, 1))]
        assert enumerate_Djw(2, 3) == [P((1, 1))]
        assert set(enumerate_Djw(2, 4)) == {P((0, 2)), P((1, 0, 1))}
        assert enumerate_Dhkw(1, 1, 2) == [PartitionPair(P((1,)), P((1,)))]

    def test_j_above_w_rejected(self):
        with pytest.raises(DomainError):
            enumerate_Djw(3, 2)

    @pytest.mark.parametrize("w", range(1, 8))
    def test_against_bruteforce(self, w):
        for j in range(1, w + 1):
            got = sorted(p.entries + (0,) * (w - len(p.entries)) for p in enumerate_Djw(j, w))
            assert got == sorted(partitions_bruteforce(j, w))

    def test_order_is_lexicographic_and_stable(self):
        for w in range(1, 9):
            for j in range(1, w + 1):
                seq = enumerate_Djw(j, w)
                assert seq == sorted(seq)
                assert len(set(seq)) == len(seq)

    def test_dm_union(self):
        for m in range(1, 8):
            dm = enumerate_Dm(m)
            assert len(dm) == sum(len(enumerate_Djw(j, w)) for w in range(1, m + 1) for j in range(1, w + 1))
            assert all(1 <= p.weight <= m for p in dm)

    def test_dhkw_reductions(self):
        for w in range(1, 7):
            for h in range(1, w + 1):
                assert [pq.p for pq in enumerate_Dhkw(h, 0, w)] == enumerate_Djw(h, w)
                assert all(pq.q == P() for pq in enumerate_Dhkw(h, 0, w))
                mirror = sorted(PartitionPair(pq.q, pq.p) for pq in enumerate_Dhkw(0, h, w))
                assert mirror == enumerate_Dhkw(h, 0, w)

    def test_dhat_membership(self):
        for m in range(1, 6):
            for pq in enumerate_Dhat_m(m):
                assert pq.in_Dhkw(pq.p.length, pq.q.length, pq.weight)
                assert 1 <= pq.weight <= m

    def test_seq_helpers(self):
        p = P((2, 0, 1, 0, 0))
        assert p.entries == (2, 0, 1)
        assert p.weight == 5 and p.length == 3
        assert p[1] == 2 and p[2] == 0 and p[9] == 0
        assert p.parts() == [1, 1, 3]


class TestFaaDiBrunoCoefficients:
    @pytest.mark.parametrize("m,p,val", [(3, (3,), 1), (3, (1, 1), 3), (4, (0, 2), 3), (2, (2,), 1), (2, (0, 1), 1)])
    def test_real_values(self, m, p, val):
        assert fdb_coeff_real(m, P(p)) == val

    @pytest.mark.parametrize("m,p,q,val", [(2, (1,), (1,), 2), (3, (1,), (0, 1), 3)])
    def test_complex_values(self, m, p, q, val):
        assert fdb_coeff_complex(m, PartitionPair(P(p), P(q))) == val

    def test_complex_reduces_to_real(self):
        for m in range(1, 8):
            for p in enumerate_Dm(m):
                assert fdb_coeff_complex(m, PartitionPair(p, P())) == fdb_coeff_real(m, p) >= 1

    def test_weight_errors(self):
        with pytest.raises(DomainError):
            fdb_coeff_real(2, P((0, 0, 1)))
        with pytest.raises(DomainError):
            fdb_coeff_real(2, P())

    def test_full_weight_coefficients_build_bell_polynomial(self):
        for w in range(1, 7):
            t = [Fraction(s + 2, s + 1) for s in range(w)]
            lhs = bell_polynomial_value(w, t)
            rhs = sum(fdb_coeff_real(w, p) * math.prod(t[s] ** ps for s, ps in enumerate(p.entries))
                      for j in range(1, w + 1) for p in enumerate_Djw(j, w))
            assert lhs == rhs


class TestSumIdentities:
    def test_examples(self):
        assert sum(fdb_coeff_real(3, p) for p in enumerate_Djw(2, 3)) == 3 == pm_polynomial(3)[(2, 0)]
        assert sum(fdb_coeff_complex(2, pq) for pq in enumerate_Dhkw(1, 1, 2)) == 2
        rep = check_sum_identities(1)
        assert rep.ok and rep.real_checked == 1

    @pytest.mark.parametrize("m", range(1, 9))
    def test_hold(self, m):
        rep = check_sum_identities(m)
        assert rep.ok, (rep.real_failures, rep.complex_failures)


class TestBell:
    def test_values(self):
        assert bell_polynomial_value(1, [3.5]) == 3.5
        assert bell_polynomial_value(2, [1, 1]) == 2
        assert bell_polynomial_value(3, [1, 1, 1]) == 5
        assert [bell_number(m) for m in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]

    def test_short_argument_rejected(self):
        with pytest.raises(DomainError):
            bell_polynomial_value(3, [1, 1])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=6, max_size=6))
    def test_exponential_generating_function(self, t):
        # exp(sum t_r a^r / r!) = 1 + sum Y_w a^w / w!, compared through a truncated series
        n = 6
        inner = [Fraction(0)] + [Fraction(t[r - 1]) / math.factorial(r) for r in range(1, n + 1)]
        out = [Fraction(1)] + [Fraction(0)] * n
        term = [Fraction(1)] + [Fraction(0)] * n
        for k in range(1, n + 1):
            nxt = [Fraction(0)] * (n + 1)
            for i, x in enumerate(term):
                for jj, y in enumerate(inner[: n + 1 - i]):
                    nxt[i + jj] += x * y
            term = [c / k for c in nxt]
            out = [a + b for a, b in zip(out, term)]
        for w in range(1, n + 1):
            assert bell_polynomial_value(w, t) == out[w] * math.factorial(w)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.data())
def test_stirling_product_property(m, data):
    j = data.draw(st.integers(1, m))
    l = data.draw(st.integers(0, m - j))
    assert pm_coeff_explicit(m, j, l) == math.comb(m, l) * stirling2(j, m - l)
