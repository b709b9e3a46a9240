import random
from fractions import Fraction
from math import comb

import pytest

from conftest import x
from monosym import oracle
from monosym.partitions import partition_list
from monosym.polycore import Poly
from monosym.symfunc import elementary, is_symmetric, monomial_sym, power_sum, repr_in_power_sums
from monosym.tn import (
    Decomposition,
    InvariantViolation,
    NotInTnError,
    ProperProduct,
    check_membership,
    decompose,
    decompose_any,
    decompose_constructive_n2,
    decompose_constructive_n3,
    delta,
    delta_preim_identity,
    dim_Tn,
    div_delta_witness,
    enumerate_proper_products,
    expand_odd_product,
    is_long,
    is_member,
    odd_products,
    params,
    pi_project,
    preimage_lift,
    reduce_mod_I,
    split_even_odd,
)


def P(n, *factors):
    return expand_odd_product(n, tuple(sorted(factors, reverse=True)))


def test_params():
    assert (params(5).i, params(5).j) == (2, 2)
    assert (params(6).i, params(6).j) == (3, 2)
    assert (params(2).i, params(2).j) == (1, 0)
    for n in range(1, 12):
        pr = params(n)
        assert 2 * pr.i <= n < 2 * pr.i + 2 and 2 * pr.j + 1 <= n < 2 * pr.j + 3
        assert pr.i * (2 * pr.j + 1) == comb(n, 2)


def test_membership_examples():
    assert is_member(power_sum(4, 7))
    verdict = check_membership(elementary(2, 2))
    assert not verdict and verdict.reason == "substitution image depends on t"
    assert verdict.witness == "-1*t^2"
    assert check_membership(x(3, 1)).reason == "not symmetric"
    rng = random.Random(3)
    for n in (2, 3, 4):
        s = sum((monomial_sym(n, lam).scale(rng.randint(-3, 3)) for lam in partition_list(3, n)), Poly.zero(n))
        assert is_member(delta(n) * s)


def test_delta_examples():
    assert delta(2) == x(2, 1) + x(2, 2)
    assert delta(3) == (power_sum(3, 1) ** 3 - power_sum(3, 3)) / 3
    assert delta(5).degree() == 10


def test_pi_project_examples():
    assert pi_project(power_sum(5, 3)) == power_sum(3, 3)
    for n in (3, 4, 5):
        assert pi_project(delta(n)).is_zero()
    assert pi_project(Poly.const(4, 7)) == Poly.const(2, 7)
    assert pi_project(Poly.const(2, 7)) == Poly.const(0, 7)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_odd_power_sums_are_members(n):
    for k in range(7):
        assert is_member(power_sum(n, 2 * k + 1))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_pi_functoriality(n):
    rng = random.Random(n)
    for d in range(1, 8):
        f = oracle.random_tn_element(n, d, rng)
        assert is_member(f)
        assert is_member(pi_project(f))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_algebra_closure(n):
    rng = random.Random(10 + n)
    for _ in range(4):
        f = oracle.random_tn_element(n, rng.randint(1, 5), rng)
        g = oracle.random_tn_element(n, rng.randint(1, 5), rng)
        assert is_member(f + g) and is_member(f * g)


def test_preimage_examples():
    for n, k in [(4, 3), (5, 7), (6, 9)]:
        pre = preimage_lift(power_sum(n, k))
        assert pre.as_dict() == {ProperProduct.from_factors(n, (k,)): 1}
    # pi lands in one variable, where p_k = p_1^k
    assert preimage_lift(power_sum(3, 3)).as_dict() == {ProperProduct(3, (3, 0)): 1}
    assert preimage_lift(power_sum(3, 5)).as_dict() == {ProperProduct(3, (5, 0)): 1}
    rng = random.Random(5)
    for n in (3, 4, 5):
        for d in range(1, comb(n, 2)):
            f = oracle.random_tn_element(n, d, rng)
            assert preimage_lift(f).expand() == f


def test_preimage_matches_oracle():
    rng = random.Random(8)
    for n, d in [(4, 6), (4, 7), (5, 10), (5, 11)]:
        f = oracle.random_tn_element(n, d, rng)
        assert preimage_lift(f).expand() == oracle.oracle_preimage(f, d)


def test_div_delta_witness_examples():
    # p3 - p1^3 = -3 delta in three variables
    assert div_delta_witness(power_sum(3, 3)) == Poly.const(3, -3)
    assert div_delta_witness(power_sum(4, 5)).is_zero()  # degree 5 < C(4,2)
    e2 = elementary(3, 2)
    assert div_delta_witness(delta(3) * e2) == e2


def test_preimage_rejects_non_members():
    # pi(e2) vanishes in one variable, so only the membership check catches this
    with pytest.raises(NotInTnError, match="depends on t"):
        preimage_lift(elementary(3, 2))


def test_div_delta_rejects_garbage():
    # symmetric but not in T_3; the lifted preimage differs by a non-multiple of delta
    with pytest.raises((InvariantViolation, NotInTnError)):
        div_delta_witness(elementary(3, 2) * power_sum(3, 1) ** 2)


def test_enumerate_examples():
    assert [str(p) for p in enumerate_proper_products(2, 3)] == ["p1^3", "p3"]
    assert [str(p) for p in enumerate_proper_products(2, 6)] == ["p1^6", "p1^3*p3", "p1*p5"]
    assert [str(p) for p in enumerate_proper_products(3, 5)] == ["p1^5", "p1^2*p3", "p5"]
    assert [str(p) for p in enumerate_proper_products(4, 0)] == ["1"]


def test_enumerate_against_filtering():
    for n in range(1, 7):
        for d in range(0, 14):
            ours = {pp.factors() for pp in enumerate_proper_products(n, d)}
            brute = {p for p in odd_products(d) if not is_long(n, p)}
            assert ours == brute, (n, d)


def test_dim_examples():
    # T_2^3: m_3 and m_21 both vanish under x1 -> t, x2 -> -t
    assert dim_Tn(2, 3) == 2 == oracle.dim_kernel(2, 3)
    # T_2^2: a*m_2 + b*m_11 maps to (2a - b) t^2, one constraint
    assert dim_Tn(2, 2) == 1 == oracle.dim_kernel(2, 2)
    assert dim_Tn(3, 0) == 1


def test_proper_product_validation():
    with pytest.raises(ValueError, match="long"):
        ProperProduct.from_factors(2, (3, 3))
    with pytest.raises(ValueError):
        ProperProduct(3, (1,))
    with pytest.raises(ValueError):
        ProperProduct(3, (0, 0), (1,))  # p3 is not elder for n=3
    with pytest.raises(ValueError):
        ProperProduct.from_factors(3, (2,))
    pp = ProperProduct.from_factors(4, (7, 1, 1, 3))
    assert pp.low == (2, 1) and pp.elders == (3,) and pp.degree == 12
    assert pp.render() == "p1^2*p3*p7"


def test_decompose_examples():
    dec = decompose(power_sum(2, 3) ** 2)
    assert dec.as_dict() == {
        ProperProduct(2, (6,)): Fraction(1, 5),
        ProperProduct(2, (3,), (1,)): -1,
        ProperProduct(2, (1,), (2,)): Fraction(9, 5),
    }
    assert all(pp.has_low_factor() for pp, _ in dec.terms())
    assert decompose(delta(3)).render() == "1/3*p1^3 - 1/3*p3"
    assert decompose(power_sum(3, 5)).render() == "1*p5"


def test_decompose_errors():
    with pytest.raises(NotInTnError, match="depends on t"):
        decompose(elementary(2, 2))
    with pytest.raises(NotInTnError):
        decompose(x(2, 1) ** 2)
    with pytest.raises(ValueError, match="homogeneous"):
        decompose(power_sum(2, 1) + power_sum(2, 3))
    assert len(decompose_any(power_sum(2, 1) + power_sum(2, 3))) == 2


def test_decomposition_json_round_trip():
    dec = decompose(power_sum(3, 3) ** 2 * power_sum(3, 1))
    assert Decomposition.from_json_obj(dec.to_json_obj()) == dec
    obj = decompose(power_sum(2, 3) ** 2).to_json_obj()
    assert obj["basis"][0] == {"low": [6], "elders": []}
    assert obj["coeffs"] == ["1/5", "-1", "9/5"]


def test_small_n_decompose():
    assert decompose(Poly.monomial((4,), 3)).render() == "3*p1^4"
    assert decompose(Poly.const(0, 2), degree=0).render() == "2"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reconstruction(n):
    rng = random.Random(20 + n)
    for d in range(0, 11):
        f = oracle.random_tn_element(n, d, rng) if d else Poly.const(n, 3)
        assert decompose(f).expand() == f


@pytest.mark.parametrize("n", [2, 3, 4])
def test_long_products_need_low_factors(n):
    for d in range(1, 13):
        for p in odd_products(d):
            if is_long(n, p):
                dec = decompose(P(n, *p))
                assert all(pp.has_low_factor() for pp, _ in dec.terms())


def test_constructive_examples():
    assert decompose_constructive_n2((x(2, 1) + x(2, 2)) ** 2).render() == "1*p1^2"
    assert decompose_constructive_n2(power_sum(2, 3)).render() == "1*p3"
    f = delta(3) * power_sum(3, 2)
    assert decompose_constructive_n3(f) == decompose(f)


@pytest.mark.parametrize("k", range(5))
def test_constructive_n3_delta_p2(k):
    f = delta(3) * power_sum(3, 2) ** k
    assert decompose_constructive_n3(f) == decompose(f)


def test_constructive_rejects_nonmembers():
    with pytest.raises(NotInTnError):
        decompose_constructive_n2(elementary(2, 2))
    with pytest.raises(NotInTnError):
        decompose_constructive_n3(elementary(3, 2))


def test_split_even_odd_examples():
    s = power_sum(4, 2) * power_sum(4, 4)
    assert split_even_odd(s) == (s, Poly.zero(4))
    # with three variables p4 is not a slot and picks up p1*p3
    assert not split_even_odd(power_sum(3, 2) * power_sum(3, 4))[1].is_zero()
    s = power_sum(3, 1) * power_sum(3, 2)
    assert split_even_odd(s) == (Poly.zero(3), s)
    even, odd = split_even_odd(elementary(2, 2))
    assert even == power_sum(2, 2) * Fraction(-1, 2)
    assert odd == power_sum(2, 1) ** 2 / 2


def test_split_even_odd_parts():
    rng = random.Random(4)
    for n in (3, 4):
        s = sum((monomial_sym(n, lam).scale(rng.randint(-3, 3)) for lam in partition_list(6, n)), Poly.zero(n))
        even, odd = split_even_odd(s)
        assert even + odd == s
        assert all(not any(e[k] for k in range(0, n, 2)) for e in repr_in_power_sums(even).expr.terms)


def test_reduce_mod_I_examples():
    assert reduce_mod_I(power_sum(4, 3)).is_zero()
    assert reduce_mod_I(power_sum(4, 2)) == 2 * (x(2, 1) ** 2 + x(2, 2) ** 2)
    assert reduce_mod_I(elementary(4, 2)) == -(x(2, 1) ** 2 + x(2, 2) ** 2)


def test_reduce_mod_I_respects_ideal():
    # x_{i+l} + x_l and (odd n) x_n generate the kernel
    n = 5
    for gen in [x(5, 3) + x(5, 1), x(5, 4) + x(5, 2), x(5, 5)]:
        assert reduce_mod_I(gen * power_sum(5, 2)).is_zero()


def test_delta_preim_identity():
    alpha, witness = delta_preim_identity(3)
    assert alpha == Fraction(-1, 3)
    assert witness == power_sum(3, 3) - power_sum(3, 1) ** 3
    for n in (4, 5):
        alpha, witness = delta_preim_identity(n)
        assert alpha != 0
        assert witness.scale(alpha) == delta(n)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_r_products_independent(n):
    """Exactly-i products of r_{(n, 2m+1)}, m >= j, stay independent modulo the ideal."""
    from monosym.qlinalg import QMatrix, rank
    from monosym.symfunc import r_nk

    pr = params(n)
    r_cache = {}
    for extra in range(0, 5):
        # products of i factors with sum of (m - j) = extra
        vectors = []
        for lam in partition_list(extra, pr.i):
            ms = [pr.j + a for a in lam.padded(pr.i)]
            prod = Poly.const(n, 1)
            for m in ms:
                if m not in r_cache:
                    r_cache[m] = r_nk(n, 2 * m + 1)
                prod = prod * r_cache[m]
            vectors.append(reduce_mod_I(prod))
        keys = sorted({e for v in vectors for e in v.terms})
        mat = QMatrix.from_columns([[v.coeff(k) for k in keys] for v in vectors], rows=len(keys))
        assert rank(mat) == len(vectors)
