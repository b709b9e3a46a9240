import json
import random
from math import comb

import pytest

from monosym import oracle
from monosym.oracle import (
    SuiteEntry,
    default_config,
    dim_kernel,
    oracle_preimage,
    random_tn_element,
    run_suite,
    summary_table,
)
from monosym.partitions import partition_list
from monosym.symfunc import elementary, power_sum
from monosym.tn import is_member


def test_dim_kernel_examples():
    assert dim_kernel(2, 3) == 2
    assert dim_kernel(2, 2) == 1
    for n in range(2, 7):
        assert dim_kernel(n, 0) == 1


def test_dim_kernel_by_sampling():
    """Count kernel dimension a second way: membership of each m_lambda combination."""
    # T_2^4: a*m4 + b*m31 + c*m22 maps to (2a - 2b + c) t^4, one constraint
    assert dim_kernel(2, 4) == 2
    # every odd-degree symmetric polynomial in two variables is a member
    assert all(dim_kernel(2, d) == len(partition_list(d, 2)) for d in (1, 3, 5, 7))


def test_m_coordinate_membership():
    n, d = 2, 2
    coords = lambda f: [f.coeff(lam.padded(n)) for lam in partition_list(d, n)]
    assert not oracle._in_tn_m_coords(n, d, coords(elementary(2, 2)))
    assert oracle._in_tn_m_coords(n, d, coords(power_sum(2, 1) ** 2))


def test_expansion_columns_by_counting():
    # p1^2 p3 in three variables, read off in m_lambda coordinates
    direct = power_sum(3, 1) ** 2 * power_sum(3, 3)
    cols = oracle._m_coords_of_product(3, 5, (3, 1, 1))
    assert cols == [direct.coeff(lam.padded(3)) for lam in partition_list(5, 3)]


@pytest.mark.parametrize("n,d", [(3, 5), (4, 6)] + [(2, d) for d in range(11)])
def test_verify_basis_examples(n, d):
    cert = oracle.verify_basis(n, d)
    assert cert.status == "verified", cert.evidence
    if (n, d) == (3, 5):
        assert cert.evidence["products"] == cert.evidence["rank"] == cert.evidence["kernel_dim"] == 3


def test_verify_basis_detects_long_products(monkeypatch):
    # sneak a long product into the family: the rank check must catch the dependency
    real = oracle._proper_factor_lists
    monkeypatch.setattr(oracle, "_proper_factor_lists", lambda n, d: real(n, d) + ([(3, 3)] if (n, d) == (2, 6) else []))
    assert oracle.verify_basis(2, 6).status == "failed"


def test_verify_basis_detects_non_members(monkeypatch):
    real = oracle._proper_factor_lists
    monkeypatch.setattr(oracle, "_proper_factor_lists", lambda n, d: real(n, d) + [(2,)] if d == 2 else real(n, d))
    cert = oracle.verify_basis(2, 2)
    assert cert.status == "failed" and cert.evidence["not_in_Tn"] == [[2]]


def test_budget_skip():
    cert = oracle.verify_basis(9, 20)
    assert cert.status == "skipped" and cert.ok


def test_small_claims():
    assert oracle.verify_delta3().status == "verified"
    cert = oracle.verify_nonzero_in_delta(3)
    assert cert.status == "verified" and cert.evidence["alpha"] == "-1/3"
    assert oracle.verify_r_formula(2, 4).status == "verified"
    assert oracle.verify_r_formula(3, 4).status == "verified"
    assert oracle.verify_reduction_table(5, 4).status == "verified"
    assert oracle.verify_counting(4, 12).status == "verified"


def test_div_delta_examples():
    cert = oracle.verify_div_delta(3, 2, trials=10)
    assert cert.status == "verified" and cert.evidence["branch"] == "equal"
    cert = oracle.verify_div_delta(4, 7, trials=10)
    assert cert.status == "verified" and cert.evidence["branch"] == "divisible"


def test_div_delta_quotient_degree():
    rng = random.Random(1)
    f = random_tn_element(4, 7, rng)
    q = oracle._divide_delta(f - oracle_preimage(f, 7))
    assert q.is_zero() or q.degree() == 1


def test_spanning_family_examples():
    cert = oracle.verify_spanning_family(3, 5)
    assert cert.status == "verified" and cert.evidence["family"] == 1
    cert = oracle.verify_spanning_family(2, 3)
    assert cert.status == "verified" and cert.evidence["family"] == 1
    cert = oracle.verify_spanning_family(4, 9)
    assert cert.evidence == {"family": 0, "young": 0}


def test_random_elements_are_members():
    rng = random.Random(0)
    for n in (2, 3, 4, 5):
        for d in (0, 1, 3, 6, 9):
            f = random_tn_element(n, d, rng)
            assert is_member(f)
            assert f.is_zero() or f.is_homogeneous() and f.degree() == d


def test_oracle_preimage_below_delta_degree():
    rng = random.Random(2)
    for n in (3, 4, 5):
        for d in range(comb(n, 2)):
            f = random_tn_element(n, d, rng)
            assert oracle_preimage(f, d) == f


def test_certificate_fields_and_json():
    cert = oracle.verify_basis(2, 3)
    obj = json.loads(cert.to_json())
    assert set(obj) == {"claim", "params", "status", "evidence", "runtime"}
    assert obj["params"] == {"n": 2, "d": 3}


def test_crash_is_recorded_as_failure():
    cert = oracle._certify("boom", {}, lambda ev: 1 / 0)
    assert cert.status == "failed" and "ZeroDivisionError" in cert.evidence["error"]


def test_run_suite_examples():
    assert run_suite([]) == []
    certs = run_suite([SuiteEntry("basis", {"n": range(2, 5), "d": range(0, 11)})])
    assert len(certs) == 33 and all(c.status == "verified" for c in certs)
    with pytest.raises(KeyError):
        run_suite([SuiteEntry("nope")])


def test_seed_determinism(monkeypatch):
    a = oracle.verify_div_delta(3, 5, trials=5, seed=7)
    b = oracle.verify_div_delta(3, 5, trials=5, seed=7)
    assert (a.status, a.evidence) == (b.status, b.evidence)
    r1, r2 = random.Random("x"), random.Random("x")
    assert random_tn_element(4, 6, r1) == random_tn_element(4, 6, r2)
    monkeypatch.setenv("MONOSYM_SEED", "99")
    assert oracle.verify_div_delta(2, 2, trials=2).evidence["seed"] == 99


def test_default_config_small_budget():
    certs = run_suite(default_config(nmax=4, dmax=6))
    assert all(c.ok for c in certs), [c for c in certs if not c.ok]
    table = summary_table(certs)
    assert table.splitlines()[0].startswith("claim")
    assert "basis" in table
