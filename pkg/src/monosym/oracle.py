"""Brute-force verification of the structure of T_n at desk scale.

Every check here is rebuilt from primitives (polynomial arithmetic, exact
linear algebra, Repr in power sums). In particular dimensions come from the
defining linear constraints, membership is tested in monomial-symmetric
coordinates, and preimages are solved in power-sum coordinates, so nothing
relies on the decomposition solver in :mod:`monosym.tn`.

Each check returns a :class:`Certificate`; ``run_suite`` fans a config out
into one certificate per parameter cell.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .partitions import count_ascending_tuples, count_weighted_solutions, partition_list, partitions
from .polycore import DivisionError, Poly, exact_divide_linear, format_rational, substitute
from .qlinalg import INCONSISTENT, QMatrix, rank, solve
from .symfunc import (
    complete_h,
    distinct_permutations,
    elementary,
    h_product,
    monomial_sym,
    power_sum,
    power_sum_slots,
    r_nk,
    repr_in_power_sums,
)

DEFAULT_SEED = 20240601
MAX_MATRIX_ENTRIES = 10_000

VERIFIED, FAILED, SKIPPED = "verified", "failed", "skipped"


def default_seed() -> int:
    env = os.environ.get("MONOSYM_SEED")
    return int(env) if env else DEFAULT_SEED


@dataclass
class Certificate:
    claim: str
    params: dict
    status: str
    evidence: dict = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != FAILED

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=_json_default)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Poly):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _certify(claim: str, params: dict, body: Callable[[dict], bool | None]) -> Certificate:
    """Run ``body(evidence)``; True/False decide the status, None means skipped."""
    evidence: dict = {}
    start = time.perf_counter()
    try:
        verdict = body(evidence)
    except Exception as exc:  # a crash is a failed check, recorded as data
        evidence["error"] = f"{type(exc).__name__}: {exc}"
        verdict = False
    status = SKIPPED if verdict is None else (VERIFIED if verdict else FAILED)
    return Certificate(claim, params, status, evidence, round(time.perf_counter() - start, 4))


# shared brute-force primitives


def _ij(n: int) -> tuple[int, int]:
    return n // 2, (n - 1) // 2


@lru_cache(maxsize=None)
def _power_product_coeff(target: tuple[int, ...], factors: tuple[int, ...]) -> int:
    """Coefficient of x^target in p_{f1} p_{f2} ...: count factor-to-variable assignments."""
    if not factors:
        return int(not any(target))
    k, rest = factors[0], factors[1:]
    total = 0
    for v, room in enumerate(target):
        if room >= k:
            nxt = list(target)
            nxt[v] -= k
            total += _power_product_coeff(tuple(sorted(nxt, reverse=True)), rest)
    return total


def _m_coords_of_product(n: int, d: int, factors: Sequence[int]) -> list[int]:
    return [_power_product_coeff(lam.padded(n), tuple(sorted(factors, reverse=True))) for lam in partition_list(d, n)]


@lru_cache(maxsize=None)
def _constraint_matrix(n: int, d: int) -> QMatrix:
    """Coefficients of t^k (k >= 1) after x1 -> t, x2 -> -t, one column per m_lambda.

    The image of a symmetric polynomial is symmetric in x3..xn, so one row per
    (k, weakly decreasing exponent of x3..xn) suffices.
    """
    lams = partition_list(d, n)
    rows: dict[tuple, list[int]] = {}
    for col, lam in enumerate(lams):
        for a in distinct_permutations(lam.padded(n)):
            tail = a[2:]
            if a[0] + a[1] == 0 or any(x < y for x, y in zip(tail, tail[1:])):
                continue
            key = (a[0] + a[1], tail)
            row = rows.setdefault(key, [0] * len(lams))
            row[col] += -1 if a[1] % 2 else 1
    data = [r for r in rows.values() if any(r)]
    return QMatrix.from_rows(data, cols=len(lams)) if data else QMatrix.zeros(0, len(lams))


def dim_kernel(n: int, d: int) -> int:
    """dim T_n^d from scratch: symmetric coordinates cut down by the t-independence constraints."""
    if n < 2:
        raise ValueError("needs n >= 2")
    c = _constraint_matrix(n, d)
    return c.cols - (rank(c) if c.rows else 0)


def _in_tn_m_coords(n: int, d: int, coords: Sequence[int]) -> bool:
    c = _constraint_matrix(n, d)
    return not any(c.matvec(coords)) if c.rows else True


def _proper_factor_lists(n: int, d: int) -> list[tuple[int, ...]]:
    """Odd-part partitions of d with at most i parts exceeding 2j+1."""
    i, j = _ij(n)
    out = []
    for p in partitions(d):
        if all(k % 2 for k in p) and sum(1 for k in p if k > 2 * j + 1) <= i:
            out.append(tuple(p))
    return out


@lru_cache(maxsize=None)
def _odd_product(n: int, factors: tuple[int, ...]) -> Poly:
    out = Poly.const(n, 1)
    for k in factors:
        out = out * power_sum(n, k)
    return out


def _slot_product(n: int, factors: Iterable[int]) -> Poly:
    out = Poly.const(n, 1)
    for k in factors:
        out = out * power_sum_slots(n, k)
    return out


def _delta(n: int) -> Poly:
    out = Poly.const(n, 1)
    for k, l in itertools.combinations(range(n), 2):
        out = out * (Poly.var(n, k) + Poly.var(n, l))
    return out


def _divide_delta(p: Poly) -> Poly:
    for k, l in itertools.combinations(range(p.n_vars), 2):
        p = exact_divide_linear(p, k, l)
    return p


def _project(p: Poly) -> Poly:
    n = p.n_vars
    if n == 2:
        return Poly.const(0, p.constant_value())
    images = [Poly.var(n - 2, k) for k in range(n - 2)] + [Poly.zero(n - 2)] * 2
    return substitute(p, images)


def _reduce(p: Poly) -> Poly:
    n = p.n_vars
    i = n // 2
    images = [Poly.var(i, k) for k in range(i)] + [-Poly.var(i, k) for k in range(i)]
    images += [Poly.zero(i)] * (n - 2 * i)
    return substitute(p, images)


def solve_in_powersum_coords(n: int, d: int, target: Poly) -> dict[tuple[int, ...], Fraction] | None:
    """Coefficients of ``target`` (a Repr slot polynomial) on degree-d proper products.

    Returns None when no combination matches.
    """
    fams = _proper_factor_lists(n, d)
    columns = [_slot_product(n, f) for f in fams]
    keys = sorted({e for col in columns for e in col.terms} | set(target.terms))
    if not fams:
        return {} if target.is_zero() else None
    m = QMatrix.from_columns([[col.coeff(k) for k in keys] for col in columns], rows=len(keys))
    x = solve(m, [target.coeff(k) for k in keys])
    if x is INCONSISTENT:
        return None
    return {f: c for f, c in zip(fams, x) if c}


def oracle_preimage(f: Poly, d: int) -> Poly:
    """Expanded PreIm(f): represent pi(f) through proper products in n-2 variables, lift."""
    n = f.n_vars
    g = _project(f)
    m = n - 2
    if m == 0:
        rep = {(): g.constant_value()} if d == 0 and g else {}
    elif m == 1:
        c = g.coeff((d,))
        rep = {(1,) * d: c} if c else {}
    else:
        rep = solve_in_powersum_coords(m, d, repr_in_power_sums(g).expr)
        if rep is None:
            raise ValueError("projection is not spanned by proper products")
    out = Poly.zero(n)
    for factors, c in rep.items():
        out = out + _odd_product(n, tuple(factors)).scale(c)
    return out


def random_tn_element(n: int, d: int, rng: random.Random) -> Poly:
    """delta * (random symmetric) + (random combination of odd power-sum products)."""
    while True:
        f = Poly.zero(n)
        rest = d - comb(n, 2)
        if rest >= 0 and n >= 2:
            lams = partition_list(rest, n)
            s = Poly.zero(n)
            for lam in rng.sample(lams, min(len(lams), 3)):
                s = s + monomial_sym(n, lam).scale(_random_coeff(rng))
            f = f + _delta(n) * s
        prods = [p for p in partitions(d) if all(k % 2 for k in p)]
        for p in rng.sample(prods, min(len(prods), 3)):
            f = f + _odd_product(n, tuple(p)).scale(_random_coeff(rng))
        if not f.is_zero():
            return f


def _random_coeff(rng: random.Random) -> Fraction:
    num = rng.choice([k for k in range(-6, 7) if k])
    return Fraction(num, rng.choice([1, 1, 1, 2, 3]))


# claims


def verify_basis(n: int, d: int) -> Certificate:
    def body(ev):
        fams = _proper_factor_lists(n, d)
        rows = len(partition_list(d, n))
        ev.update(products=len(fams), rows=rows)
        if rows * len(fams) > MAX_MATRIX_ENTRIES:
            ev["reason"] = "expansion matrix exceeds entry budget"
            return None
        columns = [_m_coords_of_product(n, d, f) for f in fams]
        nonmembers = [f for f, col in zip(fams, columns) if not _in_tn_m_coords(n, d, col)]
        r = rank(QMatrix.from_columns(columns, rows=rows)) if fams else 0
        kd = dim_kernel(n, d)
        ev.update(rank=r, kernel_dim=kd)
        if nonmembers:
            ev["not_in_Tn"] = [list(f) for f in nonmembers]
        return not nonmembers and r == len(fams) and len(fams) == kd

    return _certify("basis", {"n": n, "d": d}, body)


def verify_delta3() -> Certificate:
    def body(ev):
        lhs = (power_sum(3, 1) ** 3 - power_sum(3, 3)) / 3
        ev["delta"] = str(_delta(3))
        return lhs == _delta(3)

    return _certify("delta3", {"n": 3}, body)


def verify_nonzero_in_delta(n: int) -> Certificate:
    def body(ev):
        i, j = _ij(n)
        f = power_sum(n, 2 * j + 1) ** i
        diff = f - oracle_preimage(f, i * (2 * j + 1))
        q = _divide_delta(diff)
        ok = q.is_constant() and not q.is_zero()
        ev["scalar"] = format_rational(q.constant_value()) if q.is_constant() else str(q)
        if ok:
            ev["alpha"] = format_rational(1 / q.constant_value())
        return ok

    return _certify("nonzero_in_delta", {"n": n}, body)


def verify_r_formula(n: int, k_max: int) -> Certificate:
    def body(ev):
        i, j = _ij(n)
        squares = [Poly.var(i, k) ** 2 for k in range(i)]
        bad = []
        for k in range(k_max + 1):
            lhs = _reduce(r_nk(n, 2 * k + 2 * j + 1))
            h = complete_h(i, k)
            h_sq = substitute(h, squares) if i else h
            rhs = h_sq.scale(Fraction(2 * k + 2 * j + 1, 2 * j + 1))
            if lhs != rhs:
                bad.append({"k": k, "got": str(lhs), "want": str(rhs)})
        ev["checked_k"] = k_max + 1
        if bad:
            ev["mismatches"] = bad
        return not bad

    return _certify("r_formula", {"n": n, "k_max": k_max}, body)


def verify_reduction_table(n: int, k_max: int) -> Certificate:
    """p_odd -> 0, p_{2k} -> 2 sum x_l^{2k}, e_odd -> 0, e_{2k} -> (-1)^k e_k(x_1^2..x_i^2).

    The even power-sum row starts at k = 1: p_0 is the constant n, and for odd
    n the variable sent to zero still contributes x_n^0 = 1.
    """

    def body(ev):
        i, _ = _ij(n)
        squares = [Poly.var(i, k) ** 2 for k in range(i)]
        bad = []
        for k in range(k_max + 1):
            if not _reduce(power_sum(n, 2 * k + 1)).is_zero():
                bad.append(f"p{2 * k + 1}")
            if not _reduce(elementary(n, 2 * k + 1)).is_zero():
                bad.append(f"e{2 * k + 1}")
            e_sq = substitute(elementary(i, k), squares) if i else elementary(i, k)
            if _reduce(elementary(n, 2 * k)) != e_sq.scale((-1) ** k):
                bad.append(f"e{2 * k}")
            if k >= 1:
                want = sum((Poly.var(i, l) ** (2 * k) for l in range(i)), Poly.zero(i)).scale(2)
                if _reduce(power_sum(n, 2 * k)) != want:
                    bad.append(f"p{2 * k}")
        if _reduce(power_sum(n, 0)) != Poly.const(i, n):
            bad.append("p0")
        if bad:
            ev["mismatches"] = bad
        return not bad

    return _certify("reduction", {"n": n, "k_max": k_max}, body)


def verify_div_delta(n: int, d: int, trials: int = 50, seed: int | None = None) -> Certificate:
    seed = default_seed() if seed is None else seed

    def body(ev):
        rng = random.Random(f"{seed}:{n}:{d}")
        nontrivial = d >= comb(n, 2)
        ev.update(seed=seed, trials=trials, branch="divisible" if nontrivial else "equal")
        for t in range(trials):
            f = random_tn_element(n, d, rng)
            diff = f - oracle_preimage(f, d)
            if not nontrivial:
                if not diff.is_zero():
                    ev["counterexample"] = str(f)
                    return False
                continue
            try:
                _divide_delta(diff)
            except DivisionError:
                ev["counterexample"] = str(f)
                return False
        return True

    return _certify("div_delta", {"n": n, "d": d, "trials": trials}, body)


def verify_positive_degree(n: int, d_max: int) -> Certificate:
    """Every long product's unique decomposition uses only terms with a low factor."""

    def body(ev):
        i, j = _ij(n)
        checked = 0
        for d in range(d_max + 1):
            for p in partitions(d):
                if not all(k % 2 for k in p) or sum(1 for k in p if k > 2 * j + 1) <= i:
                    continue
                rep = solve_in_powersum_coords(n, d, _slot_product(n, p))
                if rep is None:
                    ev["unrepresentable"] = list(p)
                    return False
                for factors in rep:
                    if not any(k <= 2 * j + 1 for k in factors):
                        ev["counterexample"] = {"long": list(p), "term": list(factors)}
                        return False
                checked += 1
        ev["long_products"] = checked
        return True

    return _certify("positive_degree", {"n": n, "d_max": d_max}, body)


def verify_spanning_family(n: int, d: int) -> Certificate:
    """Products of exactly i sums p_{2m+1}, m >= j, span delta*L_even modulo delta*L_odd."""

    def body(ev):
        i, j = _ij(n)
        c2 = comb(n, 2)
        if d < c2 or (d - c2) % 2:
            ev.update(family=0, young=0)
            return True
        s = (d - c2) // 2
        family = [
            p for p in partitions(d, max_len=i)
            if len(p) == i and all(k % 2 and k >= 2 * j + 1 for k in p)
        ]
        even_parts = []
        for p in family:
            g = _odd_product(n, tuple(p))
            try:
                quotient = _divide_delta(g - oracle_preimage(g, d))
            except DivisionError:
                ev["not_divisible"] = list(p)
                return False
            rep = repr_in_power_sums(quotient).expr
            even_parts.append({e: c for e, c in rep.terms.items() if not any(e[k] for k in range(0, n, 2))})
        keys = sorted({e for part in even_parts for e in part})
        r = rank(QMatrix.from_columns([[part.get(k, 0) for k in keys] for part in even_parts], rows=len(keys))) if keys else 0
        young = count_ascending_tuples(i, s)
        weighted = count_weighted_solutions(i, s)
        ev.update(family=len(family), rank=r, young=young, even_dim=weighted)
        return r == len(family) == young == weighted

    return _certify("spanning_family", {"n": n, "d": d}, body)


def verify_counting(i_max: int = 6, s_max: int = 30) -> Certificate:
    def body(ev):
        bad = [
            (i, s) for i in range(1, i_max + 1) for s in range(s_max + 1)
            if count_ascending_tuples(i, s) != count_weighted_solutions(i, s)
        ]
        ev["cells"] = i_max * (s_max + 1)
        if bad:
            ev["mismatches"] = bad
        return not bad

    return _certify("counting", {"i_max": i_max, "s_max": s_max}, body)


def verify_h_basis(n: int, d: int) -> Certificate:
    """h-products indexed by partitions with at most n parts are a basis of S_n^d."""

    def body(ev):
        lams = partition_list(d, n)
        columns = []
        for lam in lams:
            p = h_product(n, lam)
            columns.append([p.coeff(mu.padded(n)) for mu in lams])
        r = rank(QMatrix.from_columns(columns, rows=len(lams))) if lams else 0
        ev.update(rank=r, partitions=len(lams))
        return r == len(lams)

    return _certify("h_basis", {"n": n, "d": d}, body)


def verify_decompose_agreement(n: int, d: int, trials: int = 5, seed: int | None = None) -> Certificate:
    """Compare the library decomposition with a power-sum-coordinate solve."""
    from . import tn

    seed = default_seed() if seed is None else seed

    def body(ev):
        rng = random.Random(f"agree:{seed}:{n}:{d}")
        for _ in range(trials):
            f = random_tn_element(n, d, rng)
            dec = tn.decompose(f)
            ours = solve_in_powersum_coords(n, d, repr_in_power_sums(f).expr)
            theirs = {pp.factors(): c for pp, c in dec.terms()}
            if ours != theirs or dec.expand() != f:
                ev["counterexample"] = str(f)
                return False
        ev.update(seed=seed, trials=trials)
        return True

    return _certify("decompose_agreement", {"n": n, "d": d, "trials": trials}, body)


# suite


CLAIMS: dict[str, Callable[..., Certificate]] = {
    "basis": verify_basis,
    "delta3": verify_delta3,
    "nonzero_in_delta": verify_nonzero_in_delta,
    "r_formula": verify_r_formula,
    "reduction": verify_reduction_table,
    "div_delta": verify_div_delta,
    "positive_degree": verify_positive_degree,
    "spanning_family": verify_spanning_family,
    "counting": verify_counting,
    "h_basis": verify_h_basis,
    "decompose_agreement": verify_decompose_agreement,
}


@dataclass(frozen=True)
class SuiteEntry:
    """One claim and a grid of parameters; list values are swept as a product."""

    claim: str
    grid: dict = field(default_factory=dict)

    def cells(self) -> list[dict]:
        keys = list(self.grid)
        values = [v if isinstance(v, (list, tuple, range)) else [v] for v in self.grid.values()]
        return [dict(zip(keys, combo)) for combo in itertools.product(*values)]


def default_config(nmax: int = 6, dmax: int = 12, seed: int | None = None) -> list[SuiteEntry]:
    seed = default_seed() if seed is None else seed
    small_n = range(2, min(nmax, 5) + 1)
    return [
        SuiteEntry("basis", {"n": range(2, nmax + 1), "d": range(0, dmax + 1)}),
        SuiteEntry("h_basis", {"n": range(1, min(nmax, 4) + 1), "d": range(0, min(dmax, 8) + 1)}),
        SuiteEntry("delta3"),
        SuiteEntry("nonzero_in_delta", {"n": range(3, min(nmax, 5) + 1)}),
        SuiteEntry("r_formula", {"n": small_n, "k_max": 4}),
        SuiteEntry("reduction", {"n": range(2, nmax + 1), "k_max": 4}),
        SuiteEntry("div_delta", {"n": small_n, "d": range(1, min(dmax, 10) + 1), "trials": 50, "seed": seed}),
        SuiteEntry("positive_degree", {"n": range(2, min(nmax, 4) + 1), "d_max": dmax}),
        SuiteEntry("spanning_family", {"n": small_n, "d": range(0, dmax + 1)}),
        SuiteEntry("counting", {"i_max": 6, "s_max": 30}),
        SuiteEntry("decompose_agreement", {"n": range(2, min(nmax, 4) + 1), "d": range(1, min(dmax, 10) + 1), "trials": 3, "seed": seed}),
    ]


def run_suite(config: Iterable[SuiteEntry], progress: Callable[[Certificate], None] | None = None) -> list[Certificate]:
    certs = []
    for entry in config:
        if entry.claim not in CLAIMS:
            raise KeyError(f"unknown claim {entry.claim!r}; known: {', '.join(CLAIMS)}")
        fn = CLAIMS[entry.claim]
        for cell in entry.cells():
            cert = fn(**cell)
            certs.append(cert)
            if progress:
                progress(cert)
    return certs


def summary_table(certs: Sequence[Certificate]) -> str:
    by_claim: dict[str, list[Certificate]] = {}
    for c in certs:
        by_claim.setdefault(c.claim, []).append(c)
    lines = [f"{'claim':<22}{'cells':>7}{'verified':>10}{'skipped':>9}{'failed':>8}{'seconds':>10}"]
    for claim, cs in by_claim.items():
        lines.append(
            f"{claim:<22}{len(cs):>7}{sum(c.status == VERIFIED for c in cs):>10}"
            f"{sum(c.status == SKIPPED for c in cs):>9}{sum(c.status == FAILED for c in cs):>8}"
            f"{sum(c.runtime for c in cs):>10.2f}"
        )
    return "\n".join(lines)
