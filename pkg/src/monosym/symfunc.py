"""Classical symmetric functions and the power-sum representation.

``repr_in_power_sums`` writes a symmetric polynomial as a polynomial in the
power sums ``p_1..p_n``. The result is a :class:`PowerSumExpr`: a :class:`Poly`
in ``n`` abstract slots, slot ``k-1`` standing for ``p_k``.

A *multiplier* of an odd-slot monomial ``p_1^c1 p_3^c3 ... p_{2j+1}^c`` in
``f`` is the coefficient of that monomial in ``Repr(f)``, which is a
polynomial in the even slots ``p_2, p_4, ...``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .partitions import Partition, partition_list
from .polycore import Poly, format_rational, render_monomial, render_terms, substitute


class NotSymmetricError(ValueError):
    pass


def _jparam(n: int) -> int:
    return (n - 1) // 2


def _iparam(n: int) -> int:
    return n // 2


# basic families


@lru_cache(maxsize=None)
def power_sum(n: int, k: int) -> Poly:
    if k < 0:
        raise ValueError("power sum index must be nonnegative")
    if k == 0:
        return Poly.const(n, n)
    terms = {}
    for v in range(n):
        e = [0] * n
        e[v] = k
        terms[tuple(e)] = 1
    return Poly._raw(n, terms)


@lru_cache(maxsize=None)
def elementary(n: int, k: int) -> Poly:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k == 0:
        return Poly.const(n, 1)
    terms = {}
    for combo in itertools.combinations(range(n), k):
        e = [0] * n
        for v in combo:
            e[v] = 1
        terms[tuple(e)] = 1
    return Poly._raw(n, terms)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def complete_h(n: int, l: int) -> Poly:
    if l < 0:
        return Poly.zero(n)
    return Poly._raw(n, {e: 1 for e in _compositions(l, n)})


def distinct_permutations(seq: Sequence[int]):
    """Distinct orderings of ``seq`` (multiset permutations), lexicographically descending."""
    items = sorted(seq, reverse=True)
    n = len(items)

    def rec(remaining: dict, prefix: list):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in sorted(remaining, reverse=True):
            if remaining[v]:
                remaining[v] -= 1
                prefix.append(v)
                yield from rec(remaining, prefix)
                prefix.pop()
                remaining[v] += 1

    counts: dict = {}
    for v in items:
        counts[v] = counts.get(v, 0) + 1
    yield from rec(counts, [])


@lru_cache(maxsize=None)
def monomial_sym(n: int, lam: Partition) -> Poly:
    lam = Partition(lam)
    return Poly._raw(n, {e: 1 for e in distinct_permutations(lam.padded(n))})


def h_product(n: int, parts: Sequence[int]) -> Poly:
    out = Poly.const(n, 1)
    for l in parts:
        out = out * complete_h(n, l)
    return out


def schur(n: int, lam: Sequence[int]) -> Poly:
    """Schur polynomial from the Jacobi-Trudi determinant det(h_{lam_r - r + c})."""
    lam = Partition(lam)
    size = len(lam)
    if size > n:
        raise ValueError(f"partition {tuple(lam)} is longer than n={n}")
    if size == 0:
        return Poly.const(n, 1)

    def entry(r, c):
        return complete_h(n, lam[r] - r + c)

    memo: dict = {}

    def minor(r, cols):
        # Laplace expansion along row r over the remaining column set
        if r == size:
            return Poly.const(n, 1)
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = Poly.zero(n)
        for pos, c in enumerate(cols):
            a = entry(r, c)
            if a.is_zero():
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(size)))


def is_symmetric(p: Poly) -> bool:
    n = p.n_vars
    if n <= 1:
        return True
    swap = [1, 0] + list(range(2, n))
    cycle = [(k + 1) % n for k in range(n)]
    return p.permute(swap) == p and p.permute(cycle) == p


# power-sum expressions


@dataclass(frozen=True)
class PowerSumExpr:
    """Polynomial in the power sums p_1..p_n; ``expr`` has one variable per slot."""

    n_vars: int
    expr: Poly

    def __post_init__(self):
        if self.expr.n_vars != self.n_vars:
            raise ValueError("slot count must equal n_vars")

    def weighted_degrees(self) -> set[int]:
        return {sum((k + 1) * x for k, x in enumerate(e)) for e in self.expr.terms}

    def render(self) -> str:
        names = [f"p{k + 1}" for k in range(self.n_vars)]
        return render_terms((render_monomial(e, names), c) for e, c in self.expr.items())

    def __str__(self):
        return self.render()

    def to_json_obj(self) -> dict:
        return {
            "n": self.n_vars,
            "basis": "powersum",
            "terms": [{"coef": format_rational(c), "exps": list(e)} for e, c in self.expr.items()],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "PowerSumExpr":
        if obj.get("basis") != "powersum":
            raise ValueError('expected a "basis": "powersum" object')
        n = int(obj["n"])
        return cls(n, Poly(n, {tuple(t["exps"]): Fraction(t["coef"]) for t in obj["terms"]}))


def slot(n: int, k: int) -> Poly:
    """The slot polynomial standing for p_k (k = 0 gives the constant n)."""
    if k == 0:
        return Poly.const(n, n)
    return Poly.var(n, k - 1)


def newton_step(k: int, power_sums: Sequence, elementaries: Sequence):
    """p_k from Newton's identity, for any ring whose elements support + and *.

    ``power_sums[m]`` is p_m for m < k (``power_sums[0]`` is p_0 = n) and
    ``elementaries[l]`` is e_l for l = 0..n. For k >= n this is
    ``sum_{l=1..n} (-1)^(l-1) e_l p_{k-l}``; for k < n the l = k term uses
    ``k * e_k`` in place of ``e_k * p_0``.
    """
    n = len(elementaries) - 1
    acc = None
    for l in range(1, min(n, k) + 1):
        if l == k and k < n:
            term = elementaries[l] * k
        else:
            term = elementaries[l] * power_sums[k - l]
        if l % 2 == 0:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return elementaries[0] * 0
    return acc


@lru_cache(maxsize=None)
def elementary_slots(n: int) -> tuple[Poly, ...]:
    """e_0..e_n as slot polynomials: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i."""
    es = [Poly.const(n, 1)]
    for k in range(1, n + 1):
        acc = Poly.zero(n)
        for i in range(1, k + 1):
            term = es[k - i] * slot(n, i)
            acc = acc + term if i % 2 else acc - term
        es.append(acc / k)
    return tuple(es)


@lru_cache(maxsize=None)
def power_sum_slots(n: int, k: int) -> Poly:
    """Repr(p_k) via the Newton recurrence in slot space."""
    if k <= n:
        return slot(n, k)
    ps = [power_sum_slots(n, m) for m in range(k)]
    return newton_step(k, ps, elementary_slots(n))


@lru_cache(maxsize=4096)
def _e_product(n: int, exps: tuple[int, ...]) -> Poly:
    if not any(exps):
        return Poly.const(n, 1)
    last = max(k for k, a in enumerate(exps) if a)
    prev = list(exps)
    prev[last] -= 1
    return _e_product(n, tuple(prev)) * elementary(n, last + 1)


@lru_cache(maxsize=4096)
def _e_product_dominant(n: int, exps: tuple[int, ...]) -> dict:
    p = _e_product(n, exps)
    return {e: c for e, c in p.terms.items() if _is_dominant(e)}


def _is_dominant(e) -> bool:
    return all(a >= b for a, b in zip(e, e[1:]))


def to_elementary(f: Poly) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of ``f`` on products e_1^a1 ... e_n^an (leading-term subtraction)."""
    if not is_symmetric(f):
        raise NotSymmetricError("input is not symmetric")
    n = f.n_vars
    coords = {e: Fraction(c) for e, c in f.terms.items() if _is_dominant(e)}
    out: dict = {}
    while coords:
        lead = max(coords)
        c = coords[lead]
        exps = tuple(lead[k] - (lead[k + 1] if k + 1 < n else 0) for k in range(n))
        out[exps] = out.get(exps, 0) + c
        for e, v in _e_product_dominant(n, exps).items():
            w = coords.get(e, 0) - c * v
            if w:
                coords[e] = w
            else:
                coords.pop(e, None)
    return out


def repr_in_power_sums(f: Poly) -> PowerSumExpr:
    """The unique polynomial E in the slots with E(p_1, ..., p_n) = f."""
    n = f.n_vars
    if n == 0:
        return PowerSumExpr(0, f)
    es = elementary_slots(n)
    acc: dict = {}
    for exps, c in to_elementary(f).items():
        term = Poly.const(n, c)
        for k, a in enumerate(exps):
            if a:
                term = term * es[k + 1] ** a
        for e, v in term.terms.items():
            acc[e] = acc.get(e, 0) + v
    return PowerSumExpr(n, Poly(n, acc))


def expand_slots(n: int, expr: Poly) -> Poly:
    if n == 0:
        return expr
    return substitute(expr, [power_sum(n, k) for k in range(1, n + 1)])


def expand(E: PowerSumExpr) -> Poly:
    return expand_slots(E.n_vars, E.expr)


# multipliers


def multiplier_index_length(n: int) -> int:
    return _jparam(n) + 1


def _odd_slot_positions(n: int) -> list[int]:
    return [2 * t for t in range(multiplier_index_length(n))]


def multiplier_slots(E: PowerSumExpr | Poly, idx: Sequence[int]) -> PowerSumExpr:
    """Coefficient of p_1^c1 p_3^c3 ... p_{2j+1}^c in Repr, as an even-slot expression."""
    if isinstance(E, Poly):
        E = repr_in_power_sums(E)
    n = E.n_vars
    odd = _odd_slot_positions(n)
    if len(idx) != len(odd):
        raise ValueError(f"multiplier index must have {len(odd)} entries for n={n}")
    target = tuple(idx)
    out = {}
    for e, c in E.expr.terms.items():
        if tuple(e[k] for k in odd) == target:
            f = list(e)
            for k in odd:
                f[k] = 0
            out[tuple(f)] = c
    return PowerSumExpr(n, Poly(n, out))


def multiplier_at(f: Poly | PowerSumExpr, idx: Sequence[int]) -> Poly:
    """The multiplier with its even power sums substituted back (an x-polynomial)."""
    return expand(multiplier_slots(f, idx))


def q_nk(n: int, k: int) -> Poly:
    """Multiplier of (0,...,0) in p_k."""
    if k < 1:
        raise ValueError("q_nk needs k >= 1")
    zero = (0,) * multiplier_index_length(n)
    return multiplier_at(PowerSumExpr(n, power_sum_slots(n, k)), zero)


def r_slots(n: int, k: int) -> PowerSumExpr:
    j = _jparam(n)
    if k < 2 * j + 1:
        raise ValueError(f"r_nk needs k >= 2j+1 = {2 * j + 1} for n={n}")
    idx = (0,) * j + (1,)
    return multiplier_slots(PowerSumExpr(n, power_sum_slots(n, k)), idx)


def r_nk(n: int, k: int) -> Poly:
    """Multiplier of (0,...,0,1) in p_k, defined for k >= 2j(n)+1."""
    return expand(r_slots(n, k))


def symmetric_basis_count(n: int, d: int) -> int:
    return len(partition_list(d, n))
