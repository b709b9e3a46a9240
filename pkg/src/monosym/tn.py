"""Monotypically supersymmetric polynomials.

``T_n`` is the algebra of symmetric polynomials in ``x_1..x_n`` whose image under
``x_1 -> t, x_2 -> -t`` does not depend on ``t``. Odd power sums generate it and
the *proper* products of odd power sums form a linear basis.

With ``i = floor(n/2)`` and ``j = floor((n-1)/2)``, an odd power sum
``p_{2m+1}`` is *elder* when ``m > j``; a product of odd power sums is proper
when it has at most ``i`` elder factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .partitions import partition_list, partitions
from .polycore import (
    DivisionError,
    Poly,
    exact_divide_linear,
    format_rational,
    render_monomial,
    render_terms,
    substitute,
)
from .qlinalg import INCONSISTENT, LinearSystem, QMatrix
from .symfunc import (
    NotSymmetricError,
    expand_slots,
    is_symmetric,
    power_sum,
    repr_in_power_sums,
)


class NotInTnError(ValueError):
    """The polynomial is not monotypically supersymmetric."""


class InvariantViolation(RuntimeError):
    """A property guaranteed by the theory failed; indicates an implementation fault."""


@dataclass(frozen=True)
class NParams:
    n: int
    i: int
    j: int


def params(n: int) -> NParams:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return NParams(n, n // 2, (n - 1) // 2)


# membership


@dataclass(frozen=True)
class Membership:
    ok: bool
    reason: str = ""
    witness: str = ""

    def __bool__(self):
        return self.ok


def check_membership(p: Poly) -> Membership:
    """Test both defining conditions; on failure say which one and show a term.

    For ``n <= 1`` the second condition is vacuous and every polynomial passes.
    """
    n = p.n_vars
    if not is_symmetric(p):
        return Membership(False, "not symmetric")
    if n < 2:
        return Membership(True)
    t = Poly.var(n + 1, n)
    images = [t, -t] + [Poly.var(n + 1, k) for k in range(2, n)]
    image = substitute(p, images)
    bad = [(e, c) for e, c in image.items() if e[n] > 0]
    if bad:
        names = [f"x{k + 1}" for k in range(n)] + ["t"]
        e, c = bad[0]
        return Membership(
            False,
            "substitution image depends on t",
            render_terms([(render_monomial(e, names), c)]),
        )
    return Membership(True)


def is_member(p: Poly) -> bool:
    return check_membership(p).ok


# special polynomials and maps


@lru_cache(maxsize=None)
def delta(n: int) -> Poly:
    """Product of (x_k + x_l) over unordered pairs k < l; degree C(n, 2)."""
    out = Poly.const(n, 1)
    for k, l in itertools.combinations(range(n), 2):
        out = out * (Poly.var(n, k) + Poly.var(n, l))
    return out


def divide_by_delta(p: Poly) -> Poly:
    """Exact quotient by delta, one linear factor at a time."""
    q = p
    for k, l in itertools.combinations(range(p.n_vars), 2):
        q = exact_divide_linear(q, k, l)
    return q


def pi_project(p: Poly) -> Poly:
    """Set the last two variables to zero; the result lives in n-2 variables."""
    n = p.n_vars
    if n < 2:
        raise ValueError("projection needs at least two variables")
    return Poly._raw(n - 2, {e[:-2]: c for e, c in p.terms.items() if e[-1] == 0 and e[-2] == 0})


def reduce_mod_I(p: Poly) -> Poly:
    """Image under x_{i+l} -> -x_l (l = 1..i) and, for odd n, x_n -> 0.

    Two polynomials are congruent modulo the ideal generated by
    ``x_{i+l} + x_l`` (and ``x_n`` for odd n) exactly when these images agree.
    """
    n = p.n_vars
    i = n // 2
    images = [Poly.var(i, k) for k in range(i)] + [-Poly.var(i, k) for k in range(i)]
    if n % 2:
        images.append(Poly.zero(i))
    return substitute(p, images)


# proper products


@dataclass(frozen=True)
class ProperProduct:
    """p_1^c1 p_3^c3 ... p_{2j+1}^c_{2j+1} times elder sums p_{2m+1}, m > j.

    ``low`` holds (c_1, c_3, ..., c_{2j+1}); ``elders`` holds the ascending
    elder indices m (so the factor is p_{2m+1}).
    """

    n: int
    low: tuple[int, ...]
    elders: tuple[int, ...] = ()

    def __post_init__(self):
        pr = params(self.n)
        if len(self.low) != pr.j + 1:
            raise ValueError(f"low exponents need {pr.j + 1} entries for n={self.n}")
        if any(c < 0 for c in self.low):
            raise ValueError("negative exponent")
        if list(self.elders) != sorted(self.elders):
            raise ValueError("elders must be ascending")
        if any(m <= pr.j for m in self.elders):
            raise ValueError(f"elder indices must exceed j={pr.j}")
        if len(self.elders) > pr.i:
            raise ValueError(f"long product: {len(self.elders)} elder factors > i={pr.i}")

    @classmethod
    def from_factors(cls, n: int, factors: Iterable[int]) -> "ProperProduct":
        pr = params(n)
        low = [0] * (pr.j + 1)
        elders = []
        for k in factors:
            if k < 1 or k % 2 == 0:
                raise ValueError(f"p_{k} is not an odd power sum")
            m = (k - 1) // 2
            if m <= pr.j:
                low[m] += 1
            else:
                elders.append(m)
        return cls(n, tuple(low), tuple(sorted(elders)))

    @property
    def degree(self) -> int:
        return sum((2 * t + 1) * c for t, c in enumerate(self.low)) + sum(2 * m + 1 for m in self.elders)

    def factors(self) -> tuple[int, ...]:
        """Odd power-sum indices, descending, with multiplicity."""
        out = [2 * m + 1 for m in self.elders]
        for t, c in enumerate(self.low):
            out.extend([2 * t + 1] * c)
        return tuple(sorted(out, reverse=True))

    def has_low_factor(self) -> bool:
        return any(self.low)

    def expand(self) -> Poly:
        return expand_odd_product(self.n, self.factors())

    def render(self) -> str:
        counts: dict[int, int] = {}
        for t, c in enumerate(self.low):
            if c:
                counts[2 * t + 1] = c
        for m in self.elders:
            counts[2 * m + 1] = counts.get(2 * m + 1, 0) + 1
        parts = [f"p{k}" if c == 1 else f"p{k}^{c}" for k, c in sorted(counts.items())]
        return "*".join(parts) if parts else "1"

    def __str__(self):
        return self.render()

    def sort_key(self):
        return (tuple(-c for c in self.low), self.elders)

    def to_json_obj(self) -> dict:
        return {"low": list(self.low), "elders": list(self.elders)}


@lru_cache(maxsize=8192)
def expand_odd_product(n: int, factors: tuple[int, ...]) -> Poly:
    """Expansion of p_{k1} p_{k2} ... in n variables (factors sorted descending)."""
    if not factors:
        return Poly.const(n, 1)
    return expand_odd_product(n, factors[:-1]) * power_sum(n, factors[-1])


def is_long(n: int, factors: Iterable[int]) -> bool:
    pr = params(n)
    return sum(1 for k in factors if (k - 1) // 2 > pr.j) > pr.i


def odd_products(d: int) -> list[tuple[int, ...]]:
    """All products of odd power sums of degree d, as descending factor tuples."""
    return [tuple(p) for p in partitions(d) if all(k % 2 for k in p)]


@lru_cache(maxsize=None)
def enumerate_proper_products(n: int, d: int) -> tuple[ProperProduct, ...]:
    pr = params(n)
    found = []

    def elder_sets(rest, lo, room):
        yield ()
        if room == 0:
            return
        m = lo
        while 2 * m + 1 <= rest:
            for tail in elder_sets(rest - (2 * m + 1), m, room - 1):
                yield (m,) + tail
            m += 1

    def low_vectors(rest, t):
        # c_{2t+1}, ..., c_{2j+1} summing (weighted) to rest
        if t == pr.j:
            w = 2 * t + 1
            if rest % w == 0:
                yield (rest // w,)
            return
        w = 2 * t + 1
        for c in range(rest // w, -1, -1):
            for tail in low_vectors(rest - c * w, t + 1):
                yield (c,) + tail

    for elders in elder_sets(d, pr.j + 1, pr.i):
        rest = d - sum(2 * m + 1 for m in elders)
        if pr.j < 0:
            if rest == 0:
                found.append(ProperProduct(n, (), elders))
            continue
        for low in low_vectors(rest, 0):
            found.append(ProperProduct(n, low, elders))
    found.sort(key=ProperProduct.sort_key)
    return tuple(found)


def dim_Tn(n: int, d: int) -> int:
    return len(enumerate_proper_products(n, d))


def lift(pp: ProperProduct, n: int) -> ProperProduct:
    return ProperProduct.from_factors(n, pp.factors())


# decomposition


@dataclass(frozen=True)
class Decomposition:
    n: int
    d: int
    basis: tuple[ProperProduct, ...]
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.basis) != len(self.coeffs):
            raise ValueError("basis and coeffs must have equal length")

    @classmethod
    def from_mapping(cls, n: int, d: int, coeffs: dict) -> "Decomposition":
        """Build from {ProperProduct or factor tuple: coefficient}."""
        basis = enumerate_proper_products(n, d)
        index = {pp: k for k, pp in enumerate(basis)}
        values = [Fraction(0)] * len(basis)
        for key, c in coeffs.items():
            pp = key if isinstance(key, ProperProduct) else ProperProduct.from_factors(n, key)
            if pp not in index:
                raise ValueError(f"{pp.render()} is not a degree-{d} proper product for n={n}")
            values[index[pp]] += Fraction(c)
        return cls(n, d, basis, tuple(values))

    def terms(self) -> list[tuple[ProperProduct, Fraction]]:
        return [(pp, c) for pp, c in zip(self.basis, self.coeffs) if c]

    def as_dict(self) -> dict[ProperProduct, Fraction]:
        return dict(self.terms())

    def expand(self) -> Poly:
        out = Poly.zero(self.n)
        for pp, c in self.terms():
            out = out + pp.expand().scale(c)
        return out

    def render(self) -> str:
        return render_terms((pp.render() if pp.degree else "", c) for pp, c in self.terms())

    def __str__(self):
        return self.render()

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "basis": [pp.to_json_obj() for pp in self.basis],
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "Decomposition":
        n, d = int(obj["n"]), int(obj["d"])
        basis = tuple(ProperProduct(n, tuple(b["low"]), tuple(b["elders"])) for b in obj["basis"])
        return cls(n, d, basis, tuple(Fraction(c) for c in obj["coeffs"]))


@lru_cache(maxsize=None)
def _basis_system(n: int, d: int):
    basis = enumerate_proper_products(n, d)
    rows = [lam.padded(n) for lam in partition_list(d, n)]
    columns = []
    for pp in basis:
        expanded = pp.expand()
        columns.append([expanded.coeff(r) for r in rows])
    matrix = QMatrix.from_columns(columns, rows=len(rows))
    return basis, rows, LinearSystem(matrix)


def expansion_matrix(n: int, d: int) -> QMatrix:
    """Columns: proper products; rows: monomial-symmetric coordinates m_lambda."""
    return _basis_system(n, d)[2].matrix


def _degree_of(f: Poly, degree: int | None) -> int:
    if f.is_zero():
        if degree is None:
            raise ValueError("the zero polynomial needs an explicit degree")
        return degree
    if not f.is_homogeneous():
        raise ValueError("input must be homogeneous")
    d = f.degree()
    if degree is not None and degree != d:
        raise ValueError(f"degree mismatch: polynomial has degree {d}, expected {degree}")
    return d


def decompose(f: Poly, degree: int | None = None) -> Decomposition:
    """Unique coefficients of a homogeneous ``f`` in T_n on the proper-product basis."""
    n = f.n_vars
    d = _degree_of(f, degree)
    if n <= 1:
        c = f.coeff((d,) * n) if n == 1 else f.constant_value()
        if n == 0 and d != 0 and c:
            raise ValueError("nonzero constant cannot have positive degree")
        return Decomposition.from_mapping(n, d, {(1,) * d: c} if (n == 1 or d == 0) and c else {})
    if not is_symmetric(f):
        raise NotInTnError("not symmetric")
    basis, rows, system = _basis_system(n, d)
    x = system.solve([f.coeff(r) for r in rows])
    if x is INCONSISTENT:
        verdict = check_membership(f)
        if not verdict:
            raise NotInTnError(f"{verdict.reason} {verdict.witness}".strip())
        raise InvariantViolation(f"member of T_{n} outside the span of proper products (d={d})")
    return Decomposition(n, d, basis, x)


def decompose_any(f: Poly) -> list[Decomposition]:
    """Decompose each homogeneous component separately."""
    if f.is_zero():
        return []
    return [decompose(part) for part in f.homogeneous_components().values()]


def preimage_lift(f: Poly, degree: int | None = None) -> Decomposition:
    """Lift a proper-product representation of pi(f) back to n variables.

    Every proper product in n-2 variables stays proper in n variables, so the
    result is again a combination of degree-d proper products.
    """
    n = f.n_vars
    if n < 2:
        raise ValueError("preimage needs at least two variables")
    d = _degree_of(f, degree)
    verdict = check_membership(f)
    if not verdict:
        raise NotInTnError(verdict.reason)
    low = decompose(pi_project(f), degree=d)
    return Decomposition.from_mapping(n, d, {lift(pp, n): c for pp, c in low.terms()})


def div_delta_witness(f: Poly, degree: int | None = None) -> Poly:
    """The symmetric quotient (f - PreIm(f)) / delta."""
    n = f.n_vars
    d = _degree_of(f, degree)
    diff = f - preimage_lift(f, degree=d).expand()
    if d < comb(n, 2):
        if not diff.is_zero():
            raise InvariantViolation(f"f - PreIm(f) is nonzero below degree C({n},2)")
        return Poly.zero(n)
    try:
        s = divide_by_delta(diff)
    except DivisionError as exc:
        raise InvariantViolation(f"f - PreIm(f) is not divisible by delta: {exc}") from None
    if not is_symmetric(s):
        raise InvariantViolation("quotient by delta is not symmetric")
    return s


def delta_preim_identity(n: int) -> tuple[Fraction, Poly]:
    """Scalar alpha with delta = alpha * (p_{2j+1}^i - PreIm(p_{2j+1}^i)).

    Returns ``(alpha, witness)`` where witness is the expanded difference.
    """
    pr = params(n)
    if n < 3:
        raise ValueError("needs n >= 3")
    f = power_sum(n, 2 * pr.j + 1) ** pr.i
    witness = f - preimage_lift(f).expand()
    try:
        q = divide_by_delta(witness)
    except DivisionError:
        raise InvariantViolation("difference is not divisible by delta") from None
    if not q.is_constant() or q.is_zero():
        raise InvariantViolation(f"quotient by delta is not a nonzero scalar: {q}")
    return 1 / q.constant_value(), witness


def split_even_odd(s: Poly) -> tuple[Poly, Poly]:
    """Split a symmetric polynomial into its even-power-sum part and the rest.

    The even part collects the Repr monomials without any odd power sum; the
    odd part lies in the span of p_1 S_n, p_3 S_n, ..., p_{2j+1} S_n.
    """
    if not is_symmetric(s):
        raise NotSymmetricError("input is not symmetric")
    n = s.n_vars
    E = repr_in_power_sums(s)
    even = {}
    for e, c in E.expr.terms.items():
        if not any(e[k] for k in range(0, n, 2)):
            even[e] = c
    even_part = expand_slots(n, Poly(n, even))
    return even_part, s - even_part


# constructive decompositions for n = 2 and n = 3


def _add_into(acc: dict, key: tuple, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _times_factors(rep: dict, extra: Sequence[int]) -> dict:
    return {tuple(sorted(key + tuple(extra), reverse=True)): c for key, c in rep.items()}


def decompose_constructive_n2(f: Poly) -> Decomposition:
    """Peel the odd power sum off odd degrees and divide by x_1 + x_2."""
    if f.n_vars != 2:
        raise ValueError("needs a 2-variable polynomial")
    d = _degree_of(f, None if f else 0)
    t = Poly.var(1, 0)

    def rec(g: Poly, deg: int) -> dict:
        if g.is_zero():
            return {}
        if deg == 0:
            return {(): g.constant_value()}
        out: dict = {}
        try:
            q = exact_divide_linear(g, 0, 1)
        except DivisionError:
            raise NotInTnError("not divisible by x1 + x2") from None
        if deg % 2:
            # q(t, -t) = alpha * deg * t^(deg-1) isolates the coefficient of p_deg
            alpha = substitute(q, [t, -t]).coeff((deg - 1,)) / deg
            if alpha:
                out[(deg,)] = alpha
                try:
                    q = exact_divide_linear(g - power_sum(2, deg).scale(alpha), 0, 1)
                except DivisionError:
                    raise NotInTnError("not divisible by x1 + x2") from None
        for key, c in _times_factors(rec(q, deg - 1), (1,)).items():
            _add_into(out, key, c)
        return out

    if not is_symmetric(f):
        raise NotInTnError("not symmetric")
    return Decomposition.from_mapping(2, d, rec(f, d))


@lru_cache(maxsize=None)
def _delta_p2_power_n3(k: int) -> tuple:
    """delta * p_2^k in 3 variables as proper products, by induction on k."""
    if k == 0:
        return (((1, 1, 1), Fraction(1, 3)), ((3,), Fraction(-1, 3)))
    top = 2 * k + 3
    lhs = {(top,): Fraction(1), (1,) * top: Fraction(-1)}
    g = divide_by_delta(power_sum(3, top) - power_sum(3, 1) ** top)
    alphas = repr_in_power_sums(g).expr.terms
    a0 = Fraction(alphas.get((0, k, 0), 0))
    if not a0:
        raise InvariantViolation(f"coefficient of p_2^{k} vanished")
    acc = dict(lhs)
    for (k1, k2, k3), c in alphas.items():
        if (k1, k2, k3) == (0, k, 0):
            continue
        sub = _times_factors(dict(_delta_p2_power_n3(k2)), (1,) * k1 + (3,) * k3)
        for key, v in sub.items():
            _add_into(acc, key, -Fraction(c) * v)
    return tuple((key, v / a0) for key, v in acc.items())


def decompose_constructive_n3(f: Poly) -> Decomposition:
    """Subtract the preimage beta*p_1^d, divide by delta, and expand in p_1, p_2, p_3."""
    if f.n_vars != 3:
        raise ValueError("needs a 3-variable polynomial")
    d = _degree_of(f, None if f else 0)
    if not is_symmetric(f):
        raise NotInTnError("not symmetric")
    beta = f.coeff((d, 0, 0))
    out: dict = {}
    if beta:
        out[(1,) * d] = beta
    rest = f - power_sum(3, 1) ** d * beta
    if not rest.is_zero():
        try:
            s = divide_by_delta(rest)
        except DivisionError:
            raise NotInTnError("f - PreIm(f) is not divisible by delta") from None
        for (k1, k2, k3), c in repr_in_power_sums(s).expr.terms.items():
            sub = _times_factors(dict(_delta_p2_power_n3(k2)), (1,) * k1 + (3,) * k3)
            for key, v in sub.items():
                _add_into(out, key, Fraction(c) * v)
    return Decomposition.from_mapping(3, d, out)
