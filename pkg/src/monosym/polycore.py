"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` maps exponent tuples to nonzero rational coefficients.
Coefficients are kept as ``int`` when integral and as
:class:`fractions.Fraction` otherwise; both compare and hash consistently, and
the public accessors always hand out ``Fraction``.

Variables are addressed by 0-based index in the API and rendered 1-based
(``x1, x2, ...``) in text.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

NEG_INF = float("-inf")


class DivisionError(ArithmeticError):
    """Exact division left a nonzero remainder."""


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction."""
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _grlex_key(exps: Exponent):
    return (sum(exps), exps)


class Poly:
    """Immutable polynomial in ``n_vars`` variables with rational coefficients."""

    __slots__ = ("n_vars", "_terms", "_sorted", "_hash")

    def __init__(self, n_vars: int, terms: Mapping[Exponent, object] | None = None, *, _trusted=False):
        if n_vars < 0:
            raise ValueError("n_vars must be nonnegative")
        self.n_vars = n_vars
        self._sorted = None
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars:
                raise ValueError(f"exponent {exps} has wrong length for n_vars={n_vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _norm(as_rational(c)) if not isinstance(c, int) else c
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self._terms = {k: _norm(v) for k, v in clean.items() if v}

    # construction helpers

    @classmethod
    def _raw(cls, n_vars: int, terms: dict) -> "Poly":
        return cls(n_vars, terms, _trusted=True)

    @classmethod
    def zero(cls, n_vars: int) -> "Poly":
        return cls._raw(n_vars, {})

    @classmethod
    def const(cls, n_vars: int, c) -> "Poly":
        c = _norm(as_rational(c))
        return cls._raw(n_vars, {(0,) * n_vars: c} if c else {})

    @classmethod
    def var(cls, n_vars: int, k: int) -> "Poly":
        if not 0 <= k < n_vars:
            raise IndexError(f"variable index {k} out of range for n_vars={n_vars}")
        e = [0] * n_vars
        e[k] = 1
        return cls._raw(n_vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    # inspection

    @property
    def terms(self) -> Mapping[Exponent, object]:
        return MappingProxyType(self._terms)

    def items(self):
        """Terms in graded-lex order, highest first, coefficients as Fraction."""
        return [(e, Fraction(self._terms[e])) for e in self.sorted_exponents()]

    def sorted_exponents(self) -> list[Exponent]:
        if self._sorted is None:
            self._sorted = sorted(self._terms, key=_grlex_key, reverse=True)
        return self._sorted

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return Fraction(self._terms.get(tuple(exps), 0))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = self.sorted_exponents()[0]
        return e, Fraction(self._terms[e])

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        return Fraction(self._terms.get((0,) * self.n_vars, 0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degree(self):
        """Total degree; the zero polynomial has degree ``NEG_INF``."""
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def degree_in(self, k: int) -> int:
        return max((e[k] for e in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly._raw(self.n_vars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def homogeneous_components(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Poly._raw(self.n_vars, t) for d, t in sorted(parts.items())}

    # arithmetic

    def _check(self, other: "Poly"):
        if self.n_vars != other.n_vars:
            raise ValueError(f"variable-count mismatch: {self.n_vars} vs {other.n_vars}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (Rational, str)):
            return Poly.const(self.n_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Poly._raw(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = _norm(as_rational(c))
        if not c:
            return Poly.zero(self.n_vars)
        return Poly._raw(self.n_vars, {e: _norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Rational, str)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return Poly.zero(self.n_vars)
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Poly._raw(self.n_vars, {e: _norm(c) for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (Rational, str)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (Rational, str)):
            return self.scale(1 / as_rational(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.n_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n_vars == other.n_vars and self._terms == other._terms
        if isinstance(other, Rational):
            return self == Poly.const(self.n_vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self._terms.items())))
        return self._hash

    # evaluation and relabeling

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n_vars:
            raise ValueError(f"point has length {len(point)}, expected {self.n_vars}")
        pt = [as_rational(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = Fraction(c)
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def permute(self, perm: Sequence[int]) -> "Poly":
        """Relabel variables: variable ``k`` becomes variable ``perm[k]``."""
        n = self.n_vars
        if sorted(perm) != list(range(n)):
            raise ValueError(f"not a permutation of range({n}): {perm!r}")
        out = {}
        for e, c in self._terms.items():
            f = [0] * n
            for k, x in enumerate(e):
                f[perm[k]] = x
            out[tuple(f)] = c
        return Poly._raw(n, out)

    # text

    def render(self, names: Sequence[str] | None = None) -> str:
        return render(self, names)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly({self.n_vars}, {render(self)!r})"


def render_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_terms(terms: Iterable[tuple[str, Fraction]]) -> str:
    """Join ``(monomial text, coefficient)`` pairs as ``c*mono +/- ...``."""
    out = []
    for mono, c in terms:
        sign = "-" if c < 0 else "+"
        body = format_rational(abs(c))
        if mono:
            body = f"{body}*{mono}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out) if out else "0"


def default_names(n: int) -> list[str]:
    return [f"x{k + 1}" for k in range(n)]


def render(p: Poly, names: Sequence[str] | None = None) -> str:
    """Canonical text form, e.g. ``3*x1^2*x2 - 1/2*x3 + 5``."""
    names = list(names) if names is not None else default_names(p.n_vars)
    return render_terms((render_monomial(e, names), c) for e, c in p.items())


# functional API


def add(a: Poly, b: Poly) -> Poly:
    a._check(b)
    return a + b


def mul(a: Poly, b: Poly) -> Poly:
    a._check(b)
    return a * b


def eval_at(p: Poly, point: Sequence) -> Fraction:
    return p.evaluate(point)


def permute_vars(p: Poly, perm: Sequence[int]) -> Poly:
    return p.permute(perm)


def total_degree(p: Poly):
    return p.degree()


def homogeneous_component(p: Poly, d: int) -> Poly:
    return p.homogeneous_component(d)


def is_homogeneous(p: Poly) -> bool:
    return p.is_homogeneous()


def embed(p: Poly, new_n: int) -> Poly:
    """Pad exponent vectors with zeros so ``p`` lives in ``new_n`` variables."""
    if new_n < p.n_vars:
        raise ValueError("embed cannot drop variables")
    pad = (0,) * (new_n - p.n_vars)
    return Poly._raw(new_n, {e + pad: c for e, c in p._terms.items()})


def _as_single_term(q: Poly):
    if len(q._terms) == 1:
        (e, c), = q._terms.items()
        return e, c
    return None


def substitute(p: Poly, images: Sequence[Poly]) -> Poly:
    """Ring homomorphism sending variable ``k`` of ``p`` to ``images[k]``."""
    if len(images) != p.n_vars:
        raise ValueError(f"need {p.n_vars} images, got {len(images)}")
    if p.n_vars == 0:
        raise ValueError("substitution into a 0-variable polynomial needs a target ring; use embed")
    m = images[0].n_vars
    for q in images:
        if q.n_vars != m:
            raise ValueError("all images must share one variable set")

    singles = [_as_single_term(q) for q in images]
    if all(s is not None or q.is_zero() for s, q in zip(singles, images)):
        return _substitute_monomial(p, singles, m)

    powers: list[dict[int, Poly]] = [{} for _ in images]

    def power(k, e):
        cache = powers[k]
        if e not in cache:
            cache[e] = images[k] ** e
        return cache[e]

    out: dict = {}
    for e, c in p._terms.items():
        term = Poly.const(m, c)
        for k, x in enumerate(e):
            if x:
                term = term * power(k, x)
                if not term._terms:
                    break
        for f, v in term._terms.items():
            out[f] = out.get(f, 0) + v
    return Poly._raw(m, {f: _norm(v) for f, v in out.items() if v})


def _substitute_monomial(p: Poly, singles, m: int) -> Poly:
    out: dict = {}
    for e, c in p._terms.items():
        f = [0] * m
        coef = c
        for k, x in enumerate(e):
            if not x:
                continue
            s = singles[k]
            if s is None:
                coef = 0
                break
            g, gc = s
            if gc != 1:
                coef = coef * gc ** x
            for idx, y in enumerate(g):
                if y:
                    f[idx] += y * x
        if coef:
            key = tuple(f)
            out[key] = out.get(key, 0) + coef
    return Poly._raw(m, {f: _norm(v) for f, v in out.items() if v})


def exact_divide_linear(p: Poly, k: int, l: int) -> Poly:
    """Exact quotient of ``p`` by ``x_k + x_l`` (0-based indices, ``k != l``).

    Synthetic division in ``x_k`` by the root ``x_k = -x_l``, with coefficients
    in the remaining variables. Raises :class:`DivisionError` on a nonzero
    remainder.
    """
    n = p.n_vars
    if k == l or not (0 <= k < n and 0 <= l < n):
        raise ValueError(f"bad linear factor indices ({k}, {l}) for n_vars={n}")
    if not p._terms:
        return p
    # group by exponent of x_k; coefficient polys keyed by exps with x_k zeroed
    groups: dict[int, dict] = {}
    for e, c in p._terms.items():
        rest = e[:k] + (0,) + e[k + 1:]
        groups.setdefault(e[k], {})[rest] = c
    top = max(groups)
    quotient: dict = {}
    carry: dict = {}  # b_e, the quotient coefficient at x_k^e
    for deg in range(top, 0, -1):
        # b_{deg-1} = a_deg - x_l * b_deg
        a = groups.get(deg, {})
        b = dict(a)
        for rest, c in carry.items():
            shifted = rest[:l] + (rest[l] + 1,) + rest[l + 1:]
            v = b.get(shifted, 0) - c
            if v:
                b[shifted] = v
            else:
                b.pop(shifted, None)
        for rest, c in b.items():
            quotient[rest[:k] + (deg - 1,) + rest[k + 1:]] = _norm(c)
        carry = b
    remainder = dict(groups.get(0, {}))
    for rest, c in carry.items():
        shifted = rest[:l] + (rest[l] + 1,) + rest[l + 1:]
        v = remainder.get(shifted, 0) - c
        if v:
            remainder[shifted] = v
        else:
            remainder.pop(shifted, None)
    if remainder:
        raise DivisionError(f"not divisible by x{k + 1} + x{l + 1}")
    return Poly._raw(n, quotient)


# JSON interchange


def to_json_obj(p: Poly) -> dict:
    return {
        "n": p.n_vars,
        "terms": [{"coef": format_rational(c), "exps": list(e)} for e, c in p.items()],
    }


def from_json_obj(obj: Mapping) -> Poly:
    n = int(obj["n"])
    terms: dict = {}
    for t in obj["terms"]:
        e = tuple(t["exps"])
        if e in terms:
            raise ValueError(f"duplicate exponent {e}")
        terms[e] = as_rational(t["coef"])
    return Poly(n, terms)


def dumps(p: Poly) -> str:
    return json.dumps(to_json_obj(p))


def loads(s: str) -> Poly:
    return from_json_obj(json.loads(s))
