"""Sparse multivariate polynomial arithmetic over an exact coefficient domain.

A polynomial is a map from exponent tuples to nonzero domain elements:

    x0^2*x1 + 3  ->  {(2, 1): 1, (0, 0): 3}

Zero coefficients are never stored, so two polynomials are equal exactly when
their term maps are equal.  Monomials are compared lexicographically on the
exponent tuple (x0 before x1 before ...), which for a fixed total degree gives
the order [x^d, x^(d-1)y, ..., y^d] used everywhere in this package for
coefficient indexing.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .domains import RATIONALS

Monomial = tuple[int, ...]


def monomials_of_degree(nvars: int, deg: int) -> list[Monomial]:
    """All exponent tuples of total degree `deg` in `nvars` variables, lex order.

    The list has length binom(nvars-1+deg, nvars-1) and starts at x0^deg,
    ending at x_{nvars-1}^deg.  Lexicographic order on exponent tuples is
    descending tuple order: (deg,0,..) first.
    """
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    if deg < 0:
        raise ValueError("deg must be >= 0")
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    out.sort(reverse=True)
    return out


class Ring:
    """A polynomial ring with named variables over an exact domain.

    Variable order is the tuple order of `names`; it fixes the exponent-tuple
    layout and therefore the lexicographic monomial order.
    """

    __slots__ = ("names", "domain", "_index")

    def __init__(self, names: Sequence[str], domain=RATIONALS):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.domain = domain
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, var: str) -> int:
        return self._index[var]

    def zero(self) -> "SparsePoly":
        return SparsePoly(self, {})

    def one(self) -> "SparsePoly":
        return SparsePoly(self, {(0,) * self.nvars: self.domain.one})

    def const(self, value) -> "SparsePoly":
        if not value:
            return self.zero()
        return SparsePoly(self, {(0,) * self.nvars: value})

    def const_int(self, n: int) -> "SparsePoly":
        return self.const(self.domain.from_int(n))

    def var(self, name: str) -> "SparsePoly":
        exp = [0] * self.nvars
        exp[self._index[name]] = 1
        return SparsePoly(self, {tuple(exp): self.domain.one})

    def poly(self, terms: Mapping[Monomial, object]) -> "SparsePoly":
        """Build a polynomial from a term map, dropping zero coefficients."""
        return SparsePoly(self, {m: c for m, c in terms.items() if c})

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and other.names == self.names
            and other.domain == self.domain
        )

    def __hash__(self):
        return hash((self.names, self.domain))

    def __repr__(self):
        return f"Ring({list(self.names)}, {self.domain!r})"


class SparsePoly:
    """Immutable sparse polynomial; do not mutate `terms` after construction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        dom = self.ring.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = dom.add(out[m], c)
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return SparsePoly(self.ring, out)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        dom = self.ring.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = dom.sub(out[m], c)
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = dom.neg(c)
        return SparsePoly(self.ring, out)

    def __neg__(self) -> "SparsePoly":
        neg = self.ring.domain.neg
        return SparsePoly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        dom = self.ring.domain
        mul = dom.mul
        add = dom.add
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(map(int.__add__, ma, mb))
                prev = get(m)
                if prev is None:
                    out[m] = mul(ca, cb)
                else:
                    out[m] = add(prev, mul(ca, cb))
        for m in [m for m, c in out.items() if not c]:
            del out[m]
        return SparsePoly(self.ring, out)

    def scale(self, c) -> "SparsePoly":
        """Multiply by a domain scalar."""
        if not c:
            return self.ring.zero()
        mul = self.ring.domain.mul
        return SparsePoly(self.ring, {m: mul(cv, c) for m, cv in self.terms.items()})

    def __pow__(self, e: int) -> "SparsePoly":
        return poly_pow(self, e)

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries -------------------------------------------------------------

    def total_degree(self) -> int:
        """Max term degree; 0 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, var_indices: Iterable[int]) -> int:
        """Max combined degree over the given variable positions."""
        idx = tuple(var_indices)
        return max((sum(m[i] for i in idx) for m in self.terms), default=0)

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, self.ring.domain.zero)

    def terms_sorted(self) -> list[tuple[Monomial, object]]:
        """Terms in canonical (lexicographically descending) order."""
        return sorted(self.terms.items(), reverse=True)

    # -- calculus and specialization ------------------------------------------

    def partial(self, var: str | int) -> "SparsePoly":
        """Formal partial derivative with respect to one variable."""
        i = var if isinstance(var, int) else self.ring.index(var)
        dom = self.ring.domain
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            coeff = dom.mul(c, dom.from_int(e))
            if dm in out:
                coeff = dom.add(out[dm], coeff)
            if coeff:
                out[dm] = coeff
            elif dm in out:
                del out[dm]
        return SparsePoly(self.ring, out)

    def eval(self, point):
        """Evaluate at a full assignment (dict name->value or sequence by index)."""
        dom = self.ring.domain
        if isinstance(point, Mapping):
            values = [point[n] for n in self.ring.names]
        else:
            values = list(point)
            if len(values) != self.ring.nvars:
                raise ValueError("point length does not match variable count")
        total = dom.zero
        for m, c in self.terms.items():
            term = c
            for e, v in zip(m, values):
                if e:
                    term = dom.mul(term, _power(dom, v, e))
            total = dom.add(total, term)
        return total

    def substitute(self, assignment: Mapping[str, object]) -> "SparsePoly":
        """Specialize a subset of variables to domain values.

        The result lives in the same ring with the substituted variables no
        longer occurring.
        """
        dom = self.ring.domain
        idx_val = {self.ring.index(n): v for n, v in assignment.items()}
        out: dict = {}
        for m, c in self.terms.items():
            coeff = c
            newm = list(m)
            for i, v in idx_val.items():
                e = m[i]
                if e:
                    coeff = dom.mul(coeff, _power(dom, v, e))
                    newm[i] = 0
            if not coeff:
                continue
            key = tuple(newm)
            if key in out:
                s = dom.add(out[key], coeff)
                if s:
                    out[key] = s
                else:
                    del out[key]
            else:
                out[key] = coeff
        return SparsePoly(self.ring, out)

    def map_to(self, ring: Ring, rename: Mapping[str, str] | None = None) -> "SparsePoly":
        """Re-express in another ring over the same domain.

        Every variable occurring here must map to a variable of the target
        ring (identity names by default).
        """
        if ring.domain != self.ring.domain:
            raise ValueError("map_to requires identical coefficient domains")
        src = self.ring.names
        pos = []
        for n in src:
            target = rename.get(n, n) if rename else n
            pos.append(ring._index.get(target, -1))
        out: dict = {}
        for m, c in self.terms.items():
            exp = [0] * ring.nvars
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if pos[i] < 0:
                    raise ValueError(f"variable {src[i]} has no image in target ring")
                exp[pos[i]] = e
            out[tuple(exp)] = c
        return SparsePoly(ring, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms_sorted():
            factors = [
                f"{n}^{e}" if e > 1 else n
                for n, e in zip(self.ring.names, m)
                if e
            ]
            mono = "*".join(factors) if factors else "1"
            parts.append(f"{c}*{mono}" if factors else f"{c}")
        return " + ".join(parts)


def _power(dom, value, e: int):
    """Repeated-squaring power of a domain element."""
    result = dom.one
    base = value
    while e:
        if e & 1:
            result = dom.mul(result, base)
        base = dom.mul(base, base)
        e >>= 1
    return result


def poly_pow(p: SparsePoly, e: int) -> SparsePoly:
    """p**e by binary exponentiation; p**0 is 1."""
    if e < 0:
        raise ValueError("exponent must be >= 0")
    result = p.ring.one()
    base = p
    while e:
        if e & 1:
            result = result * base
        if e > 1:
            base = base * base
        e >>= 1
    return result


def poly_partial(p: SparsePoly, var: str | int) -> SparsePoly:
    """Formal partial derivative (module-level alias of SparsePoly.partial)."""
    return p.partial(var)


def poly_eval(p: SparsePoly, point):
    """Exact evaluation at a point assigning every ring variable."""
    return p.eval(point)
