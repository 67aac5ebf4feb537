"""Symbolic forward pass of a polynomial network and its coefficient maps.

A network is a width vector (n_0, ..., n_L) together with activation degrees
(d_1, ..., d_{L-1}).  Layer i applies the weight matrix W_i (shape
n_i x n_{i-1}) and, except at the last layer, raises every coordinate to the
d_i-th power.  Each output is then a homogeneous polynomial of degree
D = d_1*...*d_{L-1} in the inputs, whose coefficients are polynomials in the
weight entries.  Collecting those coefficients in lexicographic monomial order
gives the coefficient map; fixing the last column of every W_i to 1 and
dividing through by a pivot coefficient gives the affine gauged map whose
Jacobian rank measures the dimension of the network's function space.

Weight variables are named ``w{layer}_{row}_{col}`` (layer 1-based, row and
column 0-based) and inputs ``x{i}``; reports and golden files rely on this
naming being stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .domains import RATIONALS
from .errors import DegreeBelowTwo, LengthMismatch, WidthZero
from .poly import Monomial, Ring, SparsePoly, monomials_of_degree

# A gauge mask lists, per layer, the (row, col) weight positions fixed to 1.
GaugeMask = tuple[tuple[tuple[int, int], ...], ...]


@dataclass(frozen=True)
class Architecture:
    """Widths n_0..n_L and activation degrees d_1..d_{L-1}."""

    widths: tuple[int, ...]
    degrees: tuple[int, ...]

    @property
    def depth(self) -> int:
        """Number of weight layers L."""
        return len(self.widths) - 1

    @property
    def total_degree(self) -> int:
        """Output degree D = product of activation degrees (1 when L = 1)."""
        return math.prod(self.degrees)

    @property
    def n_in(self) -> int:
        return self.widths[0]

    @property
    def n_out(self) -> int:
        return self.widths[-1]

    @property
    def ambient_per_output(self) -> int:
        """Number of degree-D monomial coefficients per output."""
        return math.comb(self.n_in - 1 + self.total_degree, self.n_in - 1)

    @property
    def target_affine_dim(self) -> int:
        """Dimension of the dehomogenized target: n_L * (coefficients - 1)."""
        return self.n_out * (self.ambient_per_output - 1)

    @property
    def free_weight_count(self) -> int:
        """Free parameters under the standard gauge: sum of n_i*(n_{i-1}-1)."""
        w = self.widths
        return sum(w[i] * (w[i - 1] - 1) for i in range(1, len(w)))

    def label(self) -> str:
        n = ",".join(str(v) for v in self.widths)
        d = ",".join(str(v) for v in self.degrees)
        return f"n=({n}) d=({d})"


def validate(widths, degrees=()) -> Architecture:
    """Check the architecture invariants and return the frozen record.

    Raises WidthZero, DegreeBelowTwo, or LengthMismatch naming the offending
    index.  A two-entry width vector with no degrees is the valid L = 1
    (linear, D = 1) case.
    """
    widths = tuple(int(v) for v in widths)
    degrees = tuple(int(v) for v in degrees)
    if len(widths) < 2:
        raise LengthMismatch(len(widths), len(degrees))
    for i, w in enumerate(widths):
        if w < 1:
            raise WidthZero(i)
    if len(degrees) != len(widths) - 2:
        raise LengthMismatch(len(widths), len(degrees))
    for i, d in enumerate(degrees, start=1):
        if d < 2:
            raise DegreeBelowTwo(i)
    return Architecture(widths, degrees)


def last_column_gauge(arch: Architecture) -> GaugeMask:
    """The standard gauge: the last column of every W_i is fixed to 1."""
    return tuple(
        tuple((r, arch.widths[i - 1] - 1) for r in range(arch.widths[i]))
        for i in range(1, arch.depth + 1)
    )


def weight_name(layer: int, row: int, col: int) -> str:
    return f"w{layer}_{row}_{col}"


def weight_positions(arch: Architecture) -> list[tuple[int, int, int]]:
    """All (layer, row, col) weight positions, layer-major then row-major."""
    out = []
    for i in range(1, arch.depth + 1):
        for r in range(arch.widths[i]):
            for c in range(arch.widths[i - 1]):
                out.append((i, r, c))
    return out


def free_weight_names(arch: Architecture, mask: GaugeMask) -> tuple[str, ...]:
    """Names of weights not fixed by the gauge mask, in position order."""
    fixed = [set(layer) for layer in mask]
    names = []
    for (i, r, c) in weight_positions(arch):
        if (r, c) not in fixed[i - 1]:
            names.append(weight_name(i, r, c))
    return tuple(names)


@dataclass(frozen=True)
class WeightAssignment:
    """Per-layer matrices of ring elements, with the gauge mask that fixed them.

    Entries are SparsePoly over a common ring: symbolic variables for free
    weights, ring constants for gauged or concrete ones.
    """

    arch: Architecture
    matrices: tuple[tuple[tuple[SparsePoly, ...], ...], ...]
    mask: GaugeMask | None


def symbolic_weights(
    arch: Architecture, ring: Ring, mask: GaugeMask | None = None
) -> WeightAssignment:
    """Weight matrices of symbolic entries, masked positions set to 1."""
    fixed = [set(layer) for layer in mask] if mask is not None else None
    mats = []
    for i in range(1, arch.depth + 1):
        rows = []
        for r in range(arch.widths[i]):
            row = []
            for c in range(arch.widths[i - 1]):
                if fixed is not None and (r, c) in fixed[i - 1]:
                    row.append(ring.one())
                else:
                    row.append(ring.var(weight_name(i, r, c)))
            rows.append(tuple(row))
        mats.append(tuple(rows))
    return WeightAssignment(arch, tuple(mats), mask)


def concrete_weights(
    arch: Architecture, ring: Ring, mask: GaugeMask, values: dict[str, object]
) -> WeightAssignment:
    """Weight matrices of ring constants: gauge-fixed 1s and point values."""
    fixed = [set(layer) for layer in mask]
    mats = []
    for i in range(1, arch.depth + 1):
        rows = []
        for r in range(arch.widths[i]):
            row = []
            for c in range(arch.widths[i - 1]):
                if (r, c) in fixed[i - 1]:
                    row.append(ring.one())
                else:
                    row.append(ring.const(values[weight_name(i, r, c)]))
            rows.append(tuple(row))
        mats.append(tuple(rows))
    return WeightAssignment(arch, tuple(mats), mask)


@dataclass(frozen=True)
class LayerPolynomials:
    """All intermediate forms F_{k,j}: layers[k-1][j] for k = 1..L.

    F_{1,j} are the input linear forms; thereafter
    F_{k,j} = sum_i W_k[j][i] * F_{k-1,i}^{d_{k-1}}, so the x-degree of layer
    k is the product of the first k-1 activation degrees.
    """

    arch: Architecture
    layers: tuple[tuple[SparsePoly, ...], ...]

    @property
    def outputs(self) -> tuple[SparsePoly, ...]:
        return self.layers[-1]


def forward_layers(arch: Architecture, weights: WeightAssignment) -> LayerPolynomials:
    """Propagate the inputs through every layer symbolically."""
    ring = weights.matrices[0][0][0].ring
    current = [ring.var(f"x{i}") for i in range(arch.n_in)]
    layers = []
    for k in range(1, arch.depth + 1):
        if k >= 2:
            d = arch.degrees[k - 2]
            current = [p ** d for p in current]
        W = weights.matrices[k - 1]
        nxt = []
        for r in range(arch.widths[k]):
            acc = ring.zero()
            for c in range(arch.widths[k - 1]):
                acc = acc + W[r][c] * current[c]
            nxt.append(acc)
        layers.append(tuple(nxt))
        current = nxt
    return LayerPolynomials(arch, tuple(layers))


@dataclass(frozen=True)
class CoefficientMap:
    """Per output, the ordered vector of weight-polynomial coefficients.

    Entry j of vector l is the coefficient of the j-th degree-D monomial
    (lexicographic order) in output l, as a polynomial in all weight entries.
    """

    arch: Architecture
    monomials: tuple[Monomial, ...]
    vectors: tuple[tuple[SparsePoly, ...], ...]
    weight_ring: Ring

    @property
    def length(self) -> int:
        return len(self.monomials)


def network_ring(arch: Architecture, domain=RATIONALS) -> Ring:
    """Ring holding both input and (all) weight variables."""
    names = [f"x{i}" for i in range(arch.n_in)]
    names += [weight_name(i, r, c) for (i, r, c) in weight_positions(arch)]
    return Ring(names, domain)


def split_coefficients(
    arch: Architecture, poly: SparsePoly, weight_ring: Ring
) -> list[SparsePoly]:
    """Coefficients of the degree-D x-monomials of `poly`, as weight polynomials.

    `poly` lives in a ring whose first n_0 variables are the inputs.
    """
    n0 = arch.n_in
    monos = monomials_of_degree(n0, arch.total_degree)
    index = {m: i for i, m in enumerate(monos)}
    buckets: list[dict] = [dict() for _ in monos]
    for m, c in poly.terms.items():
        xm = m[:n0]
        wb = buckets[index[xm]]
        wm = m[n0:]
        wb[wm] = c
    return [SparsePoly(weight_ring, b) for b in buckets]


@lru_cache(maxsize=64)
def coefficient_map(arch: Architecture) -> CoefficientMap:
    """Build (and cache) the full symbolic coefficient map of an architecture."""
    ring = network_ring(arch)
    wnames = ring.names[arch.n_in :]
    wring = Ring(wnames, ring.domain)
    fl = forward_layers(arch, symbolic_weights(arch, ring))
    monos = tuple(monomials_of_degree(arch.n_in, arch.total_degree))
    vectors = tuple(
        tuple(split_coefficients(arch, out, wring)) for out in fl.outputs
    )
    return CoefficientMap(arch, monos, vectors, wring)


@dataclass(frozen=True)
class GaugedMap:
    """The affine parameterization: free weights -> non-pivot coefficient ratios.

    Per output, every coefficient is divided by the pivot coefficient (the
    lexicographically first monomial x0^D by default) after substituting the
    gauge; the pivot coordinate itself is dropped.  Domain dimension is the
    free-weight count, target dimension n_L*(binom(n_0-1+D, n_0-1)-1).
    """

    arch: Architecture
    mask: GaugeMask
    free_names: tuple[str, ...]
    pivots: tuple[int, ...]

    @property
    def domain_dim(self) -> int:
        return len(self.free_names)

    @property
    def target_dim(self) -> int:
        return self.arch.target_affine_dim

    def layer_of_column(self, col: int) -> int:
        """1-based layer owning a Jacobian column."""
        return int(self.free_names[col].split("_")[0][1:])

    def dehomogenized_symbolic(self):
        """Per output, the list of (numerator, pivot) coefficient pairs.

        Materializes the cached symbolic coefficient map with the gauge
        substituted; intended for small architectures and test oracles, not
        for the sampling path.
        """
        cmap = coefficient_map(self.arch)
        fixed = {
            weight_name(i + 1, r, c): RATIONALS.one
            for i, layer in enumerate(self.mask)
            for (r, c) in layer
        }
        gauged = [
            [s.substitute(fixed) for s in vec] for vec in cmap.vectors
        ]
        out = []
        for ell, vec in enumerate(gauged):
            piv = vec[self.pivots[ell]]
            out.append(
                [(vec[j], piv) for j in range(len(vec)) if j != self.pivots[ell]]
            )
        return out


def gauge_fix(arch: Architecture, mask: GaugeMask | None = None) -> GaugedMap:
    """Fix the gauge (standard: last columns to 1) and choose pivots.

    The pivot is the coefficient of x0^D (index 0 in lexicographic order) for
    every output; sampling resamples any point where it vanishes.
    """
    if mask is None:
        mask = last_column_gauge(arch)
    free = free_weight_names(arch, mask)
    pivots = tuple(0 for _ in range(arch.n_out))
    return GaugedMap(arch, mask, free, pivots)
