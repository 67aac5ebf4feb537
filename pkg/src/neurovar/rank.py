"""Exact Jacobian rank sampling for gauged network parameterizations.

The gauged coefficient map sends free weights to ratios of coefficient
polynomials.  Its Jacobian at a random exact point is computed by one forward
value pass (polynomials in the inputs with domain coefficients) followed by
one forward tangent pass per free weight, sharing the cached layer powers:
if F_t are the layer forms and G_t their activations, a tangent seeded at
weight (j, u, v) propagates as dF_t[i] = sum_s W_t[i][s]*d_{t-1}*
F_{t-1}[s]^(d_{t-1}-1)*dF_{t-1}[s].  The quotient rule then yields the
derivative of every dehomogenized coordinate.  Symbolic differentiation of
the full coefficient map would blow up with depth; the per-point pass stays
polynomial-sized and is validated against the symbolic route on small cases.

Rank is exact: fraction-free (Bareiss) elimination over the integers after
clearing denominators for rational matrices, ordinary elimination for prime
fields.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .domains import PrimeField, random_prime
from .errors import PivotVanishes, SamplingExhausted
from .network import (
    Architecture,
    GaugedMap,
    gauge_fix,
)
from .poly import Ring, SparsePoly, monomials_of_degree
from .theory import (
    expected_dim_general,
    expected_dim_single_output,
)

DEFAULT_TRIES = 10
DEFAULT_SEED = 1729


def derive_seed(*parts) -> int:
    """Stable 64-bit seed derived from the given parts (platform-independent)."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def auto_prime_field(seed: int) -> PrimeField:
    """The default sampling field: a random prime in [2^60, 2^62) from `seed`."""
    return PrimeField(random_prime(derive_seed(seed, "prime")))


# -- exact rank backends -------------------------------------------------------


def _rank_prime(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[col], p - 2, p)
        for i in range(rank + 1, nrows):
            ri = m[i]
            f = ri[col]
            if f:
                f = f * inv % p
                for c in range(col, ncols):
                    ri[c] = (ri[c] - f * prow[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination on an integer matrix; all divisions are exact."""
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        pv = prow[col]
        for i in range(rank + 1, nrows):
            ri = m[i]
            f = ri[col]
            for c in range(col + 1, ncols):
                ri[c] = (pv * ri[c] - f * prow[c]) // prev
            ri[col] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def exact_rank(matrix, domain) -> int:
    """Exact rank of a matrix of domain elements (rows of equal length)."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    if isinstance(domain, PrimeField):
        return _rank_prime(rows, domain.p)
    cleared = []
    for row in rows:
        denoms = [v.denominator for v in row if isinstance(v, Fraction)]
        scale = lcm(*denoms) if denoms else 1
        cleared.append([int(v * scale) for v in row])
    return _rank_bareiss(cleared)


# -- forward value and tangent passes -----------------------------------------


def _weight_values(arch: Architecture, gmap: GaugedMap, point, domain):
    """Per-layer matrices of raw domain scalars (gauged entries are 1)."""
    values = dict(zip(gmap.free_names, point))
    fixed = [set(layer) for layer in gmap.mask]
    mats = []
    for i in range(1, arch.depth + 1):
        rows = []
        for r in range(arch.widths[i]):
            row = []
            for c in range(arch.widths[i - 1]):
                if (r, c) in fixed[i - 1]:
                    row.append(domain.one)
                else:
                    row.append(values[f"w{i}_{r}_{c}"])
            rows.append(row)
        mats.append(rows)
    return mats


def _forward_cached(arch: Architecture, wvals, ring: Ring):
    """Layer forms plus the power caches needed by the tangent passes.

    Returns (outputs, powers, activated) where activated[t] holds the
    G^{(t)} vector (activated[0] being the input variables) and powers[t][s]
    is F^{(t)}_s ** (d_t - 1) for the hidden layers t = 1..L-1.
    """
    xs = [ring.var(f"x{i}") for i in range(arch.n_in)]
    activated = [xs]
    powers: list = [None]
    current = xs
    outputs = None
    for t in range(1, arch.depth + 1):
        W = wvals[t - 1]
        forms = []
        for r in range(arch.widths[t]):
            acc = ring.zero()
            for c, g in enumerate(current):
                w = W[r][c]
                if w:
                    acc = acc + g.scale(w)
            forms.append(acc)
        if t < arch.depth:
            d = arch.degrees[t - 1]
            pw = [f ** (d - 1) for f in forms]
            act = [pw[s] * forms[s] for s in range(len(forms))]
            powers.append(pw)
            activated.append(act)
            current = act
        else:
            outputs = forms
    return outputs, powers, activated


def _tangent_outputs(arch: Architecture, wvals, powers, activated, layer, row, col, ring):
    """Derivative of every output with respect to weight (layer, row, col)."""
    dom = ring.domain
    dcur = {row: activated[layer - 1][col]}
    for t in range(layer + 1, arch.depth + 1):
        d_prev = dom.from_int(arch.degrees[t - 2])
        W = wvals[t - 1]
        dnext: dict[int, SparsePoly] = {}
        for s, dpoly in dcur.items():
            dG = (powers[t - 1][s] * dpoly).scale(d_prev)
            for r in range(arch.widths[t]):
                w = W[r][s]
                if not w:
                    continue
                contrib = dG.scale(w)
                if r in dnext:
                    dnext[r] = dnext[r] + contrib
                else:
                    dnext[r] = contrib
        dcur = dnext
    zero = ring.zero()
    return [dcur.get(ell, zero) for ell in range(arch.n_out)]


@dataclass(frozen=True)
class JacobianSample:
    """One exact Jacobian evaluation: rows are the non-pivot coefficient
    ratios (output-major), columns the free weights in declaration order."""

    point: tuple
    domain: object
    matrix: tuple
    rank: int
    pivots: tuple[int, ...]
    col_layers: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        if not self.matrix:
            return (0, len(self.col_layers))
        return (len(self.matrix), len(self.matrix[0]))


def jacobian_at(gmap: GaugedMap, point, domain) -> JacobianSample:
    """Exact Jacobian of the gauged map at a point assigning all free weights.

    Raises PivotVanishes when any output's pivot coefficient is zero at the
    point; callers resample.
    """
    arch = gmap.arch
    ring = Ring([f"x{i}" for i in range(arch.n_in)], domain)
    point = tuple(point)
    wvals = _weight_values(arch, gmap, point, domain)
    outputs, powers, activated = _forward_cached(arch, wvals, ring)

    monos = monomials_of_degree(arch.n_in, arch.total_degree)
    zero = domain.zero
    coeffs = []
    piv_inv2 = []
    for ell, out in enumerate(outputs):
        vec = [out.terms.get(m, zero) for m in monos]
        cp = vec[gmap.pivots[ell]]
        if not cp:
            raise PivotVanishes(point)
        coeffs.append(vec)
        inv = domain.inv(cp)
        piv_inv2.append(domain.mul(inv, inv))

    nrows = arch.n_out * (len(monos) - 1)
    ncols = len(gmap.free_names)
    rows = [[zero] * ncols for _ in range(nrows)]
    col_layers = []
    mul = domain.mul
    sub = domain.sub

    for j, name in enumerate(gmap.free_names):
        layer_s, row_s, col_s = name[1:].split("_")
        layer = int(layer_s)
        col_layers.append(layer)
        douts = _tangent_outputs(
            arch, wvals, powers, activated, layer, int(row_s), int(col_s), ring
        )
        base = 0
        for ell in range(arch.n_out):
            dvec = [douts[ell].terms.get(m, zero) for m in monos]
            piv = gmap.pivots[ell]
            cp, dcp = coeffs[ell][piv], dvec[piv]
            inv2 = piv_inv2[ell]
            r = base
            for mi in range(len(monos)):
                if mi == piv:
                    continue
                num = sub(mul(cp, dvec[mi]), mul(coeffs[ell][mi], dcp))
                rows[r][j] = mul(num, inv2)
                r += 1
            base += len(monos) - 1

    rank = exact_rank(rows, domain) if nrows else 0
    return JacobianSample(
        point=point,
        domain=domain,
        matrix=tuple(tuple(r) for r in rows),
        rank=rank,
        pivots=gmap.pivots,
        col_layers=tuple(col_layers),
    )


# -- sampling ------------------------------------------------------------------


def sample_point(gmap: GaugedMap, domain, rng: random.Random) -> tuple:
    return tuple(domain.sample(rng) for _ in gmap.free_names)


def generic_rank(
    gmap: GaugedMap,
    tries: int = DEFAULT_TRIES,
    seed: int = DEFAULT_SEED,
    domain=None,
    rank_cap: int | None = None,
) -> tuple[int, tuple | None]:
    """Max Jacobian rank over `tries` independent samples, with its witness.

    Deterministic given the seed: trial t draws from a stream derived from
    (seed, t), so parallel and serial schedules agree and rank is monotone in
    `tries`.  Pivot failures resample without consuming a trial;
    SamplingExhausted is raised after 100*tries consecutive failures.  The
    optional `rank_cap` is a proven upper bound that allows stopping early
    (min(free weights, target dimension) is always valid).
    """
    if tries < 1:
        raise ValueError("tries must be >= 1")
    if domain is None:
        domain = auto_prime_field(seed)
    cap = min(gmap.domain_dim, gmap.target_dim)
    if rank_cap is not None:
        cap = min(cap, rank_cap)
    best_rank = 0
    witness = None
    failures = 0
    for t in range(tries):
        rng = random.Random(derive_seed(seed, "trial", t))
        while True:
            point = sample_point(gmap, domain, rng)
            try:
                sample = jacobian_at(gmap, point, domain)
                break
            except PivotVanishes:
                failures += 1
                if failures >= 100 * tries:
                    raise SamplingExhausted(
                        f"{failures} consecutive pivot failures for {gmap.arch.label()}"
                    )
        failures = 0
        if sample.rank > best_rank or witness is None:
            best_rank = sample.rank
            witness = point
        if best_rank >= cap:
            break
    return best_rank, witness


@dataclass(frozen=True)
class DimReport:
    """Dimension statistics of one architecture under one sampling run."""

    arch: Architecture
    expdim_general: int
    expdim_refined: int | None
    dim_actual: int
    fiber_dim: int
    defective: bool
    trials: int
    seed: int
    witness: tuple | None
    domain_kind: str
    prime: int | None
    pivots: tuple[int, ...]

    @property
    def expdim_applicable(self) -> int:
        return self.expdim_refined if self.expdim_refined is not None else self.expdim_general


def neurovariety_stats(
    arch: Architecture,
    tries: int = DEFAULT_TRIES,
    seed: int = DEFAULT_SEED,
    domain=None,
) -> DimReport:
    """Expected dimensions, sampled actual dimension, fiber, defectiveness.

    The defectiveness flag compares against the refined expected dimension
    for single-output networks of depth >= 2 and the general one otherwise.
    """
    if domain is None:
        domain = auto_prime_field(seed)
    gmap = gauge_fix(arch)
    expdim_gen = expected_dim_general(arch)
    refined = None
    if arch.n_out == 1 and arch.depth >= 2:
        refined = expected_dim_single_output(arch)
    dim_actual, witness = generic_rank(gmap, tries, seed, domain)
    applicable = refined if refined is not None else expdim_gen
    return DimReport(
        arch=arch,
        expdim_general=expdim_gen,
        expdim_refined=refined,
        dim_actual=dim_actual,
        fiber_dim=gmap.domain_dim - dim_actual,
        defective=dim_actual < applicable,
        trials=tries,
        seed=seed,
        witness=witness,
        domain_kind=domain.kind,
        prime=domain.p if isinstance(domain, PrimeField) else None,
        pivots=gmap.pivots,
    )


@dataclass(frozen=True)
class BlockRankReport:
    """Ranks of the Jacobian column blocks grouped by owning layer.

    `normal_rank` covers the union of layers 1..L-2, `last_rank` the final
    two layers together; under the theorem hypotheses the total splits as
    normal_rank + last_rank with each intermediate block of full size."""

    per_layer: tuple[tuple[int, int], ...]
    normal_rank: int
    last_rank: int
    total_rank: int
    sample: JacobianSample


def _columns_rank(sample: JacobianSample, layers: set[int], domain) -> int:
    cols = [j for j, l in enumerate(sample.col_layers) if l in layers]
    if not cols or not sample.matrix:
        return 0
    sub = [[row[j] for j in cols] for row in sample.matrix]
    return exact_rank(sub, domain)


def block_ranks(gmap: GaugedMap, point, domain) -> BlockRankReport:
    """Per-layer column-block ranks at one sample point."""
    sample = jacobian_at(gmap, point, domain)
    L = gmap.arch.depth
    per_layer = tuple(
        (layer, _columns_rank(sample, {layer}, domain)) for layer in range(1, L + 1)
    )
    normal = _columns_rank(sample, set(range(1, L - 1)), domain)
    last = _columns_rank(sample, {L - 1, L} if L >= 2 else {L}, domain)
    return BlockRankReport(
        per_layer=per_layer,
        normal_rank=normal,
        last_rank=last,
        total_rank=sample.rank,
        sample=sample,
    )
