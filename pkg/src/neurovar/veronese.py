"""Composite Veronese maps, image relations, secant dimensions, power independence.

A composite Veronese is the chain of power maps nu_{e_m} o ... o nu_{e_1},
realized stage by stage as "all monomials of degree e_t in the previous
stage's coordinates".  The linear forms vanishing on its image are computed
by evaluating the chain at more random points than the ambient has
coordinates and taking the kernel of the evaluation matrix; only the linear
stratum of the ideal is needed, so no elimination theory is involved.

Secant dimensions of single Veronese varieties reuse the network rank
machinery: the width-(n, s, 1) depth-2 architecture with activation degree d
parameterizes exactly the s-term power sums of linear forms, so its sampled
Jacobian rank is the projective dimension of the secant variety.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .domains import RATIONALS, Rationals
from .errors import AmbientTooLarge, ProportionalPair
from .network import gauge_fix, validate
from .poly import Monomial, Ring, SparsePoly, monomials_of_degree
from .rank import DEFAULT_SEED, DEFAULT_TRIES, auto_prime_field, derive_seed, generic_rank

AMBIENT_CAP = 100_000


@dataclass(frozen=True)
class CompositeVeronese:
    """The coefficient map of a chain of Veronese embeddings.

    stage_monomials[t] lists the degree-e_{t+1} monomials in the stage-t
    coordinates; dims[t] is the coordinate count after t stages (dims[0] is
    the source variable count).
    """

    nvars: int
    degrees: tuple[int, ...]
    stage_monomials: tuple[tuple[Monomial, ...], ...]
    dims: tuple[int, ...]

    @property
    def ambient(self) -> int:
        """Coordinate count of the final stage."""
        return self.dims[-1]

    def evaluate(self, point, domain):
        """Map a source point through every stage; exact in the domain."""
        values = list(point)
        if len(values) != self.nvars:
            raise ValueError("point length must equal the source variable count")
        for monos in self.stage_monomials:
            nxt = []
            for m in monos:
                term = domain.one
                for e, v in zip(m, values):
                    for _ in range(e):
                        term = domain.mul(term, v)
                nxt.append(term)
            values = nxt
        return values


def composite_veronese(nvars: int, degrees, cap: int = AMBIENT_CAP) -> CompositeVeronese:
    """Build the chain nu_{e_m} o ... o nu_{e_1} on `nvars` source variables."""
    if nvars < 2:
        raise ValueError("composite Veronese needs at least 2 source variables")
    degrees = tuple(int(e) for e in degrees)
    if not degrees or any(e < 2 for e in degrees):
        raise ValueError("all Veronese degrees must be >= 2")
    dims = [nvars]
    stages = []
    for e in degrees:
        monos = monomials_of_degree(dims[-1], e)
        if len(monos) > cap:
            raise AmbientTooLarge(
                f"stage ambient {len(monos)} exceeds the cap {cap}"
            )
        stages.append(tuple(monos))
        dims.append(len(monos))
    return CompositeVeronese(nvars, degrees, tuple(stages), tuple(dims))


def _nullspace(rows: list[list], domain) -> list[list]:
    """Reduced basis of {v : A v = 0} over a field, deterministic echelon form."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    nrows = len(m)
    pivots = []
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
        inv = domain.inv(m[rank][col])
        m[rank] = [domain.mul(v, inv) for v in m[rank]]
        prow = m[rank]
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [domain.sub(a, domain.mul(f, b)) for a, b in zip(m[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        v = [domain.zero] * ncols
        v[fc] = domain.one
        for r, pc in enumerate(pivots):
            v[pc] = domain.neg(m[r][fc])
        basis.append(v)
    return basis


def image_linear_relations(
    cv: CompositeVeronese,
    oversample: int | None = None,
    seed: int = DEFAULT_SEED,
    domain=RATIONALS,
) -> list[SparsePoly]:
    """Basis of the linear forms vanishing on the image of the composite map.

    Evaluates the chain at `oversample` random source points (default:
    ambient + 10, and at least ambient + 1) and returns the kernel of the
    evaluation matrix as linear forms in coordinates z0..z_{ambient-1}.  The
    kernel is re-verified at fresh random points before returning.
    """
    ambient = cv.ambient
    if oversample is None:
        oversample = ambient + 10
    if oversample < ambient + 1:
        raise ValueError("oversample must be at least ambient + 1")
    rng = random.Random(derive_seed(seed, "relations"))
    if isinstance(domain, Rationals):
        def draw():
            return [domain.from_int(rng.randint(-99, 99)) for _ in range(cv.nvars)]
    else:
        def draw():
            return [domain.sample(rng) for _ in range(cv.nvars)]

    rows = [cv.evaluate(draw(), domain) for _ in range(oversample)]
    kernel = _nullspace(rows, domain)

    ring = Ring([f"z{i}" for i in range(ambient)], domain)
    basis = []
    for vec in kernel:
        terms = {}
        for i, c in enumerate(vec):
            if c:
                exp = [0] * ambient
                exp[i] = 1
                terms[tuple(exp)] = c
        basis.append(SparsePoly(ring, terms))

    for _ in range(50):
        img = cv.evaluate(draw(), domain)
        for form in basis:
            val = form.eval(img)
            if val:
                raise AssertionError("computed relation does not vanish on the image")
    return basis


def empirical_secant_dim(
    nvars: int,
    deg: int,
    s: int,
    tries: int = DEFAULT_TRIES,
    seed: int = DEFAULT_SEED,
    domain=None,
) -> int:
    """Sampled projective dimension of Sec_s of the degree-`deg` Veronese.

    Routed through the depth-2 network machinery: the (nvars, s, 1)
    architecture with activation degree `deg` parameterizes s-term sums of
    d-th powers of linear forms, and the gauged Jacobian rank at a random
    point equals the projective secant dimension.
    """
    if s < 1:
        raise ValueError("secant order s must be >= 1")
    arch = validate((nvars, s, 1), (deg,))
    if domain is None:
        domain = auto_prime_field(seed)
    rank, _ = generic_rank(gauge_fix(arch), tries=tries, seed=seed, domain=domain)
    return rank


@dataclass(frozen=True)
class PowerInstance:
    """Homogeneous forms p_1..p_k of one degree, to be raised to the r-th power."""

    forms: tuple[SparsePoly, ...]
    power: int


def _proportional(u: dict, v: dict, monos, domain) -> bool:
    """Whether two coefficient vectors are proportional (all 2x2 minors zero)."""
    for i in range(len(monos)):
        for j in range(i + 1, len(monos)):
            a = u.get(monos[i], domain.zero)
            b = u.get(monos[j], domain.zero)
            c = v.get(monos[i], domain.zero)
            d = v.get(monos[j], domain.zero)
            if domain.sub(domain.mul(a, d), domain.mul(b, c)):
                return False
    return True


def power_independence(inst: PowerInstance) -> tuple[bool, int]:
    """Whether p_1^r, ..., p_k^r are linearly independent, with the exact rank.

    Raises ProportionalPair if two input forms are linearly dependent (the
    instance precondition), detected through 2x2 minors of their coefficient
    vectors.
    """
    forms = inst.forms
    if not forms:
        return True, 0
    ring = forms[0].ring
    domain = ring.domain
    s = forms[0].total_degree()
    monos = monomials_of_degree(ring.nvars, s)
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            if _proportional(forms[i].terms, forms[j].terms, monos, domain):
                raise ProportionalPair(i, j)
    target = monomials_of_degree(ring.nvars, s * inst.power)
    from .rank import exact_rank

    rows = []
    for p in forms:
        q = p ** inst.power
        rows.append([q.terms.get(m, domain.zero) for m in target])
    rank = exact_rank(rows, domain)
    return rank == len(forms), rank


@dataclass(frozen=True)
class PowerScanReport:
    """Outcome of repeated random power-independence trials."""

    nvars: int
    count: int
    form_degree: int
    power: int
    trials: int
    independent: int
    min_powers: tuple[int, ...] | None

    @property
    def all_independent(self) -> bool:
        return self.independent == self.trials


def _random_instance(nvars, count, form_degree, domain, rng) -> list[SparsePoly]:
    """Random pairwise non-proportional forms of the given degree."""
    ring = Ring([f"z{i}" for i in range(nvars)], domain)
    monos = monomials_of_degree(nvars, form_degree)
    forms: list[SparsePoly] = []
    while len(forms) < count:
        terms = {}
        for m in monos:
            c = domain.sample(rng)
            if c:
                terms[m] = c
        cand = SparsePoly(ring, terms)
        if not terms:
            continue
        if any(_proportional(cand.terms, f.terms, monos, domain) for f in forms):
            continue
        forms.append(cand)
    return forms


def power_threshold_scan(
    nvars: int,
    count: int,
    form_degree: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    power: int | None = None,
    find_min_power: bool = False,
) -> PowerScanReport:
    """Test independence of k-th powers on random instances.

    By default checks the power r = count - 1 (the proven threshold); with
    `find_min_power` it also records, per instance, the least r at which the
    powers become independent (linear scan from 1).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if power is None:
        power = count - 1
    domain = auto_prime_field(derive_seed(seed, "power-domain"))
    independent = 0
    mins: list[int] = []
    for t in range(trials):
        rng = random.Random(derive_seed(seed, "power", t))
        forms = _random_instance(nvars, count, form_degree, domain, rng)
        ok, _ = power_independence(PowerInstance(tuple(forms), power))
        if ok:
            independent += 1
        if find_min_power:
            r = 1
            while True:
                got, _ = power_independence(PowerInstance(tuple(forms), r))
                if got:
                    mins.append(r)
                    break
                r += 1
    return PowerScanReport(
        nvars=nvars,
        count=count,
        form_degree=form_degree,
        power=power,
        trials=trials,
        independent=independent,
        min_powers=tuple(mins) if find_min_power else None,
    )
