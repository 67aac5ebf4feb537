"""Arithmetic predicates for network dimensions: expected values and verdicts.

Everything here is exact integer arithmetic on the architecture data: the two
expected-dimension formulas, the per-layer room condition, the classical table
of defective Veronese secant varieties, and the combined verdict that predicts
non-defectiveness (single output) or global identifiability (multi output).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotSingleOutput
from .network import Architecture, validate

# Verdict kinds.
PREDICTED_NON_DEFECTIVE = "PredictedNonDefective"
PREDICTED_IDENTIFIABLE = "PredictedIdentifiable"
ROOM_FAILS = "RoomFails"
LAST_VERONESE_DEFECTIVE = "LastVeroneseDefective"
FILLING_CASE_UNRESOLVED = "FillingCaseUnresolved"
INCONCLUSIVE = "Inconclusive"


def expected_dim_general(arch: Architecture) -> int:
    """min(free parameter count, ambient affine dimension), any output width."""
    n = arch.widths
    params = sum(n[i] * (n[i - 1] - 1) for i in range(1, len(n)))
    ambient = arch.n_out * arch.ambient_per_output - arch.n_out
    return min(params, ambient)


def expected_dim_single_output(arch: Architecture) -> int:
    """Refined expected dimension for single-output networks of depth >= 2.

    Adds a third bound to the general formula: parameters of the layers below
    the last Veronese plus the projective dimension of the space that
    Veronese spans, binom(n_{L-2}-1+d_{L-1}, n_{L-2}-1) - 1.  The whole
    variety sits inside a family of such spans parameterized by the lower
    layers, so this bound is attained exactly when the last secant fills its
    span; counting the span's affine dimension instead would exceed the true
    dimension by one in every filling case.
    """
    if arch.n_out != 1 or arch.depth < 2:
        raise NotSingleOutput(f"architecture {arch.label()} is not single-output of depth >= 2")
    n = arch.widths
    L = arch.depth
    params = sum(n[i] * (n[i - 1] - 1) for i in range(1, L + 1))
    lower = sum(n[i] * (n[i - 1] - 1) for i in range(1, L - 1))
    span = math.comb(n[L - 2] - 1 + arch.degrees[L - 2], n[L - 2] - 1)
    ambient = arch.ambient_per_output - 1
    return min(params, lower + span - 1, ambient)


def expected_dim(arch: Architecture) -> int:
    """The applicable expected dimension: refined when n_L = 1 and L >= 2."""
    if arch.n_out == 1 and arch.depth >= 2:
        return expected_dim_single_output(arch)
    return expected_dim_general(arch)


@dataclass(frozen=True)
class LevelRoom:
    """One layer's room inequality n_{i-1}+n_i-1 < binom(n_{i-1}-1+d_i, n_{i-1}-1)."""

    layer: int
    lhs: int
    rhs: int
    holds: bool


@dataclass(frozen=True)
class RoomCheck:
    levels: tuple[LevelRoom, ...]

    @property
    def all_hold(self) -> bool:
        return all(lv.holds for lv in self.levels)

    @property
    def first_failure(self) -> int | None:
        for lv in self.levels:
            if not lv.holds:
                return lv.layer
        return None


def room_condition(arch: Architecture) -> RoomCheck:
    """Strict room inequalities for layers i = 1..L-1 (requires L >= 2)."""
    if arch.depth < 2:
        raise ValueError("room condition needs at least one hidden layer (L >= 2)")
    n = arch.widths
    levels = []
    for i in range(1, arch.depth):
        lhs = n[i - 1] + n[i] - 1
        rhs = math.comb(n[i - 1] - 1 + arch.degrees[i - 1], n[i - 1] - 1)
        levels.append(LevelRoom(i, lhs, rhs, lhs < rhs))
    return RoomCheck(tuple(levels))


def ah_secant_defective(nvars: int, deg: int, s: int) -> bool:
    """Whether Sec_s of the degree-`deg` Veronese of P^{nvars-1} is defective.

    The complete classical list of defective cases: the quadric family
    (deg 2, nvars >= 3, 2 <= s <= nvars-1) and the four sporadic triples
    (3,4,5), (4,4,9), (5,3,7), (5,4,14), all with defect exactly 1 except
    the quadrics.  Every entry is re-derivable by exact rank sampling
    (empirical_secant_dim); the cubic sporadic case in particular sits at
    secant order 7, with order 8 already filling.  Degenerate edges (linear
    span deg = 1, a single point s = 1, or a point source nvars = 1) are
    never defective.
    """
    if nvars < 1 or deg < 1 or s < 1:
        raise ValueError("nvars, deg, s must all be >= 1")
    if nvars == 1 or deg == 1 or s == 1:
        return False
    if deg == 2:
        return nvars >= 3 and 2 <= s <= nvars - 1
    return (nvars, deg, s) in {(3, 4, 5), (4, 4, 9), (5, 3, 7), (5, 4, 14)}


def expected_secant_dim(nvars: int, deg: int, s: int) -> int:
    """Expected projective dimension of Sec_s of the Veronese: min(s*nvars, B) - 1."""
    return min(s * nvars, math.comb(nvars - 1 + deg, nvars - 1)) - 1


@dataclass(frozen=True)
class Condition3:
    """Identifiability condition for n_L >= 2: the single-output companion
    architecture must have expected dimension equal to its parameter count."""

    single_output_expdim: int
    parameter_count: int

    @property
    def holds(self) -> bool:
        return self.single_output_expdim == self.parameter_count


@dataclass(frozen=True)
class Verdict:
    """Outcome of the theorem predicates, with the evidence that produced it."""

    kind: str
    failing_layer: int | None
    room: RoomCheck
    ah_query: tuple[int, int, int]
    ah_defective: bool
    condition3: Condition3 | None

    def label(self) -> str:
        if self.kind == ROOM_FAILS:
            return f"RoomFails({self.failing_layer})"
        return self.kind


def theorem_verdict(arch: Architecture) -> Verdict:
    """Evaluate the non-defectiveness / identifiability conditions.

    (i) every layer satisfies the room inequality; (ii) the last Veronese
    V^{n_{L-2}-1}_{d_{L-1}} is not n_{L-1}-defective; for n_L >= 2
    additionally (iii) the single-output companion's expected dimension
    equals its parameter count.  Room failures are reported before table
    failures.  Architectures with a width-1 hidden layer are Inconclusive:
    the last-column gauge does not cut the rescaling orbit through such a
    bottleneck, so the parameter-count bound the predicates compare against
    overcounts by one and neither direction of the prediction is sound.
    """
    if arch.depth < 2:
        raise ValueError("theorem predicates need L >= 2")
    room = room_condition(arch)
    n = arch.widths
    L = arch.depth
    ah_query = (n[L - 2], arch.degrees[L - 2], n[L - 1])
    ah_def = ah_secant_defective(*ah_query)
    if any(n[i] < 2 for i in range(1, L)):
        return Verdict(INCONCLUSIVE, None, room, ah_query, ah_def, None)

    cond3 = None
    if arch.n_out >= 2:
        companion = validate(n[:L] + (1,), arch.degrees)
        cond3 = Condition3(
            expected_dim_single_output(companion),
            companion.free_weight_count,
        )

    if not room.all_hold:
        return Verdict(ROOM_FAILS, room.first_failure, room, ah_query, ah_def, cond3)
    if ah_def:
        return Verdict(LAST_VERONESE_DEFECTIVE, None, room, ah_query, ah_def, cond3)
    if arch.n_out == 1:
        return Verdict(PREDICTED_NON_DEFECTIVE, None, room, ah_query, ah_def, cond3)
    if cond3 is not None and not cond3.holds:
        return Verdict(FILLING_CASE_UNRESOLVED, None, room, ah_query, ah_def, cond3)
    return Verdict(PREDICTED_IDENTIFIABLE, None, room, ah_query, ah_def, cond3)


def necessity_scope(arch: Architecture) -> bool:
    """Whether the necessity direction of the theorem is asserted for `arch`.

    The direction "conditions fail => defective" is claimed for single-output
    networks whose expected dimension does not exceed the ambient; since the
    expected dimension is by definition capped by the ambient, the non-vacuous
    reading is that the parameter count itself fits in a nontrivial ambient.
    """
    if arch.n_out != 1 or arch.depth < 2:
        return False
    m = arch.target_affine_dim
    return m >= 1 and arch.free_weight_count <= m
