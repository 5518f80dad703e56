"""Amenable delta-rank machinery: translation defects of finitely supported
weight functions, brute-force minimum-support rank search backed by exact
linear programming, and the constructive Folner-set upper bounds (intervals,
lattice parallelepipeds, convolution towers).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .groups import (
    AbelianAutomorphism,
    AbelianElement,
    FgAbelianGroup,
    IntMatrix,
    InternalInvariantError,
    ShapeError,
)
from .growth import SumsetCapError
from .simplex import solve_lp

FLOAT_MARGIN = 1e-9
SUM_TOLERANCE = 1e-12


class RankSearchExhausted(ArithmeticError):
    """No support inside the search ball achieved the requested defect."""


class DegenerateBasisError(ValueError):
    """Parallelepiped basis vectors are linearly dependent."""


class AdaptedBasisError(ArithmeticError):
    """No numerically validated eigen-adapted basis could be produced."""


def exact_delta(delta) -> Fraction:
    """Reads a threshold exactly. Floats are taken at their shortest decimal
    spelling (0.1 means 1/10, not the nearest binary double)."""
    if isinstance(delta, Fraction):
        return delta
    if isinstance(delta, int):
        return Fraction(delta)
    if isinstance(delta, float):
        return Fraction(str(delta))
    return Fraction(delta)


# --- weighted functions ----------------------------------------------------


@dataclass(frozen=True)
class WeightedFunction:
    """A normalized nonnegative weight function with finite support.

    Weights are exact rationals unless any input was a float, in which case
    the whole function is flagged inexact and sums are checked to 1e-12.
    """

    group: FgAbelianGroup
    support: tuple[AbelianElement, ...]
    weights: tuple
    exact: bool = True

    def __post_init__(self):
        if len(self.support) != len(self.weights):
            raise ShapeError("support and weights must be parallel")
        if not self.support:
            raise ValueError("support must be nonempty")
        for e in self.support:
            if e.group != self.group:
                raise ShapeError("support element outside the group")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support contains duplicates")
        exact = all(isinstance(w, (int, Fraction)) for w in self.weights)
        if exact:
            ws = tuple(Fraction(w) for w in self.weights)
            if any(w <= 0 for w in ws):
                raise ValueError("weights must be positive on the support")
            if sum(ws) != 1:
                raise ValueError("weights must sum to 1 exactly")
        else:
            ws = tuple(float(w) for w in self.weights)
            if any(w <= 0 for w in ws):
                raise ValueError("weights must be positive on the support")
            if abs(sum(ws) - 1.0) > SUM_TOLERANCE:
                raise ValueError("float weights must sum to 1 within 1e-12")
        order = sorted(range(len(self.support)), key=lambda i: self.support[i].key())
        object.__setattr__(self, "support", tuple(self.support[i] for i in order))
        object.__setattr__(self, "weights", tuple(ws[i] for i in order))
        object.__setattr__(self, "exact", exact)

    @classmethod
    def uniform(cls, group: FgAbelianGroup, elements: Iterable[AbelianElement]) -> "WeightedFunction":
        elems = list(dict.fromkeys(elements))
        n = len(elems)
        if n == 0:
            raise ValueError("uniform weighting needs a nonempty set")
        return cls(group, tuple(elems), (Fraction(1, n),) * n)

    @classmethod
    def point_mass(cls, element: AbelianElement) -> "WeightedFunction":
        return cls(element.group, (element,), (Fraction(1),))

    def value_map(self) -> dict:
        return dict(zip(self.support, self.weights))

    def translate(self, shift: AbelianElement) -> "WeightedFunction":
        return WeightedFunction(
            self.group,
            tuple(e + shift for e in self.support),
            self.weights,
        )

    def __call__(self, g: AbelianElement):
        zero = Fraction(0) if self.exact else 0.0
        return self.value_map().get(g, zero)


def defect(t: WeightedFunction, omega: Sequence[AbelianElement]):
    """max over s in omega of the l1 distance between T and its s-translate,
    sum_g |T(g - s) - T(g)|. Exact when the weights are rational."""
    if not omega:
        raise ValueError("omega must be nonempty")
    for s in omega:
        if s.group != t.group:
            raise ShapeError("shift outside the function's group")
    val = t.value_map()
    zero = Fraction(0) if t.exact else 0.0
    worst = zero
    for s in omega:
        keys = set(t.support) | {e + s for e in t.support}
        total = zero
        for g in keys:
            total += abs(val.get(g - s, zero) - val.get(g, zero))
        if total > worst:
            worst = total
    return worst


def convolution(f: WeightedFunction, g: WeightedFunction, cap: Optional[int] = None) -> WeightedFunction:
    """(f * g)(x) = sum_h f(h) g(x - h); the result is again normalized
    because both inputs are."""
    if f.group != g.group:
        raise ShapeError("convolution of functions on different groups")
    exact = f.exact and g.exact
    zero = Fraction(0) if exact else 0.0
    acc: dict = {}
    for a, wa in zip(f.support, f.weights):
        for b, wb in zip(g.support, g.weights):
            x = a + b
            acc[x] = acc.get(x, zero) + wa * wb
        if cap is not None and len(acc) > cap:
            raise SumsetCapError(cap, len(acc))
    support = tuple(acc.keys())
    weights = tuple(acc[x] for x in support)
    return WeightedFunction(f.group, support, weights, exact=exact)


def _transport(f: WeightedFunction, auto: AbelianAutomorphism) -> WeightedFunction:
    """f composed with auto^-1, i.e. the weights pushed forward along auto."""
    return WeightedFunction(
        f.group,
        tuple(auto.apply(e) for e in f.support),
        f.weights,
        exact=f.exact,
    )


def convolution_tower(
    f: WeightedFunction,
    gamma: AbelianAutomorphism,
    n: int,
    omega: Optional[Sequence[AbelianElement]] = None,
    cap: Optional[int] = 5_000_000,
) -> WeightedFunction:
    """f * (f . gamma^-1) * ... * (f . gamma^-(n-1)).

    The support is the iterated sumset of supp(f) under gamma, and each shift
    in omega union gamma(omega) union ... keeps a defect no worse than the
    corresponding shift of the base function (checked when omega is given).
    """
    if gamma.group != f.group:
        raise ShapeError("automorphism and function live on different groups")
    if n < 1:
        raise ValueError("n must be at least 1")
    result = f
    pushed = f
    for _ in range(1, n):
        pushed = _transport(pushed, gamma)
        result = convolution(result, pushed, cap=cap)
    if omega is not None:
        base = defect(f, omega)
        slack = 0 if result.exact else SUM_TOLERANCE
        spread = list(omega)
        layer = list(omega)
        for _ in range(1, n):
            layer = [gamma.apply(s) for s in layer]
            spread.extend(layer)
        for s in spread:
            d = defect(result, [s])
            if d > base + slack:
                raise InternalInvariantError(
                    f"tower defect {d} exceeds base defect {base} at shift {s}"
                )
    return result


def sqrt_overlap_check(t: WeightedFunction, h: AbelianElement) -> tuple[float, float, bool]:
    """Squared deviation of the square-root overlap sum from 1 is bounded by
    the translation defect: |1 - sum_g sqrt(T(g) T(g-h))|^2 <= defect(T, {h}).
    Returns (lhs, rhs, holds) with a 1e-12 float cushion."""
    if h.group != t.group:
        raise ShapeError("shift outside the function's group")
    val = t.value_map()
    overlap = 0.0
    for g, w in zip(t.support, t.weights):
        other = val.get(g - h)
        if other is not None:
            overlap += math.sqrt(float(w) * float(other))
    lhs = (1.0 - overlap) ** 2
    rhs = float(defect(t, [h]))
    return lhs, rhs, lhs <= rhs + 1e-12


# --- rank search -----------------------------------------------------------


@dataclass(frozen=True)
class RankCertificate:
    """Minimal support cardinality achieving defect < delta inside the search
    ball, together with the witness that achieves it."""

    rank: int
    witness: WeightedFunction
    defect: float
    delta: float
    omega: tuple[AbelianElement, ...]
    search_radius: int
    exhaustive_within_radius: bool
    exact: bool = True
    defect_exact: Optional[Fraction] = field(default=None, compare=False)


def _shift_structure(support: Sequence, shifted: Sequence) -> tuple[list, list, list]:
    """Index bookkeeping for one shift: pairs (i, j) with shifted[i] ==
    support[j], source indices leaving the support, and target indices not
    reached. The defect of T under this shift is
    sum_pairs |T_i - T_j| + sum_solo_src T_i + sum_solo_dst T_j."""
    index = {g: j for j, g in enumerate(support)}
    hit = set()
    pairs = []
    solo_src = []
    for i, sh in enumerate(shifted):
        j = index.get(sh)
        if j is None:
            solo_src.append(i)
        else:
            pairs.append((i, j))
            hit.add(j)
    solo_dst = [j for j in range(len(support)) if j not in hit]
    return pairs, solo_src, solo_dst


def _min_defect_lp(k: int, structures: Sequence[tuple[list, list, list]]):
    """Minimize the max translation defect over weights on a k-point support:
    variables are the k weights, one absolute-difference bound per overlap
    pair per shift, and the defect bound itself."""
    pair_vars = []
    offset = k
    for pairs, _, _ in structures:
        slots = []
        for (i, j) in pairs:
            if i == j:
                slots.append(None)
            else:
                slots.append(offset)
                offset += 1
        pair_vars.append(slots)
    t_var = offset
    nvars = t_var + 1

    objective = [Fraction(0)] * nvars
    objective[t_var] = Fraction(1)
    eq = [[Fraction(1)] * k + [Fraction(0)] * (nvars - k)]
    eq_rhs = [Fraction(1)]

    ub = []
    ub_rhs = []
    for (pairs, solo_src, solo_dst), slots in zip(structures, pair_vars):
        row = [Fraction(0)] * nvars
        for (i, j), slot in zip(pairs, slots):
            if slot is None:
                continue
            up = [Fraction(0)] * nvars
            up[i] += 1
            up[j] -= 1
            up[slot] = Fraction(-1)
            down = [Fraction(0)] * nvars
            down[i] -= 1
            down[j] += 1
            down[slot] = Fraction(-1)
            ub.append(up)
            ub_rhs.append(Fraction(0))
            ub.append(down)
            ub_rhs.append(Fraction(0))
            row[slot] = Fraction(1)
        for i in solo_src:
            row[i] += 1
        for j in solo_dst:
            row[j] += 1
        row[t_var] = Fraction(-1)
        ub.append(row)
        ub_rhs.append(Fraction(0))
    result = solve_lp(objective, eq, eq_rhs, ub, ub_rhs)
    return result.value, result.x[:k]


def _coordinate_symmetries(group: FgAbelianGroup, omega: Sequence[AbelianElement]):
    """Lattice-coordinate permutations that fix omega setwise; used to skip
    support sets that are relabelings of ones already tested."""
    p = group.rank
    if p < 2:
        return []
    omega_keys = frozenset(e.key() for e in omega)
    out = []
    for perm in itertools.permutations(range(p)):
        if perm == tuple(range(p)):
            continue
        mapped = frozenset(
            AbelianElement(group, tuple(e.lattice[i] for i in perm), e.torsion).key()
            for e in omega
        )
        if mapped == omega_keys:
            out.append(perm)
    return out


def _apply_perm(e: AbelianElement, perm: tuple[int, ...]) -> AbelianElement:
    return AbelianElement(e.group, tuple(e.lattice[i] for i in perm), e.torsion)


def _run_length_infeasible(support_set: set, omega: Sequence[AbelianElement], delta: Fraction) -> bool:
    """Sound pruning: walking a support along an acyclic shift splits it into
    runs, and any normalized weighting pays at least 2/run along the longest
    run (climb to the peak and back down). When that floor already meets
    delta, no LP is needed."""
    for s in omega:
        if all(c == 0 for c in s.lattice):
            continue
        starts = [g for g in support_set if g - s not in support_set]
        longest = 0
        for g in starts:
            length = 0
            cur = g
            while cur in support_set:
                length += 1
                cur = cur + s
            longest = max(longest, length)
        if longest and Fraction(2, longest) >= delta:
            return True
    return False


def min_rank_bruteforce(
    group: FgAbelianGroup,
    omega: Sequence[AbelianElement],
    delta,
    radius: int,
    max_support: Optional[int] = None,
    exact: Optional[bool] = None,
    candidates: Optional[Sequence[AbelianElement]] = None,
    analytic_prune: bool = True,
) -> RankCertificate:
    """Smallest support size admitting a normalized weighting whose defect
    under every shift in omega stays below delta, searched over supports
    containing 0 inside the sup-norm ball of the given radius.

    Supports are enumerated by cardinality and then lexicographically, so the
    returned witness is the canonical first success. Containing 0 loses no
    generality: translating a support translates the weighting and leaves
    every defect unchanged.
    """
    omega = list(omega)
    if not omega:
        raise ValueError("omega must be nonempty")
    for s in omega:
        if s.group != group:
            raise ShapeError("omega element outside the group")
    delta_frac = exact_delta(delta)
    if delta_frac <= 0:
        raise ValueError("delta must be positive")
    if radius < 1:
        raise ValueError("radius must be at least 1")

    zero = group.zero()
    using_default_ball = candidates is None
    pool = group.ball(radius) if using_default_ball else list(candidates)
    if zero not in pool:
        raise ValueError("candidate set must contain 0")
    rest = sorted((e for e in set(pool) if e != zero), key=lambda e: e.key())
    if max_support is None:
        max_support = len(rest) + 1
    if max_support < 1:
        raise ValueError("max_support must be at least 1")
    small_ball = len(rest) + 1 <= 40

    symmetries = _coordinate_symmetries(group, omega) if using_default_ball else []

    for k in range(1, max_support + 1):
        exact_k = (k <= 12 and small_ball) if exact is None else exact
        for combo in itertools.combinations(rest, k - 1):
            support = [zero, *combo]
            if symmetries:
                keys = tuple(sorted(e.key() for e in support))
                canonical = min(
                    (
                        tuple(sorted(_apply_perm(e, perm).key() for e in support))
                        for perm in symmetries
                    ),
                    default=keys,
                )
                if canonical < keys:
                    continue
            support_set = set(support)
            if analytic_prune and _run_length_infeasible(support_set, omega, delta_frac):
                continue
            structures = [
                _shift_structure(support, [g + s for g in support]) for s in omega
            ]
            optimum, raw_weights = _min_defect_lp(len(support), structures)
            accepted = (
                optimum < delta_frac
                if exact_k
                else float(optimum) <= float(delta_frac) - FLOAT_MARGIN
            )
            if not accepted:
                continue
            if any(w <= 0 for w in raw_weights):
                raise InternalInvariantError(
                    "zero weight in a minimal-cardinality witness; a smaller "
                    "support would have been feasible"
                )
            weights = raw_weights if exact_k else tuple(float(w) for w in raw_weights)
            witness = WeightedFunction(group, tuple(support), tuple(weights))
            achieved = defect(witness, omega)
            if exact_k and achieved != optimum:
                raise InternalInvariantError(
                    f"witness defect {achieved} disagrees with LP optimum {optimum}"
                )
            return RankCertificate(
                rank=k,
                witness=witness,
                defect=float(optimum),
                delta=float(delta_frac),
                omega=tuple(omega),
                search_radius=radius,
                exhaustive_within_radius=True,
                exact=exact_k,
                defect_exact=optimum if exact_k else None,
            )
    raise RankSearchExhausted(
        f"no support of size <= {max_support} within radius {radius} achieves "
        f"defect < {delta}; retry with a larger radius"
    )


def min_rank_table(
    elements: Sequence,
    multiply: Callable,
    identity,
    omega: Sequence,
    delta,
    max_support: Optional[int] = None,
) -> tuple[int, dict]:
    """Rank search over an explicit finite group given by a multiplication
    table. Left translation replaces lattice shifts; everything else is the
    same exact LP. Returns the rank and the witness weight map."""
    omega = list(omega)
    if not omega:
        raise ValueError("omega must be nonempty")
    delta_frac = exact_delta(delta)
    if delta_frac <= 0:
        raise ValueError("delta must be positive")
    pool = sorted((e for e in set(elements) if e != identity), key=repr)
    if max_support is None:
        max_support = len(pool) + 1
    for k in range(1, max_support + 1):
        for combo in itertools.combinations(pool, k - 1):
            support = [identity, *combo]
            structures = [
                _shift_structure(support, [multiply(s, g) for g in support])
                for s in omega
            ]
            optimum, weights = _min_defect_lp(len(support), structures)
            if optimum < delta_frac:
                return k, dict(zip(support, weights))
    raise RankSearchExhausted(
        f"no support of size <= {max_support} in the finite group achieves "
        f"defect < {delta}"
    )


# --- Folner constructions --------------------------------------------------


def choose_folner_constant(p: int, delta) -> int:
    """Smallest integer C > 3 with ((C-2)/(C+1))^p > 1 - delta/2, decided in
    exact rational arithmetic."""
    if p < 1:
        raise ValueError("p must be at least 1")
    target = 1 - exact_delta(delta) / 2
    c = 4
    while Fraction(c - 2, c + 1) ** p <= target:
        c += 1
    return c


def _fraction_matrix_inverse(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise DegenerateBasisError("basis vectors are linearly dependent")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class Parallelepiped:
    """Region {sum s_i v_i : |s_i| <= t} spanned by rational basis vectors,
    with exact membership tests for integer points."""

    basis: tuple[tuple[Fraction, ...], ...]
    t: Fraction = Fraction(1)

    def __post_init__(self):
        vs = tuple(tuple(Fraction(x) for x in v) for v in self.basis)
        p = len(vs)
        if p == 0 or any(len(v) != p for v in vs):
            raise ShapeError("basis must be square: p vectors of length p")
        t = exact_delta(self.t) if not isinstance(self.t, Fraction) else self.t
        if t <= 0:
            raise ValueError("half-width must be positive")
        object.__setattr__(self, "basis", vs)
        object.__setattr__(self, "t", t)
        columns = [[vs[i][j] for i in range(p)] for j in range(p)]
        object.__setattr__(self, "_inverse", tuple(
            tuple(row) for row in _fraction_matrix_inverse(columns)
        ))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, x: Sequence) -> tuple[Fraction, ...]:
        p = self.dimension
        if len(x) != p:
            raise ShapeError("point has the wrong dimension")
        xs = [Fraction(v) for v in x]
        return tuple(
            sum(self._inverse[i][j] * xs[j] for j in range(p)) for i in range(p)
        )

    def contains(self, x: Sequence, scale: Fraction = Fraction(1)) -> bool:
        bound = self.t * scale
        return all(abs(c) <= bound for c in self.coordinates(x))

    def includes_unit_cube(self) -> bool:
        """Whether the sup-norm unit cube sits inside the t = 1 region, i.e.
        every row of the inverse basis matrix has absolute sum <= 1."""
        return all(sum(abs(c) for c in row) <= 1 for row in self._inverse)

    def lattice_points(self, scale: Fraction = Fraction(1)) -> list[tuple[int, ...]]:
        """All integer points of the region scaled to half-width t * scale,
        via an exact bounding box and membership filter."""
        p = self.dimension
        bound = self.t * scale
        box = []
        for j in range(p):
            reach = bound * sum(abs(v[j]) for v in self.basis)
            box.append(range(-math.floor(reach), math.floor(reach) + 1))
        return [x for x in itertools.product(*box) if self.contains(x, scale)]


def interval_folner(halfwidth: int) -> WeightedFunction:
    """Uniform weights on the integer interval [-halfwidth, halfwidth]."""
    if halfwidth < 0:
        raise ValueError("halfwidth must be nonnegative")
    group = FgAbelianGroup(rank=1)
    return WeightedFunction.uniform(
        group, [group.element((i,)) for i in range(-halfwidth, halfwidth + 1)]
    )


def parallelepiped_folner(chi: Parallelepiped, c: int) -> WeightedFunction:
    """Uniform weights on the integer points of the parallelepiped scaled to
    half-width C. The basis must contain the unit cube at half-width 1 for
    the defect guarantee to apply."""
    if c < 1:
        raise ValueError("C must be a positive integer")
    if not chi.includes_unit_cube():
        raise DegenerateBasisError(
            "basis does not contain the unit sup-norm cube at half-width 1"
        )
    points = chi.lattice_points(Fraction(c, 1) / chi.t)
    group = FgAbelianGroup(rank=chi.dimension)
    return WeightedFunction.uniform(group, [group.element(x) for x in points])


def symmetric_difference_ratio(points: Iterable[tuple], shift: tuple) -> Fraction:
    """|(x + P) symmetric-difference P| / |P| for a finite set of integer
    tuples P and a shift x."""
    base = set(points)
    if not base:
        raise ValueError("point set must be nonempty")
    moved = {tuple(a + b for a, b in zip(pt, shift)) for pt in base}
    return Fraction(len(base ^ moved), len(base))


def adapted_basis(
    matrix: IntMatrix,
    epsilon: float,
    n_range: tuple[int, int] = (5, 15),
) -> Parallelepiped:
    """Basis along the (real forms of the) eigendirections of the matrix,
    scaled so the unit cube fits at half-width 1.

    Contract, checked numerically rather than proven: for every vertex x of
    the half-width-1 region and every n in n_range, the coordinates of
    matrix^n x stay within (1+epsilon)^n |lambda_i|^n. Requires a
    diagonalizable matrix; defective ones are rejected.
    """
    import numpy as np

    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n_lo, n_hi = n_range
    if n_lo < 1 or n_hi < n_lo:
        raise ValueError("n_range must be a nonempty positive range")
    p = matrix.dim
    a = np.array(matrix.entries, dtype=float)
    try:
        eigvals, eigvecs = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise AdaptedBasisError(f"eigendecomposition failed: {exc}") from exc

    cols: list[np.ndarray] = []
    moduli: list[float] = []
    used = [False] * p
    for i in range(p):
        if used[i]:
            continue
        lam = eigvals[i]
        vec = eigvecs[:, i]
        if abs(lam.imag) < 1e-12:
            v = vec.real
            norm = np.max(np.abs(v))
            if norm < 1e-12:
                raise AdaptedBasisError("vanishing eigenvector")
            cols.append(v / norm)
            moduli.append(abs(lam.real))
            used[i] = True
        else:
            # Conjugate pair: span the invariant 2-plane by real and
            # imaginary parts, consuming the partner eigenvalue.
            partner = next(
                (
                    j
                    for j in range(i + 1, p)
                    if not used[j] and abs(eigvals[j] - lam.conjugate()) < 1e-8
                ),
                None,
            )
            if partner is None:
                raise AdaptedBasisError("unpaired complex eigenvalue")
            for v in (vec.real, vec.imag):
                norm = np.max(np.abs(v))
                if norm < 1e-12:
                    raise AdaptedBasisError("vanishing eigenvector component")
                cols.append(v / norm)
                moduli.append(abs(lam))
            used[i] = used[partner] = True

    b = np.column_stack(cols)
    if abs(np.linalg.det(b)) < 1e-9:
        raise AdaptedBasisError(
            "eigenvectors do not span: matrix is not (numerically) diagonalizable"
        )
    row_sum = np.max(np.sum(np.abs(np.linalg.inv(b)), axis=1))
    b = b * (row_sum * (1 + 1e-9))

    basis = tuple(tuple(Fraction(float(b[j, i])) for j in range(p)) for i in range(p))
    chi = Parallelepiped(basis)
    if not chi.includes_unit_cube():
        raise AdaptedBasisError("scaling failed to capture the unit cube")

    binv = np.linalg.inv(b)
    vertices = [
        b @ np.array(signs, dtype=float) for signs in itertools.product((-1.0, 1.0), repeat=p)
    ]
    power = np.linalg.matrix_power(a, n_lo - 1)
    for n in range(n_lo, n_hi + 1):
        power = power @ a
        for x in vertices:
            coords = binv @ (power @ x)
            for i, c in enumerate(coords):
                allowed = (1 + epsilon) ** n * max(moduli[i], 1e-300) ** n
                if abs(c) > allowed * (1 + 1e-7):
                    raise AdaptedBasisError(
                        f"adapted-basis contract failed at n={n}, axis {i}: "
                        f"|coordinate| {abs(c):.6g} exceeds {allowed:.6g}"
                    )
    return chi
