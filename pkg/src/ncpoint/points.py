"""Truncated point modules as projective point sequences.

Conventions (pinned here and relied on by every check):

* A sequence of d points encodes a module with d+1 one-dimensional
  components, one point per action step; "module length" always means
  d + 1.
* Left modules with x_j . m_i = p^{(i+1)}_j m_{i+1}: a word acts
  rightmost letter first, so a word w = x_{j_1} ... x_{j_e} applied at
  window i contributes  c_w * prod_{t=1..e} p^{(i+t)}_{j_{e+1-t}}.
* Points are stored up to scale with the first nonzero coordinate
  normalized to 1.

Propagation works over Q, and over Q(t) for generic arguments: a fiber
of projective dimension one is parametrized as b0 + t b1 (plus the
point b1 itself), and every pivot met while eliminating over Q(t)
contributes its rational roots as special values that are re-checked
numerically over Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .freealg import NCPoly, Presentation
from .linalg import Matrix, kernel_basis, kernel_basis_tracking_pivots
from .scalars import (
    SpecializationError,
    scalar_to_str,
    denominator_poly,
    numerator_poly,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    T,
    uses_t,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

Point = tuple


class SamplingError(RuntimeError):
    """Module sampling found nothing from any seed."""


def normalize_point(vec):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    vec = tuple(vec)
    lead = None
    for c in vec:
        if c:
            lead = c
            break
    if lead is None:
        return None
    return tuple(c / lead for c in vec)


def coordinate_points(k: int):
    return [normalize_point(tuple(_ONE if i == j else _ZERO for j in range(k)))
            for i in range(k)]


def random_rational_point(k: int, rng: Random, span: int = 99) -> Point:
    while True:
        vec = tuple(Fraction(rng.randint(-span, span)) for _ in range(k))
        p = normalize_point(vec)
        if p is not None:
            return p


def generic_point(k: int) -> Point:
    """(1 : t : t^2 : ...) - a generic parameter curve through P^(k-1)."""
    coords = [_ONE]
    cur = _ONE
    for _ in range(k - 1):
        cur = cur * T
        coords.append(cur)
    return tuple(coords)


def points_use_t(pts) -> bool:
    return any(uses_t(c) for p in pts for c in p)


# ---------------------------------------------------------------------------
# multilinear window evaluation
# ---------------------------------------------------------------------------

def window_value(poly: NCPoly, pts, i: int):
    """Evaluate a homogeneous polynomial's multilinear window starting at i."""
    total = _ZERO
    for w, c in poly.terms.items():
        e = len(w)
        prod = c
        for step in range(e):
            prod = prod * pts[i + step][w[e - 1 - step]]
            if not prod:
                break
        total = total + prod
    return total


def is_truncated_point_module(pres: Presentation, pts):
    """All relation windows vanish exactly; returns (ok, first violation).

    The violation is (relation index, window start) or None.
    """
    pts = [tuple(p) for p in pts]
    for p in pts:
        if normalize_point(p) is None:
            raise ValueError("points must be nonzero")
        if len(p) != pres.num_generators:
            raise ValueError("point arity does not match the generator count")
    for ridx, f in enumerate(pres.relations):
        e = f.degree()
        for i in range(0, len(pts) - e + 1):
            if window_value(f, pts, i):
                return False, (ridx, i)
    return True, None


@dataclass
class ProjLinearFiber:
    """Solution subspace for the next point of a sequence."""

    basis: list
    special_values: list = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.basis

    @property
    def proj_dim(self) -> int:
        return len(self.basis) - 1  # -1 signals the empty fiber


def extension_fiber(pres: Presentation, pts) -> ProjLinearFiber:
    """Kernel of the window constraints ending at the new position.

    Over Q(t) the fiber also carries the special rational t-values where
    the constraint matrix may drop rank.
    """
    k = pres.num_generators
    rows = []
    d1 = len(pts) + 1
    for f in pres.relations:
        e = f.degree()
        i = d1 - e
        if i < 0:
            continue
        row = [_ZERO] * k
        for w, c in f.terms.items():
            prod = c
            for step in range(e - 1):
                prod = prod * pts[i + step][w[e - 1 - step]]
                if not prod:
                    break
            if prod:
                row[w[0]] = row[w[0]] + prod
        rows.append(row)
    if not rows:
        basis = [list(p) for p in coordinate_points(k)]
        return ProjLinearFiber(basis)
    mat = Matrix(rows, ncols=k)
    if any(uses_t(e) for row in rows for e in row):
        basis, specials = kernel_basis_tracking_pivots(mat)
        return ProjLinearFiber(basis, specials)
    return ProjLinearFiber(kernel_basis(mat))


def g_action_scalars(pres: Presentation, g: NCPoly, pts):
    """The scalars lambda_{i+n} with g . m_i = lambda_{i+n} m_{i+n}."""
    n = g.degree()
    if n is None or n < 1:
        raise ValueError("g must be homogeneous of degree >= 1")
    d = len(pts)
    if d < n:
        raise ValueError(f"sequence of {d} points is too short for deg g = {n}")
    return [window_value(g, pts, i) for i in range(0, d - n + 1)]


def is_g_torsionfree_truncated(pres: Presentation, g: NCPoly, pts) -> bool:
    return all(lam for lam in g_action_scalars(pres, g, pts))


# ---------------------------------------------------------------------------
# specialization of Q(t) sequences
# ---------------------------------------------------------------------------

def _poly_lcm(a, b):
    g = poly_gcd(a, b)
    return poly_mul(a, poly_divmod(b, g)[0])


def specialize_point(p, value: Fraction):
    """Evaluate a projective point at t = value (clearing denominators first)."""
    common = (_ONE,)
    for c in p:
        common = _poly_lcm(common, denominator_poly(c))
    coords = []
    for c in p:
        num = numerator_poly(c)
        extra = poly_divmod(common, denominator_poly(c))[0]
        coords.append(poly_eval(poly_mul(num, extra), value))
    return normalize_point(coords)


def specialize_points(pts, value: Fraction):
    """Specialize a whole sequence; None when any point degenerates to zero."""
    out = []
    for p in pts:
        sp = specialize_point(p, value)
        if sp is None:
            return None
        out.append(sp)
    return out


def despecialize_free_values(pts, polys_to_avoid, max_tries: int = 64):
    """Pick a rational t making every avoided polynomial nonzero, and
    substitute it into the sequence.  Returns None if nothing works."""
    candidates = [Fraction(v) for v in
                  [1, 2, 3, -1, -2, 5, 7, -3, 11, 13] + list(range(17, 17 + max_tries))]
    for value in candidates:
        if any(poly_eval(poly, value) == 0 for poly in polys_to_avoid if poly):
            continue
        try:
            sp = specialize_points(pts, value)
        except SpecializationError:
            continue
        if sp is not None:
            return sp
    return None


# ---------------------------------------------------------------------------
# candidate generation inside a fiber
# ---------------------------------------------------------------------------

@dataclass
class EngineFlags:
    generic: bool = True
    fiber_sample_count: int = 6
    max_fiber_dim: int = 4


def _fiber_candidates(fiber: ProjLinearFiber, pts, flags: EngineFlags, rng: Random):
    """Candidate next points plus an exhaustiveness verdict.

    Exhaustive cases: the empty fiber, a projective point, and a pencil
    parametrized generically as b0 + t b1 together with b1 (valid when
    the sequence is still t-free).
    """
    basis = fiber.basis
    if not basis:
        return [], True
    if len(basis) == 1:
        return [normalize_point(basis[0])], True
    if flags.generic and len(basis) == 2 and not points_use_t(pts):
        b0, b1 = basis
        generic = normalize_point([a + T * b for a, b in zip(b0, b1)])
        return [generic, normalize_point(b1)], True
    cands = []
    seen = set()
    for b in basis:
        p = normalize_point(b)
        if p is not None and p not in seen:
            seen.add(p)
            cands.append(p)
    tries = 0
    while len(cands) < flags.fiber_sample_count and tries < 8 * flags.fiber_sample_count:
        tries += 1
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in basis]
        vec = [sum((c * b[i] for c, b in zip(coeffs, basis)), _ZERO)
               for i in range(len(basis[0]))]
        p = normalize_point(vec)
        if p is not None and p not in seen:
            seen.add(p)
            cands.append(p)
    return cands, False


# ---------------------------------------------------------------------------
# torsionfree search
# ---------------------------------------------------------------------------

@dataclass
class TorsionfreeReport:
    length: int
    found: list | None = None
    found_seed: str = ""
    seeds_tried: dict = field(default_factory=dict)
    fiber_dims_seen: set = field(default_factory=set)
    special_values: list = field(default_factory=list)
    sampled_not_exhaustive: bool = False
    budget_events: int = 0

    def record_special(self, values):
        for v in values:
            if v not in self.special_values:
                self.special_values.append(v)

    def lines(self):
        out = [f"target module length: {self.length}"]
        for kind, count in self.seeds_tried.items():
            out.append(f"seeds ({kind}): {count}")
        out.append("fiber projective dimensions met: "
                   + (", ".join(str(d) for d in sorted(self.fiber_dims_seen)) or "none"))
        out.append("special t values branched numerically: "
                   + (", ".join(str(v) for v in sorted(self.special_values)) or "none"))
        if self.sampled_not_exhaustive:
            out.append("warning: a positive-dimensional fiber was sampled, not exhausted")
        if self.budget_events:
            out.append(f"budget: {self.budget_events} fibers exceeded the dimension bound")
        if self.found is None:
            out.append("result: empty (no truncated g-torsionfree module found)")
        else:
            out.append(f"result: found from seed {self.found_seed}")
        return out


def _lambda_avoid_polys(pres, g, pts):
    polys = []
    for lam in g_action_scalars(pres, g, pts):
        polys.append(numerator_poly(lam))
    for p in pts:
        for c in p:
            polys.append(denominator_poly(c))
    return polys


def _torsionfree_dfs(pres, g, pts, target, n, flags, rng, report):
    d = len(pts)
    if d >= n:
        lams = g_action_scalars(pres, g, pts)
        if any(not lam for lam in lams):
            return None
    if d == target:
        if not points_use_t(pts):
            ok, _ = is_truncated_point_module(pres, pts)
            return list(pts) if ok and is_g_torsionfree_truncated(pres, g, pts) else None
        concrete = despecialize_free_values(pts, _lambda_avoid_polys(pres, g, pts))
        if concrete is None:
            return None
        ok, _ = is_truncated_point_module(pres, concrete)
        if ok and is_g_torsionfree_truncated(pres, g, concrete):
            return concrete
        return None
    fiber = extension_fiber(pres, pts)
    report.fiber_dims_seen.add(fiber.proj_dim)
    if fiber.proj_dim > flags.max_fiber_dim:
        report.budget_events += 1
        return None
    candidates, exhaustive = _fiber_candidates(fiber, pts, flags, rng)
    if not exhaustive and candidates:
        report.sampled_not_exhaustive = True
    for cand in candidates:
        found = _torsionfree_dfs(pres, g, list(pts) + [cand], target, n,
                                 flags, rng, report)
        if found is not None:
            return found
    if fiber.special_values and points_use_t(pts):
        report.record_special(fiber.special_values)
        for value in fiber.special_values:
            specialized = specialize_points(pts, value)
            if specialized is None:
                continue
            ok, _ = is_truncated_point_module(pres, specialized)
            if not ok:
                continue
            found = _torsionfree_dfs(pres, g, specialized, target, n,
                                     flags, rng, report)
            if found is not None:
                return found
    return None


def torsionfree_search(pres: Presentation, g: NCPoly, length: int, *,
                       random_seeds: int = 0, generic: bool = True,
                       seed: int = 0, flags: EngineFlags | None = None) -> TorsionfreeReport:
    """Depth-first search for a truncated g-torsionfree module of the
    given module length, over coordinate seeds, random rational seeds,
    and optionally the generic Q(t) seed."""
    n = g.degree()
    if n is None or n < 1:
        raise ValueError("g must be homogeneous of degree >= 1")
    if length < n + 1:
        raise ValueError(f"module length must be at least n + 1 = {n + 1}")
    flags = flags or EngineFlags(generic=generic)
    flags.generic = generic
    rng = Random(seed)
    k = pres.num_generators
    target = length - 1
    report = TorsionfreeReport(length=length)
    seeds = [("coordinate", p) for p in coordinate_points(k)]
    seeds += [("random", random_rational_point(k, rng)) for _ in range(random_seeds)]
    if generic:
        seeds.append(("generic", generic_point(k)))
    counts = {}
    for kind, seed_pt in seeds:
        counts[kind] = counts.get(kind, 0) + 1
        found = _torsionfree_dfs(pres, g, [seed_pt], target, n, flags, rng, report)
        if found is not None:
            report.found = found
            report.found_seed = f"{kind} {format_point(seed_pt)}"
            break
    report.seeds_tried = counts
    return report


def format_point(p) -> str:
    return "(" + ":".join(scalar_to_str(c) for c in p) + ")"


def format_points(pts) -> str:
    return " ".join(format_point(p) for p in pts)


# ---------------------------------------------------------------------------
# module sampling
# ---------------------------------------------------------------------------

def _sample_dfs(pres, pts, target, flags, rng, depth_budget):
    if len(pts) == target:
        if points_use_t(pts):
            avoid = [denominator_poly(c) for p in pts for c in p]
            concrete = despecialize_free_values(pts, avoid)
            if concrete is None:
                return None
            ok, _ = is_truncated_point_module(pres, concrete)
            return concrete if ok else None
        return list(pts)
    if depth_budget[0] <= 0:
        return None
    depth_budget[0] -= 1
    fiber = extension_fiber(pres, pts)
    if fiber.proj_dim > flags.max_fiber_dim:
        return None
    candidates, _ = _fiber_candidates(fiber, pts, flags, rng)
    rng.shuffle(candidates)
    for cand in candidates:
        found = _sample_dfs(pres, list(pts) + [cand], target, flags, rng, depth_budget)
        if found is not None:
            return found
    if fiber.special_values and points_use_t(pts):
        values = list(fiber.special_values)
        rng.shuffle(values)
        for value in values:
            specialized = specialize_points(pts, value)
            if specialized is None:
                continue
            ok, _ = is_truncated_point_module(pres, specialized)
            if not ok:
                continue
            found = _sample_dfs(pres, specialized, target, flags, rng,
                                depth_budget)
            if found is not None:
                return found
    return None


def sample_modules(pres: Presentation, num_points: int, count: int,
                   rng: Random, flags: EngineFlags | None = None,
                   max_attempts: int | None = None):
    """Up to `count` valid point sequences of the given length, found by
    seeded propagation from random starting points."""
    flags = flags or EngineFlags()
    out = []
    seen = set()
    attempts = 0
    limit = max_attempts if max_attempts is not None else 20 * count + 50
    k = pres.num_generators
    while len(out) < count and attempts < limit:
        attempts += 1
        seed_pt = random_rational_point(k, rng)
        found = _sample_dfs(pres, [seed_pt], num_points, flags, rng, [64])
        if found is None:
            continue
        key = tuple(tuple(p) for p in found)
        if key in seen:
            continue
        seen.add(key)
        out.append(found)
    return out


# ---------------------------------------------------------------------------
# skew point variety
# ---------------------------------------------------------------------------

def skew_point_variety(omega):
    """Maximal coordinate supports without a bad triple.

    A support S is admissible when no i < j < l in S has
    omega_ij * omega_jl != omega_il; the point variety is the union of
    the coordinate subspaces P(S) over the returned maximal supports.
    """
    k = len(omega)
    if k < 2:
        raise ValueError("need at least two generators")
    for row in omega:
        if len(row) != k:
            raise ValueError("omega must be square")
    for i in range(k):
        if omega[i][i] != 1:
            raise ValueError("omega must have unit diagonal")
        for j in range(k):
            if not omega[i][j] or omega[i][j] * omega[j][i] != 1:
                raise ValueError("omega must satisfy omega_ij * omega_ji = 1")
    if k == 2:
        return [frozenset({0, 1})]

    def extensions(support, start):
        """Grow admissible supports by appending indices above `start`."""
        results = [frozenset(support)]
        for nxt in range(start, k):
            ok = True
            for a_pos in range(len(support)):
                for b_pos in range(a_pos + 1, len(support)):
                    i, j = support[a_pos], support[b_pos]
                    if omega[i][j] * omega[j][nxt] != omega[i][nxt]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                results.extend(extensions(support + [nxt], nxt + 1))
        return results

    all_good = set()
    for first in range(k):
        all_good.update(extensions([first], first + 1))
    all_good.add(frozenset())
    maximal = [s for s in all_good
               if not any(s < other for other in all_good)]
    return sorted(maximal, key=lambda s: (len(s), sorted(s)), reverse=True)


# ---------------------------------------------------------------------------
# point-set comparison and stabilization evidence
# ---------------------------------------------------------------------------

@dataclass
class CompareReport:
    num_points: int
    left_sampled: int = 0
    right_sampled: int = 0
    left_only: list = field(default_factory=list)
    right_only: list = field(default_factory=list)

    @property
    def left_only_count(self) -> int:
        return len(self.left_only)

    @property
    def right_only_count(self) -> int:
        return len(self.right_only)

    def lines(self):
        out = [f"sequence length compared: {self.num_points}",
               f"left modules sampled: {self.left_sampled}",
               f"right modules sampled: {self.right_sampled}",
               f"left-only (fail on the right): {self.left_only_count}",
               f"right-only (fail on the left): {self.right_only_count}"]
        for pts in self.left_only[:3]:
            out.append(f"  left-only example: {format_points(pts)}")
        for pts in self.right_only[:3]:
            out.append(f"  right-only example: {format_points(pts)}")
        return out


def compare_point_sets(pres_left: Presentation, pres_right: Presentation,
                       num_points: int, samples: int, rng: Random,
                       flags: EngineFlags | None = None) -> CompareReport:
    """Sample truncated modules of each presentation and cross-check
    membership in the other; counts the one-sided failures."""
    if pres_left.num_generators != pres_right.num_generators:
        raise ValueError("presentations must share the generator count")
    report = CompareReport(num_points=num_points)
    left = sample_modules(pres_left, num_points, samples, rng, flags)
    right = sample_modules(pres_right, num_points, samples, rng, flags)
    if not left or not right:
        raise SamplingError("sampling failure: a side produced no modules")
    report.left_sampled = len(left)
    report.right_sampled = len(right)
    for pts in left:
        ok, _ = is_truncated_point_module(pres_right, pts)
        if not ok:
            report.left_only.append(pts)
    for pts in right:
        ok, _ = is_truncated_point_module(pres_left, pts)
        if not ok:
            report.right_only.append(pts)
    return report


@dataclass
class StabilizeReport:
    per_length: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(row["positive_dim"] == 0 and row["shift_failures"] == 0
                   for row in self.per_length.values())

    def lines(self):
        out = []
        for d, row in sorted(self.per_length.items()):
            out.append(
                f"length {d}: samples={row['samples']} singleton={row['singleton']} "
                f"empty={row['empty']} positive-dim={row['positive_dim']} "
                f"shift-failures={row['shift_failures']}")
        out.append("stabilization evidence: " + ("pass" if self.ok else "FAIL"))
        return out


def stabilization_check(pres: Presentation, d0: int, d_top: int, samples: int,
                        rng: Random, flags: EngineFlags | None = None) -> StabilizeReport:
    """For sampled sequences of each length in [d0, d_top): the extension
    fiber must be a single projective point (or empty), and the shifted
    sequence must remain a valid module."""
    if d0 < 1 or d_top < d0:
        raise ValueError("need 1 <= d0 <= D")
    report = StabilizeReport()
    for d in range(d0, d_top):
        row = {"samples": 0, "singleton": 0, "empty": 0, "positive_dim": 0,
               "shift_failures": 0}
        mods = sample_modules(pres, d, samples, rng, flags)
        if not mods:
            raise SamplingError(f"sampling failure at length {d}")
        for pts in mods:
            row["samples"] += 1
            fiber = extension_fiber(pres, pts)
            if fiber.empty:
                row["empty"] += 1
            elif fiber.proj_dim == 0:
                row["singleton"] += 1
            else:
                row["positive_dim"] += 1
            if len(pts) >= 2:
                ok, _ = is_truncated_point_module(pres, pts[1:])
                if not ok:
                    row["shift_failures"] += 1
        report.per_length[d] = row
    return report
