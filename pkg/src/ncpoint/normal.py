"""Normal elements, the associated graded automorphism, and the
two-sided commutation conditions that make a normal element
Heisenberg-like (g = xy - u yx with xg = u gx and gy = u yg).

Regularity is undecidable from a finite degree cap; what every check
here actually consumes is injectivity of both multiplication maps up to
the cap, and that is what is verified and reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .freealg import NCPoly
from .linalg import Matrix, RowReducer, kernel_basis, rref, solve_affine
from .quotient import DegreeCapError, QuotientCache
from .scalars import Scalar, sc_pow

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotNormalError(ValueError):
    pass


class NonUniqueSolutionError(ValueError):
    """The defining congruence nu(a) g = g a has several solutions,
    which signals that g is not regular at this degree."""


@dataclass(frozen=True)
class HeisenbergWitness:
    g: NCPoly
    x: NCPoly
    y: NCPoly
    u: Scalar

    def __post_init__(self):
        n = self.g.degree()
        if n is None or n < 1:
            raise ValueError("g must be homogeneous of degree >= 1")
        if self.x.degree() != 1:
            raise ValueError("x must be homogeneous of degree 1")
        if (self.y.degree() if self.y else 0) != n - 1:
            raise ValueError("y must be homogeneous of degree n - 1")
        if not self.u:
            raise ValueError("u must be nonzero")

    @property
    def n(self) -> int:
        return self.g.degree()


def _gen_products(cache: QuotientCache, g: NCPoly, side: str):
    k = cache.pres.num_generators
    if side == "left":
        return [cache.normal_form(g * NCPoly.gen(j)) for j in range(k)]
    return [cache.normal_form(NCPoly.gen(j) * g) for j in range(k)]


def _span_rows(polys, cache: QuotientCache, d: int):
    index = {w: i for i, w in enumerate(cache.retained_words(d))}
    rows = []
    for p in polys:
        rows.append({index[w]: c for w, c in p.terms.items()})
    return rows


def is_normal(cache: QuotientCache, g: NCPoly) -> bool:
    """Is span(g A_1) = span(A_1 g) inside A_{n+1}?

    For an algebra generated in degree 1 this one-degree check is
    equivalent to gA = Ag degreewise within the cap; the checked degree
    is n + 1.
    """
    n = g.degree()
    if n is None:
        raise ValueError("g must be homogeneous")
    if n + 1 > cache.cap:
        raise DegreeCapError(f"normality check needs degree {n + 1} > cap {cache.cap}")
    left = _span_rows(_gen_products(cache, g, "left"), cache, n + 1)
    right = _span_rows(_gen_products(cache, g, "right"), cache, n + 1)
    ra, rb = RowReducer(), RowReducer()
    for r in left:
        ra.insert(r)
    for r in right:
        rb.insert(r)
    return ra.canonical() == rb.canonical()


@dataclass(frozen=True)
class NuAutomorphism:
    """Matrix of the graded automorphism nu with nu(a) g = g a, on A_1.

    Column j holds the coordinates of nu(x_j) over the generators.
    """

    matrix: tuple

    def apply_gen(self, j: int, power: int = 1) -> NCPoly:
        mat = self._power(power)
        return NCPoly({(i,): mat[i][j] for i in range(len(mat)) if mat[i][j]})

    def _power(self, k: int):
        if k == 0:
            n = len(self.matrix)
            return tuple(tuple(_ONE if i == j else _ZERO for j in range(n))
                         for i in range(n))
        base = self.matrix if k > 0 else self.inverse_matrix()
        out = base
        for _ in range(abs(k) - 1):
            out = _mat_mul(out, base)
        return out

    def inverse_matrix(self):
        n = len(self.matrix)
        aug = Matrix([list(self.matrix[i]) + [_ONE if j == i else _ZERO for j in range(n)]
                      for i in range(n)], ncols=2 * n)
        r, pivots, red = rref(aug)
        if pivots[:n] != list(range(n)):
            raise NotNormalError("automorphism matrix is singular")
        return tuple(tuple(red.rows[i][n:]) for i in range(n))

    def apply(self, f: NCPoly, power: int = 1) -> NCPoly:
        """Extend multiplicatively to words of any degree (free-algebra output)."""
        out = NCPoly.zero()
        for w, c in f.terms.items():
            term = NCPoly({(): c})
            for letter in w:
                term = term * self.apply_gen(letter, power)
            out = out + term
        return out


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][l] * b[l][j] for l in range(n)), _ZERO) for j in range(n))
        for i in range(n))


def nu_automorphism(cache: QuotientCache, g: NCPoly) -> NuAutomorphism:
    """Solve nu(x_i) g = g x_i for every generator; unique when the
    products x_j g are linearly independent in A_{n+1}."""
    n = g.degree()
    k = cache.pres.num_generators
    if not is_normal(cache, g):
        raise NotNormalError("g is not normal at degree n + 1")
    d = n + 1
    right = _gen_products(cache, g, "right")   # NF(x_j g)
    cols = [cache.coords(p, d) for p in right]
    mat = Matrix([[cols[j][i] for j in range(k)] for i in range(len(cols[0]))],
                 ncols=k)
    columns = []
    for i in range(k):
        b = cache.coords(cache.normal_form(g * NCPoly.gen(i)), d)
        sol, ker = solve_affine(mat, b)
        if sol is None:
            raise NotNormalError(f"no solution for generator {cache.pres.names[i]}")
        if ker:
            raise NonUniqueSolutionError(
                "non-unique solution: g is not regular at this degree")
        columns.append(sol)
    matrix = tuple(tuple(columns[j][i] for j in range(k)) for i in range(k))
    NuAutomorphism(matrix).inverse_matrix()  # raises if singular
    return NuAutomorphism(matrix)


def multiplication_injective(cache: QuotientCache, g: NCPoly, d: int,
                             side: str) -> bool:
    """Is (left or right) multiplication by g injective A_d -> A_{d+n}?"""
    n = g.degree()
    words = cache.retained_words(d)
    if not words:
        return True
    cols = []
    for w in words:
        b = NCPoly.monomial(w)
        prod = g * b if side == "left" else b * g
        cols.append(cache.coords(prod, d + n))
    mat = Matrix([[cols[j][i] for j in range(len(words))]
                  for i in range(len(cols[0]))], ncols=len(words))
    return not kernel_basis(mat)


@dataclass
class HeisenbergReport:
    ok: bool
    clauses: dict = field(default_factory=dict)
    checked_normal_degree: int = 0
    regular_up_to: int = 0

    def failed_clauses(self):
        return [name for name, good in self.clauses.items() if not good]

    def lines(self):
        out = []
        for name, good in self.clauses.items():
            out.append(f"{name}: {'ok' if good else 'FAILED'}")
        out.append(f"normality checked at degree: {self.checked_normal_degree}")
        out.append(f"multiplication by g injective up to source degree: {self.regular_up_to}")
        return out


def is_q_heisenberg(cache: QuotientCache, w: HeisenbergWitness) -> HeisenbergReport:
    """Check the three defining identities mod the ideal, plus normality
    and the regularity surrogate (injectivity of both multiplications
    for all source degrees within the cap)."""
    g, x, y, u = w.g, w.x, w.y, w.u
    n = w.n
    if n + 1 > cache.cap or 2 * n - 1 > cache.cap:
        raise DegreeCapError("witness degrees exceed the cache cap")
    clauses = {}
    clauses["g nonzero mod ideal"] = bool(cache.normal_form(g))
    clauses["(i) g = x*y - u*y*x"] = cache.is_zero_mod_ideal(g - (x * y - (y * x).scale(u)))
    clauses["(ii) x*g = u*g*x"] = cache.is_zero_mod_ideal(x * g - (g * x).scale(u))
    clauses["(iii) g*y = u*y*g"] = cache.is_zero_mod_ideal(g * y - (y * g).scale(u))
    clauses["g normal"] = is_normal(cache, g)
    reg_top = cache.cap - n
    regular = True
    for d in range(0, reg_top + 1):
        if not (multiplication_injective(cache, g, d, "left")
                and multiplication_injective(cache, g, d, "right")):
            regular = False
            break
    clauses[f"g regular up to degree {reg_top}"] = regular
    return HeisenbergReport(
        ok=all(clauses.values()),
        clauses=clauses,
        checked_normal_degree=n + 1,
        regular_up_to=reg_top,
    )


def check_power_identities(cache: QuotientCache, w: HeisenbergWitness,
                           r_max: int) -> bool:
    """x^r y = r u^(r-1) x y x^(r-1) - (r-1) u^r y x^r  and
    y x^r = r u^-(r-1) x^(r-1) y x - (r-1) u^-r x^r y,  for 1 <= r <= r_max."""
    g, x, y, u = w.g, w.x, w.y, w.u
    n = w.n
    if r_max + n - 1 > cache.cap:
        raise DegreeCapError("power identities exceed the cache cap")
    for r in range(1, r_max + 1):
        xr = x ** r
        xr1 = x ** (r - 1)
        lhs1 = xr * y
        rhs1 = (x * y * xr1).scale(Fraction(r) * sc_pow(u, r - 1)) \
            - (y * xr).scale(Fraction(r - 1) * sc_pow(u, r))
        if not cache.is_zero_mod_ideal(lhs1 - rhs1):
            return False
        lhs2 = y * xr
        rhs2 = (xr1 * y * x).scale(Fraction(r) * sc_pow(u, -(r - 1))) \
            - (xr * y).scale(Fraction(r - 1) * sc_pow(u, -r))
        if not cache.is_zero_mod_ideal(lhs2 - rhs2):
            return False
    return True


def _fraction_sqrt(c: Fraction):
    num = math.isqrt(c.numerator)
    den = math.isqrt(c.denominator)
    if num * num == c.numerator and den * den == c.denominator:
        return Fraction(num, den)
    return None


def find_witness(cache: QuotientCache, g: NCPoly, rng=None, extra_x: int = 4):
    """Heuristic witness search: u over +-1, +- relation coefficients,
    their inverses, and rational square roots of coefficients; x over the
    generators plus a few random degree-1 combinations; then y solved
    linearly from g = x y - u y x mod I.

    Returns the first witness passing the full check, or None.
    """
    n = g.degree()
    if n is None or n < 1:
        raise ValueError("g must be homogeneous of degree >= 1")
    if n + 1 > cache.cap or 2 * n - 1 > cache.cap:
        raise DegreeCapError("witness search needs degree 2n - 1 within the cap")
    k = cache.pres.num_generators
    u_cands = []
    seen = set()
    pool = [_ONE]
    for f in cache.pres.relations:
        pool.extend(f.terms.values())
    for c in list(pool):
        if isinstance(c, Fraction) and c > 0:
            root = _fraction_sqrt(c)
            if root is not None:
                pool.append(root)
    for c in pool:
        for cand in (c, -c):
            if cand and cand not in seen:
                seen.add(cand)
                u_cands.append(cand)
            if cand:
                inv = sc_pow(cand, -1)
                if inv not in seen:
                    seen.add(inv)
                    u_cands.append(inv)
    x_cands = [NCPoly.gen(j) for j in range(k)]
    if rng is not None:
        for _ in range(extra_x):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(k)]
            p = NCPoly({(j,): c for j, c in enumerate(coeffs) if c})
            if p:
                x_cands.append(p)
    basis = cache.retained_words(n - 1)
    for u in u_cands:
        for x in x_cands:
            cols = []
            for w_ in basis:
                b = NCPoly.monomial(w_)
                cols.append(cache.coords(x * b - (b * x).scale(u), n))
            if not cols:
                continue
            mat = Matrix([[cols[j][i] for j in range(len(basis))]
                          for i in range(len(cols[0]))], ncols=len(basis))
            target = cache.coords(g, n)
            sol, ker = solve_affine(mat, target)
            if sol is None:
                continue
            for bump in [None] + ker:
                vec = list(sol) if bump is None else [a + b for a, b in zip(sol, bump)]
                y = NCPoly({w_: c for w_, c in zip(basis, vec) if c})
                if not y and n > 1:
                    continue
                try:
                    wit = HeisenbergWitness(g=g, x=x, y=y, u=u)
                except ValueError:
                    continue
                if is_q_heisenberg(cache, wit).ok:
                    return wit
    return None
