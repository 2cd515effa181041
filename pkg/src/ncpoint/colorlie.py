"""Color Lie algebras graded by Z^{m+1}: axioms, PBW arithmetic in the
enveloping algebra, degree-1-generated presentations, the epsilon-symmetric
algebra, the nilpotency index of the degree-1 part, Heisenberg-element
extraction, and the color Koszul complex.

Only the epsilon(gamma, gamma) = 1 sector is implemented (the standing
hypothesis of every check downstream); the super sector is out of scope.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .freealg import NCPoly, ParseError, Presentation, parse_poly, poly_to_str
from .linalg import Matrix, RowReducer, kernel_basis, rank as matrix_rank, solve_affine
from .normal import HeisenbergWitness
from .quotient import DEFAULT_WORD_BUDGET, QuotientCache
from .scalars import Scalar, parse_scalar, scalar_to_str, sc_pow, uses_t

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Bicharacter:
    """Skew symmetric bicharacter on Z^{m+1} determined by a matrix of
    nonzero scalars with omega_ij * omega_ji = 1."""

    __slots__ = ("omega", "rank")

    def __init__(self, omega):
        omega = tuple(tuple(row) for row in omega)
        n = len(omega)
        for i, row in enumerate(omega):
            if len(row) != n:
                raise ValueError("omega must be square")
            for j, v in enumerate(row):
                if not v:
                    raise ValueError("omega entries must be nonzero")
                if omega[i][j] * omega[j][i] != 1:
                    raise ValueError("omega_ij * omega_ji must equal 1")
        self.omega = omega
        self.rank = n

    def eval(self, alpha, beta) -> Scalar:
        """epsilon(alpha, beta) = prod omega_ij^(alpha_i beta_j)."""
        out: Scalar = _ONE
        for i, a in enumerate(alpha):
            if not a:
                continue
            for j, b in enumerate(beta):
                if not b:
                    continue
                out = out * sc_pow(self.omega[i][j], a * b)
        return out


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class ColorLieAlgebra:
    """Finite dimensional color Lie algebra with a chosen homogeneous basis.

    Brackets are stored for the pairs given in the input; a missing
    opposite pair is derived from epsilon-antisymmetry, and a pair that
    is stored in both orders is kept verbatim so that axiom checking can
    flag genuine inconsistencies.
    """

    def __init__(self, names, degrees, eps: Bicharacter, brackets):
        self.names = tuple(names)
        self.degrees = tuple(tuple(d) for d in degrees)
        self.eps = eps
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree vector per basis element")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        for d in self.degrees:
            if len(d) != eps.rank:
                raise ValueError("degree vectors must match the grading rank")
        self.dim = len(self.names)
        self.brackets = {}
        for (i, j), vec in brackets.items():
            vec = tuple(vec)
            if len(vec) != self.dim:
                raise ValueError("bracket vectors must have basis length")
            self.brackets[(i, j)] = vec
        # PBW order: by (total Z-degree, input position)
        self.order = sorted(range(self.dim),
                            key=lambda i: (sum(self.degrees[i]), i))
        self.rank_of = {idx: pos for pos, idx in enumerate(self.order)}
        self._pbw_cache = {}

    # -- bracket lookup -------------------------------------------------
    def bracket(self, i: int, j: int):
        stored = self.brackets.get((i, j))
        if stored is not None:
            return stored
        opp = self.brackets.get((j, i))
        if opp is not None:
            e = self.eps.eval(self.degrees[i], self.degrees[j])
            return tuple(-(e * c) for c in opp)
        return tuple(_ZERO for _ in range(self.dim))

    def bracket_vectors(self, u, v):
        """Bilinear extension of the bracket to coefficient vectors."""
        out = [_ZERO] * self.dim
        for i, ci in enumerate(u):
            if not ci:
                continue
            for j, cj in enumerate(v):
                if not cj:
                    continue
                for k, ck in enumerate(self.bracket(i, j)):
                    if ck:
                        out[k] = out[k] + ci * cj * ck
        return out

    def total_degree(self, i: int) -> int:
        return sum(self.degrees[i])

    # -- designated generators -------------------------------------------
    def theta_indices(self):
        """Basis index of theta_i for each unit degree e_i; raises when a
        unit degree is missing or carries more than one basis element."""
        m1 = self.eps.rank
        out = []
        for coord in range(m1):
            e = tuple(1 if c == coord else 0 for c in range(m1))
            matches = [i for i, d in enumerate(self.degrees) if d == e]
            if len(matches) != 1:
                raise ValueError(
                    f"degree e_{coord} must carry exactly one basis element")
            out.append(matches[0])
        return out

    def degree_one_indices(self):
        unit = set()
        m1 = self.eps.rank
        for coord in range(m1):
            unit.add(tuple(1 if c == coord else 0 for c in range(m1)))
        return [i for i, d in enumerate(self.degrees) if d in unit]


def check_color_axioms(L: ColorLieAlgebra):
    """Grading, epsilon-antisymmetry, epsilon-Jacobi, and epsilon(g,g) = 1
    on occupied degrees.  Returns (ok, violations)."""
    violations = []
    for (i, j), vec in L.brackets.items():
        want = _vec_add(L.degrees[i], L.degrees[j])
        for k, c in enumerate(vec):
            if c and L.degrees[k] != want:
                violations.append(
                    f"grading: [{L.names[i]},{L.names[j]}] hits {L.names[k]} "
                    f"of degree {L.degrees[k]}, expected {want}")
    for i in range(L.dim):
        for j in range(i, L.dim):
            e = L.eps.eval(L.degrees[i], L.degrees[j])
            lhs = L.bracket(i, j)
            rhs = L.bracket(j, i)
            bad = [a + e * b for a, b in zip(lhs, rhs)]
            if any(bad):
                violations.append(
                    f"antisymmetry: [{L.names[i]},{L.names[j]}] != "
                    f"-eps*[{L.names[j]},{L.names[i]}]")
    for a, b, c in itertools.product(range(L.dim), repeat=3):
        e_ca = L.eps.eval(L.degrees[c], L.degrees[a])
        e_ab = L.eps.eval(L.degrees[a], L.degrees[b])
        e_bc = L.eps.eval(L.degrees[b], L.degrees[c])
        unit = [_ONE if k == a else _ZERO for k in range(L.dim)]
        unit_b = [_ONE if k == b else _ZERO for k in range(L.dim)]
        unit_c = [_ONE if k == c else _ZERO for k in range(L.dim)]
        term1 = L.bracket_vectors(unit, L.bracket(b, c))
        term2 = L.bracket_vectors(unit_b, L.bracket(c, a))
        term3 = L.bracket_vectors(unit_c, L.bracket(a, b))
        total = [e_ca * t1 + e_ab * t2 + e_bc * t3
                 for t1, t2, t3 in zip(term1, term2, term3)]
        if any(total):
            violations.append(
                f"jacobi: cyclic sum fails on ({L.names[a]},{L.names[b]},{L.names[c]})")
    for i in range(L.dim):
        if L.eps.eval(L.degrees[i], L.degrees[i]) != 1:
            violations.append(
                f"sector: eps(gamma,gamma) != 1 at {L.names[i]} (super sector unsupported)")
    return not violations, violations


# ---------------------------------------------------------------------------
# PBW rewriting in U(L)
# ---------------------------------------------------------------------------

def pbw_normal_form(L: ColorLieAlgebra, word, strategy: str = "leftmost"):
    """Rewrite a word in basis elements into the PBW basis of sorted words.

    b_j b_i -> eps(|b_j|, |b_i|) b_i b_j + [b_j, b_i] whenever b_j comes
    after b_i in the (total degree, input order) ranking.  Each step
    either keeps the length and removes an inversion or shortens the
    word, so rewriting terminates; confluence is property-tested.
    """
    word = tuple(word)
    key = (word, strategy)
    cached = L._pbw_cache.get(key)
    if cached is not None:
        return dict(cached)
    out = {}
    pos = None
    indices = range(len(word) - 1) if strategy == "leftmost" \
        else range(len(word) - 2, -1, -1)
    for k in indices:
        if L.rank_of[word[k]] > L.rank_of[word[k + 1]]:
            pos = k
            break
    if pos is None:
        out = {word: _ONE}
    else:
        i, j = word[pos], word[pos + 1]
        e = L.eps.eval(L.degrees[i], L.degrees[j])
        swapped = word[:pos] + (j, i) + word[pos + 2:]
        for mono, c in pbw_normal_form(L, swapped, strategy).items():
            new = out.get(mono, _ZERO) + e * c
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        for k, ck in enumerate(L.bracket(i, j)):
            if not ck:
                continue
            inserted = word[:pos] + (k,) + word[pos + 2:]
            for mono, c in pbw_normal_form(L, inserted, strategy).items():
                new = out.get(mono, _ZERO) + ck * c
                if new:
                    out[mono] = new
                else:
                    out.pop(mono, None)
    L._pbw_cache[key] = dict(out)
    return out


def pbw_monomials(L: ColorLieAlgebra, total: int):
    """Sorted PBW monomials (nondecreasing in the basis ranking) with the
    given total Z-degree."""
    order = L.order
    out = []

    def rec(prefix, pos, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(pos, len(order)):
            idx = order[p]
            d = L.total_degree(idx)
            if d <= remaining:
                rec(prefix + [idx], p, remaining - d)

    rec([], 0, total)
    return out


def pbw_dim(L: ColorLieAlgebra, total: int) -> int:
    return len(pbw_monomials(L, total))


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

def _is_generated_in_degree_one(L: ColorLieAlgebra) -> bool:
    span = RowReducer()
    current = [ {i: _ONE} for i in L.degree_one_indices() ]
    for row in current:
        span.insert(dict(row))
    frontier = [[_ONE if k == i else _ZERO for k in range(L.dim)]
                for i in L.degree_one_indices()]
    degree_one = list(frontier)
    while frontier:
        new_frontier = []
        for u in frontier:
            for v in degree_one:
                w = L.bracket_vectors(u, v)
                row = {k: c for k, c in enumerate(w) if c}
                if row and span.insert(dict(row)) is not None:
                    new_frontier.append(w)
        frontier = new_frontier
    return span.rank == L.dim


def u_presentation(L: ColorLieAlgebra, max_degree: int,
                   budget: int = DEFAULT_WORD_BUDGET) -> Presentation:
    """Presentation of U(L) on the designated generators, with minimal
    homogeneous relations found degree by degree up to max_degree.

    Validity of the PBW basis is asserted at runtime: the quotient of
    the free algebra by the found relations must reproduce the PBW
    monomial count in every degree up to the cap.
    """
    thetas = L.theta_indices()
    if not _is_generated_in_degree_one(L):
        raise ValueError("L is not generated by its degree-one part")
    names = tuple(L.names[i] for i in thetas)
    variant = "rational-function" if any(
        uses_t(v) for row in L.eps.omega for v in row) else "rational"
    relations = []
    for d in range(2, max_degree + 1):
        pres = Presentation(names, relations, variant)
        cache = QuotientCache(pres, d, budget)
        want = pbw_dim(L, d)
        have = cache.dim(d)
        if have < want:
            raise RuntimeError(
                f"PBW dimension check failed in degree {d}: {have} < {want}")
        if have == want:
            continue
        words = list(itertools.product(range(len(thetas)), repeat=d))
        cols = {}
        monos = {m: i for i, m in enumerate(pbw_monomials(L, d))}
        mat_cols = []
        for w in words:
            nf = pbw_normal_form(L, tuple(thetas[i] for i in w))
            col = [_ZERO] * len(monos)
            for mono, c in nf.items():
                col[monos[mono]] = c
            mat_cols.append(col)
        mat = Matrix([[mat_cols[j][i] for j in range(len(words))]
                      for i in range(len(monos))], ncols=len(words))
        picker = RowReducer()
        for vec in kernel_basis(mat):
            poly = NCPoly({w: c for w, c in zip(words, vec) if c})
            reduced = cache.normal_form(poly)
            if not reduced:
                continue
            row = {cache._col(w): c for w, c in reduced.terms.items()}
            if picker.insert(row) is None:
                continue
            lead = min(reduced.terms.items(), key=lambda kv: kv[0])
            relations.append(reduced.scale(sc_pow(lead[1], -1)))
    pres = Presentation(names, relations, variant)
    cache = QuotientCache(pres, max_degree, budget)
    for d in range(0, max_degree + 1):
        if cache.dim(d) != pbw_dim(L, d):
            raise RuntimeError(f"PBW dimension check failed in degree {d}")
    return pres


def epsilon_symmetric(L: ColorLieAlgebra) -> Presentation:
    """S_eps(L_1): the skew polynomial algebra on the designated generators
    with relations theta_i theta_j - omega_ij theta_j theta_i, i < j."""
    thetas = L.theta_indices()
    names = tuple(L.names[i] for i in thetas)
    m1 = len(thetas)
    rels = []
    for i in range(m1):
        for j in range(i + 1, m1):
            w = L.eps.eval(L.degrees[thetas[i]], L.degrees[thetas[j]])
            rels.append(NCPoly({(i, j): _ONE, (j, i): -w}))
    variant = "rational-function" if any(
        uses_t(v) for row in L.eps.omega for v in row) else "rational"
    return Presentation(names, rels, variant)


def n_invariant(L: ColorLieAlgebra) -> int:
    """max { j : L_1^j != 0 } where L_1^(j+1) = [L_1^j, L_1]."""
    ones = [[_ONE if k == i else _ZERO for k in range(L.dim)]
            for i in L.degree_one_indices()]
    if not ones:
        return 0
    current = ones
    j = 1
    while True:
        span = RowReducer()
        nxt = []
        for u in current:
            for v in ones:
                w = L.bracket_vectors(u, v)
                row = {k: c for k, c in enumerate(w) if c}
                if row and span.insert(dict(row)) is not None:
                    nxt.append(w)
        if not nxt:
            return j
        current = nxt
        j += 1


@dataclass
class ColorHeisenberg:
    kind: str                       # "witness" or "s-epsilon"
    n_value: int
    witness: HeisenbergWitness | None = None
    presentation: Presentation | None = None
    chosen: str = ""


def _homogeneous_span_elements(L: ColorLieAlgebra, vectors):
    """Homogeneous elements spanning span(vectors), grouped by multidegree."""
    span = RowReducer()
    for v in vectors:
        span.insert({k: c for k, c in enumerate(v) if c})
    degrees = sorted({L.degrees[i] for i in range(L.dim)})
    out = []
    for gamma in degrees:
        idxs = [i for i in range(L.dim) if L.degrees[i] == gamma]
        if not idxs:
            continue
        # vectors of the span supported inside this multidegree
        rows = [dict(r) for r in span.pivot_rows.values()]
        if not rows:
            continue
        outside = [i for i in range(L.dim) if L.degrees[i] != gamma]
        mat = Matrix([[row.get(k, _ZERO) for row in rows] for k in outside],
                     ncols=len(rows))
        for combo in kernel_basis(mat) if outside else [
                [_ONE if r == s else _ZERO for s in range(len(rows))]
                for r in range(len(rows))]:
            vec = [_ZERO] * L.dim
            for c, row in zip(combo, rows):
                if c:
                    for k, v in row.items():
                        vec[k] = vec[k] + c * v
            if any(vec):
                out.append((gamma, vec))
    return out


def heisenberg_from_color(L: ColorLieAlgebra, max_degree: int | None = None,
                          budget: int = DEFAULT_WORD_BUDGET) -> ColorHeisenberg:
    """Extract g = [x, y] in L_1^{n} with x a designated generator and y
    homogeneous, expressed in the degree-one presentation of U(L), with
    u = eps(|x|, |y|).  When n = 1 there is nothing to extract and the
    epsilon-symmetric case is reported."""
    n = n_invariant(L)
    if n < 2:
        return ColorHeisenberg(kind="s-epsilon", n_value=n)
    thetas = L.theta_indices()
    ones = [[_ONE if k == i else _ZERO for k in range(L.dim)]
            for i in L.degree_one_indices()]
    layers = [ones]
    for _ in range(n - 2):
        layers.append([L.bracket_vectors(u, v)
                       for u in layers[-1] for v in ones])
    candidates_y = _homogeneous_span_elements(L, layers[-1])
    found = None
    for ti in thetas:
        x_vec = [_ONE if k == ti else _ZERO for k in range(L.dim)]
        for gamma, y_vec in candidates_y:
            g_vec = L.bracket_vectors(x_vec, y_vec)
            if any(g_vec):
                found = (ti, gamma, y_vec, g_vec)
                break
        if found:
            break
    if found is None:
        raise RuntimeError("no nonzero bracket [theta, y] found in L_1^n")
    ti, gamma, y_vec, g_vec = found
    cap = max_degree if max_degree is not None else max(3 * n - 1, n + 1)
    pres = u_presentation(L, cap, budget)
    u = L.eps.eval(L.degrees[ti], gamma)
    x_poly = NCPoly.gen(thetas.index(ti))
    y_poly = _express_in_thetas(L, thetas, y_vec, n - 1)
    g_poly = x_poly * y_poly - (y_poly * x_poly).scale(u)
    witness = HeisenbergWitness(g=g_poly, x=x_poly, y=y_poly, u=u)
    chosen = (f"g = [{L.names[ti]}, {_vec_str(L, y_vec)}], "
              f"u = {scalar_to_str(u)}")
    return ColorHeisenberg(kind="witness", n_value=n, witness=witness,
                           presentation=pres, chosen=chosen)


def _vec_str(L, vec):
    parts = [f"{scalar_to_str(c)}*{L.names[k]}" for k, c in enumerate(vec) if c]
    return " + ".join(parts) if parts else "0"


def _express_in_thetas(L: ColorLieAlgebra, thetas, vec, degree: int) -> NCPoly:
    """Solve for a free polynomial in the thetas of the given total degree
    whose image in U(L) is the given element of L."""
    words = list(itertools.product(range(len(thetas)), repeat=degree))
    monos = {m: i for i, m in enumerate(pbw_monomials(L, degree))}
    cols = []
    for w in words:
        nf = pbw_normal_form(L, tuple(thetas[i] for i in w))
        col = [_ZERO] * len(monos)
        for mono, c in nf.items():
            col[monos[mono]] = c
        cols.append(col)
    target = [_ZERO] * len(monos)
    for k, c in enumerate(vec):
        if c:
            target[monos[(k,)]] = c
    mat = Matrix([[cols[j][i] for j in range(len(words))]
                  for i in range(len(monos))], ncols=len(words))
    sol, _ = solve_affine(mat, target)
    if sol is None:
        raise RuntimeError("element is not expressible in the generators")
    return NCPoly({w: c for w, c in zip(words, sol) if c})


# ---------------------------------------------------------------------------
# color Koszul complex
# ---------------------------------------------------------------------------

def _wedge_sort(L: ColorLieAlgebra, word):
    """Sort a wedge word into strictly increasing ranking order.

    u ^ v = -eps(|u|, |v|) v ^ u; a repeated factor is zero because
    eps(gamma, gamma) = 1 in characteristic zero."""
    word = list(word)
    coeff: Scalar = _ONE
    for a in range(1, len(word)):
        b = a
        while b > 0 and L.rank_of[word[b - 1]] > L.rank_of[word[b]]:
            coeff = coeff * (-L.eps.eval(L.degrees[word[b - 1]],
                                         L.degrees[word[b]]))
            word[b - 1], word[b] = word[b], word[b - 1]
            b -= 1
    if len(set(word)) != len(word):
        return None, _ZERO
    return tuple(word), coeff


def wedge_basis(L: ColorLieAlgebra, r: int):
    return [tuple(L.order[i] for i in combo)
            for combo in itertools.combinations(range(L.dim), r)]


def wedge_weight(L: ColorLieAlgebra, word) -> int:
    return sum(L.total_degree(i) for i in word)


@dataclass
class KoszulComplex:
    L: ColorLieAlgebra
    r_max: int
    max_degree: int
    bases: dict = field(default_factory=dict)      # (r, s) -> [(mono, wedge)]
    matrices: dict = field(default_factory=dict)   # (r, s) -> Matrix

    def dim(self, r: int, s: int) -> int:
        return len(self.bases.get((r, s), []))


def _component_basis(L, r, s):
    out = []
    for w in wedge_basis(L, r):
        q = s - wedge_weight(L, w)
        if q < 0:
            continue
        for mono in pbw_monomials(L, q):
            out.append((mono, w))
    return out


def _differential_image(L: ColorLieAlgebra, mono, wedge):
    """d_r(mono (x) wedge) as a map {(mono', smaller wedge): coeff}."""
    r = len(wedge)
    out = {}

    def add(mono2, wedge2, c):
        if not c:
            return
        key = (mono2, wedge2)
        new = out.get(key, _ZERO) + c
        if new:
            out[key] = new
        else:
            out.pop(key, None)

    etas = []
    for i in range(r):
        if i == 0:
            etas.append(_ONE)
        else:
            acc_i = _ONE
            for l in range(i):
                acc_i = acc_i * L.eps.eval(L.degrees[wedge[l]],
                                           L.degrees[wedge[i]])
            etas.append(acc_i)
    for i in range(r):
        sign = _ONE if i % 2 == 0 else -_ONE          # (-1)^(i+1), 1-based
        rest = wedge[:i] + wedge[i + 1:]
        for mono2, c in pbw_normal_form(L, mono + (wedge[i],)).items():
            add(mono2, rest, sign * etas[i] * c)
    for i in range(r):
        for j in range(i + 1, r):
            sign = _ONE if (i + j) % 2 == 0 else -_ONE  # (-1)^(i+j), 1-based
            e_ji = L.eps.eval(L.degrees[wedge[j]], L.degrees[wedge[i]])
            factor = sign * etas[i] * etas[j] * e_ji
            rest = tuple(v for k, v in enumerate(wedge) if k not in (i, j))
            for k, ck in enumerate(L.bracket(wedge[i], wedge[j])):
                if not ck:
                    continue
                sorted_w, sgn = _wedge_sort(L, (k,) + rest)
                if sorted_w is None:
                    continue
                add(mono, sorted_w, factor * ck * sgn)
    return out


def koszul_complex(L: ColorLieAlgebra, r_max: int,
                   max_degree: int) -> KoszulComplex:
    """Materialize the differentials per homological and internal degree.

    The wedge basis uses strictly increasing words in the PBW ranking,
    which is a basis because eps(gamma, gamma) = 1 throughout."""
    if r_max > L.dim:
        raise ValueError("r_max cannot exceed dim L")
    K = KoszulComplex(L, r_max, max_degree)
    for s in range(0, max_degree + 1):
        for r in range(0, r_max + 1):
            K.bases[(r, s)] = _component_basis(L, r, s)
    for s in range(0, max_degree + 1):
        for r in range(1, r_max + 1):
            cols = K.bases[(r, s)]
            rows = {b: i for i, b in enumerate(K.bases[(r - 1, s)])}
            mat = [[_ZERO] * len(cols) for _ in rows]
            for cidx, (mono, wedge) in enumerate(cols):
                for key, c in _differential_image(L, mono, wedge).items():
                    mat[rows[key]][cidx] = c
            K.matrices[(r, s)] = Matrix(mat, ncols=len(cols))
    return K


@dataclass
class KoszulReport:
    ok_d_squared: bool
    ok_exact: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.ok_d_squared and self.ok_exact

    def lines(self):
        out = [f"d o d = 0: {'ok' if self.ok_d_squared else 'FAILED'}",
               f"exactness in internal degrees >= 1: {'ok' if self.ok_exact else 'FAILED'}"]
        out.extend(self.failures)
        return out


def koszul_verify(K: KoszulComplex) -> KoszulReport:
    """d^2 = 0 exactly, and rank bookkeeping for exactness: in every
    internal degree s >= 1, rank d_r + rank d_{r+1} = dim C_r, with the
    augmentation-level check rank d_1 = dim C_0 there."""
    failures = []
    ok_sq = True
    for s in range(0, K.max_degree + 1):
        for r in range(2, K.r_max + 1):
            prod = K.matrices[(r - 1, s)].mul(K.matrices[(r, s)])
            if not prod.is_zero():
                ok_sq = False
                failures.append(f"d_{r-1} o d_{r} != 0 at internal degree {s}")
    ok_exact = True
    ranks = {key: matrix_rank(m) for key, m in K.matrices.items()}
    for s in range(1, K.max_degree + 1):
        if ranks[(1, s)] != K.dim(0, s):
            ok_exact = False
            failures.append(f"coker d_1 != 0 at internal degree {s}")
        for r in range(1, K.r_max):
            if ranks[(r, s)] + ranks[(r + 1, s)] != K.dim(r, s):
                ok_exact = False
                failures.append(
                    f"homology at r = {r}, internal degree {s} is nonzero")
        if K.r_max == K.L.dim:
            if ranks[(K.r_max, s)] != K.dim(K.r_max, s):
                ok_exact = False
                failures.append(
                    f"kernel of the top differential nonzero at degree {s}")
    if K.dim(0, 0) != 1 or (ranks.get((1, 0), 0) != 0):
        ok_exact = False
        failures.append("homology at r = 0, degree 0 is not k")
    return KoszulReport(ok_d_squared=ok_sq, ok_exact=ok_exact, failures=failures)


# ---------------------------------------------------------------------------
# color Lie files
# ---------------------------------------------------------------------------

_BASIS_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)\s*:\s*\(([^)]*)\)$")
_BRACKET_RE = re.compile(r"^\[\s*([A-Za-z_][A-Za-z_0-9]*)\s*,\s*([A-Za-z_][A-Za-z_0-9]*)\s*\]\s*=\s*(.*)$")


def parse_colorlie(text: str) -> ColorLieAlgebra:
    """Parse a color Lie algebra file.

    Format::

        rank: 2
        basis: x:(1,0)
        basis: y:(0,1)
        basis: z:(1,1)
        omega: 1 2
        omega: 1/2 1
        bracket: [x,y] = z
    """
    rank_ = None
    names = []
    degrees = []
    omega_rows = []
    bracket_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", line=lineno)
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key == "rank":
            rank_ = int(value)
        elif key == "basis":
            m = _BASIS_RE.match(value)
            if not m:
                raise ParseError("basis entries look like name:(a0,...,am)", line=lineno)
            names.append(m.group(1))
            try:
                vec = tuple(int(p.strip()) for p in m.group(2).split(","))
            except ValueError as exc:
                raise ParseError(f"bad degree vector: {exc}", line=lineno) from exc
            degrees.append(vec)
        elif key == "omega":
            try:
                omega_rows.append(tuple(parse_scalar(p) for p in value.split()))
            except ValueError as exc:
                raise ParseError(f"bad omega entry: {exc}", line=lineno) from exc
        elif key == "bracket":
            bracket_lines.append((lineno, value))
        else:
            raise ParseError(f"unknown directive {key!r}", line=lineno)
    if rank_ is None:
        raise ParseError("missing 'rank' line")
    if len(omega_rows) != rank_:
        raise ParseError(f"expected {rank_} omega rows, got {len(omega_rows)}")
    try:
        eps = Bicharacter(omega_rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    index = {nm: i for i, nm in enumerate(names)}
    brackets = {}
    for lineno, value in bracket_lines:
        m = _BRACKET_RE.match(value)
        if not m:
            raise ParseError("bracket lines look like [a,b] = expr", line=lineno)
        a, b, rhs = m.group(1), m.group(2), m.group(3).strip()
        if a not in index or b not in index:
            raise ParseError(f"unknown basis element in bracket", line=lineno)
        vec = [_ZERO] * len(names)
        if rhs not in ("0", ""):
            try:
                poly = parse_poly(rhs, names)
            except ParseError as exc:
                raise ParseError(str(exc), line=lineno) from exc
            for w, c in poly.terms.items():
                if len(w) != 1:
                    raise ParseError("bracket values are linear in the basis",
                                     line=lineno)
                vec[w[0]] = vec[w[0]] + c
        brackets[(index[a], index[b])] = tuple(vec)
    try:
        return ColorLieAlgebra(names, degrees, eps, brackets)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_colorlie(L: ColorLieAlgebra) -> str:
    lines = [f"rank: {L.eps.rank}"]
    for nm, deg in zip(L.names, L.degrees):
        lines.append(f"basis: {nm}:({','.join(str(a) for a in deg)})")
    for row in L.eps.omega:
        lines.append("omega: " + " ".join(scalar_to_str(v) for v in row))
    for (i, j), vec in L.brackets.items():
        poly = NCPoly({(k,): c for k, c in enumerate(vec) if c})
        rhs = poly_to_str(poly, L.names) if poly else "0"
        lines.append(f"bracket: [{L.names[i]},{L.names[j]}] = {rhs}")
    return "\n".join(lines) + "\n"
