"""Free algebra arithmetic and graded presentations.

Words are tuples of generator indices; a noncommutative polynomial is a
finitely supported map word -> scalar.  The product concatenates words.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (
    Scalar,
    ScalarParseError,
    scalar_is_atom,
    scalar_to_str,
    tokenize,
    _ScalarParser,
)

Word = tuple  # tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.col = col


class NCPoly:
    """Noncommutative polynomial: finitely supported map word -> scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for w, c in terms.items():
                if c:
                    cleaned[tuple(w)] = c
        self.terms = cleaned

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): _ONE})

    @classmethod
    def gen(cls, i: int):
        return cls({(i,): _ONE})

    @classmethod
    def monomial(cls, word, coeff=_ONE):
        return cls({tuple(word): coeff})

    # -- structure --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_homogeneous(self) -> bool:
        lengths = {len(w) for w in self.terms}
        return len(lengths) <= 1

    def degree(self):
        """Degree of a nonzero homogeneous polynomial, else None."""
        lengths = {len(w) for w in self.terms}
        if len(lengths) == 1:
            return lengths.pop()
        return None

    def homogeneous_parts(self):
        parts = {}
        for w, c in self.terms.items():
            parts.setdefault(len(w), {})[w] = c
        return {d: NCPoly(p) for d, p in sorted(parts.items())}

    def max_generator(self) -> int:
        return max((max(w) for w in self.terms if w), default=-1)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            new = out.get(w, _ZERO) + c
            if new:
                out[w] = new
            else:
                out.pop(w, None)
        res = NCPoly.__new__(NCPoly)
        res.terms = out
        return res

    def __neg__(self):
        res = NCPoly.__new__(NCPoly)
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, s: Scalar) -> "NCPoly":
        if not s:
            return NCPoly.zero()
        res = NCPoly.__new__(NCPoly)
        res.terms = {w: s * c for w, c in self.terms.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    new = out.get(w, _ZERO) + c1 * c2
                    if new:
                        out[w] = new
                    else:
                        out.pop(w, None)
            res = NCPoly.__new__(NCPoly)
            res.terms = out
            return res
        if isinstance(other, (int, Fraction)) or hasattr(other, "num"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) or hasattr(other, "num"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = NCPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"NCPoly({self.terms!r})"


def poly_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Concatenation product; degree adds when both are homogeneous."""
    return a * b


class Presentation:
    """A connected graded algebra: degree-1 generators plus homogeneous
    relations of degree >= 2."""

    __slots__ = ("names", "relations", "scalar_variant")

    def __init__(self, names, relations, scalar_variant="rational"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for nm in names:
            if not nm.isidentifier():
                raise ValueError(f"bad generator name {nm!r}")
            if nm == "t":
                raise ValueError("generator name 't' collides with the scalar indeterminate")
        if scalar_variant not in ("rational", "rational-function"):
            raise ValueError(f"unknown scalar variant {scalar_variant!r}")
        rels = tuple(relations)
        for f in rels:
            if not f:
                raise ValueError("zero relation")
            d = f.degree()
            if d is None or d < 2:
                raise ValueError("relations must be homogeneous of degree >= 2")
            if f.max_generator() >= len(names):
                raise ValueError("relation uses an undeclared generator")
        self.names = names
        self.relations = rels
        self.scalar_variant = scalar_variant

    @property
    def num_generators(self) -> int:
        return len(self.names)

    def max_relation_degree(self) -> int:
        return max((f.degree() for f in self.relations), default=0)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.names == other.names
                and self.relations == other.relations
                and self.scalar_variant == other.scalar_variant)

    def __repr__(self):
        rels = "; ".join(poly_to_str(f, self.names) for f in self.relations)
        return f"Presentation(<{', '.join(self.names)} | {rels}>)"


# ---------------------------------------------------------------------------
# text form:  x*x*y - 4*x*y*x + 4*y*x*x   with scalar coefficients
# ---------------------------------------------------------------------------

def poly_to_str(p: NCPoly, names) -> str:
    if not p:
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
    parts = []
    for w, c in items:
        word_txt = "*".join(names[i] for i in w)
        neg = False
        if scalar_is_atom(-c) and not scalar_is_atom(c):
            neg = True
            c = -c
        if not w:
            body = scalar_to_str(c) if scalar_is_atom(c) else f"({scalar_to_str(c)})"
        elif c == 1:
            body = word_txt
        else:
            ctxt = scalar_to_str(c) if scalar_is_atom(c) else f"({scalar_to_str(c)})"
            body = f"{ctxt}*{word_txt}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class _PolyParser(_ScalarParser):
    """Extends the scalar grammar with generator names.

    term ::= atom ('*' atom)* ; atoms are scalar factors or generators,
    and consecutive generator atoms concatenate noncommutatively.
    """

    def __init__(self, tokens, names):
        super().__init__(tokens)
        self.names = {nm: i for i, nm in enumerate(names)}

    def poly_expr(self) -> NCPoly:
        sign = 1
        if self.peek()[0] in ("add", "sub"):
            if self.take()[0] == "sub":
                sign = -1
        val = self.poly_term().scale(Fraction(sign))
        while self.peek()[0] in ("add", "sub"):
            if self.take()[0] == "add":
                val = val + self.poly_term()
            else:
                val = val - self.poly_term()
        return val

    def poly_term(self) -> NCPoly:
        coeff: Scalar = _ONE
        word = []
        while True:
            kind, value, pos = self.peek()
            if kind == "name" and value in self.names:
                self.take()
                reps = self._maybe_power(pos)
                word.extend([self.names[value]] * reps)
            elif kind in ("int", "lpar") or (kind == "name" and value == "t"):
                c = self.factor()
                while self.peek()[0] == "div":
                    self.take()
                    d = self.factor()
                    if not d:
                        raise ScalarParseError("division by zero coefficient", pos)
                    c = c / d
                coeff = coeff * c
            else:
                raise ScalarParseError(f"unexpected token {value!r}", pos)
            if self.peek()[0] == "mul":
                self.take()
                continue
            break
        return NCPoly.monomial(tuple(word), coeff)

    def _maybe_power(self, pos) -> int:
        if self.peek()[0] != "pow":
            return 1
        self.take()
        kind, value, p2 = self.take()
        if kind != "int" or value < 1:
            raise ScalarParseError("generator exponent must be a positive integer", p2)
        return value


def parse_poly(text: str, names) -> NCPoly:
    """Parse relation syntax like ``x*x*y - 4*x*y*x + 4*y*x*x``."""
    try:
        parser = _PolyParser(tokenize(text), names)
        val = parser.poly_expr()
        if parser.peek()[0] != "end":
            raise ScalarParseError("trailing input", parser.peek()[2])
    except ScalarParseError as exc:
        raise ParseError(str(exc), col=exc.pos) from exc
    return val


# ---------------------------------------------------------------------------
# algebra files
# ---------------------------------------------------------------------------

def parse_algebra(text: str) -> Presentation:
    """Parse an algebra file.

    Format (one directive per line, '#' comments)::

        generators: x y
        scalar: rational
        relation: x*y - 2*y*x
    """
    names = None
    variant = "rational"
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", line=lineno)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "generators":
            names = tuple(value.split())
            if not names:
                raise ParseError("empty generator list", line=lineno)
        elif key == "scalar":
            variant = value
        elif key == "relation":
            if names is None:
                raise ParseError("'relation' before 'generators'", line=lineno)
            try:
                relations.append(parse_poly(value, names))
            except ParseError as exc:
                raise ParseError(str(exc), line=lineno, col=exc.col) from exc
        else:
            raise ParseError(f"unknown directive {key!r}", line=lineno)
    if names is None:
        raise ParseError("missing 'generators' line")
    try:
        return Presentation(names, relations, variant)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_algebra(pres: Presentation) -> str:
    lines = [f"generators: {' '.join(pres.names)}", f"scalar: {pres.scalar_variant}"]
    for f in pres.relations:
        lines.append(f"relation: {poly_to_str(f, pres.names)}")
    return "\n".join(lines) + "\n"
