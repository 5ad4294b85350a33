"""Noncommutative polynomials in x,y,z and the graded Sklyanin quotient.

Words are tuples of generator indices; the alphabet is x,y,z (indices
0,1,2) extended by the degree-one blow-up generators X,Y,Z (indices
3,4,5).  Words of a given degree are always enumerated in lexicographic
order of their index tuples, so coefficient vectors are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import linalg

__all__ = [
    "DegenerateParams",
    "GEN_NAMES",
    "gen_index",
    "word_from_str",
    "word_str",
    "words_of_degree",
    "FreePoly",
    "cyclic_derivative",
    "SklyaninParams",
    "sklyanin_relations",
    "superpotential",
    "central_element",
    "central_element_printed_statement",
    "ideal_component",
    "GradedQuotient",
    "is_zero_in_A",
    "quotient_dim",
    "quotient_dim_mod_prime",
    "centrality_check",
]

GEN_NAMES = ("x", "y", "z", "X", "Y", "Z")
_GEN_INDEX = {n: i for i, n in enumerate(GEN_NAMES)}


class DegenerateParams(Exception):
    """Parameter triple unusable for the requested construction."""


def gen_index(name: str) -> int:
    return _GEN_INDEX[name]


def word_from_str(s: str) -> tuple[int, ...]:
    return tuple(_GEN_INDEX[ch] for ch in s)


def word_str(w: tuple[int, ...]) -> str:
    return "".join(GEN_NAMES[i] for i in w) if w else "1"


@lru_cache(maxsize=None)
def words_of_degree(d: int, alphabet: int = 3) -> tuple[tuple[int, ...], ...]:
    """All degree-d words over the first ``alphabet`` generators, lex order."""
    return tuple(product(range(alphabet), repeat=d))


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, complex):
        sign = "+" if c.imag >= 0 else "-"
        return f"{c.real!r}{sign}{abs(c.imag)!r}i"
    return str(c)


class FreePoly:
    """Noncommutative polynomial as a word -> coefficient map.

    Coefficients are duck-typed: Fraction, int, complex and the cyclotomic
    elements of :mod:`sklyanin.heisenberg` all work.  Zero coefficients are
    never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "FreePoly":
        return cls()

    @classmethod
    def term(cls, coeff, word) -> "FreePoly":
        if isinstance(word, str):
            word = word_from_str(word)
        return cls({tuple(word): coeff})

    @classmethod
    def from_terms(cls, *pairs) -> "FreePoly":
        out: dict = {}
        for coeff, word in pairs:
            if isinstance(word, str):
                word = word_from_str(word)
            word = tuple(word)
            out[word] = out.get(word, 0) + coeff
        return cls(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FreePoly") -> "FreePoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FreePoly(out)

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) - c
        return FreePoly(out)

    def __neg__(self) -> "FreePoly":
        return FreePoly({w: -c for w, c in self.terms.items()})

    def __mul__(self, other) -> "FreePoly":
        if isinstance(other, FreePoly):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
            return FreePoly(out)
        return FreePoly({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, scalar) -> "FreePoly":
        return FreePoly({w: scalar * c for w, c in self.terms.items()})

    def degree(self) -> int | None:
        """Common degree of all words, or None for 0 / inhomogeneous."""
        degs = {len(w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.degree() is not None

    def t_grade(self) -> int | None:
        """Common count of capital letters, or None if mixed."""
        grades = {sum(1 for i in w if i >= 3) for w in self.terms}
        return grades.pop() if len(grades) == 1 else None

    def max_alphabet(self) -> int:
        return max((i for w in self.terms for i in w), default=-1) + 1

    def coeff_vector(self, d: int, alphabet: int = 3) -> list:
        ws = words_of_degree(d, alphabet)
        return [self.terms.get(w, 0) for w in ws]

    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            parts.append(f"{_fmt_coeff(self.terms[w])}*{word_str(w)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FreePoly({self.canonical_str()})"


def cyclic_derivative(W: FreePoly, v) -> FreePoly:
    """Cyclic derivative: rotate each occurrence of ``v`` to the front of
    its word, delete it, and sum with the word's coefficient."""
    if isinstance(v, str):
        v = gen_index(v)
    out: dict = {}
    for w, c in W.terms.items():
        for i, letter in enumerate(w):
            if letter == v:
                rot = w[i + 1 :] + w[:i]
                out[rot] = out.get(rot, 0) + c
    return FreePoly(out)


# ---------------------------------------------------------------------------
# Sklyanin data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SklyaninParams:
    """Projective parameter triple [a:b:c] of the quadratic algebra."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        if not (self.a or self.b or self.c):
            raise DegenerateParams("parameter triple (0,0,0)")

    def triple(self) -> tuple:
        return (self.a, self.b, self.c)

    def is_nondegenerate(self) -> bool:
        """abc != 0 and the associated Hesse cubic is smooth."""
        a, b, c = self.triple()
        if not (a and b and c):
            return False
        return (a**3 + b**3 + c**3) ** 3 != 27 * a**3 * b**3 * c**3


def _cyc(word: str) -> list[str]:
    return [word[i:] + word[:i] for i in range(len(word))]


def sklyanin_relations(params: SklyaninParams) -> list[FreePoly]:
    """The three defining quadratic relations a*yz + b*zy + c*x^2 etc."""
    a, b, c = params.triple()
    return [
        FreePoly.from_terms((a, "yz"), (b, "zy"), (c, "xx")),
        FreePoly.from_terms((a, "zx"), (b, "xz"), (c, "yy")),
        FreePoly.from_terms((a, "xy"), (b, "yx"), (c, "zz")),
    ]


def superpotential(params: SklyaninParams) -> tuple[FreePoly, FreePoly]:
    """Return (W, 3W) with W = a*xyz + b*yxz + (c/3)(x^3+y^3+z^3) and 3W in
    its cyclically symmetric form.

    Cyclic derivatives of W give the defining relations exactly; those of
    the symmetric form give three times the relations.
    """
    a, b, c = params.triple()
    c3rd = Fraction(c, 3) if isinstance(c, int) else c / 3
    short = FreePoly.from_terms(
        (a, "xyz"), (b, "yxz"), (c3rd, "xxx"), (c3rd, "yyy"), (c3rd, "zzz")
    )
    sym = FreePoly.from_terms(
        *[(a, w) for w in _cyc("xyz")],
        *[(b, w) for w in _cyc("yxz")],
        (c, "xxx"),
        (c, "yyy"),
        (c, "zzz"),
    )
    return short, sym


def central_element(params: SklyaninParams, form: str = "as") -> FreePoly:
    """The degree-3 central element.

    ``form="as"`` is the compact 4-term expression
    c(a^3-c^3)x^3 + a(b^3-c^3)xyz + b(c^3-a^3)yxz + c(c^3-b^3)y^3;
    ``form="symmetrized"`` is its cyclically symmetric rewriting of three
    times that element:
    a(b^3-c^3)(xyz+yzx+zxy) + b(c^3-a^3)(yxz+xzy+zyx) + c(a^3-b^3)(x^3+y^3+z^3).
    """
    a, b, c = params.triple()
    if form == "as":
        return FreePoly.from_terms(
            (c * (a**3 - c**3), "xxx"),
            (a * (b**3 - c**3), "xyz"),
            (b * (c**3 - a**3), "yxz"),
            (c * (c**3 - b**3), "yyy"),
        )
    if form == "symmetrized":
        return FreePoly.from_terms(
            *[(a * (b**3 - c**3), w) for w in _cyc("xyz")],
            *[(b * (c**3 - a**3), w) for w in _cyc("yxz")],
            (c * (a**3 - b**3), "xxx"),
            (c * (a**3 - b**3), "yyy"),
            (c * (a**3 - b**3), "zzz"),
        )
    raise ValueError(f"unknown form {form!r}")


def central_element_printed_statement(params: SklyaninParams) -> FreePoly:
    """The symmetrized expression with the first coefficient read as
    c(a^3-b^3) instead of a(b^3-c^3).

    This variant circulates in print but fails the ideal-membership test
    against 3x the compact form at generic parameters; it exists so reports
    can demonstrate the discrepancy rather than silently correct it.
    """
    a, b, c = params.triple()
    return FreePoly.from_terms(
        *[(c * (a**3 - b**3), w) for w in _cyc("xyz")],
        *[(b * (c**3 - a**3), w) for w in _cyc("yxz")],
        (c * (a**3 - b**3), "xxx"),
        (c * (a**3 - b**3), "yyy"),
        (c * (a**3 - b**3), "zzz"),
    )


# ---------------------------------------------------------------------------
# Graded quotient machinery
# ---------------------------------------------------------------------------


def ideal_component(relations: list[FreePoly], d: int) -> linalg.Mat:
    """Degree-d component of the two-sided ideal, as coefficient rows.

    Rows are the vectors of m * r * m' over all relations r and all word
    pairs with |m| + 2 + |m'| = d, in the fixed word basis.
    """
    if d < 2:
        return linalg.mat_exact([[Fraction(0)] * (3**d)])
    index = {w: i for i, w in enumerate(words_of_degree(d))}
    rows = []
    for r in relations:
        for k in range(d - 1):
            for m in words_of_degree(k):
                for mp in words_of_degree(d - 2 - k):
                    vec = [Fraction(0)] * (3**d)
                    for w, c in r.terms.items():
                        vec[index[m + w + mp]] = Fraction(c)
                    rows.append(vec)
    return linalg.mat_exact(rows)


class GradedQuotient:
    """Per-degree normal-form data for A = C<x,y,z>/(relations).

    Caches an integer echelon form of each degree's ideal component;
    membership verdicts and quotient dimensions are exact.  Instances are
    effectively immutable after a degree has been built.
    """

    def __init__(self, params: SklyaninParams):
        self.params = params
        self.relations = sklyanin_relations(params)
        self._cache: dict[int, linalg.EchelonForm] = {}

    def _component(self, d: int) -> linalg.EchelonForm:
        if d not in self._cache:
            ech = linalg.EchelonForm()
            if d >= 2:
                index = {w: i for i, w in enumerate(words_of_degree(d))}
                for r in self.relations:
                    int_terms = linalg._int_rows(
                        [[Fraction(c) for _, c in sorted(r.terms.items())]]
                    )[0]
                    words = [w for w, _ in sorted(r.terms.items())]
                    for k in range(d - 1):
                        for m in words_of_degree(k):
                            for mp in words_of_degree(d - 2 - k):
                                vec = [0] * (3**d)
                                for w, c in zip(words, int_terms):
                                    vec[index[m + w + mp]] = c
                                ech.insert(vec)
            self._cache[d] = ech
        return self._cache[d]

    def quotient_dim(self, d: int) -> int:
        if d < 0:
            raise ValueError("degree must be >= 0")
        return 3**d - self._component(d).rank

    def is_zero(self, f: FreePoly) -> bool:
        if not f:
            return True
        d = f.degree()
        if d is None:
            raise ValueError("membership test needs a homogeneous element")
        if f.max_alphabet() > 3:
            raise ValueError("quotient is over the lowercase alphabet only")
        return self._component(d).contains(f.coeff_vector(d))


def is_zero_in_A(f: FreePoly, q: GradedQuotient) -> bool:
    """True iff ``f`` lies in the defining ideal's degree component (a
    certified, exact verdict for rational coefficients)."""
    return q.is_zero(f)


def quotient_dim(q: GradedQuotient, d: int) -> int:
    return q.quotient_dim(d)


def quotient_dim_mod_prime(params: SklyaninParams, d: int, seed: int) -> int:
    """dim A_d computed over one seeded random 62-bit-safe prime.

    A Schwartz-Zippel accelerator: agreement of two independent primes is
    the acceptance-level corroboration.
    """
    mat = ideal_component(sklyanin_relations(params), d)
    nullity = linalg.solve_homogeneous_over_random_prime(mat, seed)
    return nullity


def centrality_check(f: FreePoly, q: GradedQuotient, gens: str = "xyz") -> dict[str, bool]:
    """For each generator g, whether f*g - g*f vanishes in the quotient."""
    out = {}
    for g in gens:
        gp = FreePoly.term(Fraction(1), g)
        out[g] = q.is_zero(f * gp - gp * f)
    return out
