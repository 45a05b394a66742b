"""Exact arithmetic in the algebra R = k<x,y>/(yx - 1) over the rationals.

Elements are finite rational combinations of the monomial basis x^i y^j
(i, j >= 0).  The single reduction yx = 1 gives the closed multiplication
rule (x^a y^b)(x^c y^d) = x^(a+c-t) y^(b+d-t) with t = min(b, c), so normal
forms never require rewriting.  This module also provides the involution
x <-> y, the truncated shift-matrix representation, the Laurent quotient
R/<1-xy>, and the differential-operator action on k[x].
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg

Monomial = tuple[int, int]

_FRAC0 = Fraction(0)
_FRAC1 = Fraction(1)


class ParseError(ValueError):
    """Raised on malformed element text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"parse error at position {pos}: {message}")
        self.pos = pos


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class AlgebraElement:
    """Immutable element of R: sparse map {(i, j): coefficient}, no zeros."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[Monomial, Fraction] = {}
        if terms:
            for (i, j), c in dict(terms).items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in monomial {(i, j)}")
                c = _as_fraction(c)
                if c:
                    data[(int(i), int(j))] = c
        self._terms = data

    @staticmethod
    def _raw(data: dict[Monomial, Fraction]) -> "AlgebraElement":
        elt = AlgebraElement.__new__(AlgebraElement)
        elt._terms = data
        return elt

    # -- basic queries --------------------------------------------------

    def terms(self) -> tuple:
        """Canonical ordered term tuple ((i, j, coeff), ...), sorted by (i, j)."""
        return tuple((i, j, c) for (i, j), c in sorted(self._terms.items()))

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), _FRAC0)

    def support(self):
        return self._terms.keys()

    @property
    def degree(self) -> int:
        """Max of i + j over the support; -1 for the zero element."""
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0): _as_fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(self.terms())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = acc.get(m, _FRAC0) + c
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
        return AlgebraElement._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgebraElement":
        c = _as_fraction(c)
        if not c:
            return ZERO
        return AlgebraElement._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        acc: dict[Monomial, Fraction] = {}
        for (a, b), c1 in self._terms.items():
            for (c, d), c2 in other._terms.items():
                t = b if b < c else c
                key = (a + c - t, b + d - t)
                v = acc.get(key, _FRAC0) + c1 * c2
                if v:
                    acc[key] = v
                elif key in acc:
                    del acc[key]
        return AlgebraElement._raw(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"AlgebraElement({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- canonical text / JSON forms ------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items()):
            mono = "*".join(
                ([f"x^{i}" if i > 1 else "x"] if i else [])
                + ([f"y^{j}" if j > 1 else "y"] if j else [])
            )
            mag = abs(c)
            if not mono:
                body = _frac_text(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_frac_text(mag)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def to_json(self) -> list:
        return [
            {"i": i, "j": j, "c": _frac_text(c)}
            for (i, j), c in sorted(self._terms.items())
        ]

    @staticmethod
    def from_json(data) -> "AlgebraElement":
        acc: dict[Monomial, Fraction] = {}
        for entry in data:
            m = (int(entry["i"]), int(entry["j"]))
            c = _as_fraction(entry["c"])
            v = acc.get(m, _FRAC0) + c
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
        return AlgebraElement(acc)


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def scalar(c) -> AlgebraElement:
    return AlgebraElement({(0, 0): _as_fraction(c)})


def monomial(i: int, j: int) -> AlgebraElement:
    return AlgebraElement({(i, j): _FRAC1})


ZERO = AlgebraElement()
ONE = monomial(0, 0)
X = monomial(1, 0)
Y = monomial(0, 1)


def involution(a: AlgebraElement) -> AlgebraElement:
    """The order-2 anti-automorphism sending x -> y and y -> x.

    On monomials it reverses words: x^i y^j -> x^j y^i.  It cannot be an
    algebra homomorphism, since that would send yx = 1 to xy != 1.
    """
    return AlgebraElement._raw({(j, i): c for (i, j), c in a._terms.items()})


def matrix_unit(i: int, j: int) -> AlgebraElement:
    """M_ij = x^i (1 - xy) y^j; these multiply like infinite matrix units."""
    if i < 0 or j < 0:
        raise ValueError("matrix unit indices must be nonnegative")
    return monomial(i, 0) * (ONE - X * Y) * monomial(0, j)


# -- truncated shift representation -------------------------------------


class TruncMatrix:
    """n x n matrix with exact rational entries (tuple-of-tuples storage)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(_as_fraction(v) for v in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.n = n
        self.rows = rows

    @staticmethod
    def identity(n: int) -> "TruncMatrix":
        return TruncMatrix(
            [[_FRAC1 if i == j else _FRAC0 for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, pq):
        p, q = pq
        return self.rows[p][q]

    def __eq__(self, other):
        return isinstance(other, TruncMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return TruncMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __mul__(self, other):
        if not isinstance(other, TruncMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        out = [[_FRAC0] * n for _ in range(n)]
        for p in range(n):
            row = self.rows[p]
            acc = out[p]
            for k in range(n):
                a = row[k]
                if a:
                    other_row = other.rows[k]
                    for q in range(n):
                        b = other_row[q]
                        if b:
                            acc[q] += a * b
        return TruncMatrix(out)

    def block(self, size: int) -> tuple:
        """Top-left size x size block as a tuple of tuples."""
        size = max(size, 0)
        return tuple(r[:size] for r in self.rows[:size])

    def __repr__(self):
        return f"TruncMatrix({[list(map(str, r)) for r in self.rows]})"


def to_matrix(a: AlgebraElement, n: int) -> TruncMatrix:
    """Truncation of the shift representation: x is the right shift e_k -> e_{k+1},
    y the left shift with y e_0 = 0.

    Injective on elements of degree < n.  Multiplicative only up to the border:
    the top-left (n - d) x (n - d) block of to_matrix(a * b, n) agrees with the
    same block of to_matrix(a, n) * to_matrix(b, n), d = degree(a) + degree(b).
    """
    if n < 1:
        raise ValueError("truncation dimension must be >= 1")
    out = [[_FRAC0] * n for _ in range(n)]
    for (i, j), c in a._terms.items():
        # x^i y^j sends e_q to e_{q-j+i} when q >= j, else to 0.
        for q in range(j, n):
            p = q - j + i
            if p < n:
                out[p][q] += c
    return TruncMatrix(out)


# -- Laurent quotient R/<1-xy> ~ k[t, t^-1] ------------------------------


class LaurentPoly:
    """Laurent polynomial over Q: sparse map {exponent: coefficient}."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[int, Fraction] = {}
        if terms:
            for e, c in dict(terms).items():
                c = _as_fraction(c)
                if c:
                    data[int(e)] = c
        self._terms = data

    def terms(self) -> tuple:
        return tuple(sorted(self._terms.items()))

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, _FRAC0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: _as_fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(self.terms())

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({0: other})
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e, _FRAC0) + c
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return LaurentPoly({e: c * v for e, v in self._terms.items()})
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                v = acc.get(e, _FRAC0) + c1 * c2
                if v:
                    acc[e] = v
                elif e in acc:
                    del acc[e]
        return LaurentPoly(acc)

    __rmul__ = __mul__

    @property
    def min_exp(self) -> int:
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        return max(self._terms)

    def is_unit(self) -> bool:
        """Units of k[t, t^-1] are the nonzero monomials c t^k."""
        return len(self._terms) == 1

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            mag = abs(c)
            if not mono:
                body = _frac_text(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_frac_text(mag)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self):
        return self.to_text()


def laurent_image(a: AlgebraElement) -> LaurentPoly:
    """Algebra map R -> k[t, t^-1], x -> t, y -> t^-1.

    Its kernel is the two-sided ideal generated by 1 - xy, so every matrix
    unit maps to zero.
    """
    acc: dict[int, Fraction] = {}
    for (i, j), c in a._terms.items():
        e = i - j
        v = acc.get(e, _FRAC0) + c
        if v:
            acc[e] = v
        elif e in acc:
            del acc[e]
    return LaurentPoly(acc)


def laurent_gcd(polys) -> LaurentPoly:
    """Monic generator of the ideal of k[t, t^-1] generated by polys.

    Normal form: a monic polynomial in t with nonzero constant term (units t^k
    are stripped).  Returns 0 for the zero ideal.
    """
    nonzero = [p for p in polys if p]
    if not nonzero:
        return LaurentPoly()
    g = _strip_unit(nonzero[0])
    for p in nonzero[1:]:
        g = _poly_gcd(g, _strip_unit(p))
        if g.max_exp == 0:
            break
    return g


def _strip_unit(p: LaurentPoly) -> LaurentPoly:
    shift = -p.min_exp
    lead = p.coeff(p.max_exp)
    return LaurentPoly({e + shift: c / lead for e, c in p._terms.items()})


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    # Euclid on honest polynomials (both already have constant term != 0).
    da = dict(a._terms)
    db = dict(b._terms)
    while db:
        da = _poly_mod(da, db)
        da, db = db, da
    top = max(da)
    lead = da[top]
    return LaurentPoly({e: c / lead for e, c in da.items()})


def _poly_mod(a: dict, b: dict) -> dict:
    a = dict(a)
    db = max(b)
    lead = b[db]
    while a and max(a) >= db:
        e = max(a)
        f = a[e] / lead
        for eb, cb in b.items():
            k = e - db + eb
            v = a.get(k, _FRAC0) - f * cb
            if v:
                a[k] = v
            elif k in a:
                del a[k]
    return a


# -- differential-operator picture on k[x] -------------------------------


def diffop_action(a: AlgebraElement, p: LaurentPoly) -> LaurentPoly:
    """Action of R on k[x] through x -> (multiplication by x) and
    y -> H^(-1) d/dx, where H(f) = d/dx (x f).

    H is diagonal with eigenvalue m + 1 on x^m, so the y-action needs
    characteristic zero.  Under x^n <-> b_n this is exactly the shift module.
    """
    if p and p.min_exp < 0:
        raise ValueError("diffop_action acts on polynomials, not Laurent series")
    out = LaurentPoly()
    for (i, j), c in a._terms.items():
        q = p
        for _ in range(j):
            q = _h_inverse(_ddx(q))
        out = out + LaurentPoly({e + i: c * v for e, v in q._terms.items()})
    return out


def _ddx(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({e - 1: c * e for e, c in p._terms.items() if e})


def _h_inverse(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({e: c / (e + 1) for e, c in p._terms.items()})


# -- degree windows and the center ---------------------------------------


def window(D: int) -> list[Monomial]:
    """Monomials of degree <= D in the canonical graded order."""
    return [(i, d - i) for d in range(D + 1) for i in range(d + 1)]


def element_vector(a: AlgebraElement, index: dict[Monomial, int]) -> dict[int, Fraction]:
    vec = {}
    for m, c in a._terms.items():
        pos = index.get(m)
        if pos is None:
            raise ValueError(f"monomial {m} outside the coordinate window")
        vec[pos] = c
    return vec


def vector_element(vec: dict[int, Fraction], monomials) -> AlgebraElement:
    return AlgebraElement({monomials[k]: c for k, c in vec.items()})


def center_slice(D: int) -> list[AlgebraElement]:
    """Canonical basis of {a : degree(a) <= D, ax = xa and ay = ya}.

    The center of R is just the scalars, so this should always come out as
    the span of 1.
    """
    if D < 0:
        raise ValueError("degree bound must be >= 0")
    mons = window(D)
    big = window(D + 1)
    big_index = {m: k for k, m in enumerate(big)}
    rows = []
    for g in (X, Y):
        cols = []
        for m in mons:
            mm = monomial(*m)
            cols.append(element_vector(mm * g - g * mm, big_index))
        for target in range(len(big)):
            row = [col.get(target, _FRAC0) for col in cols]
            if any(row):
                rows.append(row)
    basis = linalg.kernel_dense(rows, len(mons))
    return [vector_element(v, mons) for v in basis]


# -- parsing --------------------------------------------------------------


def parse_element(text: str) -> AlgebraElement:
    """Parse the canonical text form (sums of c*x^i*y^j) or the JSON form."""
    stripped = text.strip()
    if stripped.startswith("["):
        import json

        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON element: {exc.msg}", exc.pos) from None
        return AlgebraElement.from_json(data)
    return _parse_text(text)


def _parse_text(text: str) -> AlgebraElement:
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_nat() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a number", start)
        return int(text[start:pos])

    def parse_factor() -> AlgebraElement:
        nonlocal pos
        ch = text[pos]
        if ch.isdigit():
            num = parse_nat()
            if pos < n and text[pos] == "/":
                pos += 1
                if pos >= n or not text[pos].isdigit():
                    raise ParseError("expected a denominator", pos)
                den = parse_nat()
                if den == 0:
                    raise ParseError("zero denominator", pos - 1)
                return scalar(Fraction(num, den))
            return scalar(num)
        if ch in "xy":
            pos += 1
            exp = 1
            if pos < n and text[pos] == "^":
                pos += 1
                if pos >= n or not text[pos].isdigit():
                    raise ParseError("expected a nonnegative exponent", pos)
                exp = parse_nat()
            return monomial(exp, 0) if ch == "x" else monomial(0, exp)
        raise ParseError(f"unexpected character {ch!r}", pos)

    def parse_term() -> AlgebraElement:
        nonlocal pos
        acc = None
        while True:
            skip_ws()
            if pos >= n or text[pos] in "+-":
                break
            if text[pos] == "*":
                if acc is None:
                    raise ParseError("unexpected '*'", pos)
                pos += 1
                skip_ws()
                if pos >= n:
                    raise ParseError("dangling '*'", pos)
            factor = parse_factor()
            acc = factor if acc is None else acc * factor
        if acc is None:
            raise ParseError("empty term", pos)
        return acc

    total = ZERO
    skip_ws()
    if pos >= n:
        raise ParseError("empty input", pos)
    sign = 1
    if text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    while True:
        term = parse_term()
        total = total + term.scale(sign)
        skip_ws()
        if pos >= n:
            return total
        if text[pos] == "+":
            sign = 1
        elif text[pos] == "-":
            sign = -1
        else:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
        skip_ws()
        if pos >= n:
            raise ParseError("dangling sign", pos)
