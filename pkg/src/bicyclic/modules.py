"""The two simple module shapes over R and module-map checking.

``Fin(lam)`` is the one-dimensional module where x acts as the nonzero scalar
lam and y as its inverse.  ``InfShift`` is the faithful simple module with
basis b_0, b_1, ... on which x raises and y lowers the index (y kills b_0);
it is the unique infinite-dimensional simple and matches k[x] under
b_n <-> x^n.  Indexing is 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, X, Y, _as_fraction

_FRAC0 = Fraction(0)
_FRAC1 = Fraction(1)


class ShapeMismatch(ValueError):
    """A vector or map does not fit the module shape it was used with."""


@dataclass(frozen=True)
class Fin:
    """One-dimensional simple module k_lam on basis vector d (index 0)."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", _as_fraction(self.lam))
        if not self.lam:
            raise ValueError("the scalar of a one-dimensional module must be nonzero")


@dataclass(frozen=True)
class InfShift:
    """The shift module on basis b_0, b_1, ...: x raises, y lowers, y b_0 = 0."""


SimpleDesc = Fin | InfShift


class Vec:
    """Finite-support vector over a 0-based index set; immutable, no zeros."""

    __slots__ = ("_coords",)

    def __init__(self, coords=None):
        data: dict[int, Fraction] = {}
        if coords:
            for n, c in dict(coords).items():
                if n < 0:
                    raise ValueError("negative basis index")
                c = _as_fraction(c)
                if c:
                    data[int(n)] = c
        self._coords = data

    @staticmethod
    def basis(n: int) -> "Vec":
        return Vec({n: 1})

    @staticmethod
    def zero() -> "Vec":
        return Vec()

    def coords(self) -> tuple:
        return tuple(sorted(self._coords.items()))

    def get(self, n: int) -> Fraction:
        return self._coords.get(n, _FRAC0)

    def support(self):
        return self._coords.keys()

    @property
    def max_index(self) -> int:
        """Largest index in the support; -1 for the zero vector."""
        return max(self._coords) if self._coords else -1

    def __bool__(self):
        return bool(self._coords)

    def __eq__(self, other):
        return isinstance(other, Vec) and self._coords == other._coords

    def __hash__(self):
        return hash(self.coords())

    def __add__(self, other):
        acc = dict(self._coords)
        for n, c in other._coords.items():
            v = acc.get(n, _FRAC0) + c
            if v:
                acc[n] = v
            elif n in acc:
                del acc[n]
        out = Vec.__new__(Vec)
        out._coords = acc
        return out

    def __neg__(self):
        out = Vec.__new__(Vec)
        out._coords = {n: -c for n, c in self._coords.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Vec":
        c = _as_fraction(c)
        out = Vec.__new__(Vec)
        out._coords = {} if not c else {n: c * v for n, v in self._coords.items()}
        return out

    def __rmul__(self, c):
        return self.scale(c)

    def __repr__(self):
        return f"Vec({dict(sorted(self._coords.items()))})"


def check_vector(desc: SimpleDesc, v: Vec) -> None:
    if isinstance(desc, Fin) and any(n != 0 for n in v.support()):
        raise ShapeMismatch("a one-dimensional module vector only has index 0")


def act(desc: SimpleDesc, a: AlgebraElement, v: Vec) -> Vec:
    """Exact action of a on v.  Fin(lam): x^i y^j scales by lam^(i-j);
    InfShift: x^i y^j b_n = b_{n-j+i} if n >= j, else 0."""
    check_vector(desc, v)
    acc: dict[int, Fraction] = {}
    if isinstance(desc, Fin):
        c0 = v.get(0)
        if c0:
            total = _FRAC0
            for i, j, c in a.terms():
                total += c * desc.lam ** (i - j)
            if total:
                acc[0] = total * c0
    else:
        for i, j, c in a.terms():
            for n, cv in v._coords.items():
                if n >= j:
                    k = n - j + i
                    w = acc.get(k, _FRAC0) + c * cv
                    if w:
                        acc[k] = w
                    elif k in acc:
                        del acc[k]
    out = Vec.__new__(Vec)
    out._coords = acc
    return out


@dataclass(frozen=True)
class LinMap:
    """k-linear map between simple modules, given by finitely many columns.

    ``cols[n]`` is the image of source basis vector n; absent columns are
    zero, so the map vanishes eventually by construction.  Maps with
    genuinely infinite support cannot be represented and are rejected here.
    """

    src: SimpleDesc
    dst: SimpleDesc
    cols: tuple

    @staticmethod
    def from_cols(src: SimpleDesc, dst: SimpleDesc, cols) -> "LinMap":
        cleaned = []
        for n, v in sorted(dict(cols).items()):
            if n < 0:
                raise ValueError("negative column index")
            if isinstance(src, Fin) and n != 0:
                raise ShapeMismatch("maps out of a one-dimensional module only have column 0")
            check_vector(dst, v)
            if v:
                cleaned.append((int(n), v))
        return LinMap(src, dst, tuple(cleaned))

    @staticmethod
    def zero(src: SimpleDesc, dst: SimpleDesc) -> "LinMap":
        return LinMap.from_cols(src, dst, {})

    def col(self, n: int) -> Vec:
        for k, v in self.cols:
            if k == n:
                return v
        return Vec.zero()

    def col_dict(self) -> dict[int, Vec]:
        return dict(self.cols)

    @property
    def max_col(self) -> int:
        return self.cols[-1][0] if self.cols else -1

    def __bool__(self):
        return bool(self.cols)

    def apply(self, v: Vec) -> Vec:
        check_vector(self.src, v)
        out = Vec.zero()
        for n, c in sorted(v._coords.items()):
            out = out + self.col(n).scale(c)
        return out

    def scale(self, c) -> "LinMap":
        c = _as_fraction(c)
        return LinMap.from_cols(
            self.src, self.dst, {n: v.scale(c) for n, v in self.cols}
        )


# -- module wrappers with a uniform act interface -------------------------


class SimpleModule:
    """A simple module as an act-provider (vectors are Vec)."""

    def __init__(self, desc: SimpleDesc):
        self.desc = desc

    def act(self, a: AlgebraElement, v: Vec) -> Vec:
        return act(self.desc, a, v)

    def zero(self) -> Vec:
        return Vec.zero()


class RegularModule:
    """R acting on itself by left multiplication (vectors are AlgebraElements)."""

    def act(self, a: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        return a * v

    def zero(self) -> AlgebraElement:
        from .algebra import ZERO

        return ZERO


def is_module_map(f, src: SimpleDesc, dst, bound: int):
    """Check that the linear extension of ``f`` intertwines the x- and
    y-actions on source basis vectors 0..bound.

    Since x and y generate R, intertwining for these two suffices on the
    checked span.  ``f`` maps a basis index to a vector of ``dst`` (any
    object with ``act``/``zero``).  Returns (True, None) or
    (False, (generator, index, lhs, rhs)).
    """
    if isinstance(src, Fin):
        lam = src.lam
        img = f(0)
        for gen, g, factor in (("x", X, lam), ("y", Y, 1 / lam)):
            lhs = img.scale(factor)
            rhs = dst.act(g, img)
            if lhs != rhs:
                return False, (gen, 0, lhs, rhs)
        return True, None
    for n in range(bound + 1):
        img = f(n)
        cases = [("x", X, f(n + 1)), ("y", Y, f(n - 1) if n >= 1 else dst.zero())]
        for gen, g, lhs in cases:
            rhs = dst.act(g, img)
            if lhs != rhs:
                return False, (gen, n, lhs, rhs)
    return True, None


def column_intertwiner_check(i_max: int, deg_max: int) -> dict:
    """Verify that b_i -> M_{i,c} identifies the shift module with column c
    of the socle ideal, for every c <= i_max.

    All monomial actions of degree <= deg_max are compared directly against
    multiplication in R; basis indices are checked out to deg_max + 2 so that
    every shift that stays in range is exercised.
    """
    from .algebra import matrix_unit, monomial

    failures = []
    checked = 0
    i_bound = deg_max + 2
    monomials = [
        (i, d - i) for d in range(deg_max + 1) for i in range(d + 1)
    ]
    for c in range(i_max + 1):
        images = [matrix_unit(i, c) for i in range(i_bound + deg_max + 1)]
        if len({img.terms() for img in images}) != len(images):
            failures.append({"column": c, "reason": "images not independent"})
            continue
        for mi, mj in monomials:
            mono = monomial(mi, mj)
            for i in range(i_bound + 1):
                shifted = act(InfShift(), mono, Vec.basis(i))
                expected = sum(
                    (images[n].scale(coeff) for n, coeff in shifted.coords()),
                    start=matrix_unit(0, 0).scale(0),
                )
                got = mono * images[i]
                checked += 1
                if expected != got:
                    failures.append(
                        {
                            "column": c,
                            "monomial": [mi, mj],
                            "basis": i,
                            "expected": expected.to_json(),
                            "got": got.to_json(),
                        }
                    )
    return {
        "ok": not failures,
        "columns": i_max + 1,
        "monomial_degree": deg_max,
        "checked": checked,
        "failures": failures,
    }


def cyclic_witness(v: Vec) -> AlgebraElement:
    """An explicit r with act(InfShift, r, v) = b_0 for nonzero v.

    Uses the least support index n0: (1 - xy) y^n0 kills every higher basis
    vector and lands v's n0 component on b_0.
    """
    from .algebra import ONE, monomial

    if not v:
        raise ValueError("zero vector generates the zero submodule")
    n0 = min(v.support())
    killer = (ONE - X * Y) * monomial(0, n0)
    return killer.scale(1 / v.get(n0))


# -- JSON forms -----------------------------------------------------------


def desc_to_json(desc: SimpleDesc) -> dict:
    if isinstance(desc, Fin):
        from .algebra import _frac_text

        return {"type": "fin", "lambda": _frac_text(desc.lam)}
    return {"type": "inf"}


def desc_from_json(data: dict) -> SimpleDesc:
    if data.get("type") == "fin":
        return Fin(Fraction(str(data["lambda"])))
    if data.get("type") == "inf":
        return InfShift()
    raise ValueError(f"unknown module descriptor: {data!r}")


def vec_to_json(desc: SimpleDesc, v: Vec) -> dict:
    from .algebra import _frac_text

    if isinstance(desc, Fin):
        return {"d": _frac_text(v.get(0))}
    return {"coords": {str(n): _frac_text(c) for n, c in v.coords()}}


def vec_from_json(desc: SimpleDesc, data: dict) -> Vec:
    if isinstance(desc, Fin):
        return Vec({0: Fraction(str(data.get("d", "0")))})
    return Vec({int(n): Fraction(str(c)) for n, c in data.get("coords", {}).items()})
