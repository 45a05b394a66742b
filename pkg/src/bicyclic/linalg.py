"""Exact linear algebra over the rationals.

Small dense and sparse Gaussian elimination helpers used by the degree-window
computations.  Vectors are either dense lists of Fractions or sparse dicts
mapping coordinate index -> nonzero Fraction.  All pivoting is exact; nothing
here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class RowSpace:
    """A subspace of Q^n kept in reduced row-echelon form.

    Rows are sparse dicts with pivot coefficient 1.  The pivot of a row is its
    smallest coordinate index, so the coordinate ordering is the integer order
    of the indices.  Back-reduction is maintained on every insertion, which
    makes ``rows()`` a canonical basis: two RowSpaces are equal as subspaces
    iff their row lists are equal.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[int, dict[int, Fraction]] = {}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Residual of vec modulo the current rows (vec is not consumed)."""
        vec = dict(vec)
        while vec:
            lead = min(vec)
            row = self.pivots.get(lead)
            if row is None:
                return vec
            c = vec[lead]
            for k, v in row.items():
                w = vec.get(k, ZERO) - c * v
                if w:
                    vec[k] = w
                elif k in vec:
                    del vec[k]
        return vec

    def contains(self, vec: dict[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict[int, Fraction]) -> bool:
        """Add vec to the span; returns True iff the dimension grew."""
        res = self.reduce(vec)
        if not res:
            return False
        lead = min(res)
        inv = ONE / res[lead]
        new_row = {k: v * inv for k, v in res.items()}
        for row in self.pivots.values():
            c = row.get(lead)
            if c:
                for k, v in new_row.items():
                    w = row.get(k, ZERO) - c * v
                    if w:
                        row[k] = w
                    elif k in row:
                        del row[k]
        self.pivots[lead] = new_row
        return True

    def rows(self) -> list[dict[int, Fraction]]:
        return [dict(self.pivots[k]) for k in sorted(self.pivots)]

    def canonical(self) -> tuple:
        """Hashable canonical form (rows as sorted item tuples)."""
        return tuple(
            tuple(sorted(self.pivots[k].items())) for k in sorted(self.pivots)
        )

    def le(self, other: "RowSpace") -> bool:
        return all(other.contains(r) for r in self.pivots.values())

    def copy(self) -> "RowSpace":
        new = RowSpace()
        new.pivots = {k: dict(r) for k, r in self.pivots.items()}
        return new


def span(vectors) -> RowSpace:
    rs = RowSpace()
    for v in vectors:
        rs.add(v)
    return rs


def intersect(a: RowSpace, b: RowSpace, n: int) -> RowSpace:
    """Zassenhaus intersection of two subspaces of Q^n."""
    big = RowSpace()
    for r in a.rows():
        big.add({**r, **{k + n: v for k, v in r.items()}})
    for r in b.rows():
        big.add(dict(r))
    out = RowSpace()
    for piv, row in big.pivots.items():
        if piv >= n:
            out.add({k - n: v for k, v in row.items()})
    return out


def rref_dense(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return rows, pivots


def kernel_dense(rows: list[list[Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Canonical sparse basis of {v in Q^ncols : M v = 0} for equation rows M."""
    work = [list(r) for r in rows]
    work, pivots = rref_dense(work)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = {f: ONE}
        for r, p in zip(work, pivots):
            if r[f]:
                vec[p] = -r[f]
        basis.append(vec)
    return span(basis).rows()


def solve_dense(rows: list[list[Fraction]], rhs: list[Fraction]):
    """One solution of M v = rhs, or None if the system is inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(rows[0]) if rows else 0
    aug, pivots = rref_dense(aug)
    if n in pivots:
        return None
    sol = [ZERO] * n
    for r, p in zip(aug, pivots):
        sol[p] = r[-1]
    return sol
