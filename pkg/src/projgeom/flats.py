"""Projective subspaces of PG(n-1, K) over a division ring K.

Coordinates form a *right* vector space: a projective point is the set of
right multiples ``v * t`` of a nonzero vector, and every elimination step
multiplies on the matching side.  A :class:`Flat` stores the unique reduced
row echelon basis of its subspace (pivot entries 1, zeros above and below
each pivot), so two flats are equal exactly when their rows are equal.

The ambient dimension is the vector length: 4 for PG(3, K), 3 when a
plane is used on its own.  A flat of full rank is the whole space; the empty
intersection is reported as ``None``.
"""
from __future__ import annotations

from itertools import combinations, product
from random import Random
from typing import Iterable, Iterator, Sequence

from .scalars import Ring, Scalar, sweep


class DegenerateError(ValueError):
    """A construction needed a point or line that does not exist."""


class Flat:
    __slots__ = ("ring", "rows", "_hash")

    def __init__(self, ring: Ring, rows: tuple[tuple[Scalar, ...], ...]):
        # rows must already be canonical; use canonicalize() from outside
        self.ring = ring
        self.rows = rows
        self._hash = hash((ring.tag, rows))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows[0])

    @property
    def is_point(self) -> bool:
        return len(self.rows) == 1

    @property
    def is_line(self) -> bool:
        return len(self.rows) == 2

    @property
    def is_plane(self) -> bool:
        return len(self.rows) == 3

    @property
    def is_full(self) -> bool:
        return len(self.rows) == len(self.rows[0])

    @property
    def coords(self) -> tuple[Scalar, ...]:
        """The normalized coordinate vector of a point."""
        if len(self.rows) != 1:
            raise ValueError("coords is defined for points only")
        return self.rows[0]

    def __eq__(self, other):
        if not isinstance(other, Flat):
            return NotImplemented
        return self._hash == other._hash and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        kind = {1: "Point", 2: "Line", 3: "Plane"}.get(self.rank, f"Flat{self.rank}")
        body = "; ".join(",".join(self.ring.format(x) for x in row) for row in self.rows)
        return f"{kind}[{self.ring.tag}]({body})"


def _check_ring(*flats: Flat) -> Ring:
    ring = flats[0].ring
    dim = flats[0].dim
    for f in flats[1:]:
        if f.ring != ring:
            raise TypeError(f"ring mismatch: {ring.tag} vs {f.ring.tag}")
        if f.dim != dim:
            raise ValueError(f"dimension mismatch: {dim} vs {f.dim}")
    return ring


def echelon(ring: Ring, vectors: Iterable[Sequence[Scalar]]) -> tuple[tuple[Scalar, ...], ...]:
    """Reduced row echelon basis of the right span of ``vectors``."""
    rows = [list(v) for v in vectors]
    if not rows:
        return ()
    zero = ring.zero
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inverse(rows[r][c])
        pivot_row = [x * inv for x in rows[r]]
        rows[r] = pivot_row
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != zero:
                    rows[i] = [x - y * f for x, y in zip(rows[i], pivot_row)]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r])


def right_kernel(ring: Ring, matrix: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Basis of ``{x : matrix @ x == 0}`` with x scaled on the right."""
    rows = [list(r) for r in matrix]
    m = len(rows[0])
    zero, one = ring.zero, ring.one
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inverse(rows[r][c])
        pivot_row = [inv * x for x in rows[r]]
        rows[r] = pivot_row
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != zero:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(m) if c not in pivots):
        x = [zero] * m
        x[free] = one
        for i, pc in enumerate(pivots):
            x[pc] = -rows[i][free]
        basis.append(x)
    return basis


def canonicalize(vectors: Iterable[Sequence], ring: Ring) -> Flat:
    """The flat spanned (on the right) by ``vectors``.

    Entries may be ring elements, ints or canonical strings.  Dependent
    generators simply lower the rank; an all-zero input is an error.
    """
    vecs = [tuple(ring.coerce(x) for x in v) for v in vectors]
    if not vecs:
        raise ValueError("no generators given")
    if len({len(v) for v in vecs}) != 1:
        raise ValueError("generators have different lengths")
    rows = echelon(ring, vecs)
    if not rows:
        raise ValueError("generators are all zero")
    return Flat(ring, rows)


def point(ring: Ring, *coords) -> Flat:
    return canonicalize([coords], ring)


def span(*flats: Flat) -> Flat:
    ring = _check_ring(*flats)
    return Flat(ring, echelon(ring, [row for f in flats for row in f.rows]))


def join(f1: Flat, f2: Flat) -> Flat:
    """Smallest flat containing both arguments."""
    return span(f1, f2)


def meet(f1: Flat, f2: Flat) -> Flat | None:
    """Largest common subflat, or ``None`` when the intersection is empty."""
    ring = _check_ring(f1, f2)
    gens = list(f1.rows)
    other = [[-x for x in row] for row in f2.rows]
    n = f1.dim
    matrix = [[g[r] for g in gens] + [h[r] for h in other] for r in range(n)]
    kernel = right_kernel(ring, matrix)
    if not kernel:
        return None
    k = len(gens)
    zero = ring.zero
    vectors = []
    for x in kernel:
        v = [zero] * n
        for i in range(k):
            if x[i] != zero:
                v = [a + g * x[i] for a, g in zip(v, gens[i])]
        vectors.append(v)
    return Flat(ring, echelon(ring, vectors))


def contains_vector(flat: Flat, v: Sequence[Scalar]) -> bool:
    residual = list(v)
    zero = flat.ring.zero
    for row in flat.rows:
        p = next(c for c, x in enumerate(row) if x != zero)
        lam = residual[p]
        if lam != zero:
            residual = [a - b * lam for a, b in zip(residual, row)]
    return all(x == zero for x in residual)


def incident(sub: Flat, sup: Flat) -> bool:
    """True iff ``sub`` is contained in ``sup``."""
    _check_ring(sub, sup)
    if sub.rank > sup.rank:
        return False
    return all(contains_vector(sup, row) for row in sub.rows)


def are_skew(l1: Flat, l2: Flat) -> bool:
    if not (l1.is_line and l2.is_line):
        raise ValueError("are_skew needs two lines")
    if l1.dim != 4:
        raise ValueError("skewness needs a 3-dimensional ambient space")
    return meet(l1, l2) is None


def meets(l1: Flat, l2: Flat) -> bool:
    return meet(l1, l2) is not None


def rank_of(points: Iterable[Flat]) -> int:
    pts = list(points)
    return span(*pts).rank


def collinear(points: Sequence[Flat]) -> bool:
    return rank_of(points) <= 2


def coplanar(points: Sequence[Flat]) -> bool:
    return rank_of(points) <= 3


def line_through(p: Flat, q: Flat) -> Flat:
    """The line joining two distinct points."""
    if p == q:
        raise DegenerateError("line through two equal points")
    return join(p, q)


def meet_point(l1: Flat, l2: Flat) -> Flat:
    """The intersection point of two distinct meeting flats."""
    m = meet(l1, l2)
    if m is None or not m.is_point:
        raise DegenerateError("flats do not meet in a single point")
    return m


def dual(flat: Flat) -> Flat | None:
    """The annihilator of ``flat`` read back as a flat (commutative rings only).

    Points and hyperplanes swap; ``dual(dual(f)) == f``.  ``None`` is returned
    for the full space.
    """
    if not flat.ring.commutative:
        raise TypeError("duality is only defined over commutative rings")
    kernel = right_kernel(flat.ring, flat.rows)
    if not kernel:
        return None
    return Flat(flat.ring, echelon(flat.ring, kernel))


def full_space(ring: Ring, dim: int = 4) -> Flat:
    rows = tuple(tuple(ring.one if i == j else ring.zero for j in range(dim)) for i in range(dim))
    return Flat(ring, rows)


def _coefficient_tuples(ring: Ring, k: int) -> Iterator[tuple[Scalar, ...]]:
    """Normalized projective coefficient tuples over a finite ring."""
    elems = ring.elements()
    for lead in range(k):
        head = (ring.zero,) * lead + (ring.one,)
        for tail in product(elems, repeat=k - lead - 1):
            yield head + tail


def _combine(flat: Flat, coeffs: Sequence[Scalar]) -> tuple[Scalar, ...]:
    zero = flat.ring.zero
    v = [zero] * flat.dim
    for row, lam in zip(flat.rows, coeffs):
        if lam != zero:
            v = [a + b * lam for a, b in zip(v, row)]
    return tuple(v)


def points_of(flat: Flat) -> Iterator[Flat]:
    """All points of ``flat`` over a finite ring; a deterministic endless
    sweep of distinct points otherwise."""
    ring = flat.ring
    if ring.finite:
        for coeffs in _coefficient_tuples(ring, flat.rank):
            yield Flat(ring, echelon(ring, [_combine(flat, coeffs)]))
        return
    seen = set()
    # rows first, then combinations built from a growing pool of small scalars
    for row in flat.rows:
        p = Flat(ring, echelon(ring, [row]))
        seen.add(p)
        yield p
    pool: list[Scalar] = []
    for x in sweep(ring):
        pool.append(x)
        for coeffs in product(pool, repeat=flat.rank):
            if x not in coeffs or all(c == ring.zero for c in coeffs):
                continue
            p = Flat(ring, echelon(ring, [_combine(flat, coeffs)]))
            if p not in seen:
                seen.add(p)
                yield p


def random_point_on(flat: Flat, rng: Random, height: int = 4) -> Flat:
    ring = flat.ring
    while True:
        coeffs = [ring.random(rng, height) for _ in range(flat.rank)]
        if any(c != ring.zero for c in coeffs):
            return Flat(ring, echelon(ring, [_combine(flat, coeffs)]))


def random_point(ring: Ring, rng: Random, dim: int = 4, height: int = 4) -> Flat:
    return random_point_on(full_space(ring, dim), rng, height)


def enumerate_flats(ring: Ring, rank: int, dim: int = 4) -> list[Flat]:
    """Every subspace of the given rank, listed by reduced echelon pattern."""
    if not ring.finite:
        raise ValueError("enumeration needs a finite ring")
    elems = ring.elements()
    out = []
    for pivots in combinations(range(dim), rank):
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, dim) if c not in pivots]
        for values in product(elems, repeat=len(free)):
            rows = [[ring.zero] * dim for _ in range(rank)]
            for i, p in enumerate(pivots):
                rows[i][p] = ring.one
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            out.append(Flat(ring, tuple(tuple(r) for r in rows)))
    return out
