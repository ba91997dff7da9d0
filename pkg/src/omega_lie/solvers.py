"""Solution spaces of the linear definitional identities.

Each solver turns one identity (derivation, centroid, commuting map,
biderivation, ...) into an exact linear system over the vectorized unknown
and returns the canonical nullspace basis:

* linear maps are vectorized row-major over their stored matrix,
  ``M[r][c] -> r*n + c``;
* bilinear maps are vectorized ``d[i][j][k] -> (i*n + j)*n + k``.

Constraints are assembled on basis tuples only: every identity involved is
multilinear, so holding on basis tuples is equivalent to holding on the
whole algebra.  Enumeration order is fixed (pairs ``i < j``, triples
lexicographic), which makes the assembled systems, and therefore the
canonical bases, fully deterministic.

Every solver result can be re-checked: ``map_defects`` / ``tensor_defects``
re-instantiate the defining identity on all basis tuples and report any
nonzero residual, and the test suite asserts these are empty for every
returned basis element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .algebra import BilinearMap, LinearMap, OmegaAlgebra
from .linalg import (
    Matrix,
    SparseRow,
    SubspaceBasis,
    Vector,
    ZERO,
    frac,
    nullspace_of_sparse_rows,
)

MAP_KINDS = (
    "derivation",
    "omega_derivation",
    "centroid",
    "commuting",
    "anticommuting",
    "delta_derivation",
)

TENSOR_KINDS = ("biderivation", "symmetric", "skew", "omega_biderivation")


def _bump(row: SparseRow, index: int, value: Fraction) -> None:
    if not value:
        return
    acc = row.get(index, ZERO) + value
    if acc:
        row[index] = acc
    else:
        del row[index]


@dataclass(frozen=True)
class MapSpace:
    """Canonical solution space of a linear-map identity.

    ``space`` lives in ambient dimension ``n**2`` (row-major vectorization of
    the stored matrices); ``system`` is the assembled constraint matrix, kept
    so callers can inspect the raw equations.
    """

    algebra: OmegaAlgebra
    kind: str
    space: SubspaceBasis
    system: Matrix
    delta: Optional[Fraction] = None

    @property
    def rank(self) -> int:
        return self.space.rank

    def matrices(self) -> tuple[Matrix, ...]:
        n = self.algebra.dim
        return tuple(
            Matrix(tuple(tuple(row[i * n + j] for j in range(n)) for i in range(n)), n)
            for row in self.space.basis
        )

    def maps(self) -> tuple[LinearMap, ...]:
        return tuple(LinearMap(m) for m in self.matrices())

    def contains_map(self, f: LinearMap) -> bool:
        return self.space.contains(vectorize_map(f.matrix))


@dataclass(frozen=True)
class TensorSpace:
    """Canonical solution space of a bilinear-map identity (ambient ``n**3``)."""

    algebra: OmegaAlgebra
    kind: str
    space: SubspaceBasis
    system: Matrix

    @property
    def rank(self) -> int:
        return self.space.rank

    def tensors(self) -> tuple[BilinearMap, ...]:
        n = self.algebra.dim
        return tuple(
            BilinearMap(
                tuple(
                    tuple(tuple(row[(i * n + j) * n + k] for k in range(n)) for j in range(n))
                    for i in range(n)
                )
            )
            for row in self.space.basis
        )

    def contains_tensor(self, t: BilinearMap) -> bool:
        return self.space.contains(vectorize_tensor(t))


def vectorize_map(matrix: Matrix) -> Vector:
    return tuple(x for row in matrix.rows for x in row)


def vectorize_tensor(t: BilinearMap) -> Vector:
    return tuple(x for plane in t.tensor for row in plane for x in row)


def _finish_map_space(
    algebra: OmegaAlgebra, kind: str, rows: list[SparseRow], delta: Optional[Fraction] = None
) -> MapSpace:
    n = algebra.dim
    ambient = n * n
    space, _ = nullspace_of_sparse_rows(ambient, rows)
    system = Matrix(
        tuple(tuple(row.get(j, ZERO) for j in range(ambient)) for row in rows), ambient
    )
    return MapSpace(algebra, kind, space, system, delta)


def _finish_tensor_space(algebra: OmegaAlgebra, kind: str, rows: list[SparseRow]) -> TensorSpace:
    n = algebra.dim
    ambient = n * n * n
    space, _ = nullspace_of_sparse_rows(ambient, rows)
    system = Matrix(
        tuple(tuple(row.get(j, ZERO) for j in range(ambient)) for row in rows), ambient
    )
    return TensorSpace(algebra, kind, space, system)


# -- linear-map solvers -------------------------------------------------------


def _leibniz_rows(algebra: OmegaAlgebra, weight: Fraction) -> Iterator[SparseRow]:
    """Rows of ``D([e_i,e_j]) - weight*([D e_i, e_j] + [e_i, D e_j]) = 0``.

    The unknown is the row-stored matrix of ``D``; both sides are antisymmetric
    in ``(i, j)``, so pairs ``i < j`` carry the full system.
    """
    n = algebra.dim
    c = algebra.structure
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row: SparseRow = {}
                for m in range(n):
                    _bump(row, m * n + k, c[i][j][m])
                for p in range(n):
                    _bump(row, i * n + p, -weight * c[p][j][k])
                    _bump(row, j * n + p, -weight * c[i][p][k])
                if row:
                    yield row


def derivations(algebra: OmegaAlgebra) -> MapSpace:
    """All ``D`` with ``D([x,y]) = [D(x), y] + [x, D(y)]``."""
    rows = list(_leibniz_rows(algebra, Fraction(1)))
    return _finish_map_space(algebra, "derivation", rows)


def delta_derivations(algebra: OmegaAlgebra, delta) -> MapSpace:
    """All ``D`` with ``D([x,y]) = delta * ([D(x), y] + [x, D(y)])``.

    ``delta = 1`` assembles exactly the derivation system; ``delta = 1/2``
    gives the half-derivations.
    """
    delta = frac(delta)
    rows = list(_leibniz_rows(algebra, delta))
    return _finish_map_space(algebra, "delta_derivation", rows, delta=delta)


def half_derivations(algebra: OmegaAlgebra) -> MapSpace:
    return delta_derivations(algebra, Fraction(1, 2))


def _omega_compat_rows(algebra: OmegaAlgebra) -> Iterator[SparseRow]:
    """Rows of ``w(D(e_i), e_j) + w(e_i, D(e_j)) = 0`` for ``i < j``."""
    n = algebra.dim
    w = algebra.omega
    for i in range(n):
        for j in range(i + 1, n):
            row: SparseRow = {}
            for p in range(n):
                _bump(row, i * n + p, w[p][j])
                _bump(row, j * n + p, w[i][p])
            if row:
                yield row


def omega_derivations(algebra: OmegaAlgebra) -> MapSpace:
    """Derivations compatible with the skew form; always inside ``derivations``."""
    rows = list(_leibniz_rows(algebra, Fraction(1)))
    rows.extend(_omega_compat_rows(algebra))
    return _finish_map_space(algebra, "omega_derivation", rows)


def _pairwise_rows(algebra: OmegaAlgebra, kind: str) -> Iterator[SparseRow]:
    """Rows for the centroid / commuting / anticommuting identities.

    These identities are not antisymmetric in ``(x, y)``, so all ordered basis
    pairs are enumerated (duplicates reduce away).
    """
    n = algebra.dim
    c = algebra.structure
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row: SparseRow = {}
                if kind == "centroid":
                    # a([e_i,e_j]) - [a(e_i), e_j]
                    for m in range(n):
                        _bump(row, m * n + k, c[i][j][m])
                    for p in range(n):
                        _bump(row, i * n + p, -c[p][j][k])
                elif kind == "commuting":
                    # [a(e_i), e_j] - [e_i, a(e_j)]
                    for p in range(n):
                        _bump(row, i * n + p, c[p][j][k])
                        _bump(row, j * n + p, -c[i][p][k])
                elif kind == "anticommuting":
                    # [a(e_i), e_j] - [a(e_j), e_i]
                    for p in range(n):
                        _bump(row, i * n + p, c[p][j][k])
                        _bump(row, j * n + p, -c[p][i][k])
                else:
                    raise ValueError(f"unknown pairwise kind {kind!r}")
                if row:
                    yield row


def centroid(algebra: OmegaAlgebra) -> MapSpace:
    """All ``a`` with ``a([x,y]) = [a(x), y]``."""
    return _finish_map_space(algebra, "centroid", list(_pairwise_rows(algebra, "centroid")))


def commuting_maps(algebra: OmegaAlgebra) -> MapSpace:
    """All ``a`` with ``[a(x), y] = [x, a(y)]``."""
    return _finish_map_space(algebra, "commuting", list(_pairwise_rows(algebra, "commuting")))


def anticommuting_maps(algebra: OmegaAlgebra) -> MapSpace:
    """All ``a`` with ``[a(x), y] = [a(y), x]``."""
    return _finish_map_space(algebra, "anticommuting", list(_pairwise_rows(algebra, "anticommuting")))


# -- bilinear solvers ---------------------------------------------------------


def _biderivation_rows(algebra: OmegaAlgebra) -> Iterator[SparseRow]:
    """Both defining identities of a biderivation on basis triples.

    First identity (a derivation in the first slot), antisymmetric in
    ``(i, j)``:  ``delta([e_i,e_j], e_k) = [e_i, delta(e_j,e_k)] + [delta(e_i,e_k), e_j]``.
    Second identity (a derivation in the second slot), antisymmetric in
    ``(j, k)``:  ``delta(e_i, [e_j,e_k]) = [e_j, delta(e_i,e_k)] + [delta(e_i,e_j), e_k]``.
    """
    n = algebra.dim
    c = algebra.structure

    def var(i: int, j: int, k: int) -> int:
        return (i * n + j) * n + k

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for m in range(n):
                    row: SparseRow = {}
                    for p in range(n):
                        _bump(row, var(p, k, m), c[i][j][p])
                        _bump(row, var(j, k, p), -c[i][p][m])
                        _bump(row, var(i, k, p), -c[p][j][m])
                    if row:
                        yield row
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                for m in range(n):
                    row = {}
                    for p in range(n):
                        _bump(row, var(i, p, m), c[j][k][p])
                        _bump(row, var(i, k, p), -c[j][p][m])
                        _bump(row, var(i, j, p), -c[p][k][m])
                    if row:
                        yield row


def _symmetry_rows(n: int, sign: int) -> Iterator[SparseRow]:
    """``d[i][j][k] - sign * d[j][i][k] = 0`` (sign=+1 symmetric, -1 skew)."""

    def var(i: int, j: int, k: int) -> int:
        return (i * n + j) * n + k

    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                row: SparseRow = {}
                _bump(row, var(i, j, k), Fraction(1))
                _bump(row, var(j, i, k), Fraction(-sign))
                if row:
                    yield row


def biderivations(algebra: OmegaAlgebra) -> TensorSpace:
    """All bilinear maps that are derivations in each slot."""
    return _finish_tensor_space(algebra, "biderivation", list(_biderivation_rows(algebra)))


def symmetric_biderivations(algebra: OmegaAlgebra) -> TensorSpace:
    rows = list(_biderivation_rows(algebra))
    rows.extend(_symmetry_rows(algebra.dim, +1))
    return _finish_tensor_space(algebra, "symmetric", rows)


def skew_biderivations(algebra: OmegaAlgebra) -> TensorSpace:
    rows = list(_biderivation_rows(algebra))
    rows.extend(_symmetry_rows(algebra.dim, -1))
    return _finish_tensor_space(algebra, "skew", rows)


def _omega_bider_rows(algebra: OmegaAlgebra, sign: Fraction) -> Iterator[SparseRow]:
    """Skew-form compatibility of both partial maps of a biderivation.

    For each triple: ``w(delta(e_i,e_j), e_k) + sign * w(e_j, delta(e_i,e_k)) = 0``
    and ``w(delta(e_i,e_j), e_k) + sign * w(e_i, delta(e_k,e_j)) = 0``.
    ``sign`` selects between the displayed-equality reading (-1) and the
    compatible-with-omega-derivations reading (+1); see omega_biderivations.
    """
    n = algebra.dim
    w = algebra.omega

    def var(i: int, j: int, k: int) -> int:
        return (i * n + j) * n + k

    for i in range(n):
        for j in range(n):
            for k in range(n):
                row: SparseRow = {}
                for q in range(n):
                    _bump(row, var(i, j, q), w[q][k])
                    _bump(row, var(i, k, q), sign * w[j][q])
                if row:
                    yield row
                row = {}
                for q in range(n):
                    _bump(row, var(i, j, q), w[q][k])
                    _bump(row, var(k, j, q), sign * w[i][q])
                if row:
                    yield row


OMEGA_BIDERIVATION_SIGN = Fraction(-1)


def omega_biderivations(algebra: OmegaAlgebra, sign: Optional[Fraction] = None) -> TensorSpace:
    """Biderivations whose partial maps are compatible with the skew form.

    The compatibility family is ``w(delta(x,y), z) = w(y, delta(x,z))`` together
    with ``w(delta(x,y), z) = w(x, delta(z,y))`` (the module default,
    ``sign = -1`` in the assembled row).  Always a subspace of
    ``biderivations``.
    """
    if sign is None:
        sign = OMEGA_BIDERIVATION_SIGN
    rows = list(_biderivation_rows(algebra))
    rows.extend(_omega_bider_rows(algebra, frac(sign)))
    return _finish_tensor_space(algebra, "omega_biderivation", rows)


def split_biderivation(t: BilinearMap) -> tuple[BilinearMap, BilinearMap]:
    """Symmetric/skew parts ``(t+, t-)`` with ``t = t+ + t-``."""
    n = t.dim
    half = Fraction(1, 2)
    sym = tuple(
        tuple(
            tuple(half * (t.tensor[i][j][k] + t.tensor[j][i][k]) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )
    skw = tuple(
        tuple(
            tuple(half * (t.tensor[i][j][k] - t.tensor[j][i][k]) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )
    return BilinearMap(sym), BilinearMap(skw)


# -- residual checks ----------------------------------------------------------


def map_defects(
    algebra: OmegaAlgebra, kind: str, f: LinearMap, delta: Optional[Fraction] = None
) -> list[tuple[int, int, Vector]]:
    """Nonzero residuals of the defining identity of ``kind`` on basis pairs.

    Returns ``[(i, j, residual), ...]`` with 1-based indices; empty means the
    map satisfies the identity exactly.
    """
    n = algebra.dim
    basis = algebra.basis_vectors()
    out = []
    weight = Fraction(1) if delta is None else frac(delta)
    for i in range(n):
        for j in range(n):
            ei, ej = basis[i], basis[j]
            fi, fj = f.apply(ei), f.apply(ej)
            if kind in ("derivation", "delta_derivation"):
                lhs = f.apply(algebra.bracket(ei, ej))
                rhs = tuple(
                    weight * (a + b)
                    for a, b in zip(algebra.bracket(fi, ej), algebra.bracket(ei, fj))
                )
            elif kind == "omega_derivation":
                lhs = f.apply(algebra.bracket(ei, ej))
                rhs = tuple(a + b for a, b in zip(algebra.bracket(fi, ej), algebra.bracket(ei, fj)))
                scalar = algebra.omega_form(fi, ej) + algebra.omega_form(ei, fj)
                if scalar:
                    out.append((i + 1, j + 1, (scalar,)))
            elif kind == "centroid":
                lhs = f.apply(algebra.bracket(ei, ej))
                rhs = algebra.bracket(fi, ej)
            elif kind == "commuting":
                lhs = algebra.bracket(fi, ej)
                rhs = algebra.bracket(ei, fj)
            elif kind == "anticommuting":
                lhs = algebra.bracket(fi, ej)
                rhs = algebra.bracket(fj, ei)
            else:
                raise ValueError(f"unknown map kind {kind!r}")
            residual = tuple(a - b for a, b in zip(lhs, rhs))
            if any(residual):
                out.append((i + 1, j + 1, residual))
    return out


def tensor_defects(
    algebra: OmegaAlgebra, kind: str, t: BilinearMap, omega_sign: Optional[Fraction] = None
) -> list[tuple[tuple[int, int, int], Vector]]:
    """Nonzero residuals of the biderivation identities on basis triples."""
    n = algebra.dim
    basis = algebra.basis_vectors()
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                ei, ej, ek = basis[i], basis[j], basis[k]
                first = tuple(
                    a - b - c
                    for a, b, c in zip(
                        t.apply(algebra.bracket(ei, ej), ek),
                        algebra.bracket(ei, t.apply(ej, ek)),
                        algebra.bracket(t.apply(ei, ek), ej),
                    )
                )
                second = tuple(
                    a - b - c
                    for a, b, c in zip(
                        t.apply(ei, algebra.bracket(ej, ek)),
                        algebra.bracket(ej, t.apply(ei, ek)),
                        algebra.bracket(t.apply(ei, ej), ek),
                    )
                )
                if any(first):
                    out.append(((i + 1, j + 1, k + 1), first))
                if any(second):
                    out.append(((i + 1, j + 1, k + 1), second))
                if kind == "omega_biderivation":
                    sign = OMEGA_BIDERIVATION_SIGN if omega_sign is None else frac(omega_sign)
                    s1 = algebra.omega_form(t.apply(ei, ej), ek) + sign * algebra.omega_form(
                        ej, t.apply(ei, ek)
                    )
                    s2 = algebra.omega_form(t.apply(ei, ej), ek) + sign * algebra.omega_form(
                        ei, t.apply(ek, ej)
                    )
                    if s1:
                        out.append(((i + 1, j + 1, k + 1), (s1,)))
                    if s2:
                        out.append(((i + 1, j + 1, k + 1), (s2,)))
    if kind == "symmetric" and not t.is_symmetric():
        out.append(((0, 0, 0), (Fraction(1),)))
    if kind == "skew" and not t.is_skew():
        out.append(((0, 0, 0), (Fraction(1),)))
    return out


def solve_map_space(algebra: OmegaAlgebra, kind: str, delta=None) -> MapSpace:
    """Dispatch by kind name (used by the CLI)."""
    if kind == "derivation":
        return derivations(algebra)
    if kind == "omega_derivation":
        return omega_derivations(algebra)
    if kind == "centroid":
        return centroid(algebra)
    if kind == "commuting":
        return commuting_maps(algebra)
    if kind == "anticommuting":
        return anticommuting_maps(algebra)
    if kind == "delta_derivation":
        if delta is None:
            raise ValueError("delta_derivation needs a delta value")
        return delta_derivations(algebra, delta)
    raise ValueError(f"unknown map kind {kind!r}")


def solve_tensor_space(algebra: OmegaAlgebra, kind: str) -> TensorSpace:
    if kind == "biderivation":
        return biderivations(algebra)
    if kind == "symmetric":
        return symmetric_biderivations(algebra)
    if kind == "skew":
        return skew_biderivations(algebra)
    if kind == "omega_biderivation":
        return omega_biderivations(algebra)
    raise ValueError(f"unknown tensor kind {kind!r}")


def row_space_contains(system: Matrix, functional: SparseRow) -> bool:
    """Whether a linear functional is implied by (in the row span of) a system."""
    from .linalg import _Echelon  # local import to keep the module surface small

    ech = _Echelon(system.ncols)
    for row in system.rows:
        ech.insert({j: v for j, v in enumerate(row) if v})
    return not ech.reduce(dict(functional))
