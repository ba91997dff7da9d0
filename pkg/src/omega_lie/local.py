"""Local and 2-local membership analysis with exact certificates.

Given a solution space of matrices (derivations, half-derivations, ...) or
an affine matrix family, this module decides sampled local-membership
questions:

* ``local_closure`` intersects, over a deterministic set of sample points
  ``x``, the linear constraint ``B x in W(x)`` where ``W(x)`` is the set of
  values the space can attain at ``x``.  The result always contains the
  base space, so when the intersection collapses onto the base the collapse
  is a sound certificate: every sampled-local map already lies in the base.
* ``separating_vector`` looks for a point where evaluation is injective on
  the space; at such a point any 2-local map is pinned to a single member
  of the space, which is the rigidity argument ``two_local_report`` encodes.
* ``affine_local_closure`` runs the same per-point analysis against an
  affine family (base matrix plus parameter directions), as used for the
  structure-preserving matrix families.

Throughout this module a space element ``S`` acts on a point by the plain
matrix product ``S @ x`` over the stored matrix, matching the matrix forms
in which the solution spaces are stored and analyzed.

Results are bitwise deterministic for a fixed :class:`SamplePlan`: samples
are the basis vectors, then all pairwise sums, then seeded random vectors.
Samples only ever shrink the candidate, so certification is one-sided: a
collapse proves rigidity, while a non-collapse only reports a witness for
manual study (a degenerate locus could still cut the candidate down).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .algebra import OmegaAlgebra
from .linalg import (
    Matrix,
    SparseRow,
    SubspaceBasis,
    Vector,
    ZERO,
    frac,
    nullspace,
    nullspace_of_sparse_rows,
    solve_affine,
    vector,
)
from .solvers import MapSpace, vectorize_map

DEFAULT_SEED = 0xC0FFEE
DEFAULT_RANDOM_COUNT = 8
_RANDOM_ENTRY_POOL = tuple(Fraction(v) for v in (-5, -4, -3, -2, -1, 1, 2, 3, 4, 5))


@dataclass(frozen=True)
class SamplePlan:
    """Deterministic sample-point plan: basis, pairwise sums, seeded randoms."""

    seed: int = DEFAULT_SEED
    random_count: int = DEFAULT_RANDOM_COUNT

    def points(self, dim: int) -> tuple[Vector, ...]:
        basis = [
            tuple(Fraction(1) if j == i else ZERO for j in range(dim)) for i in range(dim)
        ]
        sums = [
            tuple(a + b for a, b in zip(basis[i], basis[j]))
            for i in range(dim)
            for j in range(i + 1, dim)
        ]
        rng = random.Random(self.seed)
        randoms = [
            tuple(rng.choice(_RANDOM_ENTRY_POOL) for _ in range(dim))
            for _ in range(self.random_count)
        ]
        return tuple(basis + sums + randoms)

    def fresh_points(self, dim: int, count: int, stream: int = 1) -> tuple[Vector, ...]:
        """Extra random rational points from an independent seeded stream."""
        rng = random.Random((self.seed << 4) ^ stream)
        pts = []
        for _ in range(count):
            pts.append(
                tuple(
                    Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(dim)
                )
            )
        return tuple(pts)


def evaluate(matrix: Matrix, x: Sequence[Fraction]) -> Vector:
    """Action of a stored space matrix on a point: plain ``S @ x``."""
    return matrix.matvec(x)


@dataclass(frozen=True)
class EvaluationSubspace:
    """Attainable values ``{S x : S in space}`` at one point ``x``."""

    point: Vector
    space: SubspaceBasis

    @property
    def rank(self) -> int:
        return self.space.rank


def evaluation_subspace(space: MapSpace, x: Sequence) -> EvaluationSubspace:
    x = vector(x)
    n = space.algebra.dim
    if len(x) != n:
        raise ValueError(f"point must have length {n}")
    images = [evaluate(m, x) for m in space.matrices()]
    return EvaluationSubspace(x, SubspaceBasis.from_generators(n, images))


def _membership_rows(x: Vector, w: SubspaceBasis) -> list[SparseRow]:
    """Linear conditions on vec(B) expressing ``B x in W``.

    For every functional q annihilating W:  sum_{k,j} q_k x_j B[k][j] = 0.
    """
    n = len(x)
    annihilator = nullspace(Matrix(tuple(w.basis), n)) if w.rank else SubspaceBasis.full(n)
    rows = []
    for q in annihilator.basis:
        row: SparseRow = {}
        for k in range(n):
            if not q[k]:
                continue
            for j in range(n):
                if x[j]:
                    row[k * n + j] = q[k] * x[j]
        if row:
            rows.append(row)
    return rows


@dataclass(frozen=True)
class LocalClosureResult:
    base: MapSpace
    candidate: SubspaceBasis
    certified: bool
    samples_used: tuple[Vector, ...]
    witness: Optional[Matrix] = None

    @property
    def candidate_rank(self) -> int:
        return self.candidate.rank


def local_closure(algebra: OmegaAlgebra, space: MapSpace, plan: Optional[SamplePlan] = None) -> LocalClosureResult:
    """Sampled upper bound on the local set of ``space``, with certificate.

    ``candidate`` is the set of matrices ``B`` with ``B x in W(x)`` at every
    sample; it always contains ``space`` and contains every sampled-local
    map, so ``certified`` (candidate == space) proves that every local map
    is already a member of the space.
    """
    plan = plan or SamplePlan()
    n = algebra.dim
    if space.algebra.dim != n:
        raise ValueError("space and algebra dimensions differ")
    samples = plan.points(n)
    rows: list[SparseRow] = []
    for x in samples:
        w = evaluation_subspace(space, x).space
        rows.extend(_membership_rows(x, w))
    candidate, _ = nullspace_of_sparse_rows(n * n, rows)
    for base_vec in space.space.basis:
        if not candidate.contains(base_vec):
            raise AssertionError("soundness violation: base space escaped its own local closure")
    certified = candidate == space.space
    witness = None
    if not certified:
        for row in candidate.basis:
            if not space.space.contains(row):
                witness = Matrix(tuple(tuple(row[i * n + j] for j in range(n)) for i in range(n)), n)
                break
    return LocalClosureResult(
        base=space,
        candidate=candidate,
        certified=certified,
        samples_used=samples,
        witness=witness,
    )


def recheck_certification(
    algebra: OmegaAlgebra,
    result: LocalClosureResult,
    points: int = 500,
    plan: Optional[SamplePlan] = None,
) -> bool:
    """Independent spot check of a certified closure on fresh random points.

    Every candidate basis matrix must satisfy ``B x in W(x)`` at each fresh
    point; used by the verification suite to back up ``certified == True``.
    """
    plan = plan or SamplePlan()
    n = algebra.dim
    space = result.base
    for x in plan.fresh_points(n, points):
        w = evaluation_subspace(space, x).space
        for row in result.candidate.basis:
            b = Matrix(tuple(tuple(row[i * n + j] for j in range(n)) for i in range(n)), n)
            if not w.contains(evaluate(b, x)):
                return False
    return True


LOCAL_CERTIFIED = "LOCAL_CERTIFIED"
LOCAL_ON_SAMPLES = "LOCAL_ON_SAMPLES"
NOT_LOCAL = "NOT_LOCAL"


@dataclass(frozen=True)
class LocalMemberVerdict:
    status: str
    witness: Optional[Vector] = None  # point where membership fails


def is_local_member(
    algebra: OmegaAlgebra,
    space: MapSpace,
    candidate: Matrix,
    plan: Optional[SamplePlan] = None,
) -> LocalMemberVerdict:
    """Decide sampled local membership of one matrix against a space.

    ``NOT_LOCAL`` comes with a concrete witness point; membership in the
    base space upgrades the verdict to ``LOCAL_CERTIFIED`` (members of the
    space are local at every point, not just the samples).
    """
    plan = plan or SamplePlan()
    n = algebra.dim
    if candidate.shape != (n, n):
        raise ValueError("candidate matrix has wrong shape")
    for x in plan.points(n):
        w = evaluation_subspace(space, x).space
        if not w.contains(evaluate(candidate, x)):
            return LocalMemberVerdict(NOT_LOCAL, witness=x)
    if space.space.contains(vectorize_map(candidate)):
        return LocalMemberVerdict(LOCAL_CERTIFIED)
    return LocalMemberVerdict(LOCAL_ON_SAMPLES)


@dataclass(frozen=True)
class SeparatingCertificate:
    """A point where evaluation is injective on the space (kernel rank 0)."""

    point: Vector
    kernel_rank: int
    conclusion: str


def kernel_rank(space: MapSpace, e: Sequence) -> int:
    """Dimension of ``{S in space : S e = 0}``."""
    e = vector(e)
    images = [evaluate(m, e) for m in space.matrices()]
    eval_rank = SubspaceBasis.from_generators(space.algebra.dim, images).rank
    return space.rank - eval_rank


def separating_vector(space: MapSpace, candidates: Sequence[Sequence]) -> Optional[SeparatingCertificate]:
    """First candidate point where the space evaluates injectively.

    Returns ``None`` when the space rank exceeds the algebra dimension
    (injective evaluation is then impossible) or when no candidate works.
    """
    n = space.algebra.dim
    if space.rank > n:
        return None
    for e in candidates:
        e = vector(e)
        if kernel_rank(space, e) == 0:
            return SeparatingCertificate(
                point=e,
                kernel_rank=0,
                conclusion=(
                    "evaluation at this point is injective on the space, so any map agreeing "
                    "pointwise with space members is a single member globally"
                ),
            )
    return None


RIGID = "RIGID"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class TwoLocalReport:
    verdict: str
    certificate: Optional[SeparatingCertificate]
    min_kernel_rank: Optional[int]
    kernel_ranks: tuple[tuple[Vector, int], ...] = ()


def two_local_report(
    algebra: OmegaAlgebra, space: MapSpace, plan: Optional[SamplePlan] = None
) -> TwoLocalReport:
    """Rigidity via a separating vector.

    ``RIGID``: some candidate point pins space members uniquely, hence any
    2-local map w.r.t. the space is globally a member.  ``INCONCLUSIVE``:
    no sampled point separates (for example when the space rank exceeds the
    algebra dimension); the minimal kernel ranks found are reported.
    """
    plan = plan or SamplePlan()
    candidates = plan.points(algebra.dim)
    cert = separating_vector(space, candidates)
    if cert is not None:
        return TwoLocalReport(RIGID, cert, 0)
    ranks = tuple((x, kernel_rank(space, x)) for x in candidates)
    return TwoLocalReport(
        INCONCLUSIVE,
        None,
        min(r for _, r in ranks) if ranks else None,
        kernel_ranks=ranks,
    )


# -- affine families ----------------------------------------------------------


@dataclass(frozen=True)
class AffineCondition:
    """An affine functional of the family parameters that must stay nonzero."""

    constant: Fraction
    coefficients: tuple[tuple[str, Fraction], ...]

    @classmethod
    def make(cls, constant, coefficients: Mapping[str, object]) -> "AffineCondition":
        return cls(frac(constant), tuple(sorted((k, frac(v)) for k, v in coefficients.items())))

    def describe(self) -> str:
        parts = [str(self.constant)] if self.constant else []
        for name, coeff in self.coefficients:
            if coeff == 1:
                parts.append(name)
            else:
                parts.append(f"{coeff}*{name}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} != 0"


@dataclass(frozen=True)
class AffineFamily:
    """Matrix family ``base + sum_i t_i * directions[i]`` with open conditions."""

    base: Matrix
    directions: tuple[Matrix, ...]
    open_conditions: tuple[AffineCondition, ...] = ()
    parameter_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = self.base.nrows
        if self.base.ncols != n:
            raise ValueError("affine family base must be square")
        for d in self.directions:
            if d.shape != (n, n):
                raise ValueError("affine family directions must match the base shape")
        if not self.parameter_names:
            object.__setattr__(
                self, "parameter_names", tuple(f"t{i+1}" for i in range(len(self.directions)))
            )
        elif len(self.parameter_names) != len(self.directions):
            raise ValueError("one parameter name per direction required")

    @property
    def dim(self) -> int:
        return self.base.nrows

    def realized(self, values: Mapping[str, object]) -> Matrix:
        out = self.base
        for name, direction in zip(self.parameter_names, self.directions):
            coeff = frac(values.get(name, 0))
            if coeff:
                out = out.add(direction.scale(coeff))
        return out

    def hull_directions(self) -> SubspaceBasis:
        n = self.dim
        return SubspaceBasis.from_generators(n * n, [vectorize_map(d) for d in self.directions])


MATCHES_FAMILY_HULL = "MATCHES_FAMILY_HULL"
PROPER_SUBSET_OF_HULL = "PROPER_SUBSET_OF_HULL"
EXCEEDS_FAMILY_HULL = "EXCEEDS_FAMILY_HULL"
EMPTY = "EMPTY"


@dataclass(frozen=True)
class AffineClosureResult:
    family: AffineFamily
    particular: Optional[Matrix]
    directions: SubspaceBasis
    comparison: str
    caveats: tuple[str, ...]
    samples_used: tuple[Vector, ...]

    @property
    def matches_family_hull(self) -> bool:
        return self.comparison == MATCHES_FAMILY_HULL

    def functional_value(self, coefficients: Mapping[tuple[int, int], object]):
        """Value of ``sum coeff[i,j] * B[i][j]`` over the closure, if constant.

        ``(i, j)`` are 0-based matrix positions.  Returns the constant
        Fraction, or ``None`` when the functional varies over the closure
        (or the closure is empty).
        """
        if self.particular is None:
            return None
        n = self.family.dim
        coeffs = {(i, j): frac(v) for (i, j), v in coefficients.items()}
        for row in self.directions.basis:
            drift = sum((c * row[i * n + j] for (i, j), c in coeffs.items()), ZERO)
            if drift:
                return None
        return sum((c * self.particular.rows[i][j] for (i, j), c in coeffs.items()), ZERO)


def affine_local_closure(
    algebra: OmegaAlgebra, family: AffineFamily, plan: Optional[SamplePlan] = None
) -> AffineClosureResult:
    """All matrices pointwise-attainable by the family at every sample.

    Solves ``{B : for all sampled x, B x in base@x + span(direction@x)}`` as
    an affine set and compares it against the family's own affine hull.
    Open conditions are surfaced as caveats but not enforced: they cut out
    parameter loci, not directions of the hull.
    """
    plan = plan or SamplePlan()
    n = algebra.dim
    if family.dim != n:
        raise ValueError("family and algebra dimensions differ")
    samples = plan.points(n)
    rows: list[tuple[SparseRow, Fraction]] = []
    for x in samples:
        base_image = evaluate(family.base, x)
        span = SubspaceBasis.from_generators(n, [evaluate(d, x) for d in family.directions])
        annihilator = nullspace(Matrix(tuple(span.basis), n)) if span.rank else SubspaceBasis.full(n)
        for q in annihilator.basis:
            row: SparseRow = {}
            for k in range(n):
                if not q[k]:
                    continue
                for j in range(n):
                    if x[j]:
                        row[k * n + j] = q[k] * x[j]
            rhs = sum((q[k] * base_image[k] for k in range(n)), ZERO)
            if row or rhs:
                rows.append((row, rhs))
    system = Matrix(
        tuple(tuple(row.get(j, ZERO) for j in range(n * n)) for row, _ in rows), n * n
    )
    rhs_vec = tuple(rhs for _, rhs in rows)
    caveats = tuple(
        f"open condition (not enforced): {cond.describe()}" for cond in family.open_conditions
    ) + (
        "membership in the closure does not by itself guarantee invertibility at boundary parameters",
    )
    solved = solve_affine(system, rhs_vec)
    if solved is None:
        return AffineClosureResult(
            family=family,
            particular=None,
            directions=SubspaceBasis.zero(n * n),
            comparison=EMPTY,
            caveats=caveats,
            samples_used=samples,
        )
    particular_vec, homogeneous = solved
    particular = Matrix(
        tuple(tuple(particular_vec[i * n + j] for j in range(n)) for i in range(n)), n
    )
    hull = family.hull_directions()
    base_vec = vectorize_map(family.base)
    shift_in_hull = hull.contains(tuple(p - b for p, b in zip(particular_vec, base_vec)))
    if homogeneous == hull and shift_in_hull:
        comparison = MATCHES_FAMILY_HULL
    elif homogeneous.is_subspace_of(hull) and shift_in_hull:
        comparison = PROPER_SUBSET_OF_HULL
    else:
        comparison = EXCEEDS_FAMILY_HULL
    return AffineClosureResult(
        family=family,
        particular=particular,
        directions=homogeneous,
        comparison=comparison,
        caveats=caveats,
        samples_used=samples,
    )
