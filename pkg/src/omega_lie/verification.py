"""Reference-reproduction suite: every headline claim as an executable check.

Each criterion runs the relevant solvers or local analyses with exact
arithmetic and compares the output against the shipped reference values
(:mod:`omega_lie.catalog`).  Checks are pure and deterministic; a check
either passes or reports precisely which computed value deviates from the
reference one.

Several reference rows are mechanically inconsistent with the bracket
tables they accompany, so the corresponding checks fail by design rather
than being weakened; the per-item details name every deviation, and the
catalog entry notes document the analyzed causes (see also the project
README).  An independent brute-force oracle (unit-tensor residual
evaluation, :func:`oracle_biderivation_space`) reproduces the solver output
bit for bit on every contested space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import catalog
from .algebra import BilinearMap, LinearMap, bracket_tensor, check_axioms
from .linalg import Matrix, SubspaceBasis, nullspace, rref
from .local import (
    AffineCondition,
    AffineFamily,
    SamplePlan,
    affine_local_closure,
    kernel_rank,
    local_closure,
    recheck_certification,
    two_local_report,
)
from .solvers import (
    anticommuting_maps,
    biderivations,
    centroid,
    commuting_maps,
    delta_derivations,
    derivations,
    half_derivations,
    map_defects,
    omega_biderivations,
    omega_derivations,
    row_space_contains,
    skew_biderivations,
    symmetric_biderivations,
    tensor_defects,
    vectorize_map,
    vectorize_tensor,
)

TWO_LOCAL_RIGID_KEYS = (
    "L_{1,3}",
    "L_{1,4}",
    "L_{1,7}",
    "L_{1,8}",
    "L_{2,2}",
    "L_{2,3}",
    "L_{2,4}",
    "F_{1,alpha}",
)

SIMPLE_3D_KEYS = ("A_alpha", "B", "C_alpha")


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    details: tuple[str, ...] = ()

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title}"


def _result(number: int, title: str, mismatches: list[str], notes: Optional[list[str]] = None) -> CheckResult:
    details = tuple(notes or ()) + tuple(mismatches)
    return CheckResult(number, title, not mismatches, details)


def _all_instances():
    for entry in catalog.list_entries():
        for sample in entry.parameter_samples():
            params = {"alpha": sample} if sample is not None else None
            yield entry, sample, entry.build(params)


def criterion_1_axioms() -> CheckResult:
    """Every catalog algebra passes the axioms; the Lie fixtures have omega 0."""
    mismatches = []
    for entry, sample, alg in _all_instances():
        tag = entry.key + (f"@alpha={sample}" if sample is not None else "")
        report = check_axioms(alg)
        if not report.passed:
            mismatches.append(f"{tag}: axiom failure on triples {report.failing_triples()}")
        if entry.key in ("sl2", "sl2_plus_sl2") and not report.omega_is_zero:
            mismatches.append(f"{tag}: expected zero skew form")
    return _result(1, "axioms hold for every catalog algebra", mismatches)


def _column_support(m: Matrix, columns: set[int]) -> bool:
    return all(not v or j in columns for row in m.rows for j, v in enumerate(row))


def criterion_2_derivation_forms() -> CheckResult:
    """Derivation spaces of L_{1,1} and L_{1,4} have the reference matrix forms."""
    mismatches = []
    der11 = derivations(catalog.get("L_{1,1}"))
    if der11.rank != 6:
        mismatches.append(f"L_{{1,1}}: derivation rank {der11.rank} != 6")
    for m in der11.matrices():
        if not _column_support(m, {2, 3}):
            mismatches.append("L_{1,1}: basis matrix supported outside columns 3-4")
        if m.rows[1][2] != -m.rows[0][2] or m.rows[1][3] != -m.rows[0][3]:
            mismatches.append("L_{1,1}: row 2 is not the negative of row 1 on columns 3-4")
    der14 = derivations(catalog.get("L_{1,4}"))
    if der14.rank != 2:
        mismatches.append(f"L_{{1,4}}: derivation rank {der14.rank} != 2")
    for m in der14.matrices():
        if not _column_support(m, {2}):
            mismatches.append("L_{1,4}: basis matrix supported outside column 3")
        if m.rows[1][2] != -m.rows[0][2] or m.rows[2][2] != m.rows[0][2]:
            mismatches.append("L_{1,4}: column 3 does not follow the (a,-a,a,b) pattern")
    return _result(2, "derivation matrix forms of L_{1,1} and L_{1,4}", mismatches)


def criterion_3_skew_biderivations() -> CheckResult:
    """Reference claim: no 4-dimensional algebra has nonzero skew biderivations."""
    mismatches = []
    for key in catalog.four_dimensional_keys():
        rank = skew_biderivations(catalog.get(key)).rank
        if rank != 0:
            mismatches.append(f"{key}: computed skew-biderivation rank {rank} != 0")
    return _result(3, "skew biderivations vanish on all 4-dimensional algebras", mismatches)


def criterion_4_symmetric_biderivations() -> CheckResult:
    """Symmetric biderivation ranks match the reference table."""
    mismatches = []
    notes = []
    for key in catalog.four_dimensional_keys():
        expected = catalog.expected(key).sym_bider_rank
        computed = symmetric_biderivations(catalog.get(key)).rank
        if computed != expected:
            if key == "E_{1,alpha}":
                notes.append(
                    "E_{1,alpha}: the reference row mixes the parameter into its "
                    "coefficients and is recorded as a documented discrepancy"
                )
            mismatches.append(f"{key}: computed symmetric rank {computed} != reference {expected}")
    sym11 = symmetric_biderivations(catalog.get("L_{1,1}"))
    for t in sym11.tensors():
        support = {
            (i + 1, j + 1)
            for i in range(4)
            for j in range(4)
            if any(t.tensor[i][j][k] for k in range(4))
        }
        if not support <= {(3, 3), (3, 4), (4, 3), (4, 4)}:
            mismatches.append(
                f"L_{{1,1}}: symmetric basis tensor supported on input pairs {sorted(support)} "
                "(reference expression allows only pairs from {3,4}x{3,4})"
            )
            break
    return _result(4, "symmetric biderivation ranks match the reference table", mismatches, notes)


def criterion_5_simple_3d() -> CheckResult:
    """Simple 3-dimensional algebras: biderivations, half-derivations, assembled rows."""
    mismatches = []
    algebras = {key: catalog.get(key) for key in SIMPLE_3D_KEYS}
    for key, alg in algebras.items():
        rank = biderivations(alg).rank
        if rank != 0:
            mismatches.append(f"{key}: computed biderivation rank {rank} != 0")
    for key, alg in algebras.items():
        hd = half_derivations(alg)
        identity_span = SubspaceBasis.from_generators(9, [vectorize_map(Matrix.identity(3))])
        if hd.rank != 1 or hd.space != identity_span:
            mismatches.append(
                f"{key}: half-derivations rank {hd.rank}, identity-span match "
                f"{hd.space == identity_span} (expected rank 1 spanned by identity)"
            )
    # Assembled constraint rows for A at alpha=2 must imply the displayed
    # first-pair system: 2a11 = a11 - alpha*a31 + a22, 2a21 = a32, 2a31 = -a31,
    # where a_{ij} is the coefficient of e_i in the image of e_j.
    alpha = Fraction(2)
    hd_a = half_derivations(algebras["A_alpha"])

    def var(i: int, j: int) -> int:  # a_{ij} = e_i-coefficient of the image of e_j
        return (j - 1) * 3 + (i - 1)

    displayed_rows = [
        {var(1, 1): Fraction(1), var(3, 1): alpha, var(2, 2): Fraction(-1)},
        {var(2, 1): Fraction(2), var(3, 2): Fraction(-1)},
        {var(3, 1): Fraction(3)},
    ]
    for idx, row in enumerate(displayed_rows, 1):
        if not row_space_contains(hd_a.system, row):
            mismatches.append(f"A_alpha@2: displayed first-pair equation {idx} not implied by the assembled system")
    return _result(5, "simple 3-dimensional solver results", mismatches)


def criterion_6_local_rigidity(plan: SamplePlan) -> CheckResult:
    """Sampled local closures collapse onto the base spaces."""
    mismatches = []
    for key in catalog.four_dimensional_keys() + ("L_1", "L_2") + SIMPLE_3D_KEYS:
        alg = catalog.get(key)
        res = local_closure(alg, derivations(alg), plan)
        if not res.certified:
            mismatches.append(
                f"{key}: local closure of derivations not certified "
                f"(candidate rank {res.candidate_rank} > base rank {res.base.rank})"
            )
    for key in SIMPLE_3D_KEYS:
        alg = catalog.get(key)
        res = local_closure(alg, half_derivations(alg), plan)
        if not (res.certified and res.candidate_rank == 1):
            mismatches.append(
                f"{key}: half-derivation closure certified={res.certified} "
                f"candidate rank {res.candidate_rank} (expected certified rank-1 collapse)"
            )
    return _result(6, "local closures certify rigidity", mismatches)


def criterion_7_two_local(plan: SamplePlan) -> CheckResult:
    """Separating-vector rigidity matches the reference lists."""
    mismatches = []
    for key in TWO_LOCAL_RIGID_KEYS:
        alg = catalog.get(key)
        der = derivations(alg)
        report = two_local_report(alg, der, plan)
        if report.verdict != "RIGID":
            mismatches.append(f"{key}: expected RIGID with derivations, got {report.verdict}")
            continue
        basis = alg.basis_vectors()
        if kernel_rank(der, basis[2]) != 0 and kernel_rank(der, basis[3]) != 0:
            mismatches.append(f"{key}: neither e3 nor e4 separates the derivation space")
    for key in catalog.four_dimensional_keys():
        if key in TWO_LOCAL_RIGID_KEYS:
            continue
        alg = catalog.get(key)
        report = two_local_report(alg, derivations(alg), plan)
        if report.verdict == "RIGID":
            mismatches.append(
                f"{key}: separating certificate found (at {report.certificate.point}) although "
                "the reference list does not include this algebra"
            )
    alg = catalog.get("L_{1,1}")
    report = two_local_report(alg, derivations(alg), plan)
    if report.verdict != "INCONCLUSIVE":
        mismatches.append(f"L_{{1,1}}: expected INCONCLUSIVE (rank 6 > 4), got {report.verdict}")
    for key in SIMPLE_3D_KEYS:
        alg = catalog.get(key)
        report = two_local_report(alg, half_derivations(alg), plan)
        if report.verdict != "RIGID":
            mismatches.append(f"{key}: expected RIGID with half-derivations, got {report.verdict}")
    return _result(7, "2-local rigidity certificates", mismatches)


def _entry_matrix(n: int, entries: dict[tuple[int, int], int]) -> Matrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in entries.items():
        rows[i - 1][j - 1] = Fraction(v)
    return Matrix.from_rows(rows, ncols=n)


def automorphism_family_L11() -> AffineFamily:
    """Structure-preserving family of L_{1,1}: identity plus two column-3 patterns."""
    return AffineFamily(
        base=Matrix.identity(4),
        directions=(
            _entry_matrix(4, {(1, 3): 1, (2, 3): -1, (3, 3): 1}),
            _entry_matrix(4, {(4, 3): 1}),
        ),
        open_conditions=(AffineCondition.make(1, {"t1": 1}),),
    )


def automorphism_family_L23() -> AffineFamily:
    """Structure-preserving family of L_{2,3}: identity plus two column-4 patterns."""
    return AffineFamily(
        base=Matrix.identity(4),
        directions=(
            _entry_matrix(4, {(1, 4): 1, (2, 4): -1, (3, 4): 1}),
            _entry_matrix(4, {(4, 4): 1}),
        ),
        open_conditions=(AffineCondition.make(1, {"t2": 1}),),
    )


def criterion_8_affine_families(plan: SamplePlan) -> CheckResult:
    """Affine local closures recover exactly the automorphism family hulls."""
    mismatches = []
    alg = catalog.get("L_{1,1}")
    res = affine_local_closure(alg, automorphism_family_L11(), plan)
    if not res.matches_family_hull:
        mismatches.append(f"L_{{1,1}}: affine closure comparison {res.comparison}")
    else:
        checks = {
            "b11 == 1": res.functional_value({(0, 0): 1}) == 1,
            "b22 == 1": res.functional_value({(1, 1): 1}) == 1,
            "b44 == 1": res.functional_value({(3, 3): 1}) == 1,
            "b13 == -b23": res.functional_value({(0, 2): 1, (1, 2): 1}) == 0,
            "b13 == b33 - 1": res.functional_value({(0, 2): 1, (2, 2): -1}) == -1,
        }
        for label, ok in checks.items():
            if not ok:
                mismatches.append(f"L_{{1,1}}: recovered constraint {label} does not hold")
    alg = catalog.get("L_{2,3}")
    res = affine_local_closure(alg, automorphism_family_L23(), plan)
    if not res.matches_family_hull:
        mismatches.append(f"L_{{2,3}}: affine closure comparison {res.comparison}")
    elif res.functional_value({(3, 3): 1}) is not None:
        mismatches.append("L_{2,3}: entry (4,4) is pinned although it should stay a free direction")
    return _result(8, "affine automorphism-family closures", mismatches)


def criterion_9_omega_biderivations() -> CheckResult:
    """Form-compatible biderivations versus plain biderivations per algebra."""
    mismatches = []
    exceptional = {"L_{1,6}", "L_{1,8}"}
    for key in catalog.four_dimensional_keys():
        alg = catalog.get(key)
        full = biderivations(alg)
        compat = omega_biderivations(alg)
        if not compat.space.is_subspace_of(full.space):
            mismatches.append(f"{key}: compatibility space escaped the biderivation space")
            continue
        equal = compat.space == full.space
        if key in exceptional:
            if equal:
                mismatches.append(
                    f"{key}: expected strict inclusion of form-compatible biderivations, computed equality"
                )
            else:
                witness = next(
                    (t for t in full.tensors() if not compat.contains_tensor(t)), None
                )
                if witness is None or not any(
                    witness.tensor[2][2][k] for k in range(4)
                ):
                    mismatches.append(f"{key}: no witness with nonzero distinguished coefficient")
        elif not equal:
            mismatches.append(
                f"{key}: expected equality, computed strict inclusion "
                f"({compat.rank} < {full.rank})"
            )
    return _result(9, "form-compatible biderivations match the reference pattern", mismatches)


def criterion_10_semisimple_fixtures() -> CheckResult:
    """Classical semisimple results on sl2 and sl2+sl2."""
    mismatches = []
    sl2 = catalog.get("sl2")
    if anticommuting_maps(sl2).rank != 0:
        mismatches.append("sl2: anticommuting maps should vanish")
    if symmetric_biderivations(sl2).rank != 0:
        mismatches.append("sl2: symmetric biderivations should vanish")
    skw = skew_biderivations(sl2)
    bracket_span = SubspaceBasis.from_generators(27, [vectorize_tensor(bracket_tensor(sl2))])
    if skw.rank != 1 or skw.space != bracket_span:
        mismatches.append("sl2: skew biderivations should be spanned by the bracket tensor")
    cent = centroid(sl2)
    if cent.rank != 1:
        mismatches.append(f"sl2: centroid rank {cent.rank} != 1")
    if commuting_maps(sl2).space != cent.space:
        mismatches.append("sl2: commuting maps differ from the centroid")
    both = catalog.get("sl2_plus_sl2")
    if skew_biderivations(both).rank != 2:
        mismatches.append("sl2+sl2: skew biderivation rank != 2")
    return _result(10, "semisimple Lie fixtures reproduce the classical results", mismatches)


def criterion_11_property_suite(plan: SamplePlan) -> CheckResult:
    """Residuals, rank-nullity, idempotence, soundness, determinism."""
    mismatches = []
    # Exact residuals of every returned basis element, across solvers.
    for key in ("L_{1,1}", "L_{1,6}", "B~", "A_alpha", "B", "C_alpha", "sl2"):
        alg = catalog.get(key)
        for space in (derivations(alg), omega_derivations(alg), centroid(alg), commuting_maps(alg), anticommuting_maps(alg)):
            for f in space.maps():
                if map_defects(alg, space.kind, f):
                    mismatches.append(f"{key}: nonzero residual in {space.kind} basis")
                    break
        hd = half_derivations(alg)
        for f in hd.maps():
            if map_defects(alg, "delta_derivation", f, delta=Fraction(1, 2)):
                mismatches.append(f"{key}: nonzero residual in half-derivation basis")
                break
        for tspace in (biderivations(alg), symmetric_biderivations(alg), skew_biderivations(alg), omega_biderivations(alg)):
            for t in tspace.tensors():
                if tensor_defects(alg, tspace.kind, t):
                    mismatches.append(f"{key}: nonzero residual in {tspace.kind} basis")
                    break
    # Rank-nullity and idempotence on 1000 random rational matrices.
    rng = random.Random(plan.seed)
    for _ in range(1000):
        nrows = rng.randint(1, 5)
        ncols = rng.randint(1, 5)
        m = Matrix.from_rows(
            [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(ncols)] for _ in range(nrows)]
        )
        reduced, rank, _ = rref(m)
        if rank + nullspace(m).rank != ncols:
            mismatches.append("rank-nullity violated on a random matrix")
            break
        if rref(reduced)[0] != reduced:
            mismatches.append("rref is not idempotent on a random matrix")
            break
    # Soundness sandwich, 500-point recheck, and determinism of a closure.
    alg = catalog.get("L_{1,1}")
    der = derivations(alg)
    first = local_closure(alg, der, plan)
    second = local_closure(alg, der, plan)
    if first != second:
        mismatches.append("local closure is not deterministic under a fixed plan")
    if not der.space.is_subspace_of(first.candidate):
        mismatches.append("soundness sandwich violated: base escaped the candidate")
    if first.certified and not recheck_certification(alg, first, points=500, plan=plan):
        mismatches.append("500-point certification recheck failed")
    # Specialization: weight-1 solver coincides with the derivation solver bitwise.
    for key in ("L_{1,4}", "B", "sl2"):
        alg = catalog.get(key)
        if delta_derivations(alg, 1).space != derivations(alg).space:
            mismatches.append(f"{key}: weight-1 solution space differs from derivations")
    return _result(11, "property suite (residuals, rank laws, soundness, determinism)", mismatches)


def run_all(plan: Optional[SamplePlan] = None) -> list[CheckResult]:
    """Run every criterion; deterministic for a fixed plan."""
    plan = plan or SamplePlan()
    return [
        criterion_1_axioms(),
        criterion_2_derivation_forms(),
        criterion_3_skew_biderivations(),
        criterion_4_symmetric_biderivations(),
        criterion_5_simple_3d(),
        criterion_6_local_rigidity(plan),
        criterion_7_two_local(plan),
        criterion_8_affine_families(plan),
        criterion_9_omega_biderivations(),
        criterion_10_semisimple_fixtures(),
        criterion_11_property_suite(plan),
    ]


def oracle_biderivation_space(algebra, symmetry: Optional[int] = None) -> SubspaceBasis:
    """Brute-force oracle for biderivation spaces, independent of the solver.

    Builds the residual operator column by column from unit tensors, with the
    identities evaluated through the definition (bracket calls), and returns
    the nullspace.  Used by tests to cross-check the assembled systems.
    """
    n = algebra.dim
    total = n ** 3
    basis = algebra.basis_vectors()
    columns = []
    for idx in range(total):
        i, rem = divmod(idx, n * n)
        j, k = divmod(rem, n)
        tensor = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        tensor[i][j][k] = Fraction(1)
        bm = BilinearMap(tuple(tuple(tuple(r) for r in p) for p in tensor))
        residuals: list[Fraction] = []
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    ea, eb, ec = basis[a], basis[b], basis[c]
                    residuals.extend(
                        x - y - z
                        for x, y, z in zip(
                            bm.apply(algebra.bracket(ea, eb), ec),
                            algebra.bracket(ea, bm.apply(eb, ec)),
                            algebra.bracket(bm.apply(ea, ec), eb),
                        )
                    )
                    residuals.extend(
                        x - y - z
                        for x, y, z in zip(
                            bm.apply(ea, algebra.bracket(eb, ec)),
                            algebra.bracket(eb, bm.apply(ea, ec)),
                            algebra.bracket(bm.apply(ea, eb), ec),
                        )
                    )
        if symmetry:
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        residuals.append(tensor[a][b][c] - symmetry * tensor[b][a][c])
        columns.append(residuals)
    rows = len(columns[0])
    m = Matrix.from_rows([[columns[c][r] for c in range(total)] for r in range(rows)], ncols=total)
    return nullspace(m)
