"""Rounding a divisor with sections down to a globally generated one, and
the empirical boundedness machinery built on top of it.

The reduction keeps exactly the sections of the input: each coefficient is
rounded to the minimal offset supported by the lattice points of the section
polygon, and the resulting polygon is the convex hull of those points.  The
sweep harness measures cokernel dimensions of a fixed ample divisor against
divisor families and records whether the maximum stabilizes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceededError, PreconditionError, TheoremViolationError
from .lattice import ConvexLatticePolygon, face_in_direction, hull, lattice_points
from .multiplication import CokernelReport, cokernel_dim
from .surface import Fan, PositivityClass, TorusDivisor, classify, polygon_of

#: Full sweeps cap out here; larger grids switch to seeded stratified sampling.
SWEEP_BUDGET = 10**6


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of rounding: the reduced divisor, the rays it moved on (J,
    1-based), and the hull of the section lattice points."""

    original: TorusDivisor
    reduced: TorusDivisor
    J: frozenset[int]
    hull_polygon: ConvexLatticePolygon


@dataclass(frozen=True)
class SweepResult:
    """Cokernel dimensions of one ample divisor against a divisor family.

    instances are sorted by (coefficient sum, coefficients); max_coker is
    their maximum and stabilization_coeff the smallest coefficient bound at
    which the running maximum stops growing.  sampled marks runs that used
    seeded stratified sampling instead of the full grid.  reports carries the
    full per-instance accounting when requested.
    """

    fixed_L: TorusDivisor
    instances: tuple[tuple[TorusDivisor, int], ...]
    max_coker: int
    stabilization_coeff: int
    sampled: bool
    seed: int | None
    reports: tuple[CokernelReport, ...] | None = None


def reduce_to_globally_generated(fan: Fan, d: TorusDivisor) -> ReductionResult:
    """Round each coefficient to the minimal offset its sections support.

    Requires at least one section.  The reduced divisor is globally
    generated, has the same sections, and its polygon is the hull of the
    original polygon's lattice points.
    """
    sections = lattice_points(polygon_of(fan, d))
    if not sections:
        raise PreconditionError("reduction requires a divisor with sections")
    reduced = TorusDivisor(
        tuple(max(-s.dot(v) for s in sections) for v in fan.rays)
    )
    moved = frozenset(
        i + 1 for i, (a, b) in enumerate(zip(d.coeffs, reduced.coeffs)) if b < a
    )
    return ReductionResult(
        original=d, reduced=reduced, J=moved, hull_polygon=hull(sections)
    )


def edge_lattice_report(fan: Fan, result: ReductionResult) -> list[tuple[int, int]]:
    """Lattice-point counts of the reduced polygon's faces on the moved rays.

    Returns (1-based ray index, count) for each j in J; a vertex face counts
    as one point.
    """
    out: list[tuple[int, int]] = []
    for j in sorted(result.J):
        face = face_in_direction(
            result.hull_polygon, fan.rays[j - 1], result.reduced.coeffs[j - 1]
        )
        out.append((j, face.lattice_count()))
    return out


def _graded_key(coeffs: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(coeffs), coeffs)


def _stratified_sample(
    n: int, e_max: int, budget: int, seed: int
) -> list[tuple[int, ...]]:
    """Deterministic sample of coefficient vectors, stratified by max entry.

    Small strata (all vectors with a given maximum entry) are enumerated
    exhaustively while they fit in half the budget; the rest of the budget is
    spread evenly over the remaining strata by rejection sampling.
    """
    rng = random.Random(seed)
    chosen: set[tuple[int, ...]] = set()
    exhausted_up_to = -1
    spent = 0
    for m in range(e_max + 1):
        size = (m + 1) ** n - m**n
        if spent + size > budget // 2:
            break
        for vec in product(range(m + 1), repeat=n):
            if max(vec) == m:
                chosen.add(vec)
        spent += size
        exhausted_up_to = m
    remaining_strata = list(range(exhausted_up_to + 1, e_max + 1))
    if remaining_strata:
        quota = max(1, (budget - spent) // len(remaining_strata))
        for m in remaining_strata:
            got = 0
            attempts = 0
            while got < quota and attempts < 50 * quota:
                attempts += 1
                vec = tuple(rng.randint(0, m) for _ in range(n))
                if max(vec) != m or vec in chosen:
                    continue
                chosen.add(vec)
                got += 1
    return sorted(chosen, key=_graded_key)


def _family_instances(filter_pattern: str, n: int, e_max: int) -> list[tuple[int, ...]]:
    """Instances for a pattern like "0,k,0,0": k runs over [1, e_max]."""
    parts = [p.strip() for p in filter_pattern.split(",")]
    if len(parts) != n:
        raise PreconditionError(
            f"filter pattern has {len(parts)} entries for a fan with {n} rays"
        )
    if sum(1 for p in parts if p == "k") != 1:
        raise PreconditionError("filter pattern must contain exactly one 'k'")
    fixed: list[int | None] = []
    for p in parts:
        if p == "k":
            fixed.append(None)
        elif p.lstrip("-").isdigit():
            fixed.append(int(p))
        else:
            raise PreconditionError(f"bad filter entry {p!r}")
    out = []
    for k in range(1, e_max + 1):
        out.append(tuple(k if f is None else f for f in fixed))
    return out


def _check_pipeline(
    fan: Fan, fixed_l: TorusDivisor, e: TorusDivisor, report: CokernelReport
) -> None:
    """The reduction pipeline behind the boundedness statement.

    The reduced divisor must multiply surjectively against the ample one,
    and every missing point must come from the polygon collar that the
    reduction shaved off.
    """
    reduced = reduce_to_globally_generated(fan, e).reduced
    reduced_report = cokernel_dim(fan, fixed_l, reduced)
    if reduced_report.coker_dim != 0:
        raise TheoremViolationError(
            f"reduced divisor {reduced} has nonzero cokernel against {fixed_l}"
        )
    collar_excluded = polygon_of(fan, fixed_l + reduced)
    for p in report.missing_points:
        if collar_excluded.contains(p):
            raise TheoremViolationError(
                f"missing point {p} lies inside the reduced sum polygon"
            )


_WORKER: dict[str, object] = {}


def _sweep_worker_init(fan: Fan, fixed_l: TorusDivisor, check_pipeline: bool) -> None:
    _WORKER["args"] = (fan, fixed_l, check_pipeline)


def _sweep_instance(coeffs: tuple[int, ...]) -> CokernelReport | None:
    fan, fixed_l, check_pipeline = _WORKER["args"]  # type: ignore[misc]
    e = TorusDivisor(coeffs)
    if not lattice_points(polygon_of(fan, e)):
        return None
    report = cokernel_dim(fan, fixed_l, e)
    if check_pipeline:
        _check_pipeline(fan, fixed_l, e, report)
    return report


def sweep_cokernel(
    fan: Fan,
    fixed_l: TorusDivisor,
    e_max: int,
    filter_pattern: str | None = None,
    budget: int = SWEEP_BUDGET,
    seed: int | None = None,
    check_pipeline: bool = True,
    keep_reports: bool = False,
    jobs: int = 1,
) -> SweepResult:
    """Cokernel dimensions of fixed_l against divisors with coefficients <= e_max.

    Enumerates the full grid in graded lexicographic order when it fits in
    the budget; otherwise falls back to seeded stratified sampling (a seed is
    then required).  Every instance is cross-checked against the reduction
    pipeline unless check_pipeline is disabled.  jobs > 1 fans instances out
    to worker processes; the result is assembled in canonical order either
    way, so output does not depend on scheduling.
    """
    if classify(fan, fixed_l) is not PositivityClass.AMPLE:
        raise PreconditionError("sweep requires an ample fixed divisor")
    if e_max < 1:
        raise PreconditionError("e_max must be >= 1")
    n = fan.n
    sampled = False
    if filter_pattern is not None:
        vectors = _family_instances(filter_pattern, n, e_max)
        if len(vectors) > budget:
            raise BudgetExceededError(f"{len(vectors)} family instances exceed {budget}")
    elif (e_max + 1) ** n <= budget:
        vectors = sorted(product(range(e_max + 1), repeat=n), key=_graded_key)
    else:
        if seed is None:
            raise PreconditionError(
                f"grid of {(e_max + 1) ** n} instances exceeds the budget of "
                f"{budget}; sampling requires a seed"
            )
        sampled = True
        vectors = _stratified_sample(n, e_max, budget, seed)
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(
            jobs, initializer=_sweep_worker_init, initargs=(fan, fixed_l, check_pipeline)
        ) as pool:
            chunk = max(1, len(vectors) // (8 * jobs))
            results = pool.map(_sweep_instance, vectors, chunksize=chunk)
    else:
        _sweep_worker_init(fan, fixed_l, check_pipeline)
        results = [_sweep_instance(v) for v in vectors]
    instances: list[tuple[TorusDivisor, int]] = []
    reports: list[CokernelReport] = []
    for coeffs, report in zip(vectors, results):
        if report is None:
            continue
        instances.append((TorusDivisor(coeffs), report.coker_dim))
        if keep_reports:
            reports.append(report)
    if not instances:
        raise PreconditionError("sweep produced no instances with sections")
    max_coker = max(c for _, c in instances)
    stabilization = 0
    running = -1
    for bound in range(e_max + 1):
        running = max(
            (c for e, c in instances if max(e.coeffs, default=0) <= bound),
            default=-1,
        )
        if running == max_coker:
            stabilization = bound
            break
    return SweepResult(
        fixed_L=fixed_l,
        instances=tuple(instances),
        max_coker=max_coker,
        stabilization_coeff=stabilization,
        sampled=sampled,
        seed=seed,
        reports=tuple(reports) if keep_reports else None,
    )
