"""Verification suites: every mathematical claim the package encodes,
run as independent checks and collected into a diffable report.

Each check carries an anchor naming the claim in the claim registry
(see CLAIMS.md); a failing check records its counterexample in the
details and never aborts the rest of the suite.  A check that runs out
of its Groebner budget is reported as skipped, not as failed.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from time import perf_counter
from typing import Callable, List, Optional, Tuple

from . import curves, versal
from .groebner import (
    Budget,
    BudgetExceeded,
    DEFAULT_BUDGET,
    Ideal,
    buchberger,
    eliminate,
    ideal_equal,
    syzygies,
)
from .hilbert import hilbert_data
from .poly import build_registry
from .report import Check, FAIL, PASS, Report, SKIPPED_BUDGET, engine_config

__all__ = ["ANCHORS", "SUITES", "run_suite", "run_all"]


# every anchor a check may cite, with the claim it names; CLAIMS.md
# carries the same table in prose
ANCHORS = {
    "phi-symmetry": "phi_ijk is invariant under all six permutations of its indices",
    "quadric-antisymmetry": "the base quadric is antisymmetric in (j,l) and in (k,m) and symmetric under swapping the pairs",
    "quadric-four-term-relation": "base quadrics carrying the top index are integral linear combinations of the others",
    "relation-cocycle": "the alternating parameter combination attached to each relation quadruple vanishes identically",
    "family-expanded-form": "the factored family generator equals its expanded form",
    "family-auxiliary-index": "changing the auxiliary index moves a family generator by exactly minus a base quadric",
    "t1-dimension": "the space of first-order deformations modulo coordinate changes has dimension n(n+1)/2 - n",
    "t1-no-constant-part": "constant perturbations contribute nothing beyond coordinate changes",
    "t1-basis": "the perturbations a_ij(z_i - z_j) of the pair generators descend to a basis of first-order deformations",
    "t2-dimension": "the base quadrics span a space of dimension C(n,3) - n",
    "flatness-lift": "every relation lifts: the six-term combination of family generators reduces to zero modulo the base ideal",
    "base-minimal-system-size": "the minimal base system consists of C(n,3) - n quadrics",
    "base-dimension": "the base space has Krull dimension n + 2",
    "base-multiplicity": "the base space has multiplicity n!/24",
    "base-h-vector": "the five-parameter base space has h-vector (1, 3, 1)",
    "base-pfaffian-presentation": "at five parameters the base ideal is generated by the 4x4 Pfaffians of an explicit skew matrix of linear forms",
    "base-equals-previous-total": "substituting z_m -> a_mn turns the previous-level family generators into base quadrics generating, with the carried system, the next base ideal",
    "smoothing-diagonal": "the one-parameter diagonal deformation has the asserted n branches, with the last two lines merged into a hyperbola",
    "smoothing-axis-parabola": "the one-parameter deformation merging the last axis with the parabola branch has the asserted n branches",
    "elliptic-monomial-family": "the deformed rewriting table of the elliptic monomial curve has the stated special fiber and plane projections",
    "elliptic-monomial-kernel": "the rewriting table generates the full kernel of the elliptic monomial parametrization",
    "rational-monomial-kernel": "the analogous table generates the kernel of the rational monomial parametrization",
    "nonrational-lines": "the root-of-unity lines satisfy the displayed quadric system",
    "semigroup-delta": "the monomial semigroups have delta = n - 1 (rational) and n + 1 (elliptic)",
    "axes-family": "the coordinate-axes family has n(n-1) independent parameters and auxiliary-index independence over its base",
    "generator-count": "the y-free ideal of the lines is minimally generated by (n+1)(n-2)/2 quadrics",
    "relation-rank": "the distinguished relations have (n^2-1)(n-3)/3 independent linear parts",
    "syzygy-count": "the pair presentation has the stated minimal first syzygies by degree",
    "nice-presentation": "at n = 4 the total space has the closed presentation retaining y",
    "wedge-straightening": "a quadric coordinate change straightens the wedged cusp into a line while fixing the other lines",
}


def _run(
    checks: List[Check],
    cid: str,
    anchor: str,
    fn: Callable[[], Tuple[bool, str]],
) -> None:
    if anchor not in ANCHORS:
        raise KeyError(f"check {cid!r} cites unregistered anchor {anchor!r}")
    t0 = perf_counter()
    try:
        ok, details = fn()
        status = PASS if ok else FAIL
    except BudgetExceeded as e:
        status, details = SKIPPED_BUDGET, str(e)
    ms = int((perf_counter() - t0) * 1000)
    checks.append(Check(id=cid, anchor=anchor, status=status, details=details, ms=ms))


def _fails_to_details(fails: list, what: str) -> Tuple[bool, str]:
    if not fails:
        return True, ""
    shown = ", ".join(str(f) for f in fails[:3])
    more = f" (+{len(fails) - 3} more)" if len(fails) > 3 else ""
    return False, f"{what} violated at {shown}{more}"


def _suite_identities(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(lo, hi + 1):
        _run(checks, f"phi-symmetry-n{n}", "phi-symmetry",
             lambda n=n: _fails_to_details(versal.phi_symmetry_failures(n), "symmetry"))
        _run(checks, f"quadric-symmetry-n{n}", "quadric-antisymmetry",
             lambda n=n: _fails_to_details(versal.quadric_symmetry_failures(n), "symmetry"))
        _run(checks, f"cocycle-n{n}", "relation-cocycle",
             lambda n=n: _fails_to_details(versal.cocycle_failures(n), "cocycle"))
        _run(checks, f"family-expanded-n{n}", "family-expanded-form",
             lambda n=n: _fails_to_details(versal.family_expanded_failures(n), "expansion"))
        _run(checks, f"family-aux-index-n{n}", "family-auxiliary-index",
             lambda n=n: _fails_to_details(versal.family_k_change_failures(n), "index change"))
        if n >= 6:
            _run(checks, f"four-term-n{n}", "quadric-four-term-relation",
                 lambda n=n: _fails_to_details(versal.four_term_failures(n), "relation"))
    return checks


def _suite_t1t2(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(lo, hi + 1):
        def t1_dim(n=n):
            r = versal.t1_compute(n)
            expect = curves.elliptic_t1_formula(n, n + 1)
            ok = r.dimension == expect
            return ok, f"dimension {r.dimension}, expected {expect}"

        def t1_deg2(n=n):
            r = versal.t1_compute(n)
            return r.by_degree[-2] == 0, f"degree -2 part has dimension {r.by_degree[-2]}"

        def t1_basis(n=n):
            r = versal.t1_compute(n)
            return r.basis_ok, f"detail: {dict(r.detail)}"

        def t2(n=n):
            d = versal.t2_dimension(n)
            expect = curves.t2_formula(n)
            return d == expect, f"rank {d}, expected {expect}"

        _run(checks, f"t1-dimension-n{n}", "t1-dimension", t1_dim)
        _run(checks, f"t1-degree-minus-two-n{n}", "t1-no-constant-part", t1_deg2)
        _run(checks, f"t1-basis-n{n}", "t1-basis", t1_basis)
        _run(checks, f"t2-dimension-n{n}", "t2-dimension", t2)
    return checks


def _suite_flatness(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(lo, hi + 1):
        def flat(n=n):
            rep = versal.verify_flatness(n, budget)
            if rep.ok:
                return True, f"{len(rep.certificates)} relations lifted"
            bad = [c for c in rep.certificates if not c.ok]
            first = bad[0]
            return False, (
                f"{len(bad)} relations fail; quadruple {first.quadruple} "
                f"leaves residual {first.residual}"
            )

        _run(checks, f"flatness-n{n}", "flatness-lift", flat)
    return checks


def _suite_base_geometry(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    hilbert_cache: dict = {}

    def geometry(n):
        if n not in hilbert_cache:
            gb = buchberger(versal.base_ideal(n, minimal=True), budget=budget)
            hilbert_cache[n] = hilbert_data(gb)
        return hilbert_cache[n]

    for n in range(lo, hi + 1):
        def size(n=n):
            got = len(versal.base_ideal(n, minimal=True).generators)
            expect = math.comb(n, 3) - n
            return got == expect, f"{got} generators, expected {expect}"

        _run(checks, f"base-size-n{n}", "base-minimal-system-size", size)

        def dim(n=n):
            h = geometry(n)
            return h.dimension == n + 2, f"dimension {h.dimension}, expected {n + 2}"

        def mult(n=n):
            h = geometry(n)
            expect = math.factorial(n) // 24
            return h.multiplicity == expect, f"multiplicity {h.multiplicity}, expected {expect}"

        _run(checks, f"base-dimension-n{n}", "base-dimension", dim)
        _run(checks, f"base-multiplicity-n{n}", "base-multiplicity", mult)

        if n == 5:
            def hvec(n=n):
                h = geometry(n)
                return h.h_vector == (1, 3, 1), f"h-vector {h.h_vector}"

            def pfaff(n=n):
                rep = versal.pfaffian_check(budget)
                return rep.ok, (
                    f"quadratic={rep.all_quadratic} "
                    f"expansions-agree={rep.expansion_consistent} "
                    f"ideal-equal={rep.ideal_equal_ok}"
                )

            _run(checks, "base-h-vector-n5", "base-h-vector", hvec)
            _run(checks, "base-pfaffians-n5", "base-pfaffian-presentation", pfaff)
    return checks


def _suite_induction(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(max(lo, 5), hi + 1):
        def induct(n=n):
            r = versal.base_equals_total(n, budget)
            return r.ok, (
                f"substitution-matches={r.substitution_matches} "
                f"new-rank={r.new_rank}/{r.expected_new_rank} "
                f"combined-rank={r.combined_rank} ideal-equal={r.ideal_equal_ok}"
            )

        _run(checks, f"induction-n{n}", "base-equals-previous-total", induct)
    return checks


def _suite_smoothings(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(lo, hi + 1):
        for variant, anchor in (
            (versal.DIAGONAL, "smoothing-diagonal"),
            (versal.AXIS_PARABOLA, "smoothing-axis-parabola"),
        ):
            def smooth(n=n, variant=variant):
                _, rep = versal.smoothing_family(variant, n, budget)
                bad = [c.name for c in rep.checks if not c.ok]
                details = f"{rep.branch_count} branches, {len(rep.checks)} checks"
                if bad:
                    details += f"; failing: {', '.join(bad)}"
                return rep.ok, details

            _run(checks, f"smoothing-{variant.lower().replace('_', '-')}-n{n}", anchor, smooth)
    return checks


def _suite_monomial(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(lo, hi + 1):
        def family(n=n):
            samples = None
            if rng is not None:
                samples = versal.default_projection_samples(n) + [
                    tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
                ]
            _, rep = versal.elliptic_monomial_family(n, samples=samples, budget=budget)
            return rep.ok, (
                f"zero-fiber={rep.zero_fiber_ok} "
                f"parametrization={rep.parametrization_ok} "
                f"projections={[bool(ok) for _, ok in rep.projections]}"
            )

        def elliptic_kernel(n=n):
            table = curves.elliptic_monomial_table(n)
            reg = table[0].reg
            kernel = curves.monomial_ideal(curves.MONOMIAL_ELLIPTIC, n, budget)
            ok = ideal_equal(Ideal(reg, table), kernel, budget=budget)
            return ok, f"{len(table)} table generators vs {len(kernel.generators)} kernel generators"

        def rational_kernel(n=n):
            table = curves.rational_monomial_table(n)
            reg = table[0].reg
            kernel = curves.monomial_ideal(curves.MONOMIAL_RATIONAL, n, budget)
            ok = ideal_equal(Ideal(reg, table), kernel, budget=budget)
            return ok, f"{len(table)} table generators vs {len(kernel.generators)} kernel generators"

        def nonrational(n=n):
            rep = curves.nonrational_lines_check(n)
            ok = rep.displayed_ok and rep.specialization_ok
            return ok, (
                f"displayed={rep.displayed_ok} specialization={rep.specialization_ok} "
                f"uniform-wrap-would-pass={rep.uniform_wrap_ok}"
            )

        def semigroups(n=n):
            rat = curves.semigroup_invariants(range(n, 2 * n))
            ell = curves.semigroup_invariants(range(n + 1, 2 * n + 1))
            ok = (
                rat.delta == n - 1
                and rat.multiplicity == n
                and ell.delta == n + 1
                and ell.multiplicity == n + 1
            )
            return ok, f"rational delta={rat.delta} elliptic delta={ell.delta}"

        _run(checks, f"monomial-elliptic-n{n}", "elliptic-monomial-family", family)
        _run(checks, f"monomial-elliptic-kernel-n{n}", "elliptic-monomial-kernel", elliptic_kernel)
        _run(checks, f"monomial-rational-kernel-n{n}", "rational-monomial-kernel", rational_kernel)
        _run(checks, f"nonrational-lines-n{n}", "nonrational-lines", nonrational)
        _run(checks, f"semigroup-invariants-n{n}", "semigroup-delta", semigroups)
    return checks


def _suite_axes(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(lo, hi + 1):
        def axes(n=n):
            r = versal.axes_family_report(n, budget)
            return r.ok, (
                f"parameters={r.parameter_count} t1={r.t1_dimension} "
                f"fiber={r.zero_fiber_ok} aux-index={r.k_independence_ok}"
            )

        def wedge(n=n):
            # n coordinate axes plus the all-ones line, cusp straightened
            # into a generic target direction
            c = rng.randint(2, 9) if rng is not None else 2
            axes_dirs = [
                tuple(Fraction(1 if m == i else 0) for m in range(1, n + 1))
                for i in range(1, n + 1)
            ]
            ones = tuple(Fraction(1) for _ in range(n))
            target = tuple(Fraction(c) ** k for k in range(n))
            dw = versal.wedge_a2_deformation(axes_dirs + [ones, target], n)
            return dw.ok, (
                f"r={dw.r} rank={dw.rank} target c={c} "
                f"lines-fixed={dw.lines_fixed_ok} straightened={dw.straightened_ok}"
            )

        _run(checks, f"axes-family-n{n}", "axes-family", axes)
        _run(checks, f"wedge-straightening-n{n}", "wedge-straightening", wedge)
    return checks


_SYZYGY_EXPECT = {4: {3: 5, 4: 5}, 5: {3: 16, 4: 9}}


def _suite_counts(lo: int, hi: int, budget: Budget, rng=None) -> List[Check]:
    checks: List[Check] = []
    for n in range(lo, hi + 1):
        def gens(n=n):
            ideal = curves.lines_ideal(n, curves.F_FORM)
            expect = curves.minimal_generator_formula(n)
            count = len(ideal.generators)
            rank = versal.span_rank(ideal.generators)
            eliminated = eliminate(
                curves.lines_ideal(n, curves.G_FORM), ["y"], budget
            )
            generates = ideal_equal(eliminated, ideal, budget=budget)
            ok = count == expect and rank == expect and generates
            return ok, (
                f"{count} generators of rank {rank}, expected {expect}; "
                f"generate the eliminated ideal: {generates}"
            )

        def rel_rank(n=n):
            fam = curves.relations(n)
            return (
                fam.rank == fam.expected_rank,
                f"rank {fam.rank}, expected {fam.expected_rank}",
            )

        _run(checks, f"generator-count-n{n}", "generator-count", gens)
        _run(checks, f"relation-rank-n{n}", "relation-rank", rel_rank)

        if n in _SYZYGY_EXPECT:
            def syz(n=n):
                mod = syzygies(curves.lines_ideal(n), budget=budget)
                expect = _SYZYGY_EXPECT[n]
                got = dict(mod.minimal_by_degree)
                ok = got == expect and mod.minimal_count == sum(expect.values())
                return ok, f"minimal syzygies by degree {got}, expected {expect}"

            _run(checks, f"syzygy-count-n{n}", "syzygy-count", syz)

        if n == 4:
            def nice(n=n):
                r = versal.nice_total_space_check(budget)
                return r.ok, f"differences={r.differences_ok} elimination={r.elimination_ok}"

            _run(checks, "nice-presentation-n4", "nice-presentation", nice)
    return checks


SUITES = {
    "identities": _suite_identities,
    "t1t2": _suite_t1t2,
    "flatness": _suite_flatness,
    "base-geometry": _suite_base_geometry,
    "induction": _suite_induction,
    "smoothings": _suite_smoothings,
    "monomial": _suite_monomial,
    "axes": _suite_axes,
    "counts": _suite_counts,
}

DEFAULT_RANGES = {
    "identities": (4, 7),
    "t1t2": (4, 6),
    "flatness": (4, 5),
    "base-geometry": (5, 5),
    "induction": (5, 6),
    "smoothings": (4, 5),
    "monomial": (4, 5),
    "axes": (4, 5),
    "counts": (4, 6),
}


def run_suite(
    name: str,
    n_range: Optional[Tuple[int, int]] = None,
    budget: Budget = DEFAULT_BUDGET,
    seed: Optional[int] = None,
) -> Report:
    """Run one named suite over an inclusive n range and return the
    report; check failures are recorded, never raised.  A seed adds a
    reproducible random parameter sample to the sampled checks."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if n_range is None:
        n_range = DEFAULT_RANGES[name]
    lo, hi = int(n_range[0]), int(n_range[1])
    if lo < 4 or hi < lo:
        raise ValueError(f"need 4 <= lo <= hi, got ({lo}, {hi})")
    rng = random.Random(seed) if seed is not None else None
    checks = SUITES[name](lo, hi, budget, rng)
    return Report(
        suite=name,
        n_range=(lo, hi),
        engine=engine_config(budget, seed),
        checks=tuple(checks),
    )


def run_all(budget: Budget = DEFAULT_BUDGET, seed: Optional[int] = None) -> List[Report]:
    """All suites at their default ranges."""
    return [run_suite(name, DEFAULT_RANGES[name], budget, seed) for name in SUITES]
