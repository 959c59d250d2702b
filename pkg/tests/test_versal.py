"""The deformation-theoretic core: identities, T^1/T^2, flatness,
induction, the Pfaffian presentation, smoothings, the monomial and axes
families, and the wedge construction.

Each identity check comes with a mutation guard: a deliberately
perturbed version of the expression must fail, so a vacuous checker
cannot pass silently."""

import itertools
from fractions import Fraction

import pytest

from versaldef.groebner import Ideal, buchberger, ideal_equal, normal_form
from versaldef.poly import Polynomial, build_registry, parse, substitute
from versaldef.versal import (
    AXIS_PARABOLA,
    DIAGONAL,
    RankDeficiencyError,
    axes_family_report,
    axes_versal_family,
    base_equals_total,
    base_ideal,
    base_quadric,
    base_registry,
    canonical_fourth_index,
    cocycle_failures,
    default_projection_samples,
    elliptic_monomial_family,
    family_expanded_failures,
    family_generator,
    family_index_set,
    family_k_change_failures,
    four_term_failures,
    main_family,
    minimal_base_quadrics,
    nice_total_space_check,
    pfaffian_check,
    phi,
    phi_symmetry_failures,
    quadric_index_set,
    quadric_symmetry_failures,
    smoothing_family,
    span_rank,
    t1_compute,
    t2_dimension,
    verify_flatness,
    wedge_a2_deformation,
)


# ---------------------------------------------------------------------------
# identities


@pytest.mark.parametrize("n", [4, 5, 6])
def test_identity_checkers_find_nothing(n):
    assert phi_symmetry_failures(n) == []
    assert quadric_symmetry_failures(n) == []
    assert cocycle_failures(n) == []
    assert family_expanded_failures(n) == []
    assert family_k_change_failures(n) == []


def test_four_term_relation():
    assert four_term_failures(6) == []
    with pytest.raises(ValueError):
        four_term_failures(5)


def test_four_term_mutation_guard():
    # flipping the last sign must break the relation
    n = 6
    i, j, l, k, m = 1, 2, 3, 4, 5
    expr = (
        base_quadric(i, j, l, k, m, n)
        - base_quadric(n, j, l, k, m, n)
        - base_quadric(k, j, l, i, n, n)
        - base_quadric(m, j, l, i, n, n)
    )
    assert not expr.is_zero()


def test_cocycle_mutation_guard():
    n, (i, j, k, l) = 4, (1, 2, 3, 4)
    reg = base_registry(n)

    def a(p, q):
        return parse(f"a_{p}_{q}", reg)

    good = (
        -a(i, j) * (phi(i, k, l, n) - phi(j, k, l, n))
        + a(i, l) * (phi(i, j, k, n) - phi(j, l, k, n))
        + a(k, j) * (phi(i, k, l, n) - phi(i, j, l, n))
        - a(k, l) * (phi(i, j, k, n) - phi(i, j, l, n))
    )
    bad = good + 2 * a(k, l) * (phi(i, j, k, n) - phi(i, j, l, n))
    assert good.is_zero()
    assert not bad.is_zero()


def test_k_change_is_nontrivial():
    # the quadric the generator moves by is itself nonzero
    q = base_quadric(1, 2, 3, 4, 5, 5)
    assert not q.is_zero()
    diff = family_generator(1, 2, 3, 5, k=4) - family_generator(1, 2, 3, 5, k=5)
    assert not diff.is_zero()


def test_index_set_sizes():
    for n in (4, 5, 6):
        assert len(family_index_set(n)) == n * (n - 1) * (n - 2) // 2
        per_i = 3 * len(list(itertools.combinations(range(n - 1), 4)))
        assert len(quadric_index_set(n)) == n * per_i


def test_index_validation():
    with pytest.raises(ValueError):
        phi(1, 1, 2, 4)
    with pytest.raises(ValueError):
        phi(1, 2, 5, 4)
    with pytest.raises(ValueError):
        base_quadric(1, 2, 3, 4, 4, 5)
    with pytest.raises(ValueError):
        family_generator(1, 2, 3, 3)
    with pytest.raises(ValueError):
        family_generator(1, 2, 3, 5, k=2)
    assert canonical_fourth_index(1, 2, 4, 5) == 3


def test_phi_is_symmetric_spotcheck():
    assert phi(3, 1, 2, 4) == phi(1, 2, 3, 4)
    assert phi(2, 3, 1, 4) == phi(1, 2, 3, 4)


# ---------------------------------------------------------------------------
# tangent and obstruction spaces


@pytest.mark.parametrize("n,dim", [(4, 6), (5, 10)])
def test_t1_dimension(n, dim):
    res = t1_compute(n)
    assert res.dimension == dim
    assert res.by_degree == {-1: dim, -2: 0}
    assert res.basis_ok
    assert len(res.basis) == dim


def test_t1_detail_frozen_n5():
    d = t1_compute(5).detail
    assert d["unknowns_deg1"] == 50
    assert d["condition_rank_deg1"] == 30
    assert d["solution_dim_deg1"] == 20
    assert d["trivial_rank_deg1"] == 10
    assert d["unknowns_deg2"] == 10


def test_t1_rejects_small_n():
    with pytest.raises(ValueError):
        t1_compute(3)


@pytest.mark.parametrize("n,dim", [(4, 0), (5, 5), (6, 14), (7, 28)])
def test_t2_dimension(n, dim):
    assert t2_dimension(n) == dim


@pytest.mark.parametrize("n", [5, 6])
def test_minimal_system_spans_all_quadrics(n):
    minimal = minimal_base_quadrics(n)
    assert len(minimal) == n * (n - 1) * (n - 2) // 6 - n
    full = list(base_ideal(n).generators)
    assert span_rank(minimal) == len(minimal)
    assert span_rank(minimal + full) == span_rank(minimal)


def test_minimal_system_empty_at_n4():
    assert minimal_base_quadrics(4) == []
    assert t2_dimension(4) == 0


# ---------------------------------------------------------------------------
# flatness


def test_flatness_n4_lifts_literally():
    rep = verify_flatness(4)
    assert rep.ok
    assert len(rep.certificates) == 6
    for cert in rep.certificates:
        assert cert.combination.is_zero()


def test_flatness_n5_reduces_to_zero():
    rep = verify_flatness(5)
    assert rep.ok
    assert len(rep.certificates) == 30
    assert all(c.residual.is_zero() for c in rep.certificates)
    # the base ideal does real work: some combination is nonzero upstairs
    assert any(not c.combination.is_zero() for c in rep.certificates)


# ---------------------------------------------------------------------------
# base of level n = total space of level n-1


@pytest.mark.parametrize(
    "n,carried,combined", [(5, 0, 5), (6, 5, 14)]
)
def test_induction_step(n, carried, combined):
    rep = base_equals_total(n)
    assert rep.ok
    assert rep.substitution_matches
    assert rep.carried_rank == carried
    assert rep.combined_rank == combined
    assert rep.new_rank == n * (n - 3) // 2
    assert rep.ideal_equal_ok


def test_induction_rejects_small_n():
    with pytest.raises(ValueError):
        base_equals_total(4)


# ---------------------------------------------------------------------------
# Pfaffian presentation of the degree-5 base


def test_pfaffian_presentation():
    rep = pfaffian_check()
    assert rep.ok
    assert rep.expansion_consistent
    assert rep.all_quadratic
    assert rep.ideal_equal_ok
    assert len(rep.pfaffians) == 5


# ---------------------------------------------------------------------------
# smoothings


@pytest.mark.parametrize("variant", [DIAGONAL, AXIS_PARABOLA])
@pytest.mark.parametrize("n", [4, 5])
def test_smoothing(variant, n):
    family, rep = smoothing_family(variant, n)
    assert rep.ok, [c for c in rep.checks if not c.ok]
    assert rep.branch_count == n
    assert len(family.total) == n * (n - 1) // 2
    assert family.base.generators == ()
    names = [c.name for c in rep.checks]
    assert "fiber-at-zero" in names
    if variant == DIAGONAL:
        assert "hyperbola-branch" in names
        assert "parabola-branch" in names
        assert "parameter-point-kills-phi" in names
    else:
        assert "conic-branch" in names
        assert "difference-factorization" in names


def test_smoothing_rejects_bad_input():
    with pytest.raises(ValueError):
        smoothing_family("PENCIL", 4)
    with pytest.raises(ValueError):
        smoothing_family(DIAGONAL, 3)


# ---------------------------------------------------------------------------
# elliptic monomial family


def test_elliptic_monomial_family_default():
    family, rep = elliptic_monomial_family(4)
    assert rep.ok
    assert rep.zero_fiber_ok
    assert rep.parametrization_ok
    assert len(rep.projections) == 2
    assert len(family.total) == 4 * 3 // 2 - 1  # pairs 2<=i<=j<=4 minus (2,4)
    assert len(default_projection_samples(4)) == 2


def test_elliptic_monomial_family_custom_sample():
    sample = (Fraction(1), Fraction(-2), Fraction(0), Fraction(1))
    _, rep = elliptic_monomial_family(4, samples=[sample])
    assert rep.projections == ((sample, True),)
    assert rep.ok


def test_elliptic_monomial_family_bad_sample_length():
    with pytest.raises(ValueError):
        elliptic_monomial_family(4, samples=[(1, 2)])


# ---------------------------------------------------------------------------
# coordinate axes analogue


@pytest.mark.parametrize("n", [4, 5])
def test_axes_family(n):
    rep = axes_family_report(n)
    assert rep.ok
    assert rep.parameter_count == n * (n - 1)
    assert rep.t1_dimension == n * (n - 2)
    family = axes_versal_family(n)
    assert len(family.total) == n * (n - 1) // 2


# ---------------------------------------------------------------------------
# wedge straightening


def _eval_quadric(q, point):
    reg = q.reg
    assign = {
        f"z{m}": Polynomial.const(reg, Fraction(point[m - 1]))
        for m in range(1, len(point) + 1)
    }
    out = substitute(q, assign, target=reg)
    return out.constant_term()


def test_wedge_straightening():
    dirs = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)]
    dw = wedge_a2_deformation(dirs, 3)
    assert dw.ok
    assert dw.r == 5
    assert dw.rank == 5
    # independent re-evaluation of the interpolation conditions
    for line in dirs[:-1]:
        assert _eval_quadric(dw.quadric, line) == 0
    assert _eval_quadric(dw.quadric, dirs[-1]) == 1


def test_wedge_degenerate_directions():
    with pytest.raises(RankDeficiencyError) as exc:
        wedge_a2_deformation([(1, 0, 0), (0, 1, 0), (1, 0, 0)], 3)
    assert exc.value.rank < exc.value.needed


def test_wedge_input_validation():
    with pytest.raises(ValueError):
        wedge_a2_deformation([(1, 0, 0)], 3)  # no target
    with pytest.raises(ValueError):
        wedge_a2_deformation([(1, 0, 0), (0, 1, 1)], 3)  # target not normalized
    with pytest.raises(ValueError):
        wedge_a2_deformation([(1, 0), (1, 1, 1)], 3)  # wrong length


# ---------------------------------------------------------------------------
# main family and serialization


def test_main_family_shapes():
    fam4 = main_family(4)
    d4 = fam4.to_json_dict()
    assert d4["n"] == 4
    assert len(d4["total"]) == 12
    assert d4["base"] == []
    assert len(d4["parameters"]) == 6

    fam5 = main_family(5)
    d5 = fam5.to_json_dict()
    assert len(d5["total"]) == 30
    assert len(d5["base"]) == 5
    assert len(d5["parameters"]) == 10


def test_base_ideal_generator_counts():
    assert len(base_ideal(5).generators) == len(quadric_index_set(5))
    assert len(base_ideal(5, minimal=True).generators) == 5


def test_nice_total_space():
    rep = nice_total_space_check()
    assert rep.ok
    assert rep.differences_ok
    assert rep.elimination_ok
