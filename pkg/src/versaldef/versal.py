"""The versal deformation of the generic-lines singularity.

The family deforms the quadric presentation of n+1 generic lines by
antisymmetric parameters a_ij (a_ji = -a_ij).  Its total space is cut
out by the generators F produced by ``family_generator`` and its base
space by the quadrics built from the fully symmetric expressions
phi_ijk = a_ij*a_ik + a_ji*a_jk + a_ki*a_kj.  All verification here is
exact: first-order deformations are solved as rational linear systems,
flatness is certified by reducing each lifted relation to zero against
a Groebner basis of the base ideal, and the explicit smoothings and
monomial-curve families are checked generator by generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .curves import elliptic_monomial_table, line_generator, lines_ideal, lines_registry
from .groebner import (
    Budget,
    DEFAULT_BUDGET,
    GroebnerBasis,
    Ideal,
    block_order,
    buchberger,
    eliminate,
    ideal_equal,
    normal_form,
)
from .linalg import SparseEliminator, dense_rank, solve_dense
from .poly import Polynomial, VarRegistry, build_registry, parse, substitute

__all__ = [
    "DIAGONAL",
    "AXIS_PARABOLA",
    "DeformationFamily",
    "T1Result",
    "LiftCertificate",
    "FlatnessReport",
    "InductionReport",
    "PfaffianReport",
    "SmoothingCheck",
    "SmoothingReport",
    "MonomialFamilyReport",
    "AxesFamilyReport",
    "NiceFormulaReport",
    "WedgeDeformation",
    "RankDeficiencyError",
    "versal_registry",
    "base_registry",
    "phi",
    "base_quadric",
    "quadric_index_set",
    "family_generator",
    "family_index_set",
    "canonical_fourth_index",
    "minimal_base_quadrics",
    "base_ideal",
    "main_family",
    "t1_compute",
    "t2_dimension",
    "verify_flatness",
    "base_equals_total",
    "pfaffian_check",
    "smoothing_family",
    "elliptic_monomial_family",
    "default_projection_samples",
    "axes_versal_family",
    "axes_family_report",
    "wedge_a2_deformation",
    "nice_total_space_check",
    "phi_symmetry_failures",
    "quadric_symmetry_failures",
    "four_term_failures",
    "cocycle_failures",
    "family_expanded_failures",
    "family_k_change_failures",
    "span_rank",
]

DIAGONAL = "DIAGONAL"
AXIS_PARABOLA = "AXIS_PARABOLA"


# ---------------------------------------------------------------------------
# registries and building blocks


@lru_cache(maxsize=None)
def versal_registry(n: int) -> VarRegistry:
    """One ring for everything: z-variables, y, the 1-parameter symbols
    t and s, and the antisymmetric deformation parameters."""
    return build_registry(nz=n, y=True, t=True, s=True, npairs=n)


@lru_cache(maxsize=None)
def base_registry(n: int) -> VarRegistry:
    """Parameters only."""
    return build_registry(npairs=n)


def _zv(reg: VarRegistry, i: int) -> Polynomial:
    return Polynomial.var(reg, f"z{i}")


def _av(reg: VarRegistry, i: int, j: int) -> Polynomial:
    return Polynomial.var(reg, f"a_{i}_{j}")


def _check_indices(n: int, *idx: int) -> None:
    if len(set(idx)) != len(idx):
        raise ValueError(f"indices must be pairwise distinct, got {idx}")
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")


@lru_cache(maxsize=None)
def _phi(reg: VarRegistry, i: int, j: int, k: int) -> Polynomial:
    return (
        _av(reg, i, j) * _av(reg, i, k)
        + _av(reg, j, i) * _av(reg, j, k)
        + _av(reg, k, i) * _av(reg, k, j)
    )


def phi(i: int, j: int, k: int, n: int) -> Polynomial:
    """The quadric a_ij*a_ik + a_ji*a_jk + a_ki*a_kj in normalized
    parameters (reversed pairs expanded through a_ji = -a_ij)."""
    _check_indices(n, i, j, k)
    return _phi(base_registry(n), i, j, k)


def _quadric(reg: VarRegistry, i: int, j: int, l: int, k: int, m: int) -> Polynomial:
    return _phi(reg, i, j, k) - _phi(reg, i, l, k) - _phi(reg, i, j, m) + _phi(reg, i, l, m)


def base_quadric(i: int, j: int, l: int, k: int, m: int, n: int) -> Polynomial:
    """The base-space quadric phi_ijk - phi_ilk - phi_ijm + phi_ilm."""
    _check_indices(n, i, j, l, k, m)
    return _quadric(base_registry(n), i, j, l, k, m)


def canonical_fourth_index(i: int, j: int, l: int, n: int) -> int:
    """Smallest index not among i, j, l."""
    for k in range(1, n + 1):
        if k not in (i, j, l):
            return k
    raise ValueError(f"no fourth index available for n={n}")


@lru_cache(maxsize=None)
def _family_gen(n: int, i: int, j: int, l: int, k: int) -> Polynomial:
    reg = versal_registry(n)
    return (
        (_zv(reg, i) - _av(reg, i, j)) * (_zv(reg, j) - _av(reg, j, i))
        - (_av(reg, i, k) - _av(reg, i, j)) * (_av(reg, j, k) - _av(reg, j, i))
        - (_zv(reg, i) - _av(reg, i, l)) * (_zv(reg, l) - _av(reg, l, i))
        + (_av(reg, i, k) - _av(reg, i, l)) * (_av(reg, l, k) - _av(reg, l, i))
    )


def family_generator(i: int, j: int, l: int, n: int, k: Optional[int] = None) -> Polynomial:
    """Total-space generator deforming z_i*z_j - z_i*z_l, in factored
    form, with the auxiliary index k defaulting to the smallest index
    outside {i, j, l}.  Changing k moves the generator by a base
    quadric only."""
    if n < 4:
        raise ValueError("need n >= 4")
    _check_indices(n, i, j, l)
    if k is None:
        k = canonical_fourth_index(i, j, l, n)
    else:
        _check_indices(n, i, j, l, k)
    return _family_gen(n, i, j, l, k)


def family_index_set(n: int) -> List[Tuple[int, int, int]]:
    """All (i, j, l) with j < l and i outside {j, l}."""
    out = []
    for i in range(1, n + 1):
        others = [m for m in range(1, n + 1) if m != i]
        for j, l in itertools.combinations(others, 2):
            out.append((i, j, l))
    return out


def quadric_index_set(n: int) -> List[Tuple[int, int, int, int, int]]:
    """Canonical representatives (i, j, l, k, m) of the base quadrics:
    five distinct indices, j < l, k < m, with {j, l} the pair containing
    the smallest non-i index (the pair swap is a symmetry)."""
    out = []
    for i in range(1, n + 1):
        others = [m for m in range(1, n + 1) if m != i]
        for four in itertools.combinations(others, 4):
            first, rest = four[0], four[1:]
            for t in range(3):
                j, l = first, rest[t]
                k, m = (x for x in rest if x != rest[t])
                out.append((i, j, l, k, m))
    return out


def minimal_base_quadrics(n: int) -> List[Polynomial]:
    """The binom(n,3) - n quadrics expressing all remaining phi_ijk
    through the n distinguished ones (the four with indices inside
    {1,2,3,4} and phi_12k for k >= 5)."""
    if n < 4:
        raise ValueError("need n >= 4")
    if n == 4:
        return []
    reg = base_registry(n)

    def p(i: int, j: int, k: int) -> Polynomial:
        return _phi(reg, i, j, k)

    gens = []
    for i, j in itertools.combinations(range(3, n + 1), 2):
        if (i, j) == (3, 4):
            continue
        gens.append(p(1, i, j) - p(1, 2, i) - p(1, 2, j) - p(1, 3, 4) + p(1, 2, 3) + p(1, 2, 4))
    for i, j in itertools.combinations(range(3, n + 1), 2):
        if (i, j) == (3, 4):
            continue
        gens.append(p(2, i, j) - p(1, 2, i) - p(1, 2, j) - p(2, 3, 4) + p(1, 2, 3) + p(1, 2, 4))
    for i, j, k in itertools.combinations(range(3, n + 1), 3):
        gens.append(
            p(i, j, k)
            - p(1, 2, i) - p(1, 2, j) - p(1, 2, k)
            - p(1, 3, 4) - p(2, 3, 4)
            + 2 * p(1, 2, 3) + 2 * p(1, 2, 4)
        )
    return gens


def base_ideal(n: int, minimal: bool = False) -> Ideal:
    """Base-space ideal: all base quadrics, or the minimal system."""
    if n < 4:
        raise ValueError("need n >= 4")
    reg = base_registry(n)
    if minimal:
        return Ideal(reg, minimal_base_quadrics(n))
    return Ideal(reg, [_quadric(reg, *t) for t in quadric_index_set(n)])


def span_rank(polys: Sequence[Polynomial]) -> int:
    """Rank of a list of polynomials as vectors over their monomials."""
    elim = SparseEliminator()
    cols: Dict = {}
    for p in polys:
        row = {}
        for mono, c in p.terms.items():
            col = cols.setdefault(mono, len(cols))
            row[col] = c
        elim.add(row)
    return elim.rank


def t2_dimension(n: int) -> int:
    """Rank of the full base-quadric family inside the space of
    quadratic monomials (the obstruction-space dimension)."""
    if n < 4:
        raise ValueError("need n >= 4")
    return span_rank(base_ideal(n, minimal=False).generators)


# ---------------------------------------------------------------------------
# polynomial identities behind the construction


def phi_symmetry_failures(n: int) -> List[tuple]:
    """Triples where some permutation of phi's indices changes it."""
    fails = []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        ref = phi(i, j, k, n)
        for p in itertools.permutations((i, j, k)):
            if phi(p[0], p[1], p[2], n) != ref:
                fails.append(p)
    return fails


def quadric_symmetry_failures(n: int) -> List[tuple]:
    """Canonical tuples violating the antisymmetries in (j,l) and (k,m)
    or the symmetry under swapping the two pairs."""
    fails = []
    for (i, j, l, k, m) in quadric_index_set(n):
        q = base_quadric(i, j, l, k, m, n)
        if (
            base_quadric(i, l, j, k, m, n) != -q
            or base_quadric(i, j, l, m, k, n) != -q
            or base_quadric(i, k, m, j, l, n) != q
        ):
            fails.append((i, j, l, k, m))
    return fails


def four_term_failures(n: int) -> List[tuple]:
    """Violations of the linear relation expressing the quadrics with
    superscript n through the others; needs six distinct indices."""
    if n < 6:
        raise ValueError("needs six distinct indices, so n >= 6")
    reg = base_registry(n)
    fails = []
    pool = range(1, n)
    for j, l in itertools.combinations(pool, 2):
        rest = [x for x in pool if x not in (j, l)]
        for i, k, m in itertools.permutations(rest, 3):
            expr = (
                _quadric(reg, i, j, l, k, m)
                - _quadric(reg, n, j, l, k, m)
                - _quadric(reg, k, j, l, i, n)
                + _quadric(reg, m, j, l, i, n)
            )
            if not expr.is_zero():
                fails.append((i, j, l, k, m))
    return fails


def cocycle_failures(n: int) -> List[tuple]:
    """Violations of the four-index identity that makes the lifted
    relation close up (every term cancels against another)."""
    if n < 4:
        raise ValueError("need n >= 4")
    reg = base_registry(n)
    fails = []
    for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
        expr = (
            -_av(reg, i, j) * (_phi(reg, i, k, l) - _phi(reg, j, k, l))
            + _av(reg, i, l) * (_phi(reg, i, j, k) - _phi(reg, j, l, k))
            + _av(reg, k, j) * (_phi(reg, i, k, l) - _phi(reg, i, j, l))
            - _av(reg, k, l) * (_phi(reg, i, j, k) - _phi(reg, i, j, l))
        )
        if not expr.is_zero():
            fails.append((i, j, k, l))
    return fails


def family_expanded_failures(n: int) -> List[tuple]:
    """Index triples where the factored form of the family generator
    disagrees with its expanded form."""
    reg = versal_registry(n)
    fails = []
    for (i, j, l) in family_index_set(n):
        k = canonical_fourth_index(i, j, l, n)
        expanded = (
            _zv(reg, i) * _zv(reg, j)
            - _zv(reg, i) * _zv(reg, l)
            + (_av(reg, i, j) - _av(reg, i, l)) * _zv(reg, i)
            + _av(reg, j, i) * _zv(reg, j)
            - _av(reg, l, i) * _zv(reg, l)
            - _phi(reg, i, j, k)
            + _phi(reg, i, l, k)
        )
        if family_generator(i, j, l, n) != expanded:
            fails.append((i, j, l))
    return fails


def family_k_change_failures(n: int) -> List[tuple]:
    """Triples and index pairs where switching the auxiliary index does
    not move the family generator by exactly minus a base quadric."""
    reg = versal_registry(n)
    fails = []
    for (i, j, l) in family_index_set(n):
        k = canonical_fourth_index(i, j, l, n)
        for kp in range(1, n + 1):
            if kp in (i, j, l) or kp == k:
                continue
            diff = family_generator(i, j, l, n, k) - family_generator(i, j, l, n, kp)
            if diff != -_quadric(reg, i, j, l, k, kp):
                fails.append((i, j, l, k, kp))
    return fails


# ---------------------------------------------------------------------------
# deformation families as data


@dataclass(frozen=True)
class DeformationFamily:
    """A family: total-space generators over a working ring, the base
    ideal in the parameters alone, and the parameter registry."""

    n: int
    total: tuple
    base: Ideal
    parameters: VarRegistry

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "parameters": list(self.parameters.names),
            "total": [str(p) for p in self.total],
            "base": [str(p) for p in self.base.generators],
        }


def main_family(n: int) -> DeformationFamily:
    """The versal family itself: all generators F with the minimal base
    system."""
    total = tuple(family_generator(i, j, l, n) for (i, j, l) in family_index_set(n))
    return DeformationFamily(
        n=n, total=total, base=base_ideal(n, minimal=True), parameters=base_registry(n)
    )


# ---------------------------------------------------------------------------
# first-order deformations


@dataclass(frozen=True)
class T1Result:
    n: int
    dimension: int
    by_degree: Mapping[int, int]
    basis: tuple
    basis_ok: bool
    detail: Mapping[str, int]


@lru_cache(maxsize=None)
def _lines_gb(n: int) -> GroebnerBasis:
    return buchberger(lines_ideal(n))


def _relation_quadruples(n: int) -> List[Tuple[int, int, int, int]]:
    out = []
    for i, k in itertools.combinations(range(1, n + 1), 2):
        rest = [m for m in range(1, n + 1) if m not in (i, k)]
        for j, l in itertools.combinations(rest, 2):
            out.append((i, k, j, l))
    return out


def _slot_multipliers(i: int, k: int, j: int, l: int):
    """The four (pair, multiplier index, sign) slots of the relation
    z_k(g_ij - g_il) - z_i(g_kj - g_kl)."""
    return (
        ((i, j), k, 1),
        ((i, l), k, -1),
        ((k, j), i, -1),
        ((k, l), i, 1),
    )


def _dot(row: Mapping[int, Fraction], vec: Mapping[int, Fraction]) -> Fraction:
    if len(vec) < len(row):
        row, vec = vec, row
    return sum((c * vec[u] for u, c in row.items() if u in vec), Fraction(0))


@lru_cache(maxsize=None)
def t1_compute(n: int) -> T1Result:
    """Solve the first-order lifting conditions for perturbations of
    the quadric generators by polynomials of degree at most 1, quotient
    out the coordinate-change directions, and certify the standard
    basis G_ij = z_i*z_j - y + a_ij*(z_i - z_j).

    The linear system splits by weight: z-perturbations sit in weighted
    degree -1 and constant perturbations in degree -2, and the lifting
    conditions never mix the two, so the parts are solved separately.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    reg = lines_registry(n)
    gb = _lines_gb(n)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    pos = {p: c for c, p in enumerate(pairs)}
    quads = _relation_quadruples(n)

    prod_nf = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            prod_nf[(a, b)] = normal_form(_zv(reg, a) * _zv(reg, b), gb)

    def pair_pos(p: int, q: int) -> int:
        return pos[(p, q) if p < q else (q, p)]

    # weighted degree -1: unknowns are coefficients of z_m in each slot
    rows1: List[Dict[int, Fraction]] = []
    for (i, k, j, l) in quads:
        cond: Dict[tuple, Dict[int, Fraction]] = {}
        for (p, q), mult, sgn in _slot_multipliers(i, k, j, l):
            base_col = pair_pos(p, q) * n
            for m in range(1, n + 1):
                nf = prod_nf[(mult, m) if mult <= m else (m, mult)]
                for mono, c in nf.terms.items():
                    d = cond.setdefault(mono, {})
                    u = base_col + m - 1
                    d[u] = d.get(u, Fraction(0)) + sgn * c
        for raw in cond.values():
            row = {u: c for u, c in raw.items() if c}
            if row:
                rows1.append(row)

    elim1 = SparseEliminator()
    for row in rows1:
        elim1.add(dict(row))
    nunk1 = len(pairs) * n
    solution_dim1 = nunk1 - elim1.rank

    trivial1: List[Dict[int, Fraction]] = []
    for m in range(1, n + 1):  # y -> y + z_m
        trivial1.append({pos[p] * n + m - 1: Fraction(-1) for p in pairs})
    for i in range(1, n + 1):  # z_i -> z_i + 1
        vec: Dict[int, Fraction] = {}
        for (p, q) in pairs:
            if p == i:
                vec[pos[(p, q)] * n + q - 1] = Fraction(1)
            elif q == i:
                vec[pos[(p, q)] * n + p - 1] = Fraction(1)
        trivial1.append(vec)

    trivial_in_solutions = all(_dot(row, v) == 0 for v in trivial1 for row in rows1)
    telim = SparseEliminator()
    for v in trivial1:
        telim.add(dict(v))
    trivial_rank1 = telim.rank

    candidates = []
    for (p, q) in pairs:
        candidates.append({pos[(p, q)] * n + p - 1: Fraction(1), pos[(p, q)] * n + q - 1: Fraction(-1)})
    candidates_in_solutions = all(_dot(row, v) == 0 for v in candidates for row in rows1)
    for v in candidates:
        telim.add(dict(v))
    independent = telim.rank == trivial_rank1 + len(pairs)

    dim1 = solution_dim1 - trivial_rank1

    # weighted degree -2: unknowns are the constant slot perturbations
    rows2: List[Dict[int, Fraction]] = []
    for (i, k, j, l) in quads:
        cond2: Dict[tuple, Dict[int, Fraction]] = {}
        for (p, q), mult, sgn in _slot_multipliers(i, k, j, l):
            nf = normal_form(_zv(reg, mult), gb)
            for mono, c in nf.terms.items():
                d = cond2.setdefault(mono, {})
                u = pair_pos(p, q)
                d[u] = d.get(u, Fraction(0)) + sgn * c
        for raw in cond2.values():
            row = {u: c for u, c in raw.items() if c}
            if row:
                rows2.append(row)
    elim2 = SparseEliminator()
    for row in rows2:
        elim2.add(dict(row))
    solution_dim2 = len(pairs) - elim2.rank
    shift_y = {pos[p]: Fraction(-1) for p in pairs}  # y -> y + constant
    shift_ok = all(_dot(row, shift_y) == 0 for row in rows2)
    dim2 = solution_dim2 - 1

    vreg = versal_registry(n)
    yv = Polynomial.var(vreg, "y")
    basis = tuple(
        _zv(vreg, i) * _zv(vreg, j) - yv + _av(vreg, i, j) * (_zv(vreg, i) - _zv(vreg, j))
        for (i, j) in pairs
    )
    basis_ok = (
        trivial_in_solutions
        and candidates_in_solutions
        and independent
        and shift_ok
        and solution_dim1 == trivial_rank1 + len(pairs)
    )
    return T1Result(
        n=n,
        dimension=dim1 + dim2,
        by_degree={-1: dim1, -2: dim2},
        basis=basis,
        basis_ok=basis_ok,
        detail={
            "unknowns_deg1": nunk1,
            "condition_rank_deg1": elim1.rank,
            "solution_dim_deg1": solution_dim1,
            "trivial_rank_deg1": trivial_rank1,
            "unknowns_deg2": len(pairs),
            "condition_rank_deg2": elim2.rank,
            "solution_dim_deg2": solution_dim2,
        },
    )


# ---------------------------------------------------------------------------
# flatness certificates


@dataclass(frozen=True)
class LiftCertificate:
    quadruple: tuple
    combination: Polynomial
    residual: Polynomial
    ok: bool


@dataclass(frozen=True)
class FlatnessReport:
    n: int
    certificates: tuple
    ok: bool


@lru_cache(maxsize=None)
def _base_gb(n: int, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    return buchberger(base_ideal(n, minimal=True), budget=budget)


@lru_cache(maxsize=None)
def _mixed_base_gb(n: int, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """The base Groebner basis transported into the full ring, under a
    block order whose trailing block holds the parameters.  Leading
    terms are untouched by the transport, so the basis property carries
    over, and normal forms only ever rewrite parameter coefficients."""
    vreg = versal_registry(n)
    outer = [nm for nm in vreg.names if not nm.startswith("a_")]
    order = block_order(vreg, outer)
    gb = _base_gb(n, budget)
    lifted = tuple(substitute(p, {}, target=vreg) for p in gb.basis)
    return GroebnerBasis(registry=vreg, order=order, basis=lifted, stats=gb.stats)


def verify_flatness(n: int, budget: Budget = DEFAULT_BUDGET) -> FlatnessReport:
    """Lift every distinguished relation through the deformed
    generators and reduce the obstruction against the base ideal.  For
    n = 4 the base is empty and the combination must vanish literally.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    vreg = versal_registry(n)
    gbx = None if n == 4 else _mixed_base_gb(n, budget)

    def fgen(a: int, b: int, c: int) -> Polynomial:
        return family_generator(a, b, c, n)

    certs = []
    all_ok = True
    for (i, k, j, l) in _relation_quadruples(n):
        comb = (
            _zv(vreg, k) * fgen(i, j, l)
            - _zv(vreg, i) * fgen(k, j, l)
            - _av(vreg, i, j) * fgen(k, i, j)
            + _av(vreg, i, l) * fgen(k, i, l)
            + _av(vreg, k, j) * fgen(i, k, j)
            - _av(vreg, k, l) * fgen(i, k, l)
        )
        residual = comb if gbx is None else normal_form(comb, gbx, budget)
        ok = residual.is_zero()
        all_ok = all_ok and ok
        certs.append(LiftCertificate((i, k, j, l), comb, residual, ok))
    return FlatnessReport(n=n, certificates=tuple(certs), ok=all_ok)


# ---------------------------------------------------------------------------
# base space equals previous total space


@dataclass(frozen=True)
class InductionReport:
    n: int
    substitution_matches: bool
    mismatches: tuple
    carried_rank: int
    combined_rank: int
    new_rank: int
    expected_new_rank: int
    ideal_equal_ok: bool
    ok: bool


def base_equals_total(n: int, budget: Budget = DEFAULT_BUDGET) -> InductionReport:
    """Substituting z_m -> a_mn into the level n-1 family generators
    must reproduce base quadrics of level n; on top of the carried
    level n-1 base system they must contribute exactly n(n-3)/2 new
    independent quadrics, filling the whole obstruction space, and the
    two systems together must generate the level n base ideal."""
    if n < 5:
        raise ValueError("need n >= 5")
    prev = n - 1
    breg = base_registry(n)
    assign = {f"z{m}": _av(breg, m, n) for m in range(1, n)}

    substituted = []
    mismatches = []
    for (i, j, l) in family_index_set(prev):
        k = canonical_fourth_index(i, j, l, prev)
        s = substitute(family_generator(i, j, l, prev), assign, target=breg)
        if s != _quadric(breg, i, j, l, n, k):
            mismatches.append((i, j, l, k))
        substituted.append(s)

    carried = [substitute(p, {}, target=breg) for p in minimal_base_quadrics(prev)]
    carried_rank = span_rank(carried)
    combined_rank = span_rank(carried + substituted)
    new_rank = combined_rank - carried_rank
    expected_new = n * (n - 3) // 2
    eq = ideal_equal(
        Ideal(breg, substituted + carried),
        base_ideal(n, minimal=True),
        budget=budget,
    )
    ok = (
        not mismatches
        and new_rank == expected_new
        and combined_rank == t2_dimension(n)
        and eq
    )
    return InductionReport(
        n=n,
        substitution_matches=not mismatches,
        mismatches=tuple(mismatches),
        carried_rank=carried_rank,
        combined_rank=combined_rank,
        new_rank=new_rank,
        expected_new_rank=expected_new,
        ideal_equal_ok=eq,
        ok=ok,
    )


# ---------------------------------------------------------------------------
# the Pfaffian presentation at n = 5

_PFAFFIAN_UPPER = {
    (1, 2): "a_2_4 - a_2_5",
    (1, 3): "-a_1_4 + a_1_5",
    (1, 4): "-a_2_3 + a_2_5",
    (1, 5): "a_1_3 - a_1_5",
    (2, 3): "a_3_4 - a_3_5",
    (2, 4): "-a_1_2 - a_2_5",
    (2, 5): "a_1_2 - a_1_3 + a_2_4 - a_3_4",
    (3, 4): "a_1_2 - a_1_4 + a_2_3 + a_3_4",
    (3, 5): "-a_1_2 + a_1_5",
    (4, 5): "a_3_4 + a_4_5",
}


def _pf_expand(M: Mapping[tuple, Polynomial], idx: tuple, reg: VarRegistry) -> Polynomial:
    """Pfaffian by expansion along the first remaining row."""
    if not idx:
        return Polynomial.const(reg, Fraction(1))
    i0 = idx[0]
    acc = Polynomial.zero(reg)
    for t in range(1, len(idx)):
        rest = idx[1:t] + idx[t + 1:]
        term = M[(i0, idx[t])] * _pf_expand(M, rest, reg)
        acc = acc + term if t % 2 == 1 else acc - term
    return acc


def _pf_matchings(M: Mapping[tuple, Polynomial], idx: tuple, reg: VarRegistry) -> Polynomial:
    """Pfaffian straight from the signed-perfect-matching definition;
    an independent oracle for the expansion above."""
    acc = Polynomial.zero(reg)
    order = {v: c for c, v in enumerate(idx)}
    for perm in itertools.permutations(idx):
        if any(perm[2 * t] > perm[2 * t + 1] for t in range(len(idx) // 2)):
            continue
        if any(perm[2 * t] > perm[2 * t + 2] for t in range(len(idx) // 2 - 1)):
            continue
        inversions = sum(
            1
            for a, b in itertools.combinations(perm, 2)
            if order[a] > order[b]
        )
        term = Polynomial.const(reg, Fraction(1))
        for t in range(len(idx) // 2):
            term = term * M[(perm[2 * t], perm[2 * t + 1])]
        acc = acc + term if inversions % 2 == 0 else acc - term
    return acc


@dataclass(frozen=True)
class PfaffianReport:
    entries: tuple
    pfaffians: tuple
    all_quadratic: bool
    expansion_consistent: bool
    ideal_equal_ok: bool
    ok: bool


def pfaffian_check(budget: Budget = DEFAULT_BUDGET) -> PfaffianReport:
    """Builds the skew 5x5 matrix of linear forms, takes its five 4x4
    Pfaffians, and compares the ideal they generate with the base ideal
    at n = 5."""
    reg = base_registry(5)
    M: Dict[tuple, Polynomial] = {}
    for (r, c), txt in _PFAFFIAN_UPPER.items():
        p = parse(txt, reg)
        M[(r, c)] = p
        M[(c, r)] = -p
    pfaffians = []
    consistent = True
    for drop in range(1, 6):
        idx = tuple(x for x in range(1, 6) if x != drop)
        p1 = _pf_expand(M, idx, reg)
        p2 = _pf_matchings(M, idx, reg)
        consistent = consistent and p1 == p2
        pfaffians.append(p1)
    quadratic = all(p.total_degree() == 2 for p in pfaffians)
    eq = ideal_equal(Ideal(reg, pfaffians), base_ideal(5, minimal=True), budget=budget)
    return PfaffianReport(
        entries=tuple(sorted(_PFAFFIAN_UPPER.items())),
        pfaffians=tuple(pfaffians),
        all_quadratic=quadratic,
        expansion_consistent=consistent,
        ideal_equal_ok=eq,
        ok=quadratic and consistent and eq,
    )


# ---------------------------------------------------------------------------
# explicit one-parameter smoothings


@dataclass(frozen=True)
class SmoothingCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class SmoothingReport:
    kind: str
    n: int
    branch_count: int
    checks: tuple
    ok: bool


def smoothing_family(
    variant: str, n: int, budget: Budget = DEFAULT_BUDGET
) -> Tuple[DeformationFamily, SmoothingReport]:
    """The two explicit one-parameter partial smoothings: merging the
    last two lines into a hyperbola (DIAGONAL), or merging the last
    axis with the parabola branch into a conic (AXIS_PARABOLA).  Every
    claimed branch is certified by substitution, the implicit branches
    ideal-theoretically."""
    if n < 4:
        raise ValueError("need n >= 4")
    if variant not in (DIAGONAL, AXIS_PARABOLA):
        raise ValueError(f"unknown smoothing variant {variant!r}")
    reg = build_registry(nz=n, y=True, t=True, s=True)
    param_reg = build_registry(t=True)
    tv = Polynomial.var(reg, "t")
    sv = Polynomial.var(reg, "s")
    yv = Polynomial.var(reg, "y")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    ts = build_registry(t=True, s=True)
    ts_t = Polynomial.var(ts, "t")
    ts_s = Polynomial.var(ts, "s")
    ts_zero = Polynomial.zero(ts)
    checks: List[SmoothingCheck] = []

    def all_vanish(gens: Sequence[Polynomial], assign: Mapping[str, Polynomial]) -> bool:
        return all(substitute(g, assign, target=ts).is_zero() for g in gens)

    if variant == DIAGONAL:
        total = []
        for (i, j) in pairs:
            g = _zv(reg, i) * _zv(reg, j) - yv
            if (i, j) == (n - 1, n):
                g = g + tv * (_zv(reg, n - 1) - _zv(reg, n))
            total.append(g)

        lreg = lines_registry(n)
        lzero = Polynomial.zero(lreg)
        fiber = [substitute(g, {"t": lzero, "s": lzero}, target=lreg) for g in total]
        expected_fiber = [line_generator(lreg, i, j) for (i, j) in pairs]
        checks.append(SmoothingCheck("fiber-at-zero", fiber == expected_fiber))

        for i in range(1, n - 1):
            assign = {f"z{m}": ts_zero for m in range(1, n + 1) if m != i}
            assign[f"z{i}"] = ts_s
            assign["y"] = ts_zero
            checks.append(SmoothingCheck(f"axis-branch-z{i}", all_vanish(total, assign)))

        assign = {f"z{m}": ts_s for m in range(1, n + 1)}
        assign["y"] = ts_s * ts_s
        checks.append(SmoothingCheck("parabola-branch", all_vanish(total, assign)))

        rzero = Polynomial.zero(reg)
        hassign = {f"z{m}": rzero for m in range(1, n - 1)}
        hassign["y"] = rzero
        residual = [substitute(g, hassign, target=reg) for g in total]
        residual = [r for r in residual if not r.is_zero()]
        hyper = _zv(reg, n - 1) * _zv(reg, n) + tv * (_zv(reg, n - 1) - _zv(reg, n))
        hyp_ok = bool(residual) and ideal_equal(
            Ideal(reg, residual), Ideal(reg, [hyper]), budget=budget
        )
        checks.append(SmoothingCheck("hyperbola-branch", hyp_ok))

        breg = base_registry(n)
        pzero = Polynomial.zero(ts)
        passign = {nm: pzero for nm in breg.names}
        passign[f"a_{n-1}_{n}"] = ts_t
        phi_ok = all(
            substitute(_phi(breg, i, j, k), passign, target=ts).is_zero()
            for i, j, k in itertools.combinations(range(1, n + 1), 3)
        )
        checks.append(SmoothingCheck("parameter-point-kills-phi", phi_ok))
        branch_count = n

    else:  # AXIS_PARABOLA
        total = [
            (_zv(reg, i) - tv) * (_zv(reg, n) + tv) - yv for i in range(1, n)
        ] + [
            _zv(reg, i) * _zv(reg, j) - yv
            for i, j in itertools.combinations(range(1, n), 2)
        ]

        lreg = lines_registry(n)
        lzero = Polynomial.zero(lreg)
        fiber = sorted(
            str(substitute(g, {"t": lzero, "s": lzero}, target=lreg)) for g in total
        )
        expected_fiber = sorted(str(line_generator(lreg, i, j)) for (i, j) in pairs)
        checks.append(SmoothingCheck("fiber-at-zero", fiber == expected_fiber))

        factor_ok = all(
            total[i - 1] - total[j - 1]
            == (_zv(reg, i) - _zv(reg, j)) * (_zv(reg, n) + tv)
            for i, j in itertools.combinations(range(1, n), 2)
        )
        checks.append(SmoothingCheck("difference-factorization", factor_ok))

        for i in range(1, n):
            assign = {f"z{m}": ts_zero for m in range(1, n) if m != i}
            assign[f"z{i}"] = ts_s
            assign[f"z{n}"] = -ts_t
            assign["y"] = ts_zero
            checks.append(SmoothingCheck(f"line-branch-z{i}", all_vanish(total, assign)))

        cassign = {f"z{m}": sv for m in range(1, n)}
        cassign["y"] = sv * sv
        residual = [substitute(g, cassign, target=reg) for g in total]
        residual = [r for r in residual if not r.is_zero()]
        conic = (sv - tv) * (_zv(reg, n) + tv) - sv * sv
        conic_ok = bool(residual) and ideal_equal(
            Ideal(reg, residual), Ideal(reg, [conic]), budget=budget
        )
        checks.append(SmoothingCheck("conic-branch", conic_ok))
        branch_count = n

    family = DeformationFamily(
        n=n, total=tuple(total), base=Ideal(param_reg, []), parameters=param_reg
    )
    report = SmoothingReport(
        kind=variant,
        n=n,
        branch_count=branch_count,
        checks=tuple(checks),
        ok=all(c.ok for c in checks),
    )
    return family, report


# ---------------------------------------------------------------------------
# deformation of the elliptic monomial curve


@dataclass(frozen=True)
class MonomialFamilyReport:
    n: int
    zero_fiber_ok: bool
    parametrization_ok: bool
    projections: tuple
    ok: bool


def default_projection_samples(n: int) -> List[Tuple[Fraction, ...]]:
    e_first = tuple(Fraction(1 if m == 2 else 0) for m in range(2, n + 2))
    e_last = tuple(Fraction(1 if m == n + 1 else 0) for m in range(2, n + 2))
    return [e_first, e_last]


def elliptic_monomial_family(
    n: int,
    samples: Optional[Sequence[Sequence[Fraction]]] = None,
    budget: Budget = DEFAULT_BUDGET,
) -> Tuple[DeformationFamily, MonomialFamilyReport]:
    """Deformation of the monomial curve with semigroup <n+1, ..., 2n>
    over free parameters a_2 ... a_{n+1}: the square z_1^2 in the
    rewriting table is replaced by
    z_1^2 + a_2 z_n + a_3 z_{n-1} + ... + a_n z_2 + a_{n+1} z_1.
    At sampled rational parameter values the projection to the
    (z_1, z_2)-plane is computed by elimination and compared with
    z_2^(n+1) = z_1^(n+2) + sum a_m z_1^m z_2^(n+1-m)."""
    if n < 4:
        raise ValueError("need n >= 4")
    reg = build_registry(nz=n, params=tuple(range(2, n + 2)))
    param_reg = build_registry(params=tuple(range(2, n + 2)))

    def pv(m: int) -> Polynomial:
        return Polynomial.var(reg, f"a_{m}")

    q = _zv(reg, 1) ** 2 + pv(n + 1) * _zv(reg, 1)
    for m in range(2, n + 1):
        q = q + pv(m) * _zv(reg, n + 2 - m)

    total = []
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            if (i, j) == (2, n):
                continue
            lhs = _zv(reg, i) * _zv(reg, j)
            if i + j <= n + 1:
                rhs = _zv(reg, 1) * _zv(reg, i + j - 1)
            elif i + j == n + 2:
                rhs = _zv(reg, 2) * _zv(reg, n)
            else:
                rhs = q * _zv(reg, i + j - n - 2)
            total.append(lhs - rhs)

    family = DeformationFamily(
        n=n, total=tuple(total), base=Ideal(param_reg, []), parameters=param_reg
    )

    zreg = build_registry(nz=n)
    zzero = Polynomial.zero(zreg)
    zero_assign = {f"a_{m}": zzero for m in range(2, n + 2)}
    fiber = [substitute(p, zero_assign, target=zreg) for p in total]
    zero_fiber_ok = fiber == elliptic_monomial_table(n)

    treg = build_registry(t=True)
    tvar = Polynomial.var(treg, "t")
    par_assign = {f"z{m}": tvar ** (n + m) for m in range(1, n + 1)}
    par_assign.update({f"a_{m}": Polynomial.zero(treg) for m in range(2, n + 2)})
    parametrization_ok = all(
        substitute(p, par_assign, target=treg).is_zero() for p in total
    )

    if samples is None:
        samples = default_projection_samples(n)
    projections = []
    for sample in samples:
        values = tuple(Fraction(x) for x in sample)
        if len(values) != n:
            raise ValueError(f"sample needs {n} values (for a_2 .. a_{n+1})")
        sassign = {
            f"a_{m}": Polynomial.const(zreg, values[m - 2]) for m in range(2, n + 2)
        }
        gens = [substitute(p, sassign, target=zreg) for p in total]
        eliminated = eliminate(
            Ideal(zreg, gens), [f"z{m}" for m in range(3, n + 1)], budget
        )
        preg = eliminated.registry
        z1, z2 = _zv(preg, 1), _zv(preg, 2)
        expect = z2 ** (n + 1) - z1 ** (n + 2)
        for m in range(2, n + 2):
            expect = expect - Polynomial.const(preg, values[m - 2]) * z1 ** m * z2 ** (n + 1 - m)
        ok = ideal_equal(eliminated, Ideal(preg, [expect]), budget=budget)
        projections.append((values, ok))

    report = MonomialFamilyReport(
        n=n,
        zero_fiber_ok=zero_fiber_ok,
        parametrization_ok=parametrization_ok,
        projections=tuple(projections),
        ok=zero_fiber_ok and parametrization_ok and all(ok for _, ok in projections),
    )
    return family, report


# ---------------------------------------------------------------------------
# the coordinate-axes analogue


@dataclass(frozen=True)
class AxesFamilyReport:
    n: int
    zero_fiber_ok: bool
    k_independence_ok: bool
    parameter_count: int
    t1_dimension: int
    ok: bool


def axes_versal_family(n: int) -> DeformationFamily:
    """Deformation of the n coordinate axes with independent ordered
    parameters a_ij (no antisymmetry): generators
    (z_i - a_ij)(z_j - a_ji) - (a_ik - a_ij)(a_jk - a_ji) with the
    canonical auxiliary index, base ideal generated by the differences
    of the constant terms over the possible auxiliary indices."""
    if n < 4:
        raise ValueError("need n >= 4")
    reg = build_registry(nz=n, npairs=n, ordered_pairs=True)
    param_reg = build_registry(npairs=n, ordered_pairs=True)

    def av(r: VarRegistry, i: int, j: int) -> Polynomial:
        return Polynomial.var(r, f"a_{i}_{j}")

    def corner(r: VarRegistry, i: int, j: int, k: int) -> Polynomial:
        return (av(r, i, k) - av(r, i, j)) * (av(r, j, k) - av(r, j, i))

    total = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        k = min(m for m in range(1, n + 1) if m not in (i, j))
        total.append(
            (_zv(reg, i) - av(reg, i, j)) * (_zv(reg, j) - av(reg, j, i))
            - corner(reg, i, j, k)
        )

    base = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        comp = [m for m in range(1, n + 1) if m not in (i, j)]
        for k, l in itertools.combinations(comp, 2):
            base.append(corner(param_reg, i, j, k) - corner(param_reg, i, j, l))

    return DeformationFamily(
        n=n, total=tuple(total), base=Ideal(param_reg, base), parameters=param_reg
    )


def axes_family_report(n: int, budget: Budget = DEFAULT_BUDGET) -> AxesFamilyReport:
    """Checks for the coordinate-axes family: special fiber, choice
    independence of the auxiliary index modulo the base ideal, and the
    parameter bookkeeping (n(n-1) parameters for an n(n-2)-dimensional
    space of first-order deformations)."""
    family = axes_versal_family(n)
    reg = family.total[0].reg
    param_reg = family.parameters

    zreg = build_registry(nz=n)
    zzero = Polynomial.zero(zreg)
    zero_assign = {nm: zzero for nm in param_reg.names}
    fiber = [substitute(p, zero_assign, target=zreg) for p in family.total]
    expected = [
        _zv(zreg, i) * _zv(zreg, j) for i, j in itertools.combinations(range(1, n + 1), 2)
    ]
    zero_fiber_ok = fiber == expected

    gb = buchberger(family.base, budget=budget)

    def av(r: VarRegistry, i: int, j: int) -> Polynomial:
        return Polynomial.var(r, f"a_{i}_{j}")

    def fgen(i: int, j: int, k: int) -> Polynomial:
        return (_zv(reg, i) - av(reg, i, j)) * (_zv(reg, j) - av(reg, j, i)) - (
            av(reg, i, k) - av(reg, i, j)
        ) * (av(reg, j, k) - av(reg, j, i))

    k_ok = True
    for i, j in itertools.combinations(range(1, n + 1), 2):
        comp = [m for m in range(1, n + 1) if m not in (i, j)]
        k0 = comp[0]
        for kp in comp[1:]:
            diff = fgen(i, j, k0) - fgen(i, j, kp)
            diff_param = substitute(diff, {}, target=param_reg)
            if not normal_form(diff_param, gb, budget).is_zero():
                k_ok = False

    parameter_count = len(param_reg.names)
    ok = zero_fiber_ok and k_ok and parameter_count == n * (n - 1)
    return AxesFamilyReport(
        n=n,
        zero_fiber_ok=zero_fiber_ok,
        k_independence_ok=k_ok,
        parameter_count=parameter_count,
        t1_dimension=n * (n - 2),
        ok=ok,
    )


# ---------------------------------------------------------------------------
# wedging on a cusp


class RankDeficiencyError(ValueError):
    """The line directions fail to impose independent conditions on
    quadrics, so no straightening quadric can be solved for."""

    def __init__(self, rank: int, needed: int):
        super().__init__(
            f"line conditions have rank {rank}, need {needed}; "
            "directions are degenerate"
        )
        self.rank = rank
        self.needed = needed


@dataclass(frozen=True)
class WedgeDeformation:
    n: int
    r: int
    quadric: Polynomial
    lines: tuple
    target: tuple
    rank: int
    lines_fixed_ok: bool
    straightened_ok: bool
    ok: bool


def wedge_a2_deformation(directions: Sequence[Sequence], n: int) -> WedgeDeformation:
    """Deform the wedge of r-1 lines with a cusp into r lines.

    ``directions`` lists the r-1 line directions followed by the target
    direction (first coordinate 1).  A quadric q in the z-variables is
    solved for which vanishes on the given lines and takes the value 1
    on the target direction; the coordinate change sending z_{n+1} to
    z_{n+1} - q/s^2 and z_{n+2} to z_{n+2} - z_1 q/s^3 then straightens
    the scaled cusp branch (a_1 s t, ..., a_n s t, t^2, t^3) into the
    line through the target while fixing the r-1 given lines.  Both
    facts are certified as polynomial identities in t and s (scaled by
    s^2 and s^3, as s is invertible)."""
    dirs = [tuple(Fraction(x) for x in v) for v in directions]
    if len(dirs) < 2:
        raise ValueError("need at least one line and the target direction")
    if any(len(v) != n for v in dirs):
        raise ValueError(f"every direction needs {n} coordinates")
    *lines, target = dirs
    r = len(lines) + 1
    if target[0] != 1:
        raise ValueError("target direction must be normalized to first coordinate 1")

    monos = [(p, q) for p in range(1, n + 1) for q in range(p, n + 1)]
    rows = [[v[p - 1] * v[q - 1] for (p, q) in monos] for v in lines]
    rows.append([target[p - 1] * target[q - 1] for (p, q) in monos])
    rank = dense_rank(rows)
    if rank < r:
        raise RankDeficiencyError(rank, r)
    rhs = [Fraction(0)] * len(lines) + [Fraction(1)]
    coeffs = solve_dense(rows, rhs)
    assert coeffs is not None  # full row rank

    zreg = build_registry(nz=n)
    quadric = Polynomial.zero(zreg)
    for c, (p, q) in zip(coeffs, monos):
        if c:
            quadric = quadric + Polynomial.const(zreg, c) * _zv(zreg, p) * _zv(zreg, q)

    ts = build_registry(t=True, s=True)
    tv = Polynomial.var(ts, "t")
    sv = Polynomial.var(ts, "s")

    def q_at(vec: tuple, scale: Polynomial) -> Polynomial:
        assign = {
            f"z{p}": Polynomial.const(ts, vec[p - 1]) * scale for p in range(1, n + 1)
        }
        return substitute(quadric, assign, target=ts)

    lines_fixed_ok = all(q_at(v, tv).is_zero() for v in lines)
    q_on_target = q_at(target, sv * tv)
    straightened_ok = (
        (sv ** 2 * tv ** 2 - q_on_target).is_zero()
        and (sv ** 3 * tv ** 3 - sv * tv * q_on_target).is_zero()
    )
    return WedgeDeformation(
        n=n,
        r=r,
        quadric=quadric,
        lines=tuple(lines),
        target=target,
        rank=rank,
        lines_fixed_ok=lines_fixed_ok,
        straightened_ok=straightened_ok,
        ok=lines_fixed_ok and straightened_ok,
    )


# ---------------------------------------------------------------------------
# the closed n = 4 presentation with y


@dataclass(frozen=True)
class NiceFormulaReport:
    differences_ok: bool
    elimination_ok: bool
    ok: bool


def nice_total_space_check(budget: Budget = DEFAULT_BUDGET) -> NiceFormulaReport:
    """At n = 4 the total space has a closed presentation retaining y:
    G_ij = z_i z_j - y + a_ij z_i + a_ji z_j - phi_ijk - phi_ijl with
    {k, l} the complementary pair.  Check that the differences
    G_ij - G_il reproduce the family generators and that eliminating y
    recovers the family ideal."""
    n = 4
    reg = build_registry(nz=4, y=True, npairs=4)
    yv = Polynomial.var(reg, "y")
    g: Dict[tuple, Polynomial] = {}
    for i, j in itertools.combinations(range(1, 5), 2):
        k, l = (m for m in range(1, 5) if m not in (i, j))
        g[(i, j)] = (
            _zv(reg, i) * _zv(reg, j)
            - yv
            + _av(reg, i, j) * _zv(reg, i)
            + _av(reg, j, i) * _zv(reg, j)
            - _phi(reg, i, j, k)
            - _phi(reg, i, j, l)
        )

    def gsym(i: int, j: int) -> Polynomial:
        return g[(i, j) if i < j else (j, i)]

    differences_ok = True
    for (i, j, l) in family_index_set(4):
        f = substitute(family_generator(i, j, l, 4), {}, target=reg)
        if gsym(i, j) - gsym(i, l) != f:
            differences_ok = False

    eliminated = eliminate(Ideal(reg, list(g.values())), ["y"], budget)
    ereg = eliminated.registry
    family = [
        substitute(family_generator(i, j, l, 4), {}, target=ereg)
        for (i, j, l) in family_index_set(4)
    ]
    elimination_ok = ideal_equal(eliminated, Ideal(ereg, family), budget=budget)
    return NiceFormulaReport(
        differences_ok=differences_ok,
        elimination_ok=elimination_ok,
        ok=differences_ok and elimination_ok,
    )
