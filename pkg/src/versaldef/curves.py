"""Curve germs: generic lines through the origin and monomial curves.

The central object is the union of n+1 lines in general position in
affine n-space.  After moving one line to a parabola via an auxiliary
coordinate y of weight 2, its ideal is generated by the quadrics
z_i*z_j - y over all pairs i < j; projecting y away recovers the pairwise
difference presentation z_i*z_j - z_k*z_l in the z-variables alone.

Monomial curves enter in two flavours, distinguished by their value
semigroups: the rational one <n, ..., 2n-1> and the elliptic one
<n+1, ..., 2n>, plus a non-monomial union of lines through roots of
unity satisfying the same shape of quadratic equations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .groebner import (
    Budget,
    DEFAULT_BUDGET,
    Ideal,
    buchberger,
    eliminate,
    normal_form,
)
from .linalg import SparseEliminator
from .poly import Polynomial, VarRegistry, build_registry, substitute

__all__ = [
    "LINES_GENERIC",
    "AXES",
    "MONOMIAL_RATIONAL",
    "MONOMIAL_ELLIPTIC",
    "NONRATIONAL_LINES",
    "WEDGE",
    "G_FORM",
    "F_FORM",
    "CurveSpec",
    "SemigroupData",
    "NumericInvariants",
    "RelationFamily",
    "NonrationalLinesReport",
    "lines_registry",
    "lines_ideal",
    "line_generator",
    "difference_generators_full",
    "elliptic_monomial_table",
    "rational_monomial_table",
    "monomial_ideal",
    "parametrization_kernel",
    "nonrational_lines_check",
    "relations",
    "semigroup_invariants",
    "numeric_invariants",
    "elliptic_t1_formula",
    "t2_formula",
    "minimal_generator_formula",
    "linear_relation_formula",
]

LINES_GENERIC = "LINES_GENERIC"
AXES = "AXES"
MONOMIAL_RATIONAL = "MONOMIAL_RATIONAL"
MONOMIAL_ELLIPTIC = "MONOMIAL_ELLIPTIC"
NONRATIONAL_LINES = "NONRATIONAL_LINES"
WEDGE = "WEDGE"

G_FORM = "G_FORM"
F_FORM = "F_FORM"

_KINDS = (LINES_GENERIC, AXES, MONOMIAL_RATIONAL, MONOMIAL_ELLIPTIC, NONRATIONAL_LINES, WEDGE)


@dataclass(frozen=True)
class CurveSpec:
    """Serializable description of a supported curve germ."""

    kind: str
    n: int
    partition: Optional[tuple] = None
    presentation: str = G_FORM

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.presentation not in (G_FORM, F_FORM):
            raise ValueError(f"unknown presentation {self.presentation!r}")

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "partition": list(self.partition) if self.partition else None,
            "presentation": self.presentation,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "CurveSpec":
        part = d.get("partition")
        return CurveSpec(
            kind=d["kind"],
            n=d["n"],
            partition=tuple(part) if part else None,
            presentation=d.get("presentation", G_FORM),
        )


# ---------------------------------------------------------------------------
# generic lines


@lru_cache(maxsize=None)
def lines_registry(n: int, with_y: bool = True) -> VarRegistry:
    return build_registry(nz=n, y=with_y)


def _zvar(reg: VarRegistry, i: int) -> Polynomial:
    return Polynomial.var(reg, f"z{i}")


def line_generator(reg: VarRegistry, i: int, j: int) -> Polynomial:
    """The quadric z_i*z_j - y (indices symmetric)."""
    return _zvar(reg, i) * _zvar(reg, j) - Polynomial.var(reg, "y")


def lines_ideal(n: int, presentation: str = G_FORM) -> Ideal:
    """Ideal of n+1 generic lines through the origin.

    G_FORM: the binom(n, 2) quadrics z_i*z_j - y in n+1 ambient
    coordinates, with the extra line bent into the parabola branch.
    F_FORM: the canonical minimal system z_i*z_j - z_1*z_2 in the
    z-variables alone ((n+1)(n-2)/2 generators).
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if presentation == G_FORM:
        reg = lines_registry(n)
        gens = [
            line_generator(reg, i, j)
            for i, j in itertools.combinations(range(1, n + 1), 2)
        ]
        return Ideal(reg, gens)
    if presentation == F_FORM:
        reg = lines_registry(n, with_y=False)
        base = _zvar(reg, 1) * _zvar(reg, 2)
        gens = [
            _zvar(reg, i) * _zvar(reg, j) - base
            for i, j in itertools.combinations(range(1, n + 1), 2)
            if (i, j) != (1, 2)
        ]
        return Ideal(reg, gens)
    raise ValueError(f"unknown presentation {presentation!r}")


def difference_generators_full(n: int) -> List[Polynomial]:
    """All pairwise differences z_i*z_j - z_k*z_l (the redundant system)."""
    reg = lines_registry(n, with_y=False)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    out = []
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        out.append(_zvar(reg, i) * _zvar(reg, j) - _zvar(reg, k) * _zvar(reg, l))
    return out


# ---------------------------------------------------------------------------
# the distinguished relation family of the G_FORM presentation


@dataclass(frozen=True)
class RelationFamily:
    """Syzygy vectors z_k(g_ij - g_il) - z_i(g_kj - g_kl) of the quadric
    presentation, indexed by quadruples of distinct indices, together
    with the rank of their linear coefficient vectors."""

    n: int
    pairs: tuple
    quadruples: tuple
    vectors: tuple
    rank: int
    expected_rank: int


def relations(n: int) -> RelationFamily:
    if n < 4:
        raise ValueError("relation family needs n >= 4")
    reg = lines_registry(n)
    pairs = tuple(itertools.combinations(range(1, n + 1), 2))
    pair_pos = {p: k for k, p in enumerate(pairs)}

    def ppos(i: int, j: int) -> int:
        return pair_pos[(i, j) if i < j else (j, i)]

    quadruples = []
    for i, k in itertools.combinations(range(1, n + 1), 2):
        rest = [m for m in range(1, n + 1) if m not in (i, k)]
        for j, l in itertools.combinations(rest, 2):
            quadruples.append((i, k, j, l))

    vectors = []
    elim = SparseEliminator()
    nvars = reg.nvars
    for (i, k, j, l) in quadruples:
        vec = [Polynomial.zero(reg) for _ in pairs]
        zi, zk = _zvar(reg, i), _zvar(reg, k)
        for pos, coef in (
            (ppos(i, j), zk),
            (ppos(i, l), -zk),
            (ppos(k, j), -zi),
            (ppos(k, l), zi),
        ):
            vec[pos] = vec[pos] + coef
        vectors.append(tuple(vec))
        row: Dict[int, Fraction] = {}
        for pos, poly in enumerate(vec):
            for mono, c in poly.terms.items():
                (var, e), = mono
                assert e == 1
                row[pos * nvars + var] = row.get(pos * nvars + var, Fraction(0)) + c
        elim.add(row)

    # exactness: each vector annihilates the generators
    gens = [line_generator(reg, i, j) for i, j in pairs]
    for vec in vectors:
        acc = Polynomial.zero(reg)
        for v, g in zip(vec, gens):
            acc = acc + v * g
        if acc:
            raise AssertionError("relation family vector is not a syzygy")

    expected = (n * n - 1) * (n - 3) // 3
    return RelationFamily(
        n=n,
        pairs=pairs,
        quadruples=tuple(quadruples),
        vectors=tuple(vectors),
        rank=elim.rank,
        expected_rank=expected,
    )


# ---------------------------------------------------------------------------
# monomial curves


@lru_cache(maxsize=None)
def _monomial_registry(n: int) -> VarRegistry:
    return build_registry(nz=n)


def elliptic_monomial_table(n: int) -> List[Polynomial]:
    """Equations of the monomial curve with semigroup <n+1, ..., 2n>,
    parametrized by z_m = t^(n+m).

    For 2 <= i <= j the product z_i*z_j rewrites as z_1*z_{i+j-1} when
    i+j <= n+1, as z_2*z_n when i+j = n+2, and as z_1^2*z_{i+j-n-2} when
    i+j >= n+3; the tautological case (i, j) = (2, n) is dropped.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    reg = _monomial_registry(n)
    out = []
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            if (i, j) == (2, n):
                continue
            lhs = _zvar(reg, i) * _zvar(reg, j)
            if i + j <= n + 1:
                rhs = _zvar(reg, 1) * _zvar(reg, i + j - 1)
            elif i + j == n + 2:
                rhs = _zvar(reg, 2) * _zvar(reg, n)
            else:
                rhs = _zvar(reg, 1) ** 2 * _zvar(reg, i + j - n - 2)
            out.append(lhs - rhs)
    return out


def rational_monomial_table(n: int) -> List[Polynomial]:
    """Analogous rewriting system for the semigroup <n, ..., 2n-1>
    (z_m = t^(n+m-1)): z_i*z_j becomes z_1*z_{i+j-1} for i+j <= n+1,
    z_1^3 for i+j = n+2 and z_1^2*z_{i+j-n-1} for i+j >= n+3."""
    if n < 3:
        raise ValueError("need n >= 3")
    reg = _monomial_registry(n)
    out = []
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            lhs = _zvar(reg, i) * _zvar(reg, j)
            if i + j <= n + 1:
                rhs = _zvar(reg, 1) * _zvar(reg, i + j - 1)
            elif i + j == n + 2:
                rhs = _zvar(reg, 1) ** 3
            else:
                rhs = _zvar(reg, 1) ** 2 * _zvar(reg, i + j - n - 1)
            out.append(lhs - rhs)
    return out


def parametrization_kernel(
    n: int, exponents: Sequence[int], budget: Budget = DEFAULT_BUDGET
) -> Ideal:
    """Kernel of z_m -> t^(e_m): eliminate t from (z_m - t^(e_m))."""
    reg = build_registry(nz=n, t=True)
    tvar = Polynomial.var(reg, "t")
    gens = [
        Polynomial.var(reg, f"z{m}") - tvar ** exponents[m - 1]
        for m in range(1, n + 1)
    ]
    return eliminate(Ideal(reg, gens), ["t"], budget)


def monomial_ideal(kind: str, n: int, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """Ideal of a monomial curve.

    The elliptic one is given by its explicit quadratic/cubic rewriting
    table; the rational one is defined as the elimination kernel of its
    parametrization (the table analogue is a separate cross-check).
    """
    if kind == MONOMIAL_ELLIPTIC:
        reg = _monomial_registry(n)
        return Ideal(reg, elliptic_monomial_table(n))
    if kind == MONOMIAL_RATIONAL:
        return parametrization_kernel(n, [n + m - 1 for m in range(1, n + 1)], budget)
    raise ValueError(f"unsupported monomial curve kind {kind!r}")


# ---------------------------------------------------------------------------
# lines through roots of unity


@dataclass(frozen=True)
class NonrationalLinesReport:
    """Outcome of checking the root-of-unity lines against the quadratic
    rewriting system z_i*z_j = z_1*z_{i+j-1} / z_2*z_n / z_1*z_{i+j-n-2}.

    ``exponent_residues`` records, per generator, the two exponent sums
    modulo n+1 whose agreement makes the generator vanish on every line
    (e^(n+1) = 1).  ``uniform_wrap_ok`` reports the alternative reading
    that would patch the i+j = n+2 case with z_1*z_n instead of z_2*z_n;
    it fails the residue test, which is why the displayed reading is the
    one taken."""

    n: int
    generator_count: int
    displayed_ok: bool
    specialization_ok: bool
    exponent_residues: tuple
    uniform_wrap_ok: bool


def _nonrational_system(n: int, wrap_with_z1: bool = False) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Exponent-level system: pairs (lhs indices, rhs indices)."""
    out = []
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            if (i, j) == (2, n) and not wrap_with_z1:
                continue
            if i + j <= n + 1:
                rhs = (1, i + j - 1)
            elif i + j == n + 2:
                rhs = (1, n) if wrap_with_z1 else (2, n)
            else:
                rhs = (1, i + j - n - 2)
            if (i, j) == rhs:
                continue
            out.append(((i, j), rhs))
    return out


def nonrational_lines_check(n: int) -> NonrationalLinesReport:
    """Verify that the lines z_m = e^m * t with e^(n+1) = 1 satisfy the
    quadratic system, working in the quotient ring mod s^(n+1) - 1
    (s standing for the root of unity; no field extension needed)."""
    if n < 3:
        raise ValueError("need n >= 3")
    system = _nonrational_system(n)
    reg = build_registry(t=True, s=True)
    svar = Polynomial.var(reg, "s")
    tvar = Polynomial.var(reg, "t")
    cyclo = buchberger(Ideal(reg, [svar ** (n + 1) - 1]))

    residues = []
    displayed_ok = True
    for lhs, rhs in system:
        le, re_ = sum(lhs), sum(rhs)
        residues.append((le % (n + 1), re_ % (n + 1)))
        expr = svar ** le * tvar ** len(lhs) - svar ** re_ * tvar ** len(rhs)
        if not normal_form(expr, cyclo).is_zero():
            displayed_ok = False

    # e = 1 specialization: all z_m = t, the line through (1, ..., 1)
    specialization_ok = all(
        (tvar ** len(lhs) - tvar ** len(rhs)).is_zero() for lhs, rhs in system
    )

    uniform_ok = True
    for lhs, rhs in _nonrational_system(n, wrap_with_z1=True):
        expr = svar ** sum(lhs) * tvar ** len(lhs) - svar ** sum(rhs) * tvar ** len(rhs)
        if not normal_form(expr, cyclo).is_zero():
            uniform_ok = False
    return NonrationalLinesReport(
        n=n,
        generator_count=len(system),
        displayed_ok=displayed_ok,
        specialization_ok=specialization_ok,
        exponent_residues=tuple(residues),
        uniform_wrap_ok=uniform_ok,
    )


# ---------------------------------------------------------------------------
# numerical invariants


@dataclass(frozen=True)
class SemigroupData:
    generators: tuple
    gaps: tuple
    delta: int
    multiplicity: int


def semigroup_invariants(generators: Iterable[int]) -> SemigroupData:
    """Gap count (= delta of the monomial curve) of a numerical
    semigroup; gaps are searched up to the square of the largest
    generator, far beyond the conductor."""
    gens = tuple(sorted(set(int(g) for g in generators)))
    if not gens or gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    if math.gcd(*gens) != 1:
        raise ValueError("generators with gcd > 1 leave infinitely many gaps")
    bound = max(gens) ** 2
    reachable = bytearray(bound + 1)
    reachable[0] = 1
    for v in range(1, bound + 1):
        for g in gens:
            if g > v:
                break
            if reachable[v - g]:
                reachable[v] = 1
                break
    gaps = tuple(v for v in range(1, bound + 1) if not reachable[v])
    return SemigroupData(
        generators=gens,
        gaps=gaps,
        delta=len(gaps),
        multiplicity=gens[0],
    )


@dataclass(frozen=True)
class NumericInvariants:
    delta: int
    branches: int
    mu: int
    genus: int


def numeric_invariants(delta: int, branches: int) -> NumericInvariants:
    """Milnor number and genus from delta and the branch count r:
    mu = 2*delta - r + 1 and genus = delta - r + 1."""
    return NumericInvariants(
        delta=delta,
        branches=branches,
        mu=2 * delta - branches + 1,
        genus=delta - branches + 1,
    )


def elliptic_t1_formula(n: int, branches: int) -> int:
    """Dimension of the first-order deformation space of an elliptic
    partition curve of multiplicity n+1 with r branches."""
    return n * (n + 1) // 2 - branches + 1


def t2_formula(n: int) -> int:
    """Dimension of the obstruction space for the n+1 generic lines."""
    return n * (n + 1) * (n - 4) // 6


def minimal_generator_formula(n: int) -> int:
    """Minimal number of generators of the ideal of n+1 generic lines
    in n-space (the y-free presentation)."""
    return (n + 1) * (n - 2) // 2


def linear_relation_formula(n: int) -> int:
    """Number of linearly independent non-Koszul relations of the
    quadric presentation."""
    return (n * n - 1) * (n - 3) // 3
