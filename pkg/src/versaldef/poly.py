"""Exact sparse multivariate polynomial arithmetic over the rationals.

Every coefficient is a :class:`fractions.Fraction`; nothing in this package
touches floating point.  A polynomial lives over a :class:`VarRegistry`,
which fixes the ordered list of variables together with their quasi
homogeneous weights.  Polynomials are immutable after construction and two
polynomials compare equal exactly when their registries are structurally
equal and their term maps coincide.

The text grammar accepted by :func:`parse` (whitespace is insignificant):

    variables   z<k>  (k >= 1),  y,  t,  s,  a_<i>_<j>,  a_<k>
    numbers     integers and fractions  p/q
    operators   +  -  *  ^   and parentheses

In a registry whose pair variables are antisymmetric, an occurrence of
``a_<j>_<i>`` with j > i is accepted and rewritten as ``-a_<i>_<j>`` at
parse time, so that only one variable per unordered pair is ever stored.
Registries with independent ordered-pair variables store ``a_i_j`` and
``a_j_i`` separately and perform no rewriting.

Monomials are kept sparse: a monomial is a tuple of (variable position,
exponent) pairs, sorted by position, with no zero exponents stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

__all__ = [
    "Var",
    "VarRegistry",
    "Polynomial",
    "Mono",
    "NONHOMOGENEOUS",
    "ParseError",
    "build_registry",
    "parse",
    "substitute",
    "weighted_degree",
    "mono_mul",
    "mono_div",
    "mono_lcm",
    "mono_divides",
    "mono_degree",
    "mono_weighted_degree",
]

# A monomial: ((var_position, exponent), ...), sorted, exponents > 0.
Mono = tuple
MONO_ONE: Mono = ()

Scalar = Union[int, Fraction]


class _NonHomogeneous:
    """Sentinel returned by weighted_degree for inhomogeneous polynomials."""

    _instance: Optional["_NonHomogeneous"] = None

    def __new__(cls) -> "_NonHomogeneous":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NONHOMOGENEOUS"


NONHOMOGENEOUS = _NonHomogeneous()


class ParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# variables and registries

KIND_Z = "z"
KIND_Y = "y"
KIND_A = "a"
KIND_PARAM = "param"


@dataclass(frozen=True)
class Var:
    """A single variable: display name, kind, index data and weight."""

    name: str
    kind: str
    index: tuple
    weight: int


@dataclass(frozen=True)
class VarRegistry:
    """Ordered variable list shared by all polynomials of one ring.

    ``antisymmetric_pairs`` controls how two-index ``a`` variables behave:
    if true (the default) only ``a_i_j`` with i < j exists and ``a_j_i``
    parses to its negative; if false both orders are independent variables.
    """

    vars: tuple
    antisymmetric_pairs: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_pos", {v.name: k for k, v in enumerate(self.vars)}
        )
        object.__setattr__(self, "_weights", tuple(v.weight for v in self.vars))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def weights(self) -> tuple:
        return self._weights

    @property
    def names(self) -> tuple:
        return tuple(v.name for v in self.vars)

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in registry") from None

    def __contains__(self, name: str) -> bool:
        return name in self._pos

    def resolve(self, name: str) -> "tuple[int, int]":
        """Map a variable name to (position, sign).

        The sign is -1 exactly for ``a_j_i`` with j > i in an antisymmetric
        registry; in every other case it is +1.
        """
        if name in self._pos:
            return self._pos[name], 1
        if self.antisymmetric_pairs:
            m = re.fullmatch(r"a_(\d+)_(\d+)", name)
            if m:
                i, j = int(m.group(1)), int(m.group(2))
                if i == j:
                    raise KeyError(f"pair variable {name!r} has equal indices")
                flipped = f"a_{j}_{i}"
                if i > j and flipped in self._pos:
                    return self._pos[flipped], -1
        raise KeyError(f"unknown variable {name!r} in registry")

    def restrict(self, keep: Iterable[str]) -> "VarRegistry":
        """Sub-registry with only the named variables, original order kept."""
        keep_set = set(keep)
        missing = keep_set - set(self.names)
        if missing:
            raise KeyError(f"variables not in registry: {sorted(missing)}")
        return VarRegistry(
            tuple(v for v in self.vars if v.name in keep_set),
            self.antisymmetric_pairs,
        )


def build_registry(
    nz: int = 0,
    y: bool = False,
    t: bool = False,
    s: bool = False,
    npairs: int = 0,
    ordered_pairs: bool = False,
    params: Sequence[int] = (),
) -> VarRegistry:
    """Assemble a registry in the canonical order.

    Order: z1..z_nz, then y, t, s (whichever are present), then the pair
    variables a_i_j sorted lexicographically, then single-index parameters
    a_k in the order given.  Weights: z, t, s, a-variables and parameters
    get weight 1; y gets weight 2.

    ``npairs`` is the number n of pair indices; antisymmetric registries
    get the a_i_j with 1 <= i < j <= n, ordered registries all ordered
    pairs i != j.
    """
    vs = [Var(f"z{i}", KIND_Z, (i,), 1) for i in range(1, nz + 1)]
    if y:
        vs.append(Var("y", KIND_Y, (), 2))
    if t:
        vs.append(Var("t", KIND_PARAM, (), 1))
    if s:
        vs.append(Var("s", KIND_PARAM, (), 1))
    if ordered_pairs:
        for i in range(1, npairs + 1):
            for j in range(1, npairs + 1):
                if i != j:
                    vs.append(Var(f"a_{i}_{j}", KIND_A, (i, j), 1))
    else:
        for i in range(1, npairs + 1):
            for j in range(i + 1, npairs + 1):
                vs.append(Var(f"a_{i}_{j}", KIND_A, (i, j), 1))
    for k in params:
        vs.append(Var(f"a_{k}", KIND_PARAM, (k,), 1))
    return VarRegistry(tuple(vs), antisymmetric_pairs=not ordered_pairs)


# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    ia = ib = 0
    la, lb = len(a), len(b)
    while ia < la and ib < lb:
        va, ea = a[ia]
        vb, eb = b[ib]
        if va == vb:
            out.append((va, ea + eb))
            ia += 1
            ib += 1
        elif va < vb:
            out.append(a[ia])
            ia += 1
        else:
            out.append(b[ib])
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return tuple(out)


def mono_divides(a: Mono, b: Mono) -> bool:
    """True iff monomial a divides b."""
    ib = 0
    lb = len(b)
    for va, ea in a:
        while ib < lb and b[ib][0] < va:
            ib += 1
        if ib == lb or b[ib][0] != va or b[ib][1] < ea:
            return False
        ib += 1
    return True


def mono_div(b: Mono, a: Mono) -> Mono:
    """b / a, assuming divisibility."""
    da = dict(a)
    out = []
    for vb, eb in b:
        e = eb - da.get(vb, 0)
        if e < 0:
            raise ArithmeticError("monomial division is not exact")
        if e:
            out.append((vb, e))
    if len(da) > len(b):
        raise ArithmeticError("monomial division is not exact")
    return tuple(out)


def mono_lcm(a: Mono, b: Mono) -> Mono:
    da = dict(a)
    for vb, eb in b:
        if da.get(vb, 0) < eb:
            da[vb] = eb
    return tuple(sorted(da.items()))


def mono_degree(a: Mono) -> int:
    return sum(e for _, e in a)


def mono_weighted_degree(a: Mono, weights: Sequence[int]) -> int:
    return sum(weights[v] * e for v, e in a)


def mono_coprime(a: Mono, b: Mono) -> bool:
    sa = {v for v, _ in a}
    return not any(v in sa for v, _ in b)


# ---------------------------------------------------------------------------
# polynomials


def _clean(terms: dict) -> dict:
    return {m: c for m, c in terms.items() if c}


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("reg", "terms")

    def __init__(self, reg: VarRegistry, terms: Optional[Mapping] = None):
        object.__setattr__(self, "reg", reg)
        cleaned = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    cleaned[m] = c
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *_):  # pragma: no cover - guard only
        raise AttributeError("Polynomial is immutable")

    # construction helpers ---------------------------------------------------

    @staticmethod
    def zero(reg: VarRegistry) -> "Polynomial":
        return Polynomial(reg)

    @staticmethod
    def const(reg: VarRegistry, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(reg, {MONO_ONE: c} if c else {})

    @staticmethod
    def var(reg: VarRegistry, name: str) -> "Polynomial":
        pos, sign = reg.resolve(name)
        return Polynomial(reg, {((pos, 1),): Fraction(sign)})

    @staticmethod
    def _raw(reg: VarRegistry, terms: dict) -> "Polynomial":
        """Trusted constructor: terms must be clean Fractions already."""
        p = object.__new__(Polynomial)
        object.__setattr__(p, "reg", reg)
        object.__setattr__(p, "terms", terms)
        return p

    # queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, mono: Mono) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(MONO_ONE, Fraction(0))

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("total degree of the zero polynomial is undefined")
        return max(mono_degree(m) for m in self.terms)

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.reg != other.reg:
            raise ValueError("polynomials live over different registries")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.reg, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m)
            if acc is None:
                out[m] = c
            else:
                acc = acc + c
                if acc:
                    out[m] = acc
                else:
                    del out[m]
        return Polynomial._raw(self.reg, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.reg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.reg, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.reg)
            return Polynomial._raw(
                self.reg, {m: k * c for m, k in self.terms.items()}
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict = {}
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        for ms, cs in small.items():
            for mb, cb in big.items():
                m = mono_mul(ms, mb)
                acc = out.get(m)
                if acc is None:
                    out[m] = cs * cb
                else:
                    acc = acc + cs * cb
                    if acc:
                        out[m] = acc
                    else:
                        del out[m]
        return Polynomial._raw(self.reg, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(self.reg, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self.terms == Polynomial.const(self.reg, other).terms
            return NotImplemented
        return self.reg == other.reg and self.terms == other.terms

    def __hash__(self):
        return hash((self.reg.names, tuple(sorted(self.terms.items()))))

    # printing ---------------------------------------------------------------

    def __str__(self) -> str:
        return to_str(self)

    def __repr__(self) -> str:
        return f"Polynomial({to_str(self)})"


# ---------------------------------------------------------------------------
# weighted degree


def weighted_degree(p: Polynomial):
    """Common weighted degree of all terms, or NONHOMOGENEOUS.

    Raises ValueError on the zero polynomial, whose degree is undefined.
    """
    if p.is_zero():
        raise ValueError("weighted degree of the zero polynomial is undefined")
    w = p.reg.weights
    it = iter(p.terms)
    d = mono_weighted_degree(next(it), w)
    for m in it:
        if mono_weighted_degree(m, w) != d:
            return NONHOMOGENEOUS
    return d


# ---------------------------------------------------------------------------
# substitution


def substitute(
    p: Polynomial,
    assignment: Mapping[str, Polynomial],
    target: Optional[VarRegistry] = None,
) -> Polynomial:
    """Simultaneous substitution of polynomials for variables.

    ``assignment`` maps variable names of ``p``'s registry to polynomials
    over a common target registry.  Variables of ``p`` that are not
    assigned are mapped to the same-named variable of the target registry,
    which must therefore contain them.  This is a ring homomorphism; the
    result is fully expanded.
    """
    if assignment:
        regs = {id(q.reg): q.reg for q in assignment.values()}
        if len(regs) > 1:
            vals = list(regs.values())
            if any(r != vals[0] for r in vals[1:]):
                raise ValueError("assignment values live over different registries")
        inferred = next(iter(regs.values()))
        if target is None:
            target = inferred
        elif target != inferred:
            raise ValueError("assignment values do not live over the target registry")
    if target is None:
        target = p.reg

    values: dict = {}
    for name, q in assignment.items():
        pos, sign = p.reg.resolve(name)
        if pos in values:
            raise ValueError(f"variable {name!r} assigned twice")
        values[pos] = q if sign == 1 else -q

    images: dict = {}

    def image(pos: int) -> Polynomial:
        got = images.get(pos)
        if got is None:
            if pos in values:
                got = values[pos]
            else:
                got = Polynomial.var(target, p.reg.vars[pos].name)
            images[pos] = got
        return got

    acc = Polynomial.zero(target)
    power_cache: dict = {}
    for m, c in p.terms.items():
        term = Polynomial.const(target, c)
        for v, e in m:
            key = (v, e)
            pw = power_cache.get(key)
            if pw is None:
                pw = image(v) ** e
                power_cache[key] = pw
            term = term * pw
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# canonical printing (graded reverse lexicographic on the registry order)


def _grevlex_key(reg: VarRegistry):
    nv = reg.nvars

    def key(m: Mono):
        dense = [0] * nv
        for v, e in m:
            dense[v] = e
        return (mono_degree(m), tuple(-dense[i] for i in range(nv - 1, -1, -1)))

    return key


def to_str(p: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    """Canonical string form; ``names`` substitutes display names
    positionally (for exports whose identifier syntax differs)."""
    if p.is_zero():
        return "0"
    key = _grevlex_key(p.reg)
    if names is None:
        names = p.reg.names
    else:
        names = tuple(names)
        if len(names) != p.reg.nvars:
            raise ValueError("need one display name per variable")
    parts = []
    for m in sorted(p.terms, key=key, reverse=True):
        c = p.terms[m]
        factors = []
        for v, e in m:
            factors.append(names[v] if e == 1 else f"{names[v]}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group("num") is not None:
            out.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, reg: VarRegistry):
        self.tokens = _tokenize(text)
        self.reg = reg
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        self.advance()

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.advance()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                nxt = self.term()
                acc = acc + nxt if val == "+" else acc - nxt
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            nkind, nval, npos = self.peek()
            if nkind != "num" or "/" in nval:
                raise ParseError("exponent must be a nonnegative integer", npos)
            self.advance()
            return base ** int(nval)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.advance()
        if kind == "num":
            if "/" in val:
                a, b = val.split("/")
                if int(b) == 0:
                    raise ParseError("zero denominator", pos)
                return Polynomial.const(self.reg, Fraction(int(a), int(b)))
            return Polynomial.const(self.reg, int(val))
        if kind == "name":
            try:
                p, sign = self.reg.resolve(val)
            except KeyError as exc:
                raise ParseError(str(exc), pos) from None
            return Polynomial._raw(self.reg, {((p, 1),): Fraction(sign)})
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)


def parse(text: str, reg: VarRegistry) -> Polynomial:
    """Parse polynomial text over the given registry.

    Malformed input raises :class:`ParseError` with the offending position;
    names that do not resolve in the registry are reported the same way.
    """
    return _Parser(text, reg).parse()
