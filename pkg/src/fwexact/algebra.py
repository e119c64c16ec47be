"""Exact weak-field Pauli-operator algebra.

Operators are finite sums of canonical monomials ``pi^(2n) * tail`` where the
tail is one of eleven fixed structures built from the kinetic momentum pi and
static electromagnetic fields E, B.  Coefficients are exact rationals times a
power of i and integer powers of the symbols hbar, q, 1/m, 1/c and
kappa = g/2 - 1.  Every term of field degree two or higher is dropped: the
truncation is structural, so all operations stay inside the eleven-tail basis.

Reduction rules used during multiplication:

    (sigma.u)(sigma.v) = u.v + i sigma.(u x v)
    [pi_i, pi_j]       = (i q hbar / c) eps_ijk B_k
    [pi_i, E_j] = [pi_i, B_j] = 0          (homogeneous mode)
    pi.E = E.pi - i hbar div(E)            (inhomogeneous mode, curl E = 0)

The inhomogeneous dialect keeps B uniform and tracks E gradients only through
div(E); reductions that would need a generic grad(E) raise
UnsupportedReductionError.  That dialect is only meant for low orders (the
pipeline caps it at order 1/c^2).

All values are immutable and all operations are pure functions, safe for
concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Mode",
    "Tail",
    "Coefficient",
    "Monomial",
    "OperatorExpr",
    "DimensionVector",
    "AlgebraError",
    "ModeMismatchError",
    "UnsupportedReductionError",
    "coeff",
    "generator",
    "normalize",
    "add",
    "mul",
    "mul_commuting_model",
    "adjoint",
    "hermitian_split",
    "commute_with_V",
    "commutator",
    "anticommutator",
    "check_dimension",
    "dimension_of",
    "DIM_NONE",
    "DIM_ENERGY",
    "DIM_VELOCITY",
]


class AlgebraError(ValueError):
    pass


class ModeMismatchError(AlgebraError):
    pass


class UnsupportedReductionError(AlgebraError):
    """A reduction left the eleven-tail basis (inhomogeneous dialect only)."""


class Mode(str, Enum):
    HOMOGENEOUS = "homogeneous"
    INHOMOGENEOUS = "inhomogeneous"


class Tail(IntEnum):
    """Canonical tail structures, listed in their global ordering."""

    UNIT = 0    # scalar 1
    EP = 1      # E.pi
    BP = 2      # B.pi
    DIVE = 3    # div(E), inhomogeneous dialect only
    SP = 4      # sigma.pi
    SE = 5      # sigma.E
    SB = 6      # sigma.B
    SEXP = 7    # sigma.(E x pi)
    SBXP = 8    # sigma.(B x pi)
    EP_SP = 9   # (E.pi)(sigma.pi)
    BP_SP = 10  # (B.pi)(sigma.pi)


FIELD_DEGREE = {
    Tail.UNIT: 0,
    Tail.SP: 0,
    Tail.EP: 1,
    Tail.BP: 1,
    Tail.DIVE: 1,
    Tail.SE: 1,
    Tail.SB: 1,
    Tail.SEXP: 1,
    Tail.SBXP: 1,
    Tail.EP_SP: 1,
    Tail.BP_SP: 1,
}

_E_TAILS = {Tail.EP, Tail.DIVE, Tail.SE, Tail.SEXP, Tail.EP_SP}

# Symbol exponent tuples: (hbar, q, inv_m, inv_c, kappa).
Sym = tuple


def _sym(hbar=0, q=0, inv_m=0, inv_c=0, kappa=0):
    return (hbar, q, inv_m, inv_c, kappa)


_SYM_ONE = _sym()
_SYM_QHC = _sym(hbar=1, q=1, inv_c=1)   # the q hbar / c of a pi-pi commutator
_SYM_QH = _sym(hbar=1, q=1)
_SYM_HBAR = _sym(hbar=1)


def _sym_add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4])


@dataclass(frozen=True)
class Coefficient:
    """rational * i^i_power * hbar^a q^b m^-c c^-d kappa^e (i_power in {0, 1})."""

    rational: Fraction
    i_power: int = 0
    hbar: int = 0
    q: int = 0
    inv_m: int = 0
    inv_c: int = 0
    kappa: int = 0

    @property
    def sym(self):
        return (self.hbar, self.q, self.inv_m, self.inv_c, self.kappa)

    def __str__(self):
        from .render import coefficient_text

        return coefficient_text(self)


def coeff(rational, i=0, hbar=0, q=0, inv_m=0, inv_c=0, kappa=0) -> Coefficient:
    rational = Fraction(rational)
    i %= 4
    if i >= 2:
        i -= 2
        rational = -rational
    return Coefficient(rational, i, hbar, q, inv_m, inv_c, kappa)


@dataclass(frozen=True)
class Monomial:
    p2_power: int
    tail: Tail

    def sort_key(self):
        return (int(self.tail), self.p2_power)

    @property
    def field_degree(self):
        return FIELD_DEGREE[self.tail]


# Internal term key: (tail_value, p2_power, sym_tuple, i_parity) -> Fraction.


def _fold_i(ip, rational):
    ip %= 4
    if ip >= 2:
        return ip - 2, -rational
    return ip, rational


_UNSUPPORTED = "unsupported"


def _tail_tables():
    # entry: (rational, d_ipower, d_sym, d_p2, tail)
    one = Fraction(1)
    h = {
        (Tail.SP, Tail.SP): ((one, 0, _SYM_ONE, 1, Tail.UNIT),
                             (-one, 0, _SYM_QHC, 0, Tail.SB)),
        (Tail.SP, Tail.EP): ((one, 0, _SYM_ONE, 0, Tail.EP_SP),),
        (Tail.EP, Tail.SP): ((one, 0, _SYM_ONE, 0, Tail.EP_SP),),
        (Tail.SP, Tail.BP): ((one, 0, _SYM_ONE, 0, Tail.BP_SP),),
        (Tail.BP, Tail.SP): ((one, 0, _SYM_ONE, 0, Tail.BP_SP),),
        (Tail.SP, Tail.SE): ((one, 0, _SYM_ONE, 0, Tail.EP),
                             (-one, 1, _SYM_ONE, 0, Tail.SEXP)),
        (Tail.SE, Tail.SP): ((one, 0, _SYM_ONE, 0, Tail.EP),
                             (one, 1, _SYM_ONE, 0, Tail.SEXP)),
        (Tail.SP, Tail.SB): ((one, 0, _SYM_ONE, 0, Tail.BP),
                             (-one, 1, _SYM_ONE, 0, Tail.SBXP)),
        (Tail.SB, Tail.SP): ((one, 0, _SYM_ONE, 0, Tail.BP),
                             (one, 1, _SYM_ONE, 0, Tail.SBXP)),
        (Tail.SP, Tail.SEXP): ((one, 1, _SYM_ONE, 1, Tail.SE),
                               (-one, 1, _SYM_ONE, 0, Tail.EP_SP)),
        (Tail.SEXP, Tail.SP): ((one, 1, _SYM_ONE, 0, Tail.EP_SP),
                               (-one, 1, _SYM_ONE, 1, Tail.SE)),
        (Tail.SP, Tail.SBXP): ((one, 1, _SYM_ONE, 1, Tail.SB),
                               (-one, 1, _SYM_ONE, 0, Tail.BP_SP)),
        (Tail.SBXP, Tail.SP): ((one, 1, _SYM_ONE, 0, Tail.BP_SP),
                               (-one, 1, _SYM_ONE, 1, Tail.SB)),
        (Tail.SP, Tail.EP_SP): ((one, 0, _SYM_ONE, 1, Tail.EP),),
        (Tail.EP_SP, Tail.SP): ((one, 0, _SYM_ONE, 1, Tail.EP),),
        (Tail.SP, Tail.BP_SP): ((one, 0, _SYM_ONE, 1, Tail.BP),),
        (Tail.BP_SP, Tail.SP): ((one, 0, _SYM_ONE, 1, Tail.BP),),
        (Tail.SP, Tail.DIVE): (_UNSUPPORTED,),
        (Tail.DIVE, Tail.SP): (_UNSUPPORTED,),
    }
    inh = dict(h)
    # pi.E picks up the divergence; grad(E) reductions are out of scope.
    inh[(Tail.SP, Tail.SE)] = ((one, 0, _SYM_ONE, 0, Tail.EP),
                               (-one, 1, _SYM_HBAR, 0, Tail.DIVE),
                               (-one, 1, _SYM_ONE, 0, Tail.SEXP))
    for pair in ((Tail.SP, Tail.EP), (Tail.SP, Tail.SEXP),
                 (Tail.SP, Tail.EP_SP), (Tail.EP_SP, Tail.SP)):
        inh[pair] = (_UNSUPPORTED,)
    return h, inh


_TAIL_MUL_HOM, _TAIL_MUL_INH = _tail_tables()

# Commuting model: same Pauli reductions with [pi_i, pi_j] = 0.  Used by the
# numeric validator to isolate the tracked magnetic correction terms.
_TAIL_MUL_COMMUTING = dict(_TAIL_MUL_HOM)
_TAIL_MUL_COMMUTING[(Tail.SP, Tail.SP)] = ((Fraction(1), 0, _SYM_ONE, 1, Tail.UNIT),)


class OperatorExpr:
    """Immutable canonical operator; the empty expression is the unique zero."""

    __slots__ = ("mode", "_terms")

    def __init__(self, mode: Mode, terms=None):
        object.__setattr__(self, "mode", mode)
        clean = {}
        if terms:
            for key in sorted(terms):
                r = terms[key]
                if r:
                    clean[key] = r
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("OperatorExpr is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(mode: Mode) -> "OperatorExpr":
        return OperatorExpr(mode)

    @staticmethod
    def from_terms(mode: Mode, items: Iterable[tuple[Monomial, Coefficient]]) -> "OperatorExpr":
        acc = {}
        for mono, c in items:
            if mono.tail == Tail.DIVE and mode is Mode.HOMOGENEOUS:
                raise ModeMismatchError("div(E) requires inhomogeneous mode")
            ip, r = _fold_i(c.i_power, c.rational)
            key = (int(mono.tail), mono.p2_power, c.sym, ip)
            acc[key] = acc.get(key, Fraction(0)) + r
        return OperatorExpr(mode, acc)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> Iterator[tuple[Monomial, Coefficient]]:
        """Canonically ordered (monomial, coefficient) pairs.

        A monomial may repeat when coefficients with distinct symbol content
        (or real/imaginary parts) coexist on it.
        """
        for (t, p2, sym, ip), r in self._terms.items():
            yield Monomial(p2, Tail(t)), Coefficient(r, ip, *sym)

    def field_degree(self) -> int:
        return max((FIELD_DEGREE[Tail(t)] for (t, _, _, _) in self._terms), default=0)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return self.mode is other.mode and self._terms == other._terms

    def __hash__(self):
        return hash((self.mode, tuple(self._terms.items())))

    def __repr__(self):
        from .render import expr_text

        body = expr_text(self)
        return f"<OperatorExpr {self.mode.value}: {body}>"

    # -- arithmetic sugar ---------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, other.scaled(-1))

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            return mul(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def scaled(self, factor: Union[int, Fraction, Coefficient]) -> "OperatorExpr":
        if not isinstance(factor, Coefficient):
            factor = coeff(Fraction(factor))
        if factor.rational == 0:
            return OperatorExpr(self.mode)
        out = {}
        for (t, p2, sym, ip), r in self._terms.items():
            nip, nr = _fold_i(ip + factor.i_power, r * factor.rational)
            key = (t, p2, _sym_add(sym, factor.sym), nip)
            out[key] = out.get(key, Fraction(0)) + nr
        return OperatorExpr(self.mode, out)

    def kappa_part(self, degree: int) -> "OperatorExpr":
        """Terms whose kappa exponent equals ``degree``."""
        out = {k: r for k, r in self._terms.items() if k[2][4] == degree}
        return OperatorExpr(self.mode, out)


def generator(tail: Tail, mode: Mode, p2_power: int = 0) -> OperatorExpr:
    return OperatorExpr.from_terms(mode, [(Monomial(p2_power, tail), coeff(1))])


def add(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    if a.mode is not b.mode:
        raise ModeMismatchError(f"cannot add {a.mode.value} and {b.mode.value} operators")
    out = dict(a._terms)
    for key, r in b._terms.items():
        out[key] = out.get(key, Fraction(0)) + r
    return OperatorExpr(a.mode, out)


def _mul_impl(a: OperatorExpr, b: OperatorExpr, table_hom) -> OperatorExpr:
    if a.mode is not b.mode:
        raise ModeMismatchError(f"cannot multiply {a.mode.value} and {b.mode.value} operators")
    mode = a.mode
    table = table_hom if mode is Mode.HOMOGENEOUS else _TAIL_MUL_INH
    track_commutators = table is not _TAIL_MUL_COMMUTING
    out = {}

    def emit(base_r, base_ip, base_sym, base_p2, t1, t2):
        if t1 == Tail.UNIT or t2 == Tail.UNIT:
            entries = ((Fraction(1), 0, _SYM_ONE, 0, t2 if t1 == Tail.UNIT else t1),)
        else:
            entries = table[(t1, t2)]
        for entry in entries:
            if entry is _UNSUPPORTED:
                raise UnsupportedReductionError(
                    f"product {t1.name} * {t2.name} is outside the supported "
                    f"{mode.value} reduction rules"
                )
            er, eip, esym, ep2, etail = entry
            ip, r = _fold_i(base_ip + eip, base_r * er)
            key = (int(etail), base_p2 + ep2, _sym_add(base_sym, esym), ip)
            out[key] = out.get(key, Fraction(0)) + r

    for (t1v, p1, s1, i1), r1 in a._terms.items():
        t1 = Tail(t1v)
        d1 = FIELD_DEGREE[t1]
        for (t2v, p2, s2, i2), r2 in b._terms.items():
            t2 = Tail(t2v)
            if d1 + FIELD_DEGREE[t2] >= 2:
                continue
            if mode is Mode.INHOMOGENEOUS and p2 > 0 and t1 in _E_TAILS:
                raise UnsupportedReductionError(
                    f"moving pi^2 through {t1.name} needs grad(E) terms"
                )
            ip0, r0 = _fold_i(i1 + i2, r1 * r2)
            sym0 = _sym_add(s1, s2)
            emit(r0, ip0, sym0, p1 + p2, t1, t2)
            if track_commutators and t1 is Tail.SP and p2 > 0 and FIELD_DEGREE[t2] == 0:
                # sigma.pi past pi^(2b): commutator leaves sigma.(B x pi)
                ipc, rc = _fold_i(ip0 + 1, r0 * (-2 * p2))
                emit(rc, ipc, _sym_add(sym0, _SYM_QHC), p1 + p2 - 1, Tail.SBXP, t2)
    return OperatorExpr(mode, out)


def mul(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """Canonical product with field-degree truncation."""
    return _mul_impl(a, b, _TAIL_MUL_HOM)


def mul_commuting_model(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """Product in the commuting-momentum model ([pi_i, pi_j] = 0).

    The difference mul(a, b) - mul_commuting_model(a, b) is exactly the set of
    magnetic correction terms that the semiclassical (commuting-components)
    evaluation cannot see.  Homogeneous mode only.
    """
    if a.mode is not Mode.HOMOGENEOUS:
        raise ModeMismatchError("commuting model is defined for homogeneous mode")
    return _mul_impl(a, b, _TAIL_MUL_COMMUTING)


def normalize(raw_terms: Sequence[tuple[Coefficient, Sequence]], mode: Mode) -> OperatorExpr:
    """Reduce generator words to canonical form.

    Each raw term is a coefficient and a word: a sequence of Tail members
    and/or Monomial factors (use Monomial(n, Tail.UNIT) for pi^(2n)).
    """
    total = OperatorExpr.zero(mode)
    for c, word in raw_terms:
        piece = OperatorExpr.from_terms(mode, [(Monomial(0, Tail.UNIT), c)])
        for letter in word:
            if isinstance(letter, Tail):
                letter = Monomial(0, letter)
            factor = OperatorExpr.from_terms(mode, [(letter, coeff(1))])
            piece = mul(piece, factor)
        total = add(total, piece)
    return total


def adjoint(a: OperatorExpr) -> OperatorExpr:
    """Hermitian conjugate; an involution on canonical forms."""
    out = {}

    def put(key, r):
        out[key] = out.get(key, Fraction(0)) + r

    for (t, p2, sym, ip), r in a._terms.items():
        rc = -r if ip == 1 else r
        tail = Tail(t)
        if a.mode is Mode.INHOMOGENEOUS and tail is Tail.EP_SP:
            raise UnsupportedReductionError("adjoint of (E.pi)(sigma.pi) needs grad(E) terms")
        if a.mode is Mode.INHOMOGENEOUS and tail is Tail.EP and p2 > 0:
            raise UnsupportedReductionError("adjoint of pi^2 (E.pi) needs grad(E) terms")
        put((t, p2, sym, ip), rc)
        if tail is Tail.SP and p2 > 0:
            # (pi^2n sigma.pi)^dag = sigma.pi pi^2n; restoring canonical order
            # leaves a sigma.(B x pi) commutator term.
            nip, nr = _fold_i(ip + 1, rc * (-2 * p2))
            put((int(Tail.SBXP), p2 - 1, _sym_add(sym, _SYM_QHC), nip), nr)
        elif tail is Tail.EP and a.mode is Mode.INHOMOGENEOUS:
            # (E.pi)^dag = pi.E = E.pi - i hbar div(E)
            nip, nr = _fold_i(ip + 1, -rc)
            put((int(Tail.DIVE), p2, _sym_add(sym, _SYM_HBAR), nip), nr)
    return OperatorExpr(a.mode, out)


def hermitian_split(a: OperatorExpr) -> tuple[OperatorExpr, OperatorExpr]:
    """(hermitian, antihermitian) parts; their sum reproduces the input."""
    dag = adjoint(a)
    half = Fraction(1, 2)
    return add(a, dag).scaled(half), add(a, dag.scaled(-1)).scaled(half)


def commute_with_V(a: OperatorExpr) -> OperatorExpr:
    """[V, a] for the electrostatic potential energy V = q phi, E = -grad phi.

    Base rules: [V, sigma.pi] = -i q hbar sigma.E and
    [V, pi^2] = -2 i q hbar E.pi (- q hbar^2 div(E) inhomogeneously);
    extended to all monomials by the product rule.  Field-linear terms commute
    with V up to the discarded field-quadratic order.
    """
    out = {}

    def put(key, r):
        out[key] = out.get(key, Fraction(0)) + r

    inh = a.mode is Mode.INHOMOGENEOUS
    for (t, p2, sym, ip), r in a._terms.items():
        tail = Tail(t)
        if FIELD_DEGREE[tail] == 1:
            continue
        if p2 > 0:
            if inh and p2 > 1:
                raise UnsupportedReductionError(
                    "[V, pi^(2n)] with n > 1 needs grad(E) terms"
                )
            # n pi^(2n-2) [V, pi^2] composed with the tail
            nip, nr = _fold_i(ip + 1, r * (-2 * p2))
            ep_tail = Tail.EP_SP if tail is Tail.SP else Tail.EP
            put((int(ep_tail), p2 - 1, _sym_add(sym, _SYM_QH), nip), nr)
            if inh:
                if tail is Tail.SP:
                    raise UnsupportedReductionError(
                        "[V, pi^2 sigma.pi] needs div(E) sigma.pi terms"
                    )
                dip, dr = _fold_i(ip, -r * p2)
                put((int(Tail.DIVE), p2 - 1, _sym_add(sym, _sym(hbar=2, q=1)), dip), dr)
        if tail is Tail.SP:
            nip, nr = _fold_i(ip + 1, -r)
            put((int(Tail.SE), p2, _sym_add(sym, _SYM_QH), nip), nr)
    return OperatorExpr(a.mode, out)


def commutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return add(mul(a, b), mul(b, a).scaled(-1))


def anticommutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return add(mul(a, b), mul(b, a))


# -- dimensional analysis ---------------------------------------------------


@dataclass(frozen=True)
class DimensionVector:
    """Exponents of mass, length and time."""

    mass: Fraction
    length: Fraction
    time: Fraction

    def __add__(self, other):
        return DimensionVector(self.mass + other.mass,
                               self.length + other.length,
                               self.time + other.time)

    def __mul__(self, n):
        return DimensionVector(self.mass * n, self.length * n, self.time * n)

    __rmul__ = __mul__


def _dim(m, l, t):
    return DimensionVector(Fraction(m), Fraction(l), Fraction(t))


DIM_NONE = _dim(0, 0, 0)
DIM_ENERGY = _dim(1, 2, -2)
DIM_VELOCITY = _dim(0, 1, -1)

_DIM_HBAR = _dim(1, 2, -1)
_DIM_INV_M = _dim(-1, 0, 0)
_DIM_INV_C = _dim(0, -1, 1)
_DIM_PI = _dim(1, 1, -1)
_DIM_QFIELD = _dim(1, 1, -2)   # qE and qB are atomic force-like symbols

_TAIL_DIMS = {
    Tail.UNIT: DIM_NONE,
    Tail.EP: _DIM_QFIELD + _DIM_PI,
    Tail.BP: _DIM_QFIELD + _DIM_PI,
    Tail.DIVE: _dim(1, 0, -2),
    Tail.SP: _DIM_PI,
    Tail.SE: _DIM_QFIELD,
    Tail.SB: _DIM_QFIELD,
    Tail.SEXP: _DIM_QFIELD + _DIM_PI,
    Tail.SBXP: _DIM_QFIELD + _DIM_PI,
    Tail.EP_SP: _DIM_QFIELD + 2 * _DIM_PI,
    Tail.BP_SP: _DIM_QFIELD + 2 * _DIM_PI,
}


def _term_dimension(key) -> DimensionVector:
    t, p2, sym, _ = key
    hbar, _q, inv_m, inv_c, _kappa = sym
    return (_TAIL_DIMS[Tail(t)] + 2 * p2 * _DIM_PI + hbar * _DIM_HBAR
            + inv_m * _DIM_INV_M + inv_c * _DIM_INV_C)


def dimension_of(a: OperatorExpr):
    """Common dimension of all terms, or None for zero or mixed expressions."""
    dims = {_term_dimension(key) for key in a._terms}
    if len(dims) == 1:
        return dims.pop()
    return None


def check_dimension(a: OperatorExpr, expected: DimensionVector) -> bool:
    """True iff every monomial of ``a`` carries exactly ``expected``."""
    return all(_term_dimension(key) == expected for key in a._terms)
