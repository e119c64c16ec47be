"""Brute-force component oracle for the homogeneous operator algebra.

Everything is expanded into 2x2 matrices whose entries are noncommutative
polynomials in the nine component letters pi_i, E_i, B_i with exact Gaussian
rational coefficients times symbol powers.  The only nontrivial reduction is
the literal component commutator

    pi_i pi_j = pi_j pi_i + (i q hbar / c) eps_ijk B_k

applied in full, plus truncation of words with two or more field letters.
No tail table, no packed pi^2 powers: this is an independent path used to
certify the engine's structured multiplication, adjoint and normalization.
"""

from fractions import Fraction

from fwexact.algebra import FIELD_DEGREE, Monomial, OperatorExpr, Tail

# letters: ("pi", i), ("E", i), ("B", i); canonical word order puts field
# letters (sorted) before pi letters (sorted by component).

_EPS = {}
for (i, j, k), s in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                     ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
    _EPS[(i, j)] = (k, s)


def _letter_rank(letter):
    kind, comp = letter
    return (0 if kind in ("E", "B") else 1, kind, comp)


def _is_field(letter):
    return letter[0] in ("E", "B")


def _cplx_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cplx_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


_ZERO = (Fraction(0), Fraction(0))
_ONE = (Fraction(1), Fraction(0))
_I = (Fraction(0), Fraction(1))


def _sym_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


_SYM_ONE = (0, 0, 0, 0, 0)
_SYM_QHC = (1, 1, 0, 1, 0)


class Poly:
    """Map (word, sym) -> complex rational, kept in normal order."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, val in terms.items():
                self._accumulate(key, val)

    def _accumulate(self, key, val):
        if val == _ZERO:
            return
        cur = self.terms.get(key, _ZERO)
        new = _cplx_add(cur, val)
        if new == _ZERO:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    @staticmethod
    def scalar(val=_ONE, sym=_SYM_ONE):
        p = Poly()
        p._accumulate(((), sym), val)
        return p

    @staticmethod
    def letter(kind, comp):
        p = Poly()
        p._accumulate((((kind, comp),), _SYM_ONE), _ONE)
        return p

    def __add__(self, other):
        out = Poly()
        for key, val in self.terms.items():
            out._accumulate(key, val)
        for key, val in other.terms.items():
            out._accumulate(key, val)
        return out

    def __mul__(self, other):
        out = Poly()
        for (w1, s1), v1 in self.terms.items():
            for (w2, s2), v2 in other.terms.items():
                out._accumulate((w1 + w2, _sym_add(s1, s2)), _cplx_mul(v1, v2))
        return out.normal_ordered()

    def scale(self, val, sym=_SYM_ONE):
        out = Poly()
        for (w, s), v in self.terms.items():
            out._accumulate((w, _sym_add(s, sym)), _cplx_mul(v, val))
        return out

    def conjugated_reversed(self):
        out = Poly()
        for (w, s), v in self.terms.items():
            out._accumulate((tuple(reversed(w)), s), (v[0], -v[1]))
        return out.normal_ordered()

    def normal_ordered(self):
        pending = dict(self.terms)
        done = Poly()
        while pending:
            (word, sym), val = pending.popitem()
            if sum(1 for let in word if _is_field(let)) >= 2:
                continue
            swap_at = None
            for idx in range(len(word) - 1):
                if _letter_rank(word[idx]) > _letter_rank(word[idx + 1]):
                    swap_at = idx
                    break
            if swap_at is None:
                done._accumulate((word, sym), val)
                continue
            a, b = word[swap_at], word[swap_at + 1]
            swapped = word[:swap_at] + (b, a) + word[swap_at + 2:]
            key = (swapped, sym)
            pending[key] = _cplx_add(pending.get(key, _ZERO), val)
            if a[0] == "pi" and b[0] == "pi" and a[1] != b[1]:
                k, sgn = _EPS[(a[1], b[1])]
                comm = word[:swap_at] + (("B", k),) + word[swap_at + 2:]
                ckey = (comm, _sym_add(sym, _SYM_QHC))
                cval = _cplx_mul(val, (_I[0], _I[1] * sgn))
                pending[ckey] = _cplx_add(pending.get(ckey, _ZERO), cval)
        return done

    def __eq__(self, other):
        return self.terms == other.terms

    def __repr__(self):
        return f"Poly({self.terms!r})"


_PAULI = {
    0: ((_ZERO, _ONE), (_ONE, _ZERO)),
    1: ((_ZERO, (Fraction(0), Fraction(-1))), (_I, _ZERO)),
    2: ((_ONE, _ZERO), (_ZERO, (Fraction(-1), Fraction(0)))),
}


class Mat:
    """2x2 matrix of Poly entries."""

    __slots__ = ("a",)

    def __init__(self, entries):
        self.a = entries

    @staticmethod
    def zero():
        z = Poly()
        return Mat(((z, Poly()), (Poly(), Poly())))

    @staticmethod
    def scalar(poly):
        z = Poly()
        return Mat(((poly, z), (Poly(), poly)))

    @staticmethod
    def sigma_weighted(polys):
        """sum_i sigma_i * polys[i]."""
        rows = [[Poly(), Poly()], [Poly(), Poly()]]
        for i, poly in enumerate(polys):
            for r in range(2):
                for c in range(2):
                    rows[r][c] = rows[r][c] + poly.scale(_PAULI[i][r][c])
        return Mat(((rows[0][0], rows[0][1]), (rows[1][0], rows[1][1])))

    def __add__(self, other):
        return Mat(tuple(tuple(self.a[r][c] + other.a[r][c] for c in range(2))
                         for r in range(2)))

    def __mul__(self, other):
        out = [[Poly(), Poly()], [Poly(), Poly()]]
        for r in range(2):
            for c in range(2):
                for k in range(2):
                    out[r][c] = out[r][c] + self.a[r][k] * other.a[k][c]
        return Mat(((out[0][0], out[0][1]), (out[1][0], out[1][1])))

    def scale(self, val, sym=_SYM_ONE):
        return Mat(tuple(tuple(self.a[r][c].scale(val, sym) for c in range(2))
                         for r in range(2)))

    def normal_ordered(self):
        return Mat(tuple(tuple(self.a[r][c].normal_ordered() for c in range(2))
                         for r in range(2)))

    def adjoint(self):
        return Mat(((self.a[0][0].conjugated_reversed(), self.a[1][0].conjugated_reversed()),
                    (self.a[0][1].conjugated_reversed(), self.a[1][1].conjugated_reversed())))

    def __eq__(self, other):
        return all(self.a[r][c] == other.a[r][c] for r in range(2) for c in range(2))

    def __repr__(self):
        return f"Mat({self.a!r})"


def _dot(kind_a, kind_b):
    total = Poly()
    for i in range(3):
        total = total + Poly.letter(kind_a, i) * Poly.letter(kind_b, i)
    return total


def _cross_sigma(kind_a, kind_b):
    """sum sigma_i eps_ijk a_j b_k."""
    comps = [Poly(), Poly(), Poly()]
    for (j, k), (i, s) in (((jj, kk), _EPS[(jj, kk)]) for jj in range(3) for kk in range(3)
                           if jj != kk):
        comps[i] = comps[i] + (Poly.letter(kind_a, j) * Poly.letter(kind_b, k)).scale(
            (Fraction(s), Fraction(0)))
    return Mat.sigma_weighted(comps)


def tail_matrix(tail: Tail) -> Mat:
    if tail is Tail.UNIT:
        return Mat.scalar(Poly.scalar())
    if tail is Tail.EP:
        return Mat.scalar(_dot("E", "pi"))
    if tail is Tail.BP:
        return Mat.scalar(_dot("B", "pi"))
    if tail is Tail.SP:
        return Mat.sigma_weighted([Poly.letter("pi", i) for i in range(3)])
    if tail is Tail.SE:
        return Mat.sigma_weighted([Poly.letter("E", i) for i in range(3)])
    if tail is Tail.SB:
        return Mat.sigma_weighted([Poly.letter("B", i) for i in range(3)])
    if tail is Tail.SEXP:
        return _cross_sigma("E", "pi")
    if tail is Tail.SBXP:
        return _cross_sigma("B", "pi")
    if tail is Tail.EP_SP:
        return Mat.scalar(_dot("E", "pi")) * tail_matrix(Tail.SP)
    if tail is Tail.BP_SP:
        return Mat.scalar(_dot("B", "pi")) * tail_matrix(Tail.SP)
    raise ValueError(f"no oracle matrix for {tail}")


_P2 = _dot("pi", "pi")


def monomial_matrix(mono: Monomial) -> Mat:
    m = tail_matrix(mono.tail)
    for _ in range(mono.p2_power):
        m = Mat.scalar(_P2) * m
    return m.normal_ordered()


def to_oracle(expr: OperatorExpr) -> Mat:
    """Expand an engine expression into the component representation."""
    total = Mat.zero()
    for mono, c in expr.terms():
        val = (c.rational, Fraction(0)) if c.i_power == 0 else (Fraction(0), c.rational)
        total = total + monomial_matrix(mono).scale(val, c.sym)
    return total.normal_ordered()


def oracle_product(x: Mat, y: Mat) -> Mat:
    return (x * y).normal_ordered()
