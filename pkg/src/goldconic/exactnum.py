"""Exact arithmetic over the constructible reals.

A :class:`ConstructibleReal` is an immutable expression DAG whose leaves are
rationals and whose inner nodes are ``+ - * /`` and square roots.  Values are
compared exactly: interval enclosures are refined by precision doubling until
they exclude zero, or until they fall inside a structurally computed
separation bound (BFMSS), at which point the value is certified to be zero.

Enclosures are computed in fixed point: at working precision ``w`` a node is
represented by integers ``lo, hi`` with the true value in ``[lo/2^w, hi/2^w]``.

Normal forms
------------
By default every value is also kept as a *radical normal form*: a rational
linear combination of products of interned square-root atoms, where an
atom squared reduces to its radicand.  The DAG of such a value is rebuilt
from the normal form, so equal values built along different routes usually
end up as the very same node, and the DAGs the zero test has to bound stay
small.  A nonzero normal form does not prove a nonzero value (atoms may be
algebraically dependent), so the interval/separation-bound test remains the
decision procedure.  Inside :func:`raw_arithmetic` the normal forms are
switched off and nodes are built verbatim.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Rational",
    "ConstructibleReal",
    "IntervalEnclosure",
    "ExactArithmeticError",
    "DivisionByZero",
    "NegativeRadicand",
    "const_rational",
    "add",
    "sub",
    "mul",
    "div",
    "sqrt",
    "square",
    "refine",
    "sign",
    "equals",
    "less_than",
    "to_decimal",
    "phi",
    "sqrt_phi",
    "phi_sqrt_phi",
    "sqrt_two_phi",
    "start_precision",
    "raw_arithmetic",
    "separation_bits",
    "serialize",
]

Rational = Fraction

DEFAULT_START_BITS = 64
_start_bits: contextvars.ContextVar[int] = contextvars.ContextVar(
    "goldconic_start_bits", default=DEFAULT_START_BITS
)
_canonical: contextvars.ContextVar[bool] = contextvars.ContextVar(
    "goldconic_canonical", default=True
)

# normal forms larger than this fall back to plain DAG nodes
MAX_FORM_TERMS = 128


class ExactArithmeticError(ArithmeticError):
    pass


class DivisionByZero(ExactArithmeticError, ZeroDivisionError):
    pass


class NegativeRadicand(ExactArithmeticError, ValueError):
    pass


class _Imprecise(Exception):
    """Working precision too low to separate a divisor from zero."""


@contextlib.contextmanager
def start_precision(bits: int):
    """Set the initial working precision used by :func:`sign` in this context."""
    if bits < 1:
        raise ValueError("bits must be positive")
    token = _start_bits.set(bits)
    try:
        yield
    finally:
        _start_bits.reset(token)


@contextlib.contextmanager
def raw_arithmetic():
    """Build nodes verbatim, without radical normal forms."""
    token = _canonical.set(False)
    try:
        yield
    finally:
        _canonical.reset(token)


@dataclass(frozen=True)
class IntervalEnclosure:
    lo: Fraction
    hi: Fraction
    precision_bits: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def issubset(self, other: IntervalEnclosure) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


_CONST, _ADD, _SUB, _MUL, _DIV, _SQRT = "const", "add", "sub", "mul", "div", "sqrt"
_SYMBOLS = {_ADD: "+", _SUB: "-", _MUL: "*", _DIV: "/"}


class ConstructibleReal:
    """A node of an exact expression DAG.

    Build values with :func:`const_rational`, :func:`sqrt` and the usual
    arithmetic operators.  ``==``, ``<`` and friends are exact.  Instances
    are not hashable because equal values can have different DAGs.
    """

    __slots__ = ("op", "args", "value", "label", "form", "_enc", "_bound", "_lock")

    def __init__(self, op, args=(), value=None, label=None, form=None):
        self.op = op
        self.args = args
        self.value = value
        self.label = label
        self.form = form
        self._enc: IntervalEnclosure | None = None
        self._bound: tuple[int, int, frozenset[int]] | None = None
        self._lock = threading.Lock()

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return mul(_MINUS_ONE, self)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = square(base)
        return result

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return equals(self, other)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __lt__(self, other):
        return less_than(self, other)

    def __le__(self, other):
        return sign(sub(self, _coerce(other))) <= 0

    def __gt__(self, other):
        return sign(sub(self, _coerce(other))) > 0

    def __ge__(self, other):
        return sign(sub(self, _coerce(other))) >= 0

    def __float__(self) -> float:
        enc = refine(self, 60)
        return float((enc.lo + enc.hi) / 2)

    def __bool__(self) -> bool:
        return sign(self) != 0

    @property
    def is_rational(self) -> bool:
        return self.op == _CONST

    def to_expr(self) -> str:
        """Fully parenthesised tree form of the DAG (labels ignored)."""
        return _serialize(self, use_labels=False)

    def __str__(self) -> str:
        return _serialize(self, use_labels=True)

    def __repr__(self) -> str:
        return f"ConstructibleReal({self})"


def _coerce(x) -> ConstructibleReal:
    if isinstance(x, ConstructibleReal):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return const_rational(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} as an exact value")


def const_rational(q) -> ConstructibleReal:
    """Wrap a rational (``int``, ``Fraction`` or ``"p/q"`` string)."""
    if isinstance(q, ConstructibleReal):
        return q
    if isinstance(q, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    q = Fraction(q)
    return ConstructibleReal(_CONST, value=q, form={(): q} if q else {})


_ZERO = const_rational(0)
_ONE = const_rational(1)
_MINUS_ONE = const_rational(-1)


# ---------------------------------------------------------------------------
# radical normal forms
#
# A form is a dict  monomial -> Fraction  where a monomial is a sorted tuple
# of atom indices.  Atom i stands for sqrt(radicand_i), radicand_i a form
# over atoms < i, so products reduce by  atom_i^2 -> radicand_i.


class _Atom:
    __slots__ = ("index", "radicand", "node")

    def __init__(self, index, radicand, node):
        self.index = index
        self.radicand = radicand
        self.node = node


_ATOMS: list[_Atom] = []
_ATOM_BY_KEY: dict[tuple, _Atom] = {}
_NODE_BY_FORM: dict[tuple, ConstructibleReal] = {}
_MONO_NODE: dict[tuple, ConstructibleReal] = {}
_MONO_MUL: dict[tuple, dict] = {}
_FORM_LOCK = threading.RLock()


class _FormTooLarge(Exception):
    pass


def _fkey(form: dict) -> tuple:
    return tuple(sorted(form.items()))


def _f_addto(acc: dict, form: dict, scale: Fraction) -> None:
    for mono, c in form.items():
        v = acc.get(mono, 0) + c * scale
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)
    if len(acc) > MAX_FORM_TERMS:
        raise _FormTooLarge


def _mono_mul(s: tuple, t: tuple) -> dict:
    key = (s, t) if s <= t else (t, s)
    hit = _MONO_MUL.get(key)
    if hit is not None:
        return hit
    common = sorted(set(s) & set(t))
    rest = tuple(sorted(set(s) ^ set(t)))
    out: dict = {rest: Fraction(1)}
    # reduce the highest shared atom first; radicands only use lower atoms
    for i in reversed(common):
        out = _f_mul(out, _ATOMS[i].radicand)
    _MONO_MUL[key] = out
    return out


def _f_mul(f: dict, g: dict) -> dict:
    acc: dict = {}
    for s, a in f.items():
        for t, b in g.items():
            if not s:
                prod = {t: Fraction(1)}
            elif not t:
                prod = {s: Fraction(1)}
            else:
                prod = _mono_mul(s, t)
            _f_addto(acc, prod, a * b)
    return acc


def _f_inv(f: dict) -> dict | None:
    """Inverse by repeated conjugation, or None when a conjugate vanishes."""
    if not f:
        return None
    top = max((max(m) for m in f if m), default=None)
    if top is None:
        return {(): 1 / f[()]}
    conj = {m: (-c if top in m else c) for m, c in f.items()}
    norm = _f_mul(f, conj)
    if not norm or any(top in m for m in norm):
        return None
    inv_norm = _f_inv(norm)
    if inv_norm is None:
        return None
    return _f_mul(conj, inv_norm)


def _mono_node(mono: tuple) -> ConstructibleReal:
    node = _MONO_NODE.get(mono)
    if node is None:
        node = _ATOMS[mono[0]].node
        for i in mono[1:]:
            node = ConstructibleReal(_MUL, (node, _ATOMS[i].node))
        _MONO_NODE[mono] = node
    return node


def _node_from_form(form: dict) -> ConstructibleReal:
    key = _fkey(form)
    with _FORM_LOCK:
        node = _NODE_BY_FORM.get(key)
        if node is not None:
            return node
        if not form:
            node = const_rational(0)
        elif list(form) == [()]:
            node = const_rational(form[()])
        else:
            node = None
            for mono, c in sorted(form.items(), key=lambda kv: (len(kv[0]), kv[0])):
                if mono:
                    term = _mono_node(mono)
                    if c != 1:
                        term = ConstructibleReal(_MUL, (const_rational(c), term))
                else:
                    term = const_rational(c)
                node = term if node is None else ConstructibleReal(_ADD, (node, term))
            node.form = dict(form)
        _NODE_BY_FORM[key] = node
        return node


def _atom(radicand: dict) -> ConstructibleReal:
    """Interned ``sqrt(radicand)`` atom node (radicand proven positive)."""
    key = _fkey(radicand)
    with _FORM_LOCK:
        atom = _ATOM_BY_KEY.get(key)
        if atom is None:
            rad_node = _node_from_form(radicand)
            node = ConstructibleReal(_SQRT, (rad_node,))
            atom = _Atom(len(_ATOMS), dict(radicand), node)
            node.form = {(atom.index,): Fraction(1)}
            _ATOMS.append(atom)
            _ATOM_BY_KEY[key] = atom
            _NODE_BY_FORM[_fkey(node.form)] = node
        return atom.node


def _with_forms(l: ConstructibleReal, r: ConstructibleReal) -> bool:
    return _canonical.get() and l.form is not None and r.form is not None


def _form_result(compute) -> ConstructibleReal | None:
    try:
        with _FORM_LOCK:
            form = compute()
    except _FormTooLarge:
        return None
    if form is None:
        return None
    return _node_from_form(form)


# ---------------------------------------------------------------------------
# node builders


def _is_const(x: ConstructibleReal, q=None) -> bool:
    return x.op == _CONST and (q is None or x.value == q)


def add(l, r) -> ConstructibleReal:
    l, r = _coerce(l), _coerce(r)
    if l.op == _CONST and r.op == _CONST:
        return const_rational(l.value + r.value)
    if _is_const(l, 0):
        return r
    if _is_const(r, 0):
        return l
    if _with_forms(l, r):
        def compute():
            acc = dict(l.form)
            _f_addto(acc, r.form, Fraction(1))
            return acc
        node = _form_result(compute)
        if node is not None:
            return node
    return ConstructibleReal(_ADD, (l, r))


def sub(l, r) -> ConstructibleReal:
    l, r = _coerce(l), _coerce(r)
    if l.op == _CONST and r.op == _CONST:
        return const_rational(l.value - r.value)
    if l is r:
        return _ZERO
    if _is_const(r, 0):
        return l
    if _with_forms(l, r):
        def compute():
            acc = dict(l.form)
            _f_addto(acc, r.form, Fraction(-1))
            return acc
        node = _form_result(compute)
        if node is not None:
            return node
    if _is_const(l, 0):
        return mul(_MINUS_ONE, r)
    return ConstructibleReal(_SUB, (l, r))


def mul(l, r) -> ConstructibleReal:
    l, r = _coerce(l), _coerce(r)
    if l.op == _CONST and r.op == _CONST:
        return const_rational(l.value * r.value)
    if _is_const(l, 0) or _is_const(r, 0):
        return _ZERO
    if _is_const(l, 1):
        return r
    if _is_const(r, 1):
        return l
    if _with_forms(l, r):
        node = _form_result(lambda: _f_mul(l.form, r.form))
        if node is not None:
            return node
    if l is r:
        return square(l)
    # c1 * (c2 * x) -> (c1*c2) * x keeps scalar multiples flat
    if l.op == _CONST and r.op == _MUL and r.args[0].op == _CONST:
        return mul(const_rational(l.value * r.args[0].value), r.args[1])
    return ConstructibleReal(_MUL, (l, r))


def square(x) -> ConstructibleReal:
    """``x*x`` with the obvious radical simplifications applied."""
    x = _coerce(x)
    if x.op == _CONST:
        return const_rational(x.value * x.value)
    if _with_forms(x, x):
        node = _form_result(lambda: _f_mul(x.form, x.form))
        if node is not None:
            return node
    if x.op == _SQRT:
        return x.args[0]
    if x.op == _MUL and (x.args[0].op in (_CONST, _SQRT) or x.args[1].op in (_CONST, _SQRT)):
        return mul(square(x.args[0]), square(x.args[1]))
    return ConstructibleReal(_MUL, (x, x))


def div(l, r) -> ConstructibleReal:
    l, r = _coerce(l), _coerce(r)
    if sign(r) == 0:
        raise DivisionByZero("divisor is exactly zero")
    if l.op == _CONST and r.op == _CONST:
        return const_rational(l.value / r.value)
    if l is r:
        return _ONE
    if _is_const(r, 1):
        return l
    if _with_forms(l, r):
        def compute():
            inv = _f_inv(r.form)
            return None if inv is None else _f_mul(l.form, inv)
        node = _form_result(compute)
        if node is not None:
            return node
    if r.op == _CONST:
        return mul(const_rational(1 / r.value), l)
    return ConstructibleReal(_DIV, (l, r))


_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % d for d in range(2, math.isqrt(p) + 1))]
_RAW_SQRT_INTERN: dict[int, ConstructibleReal] = {}


def _split_square(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m``; square factors of small primes removed."""
    k = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            k *= p
    s = math.isqrt(n)
    if s * s == n:
        return k * s, 1
    return k, n


def _sqrt_int(n: int) -> ConstructibleReal:
    if _canonical.get():
        return _atom({(): Fraction(n)})
    with _FORM_LOCK:
        node = _RAW_SQRT_INTERN.get(n)
        if node is None:
            node = ConstructibleReal(_SQRT, (ConstructibleReal(_CONST, value=Fraction(n)),))
            _RAW_SQRT_INTERN[n] = node
        return node


def _sqrt_rational(q: Fraction) -> ConstructibleReal:
    # sqrt(p/q) = sqrt(p*q)/q, then pull square factors out of p*q
    k, m = _split_square(q.numerator * q.denominator)
    coeff = Fraction(k, q.denominator)
    if m == 1:
        return const_rational(coeff)
    return mul(const_rational(coeff), _sqrt_int(m))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _sqrt_form(form: dict) -> ConstructibleReal:
    """sqrt of a positive non-rational normal form."""
    monos = [m for m in form if m]
    # denest sqrt(p + q*sqrt(n)) when p^2 - q^2 n is a rational square
    if len(monos) == 1 and len(monos[0]) == 1:
        atom = _ATOMS[monos[0][0]]
        if list(atom.radicand) == [()]:
            n = atom.radicand[()]
            p, q = form.get((), Fraction(0)), form[monos[0]]
            m = _rational_sqrt(p * p - q * q * n)
            if m is not None and p - m >= 0:
                u = _sqrt_rational((p + m) / 2)
                v = _sqrt_rational((p - m) / 2)
                return add(u, v) if q > 0 else sub(u, v)
    # pull out the rational content so sqrt(c*g) = sqrt(c) * sqrt(g)
    lead_mono = min(form, key=lambda m: (len(m), m))
    content = abs(form[lead_mono])
    primitive = {m: c / content for m, c in form.items()}
    return mul(_sqrt_rational(content), _atom(primitive))


def sqrt(x) -> ConstructibleReal:
    """Principal square root; radicand must be provably nonnegative."""
    x = _coerce(x)
    s = sign(x)
    if s < 0:
        raise NegativeRadicand("square root of a negative value")
    if s == 0:
        return _ZERO
    if x.op == _CONST:
        return _sqrt_rational(x.value)
    if _canonical.get() and x.form is not None:
        with _FORM_LOCK:
            return _sqrt_form(x.form)
    if x.op == _MUL and x.args[0] is x.args[1]:
        return abs(x.args[0])
    return ConstructibleReal(_SQRT, (x,))


# ---------------------------------------------------------------------------
# interval evaluation


def _ceil_isqrt(n: int) -> int:
    s = math.isqrt(n)
    return s if s * s == n else s + 1


def _eval(root: ConstructibleReal, w: int) -> tuple[int, int]:
    memo: dict[int, tuple[int, int]] = {}
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if not expanded and node.op != _CONST:
            stack.append((node, True))
            stack.extend((c, False) for c in node.args if id(c) not in memo)
            continue
        op = node.op
        if op == _CONST:
            q = node.value
            num = q.numerator << w
            res = (num // q.denominator, -((-num) // q.denominator))
        elif op == _SQRT:
            lo, hi = memo[id(node.args[0])]
            res = (math.isqrt(max(lo, 0) << w), _ceil_isqrt(max(hi, 0) << w))
        else:
            a, b = memo[id(node.args[0])], memo[id(node.args[1])]
            if op == _ADD:
                res = (a[0] + b[0], a[1] + b[1])
            elif op == _SUB:
                res = (a[0] - b[1], a[1] - b[0])
            elif op == _MUL:
                if node.args[0] is node.args[1]:
                    lo, hi = a
                    if lo >= 0:
                        cands = (lo * lo, hi * hi)
                    elif hi <= 0:
                        cands = (hi * hi, lo * lo)
                    else:
                        cands = (0, max(lo * lo, hi * hi))
                else:
                    cands = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
                res = (min(cands) >> w, -((-max(cands)) >> w))
            else:
                if b[0] <= 0 <= b[1]:
                    raise _Imprecise
                nums = (a[0] << w, a[1] << w)
                res = (
                    min(n // d for n in nums for d in b),
                    max(-((-n) // d) for n in nums for d in b),
                )
        memo[key] = res
    return memo[id(root)]


def _enclose_at(x: ConstructibleReal, w: int) -> IntervalEnclosure:
    """Enclosure at working precision ``w``, intersected with the cache."""
    lo, hi = _eval(x, w)
    scale = 1 << w
    fresh = IntervalEnclosure(Fraction(lo, scale), Fraction(hi, scale), w)
    with x._lock:
        old = x._enc
        if old is None:
            x._enc = fresh
        else:
            x._enc = IntervalEnclosure(
                max(old.lo, fresh.lo), min(old.hi, fresh.hi), max(old.precision_bits, w)
            )
        return x._enc


def _width_ok(enc: IntervalEnclosure, bits: int) -> bool:
    return enc.width * (1 << bits) <= 1


def refine(x, bits: int) -> IntervalEnclosure:
    """Return an enclosure of ``x`` of width at most ``2**-bits``.

    The per-node cache only ever shrinks, so repeated calls return nested
    intervals.
    """
    if bits < 1:
        raise ValueError("bits must be >= 1")
    x = _coerce(x)
    if x.op == _CONST:
        return IntervalEnclosure(x.value, x.value, bits)
    cached = x._enc
    if cached is not None and _width_ok(cached, bits):
        return IntervalEnclosure(cached.lo, cached.hi, bits)
    w = max(DEFAULT_START_BITS, bits + 8)
    while True:
        try:
            enc = _enclose_at(x, w)
        except _Imprecise:
            w *= 2
            continue
        if _width_ok(enc, bits):
            return IntervalEnclosure(enc.lo, enc.hi, bits)
        w *= 2


# ---------------------------------------------------------------------------
# separation bound


def _bfmss(x: ConstructibleReal) -> tuple[int, int, frozenset[int]]:
    """Upper bounds ``(log2 u, log2 l, radical node ids)`` for the BFMSS bound.

    The value of ``x`` is ``U/L`` with ``U``, ``L`` algebraic integers whose
    conjugates are bounded by ``u`` and ``l``; a nonzero ``x`` then satisfies
    ``|x| >= 1 / (u**(D-1) * l)`` where ``D = 2**(number of radicals)``.
    """
    stack = [(x, False)]
    while stack:
        node, expanded = stack.pop()
        if node._bound is not None:
            continue
        if not expanded and node.op != _CONST:
            stack.append((node, True))
            stack.extend((c, False) for c in node.args if c._bound is None)
            continue
        op = node.op
        if op == _CONST:
            q = node.value
            bound = (abs(q.numerator).bit_length(), q.denominator.bit_length(), frozenset())
        else:
            parts = [c._bound for c in node.args]
            rads = frozenset().union(*(p[2] for p in parts))
            if op in (_ADD, _SUB):
                (u1, l1, _), (u2, l2, _) = parts
                bound = (max(u1 + l2, l1 + u2) + 1, l1 + l2, rads)
            elif op == _MUL:
                (u1, l1, _), (u2, l2, _) = parts
                bound = (u1 + u2, l1 + l2, rads)
            elif op == _DIV:
                (u1, l1, _), (u2, l2, _) = parts
                bound = (u1 + l2, l1 + u2, rads)
            else:
                ((u1, l1, _),) = parts
                bound = ((u1 + l1 + 1) // 2, l1, rads | {id(node)})
        node._bound = bound
    return x._bound


def separation_bits(x) -> int:
    """``k`` such that a nonzero value of ``x`` has ``|x| >= 2**-k``."""
    lu, ll, rads = _bfmss(_coerce(x))
    degree = 1 << len(rads)
    return (degree - 1) * lu + ll + 1


def sign(x) -> int:
    """Exact sign of ``x``: -1, 0 or +1."""
    x = _coerce(x)
    if x.op == _CONST:
        return (x.value > 0) - (x.value < 0)
    cached = x._enc
    if cached is not None:
        if cached.lo > 0:
            return 1
        if cached.hi < 0:
            return -1
    sep = None
    w = _start_bits.get()
    while True:
        try:
            enc = _enclose_at(x, w)
        except _Imprecise:
            w *= 2
            continue
        if enc.lo > 0:
            return 1
        if enc.hi < 0:
            return -1
        if sep is None:
            sep = separation_bits(x)
        if max(-enc.lo, enc.hi) * (1 << sep) < 1:
            return 0
        w *= 2


def equals(a, b) -> bool:
    return sign(sub(_coerce(a), _coerce(b))) == 0


def less_than(a, b) -> bool:
    return sign(sub(_coerce(a), _coerce(b))) < 0


def to_decimal(x, digits: int) -> str:
    """Correctly rounded decimal string with ``digits`` fractional digits.

    Exact ties round half to even.
    """
    if not 0 <= digits <= 10000:
        raise ValueError("digits must be in [0, 10000]")
    x = _coerce(x)
    scale = 10**digits
    if x.op == _CONST:
        k = round(x.value * scale)
    else:
        bits = math.ceil((digits + 2) * math.log2(10)) + 2
        enc = refine(x, bits)
        lo, hi = enc.lo * scale, enc.hi * scale
        m = math.floor(hi - Fraction(1, 2))
        half = m + Fraction(1, 2)
        if lo <= half <= hi:
            s = sign(sub(x, const_rational(half / scale)))
            if s > 0:
                k = m + 1
            elif s < 0:
                k = m
            else:
                k = m if m % 2 == 0 else m + 1
        else:
            k = math.floor(lo + Fraction(1, 2))
    neg = k < 0
    int_part, frac_part = divmod(abs(k), scale)
    text = str(int_part)
    if digits:
        text += "." + str(frac_part).rjust(digits, "0")
    return "-" + text if neg else text


def _serialize(x: ConstructibleReal, use_labels: bool) -> str:
    memo: dict[int, str] = {}

    def go(n: ConstructibleReal) -> str:
        key = id(n)
        if key in memo:
            return memo[key]
        if use_labels and n.label:
            s = n.label
        elif n.op == _CONST:
            s = str(n.value)
            if n.value < 0 or n.value.denominator != 1:
                s = f"({s})"
        elif n.op == _SQRT:
            s = f"sqrt({go(n.args[0])})"
        else:
            s = f"({go(n.args[0])}{_SYMBOLS[n.op]}{go(n.args[1])})"
        memo[key] = s
        return s

    return go(x)


def serialize(*values: ConstructibleReal) -> str:
    """Linear, sharing-aware text form of one or more DAGs.

    Two values serialize identically iff their DAGs are structurally
    identical, so this is the equality used for determinism checks.
    """
    ids: dict[int, int] = {}
    lines: list[str] = []

    def visit(root: ConstructibleReal) -> int:
        stack = [(root, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in ids:
                continue
            if not expanded:
                stack.append((node, True))
                stack.extend((c, False) for c in reversed(node.args) if id(c) not in ids)
                continue
            if node.op == _CONST:
                body = f"const {node.value}"
            else:
                body = node.op + " " + " ".join(f"%{ids[id(c)]}" for c in node.args)
            ids[id(node)] = len(lines)
            lines.append(f"%{len(lines)} = {body}")
        return ids[id(root)]

    roots = [visit(_coerce(v)) for v in values]
    lines.append("return " + " ".join(f"%{r}" for r in roots))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# golden constants, shared so their enclosures are computed once

_PHI = div(add(_ONE, sqrt(5)), const_rational(2))
_SQRT_PHI = sqrt(_PHI)
_PHI_SQRT_PHI = mul(_PHI, _SQRT_PHI)
_SQRT_TWO_PHI = sqrt(mul(const_rational(2), _PHI))


def phi() -> ConstructibleReal:
    """The golden ratio (1 + sqrt 5) / 2."""
    return _PHI


def sqrt_phi() -> ConstructibleReal:
    return _SQRT_PHI


def phi_sqrt_phi() -> ConstructibleReal:
    return _PHI_SQRT_PHI


def sqrt_two_phi() -> ConstructibleReal:
    return _SQRT_TWO_PHI
