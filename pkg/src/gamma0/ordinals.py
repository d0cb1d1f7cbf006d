"""Ordinal arithmetic in Veblen normal form, bounded by Gamma_0.

An ordinal is Zero, the distinguished top value Gamma_0, or a sum of
Veblen terms ``phi_a(b) * m`` kept in strictly decreasing order.  A term
is *normal* when ``b < phi_a(b)``; the `veblen` constructor collapses
fixed points so every representable value has exactly one form, which
makes equality structural.

The module also fixes an injective encoding of normal forms into the
naturals.  Codes of finite ordinals are kept small (``0 -> 0``, the
finite ordinal ``k`` gets code ``2k - 1``) so that numerals of small
positions stay practical to write out.  Naturals that decode to nothing
are ordered after all valid codes, by numeric value, which makes
`preceq` a total order on all of N.

Text grammar (whitespace-insensitive, ``+`` right-associates, ``*``
binds tighter than ``+``, ``^`` tighter than ``*``)::

    ord  := prod ('+' ord)?
    prod := factor ('*' nat)*
    factor := 'w' ('^' factor)? | nat | 'eps0' | 'G0' | 'phi(' ord ',' ord ')'

``eps0`` is an input alias for ``phi(1,0)``; printing always uses the
``phi`` form.  Arguments of ``w^`` that would need grouping are printed
as ``phi(0, ...)`` instead, so printing and parsing are exact inverses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coding import pair, unpair, pack_list, unpack_list

LT, EQ, GT = -1, 0, 1


class OverflowBeyondGamma0(ArithmeticError):
    """The result of an operation would exceed Gamma_0."""


class NotSubtractable(ArithmeticError):
    """subtract_left(a1, a) was called with a1 > a."""


class NotALimit(ValueError):
    """fs(x, n) was called on a value that is not a limit."""


class OrdinalParseError(ValueError):
    pass


class Ordinal:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(Ordinal):
    __slots__ = ()


@dataclass(frozen=True)
class Gamma0Top(Ordinal):
    __slots__ = ()


@dataclass(frozen=True)
class VTerm:
    """One Veblen term phi_sub(arg) * count with count >= 1."""

    sub: Ordinal
    arg: Ordinal
    count: int


@dataclass(frozen=True)
class Sum(Ordinal):
    terms: tuple


ZERO = Zero()
GAMMA0 = Gamma0Top()


def fin(n: int) -> Ordinal:
    """The finite ordinal n (phi_0(0) * n)."""
    if n < 0:
        raise ValueError("finite ordinals are non-negative")
    if n == 0:
        return ZERO
    return Sum((VTerm(ZERO, ZERO, n),))


ONE = fin(1)
W = Sum((VTerm(ZERO, ONE, 1),))
EPS0 = Sum((VTerm(ONE, ZERO, 1),))


def as_finite(x: Ordinal) -> int | None:
    """Return n when x is the finite ordinal n, else None."""
    if isinstance(x, Zero):
        return 0
    if isinstance(x, Sum) and len(x.terms) == 1:
        t = x.terms[0]
        if isinstance(t.sub, Zero) and isinstance(t.arg, Zero):
            return t.count
    return None


def _phi_single(a: Ordinal, b: Ordinal) -> Sum:
    return Sum((VTerm(a, b, 1),))


def compare(x: Ordinal, y: Ordinal) -> int:
    """Total order on normal forms: one of LT, EQ, GT."""
    if x is y:
        return EQ
    if isinstance(x, Gamma0Top):
        return EQ if isinstance(y, Gamma0Top) else GT
    if isinstance(y, Gamma0Top):
        return LT
    if isinstance(x, Zero):
        return EQ if isinstance(y, Zero) else LT
    if isinstance(y, Zero):
        return GT
    for tx, ty in zip(x.terms, y.terms):
        c = _cmp_phi(tx.sub, tx.arg, ty.sub, ty.arg)
        if c != EQ:
            return c
        if tx.count != ty.count:
            return LT if tx.count < ty.count else GT
    if len(x.terms) == len(y.terms):
        return EQ
    return LT if len(x.terms) < len(y.terms) else GT


def _cmp_phi(a: Ordinal, b: Ordinal, c: Ordinal, d: Ordinal) -> int:
    # phi_a(b) versus phi_c(d); phi values of unequal subscripts compare
    # through the fixed-point structure.
    ca = compare(a, c)
    if ca == EQ:
        return compare(b, d)
    if ca == LT:
        return compare(b, _phi_single(c, d))
    return -compare(d, _phi_single(a, b))


def veblen(a: Ordinal, b: Ordinal) -> Ordinal:
    """Normal form of phi_a(b); collapses arguments that are fixed points."""
    if isinstance(a, Gamma0Top) or isinstance(b, Gamma0Top):
        raise OverflowBeyondGamma0("phi at or above Gamma_0")
    if isinstance(b, Sum) and len(b.terms) == 1 and b.terms[0].count == 1:
        if compare(b.terms[0].sub, a) == GT:
            return b
    return _phi_single(a, b)


def add(x: Ordinal, y: Ordinal) -> Ordinal:
    if isinstance(y, Zero):
        return x
    if isinstance(x, Zero):
        return y
    if isinstance(y, Gamma0Top):
        if isinstance(x, Gamma0Top):
            raise OverflowBeyondGamma0("Gamma_0 + Gamma_0")
        return GAMMA0
    if isinstance(x, Gamma0Top):
        raise OverflowBeyondGamma0("Gamma_0 + nonzero")
    hy = y.terms[0]
    keep = []
    merged = None
    for t in x.terms:
        c = _cmp_phi(t.sub, t.arg, hy.sub, hy.arg)
        if c == GT:
            keep.append(t)
            continue
        if c == EQ:
            merged = VTerm(hy.sub, hy.arg, t.count + hy.count)
        break
    if merged is not None:
        return Sum(tuple(keep) + (merged,) + y.terms[1:])
    return Sum(tuple(keep) + y.terms)


def _log_term(t: VTerm) -> Ordinal:
    # omega-exponent of phi_sub(arg): the arg itself for phi_0, otherwise
    # the term is its own omega-logarithm (all phi_a values with a >= 1
    # are epsilon-like fixed points of beta -> omega^beta).
    if isinstance(t.sub, Zero):
        return t.arg
    return _phi_single(t.sub, t.arg)


def mul(x: Ordinal, y: Ordinal) -> Ordinal:
    if isinstance(x, Zero) or isinstance(y, Zero):
        return ZERO
    if as_finite(y) == 1:
        return x
    if as_finite(x) == 1:
        return y
    if isinstance(y, Gamma0Top):
        if isinstance(x, Gamma0Top):
            raise OverflowBeyondGamma0("Gamma_0 * Gamma_0")
        return GAMMA0
    if isinstance(x, Gamma0Top):
        raise OverflowBeyondGamma0("Gamma_0 * (>= 2)")
    head = x.terms[0]
    l1 = _log_term(head)
    acc: Ordinal = ZERO
    for t in y.terms:
        if isinstance(t.sub, Zero) and isinstance(t.arg, Zero):
            part: Ordinal = Sum((VTerm(head.sub, head.arg, head.count * t.count),) + x.terms[1:])
        else:
            wpow = veblen(ZERO, add(l1, _log_term(t)))
            wt = wpow.terms[0]
            part = Sum((VTerm(wt.sub, wt.arg, t.count),))
        acc = add(acc, part)
    return acc


def _ipow(x: Ordinal, k: int) -> Ordinal:
    r: Ordinal = ONE
    b = x
    while k:
        if k & 1:
            r = mul(r, b)
        k >>= 1
        if k:
            b = mul(b, b)
    return r


def exp(x: Ordinal, y: Ordinal) -> Ordinal:
    if isinstance(y, Zero):
        return ONE
    if isinstance(x, Zero):
        return ZERO
    if as_finite(x) == 1:
        return ONE
    if as_finite(y) == 1:
        return x
    if isinstance(y, Gamma0Top):
        if isinstance(x, Gamma0Top):
            raise OverflowBeyondGamma0("Gamma_0 ^ Gamma_0")
        return GAMMA0
    if isinstance(x, Gamma0Top):
        raise OverflowBeyondGamma0("Gamma_0 ^ (>= 2)")
    k = 0
    high = y.terms
    last = y.terms[-1]
    if isinstance(last.sub, Zero) and isinstance(last.arg, Zero):
        k = last.count
        high = y.terms[:-1]
    fx = as_finite(x)
    if fx is not None:
        if not high:
            return fin(fx**k)
        # n^(w^e * c) = w^(w^e' * c) with e' = e - 1 for finite e, else e
        e_acc: Ordinal = ZERO
        for t in high:
            e = _log_term(t)
            ef = as_finite(e)
            e2 = fin(ef - 1) if ef is not None else e
            e_acc = add(e_acc, mul(veblen(ZERO, e2), fin(t.count)))
        res = veblen(ZERO, e_acc)
        if k:
            res = mul(res, fin(fx**k))
        return res
    res = ONE
    if high:
        l1 = _log_term(x.terms[0])
        res = veblen(ZERO, mul(l1, Sum(tuple(high))))
    if k:
        res = mul(res, _ipow(x, k))
    return res


def subtract_left(x: Ordinal, y: Ordinal) -> Ordinal:
    """The unique z with x + z = y; requires x <= y."""
    c = compare(x, y)
    if c == GT:
        raise NotSubtractable("left operand exceeds right operand")
    if c == EQ:
        return ZERO
    if isinstance(x, Zero):
        return y
    if isinstance(y, Gamma0Top):
        return GAMMA0
    xt, yt = x.terms, y.terms
    for i, t in enumerate(xt):
        cph = _cmp_phi(t.sub, t.arg, yt[i].sub, yt[i].arg)
        if cph != EQ:
            return Sum(yt[i:])
        if t.count != yt[i].count:
            return Sum((VTerm(yt[i].sub, yt[i].arg, yt[i].count - t.count),) + yt[i + 1 :])
    return Sum(yt[len(xt) :])


def classify(x: Ordinal) -> tuple[str, Ordinal | None]:
    """("zero", None), ("successor", predecessor) or ("limit", None)."""
    if isinstance(x, Zero):
        return ("zero", None)
    if isinstance(x, Gamma0Top):
        return ("limit", None)
    last = x.terms[-1]
    if isinstance(last.sub, Zero) and isinstance(last.arg, Zero):
        if last.count == 1:
            pred: Ordinal = Sum(x.terms[:-1]) if len(x.terms) > 1 else ZERO
        else:
            pred = Sum(x.terms[:-1] + (VTerm(ZERO, ZERO, last.count - 1),))
        return ("successor", pred)
    return ("limit", None)


def fs(x: Ordinal, n: int) -> Ordinal:
    """Fundamental sequence: the n-th stage of a fixed increasing sequence
    with supremum x.  Defined for limits and for Gamma_0 (where it is the
    gamma sequence)."""
    if n < 0:
        raise ValueError("stage must be non-negative")
    if isinstance(x, Gamma0Top):
        return gamma(n)
    kind, _ = classify(x)
    if kind != "limit":
        raise NotALimit("fundamental sequences exist only for limits")
    t = x.terms[-1]
    prefix = list(x.terms[:-1])
    if t.count > 1:
        prefix.append(VTerm(t.sub, t.arg, t.count - 1))
    core = _fs_single(t.sub, t.arg, n)
    if prefix:
        return add(Sum(tuple(prefix)), core)
    return core


def _fs_single(a: Ordinal, b: Ordinal, n: int) -> Ordinal:
    kb, pb = classify(b)
    if isinstance(a, Zero):
        if kb == "successor":
            return mul(veblen(ZERO, pb), fin(n))
        return veblen(ZERO, fs(b, n))
    if kb == "limit":
        return veblen(a, fs(b, n))
    ka, pa = classify(a)
    if kb == "zero":
        if ka == "successor":
            v = add(veblen(pa, ZERO), ONE)
            for _ in range(n):
                v = veblen(pa, v)
            return v
        return veblen(fs(a, n), ZERO)
    # b is a successor
    if ka == "successor":
        v = add(veblen(a, pb), ONE)
        for _ in range(n):
            v = veblen(pa, v)
        return v
    return veblen(fs(a, n), add(veblen(a, pb), ONE))


def gamma(n: int) -> Ordinal:
    """gamma_0 = 0, gamma_{n+1} = phi_{gamma_n}(0)."""
    v: Ordinal = ZERO
    for _ in range(n):
        v = veblen(v, ZERO)
    return v


def index_of(a: Ordinal, c: Ordinal) -> Ordinal:
    """The truth-predicate index omega^a * c."""
    if isinstance(a, Gamma0Top) or isinstance(c, Gamma0Top):
        raise OverflowBeyondGamma0("index arguments must lie below Gamma_0")
    return mul(exp(W, a), c)


# --- encoding into the naturals -------------------------------------------
#
# 0 -> Zero, odd 2k-1 -> finite k, 2 -> Gamma_0, and even n >= 6 carries a
# packed list of terms (each pair(code(sub), pair(code(arg), count - 1))).
# Everything else is invalid.  Decoding validates normal-form invariants,
# so valid codes are exactly the canonical encodings.


def encode(x: Ordinal) -> int:
    if isinstance(x, Zero):
        return 0
    if isinstance(x, Gamma0Top):
        return 2
    f = as_finite(x)
    if f is not None:
        return 2 * f - 1
    items = [pair(encode(t.sub), pair(encode(t.arg), t.count - 1)) for t in x.terms]
    return 2 * pack_list(items) + 4


def _normal_term(a: Ordinal, b: Ordinal) -> bool:
    if isinstance(b, Sum) and len(b.terms) == 1 and b.terms[0].count == 1:
        if compare(b.terms[0].sub, a) == GT:
            return False
    return True


def decode(n: int) -> Ordinal | None:
    """Inverse of encode; None on invalid codes."""
    if n < 0:
        return None
    if n == 0:
        return ZERO
    if n & 1:
        return fin((n + 1) // 2)
    if n == 2:
        return GAMMA0
    if n == 4:
        return None
    items = unpack_list((n - 4) // 2)
    terms = []
    for it in items:
        sc, rest = unpair(it)
        ac, m1 = unpair(rest)
        sub = decode(sc)
        arg = decode(ac)
        if sub is None or arg is None:
            return None
        if isinstance(sub, Gamma0Top) or isinstance(arg, Gamma0Top):
            return None
        terms.append(VTerm(sub, arg, m1 + 1))
    head = terms[0]
    if isinstance(head.sub, Zero) and isinstance(head.arg, Zero):
        return None  # finite values use the odd codes
    for i, t in enumerate(terms):
        if not _normal_term(t.sub, t.arg):
            return None
        if i and _cmp_phi(terms[i - 1].sub, terms[i - 1].arg, t.sub, t.arg) != GT:
            return None
    return Sum(tuple(terms))


def preceq(m: int, n: int) -> bool:
    """Total order on all naturals: ordinal order on valid codes, invalid
    codes after every valid one, numerically among themselves."""
    if m == n:
        return True
    x = decode(m)
    y = decode(n)
    if x is not None and y is not None:
        return compare(x, y) == LT
    if x is not None:
        return True
    if y is not None:
        return False
    return m < n


def prec(m: int, n: int) -> bool:
    """Strict part of preceq."""
    return m != n and preceq(m, n)


def succ_code(n: int) -> int:
    """Code of the immediate preceq-successor of position n."""
    x = decode(n)
    if x is None:
        k = n + 1
        while decode(k) is not None:
            k += 1
        return k
    if isinstance(x, Gamma0Top):
        k = 0
        while decode(k) is not None:
            k += 1
        return k
    return encode(add(x, ONE))


# --- text form -------------------------------------------------------------


def format_ordinal(x: Ordinal) -> str:
    if isinstance(x, Zero):
        return "0"
    if isinstance(x, Gamma0Top):
        return "G0"
    return "+".join(_format_term(t) for t in x.terms)


def _format_term(t: VTerm) -> str:
    if isinstance(t.sub, Zero) and isinstance(t.arg, Zero):
        return str(t.count)
    base = _format_phi(t.sub, t.arg)
    if t.count > 1:
        return f"{base}*{t.count}"
    return base


def _format_phi(a: Ordinal, b: Ordinal) -> str:
    if isinstance(a, Zero):
        if as_finite(b) == 1:
            return "w"
        if _is_factor(b):
            return f"w^{_format_factor(b)}"
        return f"phi(0,{format_ordinal(b)})"
    return f"phi({format_ordinal(a)},{format_ordinal(b)})"


def _is_factor(b: Ordinal) -> bool:
    # printable without grouping in exponent position
    if as_finite(b) is not None:
        return True
    return isinstance(b, Sum) and len(b.terms) == 1 and b.terms[0].count == 1


def _format_factor(b: Ordinal) -> str:
    f = as_finite(b)
    if f is not None:
        return str(f)
    return _format_phi(b.terms[0].sub, b.terms[0].arg)


def parse_ordinal(text: str) -> Ordinal:
    toks = _lex(text)
    pos = [0]

    def peek() -> str | None:
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take(expected: str | None = None) -> str:
        tok = peek()
        if tok is None:
            raise OrdinalParseError("unexpected end of ordinal literal")
        if expected is not None and tok != expected:
            raise OrdinalParseError(f"expected {expected!r}, found {tok!r}")
        pos[0] += 1
        return tok

    def parse_sum() -> Ordinal:
        left = parse_prod()
        if peek() == "+":
            take()
            return add(left, parse_sum())
        return left

    def parse_prod() -> Ordinal:
        v = parse_factor()
        while peek() == "*":
            take()
            tok = take()
            if not tok.isdigit():
                raise OrdinalParseError("multiplier must be a decimal natural")
            v = mul(v, fin(int(tok)))
        return v

    def parse_factor() -> Ordinal:
        tok = take()
        if tok == "w":
            if peek() == "^":
                take()
                return exp(W, parse_factor())
            return W
        if tok.isdigit():
            return fin(int(tok))
        if tok == "eps0":
            return EPS0
        if tok == "G0":
            return GAMMA0
        if tok == "phi":
            take("(")
            a = parse_sum()
            take(",")
            b = parse_sum()
            take(")")
            return veblen(a, b)
        raise OrdinalParseError(f"unexpected token {tok!r}")

    value = parse_sum()
    if pos[0] != len(toks):
        raise OrdinalParseError(f"trailing input at {toks[pos[0]]!r}")
    return value


def _lex(text: str) -> list[str]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+*^(),":
            toks.append(ch)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(text[i:j])
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word not in ("w", "eps0", "G0", "phi"):
                raise OrdinalParseError(f"unknown name {word!r}")
            toks.append(word)
            i = j
            continue
        raise OrdinalParseError(f"bad character {ch!r}")
    if not toks:
        raise OrdinalParseError("empty ordinal literal")
    return toks
