"""First-order syntax for the stratified languages.

Terms are built from zero, successor, sum, product, variables ``x0, x1,
...`` and a fixed table of designated function symbols (code-level
arithmetic, substitution and formula builders).  Formulas add equality,
the indexed truth predicates ``T[k,a]``, the unindexed ``T[k]`` of the
one-step truth theory, the acceptance predicate ``Acc[k]``, designated
relations, connectives and quantifiers.

Every formula has a Goedel number; decoding validates symbol names and
arities, so valid codes round-trip exactly.  A LanguageId names a
stratified language: a base language extended at one new level by
either the indexed truth symbols strictly below a bound, all indexed
symbols plus acceptance, or the single unindexed truth symbol.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from . import ordinals, theoryspec
from .coding import pair, unpair, pack_list, unpack_list

sys.setrecursionlimit(max(sys.getrecursionlimit(), 30000))


class NotAPredicate(ValueError):
    """The operation needs a formula with exactly one free variable."""


class InvalidGodelCode(ValueError):
    pass


class FormulaParseError(ValueError):
    pass


# --- terms -------------------------------------------------------------------


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True, eq=False)
class Succ(Term):
    body: Term

    # successor chains (numerals) get arbitrarily deep, so equality and
    # hashing walk them iteratively instead of recursing
    def __eq__(self, other):
        a: Term = self
        b = other
        while isinstance(a, Succ) and isinstance(b, Succ):
            a, b = a.body, b.body
        if isinstance(a, Succ) or isinstance(b, Succ):
            return False
        return a == b

    def __hash__(self):
        n = 0
        t: Term = self
        while isinstance(t, Succ):
            n += 1
            t = t.body
        return hash((Succ, n, t))


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class PRFun(Term):
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


# --- formulas ----------------------------------------------------------------


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Truth(Formula):
    level: int
    index: int
    arg: Term


@dataclass(frozen=True)
class SimpleTruth(Formula):
    level: int
    arg: Term


@dataclass(frozen=True)
class Acc(Formula):
    level: int
    arg: Term


@dataclass(frozen=True)
class PRRel(Formula):
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: int
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: int
    body: Formula


_BINARY = (And, Or, Implies, Iff)
_QUANT = (ForAll, Exists)


# --- designated symbols ------------------------------------------------------

FUNCTION_ARITY = {
    "g": 2,
    "oadd": 2,
    "omul": 2,
    "oexp": 2,
    "ophi": 2,
    "impB": 2,
    "conjB": 2,
    "iffB": 2,
    "cloB": 1,
    "indB": 1,
    "progB": 1,
    "bB": 2,
    "tiB": 2,
    "truthB": 3,
    "uptoL": 2,
    "fullL": 1,
    "simpleL": 1,
}

RELATION_ARITY = {
    "prec": 2,
    "isFormL": 2,
    "isPredL": 2,
}

_FUNC_ORDER = list(FUNCTION_ARITY)
_REL_ORDER = list(RELATION_ARITY)


def _theory_of_tagged(name: str, base: str) -> theoryspec.TheorySpec | None:
    if not (name.startswith(base + "[") and name.endswith("]")):
        return None
    try:
        return theoryspec.parse_theory(name[len(base) + 1 : -1])
    except theoryspec.TheoryParseError:
        return None
    except theoryspec.InvalidCode:
        return None


def function_arity(name: str) -> int | None:
    if name in FUNCTION_ARITY:
        return FUNCTION_ARITY[name]
    if _theory_of_tagged(name, "fEnum") is not None:
        return 1
    return None


def relation_arity(name: str) -> int | None:
    if name in RELATION_ARITY:
        return RELATION_ARITY[name]
    if _theory_of_tagged(name, "prf") is not None:
        return 2
    return None


def _func_code(name: str) -> int:
    if name in FUNCTION_ARITY:
        return _FUNC_ORDER.index(name)
    theory = _theory_of_tagged(name, "fEnum")
    if theory is None:
        raise InvalidGodelCode(f"unknown function symbol {name!r}")
    return len(_FUNC_ORDER) + theoryspec.encode_theory(theory)


def _func_name(code: int) -> str | None:
    if code < len(_FUNC_ORDER):
        return _FUNC_ORDER[code]
    theory = theoryspec.decode_theory(code - len(_FUNC_ORDER))
    if theory is None:
        return None
    return f"fEnum[{theoryspec.format_theory(theory)}]"


def _rel_code(name: str) -> int:
    if name in RELATION_ARITY:
        return _REL_ORDER.index(name)
    theory = _theory_of_tagged(name, "prf")
    if theory is None:
        raise InvalidGodelCode(f"unknown relation symbol {name!r}")
    return len(_REL_ORDER) + theoryspec.encode_theory(theory)


def _rel_name(code: int) -> str | None:
    if code < len(_REL_ORDER):
        return _REL_ORDER[code]
    theory = theoryspec.decode_theory(code - len(_REL_ORDER))
    if theory is None:
        return None
    return f"prf[{theoryspec.format_theory(theory)}]"


# --- variables and substitution ----------------------------------------------


def _strip_succ(t: Term) -> tuple[int, Term]:
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.body
    return n, t


def _wrap_succ(n: int, t: Term) -> Term:
    for _ in range(n):
        t = Succ(t)
    return t


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.index,))
    if isinstance(t, Succ):
        return term_vars(_strip_succ(t)[1])
    if isinstance(t, (Add, Mul)):
        return term_vars(t.left) | term_vars(t.right)
    if isinstance(t, PRFun):
        out = frozenset()
        for a in t.args:
            out |= term_vars(a)
        return out
    return frozenset()


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, (Truth, SimpleTruth, Acc)):
        return term_vars(f.arg)
    if isinstance(f, PRRel):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, _BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, _QUANT):
        return free_vars(f.body) - {f.var}
    raise TypeError(f)


def all_vars(f: Formula) -> frozenset:
    """Free and bound variable indices, for choosing fresh names."""
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, _BINARY):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, _QUANT):
        return all_vars(f.body) | {f.var}
    return free_vars(f)


def subst_term(t: Term, var: int, repl: Term) -> Term:
    if isinstance(t, Var):
        return repl if t.index == var else t
    if isinstance(t, Succ):
        n, base = _strip_succ(t)
        new_base = subst_term(base, var, repl)
        return t if new_base is base else _wrap_succ(n, new_base)
    if isinstance(t, Add):
        return Add(subst_term(t.left, var, repl), subst_term(t.right, var, repl))
    if isinstance(t, Mul):
        return Mul(subst_term(t.left, var, repl), subst_term(t.right, var, repl))
    if isinstance(t, PRFun):
        return PRFun(t.name, tuple(subst_term(a, var, repl) for a in t.args))
    return t


def subst(f: Formula, var: int, repl: Term) -> Formula:
    """Capture-avoiding substitution of repl for the free variable var."""
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, var, repl), subst_term(f.right, var, repl))
    if isinstance(f, Truth):
        return Truth(f.level, f.index, subst_term(f.arg, var, repl))
    if isinstance(f, SimpleTruth):
        return SimpleTruth(f.level, subst_term(f.arg, var, repl))
    if isinstance(f, Acc):
        return Acc(f.level, subst_term(f.arg, var, repl))
    if isinstance(f, PRRel):
        return PRRel(f.name, tuple(subst_term(a, var, repl) for a in f.args))
    if isinstance(f, Not):
        return Not(subst(f.body, var, repl))
    if isinstance(f, _BINARY):
        return type(f)(subst(f.left, var, repl), subst(f.right, var, repl))
    if isinstance(f, _QUANT):
        if f.var == var or var not in free_vars(f.body):
            return f
        body = f.body
        bound = f.var
        if bound in term_vars(repl):
            fresh = max(all_vars(body) | term_vars(repl) | {var}) + 1
            body = subst(body, bound, Var(fresh))
            bound = fresh
        return type(f)(bound, subst(body, var, repl))
    raise TypeError(f)


def numeral(n: int) -> Term:
    """The canonical constant term for n: an n-fold successor of zero."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def denumeral(t: Term) -> int | None:
    """Inverse of numeral, None for any other term."""
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.body
    return n if isinstance(t, Zero) else None


def universal_closure(f: Formula) -> Formula:
    """Quantify every free variable, ascending index outermost first."""
    for v in sorted(free_vars(f), reverse=True):
        f = ForAll(v, f)
    return f


def is_predicate(f: Formula) -> bool:
    return len(free_vars(f)) == 1


def predicate_var(f: Formula) -> int:
    fv = free_vars(f)
    if len(fv) != 1:
        raise NotAPredicate("expected exactly one free variable")
    return next(iter(fv))


def apply_predicate(f: Formula, t: Term) -> Formula:
    return subst(f, predicate_var(f), t)


# --- language identifiers ----------------------------------------------------


@dataclass(frozen=True)
class UpTo:
    level: int
    bound: int


@dataclass(frozen=True)
class FullWithAcc:
    level: int


@dataclass(frozen=True)
class WithSimpleT:
    level: int


@dataclass(frozen=True)
class LanguageId:
    base: "LanguageId | None"
    cut: "UpTo | FullWithAcc | WithSimpleT | None"


PA_LANG = LanguageId(None, None)


def top_level(lang: LanguageId) -> int:
    return 0 if lang.cut is None else lang.cut.level


def extend_upto(base: LanguageId, bound: int) -> LanguageId:
    return LanguageId(base, UpTo(top_level(base) + 1, bound))


def extend_full(base: LanguageId) -> LanguageId:
    return LanguageId(base, FullWithAcc(top_level(base) + 1))


def extend_simple(base: LanguageId) -> LanguageId:
    return LanguageId(base, WithSimpleT(top_level(base) + 1))


def _admits(lang: LanguageId, node) -> bool:
    while True:
        if lang.cut is None:
            return False
        k = lang.cut.level
        if node.level > k:
            return False
        if node.level == k:
            if isinstance(lang.cut, UpTo):
                return isinstance(node, Truth) and ordinals.prec(node.index, lang.cut.bound)
            if isinstance(lang.cut, FullWithAcc):
                return isinstance(node, (Truth, Acc))
            return isinstance(node, SimpleTruth)
        lang = lang.base


def in_language(f: Formula, lang: LanguageId) -> bool:
    """True when every truth/acceptance symbol of f is admitted by lang."""
    if isinstance(f, (Truth, SimpleTruth, Acc)):
        return _admits(lang, f)
    if isinstance(f, Not):
        return in_language(f.body, lang)
    if isinstance(f, _BINARY):
        return in_language(f.left, lang) and in_language(f.right, lang)
    if isinstance(f, _QUANT):
        return in_language(f.body, lang)
    return True


def truth_nodes(f: Formula):
    """Yield every truth/acceptance symbol occurrence in f."""
    if isinstance(f, (Truth, SimpleTruth, Acc)):
        yield f
    elif isinstance(f, Not):
        yield from truth_nodes(f.body)
    elif isinstance(f, _BINARY):
        yield from truth_nodes(f.left)
        yield from truth_nodes(f.right)
    elif isinstance(f, _QUANT):
        yield from truth_nodes(f.body)


def max_truth_level(f: Formula) -> int:
    if isinstance(f, (Truth, SimpleTruth, Acc)):
        return f.level
    if isinstance(f, Not):
        return max_truth_level(f.body)
    if isinstance(f, _BINARY):
        return max(max_truth_level(f.left), max_truth_level(f.right))
    if isinstance(f, _QUANT):
        return max_truth_level(f.body)
    return 0


def lang_encode(lang: LanguageId) -> int:
    if lang.cut is None:
        return 0
    if isinstance(lang.cut, UpTo):
        tag, aux = 0, lang.cut.bound
    elif isinstance(lang.cut, FullWithAcc):
        tag, aux = 1, 0
    else:
        tag, aux = 2, 0
    return 1 + 3 * pair(lang_encode(lang.base), aux) + tag


def lang_decode(code: int) -> LanguageId | None:
    if code < 0:
        return None
    if code == 0:
        return PA_LANG
    tag = (code - 1) % 3
    base_code, aux = unpair((code - 1) // 3)
    base = lang_decode(base_code)
    if base is None:
        return None
    if tag == 0:
        return extend_upto(base, aux)
    if aux != 0:
        return None
    return extend_full(base) if tag == 1 else extend_simple(base)


# --- Goedel numbering --------------------------------------------------------


def term_encode(t: Term) -> int:
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Var):
        return 6 * t.index + 1
    if isinstance(t, Succ):
        n, base = _strip_succ(t)
        code = term_encode(base)
        for _ in range(n):
            code = 6 * code + 2
        return code
    if isinstance(t, Add):
        return 6 * pair(term_encode(t.left), term_encode(t.right)) + 3
    if isinstance(t, Mul):
        return 6 * pair(term_encode(t.left), term_encode(t.right)) + 4
    if isinstance(t, PRFun):
        payload = pair(_func_code(t.name), pack_list([term_encode(a) for a in t.args]))
        return 6 * payload + 5
    raise TypeError(t)


def term_decode(n: int) -> Term | None:
    if n < 0:
        return None
    tag, payload = n % 6, n // 6
    if tag == 0:
        return Zero() if payload == 0 else None
    if tag == 1:
        return Var(payload)
    if tag == 2:
        succs = 1
        while payload % 6 == 2:
            succs += 1
            payload //= 6
        body = term_decode(payload)
        return None if body is None else _wrap_succ(succs, body)
    if tag in (3, 4):
        lc, rc = unpair(payload)
        left, right = term_decode(lc), term_decode(rc)
        if left is None or right is None:
            return None
        return Add(left, right) if tag == 3 else Mul(left, right)
    fc, argsc = unpair(payload)
    name = _func_name(fc)
    if name is None:
        return None
    arg_codes = unpack_list(argsc)
    if len(arg_codes) != function_arity(name):
        return None
    args = [term_decode(c) for c in arg_codes]
    if any(a is None for a in args):
        return None
    return PRFun(name, tuple(args))


def godel_encode(f: Formula) -> int:
    if isinstance(f, Eq):
        return 12 * pair(term_encode(f.left), term_encode(f.right)) + 0
    if isinstance(f, Truth):
        return 12 * pair(f.level - 1, pair(f.index, term_encode(f.arg))) + 1
    if isinstance(f, SimpleTruth):
        return 12 * pair(f.level - 1, term_encode(f.arg)) + 2
    if isinstance(f, Acc):
        return 12 * pair(f.level - 1, term_encode(f.arg)) + 3
    if isinstance(f, PRRel):
        payload = pair(_rel_code(f.name), pack_list([term_encode(a) for a in f.args]))
        return 12 * payload + 4
    if isinstance(f, Not):
        return 12 * godel_encode(f.body) + 5
    if isinstance(f, And):
        return 12 * pair(godel_encode(f.left), godel_encode(f.right)) + 6
    if isinstance(f, Or):
        return 12 * pair(godel_encode(f.left), godel_encode(f.right)) + 7
    if isinstance(f, Implies):
        return 12 * pair(godel_encode(f.left), godel_encode(f.right)) + 8
    if isinstance(f, Iff):
        return 12 * pair(godel_encode(f.left), godel_encode(f.right)) + 9
    if isinstance(f, ForAll):
        return 12 * pair(f.var, godel_encode(f.body)) + 10
    if isinstance(f, Exists):
        return 12 * pair(f.var, godel_encode(f.body)) + 11
    raise TypeError(f)


def godel_decode(n: int) -> Formula | None:
    if n < 0:
        return None
    tag, payload = n % 12, n // 12
    if tag == 0:
        lc, rc = unpair(payload)
        left, right = term_decode(lc), term_decode(rc)
        if left is None or right is None:
            return None
        return Eq(left, right)
    if tag == 1:
        lv, rest = unpair(payload)
        idx, ac = unpair(rest)
        arg = term_decode(ac)
        return None if arg is None else Truth(lv + 1, idx, arg)
    if tag in (2, 3):
        lv, ac = unpair(payload)
        arg = term_decode(ac)
        if arg is None:
            return None
        return SimpleTruth(lv + 1, arg) if tag == 2 else Acc(lv + 1, arg)
    if tag == 4:
        rc, argsc = unpair(payload)
        name = _rel_name(rc)
        if name is None:
            return None
        arg_codes = unpack_list(argsc)
        if len(arg_codes) != relation_arity(name):
            return None
        args = [term_decode(c) for c in arg_codes]
        if any(a is None for a in args):
            return None
        return PRRel(name, tuple(args))
    if tag == 5:
        body = godel_decode(payload)
        return None if body is None else Not(body)
    if tag in (6, 7, 8, 9):
        lc, rc = unpair(payload)
        left, right = godel_decode(lc), godel_decode(rc)
        if left is None or right is None:
            return None
        cls = {6: And, 7: Or, 8: Implies, 9: Iff}[tag]
        return cls(left, right)
    var, bc = unpair(payload)
    body = godel_decode(bc)
    if body is None:
        return None
    return ForAll(var, body) if tag == 10 else Exists(var, body)


def subst_numeral(code: int, n: int) -> int:
    """The arithmetized substitution function: from the code of a predicate
    to the code of that predicate at the numeral of n."""
    f = godel_decode(code)
    if f is None or not is_predicate(f):
        raise NotAPredicate(f"code {code} does not name a predicate")
    return godel_encode(apply_predicate(f, numeral(n)))


def conj_code(code_a: int, code_b: int) -> int:
    a, b = godel_decode(code_a), godel_decode(code_b)
    if a is None or b is None:
        raise InvalidGodelCode("conjunction of non-codes")
    return godel_encode(And(a, b))


# --- text form ----------------------------------------------------------------

_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = 1, 2, 3, 4, 5, 6


def format_formula(f: Formula) -> str:
    return _fmt(f, 0)


def _fmt(f: Formula, ctx: int) -> str:
    if isinstance(f, Eq):
        return f"{format_term(f.left)} = {format_term(f.right)}"
    if isinstance(f, Truth):
        x = ordinals.decode(f.index)
        lit = ordinals.format_ordinal(x) if x is not None else f"#{f.index}"
        return f"T[{f.level},{lit}]({format_term(f.arg)})"
    if isinstance(f, SimpleTruth):
        return f"T[{f.level}]({format_term(f.arg)})"
    if isinstance(f, Acc):
        return f"Acc[{f.level}]({format_term(f.arg)})"
    if isinstance(f, PRRel):
        return f"{f.name}({','.join(format_term(a) for a in f.args)})"
    if isinstance(f, Not):
        return _wrap(f"~{_fmt(f.body, _PREC_NOT)}", _PREC_NOT, ctx)
    if isinstance(f, And):
        s = f"{_fmt(f.left, _PREC_AND)} & {_fmt(f.right, _PREC_AND + 1)}"
        return _wrap(s, _PREC_AND, ctx)
    if isinstance(f, Or):
        s = f"{_fmt(f.left, _PREC_OR)} | {_fmt(f.right, _PREC_OR + 1)}"
        return _wrap(s, _PREC_OR, ctx)
    if isinstance(f, Implies):
        s = f"{_fmt(f.left, _PREC_IMP + 1)} -> {_fmt(f.right, _PREC_IMP)}"
        return _wrap(s, _PREC_IMP, ctx)
    if isinstance(f, Iff):
        s = f"{_fmt(f.left, _PREC_IFF + 1)} <-> {_fmt(f.right, _PREC_IFF)}"
        return _wrap(s, _PREC_IFF, ctx)
    if isinstance(f, ForAll):
        return _wrap(f"forall x{f.var}. {_fmt(f.body, 0)}", 0, ctx)
    if isinstance(f, Exists):
        return _wrap(f"exists x{f.var}. {_fmt(f.body, 0)}", 0, ctx)
    raise TypeError(f)


def _wrap(s: str, prec: int, ctx: int) -> str:
    return f"({s})" if prec < ctx else s


def format_term(t: Term) -> str:
    return _fmt_term(t, 0)


def _fmt_term(t: Term, ctx: int) -> str:
    n = denumeral(t)
    if n is not None:
        return str(n)
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Succ):
        depth, base = _strip_succ(t)
        return "S(" * depth + _fmt_term(base, 0) + ")" * depth
    if isinstance(t, Add):
        s = f"{_fmt_term(t.left, 1)}+{_fmt_term(t.right, 2)}"
        return f"({s})" if ctx > 1 else s
    if isinstance(t, Mul):
        s = f"{_fmt_term(t.left, 2)}*{_fmt_term(t.right, 3)}"
        return f"({s})" if ctx > 2 else s
    if isinstance(t, PRFun):
        return f"{t.name}({','.join(_fmt_term(a, 0) for a in t.args)})"
    raise TypeError(t)


# --- parser -------------------------------------------------------------------


def _lex_formula(text: str) -> list[tuple[str, str]]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("<->", i):
            toks.append(("sym", "<->"))
            i += 3
            continue
        if text.startswith("->", i):
            toks.append(("sym", "->"))
            i += 2
            continue
        if ch in "()[],.~&|=+*#":
            toks.append(("sym", ch))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if j < n and text[j] == "[":
                depth = 0
                k = j
                while k < n:
                    if text[k] == "[":
                        depth += 1
                    elif text[k] == "]":
                        depth -= 1
                        if depth == 0:
                            break
                    k += 1
                if depth != 0:
                    raise FormulaParseError("unbalanced brackets")
                toks.append(("bname", name + "\x00" + text[j + 1 : k]))
                i = k + 1
                continue
            toks.append(("name", name))
            i = j
            continue
        raise FormulaParseError(f"bad character {ch!r}")
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, text=None):
        k, t = self.peek()
        if k is None:
            raise FormulaParseError("unexpected end of input")
        if (kind is not None and k != kind) or (text is not None and t != text):
            raise FormulaParseError(f"unexpected token {t!r}")
        self.pos += 1
        return t

    def at_sym(self, text):
        k, t = self.peek()
        return k == "sym" and t == text

    # formulas

    def formula(self) -> Formula:
        left = self.imp()
        if self.at_sym("<->"):
            self.take()
            return Iff(left, self.formula())
        return left

    def imp(self) -> Formula:
        left = self.or_()
        if self.at_sym("->"):
            self.take()
            return Implies(left, self.imp())
        return left

    def or_(self) -> Formula:
        f = self.and_()
        while self.at_sym("|"):
            self.take()
            f = Or(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.unary()
        while self.at_sym("&"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.at_sym("~"):
            self.take()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, text = self.peek()
        if kind == "name" and text in ("forall", "exists"):
            self.take()
            var = self._var_index()
            self.take("sym", ".")
            body = self.formula()
            return ForAll(var, body) if text == "forall" else Exists(var, body)
        if kind == "bname":
            base, raw = text.split("\x00", 1)
            if base == "T":
                return self._truth_atom(raw)
            if base == "Acc":
                self.take()
                level = _parse_level(raw)
                self.take("sym", "(")
                arg = self.term()
                self.take("sym", ")")
                return Acc(level, arg)
            name = f"{base}[{raw}]"
            if relation_arity(name) is not None:
                return self._rel_atom(name)
            return self._equation()
        if kind == "name" and relation_arity(text) is not None:
            return self._rel_atom(text)
        if self.at_sym("("):
            saved = self.pos
            try:
                self.take()
                f = self.formula()
                self.take("sym", ")")
            except FormulaParseError:
                self.pos = saved
                return self._equation()
            k, t = self.peek()
            if k == "sym" and t in ("=", "+", "*"):
                self.pos = saved
                return self._equation()
            return f
        return self._equation()

    def _truth_atom(self, raw: str) -> Formula:
        self.take()
        parts = _split_top_comma(raw)
        level = _parse_level(parts[0])
        self.take("sym", "(")
        arg = self.term()
        self.take("sym", ")")
        if len(parts) == 1:
            return SimpleTruth(level, arg)
        if len(parts) != 2:
            raise FormulaParseError(f"bad truth symbol T[{raw}]")
        idx_text = parts[1].strip()
        if idx_text.startswith("#"):
            if not idx_text[1:].isdigit():
                raise FormulaParseError(f"bad raw index {idx_text!r}")
            index = int(idx_text[1:])
        else:
            try:
                index = ordinals.encode(ordinals.parse_ordinal(idx_text))
            except ordinals.OrdinalParseError as e:
                raise FormulaParseError(str(e)) from None
        return Truth(level, index, arg)

    def _rel_atom(self, name: str) -> Formula:
        self.take()
        args = self._args(relation_arity(name))
        return PRRel(name, tuple(args))

    def _equation(self) -> Formula:
        left = self.term()
        self.take("sym", "=")
        right = self.term()
        return Eq(left, right)

    def _var_index(self) -> int:
        tok = self.take("name")
        if not (tok.startswith("x") and tok[1:].isdigit()):
            raise FormulaParseError(f"expected a variable, found {tok!r}")
        return int(tok[1:])

    def _args(self, arity: int) -> list:
        self.take("sym", "(")
        args = [self.term()]
        while self.at_sym(","):
            self.take()
            args.append(self.term())
        self.take("sym", ")")
        if len(args) != arity:
            raise FormulaParseError(f"expected {arity} arguments, found {len(args)}")
        return args

    # terms

    def term(self) -> Term:
        t = self.term_prod()
        while self.at_sym("+"):
            self.take()
            t = Add(t, self.term_prod())
        return t

    def term_prod(self) -> Term:
        t = self.term_atom()
        while self.at_sym("*"):
            self.take()
            t = Mul(t, self.term_atom())
        return t

    def term_atom(self) -> Term:
        kind, text = self.peek()
        if kind == "int":
            self.take()
            return numeral(int(text))
        if self.at_sym("("):
            self.take()
            t = self.term()
            self.take("sym", ")")
            return t
        if kind == "bname":
            base, raw = text.split("\x00", 1)
            name = f"{base}[{raw}]"
            arity = function_arity(name)
            if arity is None:
                raise FormulaParseError(f"unknown function symbol {name!r}")
            self.take()
            return PRFun(name, tuple(self._args(arity)))
        if kind == "name":
            if text == "S":
                self.take()
                self.take("sym", "(")
                t = self.term()
                self.take("sym", ")")
                return Succ(t)
            if text.startswith("x") and text[1:].isdigit():
                self.take()
                return Var(int(text[1:]))
            arity = function_arity(text)
            if arity is not None:
                self.take()
                return PRFun(text, tuple(self._args(arity)))
        raise FormulaParseError(f"unexpected token {text!r} in term")


def _parse_level(text: str) -> int:
    text = text.strip()
    if not text.isdigit() or int(text) < 1:
        raise FormulaParseError(f"bad level {text!r}")
    return int(text)


def _split_top_comma(raw: str) -> list[str]:
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(raw):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(raw[start:i])
            start = i + 1
    parts.append(raw[start:])
    return parts


def parse_formula(text: str) -> Formula:
    parser = _Parser(_lex_formula(text))
    f = parser.formula()
    if parser.pos != len(parser.toks):
        raise FormulaParseError(f"trailing input at {parser.peek()[1]!r}")
    return f


def parse_term(text: str) -> Term:
    parser = _Parser(_lex_formula(text))
    t = parser.term()
    if parser.pos != len(parser.toks):
        raise FormulaParseError(f"trailing input at {parser.peek()[1]!r}")
    return t
