"""Hilbert-style proof objects, the checker, and generated proof templates.

Proofs are finite line lists; a line is justified as an instance of one
of the fixed classical logic schemes, as a nonlogical axiom of the
theory under check, as an evaluator-verified computation fact, or by
modus ponens / generalization from earlier lines.  The checker insists
that every line lies in the theory's language.

The template generators produce real derivations: a linear-length proof
that strong progressivity forces a predicate at any finite position, and
a proof that progressivity yields the zero stage of the jump predicate.
Both lean only on propositional axioms, quantifier axioms, equality
(Leibniz) steps, the order facts, and closed computation equations.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import evaluator, ordinals, syntax, theories
from .coding import pair, unpair, pack_bits, unpack_bits
from .syntax import (
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    PRFun,
    PRRel,
    Term,
    Var,
    apply_predicate,
    free_vars,
    godel_decode,
    godel_encode,
    in_language,
    is_predicate,
    numeral,
    predicate_var,
    subst,
    term_vars,
)
from .theoryspec import TheorySpec, format_theory


class LanguageMismatch(ValueError):
    pass


class ProofParseError(ValueError):
    pass


# --- proof objects -----------------------------------------------------------


@dataclass(frozen=True)
class LogicAxiom:
    scheme: str


@dataclass(frozen=True)
class NonlogicalAxiom:
    pass


@dataclass(frozen=True)
class ComputationAxiom:
    pass


@dataclass(frozen=True)
class ModusPonens:
    imp: int
    ant: int


@dataclass(frozen=True)
class Generalization:
    src: int
    var: int


Justification = LogicAxiom | NonlogicalAxiom | ComputationAxiom | ModusPonens | Generalization


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class ProofError:
    line: int
    reason: str


SCHEME_IDS = (
    "p1",
    "p2",
    "p3",
    "and1",
    "and2",
    "and3",
    "or1",
    "or2",
    "or3",
    "iff1",
    "iff2",
    "iff3",
    "inst",
    "dist",
    "vac",
    "exdef",
    "eqrefl",
    "leibniz",
)


# --- scheme matchers ----------------------------------------------------------


def _match_p1(f):
    return isinstance(f, Implies) and isinstance(f.right, Implies) and f.right.right == f.left


def _match_p2(f):
    # (A -> (B -> C)) -> ((A -> B) -> (A -> C))
    if not (isinstance(f, Implies) and isinstance(f.left, Implies) and isinstance(f.left.right, Implies)):
        return False
    a, b, c = f.left.left, f.left.right.left, f.left.right.right
    rhs = f.right
    if not (isinstance(rhs, Implies) and isinstance(rhs.left, Implies) and isinstance(rhs.right, Implies)):
        return False
    return rhs.left == Implies(a, b) and rhs.right == Implies(a, c)


def _match_p3(f):
    # (~A -> ~B) -> (B -> A)
    if not (isinstance(f, Implies) and isinstance(f.left, Implies) and isinstance(f.right, Implies)):
        return False
    if not (isinstance(f.left.left, Not) and isinstance(f.left.right, Not)):
        return False
    a, b = f.left.left.body, f.left.right.body
    return f.right == Implies(b, a)


def _match_and1(f):
    return isinstance(f, Implies) and isinstance(f.left, And) and f.left.left == f.right


def _match_and2(f):
    return isinstance(f, Implies) and isinstance(f.left, And) and f.left.right == f.right


def _match_and3(f):
    # A -> (B -> A & B)
    if not (isinstance(f, Implies) and isinstance(f.right, Implies) and isinstance(f.right.right, And)):
        return False
    return f.right.right == And(f.left, f.right.left)


def _match_or1(f):
    return isinstance(f, Implies) and isinstance(f.right, Or) and f.right.left == f.left


def _match_or2(f):
    return isinstance(f, Implies) and isinstance(f.right, Or) and f.right.right == f.left


def _match_or3(f):
    # (A -> C) -> ((B -> C) -> (A | B -> C))
    if not (isinstance(f, Implies) and isinstance(f.left, Implies)):
        return False
    a, c = f.left.left, f.left.right
    rhs = f.right
    if not (isinstance(rhs, Implies) and isinstance(rhs.left, Implies) and isinstance(rhs.right, Implies)):
        return False
    b = rhs.left.left
    if rhs.left.right != c:
        return False
    return rhs.right == Implies(Or(a, b), c)


def _match_iff1(f):
    if not (isinstance(f, Implies) and isinstance(f.left, Iff)):
        return False
    return f.right == Implies(f.left.left, f.left.right)


def _match_iff2(f):
    if not (isinstance(f, Implies) and isinstance(f.left, Iff)):
        return False
    return f.right == Implies(f.left.right, f.left.left)


def _match_iff3(f):
    # (A -> B) -> ((B -> A) -> (A <-> B))
    if not (isinstance(f, Implies) and isinstance(f.left, Implies)):
        return False
    a, b = f.left.left, f.left.right
    rhs = f.right
    return rhs == Implies(Implies(b, a), Iff(a, b))


def _instance_body(body: Formula, var: int, target: Formula) -> bool:
    """target == body[var := t] for some capture-free term t."""
    found: list = []

    def walk_t(bt, ct, bound):
        if isinstance(bt, Var):
            if bt.index == var and var not in bound:
                if term_vars(ct) & bound:
                    return False
                if found:
                    return found[0] == ct
                found.append(ct)
                return True
            return bt == ct
        if type(bt) is not type(ct):
            return False
        if isinstance(bt, syntax.Zero):
            return True
        if isinstance(bt, syntax.Succ):
            na, ba = syntax._strip_succ(bt)
            nb, bb = syntax._strip_succ(ct)
            if na == nb:
                return walk_t(ba, bb, bound)
            # a variable inside the chain may absorb part of it
            if na < nb and isinstance(ba, Var):
                return walk_t(ba, syntax._wrap_succ(nb - na, bb), bound)
            return False
        if isinstance(bt, (syntax.Add, syntax.Mul)):
            return walk_t(bt.left, ct.left, bound) and walk_t(bt.right, ct.right, bound)
        if isinstance(bt, PRFun):
            if bt.name != ct.name or len(bt.args) != len(ct.args):
                return False
            return all(walk_t(x, y, bound) for x, y in zip(bt.args, ct.args))
        return False

    def walk_f(bf, cf, bound):
        if type(bf) is not type(cf):
            return False
        if isinstance(bf, Eq):
            return walk_t(bf.left, cf.left, bound) and walk_t(bf.right, cf.right, bound)
        if isinstance(bf, syntax.Truth):
            return bf.level == cf.level and bf.index == cf.index and walk_t(bf.arg, cf.arg, bound)
        if isinstance(bf, (syntax.SimpleTruth, syntax.Acc)):
            return bf.level == cf.level and walk_t(bf.arg, cf.arg, bound)
        if isinstance(bf, PRRel):
            if bf.name != cf.name or len(bf.args) != len(cf.args):
                return False
            return all(walk_t(x, y, bound) for x, y in zip(bf.args, cf.args))
        if isinstance(bf, Not):
            return walk_f(bf.body, cf.body, bound)
        if isinstance(bf, (And, Or, Implies, Iff)):
            return walk_f(bf.left, cf.left, bound) and walk_f(bf.right, cf.right, bound)
        if isinstance(bf, (ForAll, Exists)):
            if bf.var != cf.var:
                return False
            if bf.var == var:
                return bf == cf
            return walk_f(bf.body, cf.body, bound | {bf.var})
        raise TypeError(bf)

    return walk_f(body, target, frozenset())


def _match_inst(f):
    # forall x B -> B[x := t]
    if not (isinstance(f, Implies) and isinstance(f.left, ForAll)):
        return False
    return _instance_body(f.left.body, f.left.var, f.right)


def _match_dist(f):
    # forall x (A -> B) -> (forall x A -> forall x B)
    if not (isinstance(f, Implies) and isinstance(f.left, ForAll) and isinstance(f.left.body, Implies)):
        return False
    x = f.left.var
    a, b = f.left.body.left, f.left.body.right
    return f.right == Implies(ForAll(x, a), ForAll(x, b))


def _match_vac(f):
    # A -> forall x A, x not free in A
    if not (isinstance(f, Implies) and isinstance(f.right, ForAll)):
        return False
    return f.right.body == f.left and f.right.var not in free_vars(f.left)


def _match_exdef(f):
    # exists x A <-> ~forall x ~A
    if not (isinstance(f, Iff) and isinstance(f.left, Exists)):
        return False
    x, a = f.left.var, f.left.body
    return f.right == Not(ForAll(x, Not(a)))


def _match_eqrefl(f):
    return isinstance(f, Eq) and f.left == f.right


def _leibniz_body(s: Term, t: Term, bf: Formula, cf: Formula) -> bool:
    """cf arises from bf by replacing occurrences of s with t, with no
    replaced occurrence under a binder capturing variables of s or t."""
    blocked = term_vars(s) | term_vars(t)

    def walk_t(bt, ct, bound):
        if bt == ct:
            return True
        if bt == s and ct == t:
            return not (blocked & bound)
        if type(bt) is not type(ct):
            return False
        if isinstance(bt, syntax.Succ):
            na, ba = syntax._strip_succ(bt)
            nb, bb = syntax._strip_succ(ct)
            if na <= nb and walk_t(ba, syntax._wrap_succ(nb - na, bb), bound):
                return True
            if nb <= na and walk_t(syntax._wrap_succ(na - nb, ba), bb, bound):
                return True
            return False
        if isinstance(bt, (syntax.Add, syntax.Mul)):
            return walk_t(bt.left, ct.left, bound) and walk_t(bt.right, ct.right, bound)
        if isinstance(bt, PRFun):
            if bt.name != ct.name or len(bt.args) != len(ct.args):
                return False
            return all(walk_t(x, y, bound) for x, y in zip(bt.args, ct.args))
        return False

    def walk_f(bf2, cf2, bound):
        if bf2 == cf2:
            return True
        if type(bf2) is not type(cf2):
            return False
        if isinstance(bf2, Eq):
            return walk_t(bf2.left, cf2.left, bound) and walk_t(bf2.right, cf2.right, bound)
        if isinstance(bf2, syntax.Truth):
            return bf2.level == cf2.level and bf2.index == cf2.index and walk_t(bf2.arg, cf2.arg, bound)
        if isinstance(bf2, (syntax.SimpleTruth, syntax.Acc)):
            return bf2.level == cf2.level and walk_t(bf2.arg, cf2.arg, bound)
        if isinstance(bf2, PRRel):
            if bf2.name != cf2.name or len(bf2.args) != len(cf2.args):
                return False
            return all(walk_t(x, y, bound) for x, y in zip(bf2.args, cf2.args))
        if isinstance(bf2, Not):
            return walk_f(bf2.body, cf2.body, bound)
        if isinstance(bf2, (And, Or, Implies, Iff)):
            return walk_f(bf2.left, cf2.left, bound) and walk_f(bf2.right, cf2.right, bound)
        if isinstance(bf2, (ForAll, Exists)):
            if bf2.var != cf2.var:
                return False
            return walk_f(bf2.body, cf2.body, bound | {bf2.var})
        raise TypeError(bf2)

    return walk_f(bf, cf, frozenset())


def _match_leibniz(f):
    # s = t -> (B -> C) with C = B[s ~> t]
    if not (isinstance(f, Implies) and isinstance(f.left, Eq) and isinstance(f.right, Implies)):
        return False
    return _leibniz_body(f.left.left, f.left.right, f.right.left, f.right.right)


_SCHEME_MATCHERS = {
    "p1": _match_p1,
    "p2": _match_p2,
    "p3": _match_p3,
    "and1": _match_and1,
    "and2": _match_and2,
    "and3": _match_and3,
    "or1": _match_or1,
    "or2": _match_or2,
    "or3": _match_or3,
    "iff1": _match_iff1,
    "iff2": _match_iff2,
    "iff3": _match_iff3,
    "inst": _match_inst,
    "dist": _match_dist,
    "vac": _match_vac,
    "exdef": _match_exdef,
    "eqrefl": _match_eqrefl,
    "leibniz": _match_leibniz,
}


# --- checker -------------------------------------------------------------------


def check(theory: TheorySpec, proof: Proof) -> Valid | ProofError:
    """Validate every line of the proof against the theory."""
    if not proof.lines:
        return ProofError(0, "empty proof")
    lang = theories.language_of(theory)
    for idx, line in enumerate(proof.lines):
        f = line.formula
        if not in_language(f, lang):
            return ProofError(idx, f"formula outside the language of {format_theory(theory)}")
        j = line.just
        if isinstance(j, LogicAxiom):
            matcher = _SCHEME_MATCHERS.get(j.scheme)
            if matcher is None:
                return ProofError(idx, f"unknown logic scheme {j.scheme!r}")
            if not matcher(f):
                return ProofError(idx, f"not an instance of scheme {j.scheme}")
        elif isinstance(j, NonlogicalAxiom):
            res = theories.axiom_check(theory, f)
            if isinstance(res, theories.Reject):
                return ProofError(idx, f"not a nonlogical axiom: {res.reason}")
        elif isinstance(j, ComputationAxiom):
            if not evaluator.is_computation_fact(f):
                return ProofError(idx, "not an evaluator-verified closed literal")
        elif isinstance(j, ModusPonens):
            if not (0 <= j.imp < idx and 0 <= j.ant < idx):
                return ProofError(idx, "modus ponens references must point backward")
            imp = proof.lines[j.imp].formula
            if not isinstance(imp, Implies):
                return ProofError(idx, "first reference is not an implication")
            if proof.lines[j.ant].formula != imp.left:
                return ProofError(idx, "antecedent line does not match")
            if imp.right != f:
                return ProofError(idx, "conclusion does not match the implication")
        elif isinstance(j, Generalization):
            if not 0 <= j.src < idx:
                return ProofError(idx, "generalization reference must point backward")
            if f != ForAll(j.var, proof.lines[j.src].formula):
                return ProofError(idx, "not the generalization of the referenced line")
        else:
            return ProofError(idx, "unknown justification")
    return Valid()


# --- derivation builder ---------------------------------------------------------


class _Deriv:
    """Emit checkable lines; the derived steps are standard implication
    plumbing over the p1/p2 axioms."""

    def __init__(self):
        self.lines: list[ProofLine] = []

    def proof(self) -> Proof:
        return Proof(tuple(self.lines))

    def _f(self, i: int) -> Formula:
        return self.lines[i].formula

    def raw(self, f: Formula, just: Justification) -> int:
        self.lines.append(ProofLine(f, just))
        return len(self.lines) - 1

    def la(self, scheme: str, f: Formula) -> int:
        return self.raw(f, LogicAxiom(scheme))

    def ax(self, f: Formula) -> int:
        return self.raw(f, NonlogicalAxiom())

    def comp(self, f: Formula) -> int:
        return self.raw(f, ComputationAxiom())

    def mp(self, imp: int, ant: int) -> int:
        target = self._f(imp)
        assert isinstance(target, Implies) and self._f(ant) == target.left
        return self.raw(target.right, ModusPonens(imp, ant))

    def gen(self, src: int, var: int) -> int:
        return self.raw(ForAll(var, self._f(src)), Generalization(src, var))

    def p1(self, a: Formula, b: Formula) -> int:
        return self.la("p1", Implies(a, Implies(b, a)))

    def p2(self, a: Formula, b: Formula, c: Formula) -> int:
        return self.la(
            "p2",
            Implies(Implies(a, Implies(b, c)), Implies(Implies(a, b), Implies(a, c))),
        )

    def ident(self, a: Formula) -> int:
        # |- a -> a
        i1 = self.p1(a, Implies(a, a))
        i2 = self.p2(a, Implies(a, a), a)
        i3 = self.mp(i2, i1)
        i4 = self.p1(a, a)
        return self.mp(i3, i4)

    def weaken(self, src: int, h: Formula) -> int:
        # |- x  =>  |- h -> x
        x = self._f(src)
        return self.mp(self.p1(x, h), src)

    def hs(self, first: int, second: int) -> int:
        # |- x -> y, |- y -> z  =>  |- x -> z
        fx = self._f(first)
        x, y = fx.left, fx.right
        z = self._f(second).right
        w = self.weaken(second, x)
        step = self.p2(x, y, z)
        return self.mp(self.mp(step, w), first)

    def swap(self, src: int) -> int:
        # |- x -> (y -> z)  =>  |- y -> (x -> z)
        f = self._f(src)
        x, y, z = f.left, f.right.left, f.right.right
        c = self.mp(self.p2(x, y, z), src)  # (x -> y) -> (x -> z)
        d = self.p1(y, x)  # y -> (x -> y)
        return self.hs(d, c)

    def lift(self, src: int, h: Formula) -> int:
        # |- x -> y  =>  |- (h -> x) -> (h -> y)
        f = self._f(src)
        w = self.weaken(src, h)
        return self.mp(self.p2(h, f.left, f.right), w)

    def mp_under(self, imp: int, ant: int) -> int:
        # |- p -> (x -> y), |- p -> x  =>  |- p -> y
        f = self._f(imp)
        p, x, y = f.left, f.right.left, f.right.right
        c = self.mp(self.p2(p, x, y), imp)
        return self.mp(c, ant)

    def mp_under2(self, imp: int, ant: int) -> int:
        # |- p -> (h -> (x -> y)), |- p -> (h -> x)  =>  |- p -> (h -> y)
        f = self._f(imp)
        h, x, y = f.right.left, f.right.right.left, f.right.right.right
        step = self.p2(h, x, y)  # (h -> (x -> y)) -> ((h -> x) -> (h -> y))
        c = self.hs(imp, step)
        return self.mp_under(c, ant)

    def weaken_inner(self, src: int, h: Formula) -> int:
        # |- p -> z  =>  |- p -> (h -> z)
        f = self._f(src)
        step = self.p1(f.right, h)  # z -> (h -> z)
        return self.hs(src, step)

    def precompose(self, src: int, z: Formula) -> int:
        # |- x -> d  =>  |- (d -> z) -> (x -> z)
        f = self._f(src)
        x, d = f.left, f.right
        a1 = self.p2(x, d, z)
        a2 = self.swap(a1)  # (x -> d) -> ((x -> (d -> z)) -> (x -> z))
        a3 = self.mp(a2, src)
        a4 = self.p1(Implies(d, z), x)
        return self.hs(a4, a3)

    def dist_under(self, h: Formula, var: int, body: Formula) -> int:
        # |- forall var (h -> body) -> (h -> forall var body); var not free in h
        a = self.la(
            "dist",
            Implies(
                ForAll(var, Implies(h, body)),
                Implies(ForAll(var, h), ForAll(var, body)),
            ),
        )
        b = self.la("vac", Implies(h, ForAll(var, h)))
        c = self.swap(a)
        d = self.hs(b, c)
        return self.swap(d)

    def gen_under(self, prefixes: list[Formula], src: int, var: int) -> int:
        # |- h1 -> (... -> f)  =>  |- h1 -> (... -> forall var f)
        if not prefixes:
            return self.gen(src, var)
        for h in prefixes:
            assert var not in free_vars(h)
        body = self._f(src)
        for h in prefixes:
            assert body.left == h
            body = body.right
        # body is now the bare f
        cur = self.gen(src, var)  # forall var (h1 -> rest)
        rest = self._f(src).right
        t = self.dist_under(prefixes[0], var, rest)
        cur = self.mp(t, cur)  # h1 -> forall var rest
        for depth in range(1, len(prefixes)):
            inner = rest.right
            t = self.dist_under(prefixes[depth], var, inner)
            for h in reversed(prefixes[:depth]):
                t = self.lift(t, h)
            cur = self.mp(t, cur)
            rest = inner
        return cur


# --- templates -------------------------------------------------------------------


def _position_codes(n: int) -> list[int]:
    return [ordinals.encode(ordinals.fin(k)) for k in range(n + 1)]


def _prec_atom(a: Term, b: Term) -> Formula:
    return PRRel("prec", (a, b))


def _validate_template_inputs(pred: Formula, theory: TheorySpec) -> None:
    if not is_predicate(pred):
        raise syntax.NotAPredicate("templates need a predicate")
    if not in_language(pred, theories.language_of(theory)):
        raise LanguageMismatch("predicate is not in the language of the theory")


def template_prog_numeral(pred: Formula, n: int, theory: TheorySpec) -> Proof:
    """A checked proof that strong progressivity of the predicate implies
    the predicate at the finite position n; length is linear in n."""
    _validate_template_inputs(pred, theory)
    if n < 0:
        raise ValueError("position must be non-negative")
    prog = theories.progressivity(pred)
    v, u = prog.var, prog.body.left.var

    def a_at(t: Term) -> Formula:
        return apply_predicate(pred, t)

    def l_at(t: Term) -> Formula:
        return ForAll(u, Implies(_prec_atom(Var(u), t), a_at(Var(u))))

    codes = _position_codes(n)
    d = _Deriv()

    # stage 0: nothing precedes the least position
    min_ax = d.ax(theories._ORDER_MIN)
    mbody = Not(_prec_atom(Var(u), numeral(0)))
    i1 = d.la("inst", Implies(theories._ORDER_MIN, mbody))
    i2 = d.mp(i1, min_ax)
    x = _prec_atom(Var(u), numeral(0))
    y = a_at(Var(u))
    a1 = d.p1(Not(x), Not(y))
    a2 = d.la("p3", Implies(Implies(Not(y), Not(x)), Implies(x, y)))
    a3 = d.hs(a1, a2)
    a4 = d.mp(a3, i2)
    l0 = d.gen(a4, u)  # |- L(0)

    t0 = numeral(codes[0])
    q = d.la("inst", Implies(prog, Iff(l_at(t0), a_at(t0))))
    f1 = d.la("iff1", Implies(Iff(l_at(t0), a_at(t0)), Implies(l_at(t0), a_at(t0))))
    f2 = d.hs(q, f1)  # prog -> (L(0) -> A(0))
    f3 = d.weaken(l0, prog)  # prog -> L(0)
    cur_a = d.mp_under(f2, f3)  # prog -> A(0)
    cur_l = f3

    for k in range(n):
        tm = numeral(codes[k])
        tm2 = numeral(codes[k + 1])
        step_ax = d.ax(theories.step_fact(codes[k]))
        sbody = Implies(
            _prec_atom(Var(u), tm2), Or(_prec_atom(Var(u), tm), Eq(Var(u), tm))
        )
        s1 = d.la("inst", Implies(theories.step_fact(codes[k]), sbody))
        s2 = d.mp(s1, step_ax)

        b1 = d.la("inst", Implies(l_at(tm), Implies(_prec_atom(Var(u), tm), a_at(Var(u)))))
        b2 = d.hs(cur_l, b1)  # prog -> (prec(u, k) -> A(u))

        au = a_at(Var(u))
        eq = Eq(Var(u), tm)
        e1 = d.la("leibniz", Implies(eq, Implies(Implies(au, au), Implies(a_at(tm), au))))
        e2 = d.ident(au)
        e3 = d.mp_under(e1, d.weaken(e2, eq))  # eq -> (A(k) -> A(u))
        e4 = d.swap(e3)  # A(k) -> (eq -> A(u))
        e5 = d.hs(cur_a, e4)  # prog -> (eq -> A(u))

        dk = Or(_prec_atom(Var(u), tm), eq)
        o1 = d.la(
            "or3",
            Implies(
                Implies(_prec_atom(Var(u), tm), au),
                Implies(Implies(eq, au), Implies(dk, au)),
            ),
        )
        o2 = d.hs(b2, o1)
        o3 = d.mp_under(o2, e5)  # prog -> (D -> A(u))
        o4 = d.swap(o3)  # D -> (prog -> A(u))
        o5 = d.hs(s2, o4)  # prec(u, k+1) -> (prog -> A(u))
        o6 = d.swap(o5)  # prog -> (prec(u, k+1) -> A(u))
        cur_l = d.gen_under([prog], o6, u)  # prog -> L(k+1)

        q2 = d.la("inst", Implies(prog, Iff(l_at(tm2), a_at(tm2))))
        g1 = d.la("iff1", Implies(Iff(l_at(tm2), a_at(tm2)), Implies(l_at(tm2), a_at(tm2))))
        g2 = d.hs(q2, g1)
        cur_a = d.mp_under(g2, cur_l)  # prog -> A(k+1)

    return d.proof()


def template_jump_base(pred: Formula, theory: TheorySpec) -> Proof:
    """A checked proof that strong progressivity of the predicate implies
    the zero stage of its jump predicate."""
    _validate_template_inputs(pred, theory)
    prog = theories.progressivity(pred)
    v, u = prog.var, prog.body.left.var
    jump = theories.jump_predicate(pred)
    bv = predicate_var(jump)
    target = subst(jump, bv, numeral(0))

    def a_at(t: Term) -> Formula:
        return apply_predicate(pred, t)

    def l_at(t: Term) -> Formula:
        return ForAll(u, Implies(_prec_atom(Var(u), t), a_at(Var(u))))

    one = numeral(ordinals.encode(ordinals.ONE))
    succ_term = PRFun("oadd", (Var(v), one))

    d = _Deriv()
    # prog -> (A(v) -> L(v)) via the backward half of the biconditional
    qv = d.la("inst", Implies(prog, Iff(l_at(Var(v)), a_at(Var(v)))))
    r1 = d.hs(qv, d.la("iff2", Implies(Iff(l_at(Var(v)), a_at(Var(v))), Implies(a_at(Var(v)), l_at(Var(v))))))
    # prog -> (L(v+1) -> A(v+1))
    qt = d.la("inst", Implies(prog, Iff(l_at(succ_term), a_at(succ_term))))
    r2 = d.hs(qt, d.la("iff1", Implies(Iff(l_at(succ_term), a_at(succ_term)), Implies(l_at(succ_term), a_at(succ_term)))))

    # successor upper bound, instantiated at v and u
    succ_ax = d.ax(theories._ORDER_SUCC)
    succ_row = theories._ORDER_SUCC.body
    succ_at_v = subst(succ_row, 0, Var(v))
    s1 = d.la("inst", Implies(theories._ORDER_SUCC, succ_at_v))
    s2 = d.mp(s1, succ_ax)
    s3 = d.la("inst", Implies(succ_at_v, subst(succ_at_v.body, 1, Var(u))))
    s4 = d.mp(s3, s2)  # prec(u, oadd(v,1)) -> (prec(u,v) | u = v)

    av = a_at(Var(v))
    au = a_at(Var(u))
    # prec branch under prog and A(v)
    b1 = d.la("inst", Implies(l_at(Var(v)), Implies(_prec_atom(Var(u), Var(v)), au)))
    lifted = d.lift(b1, av)  # (A(v) -> L(v)) -> (A(v) -> (prec -> A(u)))
    c1 = d.hs(r1, lifted)  # prog -> (A(v) -> (prec(u,v) -> A(u)))

    # equality branch: A(v) -> (u = v -> A(u)), weakened under prog
    eq = Eq(Var(u), Var(v))
    e1 = d.la("leibniz", Implies(eq, Implies(Implies(au, au), Implies(av, au))))
    e2 = d.ident(au)
    e3 = d.mp_under(e1, d.weaken(e2, eq))
    e4 = d.swap(e3)  # A(v) -> (eq -> A(u))
    e5 = d.weaken(e4, prog)  # prog -> (A(v) -> (eq -> A(u)))

    dk = Or(_prec_atom(Var(u), Var(v)), eq)
    o1 = d.la(
        "or3",
        Implies(
            Implies(_prec_atom(Var(u), Var(v)), au),
            Implies(Implies(eq, au), Implies(dk, au)),
        ),
    )
    lo = d.lift(o1, av)
    lo2 = d.hs(c1, lo)  # prog -> (A(v) -> ((eq -> A(u)) -> (D -> A(u))))
    m1 = d.mp_under2(lo2, e5)  # prog -> (A(v) -> (D -> A(u)))

    # compose with the successor bound
    pc = d.precompose(s4, au)  # (D -> A(u)) -> (prec(u, v+1) -> A(u))
    pc1 = d.lift(pc, av)
    pc2 = d.lift(pc1, prog)
    m2 = d.mp(pc2, m1)  # prog -> (A(v) -> (prec(u, v+1) -> A(u)))

    m3 = d.gen_under([prog, av], m2, u)  # prog -> (A(v) -> L(v+1))
    r2w = d.weaken_inner(r2, av)  # prog -> (A(v) -> (L(v+1) -> A(v+1)))
    r2c = d.hs(r2w, d.p2(av, l_at(succ_term), a_at(succ_term)))
    r2w2 = d.mp_under(r2c, m3)  # prog -> (A(v) -> A(oadd(v, 1)))
    m5 = d.gen_under([prog], r2w2, v)  # prog -> forall v (A(v) -> A(v+1))

    # rewrite oadd(v, 1) into oadd(v, oexp(w, 0)) via a computation equation
    w_code_term = numeral(ordinals.encode(ordinals.W))
    exp_term = PRFun("oexp", (w_code_term, numeral(0)))
    have = ForAll(v, Implies(av, a_at(succ_term)))
    eq_comp = d.comp(Eq(one, exp_term))
    lb = d.la("leibniz", Implies(Eq(one, exp_term), Implies(have, target)))
    l2 = d.mp(lb, eq_comp)
    d.hs(m5, l2)  # prog -> target
    return d.proof()


def omega_tower(n: int) -> ordinals.Ordinal:
    """The n-story exponential tower over the first limit ordinal."""
    if n < 1:
        raise ValueError("towers have at least one story")
    t = ordinals.W
    for _ in range(n - 1):
        t = ordinals.exp(ordinals.W, t)
    return t


# --- text form -------------------------------------------------------------------


def format_proof(proof: Proof) -> str:
    out = []
    for idx, line in enumerate(proof.lines):
        out.append(f"#{idx} {syntax.format_formula(line.formula)} ; {_format_just(line.just)}")
    return "\n".join(out) + "\n"


def _format_just(j: Justification) -> str:
    if isinstance(j, LogicAxiom):
        return f"LA:{j.scheme}"
    if isinstance(j, NonlogicalAxiom):
        return "AX"
    if isinstance(j, ComputationAxiom):
        return "COMP"
    if isinstance(j, ModusPonens):
        return f"MP {j.imp} {j.ant}"
    if isinstance(j, Generalization):
        return f"GEN {j.src} x{j.var}"
    raise TypeError(j)


def parse_proof(text: str) -> Proof:
    lines = []
    for raw in text.splitlines():
        raw = raw.strip()
        if not raw:
            continue
        if not raw.startswith("#"):
            raise ProofParseError("every line starts with #<index>")
        head, sep, just_text = raw.rpartition(";")
        if not sep:
            raise ProofParseError("missing justification separator")
        head = head.strip()
        idx_text, _, formula_text = head.partition(" ")
        if not idx_text[1:].isdigit():
            raise ProofParseError(f"bad line index {idx_text!r}")
        if int(idx_text[1:]) != len(lines):
            raise ProofParseError("line indices must be consecutive from 0")
        try:
            f = syntax.parse_formula(formula_text.strip())
        except syntax.FormulaParseError as e:
            raise ProofParseError(f"line {len(lines)}: {e}") from None
        lines.append(ProofLine(f, _parse_just(just_text.strip())))
    if not lines:
        raise ProofParseError("empty proof")
    return Proof(tuple(lines))


def _parse_just(text: str) -> Justification:
    if text == "AX":
        return NonlogicalAxiom()
    if text == "COMP":
        return ComputationAxiom()
    if text.startswith("LA:"):
        scheme = text[3:]
        if scheme not in SCHEME_IDS:
            raise ProofParseError(f"unknown scheme {scheme!r}")
        return LogicAxiom(scheme)
    parts = text.split()
    if len(parts) == 3 and parts[0] == "MP" and parts[1].isdigit() and parts[2].isdigit():
        return ModusPonens(int(parts[1]), int(parts[2]))
    if len(parts) == 3 and parts[0] == "GEN" and parts[1].isdigit():
        var = parts[2]
        if var.startswith("x") and var[1:].isdigit():
            return Generalization(int(parts[1]), int(var[1:]))
    raise ProofParseError(f"bad justification {text!r}")


# --- numeric form (for the provability relation) -----------------------------------


def _just_encode(j: Justification) -> int:
    if isinstance(j, LogicAxiom):
        return 5 * SCHEME_IDS.index(j.scheme) + 0
    if isinstance(j, NonlogicalAxiom):
        return 5 * 0 + 1
    if isinstance(j, ComputationAxiom):
        return 5 * 0 + 2
    if isinstance(j, ModusPonens):
        return 5 * pair(j.imp, j.ant) + 3
    return 5 * pair(j.src, j.var) + 4


def _just_decode(code: int) -> Justification | None:
    tag, payload = code % 5, code // 5
    if tag == 0:
        return LogicAxiom(SCHEME_IDS[payload]) if payload < len(SCHEME_IDS) else None
    if tag == 1:
        return NonlogicalAxiom() if payload == 0 else None
    if tag == 2:
        return ComputationAxiom() if payload == 0 else None
    a, b = unpair(payload)
    return ModusPonens(a, b) if tag == 3 else Generalization(a, b)


def proof_encode(proof: Proof) -> int:
    # lines are long, so the list layer uses the linear bit packing; each
    # line interleaves its formula code and justification code the same way
    items = []
    for line in proof.lines:
        items.append(godel_encode(line.formula))
        items.append(_just_encode(line.just))
    return pack_bits(items)


def proof_decode(code: int) -> Proof | None:
    items = unpack_bits(code)
    if items is None or len(items) % 2:
        return None
    lines = []
    for fc, jc in zip(items[0::2], items[1::2]):
        f = godel_decode(fc)
        j = _just_decode(jc)
        if f is None or j is None:
            return None
        lines.append(ProofLine(f, j))
    return Proof(tuple(lines))
