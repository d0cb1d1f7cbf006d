"""The truth-theory hierarchy: axiom recognizers and enumerators for every
system, together with constructors for the named predicates and the
statements of the main results.

Axiom groups that the source material states as "a single axiom" are
realized literally: one canonical closed formula that quantifies over
Goedel codes through the designated symbols (code builders, the
substitution function, the per-theory axiom enumerator), with restricted
quantifiers rendered as guards.  Scheme groups (induction, the truth
definition and its relatives) are recognized structurally.  Order facts
about the coded ordering that the systems are entitled to (a least
element, successor bounds, finite initial segments) are carried in the
``LogicComputation`` group alongside evaluator-verified closed literals;
these are provable in the ground arithmetic and are axiomatized here as
the arithmetization boundary of the artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import evaluator, ordinals, syntax
from .coding import unpair
from .syntax import (
    Acc,
    And,
    Eq,
    ForAll,
    Formula,
    Iff,
    Implies,
    LanguageId,
    Not,
    PA_LANG,
    PRFun,
    PRRel,
    SimpleTruth,
    Succ,
    Term,
    Truth,
    Var,
    Zero,
    all_vars,
    apply_predicate,
    extend_full,
    extend_simple,
    extend_upto,
    free_vars,
    godel_decode,
    godel_encode,
    in_language,
    is_predicate,
    numeral,
    denumeral,
    predicate_var,
    subst,
    truth_nodes,
    universal_closure,
)
from .theoryspec import (
    PA,
    SubsystemS,
    Tarski,
    TarskiIter,
    TarskiOrd,
    TheorySpec,
    InvalidCode,
    format_theory,
    normalize,
)


class OutOfRange(ValueError):
    pass


class LanguageMismatch(ValueError):
    pass


class AxiomGroup(Enum):
    PR_DEFINITION = "PRDefinition"
    INDUCTION = "InductionScheme"
    LOGIC_COMPUTATION = "LogicComputation"
    AXIOMS_TRUE = "TarskiAxiomsTrue"
    DEDUCTION = "TarskiDeduction"
    OMEGA_RULE = "OmegaRule"
    T_SCHEME = "TScheme"
    TRUTH_OF_INDUCTION = "TruthOfInduction"
    CROSS_T_SCHEME = "SaCrossLevelTScheme"
    PERSISTENCE = "SaPersistence"
    PROG_ACC = "ProgAcc"
    ACC_GATE = "AccGate"


@dataclass(frozen=True)
class Accept:
    tag: AxiomGroup


@dataclass(frozen=True)
class Reject:
    reason: str


GAMMA0_CODE = ordinals.encode(ordinals.GAMMA0)
_W_CODE = ordinals.encode(ordinals.W)
_NUMERAL_CUTOFF = 2048


# --- constant terms for positions and languages -----------------------------


def _fin_code_term(m: int) -> Term:
    code = 2 * m - 1
    if code < _NUMERAL_CUTOFF:
        return numeral(code)
    h = m // 2
    return PRFun("oadd", (_fin_code_term(m - h), _fin_code_term(h)))


def ordinal_code_term(x: ordinals.Ordinal) -> Term:
    """A compact closed term evaluating to encode(x)."""
    if isinstance(x, ordinals.Zero):
        return numeral(0)
    if isinstance(x, ordinals.Gamma0Top):
        return numeral(GAMMA0_CODE)
    f = ordinals.as_finite(x)
    if f is not None:
        return _fin_code_term(f)
    parts = []
    for t in x.terms:
        base = PRFun("ophi", (ordinal_code_term(t.sub), ordinal_code_term(t.arg)))
        if t.count > 1:
            base = PRFun("omul", (base, _fin_code_term(t.count)))
        parts.append(base)
    term = parts[-1]
    for p in reversed(parts[:-1]):
        term = PRFun("oadd", (p, term))
    return term


def position_term(code: int) -> Term:
    """Canonical constant term for a coded position: a plain numeral for
    small codes, a designated-arithmetic term otherwise."""
    if code < 0:
        raise InvalidCode("positions are non-negative")
    if code < _NUMERAL_CUTOFF:
        return numeral(code)
    x = ordinals.decode(code)
    if x is None:
        raise InvalidCode(f"no compact constant for large invalid position {code}")
    return ordinal_code_term(x)


def lang_code_term(lang: LanguageId) -> Term:
    if lang.cut is None:
        return numeral(0)
    base = lang_code_term(lang.base)
    if isinstance(lang.cut, syntax.UpTo):
        return PRFun("uptoL", (base, position_term(lang.cut.bound)))
    if isinstance(lang.cut, syntax.FullWithAcc):
        return PRFun("fullL", (base,))
    return PRFun("simpleL", (base,))


def _prec(a: Term, b: Term) -> Formula:
    return PRRel("prec", (a, b))


# --- languages ----------------------------------------------------------------


@lru_cache(maxsize=None)
def language_of(theory: TheorySpec) -> LanguageId:
    theory = normalize(theory)
    if isinstance(theory, PA):
        return PA_LANG
    if isinstance(theory, Tarski):
        return extend_simple(language_of(theory.inner))
    if isinstance(theory, SubsystemS):
        return extend_upto(language_of(theory.inner), ordinals.succ_code(theory.index))
    if isinstance(theory, TarskiOrd):
        return extend_full(language_of(theory.inner))
    raise TypeError(theory)


def _new_level(inner: TheorySpec) -> int:
    return syntax.top_level(language_of(inner)) + 1


def _acc_only_ok(f: Formula, level: int, base: LanguageId) -> bool:
    # induction language of the bundled theory: the base language plus the
    # acceptance predicate, with the new truth symbols excluded
    for node in truth_nodes(f):
        if node.level > level:
            return False
        if node.level == level:
            if not isinstance(node, Acc):
                return False
        elif not syntax._admits(base, node):
            return False
    return True


# --- named predicates ---------------------------------------------------------


def _fresh_pair(pred: Formula) -> tuple[int, int]:
    top = max(all_vars(pred), default=-1)
    return top + 2, top + 3


def progressivity(pred: Formula) -> Formula:
    """The strong (biconditional) progressivity sentence for a predicate."""
    v, u = _fresh_pair(pred)
    below = ForAll(u, Implies(_prec(Var(u), Var(v)), apply_predicate(pred, Var(u))))
    return ForAll(v, Iff(below, apply_predicate(pred, Var(v))))


def progressivity_up_to(pred: Formula, bound_code: int) -> Formula:
    """Strong progressivity restricted to positions below a bound."""
    v, u = _fresh_pair(pred)
    below = ForAll(u, Implies(_prec(Var(u), Var(v)), apply_predicate(pred, Var(u))))
    body = Implies(_prec(Var(v), position_term(bound_code)), Iff(below, apply_predicate(pred, Var(v))))
    return ForAll(v, body)


def reach_predicate(a_code: int, c_code: int) -> Formula:
    """Predicate in b: every progressive predicate of the stage language
    with index omega^a * c provably reaches phi_a(b) under that stage's
    truth predicate.  Free variable x0."""
    xa = ordinals.decode(a_code)
    xc = ordinals.decode(c_code)
    if xa is None or xc is None:
        raise InvalidCode("reach predicate needs valid ordinal codes")
    if isinstance(xa, ordinals.Gamma0Top) or isinstance(xc, ordinals.Gamma0Top):
        raise ordinals.OverflowBeyondGamma0("reach indices must lie below the top ordinal")
    u = ordinals.encode(ordinals.index_of(xa, xc))
    lang_term = lang_code_term(extend_upto(PA_LANG, u))
    value = PRFun("ophi", (position_term(a_code), Var(0)))
    inner_code = PRFun("impB", (PRFun("progB", (Var(1),)), PRFun("g", (Var(1), value))))
    return ForAll(1, Implies(PRRel("isPredL", (lang_term, Var(1))), Truth(1, u, inner_code)))


def reach_progressivity(c0_code: int | None = None) -> Formula:
    """Predicate in a: for every stage multiplier below the top ordinal,
    the top truth predicate affirms that the reach predicate is
    progressive.  Free variable x0."""
    if c0_code is not None and c0_code != GAMMA0_CODE:
        raise InvalidCode("the exponentiation-stable bound is fixed at Gamma_0")
    inner = PRFun("progB", (PRFun("bB", (Var(0), Var(1))),))
    body = Implies(_prec(Var(1), position_term(GAMMA0_CODE)), Truth(1, GAMMA0_CODE, inner))
    return ForAll(1, body)


def jump_predicate(pred: Formula) -> Formula:
    """Predicate in b: the input predicate propagates along adding
    omega^b.  Free variable is the second fresh index."""
    av, bv = _fresh_pair(pred)
    shifted = PRFun("oadd", (Var(av), PRFun("oexp", (numeral(_W_CODE), Var(bv)))))
    return ForAll(av, Implies(apply_predicate(pred, Var(av)), apply_predicate(pred, shifted)))


def shift_predicate(pred: Formula, base_code: int) -> Formula:
    """The input predicate precomposed with adding a fixed position."""
    if ordinals.decode(base_code) is None:
        raise InvalidCode("shift base must be a valid code")
    x = predicate_var(pred)
    return subst(pred, x, PRFun("oadd", (position_term(base_code), Var(x))))


def induction_instance(pred: Formula, var: int) -> Formula:
    base = subst(pred, var, Zero())
    step = ForAll(var, Implies(pred, subst(pred, var, Succ(Var(var)))))
    return Implies(And(base, step), ForAll(var, pred))


# --- statements of the main results -------------------------------------------


def transfinite_induction_statement(bound_code: int, pred: Formula) -> Formula:
    """Strong progressivity up to the bound implies the predicate holds
    strictly below the bound."""
    if ordinals.decode(bound_code) is None:
        raise InvalidCode("bound must be a valid code")
    if not is_predicate(pred):
        raise syntax.NotAPredicate("transfinite induction needs a predicate")
    v, _ = _fresh_pair(pred)
    concl = ForAll(v, Implies(_prec(Var(v), position_term(bound_code)), apply_predicate(pred, Var(v))))
    return Implies(progressivity_up_to(pred, bound_code), concl)


def soundness_statement(a_code: int, b_code: int) -> Formula:
    """Every theorem of the stage-b system is true at stage a (b below a)."""
    if ordinals.decode(a_code) is None or ordinals.decode(b_code) is None:
        raise OutOfRange("stage indices must be valid codes")
    if not ordinals.prec(b_code, a_code):
        raise OutOfRange("the lower stage must precede the higher stage")
    desc = format_theory(SubsystemS(PA(), b_code))
    proved = PRRel(f"prf[{desc}]", (Var(0), Var(1)))
    return ForAll(0, ForAll(1, Implies(proved, Truth(1, a_code, Var(1)))))


def reach_progressive_statement() -> Formula:
    """Acceptance of the top stage implies the reach-progressivity
    predicate is progressive up to the top ordinal."""
    c = reach_progressivity()
    return Implies(Acc(1, position_term(GAMMA0_CODE)), progressivity_up_to(c, GAMMA0_CODE))


def induction_transfer_statement(n: int) -> Formula:
    """Stage n of the bootstrapping: transfinite induction for ground
    predicates up to the next gamma value, affirmed under the top truth
    predicate.  Defined for n >= 2."""
    if n < 2:
        raise OutOfRange("the transfer step starts at 2")
    target = ordinals.encode(ordinals.gamma(n + 1))
    inner = PRFun("tiB", (position_term(target), Var(0)))
    guard = PRRel("isPredL", (lang_code_term(PA_LANG), Var(0)))
    return ForAll(0, Implies(guard, Truth(1, GAMMA0_CODE, inner)))


def full_reach_statement(a_code: int) -> Formula:
    """Every progressive ground predicate provably holds at the given
    position (position strictly below the top ordinal)."""
    x = ordinals.decode(a_code)
    if x is None or isinstance(x, ordinals.Gamma0Top):
        raise OutOfRange("position must be a valid code below the top ordinal")
    guard = PRRel("isPredL", (lang_code_term(PA_LANG), Var(0)))
    inner = PRFun("impB", (PRFun("progB", (Var(0),)), PRFun("g", (Var(0), position_term(a_code)))))
    return ForAll(0, Implies(guard, Truth(1, GAMMA0_CODE, inner)))


# --- canonical axioms ----------------------------------------------------------

_PA_DEFINING = (
    ForAll(0, Not(Eq(Succ(Var(0)), Zero()))),
    ForAll(0, ForAll(1, Implies(Eq(Succ(Var(0)), Succ(Var(1))), Eq(Var(0), Var(1))))),
    ForAll(0, Eq(syntax.Add(Var(0), Zero()), Var(0))),
    ForAll(0, ForAll(1, Eq(syntax.Add(Var(0), Succ(Var(1))), Succ(syntax.Add(Var(0), Var(1)))))),
    ForAll(0, Eq(syntax.Mul(Var(0), Zero()), Zero())),
    ForAll(0, ForAll(1, Eq(syntax.Mul(Var(0), Succ(Var(1))), syntax.Add(syntax.Mul(Var(0), Var(1)), Var(0))))),
)

_ORDER_MIN = ForAll(0, Not(_prec(Var(0), numeral(0))))
_ORDER_SUCC = ForAll(
    0,
    ForAll(
        1,
        Implies(
            _prec(Var(1), PRFun("oadd", (Var(0), numeral(1)))),
            syntax.Or(_prec(Var(1), Var(0)), Eq(Var(1), Var(0))),
        ),
    ),
)


def step_fact(code: int) -> Formula:
    """Predecessors of the successor position of a valid code are the code
    itself and its predecessors."""
    if ordinals.decode(code) is None:
        raise InvalidCode("step facts exist for valid codes")
    nxt = ordinals.succ_code(code)
    here = position_term(code)
    after = numeral(nxt) if nxt < _NUMERAL_CUTOFF else PRFun("oadd", (here, numeral(1)))
    return ForAll(
        0,
        Implies(
            _prec(Var(0), after),
            syntax.Or(_prec(Var(0), here), Eq(Var(0), here)),
        ),
    )


def _truth_teller(theory: TheorySpec):
    """(T-atom builder, target language, level) of one truth-introducing
    layer; theory must be Tarski or SubsystemS."""
    level = _new_level(theory.inner)
    if isinstance(theory, Tarski):
        target = language_of(theory.inner)
        return (lambda t: SimpleTruth(level, t)), target, level
    target = extend_upto(language_of(theory.inner), theory.index)
    return (lambda t: Truth(level, theory.index, t)), target, level


@lru_cache(maxsize=None)
def _axioms_true(theory) -> Formula:
    T, _, _ = _truth_teller(theory)
    name = f"fEnum[{format_theory(theory.inner)}]"
    return ForAll(0, T(PRFun(name, (Var(0),))))


@lru_cache(maxsize=None)
def _deduction_mp(theory) -> Formula:
    T, target, _ = _truth_teller(theory)
    lt = lang_code_term(target)
    guard = And(PRRel("isFormL", (lt, Var(0))), PRRel("isFormL", (lt, Var(1))))
    body = Implies(And(T(Var(0)), T(PRFun("impB", (Var(0), Var(1))))), T(Var(1)))
    return ForAll(0, ForAll(1, Implies(guard, body)))


@lru_cache(maxsize=None)
def _deduction_gen(theory) -> Formula:
    T, target, _ = _truth_teller(theory)
    guard = PRRel("isFormL", (lang_code_term(target), Var(0)))
    return ForAll(0, Implies(guard, Implies(T(Var(0)), T(PRFun("cloB", (Var(0),))))))


@lru_cache(maxsize=None)
def _omega_rule(theory) -> Formula:
    T, target, _ = _truth_teller(theory)
    guard = PRRel("isPredL", (lang_code_term(target), Var(0)))
    each = ForAll(1, T(PRFun("g", (Var(0), Var(1)))))
    return ForAll(0, Implies(guard, Iff(each, T(PRFun("cloB", (Var(0),))))))


@lru_cache(maxsize=None)
def _truth_of_induction(theory: SubsystemS) -> Formula:
    T, target, _ = _truth_teller(theory)
    guard = PRRel("isPredL", (lang_code_term(target), Var(0)))
    return ForAll(0, Implies(guard, T(PRFun("indB", (Var(0),)))))


@lru_cache(maxsize=None)
def _cross_t_scheme(theory: SubsystemS) -> Formula:
    T, _, level = _truth_teller(theory)
    base_term = lang_code_term(language_of(theory.inner))
    stage_lang = PRFun("uptoL", (base_term, Var(0)))
    guard = And(_prec(Var(0), position_term(theory.index)), PRRel("isFormL", (stage_lang, Var(1))))
    inner = PRFun("iffB", (PRFun("cloB", (Var(1),)), PRFun("truthB", (numeral(level), Var(0), Var(1)))))
    return ForAll(0, ForAll(1, Implies(guard, T(inner))))


def _persistence(theory: SubsystemS, b_code: int) -> Formula:
    level = _new_level(theory.inner)
    stage = extend_upto(language_of(theory.inner), b_code)
    guard = PRRel("isFormL", (lang_code_term(stage), Var(0)))
    body = Iff(Truth(level, b_code, Var(0)), Truth(level, theory.index, Var(0)))
    return ForAll(0, Implies(guard, body))


@lru_cache(maxsize=None)
def _prog_acc(theory: TarskiOrd) -> Formula:
    return progressivity(Acc(_new_level(theory.inner), Var(0)))


def _acc_gate(theory: TarskiOrd, a_code: int, axiom: Formula) -> Formula:
    return Implies(Acc(_new_level(theory.inner), position_term(a_code)), axiom)


def _match_induction(f: Formula, lang_ok) -> bool:
    if not isinstance(f, Implies) or not isinstance(f.left, And):
        return False
    step, concl = f.left.right, f.right
    if not isinstance(step, ForAll) or not isinstance(concl, ForAll):
        return False
    n = step.var
    if concl.var != n or not isinstance(step.body, Implies):
        return False
    pred = step.body.left
    if concl.body != pred or n not in free_vars(pred):
        return False
    if step.body.right != subst(pred, n, Succ(Var(n))):
        return False
    if f.left.left != subst(pred, n, Zero()):
        return False
    return lang_ok(pred)


def _match_t_scheme(theory, f: Formula) -> bool:
    if not isinstance(f, Iff):
        return False
    T, target, level = _truth_teller(theory)
    atom = f.right
    if isinstance(theory, Tarski):
        if not (isinstance(atom, SimpleTruth) and atom.level == level):
            return False
    else:
        if not (isinstance(atom, Truth) and atom.level == level and atom.index == theory.index):
            return False
    code = denumeral(atom.arg)
    if code is None:
        return False
    inner = godel_decode(code)
    if inner is None or not in_language(inner, target):
        return False
    return f.left == universal_closure(inner)


def _match_step_fact(f: Formula) -> bool:
    if not (isinstance(f, ForAll) and isinstance(f.body, Implies)):
        return False
    guard = f.body.left
    rest = f.body.right
    if not (isinstance(guard, PRRel) and guard.name == "prec" and isinstance(rest, syntax.Or)):
        return False
    lower = rest.left
    if not (isinstance(lower, PRRel) and lower.name == "prec"):
        return False
    code = evaluator.eval_term(lower.args[1])
    if code is None or ordinals.decode(code) is None:
        return False
    return f == step_fact(code)


def _match_persistence(theory: SubsystemS, f: Formula) -> bool:
    if not (isinstance(f, ForAll) and isinstance(f.body, Implies)):
        return False
    body = f.body.right
    if not isinstance(body, Iff) or not isinstance(body.left, Truth):
        return False
    b_code = body.left.index
    if ordinals.decode(b_code) is None or not ordinals.prec(b_code, theory.index):
        return False
    return f == _persistence(theory, b_code)


def _match_acc_gate(theory: TarskiOrd, f: Formula) -> bool:
    level = _new_level(theory.inner)
    if not (isinstance(f, Implies) and isinstance(f.left, Acc) and f.left.level == level):
        return False
    a_code = evaluator.eval_term(f.left.arg)
    if a_code is None or ordinals.decode(a_code) is None:
        return False
    if f.left.arg != position_term(a_code):
        return False
    try:
        sub = SubsystemS(theory.inner, a_code)
    except InvalidCode:
        return False
    return isinstance(axiom_check(sub, f.right), Accept)


def _match_logic_computation(f: Formula) -> bool:
    if f == _ORDER_MIN or f == _ORDER_SUCC:
        return True
    if _match_step_fact(f):
        return True
    return evaluator.is_computation_fact(f)


# --- recognizer ----------------------------------------------------------------


def axiom_check(theory: TheorySpec, f: Formula) -> Accept | Reject:
    """Decidable membership in the axiom set of the theory."""
    theory = normalize(theory)
    if not in_language(f, language_of(theory)):
        return Reject(f"formula is not in the language of {format_theory(theory)}")
    tag = _match(theory, f)
    if tag is None:
        return Reject(f"no axiom group of {format_theory(theory)} matches")
    return Accept(tag)


def _match(theory: TheorySpec, f: Formula) -> AxiomGroup | None:
    if isinstance(theory, PA):
        if f in _PA_DEFINING:
            return AxiomGroup.PR_DEFINITION
        if _match_induction(f, lambda p: in_language(p, PA_LANG)):
            return AxiomGroup.INDUCTION
        if _match_logic_computation(f):
            return AxiomGroup.LOGIC_COMPUTATION
        return None
    if isinstance(theory, Tarski):
        inner = _match(theory.inner, f)
        if inner is not None:
            return inner
        if f == _axioms_true(theory):
            return AxiomGroup.AXIOMS_TRUE
        if f == _deduction_mp(theory) or f == _deduction_gen(theory):
            return AxiomGroup.DEDUCTION
        lang = language_of(theory)
        if _match_induction(f, lambda p: in_language(p, lang)):
            return AxiomGroup.INDUCTION
        if f == _omega_rule(theory):
            return AxiomGroup.OMEGA_RULE
        if _match_t_scheme(theory, f):
            return AxiomGroup.T_SCHEME
        return None
    if isinstance(theory, SubsystemS):
        inner = _match(theory.inner, f)
        if inner is not None:
            return inner
        lang = language_of(theory)
        if _match_induction(f, lambda p: in_language(p, lang)):
            return AxiomGroup.INDUCTION
        if f == _axioms_true(theory):
            return AxiomGroup.AXIOMS_TRUE
        if f == _deduction_mp(theory) or f == _deduction_gen(theory):
            return AxiomGroup.DEDUCTION
        if f == _truth_of_induction(theory):
            return AxiomGroup.TRUTH_OF_INDUCTION
        if f == _omega_rule(theory):
            return AxiomGroup.OMEGA_RULE
        if _match_t_scheme(theory, f):
            return AxiomGroup.T_SCHEME
        if f == _cross_t_scheme(theory):
            return AxiomGroup.CROSS_T_SCHEME
        if _match_persistence(theory, f):
            return AxiomGroup.PERSISTENCE
        return None
    if isinstance(theory, TarskiOrd):
        inner = _match(theory.inner, f)
        if inner is not None:
            return inner
        if f == _prog_acc(theory):
            return AxiomGroup.PROG_ACC
        level = _new_level(theory.inner)
        base = language_of(theory.inner)
        if _match_induction(f, lambda p: _acc_only_ok(p, level, base)):
            return AxiomGroup.INDUCTION
        if _match_acc_gate(theory, f):
            return AxiomGroup.ACC_GATE
        return None
    raise TypeError(theory)


# --- enumeration -----------------------------------------------------------------


class _Gen:
    """Deterministic instance source for one axiom group: scans an internal
    parameter counter and yields instances in parameter order."""

    def __init__(self, tag: AxiomGroup, produce):
        self.tag = tag
        self._produce = produce
        self._param = 0
        self._done = False

    def next_candidate(self, scan_budget: int):
        if self._done:
            return None
        for _ in range(scan_budget):
            out = self._produce(self._param)
            if out is StopIteration:
                self._done = True
                return None
            self._param += 1
            if out is not None:
                return out
        return None


def _fixed(tag: AxiomGroup, formulas) -> _Gen:
    items = list(formulas)

    def produce(r):
        return items[r] if r < len(items) else StopIteration

    return _Gen(tag, produce)


def _induction_gen(tag: AxiomGroup, lang_ok) -> _Gen:
    def produce(r):
        code, var = unpair(r)
        pred = godel_decode(code)
        if pred is None or var not in free_vars(pred) or not lang_ok(pred):
            return None
        return induction_instance(pred, var)

    return _Gen(tag, produce)


def _t_scheme_gen(theory) -> _Gen:
    T, target, _ = _truth_teller(theory)

    def produce(r):
        inner = godel_decode(r)
        if inner is None or not in_language(inner, target):
            return None
        return Iff(universal_closure(inner), T(numeral(r)))

    return _Gen(AxiomGroup.T_SCHEME, produce)


def _logic_computation_gen() -> _Gen:
    def produce(r):
        if r == 0:
            return _ORDER_MIN
        if r == 1:
            return _ORDER_SUCC
        q, kind = divmod(r - 2, 2)
        if kind == 0:
            if ordinals.decode(q) is None:
                return None
            return step_fact(q)
        f = godel_decode(q)
        if f is None or not evaluator.is_computation_fact(f):
            return None
        return f

    return _Gen(AxiomGroup.LOGIC_COMPUTATION, produce)


def _persistence_gen(theory: SubsystemS) -> _Gen:
    def produce(r):
        if ordinals.decode(r) is None or not ordinals.prec(r, theory.index):
            return None
        return _persistence(theory, r)

    return _Gen(AxiomGroup.PERSISTENCE, produce)


def _acc_gate_gen(theory: TarskiOrd) -> _Gen:
    def produce(r):
        a_code, pos = unpair(r)
        if ordinals.decode(a_code) is None:
            return None
        sub = SubsystemS(theory.inner, a_code)
        formula, _ = _stream(sub).get(pos)
        return _acc_gate(theory, a_code, formula)

    return _Gen(AxiomGroup.ACC_GATE, produce)


def _leaf_gens(theory: TheorySpec) -> list:
    if isinstance(theory, PA):
        return [
            _fixed(AxiomGroup.PR_DEFINITION, _PA_DEFINING),
            _induction_gen(AxiomGroup.INDUCTION, lambda p: in_language(p, PA_LANG)),
            _logic_computation_gen(),
        ]
    if isinstance(theory, Tarski):
        lang = language_of(theory)
        return _leaf_gens(theory.inner) + [
            _fixed(AxiomGroup.AXIOMS_TRUE, [_axioms_true(theory)]),
            _fixed(AxiomGroup.DEDUCTION, [_deduction_mp(theory), _deduction_gen(theory)]),
            _induction_gen(AxiomGroup.INDUCTION, lambda p: in_language(p, lang)),
            _fixed(AxiomGroup.OMEGA_RULE, [_omega_rule(theory)]),
            _t_scheme_gen(theory),
        ]
    if isinstance(theory, SubsystemS):
        lang = language_of(theory)
        return _leaf_gens(theory.inner) + [
            _induction_gen(AxiomGroup.INDUCTION, lambda p: in_language(p, lang)),
            _fixed(AxiomGroup.AXIOMS_TRUE, [_axioms_true(theory)]),
            _fixed(AxiomGroup.DEDUCTION, [_deduction_mp(theory), _deduction_gen(theory)]),
            _fixed(AxiomGroup.TRUTH_OF_INDUCTION, [_truth_of_induction(theory)]),
            _fixed(AxiomGroup.OMEGA_RULE, [_omega_rule(theory)]),
            _t_scheme_gen(theory),
            _fixed(AxiomGroup.CROSS_T_SCHEME, [_cross_t_scheme(theory)]),
            _persistence_gen(theory),
        ]
    if isinstance(theory, TarskiOrd):
        level = _new_level(theory.inner)
        base = language_of(theory.inner)
        return _leaf_gens(theory.inner) + [
            _fixed(AxiomGroup.PROG_ACC, [_prog_acc(theory)]),
            _induction_gen(AxiomGroup.INDUCTION, lambda p: _acc_only_ok(p, level, base)),
            _acc_gate_gen(theory),
        ]
    raise TypeError(theory)


_SCAN_BUDGET = 20_000


class _Stream:
    def __init__(self, theory: TheorySpec):
        self.theory = theory
        self.gens = _leaf_gens(theory)
        self.items: list[tuple[Formula, AxiomGroup]] = []
        self.seen: set[Formula] = set()

    def get(self, i: int) -> tuple[Formula, AxiomGroup]:
        self.extend_to(i + 1)
        return self.items[i]

    def extend_to(self, count: int) -> None:
        stall = 0
        while len(self.items) < count:
            progressed = False
            for gen in self.gens:
                if len(self.items) >= count:
                    break
                f = gen.next_candidate(_SCAN_BUDGET)
                if f is None or f in self.seen:
                    continue
                res = axiom_check(self.theory, f)
                if not (isinstance(res, Accept) and res.tag == gen.tag):
                    continue
                self.seen.add(f)
                self.items.append((f, res.tag))
                progressed = True
            stall = 0 if progressed else stall + 1
            if stall > 50:
                raise RuntimeError("axiom enumeration stalled")


_STREAMS: dict[TheorySpec, _Stream] = {}


def _stream(theory: TheorySpec) -> _Stream:
    theory = normalize(theory)
    if theory not in _STREAMS:
        _STREAMS[theory] = _Stream(theory)
    return _STREAMS[theory]


def axiom_enumerate(theory: TheorySpec, budget: int) -> list[tuple[Formula, AxiomGroup]]:
    """The first `budget` axioms of the fixed deterministic stream."""
    s = _stream(theory)
    s.extend_to(budget)
    return list(s.items[:budget])


def nth_axiom(theory: TheorySpec, n: int) -> Formula:
    return _stream(theory).get(n)[0]


def axiom_check_omega(inner: TheorySpec, f: Formula) -> Accept | Reject:
    """Recognizer for the union of all finite iterates of the bundling
    construction over `inner`: accepted iff some iterate accepts, with the
    iterate bounded by the formula's top truth level."""
    bound = max(1, syntax.max_truth_level(f))
    last: Accept | Reject = Reject("no iterate accepts")
    for n in range(1, bound + 1):
        res = axiom_check(TarskiIter(inner, n), f)
        if isinstance(res, Accept):
            return res
        last = res
    return last
