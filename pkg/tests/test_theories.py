"""Axiom recognizers, enumerators, named predicates and statements."""

import random

import pytest

from gamma0 import evaluator, ordinals, theories
from gamma0.syntax import (
    Acc,
    And,
    Eq,
    ForAll,
    Iff,
    Implies,
    Not,
    Or,
    PA_LANG,
    PRFun,
    PRRel,
    SimpleTruth,
    Truth,
    Var,
    apply_predicate,
    extend_full,
    extend_upto,
    format_formula,
    free_vars,
    godel_encode,
    in_language,
    numeral,
    parse_formula,
    universal_closure,
)
from gamma0.theories import (
    Accept,
    AxiomGroup,
    OutOfRange,
    Reject,
    axiom_check,
    axiom_check_omega,
    axiom_enumerate,
    full_reach_statement,
    induction_transfer_statement,
    jump_predicate,
    language_of,
    progressivity,
    progressivity_up_to,
    reach_predicate,
    reach_progressive_statement,
    reach_progressivity,
    shift_predicate,
    soundness_statement,
    transfinite_induction_statement,
)
from gamma0.theoryspec import PA, SubsystemS, Tarski, TarskiIter, TarskiOrd, InvalidCode

W_CODE = ordinals.encode(ordinals.W)
FIVE_THEORIES = [
    PA(),
    Tarski(PA()),
    SubsystemS(PA(), W_CODE),
    TarskiOrd(PA()),
    TarskiIter(PA(), 2),
]


def F(text):
    return parse_formula(text)


def test_language_of_examples():
    assert language_of(PA()) == PA_LANG
    lang = language_of(SubsystemS(PA(), W_CODE))
    assert lang == extend_upto(PA_LANG, ordinals.succ_code(W_CODE))
    assert in_language(Truth(1, W_CODE, Var(0)), lang)
    assert not in_language(Acc(1, Var(0)), lang)
    assert language_of(TarskiOrd(PA())) == extend_full(PA_LANG)


def test_subsystem_at_top_ordinal():
    # the stage indexed by the top ordinal exists; its language admits
    # every valid index, realized through the first invalid position
    top = theories.GAMMA0_CODE
    lang = language_of(SubsystemS(PA(), top))
    assert in_language(Truth(1, top, Var(0)), lang)
    assert in_language(Truth(1, W_CODE, Var(0)), lang)


def test_subsystem_rejects_invalid_code():
    with pytest.raises(InvalidCode):
        SubsystemS(PA(), 4)


def test_axiom_check_t_scheme_instance():
    a = F("x0 = x0")
    inst = Iff(universal_closure(a), SimpleTruth(1, numeral(godel_encode(a))))
    res = axiom_check(Tarski(PA()), inst)
    assert res == Accept(AxiomGroup.T_SCHEME)


def test_axiom_check_prog_acc():
    res = axiom_check(TarskiOrd(PA()), progressivity(Acc(1, Var(0))))
    assert res == Accept(AxiomGroup.PROG_ACC)


def test_axiom_check_rejects_non_axiom():
    assert isinstance(axiom_check(Tarski(PA()), F("0 = 1")), Reject)


def test_axiom_check_rejects_wrong_language():
    res = axiom_check(PA(), SimpleTruth(1, numeral(0)))
    assert isinstance(res, Reject) and "language" in res.reason


def test_enumeration_deterministic_prefix():
    first = axiom_enumerate(PA(), 30)
    again = axiom_enumerate(PA(), 60)
    assert again[:30] == first
    assert first[0][1] == AxiomGroup.PR_DEFINITION
    assert format_formula(first[0][0]) == "forall x0. ~S(x0) = 0"


def test_enumeration_self_consistent():
    for th in FIVE_THEORIES:
        for f, tag in axiom_enumerate(th, 100):
            res = axiom_check(th, f)
            assert res == Accept(tag)


def test_t_scheme_for_zero_equals_one_is_enumerated():
    target = F("0 = 1")
    inst = Iff(universal_closure(target), SimpleTruth(1, numeral(godel_encode(target))))
    # regression constant: the instance appears early in the fixed stream
    budget = 400
    axs = [f for f, _ in axiom_enumerate(Tarski(PA()), budget)]
    assert inst in axs


def test_prog_acc_located_in_stream():
    axs = [f for f, _ in axiom_enumerate(TarskiOrd(PA()), 30)]
    assert progressivity(Acc(1, Var(0))) in axs


def test_subsystem_monotone_languages():
    rng = random.Random(4)
    codes = sorted(
        {ordinals.encode(ordinals.fin(k)) for k in (0, 1, 3)}
        | {W_CODE, ordinals.encode(ordinals.add(ordinals.W, ordinals.ONE))},
        key=lambda c: (ordinals.preceq(c, 10**9), c),
    )
    big = SubsystemS(PA(), ordinals.encode(ordinals.exp(ordinals.W, ordinals.W)))
    big_lang = language_of(big)
    for code in codes:
        small = SubsystemS(PA(), code)
        for f, _ in axiom_enumerate(small, 40):
            assert in_language(f, big_lang)


def test_iterate_once_equals_single_step():
    once = axiom_enumerate(TarskiIter(PA(), 1), 120)
    step = axiom_enumerate(TarskiOrd(PA()), 120)
    assert once == step


def test_acc_gating():
    gates = [
        (f, tag)
        for f, tag in axiom_enumerate(TarskiOrd(PA()), 200)
        if tag == AxiomGroup.ACC_GATE
    ]
    assert gates
    for f, _ in gates:
        assert isinstance(f, Implies) and isinstance(f.left, Acc)
        a_code = evaluator.eval_term(f.left.arg)
        inner = axiom_check(SubsystemS(PA(), a_code), f.right)
        assert isinstance(inner, Accept)


def test_ord_induction_excludes_top_truth():
    th = TarskiOrd(PA())
    # an induction instance whose predicate mentions a top-level truth
    # symbol is not an axiom of the bundled theory
    pred = Truth(1, 0, Var(0))
    inst = theories.induction_instance(pred, 0)
    assert isinstance(axiom_check(th, inst), Reject)
    # with the acceptance predicate it is allowed
    pred2 = Acc(1, Var(0))
    inst2 = theories.induction_instance(pred2, 0)
    assert axiom_check(th, inst2) == Accept(AxiomGroup.INDUCTION)
    for f, tag in axiom_enumerate(th, 300):
        if tag != AxiomGroup.INDUCTION:
            continue
        pred = f.right.body
        for node in theories.truth_nodes(pred):
            assert not (node.level == 1 and not isinstance(node, Acc))


def test_mutations_rejected_unless_reaccepted():
    rng = random.Random(10)
    for th in FIVE_THEORIES:
        axs = axiom_enumerate(th, 60)
        rejected = 0
        for _ in range(40):
            f, _ = rng.choice(axs)
            g = mutate(rng, f)
            if g is None or g == f:
                continue
            res = axiom_check(th, g)
            if isinstance(res, Reject):
                rejected += 1
        assert rejected > 0


def mutate(rng, f):
    """Single structured mutation: operator flip, index bump, or numeral bump."""
    kind = rng.randint(0, 3)
    if kind == 0:
        return _flip_first(f)
    if kind == 1:
        return _bump_truth_index(f)
    if kind == 2:
        return _swap_binary(f)
    return _bump_var(f)


def _flip_first(f):
    if isinstance(f, And):
        return Or(f.left, f.right)
    if isinstance(f, Or):
        return And(f.left, f.right)
    if isinstance(f, Implies):
        return Iff(f.left, f.right)
    if isinstance(f, Iff):
        return Implies(f.left, f.right)
    if isinstance(f, ForAll):
        sub = _flip_first(f.body)
        return None if sub is None else ForAll(f.var, sub)
    if isinstance(f, Not):
        sub = _flip_first(f.body)
        return None if sub is None else Not(sub)
    return None


def _bump_truth_index(f):
    if isinstance(f, Truth):
        return Truth(f.level, f.index + 1, f.arg)
    if isinstance(f, SimpleTruth):
        return Truth(f.level, 0, f.arg)
    if isinstance(f, (ForAll,)):
        sub = _bump_truth_index(f.body)
        return None if sub is None else ForAll(f.var, sub)
    if isinstance(f, (And, Or, Implies, Iff)):
        sub = _bump_truth_index(f.left)
        if sub is not None:
            return type(f)(sub, f.right)
        sub = _bump_truth_index(f.right)
        return None if sub is None else type(f)(f.left, sub)
    if isinstance(f, Not):
        sub = _bump_truth_index(f.body)
        return None if sub is None else Not(sub)
    return None


def _swap_binary(f):
    if isinstance(f, (And, Or, Implies, Iff)) and f.left != f.right:
        return type(f)(f.right, f.left)
    if isinstance(f, ForAll):
        sub = _swap_binary(f.body)
        return None if sub is None else ForAll(f.var, sub)
    return None


def _bump_var(f):
    if isinstance(f, ForAll):
        return ForAll(f.var + 1, f.body)
    return None


def test_reach_predicate_structure():
    a = ordinals.encode(ordinals.ONE)
    c = ordinals.encode(ordinals.fin(2))
    b = reach_predicate(a, c)
    assert free_vars(b) == frozenset((0,))
    u = ordinals.encode(ordinals.index_of(ordinals.decode(a), ordinals.decode(c)))
    assert in_language(b, extend_upto(PA_LANG, ordinals.succ_code(u)))
    # a second multiplier changes only the truth index and the language bound
    c2 = ordinals.encode(ordinals.fin(3))
    b2 = reach_predicate(a, c2)
    u2 = ordinals.encode(ordinals.index_of(ordinals.decode(a), ordinals.decode(c2)))
    assert _erase_stage(b, u) == _erase_stage(b2, u2)


def _erase_stage(f, u):
    """Replace the stage index u and its language bound uniformly."""
    if isinstance(f, Truth) and f.index == u:
        return Truth(f.level, -1, _erase_stage_t(f.arg, u))
    if isinstance(f, ForAll):
        return ForAll(f.var, _erase_stage(f.body, u))
    if isinstance(f, Implies):
        return Implies(_erase_stage(f.left, u), _erase_stage(f.right, u))
    if isinstance(f, PRRel):
        return PRRel(f.name, tuple(_erase_stage_t(a, u) for a in f.args))
    return f


def _erase_stage_t(t, u):
    from gamma0.syntax import denumeral

    n = denumeral(t)
    if n is not None and n == u:
        return Var(999)
    if isinstance(t, PRFun):
        return PRFun(t.name, tuple(_erase_stage_t(a, u) for a in t.args))
    return t


def test_reach_progressivity_structure():
    c = reach_progressivity()
    assert free_vars(c) == frozenset((0,))
    assert in_language(c, extend_full(PA_LANG))
    inst = apply_predicate(c, numeral(0))
    assert free_vars(inst) == frozenset()
    with pytest.raises(InvalidCode):
        reach_progressivity(W_CODE)


def test_jump_and_shift():
    a = F("x0 = 0")
    j = jump_predicate(a)
    assert len(free_vars(j)) == 1
    jj = jump_predicate(j)
    assert len(free_vars(jj)) == 1
    # at stage zero the jump asserts propagation to the successor position
    b = next(iter(free_vars(j)))
    from gamma0.syntax import subst

    at0 = subst(j, b, numeral(0))
    assert free_vars(at0) == frozenset()
    assert "oexp" in format_formula(at0)
    s = shift_predicate(a, 0)
    assert format_formula(s) == "oadd(0,x0) = 0"


def test_progressivity_examples():
    acc = Acc(1, Var(0))
    p = progressivity(acc)
    assert format_formula(p) == "forall x2. (forall x3. prec(x3,x2) -> Acc[1](x3)) <-> Acc[1](x2)"
    pu = progressivity_up_to(acc, theories.GAMMA0_CODE)
    assert format_formula(pu).startswith("forall x2. prec(x2,2) ->")
    for pred_text in ["x0 = 0", "x0 = x0", "prec(x0,12)"]:
        assert free_vars(progressivity(F(pred_text))) == frozenset()


def test_statements_well_formed():
    a = F("x0 = 0")
    g3 = ordinals.encode(ordinals.gamma(3))
    ti = transfinite_induction_statement(g3, a)
    assert free_vars(ti) == frozenset()
    assert in_language(ti, PA_LANG)

    s = soundness_statement(W_CODE, ordinals.encode(ordinals.fin(2)))
    assert free_vars(s) == frozenset()
    assert in_language(s, language_of(SubsystemS(PA(), W_CODE)))
    with pytest.raises(OutOfRange):
        soundness_statement(ordinals.encode(ordinals.fin(2)), W_CODE)

    t54 = reach_progressive_statement()
    assert free_vars(t54) == frozenset()
    assert in_language(t54, extend_full(PA_LANG))

    with pytest.raises(OutOfRange):
        induction_transfer_statement(1)
    for n in (2, 3, 4):
        c = induction_transfer_statement(n)
        assert free_vars(c) == frozenset()
        assert in_language(c, extend_full(PA_LANG))

    t61 = full_reach_statement(ordinals.encode(ordinals.EPS0))
    assert free_vars(t61) == frozenset()
    assert in_language(t61, extend_full(PA_LANG))
    with pytest.raises(OutOfRange):
        full_reach_statement(theories.GAMMA0_CODE)


def test_omega_union_recognizer():
    f1 = progressivity(Acc(1, Var(0)))
    assert isinstance(axiom_check_omega(PA(), f1), Accept)
    f2 = progressivity(Acc(2, Var(0)))
    assert isinstance(axiom_check_omega(PA(), f2), Accept)
    assert isinstance(axiom_check(TarskiIter(PA(), 1), f2), Reject)
    assert isinstance(axiom_check_omega(PA(), F("0 = 1")), Reject)


def test_order_facts_are_axioms_everywhere():
    minf = theories._ORDER_MIN
    succf = theories._ORDER_SUCC
    step = theories.step_fact(ordinals.encode(ordinals.fin(3)))
    for th in FIVE_THEORIES:
        for f in (minf, succf, step):
            assert axiom_check(th, f) == Accept(AxiomGroup.LOGIC_COMPUTATION)


def test_closed_computation_facts():
    w = ordinals.encode(ordinals.W)
    fact = PRRel("prec", (numeral(ordinals.encode(ordinals.fin(2))), numeral(w)))
    assert axiom_check(PA(), fact) == Accept(AxiomGroup.LOGIC_COMPUTATION)
    lie = PRRel("prec", (numeral(w), numeral(0)))
    assert isinstance(axiom_check(PA(), lie), Reject)
    assert axiom_check(PA(), Not(lie)) == Accept(AxiomGroup.LOGIC_COMPUTATION)
    eq = Eq(PRFun("oadd", (numeral(1), numeral(w))), numeral(w))
    assert axiom_check(PA(), eq) == Accept(AxiomGroup.LOGIC_COMPUTATION)
