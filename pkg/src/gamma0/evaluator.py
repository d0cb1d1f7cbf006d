"""Meta-evaluation of closed terms and atoms over the designated symbols.

This is the computation boundary of the artifact: designated function
symbols are interpreted by the very routines the library exposes, and a
closed atom counts as a computation fact exactly when evaluation affirms
it.  Designated functions are totalized: argument combinations outside a
symbol's intended domain (bad codes, results above the top ordinal)
evaluate to 0 rather than failing, which keeps every closed term
denoting.
"""

from __future__ import annotations

from . import ordinals, syntax, theoryspec


# Evaluation refuses to materialize numerals past this bound; affected
# closed terms count as not-evaluated rather than getting a junk value,
# which keeps computation facts conservative.
NUMERAL_CAP = 100_000


def eval_term(t: syntax.Term) -> int | None:
    """Value of a closed term in the standard model; None when open or
    when evaluation would exceed the resource bound."""
    if isinstance(t, syntax.Zero):
        return 0
    if isinstance(t, syntax.Var):
        return None
    if isinstance(t, syntax.Succ):
        n, base = syntax._strip_succ(t)
        v = eval_term(base)
        return None if v is None else v + n
    if isinstance(t, (syntax.Add, syntax.Mul)):
        left = eval_term(t.left)
        right = eval_term(t.right)
        if left is None or right is None:
            return None
        return left + right if isinstance(t, syntax.Add) else left * right
    if isinstance(t, syntax.PRFun):
        args = [eval_term(a) for a in t.args]
        if any(a is None for a in args):
            return None
        return _apply_function(t.name, args)
    raise TypeError(t)


def _ordinal_op(op, *codes: int) -> int:
    values = [ordinals.decode(c) for c in codes]
    if any(v is None for v in values):
        return 0
    try:
        return ordinals.encode(op(*values))
    except ordinals.OverflowBeyondGamma0:
        return 0


def _apply_function(name: str, args: list[int]) -> int | None:
    if name == "g":
        if args[1] > NUMERAL_CAP:
            return None
        try:
            return syntax.subst_numeral(args[0], args[1])
        except syntax.NotAPredicate:
            return 0
    if name == "oadd":
        return _ordinal_op(ordinals.add, *args)
    if name == "omul":
        return _ordinal_op(ordinals.mul, *args)
    if name == "oexp":
        return _ordinal_op(ordinals.exp, *args)
    if name == "ophi":
        return _ordinal_op(ordinals.veblen, *args)
    if name in ("impB", "conjB", "iffB"):
        left = syntax.godel_decode(args[0])
        right = syntax.godel_decode(args[1])
        if left is None or right is None:
            return 0
        cls = {"impB": syntax.Implies, "conjB": syntax.And, "iffB": syntax.Iff}[name]
        return syntax.godel_encode(cls(left, right))
    if name == "cloB":
        f = syntax.godel_decode(args[0])
        return 0 if f is None else syntax.godel_encode(syntax.universal_closure(f))
    if name == "indB":
        f = syntax.godel_decode(args[0])
        if f is None or not syntax.is_predicate(f):
            return 0
        from . import theories

        return syntax.godel_encode(theories.induction_instance(f, syntax.predicate_var(f)))
    if name == "progB":
        f = syntax.godel_decode(args[0])
        if f is None or not syntax.is_predicate(f):
            return 0
        from . import theories

        return syntax.godel_encode(theories.progressivity(f))
    if name == "bB":
        from . import theories

        try:
            return syntax.godel_encode(theories.reach_predicate(args[0], args[1]))
        except (theoryspec.InvalidCode, ordinals.OverflowBeyondGamma0):
            return 0
    if name == "tiB":
        f = syntax.godel_decode(args[1])
        if f is None or not syntax.is_predicate(f) or ordinals.decode(args[0]) is None:
            return 0
        from . import theories

        return syntax.godel_encode(theories.transfinite_induction_statement(args[0], f))
    if name == "truthB":
        level, index, code = args
        if level < 1:
            return 0
        if code > NUMERAL_CAP:
            return None
        return syntax.godel_encode(syntax.Truth(level, index, syntax.numeral(code)))
    if name == "uptoL":
        base = syntax.lang_decode(args[0])
        if base is None:
            return 0
        return syntax.lang_encode(syntax.extend_upto(base, args[1]))
    if name == "fullL":
        base = syntax.lang_decode(args[0])
        return 0 if base is None else syntax.lang_encode(syntax.extend_full(base))
    if name == "simpleL":
        base = syntax.lang_decode(args[0])
        return 0 if base is None else syntax.lang_encode(syntax.extend_simple(base))
    theory = syntax._theory_of_tagged(name, "fEnum")
    if theory is not None:
        from . import theories

        return syntax.godel_encode(theories.nth_axiom(theory, args[0]))
    raise TypeError(f"no evaluation rule for {name!r}")


def _apply_relation(name: str, args: list[int]) -> bool:
    if name == "prec":
        return ordinals.prec(args[0], args[1])
    if name in ("isFormL", "isPredL"):
        lang = syntax.lang_decode(args[0])
        if lang is None:
            return False
        f = syntax.godel_decode(args[1])
        if f is None or not syntax.in_language(f, lang):
            return False
        return syntax.is_predicate(f) if name == "isPredL" else True
    theory = syntax._theory_of_tagged(name, "prf")
    if theory is not None:
        from . import proofs

        proof = proofs.proof_decode(args[0])
        if proof is None or not proof.lines:
            return False
        if syntax.godel_encode(proof.lines[-1].formula) != args[1]:
            return False
        return isinstance(proofs.check(theory, proof), proofs.Valid)
    raise TypeError(f"no evaluation rule for {name!r}")


def eval_atom(f: syntax.Formula) -> bool | None:
    """Truth value of a closed atom; None when f is not a closed atom."""
    if isinstance(f, syntax.Eq):
        left = eval_term(f.left)
        right = eval_term(f.right)
        if left is None or right is None:
            return None
        return left == right
    if isinstance(f, syntax.PRRel):
        args = [eval_term(a) for a in f.args]
        if any(a is None for a in args):
            return None
        return _apply_relation(f.name, args)
    return None


def is_computation_fact(f: syntax.Formula) -> bool:
    """Closed literals the evaluator affirms: a true atom or the negation
    of a false one."""
    if isinstance(f, syntax.Not):
        v = eval_atom(f.body)
        return v is False
    v = eval_atom(f)
    return v is True
