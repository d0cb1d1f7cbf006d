"""Theory descriptors: the hierarchy of systems and their text/number forms.

The five constructors mirror the hierarchy: the ground arithmetic theory,
its one-step truth theory, the stage subsystems indexed by an ordinal
code, the bundled hierarchy behind the acceptance predicate, and finite
iterates of that bundling.  Descriptor strings (``PA``, ``tarski(PA)``,
``S[a=w](PA)``, ``tord(PA)``, ``tord^2(PA)``) are the CLI-facing names
and also appear inside designated function symbols, so parsing and
printing must be exact inverses.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ordinals
from .coding import pair, unpair


class InvalidCode(ValueError):
    pass


class TheorySpec:
    __slots__ = ()


@dataclass(frozen=True)
class PA(TheorySpec):
    __slots__ = ()


@dataclass(frozen=True)
class Tarski(TheorySpec):
    inner: TheorySpec


@dataclass(frozen=True)
class SubsystemS(TheorySpec):
    inner: TheorySpec
    index: int

    def __post_init__(self):
        if ordinals.decode(self.index) is None:
            raise InvalidCode(f"{self.index} is not a valid ordinal code")


@dataclass(frozen=True)
class TarskiOrd(TheorySpec):
    inner: TheorySpec


@dataclass(frozen=True)
class TarskiIter(TheorySpec):
    inner: TheorySpec
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("iteration count must be at least 1")


def normalize(theory: TheorySpec) -> TheorySpec:
    """Unfold finite iterates into nested single steps."""
    if isinstance(theory, TarskiIter):
        t = normalize(theory.inner)
        for _ in range(theory.count):
            t = TarskiOrd(t)
        return t
    if isinstance(theory, Tarski):
        return Tarski(normalize(theory.inner))
    if isinstance(theory, SubsystemS):
        return SubsystemS(normalize(theory.inner), theory.index)
    if isinstance(theory, TarskiOrd):
        return TarskiOrd(normalize(theory.inner))
    return theory


def format_theory(theory: TheorySpec) -> str:
    if isinstance(theory, PA):
        return "PA"
    if isinstance(theory, Tarski):
        return f"tarski({format_theory(theory.inner)})"
    if isinstance(theory, SubsystemS):
        lit = ordinals.format_ordinal(ordinals.decode(theory.index))
        return f"S[a={lit}]({format_theory(theory.inner)})"
    if isinstance(theory, TarskiOrd):
        return f"tord({format_theory(theory.inner)})"
    if isinstance(theory, TarskiIter):
        return f"tord^{theory.count}({format_theory(theory.inner)})"
    raise TypeError(theory)


class TheoryParseError(ValueError):
    pass


def parse_theory(text: str) -> TheorySpec:
    spec, rest = _parse_theory(text.strip())
    if rest:
        raise TheoryParseError(f"trailing input {rest!r}")
    return spec


def _parse_theory(text: str) -> tuple[TheorySpec, str]:
    if text.startswith("PA"):
        return PA(), text[2:]
    if text.startswith("tarski("):
        inner, rest = _parse_theory(text[len("tarski(") :])
        return Tarski(inner), _expect(rest, ")")
    if text.startswith("S[a="):
        lit, rest = _up_to_bracket_close(text[len("S[a=") :])
        code = ordinals.encode(ordinals.parse_ordinal(lit))
        rest = _expect(rest, "(")
        inner, rest = _parse_theory(rest)
        return SubsystemS(inner, code), _expect(rest, ")")
    if text.startswith("tord^"):
        i = len("tord^")
        j = i
        while j < len(text) and text[j].isdigit():
            j += 1
        if j == i:
            raise TheoryParseError("missing iteration count")
        count = int(text[i:j])
        rest = _expect(text[j:], "(")
        inner, rest = _parse_theory(rest)
        return TarskiIter(inner, count), _expect(rest, ")")
    if text.startswith("tord("):
        inner, rest = _parse_theory(text[len("tord(") :])
        return TarskiOrd(inner), _expect(rest, ")")
    raise TheoryParseError(f"unknown theory descriptor at {text!r}")


def _expect(text: str, ch: str) -> str:
    if not text.startswith(ch):
        raise TheoryParseError(f"expected {ch!r} at {text!r}")
    return text[1:]


def _up_to_bracket_close(text: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            if depth == 0:
                return text[:i], text[i + 1 :]
            depth -= 1
    raise TheoryParseError("unterminated bracket")


# Numeric form, used when theory descriptors appear inside symbol codes.


def encode_theory(theory: TheorySpec) -> int:
    if isinstance(theory, PA):
        return 0
    if isinstance(theory, Tarski):
        return 1 + 4 * encode_theory(theory.inner) + 0
    if isinstance(theory, SubsystemS):
        return 1 + 4 * pair(encode_theory(theory.inner), theory.index) + 1
    if isinstance(theory, TarskiOrd):
        return 1 + 4 * encode_theory(theory.inner) + 2
    if isinstance(theory, TarskiIter):
        return 1 + 4 * pair(encode_theory(theory.inner), theory.count - 1) + 3
    raise TypeError(theory)


def decode_theory(code: int) -> TheorySpec | None:
    if code < 0:
        return None
    if code == 0:
        return PA()
    tag = (code - 1) % 4
    payload = (code - 1) // 4
    if tag == 0:
        inner = decode_theory(payload)
        return None if inner is None else Tarski(inner)
    if tag == 1:
        ic, idx = unpair(payload)
        inner = decode_theory(ic)
        if inner is None or ordinals.decode(idx) is None:
            return None
        return SubsystemS(inner, idx)
    if tag == 2:
        inner = decode_theory(payload)
        return None if inner is None else TarskiOrd(inner)
    ic, n1 = unpair(payload)
    inner = decode_theory(ic)
    return None if inner is None else TarskiIter(inner, n1 + 1)
