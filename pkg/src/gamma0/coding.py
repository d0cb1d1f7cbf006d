"""Cantor pairing helpers shared by the ordinal and formula code layers."""

from __future__ import annotations

import math


def pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(n: int) -> tuple[int, int]:
    s = (math.isqrt(8 * n + 1) - 1) // 2
    y = n - s * (s + 1) // 2
    return s - y, y


def pack_list(items: list[int]) -> int:
    # [] -> 0, x:rest -> 1 + pair(x, code(rest)); injective on int lists
    code = 0
    for x in reversed(items):
        code = 1 + pair(x, code)
    return code


def unpack_list(code: int) -> list[int]:
    out = []
    while code:
        x, code = unpair(code - 1)
        out.append(x)
    return out


def pack_bits(items: list[int]) -> int:
    """Linear-size list coding: each element's binary digits are escaped
    bit-by-bit and terminated; suitable for long lists where the pairing
    fold would blow up."""
    parts = ["1"]
    for x in items:
        if x < 0:
            raise ValueError("only naturals are packable")
        if x:
            for ch in format(x, "b"):
                parts.append("1")
                parts.append(ch)
        parts.append("00")
    return int("".join(parts), 2)


def unpack_bits(code: int) -> list[int] | None:
    if code < 1:
        return None
    s = format(code, "b")[1:]
    items: list[int] = []
    cur: list[str] = []
    i = 0
    while i < len(s):
        if s[i] == "1":
            if i + 1 >= len(s):
                return None
            cur.append(s[i + 1])
            i += 2
        else:
            if i + 1 >= len(s) or s[i + 1] != "0":
                return None
            items.append(int("".join(cur), 2) if cur else 0)
            cur = []
            i += 2
    if cur:
        return None
    return items
