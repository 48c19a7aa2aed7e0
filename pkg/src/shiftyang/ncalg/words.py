"""Generator letters packed into ints.

A letter is ``family << 28 | node << 20 | (level + LEVEL_BIAS)``.  Integer
order is then (family, node, level), which makes E < F < H < S blocks and
ascending levels inside a block: an ordered rank-1 PBW word is exactly a
non-decreasing tuple of codes.
"""

from __future__ import annotations

FAMILIES = ("E", "F", "H", "S")
E, F, H, S = range(4)
FAMILY_INDEX = {name: i for i, name in enumerate(FAMILIES)}

LEVEL_BIAS = 1 << 19
_LEVEL_MASK = (1 << 20) - 1
_NODE_MASK = 0xFF


def letter(family: int, node: int, level: int) -> int:
    if not 0 <= node <= _NODE_MASK:
        raise ValueError(f"node index out of range: {node}")
    if not -LEVEL_BIAS < level < LEVEL_BIAS:
        raise ValueError(f"level out of range: {level}")
    return (family << 28) | (node << 20) | (level + LEVEL_BIAS)


def family_of(code: int) -> int:
    return code >> 28


def node_of(code: int) -> int:
    return (code >> 20) & _NODE_MASK


def level_of(code: int) -> int:
    return (code & _LEVEL_MASK) - LEVEL_BIAS


def unpack(code: int) -> tuple[int, int, int]:
    return code >> 28, (code >> 20) & _NODE_MASK, (code & _LEVEL_MASK) - LEVEL_BIAS


def with_level(code: int, level: int) -> int:
    return (code & ~_LEVEL_MASK) | (level + LEVEL_BIAS)


def letter_str(code: int) -> str:
    fam, node, level = unpack(code)
    return f"{FAMILIES[fam]}[{node},{level}]"


def word_str(word: tuple[int, ...]) -> str:
    return "*".join(letter_str(c) for c in word) if word else "1"


def word_sort_key(word: tuple[int, ...]):
    """Graded-lex key: shorter words first, then letterwise."""
    return (len(word), word)


def E_(node: int, level: int) -> int:
    return letter(E, node, level)


def F_(node: int, level: int) -> int:
    return letter(F, node, level)


def H_(node: int, level: int) -> int:
    return letter(H, node, level)


def S_(node: int, level: int) -> int:
    return letter(S, node, level)
