"""
Words in the Artin braid group B_∞, with equality and order decided by handle
reduction.

A braid word is a tuple of nonzero integers: +i stands for σ_i, -i for
σ_i⁻¹, indices starting at 1.  Text format: whitespace-separated letters
`s<i>` and `S<i>` for σ_i and σ_i⁻¹ (the empty string is the identity).

A σ_i-handle is a subword σ_i^e v σ_i^{-e} (e = ±1) whose interior v contains
no letter of index <= i.  Reducing it conjugates the interior through σ_i^e:
each σ_{i+1}^d becomes σ_{i+1}^{-e} σ_i^d σ_{i+1}^e, letters of index >= i+2
pass through unchanged, and the two σ_i letters vanish.  Every reduction
sequence terminates, and a handle-free word is empty or has its lowest-index
generator occurring with a single sign (σ-positive or σ-negative).  That sign
decides the order: w1 < w2 iff w1⁻¹ w2 reduces to a σ-positive word, which
makes the order total, left-invariant, and compatible with equality
(w1 = w2 iff the quotient reduces to the empty word).

The left self-distributive operation on braids is
b * c = b · sh(c) · σ_1 · sh(b)⁻¹, where sh shifts every index up by one.
Evaluating a one-variable *-term at a braid via this operation is a complete
invariant of the term's LD-class, which is what the LD oracle runs on.
"""

from __future__ import annotations

from functools import lru_cache

from .terms import STAR, Term, Variable

BraidWord = tuple  # tuple[int, ...]

LESS = -1
EQUAL = 0
GREATER = 1


def parse_braid(text: str) -> BraidWord:
    letters = []
    for tok in text.split():
        if len(tok) < 2 or tok[0] not in "sS" or not tok[1:].isdigit() or int(tok[1:]) < 1:
            raise ValueError(f"bad braid letter {tok!r}")
        i = int(tok[1:])
        letters.append(i if tok[0] == "s" else -i)
    return tuple(letters)


def render_braid(w: BraidWord) -> str:
    return " ".join(f"s{x}" if x > 0 else f"S{-x}" for x in w)


def inverse(w: BraidWord) -> BraidWord:
    return tuple(-x for x in reversed(w))


def braid_shift(w: BraidWord, k: int = 1) -> BraidWord:
    """Map σ_i to σ_{i+k}, preserving signs."""
    if k < 0:
        raise ValueError("shift must be nonnegative")
    return tuple(x + k if x > 0 else x - k for x in w)


def free_reduce(w: BraidWord) -> BraidWord:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def permutation(w: BraidWord, n: int | None = None) -> tuple[int, ...]:
    """End position of each strand: strand p (1-based) ends at result[p-1]."""
    if n is None:
        n = max((abs(x) for x in w), default=0) + 1
    occupant = list(range(1, n + 1))
    for x in w:
        i = abs(x)
        occupant[i - 1], occupant[i] = occupant[i], occupant[i - 1]
    perm = [0] * n
    for pos, strand in enumerate(occupant, start=1):
        perm[strand - 1] = pos
    return tuple(perm)


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w)


def _find_handle(w: list[int], start: int) -> tuple[int, int] | None:
    """Leftmost-closing handle (j, k): w[j..k] = σ_i^e ... σ_i^{-e} with the
    interior free of indices <= i.  No handle closes before `start`."""
    for k in range(max(start, 1), len(w)):
        i = abs(w[k])
        for j in range(k - 1, -1, -1):
            ij = abs(w[j])
            if ij > i:
                continue
            if ij == i and w[j] == -w[k]:
                return j, k
            break  # same sign at index i, or a lower index: no handle closes at k
    return None


def handle_reduce(w: BraidWord, step_cap: int = 1_000_000) -> BraidWord:
    """Equivalent handle-free word; empty, σ-positive, or σ-negative.

    The step cap is a defect detector only: handle reduction terminates, so
    hitting the cap trips an assertion rather than returning a weaker answer.
    """
    word = list(free_reduce(w))
    start = 0
    steps = 0
    while True:
        found = _find_handle(word, start)
        if found is None:
            break
        steps += 1
        assert steps <= step_cap, "handle reduction exceeded its defect-detector cap"
        j, k = found
        e = 1 if word[j] > 0 else -1
        i = abs(word[j])
        replacement: list[int] = []
        for x in word[j + 1 : k]:
            if abs(x) == i + 1:
                d = 1 if x > 0 else -1
                replacement += [-e * (i + 1), d * i, e * (i + 1)]
            else:
                replacement.append(x)
        word[j : k + 1] = replacement
        # The prefix before j is unchanged and contained no closing letter.
        start = j
    result = tuple(word)
    if result:
        m = min(abs(x) for x in result)
        signs = {x > 0 for x in result if abs(x) == m}
        assert len(signs) == 1, "handle-free word with mixed signs at its lowest index"
    return result


def braid_compare(w1: BraidWord, w2: BraidWord) -> int:
    """LESS/EQUAL/GREATER in the total order: w1 < w2 iff w1⁻¹w2 is σ-positive."""
    r = handle_reduce(free_reduce(inverse(w1) + tuple(w2)))
    if not r:
        return EQUAL
    m = min(abs(x) for x in r)
    positive = next(x > 0 for x in r if abs(x) == m)
    return LESS if positive else GREATER


def braid_equal(w1: BraidWord, w2: BraidWord) -> bool:
    return braid_compare(w1, w2) == EQUAL


def braid_ld(b: BraidWord, c: BraidWord) -> BraidWord:
    """b * c = b · sh(c) · σ_1 · sh(b)⁻¹ (no simplification performed)."""
    return tuple(b) + braid_shift(c) + (1,) + inverse(braid_shift(b))


@lru_cache(maxsize=None)
def eval_star_braid(t: Term, g: BraidWord) -> BraidWord:
    """Evaluate a one-variable *-term at the braid g under the LD operation."""
    if isinstance(t, Variable):
        if t.index != 1:
            raise ValueError("term must be one-variable")
        return tuple(g)
    if t.op != STAR:
        raise ValueError("term must use only *")
    return braid_ld(eval_star_braid(t.left, g), eval_star_braid(t.right, g))
