"""
The two ALD-invariants of a term and the decision procedure built on them.

Every term t over * and ∘ determines a pair (I(t), J(t)):

    I(x)       = x          J(x)       = (x)
    I(t1*t2)   = I(t2)      J(t1*t2)   = J(t1) ⃗* J(t2)
    I(t1∘t2)   = I(t1)∘I(t2)  J(t1∘t2) = J(t1) ⌢ J(t2)

where ⃗* chains every entry of the left sequence onto each entry of the right
(right-parenthesized) and ⌢ concatenates.  I(t) is a one-variable ∘-term,
J(t) a sequence of *-terms with ℓ(J(t)) = size(I(t)).  Single rewriting steps
by LD, ALD1, or ALD2 leave I(t) unchanged and change J(t) only up to
entrywise LD-equivalence, and substituting J(t) back into I(t) gives a
special form ALD-equivalent to t.  Together: two terms are ALD-equivalent iff
their I-parts are equal and their J-sequences are entrywise LD-equivalent,
which reduces the ALD word problem to the LD one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .braids import braid_compare, eval_star_braid, handle_reduce
from .ldoracle import DEFAULT_ORACLE, LdOracle, seq_ld_equal
from .terms import (
    ALD1,
    ALD2,
    CIRC,
    EXPAND,
    STAR,
    Compound,
    LawInstance,
    Position,
    Term,
    TermSeq,
    Variable,
    apply_law,
    circ_cmp,
    is_one_variable,
    is_star_term,
    law_instances,
    seq_concat,
    seq_star,
    size,
    substitute,
)


def inv_I(t: Term) -> Term:
    """The ∘-skeleton invariant: a one-variable ∘-term."""
    if isinstance(t, Variable):
        return Variable(1)
    if t.op == STAR:
        return inv_I(t.right)
    return Compound(CIRC, inv_I(t.left), inv_I(t.right))


def inv_J(t: Term) -> TermSeq:
    """The sequence invariant: *-terms, one per leaf of inv_I(t)."""
    if isinstance(t, Variable):
        return (t,)
    if t.op == STAR:
        return seq_star(inv_J(t.left), inv_J(t.right))
    return seq_concat(inv_J(t.left), inv_J(t.right))


@dataclass(frozen=True)
class AldClassKey:
    """The invariant pair, packaged: i_part a ∘-term, j_entries *-terms."""

    i_part: Term
    j_entries: TermSeq

    def __post_init__(self):
        if size(self.i_part) != len(self.j_entries):
            raise ValueError("skeleton size must equal the sequence length")
        if not all(is_star_term(e) for e in self.j_entries):
            raise ValueError("sequence entries must be *-terms")

    @property
    def j_length(self) -> int:
        return len(self.j_entries)

    @classmethod
    def of_term(cls, t: Term) -> AldClassKey:
        return cls(inv_I(t), inv_J(t))


@dataclass(frozen=True)
class Verdict:
    kind: str  # "equal" | "not-equal" | "unknown"
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.kind == "equal"


EQUAL_V = Verdict("equal")
NOT_EQUAL_V = Verdict("not-equal")


def unknown(reason: str) -> Verdict:
    return Verdict("unknown", reason)


def specialize(t: Term) -> Term:
    """The special form of t: substitute inv_J(t) into inv_I(t)."""
    return substitute(inv_I(t), inv_J(t))


def derive_special(t: Term) -> list[LawInstance]:
    """A rewriting trace from t to specialize(t), replayable via apply_law.

    Special subterms contribute no steps; a * over two special forms u[s] and
    v[w] is pushed into v[s ⃗* w] by an ALD2 expansion when v splits, an ALD1
    expansion when u splits, and nothing at all when both are leaves.
    """
    steps: list[LawInstance] = []

    def star_steps(u: Term, s: TermSeq, v: Term, w: TermSeq, pos: Position) -> None:
        # current subterm at pos: u[s] * v[w]; rewrite it to v[s ⃗* w]
        if isinstance(v, Compound):
            r = size(v.left)
            steps.append(LawInstance(ALD2, pos, EXPAND))
            star_steps(u, s, v.left, w[:r], pos + ("L",))
            star_steps(u, s, v.right, w[r:], pos + ("R",))
        elif isinstance(u, Compound):
            r = size(u.left)
            steps.append(LawInstance(ALD1, pos, EXPAND))
            star_steps(u.right, s[r:], v, w, pos + ("R",))
            star_steps(u.left, s[:r], v, seq_star(s[r:], w), pos)
        # both skeletons are leaves: s1 * w1 is already v[s ⃗* w]

    def go(node: Term, pos: Position) -> None:
        if isinstance(node, Variable):
            return
        go(node.left, pos + ("L",))
        go(node.right, pos + ("R",))
        if node.op == STAR:
            star_steps(
                inv_I(node.left), inv_J(node.left),
                inv_I(node.right), inv_J(node.right),
                pos,
            )
        # a ∘ over special forms is already special

    go(t, ())
    return steps


def replay(t: Term, steps: list[LawInstance]) -> Term:
    for inst in steps:
        t = apply_law(t, inst)
    return t


def decide_ald(t: Term, t2: Term, oracle: LdOracle = DEFAULT_ORACLE) -> Verdict:
    """Decide t =_ALD t2: equal skeletons plus entrywise LD-equal sequences."""
    if inv_I(t) != inv_I(t2):
        return NOT_EQUAL_V
    result = seq_ld_equal(inv_J(t), inv_J(t2), oracle)
    if result is True:
        return EQUAL_V
    if result is False:
        return NOT_EQUAL_V
    return unknown("LD oracle budget exhausted on a multi-variable entry pair")


def ald_closure(t: Term, size_cap: int, step_cap: int = 100_000) -> set:
    """Brute-force oracle: breadth-first closure of t under single law steps,
    keeping only terms of size <= size_cap, for up to step_cap expansions."""
    if size_cap < size(t):
        raise ValueError("size_cap must be at least size(t)")
    seen = {t}
    queue = deque([t])
    steps = 0
    while queue and steps < step_cap:
        current = queue.popleft()
        steps += 1
        for inst in law_instances(current):
            nxt = apply_law(current, inst)
            if nxt not in seen and size(nxt) <= size_cap:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def order_ald(s: Term, t: Term, oracle: LdOracle = DEFAULT_ORACLE) -> int:
    """Three-way order on one-variable terms whose kernel is ALD-equality.

    J-sequences compare first, entrywise in the LD order with a shorter
    strict prefix counting as smaller; equal sequences fall back to the
    ∘-term order on the I-parts.
    """
    if not (is_one_variable(s) and is_one_variable(t)):
        raise ValueError("order_ald needs one-variable terms")
    js, jt = inv_J(s), inv_J(t)
    for a, b in zip(js, jt):
        c = oracle.compare(a, b)
        if c != 0:
            return c
    if len(js) != len(jt):
        return -1 if len(js) < len(jt) else 1
    return circ_cmp(inv_I(s), inv_I(t))


class LdClassIndex:
    """Interning of LD-classes of one-variable *-terms.

    Classes are keyed by the braid evaluation at the trivial braid; the
    handle-reduced representatives are kept sorted in the braid order so a
    lookup costs O(log n) comparisons.
    """

    def __init__(self):
        self._reps: list = []

    def class_id(self, t: Term) -> int:
        word = handle_reduce(eval_star_braid(t, ()))
        lo, hi = 0, len(self._reps)
        while lo < hi:
            mid = (lo + hi) // 2
            c = braid_compare(self._reps[mid][0], word)
            if c == 0:
                return self._reps[mid][1]
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        new_id = len(self._reps)
        self._reps.insert(lo, (word, new_id))
        return new_id


def ald_class_key(t: Term, index: LdClassIndex) -> tuple:
    """Hashable key identifying the ALD-class of a one-variable term."""
    return (inv_I(t), tuple(index.class_id(e) for e in inv_J(t)))
