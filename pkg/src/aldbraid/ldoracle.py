"""
Deciding and comparing LD-equivalence of *-terms.

For one-variable *-terms the decision is total: evaluating at the trivial
braid under the LD operation on braid words is a complete invariant (the
closure of any braid under * is a free LD-system of rank one), and the
σ-positivity order on the evaluations linearly orders the LD-classes, with
s ⊏ t forcing s < t.

For terms with several variables only a bounded semi-decision is available
here: a breadth-first closure under single LD steps, capped in term size and
in expansion count, plus two cheap definite-NO filters (LD steps preserve the
set of variables occurring and the rightmost variable, though not variable
multiplicities).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .braids import LESS, braid_compare, eval_star_braid
from .terms import (
    LD,
    STAR,
    Compound,
    Term,
    TermSeq,
    apply_law,
    is_one_variable,
    is_star_term,
    law_instances,
    rightmost_variable,
    size,
    variables,
)

DEFAULT_STEP_CAP = 100_000


class LdVerdict(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not-equal"
    UNKNOWN = "unknown"


def _require_star(t: Term) -> None:
    if not is_star_term(t):
        raise ValueError("expected a *-term")


def decide_ld_1var(s: Term, t: Term) -> int:
    """Three-way LD comparison of one-variable *-terms (LESS/EQUAL/GREATER)."""
    for arg in (s, t):
        _require_star(arg)
        if not is_one_variable(arg):
            raise ValueError("expected a one-variable term")
    if s == t:
        return 0
    return braid_compare(eval_star_braid(s, ()), eval_star_braid(t, ()))


def default_size_cap(s: Term, t: Term) -> int:
    return 2 * max(size(s), size(t)) + 3


def ld_closure(t: Term, size_cap: int, step_cap: int = DEFAULT_STEP_CAP,
               target: Term | None = None) -> set:
    """Breadth-first closure of t under single LD steps within the caps.

    Stops early when `target` is reached.  Returns the set of visited terms.
    """
    seen = {t}
    queue = deque([t])
    steps = 0
    while queue and steps < step_cap:
        current = queue.popleft()
        steps += 1
        for inst in law_instances(current, laws=(LD,)):
            nxt = apply_law(current, inst)
            if nxt in seen or size(nxt) > size_cap:
                continue
            if nxt == target:
                seen.add(nxt)
                return seen
            seen.add(nxt)
            queue.append(nxt)
    return seen


def decide_ld_bounded(s: Term, t: Term, size_cap: int | None = None,
                      step_cap: int = DEFAULT_STEP_CAP) -> LdVerdict:
    """Bounded semi-decision of s =_LD t for arbitrary *-terms.

    EQUAL only when a rewriting path within the caps connects the terms;
    NOT_EQUAL only from invariant filters (variable set, rightmost variable);
    otherwise UNKNOWN.
    """
    _require_star(s)
    _require_star(t)
    if s == t:
        return LdVerdict.EQUAL
    if variables(s) != variables(t) or rightmost_variable(s) != rightmost_variable(t):
        return LdVerdict.NOT_EQUAL
    if size_cap is None:
        size_cap = default_size_cap(s, t)
    if t in ld_closure(s, size_cap, step_cap, target=t):
        return LdVerdict.EQUAL
    return LdVerdict.UNKNOWN


@dataclass
class LdOracle:
    """LD-equivalence oracle: total on one-variable input, bounded otherwise."""

    size_cap: int | None = None
    step_cap: int = DEFAULT_STEP_CAP

    def compare(self, s: Term, t: Term) -> int:
        return decide_ld_1var(s, t)

    def equal(self, s: Term, t: Term) -> LdVerdict:
        if s == t:
            return LdVerdict.EQUAL
        if is_one_variable(s) and is_one_variable(t):
            return (
                LdVerdict.EQUAL if decide_ld_1var(s, t) == 0 else LdVerdict.NOT_EQUAL
            )
        return decide_ld_bounded(s, t, self.size_cap, self.step_cap)


DEFAULT_ORACLE = LdOracle()


def seq_ld_equal(s: TermSeq, t: TermSeq, oracle: LdOracle = DEFAULT_ORACLE):
    """True/False when decided, LdVerdict.UNKNOWN when some pair exhausts caps."""
    if len(s) != len(t):
        return False
    unknown = False
    for a, b in zip(s, t):
        verdict = oracle.equal(a, b)
        if verdict is LdVerdict.NOT_EQUAL:
            return False
        if verdict is LdVerdict.UNKNOWN:
            unknown = True
    return LdVerdict.UNKNOWN if unknown else True


def find_sq_witness(s: Term, t: Term, size_cap: int | None = None,
                    step_cap: int = DEFAULT_STEP_CAP):
    """Rewrite LD-inequivalent one-variable terms into an iterated-left-subterm pair.

    Returns (s', t') with s' =_LD s, t' =_LD t, and s' ⊏ t' when s < t
    (t' ⊏ s' when t < s); None when the capped closures contain no such pair.
    """
    sign = decide_ld_1var(s, t)
    if sign == 0:
        raise ValueError("find_sq_witness needs LD-inequivalent terms")
    if size_cap is None:
        size_cap = default_size_cap(s, t) + 3
    lo, hi = (s, t) if sign == LESS else (t, s)
    lo_closure = ld_closure(lo, size_cap, step_cap)
    hi_closure = ld_closure(hi, size_cap, step_cap)
    for big in hi_closure:
        node = big
        while isinstance(node, Compound) and node.op == STAR:
            node = node.left
            if node in lo_closure:
                return (node, big) if sign == LESS else (big, node)
    return None
