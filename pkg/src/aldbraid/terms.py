"""
Binary terms over the operators * and ∘ (ASCII: `o`), and the raw structural
operations every other module builds on.

A term is a binary tree whose leaves are variables x1, x2, ... (bare `x` is an
alias for x1).  T^* denotes the pure *-terms, T^o the pure ∘-terms, and T_1
the one-variable terms.  The three rewriting laws of interest are

    (LD)    t1 * (t2 * t3)  =  (t1 * t2) * (t1 * t3)
    (ALD1)  t1 * (t2 * t3)  =  (t1 ∘ t2) * t3
    (ALD2)  t1 * (t2 ∘ t3)  =  (t1 * t2) ∘ (t1 * t3)

Grammar (whitespace insignificant):

    term := atom | term op term | "(" term ")"
    op   := "*" | "o"
    atom := "x" digits?

Both operators have equal precedence and associate to the right, so
`x*y*z` parses as `x*(y*z)`.  Canonical rendering emits minimal parentheses
under that convention: a compound left operand is parenthesized, a right
operand never is.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

STAR = "*"
CIRC = "o"

EXPAND = "expand"
CONTRACT = "contract"

LD = "ld"
ALD1 = "ald1"
ALD2 = "ald2"


@dataclass(frozen=True)
class Variable:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Compound:
    op: str
    left: Term
    right: Term

    def __post_init__(self):
        if self.op not in (STAR, CIRC):
            raise ValueError(f"unknown operator {self.op!r}")


Term = Union[Variable, Compound]

#: The unique one-variable leaf; most of the theory lives over it.
X = Variable(1)

#: A term sequence is a plain nonempty tuple of terms.
TermSeq = tuple  # tuple[Term, ...]

#: Path from the root: "L"/"R" steps.
Position = tuple  # tuple[str, ...]


@dataclass(frozen=True)
class LawInstance:
    """One rewriting step: a law applied at a position, in a direction.

    `expand` is the direction that grows the term (LD, ALD2) or grows the
    rightmost branch (ALD1: (a∘b)*c -> a*(b*c)); `contract` is the inverse.
    """

    law: str
    pos: Position
    direction: str

    def __post_init__(self):
        if self.law not in (LD, ALD1, ALD2):
            raise ValueError(f"unknown law {self.law!r}")
        if self.direction not in (EXPAND, CONTRACT):
            raise ValueError(f"unknown direction {self.direction!r}")

    def reversed(self) -> LawInstance:
        other = CONTRACT if self.direction == EXPAND else EXPAND
        return LawInstance(self.law, self.pos, other)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# Parsing and rendering


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    """Return (kind, value, position) triples; kind is one of x ( ) * o."""
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()*":
            tokens.append((c, 0, i))
            i += 1
        elif c == "o":
            tokens.append(("o", 0, i))
            i += 1
        elif c == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                index = 1
            else:
                index = int(text[i + 1 : j])
                if index < 1:
                    raise ParseError("variable index must be >= 1", i)
            tokens.append(("x", index, i))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    return tokens


def parse_term(text: str) -> Term:
    """Parse a term; raises ParseError with a position on malformed input."""
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos][0] if pos < len(tokens) else None

    def where() -> int:
        return tokens[pos][2] if pos < len(tokens) else len(text)

    def primary() -> Term:
        nonlocal pos
        kind = peek()
        if kind == "x":
            t = Variable(tokens[pos][1])
            pos += 1
            return t
        if kind == "(":
            pos += 1
            t = expr()
            if peek() != ")":
                raise ParseError("expected ')'", where())
            pos += 1
            return t
        raise ParseError("expected a term", where())

    def expr() -> Term:
        nonlocal pos
        left = primary()
        if peek() in (STAR, CIRC):
            op = peek()
            pos += 1
            right = expr()  # right-associative, equal precedence
            return Compound(op, left, right)
        return left

    result = expr()
    if pos != len(tokens):
        raise ParseError("trailing input", where())
    return result


def render_term(t: Term) -> str:
    """Canonical rendering; round-trips through parse_term."""
    if isinstance(t, Variable):
        return f"x{t.index}"
    left = render_term(t.left)
    if isinstance(t.left, Compound):
        left = f"({left})"
    sep = t.op if t.op == STAR else f" {CIRC} "
    return f"{left}{sep}{render_term(t.right)}"


# ---------------------------------------------------------------------------
# Basic measurements and predicates


def size(t: Term) -> int:
    """Number of variable occurrences (leaf count)."""
    if isinstance(t, Variable):
        return 1
    return size(t.left) + size(t.right)


def ht_r(t: Term) -> int:
    """Length of the rightmost branch: ht_r(x) = 0, ht_r(a □ b) = ht_r(b) + 1."""
    h = 0
    while isinstance(t, Compound):
        t = t.right
        h += 1
    return h


def variables(t: Term) -> set[int]:
    if isinstance(t, Variable):
        return {t.index}
    return variables(t.left) | variables(t.right)


def rightmost_variable(t: Term) -> int:
    while isinstance(t, Compound):
        t = t.right
    return t.index


def is_one_variable(t: Term) -> bool:
    return variables(t) == {1}


def uses_only(t: Term, ops: Iterable[str]) -> bool:
    allowed = set(ops)
    if isinstance(t, Variable):
        return True
    return t.op in allowed and uses_only(t.left, allowed) and uses_only(t.right, allowed)


def is_star_term(t: Term) -> bool:
    return uses_only(t, (STAR,))


def is_circ_term(t: Term) -> bool:
    return uses_only(t, (CIRC,))


def is_special(t: Term) -> bool:
    """No ∘ symbol below a * symbol (root on top)."""
    if isinstance(t, Variable):
        return True
    if t.op == STAR:
        return is_star_term(t)
    return is_special(t.left) and is_special(t.right)


# ---------------------------------------------------------------------------
# Sequences


def seq_concat(s: TermSeq, t: TermSeq) -> TermSeq:
    return s + t


def star_chain(factors: Iterable[Term], last: Term) -> Term:
    """factors f1..fp and last e give f1*(f2*(...*(fp*e)...))."""
    result = last
    for f in reversed(list(factors)):
        result = Compound(STAR, f, result)
    return result


def seq_star(s: TermSeq, t: TermSeq) -> TermSeq:
    """Entrywise s1*...*sp*t_k with missing parentheses added on the right."""
    return tuple(star_chain(s, tk) for tk in t)


# ---------------------------------------------------------------------------
# Substitution into ∘-skeletons


def substitute(v: Term, ts: TermSeq) -> Term:
    """Replace the leaves of the one-variable ∘-term v, left to right, by ts."""
    if not is_circ_term(v) or not is_one_variable(v):
        raise ValueError("skeleton must be a one-variable ∘-term")
    if size(v) != len(ts):
        raise ValueError(f"need {size(v)} terms, got {len(ts)}")

    def go(node: Term, k: int) -> tuple[Term, int]:
        if isinstance(node, Variable):
            return ts[k], k + 1
        left, k = go(node.left, k)
        right, k = go(node.right, k)
        return Compound(CIRC, left, right), k

    result, used = go(v, 0)
    assert used == len(ts)
    return result


class NotSpecial(Exception):
    """Raised by decompose_special when some ∘ occurs below a *."""


def decompose_special(t: Term) -> tuple[Term, TermSeq]:
    """Inverse of substitute: split a special term into (∘-skeleton, *-components).

    Raises NotSpecial if t has a ∘ below a *.
    """
    skeleton_parts: list[Term] = []

    def go(node: Term) -> Term:
        if isinstance(node, Compound) and node.op == CIRC:
            return Compound(CIRC, go(node.left), go(node.right))
        if not is_star_term(node):
            raise NotSpecial(render_term(node))
        skeleton_parts.append(node)
        return X

    skeleton = go(t)
    return skeleton, tuple(skeleton_parts)


# ---------------------------------------------------------------------------
# Orders and subterm relations


def circ_cmp(u: Term, v: Term) -> int:
    """Three-way comparison in the linear order on one-variable ∘-terms.

    x is smallest; compounds compare by left subterm, then right.
    """
    for t in (u, v):
        if not (is_circ_term(t) and is_one_variable(t)):
            raise ValueError("arguments must be one-variable ∘-terms")
    return _circ_cmp(u, v)


def _circ_cmp(u: Term, v: Term) -> int:
    if u == v:
        return 0
    if isinstance(u, Variable):
        return -1
    if isinstance(v, Variable):
        return 1
    c = _circ_cmp(u.left, v.left)
    if c != 0:
        return c
    return _circ_cmp(u.right, v.right)


def circ_less(u: Term, v: Term) -> bool:
    return circ_cmp(u, v) < 0


def is_iter_left_subterm(s: Term, t: Term) -> bool:
    """s ⊏ t: t = (...((s*t1)*t2)...)*tp for some p >= 1."""
    u = t
    while isinstance(u, Compound) and u.op == STAR:
        u = u.left
        if u == s:
            return True
    return False


def seq_sq(s: TermSeq, t: TermSeq) -> bool:
    """s ⃗⊏ t: equal lengths, syntactically equal up to some k, and s_k ⊏ t_k."""
    if len(s) != len(t):
        return False
    for sk, tk in zip(s, t):
        if sk == tk:
            continue
        return is_iter_left_subterm(sk, tk)
    return False


def x_power(n: int) -> Term:
    """Right ∘-comb with n leaves: x, x∘x, x∘(x∘x), ..."""
    if n < 1:
        raise ValueError("need n >= 1")
    t: Term = X
    for _ in range(n - 1):
        t = Compound(CIRC, X, t)
    return t


# ---------------------------------------------------------------------------
# Law application


def subterm_at(t: Term, pos: Position) -> Term:
    for step in pos:
        if not isinstance(t, Compound):
            raise ValueError("position runs past a leaf")
        t = t.left if step == "L" else t.right
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    if not isinstance(t, Compound):
        raise ValueError("position runs past a leaf")
    if pos[0] == "L":
        return Compound(t.op, replace_at(t.left, pos[1:], new), t.right)
    return Compound(t.op, t.left, replace_at(t.right, pos[1:], new))


class LawApplicationError(ValueError):
    """The law's source pattern does not match at the given position."""


def _rewrite_redex(t: Term, law: str, direction: str) -> Term:
    if direction == EXPAND:
        if law == LD:
            # t1*(t2*t3) -> (t1*t2)*(t1*t3)
            if (
                isinstance(t, Compound)
                and t.op == STAR
                and isinstance(t.right, Compound)
                and t.right.op == STAR
            ):
                t1, t2, t3 = t.left, t.right.left, t.right.right
                return Compound(STAR, Compound(STAR, t1, t2), Compound(STAR, t1, t3))
        elif law == ALD1:
            # (t1∘t2)*t3 -> t1*(t2*t3)
            if (
                isinstance(t, Compound)
                and t.op == STAR
                and isinstance(t.left, Compound)
                and t.left.op == CIRC
            ):
                t1, t2, t3 = t.left.left, t.left.right, t.right
                return Compound(STAR, t1, Compound(STAR, t2, t3))
        else:
            # t1*(t2∘t3) -> (t1*t2)∘(t1*t3)
            if (
                isinstance(t, Compound)
                and t.op == STAR
                and isinstance(t.right, Compound)
                and t.right.op == CIRC
            ):
                t1, t2, t3 = t.left, t.right.left, t.right.right
                return Compound(CIRC, Compound(STAR, t1, t2), Compound(STAR, t1, t3))
    else:
        if law == LD:
            # (t1*t2)*(t1*t3) -> t1*(t2*t3), requiring the two t1 copies equal
            if (
                isinstance(t, Compound)
                and t.op == STAR
                and isinstance(t.left, Compound)
                and t.left.op == STAR
                and isinstance(t.right, Compound)
                and t.right.op == STAR
                and t.left.left == t.right.left
            ):
                t1, t2, t3 = t.left.left, t.left.right, t.right.right
                return Compound(STAR, t1, Compound(STAR, t2, t3))
        elif law == ALD1:
            # t1*(t2*t3) -> (t1∘t2)*t3
            if (
                isinstance(t, Compound)
                and t.op == STAR
                and isinstance(t.right, Compound)
                and t.right.op == STAR
            ):
                t1, t2, t3 = t.left, t.right.left, t.right.right
                return Compound(STAR, Compound(CIRC, t1, t2), t3)
        else:
            # (t1*t2)∘(t1*t3) -> t1*(t2∘t3)
            if (
                isinstance(t, Compound)
                and t.op == CIRC
                and isinstance(t.left, Compound)
                and t.left.op == STAR
                and isinstance(t.right, Compound)
                and t.right.op == STAR
                and t.left.left == t.right.left
            ):
                t1, t2, t3 = t.left.left, t.left.right, t.right.right
                return Compound(STAR, t1, Compound(CIRC, t2, t3))
    raise LawApplicationError(f"{law}/{direction} does not match {render_term(t)}")


def apply_law(t: Term, inst: LawInstance) -> Term:
    """One rewriting step at inst.pos; raises LawApplicationError on mismatch."""
    redex = subterm_at(t, inst.pos)
    return replace_at(t, inst.pos, _rewrite_redex(redex, inst.law, inst.direction))


def law_instances(t: Term, laws: Iterable[str] = (LD, ALD1, ALD2)) -> Iterator[LawInstance]:
    """All law instances applicable somewhere in t, root first."""
    laws = tuple(laws)

    def walk(node: Term, pos: Position) -> Iterator[LawInstance]:
        if not isinstance(node, Compound):
            return
        for law in laws:
            for direction in (EXPAND, CONTRACT):
                try:
                    _rewrite_redex(node, law, direction)
                except LawApplicationError:
                    continue
                yield LawInstance(law, pos, direction)
        yield from walk(node.left, pos + ("L",))
        yield from walk(node.right, pos + ("R",))

    return walk(t, ())


# ---------------------------------------------------------------------------
# Enumeration and random generation


@lru_cache(maxsize=None)
def _terms_of_size(n_vars: int, ops: tuple[str, ...], s: int) -> tuple[Term, ...]:
    if s == 1:
        return tuple(Variable(i) for i in range(1, n_vars + 1))
    out: list[Term] = []
    for op in ops:
        for left_size in range(1, s):
            for left in _terms_of_size(n_vars, ops, left_size):
                for right in _terms_of_size(n_vars, ops, s - left_size):
                    out.append(Compound(op, left, right))
    return tuple(out)


def enumerate_terms(n_vars: int, ops: Iterable[str], max_size: int) -> Iterator[Term]:
    """Every term over the given variables/operators with size <= max_size,
    exactly once, ordered by size then by a fixed structural order."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    ops_key = tuple(sorted(set(ops)))
    for s in range(1, max_size + 1):
        yield from _terms_of_size(n_vars, ops_key, s)


def random_term(rng, target_size: int, n_vars: int = 1, ops: Iterable[str] = (STAR, CIRC)) -> Term:
    """Uniformly shaped random term of the given size (splits chosen uniformly)."""
    ops = tuple(ops)
    if target_size == 1:
        return Variable(rng.randint(1, n_vars))
    left_size = rng.randint(1, target_size - 1)
    return Compound(
        rng.choice(ops),
        random_term(rng, left_size, n_vars, ops),
        random_term(rng, target_size - left_size, n_vars, ops),
    )
