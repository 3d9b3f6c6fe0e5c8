"""
Tree-braid-tree diagrams: a concrete model of the parenthesized braid group.

A diagram is a triple (dom, braid, cod): two finite binary trees with the
same number n of leaves and a braid word on n strands, read top to bottom
with dom on top.  Strand k starts at the k-th leaf of dom and ends at the
leaf of cod given by the braid's permutation.

The group structure comes from strand splitting: replacing strand k by two
parallel strands adds a caret to the matching leaf on both trees and cables
the braid (each crossing of the tracked strand becomes two).  Splitting does
not change the element represented, so two diagrams multiply by refining
until the middle trees agree, and a diagram is compared by first reducing it
(undoing every splitting it contains) and then comparing trees structurally
and braids by handle reduction.  Whether a caret pair may be cancelled is
decided semantically: merge, re-split, and accept only if the braid comes
back unchanged up to braid equality.

The generators: σ_i crosses leaves i and i+1 of a right comb with i+2
leaves; a_i regroups a right comb with i+2 leaves into the comb with i+1
leaves whose i-th leaf carries one extra caret, with no crossings at all.
Trees are represented as one-variable ∘-terms; a tree serializes as a
parenthesized leaf pattern like `(x(xx))`, a diagram as
{"dom": ..., "braid": ..., "cod": ...} with the braid in `s<i>`/`S<i>` text.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .braids import BraidWord, braid_equal, free_reduce, inverse, parse_braid, render_braid
from .pbwords import PBWord
from .terms import CIRC, Compound, Term, Variable, X, size


# ---------------------------------------------------------------------------
# Tree helpers (trees are one-variable ∘-terms)


def right_comb(n: int) -> Term:
    t: Term = X
    for _ in range(n - 1):
        t = Compound(CIRC, X, t)
    return t


def tree_pattern(t: Term) -> str:
    if isinstance(t, Variable):
        return "x"
    return f"({tree_pattern(t.left)}{tree_pattern(t.right)})"


def parse_tree_pattern(text: str) -> Term:
    pos = 0

    def node() -> Term:
        nonlocal pos
        if pos < len(text) and text[pos] == "x":
            pos += 1
            return X
        if pos < len(text) and text[pos] == "(":
            pos += 1
            left = node()
            right = node()
            if pos >= len(text) or text[pos] != ")":
                raise ValueError(f"expected ')' at {pos} in {text!r}")
            pos += 1
            return Compound(CIRC, left, right)
        raise ValueError(f"bad tree pattern at {pos} in {text!r}")

    t = node()
    if pos != len(text):
        raise ValueError(f"trailing input at {pos} in {text!r}")
    return t


def add_caret(t: Term, leaf: int) -> Term:
    """Replace the leaf-th leaf (1-based, left to right) by a caret."""

    def go(node: Term, k: int) -> tuple[Term, int]:
        if isinstance(node, Variable):
            if k == leaf:
                return Compound(CIRC, X, X), k + 1
            return node, k + 1
        left, k = go(node.left, k)
        right, k = go(node.right, k)
        return Compound(CIRC, left, right), k

    out, counted = go(t, 1)
    if leaf < 1 or leaf >= counted:
        raise ValueError(f"leaf {leaf} out of range")
    return out


def sibling_leaf_pairs(t: Term) -> list[int]:
    """Positions p such that leaves p and p+1 are the two children of a caret."""
    out: list[int] = []

    def go(node: Term, k: int) -> int:
        if isinstance(node, Variable):
            return k + 1
        if isinstance(node.left, Variable) and isinstance(node.right, Variable):
            out.append(k)
            return k + 2
        k = go(node.left, k)
        return go(node.right, k)

    go(t, 1)
    return out


def collapse_caret(t: Term, leaf: int) -> Term:
    """Merge the caret over leaves (leaf, leaf+1) back into a single leaf."""

    def go(node: Term, k: int) -> tuple[Term, int]:
        if isinstance(node, Variable):
            return node, k + 1
        if (
            isinstance(node.left, Variable)
            and isinstance(node.right, Variable)
            and k == leaf
        ):
            return X, k + 2
        left, k = go(node.left, k)
        right, k = go(node.right, k)
        return Compound(CIRC, left, right), k

    out, _ = go(t, 1)
    if size(out) != size(t) - 1:
        raise ValueError(f"no caret over leaves ({leaf}, {leaf + 1})")
    return out


def tree_join(t1: Term, t2: Term) -> Term:
    """Smallest common refinement in the caret order."""
    if isinstance(t1, Variable):
        return t2
    if isinstance(t2, Variable):
        return t1
    return Compound(CIRC, tree_join(t1.left, t2.left), tree_join(t1.right, t2.right))


def first_missing_leaf(t: Term, target: Term) -> int | None:
    """Leftmost leaf of t sitting where target has an internal node."""

    def go(node: Term, goal: Term, k: int) -> tuple[int | None, int]:
        if isinstance(node, Variable):
            if isinstance(goal, Variable):
                return None, k + 1
            return k, k + 1
        found, k = go(node.left, goal.left, k)
        if found is not None:
            return found, k
        return go(node.right, goal.right, k)

    found, _ = go(t, target, 1)
    return found


# ---------------------------------------------------------------------------
# Diagrams


@dataclass(frozen=True)
class PBDiagram:
    dom: Term
    braid: BraidWord
    cod: Term

    def __post_init__(self):
        n = size(self.dom)
        if size(self.cod) != n:
            raise ValueError("dom and cod must have the same number of leaves")
        if any(abs(x) < 1 or abs(x) >= n for x in self.braid):
            raise ValueError("braid indices must lie in [1, n-1]")

    @property
    def strands(self) -> int:
        return size(self.dom)

    def permutation(self) -> tuple[int, ...]:
        occupant = list(range(1, self.strands + 1))
        for x in self.braid:
            i = abs(x)
            occupant[i - 1], occupant[i] = occupant[i], occupant[i - 1]
        perm = [0] * self.strands
        for pos, strand in enumerate(occupant, start=1):
            perm[strand - 1] = pos
        return tuple(perm)

    def to_json(self) -> dict:
        return {
            "dom": tree_pattern(self.dom),
            "braid": render_braid(self.braid),
            "cod": tree_pattern(self.cod),
        }

    @classmethod
    def from_json(cls, data: dict) -> PBDiagram:
        return cls(
            parse_tree_pattern(data["dom"]),
            parse_braid(data["braid"]),
            parse_tree_pattern(data["cod"]),
        )


def identity_diagram() -> PBDiagram:
    return PBDiagram(X, (), X)


def gen_sigma(i: int) -> PBDiagram:
    if i < 1:
        raise ValueError("index must be >= 1")
    comb = right_comb(i + 2)
    return PBDiagram(comb, (i,), comb)


def gen_a(i: int) -> PBDiagram:
    if i < 1:
        raise ValueError("index must be >= 1")
    return PBDiagram(right_comb(i + 2), (), add_caret(right_comb(i + 1), i))


def split_strand(d: PBDiagram, k: int) -> PBDiagram:
    """Replace strand k (1-based dom leaf) by two parallel strands."""
    if not 1 <= k <= d.strands:
        raise ValueError(f"strand {k} out of range")
    cabled: list[int] = []
    c = k  # current position of the first cable strand
    for x in d.braid:
        i = abs(x)
        e = 1 if x > 0 else -1
        if i == c:
            # the cable at (i, i+1) crosses the strand at i+2
            cabled += [e * (i + 1), e * i]
            c = i + 1
        elif i + 1 == c:
            # the strand at i crosses the cable at (i+1, i+2)
            cabled += [e * i, e * (i + 1)]
            c = i
        elif i > c:
            cabled.append(e * (i + 1))
        else:
            cabled.append(x)
    end = d.permutation()[k - 1]
    return PBDiagram(add_caret(d.dom, k), tuple(cabled), add_caret(d.cod, end))


def _remove_strand(braid: BraidWord, k: int) -> BraidWord:
    """Delete the strand starting at position k, dropping its crossings."""
    out: list[int] = []
    c = k
    for x in braid:
        i = abs(x)
        if i == c:
            c = i + 1
        elif i + 1 == c:
            c = i
        elif i > c:
            out.append(x - 1 if x > 0 else x + 1)
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class ReductionSite:
    """Candidate caret cancellation: dom leaves (dom_pair, dom_pair+1) whose
    strands end on the cod leaves (cod_pair, cod_pair+1)."""

    dom_pair: int
    cod_pair: int


def reduction_sites(d: PBDiagram) -> list[ReductionSite]:
    """Sites whose leaf pairs are siblings on both sides and matched by the
    braid's permutation; whether a site actually cancels is decided
    semantically by merge-and-resplit."""
    perm = d.permutation()
    cod_pairs = set(sibling_leaf_pairs(d.cod))
    out = []
    for p in sibling_leaf_pairs(d.dom):
        q = min(perm[p - 1], perm[p])
        if abs(perm[p - 1] - perm[p]) == 1 and q in cod_pairs:
            out.append(ReductionSite(p, q))
    return out


def diagram_reduce(d: PBDiagram, rng: random.Random | None = None) -> PBDiagram:
    """Cancel caret pairs until none remains.

    A site cancels iff merging it and re-splitting reproduces the braid up
    to braid equality; that test makes reduction sound and complete relative
    to the braid engine.  An rng shuffles the candidate order (used by the
    confluence tests); the default is the deterministic leftmost order.
    """
    while True:
        candidates = reduction_sites(d)
        if rng is not None:
            rng.shuffle(candidates)
        for site in candidates:
            p, q = site.dom_pair, site.cod_pair
            merged = PBDiagram(
                collapse_caret(d.dom, p),
                _remove_strand(d.braid, p),
                collapse_caret(d.cod, q),
            )
            if braid_equal(split_strand(merged, p).braid, d.braid):
                d = merged
                break
        else:
            return d


def diagram_multiply(d1: PBDiagram, d2: PBDiagram) -> PBDiagram:
    """Stack d2 below d1, refining both until the middle trees agree."""
    middle = tree_join(d1.cod, d2.dom)
    while d1.cod != middle:
        q = first_missing_leaf(d1.cod, middle)
        k = d1.permutation().index(q) + 1
        d1 = split_strand(d1, k)
    while d2.dom != middle:
        d2 = split_strand(d2, first_missing_leaf(d2.dom, middle))
    return diagram_reduce(
        PBDiagram(d1.dom, free_reduce(d1.braid + d2.braid), d2.cod)
    )


def diagram_inverse(d: PBDiagram) -> PBDiagram:
    return PBDiagram(d.cod, inverse(d.braid), d.dom)


def diagram_shift(d: PBDiagram) -> PBDiagram:
    """The shift endomorphism: a fresh first strand in front of everything."""
    return PBDiagram(
        Compound(CIRC, X, d.dom),
        tuple(x + 1 if x > 0 else x - 1 for x in d.braid),
        Compound(CIRC, X, d.cod),
    )


@lru_cache(maxsize=None)
def _letter_diagram(fam: str, signed: int) -> PBDiagram:
    i = abs(signed)
    gen = gen_sigma(i) if fam == "s" else gen_a(i)
    return gen if signed > 0 else diagram_inverse(gen)


def word_to_diagram(w: PBWord) -> PBDiagram:
    """The homomorphism from words: letters map to generator diagrams."""
    d = identity_diagram()
    for fam, signed in w:
        d = diagram_multiply(d, _letter_diagram(fam, signed))
    return d


def diagram_equal(d1: PBDiagram, d2: PBDiagram) -> bool:
    """Reduce both; compare trees structurally and braids by handle reduction."""
    r1, r2 = diagram_reduce(d1), diagram_reduce(d2)
    return (
        r1.dom == r2.dom
        and r1.cod == r2.cod
        and braid_equal(r1.braid, r2.braid)
    )


def word_eq_oracle(w1: PBWord, w2: PBWord) -> bool:
    """Equality of parenthesized-braid words through the diagram model."""
    return diagram_equal(word_to_diagram(w1), word_to_diagram(w2))


# ---------------------------------------------------------------------------
# Structural evaluation of terms in the model


def diagram_star(b: PBDiagram, c: PBDiagram) -> PBDiagram:
    sb = diagram_shift(b)
    return diagram_multiply(
        diagram_multiply(diagram_multiply(b, diagram_shift(c)), gen_sigma(1)),
        diagram_inverse(sb),
    )


def diagram_circ(b: PBDiagram, c: PBDiagram) -> PBDiagram:
    return diagram_multiply(diagram_multiply(b, diagram_shift(c)), gen_a(1))


def diagram_eval_term(t: Term, g: PBDiagram, _cache: dict | None = None) -> PBDiagram:
    """Evaluate a one-variable term at the diagram g; memoizes subterms."""
    if _cache is None:
        _cache = {}
    key = t
    if key in _cache:
        return _cache[key]
    if isinstance(t, Variable):
        if t.index != 1:
            raise ValueError("term must be one-variable")
        result = g
    else:
        left = diagram_eval_term(t.left, g, _cache)
        right = diagram_eval_term(t.right, g, _cache)
        result = diagram_star(left, right) if t.op == "*" else diagram_circ(left, right)
    _cache[key] = result
    return result
