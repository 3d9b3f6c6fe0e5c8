import math
import random

import pytest

from aldbraid.terms import (
    ALD1,
    ALD2,
    CIRC,
    CONTRACT,
    EXPAND,
    LD,
    Compound,
    LawApplicationError,
    LawInstance,
    NotSpecial,
    ParseError,
    Variable,
    X,
    apply_law,
    circ_cmp,
    circ_less,
    decompose_special,
    enumerate_terms,
    ht_r,
    is_iter_left_subterm,
    is_special,
    law_instances,
    parse_term,
    random_term,
    render_term,
    seq_concat,
    seq_sq,
    seq_star,
    size,
    substitute,
    x_power,
)

T = parse_term


def star(a, b):
    return Compound("*", a, b)


def circ(a, b):
    return Compound("o", a, b)


# ---------------------------------------------------------------------------
# Parsing


def test_parse_worked_example():
    t = T("x1*((x2*x3)o x4)")
    assert t == star(Variable(1), circ(star(Variable(2), Variable(3)), Variable(4)))


def test_parse_bare_x_is_x1():
    assert T("x") == Variable(1)
    assert T("x") == T("x1")


def test_parse_right_association():
    assert T("x*(x*x)") == T("x*x*x")
    assert T("x o x o x") == T("x o (x o x)")
    assert T("x*x o x") == T("x*(x o x)")


def test_parse_errors_carry_position():
    for text, pos in [("x*", 2), ("(x*x", 4), ("x)", 1), ("y", 0), ("x0", 0), ("x**x", 2)]:
        with pytest.raises(ParseError) as err:
            T(text)
        assert err.value.position == pos


def test_render_round_trip_enumerated():
    for t in enumerate_terms(2, "*o", 4):
        assert parse_term(render_term(t)) == t


def test_render_round_trip_random():
    rng = random.Random(7)
    for _ in range(200):
        t = random_term(rng, rng.randint(1, 12), n_vars=3)
        assert parse_term(render_term(t)) == t


# ---------------------------------------------------------------------------
# Measurements


def test_size():
    assert size(X) == 1
    assert size(T("x1*((x2*x3)o x4)")) == 4
    assert size(T("x o (x o x)")) == 3


def test_ht_r():
    assert ht_r(X) == 0
    assert ht_r(T("(x*x) o x")) == 1
    assert ht_r(T("x*(x*x)")) == 2
    assert ht_r(T("(x o x)*x")) == 1


# ---------------------------------------------------------------------------
# Sequences


def test_seq_star_examples():
    s1, s2, t1, t2 = T("x1"), T("x2"), T("x3"), T("x4")
    assert seq_star((s1,), (t1,)) == (star(s1, t1),)
    assert seq_star((s1, s2), (t1,)) == (star(s1, star(s2, t1)),)
    assert seq_star((s1,), (t1, t2)) == (star(s1, t1), star(s1, t2))


def test_seq_concat():
    a, b, c = T("x1"), T("x2"), T("x3")
    assert seq_concat((a,), (b,)) == (a, b)
    assert seq_concat(seq_concat((a,), (b,)), (c,)) == seq_concat((a,), seq_concat((b,), (c,)))
    assert len(seq_concat((a, b), (a, b, c))) == 5


# ---------------------------------------------------------------------------
# Substitution


def test_substitute():
    t1, t2 = T("x1*(x2*x3)"), T("x1*x4")
    assert substitute(T("x o x"), (t1, t2)) == circ(t1, t2)
    assert substitute(X, (t1,)) == t1
    assert render_term(substitute(T("x o x"), (t1, t2))) == "(x1*x2*x3) o x1*x4"


def test_substitute_errors():
    with pytest.raises(ValueError):
        substitute(T("x o x"), (X,))
    with pytest.raises(ValueError):
        substitute(T("x*x"), (X, X))


def test_decompose_special():
    v, ts = decompose_special(T("(x1*x2) o x1"))
    assert v == T("x o x") and ts == (T("x1*x2"), T("x1"))
    with pytest.raises(NotSpecial):
        decompose_special(T("x1*(x2 o x3)"))
    assert decompose_special(T("x1*x2")) == (X, (T("x1*x2"),))


def test_substitute_decompose_round_trip():
    for t in enumerate_terms(1, "*o", 5):
        if is_special(t):
            v, ts = decompose_special(t)
            assert substitute(v, ts) == t
        else:
            with pytest.raises(NotSpecial):
                decompose_special(t)


# ---------------------------------------------------------------------------
# Orders


def test_circ_less_examples():
    assert circ_less(X, T("x o x"))
    assert circ_less(T("x o (x o x)"), T("(x o x) o x"))
    assert not circ_less(T("x o x"), T("x o x"))


def test_circ_less_is_strict_total_order():
    for cap in (4, 6):
        ts = list(enumerate_terms(1, CIRC, cap))
        ranked = sorted(ts, key=_circ_sort_key)
        for i, a in enumerate(ranked):
            assert circ_cmp(a, a) == 0
            for b in ranked[i + 1 :]:
                assert circ_cmp(a, b) == -1 and circ_cmp(b, a) == 1


def _circ_sort_key(t):
    # Independent encoding of the order: x before compounds, then lexicographic
    # on (left, right) keys.
    if isinstance(t, Variable):
        return (0,)
    return (1, _circ_sort_key(t.left), _circ_sort_key(t.right))


def test_iter_left_subterm():
    s = T("x1*x2")
    assert is_iter_left_subterm(s, T("((x1*x2)*x3)*x4"))
    assert not is_iter_left_subterm(s, s)
    assert not is_iter_left_subterm(s, star(T("x3"), s))
    assert not is_iter_left_subterm(s, circ(s, T("x3")))


def test_seq_sq():
    a, s = T("x1"), T("x2")
    t = star(star(s, T("x3")), T("x4"))
    assert seq_sq((a, s), (a, t))
    assert not seq_sq((a,), (a, s))
    assert not seq_sq((a, s), (a, s))
    assert not seq_sq((s, a), (a, t))


def test_x_power():
    assert x_power(1) == X
    assert x_power(3) == T("x o (x o x)")
    for n in range(1, 9):
        assert size(x_power(n)) == n
    with pytest.raises(ValueError):
        x_power(0)


# ---------------------------------------------------------------------------
# Law application


def test_apply_law_examples():
    root = ()
    assert apply_law(T("x*(x*x)"), LawInstance(LD, root, EXPAND)) == T("(x*x)*(x*x)")
    assert apply_law(T("x*(x*x)"), LawInstance(ALD1, root, CONTRACT)) == T("(x o x)*x")
    assert apply_law(T("x*(x o x)"), LawInstance(ALD2, root, EXPAND)) == T("(x*x) o (x*x)")
    assert apply_law(T("(x o x)*x"), LawInstance(ALD1, root, EXPAND)) == T("x*(x*x)")


def test_apply_law_mismatch():
    with pytest.raises(LawApplicationError):
        apply_law(T("x o x"), LawInstance(LD, (), EXPAND))
    with pytest.raises(LawApplicationError):
        apply_law(T("(x*x)*(x o x)"), LawInstance(LD, (), CONTRACT))


def test_apply_law_involution():
    rng = random.Random(11)
    checked = 0
    while checked < 300:
        t = random_term(rng, rng.randint(2, 9), n_vars=2)
        insts = list(law_instances(t))
        if not insts:
            continue
        inst = rng.choice(insts)
        assert apply_law(apply_law(t, inst), inst.reversed()) == t
        checked += 1


def test_ld_root_step_preserves_ht_r():
    rng = random.Random(13)
    for _ in range(200):
        t1 = random_term(rng, rng.randint(1, 4))
        t2 = random_term(rng, rng.randint(1, 4))
        t3 = random_term(rng, rng.randint(1, 4))
        t = star(t1, star(t2, t3))
        assert ht_r(apply_law(t, LawInstance(LD, (), EXPAND))) == ht_r(t)


def test_ald1_root_contraction_drops_ht_r_by_one():
    rng = random.Random(17)
    for _ in range(200):
        t = star(random_term(rng, 2), star(random_term(rng, 2), random_term(rng, 3)))
        assert ht_r(apply_law(t, LawInstance(ALD1, (), CONTRACT))) == ht_r(t) - 1


def test_steps_off_rightmost_branch_preserve_ht_r():
    rng = random.Random(19)
    checked = 0
    while checked < 200:
        t = random_term(rng, rng.randint(3, 9))
        insts = [i for i in law_instances(t) if "L" in i.pos]
        if not insts:
            continue
        inst = rng.choice(insts)
        assert ht_r(apply_law(t, inst)) == ht_r(t)
        checked += 1


# ---------------------------------------------------------------------------
# Enumeration


def test_enumerate_small():
    assert set(enumerate_terms(1, "*o", 2)) == {X, T("x*x"), T("x o x")}
    assert set(enumerate_terms(1, CIRC, 3)) == {
        X,
        T("x o x"),
        T("x o (x o x)"),
        T("(x o x) o x"),
    }


def test_enumerate_counts_match_catalan():
    # Over one variable and both operators there are Catalan(s-1) * 2^(s-1)
    # terms of size s: Catalan(s-1) shapes, one operator choice per node.
    for s in range(1, 7):
        got = sum(1 for t in enumerate_terms(1, "*o", s) if size(t) == s)
        expected = math.comb(2 * (s - 1), s - 1) // s * 2 ** (s - 1)
        assert got == expected


def test_enumerate_no_duplicates_and_deterministic():
    ts = list(enumerate_terms(2, "*o", 4))
    assert len(ts) == len(set(ts))
    assert ts == list(enumerate_terms(2, "*o", 4))
    assert [size(t) for t in ts] == sorted(size(t) for t in ts)
