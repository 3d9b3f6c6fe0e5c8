"""Augmented-LD word problem and the parenthesized braid group, at desk scale."""

from .braids import (
    braid_compare,
    braid_equal,
    braid_ld,
    braid_shift,
    eval_star_braid,
    free_reduce,
    handle_reduce,
    parse_braid,
    render_braid,
)
from .diagrams import (
    PBDiagram,
    diagram_equal,
    diagram_eval_term,
    diagram_inverse,
    diagram_multiply,
    diagram_reduce,
    diagram_shift,
    gen_a,
    gen_sigma,
    split_strand,
    word_to_diagram,
)
from .invariants import (
    AldClassKey,
    Verdict,
    ald_closure,
    decide_ald,
    derive_special,
    inv_I,
    inv_J,
    order_ald,
    specialize,
)
from .ldoracle import (
    LdOracle,
    LdVerdict,
    decide_ld_1var,
    decide_ld_bounded,
    find_sq_witness,
    seq_ld_equal,
)
from .pbwords import (
    not_in_image_shift,
    parse_pb,
    pb_act_term,
    pb_circ,
    pb_eval_closed,
    pb_eval_term,
    pb_shift,
    pb_star,
    render_pb,
    v_of_1,
)
from .terms import (
    Compound,
    LawInstance,
    ParseError,
    Term,
    Variable,
    apply_law,
    enumerate_terms,
    parse_term,
    render_term,
    size,
)

__all__ = [
    "AldClassKey",
    "Compound",
    "LawInstance",
    "LdOracle",
    "LdVerdict",
    "PBDiagram",
    "ParseError",
    "Term",
    "Variable",
    "Verdict",
    "ald_closure",
    "apply_law",
    "braid_compare",
    "braid_equal",
    "braid_ld",
    "braid_shift",
    "decide_ald",
    "decide_ld_1var",
    "decide_ld_bounded",
    "derive_special",
    "diagram_equal",
    "diagram_eval_term",
    "diagram_inverse",
    "diagram_multiply",
    "diagram_reduce",
    "diagram_shift",
    "enumerate_terms",
    "eval_star_braid",
    "find_sq_witness",
    "free_reduce",
    "gen_a",
    "gen_sigma",
    "handle_reduce",
    "inv_I",
    "inv_J",
    "not_in_image_shift",
    "order_ald",
    "parse_braid",
    "parse_pb",
    "parse_term",
    "pb_act_term",
    "pb_circ",
    "pb_eval_closed",
    "pb_eval_term",
    "pb_shift",
    "pb_star",
    "render_braid",
    "render_pb",
    "render_term",
    "seq_ld_equal",
    "size",
    "specialize",
    "split_strand",
    "v_of_1",
    "word_to_diagram",
]
