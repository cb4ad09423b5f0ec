from .model import DiagElt, JDiagram, RawDiagram, canonicalize
from .ops import (chord_elt, delete_strand, diag_exp, diag_inverse, diag_log,
                  double_strand, horizontal_from_word, permute_strands,
                  reverse_strand, stack, stack_commutator_connected, stu_expand,
                  tensor)
from .relations import (chord_diagrams, commute_check, four_t_space,
                        is_relation_consequence, one_vertex_diagrams, reduce_all,
                        reduce_nf, relation_space, RelationSpace)
from .trees import (connect_bracket, display_comb_certificate, eta, jn_elt,
                    jtilde_elt, make_jn, make_jtilde, prop44_certificate, tau,
                    tau_diagram)

__all__ = [
    "DiagElt", "JDiagram", "RawDiagram", "canonicalize",
    "chord_elt", "delete_strand", "diag_exp", "diag_inverse", "diag_log",
    "double_strand", "horizontal_from_word", "permute_strands",
    "reverse_strand", "stack", "stack_commutator_connected", "stu_expand",
    "tensor",
    "chord_diagrams", "commute_check", "four_t_space",
    "is_relation_consequence", "one_vertex_diagrams", "reduce_all",
    "reduce_nf", "relation_space", "RelationSpace",
    "connect_bracket", "display_comb_certificate", "eta", "jn_elt",
    "jtilde_elt", "make_jn", "make_jtilde", "prop44_certificate", "tau",
    "tau_diagram",
]
