# Problem data and standing assumptions
from charperiodic.modules.model.spec import ProblemSpec, as_expr
from charperiodic.modules.model.validation import assemble_b_from_tilde, validate

__all__ = ["ProblemSpec", "as_expr", "assemble_b_from_tilde", "validate"]
