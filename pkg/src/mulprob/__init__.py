"""Exact multiset and distribution calculus.

Multisets with natural multiplicities, finite discrete distributions with
exact rational weights, the classical draw channels between them, a
distributive law turning multisets of distributions into distributions
over multisets, probabilistic zipping, and conditioning.  Every claimed
equation is decidable and checked bit-exactly by the law suite.
"""

__version__ = "0.1.0"

from .combinatorics import MEMO_CAP, Rational, binomial, factorial, multichoose
from .elements import Elem, Pair, Space, elem_key
from .errors import DomainError, MulprobError, ParseError, ResourceLimitError
from .multiset import (
    Multiset,
    accumulate,
    enumerate_arrangements,
    enumerate_multisets,
    flatten_multiset,
)
from .dist import (
    Channel,
    Dist,
    Predicate,
    big_tensor,
    bind,
    channel_equal,
    compose,
    ctensor,
    dist_equal,
    dtensor,
    flatten,
    flrn,
    iid,
    pred_extend,
    push,
    unit,
    update,
    validity,
)
from .channels import (
    arr_channel,
    acc_channel,
    arrange,
    dd_channel,
    draw_delete,
    flrn_channel,
    hg_channel,
    hypergeometric,
    mn_channel,
    msum_channel,
    multinomial,
    multiset_space,
    mzip,
    mzip_channel,
    ppr,
    zip_tuples,
)
from .pml import (
    lifted_map,
    monoid_algebra,
    monoid_sum,
    pml,
    pml_def1,
    pml_def2,
    pml_def3_check,
    pml_def4,
)
from .ket import (
    format_dist,
    format_element,
    format_multiset,
    format_predicate,
    format_rational,
    format_value,
    parse_channel,
    parse_dist,
    parse_element,
    parse_multiset,
    parse_predicate,
    parse_value,
)
from .laws import LawContext, LawReport, catalogue, render_reports, run_laws

__all__ = [name for name in dir() if not name.startswith("_")]
