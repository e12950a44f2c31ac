"""Finite embeddability of sets of naturals: exact decisions, certificates,
structural classifiers, and filter-base approximations of ultrafilter sums."""

__version__ = "0.1.0"

from .natset import (  # noqa: E402
    DEFAULT_HORIZON, EventuallyPeriodic, Finite, Generator, NatSet, Truth, Verdict, ap, canonical,
    complement, describe, difference, empty, finite, intersect, interval, is_subset, member,
    naturals, normalize, per, shift_left, shift_right, union, window,
)
from .embed import (  # noqa: E402
    FeVerdict, construct_bprime, fe, fe_bounded, fe_decide, includes_translate, proper_fe,
    translate_witnesses, verify_verdict, witness_set,
)
from .expr import load_corpus, parse_base, parse_expr  # noqa: E402
