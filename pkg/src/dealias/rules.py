"""The ten-rule alias matcher.

Each rule compares a different combination of name parts and email parts
between two aliases and yields a score. A pair is considered the same
author when the average of the two largest rule scores reaches the
decision threshold. Two rules that constitute near-certain evidence on
their own (shared full email, both name parts embedded in the other's
email base) score 2 instead of 1, so either one alone can carry the
decision even at threshold 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .normalize import Alias
from .similarity import Measure


@dataclass(frozen=True)
class MatcherConfig:
    """Matching parameters.

    ``threshold`` is the decision cutoff on the top-two rule average,
    ``measure`` the string similarity used by the graded rules, and
    ``min_len`` the minimum string length: any comparison that involves a
    string shorter than this scores 0, which keeps initials and one-letter
    fragments from producing spurious matches.
    """

    threshold: float = 0.95
    measure: Measure = Measure.LEVENSHTEIN
    min_len: int = 3

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.min_len < 1:
            raise ValueError(f"min_len must be >= 1, got {self.min_len}")


DEFAULT_CONFIG = MatcherConfig()


def _contains_initial_last(x: Alias, y: Alias, min_len: int) -> bool:
    # first-name initial glued to the last name, e.g. "jdoe", inside y's
    # email base
    if not x.first_name:
        return False
    needle = x.first_name[0] + x.last_name
    return (len(needle) >= min_len and len(y.email_base) >= min_len
            and needle in y.email_base)


def _contains_first_initial(x: Alias, y: Alias, min_len: int) -> bool:
    # first name glued to the last-name initial, e.g. "johnd"
    if not x.last_name:
        return False
    needle = x.first_name + x.last_name[0]
    return (len(needle) >= min_len and len(y.email_base) >= min_len
            and needle in y.email_base)


def _contains_both_names(x: Alias, y: Alias, min_len: int) -> bool:
    # first and last name both occur somewhere in y's email base
    if (len(x.first_name) < min_len or len(x.last_name) < min_len
            or len(y.email_base) < min_len):
        return False
    return x.first_name in y.email_base and x.last_name in y.email_base


def score_pair(a: Alias, b: Alias, cfg: MatcherConfig = DEFAULT_CONFIG) -> tuple[float, ...]:
    """Score an alias pair under all ten rules.

    Returns a 10-tuple:

    0. similarity of the full names
    1. 1 if the full names are identical
    2. first names similar and a's last name similar to b's last or
       penultimate name (or vice versa) -- the usual same-order case
    3. a's first name against b's last name (name order swapped in b)
    4. a's last name against b's first name (name order swapped in a)
    5. 1 if either alias's first-initial+last-name occurs in the other's
       email base
    6. 1 if either alias's first-name+last-initial occurs in the other's
       email base
    7. 2 if either alias's first and last name both occur in the other's
       email base
    8. 2 if the full emails are identical
    9. similarity of the email bases

    Every comparison is gated on ``cfg.min_len``: a rule in which any
    compared string (or constructed needle) is shorter scores 0. Rules 2-4
    take the minimum of the first-name leg and the best last-name leg, so
    both legs must hold. Containment rules check both directions.
    """
    sim = cfg.measure.function()
    m = cfg.min_len

    def gs(x: str, y: str) -> float:
        if len(x) < m or len(y) < m:
            return 0.0
        return sim(x, y)

    name_gate = len(a.name) >= m and len(b.name) >= m
    email_gate = len(a.email) >= m and len(b.email) >= m

    r_name_sim = gs(a.name, b.name)
    r_name_eq = 1.0 if name_gate and a.name == b.name else 0.0

    r_straight = min(gs(a.first_name, b.first_name),
                     max(gs(a.last_name, b.last_name),
                         gs(a.last_name, b.penultimate_name),
                         gs(a.penultimate_name, b.last_name)))
    r_swap_b = min(gs(a.first_name, b.last_name),
                   max(gs(a.penultimate_name, b.first_name),
                       gs(a.last_name, b.penultimate_name),
                       gs(a.last_name, b.first_name)))
    r_swap_a = min(gs(a.last_name, b.first_name),
                   max(gs(a.penultimate_name, b.last_name),
                       gs(a.first_name, b.penultimate_name),
                       gs(a.first_name, b.last_name)))

    r_initial_last = 1.0 if (_contains_initial_last(a, b, m)
                             or _contains_initial_last(b, a, m)) else 0.0
    r_first_initial = 1.0 if (_contains_first_initial(a, b, m)
                              or _contains_first_initial(b, a, m)) else 0.0
    r_both_in_base = 2.0 if (_contains_both_names(a, b, m)
                             or _contains_both_names(b, a, m)) else 0.0
    r_email_eq = 2.0 if email_gate and a.email == b.email else 0.0
    r_base_sim = gs(a.email_base, b.email_base)

    return (r_name_sim, r_name_eq, r_straight, r_swap_b, r_swap_a,
            r_initial_last, r_first_initial, r_both_in_base, r_email_eq,
            r_base_sim)


def top_two_average(scores: Sequence[float]) -> float:
    """Mean of the two largest entries of a score vector."""
    first = second = float("-inf")
    for s in scores:
        if s > first:
            first, second = s, first
        elif s > second:
            second = s
    return (first + second) / 2.0


def is_match(scores: Sequence[float], cfg: MatcherConfig = DEFAULT_CONFIG) -> bool:
    """Decide a pair: does the top-two average reach the threshold?"""
    return top_two_average(scores) >= cfg.threshold
