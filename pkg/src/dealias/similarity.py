"""String similarity measures used by the matchers.

Both measures return a value in [0, 1], are symmetric in their arguments,
and treat two empty strings as identical.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable


@lru_cache(maxsize=1 << 18)
def levenshtein_distance(s1: str, s2: str) -> int:
    """Minimum number of single-character insertions, deletions and
    substitutions that turn ``s1`` into ``s2``.

    Classic two-row dynamic program, O(len(s1) * len(s2)) time and
    O(min(len)) space.
    """
    if s1 == s2:
        return 0
    if len(s1) < len(s2):
        s1, s2 = s2, s1
    if not s2:
        return len(s1)
    previous = list(range(len(s2) + 1))
    for i, c1 in enumerate(s1, 1):
        current = [i]
        append = current.append
        for j, c2 in enumerate(s2, 1):
            append(min(previous[j] + 1, current[-1] + 1, previous[j - 1] + (c1 != c2)))
        previous = current
    return previous[-1]


def levenshtein_similarity(s1: str, s2: str) -> float:
    """Edit distance rescaled to a similarity: 1 - d / max(len(s1), len(s2))."""
    longer = max(len(s1), len(s2))
    if longer == 0:
        return 1.0
    return 1.0 - levenshtein_distance(s1, s2) / longer


@dataclass(frozen=True)
class JaroBreakdown:
    """Intermediate quantities behind a Jaro similarity value.

    ``common`` is the number of characters matched within the search window,
    ``transpositions`` half the matched characters that are out of order,
    ``prefix_len`` the length of the shared prefix (capped at 4), and
    ``jaro`` the plain Jaro similarity before any prefix boost.
    """

    common: int
    transpositions: int
    prefix_len: int
    jaro: float


def jaro_breakdown(s1: str, s2: str) -> JaroBreakdown:
    """Compute the Jaro similarity of two strings along with its parts."""
    len1, len2 = len(s1), len(s2)
    if len1 == 0 and len2 == 0:
        return JaroBreakdown(0, 0, 0, 1.0)

    prefix_len = 0
    for a, b in zip(s1[:4], s2[:4]):
        if a != b:
            break
        prefix_len += 1

    window = max(len1, len2) // 2 - 1
    if window < 0:
        window = 0

    matched1 = [False] * len1
    matched2 = [False] * len2
    common = 0
    for i, ch in enumerate(s1):
        lo = i - window if i > window else 0
        hi = i + window + 1
        if hi > len2:
            hi = len2
        for j in range(lo, hi):
            if not matched2[j] and s2[j] == ch:
                matched1[i] = True
                matched2[j] = True
                common += 1
                break

    if common == 0:
        return JaroBreakdown(0, 0, prefix_len, 0.0)

    # Count matched characters that appear in a different order in s2;
    # every two of them constitute one transposition.
    out_of_order = 0
    k = 0
    for i in range(len1):
        if matched1[i]:
            while not matched2[k]:
                k += 1
            if s1[i] != s2[k]:
                out_of_order += 1
            k += 1
    transpositions = out_of_order // 2

    jaro = (common / len1 + common / len2 + (common - transpositions) / common) / 3.0
    return JaroBreakdown(common, transpositions, prefix_len, jaro)


def jaro_similarity(s1: str, s2: str) -> float:
    return jaro_breakdown(s1, s2).jaro


def jaro_winkler_similarity(s1: str, s2: str) -> float:
    """Jaro similarity boosted towards 1 by a tenth per shared prefix
    character (at most four). The boost is applied unconditionally, not
    only above some base-similarity cutoff.
    """
    b = jaro_breakdown(s1, s2)
    return b.jaro + 0.1 * b.prefix_len * (1.0 - b.jaro)


class Measure(enum.Enum):
    """Selector for the string similarity used inside the rule set."""

    LEVENSHTEIN = "lev"
    JARO_WINKLER = "jw"

    @classmethod
    def from_token(cls, token: str) -> "Measure":
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"unknown measure {token!r}; expected one of "
                         f"{[m.value for m in cls]}")

    def function(self) -> Callable[[str, str], float]:
        return _MEASURE_FUNCTIONS[self]


_MEASURE_FUNCTIONS = {
    Measure.LEVENSHTEIN: levenshtein_similarity,
    Measure.JARO_WINKLER: jaro_winkler_similarity,
}
