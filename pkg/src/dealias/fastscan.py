"""Accelerated all-pairs matching scan.

Compiles the pair decision (same rules, same float expressions as the pure
Python code in :mod:`rules` and :mod:`baselines`) with numba so corpora with
millions of pairs finish in seconds on one core. Strings are encoded to a
padded byte matrix up front; anything that does not fit latin-1 makes
:func:`encode_corpus` return None and callers fall back to the pure path.

Results are required to be identical to the pure implementations; the test
suite checks exact agreement pair by pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .normalize import Alias
from .rules import MatcherConfig
from .similarity import Measure

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency, but
    _HAVE_NUMBA = False  # keep the module importable without it

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return wrap


def available() -> bool:
    return _HAVE_NUMBA

# Row layout: each alias occupies 8 consecutive rows in the byte matrix.
_F_NAME = 0        # cleaned full name
_F_FIRST = 1       # first name token
_F_PEN = 2         # penultimate name token
_F_LAST = 3        # last name token
_F_BASE = 4        # email base (before '@')
_F_INIT_LAST = 5   # first initial + last name needle (len -1 if no name)
_F_FIRST_INIT = 6  # first name + last initial needle (len -1 if no name)
_F_EMAIL = 7       # full email; only its length is used (equality is by id)

_ROWS_PER_ALIAS = 8

_METHOD_CODES = {"gambit": 0, "simple": 1, "bird": 2}
_MEASURE_CODES = {Measure.LEVENSHTEIN: 0, Measure.JARO_WINKLER: 1}


@dataclass(frozen=True)
class EncodedCorpus:
    count: int
    buf: np.ndarray      # uint8 (count * 8, width)
    lens: np.ndarray     # int64 (count, 8); -1 marks an absent needle
    name_id: np.ndarray  # int64 (count,) equality class of the full name
    email_id: np.ndarray
    base_id: np.ndarray


def encode_corpus(aliases: list[Alias]) -> EncodedCorpus | None:
    """Pack alias fields into numba-friendly arrays.

    Returns None when any field contains a character outside latin-1 (the
    caller then uses the pure-Python scan instead).
    """
    n = len(aliases)
    fields: list[list[bytes]] = []
    try:
        for a in aliases:
            init_last = (a.first_name[0] + a.last_name) if a.first_name else None
            first_init = (a.first_name + a.last_name[0]) if a.last_name else None
            fields.append([
                a.name.encode("latin-1"),
                a.first_name.encode("latin-1"),
                a.penultimate_name.encode("latin-1"),
                a.last_name.encode("latin-1"),
                a.email_base.encode("latin-1"),
                init_last.encode("latin-1") if init_last is not None else None,
                first_init.encode("latin-1") if first_init is not None else None,
                a.email.encode("latin-1"),
            ])
    except UnicodeEncodeError:
        return None

    width = 1
    for row in fields:
        for b in row:
            if b is not None and len(b) > width:
                width = len(b)

    buf = np.zeros((n * _ROWS_PER_ALIAS, width), dtype=np.uint8)
    lens = np.empty((n, _ROWS_PER_ALIAS), dtype=np.int64)
    for i, row in enumerate(fields):
        for f, b in enumerate(row):
            if b is None:
                lens[i, f] = -1
            else:
                lens[i, f] = len(b)
                buf[i * _ROWS_PER_ALIAS + f, :len(b)] = np.frombuffer(b, dtype=np.uint8)

    def id_array(values: list[str]) -> np.ndarray:
        table: dict[str, int] = {}
        out = np.empty(n, dtype=np.int64)
        for i, v in enumerate(values):
            out[i] = table.setdefault(v, len(table))
        return out

    return EncodedCorpus(
        count=n,
        buf=buf,
        lens=lens,
        name_id=id_array([a.name for a in aliases]),
        email_id=id_array([a.email for a in aliases]),
        base_id=id_array([a.email_base for a in aliases]),
    )


@njit(cache=True)
def _lev_sim(buf, ra, la, rb, lb, work):
    longer = la if la >= lb else lb
    if longer == 0:
        return 1.0
    if la == lb:
        same = True
        for k in range(la):
            if buf[ra, k] != buf[rb, k]:
                same = False
                break
        if same:
            return 1.0
    for c in range(lb + 1):
        work[c] = c
    for r in range(1, la + 1):
        prev_diag = work[0]
        work[0] = r
        ca = buf[ra, r - 1]
        for c in range(1, lb + 1):
            above = work[c]
            cost = 0 if ca == buf[rb, c - 1] else 1
            v = prev_diag + cost
            if above + 1 < v:
                v = above + 1
            if work[c - 1] + 1 < v:
                v = work[c - 1] + 1
            work[c] = v
            prev_diag = above
    return 1.0 - work[lb] / longer


@njit(cache=True)
def _jw_sim(buf, ra, la, rb, lb, f1, f2):
    if la == 0 and lb == 0:
        return 1.0
    prefix = 0
    pmax = la if la < lb else lb
    if pmax > 4:
        pmax = 4
    for k in range(pmax):
        if buf[ra, k] != buf[rb, k]:
            break
        prefix += 1
    window = (la if la >= lb else lb) // 2 - 1
    if window < 0:
        window = 0
    for k in range(la):
        f1[k] = 0
    for k in range(lb):
        f2[k] = 0
    common = 0
    for i in range(la):
        lo = i - window
        if lo < 0:
            lo = 0
        hi = i + window + 1
        if hi > lb:
            hi = lb
        ca = buf[ra, i]
        for j in range(lo, hi):
            if f2[j] == 0 and buf[rb, j] == ca:
                f1[i] = 1
                f2[j] = 1
                common += 1
                break
    if common == 0:
        return 0.0
    out_of_order = 0
    k = 0
    for i in range(la):
        if f1[i] == 1:
            while f2[k] == 0:
                k += 1
            if buf[ra, i] != buf[rb, k]:
                out_of_order += 1
            k += 1
    trans = out_of_order // 2
    jaro = (common / la + common / lb + (common - trans) / common) / 3.0
    return jaro + 0.1 * prefix * (1.0 - jaro)


@njit(cache=True)
def _gs(buf, ra, la, rb, lb, measure, min_len, work, f1, f2):
    # gated similarity: short strings never match
    if la < min_len or lb < min_len:
        return 0.0
    if measure == 0:
        return _lev_sim(buf, ra, la, rb, lb, work)
    return _jw_sim(buf, ra, la, rb, lb, f1, f2)


@njit(cache=True)
def _contains(buf, rn, nl, rh, hl):
    if nl > hl:
        return False
    for s in range(hl - nl + 1):
        ok = True
        for k in range(nl):
            if buf[rh, s + k] != buf[rn, k]:
                ok = False
                break
        if ok:
            return True
    return False


@njit(cache=True)
def _pair_gambit(i, j, buf, lens, name_id, email_id, measure, t, m, work, f1, f2):
    # Running top-two average; rules are ordered cheap-first and we return
    # as soon as the average reaches t (it can only grow).
    ri = i * 8
    rj = j * 8
    m1 = 0.0
    m2 = 0.0

    # identical full names
    if lens[i, 0] >= m and lens[j, 0] >= m and name_id[i] == name_id[j]:
        m1 = 1.0
        if (m1 + m2) / 2.0 >= t:
            return True

    # identical full emails (weight 2)
    if lens[i, 7] >= m and lens[j, 7] >= m and email_id[i] == email_id[j]:
        if 2.0 > m1:
            m2 = m1
            m1 = 2.0
        else:
            m2 = 2.0
        if (m1 + m2) / 2.0 >= t:
            return True

    # first-initial+last-name needle in the other email base
    hit = False
    if lens[i, 5] >= m and lens[j, 4] >= m and _contains(buf, ri + 5, lens[i, 5], rj + 4, lens[j, 4]):
        hit = True
    elif lens[j, 5] >= m and lens[i, 4] >= m and _contains(buf, rj + 5, lens[j, 5], ri + 4, lens[i, 4]):
        hit = True
    if hit:
        s = 1.0
        if s > m1:
            m2 = m1
            m1 = s
        elif s > m2:
            m2 = s
        if (m1 + m2) / 2.0 >= t:
            return True

    # first-name+last-initial needle in the other email base
    hit = False
    if lens[i, 6] >= m and lens[j, 4] >= m and _contains(buf, ri + 6, lens[i, 6], rj + 4, lens[j, 4]):
        hit = True
    elif lens[j, 6] >= m and lens[i, 4] >= m and _contains(buf, rj + 6, lens[j, 6], ri + 4, lens[i, 4]):
        hit = True
    if hit:
        s = 1.0
        if s > m1:
            m2 = m1
            m1 = s
        elif s > m2:
            m2 = s
        if (m1 + m2) / 2.0 >= t:
            return True

    # first and last name both inside the other email base (weight 2)
    hit = False
    if (lens[i, 1] >= m and lens[i, 3] >= m and lens[j, 4] >= m
            and _contains(buf, ri + 1, lens[i, 1], rj + 4, lens[j, 4])
            and _contains(buf, ri + 3, lens[i, 3], rj + 4, lens[j, 4])):
        hit = True
    elif (lens[j, 1] >= m and lens[j, 3] >= m and lens[i, 4] >= m
            and _contains(buf, rj + 1, lens[j, 1], ri + 4, lens[i, 4])
            and _contains(buf, rj + 3, lens[j, 3], ri + 4, lens[i, 4])):
        hit = True
    if hit:
        s = 2.0
        if s > m1:
            m2 = m1
            m1 = s
        elif s > m2:
            m2 = s
        if (m1 + m2) / 2.0 >= t:
            return True

    # email base similarity
    s = _gs(buf, ri + 4, lens[i, 4], rj + 4, lens[j, 4], measure, m, work, f1, f2)
    if s > m1:
        m2 = m1
        m1 = s
    elif s > m2:
        m2 = s
    if (m1 + m2) / 2.0 >= t:
        return True

    # full name similarity
    s = _gs(buf, ri + 0, lens[i, 0], rj + 0, lens[j, 0], measure, m, work, f1, f2)
    if s > m1:
        m2 = m1
        m1 = s
    elif s > m2:
        m2 = s
    if (m1 + m2) / 2.0 >= t:
        return True

    # first/last token rules: straight order and both swapped variants
    a = _gs(buf, ri + 1, lens[i, 1], rj + 1, lens[j, 1], measure, m, work, f1, f2)
    if a > 0.0:
        b = _gs(buf, ri + 3, lens[i, 3], rj + 3, lens[j, 3], measure, m, work, f1, f2)
        b2 = _gs(buf, ri + 3, lens[i, 3], rj + 2, lens[j, 2], measure, m, work, f1, f2)
        if b2 > b:
            b = b2
        b2 = _gs(buf, ri + 2, lens[i, 2], rj + 3, lens[j, 3], measure, m, work, f1, f2)
        if b2 > b:
            b = b2
        s = a if a < b else b
        if s > m1:
            m2 = m1
            m1 = s
        elif s > m2:
            m2 = s
        if (m1 + m2) / 2.0 >= t:
            return True

    a = _gs(buf, ri + 1, lens[i, 1], rj + 3, lens[j, 3], measure, m, work, f1, f2)
    if a > 0.0:
        b = _gs(buf, ri + 2, lens[i, 2], rj + 1, lens[j, 1], measure, m, work, f1, f2)
        b2 = _gs(buf, ri + 3, lens[i, 3], rj + 2, lens[j, 2], measure, m, work, f1, f2)
        if b2 > b:
            b = b2
        b2 = _gs(buf, ri + 3, lens[i, 3], rj + 1, lens[j, 1], measure, m, work, f1, f2)
        if b2 > b:
            b = b2
        s = a if a < b else b
        if s > m1:
            m2 = m1
            m1 = s
        elif s > m2:
            m2 = s
        if (m1 + m2) / 2.0 >= t:
            return True

    a = _gs(buf, ri + 3, lens[i, 3], rj + 1, lens[j, 1], measure, m, work, f1, f2)
    if a > 0.0:
        b = _gs(buf, ri + 2, lens[i, 2], rj + 3, lens[j, 3], measure, m, work, f1, f2)
        b2 = _gs(buf, ri + 1, lens[i, 1], rj + 2, lens[j, 2], measure, m, work, f1, f2)
        if b2 > b:
            b = b2
        b2 = _gs(buf, ri + 1, lens[i, 1], rj + 3, lens[j, 3], measure, m, work, f1, f2)
        if b2 > b:
            b = b2
        s = a if a < b else b
        if s > m1:
            m2 = m1
            m1 = s
        elif s > m2:
            m2 = s

    return (m1 + m2) / 2.0 >= t


@njit(cache=True)
def _pair_simple(i, j, lens, name_id, base_id, m):
    if lens[i, 0] >= m and lens[j, 0] >= m and name_id[i] == name_id[j]:
        return True
    return lens[i, 4] >= m and lens[j, 4] >= m and base_id[i] == base_id[j]


@njit(cache=True)
def _pair_bird(i, j, buf, lens, measure, t, m, work, f1, f2):
    ri = i * 8
    rj = j * 8
    # containment conditions first (cheap)
    if (lens[i, 1] >= m and lens[i, 3] >= m and lens[j, 4] >= m
            and _contains(buf, ri + 1, lens[i, 1], rj + 4, lens[j, 4])
            and _contains(buf, ri + 3, lens[i, 3], rj + 4, lens[j, 4])):
        return True
    if (lens[j, 1] >= m and lens[j, 3] >= m and lens[i, 4] >= m
            and _contains(buf, rj + 1, lens[j, 1], ri + 4, lens[i, 4])
            and _contains(buf, rj + 3, lens[j, 3], ri + 4, lens[i, 4])):
        return True
    if lens[i, 5] >= m and lens[j, 4] >= m and _contains(buf, ri + 5, lens[i, 5], rj + 4, lens[j, 4]):
        return True
    if lens[j, 5] >= m and lens[i, 4] >= m and _contains(buf, rj + 5, lens[j, 5], ri + 4, lens[i, 4]):
        return True
    if lens[i, 6] >= m and lens[j, 4] >= m and _contains(buf, ri + 6, lens[i, 6], rj + 4, lens[j, 4]):
        return True
    if lens[j, 6] >= m and lens[i, 4] >= m and _contains(buf, rj + 6, lens[j, 6], ri + 4, lens[i, 4]):
        return True
    if _gs(buf, ri + 0, lens[i, 0], rj + 0, lens[j, 0], measure, m, work, f1, f2) >= t:
        return True
    a = _gs(buf, ri + 1, lens[i, 1], rj + 1, lens[j, 1], measure, m, work, f1, f2)
    if a >= t:
        b = _gs(buf, ri + 3, lens[i, 3], rj + 3, lens[j, 3], measure, m, work, f1, f2)
        if (a if a < b else b) >= t:
            return True
    return _gs(buf, ri + 4, lens[i, 4], rj + 4, lens[j, 4], measure, m, work, f1, f2) >= t


@njit(cache=True)
def _scan_row(i, method, measure, t, m, buf, lens, name_id, email_id, base_id,
              work, f1, f2, out):
    n = name_id.shape[0]
    cnt = 0
    for j in range(i + 1, n):
        if method == 0:
            hit = _pair_gambit(i, j, buf, lens, name_id, email_id, measure, t, m, work, f1, f2)
        elif method == 1:
            hit = _pair_simple(i, j, lens, name_id, base_id, m)
        else:
            hit = _pair_bird(i, j, buf, lens, measure, t, m, work, f1, f2)
        if hit:
            out[cnt] = j
            cnt += 1
    return cnt


def scan_matches(enc: EncodedCorpus, rows, method: str,
                 cfg: MatcherConfig) -> list[tuple[int, int]]:
    """Return matching index pairs (i, j), i < j, for the given rows."""
    method_code = _METHOD_CODES[method]
    measure_code = _MEASURE_CODES[cfg.measure]
    width = enc.buf.shape[1]
    work = np.empty(width + 1, dtype=np.int64)
    f1 = np.empty(width, dtype=np.uint8)
    f2 = np.empty(width, dtype=np.uint8)
    out = np.empty(max(enc.count, 1), dtype=np.int64)
    pairs: list[tuple[int, int]] = []
    for i in rows:
        cnt = _scan_row(i, method_code, measure_code, cfg.threshold, cfg.min_len,
                        enc.buf, enc.lens, enc.name_id, enc.email_id, enc.base_id,
                        work, f1, f2, out)
        for k in range(cnt):
            pairs.append((i, int(out[k])))
    return pairs
