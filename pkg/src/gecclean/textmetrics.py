"""Character-level similarity measures used to rank candidate corrections."""

from __future__ import annotations


def levenshtein_distance(s: str, t: str) -> int:
    """Unit-cost edit distance between the character sequences of s and t.

    Insertions, deletions and substitutions all cost 1; transpositions are
    not a primitive.  Runs in O(len(s) * len(t)) time and O(min) memory.
    """
    if s == t:
        return 0
    # Shared affixes never change the distance; trimming them keeps the DP
    # core tiny on the near-identical pairs that dominate GEC corpora.
    limit = min(len(s), len(t))
    prefix = 0
    while prefix < limit and s[prefix] == t[prefix]:
        prefix += 1
    suffix = 0
    while suffix < limit - prefix and s[-1 - suffix] == t[-1 - suffix]:
        suffix += 1
    s = s[prefix : len(s) - suffix]
    t = t[prefix : len(t) - suffix]
    if not s:
        return len(t)
    if not t:
        return len(s)
    if len(s) > len(t):
        s, t = t, s
    row = list(range(len(s) + 1))
    for j, tc in enumerate(t, 1):
        diagonal = row[0]
        row[0] = j
        for i, sc in enumerate(s, 1):
            above = row[i]
            best = diagonal if sc == tc else diagonal + 1
            left = row[i - 1] + 1
            if left < best:
                best = left
            up = above + 1
            if up < best:
                best = up
            row[i] = best
            diagonal = above
    return row[-1]


def levenshtein_ratio(s: str, t: str) -> float:
    """Length-normalized similarity in [0, 1].

    Defined as (total - distance) / total with total = len(s) + len(t).
    Two empty sentences are identical, so the degenerate 0/0 case is 1.0.
    """
    total = len(s) + len(t)
    if total == 0:
        return 1.0
    return (total - levenshtein_distance(s, t)) / total


def jaccard_similarity(s: str, t: str) -> float:
    """Intersection-over-union of the character sets of s and t.

    Set semantics: repeated characters within a sentence do not change the
    score.  Two empty sentences score 1.0.
    """
    a, b = set(s), set(t)
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)
