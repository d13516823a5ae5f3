def damerau_levenshtein(a: str, b: str, max_distance: int | None = None) -> int:
    """Optimal-string-alignment distance: substitutions, insertions, deletions and
    adjacent transpositions, no substring edited twice (so no triangle inequality).

    With `max_distance`, returns `max_distance + 1` as soon as the bound is exceeded.

        >>> damerau_levenshtein("ca", "ac")
        1
        >>> damerau_levenshtein("juridical", "auridical")
        1
    """
    if a == b:
        return 0
    if max_distance is not None and abs(len(a) - len(b)) > max_distance:
        return max_distance + 1
    if not a:
        return len(b)
    if not b:
        return len(a)

    before_prev: list[int] = []
    prev = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        curr = [i] + [0] * len(b)
        for j in range(1, len(b) + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            best = min(
                prev[j] + 1,          # deletion
                curr[j - 1] + 1,      # insertion
                prev[j - 1] + cost,   # substitution
            )
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                best = min(best, before_prev[j - 2] + 1)
            curr[j] = best
        if max_distance is not None and min(curr) > max_distance:
            return max_distance + 1
        before_prev, prev = prev, curr
    return prev[-1]
