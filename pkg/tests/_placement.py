"""Exhaustive placement search: can given item counts be packed?"""

from functools import lru_cache


def can_place(capacities, sizes, totals) -> bool:
    # smallest items first, so the search does not lean on the largest-first argument
    items = [s for s, k in sorted(zip(sizes, totals)) for _ in range(k)]

    @lru_cache(maxsize=None)
    def rec(k, residuals):
        if k == len(items):
            return True
        s = items[k]
        for r in set(residuals):
            if r >= s:
                rest = list(residuals)
                rest.remove(r)
                if rec(k + 1, tuple(sorted(rest + [r - s]))):
                    return True
        return False

    return rec(0, tuple(sorted(capacities)))
