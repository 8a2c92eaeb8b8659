"""Exhaustive subset enumeration used as a knapsack oracle."""

import numpy as np


def subset_matrix(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.int64)


def enum_knapsack(items, capacity: int) -> int:
    if not items:
        return 0
    x = subset_matrix(len(items))
    p = np.array([it[0] for it in items], dtype=np.int64)
    w = np.array([it[1] for it in items], dtype=np.int64)
    load = x @ w
    value = x @ p
    return int(value[load <= capacity].max())
