"""CPLEX LP text export of the MKP model, optionally with the bound cut.

Variables are ``x_<knapsack>_<item>`` with 1-based indices. The cut row
``seq_cut`` limits total profit to ``floor(z_seq)``.
"""

from __future__ import annotations

import io
import math
import os
from fractions import Fraction

from .model import MkpInstance

TERMS_PER_LINE = 8


def _var(i: int, j: int) -> str:
    return f"x_{i + 1}_{j + 1}"


def _row(name: str, terms: list[tuple[int, str]], tail: str = "") -> list[str]:
    parts = []
    for k, (coef, var) in enumerate(terms):
        sign = "" if k == 0 else "+ "
        parts.append(f"{sign}{coef} {var}" if coef != 1 else f"{sign}{var}")
    lines = []
    for k in range(0, len(parts), TERMS_PER_LINE):
        chunk = " ".join(parts[k:k + TERMS_PER_LINE])
        lines.append((f" {name}: " if k == 0 else "   ") + chunk)
    if tail:
        lines[-1] += f" {tail}"
    return lines


def format_lp(instance: MkpInstance, z_seq=None) -> str:
    n, m = instance.n, instance.m
    profit_terms = [(instance.items[j].profit, _var(i, j)) for i in range(m) for j in range(n)]
    out = io.StringIO()
    out.write(f"\\ MKP model {instance.name or ''}".rstrip() + f" (n={n}, m={m})\n")
    cut = None
    if z_seq is not None:
        cut = math.floor(Fraction(z_seq))
        out.write(f"\\ profit cut from sequential bound {Fraction(z_seq)} -> {cut}\n")
    lines = ["Maximize"]
    lines += _row("obj", profit_terms)
    lines.append("Subject To")
    for i in range(m):
        terms = [(instance.items[j].weight, _var(i, j)) for j in range(n)]
        lines += _row(f"cap_{i + 1}", terms, f"<= {instance.capacities[i]}")
    for j in range(n):
        terms = [(1, _var(i, j)) for i in range(m)]
        lines += _row(f"assign_{j + 1}", terms, "<= 1")
    if cut is not None:
        lines += _row("seq_cut", profit_terms, f"<= {cut}")
    lines.append("Binaries")
    names = [_var(i, j) for i in range(m) for j in range(n)]
    for k in range(0, len(names), TERMS_PER_LINE):
        lines.append(" " + " ".join(names[k:k + TERMS_PER_LINE]))
    lines.append("End")
    out.write("\n".join(lines) + "\n")
    return out.getvalue()


def export_lp_with_cut(instance: MkpInstance, z_seq, path) -> None:
    """Write the MKP model plus ``sum p_j x_ij <= floor(z_seq)`` to ``path``.

    ``z_seq=None`` writes the plain model.
    """
    text = format_lp(instance, z_seq)
    if isinstance(path, (str, os.PathLike)):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        path.write(text)
