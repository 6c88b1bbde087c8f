"""Monomial orders: weighted graded reverse-lex and block elimination."""

from __future__ import annotations

from typing import Sequence


class MonomialOrder:
    """Total order on exponent tuples, exposed as a sort key."""

    def key(self, mon: tuple):
        raise NotImplementedError

    def leading(self, terms: dict) -> tuple:
        return max(terms, key=self.key)

    def sorted_desc(self, terms: dict) -> list:
        return sorted(terms, key=self.key, reverse=True)


class WGrevLex(MonomialOrder):
    """Weighted degree first, ties by reverse lexicographic comparison."""

    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(weights)

    def key(self, mon: tuple):
        w = self.weights
        deg = 0
        for e, ww in zip(mon, w):
            deg += e * ww
        return (deg, tuple(-e for e in reversed(mon)))

    def __repr__(self):
        return f"WGrevLex{self.weights}"


class BlockElimination(MonomialOrder):
    """Eliminates the variables in ``block`` (given as indices).

    Compares the block part by unweighted grevlex, then the remaining
    variables by the inner order restricted to them.
    """

    def __init__(self, block: Sequence[int], inner: MonomialOrder, nvars: int):
        self.block = tuple(sorted(block))
        self.rest = tuple(i for i in range(nvars) if i not in set(self.block))
        self.inner = inner
        self.nvars = nvars

    def key(self, mon: tuple):
        bpart = tuple(mon[i] for i in self.block)
        rpart = tuple(mon[i] for i in self.rest)
        full = list(mon)
        for i in self.block:
            full[i] = 0
        return (
            sum(bpart),
            tuple(-e for e in reversed(bpart)),
            self.inner.key(tuple(full)),
        )

    def __repr__(self):
        return f"BlockElimination(block={self.block})"
