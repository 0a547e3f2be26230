"""Distinct-color assignment (bipartite matching of edges to colors).

Each edge slot carries a bitmask of admissible colors; a rainbow coloring is a
system of distinct representatives. Kuhn's augmenting paths, colors tried in
ascending order so results are deterministic.
"""

from __future__ import annotations

from typing import Sequence


class IncrementalMatcher:
    """Matching that grows and shrinks one slot at a time (stack discipline).

    Popping the newest slot keeps the remaining matching valid, which is what
    lets the backtracking search undo a step in O(1).
    """

    __slots__ = ("owner", "color_of", "masks", "used")

    def __init__(self, n_colors: int):
        self.owner = [-1] * n_colors
        self.color_of: list[int] = []
        self.masks: list[int] = []
        self.used = 0

    def __len__(self) -> int:
        return len(self.masks)

    def push(self, mask: int) -> bool:
        slot = len(self.masks)
        self.masks.append(mask)
        self.color_of.append(-1)
        if self._augment(slot, [0]):
            return True
        self.masks.pop()
        self.color_of.pop()
        return False

    def pop(self) -> None:
        c = self.color_of.pop()
        self.masks.pop()
        self.owner[c] = -1
        self.used &= ~(1 << c)

    def _augment(self, slot: int, seen: list[int]) -> bool:
        free = self.masks[slot] & ~self.used
        if free:
            low = free & -free
            c = low.bit_length() - 1
            self.used |= low
            self.owner[c] = slot
            self.color_of[slot] = c
            return True
        avail = self.masks[slot] & ~seen[0]
        while avail:
            low = avail & -avail
            avail ^= low
            if seen[0] & low:
                continue
            seen[0] |= low
            c = low.bit_length() - 1
            holder = self.owner[c]
            if holder == -1 or self._augment(holder, seen):
                self.owner[c] = slot
                self.color_of[slot] = c
                return True
        return False


def assign_colors(masks: Sequence[int], n_colors: int) -> list[int] | None:
    """Distinct colors ``out[k]`` in ``masks[k]`` for every slot, or None."""
    m = IncrementalMatcher(n_colors)
    for mask in masks:
        if not m.push(mask):
            return None
    return list(m.color_of)
