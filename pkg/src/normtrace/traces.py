"""Lasso representation of infinite runs.

A run is an ultimately periodic word ``u . v^omega``: a finite prefix ``u``
followed by a nonempty loop ``v`` repeated forever.  Each state is the set of
atoms true at that instant; atoms not listed are false (closed world).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .formulas import ATOM_PATTERN, RESERVED_WORDS

State = frozenset[str]


def _check_state(state: State) -> None:
    for atom in state:
        if not ATOM_PATTERN.match(atom) or atom in RESERVED_WORDS:
            raise ValueError(f"invalid atom name in state: {atom!r}")


@dataclass(frozen=True)
class LassoTrace:
    """Infinite word given by ``prefix`` followed by ``loop`` forever.

    The loop must be nonempty.  Positions ``0 .. len(prefix)+len(loop)-1``
    are the canonical positions; every later position repeats a canonical
    loop position.
    """

    prefix: tuple[State, ...]
    loop: tuple[State, ...]

    def __init__(self, prefix: Iterable[Iterable[str]], loop: Iterable[Iterable[str]]):
        object.__setattr__(self, "prefix", tuple(frozenset(s) for s in prefix))
        object.__setattr__(self, "loop", tuple(frozenset(s) for s in loop))
        if not self.loop:
            raise ValueError("lasso loop must contain at least one state")
        for state in self.prefix + self.loop:
            _check_state(state)

    @property
    def positions(self) -> int:
        """Total number of canonical positions."""
        return len(self.prefix) + len(self.loop)

    def canonical_position(self, pos: int) -> int:
        """Fold an arbitrary position into the canonical range.

        The infinite suffix starting at ``pos`` equals the infinite suffix
        starting at the returned index.
        """
        if pos < 0:
            raise ValueError("position must be nonnegative")
        n = self.positions
        if pos < n:
            return pos
        m = len(self.prefix)
        return m + (pos - m) % len(self.loop)

    def state_at(self, pos: int) -> State:
        """State at an arbitrary (possibly non-canonical) position."""
        i = self.canonical_position(pos)
        m = len(self.prefix)
        return self.prefix[i] if i < m else self.loop[i - m]

    def atoms(self) -> frozenset[str]:
        """Every atom that occurs in some state."""
        out: set[str] = set()
        for state in self.prefix + self.loop:
            out |= state
        return frozenset(out)


def canonical_position(trace: LassoTrace, pos: int) -> int:
    return trace.canonical_position(pos)
