"""Move and observation semantics of Hyperopic Cops and Robbers.

A belief is the bitmask of robber positions consistent with everything the
cops have observed.  The cops observe after each half-move.  Transitions
return the branches the *robber* may select between: a ``seen`` singleton
for every visible candidate and a single ``unseen`` branch collecting the
invisible ones.  Candidates on a cop are dropped (the robber there is
captured, so an adversarial robber is elsewhere); when nothing is left the
result is a single ``captured`` branch.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple

from .graphs import Graph, GraphError, bits, common_neighborhood, mask_of

SEEN = "seen"
UNSEEN = "unseen"
CAPTURED = "captured"

CopConfig = tuple[int, ...]


def canon(cops: Iterable[int]) -> CopConfig:
    """Canonical (sorted) form of a cop multiset."""
    return tuple(sorted(cops))


class Branch(NamedTuple):
    kind: str
    belief: int

    def vertex(self) -> int | None:
        if self.kind != SEEN:
            return None
        return self.belief.bit_length() - 1


@dataclass(frozen=True)
class Observation:
    """What the cops learn after a half-move."""

    kind: str
    vertex: int | None = None

    def __str__(self) -> str:
        return f"seen({self.vertex})" if self.kind == SEEN else self.kind


class Position(NamedTuple):
    cops: CopConfig
    belief: int
    mover: str  # "cops" | "robber"


def visible(g: Graph, cops: Iterable[int], r: int) -> bool:
    cops = tuple(cops)
    if r in cops:
        return True
    return not common_neighborhood(g, cops) >> r & 1


def observe(g: Graph, cops: Iterable[int], r: int) -> Observation:
    cops = tuple(cops)
    if r in cops:
        return Observation(CAPTURED, r)
    if visible(g, cops, r):
        return Observation(SEEN, r)
    return Observation(UNSEEN)


def split(candidates: int, cn: int) -> list[Branch]:
    """Partition a (cop-free) candidate set into observation branches."""
    out = [Branch(SEEN, 1 << v) for v in bits(candidates & ~cn)]
    hidden = candidates & cn
    if hidden:
        out.append(Branch(UNSEEN, hidden))
    return out


def cop_move_options(g: Graph, cops: Iterable[int]) -> list[CopConfig]:
    """Every canonical configuration reachable in one cop move (passing allowed)."""
    choices = [list(bits(g.closed(c))) for c in cops]
    return sorted({canon(p) for p in product(*choices)})


def _check_belief(belief: int) -> None:
    if not belief:
        raise GraphError("belief must be nonempty")


def observe_after_cop_move(g: Graph, new_cops: Iterable[int], belief: int) -> list[Branch]:
    _check_belief(belief)
    new_cops = tuple(new_cops)
    rest = belief & ~mask_of(new_cops)
    if not rest:
        return [Branch(CAPTURED, 0)]
    return split(rest, common_neighborhood(g, new_cops))


def robber_move_branches(g: Graph, cops: Iterable[int], belief: int) -> list[Branch]:
    _check_belief(belief)
    cops = tuple(cops)
    cand = g.closed_of(belief) & ~mask_of(cops)
    if not cand:
        return [Branch(CAPTURED, 0)]
    return split(cand, common_neighborhood(g, cops))


def initial_branches(g: Graph, cops: Iterable[int]) -> list[Branch]:
    cops = tuple(cops)
    cand = g.full & ~mask_of(cops)
    return split(cand, common_neighborhood(g, cops))


def update_belief(g: Graph, cops: Iterable[int], prior: int, obs: Observation) -> int:
    """Belief after ``obs``, given the candidate set ``prior`` before observing."""
    if obs.kind == SEEN:
        return 1 << obs.vertex
    if obs.kind == CAPTURED:
        return 0
    cops = tuple(cops)
    return prior & ~mask_of(cops) & common_neighborhood(g, cops)
