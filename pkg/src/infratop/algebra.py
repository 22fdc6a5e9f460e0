"""Meet and union of infra-topologies sharing a universe."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FlagMismatch, UniverseMismatch
from .setfam import InfraTopology, Subset, check_infra_topology, first_escaping_pair


def _same_universe(t1: InfraTopology, t2: InfraTopology) -> None:
    if t1.universe != t2.universe:
        raise UniverseMismatch("topologies live on different universes")


def meet(t1: InfraTopology, t2: InfraTopology) -> InfraTopology:
    """Member-wise intersection of two infra-topologies.

    Mixing a generalized and a non-generalized space is refused: the result's
    flag decides whether the universe must be open.
    """
    _same_universe(t1, t2)
    if t1.generalized != t2.generalized:
        raise FlagMismatch("cannot meet a generalized space with a non-generalized one")
    masks = sorted(t1.mask_set & t2.mask_set)
    violation = check_infra_topology(t1.universe, masks, t1.generalized)
    assert violation is None, violation
    return InfraTopology(t1.universe, tuple(masks), t1.generalized)


@dataclass(frozen=True)
class UnionCheck:
    topology: InfraTopology | None = None
    witness: tuple[Subset, Subset] | None = None

    @property
    def valid(self) -> bool:
        return self.topology is not None


def union_check(t1: InfraTopology, t2: InfraTopology) -> UnionCheck:
    """Union of the two families, or the first pair whose intersection escapes it."""
    _same_universe(t1, t2)
    u = t1.universe
    present = t1.mask_set | t2.mask_set
    pair = first_escaping_pair(present, present)
    if pair is not None:
        return UnionCheck(witness=(Subset(u, pair[0]), Subset(u, pair[1])))
    return UnionCheck(topology=InfraTopology(u, tuple(sorted(present)), t1.generalized and t2.generalized))
