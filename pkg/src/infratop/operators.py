"""Infra-interior, infra-closure and the taxonomy of subsets they induce."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InfraError, UniverseMismatch
from .setfam import InfraTopology, Subset, Universe, format_set

SCAN_CAP = 20


class UniverseTooLargeForScan(InfraError):
    pass


def interior_mask(masks: Iterable[int], a: int) -> int:
    out = 0
    for m in masks:
        if m & ~a == 0:
            out |= m
    return out


def closure_mask(full: int, masks: Iterable[int], a: int) -> int:
    # X is always infra-closed because the empty set is always open.
    out = full
    for m in masks:
        closed = full & ~m
        if a & ~closed == 0:
            out &= closed
    return out


def _bits(t: InfraTopology, a: Subset) -> int:
    if a.universe != t.universe:
        raise UniverseMismatch("subset and topology live in different universes")
    return a.bits


def i_interior(t: InfraTopology, a: Subset) -> Subset:
    """Union of all members of ``t`` contained in ``a``."""
    return Subset(t.universe, interior_mask(t.masks, _bits(t, a)))


def i_closure(t: InfraTopology, a: Subset) -> Subset:
    """Intersection of all infra-closed supersets of ``a``."""
    return Subset(t.universe, closure_mask(t.universe.full, t.masks, _bits(t, a)))


@dataclass(frozen=True)
class ClassificationReport:
    subset: Subset
    i_interior: Subset
    i_closure: Subset
    infra_open: bool
    infra_closed: bool
    i_genuine: bool
    strictly_i_genuine: bool
    c_genuine: bool
    ps_infra_open: bool
    ps_infra_closed: bool
    ps_dense: bool
    # meets every strictly i-genuine set
    strictly_dense: bool

    def to_dict(self) -> dict:
        out: dict = {}
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            out[name] = value.labels() if isinstance(value, Subset) else value
        return out

    def render(self) -> str:
        u = self.subset.universe
        lines = []
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if isinstance(value, Subset):
                value = format_set(u, value.bits)
            else:
                value = "true" if value else "false"
            lines.append(f"{name:<20} {value}")
        return "\n".join(lines)


def classify_mask(t: InfraTopology, a: int) -> ClassificationReport:
    u = t.universe
    full = u.full
    members = t.mask_set
    interior = interior_mask(t.masks, a)
    closure = closure_mask(full, t.masks, a)
    i_genuine = interior in members
    # A nonempty ps-infra-open set is a union of members and so contains a
    # nonempty member; the same holds for strictly i-genuine sets.  Meeting
    # every nonempty member therefore decides both density notions.
    dense = all(a & m for m in t.masks if m)
    return ClassificationReport(
        subset=Subset(u, a),
        i_interior=Subset(u, interior),
        i_closure=Subset(u, closure),
        infra_open=a in members,
        infra_closed=(full & ~a) in members,
        i_genuine=i_genuine,
        strictly_i_genuine=i_genuine and interior != 0,
        c_genuine=(full & ~closure) in members,
        ps_infra_open=interior == a,
        ps_infra_closed=closure == a,
        ps_dense=dense,
        strictly_dense=dense,
    )


def classify(t: InfraTopology, a: Subset) -> ClassificationReport:
    return classify_mask(t, _bits(t, a))


class FamilyKind(enum.Enum):
    INFRA_OPEN = "open"
    INFRA_CLOSED = "closed"
    I_GENUINE = "i-genuine"
    PS_INFRA_OPEN = "ps-open"
    C_GENUINE = "c-genuine"
    PS_INFRA_CLOSED = "ps-closed"
    MINIMAL_INFRA_OPEN = "minimal"


def _scan(t: InfraTopology, keep) -> list[int]:
    n = t.universe.size
    if n > SCAN_CAP:
        raise UniverseTooLargeForScan(f"scanning 2^{n} subsets exceeds the cap of 2^{SCAN_CAP}")
    return [a for a in range(1 << n) if keep(a)]


def derived_family_masks(t: InfraTopology, kind: FamilyKind) -> list[int]:
    full = t.universe.full
    masks = t.masks
    members = t.mask_set
    if kind is FamilyKind.INFRA_OPEN:
        return list(masks)
    if kind is FamilyKind.INFRA_CLOSED:
        return sorted(full & ~m for m in masks)
    if kind is FamilyKind.MINIMAL_INFRA_OPEN:
        return minimal_masks(masks)
    if kind is FamilyKind.I_GENUINE:
        return _scan(t, lambda a: interior_mask(masks, a) in members)
    if kind is FamilyKind.PS_INFRA_OPEN:
        return _scan(t, lambda a: interior_mask(masks, a) == a)
    if kind is FamilyKind.C_GENUINE:
        return _scan(t, lambda a: full & ~closure_mask(full, masks, a) in members)
    if kind is FamilyKind.PS_INFRA_CLOSED:
        return _scan(t, lambda a: closure_mask(full, masks, a) == a)
    raise ValueError(kind)


def derived_family(t: InfraTopology, kind: FamilyKind) -> list[Subset]:
    return [Subset(t.universe, m) for m in derived_family_masks(t, kind)]


def minimal_masks(masks: Sequence[int]) -> list[int]:
    return [a for a in masks if a and all(a & b == 0 or a & ~b == 0 for b in masks)]


def minimal_infra_open_sets(t: InfraTopology) -> list[Subset]:
    """Nonempty members that every member either misses or contains.

    The empty set satisfies the condition vacuously and is left out.
    """
    return [Subset(t.universe, m) for m in minimal_masks(t.masks)]


class FamilyOrder(enum.Enum):
    EQUAL = "equal"
    COARSER = "coarser"
    FINER = "finer"
    INCOMPARABLE = "incomparable"


def compare_families(f1: Iterable[Subset], f2: Iterable[Subset]) -> FamilyOrder:
    """Compare two families by inclusion; ``COARSER`` means ``f1`` ⊂ ``f2``."""
    f1, f2 = list(f1), list(f2)
    universes: set[Universe] = {s.universe for s in f1 + f2}
    if len(universes) > 1:
        raise UniverseMismatch("families over different universes")
    s1 = {s.bits for s in f1}
    s2 = {s.bits for s in f2}
    if s1 == s2:
        return FamilyOrder.EQUAL
    if s1 < s2:
        return FamilyOrder.COARSER
    if s2 < s1:
        return FamilyOrder.FINER
    return FamilyOrder.INCOMPARABLE
