"""Finite universes, subsets as bitmasks, and validated infra-topologies.

A subset of an ``n``-element universe is stored as a Python ``int`` whose bit
``i`` is set iff element ``i`` belongs to it.  Families are kept sorted by that
integer value, which gives every object a canonical form for equality and
serialization.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateLabel,
    FormatError,
    InfraError,
    UniverseMismatch,
    UniverseTooLarge,
    UnknownLabel,
)

MAX_UNIVERSE = 62


@dataclass(frozen=True)
class Universe:
    names: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index: dict[str, int] = {}
        for i, name in enumerate(self.names):
            if name in index:
                raise DuplicateLabel(name)
            index[name] = i
        if len(self.names) > MAX_UNIVERSE:
            raise UniverseTooLarge(f"universe has {len(self.names)} elements, cap is {MAX_UNIVERSE}")
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        """Bitmask of the whole universe."""
        return (1 << len(self.names)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.names)

    def mask(self, labels: Iterable[str]) -> int:
        bits = 0
        for label in labels:
            bits |= 1 << self.index(label)
        return bits

    def labels(self, bits: int) -> list[str]:
        return [name for i, name in enumerate(self.names) if bits >> i & 1]

    def subset(self, bits: int) -> "Subset":
        return Subset(self, bits)

    def empty(self) -> "Subset":
        return Subset(self, 0)

    def whole(self) -> "Subset":
        return Subset(self, self.full)

    def all_subsets(self) -> Iterator["Subset"]:
        for bits in range(1 << self.size):
            yield Subset(self, bits)


def make_universe(labels: Sequence[str]) -> Universe:
    return Universe(tuple(labels))


@dataclass(frozen=True)
class Subset:
    universe: Universe
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.universe.full:
            raise ValueError(f"bitmask {self.bits:#x} out of range for universe of size {self.universe.size}")

    def _other(self, other: "Subset") -> int:
        if not isinstance(other, Subset):
            return NotImplemented
        if other.universe != self.universe:
            raise UniverseMismatch("subsets live in different universes")
        return other.bits

    def __and__(self, other: "Subset") -> "Subset":
        return Subset(self.universe, self.bits & self._other(other))

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self.universe, self.bits | self._other(other))

    def __sub__(self, other: "Subset") -> "Subset":
        return Subset(self.universe, self.bits & ~self._other(other))

    def __invert__(self) -> "Subset":
        return Subset(self.universe, self.universe.full & ~self.bits)

    def complement(self) -> "Subset":
        return ~self

    def __le__(self, other: "Subset") -> bool:
        return self.bits & ~self._other(other) == 0

    def __lt__(self, other: "Subset") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "Subset") -> bool:
        return other <= self

    def __gt__(self, other: "Subset") -> bool:
        return other < self

    def __contains__(self, label: str) -> bool:
        return bool(self.bits >> self.universe.index(label) & 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.universe.labels(self.bits))

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def labels(self) -> list[str]:
        return self.universe.labels(self.bits)

    def __str__(self) -> str:
        return format_set(self.universe, self.bits)


def subset_of(u: Universe, members: Iterable[str]) -> Subset:
    return Subset(u, u.mask(members))


def format_set(u: Universe, bits: int) -> str:
    return "{" + ",".join(u.labels(bits)) + "}"


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``bits`` in increasing order."""
    i = 0
    while bits:
        if bits & 1:
            yield i
        bits >>= 1
        i += 1


# -- infra-topologies ---------------------------------------------------------


class InfraTopologyViolation(InfraError):
    """A family failed one of the defining clauses of an infra-topology."""

    clause = "infra-topology"

    def __init__(self, message: str, witness: tuple[Subset, Subset] | None = None):
        super().__init__(message)
        self.witness = witness


class MissingEmpty(InfraTopologyViolation):
    clause = "contains-empty"


class MissingUniverse(InfraTopologyViolation):
    clause = "contains-universe"


class NotIntersectionClosed(InfraTopologyViolation):
    clause = "intersection-closed"


def first_escaping_pair(masks: Sequence[int], present: set[int] | frozenset[int] | None = None) -> tuple[int, int] | None:
    """First pair (in sorted-pair order) whose intersection is not in the family."""
    ordered = sorted(set(masks))
    present = set(ordered) if present is None else present
    for a, b in combinations(ordered, 2):
        if a & b not in present:
            return a, b
    return None


@dataclass(frozen=True)
class InfraTopology:
    """A validated (possibly generalized) infra-topology.

    Use :func:`validate_infra_topology` or :func:`generate_infra_topology`
    to build one; the constructor trusts its arguments.
    """

    universe: Universe
    masks: tuple[int, ...]
    generalized: bool = False

    @property
    def members(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.universe, m) for m in self.masks)

    @property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    @property
    def support(self) -> int:
        """Bitmask of the union of all members."""
        out = 0
        for m in self.masks:
            out |= m
        return out

    @property
    def contains_universe(self) -> bool:
        return self.universe.full in self.masks

    def __contains__(self, item: Subset | int) -> bool:
        if isinstance(item, Subset):
            if item.universe != self.universe:
                raise UniverseMismatch("subset and topology live in different universes")
            item = item.bits
        return item in self.mask_set

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(format_set(self.universe, m) for m in self.masks) + "}"


def _masks_of(u: Universe, family: Iterable[Subset | int]) -> list[int]:
    out = []
    for s in family:
        if isinstance(s, Subset):
            if s.universe != u:
                raise UniverseMismatch("family member from a different universe")
            out.append(s.bits)
        else:
            out.append(int(s))
    return out


def check_infra_topology(u: Universe, masks: Iterable[int], generalized: bool) -> InfraTopologyViolation | None:
    """Return the first violated clause as an exception object, or None."""
    present = set(masks)
    if 0 not in present:
        return MissingEmpty("the empty set is not a member")
    if not generalized and u.full not in present:
        return MissingUniverse("the universe is not a member")
    pair = first_escaping_pair(present, present)
    if pair is not None:
        a, b = pair
        return NotIntersectionClosed(
            f"{format_set(u, a)} ∩ {format_set(u, b)} = {format_set(u, a & b)} is not a member",
            witness=(Subset(u, a), Subset(u, b)),
        )
    return None


def validate_infra_topology(u: Universe, family: Iterable[Subset | int], generalized: bool = False) -> InfraTopology:
    """Validate ``family`` as an infra-topology on ``u``.

    Raises a subclass of :class:`InfraTopologyViolation` naming the failed
    clause; intersection failures carry the first escaping pair as
    ``witness``.
    """
    masks = _masks_of(u, family)
    violation = check_infra_topology(u, masks, generalized)
    if violation is not None:
        raise violation
    return InfraTopology(u, tuple(sorted(set(masks))), generalized)


def intersection_closure(masks: Iterable[int]) -> set[int]:
    closed = set(masks)
    frontier = list(closed)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    return closed


def generate_infra_topology(u: Universe, seeds: Iterable[Subset | int], generalized: bool = False) -> InfraTopology:
    """Smallest infra-topology on ``u`` containing every seed."""
    masks = set(_masks_of(u, seeds))
    masks.add(0)
    if not generalized:
        masks.add(u.full)
    return InfraTopology(u, tuple(sorted(intersection_closure(masks))), generalized)


def is_alexandrov(t: InfraTopology) -> bool:
    """True iff every non-empty sub-family of ``t`` has its intersection in ``t``.

    On a finite universe pairwise closure already implies this, so any
    validated topology answers True; the closure under all sub-family
    intersections is recomputed here rather than assumed.
    """
    return intersection_closure(t.masks) == set(t.masks)


# -- space files --------------------------------------------------------------


def space_to_dict(t: InfraTopology) -> dict:
    u = t.universe
    return {
        "universe": list(u.names),
        "family": [u.labels(m) for m in t.masks],
        "generalized": t.generalized,
    }


def space_from_dict(data: dict) -> InfraTopology:
    if not isinstance(data, dict):
        raise FormatError("space file must hold a JSON object")
    try:
        labels = data["universe"]
        family = data["family"]
    except KeyError as exc:
        raise FormatError(f"space file lacks key {exc.args[0]!r}") from None
    generalized = bool(data.get("generalized", False))
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FormatError("'universe' must be a list of strings")
    if not isinstance(family, list) or not all(isinstance(m, list) for m in family):
        raise FormatError("'family' must be a list of label lists")
    u = make_universe(labels)
    try:
        masks = [u.mask(m) for m in family]
    except UnknownLabel as exc:
        raise FormatError(f"family mentions {exc.label!r}, which is not in the universe") from None
    return validate_infra_topology(u, masks, generalized)


def dumps_space(t: InfraTopology) -> str:
    return json.dumps(space_to_dict(t), ensure_ascii=False)


def loads_space(text: str) -> InfraTopology:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return space_from_dict(data)


def load_space(path: str | Path) -> InfraTopology:
    return loads_space(Path(path).read_text(encoding="utf-8"))


def save_space(t: InfraTopology, path: str | Path) -> None:
    Path(path).write_text(json.dumps(space_to_dict(t), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
