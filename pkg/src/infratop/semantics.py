"""Generalized infra-topological models and the forcing relation.

A model has worlds ``W``, a generalized infra-topology on ``W``, a split of
``W`` into ``Y1`` and ``Y2``, a link function ``f`` from ``Y1`` into the
worlds covered by some open set, neighborhood families on ``Y2`` worlds,
and a valuation.  The strong box holds at ``w`` when some open set around
``w`` lies inside the truth set; the weak box consults the open sets around
``f(w)`` on ``Y1`` and the neighborhood family on ``Y2``.

Truth sets are computed bottom-up as bitmasks: the strong box of a truth
set ``S`` is exactly the infra-interior of ``S``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import FormatError, InfraError, UnknownLabel
from .logic import (
    And,
    BBox,
    Bottom,
    Box,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Top,
    Var,
    render,
    variables,
)
from .operators import interior_mask
from .setfam import (
    InfraTopology,
    Subset,
    Universe,
    format_set,
    iter_bits,
    make_universe,
    validate_infra_topology,
)


class ModelError(InfraError):
    clause = "model"


class PartitionError(ModelError):
    clause = "partition"


class OpenWorldOutsideY1(ModelError):
    clause = "opens-inside-y1"


class MissingLink(ModelError):
    clause = "link-total"


class LinkTargetNotOpenCovered(ModelError):
    clause = "link-target"


class LinkNotIdentityOnOpens(ModelError):
    clause = "link-identity"


class NeighborhoodOnY1World(ModelError):
    clause = "neighborhood-domain"


class UnknownWorld(InfraError):
    def __init__(self, world):
        super().__init__(f"unknown world {world!r}")
        self.world = world


class UnknownVariable(InfraError):
    def __init__(self, name: str):
        super().__init__(f"variable {name!r} has no valuation")
        self.name = name


@dataclass(frozen=True, eq=False)
class GitModel:
    """A validated model; worlds are referred to by index internally.

    ``f`` maps every ``Y1`` world index to a world index, ``n`` maps every
    ``Y2`` world index to a frozenset of bitmasks, ``v`` maps variable names
    to bitmasks.  Build instances with :func:`validate_model` or
    :func:`model_from_dict`.
    """

    worlds: Universe
    tau: InfraTopology
    y1: int
    f: Mapping[int, int]
    n: Mapping[int, frozenset[int]]
    v: Mapping[str, int]

    @property
    def y2(self) -> int:
        return self.worlds.full & ~self.y1

    @property
    def y1_set(self) -> Subset:
        return Subset(self.worlds, self.y1)

    @property
    def y2_set(self) -> Subset:
        return Subset(self.worlds, self.y2)

    def world_index(self, world: str | int) -> int:
        if isinstance(world, int):
            if 0 <= world < self.worlds.size:
                return world
            raise UnknownWorld(world)
        if world not in self.worlds:
            raise UnknownWorld(world)
        return self.worlds.index(world)

    def _key(self):
        return (
            self.worlds,
            self.tau.masks,
            self.y1,
            tuple(sorted(self.f.items())),
            tuple(sorted((w, tuple(sorted(fam))) for w, fam in self.n.items())),
            tuple(sorted(self.v.items())),
        )

    def __eq__(self, other):
        return isinstance(other, GitModel) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def describe(self) -> str:
        u = self.worlds
        parts = [
            f"W = {format_set(u, u.full)}",
            f"tau = {self.tau}",
            f"Y1 = {format_set(u, self.y1)}",
            f"Y2 = {format_set(u, self.y2)}",
        ]
        if self.f:
            parts.append("f = {" + ", ".join(f"{u.names[a]}->{u.names[b]}" for a, b in sorted(self.f.items())) + "}")
        for w, fam in sorted(self.n.items()):
            parts.append(f"N({u.names[w]}) = {{" + ", ".join(format_set(u, s) for s in sorted(fam)) + "}")
        for name, bits in sorted(self.v.items()):
            parts.append(f"V({name}) = {format_set(u, bits)}")
        return "; ".join(parts)


def check_model_masks(worlds: Universe, tau: InfraTopology, y1: int, y2: int, f: Mapping[int, int], n: Mapping[int, Iterable[int]]) -> None:
    """Raise the :class:`ModelError` for the first violated model condition."""
    names = worlds.names
    if y1 & y2 or (y1 | y2) != worlds.full:
        raise PartitionError(f"Y1 = {format_set(worlds, y1)} and Y2 = {format_set(worlds, y2)} do not partition the worlds")
    covered = tau.support
    if covered & ~y1:
        raise OpenWorldOutsideY1(f"open worlds {format_set(worlds, covered & ~y1)} lie outside Y1")
    for w in n:
        if y1 >> w & 1:
            raise NeighborhoodOnY1World(f"world {names[w]} is in Y1 but has a neighborhood family")
    for w in iter_bits(y1):
        if w not in f:
            raise MissingLink(f"Y1 world {names[w]} has no link target")
    for w, target in sorted(f.items()):
        if not y1 >> w & 1:
            raise LinkTargetNotOpenCovered(f"link given for {names[w]}, which is not in Y1")
        if not covered >> target & 1:
            raise LinkTargetNotOpenCovered(f"f({names[w]}) = {names[target]} is not inside any open set")
        if covered >> w & 1 and target != w:
            raise LinkNotIdentityOnOpens(f"f({names[w]}) = {names[target]} but f must fix open worlds")


def validate_model(
    worlds: Iterable[str],
    tau: Iterable[Iterable[str]],
    y1: Iterable[str],
    f: Mapping[str, str] | None = None,
    n: Mapping[str, Iterable[Iterable[str]]] | None = None,
    valuation: Mapping[str, Iterable[str]] | None = None,
    y2: Iterable[str] | None = None,
) -> GitModel:
    """Build a model from labels, checking every model condition.

    ``y2`` defaults to the complement of ``y1``.  Y2 worlds missing from
    ``n`` get the empty neighborhood family.
    """
    u = make_universe(list(worlds))
    t = validate_infra_topology(u, [u.mask(s) for s in tau], generalized=True)
    y1_mask = u.mask(y1)
    y2_mask = u.full & ~y1_mask if y2 is None else u.mask(y2)
    f_idx = {u.index(a): u.index(b) for a, b in (f or {}).items()}
    n_idx = {u.index(w): frozenset(u.mask(s) for s in fam) for w, fam in (n or {}).items()}
    check_model_masks(u, t, y1_mask, y2_mask, f_idx, n_idx)
    for w in iter_bits(y2_mask):
        n_idx.setdefault(w, frozenset())
    v_idx = {name: u.mask(s) for name, s in (valuation or {}).items()}
    return GitModel(u, t, y1_mask, f_idx, n_idx, v_idx)


def model_from_dict(data: dict) -> GitModel:
    if not isinstance(data, dict):
        raise FormatError("model file must hold a JSON object")
    for key in ("worlds", "tau", "y1"):
        if key not in data:
            raise FormatError(f"model file lacks key {key!r}")
    try:
        return validate_model(
            data["worlds"], data["tau"], data["y1"],
            f=data.get("f", {}), n=data.get("n", {}), valuation=data.get("valuation", {}),
            y2=data.get("y2"),
        )
    except UnknownLabel as exc:
        raise FormatError(f"model mentions world {exc.label!r}, which is not declared") from None


def model_to_dict(m: GitModel) -> dict:
    u = m.worlds
    return {
        "worlds": list(u.names),
        "tau": [u.labels(s) for s in m.tau.masks],
        "y1": u.labels(m.y1),
        "f": {u.names[a]: u.names[b] for a, b in sorted(m.f.items())},
        "n": {u.names[w]: [u.labels(s) for s in sorted(fam)] for w, fam in sorted(m.n.items())},
        "valuation": {name: u.labels(bits) for name, bits in sorted(m.v.items())},
    }


def load_model(path: str | Path) -> GitModel:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return model_from_dict(data)


# -- forcing ------------------------------------------------------------------


def bbox_mask(m: GitModel, s: int) -> int:
    """Worlds forcing the weak box of a formula whose truth set is ``s``."""
    inner = interior_mask(m.tau.masks, s)
    out = 0
    for w, target in m.f.items():
        if inner >> target & 1:
            out |= 1 << w
    for w, fam in m.n.items():
        if s in fam:
            out |= 1 << w
    return out


def truth_mask(m: GitModel, phi: Formula, strict: bool = False, cache: dict | None = None) -> int:
    if cache is None:
        cache = {}
    hit = cache.get(phi)
    if hit is not None:
        return hit
    full = m.worlds.full
    if isinstance(phi, Var):
        if phi.name in m.v:
            out = m.v[phi.name]
        elif strict:
            raise UnknownVariable(phi.name)
        else:
            out = 0
    elif isinstance(phi, Top):
        out = full
    elif isinstance(phi, Bottom):
        out = 0
    elif isinstance(phi, Not):
        out = full & ~truth_mask(m, phi.arg, strict, cache)
    elif isinstance(phi, Box):
        out = interior_mask(m.tau.masks, truth_mask(m, phi.arg, strict, cache))
    elif isinstance(phi, BBox):
        out = bbox_mask(m, truth_mask(m, phi.arg, strict, cache))
    else:
        a = truth_mask(m, phi.left, strict, cache)
        b = truth_mask(m, phi.right, strict, cache)
        if isinstance(phi, And):
            out = a & b
        elif isinstance(phi, Or):
            out = a | b
        elif isinstance(phi, Implies):
            out = (full & ~a) | b
        elif isinstance(phi, Iff):
            out = full & ~(a ^ b)
        else:
            raise TypeError(f"not a formula: {phi!r}")
    cache[phi] = out
    return out


def truth_set(m: GitModel, phi: Formula, strict: bool = False) -> Subset:
    return Subset(m.worlds, truth_mask(m, phi, strict))


def forces(m: GitModel, w: str | int, phi: Formula, strict: bool = False) -> bool:
    i = m.world_index(w)
    return bool(truth_mask(m, phi, strict) >> i & 1)


def true_in_model(m: GitModel, phi: Formula, strict: bool = False) -> bool:
    return truth_mask(m, phi, strict) == m.worlds.full


@dataclass
class EvalTrace:
    formula: Formula
    world: str
    result: bool
    witness: Subset | None = None
    note: str = ""

    def recheck(self, m: GitModel) -> bool:
        """Re-derive the verdict from the witness alone."""
        if self.witness is None:
            return True
        w = m.world_index(self.world)
        s = truth_mask(m, self.formula.arg)
        x = self.witness.bits
        if isinstance(self.formula, Box):
            return x in m.tau.mask_set and bool(x >> w & 1) and x & ~s == 0
        if m.y1 >> w & 1:
            return x in m.tau.mask_set and bool(x >> m.f[w] & 1) and x & ~s == 0
        return x == s and s in m.n[w]

    def to_dict(self) -> dict:
        return {
            "formula": render(self.formula),
            "world": self.world,
            "result": self.result,
            "witness": None if self.witness is None else self.witness.labels(),
            "note": self.note,
        }


def _open_inside(m: GitModel, point: int, s: int) -> int | None:
    for x in m.tau.masks:
        if x >> point & 1 and x & ~s == 0:
            return x
    return None


def explain(m: GitModel, w: str | int, phi: Formula, strict: bool = False) -> EvalTrace:
    """Evaluate ``phi`` at ``w`` and report the open set or neighborhood behind a modal verdict."""
    i = m.world_index(w)
    name = m.worlds.names[i]
    result = forces(m, i, phi, strict)
    trace = EvalTrace(phi, name, result)
    u = m.worlds
    if isinstance(phi, Box):
        s = truth_mask(m, phi.arg, strict)
        x = _open_inside(m, i, s)
        if x is not None:
            trace.witness = Subset(u, x)
            trace.note = f"open set {format_set(u, x)} contains {name} and lies inside the truth set"
        elif not m.tau.support >> i & 1:
            trace.note = f"no open set contains {name}"
        else:
            trace.note = f"every open set containing {name} leaves the truth set {format_set(u, s)}"
    elif isinstance(phi, BBox):
        s = truth_mask(m, phi.arg, strict)
        if m.y1 >> i & 1:
            target = m.f[i]
            x = _open_inside(m, target, s)
            link = u.names[target]
            if x is not None:
                trace.witness = Subset(u, x)
                trace.note = f"{name} is linked to {link}; open set {format_set(u, x)} contains it inside the truth set"
            else:
                trace.note = f"{name} is linked to {link}; no open set around it lies inside {format_set(u, s)}"
        elif s in m.n[i]:
            trace.witness = Subset(u, s)
            trace.note = f"truth set {format_set(u, s)} belongs to N({name})"
        else:
            trace.note = f"truth set {format_set(u, s)} is not in N({name})"
    return trace


# -- search over bounded model classes ----------------------------------------

POLICIES = ("auto", "full", "pool")
MAX_ENUMERATION = 10 ** 8


@dataclass(frozen=True)
class SearchBounds:
    """Limits for model enumeration.

    ``policy`` picks the neighborhood families offered to each ``Y2``
    world: ``full`` uses every family of subsets of ``W``; ``pool`` uses the
    families of at most two subsets plus the family of ps-infra-open sets of
    the model's topology; ``auto`` is ``full`` up to two worlds and ``pool``
    above.
    """

    max_worlds: int = 3
    variables: tuple[str, ...] = ("p",)
    policy: str = "auto"
    min_worlds: int = 1
    jobs: int = 1
    limit: int = MAX_ENUMERATION

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}")

    def policy_for(self, worlds: int) -> str:
        if self.policy == "auto":
            return "full" if worlds <= 2 else "pool"
        return self.policy


@dataclass
class Countermodel:
    model: GitModel
    world: str
    index: int
    policy: str

    def to_dict(self) -> dict:
        return {"model": model_to_dict(self.model), "world": self.world, "index": self.index, "policy": self.policy}


def _search_shard(args) -> tuple[int, GitModel, int] | None:
    from .oracle import enumerate_models

    phi, bounds, shard, shards = args
    for index, m in enumerate(enumerate_models(bounds)):
        if index % shards != shard:
            continue
        bad = m.worlds.full & ~truth_mask(m, phi)
        if bad:
            return index, m, (bad & -bad).bit_length() - 1
    return None


def countermodel_search(phi: Formula, bounds: SearchBounds | None = None) -> Countermodel | None:
    """First enumerated model and world where ``phi`` fails, or None.

    With ``bounds.jobs > 1`` the enumeration is split round-robin over
    worker processes and the hit with the lowest enumeration index wins, so
    the answer does not depend on the worker count.
    """
    from .oracle import count_models

    if bounds is None:
        bounds = SearchBounds(variables=tuple(sorted(variables(phi))) or ("p",))
    missing = variables(phi) - set(bounds.variables)
    if missing:
        bounds = SearchBounds(
            bounds.max_worlds, tuple(sorted(set(bounds.variables) | missing)), bounds.policy,
            bounds.min_worlds, bounds.jobs, bounds.limit,
        )
    count_models(bounds)  # raises BoundsTooLarge before any work
    if bounds.jobs <= 1:
        hits = [_search_shard((phi, bounds, 0, 1))]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(bounds.jobs) as pool:
            hits = list(pool.map(_search_shard, [(phi, bounds, k, bounds.jobs) for k in range(bounds.jobs)]))
    hits = [h for h in hits if h is not None]
    if not hits:
        return None
    index, m, w = min(hits, key=lambda h: h[0])
    return Countermodel(m, m.worlds.names[w], index, bounds.policy_for(m.worlds.size))
