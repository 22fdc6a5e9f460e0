"""Brute-force reference implementations and exhaustive enumerators.

Nothing here shares code with :mod:`infratop.operators` or the forcing
routines in :mod:`infratop.semantics`: subsets are handled as frozensets of
labels and every notion is recomputed from its definition, so the two
routes can be checked against each other.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterator

from .errors import BoundsTooLarge, InfraError, UniverseTooLarge
from .logic import And, BBox, Bottom, Box, Formula, Iff, Implies, Not, Or, Top, Var
from .operators import ClassificationReport
from .semantics import GitModel, SearchBounds
from .setfam import InfraTopology, Subset, Universe, make_universe, space_to_dict

ENUMERATION_CAP = 4
BRUTE_CAP = 20

# Infra-topology counts for n = 2, 3, 4, computed once with
# count_infra_topologies (jobs 1 and 2 agree) and frozen as regression values.
# Generalized counts for n = 0..4 were 1, 2, 8, 90, 4542.
FROZEN_COUNTS = {2: 4, 3: 45, 4: 2271}


# -- infra-topologies on small universes ---------------------------------------


def default_labels(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"x{i}" for i in range(n)]


def _candidate_pool(n: int, generalized: bool) -> list[int]:
    full = (1 << n) - 1
    pool = list(range(1, full))
    if generalized and n > 0:
        pool.append(full)
    return pool


def _family(pool: list[int], index: int, fixed: tuple[int, ...]) -> list[int]:
    fam = list(fixed)
    i = 0
    while index:
        if index & 1:
            fam.append(pool[i])
        index >>= 1
        i += 1
    return fam


def _closed(fam: list[int]) -> bool:
    present = set(fam)
    return all(a & b in present for a, b in combinations(fam, 2))


def _fixed(n: int, generalized: bool) -> tuple[int, ...]:
    full = (1 << n) - 1
    return (0,) if generalized or n == 0 else (0, full)


def _check_n(n: int) -> None:
    if n > ENUMERATION_CAP or n < 0:
        raise UniverseTooLarge(f"enumeration is limited to universes of size 0..{ENUMERATION_CAP}")


def enumerate_infra_topologies(n: int, generalized: bool = False, labels: list[str] | None = None) -> Iterator[InfraTopology]:
    """Every infra-topology on an ``n``-element universe, once each.

    Candidates are indexed by a bitmask over the optional members (all
    proper nonempty subsets, plus the universe itself when ``generalized``)
    and yielded in that index order.
    """
    _check_n(n)
    u = make_universe(labels or default_labels(n))
    pool = _candidate_pool(n, generalized)
    fixed = _fixed(n, generalized)
    for index in range(1 << len(pool)):
        fam = _family(pool, index, fixed)
        if _closed(fam):
            yield InfraTopology(u, tuple(sorted(fam)), generalized)


def _count_range(args) -> int:
    n, generalized, start, stop = args
    pool = _candidate_pool(n, generalized)
    fixed = _fixed(n, generalized)
    return sum(1 for i in range(start, stop) if _closed(_family(pool, i, fixed)))


def count_infra_topologies(n: int, generalized: bool = False, jobs: int = 1) -> int:
    _check_n(n)
    total = 1 << len(_candidate_pool(n, generalized))
    if jobs <= 1:
        return _count_range((n, generalized, 0, total))
    from concurrent.futures import ProcessPoolExecutor

    step = -(-total // jobs)
    chunks = [(n, generalized, lo, min(lo + step, total)) for lo in range(0, total, step)]
    with ProcessPoolExecutor(jobs) as ex:
        return sum(ex.map(_count_range, chunks))


# -- exhaustive lemma sweep ------------------------------------------------------


LEMMAS = (
    "interior-meets",
    "closure-joins",
    "closure-of-meet-below",
    "duality",
    "closed-union",
    "i-genuine-family-is-infra-topology",
    "ps-open-family-is-topology",
    "ps-closed-union",
    "singletons-i-genuine",
    "opens-inside-i-genuine",
)


def _unions_closed(fam: set[int]) -> bool:
    return all(a | b in fam for a, b in combinations(fam, 2))


def _meets_closed(fam: set[int]) -> bool:
    return all(a & b in fam for a, b in combinations(fam, 2))


def lemma_sweep(max_n: int = ENUMERATION_CAP) -> tuple[dict[str, int], int]:
    """Check the interior/closure lemmas on every infra-topology up to ``max_n``.

    Returns violation counts per lemma and the number of spaces visited.
    Interiors are folded unions over members; closures are folded
    intersections over complements, so the duality check compares two
    genuinely different computations.
    """
    _check_n(max_n)
    bad = dict.fromkeys(LEMMAS, 0)
    spaces = 0
    for n in range(max_n + 1):
        full = (1 << n) - 1
        every = range(full + 1)
        for t in enumerate_infra_topologies(n):
            spaces += 1
            opens = set(t.masks)
            closeds = {full & ~o for o in opens}
            inn, cl = [], []
            for a in every:
                u = 0
                for o in opens:
                    if o & ~a == 0:
                        u |= o
                inn.append(u)
                c = full
                for k in closeds:
                    if a & ~k == 0:
                        c &= k
                cl.append(c)
            for a in every:
                if cl[a] != full & ~inn[full & ~a]:
                    bad["duality"] += 1
                for b in every:
                    if inn[a & b] != inn[a] & inn[b]:
                        bad["interior-meets"] += 1
                    if cl[a | b] != cl[a] | cl[b]:
                        bad["closure-joins"] += 1
                    if cl[a & b] & ~(cl[a] & cl[b]):
                        bad["closure-of-meet-below"] += 1
            if not _unions_closed(closeds):
                bad["closed-union"] += 1
            ig = {a for a in every if inn[a] in opens}
            if not (0 in ig and full in ig and _meets_closed(ig)):
                bad["i-genuine-family-is-infra-topology"] += 1
            ps = {a for a in every if inn[a] == a}
            # on a finite lattice pairwise unions give arbitrary unions
            if not (0 in ps and full in ps and _meets_closed(ps) and _unions_closed(ps)):
                bad["ps-open-family-is-topology"] += 1
            pc = {a for a in every if cl[a] == a}
            if not _unions_closed(pc):
                bad["ps-closed-union"] += 1
            if any(inn[1 << i] not in opens for i in range(n)):
                bad["singletons-i-genuine"] += 1
            if not opens <= ig:
                bad["opens-inside-i-genuine"] += 1
    return bad, spaces


# -- classification by definition ------------------------------------------------


def _subsets(xs: frozenset) -> Iterator[frozenset]:
    items = sorted(xs)
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def _to_frozen(s: Subset) -> frozenset:
    return frozenset(s.labels())


def brute_classify(t: InfraTopology, a: Subset) -> ClassificationReport:
    """Classify ``a`` by literal set scans over every subset of the universe."""
    from .errors import UniverseMismatch

    if a.universe != t.universe:
        raise UniverseMismatch("subset and topology live in different universes")
    if t.universe.size > BRUTE_CAP:
        raise UniverseTooLarge("brute classification is limited to 20 elements")
    u = t.universe
    X = frozenset(u.names)
    A = _to_frozen(a)
    opens = [_to_frozen(o) for o in t.members]
    closeds = [X - o for o in opens]

    def iint(s):
        out = frozenset()
        for o in opens:
            if o <= s:
                out = out | o
        return out

    def icl(s):
        out = None
        for c in closeds:
            if s <= c:
                out = c if out is None else out & c
        return out

    interior, closure = iint(A), icl(A)
    ps_dense = True
    strictly_dense = True
    for s in _subsets(X):
        inner = iint(s)
        if s and inner == s and not (A & s):
            ps_dense = False
        if inner in opens and inner and not (A & s):
            strictly_dense = False
    i_genuine = interior in opens

    def back(s):
        return Subset(u, u.mask(s))

    return ClassificationReport(
        subset=a,
        i_interior=back(interior),
        i_closure=back(closure),
        infra_open=A in opens,
        infra_closed=A in closeds,
        i_genuine=i_genuine,
        strictly_i_genuine=i_genuine and bool(interior),
        c_genuine=closure in closeds,
        ps_infra_open=interior == A,
        ps_infra_closed=closure == A,
        ps_dense=ps_dense,
        strictly_dense=strictly_dense,
    )


# -- forcing by definition --------------------------------------------------------


def brute_forces(m: GitModel, w: str, phi: Formula) -> bool:
    """Clause-by-clause forcing at a single world, without caching."""
    u = m.worlds
    worlds = list(u.names)
    opens = [frozenset(o.labels()) for o in m.tau.members]

    def at(x: str, f: Formula) -> bool:
        if isinstance(f, Var):
            return f.name in m.v and x in u.labels(m.v[f.name])
        if isinstance(f, Top):
            return True
        if isinstance(f, Bottom):
            return False
        if isinstance(f, Not):
            return not at(x, f.arg)
        if isinstance(f, And):
            return at(x, f.left) and at(x, f.right)
        if isinstance(f, Or):
            return at(x, f.left) or at(x, f.right)
        if isinstance(f, Implies):
            return not at(x, f.left) or at(x, f.right)
        if isinstance(f, Iff):
            return at(x, f.left) == at(x, f.right)
        if isinstance(f, Box):
            return any(x in o and all(at(y, f.arg) for y in o) for o in opens)
        if isinstance(f, BBox):
            i = u.index(x)
            if m.y1 >> i & 1:
                link = worlds[m.f[i]]
                return any(link in o and all(at(y, f.arg) for y in o) for o in opens)
            truth = frozenset(y for y in worlds if at(y, f.arg))
            return truth in {frozenset(u.labels(s)) for s in m.n[i]}
        raise TypeError(f)

    return at(w, phi)


# -- bounded model enumeration ----------------------------------------------------


def _ps_open_family(full: int, masks: tuple[int, ...]) -> frozenset[int]:
    fam = set()
    for s in range(full + 1):
        inner = 0
        for o in masks:
            if o & ~s == 0:
                inner |= o
        if inner == s:
            fam.add(s)
    return frozenset(fam)


def neighborhood_pool(n: int, tau: InfraTopology, policy: str) -> list[frozenset[int]]:
    """Candidate neighborhood families for a ``Y2`` world, empty family first."""
    sets = range(1 << n)
    if policy == "full":
        out = []
        for index in range(1 << (1 << n)):
            out.append(frozenset(s for s in sets if index >> s & 1))
        return out
    out = [frozenset()]
    out += [frozenset([s]) for s in sets]
    out += [frozenset(pair) for pair in combinations(sets, 2)]
    extra = _ps_open_family((1 << n) - 1, tau.masks)
    if extra not in out:
        out.append(extra)
    return out


def _world_labels(n: int) -> list[str]:
    return [f"w{i + 1}" for i in range(n)]


def _structures(n: int, policy: str):
    """Yield (tau, y1, link choices, Y2 worlds, pool) for each model skeleton."""
    labels = _world_labels(n)
    full = (1 << n) - 1
    for tau in enumerate_infra_topologies(n, generalized=True, labels=labels):
        covered = tau.support
        targets = [i for i in range(n) if covered >> i & 1]
        free = full & ~covered
        pool = neighborhood_pool(n, tau, policy)
        # submasks of the free worlds, in increasing order
        for e in range(free + 1):
            if e & ~free or (e and not targets):
                continue
            y1 = covered | e
            linked = [i for i in range(n) if e >> i & 1]
            y2 = [i for i in range(n) if not y1 >> i & 1]
            yield tau, y1, targets, linked, y2, pool


def count_models(bounds: SearchBounds) -> int:
    """Exact size of the enumeration; raises BoundsTooLarge past ``bounds.limit``."""
    total = 0
    k = len(bounds.variables)
    for n in range(bounds.min_worlds, bounds.max_worlds + 1):
        policy = bounds.policy_for(n)
        if n > ENUMERATION_CAP:
            raise BoundsTooLarge(f"model enumeration is limited to {ENUMERATION_CAP} worlds")
        pool_size = (1 << (1 << n)) if policy == "full" else None
        for tau in enumerate_infra_topologies(n, generalized=True, labels=_world_labels(n)):
            covered = tau.support
            c = bin(covered).count("1")
            free = n - c
            if pool_size is None:
                size = len(neighborhood_pool(n, tau, policy))
            else:
                size = pool_size
            for extra in range(free + 1):
                if extra and not c:
                    continue
                ways = _binom(free, extra) * c ** extra * size ** (free - extra)
                total += ways * (1 << (n * k))
            if total > bounds.limit:
                raise BoundsTooLarge(f"more than {bounds.limit} models within the given bounds")
    return total


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def enumerate_models(bounds: SearchBounds) -> Iterator[GitModel]:
    """Every model within ``bounds`` in a fixed order.

    Order: number of worlds, topology (candidate index), extra ``Y1``
    worlds, link targets, neighborhood families (pool order), valuation.
    """
    names = tuple(bounds.variables)
    for n in range(bounds.min_worlds, bounds.max_worlds + 1):
        policy = bounds.policy_for(n)
        vals = list(product(range(1 << n), repeat=len(names)))
        for tau, y1, targets, linked, y2, pool in _structures(n, policy):
            u = tau.universe
            for choice in product(targets, repeat=len(linked)):
                f = {i: i for i in targets}
                f.update(zip(linked, choice))
                for fams in product(pool, repeat=len(y2)):
                    nmap = dict(zip(y2, fams))
                    for val in vals:
                        yield GitModel(u, tau, y1, f, nmap, dict(zip(names, val)))


def enumeration_header(bounds: SearchBounds) -> dict:
    return {
        "worlds": [bounds.min_worlds, bounds.max_worlds],
        "variables": list(bounds.variables),
        "neighborhood_policy": {n: bounds.policy_for(n) for n in range(bounds.min_worlds, bounds.max_worlds + 1)},
        "pool_description": "full: every family of subsets; pool: families of at most two subsets plus the ps-infra-open family",
    }


def sample_infra_topologies(n: int, count: int, seed: int = 0, generalized: bool = False) -> Iterator[InfraTopology]:
    """Seeded random spaces: the closure of a handful of random seed sets."""
    from .setfam import generate_infra_topology

    rng = random.Random(seed)
    u = make_universe(default_labels(n))
    for _ in range(count):
        seeds = [rng.randrange(1 << n) for _ in range(rng.randrange(1, 7))]
        yield generate_infra_topology(u, seeds, generalized)


def sample_models(n: int, variables: tuple[str, ...], count: int, seed: int = 0) -> Iterator[GitModel]:
    """Seeded random models on ``n`` worlds with unrestricted neighborhoods."""
    from .setfam import generate_infra_topology

    rng = random.Random(seed)
    u = make_universe(_world_labels(n))
    full = u.full
    for _ in range(count):
        seeds = [rng.randrange(1 << n) for _ in range(rng.randrange(4))]
        tau = generate_infra_topology(u, seeds, generalized=True)
        covered = tau.support
        targets = [i for i in range(n) if covered >> i & 1]
        extra = rng.randrange(full + 1) & ~covered if targets else 0
        y1 = covered | extra
        f = {i: (i if covered >> i & 1 else rng.choice(targets)) for i in range(n) if y1 >> i & 1}
        nmap = {
            i: frozenset(s for s in range(full + 1) if rng.random() < 0.3)
            for i in range(n) if not y1 >> i & 1
        }
        v = {name: rng.randrange(full + 1) for name in variables}
        yield GitModel(u, tau, y1, f, nmap, v)


# -- lemma witness catalog -----------------------------------------------------------


def _ig(opens: list[frozenset], s: frozenset) -> bool:
    inner = frozenset().union(*[o for o in opens if o <= s])
    return inner in opens


def _cg(X: frozenset, opens: list[frozenset], s: frozenset) -> bool:
    closeds = [X - o for o in opens]
    cl = X
    for c in closeds:
        if s <= c:
            cl = cl & c
    return cl in closeds


def _witness_predicate(pid: str) -> Callable[[frozenset, list, frozenset, frozenset], bool]:
    """Predicate on (X, opens, A, B) that a witness (or counterexample) must satisfy."""

    def ig(X, o, s):
        return _ig(o, s)

    def cg(X, o, s):
        return _cg(X, o, s)

    table = {
        "i-genuine-union-may-fail": lambda X, o, A, B: ig(X, o, A) and ig(X, o, B) and not ig(X, o, A | B),
        "non-i-genuine-union-may-be-i-genuine": lambda X, o, A, B: not ig(X, o, A) and not ig(X, o, B) and ig(X, o, A | B),
        "i-genuine-intersection-is-i-genuine": lambda X, o, A, B: ig(X, o, A) and ig(X, o, B) and not ig(X, o, A & B),
        "non-i-genuine-intersection-may-be-i-genuine": lambda X, o, A, B: not ig(X, o, A) and not ig(X, o, B) and ig(X, o, A & B),
        "c-genuine-union-is-c-genuine": lambda X, o, A, B: cg(X, o, A) and cg(X, o, B) and not cg(X, o, A | B),
        "non-c-genuine-union-may-be-c-genuine": lambda X, o, A, B: not cg(X, o, A) and not cg(X, o, B) and cg(X, o, A | B),
        "c-genuine-intersection-may-fail": lambda X, o, A, B: cg(X, o, A) and cg(X, o, B) and not cg(X, o, A & B),
        "non-c-genuine-intersection-may-be-c-genuine": lambda X, o, A, B: not cg(X, o, A) and not cg(X, o, B) and cg(X, o, A & B),
    }
    return table[pid]


@dataclass(frozen=True)
class CatalogEntry:
    """One lemma item.  ``kind`` is ``may`` (a witness must exist) or
    ``must`` (no counterexample may exist); for ``must`` items the predicate
    describes a counterexample."""

    pid: str
    kind: str
    statement: str
    seed_space: tuple[tuple[str, ...], tuple[tuple[str, ...], ...]] | None = None
    seed_sets: tuple[tuple[str, ...], tuple[str, ...]] | None = None
    seed_expected: bool = True


_EX5 = ("a", "b", "c", "d", "e")
_ABCD = ("a", "b", "c", "d")

CATALOG: dict[str, CatalogEntry] = {
    e.pid: e
    for e in [
        CatalogEntry(
            "i-genuine-union-may-fail", "may", "the union of two i-genuine sets may fail to be i-genuine",
            (_EX5, ((), _EX5, ("a",), ("b",), ("c",), ("a", "b"))), (("a", "b"), ("c",)),
        ),
        CatalogEntry(
            "non-i-genuine-union-may-be-i-genuine", "may", "the union of two non-i-genuine sets may be i-genuine",
            (_EX5, ((), _EX5, ("a",), ("b",), ("c",), ("a", "b"))), (("b", "c", "d"), ("a", "c", "d", "e")),
        ),
        CatalogEntry("i-genuine-intersection-is-i-genuine", "must", "the intersection of two i-genuine sets is i-genuine"),
        CatalogEntry(
            "non-i-genuine-intersection-may-be-i-genuine", "may",
            "the intersection of two non-i-genuine sets may be i-genuine",
            # the catalogued witness: {a,b} is not a member, so it fails
            (_ABCD, ((), _ABCD, ("a",), ("b",), ("a", "c"))), (("a", "b", "c"), ("a", "b", "d")),
            seed_expected=False,
        ),
        CatalogEntry("c-genuine-union-is-c-genuine", "must", "the union of two c-genuine sets is c-genuine"),
        CatalogEntry(
            "non-c-genuine-union-may-be-c-genuine", "may", "the union of two non-c-genuine sets may be c-genuine",
            (("a", "b", "c"), ((), ("a", "b", "c"), ("a",), ("b",), ("c",))), (("a",), ("b",)),
        ),
        CatalogEntry(
            "c-genuine-intersection-may-fail", "may", "the intersection of two c-genuine sets may fail to be c-genuine",
            (_ABCD, ((), _ABCD, ("c",), ("d",), ("b", "c"), ("c", "d"))), (("a", "b", "c"), ("a", "d")),
        ),
        CatalogEntry(
            "non-c-genuine-intersection-may-be-c-genuine", "may",
            "the intersection of two non-c-genuine sets may be c-genuine",
            (_ABCD, ((), _ABCD, ("a",), ("b",), ("c",), ("a", "b"), ("a", "b", "c"))), (("a", "d"), ("b", "d")),
        ),
    ]
}

# extra spaces tried at n = 5 when the exhaustive part of a search comes up empty
SEEDED_SPACES = [
    (_EX5, ((), _EX5, ("a",), ("b",), ("c",), ("a", "b"))),
]


class UnknownProperty(InfraError):
    pass


@dataclass
class WitnessBundle:
    pid: str
    kind: str
    statement: str
    holds: bool
    source: str
    topology: InfraTopology | None = None
    a: Subset | None = None
    b: Subset | None = None
    seed_checked: bool = False
    seed_verified: bool | None = None
    seed_expected: bool = True
    checked: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def discrepancy(self) -> bool:
        return self.seed_checked and self.seed_verified is False

    @property
    def ok(self) -> bool:
        """The item is confirmed and the seeded witness behaved as catalogued."""
        if not self.holds:
            return False
        if self.seed_checked and self.seed_verified != self.seed_expected:
            return False
        return True

    def to_dict(self) -> dict:
        out = {
            "property": self.pid,
            "kind": self.kind,
            "statement": self.statement,
            "holds": self.holds,
            "source": self.source,
            "checked": self.checked,
            "seed_verified": self.seed_verified,
            "discrepancy": self.discrepancy,
            "notes": self.notes,
        }
        if self.topology is not None:
            out.update(space_to_dict(self.topology))
            out["subsets"] = {"A": self.a.labels(), "B": self.b.labels()}
        return out


def _space(entry) -> tuple[Universe, InfraTopology, list[frozenset], frozenset]:
    from .setfam import validate_infra_topology

    labels, fam = entry
    u = make_universe(list(labels))
    t = validate_infra_topology(u, [u.mask(s) for s in fam])
    return u, t, [frozenset(s) for s in fam], frozenset(labels)


def _pairs(X: frozenset):
    subs = list(_subsets(X))
    return product(subs, repeat=2)


def _search(pred, max_n: int, seeded: bool) -> tuple[tuple | None, int]:
    checked = 0
    for n in range(1, max_n + 1):
        for t in enumerate_infra_topologies(n):
            X = frozenset(t.universe.names)
            opens = [frozenset(o.labels()) for o in t.members]
            for A, B in _pairs(X):
                checked += 1
                if pred(X, opens, A, B):
                    return (t, A, B), checked
    if seeded:
        for entry in SEEDED_SPACES:
            u, t, opens, X = _space(entry)
            for A, B in _pairs(X):
                checked += 1
                if pred(X, opens, A, B):
                    return (t, A, B), checked
    return None, checked


def find_witness(pid: str, max_n: int = 4, seeded: bool = True) -> WitnessBundle:
    """Verify one lemma item from the catalog.

    ``may`` items re-check the seeded witness and fall back to exhaustive
    search (universes up to ``max_n``, then the seeded 5-element spaces).
    ``must`` items search the same space for a counterexample.
    """
    if pid not in CATALOG:
        raise UnknownProperty(f"unknown property {pid!r}; known: {', '.join(CATALOG)}")
    if max_n > ENUMERATION_CAP:
        raise UniverseTooLarge(f"witness search is limited to {ENUMERATION_CAP} elements plus seeded spaces")
    entry = CATALOG[pid]
    pred = _witness_predicate(pid)
    bundle = WitnessBundle(pid, entry.kind, entry.statement, holds=False, source="none", seed_expected=entry.seed_expected)

    if entry.kind == "must":
        found, bundle.checked = _search(pred, max_n, seeded)
        if found is None:
            bundle.holds = True
            bundle.source = "exhaustive"
            bundle.notes.append(f"no counterexample among {bundle.checked} (space, A, B) triples")
        else:
            t, A, B = found
            u = t.universe
            bundle.topology, bundle.a, bundle.b = t, Subset(u, u.mask(A)), Subset(u, u.mask(B))
            bundle.source = "search"
            bundle.notes.append("counterexample found")
        return bundle

    if entry.seed_space is not None:
        u, t, opens, X = _space(entry.seed_space)
        A, B = (frozenset(s) for s in entry.seed_sets)
        bundle.seed_checked = True
        bundle.seed_verified = pred(X, opens, A, B)
        if bundle.seed_verified:
            bundle.holds = True
            bundle.source = "seed"
            bundle.topology, bundle.a, bundle.b = t, Subset(u, u.mask(A)), Subset(u, u.mask(B))
            bundle.checked = 1
            return bundle
        bundle.notes.append(
            f"seeded witness fails: A={_fmt(A)}, B={_fmt(B)} in {t}; "
            f"A ∩ B = {_fmt(A & B)} is {'a member' if (A & B) in opens else 'not a member'}"
        )
    found, bundle.checked = _search(pred, max_n, seeded)
    if found is not None:
        t, A, B = found
        u = t.universe
        bundle.holds = True
        bundle.source = "search"
        bundle.topology, bundle.a, bundle.b = t, Subset(u, u.mask(A)), Subset(u, u.mask(B))
        bundle.notes.append(f"replacement witness found after {bundle.checked} triples")
    return bundle


def _fmt(s: frozenset) -> str:
    return "{" + ",".join(sorted(s)) + "}"
