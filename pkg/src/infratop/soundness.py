"""Bounded soundness sweep for GIT.

For one model, every formula of depth at most ``d`` over the chosen
variables has a truth set, and the truth value of an axiom instance depends
only on the truth sets of the formulas plugged into the scheme.  The sweep
therefore computes the *realized family* of a model (all truth sets reached
by formulas of depth ≤ d, closed level by level exactly as formulas are
built) and checks every scheme on every tuple drawn from that family.  This
covers every instance without materialising the formulas.

Families of subsets of ``W`` are stored as bitsets indexed by subset mask.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .logic import BBox, Box, Iff, Top, formulas_up_to_depth
from .operators import interior_mask
from .semantics import Countermodel, GitModel, SearchBounds, countermodel_search, true_in_model, truth_mask

AXIOMS = ("M_box", "C_box", "T_box", "4_box", "box_to_bbox", "CPC_A1", "CPC_A2", "CPC_A3")
RULES = ("MP", "RE_box", "RE_bbox")


def _members(fam: int):
    s = 0
    while fam:
        if fam & 1:
            yield s
        fam >>= 1
        s += 1


class _Boolean:
    """Skeleton-independent tables for ``n`` worlds."""

    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1
        full = self.full
        size = 1 << (1 << n)
        self._bin: dict[int, int] = {}
        self.neg = [full & ~s for s in range(full + 1)]
        self._classical: dict[int, list[str]] = {}
        self.size = size

    def binary_image(self, fam: int) -> int:
        hit = self._bin.get(fam)
        if hit is None:
            full = self.full
            hit = 0
            ms = list(_members(fam))
            for a in ms:
                for b in ms:
                    hit |= 1 << (a & b) | 1 << (a | b) | 1 << ((full & ~a) | b) | 1 << (full & ~(a ^ b))
            self._bin[fam] = hit
        return hit

    def negation_image(self, fam: int) -> int:
        out = 0
        for s in _members(fam):
            out |= 1 << self.neg[s]
        return out

    def classical_failures(self, fam: int) -> list[str]:
        """CPC axiom schemes and MP, checked on every tuple from ``fam``."""
        hit = self._classical.get(fam)
        if hit is not None:
            return hit
        full = self.full

        def imp(a, b):
            return (full & ~a) | b

        bad = []
        ms = list(_members(fam))
        for a, b in product(ms, repeat=2):
            if imp(a, imp(b, a)) != full:
                bad.append("CPC_A1")
            if imp(imp(full & ~a, full & ~b), imp(b, a)) != full:
                bad.append("CPC_A3")
            if a == full and imp(a, b) == full and b != full:
                bad.append("MP")
            for c in ms:
                if imp(imp(a, imp(b, c)), imp(imp(a, b), imp(a, c))) != full:
                    bad.append("CPC_A2")
        self._classical[fam] = bad = sorted(set(bad))
        return bad


class _Skeleton:
    """Modal tables of one model skeleton (everything but the valuation)."""

    def __init__(self, tau_masks, y1: int, f: dict, nmap: dict, boolean: _Boolean):
        full = boolean.full
        self.boolean = boolean
        self.box = [interior_mask(tau_masks, s) for s in range(full + 1)]
        self.bbox = []
        for s in range(full + 1):
            inner = self.box[s]
            out = 0
            for w, target in f.items():
                if inner >> target & 1:
                    out |= 1 << w
            for w, fam in nmap.items():
                if s in fam:
                    out |= 1 << w
            self.bbox.append(out)
        self._closure: dict[tuple[int, int], int] = {}
        self._verdict: dict[int, list[str]] = {}
        self.bad_unary, self.bad_pair = self._failing_instances()

    def _failing_instances(self):
        full = self.boolean.full
        box, bbox = self.box, self.bbox
        bad_unary = {"T_box": 0, "4_box": 0, "box_to_bbox": 0}
        bad_pair = {"M_box": [0] * (full + 1), "C_box": [0] * (full + 1)}
        for s in range(full + 1):
            if box[s] & ~s:
                bad_unary["T_box"] |= 1 << s
            if box[s] & ~box[box[s]]:
                bad_unary["4_box"] |= 1 << s
            if box[s] & ~bbox[s]:
                bad_unary["box_to_bbox"] |= 1 << s
            for t in range(full + 1):
                if box[s & t] & ~(box[s] & box[t]):
                    bad_pair["M_box"][s] |= 1 << t
                if (box[s] & box[t]) & ~box[s & t]:
                    bad_pair["C_box"][s] |= 1 << t
        return bad_unary, bad_pair

    def realized(self, base: int, depth: int) -> int:
        key = (base, depth)
        hit = self._closure.get(key)
        if hit is not None:
            return hit
        boolean = self.boolean
        fam = base
        for _ in range(depth):
            nxt = fam | boolean.binary_image(fam) | boolean.negation_image(fam)
            for s in _members(fam):
                nxt |= 1 << self.box[s] | 1 << self.bbox[s]
            fam = nxt
        self._closure[key] = fam
        return fam

    def failures(self, fam: int) -> list[str]:
        hit = self._verdict.get(fam)
        if hit is not None:
            return hit
        bad = list(self.boolean.classical_failures(fam))
        for name, mask in self.bad_unary.items():
            if fam & mask:
                bad.append(name)
        for name, rows in self.bad_pair.items():
            if any(fam & rows[s] for s in _members(fam)):
                bad.append(name)
        self._verdict[fam] = bad
        return bad


@dataclass
class SoundnessEntry:
    name: str
    kind: str
    expect_valid: bool
    failures: int = 0
    first_failure: GitModel | None = None
    countermodel: Countermodel | None = None

    @property
    def passed(self) -> bool:
        if self.expect_valid:
            return self.failures == 0
        return self.countermodel is not None


@dataclass
class SoundnessReport:
    depth: int
    variables: tuple[str, ...]
    bounds: SearchBounds
    models: int = 0
    realized_tuples: int = 0
    literal_models: int = 0
    entries: dict[str, SoundnessEntry] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries.values())

    def lines(self) -> list[str]:
        out = [f"models checked: {self.models}; depth <= {self.depth}; variables {', '.join(self.variables)}"]
        for e in self.entries.values():
            status = "PASS" if e.passed else "FAIL"
            if e.expect_valid:
                detail = f"{e.failures} failing models"
            else:
                detail = "countermodel: " + (e.countermodel.model.describe() if e.countermodel else "none found")
            out.append(f"{status}  {e.kind:<5} {e.name:<12} {detail}")
        return out


def iter_skeletons(bounds: SearchBounds):
    """(n, tau, y1, f, N) in the order used by ``oracle.enumerate_models``."""
    from .oracle import _structures

    for n in range(bounds.min_worlds, bounds.max_worlds + 1):
        for tau, y1, targets, linked, y2, pool in _structures(n, bounds.policy_for(n)):
            for choice in product(targets, repeat=len(linked)):
                f = {i: i for i in targets}
                f.update(zip(linked, choice))
                for fams in product(pool, repeat=len(y2)):
                    yield n, tau, y1, f, dict(zip(y2, fams))


def _literal_extensionality(report: SoundnessReport, variables, max_worlds: int) -> None:
    """RE rules on real formulas: depth-1 formulas with equal truth sets must
    have equivalent boxes.  Run on the full enumeration up to ``max_worlds``."""
    from .oracle import enumerate_models

    formulas = formulas_up_to_depth(1, tuple(variables))
    bounds = SearchBounds(max_worlds=max_worlds, variables=tuple(variables), policy="full")
    for m in enumerate_models(bounds):
        cache: dict = {}
        reps: dict[int, object] = {}
        for phi in formulas:
            rep = reps.setdefault(truth_mask(m, phi, cache=cache), phi)
            if rep is phi:
                continue
            for name, op in (("RE_box", Box), ("RE_bbox", BBox)):
                if truth_mask(m, Iff(op(rep), op(phi)), cache=cache) != m.worlds.full:
                    entry = report.entries[name]
                    entry.failures += 1
                    entry.first_failure = entry.first_failure or m
        report.literal_models += 1


def soundness_suite(depth: int = 2, variables: tuple[str, ...] = ("p", "q"), bounds: SearchBounds | None = None) -> SoundnessReport:
    """Check every GIT axiom scheme and rule on every model within ``bounds``.

    Classical logic is represented by the three Łukasiewicz schemes, which
    together with modus ponens generate every tautology.
    """
    if depth > 3 or len(variables) > 2:
        raise ValueError("the sweep supports depth <= 3 and at most two variables")
    if bounds is None:
        bounds = SearchBounds(max_worlds=3, variables=variables)
    report = SoundnessReport(depth, tuple(variables), bounds)
    for name in AXIOMS:
        report.entries[name] = SoundnessEntry(name, "axiom", True)
    for name in RULES:
        report.entries[name] = SoundnessEntry(name, "rule", True)
    tables: dict[int, _Boolean] = {}
    k = len(variables)
    for n, tau, y1, f, nmap in iter_skeletons(bounds):
        boolean = tables.get(n) or tables.setdefault(n, _Boolean(n))
        sk = _Skeleton(tau.masks, y1, f, nmap, boolean)
        fixed = 1 | 1 << boolean.full  # truth sets of false and true
        for val in product(range(1 << n), repeat=k):
            base = fixed
            for s in val:
                base |= 1 << s
            fam = sk.realized(base, depth)
            report.models += 1
            report.realized_tuples += bin(fam).count("1")
            for name in sk.failures(fam):
                entry = report.entries[name]
                entry.failures += 1
                if entry.first_failure is None:
                    entry.first_failure = GitModel(tau.universe, tau, y1, f, nmap, dict(zip(variables, val)))
    _literal_extensionality(report, variables, min(bounds.max_worlds, 2))
    nec = SoundnessEntry("NEC", "rule", False)
    found = countermodel_search(Box(Top()), SearchBounds(max_worlds=bounds.max_worlds, variables=tuple(variables)))
    if found is not None and true_in_model(found.model, Top()):
        nec.countermodel = found
    report.entries["NEC"] = nec
    return report
