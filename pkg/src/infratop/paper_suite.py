"""Golden checks: the worked examples and lemma items, reproduced exactly.

Each check is a function returning a short detail string on success and
raising ``CheckFailed`` (or any :class:`InfraError`) otherwise.  Spaces are
read from a data directory, by default the one shipped with the package.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from .algebra import meet, union_check
from .errors import InfraError
from .logic import AxiomScheme, Box, Top, check_derivation, instantiate, load_derivation, match_axiom, parse, Var
from .operators import (
    FamilyKind,
    FamilyOrder,
    classify,
    compare_families,
    derived_family,
    i_closure,
    i_interior,
    minimal_infra_open_sets,
)
from .oracle import CATALOG, find_witness
from .semantics import SearchBounds, countermodel_search, explain, load_model, true_in_model, truth_set
from .setfam import (
    InfraTopology,
    NotIntersectionClosed,
    generate_infra_topology,
    load_space,
    subset_of,
    validate_infra_topology,
)


class CheckFailed(Exception):
    pass


def default_data_dir() -> Path:
    return Path(str(resources.files("infratop") / "data"))


def expect(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


@dataclass
class Check:
    name: str
    group: str
    run: Callable[["Context"], str]


@dataclass
class Outcome:
    name: str
    group: str
    passed: bool
    detail: str
    seconds: float


class Context:
    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self._spaces: dict[str, InfraTopology] = {}

    def space(self, name: str) -> InfraTopology:
        if name not in self._spaces:
            self._spaces[name] = load_space(self.data_dir / f"{name}.json")
        return self._spaces[name]

    def path(self, name: str) -> Path:
        return self.data_dir / name


def fam(t: InfraTopology, *sets: str) -> set[int]:
    """Family given as strings of single-letter labels; "" is the empty set."""
    return {t.universe.mask(list(s)) for s in sets}


def sub(t: InfraTopology, labels: str):
    return subset_of(t.universe, list(labels))


CHECKS: list[Check] = []


def check(name: str, group: str):
    def deco(fn):
        CHECKS.append(Check(name, group, fn))
        return fn

    return deco


# -- spaces ---------------------------------------------------------------------


@check("ex1-is-infra-topology", "spaces")
def _(ctx):
    t = ctx.space("ex1")
    expect(t.mask_set == fam(t, "", "abc", "a", "b"), f"unexpected family {t}")
    expect(sub(t, "ab") not in t, "{a,b} should not be open")
    return str(t)


@check("ex1-to-ex5-validate", "spaces")
def _(ctx):
    sizes = [len(ctx.space(f"ex{i}")) for i in range(1, 6)]
    return f"member counts {sizes}"


@check("ex2-ex3-union-not-intersection-closed", "spaces")
def _(ctx):
    t, mu = ctx.space("ex2"), ctx.space("ex3")
    union = sorted(t.mask_set | mu.mask_set)
    expect(set(union) == fam(t, "", "abcd", "a", "c", "d", "ab", "ac", "bc", "cd"), "union family differs")
    try:
        validate_infra_topology(t.universe, union)
    except NotIntersectionClosed as exc:
        a, b = exc.witness
        expect((a.labels(), b.labels()) == (["a", "b"], ["b", "c"]), f"witness {a}, {b}")
        return f"witness {a} ∩ {b} = {a & b}"
    raise CheckFailed("union validated")


@check("ex5-generated-from-seeds", "spaces")
def _(ctx):
    t = ctx.space("ex5")
    g = generate_infra_topology(t.universe, [sub(t, "ab"), sub(t, "bc")])
    expect(g.mask_set == t.mask_set, f"generated {g}")
    return str(g)


# -- interior -------------------------------------------------------------------


@check("ex2-interior-of-abc-not-open", "interior")
def _(ctx):
    t = ctx.space("ex2")
    r = classify(t, sub(t, "abc"))
    expect(r.i_interior.bits == t.universe.mask("abc"), f"iInt = {r.i_interior}")
    expect(not r.i_genuine, "{a,b,c} should not be i-genuine")
    return "iInt({a,b,c}) = {a,b,c}, not i-genuine"


@check("ex2-interior-of-abd", "interior")
def _(ctx):
    t = ctx.space("ex2")
    r = classify(t, sub(t, "abd"))
    expect(r.i_interior.bits == t.universe.mask("ab"), f"iInt = {r.i_interior}")
    expect(r.i_genuine, "{a,b,d} should be i-genuine")
    return "iInt({a,b,d}) = {a,b}"


@check("singletons-are-i-genuine", "interior")
def _(ctx):
    for i in range(1, 6):
        t = ctx.space(f"ex{i}")
        for x in t.universe.names:
            expect(classify(t, sub(t, x)).i_genuine, f"{{{x}}} not i-genuine in ex{i}")
    return "all singletons of ex1..ex5"


@check("ex2-open-coarser-than-i-genuine", "interior")
def _(ctx):
    t = ctx.space("ex2")
    ig = derived_family(t, FamilyKind.I_GENUINE)
    order = compare_families(t.members, ig)
    expect(order is FamilyOrder.COARSER, f"got {order.value}")
    validate_infra_topology(t.universe, ig)
    return f"{len(t)} open sets inside {len(ig)} i-genuine sets"


@check("ps-open-sets-form-a-topology", "interior")
def _(ctx):
    for i in range(1, 6):
        t = ctx.space(f"ex{i}")
        p = {s.bits for s in derived_family(t, FamilyKind.PS_INFRA_OPEN)}
        expect(0 in p and t.universe.full in p, f"ex{i}: missing empty set or universe")
        for a in p:
            for b in p:
                expect(a & b in p and a | b in p, f"ex{i}: not closed")
    return "ex1..ex5"


@check("ex1-ps-open-family", "interior")
def _(ctx):
    t = ctx.space("ex1")
    got = {s.bits for s in derived_family(t, FamilyKind.PS_INFRA_OPEN)}
    expect(got == fam(t, "", "a", "b", "ab", "abc"), f"got {got}")
    return "{∅,{a},{b},{a,b},X}"


@check("minimal-infra-open-sets", "interior")
def _(ctx):
    t2, t5 = ctx.space("ex2"), ctx.space("ex5")
    expect([s.labels() for s in minimal_infra_open_sets(t2)] == [["a"], ["c"]], "ex2")
    expect([s.labels() for s in minimal_infra_open_sets(t5)] == [["b"]], "ex5")
    ind = ctx.space("indiscrete")
    expect([s.bits for s in minimal_infra_open_sets(ind)] == [ind.universe.full], "indiscrete")
    return "ex2 -> [{a}, {c}], ex5 -> [{b}], indiscrete -> [X]"


# -- closure --------------------------------------------------------------------


@check("ex2-closure-of-d-not-closed", "closure")
def _(ctx):
    t = ctx.space("ex2")
    r = classify(t, sub(t, "d"))
    expect(r.i_closure.labels() == ["d"], f"iCl = {r.i_closure}")
    expect(not r.c_genuine and r.ps_infra_closed, "{d} should be ps-infra-closed but not c-genuine")
    supersets = [c for c in derived_family(t, FamilyKind.INFRA_CLOSED) if sub(t, "d") <= c]
    expect({c.bits for c in supersets} == fam(t, "cd", "bd", "abd", "bcd", "abcd"), "closed supersets of {d}")
    return "iCl({d}) = {d}"


@check("ex2-closure-of-ab", "closure")
def _(ctx):
    t = ctx.space("ex2")
    r = classify(t, sub(t, "ab"))
    expect(r.i_closure.labels() == ["a", "b", "d"], f"iCl = {r.i_closure}")
    expect(r.c_genuine, "{a,b} should be c-genuine")
    return "iCl({a,b}) = {a,b,d}"


@check("ex4-closed-family", "closure")
def _(ctx):
    t = ctx.space("ex4")
    got = {s.bits for s in derived_family(t, FamilyKind.INFRA_CLOSED)}
    expect(got == fam(t, "", "abcd", "bcd", "acd", "abd", "cd", "d"), f"got {got}")
    return "seven closed sets"


@check("ex4-closure-of-intersection-strict", "closure")
def _(ctx):
    t = ctx.space("ex4")
    cb, cc = i_closure(t, sub(t, "b")), i_closure(t, sub(t, "c"))
    expect(cb.labels() == ["b", "d"] and cc.labels() == ["c", "d"], f"iCl(b)={cb}, iCl(c)={cc}")
    meet_cl = i_closure(t, sub(t, "b") & sub(t, "c"))
    expect(meet_cl.bits == 0 and (cb & cc).labels() == ["d"], "expected ∅ ⊊ {d}")
    return "iCl({b}∩{c}) = ∅ ⊊ {d}"


@check("ex2-closed-intersection-not-closed", "closure")
def _(ctx):
    t = ctx.space("ex2")
    closed = {s.bits for s in derived_family(t, FamilyKind.INFRA_CLOSED)}
    cd, bd = t.universe.mask("cd"), t.universe.mask("bd")
    expect(cd in closed and bd in closed, "{c,d} and {b,d} should be closed")
    expect(cd & bd == t.universe.mask("d") and (cd & bd) not in closed, "{d} should not be closed")
    return "{c,d} ∩ {b,d} = {d} not closed"


@check("closed-sets-closed-under-union", "closure")
def _(ctx):
    for i in range(1, 6):
        t = ctx.space(f"ex{i}")
        closed = {s.bits for s in derived_family(t, FamilyKind.INFRA_CLOSED)}
        expect(all(a | b in closed for a in closed for b in closed), f"ex{i}")
    return "ex1..ex5"


# -- algebra --------------------------------------------------------------------


@check("ex2-ex3-union-check", "algebra")
def _(ctx):
    r = union_check(ctx.space("ex2"), ctx.space("ex3"))
    expect(not r.valid, "union should be invalid")
    a, b = r.witness
    expect((a & b).labels() == ["b"], f"witness intersection {a & b}")
    return f"Invalid({a}, {b})"


@check("ex2-ex3-meet", "algebra")
def _(ctx):
    t = ctx.space("ex2")
    m = meet(t, ctx.space("ex3"))
    expect(m.mask_set == fam(t, "", "c", "abcd"), f"got {m}")
    return str(m)


# -- lemma items ------------------------------------------------------------------


def _witness_check(pid: str):
    def run(ctx):
        b = find_witness(pid)
        expect(b.ok, f"{pid}: {'; '.join(b.notes) or 'not confirmed'}")
        if b.discrepancy:
            expect(b.source == "search", "replacement witness missing")
            return f"catalogued witness fails; replacement {b.topology}, A={b.a}, B={b.b}"
        if b.topology is not None:
            return f"{b.topology}, A={b.a}, B={b.b}"
        return b.notes[0]

    return run


for _pid in CATALOG:
    CHECKS.append(Check(f"lemma:{_pid}", "closure" if "c-genuine" in _pid else "interior", _witness_check(_pid)))


# -- logic ----------------------------------------------------------------------


@check("axiom-shapes", "logic")
def _(ctx):
    p, q = Var("p"), Var("q")
    expect(parse("[](p & q) -> []p & []q") == instantiate(AxiomScheme.M_BOX, p, q), "M_box shape")
    expect(match_axiom(parse("[]p -> p")) is AxiomScheme.T_BOX, "T_box")
    expect(match_axiom(parse("[]p -> [[]]p")) is AxiomScheme.BOX_TO_BBOX, "box_to_bbox")
    expect(match_axiom(parse("[]true")) is None, "[]true must not be an axiom")
    return "M, T, box-to-bbox recognised; []true rejected"


@check("derivations", "logic")
def _(ctx):
    mon = check_derivation(load_derivation(ctx.path("mon_box.json")))
    expect(mon.accepted and not mon.flags, f"monotonicity derivation: {mon.rejected}")
    nec = check_derivation(load_derivation(ctx.path("nec.json")))
    expect(not nec.accepted and nec.rejected.index == 2, "necessitation should be rejected at step 2")
    return "monotonicity derived from primitives; necessitation rejected"


@check("model-box-to-bbox", "logic")
def _(ctx):
    m = load_model(ctx.path("m1.json"))
    expect(true_in_model(m, parse("[]p -> [[]]p")), "[]p -> [[]]p should hold everywhere")
    expect(truth_set(m, parse("[]p")).labels() == ["w1", "w2"], "truth set of []p")
    trace = explain(m, "w3", Box(Top()))
    expect(not trace.result and trace.witness is None, "[]true should fail at w3")
    return "holds in m1; []true fails at w3"


@check("weak-box-t-countermodel", "logic")
def _(ctx):
    m = load_model(ctx.path("t_bbox.json"))
    expect(explain(m, "w2", parse("[[]]p")).result and not explain(m, "w2", parse("p")).result, "expected [[]]p & !p at w2")
    return "[[]]p true, p false at w2"


@check("countermodels", "logic")
def _(ctx):
    bounds = SearchBounds(max_worlds=2, variables=("p",))
    for text in ("[]true", "[[]]p -> p", "[[]]p -> []p"):
        found = countermodel_search(parse(text), bounds)
        expect(found is not None, f"no countermodel for {text}")
    expect(countermodel_search(parse("[]p -> p"), bounds) is None, "T_box refuted")
    return "[]true, [[]]p -> p, [[]]p -> []p refuted; []p -> p survives"


def run_suite(data_dir: str | Path | None = None, filter: str | None = None) -> list[Outcome]:
    ctx = Context(Path(data_dir) if data_dir else default_data_dir())
    out = []
    for c in CHECKS:
        if filter and filter not in c.group and filter not in c.name:
            continue
        start = time.perf_counter()
        try:
            detail = c.run(ctx)
            passed = True
        except (CheckFailed, InfraError, OSError, AssertionError) as exc:
            detail, passed = f"{type(exc).__name__}: {exc}", False
        out.append(Outcome(c.name, c.group, passed, detail, time.perf_counter() - start))
    return out
