import json

import pytest
from hypothesis import given, strategies as st

from infratop.errors import FormatError
from infratop.logic import (
    AxiomScheme,
    And,
    BBox,
    Bottom,
    Box,
    Derivation,
    Iff,
    Implies,
    Not,
    Or,
    ParseError,
    Step,
    Top,
    TooManyAtoms,
    Var,
    check_derivation,
    derivation_from_dict,
    derivation_to_dict,
    depth,
    formulas_up_to_depth,
    instantiate,
    is_cpc_instance,
    load_derivation,
    match_axiom,
    modal_depth,
    parse,
    render,
)

p, q, r = Var("p"), Var("q"), Var("r")


def test_precedence_and_associativity():
    assert parse("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse("p <-> q <-> r") == Iff(Iff(p, q), r)
    assert parse("!p & q | r") == Or(And(Not(p), q), r)
    assert parse("[]p -> [[]]p") == Implies(Box(p), BBox(p))
    assert parse("[][[]]!p") == Box(BBox(Not(p)))
    assert parse("true & false") == And(Top(), Bottom())


def test_unicode_spellings():
    assert parse("□p → ■p") == parse("[]p -> [[]]p")
    assert parse("¬p ∧ q ∨ ⊤") == parse("!p & q | true")


def test_parse_errors_report_offsets():
    with pytest.raises(ParseError) as exc:
        parse("p -> -> q")
    assert exc.value.offset == 5
    assert "identifier" in exc.value.expected
    for bad in ["", "(p", "p q", "p &", "[p"]:
        with pytest.raises(ParseError):
            parse(bad)


def test_render_uses_minimal_parentheses():
    assert render(parse("(p -> q) -> r")) == "(p -> q) -> r"
    assert render(parse("p -> (q -> r)")) == "p -> q -> r"
    assert render(parse("!(p & q)")) == "!(p & q)"


def test_depth_measures():
    f = parse("[](p & [[]]q)")
    assert depth(f) == 3 and modal_depth(f) == 2
    assert len(formulas_up_to_depth(1, ["p"])) == 3 + 3 * 3 + 4 * 9


def test_cpc_instances():
    assert is_cpc_instance(parse("p | !p"))
    assert is_cpc_instance(parse("[]p -> ([[]]q -> []p)"))
    assert not is_cpc_instance(parse("[]p -> p"))
    big = " & ".join(f"x{i}" for i in range(17))
    with pytest.raises(TooManyAtoms):
        is_cpc_instance(parse(f"{big} -> {big}"))


def test_axiom_matching():
    assert match_axiom(parse("[]p -> [[]]p")) is AxiomScheme.BOX_TO_BBOX
    assert match_axiom(parse("[](p & q) -> []p & []q")) is AxiomScheme.M_BOX
    assert match_axiom(parse("[]p & []q -> [](p & q)")) is AxiomScheme.C_BOX
    assert match_axiom(parse("[]p -> p")) is AxiomScheme.T_BOX
    assert match_axiom(parse("[]p -> [][]p")) is AxiomScheme.FOUR_BOX
    assert match_axiom(parse("[]true")) is None
    assert match_axiom(parse("[[]]p -> p")) is None
    for scheme in AxiomScheme:
        if scheme is not AxiomScheme.CPC:
            assert match_axiom(instantiate(scheme, Box(q), Not(r))) is scheme


def test_derivation_files(data_dir):
    mon = check_derivation(load_derivation(data_dir / "mon_box.json"))
    assert mon.accepted and mon.conclusion == parse("[]p -> []q") and not mon.flags
    nec = check_derivation(load_derivation(data_dir / "nec.json"))
    assert not nec.accepted and nec.rejected.index == 2
    assert "necessitation" in nec.rejected.reason


def test_derivation_rejections():
    d = Derivation((Step(p, "premise"),))
    assert not check_derivation(d).accepted
    d = Derivation((Step(p, "premise"), Step(q, "mp", (1, 1))), (p,))
    assert check_derivation(d).rejected.index == 2
    d = Derivation((Step(parse("[]p -> p"), "axiom"), Step(parse("[]p -> p"), "mp", (1, 3))))
    assert not check_derivation(d).accepted
    d = Derivation((Step(parse("p -> q"), "premise"), Step(parse("[]p -> []q"), "mon_box", (1,))), (parse("p -> q"),))
    v = check_derivation(d)
    assert v.accepted and v.flags == ["derived-rule"] and v.derived_rule_steps == [2]


def test_derivation_dict_round_trip(data_dir):
    d = load_derivation(data_dir / "mon_box.json")
    assert derivation_from_dict(derivation_to_dict(d)) == d
    with pytest.raises(FormatError):
        derivation_from_dict({"steps": [{"formula": "p"}]})
    with pytest.raises(FormatError):
        derivation_from_dict(json.loads('{"steps": [{"formula": "p", "by": "mp x"}]}'))


atoms = st.sampled_from([p, q, r, Top(), Bottom()])


def formulas(max_leaves=20):
    return st.recursive(
        atoms,
        lambda sub: st.one_of(
            st.builds(Not, sub), st.builds(Box, sub), st.builds(BBox, sub),
            st.builds(And, sub, sub), st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub), st.builds(Iff, sub, sub),
        ),
        max_leaves=max_leaves,
    )


@given(formulas().filter(lambda f: depth(f) <= 6))
def test_parse_render_round_trip(f):
    assert parse(render(f)) == f
