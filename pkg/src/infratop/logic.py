"""Formulas of the two-necessity modal language, their parser, axiom
schemes of GIT, and a checker for Hilbert-style derivations.

Concrete syntax (loosest binding first)::

    f <-> g        left-associative
    f -> g         right-associative
    f | g
    f & g
    !f  []f  [[]]f prefix: negation, strong box, weak box
    true false p q_1 (f)

Unicode spellings ``↔ → ∨ ∧ ¬ □ ■ ⊤ ⊥`` are accepted as aliases.
"""
from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import FormatError, InfraError


# -- abstract syntax ----------------------------------------------------------


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    arg: Formula


@dataclass(frozen=True)
class BBox(Formula):
    arg: Formula


UNARY = (Not, Box, BBox)
BINARY = (And, Or, Implies, Iff)
MODAL = (Box, BBox)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY):
        return (f.arg,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def depth(f: Formula) -> int:
    """Height of the syntax tree; atoms have depth 0."""
    kids = children(f)
    return 1 + max(depth(k) for k in kids) if kids else 0


def modal_depth(f: Formula) -> int:
    inner = max((modal_depth(k) for k in children(f)), default=0)
    return inner + 1 if isinstance(f, MODAL) else inner


def variables(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    out: set[str] = set()
    for k in children(f):
        out |= variables(k)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk; every child precedes its parent."""
    for k in children(f):
        yield from subformulas(k)
    yield f


def formulas_up_to_depth(max_depth: int, names: Sequence[str]) -> list[Formula]:
    """Every formula over ``names`` with tree depth at most ``max_depth``."""
    found: dict[Formula, None] = dict.fromkeys([Var(n) for n in names] + [Top(), Bottom()])
    for _ in range(max_depth):
        previous = list(found)
        for g in previous:
            found.update(dict.fromkeys(op(g) for op in UNARY))
        for g, h in product(previous, repeat=2):
            found.update(dict.fromkeys(op(g, h) for op in BINARY))
    return list(found)


# -- lexer and parser ---------------------------------------------------------


class ParseError(InfraError):
    def __init__(self, text: str, pos: int, expected: Iterable[str]):
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = frozenset(expected)
        found = text[pos:pos + 8] or "end of input"
        super().__init__(f"at offset {self.offset}: expected one of {', '.join(sorted(self.expected))}; found {found!r}")


_SYMBOLS = [
    ("<->", "IFF"), ("↔", "IFF"),
    ("->", "IMP"), ("→", "IMP"),
    ("|", "OR"), ("∨", "OR"),
    ("&", "AND"), ("∧", "AND"),
    ("!", "NOT"), ("¬", "NOT"),
    ("[[]]", "BBOX"), ("■", "BBOX"),
    ("[]", "BOX"), ("□", "BOX"),
    ("(", "LP"), (")", "RP"),
    ("⊤", "TRUE"), ("⊥", "FALSE"),
]
_IDENT = re.compile(r"[a-z][a-zA-Z0-9_]*")
_KEYWORDS = {"true": "TRUE", "false": "FALSE"}
_ATOM_START = ("!", "[]", "[[]]", "(", "true", "false", "identifier")
_OPERATORS = ("<->", "->", "|", "&")


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token(kind, sym, i))
                i += len(sym)
                break
        else:
            m = _IDENT.match(text, i)
            if not m:
                raise ParseError(text, i, _ATOM_START + _OPERATORS + (")",))
            word = m.group()
            tokens.append(_Token(_KEYWORDS.get(word, "ID"), word, i))
            i = m.end()
    tokens.append(_Token("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.nesting = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: Iterable[str]):
        raise ParseError(self.text, self.peek().pos, expected)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek().kind != "EOF":
            self.fail(_OPERATORS + ("end of input",))
        return f

    def iff(self) -> Formula:
        left = self.imp()
        while self.peek().kind == "IFF":
            self.take()
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "IMP":
            self.take()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek().kind == "OR":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek().kind == "AND":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind = self.peek().kind
        if kind == "NOT":
            self.take()
            return Not(self.unary())
        if kind == "BOX":
            self.take()
            return Box(self.unary())
        if kind == "BBOX":
            self.take()
            return BBox(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "TRUE":
            self.take()
            return Top()
        if tok.kind == "FALSE":
            self.take()
            return Bottom()
        if tok.kind == "ID":
            self.take()
            return Var(tok.text)
        if tok.kind == "LP":
            self.take()
            inner = self.iff()
            if self.peek().kind != "RP":
                self.fail(_OPERATORS + (")",))
            self.take()
            return inner
        self.fail(_ATOM_START)


def parse(text: str) -> Formula:
    return _Parser(text).parse()


# binding strength used by the printer
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_INFIX = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_PREFIX = {Not: "!", Box: "[]", BBox: "[[]]"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def render(f: Formula) -> str:
    """Print ``f`` with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, UNARY):
        inner = render(f.arg)
        if _prec(f.arg) < 5:
            inner = f"({inner})"
        return _PREFIX[type(f)] + inner
    level = _PREC[type(f)]
    left, right = render(f.left), render(f.right)
    right_assoc = isinstance(f, Implies)
    if _prec(f.left) < level or (right_assoc and _prec(f.left) == level):
        left = f"({left})"
    if _prec(f.right) < level or (not right_assoc and _prec(f.right) == level):
        right = f"({right})"
    return f"{left} {_INFIX[type(f)]} {right}"


# -- classical evaluation -----------------------------------------------------


class TooManyAtoms(InfraError):
    pass


CPC_ATOM_CAP = 16


def _abstract(f: Formula, atoms: dict[Formula, int]) -> None:
    if isinstance(f, (Var, Box, BBox)):
        atoms.setdefault(f, len(atoms))
        return
    for k in children(f):
        _abstract(k, atoms)


def _column(f: Formula, cols: dict[Formula, int], ones: int) -> int:
    if f in cols:
        return cols[f]
    if isinstance(f, Top):
        return ones
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Not):
        return ones & ~_column(f.arg, cols, ones)
    a = _column(f.left, cols, ones)
    b = _column(f.right, cols, ones)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, Implies):
        return (ones & ~a) | b
    return ones & ~(a ^ b)


def is_cpc_instance(f: Formula) -> bool:
    """Whether ``f`` is a substitution instance of a classical tautology.

    Variables and outermost modal subformulas become propositional atoms and
    the result is checked by a truth table, one bit per row.
    """
    atoms: dict[Formula, int] = {}
    _abstract(f, atoms)
    k = len(atoms)
    if k > CPC_ATOM_CAP:
        raise TooManyAtoms(f"{k} atoms exceed the truth-table cap of {CPC_ATOM_CAP}")
    rows = 1 << k
    ones = (1 << rows) - 1
    cols = {}
    for atom, i in atoms.items():
        # row r assigns atom i the value of bit i of r
        col = 0
        for r in range(rows):
            if r >> i & 1:
                col |= 1 << r
        cols[atom] = col
    return _column(f, cols, ones) == ones


# -- axiom schemes ------------------------------------------------------------


class AxiomScheme(enum.Enum):
    CPC = "CPC"
    M_BOX = "M_box"
    C_BOX = "C_box"
    T_BOX = "T_box"
    FOUR_BOX = "4_box"
    BOX_TO_BBOX = "box_to_bbox"

    @property
    def arity(self) -> int:
        return 2 if self in (AxiomScheme.M_BOX, AxiomScheme.C_BOX) else 1


def instantiate(scheme: AxiomScheme, phi: Formula, psi: Formula | None = None) -> Formula:
    if scheme is AxiomScheme.M_BOX:
        return Implies(Box(And(phi, psi)), And(Box(phi), Box(psi)))
    if scheme is AxiomScheme.C_BOX:
        return Implies(And(Box(phi), Box(psi)), Box(And(phi, psi)))
    if scheme is AxiomScheme.T_BOX:
        return Implies(Box(phi), phi)
    if scheme is AxiomScheme.FOUR_BOX:
        return Implies(Box(phi), Box(Box(phi)))
    if scheme is AxiomScheme.BOX_TO_BBOX:
        return Implies(Box(phi), BBox(phi))
    raise ValueError(f"{scheme} has no fixed shape")


def _matches(scheme: AxiomScheme, f: Formula) -> bool:
    if not isinstance(f, Implies):
        return False
    lhs, rhs = f.left, f.right
    if scheme is AxiomScheme.BOX_TO_BBOX:
        return isinstance(lhs, Box) and rhs == BBox(lhs.arg)
    if scheme is AxiomScheme.M_BOX:
        return isinstance(lhs, Box) and isinstance(lhs.arg, And) and rhs == And(Box(lhs.arg.left), Box(lhs.arg.right))
    if scheme is AxiomScheme.C_BOX:
        return isinstance(rhs, Box) and isinstance(rhs.arg, And) and lhs == And(Box(rhs.arg.left), Box(rhs.arg.right))
    if scheme is AxiomScheme.T_BOX:
        return isinstance(lhs, Box) and rhs == lhs.arg
    if scheme is AxiomScheme.FOUR_BOX:
        return isinstance(lhs, Box) and rhs == Box(lhs)
    return False


MATCH_ORDER = (
    AxiomScheme.BOX_TO_BBOX,
    AxiomScheme.M_BOX,
    AxiomScheme.C_BOX,
    AxiomScheme.T_BOX,
    AxiomScheme.FOUR_BOX,
)


def match_axiom(f: Formula) -> AxiomScheme | None:
    for scheme in MATCH_ORDER:
        if _matches(scheme, f):
            return scheme
    if is_cpc_instance(f):
        return AxiomScheme.CPC
    return None


# -- derivations --------------------------------------------------------------

PRIMITIVE_RULES = {"premise", "axiom", "mp", "re_box", "re_bbox"}
DERIVED_RULES = {"mon_box"}
_RULE_ARITY = {"premise": 0, "axiom": 0, "mp": 2, "re_box": 1, "re_bbox": 1, "mon_box": 1, "nec": 1}


@dataclass(frozen=True)
class Step:
    formula: Formula
    rule: str
    refs: tuple[int, ...] = ()  # 1-based indices of earlier steps


@dataclass(frozen=True)
class Derivation:
    steps: tuple[Step, ...]
    premises: tuple[Formula, ...] = ()

    @property
    def conclusion(self) -> Formula | None:
        return self.steps[-1].formula if self.steps else None


class RejectedStep(InfraError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass
class Verdict:
    accepted: bool
    conclusion: Formula | None
    rejected: RejectedStep | None = None
    derived_rule_steps: list[int] = field(default_factory=list)
    axioms: dict[int, AxiomScheme] = field(default_factory=dict)

    @property
    def flags(self) -> list[str]:
        return ["derived-rule"] if self.derived_rule_steps else []

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "conclusion": render(self.conclusion) if self.conclusion is not None else None,
            "rejected": None if self.rejected is None else {"step": self.rejected.index, "reason": self.rejected.reason},
            "flags": self.flags,
            "derived_rule_steps": self.derived_rule_steps,
            "axioms": {str(k): v.value for k, v in self.axioms.items()},
        }


def _justify(step: Step, index: int, earlier: list[Formula], premises: set[Formula], axioms: dict[int, AxiomScheme]) -> None:
    rule, f = step.rule, step.formula
    if rule == "nec":
        raise RejectedStep(index, "necessitation is not a rule of GIT")
    if rule not in _RULE_ARITY:
        raise RejectedStep(index, f"unknown rule {rule!r}")
    if len(step.refs) != _RULE_ARITY[rule]:
        raise RejectedStep(index, f"rule {rule} takes {_RULE_ARITY[rule]} step reference(s)")
    for r in step.refs:
        if not 1 <= r < index:
            raise RejectedStep(index, f"reference {r} does not point to an earlier step")
    cited = [earlier[r - 1] for r in step.refs]

    if rule == "premise":
        if f not in premises:
            raise RejectedStep(index, "formula is not among the premises")
    elif rule == "axiom":
        scheme = match_axiom(f)
        if scheme is None:
            raise RejectedStep(index, "formula is not an instance of any GIT axiom scheme")
        axioms[index] = scheme
    elif rule == "mp":
        a, b = cited
        if b != Implies(a, f) and a != Implies(b, f):
            raise RejectedStep(index, "modus ponens needs a step φ and a step φ -> (this formula)")
    elif rule in ("re_box", "re_bbox"):
        (src,) = cited
        if not isinstance(src, Iff):
            raise RejectedStep(index, "extensionality needs a biconditional step")
        op = Box if rule == "re_box" else BBox
        if f != Iff(op(src.left), op(src.right)):
            raise RejectedStep(index, "conclusion does not match the extensionality rule")
    elif rule == "mon_box":
        (src,) = cited
        if not isinstance(src, Implies) or f != Implies(Box(src.left), Box(src.right)):
            raise RejectedStep(index, "conclusion does not match the monotonicity rule")


def check_derivation(d: Derivation, premises: Iterable[Formula] | None = None) -> Verdict:
    """Check every step of ``d``; the first bad step is reported in ``rejected``.

    Monotonicity steps are accepted but listed in ``derived_rule_steps`` since
    the rule is admissible rather than primitive.
    """
    prem = set(d.premises if premises is None else premises)
    earlier: list[Formula] = []
    verdict = Verdict(accepted=True, conclusion=d.conclusion)
    for index, step in enumerate(d.steps, start=1):
        try:
            _justify(step, index, earlier, prem, verdict.axioms)
        except RejectedStep as exc:
            verdict.accepted = False
            verdict.rejected = exc
            return verdict
        if step.rule in DERIVED_RULES:
            verdict.derived_rule_steps.append(index)
        earlier.append(step.formula)
    return verdict


def _parse_by(by: str, index: int) -> tuple[str, tuple[int, ...]]:
    parts = by.split()
    if not parts:
        raise FormatError(f"step {index}: empty justification")
    try:
        refs = tuple(int(p) for p in parts[1:])
    except ValueError:
        raise FormatError(f"step {index}: malformed justification {by!r}") from None
    return parts[0].lower(), refs


def derivation_from_dict(data: dict) -> Derivation:
    if not isinstance(data, dict) or not isinstance(data.get("steps"), list):
        raise FormatError("derivation file needs a 'steps' list")
    premises = tuple(parse(p) for p in data.get("premises", []))
    steps = []
    for i, raw in enumerate(data["steps"], start=1):
        if not isinstance(raw, dict) or "formula" not in raw or "by" not in raw:
            raise FormatError(f"step {i} needs 'formula' and 'by'")
        rule, refs = _parse_by(str(raw["by"]), i)
        steps.append(Step(parse(raw["formula"]), rule, refs))
    return Derivation(tuple(steps), premises)


def derivation_to_dict(d: Derivation) -> dict:
    return {
        "premises": [render(p) for p in d.premises],
        "steps": [{"formula": render(s.formula), "by": " ".join([s.rule, *map(str, s.refs)])} for s in d.steps],
    }


def load_derivation(path: str | Path) -> Derivation:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return derivation_from_dict(data)
