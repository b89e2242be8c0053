"""Propositional formulas over a finite atom set, identified by truth sets.

A valuation is an integer ``v`` in ``range(2 ** len(atoms))``; atom ``i`` is
true at ``v`` iff bit ``i`` of ``v`` is set. A formula's truth set is a Python
int used as a bitmask over valuations, so two formulas are equal exactly when
they are logically equivalent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

MAX_ATOMS = 16

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

_ALIASES = {"¬": "!", "∧": "&", "∨": "|", "→": "->", "↔": "<->"}


class LogicError(ValueError):
    pass


class FormulaSyntaxError(LogicError):
    def __init__(self, text: str, position: int, expected: list[str]):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(
            f"syntax error at position {position} in {text!r}: expected {' or '.join(expected)}"
        )


class UnknownAtomError(LogicError):
    def __init__(self, name: str, position: int | None = None):
        self.name = name
        self.position = position
        super().__init__(f"unknown atom {name!r}")


class LanguageMismatchError(LogicError):
    pass


def _atom_mask(i: int, n: int) -> int:
    size = 1 << i
    block = ((1 << size) - 1) << size
    period = size << 1
    total = 1 << n
    mask = block
    while period < total:
        mask |= mask << period
        period <<= 1
    return mask


@dataclass(frozen=True)
class Language:
    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not 1 <= len(atoms) <= MAX_ATOMS:
            raise LogicError(f"need between 1 and {MAX_ATOMS} atoms, got {len(atoms)}")
        if len(set(atoms)) != len(atoms):
            raise LogicError(f"duplicate atom names in {atoms}")
        for a in atoms:
            if not _ATOM_RE.match(a):
                raise LogicError(f"invalid atom name {a!r}")

    @property
    def valuation_count(self) -> int:
        return 1 << len(self.atoms)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.valuation_count) - 1

    @cached_property
    def atom_masks(self) -> dict[str, int]:
        n = len(self.atoms)
        return {a: _atom_mask(i, n) for i, a in enumerate(self.atoms)}

    def atom(self, name: str) -> "Formula":
        if name not in self.atom_masks:
            raise UnknownAtomError(name)
        return Formula(self, self.atom_masks[name], Atom(name))

    def parse(self, text: str) -> "Formula":
        return parse_formula(text, self)

    def valuation(self, index: int) -> dict[str, bool]:
        if not 0 <= index < self.valuation_count:
            raise LogicError(f"valuation index {index} out of range")
        return {a: bool(index >> i & 1) for i, a in enumerate(self.atoms)}

    def tautology(self) -> "Formula":
        return formula_from_truthset(self.full_mask, self)

    def contradiction(self) -> "Formula":
        return formula_from_truthset(0, self)

    def all_formulas(self) -> Iterator["Formula"]:
        """Every equivalence class, in truth-set order (2 ** 2 ** n of them)."""
        for m in range(1 << self.valuation_count):
            yield formula_from_truthset(m, self)


# -- syntax trees ----------------------------------------------------------

# binding strength, higher binds tighter
_PREC = {"<->": 1, "->": 2, "|": 3, "&": 4}


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object


def _format(node, unicode: bool = False) -> str:
    return _fmt(node, 0, unicode)


def _fmt(node, parent_prec: int, unicode: bool) -> str:
    sym = _UNICODE if unicode else _ASCII
    if isinstance(node, Atom):
        return node.name
    if isinstance(node, Not):
        return sym["!"] + _fmt(node.arg, 5, unicode)
    prec = _PREC[node.op]
    # left-assoc ops need parens on the right at equal precedence, "->" on the left
    if node.op == "->":
        lp, rp = prec + 1, prec
    else:
        lp, rp = prec, prec + 1
    s = f"{_fmt(node.left, lp, unicode)} {sym[node.op]} {_fmt(node.right, rp, unicode)}"
    return f"({s})" if prec < parent_prec else s


_ASCII = {"!": "!", "&": "&", "|": "|", "->": "->", "<->": "<->"}
_UNICODE = {"!": "¬", "&": "∧", "|": "∨", "->": "→", "<->": "↔"}


def _evaluate(node, lang: Language) -> int:
    if isinstance(node, Atom):
        try:
            return lang.atom_masks[node.name]
        except KeyError:
            raise UnknownAtomError(node.name) from None
    if isinstance(node, Not):
        return lang.full_mask & ~_evaluate(node.arg, lang)
    left = _evaluate(node.left, lang)
    right = _evaluate(node.right, lang)
    if node.op == "&":
        return left & right
    if node.op == "|":
        return left | right
    if node.op == "->":
        return (lang.full_mask & ~left) | right
    return lang.full_mask & ~(left ^ right)


# -- formulas --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Formula:
    """A formula value. Equality and hashing go through the truth set only."""

    lang: Language
    mask: int
    ast: object = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return self.lang == other.lang and self.mask == other.mask

    def __hash__(self):
        return hash((self.lang.atoms, self.mask))

    def __repr__(self):
        return f"Formula({self.text!r})"

    def __str__(self):
        return self.text

    @property
    def text(self) -> str:
        return _format(self.ast)

    @property
    def pretty(self) -> str:
        return _format(self.ast, unicode=True)

    @property
    def truthset(self) -> int:
        return self.mask

    def valuations(self) -> Iterator[int]:
        m = self.mask
        v = 0
        while m:
            if m & 1:
                yield v
            m >>= 1
            v += 1

    def popcount(self) -> int:
        return self.mask.bit_count()

    def satisfied_by(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def _check(self, other: "Formula"):
        if self.lang != other.lang:
            raise LanguageMismatchError(
                f"formulas over different languages: {self.lang.atoms} vs {other.lang.atoms}"
            )

    def negate(self) -> "Formula":
        ast = self.ast.arg if isinstance(self.ast, Not) else Not(self.ast)
        return Formula(self.lang, self.lang.full_mask & ~self.mask, ast)

    def _binary(self, op: str, other: "Formula", mask: int) -> "Formula":
        self._check(other)
        return Formula(self.lang, mask, Binary(op, self.ast, other.ast))

    def conjoin(self, other: "Formula") -> "Formula":
        return self._binary("&", other, self.mask & other.mask)

    def disjoin(self, other: "Formula") -> "Formula":
        return self._binary("|", other, self.mask | other.mask)

    def implies(self, other: "Formula") -> "Formula":
        return self._binary("->", other, (self.lang.full_mask & ~self.mask) | other.mask)

    def iff(self, other: "Formula") -> "Formula":
        return self._binary("<->", other, self.lang.full_mask & ~(self.mask ^ other.mask))

    __invert__ = negate
    __and__ = conjoin
    __or__ = disjoin

    def entails(self, other: "Formula") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def is_tautology(self) -> bool:
        return self.mask == self.lang.full_mask

    def is_contradiction(self) -> bool:
        return self.mask == 0

    def is_contingent(self) -> bool:
        return 0 < self.mask < self.lang.full_mask


def truthset(f: Formula) -> int:
    return f.mask


def entails(f: Formula, g: Formula) -> bool:
    return f.entails(g)


def is_tautology(f: Formula) -> bool:
    return f.is_tautology()


def is_contingent(f: Formula) -> bool:
    return f.is_contingent()


def negate(f: Formula) -> Formula:
    return f.negate()


def conjoin(f: Formula, g: Formula) -> Formula:
    return f.conjoin(g)


def characteristic(v: int, lang: Language) -> Formula:
    """The full literal conjunction true only at valuation ``v``."""
    node = None
    for i, a in enumerate(lang.atoms):
        lit = Atom(a) if v >> i & 1 else Not(Atom(a))
        node = lit if node is None else Binary("&", node, lit)
    return Formula(lang, 1 << v, node)


def formula_from_truthset(mask: int, lang: Language) -> Formula:
    """Canonical DNF representative for a truth set."""
    if mask < 0 or mask > lang.full_mask:
        raise LogicError(f"mask out of range for {len(lang.atoms)} atoms")
    first = Atom(lang.atoms[0])
    if mask == 0:
        return Formula(lang, 0, Binary("&", first, Not(first)))
    if mask == lang.full_mask:
        return Formula(lang, mask, Binary("|", first, Not(first)))
    node = None
    v = 0
    m = mask
    while m:
        if m & 1:
            term = characteristic(v, lang).ast
            node = term if node is None else Binary("|", node, term)
        m >>= 1
        v += 1
    return Formula(lang, mask, node)


# -- parser ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(<->)|(->)|([!&|()])|([a-z][a-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    for uni, ascii_ in _ALIASES.items():
        text = text.replace(uni, ascii_)
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(text, pos, ["atom", "'!'", "'('"])
        tok = m.group(m.lastindex)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<eof>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, lang: Language):
        self.text = text
        self.lang = lang
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: list[str]):
        raise FormulaSyntaxError(self.text, self.tokens[self.i][1], expected)

    def parse(self):
        node = self.iff()
        if self.peek() != "<eof>":
            self.fail(["connective", "end of input"])
        return node

    def iff(self):
        node = self.implication()
        while self.peek() == "<->":
            self.take()
            node = Binary("<->", node, self.implication())
        return node

    def implication(self):
        node = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Binary("->", node, self.implication())
        return node

    def disjunction(self):
        node = self.conjunction()
        while self.peek() == "|":
            self.take()
            node = Binary("|", node, self.conjunction())
        return node

    def conjunction(self):
        node = self.unary()
        while self.peek() == "&":
            self.take()
            node = Binary("&", node, self.unary())
        return node

    def unary(self):
        tok, pos = self.tokens[self.i]
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            node = self.iff()
            if self.peek() != ")":
                self.fail(["')'"])
            self.take()
            return node
        if tok not in ("<eof>", ")", "&", "|", "->", "<->"):
            self.take()
            if tok not in self.lang.atom_masks:
                raise UnknownAtomError(tok, pos)
            return Atom(tok)
        self.fail(["atom", "'!'", "'('"])


def parse_formula(text: str, lang) -> Formula:
    """Parse ``text`` over ``lang`` (a :class:`Language` or a sequence of atom names)."""
    if not isinstance(lang, Language):
        lang = Language(tuple(lang))
    ast = _Parser(text, lang).parse()
    return Formula(lang, _evaluate(ast, lang), ast)


def format_formula(f: Formula, unicode: bool = False) -> str:
    return _format(f.ast, unicode)
