"""
SMT-LIB v2 reader for the polynomial constraints of QF_NRA scripts.

Every atom `(rel p q)` of every assertion contributes p - q, whatever the
Boolean structure around it. Rational coefficients are cleared to integers.
Variables are numbered by their first appearance inside a polynomial.

Supported: set-logic, set-info, set-option, declare-fun and declare-const of
sort Real, assert, check-sat, get-model, exit; and / or / not / => / xor,
let, (! t ...), + - * / ^, numerals and decimals. Anything else is rejected
with its line:column.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Optional, Union

from ..logging import log, warn
from ..polyarith import PolySet, Polynomial
from ..result import DATA, Ok, Result
from ..types import ProblemInstance, make_variables

_IGNORED_COMMANDS = {"set-info", "set-option", "check-sat", "get-model", "get-info", "get-value", "exit", "echo"}
_UNSUPPORTED_COMMANDS = {"push", "pop", "define-fun", "define-fun-rec", "define-funs-rec", "define-sort",
                         "declare-sort", "declare-datatype", "declare-datatypes", "check-sat-assuming", "reset"}
_RELATIONS = {"<", "<=", ">", ">=", "="}
_CONNECTIVES = {"and", "or", "not", "=>", "xor"}
_QUANTIFIERS = {"forall", "exists"}
_TRANSCENDENTAL = {"exp", "sin", "cos", "tan", "log", "sqrt", "arcsin", "arccos", "arctan", "pi"}


@dataclass(frozen=True)
class Node:
    """An s-expression: a token or a parenthesized list, with its position"""
    value: Union[str, list["Node"]]
    line: int
    column: int
    quoted: bool = False

    @property
    def is_atom(self) -> bool:
        return isinstance(self.value, str)

    @property
    def head(self) -> Optional[str]:
        if self.is_atom or not self.value or not self.value[0].is_atom:
            return None
        return self.value[0].value


class SmtLibError(Exception):
    def __init__(self, message: str, node: Optional[Node] = None, line: int = 0, column: int = 0):
        if node is not None:
            line, column = node.line, node.column
        super().__init__(f"{message} at {line}:{column}")


def tokenize(text: str) -> list[tuple[str, int, int, bool]]:
    """(token, line, column, quoted) following the LISP rules of SMT-LIB"""
    tokens = []
    i = 0
    line, column = 1, 1
    n = len(text)

    def advance(count: int = 1):
        nonlocal i, line, column
        for _ in range(count):
            if text[i] == "\n":
                line += 1
                column = 1
            else:
                column += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance()
        elif c == ";":
            while i < n and text[i] != "\n":
                advance()
        elif c in "()":
            tokens.append((c, line, column, False))
            advance()
        elif c == "|":
            start = (line, column)
            advance()
            chars = []
            while i < n and text[i] != "|":
                chars.append(text[i])
                advance()
            if i >= n:
                raise SmtLibError("expected '|'", line=start[0], column=start[1])
            advance()
            tokens.append(("".join(chars), start[0], start[1], True))
        elif c == '"':
            start = (line, column)
            advance()
            chars = []
            while True:
                if i >= n:
                    raise SmtLibError("expected '\"'", line=start[0], column=start[1])
                if text[i] == '"':
                    # "" escapes a quote
                    if i + 1 < n and text[i + 1] == '"':
                        chars.append('"')
                        advance(2)
                        continue
                    advance()
                    break
                chars.append(text[i])
                advance()
            tokens.append(('"' + "".join(chars) + '"', start[0], start[1], True))
        else:
            start = (line, column)
            chars = []
            while i < n and text[i] not in ' \t\r\n()|";':
                chars.append(text[i])
                advance()
            tokens.append(("".join(chars), start[0], start[1], False))
    return tokens


def read(text: str) -> list[Node]:
    """Top level s-expressions of a script"""
    stack: list[tuple[list[Node], int, int]] = []
    top: list[Node] = []
    for token, line, column, quoted in tokenize(text):
        if token == "(" and not quoted:
            stack.append(([], line, column))
        elif token == ")" and not quoted:
            if not stack:
                raise SmtLibError("unexpected ')'", line=line, column=column)
            items, l0, c0 = stack.pop()
            node = Node(items, l0, c0)
            (stack[-1][0] if stack else top).append(node)
        else:
            node = Node(token, line, column, quoted)
            (stack[-1][0] if stack else top).append(node)
    if stack:
        _, line, column = stack[-1]
        raise SmtLibError("unbalanced '('", line=line, column=column)
    return top


# sparse polynomial over rationals: monomial as sorted (slot, exponent) pairs
Monomial = tuple[tuple[int, int], ...]
RationalPoly = dict[Monomial, Fraction]


def _add(a: RationalPoly, b: RationalPoly, sign: int = 1) -> RationalPoly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, Fraction(0)) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    out: RationalPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            merged = dict(ma)
            for slot, e in mb:
                merged[slot] = merged.get(slot, 0) + e
            m = tuple(sorted(merged.items()))
            v = out.get(m, Fraction(0)) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _constant(value: Fraction) -> RationalPoly:
    return {(): value} if value else {}


def _as_constant(p: RationalPoly) -> Optional[Fraction]:
    if not p:
        return Fraction(0)
    if set(p) == {()}:
        return p[()]
    return None


def _numeral(token: str) -> Optional[Fraction]:
    if token and (token[0].isdigit()) and all(ch.isdigit() or ch == "." for ch in token) and token.count(".") <= 1:
        return Fraction(token)
    return None


class _Script:
    """Evaluation state of one script"""

    def __init__(self):
        self.declared: dict[str, Node] = {}
        self.slots: dict[str, int] = {}
        self.atoms: list[RationalPoly] = []
        self.logic: Optional[str] = None

    # ========== commands ==========

    def command(self, node: Node):
        if node.is_atom or not node.value:
            raise SmtLibError("expected a command", node)
        name = node.head
        args = node.value[1:]
        if name == "set-logic":
            self.logic = args[0].value if args and args[0].is_atom else None
            if self.logic != "QF_NRA":
                warn(f"logic {self.logic} is not QF_NRA, reading polynomial atoms anyway")
        elif name == "declare-fun":
            if len(args) != 3 or not args[0].is_atom or args[1].is_atom:
                raise SmtLibError("malformed declare-fun", node)
            if args[1].value:
                raise SmtLibError(f"uninterpreted function '{args[0].value}' is not supported", node)
            self._declare(args[0], args[2])
        elif name == "declare-const":
            if len(args) != 2 or not args[0].is_atom:
                raise SmtLibError("malformed declare-const", node)
            self._declare(args[0], args[1])
        elif name == "assert":
            if len(args) != 1:
                raise SmtLibError("assert takes one term", node)
            self.formula(args[0], {})
        elif name in _IGNORED_COMMANDS:
            pass
        elif name in _UNSUPPORTED_COMMANDS:
            raise SmtLibError(f"unsupported command '{name}'", node)
        else:
            raise SmtLibError(f"unknown command '{name}'", node)

    def _declare(self, name: Node, sort: Node):
        if not sort.is_atom or sort.value != "Real":
            raise SmtLibError(f"sort of '{name.value}' is not Real", sort)
        if name.value in self.declared:
            raise SmtLibError(f"'{name.value}' declared twice", name)
        self.declared[name.value] = name

    # ========== Boolean structure ==========

    def formula(self, node: Node, env: dict):
        if node.is_atom:
            if node.value in ("true", "false") and not node.quoted:
                return
            if node.value in env:
                bound, bound_env = env[node.value]
                return self.formula(bound, bound_env)
            raise SmtLibError(f"'{node.value}' is not a Boolean term", node)

        head = node.head
        args = node.value[1:]
        if head is None:
            raise SmtLibError("expected an operator", node)
        if head in _CONNECTIVES:
            for arg in args:
                self.formula(arg, env)
        elif head in _RELATIONS:
            if len(args) < 2:
                raise SmtLibError(f"'{head}' needs two arguments", node)
            terms = [self.term(arg, env) for arg in args]
            for a, b in zip(terms, terms[1:]):
                self.atoms.append(_add(a, b, -1))
        elif head == "distinct":
            terms = [self.term(arg, env) for arg in args]
            for i in range(len(terms)):
                for j in range(i + 1, len(terms)):
                    self.atoms.append(_add(terms[i], terms[j], -1))
        elif head == "let":
            inner = self._bind(node, env)
            self.formula(args[-1], inner)
        elif head == "!":
            self.formula(self._annotated(node), env)
        elif head in _QUANTIFIERS:
            raise SmtLibError(f"quantifier '{head}' is not supported", node)
        else:
            raise SmtLibError(f"unsupported construct '{head}'", node)

    def _bind(self, node: Node, env: dict) -> dict:
        args = node.value[1:]
        if len(args) != 2 or args[0].is_atom:
            raise SmtLibError("malformed let", node)
        inner = dict(env)
        # parallel let: bindings see the outer environment
        for binding in args[0].value:
            if binding.is_atom or len(binding.value) != 2 or not binding.value[0].is_atom:
                raise SmtLibError("malformed let binding", binding)
            inner[binding.value[0].value] = (binding.value[1], env)
        return inner

    def _annotated(self, node: Node) -> Node:
        args = node.value[1:]
        if not args:
            raise SmtLibError("annotation '!' needs a term", node)
        return args[0]

    # ========== arithmetic ==========

    def term(self, node: Node, env: dict) -> RationalPoly:
        if node.is_atom:
            token = node.value
            if not node.quoted:
                value = _numeral(token)
                if value is not None:
                    return _constant(value)
            if token in env:
                bound, bound_env = env[token]
                return self.term(bound, bound_env)
            if token in self.declared:
                slot = self.slots.setdefault(token, len(self.slots))
                return {((slot, 1),): Fraction(1)}
            if token in _TRANSCENDENTAL:
                raise SmtLibError(f"transcendental symbol '{token}' is not supported", node)
            raise SmtLibError(f"unknown symbol '{token}'", node)

        head = node.head
        args = node.value[1:]
        if head is None:
            raise SmtLibError("expected an operator", node)
        if head == "+":
            out: RationalPoly = {}
            for arg in args:
                out = _add(out, self.term(arg, env))
            return out
        if head == "-":
            if not args:
                raise SmtLibError("'-' needs an argument", node)
            first = self.term(args[0], env)
            if len(args) == 1:
                return _add({}, first, -1)
            for arg in args[1:]:
                first = _add(first, self.term(arg, env), -1)
            return first
        if head == "*":
            out = _constant(Fraction(1))
            for arg in args:
                out = _mul(out, self.term(arg, env))
            return out
        if head == "/":
            if len(args) < 2:
                raise SmtLibError("'/' needs two arguments", node)
            out = self.term(args[0], env)
            for arg in args[1:]:
                divisor = _as_constant(self.term(arg, env))
                if divisor is None:
                    raise SmtLibError("division by a non-constant term is not supported", arg)
                if not divisor:
                    raise SmtLibError("division by zero", arg)
                out = {m: c / divisor for m, c in out.items()}
            return out
        if head == "^":
            if len(args) != 2 or not args[1].is_atom or not args[1].value.isdigit():
                raise SmtLibError("'^' needs a non-negative integer literal exponent", node)
            base = self.term(args[0], env)
            out = _constant(Fraction(1))
            for _ in range(int(args[1].value)):
                out = _mul(out, base)
            return out
        if head == "let":
            inner = self._bind(node, env)
            return self.term(args[-1], inner)
        if head == "!":
            return self.term(self._annotated(node), env)
        if head == "ite":
            raise SmtLibError("'ite' is not supported", node)
        if head in _QUANTIFIERS:
            raise SmtLibError(f"quantifier '{head}' is not supported", node)
        if head in _TRANSCENDENTAL:
            raise SmtLibError(f"transcendental function '{head}' is not supported", node)
        raise SmtLibError(f"unsupported function symbol '{head}'", node)

    # ========== result ==========

    def used_slots(self) -> list[int]:
        """Slots that survive in some atom, in order of first appearance"""
        return sorted({slot for atom in self.atoms for monomial in atom for slot, _ in monomial})

    def polynomials(self, remap: dict[int, int]) -> list[Polynomial]:
        nvars = len(remap)
        out = []
        for atom in self.atoms:
            denominators = lcm(*(c.denominator for c in atom.values())) if atom else 1
            terms = {}
            for monomial, c in atom.items():
                exponents = [0] * nvars
                for slot, e in monomial:
                    exponents[remap[slot]] = e
                terms[tuple(exponents)] = int(c * denominators)
            out.append(Polynomial(nvars, terms))
        return out


def parse_smtlib(text: str, problem_id: str = "") -> Result[ProblemInstance]:
    script = _Script()
    try:
        for node in read(text):
            script.command(node)
    except SmtLibError as e:
        return Result.error(f"{problem_id or 'script'}: {e}", kind=DATA)

    used = script.used_slots()
    remap = {slot: i for i, slot in enumerate(used)}
    by_slot = {slot: name for name, slot in script.slots.items()}
    names = [by_slot[slot] for slot in used]

    unused = [name for name in script.declared if name not in names]
    if unused:
        warn(f"{problem_id or 'script'}: declared variables {', '.join(unused)} occur in no polynomial and are dropped")
    if not names:
        return Result.error(f"{problem_id or 'script'}: no polynomial constraint found", kind=DATA)

    polys = PolySet(len(names), script.polynomials(remap))
    log(f"{problem_id}: {len(names)} variables, {len(polys)} polynomials")
    return Ok(ProblemInstance(problem_id, make_variables(names), polys))


def parse_smtlib_file(path: Path) -> Result[ProblemInstance]:
    """problem_id is the file stem"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        return Result.error(f"failed to read {path}", e, kind=DATA)
    return parse_smtlib(text, path.stem)
