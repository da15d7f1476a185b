"""The let-expression language and its concrete syntax.

Core instruction set: the four unit moves, ``let``, ``bind`` and ``from``.
On top of that sits the sugar used by the longer programs: ``seed``,
``movex``/``movey`` with signed counts, ``tile`` (name the current tile),
``rewindTo``/``rewindBy``, ``nextTile``/``prevTile``, ``eraseAfter``,
``repeat``/``pump`` blocks, ``vect`` staircases and ``color``.

Concrete syntax: one instruction per line or ``;``-separated, ``#`` starts a
comment, blocks are brace-delimited.  Counts are integer literals; all
arithmetic is resolved by whoever generates the program.
"""

from __future__ import annotations

from dataclasses import dataclass, field

DIRS = ("N", "E", "S", "W")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


def _span_field():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Instr:
    pass


@dataclass(frozen=True)
class Seed(Instr):
    x: int
    y: int
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class Move(Instr):
    d: str  # one of DIRS
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class MoveX(Instr):
    n: int
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class MoveY(Instr):
    n: int
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class Let(Instr):
    name: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class Bind(Instr):
    d: str
    name: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class From(Instr):
    name: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class CurrentTile(Instr):
    name: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class RewindTo(Instr):
    name: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class RewindBy(Instr):
    k: int
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class NextTile(Instr):
    name: str
    source: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class PrevTile(Instr):
    name: str
    source: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class EraseAfter(Instr):
    name: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class Repeat(Instr):
    count: int
    block: tuple
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class Pump(Instr):
    block: tuple
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class DiscreteVect(Instr):
    dx: int
    dy: int
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class SetColor(Instr):
    color: str
    span: tuple | None = _span_field()


@dataclass(frozen=True)
class Program:
    instrs: tuple

    def __iter__(self):
        return iter(self.instrs)

    def __len__(self):
        return len(self.instrs)


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------


def _tokenize(text: str):
    """Yield (kind, value, line, col) with kind in word/int/punct/sep."""
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "\n":
            yield ("sep", "\n", line, col)
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c in ";{}":
            yield (("sep", c) if c == ";" else ("punct", c)) + (line, col)
            i += 1
            col += 1
            continue
        if c.isdigit() or (c == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", int(text[i:j]), line, col)
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("word", text[i:j], line, col)
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    yield ("eof", None, line, col)


_KEYWORDS = {
    "seed", "moveN", "moveE", "moveS", "moveW", "movex", "movey",
    "let", "bind", "from", "tile", "rewindTo", "rewindBy",
    "nextTile", "prevTile", "eraseAfter", "repeat", "pump", "vect", "color",
}


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def skip_seps(self):
        while self.peek()[0] == "sep":
            self.next()

    def expect_int(self, what: str) -> int:
        kind, value, line, col = self.next()
        if kind != "int":
            raise ParseError(f"expected {what}, got {value!r}", line, col)
        return value

    def expect_word(self, what: str) -> str:
        kind, value, line, col = self.next()
        if kind != "word":
            raise ParseError(f"expected {what}, got {value!r}", line, col)
        return value

    def expect_punct(self, c: str):
        kind, value, line, col = self.next()
        if kind != "punct" or value != c:
            raise ParseError(f"expected {c!r}, got {value!r}", line, col)

    def parse_block(self) -> tuple:
        self.expect_punct("{")
        instrs = []
        while True:
            self.skip_seps()
            kind, value, _l, _c = self.peek()
            if kind == "punct" and value == "}":
                self.next()
                return tuple(instrs)
            if kind == "eof":
                raise ParseError("unterminated block", _l, _c)
            instrs.append(self.parse_instr())

    def parse_instr(self) -> Instr:
        kind, word, line, col = self.next()
        span = (line, col)
        if kind != "word":
            raise ParseError(f"expected instruction, got {word!r}", line, col)
        if word in ("moveN", "moveE", "moveS", "moveW"):
            return Move(word[-1], span=span)
        if word == "seed":
            x = self.expect_int("seed x")
            y = self.expect_int("seed y")
            return Seed(x, y, span=span)
        if word == "movex":
            return MoveX(self.expect_int("count"), span=span)
        if word == "movey":
            return MoveY(self.expect_int("count"), span=span)
        if word == "let":
            return Let(self.expect_word("identifier"), span=span)
        if word == "bind":
            d = self.expect_word("direction")
            if d not in DIRS:
                raise ParseError(f"unknown direction {d!r}", line, col)
            return Bind(d, self.expect_word("identifier"), span=span)
        if word == "from":
            return From(self.expect_word("identifier"), span=span)
        if word == "tile":
            return CurrentTile(self.expect_word("identifier"), span=span)
        if word == "rewindTo":
            return RewindTo(self.expect_word("identifier"), span=span)
        if word == "rewindBy":
            k = self.expect_int("count")
            if k < 0:
                raise ParseError("rewindBy count must be >= 0", line, col)
            return RewindBy(k, span=span)
        if word == "nextTile":
            name = self.expect_word("identifier")
            return NextTile(name, self.expect_word("identifier"), span=span)
        if word == "prevTile":
            name = self.expect_word("identifier")
            return PrevTile(name, self.expect_word("identifier"), span=span)
        if word == "eraseAfter":
            return EraseAfter(self.expect_word("identifier"), span=span)
        if word == "repeat":
            count = self.expect_int("repeat count")
            if count < 0:
                raise ParseError("negative repeat count", line, col)
            self.skip_seps()
            return Repeat(count, self.parse_block(), span=span)
        if word == "pump":
            self.skip_seps()
            return Pump(self.parse_block(), span=span)
        if word == "vect":
            dx = self.expect_int("dx")
            dy = self.expect_int("dy")
            return DiscreteVect(dx, dy, span=span)
        if word == "color":
            return SetColor(self.expect_word("color name"), span=span)
        raise ParseError(f"unknown instruction {word!r}", line, col)

    def parse_program(self) -> Program:
        instrs = []
        while True:
            self.skip_seps()
            kind, _v, _l, _c = self.peek()
            if kind == "eof":
                break
            instrs.append(self.parse_instr())
        return Program(tuple(instrs))


def _check_scopes(instrs, defined: set, span_of) -> None:
    for ins in instrs:
        if isinstance(ins, (Let, CurrentTile)):
            defined.add(ins.name)
        elif isinstance(ins, (NextTile, PrevTile)):
            if ins.source not in defined:
                _scope_err(ins)
            defined.add(ins.name)
        elif isinstance(ins, (Bind, From, RewindTo, EraseAfter)):
            if ins.name not in defined:
                _scope_err(ins)
        elif isinstance(ins, Repeat):
            if ins.count > 0:
                _check_scopes(ins.block, defined, span_of)
        elif isinstance(ins, Pump):
            _check_scopes(ins.block, defined, span_of)


def _scope_err(ins):
    line, col = ins.span if ins.span else (0, 0)
    name = getattr(ins, "source", None) or ins.name
    raise ParseError(f"unbound identifier {name!r}", line, col)


def parse(text: str) -> Program:
    prog = _Parser(text).parse_program()
    _check_scopes(prog.instrs, set(), None)
    return prog


# ---------------------------------------------------------------------------
# Unparser: canonical text such that parse(unparse(p)) == p.
# ---------------------------------------------------------------------------


def _unparse_instr(ins: Instr, indent: int, out: list) -> None:
    pad = "    " * indent
    if isinstance(ins, Seed):
        out.append(f"{pad}seed {ins.x} {ins.y}")
    elif isinstance(ins, Move):
        out.append(f"{pad}move{ins.d}")
    elif isinstance(ins, MoveX):
        out.append(f"{pad}movex {ins.n}")
    elif isinstance(ins, MoveY):
        out.append(f"{pad}movey {ins.n}")
    elif isinstance(ins, Let):
        out.append(f"{pad}let {ins.name}")
    elif isinstance(ins, Bind):
        out.append(f"{pad}bind {ins.d} {ins.name}")
    elif isinstance(ins, From):
        out.append(f"{pad}from {ins.name}")
    elif isinstance(ins, CurrentTile):
        out.append(f"{pad}tile {ins.name}")
    elif isinstance(ins, RewindTo):
        out.append(f"{pad}rewindTo {ins.name}")
    elif isinstance(ins, RewindBy):
        out.append(f"{pad}rewindBy {ins.k}")
    elif isinstance(ins, NextTile):
        out.append(f"{pad}nextTile {ins.name} {ins.source}")
    elif isinstance(ins, PrevTile):
        out.append(f"{pad}prevTile {ins.name} {ins.source}")
    elif isinstance(ins, EraseAfter):
        out.append(f"{pad}eraseAfter {ins.name}")
    elif isinstance(ins, Repeat):
        out.append(f"{pad}repeat {ins.count} {{")
        for sub in ins.block:
            _unparse_instr(sub, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(ins, Pump):
        out.append(f"{pad}pump {{")
        for sub in ins.block:
            _unparse_instr(sub, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(ins, DiscreteVect):
        out.append(f"{pad}vect {ins.dx} {ins.dy}")
    elif isinstance(ins, SetColor):
        out.append(f"{pad}color {ins.color}")
    else:
        raise TypeError(f"cannot unparse {ins!r}")


def unparse(p: Program) -> str:
    out: list = []
    for ins in p.instrs:
        _unparse_instr(ins, 0, out)
    return "\n".join(out) + ("\n" if out else "")
