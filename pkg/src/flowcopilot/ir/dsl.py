"""Assignment-style workflow DSL: parser and emitter.

Grammar (one statement per line, ``#`` starts a comment, blank lines
are skipped)::

    workflow  := statement+
    statement := targets "=" call | call
    targets   := IDENT ("," IDENT)*
    call      := classref "(" [arg ("," arg)*] ")"
    classref  := IDENT | STRING        # STRING for non-identifier class types
    arg       := IDENT "=" value
    value     := STRING | NUMBER | BOOL | IDENT | IDENT "[" INT "]"

Strings are double-quoted with backslash escapes. A bare variable
reference resolves to the slot it was bound to (slot 0 for single
targets, the positional slot for tuple targets); ``var[i]`` always
means output slot ``i`` of the variable's node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import Edge, NodeInstance, WorkflowGraph, topo_order

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)")
_INT_RE = re.compile(r"[+-]?\d+$")
_BOOL_WORDS = {"true": True, "True": True, "false": False, "False": False}

_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}
_EMIT_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


class CodeParseError(ValueError):
    """DSL text rejected at (line, col), both 1-based."""

    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT NUMBER STRING PUNCT
    value: object
    line: int
    col: int


def _lex_line(text: str, line_no: int) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch == '"':
            out = []
            i += 1
            while True:
                if i >= n:
                    raise CodeParseError("unterminated string", line_no, col)
                c = text[i]
                if c == '"':
                    i += 1
                    break
                if c == "\\":
                    if i + 1 >= n:
                        raise CodeParseError("unterminated escape", line_no, i + 1)
                    esc = text[i + 1]
                    if esc in _ESCAPES:
                        out.append(_ESCAPES[esc])
                        i += 2
                    elif esc == "u":
                        hex_part = text[i + 2 : i + 6]
                        if len(hex_part) != 4 or not re.fullmatch(r"[0-9a-fA-F]{4}", hex_part):
                            raise CodeParseError("invalid \\u escape", line_no, i + 1)
                        out.append(chr(int(hex_part, 16)))
                        i += 6
                    else:
                        raise CodeParseError(f"unknown escape '\\{esc}'", line_no, i + 1)
                else:
                    out.append(c)
                    i += 1
            tokens.append(_Token("STRING", "".join(out), line_no, col))
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("IDENT", m.group(), line_no, col))
            i = m.end()
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            raw = m.group()
            value = int(raw) if _INT_RE.match(raw) else float(raw)
            tokens.append(_Token("NUMBER", value, line_no, col))
            i = m.end()
            continue
        if ch in "()[]=,":
            tokens.append(_Token("PUNCT", ch, line_no, col))
            i += 1
            continue
        raise CodeParseError(f"unexpected character {ch!r}", line_no, col)
    return tokens


class _LineParser:
    def __init__(self, tokens: list[_Token], line_no: int, line_len: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no
        self.eol_col = line_len + 1

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise CodeParseError("unexpected end of line", self.line_no, self.eol_col)
        self.pos += 1
        return tok

    def expect_punct(self, ch: str) -> _Token:
        tok = self.next()
        if tok.kind != "PUNCT" or tok.value != ch:
            raise CodeParseError(f"expected '{ch}'", tok.line, tok.col)
        return tok

    def expect_ident(self) -> _Token:
        tok = self.next()
        if tok.kind != "IDENT":
            raise CodeParseError("expected identifier", tok.line, tok.col)
        return tok


def parse_code(code: str, registry=None) -> WorkflowGraph:
    """Parse DSL text into a graph; node ids are "1", "2", ... in statement order.

    The registry is accepted for signature symmetry with to_code; slot
    resolution never needs it (bare references carry their bound slot).
    """
    env: dict[str, tuple[str, int]] = {}  # var -> (node_id, bound slot)
    nodes: dict[str, NodeInstance] = {}

    for line_no, line in enumerate(code.splitlines(), start=1):
        tokens = _lex_line(line, line_no)
        if not tokens:
            continue
        p = _LineParser(tokens, line_no, len(line))

        # Statement is either "targets = call" or a bare call. Disambiguate
        # by scanning for a top-level "=" before any "(".
        has_assign = False
        for tok in tokens:
            if tok.kind == "PUNCT" and tok.value == "(":
                break
            if tok.kind == "PUNCT" and tok.value == "=":
                has_assign = True
                break

        targets: list[_Token] = []
        if has_assign:
            targets.append(p.expect_ident())
            while True:
                tok = p.next()
                if tok.kind == "PUNCT" and tok.value == ",":
                    targets.append(p.expect_ident())
                elif tok.kind == "PUNCT" and tok.value == "=":
                    break
                else:
                    raise CodeParseError("expected ',' or '='", tok.line, tok.col)

        head = p.next()
        if head.kind not in ("IDENT", "STRING"):
            raise CodeParseError("expected class name", head.line, head.col)
        class_type = str(head.value)
        if not class_type:
            raise CodeParseError("empty class name", head.line, head.col)
        p.expect_punct("(")

        node_id = str(len(nodes) + 1)
        inputs: dict[str, object] = {}
        tok = p.peek()
        if tok is not None and tok.kind == "PUNCT" and tok.value == ")":
            p.next()
        else:
            while True:
                name_tok = p.expect_ident()
                name = str(name_tok.value)
                if name in inputs:
                    raise CodeParseError(
                        f"duplicate argument '{name}'", name_tok.line, name_tok.col
                    )
                p.expect_punct("=")
                inputs[name] = _parse_value(p, env)
                tok = p.next()
                if tok.kind == "PUNCT" and tok.value == ",":
                    continue
                if tok.kind == "PUNCT" and tok.value == ")":
                    break
                raise CodeParseError("expected ',' or ')'", tok.line, tok.col)
        trailing = p.peek()
        if trailing is not None:
            raise CodeParseError("unexpected trailing input", trailing.line, trailing.col)

        nodes[node_id] = NodeInstance(class_type=class_type, inputs=inputs)
        for slot, target in enumerate(targets):
            var = str(target.value)
            if var in _BOOL_WORDS:
                raise CodeParseError(
                    f"'{var}' cannot be a variable name", target.line, target.col
                )
            if var in env:
                raise CodeParseError(
                    f"duplicate variable name '{var}'", target.line, target.col
                )
            env[var] = (node_id, slot)

    return WorkflowGraph(nodes=nodes)


def _parse_value(p: _LineParser, env: dict[str, tuple[str, int]]):
    tok = p.next()
    if tok.kind == "STRING":
        return tok.value
    if tok.kind == "NUMBER":
        return tok.value
    if tok.kind == "IDENT":
        word = str(tok.value)
        if word in _BOOL_WORDS:
            return _BOOL_WORDS[word]
        nxt = p.peek()
        if nxt is not None and nxt.kind == "PUNCT" and nxt.value == "[":
            p.next()
            idx = p.next()
            if idx.kind != "NUMBER" or not isinstance(idx.value, int) or idx.value < 0:
                raise CodeParseError(
                    "slot index must be a non-negative integer", idx.line, idx.col
                )
            p.expect_punct("]")
            if word not in env:
                raise CodeParseError(f"undefined variable '{word}'", tok.line, tok.col)
            return Edge(upstream=env[word][0], slot=idx.value)
        if word not in env:
            raise CodeParseError(f"undefined variable '{word}'", tok.line, tok.col)
        node_id, bound_slot = env[word]
        return Edge(upstream=node_id, slot=bound_slot)
    raise CodeParseError("expected a value", tok.line, tok.col)


def _snake_case(name: str) -> str:
    s = re.sub(r"[^0-9A-Za-z]+", "_", name)
    s = re.sub(r"(.)([A-Z][a-z]+)", r"\1_\2", s)
    s = re.sub(r"([a-z0-9])([A-Z])", r"\1_\2", s)
    s = re.sub(r"_+", "_", s).strip("_").lower()
    if not s:
        return "node"
    if s[0].isdigit():
        return "n" + s
    return s


def _emit_literal(value) -> str:
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, (int, float)):
        return repr(value)
    out = ['"']
    for ch in str(value):
        if ch in _EMIT_ESCAPES:
            out.append(_EMIT_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def to_code(graph: WorkflowGraph, registry=None) -> str:
    """Emit one assignment per node in deterministic topological order.

    Variables are named ``<snake_case(class_type)>_<k>`` with k counting
    per name base in emission order. Upstream references are bare when
    the registry knows the class has a single output, indexed otherwise
    (always indexed without a registry).

    Raises GraphCycleError for cyclic graphs.
    """
    order = topo_order(graph)
    counters: dict[str, int] = {}
    var_of: dict[str, str] = {}
    for node_id in order:
        base = _snake_case(graph.nodes[node_id].class_type)
        counters[base] = counters.get(base, 0) + 1
        var_of[node_id] = f"{base}_{counters[base]}"

    def ref(edge: Edge) -> str:
        var = var_of[edge.upstream]
        if registry is not None and edge.slot == 0:
            spec = registry.get(graph.nodes[edge.upstream].class_type)
            if spec is not None and len(spec.outputs) == 1:
                return var
        return f"{var}[{edge.slot}]"

    lines = []
    for node_id in order:
        node = graph.nodes[node_id]
        args = []
        for name in sorted(node.inputs):
            value = node.inputs[name]
            rendered = ref(value) if isinstance(value, Edge) else _emit_literal(value)
            args.append(f"{name}={rendered}")
        if _IDENT_RE.fullmatch(node.class_type):
            head = node.class_type
        else:
            head = _emit_literal(node.class_type)
        lines.append(f"{var_of[node_id]} = {head}({', '.join(args)})")
    return "\n".join(lines) + ("\n" if lines else "")
