"""Parser for the closure-lab script language.

Grammar (statements end with ';', '#' starts a comment):

  stmt    := ringdef | iddef | moddef | cldef | check | modify | export
  ringdef := "ring" NAME "=" "poly" "(" field "," varlist "," order ")"
                 ["/" "(" polylist ")"] ";"
           | "ring" NAME "=" "subring" "(" field "," varlist ","
                 "[" polylist "]" ["," varlist] ")" ";"
  field   := "Q" | "Fp" "(" INT ")"
  order   := "lex" | "degrevlex" | "wdegrevlex" "[" intlist "]"
  iddef   := "ideal" NAME "=" "ideal" "(" NAME "," polylist ")" ";"
  moddef  := "module" NAME "=" modform ";"
  modform := "ideal_module" "(" NAME "," polylist ")"
           | "subring_module" "(" NAME "," "[" polylist "]" ")"
           | "free" "(" NAME "," "[" intlist "]" ")"
           | "syzygy_of_k" "(" NAME "," INT ")"
  cldef   := "closure" NAME "=" ("trivial" | "integral_closure"
           | "module_closure" "(" NAME ")"
           | "intersect" "(" NAME {"," NAME} ")") ";"
  check   := "check" FN "(" args ")" ";"
  modify  := "modify" NAME "=" "parameter_chain" "(" NAME "," clarg ","
                 "[" polylist "]" "," INT ["," INT] ")" ";"
  export  := "export" ("json" | "session") STRING ";"

Check functions: member, equal, functorial, semi_residual, faithful,
colon_capturing, gcc, phantom, dietz_obstruction, regular_sequence,
trivial_on.  Set expressions inside checks: a bound name, closure(cl, set),
product(ideal, module), mult(ideal, ideal), or ideal(ring, polys...).

Printing an AST yields canonical source; parsing that source returns an
equal AST.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import ParseError, _tokenize_poly


CHECK_FNS = ("member", "equal", "functorial", "semi_residual", "faithful",
             "colon_capturing", "gcc", "phantom", "dietz_obstruction",
             "regular_sequence", "trivial_on")

SET_HEADS = ("closure", "product", "mult", "ideal")

CLOSURE_KEYWORDS = ("trivial", "integral_closure")


class ScriptError(ValueError):
    """Lexical or syntax error with position and expectation info."""

    def __init__(self, message, text, pos, expected=()):
        self.pos = pos
        before = text[:pos]
        self.line = before.count("\n") + 1
        self.col = pos - (before.rfind("\n") + 1) + 1
        self.expected = tuple(expected)
        self.bare_message = message
        lines = text.splitlines() or [""]
        src_line = lines[self.line - 1] if self.line - 1 < len(lines) else ""
        caret = " " * (self.col - 1) + "^"
        detail = f"line {self.line}, column {self.col}: {message}"
        if expected:
            detail += " (expected " + " | ".join(expected) + ")"
        super().__init__(f"{detail}\n  {src_line}\n  {caret}")


# --- tokens -------------------------------------------------------------------


@dataclass
class Token:
    kind: str   # name int string punct end
    value: object
    pos: int
    end: int


_PUNCT = "()[]{},;=/^*+-"


def tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("int", int(text[i:j]), i, j))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("name", text[i:j], i, j))
            i = j
        elif ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 1
            if j >= n:
                raise ScriptError("unterminated string", text, i)
            toks.append(Token("string", text[i + 1:j], i, j + 1))
            i = j + 1
        elif ch in _PUNCT:
            toks.append(Token("punct", ch, i, i + 1))
            i += 1
        else:
            raise ScriptError(f"unexpected character {ch!r}", text, i)
    toks.append(Token("end", None, n, n))
    return toks


# --- argument trees ------------------------------------------------------------


@dataclass(frozen=True)
class Name:
    value: str

    def show(self):
        return self.value


@dataclass(frozen=True)
class IntArg:
    value: int

    def show(self):
        return str(self.value)


@dataclass(frozen=True)
class StrArg:
    value: str

    def show(self):
        return f'"{self.value}"'


@dataclass(frozen=True)
class Expr:
    text: str

    def show(self):
        return self.text


@dataclass(frozen=True)
class ListArg:
    items: tuple

    def show(self):
        return "[" + ", ".join(x.show() for x in self.items) + "]"


@dataclass(frozen=True)
class Call:
    head: str
    args: tuple

    def show(self):
        return self.head + "(" + ", ".join(x.show() for x in self.args) + ")"


# --- statements -----------------------------------------------------------------


@dataclass(frozen=True)
class RingDef:
    name: str
    form: str                  # "poly" | "subring"
    field_spec: tuple          # ("Q",) or ("Fp", p)
    vars: tuple
    order_spec: tuple = ()     # ("lex",) | ("degrevlex",) | ("wdegrevlex", ints)
    relations: tuple = ()      # polynomial texts
    images: tuple = ()         # polynomial texts (subring)
    pres_names: tuple = ()     # presentation names (subring, may be empty)
    kind: str = "ring"

    def show(self):
        fs = "Q" if self.field_spec[0] == "Q" else f"Fp({self.field_spec[1]})"
        if self.form == "poly":
            od = self.order_spec
            os_ = od[0] if od[0] != "wdegrevlex" else \
                "wdegrevlex[" + ",".join(map(str, od[1])) + "]"
            base = (f"ring {self.name} = poly({fs}, "
                    f"[{', '.join(self.vars)}], {os_})")
            if self.relations:
                base += " / (" + ", ".join(self.relations) + ")"
            return base + ";"
        srcs = "[" + ", ".join(self.images) + "]"
        extra = f", [{', '.join(self.pres_names)}]" if self.pres_names else ""
        return (f"ring {self.name} = subring({fs}, "
                f"[{', '.join(self.vars)}], {srcs}{extra});")


@dataclass(frozen=True)
class IdealDef:
    name: str
    ring: str
    polys: tuple
    kind: str = "ideal"

    def show(self):
        return (f"ideal {self.name} = ideal({self.ring}, "
                f"{', '.join(self.polys)});")


@dataclass(frozen=True)
class ModuleDef:
    name: str
    form: str
    args: tuple
    kind: str = "module"

    def show(self):
        return f"module {self.name} = {Call(self.form, self.args).show()};"


@dataclass(frozen=True)
class ClosureDef:
    name: str
    form: str               # trivial | integral_closure | module_closure | intersect
    args: tuple = ()
    kind: str = "closure"

    def show(self):
        if self.form in CLOSURE_KEYWORDS:
            return f"closure {self.name} = {self.form};"
        return f"closure {self.name} = {Call(self.form, self.args).show()};"


@dataclass(frozen=True)
class CheckStmt:
    fn: str
    args: tuple
    kind: str = "check"

    def show(self):
        return f"check {Call(self.fn, self.args).show()};"


@dataclass(frozen=True)
class ModifyStmt:
    name: str
    form: str
    args: tuple
    kind: str = "modify"

    def show(self):
        return f"modify {self.name} = {Call(self.form, self.args).show()};"


@dataclass(frozen=True)
class ExportStmt:
    what: str     # json | session
    path: str
    kind: str = "export"

    def show(self):
        return f'export {self.what} "{self.path}";'


def print_statements(stmts) -> str:
    return "\n".join(s.show() for s in stmts)


def _check_poly_syntax(text: str, offset: int, script: str, end_pos=None):
    """Syntax-only validation of a polynomial expression argument.

    Names are not resolved here; this catches dangling operators and
    unbalanced parentheses at parse time, with script coordinates.
    """
    try:
        toks = _tokenize_poly(text)
    except ParseError as exc:
        raise ScriptError(exc.bare_message, script, offset + exc.pos) from exc

    pos = [0]

    def peek():
        return toks[pos[0]]

    def take():
        t = toks[pos[0]]
        pos[0] += 1
        return t

    def fail(t):
        if t.kind == "end":
            where = end_pos if end_pos is not None else offset + t.pos
            raise ScriptError("invalid polynomial: unexpected end of "
                              "expression", script, where)
        raise ScriptError(f"invalid polynomial: unexpected {t.value!r}",
                          script, offset + t.pos)

    def factor():
        t = take()
        if t.kind == "int":
            if peek().kind == "/":
                take()
                if peek().kind != "int":
                    fail(peek())
                take()
        elif t.kind == "name":
            pass
        elif t.kind == "(":
            expr()
            if peek().kind != ")":
                fail(peek())
            take()
        elif t.kind == "-":
            factor()
            return
        else:
            fail(t)
        if peek().kind == "^":
            take()
            if peek().kind != "int":
                fail(peek())
            take()

    def term():
        factor()
        while peek().kind in ("*", "name", "int", "("):
            if peek().kind == "*":
                take()
            factor()

    def expr():
        if peek().kind == "-":
            take()
        term()
        while peek().kind in ("+", "-"):
            take()
            term()

    expr()
    if peek().kind != "end":
        fail(peek())


# --- parser ---------------------------------------------------------------------


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def err(self, message, expected=()):
        return ScriptError(message, self.text, self.peek().pos, expected)

    def expect_punct(self, ch):
        t = self.take()
        if t.kind != "punct" or t.value != ch:
            raise ScriptError(f"found {t.value!r}", self.text, t.pos,
                              expected=(repr(ch),))
        return t

    def expect_name(self, *allowed):
        t = self.take()
        if t.kind != "name" or (allowed and t.value not in allowed):
            raise ScriptError(f"found {t.value!r}", self.text, t.pos,
                              expected=allowed or ("identifier",))
        return t.value

    def expect_int(self):
        t = self.take()
        if t.kind != "int":
            raise ScriptError(f"found {t.value!r}", self.text, t.pos,
                              expected=("integer",))
        return t.value

    def at_punct(self, ch):
        t = self.peek()
        return t.kind == "punct" and t.value == ch

    # -- argument scanning ------------------------------------------------------

    def scan_arg(self):
        """One argument: name, int, string, list, known call, or raw expr."""
        t = self.peek()
        if t.kind == "string":
            self.take()
            return StrArg(t.value)
        if t.kind == "punct" and t.value == "[":
            return self.scan_list()
        if t.kind == "name" and t.value in SET_HEADS and \
                self.toks[self.i + 1].kind == "punct" and \
                self.toks[self.i + 1].value == "(":
            head = self.take().value
            self.expect_punct("(")
            args = self.scan_args_until(")")
            self.expect_punct(")")
            return Call(head, tuple(args))
        # otherwise: a balanced token run up to a top-level ',' or ')' or ']'
        start = t.pos
        depth = 0
        last_end = t.pos
        count = 0
        while True:
            t = self.peek()
            if t.kind == "end":
                break
            if t.kind == "punct":
                if t.value in "([":
                    depth += 1
                elif t.value in ")]":
                    if depth == 0:
                        break
                    depth -= 1
                elif t.value in ",;" and depth == 0:
                    break
            last_end = t.end
            self.take()
            count += 1
        if count == 0:
            raise self.err("empty argument")
        text = self.text[start:last_end].strip()
        toks = tokenize(text)
        if len(toks) == 2 and toks[0].kind == "int":
            return IntArg(toks[0].value)
        if len(toks) == 2 and toks[0].kind == "name":
            return Name(text)
        _check_poly_syntax(text, start, self.text,
                           end_pos=self.peek().pos)
        return Expr(text)

    def scan_list(self):
        self.expect_punct("[")
        items = self.scan_args_until("]")
        self.expect_punct("]")
        return ListArg(tuple(items))

    def scan_args_until(self, closer):
        args = []
        if self.at_punct(closer):
            return args
        while True:
            args.append(self.scan_arg())
            if self.at_punct(","):
                self.take()
                continue
            break
        return args

    # -- statement forms -----------------------------------------------------------

    def parse_script(self):
        stmts = []
        while self.peek().kind != "end":
            stmts.append(self.parse_statement())
        return stmts

    def parse_statement(self):
        kw = self.expect_name("ring", "ideal", "module", "closure", "check",
                              "modify", "export")
        if kw == "ring":
            return self.parse_ringdef()
        if kw == "ideal":
            return self.parse_idealdef()
        if kw == "module":
            return self.parse_moduledef()
        if kw == "closure":
            return self.parse_closuredef()
        if kw == "check":
            return self.parse_check()
        if kw == "modify":
            return self.parse_modify()
        return self.parse_export()

    def parse_field(self):
        name = self.expect_name("Q", "Fp")
        if name == "Q":
            return ("Q",)
        self.expect_punct("(")
        p = self.expect_int()
        self.expect_punct(")")
        return ("Fp", p)

    def parse_varlist(self):
        self.expect_punct("[")
        names = [self.expect_name()]
        while self.at_punct(","):
            self.take()
            names.append(self.expect_name())
        self.expect_punct("]")
        return tuple(names)

    def parse_order(self):
        name = self.expect_name("lex", "degrevlex", "wdegrevlex")
        if name != "wdegrevlex":
            return (name,)
        self.expect_punct("[")
        ints = [self.expect_int()]
        while self.at_punct(","):
            self.take()
            ints.append(self.expect_int())
        self.expect_punct("]")
        return ("wdegrevlex", tuple(ints))

    def parse_poly_texts_until(self, closer):
        texts = []
        while True:
            arg = self.scan_arg()
            texts.append(arg.show() if not isinstance(arg, Expr) else arg.text)
            if self.at_punct(","):
                self.take()
                continue
            break
        return tuple(texts)

    def parse_ringdef(self):
        name = self.expect_name()
        self.expect_punct("=")
        form = self.expect_name("poly", "subring")
        self.expect_punct("(")
        fs = self.parse_field()
        self.expect_punct(",")
        vars_ = self.parse_varlist()
        self.expect_punct(",")
        if form == "poly":
            order = self.parse_order()
            self.expect_punct(")")
            rels = ()
            if self.at_punct("/"):
                self.take()
                self.expect_punct("(")
                rels = self.parse_poly_texts_until(")")
                self.expect_punct(")")
            self.expect_punct(";")
            return RingDef(name, "poly", fs, vars_, order, relations=rels)
        self.expect_punct("[")
        images = self.parse_poly_texts_until("]")
        self.expect_punct("]")
        pres = ()
        if self.at_punct(","):
            self.take()
            pres = self.parse_varlist()
        self.expect_punct(")")
        self.expect_punct(";")
        return RingDef(name, "subring", fs, vars_, ("wdegrevlex", ()),
                       images=images, pres_names=pres)

    def parse_idealdef(self):
        name = self.expect_name()
        self.expect_punct("=")
        self.expect_name("ideal")
        self.expect_punct("(")
        ring = self.expect_name()
        self.expect_punct(",")
        polys = self.parse_poly_texts_until(")")
        self.expect_punct(")")
        self.expect_punct(";")
        return IdealDef(name, ring, polys)

    def parse_moduledef(self):
        name = self.expect_name()
        self.expect_punct("=")
        form = self.expect_name("ideal_module", "subring_module", "free",
                                "syzygy_of_k")
        self.expect_punct("(")
        args = tuple(self.scan_args_until(")"))
        self.expect_punct(")")
        self.expect_punct(";")
        return ModuleDef(name, form, args)

    def parse_closuredef(self):
        name = self.expect_name()
        self.expect_punct("=")
        form = self.expect_name("trivial", "integral_closure",
                                "module_closure", "intersect")
        args = ()
        if form in ("module_closure", "intersect"):
            self.expect_punct("(")
            args = tuple(self.scan_args_until(")"))
            self.expect_punct(")")
        self.expect_punct(";")
        return ClosureDef(name, form, args)

    def parse_check(self):
        fn = self.expect_name(*CHECK_FNS)
        self.expect_punct("(")
        args = tuple(self.scan_args_until(")"))
        self.expect_punct(")")
        self.expect_punct(";")
        return CheckStmt(fn, args)

    def parse_modify(self):
        name = self.expect_name()
        self.expect_punct("=")
        form = self.expect_name("parameter_chain")
        self.expect_punct("(")
        args = tuple(self.scan_args_until(")"))
        self.expect_punct(")")
        self.expect_punct(";")
        return ModifyStmt(name, form, args)

    def parse_export(self):
        what = self.expect_name("json", "session")
        t = self.take()
        if t.kind != "string":
            raise ScriptError(f"found {t.value!r}", self.text, t.pos,
                              expected=("string path",))
        self.expect_punct(";")
        return ExportStmt(what, t.value)


def parse_script(text: str):
    return Parser(text).parse_script()
