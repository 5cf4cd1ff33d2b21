"""Text format for models: parser and canonical printer.

Grammar (line oriented, '#' comments, UTF-8, LF or CRLF):

    algebra NAME dim N          (or: model NAME dim N)
    gen NAME : (p,q) [odd|even trunc K] [conj NAME | real]
    holo NAME1 ... NAMEk        shorthand: (1,0) generators with
                                auto-conjugates (p* -> q*, else *_bar)
    param NAME [= SCALAR]
    d NAME = EXPR               split by bidegree into del/dbar parts;
                                holo generators auto-conjugate
    del NAME = EXPR
    dbar NAME = EXPR

EXPR is a sum of terms COEFF * MON (either part optional), MON a
'*'-join of NAME['^'INT]; COEFF a Gaussian-rational literal or a
declared parameter name, with an optional leading sign per term.
"""

from __future__ import annotations

import re

from .model import Form, GeneratorSpec, ModelError, ModelSpec
from .scalars import GaussianRational, ONE, parse_scalar


class DslError(ValueError):
    """Parse or validation failure, with position info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = " (line %d%s)" % (
                line, ", column %d" % column if column is not None else "")
        super().__init__(message + where)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_GEN_LINE = re.compile(
    r"gen\s+(?P<name>\S+)\s*:\s*\(\s*(?P<p>\d+)\s*,\s*(?P<q>\d+)\s*\)"
    r"(?P<rest>.*)$")


def _conj_name(name):
    if name.startswith("p") and len(name) > 1:
        return "q" + name[1:]
    return name + "_bar"


class _Parser:
    def __init__(self, text):
        self.lines = text.replace("\r\n", "\n").split("\n")
        self.name = None
        self.n = None
        self.gens = []          # GeneratorSpec list
        self.holo = set()       # names declared via `holo`
        self.params = {}        # name -> scalar or None
        self.raw_del = {}       # name -> (lineno, expr text)
        self.raw_dbar = {}
        self.raw_d = {}

    def err(self, msg, lineno, col=None):
        raise DslError(msg, lineno, col)

    def run(self):
        for lineno, raw in enumerate(self.lines, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            self.statement(line, lineno)
        if self.name is None:
            raise DslError("missing 'algebra NAME dim N' header")
        return self.build()

    def statement(self, line, lineno):
        head = line.split(None, 1)[0]
        if head in ("algebra", "model"):
            m = re.match(r"(algebra|model)\s+(\S+)\s+dim\s+(\d+)$", line)
            if not m:
                self.err("malformed header", lineno)
            if self.name is not None:
                self.err("duplicate header", lineno)
            self.name, self.n = m.group(2), int(m.group(3))
        elif head == "gen":
            self.gen_line(line, lineno)
        elif head == "holo":
            names = line.split()[1:]
            if not names:
                self.err("holo needs at least one name", lineno)
            for nm in names:
                self.check_name(nm, lineno)
                self.gens.append(GeneratorSpec(nm, (1, 0), 2, _conj_name(nm)))
                self.holo.add(nm)
            for nm in names:
                self.gens.append(
                    GeneratorSpec(_conj_name(nm), (0, 1), 2, nm))
        elif head == "param":
            m = re.match(r"param\s+(\S+)\s*(?:=\s*(.*\S))?$", line)
            if not m:
                self.err("malformed param", lineno)
            self.check_name(m.group(1), lineno)
            value = None
            if m.group(2) is not None:
                try:
                    value = parse_scalar(m.group(2))
                except ValueError as e:
                    self.err(str(e), lineno)
            self.params[m.group(1)] = value
        elif head in ("d", "del", "dbar"):
            m = re.match(r"(d|del|dbar)\s+(\S+)\s*=\s*(.*)$", line)
            if not m:
                self.err("malformed differential line", lineno)
            store = {"d": self.raw_d, "del": self.raw_del,
                     "dbar": self.raw_dbar}[m.group(1)]
            if m.group(2) in store:
                self.err("duplicate %s for %s" % (m.group(1), m.group(2)),
                         lineno)
            store[m.group(2)] = (lineno, m.group(3))
        else:
            self.err("unknown statement %r" % head, lineno)

    def check_name(self, nm, lineno):
        if not _NAME.match(nm):
            self.err("bad name %r" % nm, lineno)
        if any(g.name == nm for g in self.gens):
            self.err("duplicate generator %r" % nm, lineno)

    def gen_line(self, line, lineno):
        m = _GEN_LINE.match(line)
        if not m:
            self.err("malformed gen line", lineno)
        name = m.group("name")
        self.check_name(name, lineno)
        p, q = int(m.group("p")), int(m.group("q"))
        rest = m.group("rest").split()
        trunc = 2 if (p + q) % 2 else None
        conj = None
        i = 0
        while i < len(rest):
            tok = rest[i]
            if tok in ("odd", "even"):
                want_odd = tok == "odd"
                if want_odd != bool((p + q) % 2):
                    self.err("parity %r contradicts bidegree" % tok, lineno)
                if i + 2 <= len(rest) and rest[i + 1] == "trunc":
                    if i + 2 >= len(rest) or not rest[i + 2].isdigit():
                        self.err("trunc needs an integer", lineno)
                    trunc = int(rest[i + 2])
                    i += 3
                else:
                    i += 1
            elif tok == "trunc":
                if i + 1 >= len(rest) or not rest[i + 1].isdigit():
                    self.err("trunc needs an integer", lineno)
                trunc = int(rest[i + 1])
                i += 2
            elif tok == "conj":
                if i + 1 >= len(rest):
                    self.err("conj needs a name", lineno)
                conj = rest[i + 1]
                i += 2
            elif tok == "real":
                conj = name
                i += 1
            else:
                self.err("unexpected token %r in gen line" % tok, lineno)
        if trunc is None:
            self.err("even generator %s needs a truncation" % name, lineno)
        if conj is None:
            if p == q:
                conj = name
            else:
                self.err("generator %s needs a conj clause" % name, lineno)
        self.gens.append(GeneratorSpec(name, (p, q), trunc, conj))

    # -- expressions ---------------------------------------------------

    def parse_expr(self, spec, text, lineno):
        total = spec.zero()
        pos = 0
        n = len(text)
        first = True
        while pos < n:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            sign = 1
            if text[pos] in "+-":
                if text[pos] == "-":
                    sign = -1
                pos += 1
            elif not first:
                self.err("expected '+' or '-'", lineno, pos + 1)
            first = False
            term_end = pos
            depth = 0
            while term_end < n:
                c = text[term_end]
                if c in "+-" and depth == 0 and term_end > pos:
                    back = term_end - 1
                    while back >= pos and text[back].isspace():
                        back -= 1
                    if back >= pos and text[back] not in "*^/(":
                        break
                if c == "(":
                    depth += 1
                if c == ")":
                    depth -= 1
                term_end += 1
            term = text[pos:term_end].strip()
            if not term:
                self.err("empty term", lineno, pos + 1)
            total = total + self.parse_term(spec, term, lineno) * sign
            pos = term_end
        return total

    def parse_term(self, spec, term, lineno):
        factors = [f.strip() for f in term.split("*")]
        value = spec.one()
        for f in factors:
            if not f:
                self.err("empty factor in %r" % term, lineno)
            base, _, exp = f.partition("^")
            base = base.strip()
            if base in spec.index:
                e = 1
                if exp:
                    if not exp.strip().isdigit():
                        self.err("bad exponent %r" % exp, lineno)
                    e = int(exp)
                g = spec.gen(base)
                for _ in range(e):
                    value = value.wedge(g)
            elif exp:
                self.err("exponent on non-generator %r" % base, lineno)
            elif base in self.params:
                if self.params[base] is None:
                    self.err("parameter %s has no value" % base, lineno)
                value = value * self.params[base]
            else:
                try:
                    value = value * parse_scalar(base)
                except ValueError:
                    self.err("unknown generator or bad literal %r" % base,
                             lineno)
        return value

    # -- assembly ------------------------------------------------------

    def build(self):
        try:
            skeleton = ModelSpec(self.name, self.n, self.gens)
        except ModelError as e:
            raise DslError(str(e))
        del_a = {}
        dbar_a = {}

        def put(store, name, form, lineno):
            if name in store:
                self.err("conflicting assignment for %s" % name, lineno)
            store[name] = form

        for name, (lineno, text) in self.raw_del.items():
            self.check_target(skeleton, name, lineno)
            put(del_a, name, self.parse_expr(skeleton, text, lineno), lineno)
        for name, (lineno, text) in self.raw_dbar.items():
            self.check_target(skeleton, name, lineno)
            put(dbar_a, name, self.parse_expr(skeleton, text, lineno), lineno)
        for name, (lineno, text) in self.raw_d.items():
            self.check_target(skeleton, name, lineno)
            form = self.parse_expr(skeleton, text, lineno)
            g = skeleton.generator(name)
            p, q = g.bidegree
            dpart = form.component_of_bidegree(p + 1, q)
            bpart = form.component_of_bidegree(p, q + 1)
            if not (dpart + bpart).equals(form):
                self.err("d %s has components outside (%d,%d)+(%d,%d)"
                         % (name, p + 1, q, p, q + 1), lineno)
            put(del_a, name, dpart, lineno)
            put(dbar_a, name, bpart, lineno)
            if name in self.holo:
                cname = g.conjugate
                put(dbar_a, cname, dpart.conjugate(), lineno)
                put(del_a, cname, bpart.conjugate(), lineno)
        try:
            return ModelSpec(
                self.name, self.n, self.gens,
                {k: v.components for k, v in del_a.items()},
                {k: v.components for k, v in dbar_a.items()},
                {k: v for k, v in self.params.items() if v is not None})
        except ModelError as e:
            raise DslError(str(e))

    def check_target(self, skeleton, name, lineno):
        if name not in skeleton.index:
            self.err("unknown generator %r" % name, lineno)


def parse(text):
    """Parse DSL source into a validated ModelSpec."""
    return _Parser(text).run()


def parse_expression(spec, text):
    """Parse one EXPR against an existing model (used by the CLI)."""
    parser = _Parser("")
    parser.params = {k: GaussianRational.of(v)
                     for k, v in spec.parameters.items()
                     if isinstance(v, (int, GaussianRational))}
    return parser.parse_expr(spec, text, 1)


def parse_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


# -- printer -----------------------------------------------------------

def _print_scalar_term(coeff, mono_text):
    """One grammar-safe '<sign> COEFF * MON' piece list for a coefficient
    (mixed complex coefficients are split into two terms)."""
    parts = []
    for c in ((GaussianRational(coeff.re), GaussianRational(0, coeff.im))
              if (coeff.re and coeff.im) else (coeff,)):
        if not c:
            continue
        neg = (c.re < 0) or (not c.re and c.im < 0)
        mag = -c if neg else c
        body = str(mag) if mono_text is None else "%s * %s" % (mag, mono_text)
        parts.append(("-" if neg else "+", body))
    return parts


def _print_form(spec, form):
    if form.is_zero():
        return "0"
    pieces = []
    for mono in sorted(form.components):
        factors = []
        for e, g in zip(mono, spec.generators):
            if e == 1:
                factors.append(g.name)
            elif e > 1:
                factors.append("%s^%d" % (g.name, e))
        mono_text = "*".join(factors) if factors else None
        pieces.extend(_print_scalar_term(form.components[mono], mono_text))
    out = []
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append("%s %s" % (sign, body))
    return " ".join(out)


def print_model(spec):
    """Canonical DSL source; parse(print_model(s)) reproduces s."""
    lines = ["algebra %s dim %d" % (spec.name, spec.n)]
    for g in spec.generators:
        parity = "odd" if g.odd else "even"
        conj = "real" if g.conjugate == g.name else "conj %s" % g.conjugate
        lines.append("gen %s : (%d,%d) %s trunc %d %s"
                     % (g.name, g.bidegree[0], g.bidegree[1], parity,
                        g.truncation, conj))
    for name in sorted(spec.parameters):
        value = spec.parameters[name]
        try:
            value = GaussianRational.of(value)
        except (TypeError, ValueError):
            continue
        lines.append("param %s = %s" % (name, value))
    for which, table in (("del", spec.del_assignments),
                         ("dbar", spec.dbar_assignments)):
        for g in spec.generators:
            if g.name in table:
                lines.append("%s %s = %s"
                             % (which, g.name,
                                _print_form(spec, table[g.name])))
    return "\n".join(lines) + "\n"


def models_equal(a, b):
    """Structural equality of two ModelSpecs."""
    if (a.name, a.n) != (b.name, b.n):
        return False
    if [(g.name, g.bidegree, g.truncation, g.conjugate)
            for g in a.generators] != \
       [(g.name, g.bidegree, g.truncation, g.conjugate)
            for g in b.generators]:
        return False
    for table_a, table_b in ((a.del_assignments, b.del_assignments),
                             (a.dbar_assignments, b.dbar_assignments)):
        if set(table_a) != set(table_b):
            return False
        for k in table_a:
            if table_a[k].components != table_b[k].components:
                return False
    return True
