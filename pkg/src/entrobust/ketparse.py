"""Parse and render bra-ket state expressions.

Grammar (whitespace is ignored)::

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := coeff? ket | coeff '(' expr ')' | '(' expr ')' ('/' coeff)?
    coeff := atom (('*'|'/') atom)*
    atom  := number | number 'i' | 'i' | 'sqrt(' number ('/' number)? ')'
           | '(' number ('+'|'-') number 'i' ')'
    ket   := '|' [01]+ '>'

Examples: ``(|000>+|111>)/sqrt(2)``, ``1/sqrt(3)(|001>+|010>+|100>)``,
``0.5|00> - 0.5i|11>``.
"""
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, KetSyntaxError, NotNormalized, SizeOutOfRange, ZeroVector
from .states import MAX_QUBITS, StateVector

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ket>\|[01]+>)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<sqrt>sqrt)
  | (?P<imag>i)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos] == "|":
                raise KetSyntaxError("malformed ket, expected |[01]+>", pos)
            raise KetSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "op":
            kind = m.group()
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, offset=1):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self, kind=None):
        tok = self.tok
        if kind is not None and tok.kind != kind:
            want = {"end": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            raise KetSyntaxError(f"expected {want}, found {got}", tok.pos)
        self.i += 1
        return tok

    def parse(self):
        vec = self.expr()
        self.take("end")
        return vec

    def expr(self):
        sign = 1.0
        if self.tok.kind in ("+", "-"):
            sign = -1.0 if self.take().kind == "-" else 1.0
        start = self.tok.pos
        total = sign * self.term()
        while self.tok.kind in ("+", "-"):
            op = self.take()
            rhs = self.term()
            if rhs.size != total.size:
                raise DimensionMismatch(f"ket lengths differ at position {op.pos} (expression from {start})")
            total = total + rhs if op.kind == "+" else total - rhs
        return total

    def term(self):
        tok = self.tok
        if tok.kind == "ket":
            return self.ket()
        if tok.kind == "(" and not self._complex_literal_ahead():
            self.take("(")
            vec = self.expr()
            self.take(")")
            if self.tok.kind == "/":
                slash = self.take()
                vec = vec / self._nonzero(self.coeff(), slash.pos)
            return vec
        if tok.kind in ("number", "imag", "sqrt", "("):
            c = self.coeff()
            if self.tok.kind == "ket":
                return c * self.ket()
            if self.tok.kind == "(":
                self.take("(")
                vec = self.expr()
                self.take(")")
                return c * vec
            raise KetSyntaxError("expected a ket or '(' after coefficient", self.tok.pos)
        raise KetSyntaxError("expected a term", tok.pos)

    def _complex_literal_ahead(self):
        kinds = [self.peek(k).kind for k in range(1, 6)]
        return kinds[0] == "number" and kinds[1] in ("+", "-") and kinds[2] == "number" and kinds[3] == "imag" and kinds[4] == ")"

    def ket(self):
        tok = self.take("ket")
        bits = tok.text[1:-1]
        if len(bits) > MAX_QUBITS:
            raise SizeOutOfRange(f"ket at position {tok.pos} has {len(bits)} qubits (max {MAX_QUBITS})")
        vec = np.zeros(2 ** len(bits), dtype=np.complex128)
        vec[int(bits, 2)] = 1.0
        return vec

    def coeff(self):
        value = self.atom()
        while self.tok.kind in ("*", "/"):
            op = self.take()
            rhs = self.atom()
            value = value * rhs if op.kind == "*" else value / self._nonzero(rhs, op.pos)
        if not np.isfinite(value):
            raise KetSyntaxError("coefficient is not finite", self.tok.pos)
        return value

    def atom(self):
        tok = self.tok
        if tok.kind == "number":
            self.take()
            value = complex(float(tok.text))
            if self.tok.kind == "imag":
                self.take()
                value *= 1j
            return value
        if tok.kind == "imag":
            self.take()
            return 1j
        if tok.kind == "sqrt":
            self.take()
            self.take("(")
            num = float(self.take("number").text)
            if self.tok.kind == "/":
                slash = self.take()
                num /= self._nonzero(float(self.take("number").text), slash.pos)
            self.take(")")
            return complex(math.sqrt(num))
        if tok.kind == "(" and self._complex_literal_ahead():
            self.take("(")
            re_part = float(self.take("number").text)
            sign = -1.0 if self.take().kind == "-" else 1.0
            im_part = float(self.take("number").text)
            self.take("imag")
            self.take(")")
            return complex(re_part, sign * im_part)
        raise KetSyntaxError("expected a coefficient", tok.pos)

    @staticmethod
    def _nonzero(value, pos):
        if value == 0:
            raise KetSyntaxError("division by zero", pos)
        return value


def parse_ket(text, normalize=False):
    """Evaluate a ket expression into a :class:`StateVector`.

    With ``normalize`` false the expression must already have unit norm
    (within 1e-9); otherwise it is rescaled.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise KetSyntaxError("input is not valid UTF-8", exc.start) from None
    vec = _Parser(text).parse()
    with np.errstate(over="ignore", invalid="ignore"):
        norm = np.linalg.norm(vec)
    if not np.isfinite(norm):
        raise KetSyntaxError("amplitudes are not finite", 0)
    if norm < 1e-12:
        raise ZeroVector("expression evaluates to the zero vector")
    if normalize:
        vec = vec / norm
    elif abs(norm - 1) > 1e-9:
        raise NotNormalized(f"expression has norm {norm:.12g}; pass normalize=True to rescale")
    n = int(vec.size).bit_length() - 1
    return StateVector(n, vec / np.linalg.norm(vec))


def _decimals(tol):
    if tol <= 0:
        return 15
    return min(15, max(4, math.ceil(-math.log10(tol))))


def _fmt(x, decimals):
    s = f"{x:.{decimals}f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def render_ket(psi, tol=1e-9):
    """Human-readable sum of basis kets.

    Amplitudes with modulus at most ``tol`` are dropped. Coefficients are
    printed with ``max(4, ceil(-log10(tol)))`` decimals (capped at 15), so
    ``render_ket(ghz(2), 1e-4)`` gives ``"0.7071|00> + 0.7071|11>"``.
    Complex coefficients appear as ``(a+bi)`` or ``bi``. Real-amplitude
    output parses back to the same vector within ``tol``.
    """
    n = psi.n_qubits
    d = _decimals(tol)
    parts = []
    for idx, amp in enumerate(psi.amplitudes):
        if abs(amp) <= tol:
            continue
        ket = f"|{idx:0{n}b}>"
        re_part = 0.0 if abs(amp.real) <= tol else amp.real
        im_part = 0.0 if abs(amp.imag) <= tol else amp.imag
        if im_part == 0.0:
            sign, body = ("-" if re_part < 0 else "+"), _fmt(abs(re_part), d)
        elif re_part == 0.0:
            sign, body = ("-" if im_part < 0 else "+"), _fmt(abs(im_part), d) + "i"
        else:
            op = "-" if im_part < 0 else "+"
            sign, body = "+", f"({_fmt(re_part, d)}{op}{_fmt(abs(im_part), d)}i)"
        parts.append((sign, body + ket))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
