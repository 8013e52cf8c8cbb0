"""Complex polynomials: representation, evaluation, differentiation, parsing.

Coefficients are stored ascending (index j holds the coefficient of z^j),
which keeps Horner evaluation and differentiation index arithmetic uniform.
Evaluation is polymorphic: it accepts a Python complex or a numpy array of
complex values and returns the matching type, so the boundary-sampling code
can run vectorized without a second evaluation path.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

# Trailing coefficients with modulus below this are trimmed after parsing /
# construction so explicit zero terms do not inflate the degree.
DEGREE_TRIM_TOL = 1e-300

TWO_PI = 2.0 * math.pi


class ParseError(ValueError):
    """Syntax error in polynomial or complex-literal text, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _check_finite(c: complex, what: str) -> complex:
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"{what} must be finite, got {c!r}")
    return c


class Polynomial:
    """A polynomial with complex coefficients in ascending order.

    The zero polynomial is represented by coeffs == (0j,) and degree == -1
    (``is_zero`` is True).  All other polynomials have a leading coefficient
    of nonzero modulus.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [complex(c) for c in coeffs]
        if not cs:
            raise ValueError("coefficient list must be nonempty")
        for c in cs:
            _check_finite(c, "coefficient")
        while len(cs) > 1 and abs(cs[-1]) < DEGREE_TRIM_TOL:
            cs.pop()
        if len(cs) == 1 and abs(cs[0]) < DEGREE_TRIM_TOL:
            cs = [0j]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0j

    @property
    def coefficient_scale(self) -> float:
        """Max coefficient modulus; the scale factor in zero tolerances."""
        return max(abs(c) for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        return render_polynomial(self)

    def __call__(self, z):
        return eval_poly(self, z)


def eval_poly(p: Polynomial, z):
    """Evaluate p at z by Horner's scheme.

    z may be a complex scalar or a numpy array of complex values; the result
    has the same shape.  Inputs are assumed finite (enforced where values
    enter the system: constructors and parsers).
    """
    cs = p.coeffs
    if isinstance(z, np.ndarray):
        acc = np.full_like(z, cs[-1], dtype=complex)
        for c in reversed(cs[:-1]):
            acc = acc * z + c
        return acc
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc * z + c
    return acc


def derivative(p: Polynomial) -> Polynomial:
    """Coefficient-wise derivative; a constant maps to the zero polynomial."""
    if len(p.coeffs) == 1:
        return Polynomial([0j])
    return Polynomial([j * c for j, c in enumerate(p.coeffs)][1:])


def eval_derivatives(p: Polynomial, z, m: int) -> list:
    """Evaluate [p(z), p'(z), ..., p^(m)(z)] with 0 <= m <= degree."""
    if m < 0 or m > max(p.degree, 0):
        raise ValueError(f"derivative order m={m} out of range for degree {p.degree}")
    out = []
    q = p
    for _ in range(m + 1):
        out.append(eval_poly(q, z))
        q = derivative(q)
    return out


def boundary_modulus(p: Polynomial, t) -> float:
    """q(t) = |p(e^{it})|, 2*pi-periodic via reduction of t into [0, 2*pi)."""
    if isinstance(t, np.ndarray):
        tr = np.mod(t, TWO_PI)
        z = np.exp(1j * tr)
        return np.abs(eval_poly(p, z))
    tr = math.fmod(t, TWO_PI)
    if tr < 0.0:
        tr += TWO_PI
    return abs(eval_poly(p, cmath.exp(1j * tr)))


# ---------------------------------------------------------------------------
# Text parsing.
#
# Expression grammar (ASCII only, whitespace insignificant between tokens):
#
#   expression := ['+'|'-'] term (('+'|'-') term)*
#   term       := coeff [['*'] zpart] | zpart
#   zpart      := 'z' ['^' digits]
#   coeff      := '(' literal ')' | atom
#   literal    := ['+'|'-'] atom (('+'|'-') atom)*
#   atom       := decimal ['i'] | 'i'
#   decimal    := digits ['.' digits] [('e'|'E') ['+'|'-'] digits] | '.' digits ...
#
# Coefficient format: whitespace/comma-separated ascending list of literals.
# ---------------------------------------------------------------------------

_DIGITS = "0123456789"
_END = "\0"  # peek() sentinel; never a member of any token-character set


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else _END

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def describe(self) -> str:
        ch = self.peek()
        return "end of input" if ch == _END else f"character {ch!r}"

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def read_decimal(self) -> float:
        start = self.pos
        while self.peek() in _DIGITS:
            self.pos += 1
        if self.peek() == ".":
            self.pos += 1
            while self.peek() in _DIGITS:
                self.pos += 1
        if self.pos == start or self.text[start:self.pos] == ".":
            raise self.error("expected a number", start)
        if self.peek() in "eE":
            mark = self.pos
            self.pos += 1
            if self.peek() in "+-":
                self.pos += 1
            if self.peek() in _DIGITS:
                while self.peek() in _DIGITS:
                    self.pos += 1
            else:
                self.pos = mark  # bare 'e' is not an exponent
        return float(self.text[start:self.pos])

    def read_atom(self) -> complex:
        """decimal ['i'] | 'i' -- one signless real or imaginary part."""
        if self.peek() == "i":
            self.pos += 1
            return 1j
        value = self.read_decimal()
        if self.peek() == "i":
            self.pos += 1
            return complex(0.0, value)
        return complex(value, 0.0)

    def read_literal(self) -> complex:
        """Signed sum of atoms, e.g. '2', '3i', '2+3i', '-1.5e-3+0.25i'."""
        self.skip_ws()
        total = 0j
        first = True
        while True:
            self.skip_ws()
            sign = 1.0
            if self.peek() in "+-":
                if self.take() == "-":
                    sign = -1.0
                self.skip_ws()
            elif not first:
                break
            total += sign * self.read_atom()
            first = False
            self.skip_ws()
            if self.peek() not in "+-":
                break
        if first:
            raise self.error("expected a complex literal")
        return total


def parse_complex(text: str) -> complex:
    """Parse one complex literal ('1+i', '0.9i', '-2', '1.2+0.1i')."""
    if not text.strip():
        raise ParseError("empty input", 0)
    for idx, ch in enumerate(text):
        if ord(ch) > 127:
            raise ParseError(f"non-ASCII character {ch!r}", idx)
    sc = _Scanner(text)
    value = sc.read_literal()
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.describe()}")
    return _check_finite(value, "literal")


def _parse_expression(text: str) -> Polynomial:
    sc = _Scanner(text)
    terms: dict[int, complex] = {}
    first = True
    while not sc.at_end():
        sc.skip_ws()
        sign = 1.0
        if sc.peek() in "+-":
            if sc.take() == "-":
                sign = -1.0
        elif not first:
            raise sc.error("expected '+' or '-' between terms")
        first = False
        sc.skip_ws()

        coeff = complex(sign, 0.0)
        have_coeff = False
        if sc.peek() == "(":
            sc.take()
            coeff = sign * sc.read_literal()
            sc.skip_ws()
            if sc.peek() != ")":
                raise sc.error("expected ')'")
            sc.take()
            have_coeff = True
        elif sc.peek() in _DIGITS or sc.peek() == "." or sc.peek() == "i":
            coeff = sign * sc.read_atom()
            have_coeff = True
        sc.skip_ws()
        if sc.peek() == "*":
            sc.take()
            sc.skip_ws()

        power = 0
        if sc.peek() == "z":
            sc.take()
            power = 1
            if sc.peek() == "^":
                sc.take()
                sc.skip_ws()
                if sc.peek() == "-":
                    raise sc.error("negative exponent")
                start = sc.pos
                while sc.peek() in _DIGITS:
                    sc.pos += 1
                if sc.pos == start:
                    raise sc.error("expected a nonnegative integer exponent")
                power = int(sc.text[start:sc.pos])
        elif not have_coeff:
            raise sc.error(f"unexpected {sc.describe()}")

        terms[power] = terms.get(power, 0j) + coeff

    if first:
        raise ParseError("empty input", 0)
    top = max(terms)
    return Polynomial([terms.get(k, 0j) for k in range(top + 1)])


def _parse_coefficients(text: str) -> Polynomial:
    tokens = [tok for tok in text.replace(",", " ").split() if tok]
    if not tokens:
        raise ParseError("empty input", 0)
    return Polynomial([parse_complex(tok) for tok in tokens])


def parse_polynomial(text: str, format: str = "expression") -> Polynomial:
    """Parse polynomial text in 'expression' or 'coefficients' format."""
    if not text.strip():
        raise ParseError("empty input", 0)
    for idx, ch in enumerate(text):
        if ord(ch) > 127:
            raise ParseError(f"non-ASCII character {ch!r}", idx)
    if format == "expression":
        return _parse_expression(text)
    if format == "coefficients":
        return _parse_coefficients(text)
    raise ValueError(f"unknown polynomial format {format!r}")


# ---------------------------------------------------------------------------
# Canonical rendering.  parse_polynomial(render_polynomial(p)) round-trips
# the coefficients exactly: floats are emitted with repr, which is shortest
# exact in Python 3.
# ---------------------------------------------------------------------------

def _fmt_float(x: float) -> str:
    return repr(float(x))


def _fmt_coeff(c: complex) -> tuple[str, bool]:
    """Render a coefficient; second element tells whether it needs parens."""
    if c.imag == 0.0:
        return _fmt_float(c.real), False
    if c.real == 0.0:
        return _fmt_float(c.imag) + "i", False
    im = _fmt_float(abs(c.imag)) + "i"
    sign = "+" if c.imag > 0 else "-"
    return f"{_fmt_float(c.real)}{sign}{im}", True


def render_polynomial(p: Polynomial) -> str:
    """Canonical text form, terms in descending degree."""
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0j:
            continue
        body, parens = _fmt_coeff(c)
        lead_minus = body.startswith("-") and not parens
        if lead_minus:
            body = body[1:]
        if parens:
            body = f"({body})"
        if k > 0:
            zpart = "z" if k == 1 else f"z^{k}"
            if body in ("1.0", "1.0i"):
                body = "i" if body == "1.0i" else ""
            term = f"{body}{zpart}" if (parens or body in ("", "i") or not body[-1].isdigit()) \
                else f"{body}*{zpart}"
        else:
            term = body
        if not parts:
            parts.append(("-" if lead_minus else "") + term)
        else:
            parts.append(("- " if lead_minus else "+ ") + term)
    return " ".join(parts)
