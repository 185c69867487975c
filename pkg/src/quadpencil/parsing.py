"""Plain-text input parsing: polynomial syntax and the pencil input file.

The accepted polynomial syntax is integer-coefficient arithmetic over the
six variables ``u, v, w, x, y, z``:

* ``^`` denotes powers (``x^2``),
* ``*`` is optional between a coefficient and a monomial (``4*vw`` and
  ``4vw`` are the same),
* juxtaposed variables multiply (``uv`` is ``u*v``),
* every monomial must have total degree exactly 2.

An input *file* consists of two lines ``Q1: <poly>`` and ``Q2: <poly>``
(in either order), plus optional witness lines::

    WITNESS: fano p=<prime> chart=<i>,<j> coords=<a1,...,a8>
    WITNESS: singular p=<prime> coords=<c1,...,c6>

Chart columns in witness lines (and everywhere in the user interface) are
1-based; internally charts are stored as 0-based pivot pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .exactmath import is_probable_prime
from .quadric import NUM_VARIABLES, VARIABLES, QuadraticForm
from .pencil import PencilOfQuadrics

__all__ = [
    "ParseError",
    "FanoWitness",
    "SingularWitness",
    "ParsedInput",
    "parse_form",
    "pretty_print",
    "parse_input",
    "parse_input_text",
]

_VARIABLE_INDEX = {name: i for i, name in enumerate(VARIABLES)}


class ParseError(ValueError):
    """Syntax or semantic error in textual input, with line/column info."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class FanoWitness:
    """A supplied candidate point on a Fano chart over F_p.

    ``chart`` holds 1-based column indices exactly as written in the
    input file; ``coordinates`` is the 8-tuple of chart parameters.
    """

    prime: int
    chart: tuple[int, int]
    coordinates: tuple[int, ...]


@dataclass(frozen=True)
class SingularWitness:
    """A supplied candidate singular point of a mod-p reduction."""

    prime: int
    coordinates: tuple[int, ...]


@dataclass(frozen=True)
class ParsedInput:
    """The result of parsing an input file: the pencil plus witnesses."""

    pencil: PencilOfQuadrics
    fano_witnesses: tuple[FanoWitness, ...]
    singular_witnesses: tuple[SingularWitness, ...]


# ---------------------------------------------------------------------------
# Polynomial tokenizer / parser
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "var" | "+" | "-" | "*" | "^" | "(" | ")"
    text: str
    column: int


def _tokenize(text: str, line: int) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        col = i + 1
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], col))
            i = j
            continue
        if ch.isalpha():
            if ch not in _VARIABLE_INDEX:
                raise ParseError(f"unknown variable '{ch}'", line, col)
            tokens.append(_Token("var", ch, col))
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, ch, col))
            i += 1
            continue
        raise ParseError(f"unexpected character '{ch}'", line, col)
    return tokens


class _FormParser:
    """Recursive-descent parser for sums of degree-2 monomials.

    Grammar::

        form    := [sign] term (("+" | "-") term)*
        term    := factor (("*")? factor)*
        factor  := INT | VAR ["^" INT] | "(" form ")"

    Parenthesised subexpressions are accepted for grouping of sums; the
    parser multiplies everything out exactly and then checks that each
    surviving monomial has total degree 2.
    """

    def __init__(self, tokens: list[_Token], line: int, line_length: int) -> None:
        self._tokens = tokens
        self._pos = 0
        self._line = line
        self._end_column = line_length + 1

    def _peek(self) -> Optional[_Token]:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self._line, self._end_column)
        self._pos += 1
        return tok

    # A polynomial is represented sparsely as {exponent 6-tuple: int}.
    def parse(self) -> dict[tuple[int, ...], int]:
        result = self._parse_sum()
        trailing = self._peek()
        if trailing is not None:
            raise ParseError(
                f"unexpected '{trailing.text}'", self._line, trailing.column
            )
        return result

    def _parse_sum(self) -> dict[tuple[int, ...], int]:
        sign = 1
        tok = self._peek()
        if tok is not None and tok.kind in "+-":
            self._next()
            sign = -1 if tok.kind == "-" else 1
        total = _poly_scale(self._parse_term(), sign)
        while True:
            tok = self._peek()
            if tok is None or tok.kind not in "+-":
                return total
            self._next()
            sign = -1 if tok.kind == "-" else 1
            total = _poly_add(total, _poly_scale(self._parse_term(), sign))

    def _parse_term(self) -> dict[tuple[int, ...], int]:
        product = self._parse_factor()
        while True:
            tok = self._peek()
            if tok is None:
                return product
            if tok.kind == "*":
                self._next()
                product = _poly_mul(product, self._parse_factor(), self._line)
            elif tok.kind in ("int", "var", "("):
                # implicit multiplication: 4vw, 2 x z, 3(u+v)...
                product = _poly_mul(product, self._parse_factor(), self._line)
            else:
                return product

    def _parse_factor(self) -> dict[tuple[int, ...], int]:
        tok = self._next()
        if tok.kind == "int":
            return {(0,) * NUM_VARIABLES: int(tok.text)}
        if tok.kind == "var":
            exponent = 1
            nxt = self._peek()
            if nxt is not None and nxt.kind == "^":
                self._next()
                power_tok = self._next()
                if power_tok.kind != "int":
                    raise ParseError(
                        "expected an integer exponent after '^'",
                        self._line,
                        power_tok.column,
                    )
                exponent = int(power_tok.text)
                if exponent > 2:
                    raise ParseError(
                        f"non-quadratic monomial: exponent {exponent} exceeds 2",
                        self._line,
                        power_tok.column,
                    )
            exps = [0] * NUM_VARIABLES
            exps[_VARIABLE_INDEX[tok.text]] = exponent
            return {tuple(exps): 1}
        if tok.kind == "(":
            inner = self._parse_sum()
            closing = self._next()
            if closing.kind != ")":
                raise ParseError("expected ')'", self._line, closing.column)
            return inner
        raise ParseError(f"unexpected '{tok.text}'", self._line, tok.column)


def _poly_add(
    a: dict[tuple[int, ...], int], b: dict[tuple[int, ...], int]
) -> dict[tuple[int, ...], int]:
    out = dict(a)
    for exps, coeff in b.items():
        new = out.get(exps, 0) + coeff
        if new:
            out[exps] = new
        else:
            out.pop(exps, None)
    return out


def _poly_scale(a: dict[tuple[int, ...], int], s: int) -> dict[tuple[int, ...], int]:
    if s == 0:
        return {}
    return {exps: s * coeff for exps, coeff in a.items()}


def _poly_mul(
    a: dict[tuple[int, ...], int], b: dict[tuple[int, ...], int], line: int
) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            if sum(exps) > 2:
                raise ParseError(
                    "non-quadratic monomial: total degree exceeds 2", line, 1
                )
            new = out.get(exps, 0) + ca * cb
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
    return out


def parse_form(text: str, line: int = 1) -> QuadraticForm:
    """Parse one quadratic form from polynomial text.

    Raises :class:`ParseError` on syntax errors, unknown variables, and
    monomials whose total degree is not exactly 2 (including a nonzero
    constant or linear part).
    """
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty polynomial", line, 1)
    poly = _FormParser(tokens, line, len(text)).parse()
    coeffs: dict[tuple[int, int], int] = {}
    for exps, coeff in poly.items():
        degree = sum(exps)
        if degree != 2:
            monomial = _monomial_text(exps) or str(coeff)
            raise ParseError(
                f"non-quadratic monomial: '{monomial}' has total degree {degree}",
                line,
                1,
            )
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            key = (support[0], support[0])
        else:
            key = (support[0], support[1])
        coeffs[key] = coeff
    if not coeffs:
        raise ParseError("the polynomial is identically zero", line, 1)
    return QuadraticForm(coeffs)


def _monomial_text(exps: Sequence[int]) -> str:
    parts = []
    for name, e in zip(VARIABLES, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "".join(parts)


def pretty_print(form: QuadraticForm) -> str:
    """Render a form in canonical text: terms sorted by (i, j), ``^`` powers.

    ``parse_form(pretty_print(q))`` always equals ``q``.
    """
    pieces: list[str] = []
    for (i, j), coeff in form.monomials():
        if i == j:
            monomial = f"{VARIABLES[i]}^2"
        else:
            monomial = f"{VARIABLES[i]}{VARIABLES[j]}"
        magnitude = abs(coeff)
        body = monomial if magnitude == 1 else f"{magnitude}{monomial}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# Input-file parser
# ---------------------------------------------------------------------------

def _parse_int_list(
    text: str, expected: int, line: int, column: int, what: str
) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != expected:
        raise ParseError(
            f"{what} needs {expected} comma-separated integers, got {len(parts)}",
            line,
            column,
        )
    values = []
    for part in parts:
        part = part.strip()
        if not part or not (part.lstrip("-").isdigit()):
            raise ParseError(f"bad integer '{part}' in {what}", line, column)
        values.append(int(part))
    return tuple(values)


def _parse_witness_fields(
    body: str, line: int, offset: int
) -> dict[str, tuple[str, int]]:
    """Split ``key=value`` fields, keeping each value's column for errors."""
    fields: dict[str, tuple[str, int]] = {}
    for chunk in body.split():
        column = offset + body.index(chunk) + 1
        if "=" not in chunk:
            raise ParseError(f"expected key=value, got '{chunk}'", line, column)
        key, value = chunk.split("=", 1)
        if key in fields:
            raise ParseError(f"duplicate field '{key}'", line, column)
        fields[key] = (value, column)
    return fields


def _require_prime(value: str, line: int, column: int) -> int:
    if not value.isdigit():
        raise ParseError(f"bad prime '{value}'", line, column)
    p = int(value)
    if p < 2 or not is_probable_prime(p):
        raise ParseError(f"{p} is not prime", line, column)
    return p


def _parse_witness_line(line_text: str, line: int) -> FanoWitness | SingularWitness:
    body = line_text.split(":", 1)[1].strip()
    offset = line_text.index(":") + 1 + (len(line_text.split(":", 1)[1]) - len(line_text.split(":", 1)[1].lstrip()))
    parts = body.split(None, 1)
    if not parts:
        raise ParseError("empty WITNESS line", line, offset + 1)
    kind = parts[0]
    rest = parts[1] if len(parts) > 1 else ""
    rest_offset = offset + len(kind) + 1
    fields = _parse_witness_fields(rest, line, rest_offset)

    def take(name: str) -> tuple[str, int]:
        if name not in fields:
            raise ParseError(f"missing field '{name}='", line, offset + 1)
        return fields.pop(name)

    if kind == "fano":
        p_text, p_col = take("p")
        chart_text, chart_col = take("chart")
        coords_text, coords_col = take("coords")
        if fields:
            extra = sorted(fields)[0]
            raise ParseError(f"unknown field '{extra}='", line, fields[extra][1])
        prime = _require_prime(p_text, line, p_col)
        chart = _parse_int_list(chart_text, 2, line, chart_col, "chart")
        i, j = chart
        if not (1 <= i < j <= NUM_VARIABLES):
            raise ParseError(
                f"chart columns must satisfy 1 <= i < j <= {NUM_VARIABLES}",
                line,
                chart_col,
            )
        coords = _parse_int_list(coords_text, 8, line, coords_col, "coords")
        return FanoWitness(prime=prime, chart=chart, coordinates=coords)
    if kind == "singular":
        p_text, p_col = take("p")
        coords_text, coords_col = take("coords")
        if fields:
            extra = sorted(fields)[0]
            raise ParseError(f"unknown field '{extra}='", line, fields[extra][1])
        prime = _require_prime(p_text, line, p_col)
        coords = _parse_int_list(coords_text, 6, line, coords_col, "coords")
        return SingularWitness(prime=prime, coordinates=coords)
    raise ParseError(
        f"unknown witness kind '{kind}' (expected 'fano' or 'singular')",
        line,
        offset + 1,
    )


def _parse_sections(
    text: str,
) -> tuple[dict[str, QuadraticForm], list[FanoWitness], list[SingularWitness]]:
    """Parse the input lines without constructing the pencil."""
    forms: dict[str, QuadraticForm] = {}
    fano_witnesses: list[FanoWitness] = []
    singular_witnesses: list[SingularWitness] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if ":" not in stripped:
            raise ParseError(
                "expected 'Q1:', 'Q2:', or 'WITNESS:' at the start of the line",
                line_number,
                1,
            )
        label = stripped.split(":", 1)[0].strip()
        payload = stripped.split(":", 1)[1].strip()
        if label in ("Q1", "Q2"):
            if label in forms:
                raise ParseError(f"duplicate {label}: line", line_number, 1)
            forms[label] = parse_form(payload, line_number)
        elif label == "WITNESS":
            witness = _parse_witness_line(stripped, line_number)
            if isinstance(witness, FanoWitness):
                fano_witnesses.append(witness)
            else:
                singular_witnesses.append(witness)
        else:
            raise ParseError(
                f"unknown line label '{label}' (expected Q1, Q2, or WITNESS)",
                line_number,
                1,
            )
    for required in ("Q1", "Q2"):
        if required not in forms:
            raise ParseError(f"missing {required}: line", 1, 1)
    return forms, fano_witnesses, singular_witnesses


def parse_input_text(text: str) -> ParsedInput:
    """Parse the two-form input format (plus witnesses) from a string."""
    forms, fano_witnesses, singular_witnesses = _parse_sections(text)
    pencil = PencilOfQuadrics(forms["Q1"], forms["Q2"])
    return ParsedInput(
        pencil=pencil,
        fano_witnesses=tuple(fano_witnesses),
        singular_witnesses=tuple(singular_witnesses),
    )


def parse_input(path: str) -> ParsedInput:
    """Parse an input file by path. See the module docstring for the format."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_input_text(handle.read())
