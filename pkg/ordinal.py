#!/usr/bin/env python3
"""
Ordinals below epsilon-zero in Cantor normal form

Ordinals are immutable values. Cantor-Bendixson ranks throughout the toolkit
are expressed with them, so only comparison, successor, predecessor, addition
and left division by omega are provided.
"""

from functools import total_ordering
from typing import Iterable, List, Optional, Tuple, Union

from errors import OrdinalError, ParseError

OMEGA_SYMBOLS = ("w", "ω")

Term = Tuple["Ordinal", int]


@total_ordering
class Ordinal:
    """An ordinal below epsilon-zero as a tuple of (exponent, coefficient) terms"""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Term] = ()) -> None:
        """Build from terms with strictly decreasing exponents and positive coefficients"""
        terms = tuple(terms)
        for index, (exponent, coefficient) in enumerate(terms):
            if not isinstance(exponent, Ordinal):
                raise OrdinalError(f"exponent {exponent!r} is not an ordinal")
            if not isinstance(coefficient, int) or isinstance(coefficient, bool) or coefficient < 1:
                raise OrdinalError(f"coefficient {coefficient!r} must be a positive integer")
            if index and not exponent < terms[index - 1][0]:
                raise OrdinalError("exponents must be strictly decreasing")
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        """The finite ordinal n"""
        if n < 0:
            raise OrdinalError(f"negative ordinal {n}")
        return cls() if n == 0 else cls(((ZERO, n),))

    @classmethod
    def omega_power(cls, exponent: Union["Ordinal", int], coefficient: int = 1) -> "Ordinal":
        """omega^exponent * coefficient"""
        return cls(((_coerce(exponent), coefficient),))

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        """Parse CNF text such as 'w^2*3 + w + 4' or 'w^(w+1)'"""
        value, position = OrdinalParser(text).parse_at(0)
        position = _skip_spaces(text, position)
        if position != len(text):
            raise ParseError(f"unexpected {text[position]!r} in ordinal", position)
        return value

    # -- classification -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return all(exponent.is_zero() for exponent, _ in self.terms)

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.is_successor()

    def finite_value(self) -> int:
        """The integer value of a finite ordinal"""
        if not self.is_finite():
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise OrdinalError("zero has no leading exponent")
        return self.terms[0][0]

    # -- arithmetic -----------------------------------------------------

    def succ(self) -> "Ordinal":
        """self + 1"""
        if self.is_successor():
            return Ordinal(self.terms[:-1] + ((ZERO, self.terms[-1][1] + 1),))
        return Ordinal(self.terms + ((ZERO, 1),))

    def predecessor(self) -> "Ordinal":
        """The ordinal whose successor is self"""
        if not self.is_successor():
            raise OrdinalError(f"{self} has no predecessor")
        head, (_, coefficient) = self.terms[:-1], self.terms[-1]
        if coefficient == 1:
            return Ordinal(head)
        return Ordinal(head + ((ZERO, coefficient - 1),))

    def divide_by_omega(self) -> "Ordinal":
        """The unique b with omega*b <= self < omega*(b+1)

        omega * omega^e = omega^(1+e), and 1+e = e for infinite e, so only
        finite exponents move down by one.
        """
        if self.is_zero():
            raise OrdinalError("cannot divide zero by omega")
        terms: List[Term] = []
        for exponent, coefficient in self.terms:
            if exponent.is_zero():
                continue
            if exponent.is_finite():
                exponent = Ordinal.from_int(exponent.finite_value() - 1)
            terms.append((exponent, coefficient))
        return Ordinal(terms)

    def __add__(self, other: Union["Ordinal", int]) -> "Ordinal":
        other = _coerce(other)
        if other.is_zero():
            return self
        lead = other.leading_exponent
        kept = [term for term in self.terms if term[0] > lead]
        tail = list(other.terms)
        same = [c for e, c in self.terms if e == lead]
        if same:
            tail[0] = (lead, tail[0][1] + same[0])
        return Ordinal(kept + tail)

    def __radd__(self, other: int) -> "Ordinal":
        return _coerce(other) + self

    # -- ordering -------------------------------------------------------

    def compare(self, other: Union["Ordinal", int]) -> int:
        """-1, 0 or 1 by ordinal order"""
        other = _coerce(other)
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            by_exponent = e1.compare(e2)
            if by_exponent:
                return by_exponent
            if c1 != c2:
                return -1 if c1 < c2 else 1
        if len(self.terms) == len(other.terms):
            return 0
        return -1 if len(self.terms) < len(other.terms) else 1

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.from_int(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other) -> bool:
        if not isinstance(other, (Ordinal, int)):
            return NotImplemented
        return self.compare(other) < 0

    def __hash__(self) -> int:
        if self.is_finite():
            return hash(self.finite_value())
        return hash(self.terms)

    # -- text -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponent, coefficient in self.terms:
            if exponent.is_zero():
                parts.append(str(coefficient))
                continue
            if exponent == ONE:
                base = "w"
            elif exponent.is_finite() or exponent == OMEGA:
                base = f"w^{exponent}"
            else:
                base = f"w^({exponent})"
            parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Ordinal('{self}')"


def _coerce(value: Union[Ordinal, int]) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Ordinal.from_int(value)
    raise OrdinalError(f"{value!r} is not an ordinal")


def _skip_spaces(text: str, position: int) -> int:
    while position < len(text) and text[position].isspace():
        position += 1
    return position


class OrdinalParser:
    """Recursive descent parser for CNF text, resumable at any offset

    sum      := term ('+' term)*
    term     := atom ['*' INT]
    atom     := INT | 'w' ['^' exponent]
    exponent := INT | 'w' | '(' sum ')'
    """

    def __init__(self, text: str) -> None:
        self.text = text

    def parse_at(self, position: int) -> Tuple[Ordinal, int]:
        """Parse an ordinal starting at position, returning it and the end offset"""
        value, position = self._term(position)
        while True:
            look = _skip_spaces(self.text, position)
            if look < len(self.text) and self.text[look] == "+":
                term, position = self._term(look + 1)
                value = value + term
            else:
                return value, position

    def _term(self, position: int) -> Tuple[Ordinal, int]:
        value, position = self._atom(position)
        look = _skip_spaces(self.text, position)
        if look < len(self.text) and self.text[look] == "*":
            count, position = self._integer(look + 1)
            if count == 0:
                return ZERO, position
            value = _scale(value, count)
        return value, position

    def _atom(self, position: int) -> Tuple[Ordinal, int]:
        position = _skip_spaces(self.text, position)
        if self._at_omega(position):
            position += 1
            look = _skip_spaces(self.text, position)
            if look < len(self.text) and self.text[look] == "^":
                exponent, position = self._exponent(look + 1)
                return Ordinal.omega_power(exponent), position
            return OMEGA, position
        number, position = self._integer(position)
        return Ordinal.from_int(number), position

    def _exponent(self, position: int) -> Tuple[Ordinal, int]:
        position = _skip_spaces(self.text, position)
        if position < len(self.text) and self.text[position] == "(":
            value, position = self.parse_at(position + 1)
            position = _skip_spaces(self.text, position)
            if position >= len(self.text) or self.text[position] != ")":
                raise ParseError("expected ')' closing exponent", position)
            return value, position + 1
        if self._at_omega(position):
            return OMEGA, position + 1
        number, position = self._integer(position)
        return Ordinal.from_int(number), position

    def _integer(self, position: int) -> Tuple[int, int]:
        position = _skip_spaces(self.text, position)
        end = position
        while end < len(self.text) and self.text[end].isdigit():
            end += 1
        if end == position:
            found = repr(self.text[position]) if position < len(self.text) else "end of input"
            raise ParseError(f"expected ordinal, found {found}", position)
        return int(self.text[position:end]), end

    def _at_omega(self, position: int) -> bool:
        return position < len(self.text) and self.text[position] in OMEGA_SYMBOLS


def _scale(value: Ordinal, count: int) -> Ordinal:
    """value * count for a single-term value (all the parser produces)"""
    if value.is_zero():
        return value
    exponent, coefficient = value.terms[0]
    return Ordinal(((exponent, coefficient * count),) + value.terms[1:])


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def max_ordinal(*values: Optional[Ordinal]) -> Ordinal:
    """Maximum of the given ordinals, ignoring None; zero when empty"""
    present = [v for v in values if v is not None]
    return max(present) if present else ZERO
