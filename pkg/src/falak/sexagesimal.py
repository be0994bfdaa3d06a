"""Base-60 notation: ``[-] [<n>s] <whole> [; d, d, ...]``.

The semicolon separates the integer part from the sexagesimal fractions and
commas separate successive fractional digits, so ``280;33,31`` is
280 + 33/60 + 31/3600.  An optional leading ``<n>s`` counts zodiac signs of
30 degrees each (``9s 10;9,0`` is 280;9,0).

Values are decoded exactly (as ``Fraction``) and handed to the rest of the
package as floats.  Formatting works on the exact binary value of the float so
that rounding decisions are reproducible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DigitOutOfRange, MalformedSexagesimal, PreconditionViolated

ROUNDING_MODES = ("half-up", "truncate")

_GRAMMAR = re.compile(
    r"""^\s*
    (?P<neg>-)?\s*
    (?:(?P<signs>\d+)\s*s\s*)?
    (?P<whole>\d+)
    (?:\s*;\s*(?P<fracs>\d+(?:\s*,\s*\d+)*))?
    \s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class SexValue:
    negative: bool
    zodiac_signs: int
    whole: int
    fracs: tuple[int, ...]

    def __post_init__(self):
        for digit in self.fracs:
            if not 0 <= digit <= 59:
                raise DigitOutOfRange(f"fractional digit {digit} not in [0, 59]")

    def exact(self) -> Fraction:
        total = Fraction(30 * self.zodiac_signs + self.whole)
        scale = Fraction(1)
        for digit in self.fracs:
            scale /= 60
            total += digit * scale
        return -total if self.negative else total

    def to_decimal(self) -> float:
        return float(self.exact())


def parse(text: str) -> SexValue:
    m = _GRAMMAR.match(text)
    if m is None:
        raise MalformedSexagesimal(f"not a sexagesimal number: {text!r}")
    fracs = ()
    if m["fracs"] is not None:
        fracs = tuple(int(d) for d in m["fracs"].split(","))
    for digit in fracs:
        if digit >= 60:
            raise DigitOutOfRange(f"fractional digit {digit} in {text!r} is not below 60")
    return SexValue(
        negative=m["neg"] is not None,
        zodiac_signs=int(m["signs"] or 0),
        whole=int(m["whole"]),
        fracs=fracs,
    )


def to_decimal(value: SexValue | str) -> float:
    if isinstance(value, str):
        value = parse(value)
    return value.to_decimal()


def sx(text: str) -> float:
    """Shorthand for literals: ``sx("4;37")`` -> 4.6166..."""
    return parse(text).to_decimal()


def sx_exact(text: str) -> Fraction:
    return parse(text).exact()


def parse_angle(text: str) -> float:
    """Accept either a decimal number or the sexagesimal grammar."""
    try:
        return float(text)
    except ValueError:
        return sx(text)


def to_sex(x: float | Fraction, places: int = 2, rounding: str = "half-up") -> SexValue:
    if not 0 <= places <= 8:
        raise PreconditionViolated(f"places must be in [0, 8], got {places}")
    if rounding not in ROUNDING_MODES:
        raise PreconditionViolated(f"rounding must be one of {ROUNDING_MODES}")
    exact = Fraction(x)
    negative = exact < 0
    scaled = abs(exact) * 60**places
    units = int(scaled)
    if rounding == "half-up" and scaled - units >= Fraction(1, 2):
        units += 1
    digits = []
    for _ in range(places):
        units, digit = divmod(units, 60)
        digits.append(digit)
    return SexValue(
        negative=negative and (units > 0 or any(digits)),
        zodiac_signs=0,
        whole=units,
        fracs=tuple(reversed(digits)),
    )


def format_sex(
    x: float | Fraction,
    places: int = 2,
    rounding: str = "half-up",
    zodiac: bool = False,
) -> str:
    """Render ``x`` as ``D;M,S,...`` with ``places`` fractional digits.

    Rounding applies to the magnitude, so carries propagate upward
    (``0;59,59.6`` becomes ``1;0,0``).  With ``zodiac=True`` the whole part is
    split into signs of 30 degrees, ``9s 10;9``.
    """
    v = to_sex(x, places, rounding)
    sign = "-" if v.negative else ""
    if zodiac:
        signs, whole = divmod(v.whole, 30)
        head = f"{signs}s {whole}"
    else:
        head = str(v.whole)
    if not v.fracs:
        return sign + head
    return sign + head + ";" + ",".join(str(d) for d in v.fracs)
