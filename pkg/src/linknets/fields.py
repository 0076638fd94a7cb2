"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

Scalars are stored in raw form (``fractions.Fraction`` for the rationals,
canonical ``int`` residues in ``[0, p)`` for a prime field) and every
operation goes through a field object, so the linear-algebra layer stays
generic.  There is no floating point anywhere: arithmetic is exact and the
canonical form of a scalar is unique.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


class Rationals:
    """The field of arbitrary-precision rationals."""

    kind = "rational"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / Fraction(b)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def parse(self, text):
        """Parse a scalar from JSON form: an int or a string like "3" or "-2/7"."""
        if isinstance(text, bool):
            raise FieldError(f"not a scalar: {text!r}")
        if isinstance(text, int):
            return Fraction(text)
        if isinstance(text, str):
            try:
                return Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad rational scalar {text!r}") from exc
        raise FieldError(f"bad rational scalar {text!r}")

    def to_json(self, a):
        if a.denominator == 1:
            return int(a)
        return f"{a.numerator}/{a.denominator}"

    def descriptor(self):
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p with residues stored as ints in ``[0, p)``."""

    kind = "prime"

    def __init__(self, p):
        if p < 2:
            raise FieldError(f"modulus must be a prime >= 2, got {p}")
        # Cheap primality guard; moduli here are small and fixed.
        if any(p % d == 0 for d in range(2, min(p, 1 + int(p ** 0.5) + 1)) if d < p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def parse(self, text):
        if isinstance(text, bool):
            raise FieldError(f"not a scalar: {text!r}")
        if isinstance(text, int):
            return text % self.p
        if isinstance(text, str):
            if "/" in text:
                num, _, den = text.partition("/")
                return self.div(int(num) % self.p, int(den) % self.p)
            try:
                return int(text) % self.p
            except ValueError as exc:
                raise FieldError(f"bad prime-field scalar {text!r}") from exc
        raise FieldError(f"bad prime-field scalar {text!r}")

    def to_json(self, a):
        return int(a % self.p)

    def descriptor(self):
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()

#: Default prime used when a prime-field run is requested without a modulus.
DEFAULT_PRIME = 1000003


def field_from_descriptor(desc):
    """Build a field from its JSON descriptor {"kind": ...}."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise FieldError(f"bad field descriptor: {desc!r}")
    if desc["kind"] == "rational":
        return QQ
    if desc["kind"] == "prime":
        return PrimeField(int(desc.get("p", DEFAULT_PRIME)))
    raise FieldError(f"unknown field kind {desc['kind']!r}")


def field_from_spec(text):
    """Parse a field from a CLI/env string: "rational" or "prime[:p]"."""
    if text in ("rational", "Q", "QQ"):
        return QQ
    if text.startswith("prime"):
        _, _, rest = text.partition(":")
        return PrimeField(int(rest)) if rest else PrimeField(DEFAULT_PRIME)
    raise FieldError(f"unknown field spec {text!r} (use 'rational' or 'prime[:p]')")
