"""Ordinals below omega^omega in Cantor normal form."""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class OrdinalCNF:
    """``c_d*w^d + ... + c_1*w + c_0`` stored as ``coeffs = (c_0, ..., c_d)``."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        if any(x < 0 for x in c):
            raise ValueError("coefficients must be natural numbers")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def finite(cls, n: int) -> "OrdinalCNF":
        return cls((n,))

    @classmethod
    def omega_power(cls, d: int, c: int = 1) -> "OrdinalCNF":
        return cls((0,) * d + (c,))

    @property
    def degree(self) -> int:
        """Exponent of the leading term (-1 for zero)."""
        return len(self.coeffs) - 1

    def coeff(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    @property
    def is_finite(self) -> bool:
        return self.degree <= 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_successor(self) -> bool:
        return self.coeff(0) > 0

    @property
    def is_limit(self) -> bool:
        return not self.is_zero and self.coeff(0) == 0

    def predecessor(self) -> "OrdinalCNF":
        if not self.is_successor:
            raise ValueError(f"{self} is not a successor")
        return OrdinalCNF((self.coeffs[0] - 1,) + self.coeffs[1:])

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.coeff(0)

    def __lt__(self, other):
        if not isinstance(other, OrdinalCNF):
            other = OrdinalCNF.finite(other)
        if self.degree != other.degree:
            return self.degree < other.degree
        for d in range(self.degree, -1, -1):
            if self.coeff(d) != other.coeff(d):
                return self.coeff(d) < other.coeff(d)
        return False

    def __add__(self, other: "OrdinalCNF") -> "OrdinalCNF":
        # terms of self below the leading exponent of other are absorbed
        if not isinstance(other, OrdinalCNF):
            other = OrdinalCNF.finite(other)
        if other.is_zero:
            return self
        d = other.degree
        c = list(other.coeffs)
        c[d] += self.coeff(d)
        for e in range(d + 1, len(self.coeffs)):
            c.append(self.coeffs[e])
        return OrdinalCNF(tuple(c))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coeff(d)
            if not c:
                continue
            if d == 0:
                parts.append(str(c))
                continue
            base = "ω" if d == 1 else f"ω^{d}"
            parts.append(base if c == 1 else f"{base}·{c}")
        return "+".join(parts)

    def to_json(self):
        return list(self.coeffs)


ZERO = OrdinalCNF()
OMEGA = OrdinalCNF.omega_power(1)


def limit_of(a: OrdinalCNF, b: OrdinalCNF) -> OrdinalCNF:
    """Supremum of a sequence that continues like ``a < b < ...``.

    The common part above the highest differing exponent d is kept and the
    limit is that part plus ``w^(d+1)``.
    """
    if not a < b:
        raise ValueError("need a strictly increasing pair")
    d = max(a.degree, b.degree)
    while a.coeff(d) == b.coeff(d):
        d -= 1
    c = [0] * (d + 1) + [b.coeff(e) for e in range(d + 1, max(b.degree, d + 1) + 1)]
    c[d + 1] += 1
    return OrdinalCNF(tuple(c))
