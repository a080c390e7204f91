"""Integer quadratic polynomials."""

from __future__ import annotations

from dataclasses import dataclass


class DomainError(ValueError):
    """An operation was asked for outside the domain where it is defined,
    for example a period table of a sequence that has no period."""


@dataclass(frozen=True)
class QuadraticPoly:
    """f(n) = a*n**2 + b*n + c with integer coefficients and a != 0."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"coefficient {name} must be an int, got {value!r}")
        if self.a == 0:
            raise ValueError("leading coefficient must be nonzero")

    def __call__(self, n: int) -> int:
        return (self.a * n + self.b) * n + self.c

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __str__(self) -> str:
        parts: list[tuple[str, str]] = []
        for coef, suffix in ((self.a, "n^2"), (self.b, "n"), (self.c, "")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if suffix and mag == 1:
                body = suffix
            elif suffix:
                body = f"{mag}{suffix}"
            else:
                body = str(mag)
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
