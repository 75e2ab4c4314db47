"""
Pydantic models for the Teichmüller polynomial and its one-variable specializations.
"""

from pydantic import Field, field_validator

from .base import FibernormBaseModel


class LaurentTerm(FibernormBaseModel):
    """Monomial c·t^i·u^j of a two-variable Laurent polynomial."""
    i: int = Field(description="Exponent of t (lattice coordinate on [t])")
    j: int = Field(description="Exponent of u (lattice coordinate on [x])")
    c: int = Field(description="Nonzero integer coefficient")


class TeichPolynomial(FibernormBaseModel):
    """
    Element of the group ring of H_1(M, Z) = Z<[t]> + Z<[x]>.

    Serialized as a list of ``{"i": ..., "j": ..., "c": ...}`` terms; zero
    coefficients are never stored and each lattice point appears once.
    """
    terms: tuple[LaurentTerm, ...] = Field(description="Nonzero monomials")

    @field_validator('terms')
    @classmethod
    def _check_terms(cls, terms: tuple[LaurentTerm, ...]) -> tuple[LaurentTerm, ...]:
        seen = set()
        for term in terms:
            if term.c == 0:
                raise ValueError(f"zero coefficient stored at ({term.i},{term.j})")
            if (term.i, term.j) in seen:
                raise ValueError(f"lattice point ({term.i},{term.j}) appears twice")
            seen.add((term.i, term.j))
        return tuple(sorted(terms, key=lambda term: (term.i, term.j)))

    @classmethod
    def from_mapping(cls, coefficients: dict[tuple[int, int], int]) -> "TeichPolynomial":
        return cls(terms=tuple(
            LaurentTerm(i=i, j=j, c=c) for (i, j), c in coefficients.items() if c != 0
        ))

    def as_mapping(self) -> dict[tuple[int, int], int]:
        return {(term.i, term.j): term.c for term in self.terms}

    def __str__(self) -> str:
        parts = []
        for term in self.terms:
            monomial = "".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in (("t", term.i), ("u", term.j)) if e
            )
            if monomial and abs(term.c) == 1:
                parts.append(("+" if term.c > 0 else "-") + monomial)
            else:
                parts.append(f"{term.c:+d}{monomial}")
        return " ".join(parts).lstrip("+")


class IntPolynomial(FibernormBaseModel):
    """One-variable integer polynomial in k, coefficients in ascending degree."""
    coefficients: tuple[int, ...] = Field(description="c_0, c_1, ..., c_d with c_d != 0")

    @field_validator('coefficients')
    @classmethod
    def _leading_nonzero(cls, coefficients: tuple[int, ...]) -> tuple[int, ...]:
        if not coefficients or coefficients[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        return coefficients

    @classmethod
    def from_exponents(cls, contributions: dict[int, int]) -> "IntPolynomial":
        """Build from ``{exponent: coefficient}`` (coefficients already summed)."""
        if any(e < 0 for e in contributions):
            raise ValueError("exponents must be nonnegative")
        nonzero = {e: c for e, c in contributions.items() if c}
        if not nonzero:
            raise ValueError("polynomial is identically zero")
        coefficients = [0] * (max(nonzero) + 1)
        for e, c in nonzero.items():
            coefficients[e] = c
        return cls(coefficients=tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, k: float) -> float:
        result = 0.0
        for c in reversed(self.coefficients):
            result = result * k + c
        return result

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def coefficient_string(self) -> str:
        """Coefficients from the leading term down, e.g. ``"1 -3 1"``."""
        return " ".join(str(c) for c in reversed(self.coefficients))

    def __str__(self) -> str:
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coefficients[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            power = "" if e == 0 else ("k" if e == 1 else f"k^{e}")
            body = str(magnitude) if (magnitude != 1 or not power) else ""
            parts.append((sign, body + power))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
