"""Sparse integer polynomials in k variables.

Terms map exponent tuples to non-zero integer coefficients; zero
coefficients are dropped on construction so equality and zero-testing
are structural.  A small parser accepts the univariate command-line
syntax ("x^2+1", "3x^3-2x+5").
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParameterError
from .padic import PadicApprox


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial given by {exponent vector: coefficient}."""

    variables: int
    terms: dict[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.variables < 1:
            raise ParameterError("polynomial needs at least one variable")
        cleaned = {}
        for exps, coeff in self.terms.items():
            exps = tuple(exps)
            if len(exps) != self.variables or any(e < 0 for e in exps):
                raise ParameterError(f"bad exponent vector {exps}")
            if coeff:
                cleaned[exps] = int(coeff)
        object.__setattr__(self, "terms", cleaned)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def height(self) -> int:
        """Largest absolute coefficient; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(abs(c) for c in self.terms.values())

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.variables != other.variables:
            raise ParameterError("variable count mismatch")
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, 0) + c
        return IntPolynomial(self.variables, merged)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.variables != other.variables:
            raise ParameterError("variable count mismatch")
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial(self.variables, out)

    def evaluate_int(self, xs: list[int]) -> int:
        if len(xs) != self.variables:
            raise ParameterError(f"expected {self.variables} values, got {len(xs)}")
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for x, e in zip(xs, exps):
                term *= x**e
            total += term
        return total

    def evaluate_mod(self, xs: list[int], modulus: int) -> int:
        if len(xs) != self.variables:
            raise ParameterError(f"expected {self.variables} values, got {len(xs)}")
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff % modulus
            for x, e in zip(xs, exps):
                term = term * pow(x % modulus, e, modulus) % modulus
            total = (total + term) % modulus
        return total

    def univariate_coeffs(self) -> list[int]:
        """Dense coefficient list [c0, c1, ...] for a one-variable polynomial."""
        if self.variables != 1:
            raise ParameterError("not univariate")
        if not self.terms:
            return [0]
        deg = max(e[0] for e in self.terms)
        coeffs = [0] * (deg + 1)
        for (e,), c in self.terms.items():
            coeffs[e] = c
        return coeffs

    def to_json(self) -> dict:
        return {
            "variables": self.variables,
            "terms": [
                {"exponents": list(e), "coefficient": str(c)}
                for e, c in sorted(self.terms.items())
            ],
        }

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            factors = []
            for i, e in enumerate(exps):
                name = f"x{i + 1}" if self.variables > 1 else "x"
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if body:
                mag = "" if abs(coeff) == 1 else f"{abs(coeff)}*"
                text = mag + body
            else:
                text = str(abs(coeff))
            parts.append(("-" if coeff < 0 else "+") + text)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


def evaluate(f: IntPolynomial, xs: list[PadicApprox]) -> PadicApprox:
    """Evaluate at truncated p-adic arguments, mod p**N."""
    if len(xs) != f.variables:
        raise ParameterError(f"expected {f.variables} arguments, got {len(xs)}")
    if not xs:
        raise ParameterError("at least one argument required")
    p, N = xs[0].p, xs[0].N
    for x in xs:
        xs[0]._check_compatible(x)
    value = f.evaluate_mod([x.residue for x in xs], p**N)
    return PadicApprox(p, N, value)


def univariate(coeffs: list[int]) -> IntPolynomial:
    """Build a one-variable polynomial from [c0, c1, ...]."""
    return IntPolynomial(1, {(i,): c for i, c in enumerate(coeffs)})


def monomial(variables: int, exps: tuple, coeff: int = 1) -> IntPolynomial:
    return IntPolynomial(variables, {tuple(exps): coeff})


_TERM_RE = re.compile(r"^([+-]?\d*)\s*(?:(x)(?:\^(\d+))?)?$")


def parse_univariate(text: str) -> IntPolynomial:
    """Parse integer-coefficient syntax like 'x^2+1' or '-3x^3 + 2x - 7'."""
    cleaned = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not cleaned:
        raise ParameterError("empty polynomial")
    chunks = re.findall(r"[+-]?[^+-]+", cleaned)
    terms: dict[tuple, int] = {}
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m or (not m.group(1).strip("+-") and not m.group(2)):
            raise ParameterError(f"cannot parse term {chunk!r} in {text!r}")
        sign_coeff, var, power = m.groups()
        if sign_coeff in ("", "+"):
            coeff = 1
        elif sign_coeff == "-":
            coeff = -1
        else:
            coeff = int(sign_coeff)
        exp = 0
        if var:
            exp = int(power) if power else 1
        terms[(exp,)] = terms.get((exp,), 0) + coeff
    return IntPolynomial(1, terms)
