"""Multivariate polynomials with exact rational coefficients.

A polynomial in ``nvars`` variables is a map from exponent tuples to nonzero
Fractions.  The first ``dim`` variables of a form's polynomial are the box
coordinates x_1..x_d; any further variables are formal parameters (used for
the symbolic perturbation parameter in variational checks) that exterior
derivatives and integrals leave alone.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import q

ZERO = Fraction(0)
ONE = Fraction(1)


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = q(coeff)
                if coeff == 0:
                    continue
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} does not match nvars={nvars}")
                clean[tuple(exps)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: q(c)})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: ONE})

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff, nvars: int) -> "Polynomial":
        return cls(nvars, {tuple(exps): q(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable counts")

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other, self.nvars)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.nvars, out)

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other, self.nvars)
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = q(other)
            return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to variable i."""
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = tuple(v - 1 if j == i else v for j, v in enumerate(e))
            out[ne] = out.get(ne, ZERO) + c * e[i]
        return Polynomial(self.nvars, out)

    def box_integral(self, dim: int) -> "Polynomial":
        """Integrate variables 0..dim-1 over [0,1]; parameters survive.

        Uses the monomial rule ∫₀¹ x^e dx = 1/(e+1).
        """
        rest = self.nvars - dim
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            val = c
            for k in range(dim):
                val /= e[k] + 1
            tail = e[dim:]
            s = out.get(tail, ZERO) + val
            if s == 0:
                out.pop(tail, None)
            else:
                out[tail] = s
        return Polynomial(rest, out)

    def substitute(self, i: int, value) -> "Polynomial":
        """Replace variable i by a rational constant (variable slot kept, exponent 0)."""
        value = q(value)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = tuple(0 if j == i else v for j, v in enumerate(e))
            s = out.get(ne, ZERO) + c * value ** e[i]
            if s == 0:
                out.pop(ne, None)
            else:
                out[ne] = s
        return Polynomial(self.nvars, out)

    def pad(self, extra: int) -> "Polynomial":
        """Append `extra` fresh parameter variables."""
        if extra == 0:
            return self
        return Polynomial(
            self.nvars + extra, {e + (0,) * extra: c for e, c in self.terms.items()}
        )

    def truncate_var(self, i: int, maxdeg: int) -> "Polynomial":
        """Drop terms whose degree in variable i exceeds maxdeg."""
        return Polynomial(
            self.nvars, {e: c for e, c in self.terms.items() if e[i] <= maxdeg}
        )

    def coeff_of(self, i: int, power: int) -> "Polynomial":
        """Coefficient polynomial of variable i to the given power (slot zeroed)."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[tuple(0 if j == i else v for j, v in enumerate(e))] = c
        return Polynomial(self.nvars, out)

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if all(v == 0 for v in e):
                return c
        raise ValueError("polynomial is not constant")

    def eval_float(self, point) -> float:
        total = 0.0
        for e, c in self.terms.items():
            v = float(c)
            for x, p in zip(point, e):
                if p:
                    v *= x ** p
            total += v
        return total

    def eval_exact(self, point) -> Fraction:
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v *= q(x) ** p
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e)
                if p > 0
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)
