"""ψ-class integrals on M̄_{0,n} and M̄_{1,n}."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence, Tuple

__all__ = ["psi_integral", "psi_integral_by_recursion"]


def psi_integral(g: int, n: int, exponents: Sequence[int]) -> Fraction:
    """``∫_{M̄_{g,n}} ∏ ψ_i^{e_i}`` for ``g ∈ {0, 1}``.

    Returns 0 when ``Σ e_i ≠ 3g − 3 + n``.  Genus 0 uses the multinomial
    closed form; genus 1 reduces by the string and dilaton equations to
    ``∫_{M̄_{1,1}} ψ = 1/24``.
    """
    exps = tuple(exponents)
    if len(exps) != n:
        raise ValueError("need one exponent per marking")
    if any(e < 0 for e in exps):
        raise ValueError("exponents must be non-negative")
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"M̄_{{{g},{n}}} is unstable")
    if g not in (0, 1):
        raise ValueError("only genus 0 and 1 are supported")
    if sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    if g == 0:
        r = Fraction(factorial(n - 3))
        for e in exps:
            r /= factorial(e)
        return r
    return _genus1(tuple(sorted(exps)))


@lru_cache(maxsize=None)
def _genus1(exps: Tuple[int, ...]) -> Fraction:
    n = len(exps)
    if n == 1:
        return Fraction(1, 24)
    if exps[0] == 0:  # string
        rest = exps[1:]
        total = Fraction(0)
        for i, e in enumerate(rest):
            if e:
                lowered = rest[:i] + (e - 1,) + rest[i + 1 :]
                total += _genus1(tuple(sorted(lowered)))
        return total
    if exps[0] == 1:  # dilaton: (2g − 2 + n − 1)
        return (n - 1) * _genus1(exps[1:])
    raise AssertionError("exponent sum forces a 0 or 1 entry")


def psi_integral_by_recursion(g: int, exponents: Sequence[int]) -> Fraction:
    """Independent check: reduce by string/dilaton only, genus-0 base ``⟨τ_0³⟩ = 1``.

    Covers every nonzero genus-0 integral and every genus-1 integral.
    """
    exps = tuple(sorted(exponents))
    n = len(exps)
    if sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    if g == 0 and n == 3:
        return Fraction(1)
    if g == 1 and n == 1:
        return Fraction(1, 24)
    if exps[0] == 0:
        rest = exps[1:]
        return sum(
            (psi_integral_by_recursion(g, rest[:i] + (e - 1,) + rest[i + 1 :]) for i, e in enumerate(rest) if e),
            Fraction(0),
        )
    if exps[0] == 1:
        return (2 * g - 2 + n - 1) * psi_integral_by_recursion(g, exps[1:])
    raise ValueError("outside the string/dilaton range")
