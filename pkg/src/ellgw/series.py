"""Sparse truncated multivariate power series over the rationals.

A :class:`TruncSeries` lives in a fixed, ordered variable context.  Every
series carries its own per-variable caps: the largest exponent up to which
its coefficients are certified.  ``None`` means the series is exact in that
variable (no truncation).  Binary operations propagate the componentwise
minimum of caps, so a result never claims more precision than its inputs.

Coefficients are :class:`fractions.Fraction`; nothing is ever rounded.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from operator import add
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

__all__ = [
    "VarSpec",
    "TruncSeries",
    "ContextError",
    "add_series",
    "mul_series",
    "derive",
    "exp_trunc",
    "log_trunc",
    "residue",
]

Scalar = Union[int, Fraction]
Exponent = tuple
Cap = Optional[int]


class ContextError(ValueError):
    """Raised when series over different variable contexts are combined."""


@dataclass(frozen=True)
class VarSpec:
    """A formal variable: its name and ℤ-grading.

    ``laurent`` variables may carry negative exponents (used for the
    residue variable of the Caporaso-Harris recursion).
    """

    name: str
    degree: int = 0
    laurent: bool = False


def _min_cap(a: Cap, b: Cap) -> Cap:
    if a is None:
        return b
    if b is None:
        return a
    return a if a < b else b


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class TruncSeries:
    """Immutable truncated power series.

    Parameters
    ----------
    variables
        Ordered variable context (names must be unique).
    terms
        Mapping from exponent tuples to coefficients.  Zero coefficients and
        terms above the caps are dropped on construction.
    caps
        Per-variable maximum certified exponent, ``None`` for exact.
    """

    __slots__ = ("_vars", "_terms", "_caps", "_index")

    def __init__(
        self,
        variables: Sequence[VarSpec],
        terms: Optional[Mapping[Exponent, Scalar]] = None,
        caps: Optional[Sequence[Cap]] = None,
    ):
        variables = tuple(variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate variable names in {names}")
        if caps is None:
            caps = (None,) * len(variables)
        caps = tuple(caps)
        if len(caps) != len(variables):
            raise ContextError("caps length does not match variable count")
        self._vars = variables
        self._caps = caps
        self._index = {n: i for i, n in enumerate(names)}
        self._terms = _normalize(terms or {}, variables, caps)

    @classmethod
    def _raw(cls, variables, terms, caps, index=None) -> "TruncSeries":
        # terms must already be normalized
        obj = cls.__new__(cls)
        obj._vars = variables
        obj._caps = caps
        obj._terms = terms
        obj._index = index if index is not None else {v.name: i for i, v in enumerate(variables)}
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[VarSpec], caps=None) -> "TruncSeries":
        return cls(variables, {}, caps)

    @classmethod
    def constant(cls, variables: Sequence[VarSpec], value: Scalar, caps=None) -> "TruncSeries":
        return cls(variables, {(0,) * len(variables): value}, caps)

    @classmethod
    def one(cls, variables: Sequence[VarSpec], caps=None) -> "TruncSeries":
        return cls.constant(variables, 1, caps)

    @classmethod
    def monomial(
        cls,
        variables: Sequence[VarSpec],
        powers: Mapping[str, int],
        coeff: Scalar = 1,
        caps=None,
    ) -> "TruncSeries":
        variables = tuple(variables)
        index = {v.name: i for i, v in enumerate(variables)}
        exp = [0] * len(variables)
        for name, k in powers.items():
            if name not in index:
                raise ContextError(f"unknown variable {name!r}")
            exp[index[name]] = k
        return cls(variables, {tuple(exp): coeff}, caps)

    @classmethod
    def variable(cls, variables: Sequence[VarSpec], name: str, caps=None) -> "TruncSeries":
        return cls.monomial(variables, {name: 1}, 1, caps)

    # -- accessors ------------------------------------------------------
    @property
    def variables(self) -> tuple:
        return self._vars

    @property
    def names(self) -> tuple:
        return tuple(v.name for v in self._vars)

    @property
    def caps(self) -> tuple:
        return self._caps

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"unknown variable {name!r}") from None

    def cap(self, name: str) -> Cap:
        return self._caps[self.index(name)]

    def coefficient(self, powers: Union[Exponent, Mapping[str, int]]) -> Fraction:
        if isinstance(powers, Mapping):
            exp = [0] * len(self._vars)
            for name, k in powers.items():
                exp[self.index(name)] = k
            powers = tuple(exp)
        return self._terms.get(tuple(powers), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def with_caps(self, caps: Mapping[str, Cap]) -> "TruncSeries":
        """Tighten caps (a cap can only decrease)."""
        new = list(self._caps)
        for name, c in caps.items():
            new[self.index(name)] = _min_cap(new[self.index(name)], c)
        return TruncSeries(self._vars, self._terms, new)

    def select(self, predicate) -> "TruncSeries":
        """Keep only the terms whose exponent satisfies ``predicate``."""
        kept = {e: c for e, c in self._terms.items() if predicate(e)}
        return TruncSeries._raw(self._vars, kept, self._caps, self._index)

    def map_coefficients(self, fn) -> "TruncSeries":
        return TruncSeries(self._vars, {e: fn(e, c) for e, c in self._terms.items()}, self._caps)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "TruncSeries") -> None:
        if self._vars != other._vars:
            raise ContextError(
                f"incompatible variable contexts {self.names} and {other.names}"
            )

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries.constant(self._vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        caps = tuple(map(_min_cap, self._caps, other._caps))
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        if caps != self._caps or caps != other._caps:
            out = _drop_above(out, caps)
        return TruncSeries._raw(self._vars, out, caps, self._index)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries._raw(
            self._vars, {e: -c for e, c in self._terms.items()}, self._caps, self._index
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: Scalar) -> "TruncSeries":
        k = _as_fraction(k)
        if not k:
            return TruncSeries._raw(self._vars, {}, self._caps, self._index)
        return TruncSeries._raw(
            self._vars, {e: c * k for e, c in self._terms.items()}, self._caps, self._index
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        caps = tuple(map(_min_cap, self._caps, other._caps))
        bounded = [(i, c) for i, c in enumerate(caps) if c is not None]
        out: dict = {}
        get = out.get
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(map(add, ea, eb))
                if bounded and any(e[i] > c for i, c in bounded):
                    continue
                out[e] = get(e, 0) + ca * cb
        out = {e: c for e, c in out.items() if c}
        return TruncSeries._raw(self._vars, out, caps, self._index)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(Fraction(1) / _as_fraction(k))
        return NotImplemented

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = TruncSeries.one(self._vars, self._caps)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derive(self, name: str) -> "TruncSeries":
        """Formal partial derivative; the cap of ``name`` drops by one."""
        i = self.index(name)
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                out[ne] = c * k
        caps = self._caps
        if caps[i] is not None:
            caps = caps[:i] + (caps[i] - 1,) + caps[i + 1 :]
        return TruncSeries._raw(self._vars, out, caps, self._index)

    def euler(self, name: str) -> "TruncSeries":
        """``v ∂/∂v``: multiply each term by its exponent in ``v``.  Caps unchanged."""
        i = self.index(name)
        out = {e: c * e[i] for e, c in self._terms.items() if e[i]}
        return TruncSeries._raw(self._vars, out, self._caps, self._index)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(self._vars, other, self._caps)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self._vars == other._vars
            and self._caps == other._caps
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self._vars, self._caps, frozenset(self._terms.items())))

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Equality of all coefficients both series certify."""
        self._check(other)
        caps = tuple(map(_min_cap, self._caps, other._caps))
        a = _drop_above(self._terms, caps)
        b = _drop_above(other._terms, caps)
        return a == b

    def __repr__(self) -> str:
        if not self._terms:
            return "TruncSeries(0)"
        parts = []
        for e in sorted(self._terms):
            mono = "*".join(
                f"{v.name}^{k}" if k != 1 else v.name
                for v, k in zip(self._vars, e)
                if k
            )
            c = self._terms[e]
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "TruncSeries(" + " + ".join(parts) + ")"

    # -- serialization --------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "vars": [
                {"name": v.name, "degree": v.degree, "cap": c}
                for v, c in zip(self._vars, self._caps)
            ],
            "terms": [
                {
                    "exp": list(e),
                    "num": str(self._terms[e].numerator),
                    "den": str(self._terms[e].denominator),
                }
                for e in sorted(self._terms)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TruncSeries":
        variables = [VarSpec(v["name"], int(v["degree"])) for v in obj["vars"]]
        caps = [v["cap"] for v in obj["vars"]]
        terms = {
            tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"])) for t in obj["terms"]
        }
        return cls(variables, terms, caps)

    @classmethod
    def from_json(cls, text: str) -> "TruncSeries":
        return cls.from_json_obj(json.loads(text))


def _normalize(terms, variables, caps) -> dict:
    out = {}
    n = len(variables)
    bounded = [(i, c) for i, c in enumerate(caps) if c is not None]
    for e, c in terms.items():
        e = tuple(e)
        if len(e) != n:
            raise ContextError(f"exponent {e} does not match {n} variables")
        for v, k in zip(variables, e):
            if k < 0 and not v.laurent:
                raise ValueError(f"negative exponent for non-Laurent variable {v.name}")
        if any(e[i] > cap for i, cap in bounded):
            continue
        c = _as_fraction(c)
        if c:
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _drop_above(terms: Mapping, caps) -> dict:
    bounded = [(i, c) for i, c in enumerate(caps) if c is not None]
    if not bounded:
        return dict(terms)
    return {e: c for e, c in terms.items() if all(e[i] <= cap for i, cap in bounded)}


# -- module-level operations -------------------------------------------------

def add_series(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def mul_series(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def derive(a: TruncSeries, name: str) -> TruncSeries:
    return a.derive(name)


def _check_nilpotent(a: TruncSeries, what: str) -> None:
    """Every term must raise some capped, non-Laurent variable, so powers die out."""
    capped = [
        i
        for i, (v, c) in enumerate(zip(a.variables, a.caps))
        if c is not None and not v.laurent
    ]
    for e, _ in a.items():
        if not any(e[i] > 0 for i in capped):
            raise ValueError(f"{what} would not terminate: a term has no capped variable")


def exp_trunc(a: TruncSeries) -> TruncSeries:
    """``Σ a^k/k!`` within the caps of ``a``.

    Requires a zero constant term and that every term of ``a`` has a positive
    exponent in some capped, non-Laurent variable, which makes the sum finite.
    """
    if a.constant_term():
        raise ValueError("exp_trunc needs a series with zero constant term")
    _check_nilpotent(a, "exp_trunc")
    result = TruncSeries.one(a.variables, a.caps)
    power = result
    k = 0
    while True:
        k += 1
        power = (power * a).scale(Fraction(1, k))
        if power.is_zero():
            return result
        result = result + power


def log_trunc(a: TruncSeries) -> TruncSeries:
    """``log a = Σ (−1)^{k+1} (a−1)^k/k`` for a series with constant term 1."""
    if a.constant_term() != 1:
        raise ValueError("log_trunc needs constant term 1")
    b = a - 1
    _check_nilpotent(b, "log_trunc")
    result = TruncSeries.zero(a.variables, a.caps)
    power = TruncSeries.one(a.variables, a.caps)
    k = 0
    while True:
        k += 1
        power = power * b
        if power.is_zero():
            return result
        result = result + power.scale(Fraction((-1) ** (k + 1), k))


def residue(a: TruncSeries, name: str) -> TruncSeries:
    """Coefficient of ``name^-1``, returned over the context without ``name``."""
    i = a.index(name)
    if not a.variables[i].laurent and any(e[i] < 0 for e, _ in a.items()):
        raise ValueError("negative exponent in a non-Laurent variable")
    variables = a.variables[:i] + a.variables[i + 1 :]
    caps = a.caps[:i] + a.caps[i + 1 :]
    out = {e[:i] + e[i + 1 :]: c for e, c in a.items() if e[i] == -1}
    return TruncSeries(variables, out, caps)


def taylor_exp_coeffs(kmax: int) -> list:
    """``[1/k! for k in 0..kmax]``."""
    return [Fraction(1, factorial(k)) for k in range(kmax + 1)]
