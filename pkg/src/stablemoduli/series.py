"""Truncated series of symmetric functions with an auxiliary grading variable.

A ``SymSeries`` is a finite sum of terms ``lambda^e * c * p_rho`` where the
``p_rho`` are power-sum monomials indexed by partitions and each coefficient
``c`` is a :class:`~stablemoduli.hodge.HodgePoly`.  The power-sum basis is
used internally everywhere (Adams operations, derivatives and the plethystic
maps are all local in it); Schur and complete-homogeneous functions appear
only at ingestion and presentation, through the conversions in this module.

Every series carries a :class:`Truncation` fixing the maximal retained
lambda exponent and, per exponent, the maximal retained p-weight.  Arithmetic
silently discards what falls outside; two series can be combined only when
their truncations agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Mapping, Union

from .characters import character
from .errors import PreconditionError
from .hodge import HodgePoly
from .partitions import (
    Partition,
    check_partition,
    format_partition,
    partitions_of,
    weight,
    z_factor,
)

Key = tuple[int, Partition]
Scalar = Union[int, Fraction]

CONSTANT_KEY: Key = (0, ())


@dataclass(frozen=True)
class Truncation:
    """Retention bounds: lambda exponent at most ``lambda_max``, and p-weight
    at lambda^e at most ``weight_caps[e]`` (a weakly increasing tuple)."""

    lambda_max: int
    weight_caps: tuple[int, ...]

    def __post_init__(self):
        if self.lambda_max < 0:
            raise ValueError("lambda_max must be nonnegative")
        if len(self.weight_caps) != self.lambda_max + 1:
            raise ValueError("need one weight cap per lambda exponent 0..lambda_max")
        previous = 0
        for cap in self.weight_caps:
            if cap < 0 or cap < previous:
                raise ValueError("weight caps must be nonnegative and monotone")
            previous = cap

    @classmethod
    def standard(cls, lambda_max: int) -> "Truncation":
        """The pipeline rule: weight cap 3e at lambda^e.

        A stable curve class at lambda^e is a union of pieces with exponents
        e_i >= 1 and marked-point counts n_i <= e_i + 2 <= 3 e_i, so total
        weight never exceeds 3e; nothing the pipeline needs is discarded.
        """
        return cls(lambda_max, tuple(3 * e for e in range(lambda_max + 1)))

    @classmethod
    def flat(cls, lambda_max: int, weight_max: int) -> "Truncation":
        """A uniform weight cap; used for table entries (which live at
        lambda^0) and for tests."""
        return cls(lambda_max, (weight_max,) * (lambda_max + 1))

    def cap(self, e: int) -> int:
        return self.weight_caps[e]

    def admits(self, e: int, w: int) -> bool:
        return 0 <= e <= self.lambda_max and w <= self.weight_caps[e]

    @property
    def max_weight(self) -> int:
        return self.weight_caps[-1] if self.weight_caps else 0


class SymSeries:
    """Truncated graded series in the power-sum basis."""

    __slots__ = ("trunc", "_terms")

    def __init__(
        self,
        trunc: Truncation,
        terms: Mapping[Key, HodgePoly | Scalar] | None = None,
    ):
        self.trunc = trunc
        clean: dict[Key, HodgePoly] = {}
        if terms:
            for (e, rho), coeff in terms.items():
                rho = check_partition(rho)
                if not isinstance(coeff, HodgePoly):
                    coeff = HodgePoly.const(coeff)
                if coeff and trunc.admits(e, weight(rho)):
                    clean[(e, rho)] = coeff
        self._terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, trunc: Truncation) -> "SymSeries":
        return cls(trunc)

    @classmethod
    def constant(cls, trunc: Truncation, value: HodgePoly | Scalar) -> "SymSeries":
        return cls(trunc, {CONSTANT_KEY: value})

    # -- protocol -------------------------------------------------------------

    def items(self) -> Iterator[tuple[Key, HodgePoly]]:
        """Terms in canonical order: lambda ascending, partitions reverse-lex."""
        return iter(
            sorted(self._terms.items(), key=lambda kv: (kv[0][0], _revlex(kv[0][1])))
        )

    def coefficient(self, e: int, rho: Partition) -> HodgePoly:
        return self._terms.get((e, tuple(rho)), HodgePoly.zero())

    def constant_term(self) -> HodgePoly:
        return self._terms.get(CONSTANT_KEY, HodgePoly.zero())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._terms == other._terms

    def __repr__(self) -> str:
        return f"SymSeries({self.render()!r})"

    # -- arithmetic -----------------------------------------------------------

    def _check_compatible(self, other: "SymSeries") -> None:
        if self.trunc != other.trunc:
            raise PreconditionError("series truncations do not match")

    def __add__(self, other: "SymSeries") -> "SymSeries":
        if not isinstance(other, SymSeries):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            s = out.get(key)
            s = coeff if s is None else s + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return _wrap(self.trunc, out)

    def __neg__(self) -> "SymSeries":
        return _wrap(self.trunc, {key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other: "SymSeries") -> "SymSeries":
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "SymSeries | HodgePoly | Scalar") -> "SymSeries":
        if isinstance(other, (int, Fraction)):
            other = HodgePoly.const(other)
        if isinstance(other, HodgePoly):
            return self.scale(other)
        if not isinstance(other, SymSeries):
            return NotImplemented
        self._check_compatible(other)
        trunc = self.trunc
        by_lam_a = _group_by_lambda(self._terms)
        by_lam_b = _group_by_lambda(other._terms)
        out: dict[Key, HodgePoly] = {}
        for e1, terms_a in by_lam_a.items():
            for e2, terms_b in by_lam_b.items():
                e = e1 + e2
                if e > trunc.lambda_max:
                    continue
                cap = trunc.cap(e)
                for rho, c1 in terms_a:
                    w1 = weight(rho)
                    if w1 > cap:
                        continue
                    for sigma, c2 in terms_b:
                        if w1 + weight(sigma) > cap:
                            continue
                        key = (e, _merge_parts(rho, sigma))
                        prod = c1 * c2
                        s = out.get(key)
                        s = prod if s is None else s + prod
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return _wrap(trunc, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymSeries":
        if k < 0:
            raise PreconditionError("negative power of a series")
        result = SymSeries.constant(self.trunc, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, coeff: HodgePoly | Scalar) -> "SymSeries":
        if not isinstance(coeff, HodgePoly):
            coeff = HodgePoly.const(coeff)
        out: dict[Key, HodgePoly] = {}
        for key, c in self._terms.items():
            s = c * coeff
            if s:
                out[key] = s
        return _wrap(self.trunc, out)

    # -- graded structure -------------------------------------------------------

    def component(self, e: int, n: int) -> "SymSeries":
        """Terms with lambda exponent exactly e and p-weight exactly n."""
        if e > self.trunc.lambda_max:
            raise PreconditionError(
                f"lambda exponent {e} exceeds truncation {self.trunc.lambda_max}"
            )
        return _wrap(
            self.trunc,
            {
                (le, rho): c
                for (le, rho), c in self._terms.items()
                if le == e and weight(rho) == n
            },
        )

    def lambda_component(self, e: int) -> "SymSeries":
        return _wrap(
            self.trunc,
            {(le, rho): c for (le, rho), c in self._terms.items() if le == e},
        )

    def weights_at(self, e: int) -> set[int]:
        return {weight(rho) for (le, rho) in self._terms if le == e}

    def with_truncation(self, trunc: Truncation, lambda_shift: int = 0) -> "SymSeries":
        """Re-truncate (and optionally shift every lambda exponent)."""
        out: dict[Key, HodgePoly] = {}
        for (e, rho), c in self._terms.items():
            e += lambda_shift
            if trunc.admits(e, weight(rho)):
                out[(e, rho)] = c
        return _wrap(trunc, out)

    # -- operations ---------------------------------------------------------------

    def adams(self, k: int) -> "SymSeries":
        """k-th Adams operation: p_n -> p_{kn}, lambda^e -> lambda^{ke}, and
        the coefficient action on u, v."""
        if k < 1:
            raise PreconditionError(f"Adams operation needs k >= 1, got {k}")
        if k == 1:
            return self
        trunc = self.trunc
        out: dict[Key, HodgePoly] = {}
        for (e, rho), c in self._terms.items():
            ke = k * e
            krho = tuple(k * part for part in rho)
            if trunc.admits(ke, weight(krho)):
                out[(ke, krho)] = c.adams(k)
        return _wrap(trunc, out)

    def diff_p(self, k: int) -> "SymSeries":
        """Formal partial derivative with respect to p_k."""
        if k < 1:
            raise PreconditionError(f"p-index must be positive, got {k}")
        out: dict[Key, HodgePoly] = {}
        for (e, rho), c in self._terms.items():
            m = rho.count(k)
            if not m:
                continue
            idx = rho.index(k)
            smaller = rho[:idx] + rho[idx + 1 :]
            key = (e, smaller)
            s = m * c
            prev = out.get(key)
            s = s if prev is None else prev + s
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return _wrap(self.trunc, out)

    def max_part(self) -> int:
        """Largest part appearing in any p-monomial (0 if none)."""
        return max((rho[0] for (_, rho) in self._terms if rho), default=0)

    def rank(self, e: int, n: int) -> HodgePoly:
        """Forget the symmetric-group action: n! times the p_1^n coefficient."""
        if n < 0:
            raise PreconditionError("weight must be nonnegative")
        return factorial(n) * self.coefficient(e, (1,) * n)

    def schur_coefficients(self, e: int, n: int) -> list[tuple[Partition, HodgePoly]]:
        """The (e, n) component expanded in the Schur basis.

        Returns (partition, coefficient) pairs in reverse-lexicographic
        order, zero coefficients dropped.  The coefficient of s_mu is
        sum over rho of chi^mu(rho) times the p_rho coefficient.
        """
        out = []
        for mu in partitions_of(n):
            total = HodgePoly.zero()
            for rho in partitions_of(n):
                c = self._terms.get((e, rho))
                if c is not None:
                    total = total + character(mu, rho) * c
            if total:
                out.append((mu, total))
        return out

    # -- text and JSON forms ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text: one "λ^e * (coeff) * p[rho]" term per line."""
        if not self._terms:
            return "0"
        return "\n".join(
            f"λ^{e} * ({c.render()}) * p{format_partition(rho)}"
            for (e, rho), c in self.items()
        )

    def to_json_obj(self) -> list[dict]:
        """Canonical JSON form: one object per term, coefficients keyed by
        "u^i v^j" monomial strings."""
        return [
            {
                "lambda": e,
                "p": list(rho),
                "coeff": {f"u^{i} v^{j}": str(c) for (i, j), c in coeff.items()},
            }
            for (e, rho), coeff in self.items()
        ]


def _wrap(trunc: Truncation, terms: dict[Key, HodgePoly]) -> SymSeries:
    series = SymSeries.__new__(SymSeries)
    series.trunc = trunc
    series._terms = terms
    return series


def _revlex(rho: Partition) -> tuple[int, ...]:
    return tuple(-part for part in rho) + (1,)


def _merge_parts(rho: Partition, sigma: Partition) -> Partition:
    return tuple(sorted(rho + sigma, reverse=True))


def _group_by_lambda(
    terms: dict[Key, HodgePoly]
) -> dict[int, list[tuple[Partition, HodgePoly]]]:
    grouped: dict[int, list[tuple[Partition, HodgePoly]]] = {}
    for (e, rho), c in terms.items():
        grouped.setdefault(e, []).append((rho, c))
    return grouped


# -- ordinary exp/log series machinery ------------------------------------------


def exp_series(f: SymSeries) -> SymSeries:
    """Ordinary exponential sum over f^m / m! of a series with no constant
    term.  Terminates because every term of f has positive lambda exponent
    or positive weight, and the truncation bounds both."""
    if f.constant_term():
        raise PreconditionError("exp needs a series with zero constant term")
    total = SymSeries.constant(f.trunc, 1)
    power = SymSeries.constant(f.trunc, 1)
    m = 1
    while True:
        power = power * f * Fraction(1, m)
        if not power:
            return total
        total = total + power
        m += 1


def log_series(g: SymSeries) -> SymSeries:
    """Ordinary logarithm sum over (-1)^(m-1) (g-1)^m / m of a series whose
    constant term is exactly 1."""
    if g.constant_term() != HodgePoly.one():
        raise PreconditionError("log needs a series with constant term 1")
    x = g - SymSeries.constant(g.trunc, 1)
    total = SymSeries.zero(g.trunc)
    power = SymSeries.constant(g.trunc, 1)
    m = 1
    while True:
        power = power * x
        if not power:
            return total
        sign = 1 if m % 2 else -1
        total = total + power * Fraction(sign, m)
        m += 1


# -- basis elements and conversions ------------------------------------------------


@lru_cache(maxsize=None)
def _h_p_coeffs(n: int) -> dict[Partition, Fraction]:
    """p-expansion of the complete homogeneous function h_n, read off from
    the generating identity sum h_m t^m = exp(sum p_k t^k / k) with the
    lambda variable standing in for t."""
    if n == 0:
        return {(): Fraction(1)}
    trunc = Truncation.flat(n, n)
    arg = SymSeries(
        trunc, {(k, (k,)): HodgePoly.const(Fraction(1, k)) for k in range(1, n + 1)}
    )
    expanded = exp_series(arg)
    return {
        rho: coeff.coefficient(0, 0)
        for (e, rho), coeff in expanded._terms.items()
        if e == n
    }


def _pmul(
    a: dict[Partition, Fraction], b: dict[Partition, Fraction]
) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for rho, ca in a.items():
        for sigma, cb in b.items():
            key = _merge_parts(rho, sigma)
            s = out.get(key, Fraction(0)) + ca * cb
            if s:
                out[key] = s
            else:
                del out[key]
    return out


@lru_cache(maxsize=None)
def _schur_p_coeffs(mu: Partition) -> dict[Partition, Fraction]:
    """p-expansion of the Schur function s_mu via the Jacobi-Trudi
    determinant det(h_{mu_i - i + j}) expanded over the h's."""
    rows = len(mu)
    if rows == 0:
        return {(): Fraction(1)}
    entries = [
        [_h_entry(mu[i] - i + j) for j in range(rows)] for i in range(rows)
    ]
    memo: dict[tuple[int, tuple[int, ...]], dict[Partition, Fraction]] = {}

    def minor(i: int, cols: tuple[int, ...]) -> dict[Partition, Fraction]:
        if i == rows:
            return {(): Fraction(1)}
        cached = memo.get((i, cols))
        if cached is not None:
            return cached
        total: dict[Partition, Fraction] = {}
        for idx, j in enumerate(cols):
            entry = entries[i][j]
            if entry is None:
                continue
            sub = minor(i + 1, cols[:idx] + cols[idx + 1 :])
            sign = -1 if idx % 2 else 1
            for rho, c in _pmul(entry, sub).items():
                s = total.get(rho, Fraction(0)) + sign * c
                if s:
                    total[rho] = s
                else:
                    del total[rho]
        memo[(i, cols)] = total
        return total

    return minor(0, tuple(range(rows)))


def _h_entry(m: int) -> dict[Partition, Fraction] | None:
    if m < 0:
        return None
    return _h_p_coeffs(m)


def power_sum(n: int, trunc: Truncation) -> SymSeries:
    """The power sum p_n as a series (at lambda^0)."""
    if n < 1:
        raise PreconditionError(f"power sum index must be positive, got {n}")
    return SymSeries(trunc, {(0, (n,)): 1})


def complete_homogeneous(n: int, trunc: Truncation) -> SymSeries:
    """The complete homogeneous function h_n in the p-basis (at lambda^0)."""
    if n < 1:
        raise PreconditionError(f"h index must be positive, got {n}")
    return SymSeries(trunc, {(0, rho): c for rho, c in _h_p_coeffs(n).items()})


def schur(mu, trunc: Truncation) -> SymSeries:
    """The Schur function s_mu in the p-basis (at lambda^0), by Jacobi-Trudi."""
    mu = check_partition(mu)
    return SymSeries(trunc, {(0, rho): c for rho, c in _schur_p_coeffs(mu).items()})


def schur_via_characters(mu, trunc: Truncation) -> SymSeries:
    """Independent route to s_mu: sum over rho of chi^mu(rho) p_rho / z_rho."""
    mu = check_partition(mu)
    n = weight(mu)
    if n > 12:
        raise PreconditionError(
            f"character-sum route is guarded to |mu| <= 12, got {n}"
        )
    terms = {}
    for rho in partitions_of(n):
        chi = character(mu, rho)
        if chi:
            terms[(0, rho)] = HodgePoly.const(Fraction(chi, z_factor(rho)))
    return SymSeries(trunc, terms)
