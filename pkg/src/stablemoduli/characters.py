"""Irreducible symmetric-group characters by the Murnaghan-Nakayama rule.

chi^mu(rho) is computed recursively: remove a border strip of length rho[0]
from mu in every possible way, with sign (-1)^(strip height), and recurse on
the rest of rho.  Strips are manipulated through first-column hook lengths
(beta numbers): removing a strip of length L means moving one beta number
down by L into an unoccupied slot, and the sign counts the occupied slots
jumped over.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import PreconditionError
from .partitions import Partition, weight


def _beta_numbers(mu: Partition) -> tuple[int, ...]:
    rows = len(mu)
    return tuple(mu[i] + (rows - 1 - i) for i in range(rows))


def _partition_from_betas(betas: frozenset[int], rows: int) -> Partition:
    ordered = sorted(betas, reverse=True)
    parts = tuple(b - (rows - 1 - i) for i, b in enumerate(ordered))
    return tuple(part for part in parts if part > 0)


@lru_cache(maxsize=None)
def _character(mu: Partition, rho: Partition) -> int:
    if not rho:
        return 1
    strip = rho[0]
    rest = rho[1:]
    betas = frozenset(_beta_numbers(mu))
    rows = len(mu)
    total = 0
    for b in betas:
        target = b - strip
        if target < 0 or target in betas:
            continue
        jumped = sum(1 for other in betas if target < other < b)
        sign = -1 if jumped % 2 else 1
        smaller = _partition_from_betas(betas - {b} | {target}, rows)
        total += sign * _character(smaller, rest)
    return total


def character(mu: Partition, rho: Partition) -> int:
    """chi^mu evaluated on the conjugacy class of cycle type rho."""
    mu = tuple(mu)
    rho = tuple(rho)
    if weight(mu) != weight(rho):
        raise PreconditionError(
            f"character needs |mu| = |rho|, got {weight(mu)} != {weight(rho)}"
        )
    return _character(mu, rho)
