"""From a table of open-moduli Serre polynomials to the closed-moduli ones.

The generating series of the inputs places the equivariant Serre polynomial
of the open moduli space of (g, n)-curves (a degree-n symmetric function) at
lambda^(2g-2+n).  Applying the plethystic exponential, the exponential of
the gluing operator, and the plethystic logarithm produces the matching
series for the compactified spaces; a (g, n) answer is then read off the
component with lambda exponent 2g-2+n and p-weight n.  The two indices are
needed jointly: distinct (g, n) can share a lambda exponent (for instance
(0,5), (1,3) and (2,1) all sit at lambda^3) but never share a weight there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OffDiagonalError, PreconditionError
from .hodge import HodgePoly
from .partitions import Partition, format_partition, weight
from .plethysm import GluingMode, exp_gluing, plethystic_exp, plethystic_log
from .series import SymSeries, Truncation

SchurList = list[tuple[Partition, HodgePoly]]


def lambda_exponent(g: int, n: int) -> int:
    return 2 * g - 2 + n


def moduli_dim(g: int, n: int) -> int:
    return 3 * g - 3 + n


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 1 and lambda_exponent(g, n) > 0


class ModuliTable:
    """Map (genus, marked points) -> degree-n symmetric function at lambda^0,
    the equivariant Serre polynomial of the open moduli space."""

    def __init__(self, entries: dict[tuple[int, int], SymSeries]):
        self.entries: dict[tuple[int, int], SymSeries] = {}
        for (g, n), entry in sorted(entries.items()):
            if not is_stable(g, n):
                raise PreconditionError(
                    f"unstable table key (g, n) = ({g}, {n}): need n >= 1 and 2g-2+n > 0"
                )
            for (e, rho) in entry._terms:
                if e != 0 or weight(rho) != n:
                    raise PreconditionError(
                        f"entry ({g}, {n}) must be homogeneous of weight {n} at "
                        f"lambda^0; found a term at lambda^{e} with weight {weight(rho)}"
                    )
            self.entries[(g, n)] = entry

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuliTable):
            return NotImplemented
        if self.entries.keys() != other.entries.keys():
            return False
        return all(
            self.entries[key]._terms == other.entries[key]._terms
            for key in self.entries
        )

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self.entries)

    def withhold(self, g: int, n: int) -> "ModuliTable":
        """A copy with the (g, n) entry zeroed out."""
        if (g, n) not in self.entries:
            raise PreconditionError(f"no table entry ({g}, {n}) to withhold")
        remaining = {key: s for key, s in self.entries.items() if key != (g, n)}
        return ModuliTable(remaining)


def open_moduli_series(table: ModuliTable, trunc: Truncation) -> SymSeries:
    """Sum of lambda^(2g-2+n) times each table entry; entries beyond the
    truncation are ignored."""
    total = SymSeries.zero(trunc)
    for (g, n), entry in table.entries.items():
        e = lambda_exponent(g, n)
        if e > trunc.lambda_max:
            continue
        total = total + entry.with_truncation(trunc, lambda_shift=e)
    return total


def closed_moduli_series(
    open_series: SymSeries, mode: GluingMode = GluingMode.GRADED
) -> SymSeries:
    """The full pipeline: plethystic log of the glued plethystic exp."""
    return plethystic_log(exp_gluing(plethystic_exp(open_series), mode))


def slot_schur(closed: SymSeries, g: int, n: int) -> SchurList:
    """Schur decomposition of the (g, n) slot of the closed-moduli series."""
    if not is_stable(g, n):
        raise PreconditionError(f"({g}, {n}) is not a stable slot")
    e = lambda_exponent(g, n)
    if e > closed.trunc.lambda_max:
        raise PreconditionError(
            f"slot ({g}, {n}) sits at lambda^{e}, beyond truncation "
            f"{closed.trunc.lambda_max}"
        )
    return closed.schur_coefficients(e, n)


def required_inputs(g: int, n: int) -> list[tuple[int, int]]:
    """All stable (h, m) whose open-moduli polynomial can contribute to the
    (g, n) slot: h <= g and 2h + m <= 2g + n."""
    if not is_stable(g, n):
        raise PreconditionError(f"({g}, {n}) is not a stable slot")
    out = []
    for h in range(g + 1):
        for m in range(1, 2 * g + n - 2 * h + 1):
            if is_stable(h, m):
                out.append((h, m))
    return out


def satisfies_duality(schur_list: SchurList, d: int) -> bool:
    """Check the functional equation coefficient-wise: each Schur coefficient
    must be fixed by the duality flip at dimension d."""
    for _, coeff in schur_list:
        try:
            if coeff.dual(d) != coeff:
                return False
        except PreconditionError:
            return False
    return True


def stable_slots(lambda_max: int) -> list[tuple[int, int]]:
    """All stable (g, n) with 2g-2+n <= lambda_max, ordered by ascending
    lambda exponent, then ascending genus."""
    out = []
    for lam in range(1, lambda_max + 1):
        g = 0
        while lam + 2 - 2 * g >= 1:
            out.append((g, lam + 2 - 2 * g))
            g += 1
    return out


@dataclass
class SlotReport:
    """Everything the pipeline knows about one (g, n) answer."""

    g: int
    n: int
    lam: int
    dim: int
    equivariant: SchurList
    rank: HodgePoly
    hodge_diagonal: list[Fraction] | None
    off_diagonal: tuple[int, int] | None
    duality_ok: bool

    def to_json_obj(self) -> dict:
        """The published slot schema; defined only for diagonal slots."""
        if self.off_diagonal is not None:
            raise OffDiagonalError(*self.off_diagonal)
        return {
            "g": self.g,
            "n": self.n,
            "lambda": self.lam,
            "dim": self.dim,
            "schur": [
                {
                    "partition": list(mu),
                    "coeff_q": _json_coeffs(coeff.q_coefficient_list()),
                }
                for mu, coeff in self.equivariant
            ],
            "rank_q": _json_coeffs(self.rank.q_coefficient_list()),
            "duality": self.duality_ok,
        }

    def render_text(self) -> str:
        lines = [f"slot M[{self.g},{self.n}]: lambda = {self.lam}, dim = {self.dim}"]
        if self.equivariant:
            for mu, coeff in self.equivariant:
                body = coeff.render_q() if coeff.is_diagonal() else coeff.render()
                lines.append(f"schur: s{format_partition(mu)} * ({body})")
        else:
            lines.append("schur: 0")
        rank_body = self.rank.render_q() if self.rank.is_diagonal() else self.rank.render()
        lines.append(f"rank: {rank_body}")
        if self.hodge_diagonal is not None:
            values = ", ".join(str(c) for c in self.hodge_diagonal) or "0"
            lines.append(f"hodge: h^{{k,k}} = {values}")
        else:
            i, j = self.off_diagonal
            lines.append(f"hodge: off-diagonal term at ({i}, {j})")
        lines.append(f"duality: {'ok' if self.duality_ok else 'FAIL'}")
        return "\n".join(lines)

    def render_latex(self) -> str:
        body = render_schur_latex(self.equivariant)
        return (
            f"\\overline{{M}}_{{{self.g},{self.n}}}:\\quad {body}"
        )


def build_slot_report(closed: SymSeries, g: int, n: int) -> SlotReport:
    equivariant = slot_schur(closed, g, n)
    e = lambda_exponent(g, n)
    rank = closed.rank(e, n)
    witness = rank.off_diagonal_witness()
    diagonal = rank.q_coefficient_list() if witness is None else None
    return SlotReport(
        g=g,
        n=n,
        lam=e,
        dim=moduli_dim(g, n),
        equivariant=equivariant,
        rank=rank,
        hodge_diagonal=diagonal,
        off_diagonal=witness,
        duality_ok=satisfies_duality(equivariant, moduli_dim(g, n)),
    )


def _json_coeffs(values: list[Fraction]) -> list[int | str]:
    return [int(c) if c.denominator == 1 else str(c) for c in values]


# -- paper-style LaTeX rendering ------------------------------------------------


def partition_latex(mu: Partition) -> str:
    """Exponent-compressed subscript, e.g. (2,2,1,1) -> "2^21^2"."""
    pieces = []
    idx = 0
    while idx < len(mu):
        run = 1
        while idx + run < len(mu) and mu[idx + run] == mu[idx]:
            run += 1
        pieces.append(str(mu[idx]) if run == 1 else f"{mu[idx]}^{run}")
        idx += run
    return "".join(pieces)


def render_schur_latex(schur_list: SchurList) -> str:
    """Group Schur terms under descending powers of q, the way equivariant
    Serre polynomials are usually displayed.  Requires diagonal coefficients."""
    groups: dict[int, list[tuple[Fraction, Partition]]] = {}
    for mu, coeff in schur_list:
        for k, c in coeff.q_coefficients():
            groups.setdefault(k, []).append((c, mu))
    if not groups:
        return "0"
    pieces: list[tuple[str, str]] = []
    for k in sorted(groups, reverse=True):
        entries = groups[k]
        sign = "-" if all(c < 0 for c, _ in entries) else "+"
        if sign == "-":
            entries = [(-c, mu) for c, mu in entries]
        qpow = "" if k == 0 else ("q" if k == 1 else f"q^{{{k}}}")
        if len(entries) == 1:
            c, mu = entries[0]
            mag = "" if c == 1 else str(c)
            piece = f"{mag}{qpow}s_{{{partition_latex(mu)}}}"
        else:
            inner = ""
            for c, mu in entries:
                mag = "" if abs(c) == 1 else str(abs(c))
                body = f"{mag}s_{{{partition_latex(mu)}}}"
                if not inner:
                    inner = body if c > 0 else f"-{body}"
                else:
                    inner += ("+" if c > 0 else "-") + body
            piece = f"{qpow}({inner})" if (qpow or sign == "-") else inner
        pieces.append((sign, piece))
    sign, piece = pieces[0]
    text = piece if sign == "+" else f"-{piece}"
    for sign, piece in pieces[1:]:
        text += sign + piece
    return text
