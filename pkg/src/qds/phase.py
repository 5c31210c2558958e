"""Exact arithmetic in the circle group T.

An element is represented as exp(2*pi*i*(q0 + sum_j coeffs[j]*alpha_j)) with
rational q0 and coeffs over a declared basis of irrationals alpha_j.  The
basis comes with the *declaration* that {1, alpha_1, ..., alpha_m} is
Q-linearly independent; every exactness claim in this module is conditional
on that declaration (it is not checkable from decimal data), which is why
reports downstream carry ``INDEPENDENCE_CAVEAT``.

Under the declaration, equality, torsion, membership in finitely generated
subgroups and injectivity of embeddings Z^s -> T are all decidable by exact
integer linear algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .abelian import IntLattice, IntMatrix, hnf, kernel, solve_integer

INDEPENDENCE_CAVEAT = (
    "Exactness caveat: Q-linear independence of {1} together with the "
    "declared irrational basis values is assumed as declared, not verified; "
    "all exact equalities and memberships are conditional on it."
)


class BasisMismatchError(ValueError):
    """Raised when phases over different bases are combined."""


@dataclass(frozen=True)
class PhaseBasis:
    """Named irrationals backing the symbolic layer.

    ``values`` are double-precision stand-ins used only for simulation and
    report rendering, never for exactness decisions.
    """

    names: tuple[str, ...]
    values: tuple[float, ...]
    independent: bool = True

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ValueError("names and values must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        for v in self.values:
            if not 0.0 < v < 1.0:
                raise ValueError("basis values must lie in (0, 1)")

    @property
    def size(self) -> int:
        return len(self.names)


def _mod1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


@dataclass(frozen=True)
class Phase:
    """One circle element: q0 normalized into [0,1), one rational per basis name.

    Structural equality of (q0, coeffs) is exact equality in T under the
    independence declaration.
    """

    q0: Fraction
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        q0 = _mod1(Fraction(self.q0))
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @staticmethod
    def zero(basis: PhaseBasis) -> "Phase":
        return Phase(Fraction(0), (Fraction(0),) * basis.size)

    @staticmethod
    def rational(q: Fraction | int | str, basis: PhaseBasis) -> "Phase":
        return Phase(Fraction(q), (Fraction(0),) * basis.size)

    @staticmethod
    def basis_element(index: int, basis: PhaseBasis) -> "Phase":
        coeffs = [Fraction(0)] * basis.size
        coeffs[index] = Fraction(1)
        return Phase(Fraction(0), tuple(coeffs))


def _check_compatible(a: Phase, b: Phase) -> None:
    if len(a.coeffs) != len(b.coeffs):
        raise BasisMismatchError(
            f"phases live over bases of different sizes ({len(a.coeffs)} vs {len(b.coeffs)})"
        )


def phase_mul(a: Phase, b: Phase) -> Phase:
    _check_compatible(a, b)
    return Phase(a.q0 + b.q0, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def phase_inv(a: Phase) -> Phase:
    return Phase(-a.q0, tuple(-x for x in a.coeffs))


def phase_pow(a: Phase, n: int) -> Phase:
    return Phase(n * a.q0, tuple(n * x for x in a.coeffs))


def phase_combination(phases: Sequence[Phase], exponents: Sequence[int]) -> Phase:
    """Product of phases[i] ** exponents[i]."""
    if len(phases) != len(exponents):
        raise ValueError("length mismatch")
    width = len(phases[0].coeffs) if phases else 0
    acc = Phase(Fraction(0), (Fraction(0),) * width)
    for p, n in zip(phases, exponents):
        if n:
            acc = phase_mul(acc, phase_pow(p, n))
    return acc


def is_identity(a: Phase) -> bool:
    return a.q0 == 0 and all(c == 0 for c in a.coeffs)


def is_torsion(a: Phase) -> tuple[bool, Optional[int]]:
    """Torsion iff no irrational part; the order is then the denominator of q0."""
    if any(c != 0 for c in a.coeffs):
        return False, None
    return True, a.q0.denominator


def numeric_value(a: Phase, basis: PhaseBasis) -> float:
    """Double-precision value of the phase angle in [0, 1) (simulation only)."""
    if len(a.coeffs) != basis.size:
        raise BasisMismatchError("phase and basis sizes differ")
    total = math.fsum([float(a.q0)] + [float(c) * v for c, v in zip(a.coeffs, basis.values)])
    return total % 1.0


def exact_value(a: Phase, basis: PhaseBasis) -> Fraction:
    """Exact angle in [0,1) of the phase *as simulated*.

    The declared double values are themselves exact binary rationals, so the
    simulated system has an exact rational angle; this is what the
    closed-form evaluators use to avoid float drift.
    """
    if len(a.coeffs) != basis.size:
        raise BasisMismatchError("phase and basis sizes differ")
    total = a.q0
    for c, v in zip(a.coeffs, basis.values):
        total += c * Fraction(v)
    return _mod1(total)


@dataclass(frozen=True)
class PhaseGroup:
    """Finitely generated subgroup of T given by a (possibly redundant) generator list."""

    generators: tuple[Phase, ...]
    basis: PhaseBasis

    def __post_init__(self):
        for g in self.generators:
            if len(g.coeffs) != self.basis.size:
                raise BasisMismatchError("generator does not match the ambient basis")


def _denominator_cleared_columns(phases: Sequence[Phase], width: int) -> tuple[list[list[int]], list[int]]:
    """Integer matrix whose columns are the phases scaled row-wise, plus scales.

    Row 0 is the rational part; rows 1..width are the irrational coefficients.
    Each row is scaled by the lcm of the denominators appearing in it.
    """
    rows: list[list[Fraction]] = []
    rows.append([p.q0 for p in phases])
    for j in range(width):
        rows.append([p.coeffs[j] for p in phases])
    scales = []
    out = []
    for row in rows:
        denom = 1
        for x in row:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        scales.append(denom)
        out.append([int(x * denom) for x in row])
    return out, scales


def group_member(t: Phase, g: PhaseGroup) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Decide t in <generators>; a witness n satisfies prod g_i**n_i = t.

    Clears denominators row by row and solves the integer linear system; the
    rational row only needs to match modulo Z, handled by adjoining a column
    for the unit 1 in the q0 coordinate.
    """
    if len(t.coeffs) != g.basis.size:
        raise BasisMismatchError("phase does not match the group's basis")
    width = g.basis.size
    gens = list(g.generators)
    cols, scales = _denominator_cleared_columns(gens + [t], width)
    n = len(gens)
    # System rows: [generators | unit] * x = t, scaled per row.
    mat_rows = []
    rhs = []
    for i, (row, scale) in enumerate(zip(cols, scales)):
        unit = scale if i == 0 else 0  # q0 row matches only mod Z
        mat_rows.append(row[:n] + [unit])
        rhs.append(row[n])
    mat = IntMatrix.from_rows(mat_rows, n + 1)
    sol = solve_integer(mat, rhs)
    if sol is None:
        return False, None
    return True, tuple(sol[:n])


def subgroup_leq(a: PhaseGroup, b: PhaseGroup) -> tuple[bool, Optional[Phase]]:
    """Is <a> contained in <b>?  On failure returns an offending generator."""
    if a.basis != b.basis:
        raise BasisMismatchError("groups live over different bases")
    for gen in a.generators:
        ok, _ = group_member(gen, b)
        if not ok:
            return False, gen
    return True, None


def intersection_is_trivial(a: PhaseGroup, b: PhaseGroup) -> tuple[bool, Optional[Phase]]:
    """Whether <a> ∩ <b> = {1}; returns a common nontrivial element otherwise.

    The common elements are the image of the integer kernel of
    [A | -B | unit] under n -> prod a_i**n_i, so triviality is checked on a
    kernel basis.
    """
    if a.basis != b.basis:
        raise BasisMismatchError("groups live over different bases")
    width = a.basis.size
    gens = list(a.generators) + list(b.generators)
    if not a.generators or not b.generators:
        return True, None
    cols, scales = _denominator_cleared_columns(gens, width)
    na = len(a.generators)
    rows = []
    for i, (row, scale) in enumerate(zip(cols, scales)):
        unit = scale if i == 0 else 0
        rows.append(row[:na] + [-x for x in row[na:]] + [unit])
    mat = IntMatrix.from_rows(rows, len(gens) + 1)
    for col in kernel(mat).basis.columns():
        element = phase_combination(list(a.generators), col[:na])
        if not is_identity(element):
            return False, element
    return True, None


def group_has_torsion(g: PhaseGroup) -> tuple[bool, Optional[Phase]]:
    """Does <g> contain a nontrivial root of unity?

    Torsion elements are integer combinations killing every irrational row
    but not the rational row (mod Z); checked on a kernel basis of the
    coefficient matrix.
    """
    width = g.basis.size
    if not g.generators:
        return False, None
    coeff_rows = []
    for j in range(width):
        row = [p.coeffs[j] for p in g.generators]
        denom = 1
        for x in row:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        coeff_rows.append([int(x * denom) for x in row])
    mat = IntMatrix.from_rows(coeff_rows, len(g.generators))
    for col in kernel(mat).basis.columns():
        element = phase_combination(list(g.generators), col)
        if not is_identity(element):
            return True, element
    return False, None


def embedding_is_injective(
    domain_rank: int, images: Sequence[Phase]
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Is n -> prod images[j]**n_j injective on Z^domain_rank?

    Injectivity fails iff the integer kernel of the irrational coefficient
    matrix is nontrivial: any rational-only combination has some multiple
    landing in Z.  The witness returned is a nonzero n mapping to 1.
    """
    if len(images) != domain_rank:
        raise ValueError("need one image per generator of Z^s")
    if domain_rank == 0:
        return True, None
    width = len(images[0].coeffs)
    for p in images:
        if len(p.coeffs) != width:
            raise BasisMismatchError("images live over different bases")
    coeff_rows = []
    for j in range(width):
        row = [p.coeffs[j] for p in images]
        denom = 1
        for x in row:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        coeff_rows.append([int(x * denom) for x in row])
    if not coeff_rows:
        mat = IntMatrix.zeros(0, domain_rank)
    else:
        mat = IntMatrix.from_rows(coeff_rows, domain_rank)
    ker = kernel(mat)
    if ker.rank == 0:
        return True, None
    witness = ker.basis.column(0)
    residue = sum((n * p.q0 for n, p in zip(witness, images)), Fraction(0))
    order = _mod1(residue).denominator
    return False, tuple(order * x for x in witness)
