"""Signatures (Z^r, L, iota) and their structure theory.

A signature couples a nilpotent integer matrix L acting on Z^r with an
injective embedding iota of ker L into the circle group.  This module
computes the kernel filtration and order, the unipotent automorphism
I + L with its terminating series inverse, binomial powers, the derived
signature on the image of L, and verification / bounded search for
signature morphisms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .abelian import IntLattice, IntMatrix, image, kernel, member
from .phase import (
    Phase,
    PhaseBasis,
    embedding_is_injective,
    phase_combination,
)


class SignatureError(ValueError):
    pass


class NonNilpotentError(SignatureError):
    """L^rank != 0."""


class NonInjectiveIotaError(SignatureError):
    """iota has a nontrivial kernel on ker L."""

    def __init__(self, witness):
        super().__init__(f"iota is not injective; kernel witness {witness}")
        self.witness = witness


@dataclass(frozen=True)
class Signature:
    """rank, nilpotent matrix, and phases of iota on the canonical kernel basis.

    ``iota`` is indexed by the canonical Hermite basis of kernel(L), so equal
    signatures have identical field values.
    """

    rank: int
    L: IntMatrix
    iota: tuple[Phase, ...]
    phase_basis: PhaseBasis

    def __post_init__(self):
        if self.L.rows != self.rank or self.L.cols != self.rank:
            raise SignatureError("L must be rank x rank")
        for p in self.iota:
            if len(p.coeffs) != self.phase_basis.size:
                raise SignatureError("iota phase does not match the phase basis")

    def kernel_lattice(self) -> IntLattice:
        return kernel(self.L)

    def iota_phase(self, v: Sequence[int]) -> Phase:
        """iota evaluated on an arbitrary element of ker L."""
        ok, witness = member(v, self.kernel_lattice())
        if not ok:
            raise SignatureError(f"{tuple(v)} is not in ker L")
        return phase_combination(list(self.iota), witness)


@dataclass(frozen=True)
class SignatureMorphism:
    """An integer matrix intertwining two signatures (target_rank x source_rank)."""

    matrix: IntMatrix


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    rank: int
    nilpotency_degree: Optional[int]
    iota_injective: bool
    kernel_basis: IntLattice
    errors: tuple[str, ...] = ()
    witness: Optional[tuple[int, ...]] = None


def nilpotency_degree(L: IntMatrix) -> Optional[int]:
    """Minimal d with L^d = 0, or None if L is not nilpotent."""
    n = L.rows
    power = IntMatrix.identity(n)
    for d in range(n + 1):
        if power.is_zero():
            return d
        power = power * L
    return None


def validate(sig: Signature) -> ValidationReport:
    errors = []
    witness = None
    degree = nilpotency_degree(sig.L)
    if degree is None:
        errors.append("non-nilpotent")
    ker = kernel(sig.L)
    if len(sig.iota) != ker.rank:
        errors.append(
            f"iota must list one phase per canonical kernel basis vector "
            f"({ker.rank} needed, {len(sig.iota)} given)"
        )
        injective = False
    else:
        injective, witness = embedding_is_injective(ker.rank, list(sig.iota))
        if not injective:
            errors.append("iota not injective")
    return ValidationReport(
        valid=not errors,
        rank=sig.rank,
        nilpotency_degree=degree,
        iota_injective=injective,
        kernel_basis=ker,
        errors=tuple(errors),
        witness=witness,
    )


def require_valid(sig: Signature) -> ValidationReport:
    report = validate(sig)
    if report.nilpotency_degree is None:
        raise NonNilpotentError(f"L^{sig.rank} != 0")
    if not report.valid:
        if not report.iota_injective and report.witness is not None:
            raise NonInjectiveIotaError(report.witness)
        raise SignatureError("; ".join(report.errors))
    return report


def filtration(sig: Signature) -> list[IntLattice]:
    """The kernel chain ker(L^0) ⊆ ker(L^1) ⊆ ... up to the full lattice."""
    require_valid(sig)
    chain = []
    power = IntMatrix.identity(sig.rank)
    while True:
        lat = kernel(power)
        chain.append(lat)
        if lat.rank == sig.rank:
            return chain
        power = power * sig.L


def order(sig: Signature) -> int:
    """Least n with ker(L^n) everything; 0 for the trivial signature."""
    report = require_valid(sig)
    return report.nilpotency_degree


def phi(sig: Signature) -> IntMatrix:
    return IntMatrix.identity(sig.rank) + sig.L


def phi_inverse(sig: Signature) -> IntMatrix:
    """Terminating alternating series I - L + L^2 - ... (exact inverse of I + L)."""
    degree = nilpotency_degree(sig.L)
    if degree is None:
        raise NonNilpotentError("inverse series does not terminate")
    acc = IntMatrix.zeros(sig.rank, sig.rank)
    power = IntMatrix.identity(sig.rank)
    for j in range(max(degree, 1)):
        acc = acc + (power if j % 2 == 0 else -power)
        power = power * sig.L
    if sig.rank and (phi(sig) * acc) != IntMatrix.identity(sig.rank):
        raise SignatureError("series inverse failed")  # pragma: no cover
    return acc


def binomial_power(sig: Signature, n: int) -> IntMatrix:
    """(I+L)^n as the binomial sum over powers of L; cross-checked internally."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    degree = nilpotency_degree(sig.L)
    if degree is None:
        raise NonNilpotentError("binomial formula needs nilpotent L")
    acc = IntMatrix.zeros(sig.rank, sig.rank)
    power = IntMatrix.identity(sig.rank)
    for j in range(min(n, max(degree - 1, 0)) + 1):
        acc = acc + power.scale(math.comb(n, j))
        power = power * sig.L
    iterated = phi(sig).mat_pow(n)
    if acc != iterated:
        raise SignatureError("binomial identity violated")  # pragma: no cover
    return acc


def derived_signature(sig: Signature) -> Signature:
    """The signature induced on the image of L; order drops by exactly one.

    The image basis B gives the coordinate change: L restricted to the image
    is integral because L(image) ⊆ image, and the new iota evaluates the old
    one on the back-mapped kernel vectors (which land in ker L).
    """
    require_valid(sig)
    img = image(sig.L)
    m = img.rank
    if m == 0:
        return Signature(0, IntMatrix.zeros(0, 0), (), sig.phase_basis)
    cols = []
    for b in img.basis.columns():
        w = sig.L.apply(b)
        ok, witness = member(w, img)
        if not ok:  # pragma: no cover - invariance is structural
            raise SignatureError("image of L is not L-invariant")
        cols.append(witness)
    restricted = IntMatrix.from_columns(cols, m)
    new_iota = []
    for v in kernel(restricted).basis.columns():
        back = img.basis.apply(v)
        new_iota.append(sig.iota_phase(back))
    return Signature(m, restricted, tuple(new_iota), sig.phase_basis)


def derived_chain_orders(sig: Signature) -> list[int]:
    """Orders along repeated derivation, [ord, ord-1, ..., 1]; empty for order 1."""
    current = sig
    orders = []
    o = order(sig)
    if o <= 1:
        return []
    while o >= 1:
        orders.append(o)
        if o == 1:
            break
        current = derived_signature(current)
        o = order(current)
    return orders


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    commutes: bool
    phases_match: bool
    injective: bool
    detail: str = ""


def verify_morphism(src: Signature, tgt: Signature, a: IntMatrix) -> MorphismReport:
    """Check L_tgt·A = A·L_src and iota_tgt(A·v) = iota_src(v) on ker L_src.

    Injectivity of A is reported as a consequence (full column rank via SNF),
    not required as an input.
    """
    if a.rows != tgt.rank or a.cols != src.rank:
        return MorphismReport(False, False, False, False, "shape mismatch")
    commutes = (tgt.L * a) == (a * src.L)
    phases_match = True
    detail = ""
    if commutes:
        for j, v in enumerate(kernel(src.L).basis.columns()):
            imagev = a.apply(v)
            try:
                got = tgt.iota_phase(imagev)
            except SignatureError:
                phases_match = False
                detail = f"A maps kernel vector {v} outside ker L_tgt"
                break
            want = src.iota[j]
            if got != want:
                phases_match = False
                detail = f"phase mismatch on kernel basis vector {v}"
                break
    else:
        phases_match = False
        detail = "intertwining relation fails"
    injective = image(a).rank == src.rank
    return MorphismReport(
        ok=commutes and phases_match,
        commutes=commutes,
        phases_match=phases_match,
        injective=injective,
        detail=detail,
    )


def _commutant_kernel(src: Signature, tgt: Signature) -> IntLattice:
    """Integer solutions of L_tgt·A - A·L_src = 0, on column-major vec(A)."""
    r = src.rank
    n = r * r
    rows = []
    for col_block in range(r):
        for i in range(r):
            row = [0] * n
            # (I ⊗ L_tgt) part
            for k in range(r):
                row[col_block * r + k] += tgt.L.entries[i][k]
            # -(L_srcᵀ ⊗ I) part
            for k in range(r):
                row[k * r + i] -= src.L.entries[k][col_block]
            rows.append(row)
    return kernel(IntMatrix.from_rows(rows, n))


def search_isomorphism(
    a: Signature, b: Signature, entry_bound: int = 3
) -> Optional[SignatureMorphism]:
    """Bounded-exhaustive search for a signature isomorphism a -> b.

    Enumerates, in a fixed deterministic order, all integer matrices with
    entries in [-entry_bound, entry_bound] that intertwine the two matrices,
    and returns the first unimodular one whose phase conditions hold in both
    directions.  Absence of a result within the bound is NOT a proof of
    non-isomorphism.
    """
    require_valid(a)
    require_valid(b)
    if a.rank != b.rank or order(a) != order(b):
        return None
    if [lat.rank for lat in filtration(a)] != [lat.rank for lat in filtration(b)]:
        return None
    r = a.rank
    if r == 0:
        return SignatureMorphism(IntMatrix.zeros(0, 0))
    ker = _commutant_kernel(a, b)
    if ker.rank == 0:
        return None
    basis = ker.basis
    d = basis.cols
    pivots = []
    for j in range(d):
        col = basis.column(j)
        pivots.append(next(i for i, x in enumerate(col) if x != 0))
    # Coefficient bounds from triangular substitution against the entry box.
    bounds: list[int] = []
    for i in range(d):
        slack = entry_bound + sum(
            bounds[j] * abs(basis.entries[pivots[i]][j]) for j in range(i)
        )
        bounds.append(slack // abs(basis.entries[pivots[i]][i]))
    for coeffs in itertools.product(*[range(-bd, bd + 1) for bd in bounds]):
        if not any(coeffs):
            continue
        vec = basis.apply(coeffs)
        if any(abs(x) > entry_bound for x in vec):
            continue
        mat = IntMatrix.from_rows(
            [[vec[j * r + i] for j in range(r)] for i in range(r)], r
        )
        if not mat.is_unimodular():
            continue
        if not verify_morphism(a, b, mat).ok:
            continue
        if not verify_morphism(b, a, mat.inverse_unimodular()).ok:
            continue
        return SignatureMorphism(mat)
    return None
