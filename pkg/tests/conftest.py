"""Shared fixtures: the canonical example systems used throughout the suite."""

import math
from fractions import Fraction

import pytest

from qds.abelian import IntMatrix
from qds.phase import Phase, PhaseBasis
from qds.signature import Signature

ALPHA = math.sqrt(2) - 1
BETA = math.sqrt(3) - 1

BASIS_A = PhaseBasis(("alpha",), (ALPHA,))
BASIS_AB = PhaseBasis(("alpha", "beta"), (ALPHA, BETA))


def alpha_phase(basis=BASIS_A, mult=1):
    coeffs = [Fraction(0)] * basis.size
    coeffs[0] = Fraction(mult)
    return Phase(Fraction(0), tuple(coeffs))


def beta_phase(basis=BASIS_AB, mult=1):
    coeffs = [Fraction(0)] * basis.size
    coeffs[1] = Fraction(mult)
    return Phase(Fraction(0), tuple(coeffs))


def skew_shift_signature(basis=BASIS_A):
    """(Z^2, L(k,l) = (l,0), iota(1,0) = alpha): order-2 skew shift."""
    return Signature(
        rank=2,
        L=IntMatrix.from_rows([[0, 1], [0, 0]]),
        iota=(alpha_phase(basis),),
        phase_basis=basis,
    )


def rotation_signature(basis=BASIS_A, phase=None):
    """(Z, 0, alpha): the irrational rotation, order 1."""
    return Signature(
        rank=1,
        L=IntMatrix.zeros(1, 1),
        iota=(phase if phase is not None else alpha_phase(basis),),
        phase_basis=basis,
    )


def jordan3_signature(basis=BASIS_A):
    """Single nilpotent 3x3 Jordan block with iota = alpha on its line kernel."""
    return Signature(
        rank=3,
        L=IntMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        iota=(alpha_phase(basis),),
        phase_basis=basis,
    )


@pytest.fixture
def skew_sig():
    return skew_shift_signature()


@pytest.fixture
def rotation_sig():
    return rotation_signature()


@pytest.fixture
def jordan3_sig():
    return jordan3_signature()
