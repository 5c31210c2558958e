"""Computable structure theory for quasi-discrete-spectrum dynamics.

Subpackages / modules:

* ``abelian``   -- exact integer matrices, Hermite/Smith forms, sublattices.
* ``phase``     -- exact circle-group elements over a declared irrational basis.
* ``signature`` -- signatures (Z^r, L, iota): validation, order, derived data.
* ``affine``    -- affine torus automorphism systems and symbolic characters.
* ``ergodic``   -- Birkhoff averages, polynomial phases, equidistribution checks.
* ``factors``   -- factor lattice, derived factors, Markov-quasi-factor tests.
* ``cli``       -- the ``qds`` command-line interface.
"""

__version__ = "0.1.0"
