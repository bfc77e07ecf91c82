"""Exact Smith normal form over the integers.

Two interchangeable kernels back :func:`smith_normal_form`: a compiled int64
kernel (``_snf_c``) and a pure-Python one (``_snf_py``) on arbitrary-precision
integers. The compiled kernel is used when it imports and the environment
variable ``SSIWASAWA_PURE_PYTHON`` is unset; any int64 overflow inside it
falls back transparently to the Python kernel, so results are always exact.
"""

import os
from dataclasses import dataclass, field

from . import _snf_py

try:
    if os.environ.get("SSIWASAWA_PURE_PYTHON"):
        raise ImportError("pure Python kernel requested")
    from . import _snf_c
except ImportError:
    _snf_c = None

BACKEND = "cython" if _snf_c is not None else "python"

__all__ = [
    "BACKEND",
    "ModuleInvariants",
    "SmithDecomposition",
    "cokernel_invariants",
    "p_valuation",
    "smith_normal_form",
]


@dataclass(frozen=True)
class SmithDecomposition:
    """Invariant factors ``d_1 | d_2 | ...`` (zeros last) and optional transforms.

    When present, ``U @ A @ V == diag(invariant_factors)`` (padded to the shape
    of ``A``) and both transforms are unimodular.
    """

    invariant_factors: tuple
    U: tuple = None
    V: tuple = None

    @property
    def rank(self):
        return sum(1 for d in self.invariant_factors if d)


@dataclass(frozen=True)
class ModuleInvariants:
    """Z_p-rank and p-torsion of a finitely presented abelian group.

    ``p_torsion_exponents`` holds ``k`` for each cyclic summand of order
    ``p**k``. ``invariant_factors`` is the integral cokernel structure (torsion
    factors > 1, then one 0 per free summand); it is informational and is
    excluded from equality.
    """

    zp_rank: int
    p_torsion_exponents: tuple = ()
    invariant_factors: tuple = field(default=(), compare=False)


def _shape(A, ncols):
    rows = [list(map(int, r)) for r in A]
    if ncols is None:
        if not rows:
            return rows, 0
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
    return rows, ncols


def smith_normal_form(A, want_transforms=False, ncols=None, backend=None):
    """Smith normal form of an integer matrix given as a sequence of rows.

    ``ncols`` is needed only for matrices with no rows. ``backend`` forces
    ``"python"`` or ``"cython"``; by default the compiled kernel is tried first.

    >>> smith_normal_form([[2, 4], [6, 8]]).invariant_factors
    (2, 4)
    """
    rows, nc = _shape(A, ncols)
    backend = backend or BACKEND
    if backend == "cython":
        if _snf_c is None:
            raise RuntimeError("compiled Smith normal form kernel is not built")
        try:
            diagonal, U, V = _snf_c.snf(rows, nc, want_transforms)
        except OverflowError:
            diagonal, U, V = _snf_py.snf(rows, nc, want_transforms)
    elif backend == "python":
        diagonal, U, V = _snf_py.snf(rows, nc, want_transforms)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if want_transforms:
        U = tuple(map(tuple, U))
        V = tuple(map(tuple, V))
    return SmithDecomposition(tuple(diagonal), U, V)


def p_valuation(n, p):
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def cokernel_invariants(A, p, ncols=None):
    """Invariants of ``Z^ncols / (row span of A)`` localized at ``p``.

    >>> cokernel_invariants([[2]], 2)
    ModuleInvariants(zp_rank=0, p_torsion_exponents=(1,), invariant_factors=(2,))
    """
    rows, nc = _shape(A, ncols)
    # duplicate rows do not change the row span
    rows = list(dict.fromkeys(map(tuple, rows)))
    factors = smith_normal_form(rows, ncols=nc).invariant_factors
    nonzero = [d for d in factors if d]
    free = nc - len(nonzero)
    torsion = tuple(sorted(p_valuation(d, p) for d in nonzero if d % p == 0))
    structure = tuple(d for d in nonzero if d != 1) + (0,) * free
    return ModuleInvariants(free, torsion, structure)
