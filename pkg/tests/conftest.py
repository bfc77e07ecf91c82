import itertools
from fractions import Fraction
from math import gcd

import pytest

from ssiwasawa.abelian import all_subgroups
from ssiwasawa.tower import FieldSpec, ambient_group, legal_traces


def spec_matrix(primes=(2, 3, 5), fs=(1, 2), ms=(0, 1)):
    """Every (p, f, m, H, a_p) with H running over all subgroups of Z/f x U."""
    out = []
    for p in primes:
        for f in fs:
            for m in ms:
                units, ambient = ambient_group(p, f, m)
                for H in all_subgroups(ambient):
                    gens = tuple((h[0], units.residue(h[1:])) for h in H.generators())
                    for a_p in legal_traces(p):
                        out.append(FieldSpec(p, f, m, gens, a_p))
    return out


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def det(M):
    """Exact determinant by Gaussian elimination over the rationals."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            sign = -sign
        result *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    value = sign * result
    assert value.denominator == 1
    return int(value)


def determinantal_divisors(A):
    """D_k = gcd of all k x k minors, by enumerating minors."""
    nr, nc = len(A), len(A[0]) if A else 0
    out = []
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def invariant_factors_from_minors(A):
    D = determinantal_divisors(A)
    out = []
    prev = 1
    for d in D:
        if d == 0:
            out.append(0)
        else:
            out.append(d // prev)
            prev = d
    return out


@pytest.fixture(scope="session")
def matrix_specs():
    return spec_matrix()
