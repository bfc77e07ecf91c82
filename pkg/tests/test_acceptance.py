"""Exit criteria. Each test prints one PASS/FAIL line; run with ``pytest -s`` to see them."""

import itertools
import random
import time

import pytest

from ssiwasawa.growth import GrowthParams, consistency_check, sha_diff_stable, sha_exponent, validate_constraints
from ssiwasawa.local_module import analyze_module, build_presentation, frobenius_lifts
from ssiwasawa.smith import smith_normal_form
from ssiwasawa.tower import build_tower

from conftest import det, invariant_factors_from_minors, matmul


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    return emit


def test_1_torsion_freeness(matrix_specs, report):
    start = time.perf_counter()
    offenders = []
    for spec in matrix_specs:
        inv = analyze_module(build_presentation(build_tower(spec)))
        if inv.p_torsion_exponents:
            offenders.append((spec, inv.p_torsion_exponents))
    elapsed = time.perf_counter() - start
    ok = not offenders and elapsed < 60
    report(1, "no p-torsion on the full spec matrix", ok,
           f"{len(matrix_specs)} specs, {len(offenders)} with torsion, {elapsed:.2f}s")
    assert not offenders, offenders[:5]
    assert elapsed < 60


def test_2_rank_law(matrix_specs, report):
    offenders = []
    for spec in matrix_specs:
        tower = build_tower(spec)
        inv = analyze_module(build_presentation(tower))
        if inv.zp_rank != tower.G.order:
            offenders.append((spec, inv.zp_rank, tower.G.order))
    report(2, "Z_p-rank equals [K:Q_p]", not offenders, f"{len(matrix_specs)} specs, {len(offenders)} mismatches")
    assert not offenders, offenders[:5]


def test_3_representative_and_lift_invariance(matrix_specs, report):
    rng = random.Random(20261015)
    offenders = []
    for spec in matrix_specs:
        tower = build_tower(spec)
        base = analyze_module(build_presentation(tower))
        lifts = frobenius_lifts(tower)
        for _ in range(100):
            pres = build_presentation(tower, frobenius=rng.choice(lifts), rng=rng)
            if analyze_module(pres) != base:
                offenders.append(spec)
                break
    report(3, "invariants independent of coset representatives and Frobenius lift", not offenders,
           f"{len(matrix_specs)} specs x 100 draws")
    assert not offenders, offenders[:5]


def test_4_sha_table(report):
    got3 = [sha_exponent(1, 3, n) for n in range(5)]
    got5 = [sha_exponent(1, 5, n) for n in range(4)]
    ok = got3 == [0, 0, 2, 8, 28] and got5 == [0, 0, 4, 24]
    report(4, "Sha exponent table", ok, f"p=3: {got3}, p=5: {got5}")
    assert ok


def test_5_sha_exponent_vs_stable_difference_law(report):
    failures = []
    for p in (3, 5, 7):
        for d in (1, 2, 3):
            rep = consistency_check(p, d, 12)
            if not (rep.holds and rep.verified_from == 2 and (rep.lambda0, rep.lambda1) == (0, 0)):
                failures.append((p, d, rep))
            # direct comparison, independent of the fitter
            for n in range(2, 13):
                diff = sha_exponent(d, p, n) - sha_exponent(d, p, n - 1)
                if diff != sha_diff_stable(GrowthParams(p=p, d=d), n):
                    failures.append((p, d, n))
    report(5, "first differences match the stable law with lambda = (0, 0) from n = 2", not failures,
           "p in {3,5,7}, d in {1,2,3}, n <= 12")
    assert not failures, failures[:5]


def inequality_list_holds(p, d, r, rho, rs, nu, mu, delta, mu_list, a_p):
    """The constraint system restated directly, independent of the validator."""
    prime = p > 1 and all(p % q for q in range(2, p))
    chains = all(rho[s] >= rs[s] >= nu[s] >= 0 for s in (0, 1))
    balance = rho[0] - rs[0] == rho[1] - rs[1]
    seq = list(mu_list) + [0]
    nonincreasing = all(a >= b for a, b in zip(seq, seq[1:])) and min(seq) >= 0
    cut = min(nu)
    tail_zero = all(x == 0 for x in mu_list[cut:])
    mus = mu[0] >= 0 and mu[1] >= 0
    degrees = rs[0] + rs[1] <= r <= d and d >= 1 and r >= 0
    deltas = delta[0] >= 0 and delta[1] >= 0 and (a_p != 0 or delta == (0, 0))
    rho_equal = a_p == 0 or rho[0] == rho[1]
    return all([prime, chains, balance, nonincreasing, tail_zero, mus, degrees, deltas, rho_equal])


def _grid():
    vals = range(-1, 4)
    # ranks and their splitting
    for rho in itertools.product(vals, repeat=2):
        for rs in itertools.product(vals, repeat=2):
            for nu in itertools.product(vals, repeat=2):
                for r in range(0, 4):
                    for d in (1, 3):
                        yield dict(p=3, d=d, r=r, rho=rho, r_s=rs, nu=nu)
    # mu's, delta's, trace, lambda
    lists = [()] + [tuple(x) for k in (1, 2) for x in itertools.product(vals, repeat=k)]
    for mu in itertools.product(vals, repeat=2):
        for delta in itertools.product(vals, repeat=2):
            for a_p in (0, 3):
                for ml in lists:
                    for nu in ((0, 0), (1, 2), (3, 3)):
                        yield dict(p=3, d=3, r=3, rho=nu, r_s=nu, nu=nu, mu=mu, delta=delta,
                                   a_p=a_p, mu_list=ml, lam=(-1, 3))
    # degenerate scalars
    for p in (1, 2, 3, 4):
        for d in vals:
            for r in vals:
                yield dict(p=p, d=d, r=r, rho=(1, 0), r_s=(1, 0))


def test_6_constraint_validator(report):
    mismatches = []
    count = accepted = 0
    for kw in _grid():
        P = GrowthParams(**kw)
        got = not validate_constraints(P)
        want = inequality_list_holds(P.p, P.d, P.r, P.rho, P.r_s, P.nu, P.mu, P.delta, P.mu_list, P.a_p)
        count += 1
        accepted += want
        if got != want:
            mismatches.append(kw)
    report(6, "validator accept set equals the inequality list", not mismatches,
           f"{count} tuples, {accepted} admissible")
    assert not mismatches, mismatches[:5]
    assert accepted > 0


def test_7_smith_engine(report):
    rng = random.Random(7)
    start = time.perf_counter()
    problems = []
    minor_checked = 0
    for trial in range(1000):
        nr, nc = rng.randint(1, 12), rng.randint(1, 12)
        A = [[rng.randint(-20, 20) for _ in range(nc)] for _ in range(nr)]
        dec = smith_normal_form(A, want_transforms=True)
        D = matmul(matmul(dec.U, A), dec.V)
        if any(D[i][j] != (dec.invariant_factors[i] if i == j else 0) for i in range(nr) for j in range(nc)):
            problems.append(("reconstruction", A))
        if abs(det(dec.U)) != 1 or abs(det(dec.V)) != 1:
            problems.append(("unimodular", A))
        nz = [x for x in dec.invariant_factors if x]
        if any(x < 0 for x in nz) or any(b % a for a, b in zip(nz, nz[1:])) or dec.invariant_factors[: len(nz)] != tuple(nz):
            problems.append(("divisibility", A))
        if nr <= 5 and nc <= 5:
            minor_checked += 1
            if list(dec.invariant_factors) != invariant_factors_from_minors(A):
                problems.append(("minors", A))
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    report(7, "SNF reconstruction, unimodularity, divisibility, minor oracle", ok,
           f"1000 matrices, {minor_checked} checked against minors, {elapsed:.1f}s")
    assert not problems, problems[:3]
    assert elapsed < 60
