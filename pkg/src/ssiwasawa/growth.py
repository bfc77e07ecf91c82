"""Growth of Shafarevich-Tate groups and Mordell-Weil ranks in Z_p-towers k_n/k_0.

Closed forms, evaluated exactly on Python integers:

* ``sha_exponent``: log_p |Sha_n^(p)| = d (floor(p^(n+1)/(p^2-1)) - floor((n+1)/2))
  for cyclotomic towers with p odd, E(k_0) finite and Sha_0^(p) = 0.
* ``rank_corank_diff``: the jump rho^(s) (p^n - p^(n-1)) of rk E + cork Sha.
* ``sha_diff_stable``: first difference of log_p |Sha_n| once ranks stabilize
  (k_0 abelian, cyclotomic tower).
* ``sha_diff_ramified``: the same difference for a_p = 0 with abelian local
  extensions at the ramified places.

``n`` ranges over levels of the tower and ``s = n mod 2``. The formulas hold
only for n large enough; nothing here guesses that threshold, but
:func:`consistency_check` reports where two of them start to agree.
"""

from dataclasses import dataclass, field, fields

from .errors import ConstraintError, InputError
from .tower import is_prime

__all__ = [
    "ConsistencyReport",
    "GrowthParams",
    "consistency_check",
    "degree_divides_twisted_power",
    "rank_corank_diff",
    "rank_stabilizes",
    "ranks_stabilize_from_start",
    "sha_diff_ramified",
    "sha_diff_stable",
    "sha_exponent",
    "sha_table",
    "stable_violations",
    "ramified_violations",
    "validate_constraints",
]


def _pair(v):
    v = tuple(int(x) for x in v)
    if len(v) != 2:
        raise InputError(f"expected one value per parity (s=0, s=1), got {list(v)}")
    return v


@dataclass(frozen=True)
class GrowthParams:
    """Integer invariants of a tower, one value per parity where indexed by s.

    ``d`` is [k_0:Q]; ``r`` the total local degree at the ramified places above
    p; ``rho``, ``r_s``, ``nu``, ``mu``, ``lam``, ``delta`` are pairs indexed
    by s; ``mu_list`` is the nonincreasing sequence mu_1 >= mu_2 >= ...,
    implicitly zero past its end.
    """

    p: int
    d: int = 1
    r: int = 0
    rho: tuple = (0, 0)
    r_s: tuple = (0, 0)
    nu: tuple = (0, 0)
    mu: tuple = (0, 0)
    lam: tuple = (0, 0)
    delta: tuple = (0, 0)
    mu_list: tuple = ()
    a_p: int = 0

    def __post_init__(self):
        for name in ("rho", "r_s", "nu", "mu", "lam", "delta"):
            object.__setattr__(self, name, _pair(getattr(self, name)))
        object.__setattr__(self, "mu_list", tuple(int(x) for x in self.mu_list))

    def mu_i(self, i):
        """mu_i for i >= 1, zero beyond the stored list."""
        return self.mu_list[i - 1] if i <= len(self.mu_list) else 0

    def to_dict(self):
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        extra = set(d) - names
        if extra:
            raise InputError(f"unknown growth parameter keys: {sorted(extra)}")
        if "p" not in d:
            raise InputError("growth parameters need p")
        try:
            return cls(**d)
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed growth parameters: {exc}") from None


def _check_prime(p):
    if not is_prime(p):
        raise InputError(f"p must be prime, got {p}")


def sha_exponent(d, p, n):
    """log_p of the order of Sha_n^(p) in a cyclotomic tower.

    >>> sha_exponent(1, 5, 2), sha_exponent(2, 3, 3)
    (4, 16)
    """
    _check_prime(p)
    if p == 2:
        raise InputError("the Sha order formula requires p odd (hypothesis (a) excludes p = 2)")
    if d < 0:
        raise InputError(f"d must be nonnegative, got {d}")
    if n < 0:
        raise InputError(f"level n must be >= 0, got {n}")
    return _exponent(d, p, n)


def _exponent(d, p, n):
    # also valid at n = -1, where it is 0
    return d * (p ** (n + 1) // (p * p - 1) - (n + 1) // 2)


def sha_table(d, p, n_range):
    """Rows ``(n, exponent, exponent(n) - exponent(n-1))``.

    The formula gives 0 at n = -1, so the first difference is defined at n = 0.
    """
    rows = []
    for n in n_range:
        e = sha_exponent(d, p, n)
        rows.append((n, e, e - _exponent(d, p, n - 1)))
    return rows


def rank_corank_diff(rho_s, p, n):
    """rho^(s) (p^n - p^(n-1)); with r^(s) in place of rho^(s), the jump in rk B_n."""
    _check_prime(p)
    if n < 1:
        raise InputError(f"level n must be >= 1, got {n}")
    if rho_s < 0:
        raise InputError(f"coefficient must be nonnegative, got {rho_s}")
    return rho_s * (p**n - p ** (n - 1))


def _growth_core(P):
    """Inequalities shared by the validator and the ramified-case evaluator."""
    out = []
    for s in (0, 1):
        rho, rs, nu = P.rho[s], P.r_s[s], P.nu[s]
        if not rho >= rs:
            out.append(f"rho^(s) >= r^(s) fails for s={s}: rho={rho}, r_s={rs}")
        if not rs >= nu:
            out.append(f"r^(s) >= nu^(s) fails for s={s}: r_s={rs}, nu={nu}")
        if not nu >= 0:
            out.append(f"nu^(s) >= 0 fails for s={s}: nu={nu}")
        if not P.mu[s] >= 0:
            out.append(f"mu^(s) >= 0 fails for s={s}: mu={P.mu[s]}")
    if P.rho[0] - P.r_s[0] != P.rho[1] - P.r_s[1]:
        out.append(
            f"rho^(0) - r^(0) = rho^(1) - r^(1) fails: {P.rho[0]} - {P.r_s[0]} != {P.rho[1]} - {P.r_s[1]}"
        )
    ml = P.mu_list
    for i in range(1, len(ml)):
        if ml[i - 1] < ml[i]:
            out.append(f"mu_1 >= mu_2 >= ... fails at i={i}: mu_{i}={ml[i - 1]} < mu_{i + 1}={ml[i]}")
    for i, x in enumerate(ml, 1):
        if x < 0:
            out.append(f"mu_i >= 0 fails at i={i}: mu_{i}={x}")
    bound = min(P.nu)
    for i, x in enumerate(ml, 1):
        if i > bound and x != 0:
            out.append(f"mu_i = 0 for i > min(nu^(0), nu^(1)) = {bound} fails at i={i}: mu_{i}={x}")
    if not P.r_s[0] + P.r_s[1] <= P.r:
        out.append(f"r^(0) + r^(1) <= r fails: {P.r_s[0]} + {P.r_s[1]} > {P.r}")
    if not P.r <= P.d:
        out.append(f"r <= [k_0:Q] fails: r={P.r} > d={P.d}")
    return out


def _stable_side(P):
    out = []
    if P.a_p == 0 and P.delta != (0, 0):
        out.append(f"delta^(0) = delta^(1) = 0 for a_p = 0 fails: delta={list(P.delta)}")
    if P.a_p != 0 and P.rho[0] != P.rho[1]:
        out.append(f"rho^(0) = rho^(1) for a_p != 0 fails: rho={list(P.rho)}")
    for s in (0, 1):
        if P.delta[s] < 0:
            out.append(f"delta^(s) >= 0 fails for s={s}: delta={P.delta[s]}")
    return out


def _basics(P):
    out = []
    if not is_prime(P.p):
        out.append(f"p prime fails: p={P.p}")
    if P.d < 1:
        out.append(f"[k_0:Q] >= 1 fails: d={P.d}")
    if P.r < 0:
        out.append(f"r >= 0 fails: r={P.r}")
    return out


def validate_constraints(params):
    """Every violated inequality on ``params``, as readable strings; empty if none."""
    return _basics(params) + _growth_core(params) + _stable_side(params)


def stable_violations(params):
    """Preconditions of :func:`sha_diff_stable` that ``params`` breaks."""
    P = params
    out = [] if is_prime(P.p) else [f"p prime fails: p={P.p}"]
    if P.d < 0:
        out.append(f"[k_0:Q] >= 0 fails: d={P.d}")
    if P.rho != (0, 0):
        out.append(f"rho^(0) = rho^(1) = 0 fails: rho={list(P.rho)}")
    for s in (0, 1):
        if P.mu[s] < 0:
            out.append(f"mu^(s) >= 0 fails for s={s}: mu={P.mu[s]}")
    return out + _stable_side(P)


def ramified_violations(params):
    """Preconditions of :func:`sha_diff_ramified` that ``params`` breaks."""
    out = _basics(params) + _growth_core(params)
    if params.a_p != 0:
        out.append(f"a_p = 0 fails: a_p={params.a_p}")
    return out


def _parity(n):
    if n < 1:
        raise InputError(f"level n must be >= 1, got {n}")
    return n % 2


def sha_diff_stable(params, n, strict=True):
    """log_p|Sha_n| - log_p|Sha_{n-1}| when rk E(k_n) and cork Sha_n stabilize.

    mu^(s) (p^n - p^(n-1)) + (d - delta^(s)) [p^n/(p+1)] + delta^(s) [p^(n-1)/(p+1)] + lambda^(s)
    """
    s = _parity(n)
    bad = stable_violations(params) if strict else []
    if bad:
        raise ConstraintError(bad)
    P = params
    p = P.p
    return (
        P.mu[s] * (p**n - p ** (n - 1))
        + (P.d - P.delta[s]) * (p**n // (p + 1))
        + P.delta[s] * (p ** (n - 1) // (p + 1))
        + P.lam[s]
    )


def sha_diff_ramified(params, n, strict=True):
    """log_p|Sha_n| - log_p|Sha_{n-1}| for a_p = 0 and abelian local extensions.

    mu^(s)(p^n - p^(n-1)) + (r - r^(s) + nu^(s)) [p^n/(p+1)]
      - sum_{i <= nu^(s)} [p^(n-mu_i)/(p+1)] - sum_{i <= r^(1-s)} [p^(n-mu_i)/(p+1)] + lambda^(s)

    ``strict=False`` skips the parameter constraints and evaluates the bare
    expression.
    """
    s = _parity(n)
    bad = ramified_violations(params) if strict else []
    if bad:
        raise ConstraintError(bad)
    P = params
    p = P.p

    def term(i):
        e = n - P.mu_i(i)
        if e < 0:
            raise InputError(f"n={n} not in the formula's eventual regime: n - mu_{i} = {e} < 0")
        return p**e // (p + 1)

    total = P.mu[s] * (p**n - p ** (n - 1)) + (P.r - P.r_s[s] + P.nu[s]) * (p**n // (p + 1))
    total -= sum(term(i) for i in range(1, P.nu[s] + 1))
    total -= sum(term(i) for i in range(1, P.r_s[1 - s] + 1))
    return total + P.lam[s]


@dataclass(frozen=True)
class ConsistencyReport:
    p: int
    d: int
    n_max: int
    lambda0: int = None
    lambda1: int = None
    verified_from: int = None
    holds: bool = False
    counterexample: int = None
    residuals: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "p": self.p,
            "d": self.d,
            "n_max": self.n_max,
            "lambda": [self.lambda0, self.lambda1],
            "verified_from": self.verified_from,
            "holds": self.holds,
            "counterexample": self.counterexample,
        }


def consistency_check(p, d, n_max):
    """Fit the stable-rank difference law (mu = delta = 0) to the cyclotomic Sha exponents.

    For n in [2, n_max] the residual ``exponent(n) - exponent(n-1) - d [p^n/(p+1)]``
    must be a constant lambda^(s) on each parity class. Reports the smallest
    start ``n0 >= 2`` from which that holds through ``n_max``; if even the
    last two levels of a parity disagree there is no fit.
    """
    if n_max < 4:
        raise InputError(f"n_max must be >= 4, got {n_max}")
    _check_prime(p)
    residuals = {
        n: sha_exponent(d, p, n) - sha_exponent(d, p, n - 1) - d * (p**n // (p + 1))
        for n in range(2, n_max + 1)
    }
    lam = {s: residuals[n_max - ((n_max - s) % 2)] for s in (0, 1)}
    start = n_max + 1
    for n in range(n_max, 1, -1):
        if residuals[n] != lam[n % 2]:
            break
        start = n
    holds = start == 2
    return ConsistencyReport(
        p=p,
        d=d,
        n_max=n_max,
        lambda0=lam[0],
        lambda1=lam[1],
        verified_from=start,
        holds=holds,
        counterexample=None if holds else start - 1,
        residuals=residuals,
    )


def degree_divides_twisted_power(d, p):
    """Whether d divides (p^l + 1) p^m for some l, m >= 0.

    Writing d = p^a d' with p not dividing d', this asks whether p^l = -1
    modulo d' for some l; only l below the multiplicative order of p mod d'
    need checking.
    """
    if d < 1:
        raise InputError(f"d must be positive, got {d}")
    while d % p == 0:
        d //= p
    if d <= 2:
        return True
    x = 1
    for _ in range(d):
        if (x + 1) % d == 0:
            return True
        x = x * p % d
        if x == 1:
            return False
    return False


def rank_stabilizes(a_p, d, p):
    """Sufficient condition for rk E(k_n) to stabilize when a_p != 0.

    Only the numerical hypothesis is checked; the conclusion concerns global
    objects this package does not model.
    """
    return a_p != 0 and degree_divides_twisted_power(d, p)


def ranks_stabilize_from_start(a_p, e_finite, sha_finite, unramified_degree_ok=False):
    """Sufficient condition for rho^(0) = rho^(1) = 0.

    ``e_finite`` and ``sha_finite`` state that E(k_0) and Sha_0^(p) are finite;
    for a_p = 0 every place above p must also be unramified over Q_p with local
    degree not divisible by 4 (``unramified_degree_ok``).
    """
    if not (e_finite and sha_finite):
        return False
    return a_p != 0 or bool(unramified_degree_ok)
