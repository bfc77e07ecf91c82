"""Abelian extensions of Q_p and their unramified-by-cyclotomic filtration.

A finite abelian K/Q_p is described as the fixed field of a subgroup H of

    Gal(L/Q_p) = Z/f x U,   L = Q_p^{nr,f}(zeta_m),

where U is the unit group modulo p^(m+1) (p odd) or 2^(m+2) (p = 2). Every
finite abelian extension of Q_p sits in such an L, so all Galois-theoretic
data of K reduce to finite abelian group computations.

Ambient elements are tuples ``(a, *u)`` where ``a`` is the unramified
coordinate and ``u`` the unit group coordinates; :class:`UnitGroup` converts
between unit residues and coordinates.
"""

from dataclasses import dataclass, field

from .abelian import (
    FiniteAbelianGroup,
    Subgroup,
    image_subgroup,
    make_group,
    quotient,
    subgroup_generated,
    subgroup_intersection,
    subgroup_sum,
)
from .errors import InputError


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def legal_traces(p):
    """Frobenius traces allowed for supersingular reduction at ``p``."""
    return (0, p, -p) if p in (2, 3) else (0,)


def check_trace(p, a_p):
    if a_p not in legal_traces(p):
        if p > 3:
            raise InputError(f"a_p must be 0 for p>3 (got a_p={a_p}, p={p})")
        raise InputError(f"a_p must be one of 0, {p}, {-p} for p={p} (got {a_p})")


def _primitive_root(p):
    """Smallest generator of (Z/p^2)^*, which then generates every (Z/p^k)^*."""
    phi = p - 1
    factors = [q for q in range(2, phi + 1) if phi % q == 0 and is_prime(q)]
    for g in range(2, p * p):
        if g % p and all(pow(g, phi // q, p) != 1 for q in factors) and pow(g, p - 1, p * p) != 1:
            return g
    raise AssertionError("unreachable for odd primes")


class UnitGroup:
    """``(Z/p^(m+1))^*`` for odd p, ``(Z/2^(m+2))^*`` for p = 2, as an abstract group.

    ``delta(n)`` is the filtration subgroup of units congruent to 1 modulo
    p^(n+1) (odd p) or 2^(n+2); ``delta(-1)`` is the whole group. ``m = -1``
    gives the trivial group, used for purely unramified ambients.
    """

    def __init__(self, p, m):
        if not is_prime(p):
            raise InputError(f"p must be prime, got {p}")
        if m < -1:
            raise InputError(f"cyclotomic depth m must be >= -1, got {m}")
        self.p = p
        self.m = m
        if m == -1:
            self.modulus = 1
            self.group = make_group([])
            self._residue = {(): 1}
        elif p == 2:
            self.modulus = 2 ** (m + 2)
            # (Z/2^k)^* = <-1> x <5>
            self.group = make_group([2, 2**m])
            self._residue = {
                (a, b): (-1) ** a * pow(5, b, self.modulus) % self.modulus
                for a in range(2)
                for b in range(2**m)
            }
        else:
            self.modulus = p ** (m + 1)
            order = (p - 1) * p**m
            g = _primitive_root(p)
            self.group = make_group([order])
            self._residue = {(k,): pow(g, k, self.modulus) for k in range(order)}
        self._coords = {u: x for x, u in self._residue.items()}
        if len(self._coords) != self.group.order:
            raise AssertionError("unit labelling is not a bijection")

    def __repr__(self):
        return f"UnitGroup(p={self.p}, m={self.m})"

    def residue(self, x):
        """Unit residue labelling the abstract element ``x``."""
        return self._residue[x]

    def coords(self, u):
        """Abstract element for the unit residue ``u``."""
        if self.modulus == 1:
            return ()
        u %= self.modulus
        if u % self.p == 0 or u not in self._coords:
            raise InputError(f"{u} is not a unit modulo {self.modulus}")
        return self._coords[u]

    def delta(self, n):
        if n == -1:
            return subgroup_generated(self.group, self.group.elements())
        if not 0 <= n <= self.m:
            raise InputError(f"filtration index {n} outside [-1, {self.m}]")
        q = self.p ** (n + 1) if self.p != 2 else 2 ** (n + 2)
        return Subgroup._trusted(self.group, {x for x, u in self._residue.items() if u % q == 1})


def units_group(p, m):
    if m < 0:
        raise InputError(f"units_group needs m >= 0, got {m}")
    return UnitGroup(p, m)


@dataclass(frozen=True)
class FieldSpec:
    """K = L^H with L = Q_p^{nr,f}(zeta_m).

    ``subgroup_generators`` are pairs ``(a, u)``: ``a`` modulo ``f`` and ``u``
    a unit residue modulo p^(m+1) (or 2^(m+2)). ``full_cyclotomic`` adds
    ``{0} x U`` to H, which makes K unramified.
    """

    p: int
    f: int = 1
    m: int = 0
    subgroup_generators: tuple = ()
    a_p: int = 0
    full_cyclotomic: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "subgroup_generators", tuple(tuple(int(c) for c in g) for g in self.subgroup_generators)
        )

    def validate(self):
        if not is_prime(self.p):
            raise InputError(f"p must be prime, got {self.p}")
        if self.f < 1:
            raise InputError(f"f must be a positive integer, got {self.f}")
        if self.m < -1:
            raise InputError(f"m must be >= -1, got {self.m}")
        check_trace(self.p, self.a_p)
        for g in self.subgroup_generators:
            if len(g) != 2:
                raise InputError(f"subgroup generator {g} must be a pair (a, u)")
            a, u = g
            if not 0 <= a < self.f:
                raise InputError(f"unramified coordinate {a} outside [0, {self.f})")
            if u % self.p == 0:
                raise InputError(f"{u} is not a unit modulo a power of {self.p}")
            if self.m == -1 and u != 1:
                raise InputError(f"m = -1 admits no cyclotomic generators, got unit {u}")

    def to_dict(self):
        return {
            "p": self.p,
            "f": self.f,
            "m": self.m,
            "a_p": self.a_p,
            "subgroup": [list(g) for g in self.subgroup_generators],
            "full_cyclotomic": self.full_cyclotomic,
        }

    @classmethod
    def from_dict(cls, d):
        known = {"p", "f", "m", "a_p", "subgroup", "full_cyclotomic"}
        extra = set(d) - known
        if extra:
            raise InputError(f"unknown field spec keys: {sorted(extra)}")
        if "p" not in d:
            raise InputError("field spec needs p")
        try:
            return cls(
                p=int(d["p"]),
                f=int(d.get("f", 1)),
                m=int(d.get("m", 0)),
                subgroup_generators=tuple(tuple(g) for g in d.get("subgroup", ())),
                a_p=int(d.get("a_p", 0)),
                full_cyclotomic=bool(d.get("full_cyclotomic", False)),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed field spec: {exc}") from None


@dataclass(frozen=True)
class Tower:
    """The filtration K_{-1} c K_0 c ... c K_{m(K)} = K, via G_n = Gal(K/K_n)."""

    spec: FieldSpec
    units: UnitGroup
    ambient: FiniteAbelianGroup
    H: Subgroup
    G: FiniteAbelianGroup
    projection: object
    levels: dict
    m_of_K: int
    c: int
    frobenius_lift: tuple
    degrees: dict = field(default_factory=dict)

    @property
    def p(self):
        return self.spec.p

    def level(self, n):
        if not -1 <= n <= self.m_of_K:
            raise InputError(f"level {n} outside [-1, {self.m_of_K}]")
        return self.levels[n]


def ambient_group(p, f, m):
    units = UnitGroup(p, m)
    return units, make_group([f, *units.group.cyclic_orders])


def _lift_units(ambient, S):
    """``{0} x S`` inside ``Z/f x U``."""
    return Subgroup._trusted(ambient, {(0, *x) for x in S})


def build_tower(spec):
    """Compute G = Gal(K/Q_p), the subgroups Gal(K/K_n), m(K), c and F.

    >>> t = build_tower(FieldSpec(p=3, f=1, m=1))
    >>> t.m_of_K, [t.degrees[n] for n in (-1, 0, 1)], t.c
    (1, [1, 2, 6], 1)
    """
    spec.validate()
    p = spec.p
    units, ambient = ambient_group(p, spec.f, spec.m)
    gens = [(a % spec.f, *units.coords(u)) for a, u in spec.subgroup_generators]
    H = subgroup_generated(ambient, gens)
    if spec.full_cyclotomic:
        H = subgroup_sum(H, _lift_units(ambient, units.delta(-1)))
    G, proj = quotient(ambient, H)

    levels = {}
    m_of_K = None
    for n in range(-1, spec.m + 1):
        delta = _lift_units(ambient, units.delta(n))
        levels[n] = image_subgroup(proj, G, delta)
        if m_of_K is None and delta.issubset(H):
            m_of_K = n
    if m_of_K is None:
        raise AssertionError("the deepest filtration step is trivial, so m(K) <= m")
    levels = {n: S for n, S in levels.items() if n <= m_of_K}

    if spec.m >= 0:
        # [K_0(zeta_0):K_0] = [H_0 : H_0 n Gal(L/Q_p(zeta_0))]
        H0 = subgroup_sum(H, _lift_units(ambient, units.delta(0)))
        fix_zeta0 = Subgroup._trusted(ambient, {(a, *x) for a in range(spec.f) for x in units.delta(0)})
        c = H0.order // subgroup_intersection(H0, fix_zeta0).order
    else:
        # K_0 is unramified, and Q_p(zeta_0) is totally ramified of degree p-1 (or 2)
        c = p - 1 if p != 2 else 2

    frob = proj(ambient.element((1, *units.group.identity)))
    degrees = {n: G.order // S.order for n, S in levels.items()}
    return Tower(spec, units, ambient, H, G, proj, levels, m_of_K, c, frob, degrees)


def layer_degree(tower, n):
    """[K_n : Q_p]."""
    return tower.G.order // tower.level(n).order
