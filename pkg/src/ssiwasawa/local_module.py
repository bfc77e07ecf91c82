"""The local points module E(K)^(p) as a finitely presented Z[G]-module.

Generators are ``e_n`` for ``n = -1, 0, ..., m(K)``. Relations:

* invariance: ``(g - 1) e_n = 0`` for generators ``g`` of Gal(K/K_n);
* ``N_n e_n = a_p e_{n-1} - e_{n-2}`` for ``n >= 2``;
* ``N_1 e_1 = a_p e_0 - c e_{-1}`` (odd p), or
  ``a_p e_0 - c (a_p - F - F^-1) e_{-1}`` (p = 2);
* ``N_0 e_0 = (a_p - F - F^-1) e_{-1}`` (odd p), or
  ``(a_p^2 - a_p F - a_p F^-1 - 1) e_{-1}`` (p = 2),

where ``N_n`` is the norm from K_n to K_{n-1}, ``c = [K_0(zeta_0):K_0]`` and
``F`` is Frobenius on the unramified layer. All coefficients are integers;
p-adic information only enters when the cokernel is read off the Smith
normal form.
"""

from dataclasses import dataclass

from .abelian import cosets
from .errors import InputError
from .smith import ModuleInvariants, cokernel_invariants
from .tower import check_trace

__all__ = [
    "GroupRingElement",
    "ModuleInvariants",
    "ModulePresentation",
    "analyze_module",
    "build_presentation",
    "flatten",
    "frobenius_lifts",
    "norm_element",
]


class GroupRingElement:
    """An element of Z[G], stored sparsely as ``{group element: coefficient}``."""

    __slots__ = ("group", "coefficients")

    def __init__(self, group, coefficients=None):
        self.group = group
        coeffs = {}
        for g, a in (coefficients or {}).items():
            g = group.check(tuple(g))
            a = int(a)
            if a:
                coeffs[g] = coeffs.get(g, 0) + a
        self.coefficients = {g: a for g, a in coeffs.items() if a}

    @classmethod
    def basis(cls, group, g, coefficient=1):
        return cls(group, {g: coefficient})

    @classmethod
    def one(cls, group, coefficient=1):
        return cls(group, {group.identity: coefficient})

    @classmethod
    def zero(cls, group):
        return cls(group)

    def __repr__(self):
        if not self.coefficients:
            return "0"
        return " + ".join(f"{a}*{g}" for g, a in sorted(self.coefficients.items()))

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.one(self.group, other)
        return (
            isinstance(other, GroupRingElement)
            and self.group == other.group
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.group, frozenset(self.coefficients.items())))

    def _coerce(self, other):
        if isinstance(other, int):
            return GroupRingElement.one(self.group, other)
        if other.group != self.group:
            raise InputError("group ring elements over different groups")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coefficients)
        for g, a in other.coefficients.items():
            out[g] = out.get(g, 0) + a
        return GroupRingElement(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, {g: -a for g, a in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {g: a * other for g, a in self.coefficients.items()})
        other = self._coerce(other)
        add = self.group.add
        out = {}
        for g, a in self.coefficients.items():
            for h, b in other.coefficients.items():
                k = add(g, h)
                out[k] = out.get(k, 0) + a * b
        return GroupRingElement(self.group, out)

    __rmul__ = __mul__

    @property
    def support(self):
        return frozenset(self.coefficients)

    def augmentation(self):
        return sum(self.coefficients.values())


@dataclass(frozen=True)
class ModulePresentation:
    """Generators ``e_{-1}..e_{m(K)}`` and relation rows over Z[G].

    Each relation is ``(label, {generator index n: GroupRingElement})``;
    absent generators have coefficient zero.
    """

    group: object
    generators: tuple
    relations: tuple
    p: int

    def generator_labels(self):
        return [f"e_{n}" for n in self.generators]


def norm_element(tower, n, rng=None):
    """Sum of coset representatives of G_n in G_{n-1}.

    Representatives are the lexicographically smallest of each coset unless
    ``rng`` is given, in which case each is shifted by a random element of
    G_n (any choice presents the same module).
    """
    if not 0 <= n <= tower.m_of_K:
        raise InputError(f"norm level {n} outside [0, {tower.m_of_K}]")
    G = tower.G
    inner, outer = tower.levels[n], tower.levels[n - 1]
    reps = cosets(G, inner, within=outer)
    if rng is not None:
        reps = [G.add(r, rng.choice(inner.elements)) for r in reps]
    return GroupRingElement(G, {r: 1 for r in reps})


def frobenius_lifts(tower):
    """Every element of G restricting to Frobenius on K_{-1}."""
    G = tower.G
    return sorted(G.add(tower.frobenius_lift, x) for x in tower.levels[-1])


def build_presentation(tower, a_p=None, frobenius=None, rng=None):
    """Generators and relations of E(K)^(p) over Z[Gal(K/Q_p)].

    ``frobenius`` overrides the tower's Frobenius lift (it must agree with it
    modulo Gal(K/K_{-1})); ``rng`` randomizes coset representatives.
    """
    p = tower.p
    a_p = tower.spec.a_p if a_p is None else a_p
    check_trace(p, a_p)
    G = tower.G
    F = tower.frobenius_lift if frobenius is None else G.check(tuple(frobenius))
    if G.sub(F, tower.frobenius_lift) not in tower.levels[-1]:
        raise InputError(f"{F} does not restrict to Frobenius on the unramified layer")
    top = tower.m_of_K
    one = GroupRingElement.one(G)
    frob = GroupRingElement.basis(G, F)
    frob_inv = GroupRingElement.basis(G, G.neg(F))

    relations = []
    for n in range(-1, top + 1):
        for g in tower.levels[n].generators():
            relations.append((f"fix[{n}]{g}", {n: GroupRingElement.basis(G, g) - one}))

    for n in range(2, top + 1):
        relations.append(
            (f"norm[{n}]", {n: norm_element(tower, n, rng), n - 1: -a_p * one, n - 2: one})
        )
    if p != 2:
        bottom = a_p * one - frob - frob_inv
    else:
        bottom = (a_p * a_p) * one - a_p * frob - a_p * frob_inv - one
    if top >= 1:
        lowest = tower.c * one if p != 2 else tower.c * (a_p * one - frob - frob_inv)
        relations.append(("norm[1]", {1: norm_element(tower, 1, rng), 0: -a_p * one, -1: lowest}))
    if top >= 0:
        relations.append(("norm[0]", {0: norm_element(tower, 0, rng), -1: -bottom}))

    return ModulePresentation(G, tuple(range(-1, top + 1)), tuple(relations), p)


def flatten(pres):
    """Integer relation matrix of the underlying abelian group.

    Every relation ``r`` contributes the rows ``h * r`` for ``h`` in G (in
    element order), i.e. each coefficient becomes its regular representation
    block ``B[h][x] = coeff(x - h)``. Columns are grouped per generator in
    tower order. The module is ``Z^cols`` modulo the row span.
    """
    G = pres.group
    elems = G.elements()
    N = len(elems)
    index = G.index_of
    add = G.add
    offsets = {n: k * N for k, n in enumerate(pres.generators)}
    width = N * len(pres.generators)
    rows = []
    for _, coeffs in pres.relations:
        terms = [
            (offsets[n], [(x, a) for x, a in c.coefficients.items()])
            for n, c in coeffs.items()
            if c.coefficients
        ]
        for h in elems:
            row = [0] * width
            for off, items in terms:
                for x, a in items:
                    row[off + index(add(x, h))] += a
            rows.append(row)
    return rows


def analyze_module(pres, p=None):
    """Z_p-rank and p-torsion of the presented module."""
    p = pres.p if p is None else p
    width = pres.group.order * len(pres.generators)
    return cokernel_invariants(flatten(pres), p, ncols=width)
