"""Finite abelian groups given as products of cyclic groups.

Elements are tuples of residues, coordinate ``i`` taken modulo
``cyclic_orders[i]``. Everything here is small (orders up to ~10^4), so
subgroups are stored as explicit sorted element lists.
"""

import itertools
from math import gcd, prod

from .errors import InputError
from .smith import smith_normal_form


class FiniteAbelianGroup:
    """The direct product ``Z/n_1 x ... x Z/n_k``.

    >>> G = FiniteAbelianGroup([4])
    >>> G.add((3,), (3,))
    (2,)
    """

    def __init__(self, cyclic_orders):
        orders = tuple(int(n) for n in cyclic_orders)
        if any(n < 1 for n in orders):
            raise InputError(f"cyclic orders must be positive, got {list(orders)}")
        self.cyclic_orders = orders
        self.order = prod(orders)
        self.identity = (0,) * len(orders)
        self._elements = None
        self._index = None

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.cyclic_orders)})"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.cyclic_orders == other.cyclic_orders

    def __hash__(self):
        return hash(self.cyclic_orders)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements())

    def __contains__(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == len(self.cyclic_orders)
            and all(isinstance(a, int) and 0 <= a < n for a, n in zip(x, self.cyclic_orders))
        )

    def element(self, coords):
        """Reduce arbitrary integer coordinates into a canonical element."""
        coords = tuple(coords)
        if len(coords) != len(self.cyclic_orders):
            raise InputError(f"element {coords} has {len(coords)} coordinates, expected {len(self.cyclic_orders)}")
        return tuple(int(a) % n for a, n in zip(coords, self.cyclic_orders))

    def check(self, x):
        if x not in self:
            raise InputError(f"{x!r} is not an element of {self!r}")
        return x

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.cyclic_orders))

    def neg(self, x):
        return tuple(-a % n for a, n in zip(x, self.cyclic_orders))

    def sub(self, x, y):
        return tuple((a - b) % n for a, b, n in zip(x, y, self.cyclic_orders))

    def scale(self, k, x):
        return tuple(k * a % n for a, n in zip(x, self.cyclic_orders))

    def element_order(self, x):
        o = 1
        for a, n in zip(x, self.cyclic_orders):
            c = n // gcd(a, n)
            o = o * c // gcd(o, c)
        return o

    def elements(self):
        """All elements in lexicographic order."""
        if self._elements is None:
            self._elements = list(itertools.product(*(range(n) for n in self.cyclic_orders)))
        return self._elements

    def index_of(self, x):
        """Position of ``x`` in :meth:`elements` (mixed-radix, row-major)."""
        i = 0
        for a, n in zip(x, self.cyclic_orders):
            i = i * n + a
        return i


class Subgroup:
    """A subgroup stored as its sorted element list.

    Construction verifies closure, so any ``Subgroup`` is a genuine subgroup.
    """

    def __init__(self, parent, elements):
        elems = sorted({parent.check(tuple(x)) for x in elements})
        if not elems or elems[0] != parent.identity:
            raise InputError("subgroup must contain the identity")
        members = set(elems)
        for x in elems:
            for y in elems:
                if parent.sub(x, y) not in members:
                    raise InputError(f"set is not closed: {x} - {y} missing")
        self.parent = parent
        self.elements = tuple(elems)
        self._members = frozenset(members)

    @classmethod
    def _trusted(cls, parent, members):
        obj = cls.__new__(cls)
        obj.parent = parent
        obj.elements = tuple(sorted(members))
        obj._members = frozenset(members)
        return obj

    def __repr__(self):
        return f"Subgroup(order={self.order}, parent={self.parent!r})"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self._members == other._members

    def __hash__(self):
        return hash((self.parent, self._members))

    def __contains__(self, x):
        return x in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def is_trivial(self):
        return len(self.elements) == 1

    def issubset(self, other):
        return self._members <= other._members

    def generators(self):
        """A small generating set, chosen greedily in element order."""
        gens = []
        span = {self.parent.identity}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = _close(self.parent, span, x)
        return gens


def _close(G, span, g):
    """Smallest subgroup containing the subgroup ``span`` and ``g``."""
    multiples = [G.identity]
    x = g
    while x != G.identity:
        multiples.append(x)
        x = G.add(x, g)
    return {G.add(s, m) for s in span for m in multiples}


def make_group(cyclic_orders):
    """``make_group([2, 3])`` is the group of order 6; ``[]`` or ``[1]`` is trivial."""
    return FiniteAbelianGroup(cyclic_orders)


def subgroup_generated(G, gens):
    span = {G.identity}
    for g in gens:
        g = G.check(tuple(g))
        if g not in span:
            span = _close(G, span, g)
    return Subgroup._trusted(G, span)


def subgroup_sum(H, K):
    """``H + K`` inside their common parent."""
    G = H.parent
    return Subgroup._trusted(G, {G.add(h, k) for h in H for k in K})


def subgroup_intersection(H, K):
    return Subgroup._trusted(H.parent, H._members & K._members)


def image_subgroup(hom, target, H):
    return Subgroup._trusted(target, {hom(h) for h in H})


def all_subgroups(G):
    """Every subgroup of ``G``, each exactly once, ordered by (order, elements)."""
    found = {frozenset([G.identity])}
    frontier = list(found)
    elems = G.elements()
    while frontier:
        nxt = []
        for span in frontier:
            for g in elems:
                if g not in span:
                    bigger = frozenset(_close(G, span, g))
                    if bigger not in found:
                        found.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    subs = [Subgroup._trusted(G, s) for s in found]
    subs.sort(key=lambda S: (S.order, S.elements))
    return subs


class Projection:
    """The quotient map ``G -> G/H`` in invariant-factor coordinates."""

    def __init__(self, source, target, columns):
        self.source = source
        self.target = target
        self._columns = columns

    def __call__(self, x):
        return tuple(
            sum(a * c for a, c in zip(x, col)) % n
            for col, n in zip(self._columns, self.target.cyclic_orders)
        )


def quotient(G, H):
    """Return ``(G/H, projection)`` with ``G/H`` in invariant-factor form.

    The relation lattice (the cyclic orders of ``G`` plus generators of ``H``)
    is put in Smith normal form ``U A V = D``; the coordinates of ``x V``
    modulo the nontrivial diagonal entries identify the coset of ``x``.
    """
    if not isinstance(H, Subgroup) or H.parent != G:
        raise InputError("quotient needs a Subgroup of the same group")
    k = len(G.cyclic_orders)
    rows = [[n if i == j else 0 for j in range(k)] for i, n in enumerate(G.cyclic_orders)]
    rows += [list(h) for h in H.generators()]
    if k == 0:
        return FiniteAbelianGroup([]), Projection(G, FiniteAbelianGroup([]), [])
    snf = smith_normal_form(rows, want_transforms=True, ncols=k)
    keep = [i for i, d in enumerate(snf.invariant_factors) if d != 1]
    Q = FiniteAbelianGroup([snf.invariant_factors[i] for i in keep])
    columns = [[snf.V[r][i] for r in range(k)] for i in keep]
    return Q, Projection(G, Q, columns)


def cosets(G, H, within=None):
    """Lexicographically smallest representative of each coset of ``H``.

    With ``within`` (a subgroup containing ``H``) only the cosets inside it
    are listed. Representatives come out sorted.

    >>> G = make_group([6])
    >>> cosets(G, subgroup_generated(G, [(3,)]))
    [(0,), (1,), (2,)]
    """
    if not isinstance(H, Subgroup) or H.parent != G:
        raise InputError("cosets need a Subgroup of the same group")
    pool = G.elements() if within is None else within.elements
    if within is not None and not H.issubset(within):
        raise InputError("coset enumeration inside a subgroup that does not contain H")
    seen = set()
    reps = []
    for x in pool:
        if x in seen:
            continue
        reps.append(x)
        seen.update(G.add(x, h) for h in H)
    return reps
