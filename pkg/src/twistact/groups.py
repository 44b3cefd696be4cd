"""Finite groups given by Cayley tables, subgroups, and left transversals."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product


class GroupError(ValueError):
    """Raised when a Cayley table does not define a group."""


class NotLatinSquare(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class NotAssociative(GroupError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple
    identity: int
    inverses: tuple

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        return self.inverses[g]

    def prod(self, *elems):
        r = self.identity
        for g in elems:
            r = self.table[r][g]
        return r

    @property
    def elements(self):
        return range(self.order)

    def __len__(self):
        return self.order


def build_group(table) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    Each failure names the first offending tuple.
    """
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise GroupError(f"entry ({i},{j}) = {v!r} out of range")
        rows.append(tuple(row))
    for i, row in enumerate(rows):
        if len(set(row)) != n:
            raise NotLatinSquare(f"row {i} repeats an entry")
    for j in range(n):
        col = [rows[i][j] for i in range(n)]
        if len(set(col)) != n:
            raise NotLatinSquare(f"column {j} repeats an entry")

    identity = None
    for e in range(n):
        if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity")

    inverses = []
    for g in range(n):
        try:
            h = rows[g].index(identity)
        except ValueError:  # pragma: no cover - latin square guarantees a hit
            raise NoInverse(f"element {g} has no inverse")
        if rows[h][g] != identity:
            raise NoInverse(f"element {g}: right inverse {h} is not a left inverse")
        inverses.append(h)

    for a, b, c in product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAssociative(f"(({a}*{b})*{c}) != ({a}*({b}*{c}))")

    return FiniteGroup(n, tuple(rows), identity, tuple(inverses))


def cyclic_group(n) -> FiniteGroup:
    return build_group([[(i + j) % n for j in range(n)] for i in range(n)])


def permutation_group(perms) -> FiniteGroup:
    """Group on an explicit list of permutation tuples, closed under composition.

    Products are read right to left: (p*q)(i) = p(q(i)).
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms]
    return build_group(table)


def symmetric_group(k) -> FiniteGroup:
    from itertools import permutations

    perms = sorted(permutations(range(k)))
    return permutation_group(perms)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: frozenset

    def __contains__(self, g):
        return g in self.members

    def __len__(self):
        return len(self.members)

    def sorted(self):
        return sorted(self.members)


def subgroup(group: FiniteGroup, members) -> Subgroup:
    members = frozenset(members)
    if group.identity not in members:
        raise GroupError("subgroup must contain the identity")
    for a in members:
        if group.inv(a) not in members:
            raise GroupError(f"not closed under inverses at {a}")
        for b in members:
            if group.mul(a, b) not in members:
                raise GroupError(f"not closed under products at ({a},{b})")
    return Subgroup(group, members)


def generated_subgroup(group: FiniteGroup, gens) -> Subgroup:
    members = {group.identity}
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = group.mul(a, g)
            if b not in members:
                members.add(b)
                frontier.append(b)
    return subgroup(group, members)


@dataclass(frozen=True)
class Transversal:
    subgroup: Subgroup
    reps: tuple
    bar: tuple = field(repr=False)

    def __iter__(self):
        return iter(self.reps)

    def __len__(self):
        return len(self.reps)


def left_transversal(group: FiniteGroup, h: Subgroup, reps=None) -> Transversal:
    """Left coset representatives of ``h``, identity first.

    By default the smallest index is chosen in every coset other than ``h``
    itself. ``reps`` overrides the choice; it must hit every coset once and
    contain the identity.
    """
    cosets = {}
    for x in group.elements:
        key = frozenset(group.mul(x, m) for m in h.members)
        cosets.setdefault(key, []).append(x)
    if reps is None:
        chosen = []
        for key, xs in cosets.items():
            chosen.append(group.identity if group.identity in key else min(xs))
        chosen.sort(key=lambda r: (r != group.identity, r))
    else:
        chosen = list(reps)
        if not chosen or chosen[0] != group.identity:
            raise GroupError("transversal must start with the identity")
        keys = [frozenset(group.mul(r, m) for m in h.members) for r in chosen]
        if len(set(keys)) != len(keys) or set(keys) != set(cosets):
            raise GroupError("representatives do not form a left transversal")
    bar = [None] * group.order
    for r in chosen:
        for m in h.members:
            bar[group.mul(r, m)] = r
    return Transversal(h, tuple(chosen), tuple(bar))
