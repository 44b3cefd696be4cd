"""Exact arithmetic in finite products of matrix blocks M_k(Z/p^e)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import gcd, log2


class RingMismatch(ValueError):
    pass


class NotAUnit(ArithmeticError):
    def __init__(self, block, msg=None):
        self.block = block
        super().__init__(msg or f"entry at block {block} is not invertible")


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# -- matrices over Z/n, stored as tuples of row tuples ------------------------


def mat_identity(k, n=None):
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def mat_zero(k):
    return tuple((0,) * k for _ in range(k))


def mat_add(a, b, n):
    return tuple(tuple((x + y) % n for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b, n):
    return tuple(tuple((x - y) % n for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a, n):
    return tuple(tuple(-x % n for x in r) for r in a)


def mat_scale(c, a, n):
    return tuple(tuple(c * x % n for x in r) for r in a)


def mat_mul(a, b, n):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) % n for c in cols) for r in a)


def mat_reduce(a, n):
    return tuple(tuple(int(x) % n for x in r) for r in a)


def mat_det(a, n):
    k = len(a)
    if k == 1:
        return a[0][0] % n
    if k == 2:
        return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % n
    total = 0
    for j in range(k):
        minor = tuple(r[:j] + r[j + 1:] for r in a[1:])
        sign = -1 if j % 2 else 1
        total += sign * a[0][j] * mat_det(minor, n)
    return total % n


def mat_adjugate(a, n):
    k = len(a)
    if k == 1:
        return ((1,),)
    adj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = tuple(r[:j] + r[j + 1:] for ri, r in enumerate(a) if ri != i)
            sign = -1 if (i + j) % 2 else 1
            adj[j][i] = sign * mat_det(minor, n) % n
    return tuple(tuple(r) for r in adj)


def mat_inverse(a, n):
    """Inverse over Z/n, or None when the determinant is not a unit."""
    d = mat_det(a, n)
    if gcd(d, n) != 1:
        return None
    return mat_scale(pow(d, -1, n), mat_adjugate(a, n), n)


# -- block types and product rings -----------------------------------------


@dataclass(frozen=True)
class BlockType:
    k: int
    p: int
    e: int = 1

    def __post_init__(self):
        if self.k < 1 or self.e < 1:
            raise ValueError(f"bad block shape {self}")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")

    @property
    def modulus(self):
        return self.p ** self.e

    @property
    def size(self):
        return self.modulus ** (self.k * self.k)

    def label(self):
        base = f"Z/{self.modulus}" if self.e > 1 else f"F_{self.p}"
        return base if self.k == 1 else f"M_{self.k}({base})"


@dataclass(frozen=True)
class ProductRing:
    blocks: tuple

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a product ring needs at least one block")
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def __len__(self):
        return len(self.blocks)

    @property
    def all_blocks(self):
        return frozenset(range(len(self.blocks)))

    def modulus(self, i):
        return self.blocks[i].modulus

    def log2_size(self, support=None):
        support = self.all_blocks if support is None else support
        return sum(log2(self.blocks[i].size) for i in support)

    def size(self, support=None):
        support = self.all_blocks if support is None else support
        n = 1
        for i in support:
            n *= self.blocks[i].size
        return n

    def element(self, entries) -> "RingElement":
        if len(entries) != len(self.blocks):
            raise RingMismatch("wrong number of block entries")
        out = []
        for b, m in zip(self.blocks, entries):
            if isinstance(m, int):
                m = mat_scale(m, mat_identity(b.k), b.modulus)
            m = mat_reduce(m, b.modulus)
            if len(m) != b.k or any(len(r) != b.k for r in m):
                raise RingMismatch(f"entry shape does not match {b.label()}")
            out.append(m)
        return RingElement(self, tuple(out))

    def scalars(self, values) -> "RingElement":
        """Element with scalar matrix ``values[i]`` on block i."""
        return self.element(list(values))

    def zero(self):
        return RingElement(self, tuple(mat_zero(b.k) for b in self.blocks))

    def one(self):
        return self.idempotent(self.all_blocks)

    def idempotent(self, support) -> "RingElement":
        """The central idempotent that is 1 on ``support`` and 0 elsewhere."""
        support = frozenset(support)
        return RingElement(
            self,
            tuple(mat_identity(b.k) if i in support else mat_zero(b.k)
                  for i, b in enumerate(self.blocks)),
        )

    def block_element(self, i, m) -> "RingElement":
        entries = [mat_zero(b.k) for b in self.blocks]
        entries[i] = mat_reduce(m, self.blocks[i].modulus)
        return RingElement(self, tuple(entries))

    def spanning_set(self, support=None):
        """Additive generators of the ideal on ``support``.

        Matrix units on each block, plus their p-power multiples when e > 1.
        """
        support = self.all_blocks if support is None else frozenset(support)
        out = []
        for i in sorted(support):
            b = self.blocks[i]
            for r, c in product(range(b.k), repeat=2):
                for s in range(b.e):
                    m = [[0] * b.k for _ in range(b.k)]
                    m[r][c] = b.p ** s
                    out.append(self.block_element(i, m))
        return out

    def elements(self, support=None):
        """Every element of the ideal on ``support``; only for tiny rings."""
        support = self.all_blocks if support is None else frozenset(support)
        per_block = []
        for i, b in enumerate(self.blocks):
            if i in support:
                mats = []
                for vals in product(range(b.modulus), repeat=b.k * b.k):
                    mats.append(tuple(tuple(vals[r * b.k:(r + 1) * b.k]) for r in range(b.k)))
                per_block.append(mats)
            else:
                per_block.append([mat_zero(b.k)])
        for combo in product(*per_block):
            yield RingElement(self, tuple(combo))

    def random_element(self, rng, support=None) -> "RingElement":
        support = self.all_blocks if support is None else frozenset(support)
        entries = []
        for i, b in enumerate(self.blocks):
            if i in support:
                entries.append(tuple(tuple(rng.randrange(b.modulus) for _ in range(b.k))
                                     for _ in range(b.k)))
            else:
                entries.append(mat_zero(b.k))
        return RingElement(self, tuple(entries))

    def sample(self, support=None, limit=256, seed=0):
        """All elements of the ideal if there are at most ``limit``, else a seeded sample."""
        if self.size(support) <= limit:
            return list(self.elements(support))
        rng = random.Random(seed)
        return [self.random_element(rng, support) for _ in range(limit)]

    def units(self, support=None):
        """Units of the ideal on ``support`` by exhaustive search."""
        support = self.all_blocks if support is None else frozenset(support)
        one = self.idempotent(support)
        elems = list(self.elements(support))
        return [x for x in elems if any(x * y == one and y * x == one for y in elems)]

    def block_types_match(self, i, j):
        return self.blocks[i] == self.blocks[j]

    def vector_moduli(self):
        """Modulus of each coordinate of RingElement.vector()."""
        return [b.modulus for b in self.blocks for _ in range(b.k * b.k)]

    def from_vector(self, vec) -> "RingElement":
        vec = list(vec)
        entries, pos = [], 0
        for b in self.blocks:
            flat = vec[pos:pos + b.k * b.k]
            pos += b.k * b.k
            entries.append(tuple(tuple(int(x) % b.modulus for x in flat[r * b.k:(r + 1) * b.k])
                                 for r in range(b.k)))
        return RingElement(self, tuple(entries))


@dataclass(frozen=True)
class RingElement:
    ring: ProductRing
    entries: tuple

    def _check(self, other):
        if not isinstance(other, RingElement) or other.ring != self.ring:
            raise RingMismatch("operands live in different rings")

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, tuple(
            mat_add(a, b, blk.modulus)
            for a, b, blk in zip(self.entries, other.entries, self.ring.blocks)))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, tuple(
            mat_sub(a, b, blk.modulus)
            for a, b, blk in zip(self.entries, other.entries, self.ring.blocks)))

    def __neg__(self):
        return RingElement(self.ring, tuple(
            mat_neg(a, blk.modulus) for a, blk in zip(self.entries, self.ring.blocks)))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return RingElement(self.ring, tuple(
            mat_mul(a, b, blk.modulus)
            for a, b, blk in zip(self.entries, other.entries, self.ring.blocks)))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        return RingElement(self.ring, tuple(
            mat_scale(c, a, blk.modulus) for a, blk in zip(self.entries, self.ring.blocks)))

    def is_zero(self):
        return all(x == 0 for m in self.entries for r in m for x in r)

    def support(self):
        """Blocks carrying a nonzero entry."""
        return frozenset(i for i, m in enumerate(self.entries)
                         if any(x for r in m for x in r))

    def pr(self, i):
        return pr(i, self)

    def vector(self):
        return [x for m in self.entries for r in m for x in r]

    def __repr__(self):
        parts = []
        for m in self.entries:
            parts.append(str(m[0][0]) if len(m) == 1 else str([list(r) for r in m]))
        return "(" + ", ".join(parts) + ")"


def pr(i, x: RingElement) -> RingElement:
    """Projection onto block i (other blocks zeroed)."""
    return x.ring.block_element(i, x.entries[i])


def restrict_to(x: RingElement, support) -> RingElement:
    return x * x.ring.idempotent(support)


def try_invert(x: RingElement, support=None) -> RingElement:
    """Inverse of ``x`` inside the ideal on ``support``.

    Raises NotAUnit naming the first block whose entry has a non-unit
    determinant, or whose entry is nonzero outside ``support``.
    """
    ring = x.ring
    support = ring.all_blocks if support is None else frozenset(support)
    out = []
    for i, (m, b) in enumerate(zip(x.entries, ring.blocks)):
        if i in support:
            inv = mat_inverse(m, b.modulus)
            if inv is None:
                raise NotAUnit(i)
            out.append(inv)
        else:
            if any(v for r in m for v in r):
                raise NotAUnit(i, f"entry at block {i} lies outside the support")
            out.append(mat_zero(b.k))
    return RingElement(ring, tuple(out))


def is_unit(x: RingElement, support=None) -> bool:
    try:
        try_invert(x, support)
    except NotAUnit:
        return False
    return True


def brute_force_inverse(x: RingElement, support=None):
    """Search the ideal for an inverse; a test oracle for tiny blocks."""
    ring = x.ring
    support = ring.all_blocks if support is None else frozenset(support)
    one = ring.idempotent(support)
    for y in ring.elements(support):
        if x * y == one and y * x == one:
            return y
    return None


def extend_unit(w: RingElement, support) -> RingElement:
    """w + 1 - 1_S: a partial unit on S padded to a unit of the whole ring."""
    ring = w.ring
    return restrict_to(w, support) + ring.one() - ring.idempotent(support)


@dataclass(frozen=True)
class BlockIso:
    """a -> u a u^-1 from one block onto an equal-shape block."""

    source: int
    target: int
    conjugator: tuple

    def apply(self, m, modulus):
        return mat_mul(mat_mul(self.conjugator, m, modulus), self.inverse_conjugator(modulus), modulus)

    def inverse_conjugator(self, modulus):
        inv = mat_inverse(self.conjugator, modulus)
        if inv is None:
            raise NotAUnit(self.target, "conjugator is not invertible")
        return inv

    def inverse(self, modulus):
        return BlockIso(self.target, self.source, self.inverse_conjugator(modulus))


def recover_conjugator(sigma, k, modulus):
    """Find u with sigma(a) = u a u^-1 for an inner automorphism of M_k(Z/n).

    ``sigma`` maps a matrix to a matrix. u' = sum_i sigma(E_i1) M E_1i
    intertwines sigma for any M; choosing M = E_a1 makes it a unit multiple of
    u for some a.
    """
    def unit_matrix(r, c):
        return tuple(tuple(int(i == r and j == c) for j in range(k)) for i in range(k))

    for a in range(k):
        m = unit_matrix(a, 0)
        u = mat_zero(k)
        for i in range(k):
            u = mat_add(u, mat_mul(mat_mul(sigma(unit_matrix(i, 0)), m, modulus), unit_matrix(0, i), modulus), modulus)
        if mat_inverse(u, modulus) is not None:
            return u
    return None
