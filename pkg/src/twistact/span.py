"""Additive spans inside a finite product of cyclic groups Z/n_1 x ... x Z/n_N.

A span is stored as the integer lattice it generates together with the
relation vectors n_i e_i, kept in echelon form with one pivot per column.
Membership is exact reduction against the pivots; the size of the span is
prod(n_i) / prod(pivots).
"""

from __future__ import annotations

from math import prod


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class ResidueSpan:
    def __init__(self, moduli, gens=()):
        self.moduli = tuple(moduli)
        self.n = len(self.moduli)
        self.pivots = [None] * self.n
        for i, m in enumerate(self.moduli):
            row = [0] * self.n
            row[i] = m
            self.pivots[i] = row
        self.ngens = 0
        for g in gens:
            self.add(g)

    def _reduce_tail(self, row, start):
        for j in range(start, self.n):
            row[j] %= self.moduli[j]
        return row

    def add(self, vec):
        """Insert a generator; returns True when the span grew."""
        v = [int(x) % m for x, m in zip(vec, self.moduli)]
        if len(v) != self.n:
            raise ValueError("vector length does not match the span")
        self.ngens += 1
        grew = False
        for c in range(self.n):
            if v[c] == 0:
                continue
            r = self.pivots[c]
            g, s, t = _xgcd(r[c], v[c])
            if g == r[c]:
                q = v[c] // r[c]
                v = [x - q * y for x, y in zip(v, r)]
                self._reduce_tail(v, c + 1)
                continue
            grew = True
            new = [s * x + t * y for x, y in zip(r, v)]
            rc, vc = r[c] // g, v[c] // g
            rest = [rc * y - vc * x for x, y in zip(r, v)]
            self.pivots[c] = self._reduce_tail(new, c + 1)
            v = self._reduce_tail(rest, c + 1)
        return grew

    def remainder(self, vec):
        v = [int(x) % m for x, m in zip(vec, self.moduli)]
        for c in range(self.n):
            r = self.pivots[c]
            q = v[c] // r[c]
            if q:
                v = [x - q * y for x, y in zip(v, r)]
                self._reduce_tail(v, c + 1)
        return v

    def __contains__(self, vec):
        return not any(self.remainder(vec))

    def size(self):
        return prod(self.moduli) // prod(r[i] for i, r in enumerate(self.pivots))

    def log2_size(self):
        from math import log2

        return log2(self.size())

    def copy(self):
        out = ResidueSpan.__new__(ResidueSpan)
        out.moduli, out.n, out.ngens = self.moduli, self.n, self.ngens
        out.pivots = [list(r) for r in self.pivots]
        return out

    def basis(self):
        """Pivot rows that are not bare relation vectors."""
        return [r for i, r in enumerate(self.pivots) if r[i] != self.moduli[i] or any(
            r[j] for j in range(self.n) if j != i)]

    def issubset(self, other: "ResidueSpan"):
        return all(r in other for r in self.basis())

    def __eq__(self, other):
        return (isinstance(other, ResidueSpan) and self.moduli == other.moduli
                and self.issubset(other) and other.issubset(self))

    def __add__(self, other):
        out = self.copy()
        for r in other.basis():
            out.add(r)
        return out

    def intersection_size(self, other):
        return self.size() * other.size() // (self + other).size()


def ring_span(ring, elems) -> ResidueSpan:
    """Additive span of ring elements, as a residue span of their vectors."""
    return ResidueSpan(ring.vector_moduli(), [e.vector() for e in elems])


def element_in(span: ResidueSpan, x) -> bool:
    return x.vector() in span
