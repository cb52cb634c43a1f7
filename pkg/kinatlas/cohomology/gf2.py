# -*- coding: utf-8 -*-
"""
Linear algebra over GF(2) on int bitsets: bit i of a vector is its coordinate on basis element i.

Elimination always pivots on the highest set bit, so results do not depend on insertion order beyond the order of the
input vectors.
"""


def bits(v):
    """Indices of the set bits of v, ascending."""
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def weight(v):
    return bin(v).count('1')


class Echelon(object):
    """An echelon basis of a subspace, keyed by pivot (highest set bit)."""

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v):
        while v:
            pivot = v.bit_length() - 1
            row = self.rows.get(pivot)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v):
        """Add v to the span; returns True when it was independent."""
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    def contains(self, v):
        return self.reduce(v) == 0

    def __len__(self):
        return len(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]


def rank(vectors):
    return len(Echelon(vectors))


def kernel(images):
    """
    Kernel of the linear map sending basis vector i to images[i], as a list of source vectors.

    Every image is carried together with a tag recording which source vectors were combined into it; a row whose image
    reduces to zero leaves its tag as a kernel vector.
    """
    pivots = {}
    result = []
    for i, image in enumerate(images):
        v, tag = image, 1 << i
        while v:
            pivot = v.bit_length() - 1
            if pivot not in pivots:
                break
            pv, ptag = pivots[pivot]
            v ^= pv
            tag ^= ptag
        if v:
            pivots[v.bit_length() - 1] = (v, tag)
        else:
            result.append(tag)
    return result
