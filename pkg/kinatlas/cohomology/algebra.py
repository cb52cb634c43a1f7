# -*- coding: utf-8 -*-
"""
Graded commutative GF(2) algebras presented by generators x with relations x^order = 0, their tensor products and
homomorphisms between them.

Such an algebra has the monomial basis x1^e1 ... xk^ek with 0 <= ei < order_i, numbered in mixed radix (generator 1
is the lowest digit). The product of two basis monomials is zero when some exponent overflows, and otherwise the
monomial whose index is the sum of the two indices. Elements are int bitsets over this basis.
"""
import logging
from collections import namedtuple

import numpy as np

from kinatlas.cohomology import gf2
from kinatlas.errors import SizeError, ConstructionError, InvalidInput

logger = logging.getLogger(__name__)

Generator = namedtuple('Generator', ['name', 'degree', 'order'])

MAX_DIM = 2 ** 16

# Associativity is checked on all basis pairs up to this dimension, CHECK_ROWS rows per block.
CHECK_DIM = 2 ** 12
CHECK_ROWS = 64

# Homomorphisms are checked on all basis pairs up to this source dimension.
HOM_CHECK_DIM = 64


class GradedAlgebra(object):

    def __init__(self, generators, blocks=None):
        self.generators = tuple(Generator(*g) for g in generators)
        for g in self.generators:
            if g.degree < 1 or g.order < 2:
                raise InvalidInput("Generator %s needs degree >= 1 and order >= 2" % (g,))
        dim = 1
        self.strides = []
        for g in self.generators:
            self.strides.append(dim)
            dim *= g.order
        if dim > MAX_DIM:
            raise SizeError("Algebra of dimension %d exceeds %d" % (dim, MAX_DIM))
        self.dim = dim
        # generator counts of the tensor factors, for display
        self.blocks = tuple(blocks) if blocks else (len(self.generators),)
        self.exponents = [self._digits(i) for i in range(dim)]
        self.degrees = [sum(e * g.degree for e, g in zip(exps, self.generators)) for exps in self.exponents]
        self.top_degree = max(self.degrees)
        if dim <= CHECK_DIM:
            self._check_associative()

    def _digits(self, i):
        out = []
        for g in self.generators:
            out.append(i % g.order)
            i //= g.order
        return tuple(out)

    def basis_product(self, i, j):
        """Index of the product of basis monomials i and j, or None when it vanishes."""
        for a, b, g in zip(self.exponents[i], self.exponents[j], self.generators):
            if a + b >= g.order:
                return None
        return i + j

    def mul(self, a, b):
        out = 0
        for i in gf2.bits(a):
            for j in gf2.bits(b):
                k = self.basis_product(i, j)
                if k is not None:
                    out ^= 1 << k
        return out

    def power(self, a, n):
        out = 1
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def product(self, elements):
        out = 1
        for a in elements:
            out = self.mul(out, a)
        return out

    @property
    def one(self):
        return 1

    def gen(self, key):
        """The element of a generator, by index or name."""
        if isinstance(key, str):
            names = [g.name for g in self.generators]
            if key not in names:
                raise InvalidInput("No generator named %s" % key)
            key = names.index(key)
        return 1 << self.strides[key]

    def basis_in_degree(self, d):
        return [i for i in range(self.dim) if self.degrees[i] == d]

    def degree_of(self, a):
        """Degree of a non-zero homogeneous element; None for zero."""
        ds = {self.degrees[i] for i in gf2.bits(a)}
        if not ds:
            return None
        if len(ds) > 1:
            raise InvalidInput("Element is not homogeneous (degrees %s)" % sorted(ds))
        return ds.pop()

    def monomial_name(self, i):
        parts = []
        start = 0
        for size in self.blocks:
            factors = []
            for g, e in zip(self.generators[start:start + size], self.exponents[i][start:start + size]):
                if e == 1:
                    factors.append(g.name)
                elif e > 1:
                    factors.append("%s^%d" % (g.name, e))
            parts.append("".join(factors) or "1")
            start += size
        return "⊗".join(parts)

    def format(self, a):
        if not a:
            return "0"
        return " + ".join(self.monomial_name(i) for i in sorted(gf2.bits(a), key=lambda i: (self.degrees[i], i)))

    def _check_associative(self):
        """
        Every basis triple associates when each non-vanishing pair product i + j carries the summed exponents of i
        and j. All pairs are checked, CHECK_ROWS rows at a time.
        """
        exps = np.array(self.exponents, dtype=np.int32)
        orders = np.array([g.order for g in self.generators], dtype=np.int32)
        columns = np.arange(self.dim)
        for start in range(0, self.dim, CHECK_ROWS):
            summed = exps[start:start + CHECK_ROWS, None, :] + exps[None, :, :]
            rows, cols = np.nonzero(np.all(summed < orders, axis=2))
            products = start + rows + columns[cols]
            bad = products >= self.dim
            bad[~bad] = np.any(exps[products[~bad]] != summed[rows[~bad], cols[~bad]], axis=1)
            if np.any(bad):
                k = int(np.argmax(bad))
                raise ConstructionError("Multiplication is not associative: basis product (%d, %d) does not add "
                                        "exponents" % (start + rows[k], cols[k]))

    def __repr__(self):
        return "<GradedAlgebra dim %d on %s>" % (self.dim, ", ".join(g.name for g in self.generators))


def exterior_algebra(n, name='x'):
    """Lambda(x1, ..., xn) with deg xi = 1, the GF(2) cohomology of T^n."""
    if not 1 <= n <= 12:
        raise SizeError("Exterior algebras are supported on 1..12 generators, got %d" % n)
    return GradedAlgebra([("%s%d" % (name, i + 1), 1, 2) for i in range(n)])


def truncated_poly(m, degree=1, name='u'):
    """Z2[u]/(u^m) with deg u = degree."""
    if m < 2:
        raise InvalidInput("Truncation order must be at least 2, got %d" % m)
    return GradedAlgebra([(name, degree, m)])


def tensor(a, b):
    if a.dim * b.dim > MAX_DIM:
        raise SizeError("Tensor product of dimension %d exceeds %d" % (a.dim * b.dim, MAX_DIM))
    return GradedAlgebra(a.generators + b.generators, blocks=(len(a.generators), len(b.generators)))


class GradedHom(object):
    """An algebra homomorphism given by the images of the source generators."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = tuple(int(x) for x in images)
        if len(self.images) != len(source.generators):
            raise ConstructionError("Need one image per generator of the source, got %d for %d"
                                    % (len(self.images), len(source.generators)))
        self._powers = []
        for g, image in zip(source.generators, self.images):
            if image >> target.dim:
                raise ConstructionError("Image of %s is not an element of the target" % g.name)
            d = target.degree_of(image)
            if d is not None and d != g.degree:
                raise ConstructionError("Image of %s has degree %d, expected %d" % (g.name, d, g.degree))
            powers = [1]
            for _ in range(g.order):
                powers.append(target.mul(powers[-1], image))
            if powers[g.order]:
                raise ConstructionError("%s^%d = 0 but its image does not vanish" % (g.name, g.order))
            self._powers.append(powers)
        self._basis_images = [self._monomial_image(i) for i in range(source.dim)]
        if source.dim <= HOM_CHECK_DIM:
            self._check_multiplicative()

    def _monomial_image(self, i):
        out = 1
        for powers, e in zip(self._powers, self.source.exponents[i]):
            if e:
                out = self.target.mul(out, powers[e])
                if not out:
                    break
        return out

    def map_basis(self, i):
        return self._basis_images[i]

    def __call__(self, a):
        out = 0
        for i in gf2.bits(a):
            out ^= self._basis_images[i]
        return out

    def _check_multiplicative(self):
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                k = self.source.basis_product(i, j)
                lhs = 0 if k is None else self._basis_images[k]
                if lhs != self.target.mul(self._basis_images[i], self._basis_images[j]):
                    raise ConstructionError("Homomorphism is not multiplicative on basis pair (%d, %d)" % (i, j))

    def __repr__(self):
        return "<GradedHom %r -> %r>" % (self.source, self.target)


def induced_product_hom(fstar):
    """Id x F*: H*(C) (x) H*(W) -> H*(C), c (x) a -> c F*(a), for F*: H*(W) -> H*(C)."""
    config, work = fstar.target, fstar.source
    source = tensor(config, work)
    images = [config.gen(i) for i in range(len(config.generators))] + list(fstar.images)
    logger.debug("Built Id x F* on an algebra of dimension %d" % source.dim)
    return GradedHom(source, config, images)


class KernelIdeal(object):
    """
    Ker(Id x F*): `basis` maps degree to a GF(2) basis of the kernel in that degree, `generators` are the ideal
    generators 1 (x) a + F*(a) (x) 1, one per generator a of H*(W).
    """

    def __init__(self, hom, basis, generators):
        self.hom = hom
        self.algebra = hom.source
        self.basis = basis
        self.generators = tuple(generators)
        for d, vectors in basis.items():
            for v in vectors:
                if hom(v):
                    raise ConstructionError("Kernel vector %s in degree %d does not map to zero"
                                            % (self.algebra.format(v), d))

    def all_basis(self):
        return [v for d in sorted(self.basis) for v in self.basis[d]]

    @property
    def dim(self):
        return sum(len(v) for v in self.basis.values())

    def __repr__(self):
        return "<KernelIdeal dim %d, %d generators>" % (self.dim, len(self.generators))


def kernel(hom, work_generators=None):
    """
    Kernel of an induced product homomorphism. The ideal generators are formed for the source generators past those of
    H*(C); pass `work_generators` (source generator indices) to override.
    """
    source = hom.source
    basis = {}
    for d in range(source.top_degree + 1):
        indices = source.basis_in_degree(d)
        tags = gf2.kernel([hom.map_basis(i) for i in indices])
        vectors = []
        for tag in tags:
            v = 0
            for local in gf2.bits(tag):
                v |= 1 << indices[local]
            vectors.append(v)
        if vectors:
            basis[d] = vectors
    if work_generators is None:
        work_generators = range(len(hom.target.generators), len(source.generators))
    # F*(a) (x) 1 has the same bitset as F*(a), since H*(C) occupies the low digits
    generators = [source.gen(k) ^ hom.images[k] for k in work_generators]
    return KernelIdeal(hom, basis, generators)
