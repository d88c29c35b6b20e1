"""Explicit orbit partition of the folded representation space.

X = prod over arrow orbits of F_{q^{eps_rho}}^{a_head x a_tail}, acted on by
prod over vertex orbits of GL_{a_i}(F_{q^{eps_i}}) with the Frobenius offsets
of each arrow. Points are enumerated by a mixed-radix index; a generating
set of the group is applied to all points at once and orbits are the
connected components of the resulting graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .config import Config, resolve
from .errors import SizeCapExceeded
from .folding import ArrowTwist, twist_offsets
from .gf import (FieldCtx, Matrix, extension, inverse, mat_frobenius, np_left_mul,
                 np_right_mul, prime_power)
from .quiver import AdQuiver, DimVec


@dataclass
class PointSpace:
    """Index <-> point bijection for X(alpha) with entries as codes of K."""

    K: FieldCtx
    q: int
    twists: tuple[ArrowTwist, ...]
    alpha: DimVec
    vertex_eps: tuple[int, ...]

    @cached_property
    def subfields(self) -> list[np.ndarray]:
        k = prime_power(self.q)[1]
        return [np.array(self.K.subfield(k * t.eps), dtype=np.int64) for t in self.twists]

    @cached_property
    def shapes(self) -> list[tuple[int, int]]:
        return [(self.alpha[t.head], self.alpha[t.tail]) for t in self.twists]

    @cached_property
    def size(self) -> int:
        out = 1
        for sub, (h, w) in zip(self.subfields, self.shapes):
            out *= len(sub) ** (h * w)
        return out

    @cached_property
    def _lookup(self) -> list[np.ndarray]:
        out = []
        for sub in self.subfields:
            table = np.full(self.K.order, -1, dtype=np.int64)
            table[sub] = np.arange(len(sub))
            out.append(table)
        return out

    def decode(self, idx: np.ndarray) -> list[np.ndarray]:
        """Arrays of shape (len(idx), a_head, a_tail), one per arrow orbit."""
        idx = np.asarray(idx, dtype=np.int64)
        out = []
        for sub, (h, w) in zip(self.subfields, self.shapes):
            base = len(sub)
            digits = np.empty((len(idx), h * w), dtype=np.int64)
            for e in range(h * w):
                digits[:, e] = idx % base
                idx = idx // base
            out.append(sub[digits].reshape(len(digits), h, w))
        return out

    def encode(self, blocks: Sequence[np.ndarray]) -> np.ndarray:
        acc = np.zeros(len(blocks[0]) if blocks else 1, dtype=np.int64)
        mult = 1
        for X, table, sub in zip(blocks, self._lookup, self.subfields):
            flat = table[X.reshape(len(X), -1)]
            if (flat < 0).any():
                raise ValueError("entry outside the arrow's field")
            for e in range(flat.shape[1]):
                acc += flat[:, e] * mult
                mult *= len(sub)
        return acc

    def point(self, index: int) -> tuple[Matrix, ...]:
        return tuple(Matrix.from_rows(b[0].tolist(), b.shape[2]) for b in self.decode(np.array([index])))


def point_space(adq: AdQuiver, alpha: Sequence[int], q: int,
                vertex_reps: Sequence[int] | None = None,
                arrow_reps: Sequence[int] | None = None) -> PointSpace:
    orb = adq.orbits
    N = lcm(*orb.vertex_sizes, *orb.arrow_sizes) if orb.arrow else lcm(*orb.vertex_sizes)
    return PointSpace(extension(q, N), q, twist_offsets(adq, vertex_reps, arrow_reps),
                      tuple(alpha), orb.vertex_sizes)


def gl_generators(K: FieldCtx, q: int, a: int, eps: int) -> list[Matrix]:
    """A generating set of GL_a(F_{q^eps}) inside K."""
    m = prime_power(q)[1] * eps
    zeta = K.subfield_generator(m)
    if a == 0:
        return []
    diag = [zeta] + [1] * (a - 1)
    gens = [Matrix.from_rows([[diag[i] if i == j else 0 for j in range(a)] for i in range(a)], a)]
    basis = [K.pow(zeta, j) for j in range(m)]
    for u in range(a):
        for v in range(a):
            if u != v:
                for c in basis:
                    gens.append(Matrix.from_rows(
                        [[1 if i == j else (c if (i, j) == (u, v) else 0) for j in range(a)]
                         for i in range(a)], a))
    return [g for g in gens if g != Matrix.identity(a)]


def _act(space: PointSpace, vertex: int, g: Matrix, blocks: list[np.ndarray]) -> list[np.ndarray]:
    K, q = space.K, space.q
    out = []
    for t, X in zip(space.twists, blocks):
        if t.head == vertex:
            X = np_left_mul(K, mat_frobenius(K, g, t.s, q), X)
        if t.tail == vertex:
            X = np_right_mul(K, X, inverse(K, mat_frobenius(K, g, t.r, q)))
        out.append(X)
    return out


@dataclass(frozen=True)
class OrbitPartition:
    space: PointSpace
    labels: np.ndarray          # component label per point index
    n_orbits: int

    def representatives(self) -> list[int]:
        """Smallest point index of every orbit, in increasing order."""
        first = np.full(self.n_orbits, self.space.size, dtype=np.int64)
        np.minimum.at(first, self.labels, np.arange(len(self.labels), dtype=np.int64))
        return sorted(first.tolist())

    def sizes(self) -> list[int]:
        return np.bincount(self.labels, minlength=self.n_orbits).tolist()


def orbit_partition(adq: AdQuiver, alpha: Sequence[int], q: int, *,
                    vertex_reps: Sequence[int] | None = None,
                    arrow_reps: Sequence[int] | None = None,
                    config: Config | None = None) -> OrbitPartition:
    cfg = resolve(config)
    space = point_space(adq, alpha, q, vertex_reps, arrow_reps)
    P = space.size
    if P > cfg.max_points:
        raise SizeCapExceeded(f"|X| = {P} exceeds the point cap {cfg.max_points}", points=P,
                              cap=cfg.max_points)
    idx = np.arange(P, dtype=np.int64)
    blocks = space.decode(idx)
    rows, cols = [], []
    for i, (a, e) in enumerate(zip(space.alpha, space.vertex_eps)):
        if not any(t.head == i or t.tail == i for t in space.twists):
            continue
        for g in gl_generators(space.K, q, a, e):
            image = space.encode(_act(space, i, g, blocks))
            moved = image != idx
            rows.append(idx[moved])
            cols.append(image[moved])
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(P, P)).tocsr()
    n, labels = connected_components(graph, directed=True, connection="weak")
    return OrbitPartition(space, labels, int(n))
