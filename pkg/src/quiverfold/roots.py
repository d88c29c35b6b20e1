"""Positive roots of a symmetrizable Kac-Moody root system, up to a height.

Simple reflections act by s_i(alpha) = alpha - (C alpha)_i e_i. Real roots
are reached from simple roots by height-increasing reflections; imaginary
roots from the fundamental set (connected support, C alpha <= 0) the same
way.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import HeightExceeded, NotARoot
from .folding import CartanMatrix, cartan, hat_sigma
from .quiver import AdAutomorphism, AdQuiver, DimVec, sigma_on_dimvec

REAL, IMAGINARY, NOT_A_ROOT = "real", "imaginary", "not_a_root"


def reflect(C: CartanMatrix, i: int, alpha: Sequence[int]) -> DimVec:
    c = sum(a * x for a, x in zip(C.entries[i], alpha))
    out = list(alpha)
    out[i] -= c
    return tuple(out)


def vectors_up_to_height(n: int, H: int) -> list[DimVec]:
    """All non-zero vectors in N^n of height <= H, by (height, lex)."""
    out: list[DimVec] = []

    def rec(prefix, left, k):
        if k == n:
            if sum(prefix):
                out.append(tuple(prefix))
            return
        for x in range(left + 1):
            rec(prefix + [x], left - x, k + 1)

    rec([], H, 0)
    out.sort(key=lambda v: (sum(v), v))
    return out


def connected_support(C: CartanMatrix, alpha: Sequence[int]) -> bool:
    supp = [i for i, a in enumerate(alpha) if a]
    if not supp:
        return False
    seen, todo = {supp[0]}, [supp[0]]
    while todo:
        i = todo.pop()
        for j in supp:
            if j not in seen and C.entries[i][j] != 0:
                seen.add(j)
                todo.append(j)
    return len(seen) == len(supp)


def in_fundamental_set(C: CartanMatrix, alpha: Sequence[int]) -> bool:
    return connected_support(C, alpha) and all(x <= 0 for x in C.apply(alpha))


@dataclass(frozen=True)
class RootSet:
    cartan: CartanMatrix
    height: int
    tags: tuple[tuple[DimVec, str], ...]   # sorted by (height, lex)

    def tag(self, alpha: Sequence[int]) -> str:
        alpha = tuple(alpha)
        if sum(alpha) > self.height:
            raise HeightExceeded(f"height {sum(alpha)} exceeds the bound {self.height}")
        return dict(self.tags).get(alpha, NOT_A_ROOT)

    def real(self) -> list[DimVec]:
        return [a for a, t in self.tags if t == REAL]

    def imaginary(self) -> list[DimVec]:
        return [a for a, t in self.tags if t == IMAGINARY]

    def __len__(self) -> int:
        return len(self.tags)

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in dict(self.tags)

    def rows(self) -> list[tuple[int, DimVec, str]]:
        return [(sum(a), a, t) for a, t in self.tags]


def _close_upwards(C: CartanMatrix, seeds: Sequence[DimVec], H: int) -> set[DimVec]:
    found = set(seeds)
    queue = deque(seeds)
    while queue:
        a = queue.popleft()
        for i in range(C.size):
            b = reflect(C, i, a)
            if sum(b) > sum(a) and sum(b) <= H and b not in found:
                found.add(b)
                queue.append(b)
    return found


def generate_roots(C: CartanMatrix, H: int) -> RootSet:
    if H < 1:
        raise ValueError("height bound must be at least 1")
    n = C.size
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    real = _close_upwards(C, simple, H)
    fundamental = [a for a in vectors_up_to_height(n, H) if in_fundamental_set(C, a)]
    imag = _close_upwards(C, fundamental, H)
    assert not real & imag, "a vector cannot be both real and imaginary"
    tags = [(a, REAL) for a in real] + [(a, IMAGINARY) for a in imag]
    tags.sort(key=lambda t: (sum(t[0]), t[0]))
    return RootSet(C, H, tuple(tags))


def classify(C: CartanMatrix | RootSet, alpha: Sequence[int], H: int | None = None) -> str:
    if isinstance(C, RootSet):
        return C.tag(alpha)
    return generate_roots(C, H if H is not None else max(1, sum(alpha))).tag(alpha)


def sigma_period(sigma: AdAutomorphism, beta: Sequence[int]) -> int:
    beta = tuple(beta)
    cur, t = sigma_on_dimvec(sigma, beta), 1
    while cur != beta:
        cur = sigma_on_dimvec(sigma, cur)
        t += 1
    return t


def orbit_sum(sigma: AdAutomorphism, beta: Sequence[int]) -> DimVec:
    """beta + sigma beta + ... + sigma^{t-1} beta over one sigma-period."""
    acc, cur = list(beta), tuple(beta)
    for _ in range(sigma_period(sigma, beta) - 1):
        cur = sigma_on_dimvec(sigma, cur)
        acc = [a + c for a, c in zip(acc, cur)]
    return tuple(acc)


def fold_root(adq: AdQuiver, beta: Sequence[int]) -> DimVec:
    beta = tuple(beta)
    if not sum(beta) or beta not in generate_roots(cartan(adq.quiver), sum(beta)):
        raise NotARoot(f"{beta} is not a positive root of the quiver")
    return hat_sigma(adq, orbit_sum(adq.sigma, beta))
