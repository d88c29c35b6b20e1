"""Folding (Q, sigma) into its valued quiver, Cartan matrices, and the
bijection between sigma-fixed dimension vectors and vectors over orbits."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .quiver import AdQuiver, DimVec, Quiver, require_fixed


@dataclass(frozen=True)
class ValuedArrow:
    tail: int
    head: int
    eps: int
    d: int          # eps / eps_head
    dprime: int     # eps / eps_tail
    members: tuple[int, ...] = ()   # arrow indices of the orbit, along the cycle


@dataclass(frozen=True)
class ValuedQuiver:
    labels: tuple[str, ...]
    eps: tuple[int, ...]
    arrows: tuple[ValuedArrow, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.eps) or any(e < 1 for e in self.eps):
            raise ValueError("vertex weights must be positive, one per vertex")
        for a in self.arrows:
            if a.tail == a.head:
                raise ValueError("valued quivers have no loops")
            if a.d * self.eps[a.head] != a.eps or a.dprime * self.eps[a.tail] != a.eps:
                raise ValueError(f"valuation {(a.d, a.dprime)} inconsistent with weights")

    @classmethod
    def from_valuations(cls, eps: Sequence[int], arrows: Sequence[tuple[int, int, int, int]],
                        labels: Sequence[str] | None = None) -> "ValuedQuiver":
        """Abstract valued quiver from (tail, head, d, d') tuples."""
        labels = tuple(labels) if labels else tuple(str(i) for i in range(len(eps)))
        va = tuple(ValuedArrow(t, h, d * eps[h], d, dp) for t, h, d, dp in arrows)
        return cls(labels, tuple(eps), va)

    @property
    def size(self) -> int:
        return len(self.eps)

    def simple(self) -> "ValuedQuiver":
        """Merge parallel arrows with equal direction, summing valuations."""
        merged: dict[tuple[int, int], list[int]] = {}
        for a in self.arrows:
            m = merged.setdefault((a.tail, a.head), [0, 0, 0])
            m[0] += a.eps
            m[1] += a.d
            m[2] += a.dprime
        arrows = tuple(ValuedArrow(t, h, e, d, dp) for (t, h), (e, d, dp) in merged.items())
        return ValuedQuiver(self.labels, self.eps, arrows)

    def describe(self) -> list[str]:
        out = [f"{lab}: {e}" for lab, e in zip(self.labels, self.eps)]
        out += [f"{self.labels[a.tail]} -> {self.labels[a.head]} : ({a.d},{a.dprime})"
                for a in self.arrows]
        return out


def fold(adq: AdQuiver) -> ValuedQuiver:
    Q, orb = adq.quiver, adq.orbits
    labels = tuple("{" + ",".join(Q.vertices[i] for i in sorted(o)) + "}" for o in orb.vertex)
    eps = orb.vertex_sizes
    arrows = []
    for o in orb.arrow:
        rho = o[0]
        t, h = orb.vertex_orbit_of[Q.tails[rho]], orb.vertex_orbit_of[Q.heads[rho]]
        e = len(o)
        assert e % eps[t] == 0 and e % eps[h] == 0, "admissible folding has integral valuations"
        arrows.append(ValuedArrow(t, h, e, e // eps[h], e // eps[t], o))
    return ValuedQuiver(labels, eps, tuple(arrows))


@dataclass(frozen=True)
class CartanMatrix:
    labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n or row[i] != 2 or any(x > 0 for j, x in enumerate(row) if j != i):
                raise ValueError("not a generalized Cartan matrix")
        if any((self.symmetrizer[i] * self.entries[i][j] != self.symmetrizer[j] * self.entries[j][i])
               for i in range(n) for j in range(n)):
            raise ValueError("symmetrizer does not symmetrize")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(self.size) for j in range(self.size))

    def symmetrized(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.symmetrizer[i] * x for x in row) for i, row in enumerate(self.entries))

    def apply(self, alpha: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * x for a, x in zip(row, alpha)) for row in self.entries)

    def rows(self) -> list[str]:
        return [" ".join(f"{x:3d}" for x in row) for row in self.entries]


def cartan(obj: Quiver | AdQuiver | ValuedQuiver) -> CartanMatrix:
    """C_Q for a plain quiver, C_Gamma for a valued quiver.

    An AdQuiver is folded first."""
    if isinstance(obj, AdQuiver):
        obj = fold(obj)
    if isinstance(obj, Quiver):
        n = obj.n_vertices
        m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for t, h in zip(obj.tails, obj.heads):
            m[t][h] -= 1
            m[h][t] -= 1
        return CartanMatrix(obj.vertices, tuple(map(tuple, m)), (1,) * n)
    n = obj.size
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a in obj.arrows:
        # b_ij = - sum eps_rho / eps_i over arrows between i and j
        m[a.tail][a.head] -= a.eps // obj.eps[a.tail]
        m[a.head][a.tail] -= a.eps // obj.eps[a.head]
    return CartanMatrix(obj.labels, tuple(map(tuple, m)), obj.eps)


def hat_sigma(adq: AdQuiver, beta: Sequence[int]) -> DimVec:
    """sigma-fixed vector over Q_0 -> vector over the vertex orbits."""
    beta = tuple(beta)
    require_fixed(adq.sigma, beta)
    return tuple(beta[o[0]] for o in adq.orbits.vertex)


def unfold_dim(adq: AdQuiver, alpha: Sequence[int]) -> DimVec:
    orb = adq.orbits
    if len(alpha) != len(orb.vertex):
        raise ValueError(f"expected {len(orb.vertex)} orbit entries, got {len(alpha)}")
    return tuple(alpha[orb.vertex_orbit_of[i]] for i in range(adq.quiver.n_vertices))


@dataclass(frozen=True)
class ArrowTwist:
    """Numerical shadow of one arrow orbit's bimodule.

    With representatives i0, j0 of the tail and head orbits and rho0 of the
    arrow orbit, rho0 runs from sigma^r(i0) to sigma^s(j0)."""

    tail: int
    head: int
    eps: int
    r: int
    s: int


def twist_offsets(adq: AdQuiver, vertex_reps: Sequence[int] | None = None,
                  arrow_reps: Sequence[int] | None = None) -> tuple[ArrowTwist, ...]:
    """(r, s) for every arrow orbit, for the given orbit representatives
    (defaults: the canonical ones)."""
    Q, orb = adq.quiver, adq.orbits
    vreps = [o[0] for o in orb.vertex] if vertex_reps is None else list(vertex_reps)
    areps = [o[0] for o in orb.arrow] if arrow_reps is None else list(arrow_reps)
    for n, v in enumerate(vreps):
        if orb.vertex_orbit_of[v] != n:
            raise ValueError(f"vertex {v} is not in orbit {n}")
    for n, a in enumerate(areps):
        if orb.arrow_orbit_of[a] != n:
            raise ValueError(f"arrow {a} is not in orbit {n}")

    def offset(rep: int, target: int) -> int:
        cyc = orb.vertex[orb.vertex_orbit_of[rep]]
        return (cyc.index(target) - cyc.index(rep)) % len(cyc)

    out = []
    for n, rho0 in enumerate(areps):
        t, h = orb.vertex_orbit_of[Q.tails[rho0]], orb.vertex_orbit_of[Q.heads[rho0]]
        out.append(ArrowTwist(t, h, len(orb.arrow[n]),
                              offset(vreps[t], Q.tails[rho0]), offset(vreps[h], Q.heads[rho0])))
    return tuple(out)


def arrow_dimension(adq: AdQuiver, alpha: Sequence[int]) -> int:
    """D = sum over arrow orbits of eps_rho a_tail a_head (= log_q |X|)."""
    return sum(t.eps * alpha[t.tail] * alpha[t.head] for t in twist_offsets(adq))
