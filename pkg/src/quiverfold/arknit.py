"""Auslander-Reiten quivers of Dynkin path algebras by knitting, and their
folding under the automorphism induced by sigma.

Only dimension vectors are tracked. Projectives have dim P_i(j) = number of
paths i -> j, an arrow i -> j gives an irreducible map P_j -> P_i, and the
mesh rule dim tau^-1 M = sum over arrows M -> N of dim N - dim M produces
everything else. A module is injective when its dimension vector is that of
some I_i (number of paths j -> i); for Dynkin quivers the dimension vector
determines the module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import LabelCollision, NotDynkin
from .folding import ValuedArrow, fold
from .quiver import AdAutomorphism, AdQuiver, Arrow, DimVec, Quiver, sigma_on_dimvec


def _label(v: Sequence[int]) -> str:
    return "".join(str(x) for x in v) if max(v, default=0) < 10 else ",".join(map(str, v))


def is_dynkin(Q: Quiver) -> bool:
    """Positive definiteness of 2I - (A + A^T), by leading principal minors."""
    n = Q.n_vertices
    M = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for t, h in zip(Q.tails, Q.heads):
        M[t][h] -= 1
        M[h][t] -= 1
    # Gaussian elimination without pivoting: all pivots positive iff all minors positive
    for k in range(n):
        if M[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] -= f * M[k][j]
    return True


def _path_counts(Q: Quiver) -> list[list[int]]:
    """paths[i][j] = number of paths from i to j (Q acyclic)."""
    n = Q.n_vertices
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    order = _topological(Q)
    for i in range(n):
        for v in order:
            for a in range(Q.n_arrows):
                if Q.tails[a] == v:
                    out[i][Q.heads[a]] += out[i][v]
    return out


def _topological(Q: Quiver) -> list[int]:
    indeg = [0] * Q.n_vertices
    for h in Q.heads:
        indeg[h] += 1
    ready = [v for v in range(Q.n_vertices) if indeg[v] == 0]
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        for a in range(Q.n_arrows):
            if Q.tails[a] == v:
                indeg[Q.heads[a]] -= 1
                if indeg[Q.heads[a]] == 0:
                    ready.append(Q.heads[a])
    if len(out) != Q.n_vertices:
        raise NotDynkin("quiver has an oriented cycle")
    return out


@dataclass(frozen=True)
class ARQuiver:
    quiver: Quiver
    vertices: tuple[DimVec, ...]                 # (height, lex descending)
    arrows: tuple[tuple[int, int, int], ...]     # (source, target, multiplicity)
    tau: tuple[tuple[int, int], ...]             # (M, tau M) for non-projective M
    projectives: tuple[int, ...]                 # P_i for every vertex i of the quiver
    injectives: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def tau_map(self) -> dict[int, int]:
        return dict(self.tau)

    def successors(self, v: int) -> list[tuple[int, int]]:
        return [(t, m) for s, t, m in self.arrows if s == v]

    def predecessors(self, v: int) -> list[tuple[int, int]]:
        return [(s, m) for s, t, m in self.arrows if t == v]

    def index(self, dim: Sequence[int]) -> int:
        return self.vertices.index(tuple(dim))

    def to_dot(self) -> str:
        lines = ["digraph AR {"]
        for n, v in enumerate(self.vertices):
            lines.append(f'  v{n} [label="{_label(v)}"];')
        for s, t, m in self.arrows:
            extra = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  v{s} -> v{t}{extra};")
        for m, tm in self.tau:
            lines.append(f'  v{m} -> v{tm} [style=dashed, label="tau"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sort_key(v: DimVec):
    return (sum(v), tuple(-x for x in v))


def knit(Q: Quiver) -> ARQuiver:
    if not is_dynkin(Q):
        raise NotDynkin("underlying graph is not a disjoint union of Dynkin diagrams")
    n = Q.n_vertices
    paths = _path_counts(Q)
    proj = [tuple(paths[i][j] for j in range(n)) for i in range(n)]
    inj = {tuple(paths[j][i] for j in range(n)) for i in range(n)}
    dims: list[DimVec] = list(proj)
    preds: dict[int, dict[int, int]] = {i: {} for i in range(n)}
    for a in range(Q.n_arrows):
        i, j = Q.tails[a], Q.heads[a]
        preds[i][j] = preds[i].get(j, 0) + 1        # P_j -> P_i
    tau_inv: dict[int, int] = {}
    done: set[int] = set()
    while len(done) < len(dims):
        todo = [x for x in range(len(dims)) if x not in done and all(p in done for p in preds[x])]
        if not todo:  # pragma: no cover
            raise AssertionError("knitting stalled")
        x = todo[0]
        succ: dict[int, int] = {}
        for p, m in preds[x].items():
            if p in tau_inv:
                succ[tau_inv[p]] = succ.get(tau_inv[p], 0) + m
        for y in range(n):
            if x in preds[y]:
                succ[y] = succ.get(y, 0) + preds[y][x]
        done.add(x)
        if dims[x] in inj:
            continue
        new = [-c for c in dims[x]]
        for y, m in succ.items():
            new = [a + m * b for a, b in zip(new, dims[y])]
        if any(c < 0 for c in new) or not any(new):
            raise NotDynkin("knitting produced a non-positive dimension vector")
        if len(dims) > 4 * n * n * n + 8:
            raise NotDynkin("knitting does not terminate")
        dims.append(tuple(new))
        y = len(dims) - 1
        preds[y] = dict(succ)
        tau_inv[x] = y
    if len(set(dims)) != len(dims):
        raise LabelCollision("two knitted vertices share a dimension vector")
    order = sorted(range(len(dims)), key=lambda k: _sort_key(dims[k]))
    pos = {k: p for p, k in enumerate(order)}
    arrows = sorted((pos[s], pos[t], m) for t in preds for s, m in preds[t].items())
    tau = sorted((pos[y], pos[x]) for x, y in tau_inv.items())
    return ARQuiver(Q, tuple(dims[k] for k in order), tuple(arrows), tuple(tau),
                    tuple(pos[i] for i in range(n)),
                    tuple(sorted(pos[k] for k in range(len(dims)) if dims[k] in inj)))


def mesh_defects(ar: ARQuiver) -> list[int]:
    """Vertices where dim tau M + dim M differs from the sum over the middle
    of the mesh, or where the arrows into M do not mirror those out of tau M."""
    bad = []
    for m, tm in ar.tau:
        middle = ar.successors(tm)
        total = [0] * len(ar.vertices[m])
        for v, mult in middle:
            total = [a + mult * b for a, b in zip(total, ar.vertices[v])]
        lhs = [a + b for a, b in zip(ar.vertices[m], ar.vertices[tm])]
        if lhs != total or sorted(middle) != sorted(ar.predecessors(m)):
            bad.append(m)
    return bad


# -- the induced automorphism and folding --

def ar_sigma(ar: ARQuiver, sigma: AdAutomorphism) -> tuple[int, ...]:
    """fs as a permutation of AR vertices: [M] -> [M^[1]], acting on labels."""
    index = {v: k for k, v in enumerate(ar.vertices)}
    if len(index) != len(ar.vertices):
        raise LabelCollision("dimension vectors do not identify the AR vertices")
    perm = []
    for v in ar.vertices:
        w = sigma_on_dimvec(sigma, v)
        if w not in index:
            raise LabelCollision(f"{v} maps to {w}, which is not an AR vertex")
        perm.append(index[w])
    arrows = {(s, t): m for s, t, m in ar.arrows}
    for (s, t), m in arrows.items():
        if arrows.get((perm[s], perm[t])) != m:
            raise LabelCollision("sigma does not preserve the AR arrows")
    return tuple(perm)


def as_adquiver(ar: ARQuiver, fs: Sequence[int]) -> AdQuiver:
    """The AR quiver as an ordinary quiver (one arrow per multiplicity)
    with fs as admissible automorphism."""
    labels = [_label(v) for v in ar.vertices]
    arrows, slot = [], {}
    for s, t, m in ar.arrows:
        for k in range(m):
            slot[(s, t, k)] = len(arrows)
            arrows.append(Arrow(f"{labels[s]}>{labels[t]}#{k}", labels[s], labels[t]))
    Q = Quiver(tuple(labels), tuple(arrows))
    aperm = [0] * len(arrows)
    for (s, t, k), a in slot.items():
        aperm[a] = slot[(fs[s], fs[t], k)]
    return AdQuiver(Q, AdAutomorphism(tuple(fs), tuple(aperm)))


@dataclass(frozen=True)
class ValuedARQuiver:
    labels: tuple[str, ...]
    members: tuple[tuple[DimVec, ...], ...]
    eps: tuple[int, ...]
    arrows: tuple[ValuedArrow, ...]
    tau: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def describe(self) -> list[str]:
        out = [f"{lab}: eps={e}" for lab, e in zip(self.labels, self.eps)]
        out += [f"{self.labels[a.tail]} -> {self.labels[a.head]} : ({a.d},{a.dprime})" for a in self.arrows]
        out += [f"tau {self.labels[m]} = {self.labels[t]}" for m, t in self.tau]
        return out

    def to_dot(self) -> str:
        lines = ["digraph ValuedAR {"]
        for n, (lab, e) in enumerate(zip(self.labels, self.eps)):
            lines.append(f'  o{n} [label="{lab} eps={e}"];')
        for a in self.arrows:
            lines.append(f'  o{a.tail} -> o{a.head} [label="({a.d},{a.dprime})"];')
        for m, t in self.tau:
            lines.append(f'  o{m} -> o{t} [style=dashed, label="tau"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def fold_ar(ar: ARQuiver, fs: Sequence[int]) -> ValuedARQuiver:
    adq = as_adquiver(ar, fs)
    vq = fold(adq).simple()
    orb = adq.orbits
    members = tuple(tuple(ar.vertices[k] for k in cyc) for cyc in orb.vertex)
    labels = tuple("{" + ",".join(_label(v) for v in m) + "}" for m in members)
    tau = sorted({(orb.vertex_orbit_of[m], orb.vertex_orbit_of[t]) for m, t in ar.tau})
    return ValuedARQuiver(labels, members, vq.eps, vq.arrows, tuple(tau))


def folded_ar(adq: AdQuiver) -> ValuedARQuiver:
    ar = knit(adq.quiver)
    return fold_ar(ar, ar_sigma(ar, adq.sigma))
