"""Concrete representations over GF(q^n) and their Frobenius structure.

A Rep stores one matrix per arrow (rows = head dimension). The Frobenius
twist moves data along sigma and raises entries to the q-th power. An
F-stable representation carries semilinear maps F: V_i -> V_sigma(i),
v -> P_i v^[1]; in the canonical basis every P_i is the identity.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import lcm
from typing import Callable, Iterator, Sequence

import numpy as np

from .config import Config, resolve
from .errors import NotNormalized, ParseError, SearchCapExceeded
from .folding import hat_sigma, unfold_dim
from .gf import (FieldCtx, Matrix, block_diag, embedding, extension, field as gf_field, inverse,
                 is_invertible, mat_frobenius, matmul, nullspace, prime_power, rank, solve)
from .orbits import orbit_partition
from .quiver import AdAutomorphism, AdQuiver, DimVec, Quiver, load, sigma_on_dimvec
from .roots import sigma_period


# -- representations --

@dataclass(frozen=True)
class Rep:
    adq: AdQuiver
    q: int
    level: int                      # entries live in GF(q^level)
    dims: DimVec                    # one per vertex of the quiver
    mats: tuple[Matrix, ...]        # one per arrow, head x tail

    def __post_init__(self):
        Q = self.adq.quiver
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "mats", tuple(self.mats))
        if len(self.dims) != Q.n_vertices or any(d < 0 for d in self.dims):
            raise ValueError(f"need {Q.n_vertices} non-negative dimensions")
        if len(self.mats) != Q.n_arrows:
            raise ValueError(f"need {Q.n_arrows} matrices")
        order = self.ctx.order
        for a, M in enumerate(self.mats):
            want = (self.dims[Q.heads[a]], self.dims[Q.tails[a]])
            if M.shape != want:
                raise ValueError(f"arrow {Q.arrows[a].id} has shape {M.shape}, expected {want}")
            if any(not 0 <= x < order for x in M.data):
                raise ValueError(f"entry outside GF({order})")

    @property
    def ctx(self) -> FieldCtx:
        return extension(self.q, self.level)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @classmethod
    def zero(cls, adq: AdQuiver, q: int, level: int, dims: Sequence[int]) -> "Rep":
        Q = adq.quiver
        return cls(adq, q, level, tuple(dims),
                   tuple(Matrix.zeros(dims[Q.heads[a]], dims[Q.tails[a]]) for a in range(Q.n_arrows)))

    @classmethod
    def simple(cls, adq: AdQuiver, q: int, level: int, vertex: int) -> "Rep":
        return cls.zero(adq, q, level, [int(i == vertex) for i in range(adq.quiver.n_vertices)])

    def direct_sum(self, other: "Rep") -> "Rep":
        _same_setting(self, other)
        return Rep(self.adq, self.q, self.level, tuple(a + b for a, b in zip(self.dims, other.dims)),
                   tuple(block_diag([x, y]) for x, y in zip(self.mats, other.mats)))

    def lift(self, level: int) -> "Rep":
        """The same representation with entries viewed in GF(q^level)."""
        if level % self.level:
            raise ValueError(f"GF(q^{self.level}) does not embed in GF(q^{level})")
        if level == self.level:
            return self
        table = embedding(self.ctx, extension(self.q, level))
        return Rep(self.adq, self.q, level, self.dims,
                   tuple(Matrix(M.rows, M.cols, tuple(table[x] for x in M.data)) for M in self.mats))

    def to_json(self) -> dict:
        Q = self.adq.quiver
        return {"q": self.q, "level": self.level,
                "dims": {v: d for v, d in zip(Q.vertices, self.dims)},
                "arrows": {a.id: M.tolist() for a, M in zip(Q.arrows, self.mats)}}


def _same_setting(R1: Rep, R2: Rep) -> None:
    if R1.adq.quiver != R2.adq.quiver or R1.q != R2.q or R1.level != R2.level:
        raise ValueError("representations live on different quivers or fields")


def _entry(F: FieldCtx, x) -> int:
    """An int code, or a coefficient list [c_0, c_1, ...] over GF(p)."""
    if isinstance(x, int):
        return x
    ds = list(x)
    if len(ds) > F.n or any(not (isinstance(c, int) and 0 <= c < F.p) for c in ds):
        raise ValueError(f"bad coefficient list {x!r} for GF({F.order})")
    return F.from_digits(ds + [0] * (F.n - len(ds)))


def parse_rep(text: str, adq: AdQuiver | None = None) -> Rep:
    """Read {"quiver": ..., "q": 2, "level": 2, "dims": {...}, "arrows": {id: rows}}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"representation file is not JSON: {e}") from None
    if adq is None:
        if "quiver" not in obj:
            raise ParseError("representation file names no quiver")
        adq = load(obj["quiver"])
    Q = adq.quiver
    try:
        q, level = int(obj["q"]), int(obj.get("level", 1))
        dims = obj["dims"]
        dims = tuple(int(dims.get(v, 0)) for v in Q.vertices) if isinstance(dims, dict) else tuple(dims)
        arrows = obj.get("arrows", {})
        F = extension(q, level)
        unknown = set(arrows) - set(Q.aindex)
        if unknown:
            raise ParseError(f"unknown arrows {sorted(unknown)}")
        mats = []
        for a in Q.arrows:
            h, w = dims[Q.vindex[a.head]], dims[Q.vindex[a.tail]]
            rows = arrows.get(a.id)
            if rows is not None:
                rows = [[_entry(F, x) for x in r] for r in rows]
            mats.append(Matrix.zeros(h, w) if rows is None else Matrix.from_rows(rows, w))
        return Rep(adq, q, level, dims, tuple(mats))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"bad representation file: {e}") from None


# -- Frobenius twist --

def _twist_once(R: Rep) -> Rep:
    sig, F = R.adq.sigma, R.ctx
    dims = [0] * len(R.dims)
    for i, d in enumerate(R.dims):
        dims[sig.vertex_perm[i]] = d
    mats: list = [None] * len(R.mats)
    for a, M in enumerate(R.mats):
        mats[sig.arrow_perm[a]] = mat_frobenius(F, M, 1, R.q)
    return Rep(R.adq, R.q, R.level, tuple(dims), tuple(mats))


def _untwist_once(R: Rep) -> Rep:
    sig, F = R.adq.sigma, R.ctx
    dims = tuple(R.dims[sig.vertex_perm[i]] for i in range(len(R.dims)))
    mats = tuple(mat_frobenius(F, R.mats[sig.arrow_perm[a]], -1, R.q) for a in range(len(R.mats)))
    return Rep(R.adq, R.q, R.level, dims, mats)


def twist(R: Rep, s: int = 1) -> Rep:
    """R^[s]; negative s untwists."""
    for _ in range(abs(s)):
        R = _twist_once(R) if s > 0 else _untwist_once(R)
    return R


def untwist(R: Rep, s: int = 1) -> Rep:
    return twist(R, -s)


# -- linear algebra over GF(q^n) --

def _blocks(rows: Sequence[int], cols: Sequence[int]) -> list[tuple[int, int, int]]:
    out, off = [], 0
    for r, c in zip(rows, cols):
        out.append((off, r, c))
        off += r * c
    return out


def _hom_equations(F: FieldCtx, R1: Rep, R2: Rep) -> tuple[Matrix, list[tuple[int, int, int]]]:
    """Matrix of h -> (f2 h_tail - h_head f1) over all arrows."""
    Q = R1.adq.quiver
    blocks = _blocks(R2.dims, R1.dims)
    n = sum(r * c for _, r, c in blocks)
    rows = []
    for a in range(Q.n_arrows):
        i, j = Q.tails[a], Q.heads[a]
        f1, f2 = R1.mats[a], R2.mats[a]
        oi, _, ci = blocks[i]
        oj, _, cj = blocks[j]
        for u in range(R2.dims[j]):
            for v in range(R1.dims[i]):
                row = [0] * n
                for k in range(R2.dims[i]):
                    if f2[u, k]:
                        row[oi + k * ci + v] = F.add(row[oi + k * ci + v], f2[u, k])
                for k in range(R1.dims[j]):
                    if f1[k, v]:
                        row[oj + u * cj + k] = F.sub(row[oj + u * cj + k], f1[k, v])
                rows.append(row)
    return Matrix.from_rows(rows, n), blocks


def _split(vec: Sequence[int], blocks) -> tuple[Matrix, ...]:
    return tuple(Matrix(r, c, tuple(vec[o:o + r * c])) for o, r, c in blocks)


def _flatten(ms: Sequence[Matrix]) -> tuple[int, ...]:
    return tuple(x for M in ms for x in M.data)


def hom_space(R1: Rep, R2: Rep) -> list[tuple[Matrix, ...]]:
    """A basis of the intertwiners R1 -> R2, each a tuple of per-vertex matrices."""
    _same_setting(R1, R2)
    F = R1.ctx
    eqs, blocks = _hom_equations(F, R1, R2)
    if eqs.cols == 0:
        return []
    if eqs.rows == 0:
        basis = [tuple(int(i == j) for j in range(eqs.cols)) for i in range(eqs.cols)]
    else:
        basis = nullspace(F, eqs)
    return [_split(v, blocks) for v in basis]


# -- vectorized search over spans --

def _combine(F: FieldCtx, basis: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """coeffs (N, h) applied to basis (h, L): rows sum_k c_k b_k."""
    acc = np.zeros((coeffs.shape[0], basis.shape[1]), dtype=np.int64)
    for k in range(basis.shape[0]):
        acc = F.np_add(acc, F.np_mul(coeffs[:, k:k + 1], basis[k:k + 1, :]))
    return acc


def _candidates(F: FieldCtx, basis: Sequence[Sequence[int]], scalars: Sequence[int],
                cfg: Config, chunk: int = 1 << 14) -> tuple[bool, Iterator[np.ndarray]]:
    """(exhaustive?, iterator of element batches) for the span of basis."""
    B = np.array(basis, dtype=np.int64).reshape(len(basis), -1)
    S = np.array(scalars, dtype=np.int64)
    h, base = len(basis), len(S)
    total = base ** h
    if total <= cfg.search_cap:
        def gen():
            for start in range(0, total, chunk):
                idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
                digits = np.empty((len(idx), h), dtype=np.int64)
                for k in range(h):
                    digits[:, k] = idx % base
                    idx = idx // base
                yield _combine(F, B, S[digits])
        return True, gen()
    rng = np.random.default_rng(cfg.seed)

    def sample():
        left = cfg.search_retries
        while left > 0:
            n = min(left, chunk)
            left -= n
            yield _combine(F, B, S[rng.integers(0, base, size=(n, h))])
    return False, sample()


def _np_bmm(F: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    N, m, k = A.shape
    n = B.shape[2]
    out = np.zeros((N, m, n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            for l in range(k):
                out[:, i, j] = F.np_add(out[:, i, j], F.np_mul(A[:, i, l], B[:, l, j]))
    return out


def _np_invertible(F: FieldCtx, A: np.ndarray) -> np.ndarray:
    N, d, _ = A.shape
    if d == 0:
        return np.ones(N, dtype=bool)
    if d > 5:
        return np.array([is_invertible(F, Matrix(d, d, tuple(a.ravel().tolist()))) for a in A])
    det = np.zeros(N, dtype=np.int64)
    minus = F.neg(1)
    for perm in permutations(range(d)):
        term = np.ones(N, dtype=np.int64)
        for i in range(d):
            term = F.np_mul(term, A[:, i, perm[i]])
        inversions = sum(1 for x in range(d) for y in range(x + 1, d) if perm[x] > perm[y])
        if inversions % 2:
            term = F.np_mul(term, minus)
        det = F.np_add(det, term)
    return det != 0


def _views(E: np.ndarray, blocks) -> list[np.ndarray]:
    return [E[:, o:o + r * c].reshape(len(E), r, c) for o, r, c in blocks]


def _find_invertible(F, basis, scalars, blocks, cfg) -> bool | None:
    """True if the span holds an element with invertible blocks; False if the
    exhaustive scan found none; None if sampling was inconclusive."""
    exhaustive, batches = _candidates(F, basis, scalars, cfg)
    for E in batches:
        ok = np.ones(len(E), dtype=bool)
        for V in _views(E, blocks):
            ok &= _np_invertible(F, V)
        if ok.any():
            return True
    return False if exhaustive else None


def _find_idempotent(F, basis, scalars, blocks, cfg) -> bool | None:
    """True if the span holds an idempotent other than 0 and 1."""
    exhaustive, batches = _candidates(F, basis, scalars, cfg)
    for E in batches:
        idem = np.ones(len(E), dtype=bool)
        zero = np.ones(len(E), dtype=bool)
        one = np.ones(len(E), dtype=bool)
        for V in _views(E, blocks):
            d = V.shape[1]
            idem &= (_np_bmm(F, V, V) == V).all(axis=(1, 2))
            zero &= (V == 0).all(axis=(1, 2))
            one &= (V == np.eye(d, dtype=np.int64)[None]).all(axis=(1, 2))
        if (idem & ~zero & ~one).any():
            return True
    return False if exhaustive else None


# -- isomorphism, indecomposability, F-period --

def is_isomorphic(R1: Rep, R2: Rep, config: Config | None = None) -> bool:
    _same_setting(R1, R2)
    if R1.dims != R2.dims:
        return False
    if R1 == R2:
        return True
    H12 = hom_space(R1, R2)
    if len(H12) != len(hom_space(R1, R1)) or len(H12) != len(hom_space(R2, R2)):
        return False
    cfg = resolve(config)
    F = R1.ctx
    blocks = _blocks(R1.dims, R1.dims)
    found = _find_invertible(F, [_flatten(h) for h in H12], list(F.elements()), blocks, cfg)
    if found is None:
        raise SearchCapExceeded("isomorphism undecided within the search budget",
                                hom_dim=len(H12), field=F.order)
    return found


def is_indecomposable(R: Rep, config: Config | None = None) -> bool:
    """No idempotent of End(R) other than 0 and 1 (over the field of R)."""
    if R.total_dim == 0:
        return False
    E = hom_space(R, R)
    F = R.ctx
    found = _find_idempotent(F, [_flatten(h) for h in E], list(F.elements()),
                             _blocks(R.dims, R.dims), resolve(config))
    if found is None:
        raise SearchCapExceeded("idempotent search inconclusive within the budget", end_dim=len(E))
    return not found


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def f_period(R: Rep, config: Config | None = None) -> int:
    """Least r >= 1 with R^[r] isomorphic to R. R^[N] = R literally for
    N = lcm(order of sigma, level), so the answer divides N."""
    N = lcm(R.adq.sigma.order, R.level)
    for r in _divisors(N):
        if is_isomorphic(twist(R, r), R, config):
            return r
    raise AssertionError("unreachable: twist^N is the identity")  # pragma: no cover


# -- F-stable representations --

@dataclass(frozen=True)
class FStableRep:
    """A representation with F(v)_sigma(i) = P_i v_i^[1]. perms=None means
    every P_i is the identity (the canonical-basis equation x_sigma(rho) = x_rho^[1])."""

    rep: Rep
    perms: tuple[Matrix, ...] | None = None

    def __post_init__(self):
        R, sig = self.rep, self.rep.adq.sigma
        F, Q = R.ctx, R.adq.quiver
        for i in range(Q.n_vertices):
            if R.dims[sig.vertex_perm[i]] != R.dims[i]:
                raise ValueError("dimensions of an F-stable representation are sigma-invariant")
        if self.perms is not None:
            if len(self.perms) != Q.n_vertices:
                raise ValueError("need one P_i per vertex")
            for i, P in enumerate(self.perms):
                if P.shape != (R.dims[i], R.dims[i]) or not is_invertible(F, P):
                    raise ValueError(f"P_{i} must be invertible of size {R.dims[i]}")
        for a in range(Q.n_arrows):
            b = sig.arrow_perm[a]
            lhs = matmul(F, R.mats[b], self.perm(Q.tails[a]))
            rhs = matmul(F, self.perm(Q.heads[a]), mat_frobenius(F, R.mats[a], 1, R.q))
            if lhs != rhs:
                raise NotNormalized(f"Frobenius equation fails on arrow {Q.arrows[a].id}")

    def perm(self, i: int) -> Matrix:
        return Matrix.identity(self.rep.dims[i]) if self.perms is None else self.perms[i]

    @property
    def dims(self) -> DimVec:
        return self.rep.dims

    def frobenius(self, v: Sequence[int]) -> tuple[int, ...]:
        """F on the concatenation of all V_i."""
        R, sig, F = self.rep, self.rep.adq.sigma, self.rep.ctx
        offs = np.cumsum((0,) + R.dims).tolist()
        out = [0] * offs[-1]
        for i, d in enumerate(R.dims):
            if not d:
                continue
            vi = [F.frobenius(x, 1, R.q) for x in v[offs[i]:offs[i] + d]]
            j = sig.vertex_perm[i]
            P = self.perm(i)
            for u in range(d):
                acc = 0
                for k in range(d):
                    if P[u, k] and vi[k]:
                        acc = F.add(acc, F.mul(P[u, k], vi[k]))
                out[offs[j] + u] = acc
        return tuple(out)


def _orbit_level(adq: AdQuiver) -> int:
    return adq.sigma.order


def build_f_stable(R: Rep, r: int | None = None, config: Config | None = None) -> FStableRep:
    """R + R^[1] + ... + R^[r-1] with the cyclic block Frobenius.

    Needs R^[r] = R literally. Entries are lifted so that the field holds
    GF(q^e) for every orbit size e."""
    if r is None:
        r = f_period(R, config)
    if r < 1:
        raise ValueError("r must be positive")
    if twist(R, r) != R:
        raise NotNormalized(f"R^[{r}] differs from R; normalize first")
    R = R.lift(lcm(R.level, _orbit_level(R.adq)))
    parts = [twist(R, t) for t in range(r)]
    sig, Q = R.adq.sigma, R.adq.quiver
    dims = tuple(sum(P.dims[i] for P in parts) for i in range(Q.n_vertices))
    mats = tuple(block_diag([P.mats[a] for P in parts]) for a in range(Q.n_arrows))
    big = Rep(R.adq, R.q, R.level, dims, mats)
    perms = []
    for i in range(Q.n_vertices):
        j = sig.vertex_perm[i]
        src = np.cumsum([0] + [P.dims[i] for P in parts]).tolist()
        dst = np.cumsum([0] + [P.dims[j] for P in parts]).tolist()
        n = dims[i]
        rows = [[0] * n for _ in range(n)]
        for t in range(r):
            t1 = (t + 1) % r
            for k in range(parts[t].dims[i]):
                rows[dst[t1] + k][src[t] + k] = 1
        perms.append(Matrix.from_rows(rows, n) if n else Matrix.zeros(0, 0))
    return FStableRep(big, tuple(perms))


def normalize_to_f_fixed(R: Rep, r: int, config: Config | None = None) -> Rep:
    """A representation isomorphic to R with R^[r] = R literally.

    The isomorphism class of R is enumerated as one orbit of the plain
    representation space and scanned for twist^r-fixed points; if the field
    of R holds none, the search is repeated over GF(q^lcm(n, r ord sigma))."""
    cfg = resolve(config)
    if twist(R, r) == R:
        return R
    sig = R.adq.sigma
    if sigma_on_dimvec(sig.power(r), R.dims) != R.dims:
        raise NotNormalized(f"R^[{r}] has another dimension vector than R")
    for level in dict.fromkeys([R.level, lcm(R.level, r * sig.order)]):
        S = R.lift(level)
        found = _fixed_in_class(S, r, cfg)
        if found is not None:
            return found
    raise NotNormalized(f"no representative with R^[{r}] = R found")


def _fixed_in_class(R: Rep, r: int, cfg: Config) -> Rep | None:
    part = _plain_partition(R.adq.quiver, R.dims, R.q ** R.level, cfg)
    space = part.space
    Q, sig, F = R.adq.quiver, R.adq.sigma.power(r), R.ctx
    blocks = [np.array(M.data, dtype=np.int64).reshape(1, M.rows, M.cols) for M in R.mats]
    me = int(space.encode(blocks)[0]) if blocks else 0
    members = np.flatnonzero(part.labels == part.labels[me])
    pts = space.decode(members)
    frob = np.array([F.frobenius(x, r, R.q) for x in range(F.order)], dtype=np.int64)
    fixed = np.ones(len(members), dtype=bool)
    for a in range(Q.n_arrows):
        fixed &= (pts[sig.arrow_perm[a]] == frob[pts[a]]).all(axis=(1, 2))
    hits = members[fixed]
    if not len(hits):
        return None
    return Rep(R.adq, R.q, R.level, R.dims, space.point(int(hits.min())))


@lru_cache(maxsize=64)
def _plain_partition(Q: Quiver, dims: DimVec, Qlev: int, cfg: Config):
    plain = AdQuiver(Q, AdAutomorphism.identity(Q))
    return orbit_partition(plain, dims, Qlev, config=cfg)


# -- fixed points --

def _fp_kernel(F: FieldCtx, n: int, maps: Sequence[Callable[[tuple], Sequence[int]]]) -> list[tuple[int, ...]]:
    """F_p-basis of the common kernel of F_p-linear maps on GF(p^N)^n."""
    p, deg = F.p, F.n
    prime = gf_field(p, 1)
    columns = []
    for c in range(n):
        for j in range(deg):
            v = [0] * n
            v[c] = p ** j
            v = tuple(v)
            col = []
            for m in maps:
                for x in m(v):
                    col.extend(F.digits(x))
            columns.append(col)
    if not columns:
        return []
    nrows = len(columns[0])
    if nrows == 0:
        kernel = [tuple(int(i == j) for j in range(n * deg)) for i in range(n * deg)]
    else:
        A = Matrix.from_rows([[columns[c][r] for c in range(len(columns))] for r in range(nrows)],
                             len(columns))
        kernel = nullspace(prime, A)
    return [tuple(F.from_digits(vec[c * deg:(c + 1) * deg]) for c in range(n)) for vec in kernel]


def _greedy_independent(F: FieldCtx, vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for v in vectors:
        if rank(F, Matrix.from_rows(out + [tuple(v)], len(v))) > len(out):
            out.append(tuple(v))
    return out


def semilinear_fixed_space(F: FieldCtx, n: int, frob: Callable[[tuple], Sequence[int]],
                           constraints: Sequence[Callable[[tuple], Sequence[int]]] = ()) -> list[tuple[int, ...]]:
    """F_q-basis of {v : frob(v) = v and every constraint vanishes}.

    frob must be semilinear for x -> x^q; the constraints linear over GF(q^N).
    An F_q-basis is any maximal GF(q^N)-independent subset of the F_p-kernel."""
    def minus_id(v):
        w = frob(v)
        return [F.sub(a, b) for a, b in zip(w, v)]
    if n == 0:
        return []
    return _greedy_independent(F, _fp_kernel(F, n, [minus_id, *constraints]))


def _matvec(F: FieldCtx, M: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    out = []
    for i in range(M.rows):
        acc = 0
        for j in range(M.cols):
            a = M.data[i * M.cols + j]
            if a and v[j]:
                acc = F.add(acc, F.mul(a, v[j]))
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class FixedModule:
    """The A^F-module of F-fixed vectors, in an F_q-basis."""

    basis: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[str, Matrix], ...]     # (label, action matrix over F_q)
    folded_dim: DimVec
    ctx: FieldCtx

    @property
    def dim(self) -> int:
        return len(self.basis)


def _algebra_generators(Mt: FStableRep) -> list[tuple[str, Callable[[tuple], tuple]]]:
    """Linear maps on V for an F_q-spanning set of the fixed algebra A^F."""
    R = Mt.rep
    F, Q, orb = R.ctx, R.adq.quiver, R.adq.orbits
    k = prime_power(R.q)[1]
    offs = np.cumsum((0,) + R.dims).tolist()
    gens = []
    for n, cyc in enumerate(orb.vertex):
        zeta = F.subfield_generator(k * len(cyc))
        for j in range(len(cyc)):
            x = F.pow(zeta, j)

            def act(v, cyc=cyc, x=x):
                out = [0] * len(v)
                for s, i in enumerate(cyc):
                    c = F.frobenius(x, s, R.q)
                    for u in range(offs[i], offs[i + 1]):
                        out[u] = F.mul(c, v[u])
                return tuple(out)
            gens.append((f"e{n}.{j}", act))
    for n, cyc in enumerate(orb.arrow):
        zeta = F.subfield_generator(k * len(cyc))
        for j in range(len(cyc)):
            y = F.pow(zeta, j)

            def act(v, cyc=cyc, y=y):
                out = [0] * len(v)
                for t, a in enumerate(cyc):
                    c = F.frobenius(y, t, R.q)
                    i, h = Q.tails[a], Q.heads[a]
                    w = _matvec(F, R.mats[a], v[offs[i]:offs[i + 1]])
                    for u, x in enumerate(w):
                        out[offs[h] + u] = F.add(out[offs[h] + u], F.mul(c, x))
                return tuple(out)
            gens.append((f"a{n}.{j}", act))
    return gens


def fixed_points(Mt: FStableRep) -> FixedModule:
    R = Mt.rep
    F = R.ctx
    n = R.total_dim
    basis = semilinear_fixed_space(F, n, Mt.frobenius)
    B = Matrix.from_rows([list(col) for col in zip(*basis)], len(basis)) if basis else Matrix.zeros(n, 0)
    mats = []
    for label, act in _algebra_generators(Mt):
        cols = []
        for v in basis:
            c = solve(F, B, act(v))
            if c is None:  # pragma: no cover
                raise AssertionError("fixed algebra does not preserve fixed vectors")
            cols.append(c)
        d = len(basis)
        mats.append((label, Matrix(d, d, tuple(cols[j][i] for i in range(d) for j in range(d)))))
    return FixedModule(tuple(basis), tuple(mats), hat_sigma(R.adq, R.dims), F)


def fixed_hom_dim(X: FixedModule, Y: FixedModule) -> int:
    """dim over F_q of Hom between two fixed-point modules (linear maps
    commuting with every generator of A^F)."""
    F = X.ctx
    dx, dy = X.dim, Y.dim
    n = dx * dy
    if n == 0:
        return 0
    rows = []
    for (lx, AX), (ly, AY) in zip(X.generators, Y.generators):
        assert lx == ly
        # (h AX - AY h)[u, v] for h in Mat(dy x dx), unknown h[a, b] at a*dx + b
        for u in range(dy):
            for v in range(dx):
                row = [0] * n
                for b in range(dx):
                    if AX[b, v]:
                        row[u * dx + b] = F.add(row[u * dx + b], AX[b, v])
                for a in range(dy):
                    if AY[u, a]:
                        row[a * dx + v] = F.sub(row[a * dx + v], AY[u, a])
                rows.append(row)
    if not rows:
        return n
    return n - rank(F, Matrix.from_rows(rows, n))


def _hom_frobenius(M: FStableRep, N: FStableRep, blocks) -> Callable[[tuple], tuple]:
    """(F h)_sigma(i) = P^N_i h_i^[1] (P^M_i)^-1."""
    R = M.rep
    F, sig = R.ctx, R.adq.sigma
    inv = [inverse(F, M.perm(i)) if M.dims[i] else Matrix.zeros(0, 0) for i in range(len(M.dims))]

    def frob(v):
        hs = _split(v, blocks)
        out: list = [None] * len(hs)
        for i, h in enumerate(hs):
            j = sig.vertex_perm[i]
            out[j] = matmul(F, matmul(F, N.perm(i), mat_frobenius(F, h, 1, R.q)), inv[i])
        return _flatten(out)
    return frob


def hom_fixed_dim(M: FStableRep, N: FStableRep) -> int:
    """dim over F_q of the F-fixed part of Hom_A(M, N)."""
    _same_setting(M.rep, N.rep)
    F = M.rep.ctx
    eqs, blocks = _hom_equations(F, M.rep, N.rep)
    n = eqs.cols
    return len(semilinear_fixed_space(F, n, _hom_frobenius(M, N, blocks),
                                      [lambda v: _matvec(F, eqs, v)] if eqs.rows else []))


def end_fixed_basis(M: FStableRep) -> tuple[list[tuple[int, ...]], list]:
    F = M.rep.ctx
    eqs, blocks = _hom_equations(F, M.rep, M.rep)
    basis = semilinear_fixed_space(F, eqs.cols, _hom_frobenius(M, M, blocks),
                                   [lambda v: _matvec(F, eqs, v)] if eqs.rows else [])
    return basis, blocks


def is_f_indecomposable(M: FStableRep, config: Config | None = None) -> bool:
    """No idempotent other than 0, 1 in End(M)^F, i.e. the fixed-point
    module is indecomposable over A^F."""
    if M.rep.total_dim == 0:
        return False
    F = M.rep.ctx
    basis, blocks = end_fixed_basis(M)
    scalars = F.subfield(prime_power(M.rep.q)[1])
    found = _find_idempotent(F, basis, scalars, blocks, resolve(config))
    if found is None:
        raise SearchCapExceeded("idempotent search in End^F inconclusive", end_dim=len(basis))
    return not found


# -- the orbit oracle and its consumers --

def brute_force_module_count(adq: AdQuiver, alpha: Sequence[int], q: int,
                             config: Config | None = None, **reps) -> int:
    """Number of G-orbits on X(alpha), by explicit orbit partition."""
    return orbit_partition(adq, alpha, q, config=config, **reps).n_orbits


def unfold_point(adq: AdQuiver, alpha: Sequence[int], q: int, point: Sequence[Matrix]) -> FStableRep:
    """Canonical F-stable representation with x_{sigma^t rho0} = x^[t]."""
    from .orbits import point_space
    space = point_space(adq, alpha, q)
    level = space.K.n // prime_power(q)[1]
    F = space.K
    Q, orb = adq.quiver, adq.orbits
    mats: list = [None] * Q.n_arrows
    for X, cyc in zip(point, orb.arrow):
        for t, a in enumerate(cyc):
            mats[a] = mat_frobenius(F, X, t, q)
    return FStableRep(Rep(adq, q, level, unfold_dim(adq, alpha), tuple(mats)))


@dataclass(frozen=True)
class Indecomposable:
    index: int
    point: tuple[Matrix, ...]
    module: FStableRep


def enumerate_indecomposables(adq: AdQuiver, alpha: Sequence[int], q: int,
                              config: Config | None = None) -> list[Indecomposable]:
    """Orbit representatives of X(alpha) whose A^F-module is indecomposable."""
    part = orbit_partition(adq, alpha, q, config=config)
    out = []
    for idx in part.representatives():
        point = part.space.point(idx)
        M = unfold_point(adq, alpha, q, point)
        if is_f_indecomposable(M, config):
            out.append(Indecomposable(idx, point, M))
    return out


def representatives(adq: AdQuiver, beta: Sequence[int], q: int, level: int,
                    config: Config | None = None) -> list[Rep]:
    """One representation of Q per isoclass of dimension beta over GF(q^level)."""
    part = _plain_partition(adq.quiver, tuple(beta), q ** level, resolve(config))
    return [Rep(adq, q, level, tuple(beta), part.space.point(idx)) for idx in part.representatives()]


@dataclass
class ConjectureReport:
    beta: DimVec
    sigma_period: int
    q: int
    level: int
    classes: int = 0
    indecomposables: int = 0
    periods: list[int] = field(default_factory=list)
    witness: Rep | None = None

    @property
    def status(self) -> str:
        return "holds" if self.witness is not None else "not found within budget"

    def summary(self) -> str:
        return (f"beta={self.beta} p_sigma={self.sigma_period} over GF({self.q}^{self.level}): "
                f"{self.indecomposables} indecomposable of {self.classes} classes, "
                f"F-periods {sorted(set(self.periods))}; {self.status}")


def conjecture_scan(adq: AdQuiver, beta: Sequence[int], q: int = 2, level: int | None = None,
                    config: Config | None = None) -> ConjectureReport:
    """Look for an indecomposable of dimension beta whose F-period equals
    the sigma-period of beta."""
    beta = tuple(beta)
    level = level or adq.sigma.order
    report = ConjectureReport(beta, sigma_period(adq.sigma, beta), q, level)
    for R in representatives(adq, beta, q, level, config):
        report.classes += 1
        if not is_indecomposable(R, config):
            continue
        report.indecomposables += 1
        p = f_period(R, config)
        report.periods.append(p)
        if p == report.sigma_period and report.witness is None:
            report.witness = R
    return report
