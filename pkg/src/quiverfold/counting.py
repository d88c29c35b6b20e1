"""Counting F-stable representations over F_q by Burnside's formula.

For alpha over the vertex orbits, G = prod_i GL_{a_i}(F_{q^{eps_i}}) acts on
X = prod_rho F_{q^{eps_rho}}^{a_j x a_i} by x_rho -> g_j^{[s]} x_rho (g_i^{[r]})^{-1}.
Conjugacy classes of G are indexed by partition-valued functions on
irreducible polynomials (one per vertex orbit), so

    M(alpha, q) = sum over classes of |X^g| / |G_g|.

Two evaluations are offered. "enumerate" walks every class literally.
"grouped" splits each summand over the Frobenius orbits of eigenvalues in
the algebraic closure: a degree-m orbit contributes a local factor that
depends only on m, so the whole sum is a coefficient of
prod_m (local series_m)^(number of degree-m orbits). Both must agree.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .config import Config, resolve
from .eigmodel import (PolyOrbit, count_irreducibles, enumerate_irreducibles,
                       gcd_degree, twist)
from .errors import (BudgetExceeded, InterpolationMismatch, NonIntegralCentralizer,
                     NonIntegralCount)
from .folding import ArrowTwist, arrow_dimension, cartan, fold, twist_offsets
from .gf import is_prime_power, prime_powers
from .poly import RationalPolynomial, lagrange
from .quiver import AdQuiver, DimVec
from .roots import REAL, NOT_A_ROOT, generate_roots, vectors_up_to_height

Partition = tuple[int, ...]
ClassFunction = tuple[tuple[PolyOrbit, Partition], ...]


# -- partitions --

@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of n as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def pairing(lam: Partition, mu: Partition) -> int:
    return sum(min(a, b) for a in lam for b in mu)


def b_lambda(lam: Partition, t: Fraction | int) -> Fraction:
    """prod over part sizes i of (1 - t)(1 - t^2)...(1 - t^{m_i})."""
    t = Fraction(t)
    out = Fraction(1)
    for m in Counter(lam).values():
        for j in range(1, m + 1):
            out *= 1 - t ** j
    return out


def _centralizer_factor(lam: Partition, Q: int) -> Fraction:
    # Q^<lam,lam> b_lam(1/Q): centralizer in GL_{|lam|}(F_Q) of a unipotent of type lam
    return Fraction(Q) ** pairing(lam, lam) * b_lambda(lam, Fraction(1, Q))


# -- conjugacy classes --

def class_size(cf: ClassFunction) -> int:
    return sum(phi.d * sum(lam) for phi, lam in cf)


def enumerate_classes(a: int, q: int, r: int, config: Config | None = None) -> list[ClassFunction]:
    """Every partition function with sum d(phi)|pi(phi)| = a over F_{q^r}."""
    if a == 0:
        return [()]
    items = [phi for d in range(1, a + 1) for phi in enumerate_irreducibles(q, r, d, config)]
    out: list[ClassFunction] = []

    def rec(start: int, left: int, acc: list):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(items)):
            phi = items[k]
            if phi.d > left:
                continue
            for size in range(1, left // phi.d + 1):
                for lam in partitions_of(size):
                    acc.append((phi, lam))
                    rec(k + 1, left - phi.d * size, acc)
                    acc.pop()

    rec(0, a, [])
    return out


def centralizer_order(cf: ClassFunction, q: int, r: int) -> int:
    """|centralizer| in GL_a(F_{q^r}) of an element of class cf."""
    out = Fraction(1)
    for phi, lam in cf:
        if phi.r != r or phi.q != q:
            raise ValueError("class function lives over another field")
        out *= _centralizer_factor(lam, q ** (r * phi.d))
    if out.denominator != 1 or out <= 0:
        raise NonIntegralCentralizer(f"centralizer order {out} is not a positive integer")
    return int(out)


def twist_class(cf: ClassFunction, s: int) -> ClassFunction:
    """Class of g^{[s]} (entries raised to q^s)."""
    return tuple(sorted((twist(phi, s), lam) for phi, lam in cf))


def hom_exponent(cf1: ClassFunction, cf2: ClassFunction) -> int:
    """dim of {x : g2 x = x g1} over the field of the arrow."""
    return sum(gcd_degree(phi, psi) * pairing(lam, mu)
               for phi, lam in cf1 for psi, mu in cf2)


def hom_fixed_count(cf_tail: ClassFunction, cf_head: ClassFunction, eps: int, q: int,
                    r: int = 0, s: int = 0) -> int:
    """|{x in F_{q^eps}^{a_j x a_i} : g_j^{[s]} x = x g_i^{[r]}}|."""
    return q ** (eps * hom_exponent(twist_class(cf_tail, r), twist_class(cf_head, s)))


# -- the Burnside sum --

def _check_alpha(adq: AdQuiver, alpha: Sequence[int]) -> DimVec:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != len(adq.orbits.vertex) or any(a < 0 for a in alpha):
        raise ValueError(f"alpha must have {len(adq.orbits.vertex)} non-negative entries")
    return alpha


def _check_q(q: int) -> None:
    if not is_prime_power(q):
        raise ValueError(f"{q} is not a prime power")


def literal_sum(eps: Sequence[int], twists: Sequence[ArrowTwist], alpha: Sequence[int], q: int,
                config: Config | None = None) -> Fraction:
    cfg = resolve(config)
    classes = [enumerate_classes(a, q, e, cfg) for a, e in zip(alpha, eps)]
    terms = 1
    for cl in classes:
        terms *= len(cl)
    if terms > cfg.max_terms:
        raise BudgetExceeded(f"{terms} conjugacy classes exceed the term budget", max_terms=cfg.max_terms)
    cents = [[centralizer_order(c, q, e) for c in cl] for cl, e in zip(classes, eps)]
    live = [t for t in twists if alpha[t.tail] and alpha[t.head]]
    tw_tail = [[twist_class(c, t.r) for c in classes[t.tail]] for t in live]
    tw_head = [[twist_class(c, t.s) for c in classes[t.head]] for t in live]
    exps: list[dict] = [{} for _ in live]
    total = Fraction(0)
    for idx in product(*(range(len(cl)) for cl in classes)):
        e = 0
        for k, t in enumerate(live):
            key = (idx[t.tail], idx[t.head])
            v = exps[k].get(key)
            if v is None:
                v = exps[k][key] = t.eps * hom_exponent(tw_tail[k][key[0]], tw_head[k][key[1]])
            e += v
        den = 1
        for i, j in enumerate(idx):
            den *= cents[i][j]
        total += Fraction(q ** e, den)
    return total


def _local_choices(g: int, d: int, max_dim: int) -> list[tuple[tuple[Partition, ...], int]]:
    """g-tuples of partitions with d * total size <= max_dim, with their dimension."""
    out = []

    def rec(prefix, left):
        if len(prefix) == g:
            out.append((tuple(prefix), d * sum(sum(l) for l in prefix)))
            return
        for size in range(left + 1):
            for lam in partitions_of(size):
                rec(prefix + [lam], left - size)

    rec([], max_dim // d)
    return out


Series = dict[DimVec, Fraction]


def _series_mul(a: Series, b: Series, support: set) -> Series:
    out: Series = {}
    for x, cx in a.items():
        for y, cy in b.items():
            z = tuple(i + j for i, j in zip(x, y))
            if z in support:
                out[z] = out.get(z, 0) + cx * cy
    return out


def _local_series(eps: Sequence[int], twists: Sequence[ArrowTwist], q: int, m: int,
                  support: set, maxdims: Sequence[int]) -> Series:
    """Sum of local weights over all data on one Frobenius orbit of size m."""
    n = len(eps)
    gs = [gcd(m, e) for e in eps]
    ds = [m // g for g in gs]
    per_vertex = []
    for i in range(n):
        choices = []
        for ch, dim in _local_choices(gs[i], ds[i], maxdims[i]):
            cent = Fraction(1)
            for lam in ch:
                if lam:
                    cent *= _centralizer_factor(lam, q ** (eps[i] * ds[i]))
            choices.append((ch, dim, cent))
        per_vertex.append(choices)
    out: Series = {}
    for combo in product(*per_vertex):
        beta = tuple(c[1] for c in combo)
        if beta not in support or not any(beta):
            continue
        e = 0
        for t in twists:
            ct, ch = combo[t.tail][0], combo[t.head][0]
            gt, gh = gs[t.tail], gs[t.head]
            g2 = gcd(gt, gh)
            acc = 0
            for c in range(gt):
                lam = ct[(c - t.r) % gt]
                if not lam:
                    continue
                for c2 in range(c % g2, gh, g2):
                    mu = ch[(c2 - t.s) % gh]
                    if mu:
                        acc += pairing(lam, mu)
            e += t.eps * (m // lcm(gt, gh)) * acc
        den = Fraction(1)
        for c in combo:
            den *= c[2]
        out[beta] = out.get(beta, 0) + Fraction(q) ** e / den
    return out


def grouped_series(eps: Sequence[int], twists: Sequence[ArrowTwist], q: int,
                   support: Iterable[Sequence[int]]) -> dict[DimVec, int]:
    """M(beta, q) for every beta of a downward-closed support, at once."""
    support = {tuple(b) for b in support}
    n = len(eps)
    zero = (0,) * n
    support.add(zero)
    maxdims = [max(b[i] for b in support) for i in range(n)]
    max_height = max(sum(b) for b in support)
    total: Series = {zero: Fraction(1)}
    m_max = max((maxdims[i] * eps[i] for i in range(n)), default=0)
    for m in range(1, m_max + 1):
        u = _local_series(eps, twists, q, m, support, maxdims)
        if not u:
            continue
        N = count_irreducibles(q, 1, m)
        if N == 0:
            continue
        # (1 + u)^N truncated; u has no constant term
        factor: Series = {zero: Fraction(1)}
        power: Series = {zero: Fraction(1)}
        for k in range(1, max_height + 1):
            power = _series_mul(power, u, support)
            if not power:
                break
            c = comb(N, k)
            for b, v in power.items():
                factor[b] = factor.get(b, 0) + c * v
        total = _series_mul(total, factor, support)
    out = {}
    for b in support:
        if b == zero:
            continue
        v = total.get(b, Fraction(0))
        if v.denominator != 1:
            raise NonIntegralCount(f"count {v} at {b} is not an integer")
        out[b] = int(v)
    return out


def burnside_count(adq: AdQuiver, alpha: Sequence[int], q: int, *, method: str = "enumerate",
                   vertex_reps: Sequence[int] | None = None, arrow_reps: Sequence[int] | None = None,
                   config: Config | None = None) -> int:
    """Number M(alpha, q) of isoclasses of F_q-representations of the folded algebra."""
    alpha = _check_alpha(adq, alpha)
    _check_q(q)
    twists = twist_offsets(adq, vertex_reps, arrow_reps)
    eps = adq.orbits.vertex_sizes
    if not any(alpha):
        return 1
    if method == "grouped":
        box = [b for b in product(*(range(a + 1) for a in alpha))]
        return grouped_series(eps, twists, q, box)[alpha]
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    total = literal_sum(eps, twists, alpha, q, config)
    if total.denominator != 1:
        raise NonIntegralCount(f"Burnside sum {total} is not an integer")
    return int(total)


# -- interpolation --

def interpolation_nodes(count: int, skip: Iterable[int] = ()) -> list[int]:
    skip = set(skip)
    out = []
    for q in prime_powers():
        if q not in skip:
            out.append(q)
            if len(out) == count:
                return out
    return out  # pragma: no cover


def _count_at(args):
    adq, alpha, q, method, cfg = args
    return burnside_count(adq, alpha, q, method=method, config=cfg)


def count_polynomial(adq: AdQuiver, alpha: Sequence[int], *, held_out: Sequence[int] | None = None,
                     method: str = "grouped", config: Config | None = None) -> RationalPolynomial:
    """Interpolate M(alpha, q) through D+1 prime powers, D = log_q |X|.

    held_out defaults to the two prime powers after the nodes; explicit
    held-out points are kept out of the node set."""
    cfg = resolve(config)
    alpha = _check_alpha(adq, alpha)
    D = arrow_dimension(adq, alpha)
    skip = set(held_out or ())
    for h in skip:
        _check_q(h)
    nodes = interpolation_nodes(D + 1, skip)
    if held_out is None:
        gen = prime_powers(nodes[-1] + 1)
        held_out = [next(gen), next(gen)]
    if max(list(nodes) + list(held_out)) > cfg.max_node:
        raise BudgetExceeded(f"interpolation needs prime powers up to {max(nodes)}", max_node=cfg.max_node)
    points = list(nodes) + list(held_out)
    jobs = [(adq, alpha, q, method, cfg) for q in points]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            values = list(pool.map(_count_at, jobs))
    else:
        values = [_count_at(j) for j in jobs]
    poly = lagrange(list(zip(nodes, values[:len(nodes)])))
    for q, v in zip(held_out, values[len(nodes):]):
        if poly(q) != v:
            raise InterpolationMismatch(f"interpolant gives {poly(q)} at q={q}, direct count {v}",
                                        q=q)
    return poly


# -- indecomposables by Krull-Schmidt inversion --

def krull_schmidt_invert(M: Mapping[DimVec, object]) -> dict[DimVec, object]:
    """Solve sum_alpha M(alpha) x^alpha = prod_beta (1 - x^beta)^(-I(beta)) for I.

    M must be given on a downward-closed set of non-zero vectors; values may
    be ints, Fractions or RationalPolynomials."""
    support = set(M)
    n = len(next(iter(support)))
    zero = (0,) * n
    support.add(zero)
    order = sorted(M, key=lambda b: (sum(b), b))
    prod_series: dict[DimVec, object] = {zero: 1}
    out: dict[DimVec, object] = {}
    for beta in order:
        have = prod_series.get(beta)
        I = M[beta] - have if have is not None else M[beta]
        out[beta] = I
        # (1 - x^beta)^(-I) = sum_m binom(I + m - 1, m) x^(m beta)
        factor = {zero: 1}
        m = 1
        while True:
            mb = tuple(m * x for x in beta)
            if mb not in support:
                break
            c = 1
            for k in range(m):
                c = c * (I + k)
            factor[mb] = c / factorial(m) if not isinstance(c, int) else Fraction(c, factorial(m))
            m += 1
        new: dict[DimVec, object] = {}
        for x, cx in prod_series.items():
            for y, cy in factor.items():
                z = tuple(i + j for i, j in zip(x, y))
                if z in support:
                    new[z] = new[z] + cx * cy if z in new else cx * cy
        prod_series = new
    return out


def box(alpha: Sequence[int]) -> list[DimVec]:
    return [b for b in product(*(range(a + 1) for a in alpha)) if any(b)]


def indecomposable_count(adq: AdQuiver, alpha: Sequence[int], *, method: str = "grouped",
                         config: Config | None = None) -> RationalPolynomial:
    alpha = _check_alpha(adq, alpha)
    if not any(alpha):
        raise ValueError("alpha must be non-zero")
    M = {b: count_polynomial(adq, b, method=method, config=config) for b in box(alpha)}
    return krull_schmidt_invert(M)[alpha]


def indecomposable_counts_at(adq: AdQuiver, q: int, support: Iterable[Sequence[int]],
                             vertex_reps=None, arrow_reps=None) -> dict[DimVec, int]:
    """I(beta, q) for every beta of a downward-closed support."""
    _check_q(q)
    support = [tuple(b) for b in support]
    M = grouped_series(adq.orbits.vertex_sizes, twist_offsets(adq, vertex_reps, arrow_reps), q, support)
    out = {}
    for b, v in krull_schmidt_invert(M).items():
        v = Fraction(v)
        if v.denominator != 1:
            raise NonIntegralCount(f"indecomposable count {v} at {b} is not an integer")
        out[b] = int(v)
    return out


# -- the Kac-type check --

@dataclass
class KacReport:
    height: int
    qs: tuple[int, ...]
    rows: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    @property
    def real_roots(self) -> list[DimVec]:
        return sorted({r["alpha"] for r in self.rows if r["tag"] == REAL}, key=lambda a: (sum(a), a))

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.rows:
            out[r["q"]] = out.get(r["q"], 0) + r["I"]
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        real = [r for r in self.rows if r["tag"] == REAL]
        n_real = len(self.real_roots)
        bad = [r for r in real if r["I"] != 1]
        head = f"{n_real} real roots, all I=1" if not bad else f"{n_real} real roots, {len(bad)} with I!=1"
        tail = "no violations" if not self.violations else f"{len(self.violations)} violations"
        return f"{head}; {tail}"


def kac_check(adq: AdQuiver, H: int, qs: Sequence[int]) -> KacReport:
    """For every alpha of height <= H: I != 0 forces a positive root, and a
    real root has exactly one indecomposable."""
    C = cartan(fold(adq))
    rs = generate_roots(C, H)
    vecs = vectors_up_to_height(C.size, H)
    report = KacReport(H, tuple(qs))
    for q in qs:
        I = indecomposable_counts_at(adq, q, vecs)
        for a in vecs:
            tag = rs.tag(a)
            report.rows.append({"q": q, "alpha": a, "tag": tag, "I": I[a]})
            if I[a] != 0 and tag == NOT_A_ROOT:
                report.violations.append({"q": q, "alpha": a, "I": I[a], "reason": "I != 0 off the root system"})
            if tag == REAL and I[a] != 1:
                report.violations.append({"q": q, "alpha": a, "I": I[a], "reason": "real root with I != 1"})
    return report
