"""Irreducible polynomials over F_{q^r} (other than T) as Frobenius orbits
of exponents.

Fix compatible generators z_m of the cyclic groups F_{q^m}^*, so that
z_m = z_L^((q^L - 1)/(q^m - 1)) whenever m | L. A monic irreducible of degree
d over F_{q^r} has d roots z_{rd}^e, z_{rd}^(e q^r), ...; it is stored as the
smallest exponent of that orbit in Z/(q^{rd} - 1). Frobenius is
multiplication by q, and common roots are found by lifting to a common
modulus, so no polynomial arithmetic is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .config import Config, resolve
from .errors import BudgetExceeded
from .gf import FieldCtx, Poly, poly_mul, prime_power


def _check_budget(modulus: int, config: Config | None) -> None:
    cfg = resolve(config)
    if modulus.bit_length() > cfg.bit_bound:
        raise BudgetExceeded(f"modulus with {modulus.bit_length()} bits exceeds the bit bound",
                             bit_bound=cfg.bit_bound)


@dataclass(frozen=True, order=True)
class PolyOrbit:
    q: int
    r: int
    d: int
    e: int

    def __post_init__(self):
        M = self.modulus
        if not 0 <= self.e < M:
            raise ValueError("exponent out of range")
        orbit = _orbit(self.e, self.q ** self.r, M)
        if len(orbit) != self.d:
            raise ValueError(f"exponent {self.e} has orbit size {len(orbit)}, not {self.d}")
        if min(orbit) != self.e:
            raise ValueError("exponent is not the canonical orbit minimum")

    @property
    def modulus(self) -> int:
        return self.q ** (self.r * self.d) - 1

    def roots(self) -> tuple[int, ...]:
        """Exponents of the roots in Z/(q^{rd} - 1), along the orbit."""
        Q, M = self.q ** self.r, self.modulus
        return tuple(self.e * pow(Q, k, M) % M for k in range(self.d))

    def __str__(self):
        return f"[q={self.q},r={self.r},d={self.d},e={self.e}]"


def _orbit(e: int, Q: int, M: int) -> list[int]:
    out, x = [e], e * Q % M
    while x != e:
        out.append(x)
        x = x * Q % M
    return out


def canonical(q: int, r: int, d: int, e: int) -> PolyOrbit:
    M = q ** (r * d) - 1
    e %= M
    return PolyOrbit(q, r, d, min(_orbit(e, q ** r, M)))


def mobius(n: int) -> int:
    out, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    return -out if n > 1 else out


def necklace(Q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over a field with Q elements."""
    total = sum(mobius(k) * Q ** (d // k) for k in range(1, d + 1) if d % k == 0)
    assert total % d == 0
    return total // d


def count_irreducibles(q: int, r: int, d: int) -> int:
    """|Phi(q^r)| restricted to degree d (T excluded)."""
    return necklace(q ** r, d) - (1 if d == 1 else 0)


@lru_cache(maxsize=None)
def _enumerate(q: int, r: int, d: int) -> tuple[PolyOrbit, ...]:
    Q, M = q ** r, q ** (r * d) - 1
    out = []
    seen = bytearray(M)
    for e in range(M):
        if seen[e]:
            continue
        orb = _orbit(e, Q, M)
        for x in orb:
            seen[x] = 1
        if len(orb) == d:
            out.append(PolyOrbit(q, r, d, e))
    return tuple(out)


def enumerate_irreducibles(q: int, r: int, d: int, config: Config | None = None) -> tuple[PolyOrbit, ...]:
    prime_power(q)
    M = q ** (r * d) - 1
    _check_budget(M, config)
    if M > resolve(config).max_points:
        raise BudgetExceeded(f"enumerating Z/{M} exceeds the enumeration cap")
    return _enumerate(q, r, d)


@lru_cache(maxsize=1 << 18)
def _gcd_degree(q: int, r1: int, d1: int, e1: int, r2: int, d2: int, e2: int) -> int:
    L = lcm(r1 * d1, r2 * d2)
    ML = q ** L - 1
    c1 = ML // (q ** (r1 * d1) - 1)
    c2 = ML // (q ** (r2 * d2) - 1)
    Q1, Q2 = q ** r1, q ** r2
    roots1 = {e1 * pow(Q1, k, q ** (r1 * d1) - 1) % (q ** (r1 * d1) - 1) * c1 for k in range(d1)}
    roots2 = {e2 * pow(Q2, k, q ** (r2 * d2) - 1) % (q ** (r2 * d2) - 1) * c2 for k in range(d2)}
    return len(roots1 & roots2)


def gcd_degree(phi: PolyOrbit, psi: PolyOrbit, config: Config | None = None) -> int:
    """Number of common roots, i.e. the degree of gcd(phi, psi)."""
    if phi.q != psi.q:
        raise ValueError("polynomials over different base fields")
    _check_budget(phi.q ** lcm(phi.r * phi.d, psi.r * psi.d), config)
    if (phi.r, phi.d, phi.e) > (psi.r, psi.d, psi.e):
        phi, psi = psi, phi
    return _gcd_degree(phi.q, phi.r, phi.d, phi.e, psi.r, psi.d, psi.e)


def twist(phi: PolyOrbit, s: int) -> PolyOrbit:
    """Raise every root to the power q^s."""
    if s < 0:
        raise ValueError("twist offset must be non-negative")
    M = phi.modulus
    return canonical(phi.q, phi.r, phi.d, phi.e * pow(phi.q, s, M))


def to_polynomial(phi: PolyOrbit, F: FieldCtx) -> Poly:
    """Expand prod (T - root) inside a concrete field F containing F_{q^{rd}}.

    The compatible generators are z_m = g^((|F| - 1)/(q^m - 1)) for the
    generator g of F. Coefficients come back as codes of F; they lie in the
    subfield F_{q^r}."""
    m = phi.r * phi.d
    if (F.order - 1) % (phi.q ** m - 1):
        raise ValueError(f"{F} does not contain F_(q^{m})")
    z = F.pow(F.generator, (F.order - 1) // (phi.q ** m - 1))
    poly: Poly = (1,)
    for e in phi.roots():
        poly = poly_mul(F, poly, (F.neg(F.pow(z, e)), 1))
    return poly
