"""Finite quivers with an admissible automorphism.

Ids are opaque strings; internally vertices and arrows are addressed by
their position in declaration order, which is also the total order used to
pick orbit representatives (the earliest declared member).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import lcm
from typing import Mapping, Sequence

from .errors import (IncompatibleWithIncidence, NotAdmissible, NotAPermutation,
                     NotSigmaFixed, ParseError)

DimVec = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) if not isinstance(a, Arrow) else a
                                                 for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex id")
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise ParseError("duplicate arrow id")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.tail not in vs or a.head not in vs:
                raise ParseError(f"arrow {a.id} has an unknown endpoint", arrow=a.id)
            if a.tail == a.head:
                raise ParseError(f"arrow {a.id} is a loop", arrow=a.id)

    @cached_property
    def vindex(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def aindex(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    @cached_property
    def tails(self) -> tuple[int, ...]:
        return tuple(self.vindex[a.tail] for a in self.arrows)

    @cached_property
    def heads(self) -> tuple[int, ...]:
        return tuple(self.vindex[a.head] for a in self.arrows)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class AdAutomorphism:
    """sigma as index permutations: vertex_perm[i] = sigma(i)."""

    vertex_perm: tuple[int, ...]
    arrow_perm: tuple[int, ...]

    @classmethod
    def identity(cls, Q: Quiver) -> "AdAutomorphism":
        return cls(tuple(range(Q.n_vertices)), tuple(range(Q.n_arrows)))

    @classmethod
    def from_mappings(cls, Q: Quiver, vmap: Mapping[str, str], amap: Mapping[str, str]) -> "AdAutomorphism":
        """Build from id -> id tables; ids not mentioned are fixed."""
        try:
            vp = [Q.vindex[vmap.get(v, v)] for v in Q.vertices]
            ap = [Q.aindex[amap.get(a.id, a.id)] for a in Q.arrows]
        except KeyError as e:
            raise NotAPermutation(f"unknown id {e.args[0]!r} in sigma") from None
        for k in list(vmap) + list(amap):
            if k not in Q.vindex and k not in Q.aindex:
                raise NotAPermutation(f"unknown id {k!r} in sigma")
        return cls(tuple(vp), tuple(ap))

    @classmethod
    def from_cycles(cls, Q: Quiver, vcycles: Sequence[Sequence[str]],
                    acycles: Sequence[Sequence[str]]) -> "AdAutomorphism":
        def table(cycles):
            out = {}
            for cyc in cycles:
                for x, y in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                    if x in out:
                        raise NotAPermutation(f"id {x!r} appears in two cycles")
                    out[x] = y
            return out
        return cls.from_mappings(Q, table(vcycles), table(acycles))

    def __mul__(self, other: "AdAutomorphism") -> "AdAutomorphism":
        """Composition self after other."""
        return AdAutomorphism(tuple(self.vertex_perm[i] for i in other.vertex_perm),
                              tuple(self.arrow_perm[i] for i in other.arrow_perm))

    def power(self, k: int) -> "AdAutomorphism":
        k %= self.order
        out = AdAutomorphism(tuple(range(len(self.vertex_perm))), tuple(range(len(self.arrow_perm))))
        for _ in range(k):
            out = self * out
        return out

    @cached_property
    def order(self) -> int:
        return lcm(*([len(c) for c in _cycles(self.vertex_perm)]
                     + [len(c) for c in _cycles(self.arrow_perm)] + [1]))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.vertex_perm)) and \
            all(i == j for i, j in enumerate(self.arrow_perm))


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of a permutation, each starting at its smallest element."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def validate(Q: Quiver, sigma: AdAutomorphism) -> None:
    """Raise unless sigma is an admissible automorphism of Q."""
    for name, perm, size in (("vertex", sigma.vertex_perm, Q.n_vertices),
                             ("arrow", sigma.arrow_perm, Q.n_arrows)):
        if len(perm) != size or sorted(perm) != list(range(size)):
            raise NotAPermutation(f"sigma is not a permutation of the {name}s")
    for k, a in enumerate(Q.arrows):
        s = sigma.arrow_perm[k]
        if Q.tails[s] != sigma.vertex_perm[Q.tails[k]] or Q.heads[s] != sigma.vertex_perm[Q.heads[k]]:
            raise IncompatibleWithIncidence(
                f"sigma does not commute with the endpoints of arrow {a.id}", arrow=a.id)
    orbit_of = {}
    for n, cyc in enumerate(_cycles(sigma.vertex_perm)):
        for i in cyc:
            orbit_of[i] = n
    for k, a in enumerate(Q.arrows):
        if orbit_of[Q.tails[k]] == orbit_of[Q.heads[k]]:
            raise NotAdmissible(f"arrow {a.id} joins two vertices of one sigma-orbit", arrow=a.id)


def check(Q: Quiver, sigma: AdAutomorphism) -> dict:
    """Non-raising form of validate, for reports."""
    try:
        validate(Q, sigma)
    except (NotAPermutation, IncompatibleWithIncidence, NotAdmissible) as e:
        return {"ok": False, **e.to_dict()}
    return {"ok": True}


@dataclass(frozen=True)
class Orbits:
    # each orbit is listed along the cycle, starting at its representative
    vertex: tuple[tuple[int, ...], ...]
    arrow: tuple[tuple[int, ...], ...]
    vertex_orbit_of: tuple[int, ...]
    arrow_orbit_of: tuple[int, ...]

    @property
    def vertex_sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.vertex)

    @property
    def arrow_sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.arrow)


def orbits(Q: Quiver, sigma: AdAutomorphism) -> Orbits:
    vo = _cycles(sigma.vertex_perm)
    ao = _cycles(sigma.arrow_perm)
    vof = [0] * Q.n_vertices
    for n, cyc in enumerate(vo):
        for i in cyc:
            vof[i] = n
    aof = [0] * Q.n_arrows
    for n, cyc in enumerate(ao):
        for i in cyc:
            aof[i] = n
    return Orbits(tuple(vo), tuple(ao), tuple(vof), tuple(aof))


@dataclass(frozen=True)
class AdQuiver:
    """A quiver together with a validated admissible automorphism."""

    quiver: Quiver
    sigma: AdAutomorphism
    name: str = field(default="", compare=False)

    def __post_init__(self):
        validate(self.quiver, self.sigma)

    @cached_property
    def orbits(self) -> Orbits:
        return orbits(self.quiver, self.sigma)

    def sigma_power(self, r: int) -> "AdQuiver":
        return AdQuiver(self.quiver, self.sigma.power(r), self.name)


def sigma_on_dimvec(sigma: AdAutomorphism, beta: Sequence[int]) -> DimVec:
    """(sigma beta)_{sigma(i)} = beta_i."""
    out = [0] * len(beta)
    for i, b in enumerate(beta):
        if b < 0:
            raise ValueError("dimension vectors are non-negative")
        out[sigma.vertex_perm[i]] = b
    return tuple(out)


def dimvec(Q: Quiver, values: Mapping[str, int] | Sequence[int]) -> DimVec:
    """Normalize a dimension vector given by id or in vertex order."""
    if isinstance(values, Mapping):
        unknown = set(values) - set(Q.vertices)
        if unknown:
            raise ParseError(f"unknown vertex ids {sorted(unknown)}")
        out = tuple(int(values.get(v, 0)) for v in Q.vertices)
    else:
        out = tuple(int(x) for x in values)
        if len(out) != Q.n_vertices:
            raise ParseError(f"expected {Q.n_vertices} entries, got {len(out)}")
    if any(x < 0 for x in out):
        raise ParseError("dimension vectors are non-negative")
    return out


def require_fixed(sigma: AdAutomorphism, beta: Sequence[int]) -> None:
    if sigma_on_dimvec(sigma, beta) != tuple(beta):
        raise NotSigmaFixed(f"{tuple(beta)} is not sigma-fixed")


def reorient(adq: AdQuiver, arrow_orbits: Sequence[int]) -> AdQuiver:
    """Reverse every arrow of the chosen arrow orbits (an admissible reorientation)."""
    flip = {a for n in arrow_orbits for a in adq.orbits.arrow[n]}
    arrows = tuple(Arrow(a.id, a.head, a.tail) if k in flip else a
                   for k, a in enumerate(adq.quiver.arrows))
    return AdQuiver(Quiver(adq.quiver.vertices, arrows), adq.sigma, adq.name)


# -- file format --
#
# {
#   "name": "a3swap",
#   "vertices": ["1", "2", "3"],
#   "arrows": [
#     ["a", "1", "2"],
#     ["b", "3", "2"]
#   ],
#   "sigma": {
#     "vertices": [["1", "3"]],
#     "arrows": [["a", "b"]]
#   }
# }
#
# sigma may also be given as mapping tables {"1": "3", "3": "1"}; the
# serializer always writes non-trivial cycles.

def parse_adquiver(text: str) -> AdQuiver:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid quiver file: {e}") from None
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("quiver file needs a 'vertices' list")
    try:
        vertices = [str(v) for v in doc["vertices"]]
        arrows = []
        for a in doc.get("arrows", []):
            if isinstance(a, dict):
                arrows.append(Arrow(str(a["id"]), str(a["tail"]), str(a["head"])))
            else:
                aid, t, h = a
                arrows.append(Arrow(str(aid), str(t), str(h)))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed arrow entry: {e}") from None
    Q = Quiver(tuple(vertices), tuple(arrows))
    sig = doc.get("sigma", {}) or {}
    if not isinstance(sig, dict):
        raise ParseError("'sigma' must be an object")
    vs, as_ = sig.get("vertices", []), sig.get("arrows", [])
    if isinstance(vs, dict) or isinstance(as_, dict):
        sigma = AdAutomorphism.from_mappings(
            Q, {str(k): str(v) for k, v in dict(vs or {}).items()},
            {str(k): str(v) for k, v in dict(as_ or {}).items()})
    else:
        sigma = AdAutomorphism.from_cycles(Q, [[str(x) for x in c] for c in vs],
                                           [[str(x) for x in c] for c in as_])
    return AdQuiver(Q, sigma, str(doc.get("name", "")))


def dump_adquiver(adq: AdQuiver) -> str:
    Q, s = adq.quiver, adq.sigma
    dj = json.dumps
    vcyc = [[Q.vertices[i] for i in c] for c in _cycles(s.vertex_perm) if len(c) > 1]
    acyc = [[Q.arrows[i].id for i in c] for c in _cycles(s.arrow_perm) if len(c) > 1]
    lines = ["{"]
    if adq.name:
        lines.append(f'  "name": {dj(adq.name)},')
    lines.append(f'  "vertices": {dj(list(Q.vertices))},')
    if Q.arrows:
        lines.append('  "arrows": [')
        body = [f"    {dj([a.id, a.tail, a.head])}" for a in Q.arrows]
        lines.append(",\n".join(body))
        lines.append("  ],")
    else:
        lines.append('  "arrows": [],')
    lines.append('  "sigma": {')
    lines.append(f'    "vertices": {dj(vcyc)},')
    lines.append(f'    "arrows": {dj(acyc)}')
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


FIXTURES = ("a2", "a3swap", "d4tri", "kron-swap", "two-point-swap")


def load_fixture(name: str) -> AdQuiver:
    if name not in FIXTURES:
        raise ParseError(f"unknown bundled quiver {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files("quiverfold").joinpath("data").joinpath(f"{name}.json").read_text()
    return parse_adquiver(text)


def load(source: str) -> AdQuiver:
    """A bundled fixture name or a path to a quiver file."""
    if source in FIXTURES:
        return load_fixture(source)
    try:
        with open(source) as fh:
            return parse_adquiver(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read quiver file {source!r}: {e.strerror}") from None
