import json

import pytest
from hypothesis import given, strategies as st

from quiverfold import load_fixture
from quiverfold.config import Config
from quiverfold.errors import NotNormalized, ParseError, SearchCapExceeded, SizeCapExceeded
from quiverfold.gf import Matrix, extension
from quiverfold.orbits import orbit_partition, point_space
from quiverfold.repcat import (FStableRep, Rep, brute_force_module_count, build_f_stable,
                               conjecture_scan, enumerate_indecomposables, f_period, fixed_hom_dim,
                               fixed_points, hom_fixed_dim, hom_space, is_f_indecomposable,
                               is_indecomposable, is_isomorphic, normalize_to_f_fixed, parse_rep,
                               representatives, twist, untwist)

A2 = load_fixture("a2")
A3 = load_fixture("a3swap")
KRON = load_fixture("kron-swap")
GF4 = extension(2, 2)
W = GF4.from_digits([0, 1])          # a root of T^2 + T + 1
W2 = GF4.mul(W, W)


def rep(adq, q, level, dims, **arrows):
    Q = adq.quiver
    mats = []
    for a in Q.arrows:
        h, w = dims[Q.vindex[a.head]], dims[Q.vindex[a.tail]]
        mats.append(Matrix.from_rows(arrows[a.id], w) if a.id in arrows else Matrix.zeros(h, w))
    return Rep(adq, q, level, tuple(dims), tuple(mats))


def test_omega_squares_to_omega_plus_one():
    assert W2 == GF4.add(W, 1)


# -- twist --

def test_twist_moves_simples_along_sigma():
    S1 = Rep.simple(A3, 2, 1, 0)
    assert twist(S1).dims == (0, 0, 1)
    assert twist(S1, 2) == S1


def test_twist_on_kronecker_applies_frobenius_and_swaps():
    R = rep(KRON, 2, 2, (1, 1), a=[[W]], b=[[0]])
    T = twist(R)
    assert T.mats[0].tolist() == [[0]] and T.mats[1].tolist() == [[W2]]
    # swap applied twice and w^4 = w
    assert twist(R, 2) == R
    R3 = rep(KRON, 2, 3, (1, 1), a=[[2]], b=[[0]])
    assert twist(R3, 2) != R3 and twist(R3, 6) == R3


def test_identity_sigma_twist_is_frobenius_only():
    R = rep(A2, 2, 1, (1, 1), a=[[1]])
    assert twist(R) == R
    G = rep(A2, 2, 2, (1, 1), a=[[W]])
    assert twist(G).mats[0].tolist() == [[W2]]


@given(st.integers(0, 3), st.integers(-4, 4), st.data())
def test_untwist_inverts_twist(level_pow, s, data):
    level = (1, 2, 2, 4)[level_pow]
    F = extension(2, level)
    a = data.draw(st.integers(0, F.order - 1))
    b = data.draw(st.integers(0, F.order - 1))
    R = rep(KRON, 2, level, (1, 1), a=[[a]], b=[[b]])
    assert untwist(twist(R, s), s) == R
    assert twist(R, 2 * level) == R


# -- Hom, iso, indecomposability --

def test_hom_examples():
    S2 = Rep.simple(A2, 2, 1, 1)
    P1 = rep(A2, 2, 1, (1, 1), a=[[1]])
    S1 = Rep.simple(A2, 2, 1, 0)
    assert len(hom_space(S2, P1)) == 1
    assert len(hom_space(P1, S2)) == 0
    assert len(hom_space(S1, S1)) == 1
    assert not is_isomorphic(S1, S2)


def test_isomorphism_up_to_scaling():
    R1 = rep(KRON, 3, 1, (1, 1), a=[[1]], b=[[2]])
    R2 = rep(KRON, 3, 1, (1, 1), a=[[2]], b=[[1]])
    R3 = rep(KRON, 3, 1, (1, 1), a=[[1]], b=[[1]])
    assert is_isomorphic(R1, R2)
    assert not is_isomorphic(R1, R3)


def test_indecomposability():
    S1 = Rep.simple(A2, 2, 1, 0)
    S2 = Rep.simple(A2, 2, 1, 1)
    assert is_indecomposable(S1)
    assert not is_indecomposable(S1.direct_sum(S2))
    assert is_indecomposable(rep(A2, 2, 1, (1, 1), a=[[1]]))
    assert not is_indecomposable(Rep.zero(A2, 2, 1, (0, 0)))


def test_f_period_of_simples_is_orbit_size():
    assert f_period(Rep.simple(A3, 2, 1, 0)) == 2
    assert f_period(Rep.simple(A3, 2, 1, 1)) == 1
    d4 = load_fixture("d4tri")
    assert f_period(Rep.simple(d4, 2, 1, d4.quiver.vindex["1"])) == 3


def test_f_period_counts_frobenius_too():
    # over GF(4) the twist of [w] on a2 is [w^2], isomorphic by rescaling
    assert f_period(rep(A2, 2, 2, (1, 1), a=[[W]])) == 1
    # kronecker (w, 0) twists to (0, w^2): different up to iso
    assert f_period(rep(KRON, 2, 2, (1, 1), a=[[W]], b=[[0]])) == 2


# -- F-stable representations and fixed points --

def test_build_f_stable_for_a3_simple():
    Mt = build_f_stable(Rep.simple(A3, 2, 1, 0))
    assert Mt.dims == (1, 0, 1)
    X = fixed_points(Mt)
    assert X.dim == 2 and X.folded_dim == (1, 0)


def test_build_f_stable_kronecker_over_gf4():
    R = rep(KRON, 2, 2, (1, 1), a=[[1]], b=[[0]])
    Mt = build_f_stable(R, 2)
    assert Mt.dims == (2, 2)
    assert fixed_points(Mt).dim == 4
    assert is_f_indecomposable(Mt)


def test_build_f_stable_needs_literal_fixedness():
    R = rep(KRON, 2, 1, (1, 1), a=[[1]], b=[[0]])
    with pytest.raises(NotNormalized):
        build_f_stable(R, 1)
    with pytest.raises(ValueError):
        build_f_stable(R, 0)


def test_frobenius_equation_is_checked():
    R = rep(KRON, 2, 1, (1, 1), a=[[1]], b=[[0]])
    with pytest.raises(NotNormalized):
        FStableRep(R)
    assert FStableRep(rep(KRON, 2, 1, (1, 1), a=[[1]], b=[[1]])).dims == (1, 1)


def test_normalize_finds_a_fixed_representative():
    # a2 over GF(4) with entry w: isomorphic to the entry 1, which is Frobenius-fixed
    R = rep(A2, 2, 2, (1, 1), a=[[W]])
    N = normalize_to_f_fixed(R, 1)
    assert twist(N, 1) == N and is_isomorphic(N, R)
    with pytest.raises(NotNormalized):
        normalize_to_f_fixed(Rep.simple(A3, 2, 1, 0), 1)


def test_three_hom_dimensions_agree():
    S1 = build_f_stable(Rep.simple(A3, 2, 1, 0))
    P = build_f_stable(rep(A3, 2, 1, (1, 1, 0), a=[[1]]))
    for M in (S1, P):
        for N in (S1, P):
            if M.rep.level != N.rep.level:
                continue
            d = hom_fixed_dim(M, N)
            assert d == fixed_hom_dim(fixed_points(M), fixed_points(N))
    assert hom_fixed_dim(S1, S1) == 2


# -- orbit oracle --

def test_oracle_examples():
    assert brute_force_module_count(A2, (1, 1), 2) == 2
    assert brute_force_module_count(load_fixture("two-point-swap"), (1,), 2) == 1
    assert brute_force_module_count(A3, (1, 1), 2) == 2


@pytest.mark.parametrize("name,alpha,qq", [("a2", (1, 1), 3), ("kron-swap", (1, 1), 2),
                                           ("a3swap", (1, 2), 2), ("d4tri", (1, 2), 2)])
def test_orbit_sizes_cover_the_space(name, alpha, qq):
    adq = load_fixture(name)
    part = orbit_partition(adq, alpha, qq)
    assert sum(part.sizes()) == point_space(adq, alpha, qq).size
    reps = part.representatives()
    assert len(reps) == part.n_orbits and reps == sorted(reps)


def test_oracle_size_cap():
    with pytest.raises(SizeCapExceeded):
        brute_force_module_count(KRON, (3, 3), 3, config=Config(max_points=100))


def test_enumerate_indecomposables():
    (ind,) = enumerate_indecomposables(A2, (1, 1), 2)
    assert ind.module.dims == (1, 1)
    assert len(enumerate_indecomposables(KRON, (1, 1), 2)) == 3


def test_representatives_are_pairwise_non_isomorphic():
    rs = representatives(A2, (1, 1), 2, 1)
    assert len(rs) == 2
    assert not is_isomorphic(rs[0], rs[1])


def test_conjecture_scan_a3():
    report = conjecture_scan(A3, (1, 0, 0))
    assert report.status == "holds" and report.sigma_period == 2
    assert report.witness is not None and f_period(report.witness) == 2
    assert "holds" in report.summary()


def test_search_cap():
    # End = F[b] with b nilpotent: proving there is no idempotent needs a full scan
    R = rep(KRON, 2, 4, (2, 2), a=[[1, 0], [0, 1]], b=[[0, 1], [0, 0]])
    assert is_indecomposable(R)
    with pytest.raises(SearchCapExceeded):
        is_indecomposable(R, Config(search_cap=1, search_retries=1))


# -- text format --

def test_parse_rep_with_codes_and_coefficient_lists():
    doc = {"quiver": "kron-swap", "q": 2, "level": 2, "dims": {"1": 1, "2": 1},
           "arrows": {"a": [[[0, 1]]], "b": [[0]]}}
    R = parse_rep(json.dumps(doc))
    assert R.mats[0].tolist() == [[W]]
    doc["arrows"]["a"] = [[W]]
    assert parse_rep(json.dumps(doc)) == R
    again = parse_rep(json.dumps({"quiver": "kron-swap", **R.to_json()}))
    assert again == R


@pytest.mark.parametrize("doc", [
    "not json",
    {"q": 2, "dims": [1, 1]},
    {"quiver": "kron-swap", "q": 2, "dims": [1, 1], "arrows": {"zz": [[1]]}},
    {"quiver": "kron-swap", "q": 2, "dims": [1, 1], "arrows": {"a": [[2]]}},
    {"quiver": "kron-swap", "q": 2, "level": 2, "dims": [1, 1], "arrows": {"a": [[[0, 2]]]}},
    {"quiver": "kron-swap", "q": 2, "dims": [1, 1], "arrows": {"a": [[1, 1]]}},
])
def test_parse_rep_errors(doc):
    with pytest.raises(ParseError):
        parse_rep(doc if isinstance(doc, str) else json.dumps(doc))
