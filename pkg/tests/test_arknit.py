import pytest
from hypothesis import given, strategies as st

from quiverfold import load_fixture
from quiverfold.arknit import (ar_sigma, as_adquiver, fold_ar, folded_ar, is_dynkin, knit,
                               mesh_defects)
from quiverfold.errors import NotDynkin
from quiverfold.folding import cartan
from quiverfold.quiver import FIXTURES, AdAutomorphism, AdQuiver, Quiver
from quiverfold.roots import generate_roots


def path(n, flips=()):
    arrows = []
    for i in range(n - 1):
        t, h = (str(i + 1), str(i)) if i in flips else (str(i), str(i + 1))
        arrows.append((f"a{i}", t, h))
    return Quiver(tuple(str(i) for i in range(n)), tuple(arrows))


def test_a2():
    ar = knit(load_fixture("a2").quiver)
    assert ar.vertices == ((1, 0), (0, 1), (1, 1))      # by height, then lex descending
    assert ar.arrows == ((1, 2, 1), (2, 0, 1))
    S1, S2 = ar.index((1, 0)), ar.index((0, 1))
    assert ar.tau_map() == {S1: S2}
    assert [ar.vertices[p] for p in ar.projectives] == [(1, 1), (0, 1)]
    assert sorted(ar.vertices[i] for i in ar.injectives) == [(1, 0), (1, 1)]


def test_a3_and_d4_sizes():
    assert knit(load_fixture("a3swap").quiver).size == 6
    assert knit(load_fixture("d4tri").quiver).size == 12


def test_d4_folds_to_six_orbits():
    v = folded_ar(load_fixture("d4tri"))
    assert v.size == 6
    assert sorted(v.eps) == [1, 1, 1, 3, 3, 3]
    for members, e in zip(v.members, v.eps):
        assert len(members) == e
    # every folded arrow joins an orbit of size 3 with one of size 1
    assert all({v.eps[a.tail], v.eps[a.head]} == {1, 3} for a in v.arrows)
    assert all(sorted((a.d, a.dprime)) == [1, 3] for a in v.arrows)


def test_d4_eps_in_knitting_order():
    v = folded_ar(load_fixture("d4tri"))
    assert v.eps == (3, 1, 3, 3, 1, 1)


def test_identity_sigma_folds_to_itself():
    Q = load_fixture("a3swap").quiver
    ar = knit(Q)
    fs = ar_sigma(ar, AdAutomorphism.identity(Q))
    assert fs == tuple(range(ar.size))
    v = fold_ar(ar, fs)
    assert v.size == ar.size and set(v.eps) == {1}
    assert len(v.tau) == len(ar.tau)


def test_two_point_swap():
    ar = knit(load_fixture("two-point-swap").quiver)
    assert ar.size == 2 and not ar.arrows
    v = folded_ar(load_fixture("two-point-swap"))
    assert v.size == 1 and v.eps == (2,)


def test_not_dynkin():
    assert not is_dynkin(load_fixture("kron-swap").quiver)
    with pytest.raises(NotDynkin):
        knit(load_fixture("kron-swap").quiver)
    cyc = Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")))
    with pytest.raises(NotDynkin):
        knit(cyc)
    star = Quiver(tuple("01234"), tuple((f"a{i}", str(i), "0") for i in range(1, 5)))
    assert not is_dynkin(star)


@pytest.mark.parametrize("name", [n for n in FIXTURES if n != "kron-swap"])
def test_mesh_relations_and_roots(name):
    adq = load_fixture(name)
    ar = knit(adq.quiver)
    assert mesh_defects(ar) == []
    roots = generate_roots(cartan(adq.quiver), 2 * adq.quiver.n_vertices).real()
    assert sorted(ar.vertices) == sorted(roots)
    assert len(ar.projectives) == len(ar.injectives) == adq.quiver.n_vertices


@given(st.integers(1, 6), st.data())
def test_type_a_any_orientation(n, data):
    flips = data.draw(st.sets(st.integers(0, max(n - 2, 0))))
    Q = path(n, flips)
    ar = knit(Q)
    assert ar.size == n * (n + 1) // 2
    assert mesh_defects(ar) == []
    assert sorted(ar.vertices) == sorted(generate_roots(cartan(Q), n).real())


def test_ar_sigma_is_a_quiver_automorphism():
    adq = load_fixture("a3swap")
    ar = knit(adq.quiver)
    fs = ar_sigma(ar, adq.sigma)
    big = as_adquiver(ar, fs)
    assert isinstance(big, AdQuiver)
    assert sorted(fs) == list(range(ar.size))
    assert all(fs[fs[k]] == k for k in range(ar.size))


def test_dot_output():
    ar = knit(load_fixture("a2").quiver)
    dot = ar.to_dot()
    assert dot.startswith("digraph AR {") and dot.endswith("}\n")
    assert 'v0 [label="10"];' in dot and 'style=dashed, label="tau"' in dot
    vdot = folded_ar(load_fixture("a3swap")).to_dot()
    assert vdot.startswith("digraph ValuedAR {") and "eps=2" in vdot
    lines = folded_ar(load_fixture("a3swap")).describe()
    assert any(line.startswith("tau ") for line in lines)
