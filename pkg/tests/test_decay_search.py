import pytest

from decaylab.codes import UserCoords, det_abs_squared, user_element
from decaylab.decay_search import (
    BudgetExceeded,
    SearchBox,
    decay,
    decay_series,
    enumerate_orbit_reps,
    orbit_rep_array,
    reduced_pair_count,
)
from decaylab.exact_ring import QuadInt, RingElem, cmp_quad, mul
from decaylab.kernels import available_backends


def test_orbit_counts():
    assert len(enumerate_orbit_reps(1)) == 20
    assert len(enumerate_orbit_reps(2)) == 156
    assert len(orbit_rep_array(3)) == (7**4 - 1) // 4


def test_orbit_representative_is_lexicographic_minimum():
    reps = set(enumerate_orbit_reps(1))
    assert UserCoords(-1, 0, 0, 0) in reps
    for other in [(1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0)]:
        assert UserCoords(*other) not in reps


@pytest.mark.parametrize("N", [1, 2])
def test_orbits_partition_the_box(N):
    seen = set()
    for r in enumerate_orbit_reps(N):
        x = RingElem(*r)
        orbit = {x.coords}
        for _ in range(3):
            x = mul(RingElem(0, 1, 0, 0), x)
            orbit.add(x.coords)
        assert len(orbit) == 4
        assert min(orbit) == tuple(r)
        assert not (orbit & seen)
        seen |= orbit
    assert len(seen) == (2 * N + 1) ** 4 - 1


def test_search_box_validation():
    with pytest.raises(ValueError):
        SearchBox(0, 1)
    with pytest.raises(ValueError):
        decay(1, 0)
    with pytest.raises(ValueError):
        enumerate_orbit_reps(0)


@pytest.mark.parametrize("N1,N2", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_matches_brute_force(N1, N2, oracle):
    val, w1, w2 = oracle(N1, N2)
    r = decay(N1, N2)
    assert r.min_detsq == val
    assert tuple(r.witness1) == w1 and tuple(r.witness2) == w2
    assert r.reevaluate() == r.min_detsq
    assert r.min_detsq.sign() > 0


@pytest.mark.parametrize("backend", available_backends())
def test_backends_give_same_record(backend):
    ref = decay(3, 2, backend="numpy")
    assert decay(3, 2, backend=backend).same_result(ref)


def test_independent_of_workers_and_order():
    ref = decay(3, 3)
    for workers, seed in [(2, None), (4, 1), (3, 12345)]:
        r = decay(3, 3, workers=workers, shuffle_seed=seed)
        assert r.same_result(ref)


def test_known_values():
    assert decay(1, 1).min_detsq == QuadInt(26, -16)
    assert decay(3, 3).min_detsq == QuadInt(466, -288)
    r = decay(1, 1)
    assert r.orbit_reduced_count == 400
    assert r.decay_value == pytest.approx(float(QuadInt(26, -16)) ** 0.5)


def test_nesting_monotonicity():
    vals = {(a, b): decay(a, b).min_detsq for a in (1, 2, 3) for b in (1, 2)}
    for (a, b), v in vals.items():
        for (c, d), w in vals.items():
            if c >= a and d >= b:
                assert cmp_quad(w, v) <= 0


def test_budget_guard(monkeypatch):
    with pytest.raises(BudgetExceeded):
        decay(2, 2, budget=100)
    r = decay(1, 1, budget=10, allow_over_budget=True)
    assert r.min_detsq == QuadInt(26, -16)
    monkeypatch.setenv("DECAYLAB_BUDGET", "399")
    with pytest.raises(BudgetExceeded):
        decay(1, 1)
    monkeypatch.setenv("DECAYLAB_BUDGET", "400")
    decay(1, 1)


def test_reduced_pair_count():
    assert reduced_pair_count(1, 1) == 400
    assert reduced_pair_count(2, 1) == 156 * 20


def test_series():
    eq = decay_series(3, "equal")
    assert [(r.n1, r.n2) for r in eq] == [(1, 1), (2, 2), (3, 3)]
    for a, b in zip(eq, eq[1:]):
        assert cmp_quad(b.min_detsq, a.min_detsq) <= 0
    fixed = decay_series(8, "fixed_second")
    assert [(r.n1, r.n2) for r in fixed] == [(n, 1) for n in range(1, 9)]
    for a, b in zip(fixed, fixed[1:]):
        assert cmp_quad(b.min_detsq, a.min_detsq) <= 0
    for r in fixed:
        assert det_abs_squared(user_element(r.witness1), user_element(r.witness2)) == r.min_detsq
    assert decay_series(1)[0].same_result(decay(1, 1))


def test_series_validation():
    with pytest.raises(ValueError):
        decay_series(0)
    with pytest.raises(ValueError):
        decay_series(2, "diagonal")
    with pytest.raises(BudgetExceeded):
        decay_series(3, "equal", budget=1000)
