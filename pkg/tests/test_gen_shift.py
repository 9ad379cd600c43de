import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from genshift import (
    COUNTABLE,
    DomainError,
    IndexSet,
    NotInL2,
    UnsupportedError,
    WindowOnly,
    add,
    apply,
    apply_norm_sq,
    classify,
    compose_finite,
    exhaustive_maps,
    from_entries,
    make_finite_map,
    make_symbolic_map,
    norm,
    norm_sq,
    operator_norm,
    scale,
    solve,
    spectral_norm,
    structural_check,
    symbolic_map,
    to_dense,
    unit_vector,
)
from helpers import (
    finite_maps,
    map_and_vector,
    parity_rule,
    permutation_maps,
    uncertified_successor_rule,
    vectors_on,
)


# --- apply ------------------------------------------------------------------

def test_apply_identity_map():
    m = make_finite_map([1, 2, 3], 3)
    x = from_entries(m.domain, {1: 1, 2: 2j})
    assert apply(m, x) == x


def test_apply_successor_kills_e1():
    m = symbolic_map("successor")
    assert apply(m, unit_vector(COUNTABLE, 1)).entries == {}


def test_apply_constant_map_copies_everywhere():
    images = [1, 1, 1, 1]
    m = make_finite_map(images, 4)
    y = apply(m, unit_vector(m.domain, 1))
    # dense oracle: matrix built directly from the image table
    A = np.zeros((4, 4))
    for b, a in enumerate(images):
        A[b, a - 1] = 1
    expected = A @ np.array([1.0, 0, 0, 0])
    assert [y[k].real for k in range(1, 5)] == list(expected)
    assert norm(y) == 2.0


def test_apply_not_in_l2_reports_smallest_offender():
    oc = symbolic_map("odd_collapse")
    assert apply(oc, from_entries(COUNTABLE, {1: 1, 4: 2})) == NotInL2(1)
    par = make_symbolic_map(parity_rule())
    assert apply(par, from_entries(COUNTABLE, {2: 1, 1: 1})) == NotInL2(1)
    assert apply(par, from_entries(COUNTABLE, {2: 1, 5: 1})) == NotInL2(2)


def test_apply_domain_mismatch():
    with pytest.raises(DomainError):
        apply(make_finite_map([1, 2], 2), unit_vector(IndexSet.finite(3), 1))


@given(map_and_vector())
def test_apply_support_is_union_of_fibers(mv):
    m, x = mv
    y = apply(m, x)
    expected = set()
    for theta in x.entries:
        expected |= m.fiber(theta).members
    assert set(y.entries) == expected


# --- apply_norm_sq ----------------------------------------------------------

def test_apply_norm_sq_identity_is_norm_sq():
    m = make_finite_map([1, 2, 3], 3)
    x = from_entries(m.domain, {1: 3, 3: 4j})
    assert apply_norm_sq(m, x) == norm_sq(x)


def test_apply_norm_sq_clamp_table_e1():
    images = [1] + list(range(1, 10))
    m = make_finite_map(images, 10)
    assert images.count(1) == 2  # brute preimage count
    assert apply_norm_sq(m, unit_vector(m.domain, 1)) == 2.0


def test_apply_norm_sq_triangular_unit_vectors():
    m = symbolic_map("triangular")
    for k in (1, 2, 5, 12):
        assert apply_norm_sq(m, unit_vector(COUNTABLE, k)) == float(k)


def test_apply_norm_sq_infinite_fiber():
    oc = symbolic_map("odd_collapse")
    assert apply_norm_sq(oc, unit_vector(COUNTABLE, 1)) == math.inf
    assert apply_norm_sq(oc, unit_vector(COUNTABLE, 2)) == 1.0


@given(map_and_vector())
def test_norm_identity_on_finite_maps(mv):
    m, x = mv
    lhs = norm_sq(apply(m, x))
    rhs = apply_norm_sq(m, x)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, lhs, rhs)


@pytest.mark.parametrize("name,param", [
    ("successor", None), ("clamp_pred", None), ("block", 2),
    ("block", 7), ("doubling", None),
])
@given(x=vectors_on(COUNTABLE, max_index=40))
def test_norm_identity_on_bounded_countable_rules(name, param, x):
    m = symbolic_map(name, param)
    lhs = norm_sq(apply(m, x))
    rhs = apply_norm_sq(m, x)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, lhs, rhs)


# --- operator_norm ----------------------------------------------------------

def test_operator_norm_identity():
    assert operator_norm(make_finite_map([1, 2, 3, 4, 5], 5)) == 1.0


def test_operator_norm_constant_map():
    assert operator_norm(make_finite_map([1, 1, 1, 1], 4)) == 2.0


def test_operator_norm_block_rule_with_truncation_oracle():
    assert operator_norm(symbolic_map("block", 3)) == math.sqrt(3)
    truncation = make_finite_map([1, 1, 1, 2, 2, 2, 3, 3, 3], 9)
    assert abs(spectral_norm(to_dense(truncation)) - math.sqrt(3)) <= 1e-9


def test_operator_norm_unbounded_rules():
    assert operator_norm(symbolic_map("triangular")) == math.inf
    assert operator_norm(symbolic_map("odd_collapse")) == math.inf


def test_operator_norm_uncertified_rule_is_window_only():
    nrm = operator_norm(make_symbolic_map(uncertified_successor_rule()), window=12)
    assert isinstance(nrm, WindowOnly)
    assert nrm.value == 1.0


# --- classify ---------------------------------------------------------------

def test_classify_three_cycle_is_unitary():
    rep = classify(make_finite_map([2, 3, 1], 3))
    assert rep.maps_into_l2 is True
    assert rep.operator_norm == 1.0
    assert rep.sigma_injective is True and rep.sigma_surjective is True
    assert rep.isometry is True
    assert rep.compact is True
    oracle = structural_check(to_dense(make_finite_map([2, 3, 1], 3)))
    assert oracle.unitary and oracle.injective and oracle.surjective


def test_classify_doubling():
    rep = classify(symbolic_map("doubling"))
    assert rep.sigma_surjective is True    # the index map is one-to-one
    assert rep.sigma_injective is False    # 1 is not hit by k -> 2k
    assert rep.isometry is False
    assert rep.compact is False
    assert rep.maps_into_l2 is True


def test_classify_constant_map():
    rep = classify(make_finite_map([1, 1, 1, 1], 4))
    assert rep.sigma_surjective is False and rep.sigma_injective is False
    assert rep.operator_norm == 2.0
    assert structural_check(to_dense(make_finite_map([1, 1, 1, 1], 4))).rank == 1


def test_classify_clamp_pred():
    rep = classify(symbolic_map("clamp_pred"))
    assert rep.sigma_injective is True     # the index map is onto
    assert rep.sigma_surjective is False   # fiber over 1 has two elements
    assert rep.operator_norm == math.sqrt(2)


def test_classify_triangular_not_into_l2():
    rep = classify(symbolic_map("triangular"))
    assert rep.maps_into_l2 is False
    assert rep.operator_norm == math.inf
    assert rep.compact is False


def test_classify_uncertified_rule_gives_window_verdicts():
    rep = classify(make_symbolic_map(uncertified_successor_rule()), 16, 16)
    assert isinstance(rep.maps_into_l2, WindowOnly)
    assert isinstance(rep.sigma_surjective, WindowOnly)  # injectivity unprovable by window
    assert rep.sigma_injective is False                  # empty fiber over 1 refutes onto
    assert rep.isometry is False


def test_classify_window_refutes_injectivity_exactly():
    # uncertified pairs-collapse: a size-2 fiber inside the window is a witness
    from genshift import SymbolicRule

    honest = SymbolicRule(
        name="pairs",
        eval_fn=lambda k: (k + 1) // 2,
        card_fn=lambda a: 2,
        members_fn=lambda a: frozenset((2 * a - 1, 2 * a)),
    )
    rep = classify(make_symbolic_map(honest), 8, 8)
    assert rep.sigma_surjective is False


@given(permutation_maps())
def test_permutations_are_isometries(m):
    rep = classify(m)
    assert rep.isometry is True
    assert rep.operator_norm == 1.0
    assert rep.sigma_injective is True and rep.sigma_surjective is True


# --- algebraic properties -----------------------------------------------------

@given(finite_maps(), st.data())
def test_linearity_integer_scalars_exact(m, data):
    n = m.domain.size
    ints = st.integers(-4, 4)
    gauss = st.builds(complex, ints, ints)
    x = data.draw(vectors_on(m.domain, values=gauss))
    y = data.draw(vectors_on(m.domain, values=gauss))
    a = data.draw(gauss)
    b = data.draw(gauss)
    lhs = apply(m, add(scale(a, x), scale(b, y)))
    rhs = add(scale(a, apply(m, x)), scale(b, apply(m, y)))
    assert lhs == rhs


@given(map_and_vector(), st.data())
def test_linearity_float_scalars(mv, data):
    m, x = mv
    y = data.draw(vectors_on(m.domain))
    lhs = apply(m, add(scale(1.5 - 0.5j, x), scale(-2.25j, y)))
    rhs = add(scale(1.5 - 0.5j, apply(m, x)), scale(-2.25j, apply(m, y)))
    assert set(lhs.entries) == set(rhs.entries)
    diff = add(lhs, scale(-1, rhs))
    assert norm(diff) <= 1e-12 * max(1.0, norm(lhs))


@given(finite_maps())
def test_sharpness_some_basis_vector_attains_the_norm(m):
    nrm = operator_norm(m)
    attained = max(norm(apply(m, unit_vector(m.domain, t))) for t in m.domain.indices())
    assert attained == nrm


@given(st.data())
def test_contravariant_composition(data):
    n = data.draw(st.integers(2, 6))
    dom = IndexSet.finite(n)
    t1 = data.draw(st.lists(st.integers(1, n), min_size=n, max_size=n))
    t2 = data.draw(st.lists(st.integers(1, n), min_size=n, max_size=n))
    m1 = make_finite_map(t1, n)
    m2 = make_finite_map(t2, n)
    x = data.draw(vectors_on(dom))
    # applying m2's shift then m1's equals the shift of the pointwise composite m2(m1(.))
    assert apply(m1, apply(m2, x)) == apply(compose_finite(m2, m1), x)


# --- solve --------------------------------------------------------------------

def test_solve_identity():
    m = make_finite_map([1, 2, 3], 3)
    y = from_entries(m.domain, {1: 2, 3: -1j})
    assert solve(m, y) == y


def test_solve_doubling_example():
    m = symbolic_map("doubling")
    y = from_entries(COUNTABLE, {3: 1 + 1j})
    x = solve(m, y)
    assert x.entries == {6: 1 + 1j}
    assert apply(m, x) == y
    assert norm(x) == norm(y)


def test_solve_five_cycle_unit_vector():
    m = make_finite_map([2, 3, 4, 5, 1], 5)
    y = unit_vector(m.domain, 1)
    x = solve(m, y)
    assert apply(m, x) == y
    assert x.entries == {2: 1 + 0j}  # eval(1) = 2 carries y_1


def test_solve_rejects_non_injective_naming_pair():
    with pytest.raises(UnsupportedError, match=r"eval\(1\) == eval\(2\)"):
        solve(make_finite_map([3, 3, 1], 3), unit_vector(IndexSet.finite(3), 1))
    with pytest.raises(UnsupportedError, match="eval"):
        solve(symbolic_map("clamp_pred"), unit_vector(COUNTABLE, 1))


def test_solve_window_certified_injectivity_needs_override():
    m = make_symbolic_map(uncertified_successor_rule())
    y = from_entries(COUNTABLE, {4: 2j})
    with pytest.raises(UnsupportedError, match="window"):
        solve(m, y)
    x = solve(m, y, accept_window_injectivity=True)
    assert x.entries == {5: 2j}
    assert apply(m, x) == y


@given(permutation_maps(), st.data())
def test_solve_round_trip_preserves_norm_exactly(m, data):
    y = data.draw(vectors_on(m.domain))
    x = solve(m, y)
    assert apply(m, x) == y
    assert norm(x) == norm(y)


# --- exhaustive equivalence against the dense oracle ---------------------------

def test_exhaustive_classification_equivalence_n6():
    disagreements = 0
    for m in exhaustive_maps(6):
        rep = classify(m)
        oracle = structural_check(to_dense(m))
        phi_inj = len(set(m.table)) == 6
        phi_surj = set(m.table) == set(range(1, 7))
        if not (
            rep.sigma_surjective == phi_inj == oracle.surjective
            and rep.sigma_injective == phi_surj == oracle.injective
            and rep.isometry == (phi_inj and phi_surj) == oracle.unitary
        ):
            disagreements += 1
    assert disagreements == 0
