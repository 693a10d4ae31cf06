import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlie_kit.basiclie import basic_lie_algebra, so_algebra, so_pairs
from nlie_kit.errors import ConsistencyError, IndexPatternError, ShapeError
from nlie_kit.exact import Matrix, commutator, to_sparse
from nlie_kit.nlie import vector_product_algebra
from nlie_kit.prolong import (
    ObstructionIndex,
    ProlongReport,
    adjoint_module,
    can_prolong,
    check_module_axioms,
    commutant_basis,
    default_seed,
    dimension_formula,
    family_module,
    is_irreducible,
    minimal_polynomial,
    nlie_adjoint_module,
    nlie_dimension,
    obstruction_indices,
    predicted_prolongs,
    prolong_check_general,
    prolongs_by_semidirect,
    q2_span_dimension,
    q2_spans,
    r_operator,
    rep_action,
    to_basic,
    to_so,
)
from nlie_kit.sorep import (
    direct_sum,
    harmonic_module,
    laplacian_kernel_dim,
    monomials,
    polynomial_module,
    restrict,
    so4_tensor_module,
    wedge2_module,
    zero_rep,
)


def e(rep, m, a, b):
    if a == b:
        return Matrix.zeros(rep.dim)
    k = so_pairs(m).index((min(a, b), max(a, b)))
    return rep.matrices[k] if a < b else -rep.matrices[k]


# ---------------------------------------------------------------- indices and R


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_index_count(m):
    idx = obstruction_indices(m)
    assert len(idx) == (m - 3) * comb(m, 3)
    assert idx == sorted(idx, key=lambda x: (x.i, x.j, x.s, x.k))


def test_index_validation():
    with pytest.raises(IndexPatternError):
        ObstructionIndex(0, 2, 1, 3)
    with pytest.raises(IndexPatternError):
        ObstructionIndex(1, 1, 2, 3)
    assert str(ObstructionIndex(0, 1, 2, 3)) == "R_1234"


def test_out_of_range_index():
    with pytest.raises(IndexPatternError):
        r_operator(harmonic_module(4, 1), ObstructionIndex(0, 1, 2, 4))


REPS = {
    "w2so5": lambda: wedge2_module(5),
    "M12": lambda: so4_tensor_module(1, 2),
    "P52": lambda: polynomial_module(5, 2),
    "w2so4": lambda: wedge2_module(4),
}


@pytest.mark.parametrize("name", sorted(REPS))
def test_r_vanishes_for_i_in_jsk(name):
    rep = REPS[name]()
    m = 5 if rep.algebra.dim == 10 else 4
    for j, s, k in itertools.combinations(range(m), 3):
        for i in (j, s, k):
            assert r_operator(rep, ObstructionIndex.unchecked(i, j, s, k)).is_zero()


def test_degenerate_product_form_is_degree_one():
    # with i = j the product expression reduces to [e_ik, e_is] = -e_ks, so only the
    # commutator form can vanish identically
    rep = so4_tensor_module(1, 2)
    i, s, k = 0, 1, 2
    product = e(rep, 4, i, i) @ e(rep, 4, s, k) + e(rep, 4, i, s) @ e(rep, 4, k, i) + e(rep, 4, i, k) @ e(rep, 4, i, s)
    assert product == -e(rep, 4, k, s)
    assert not product.is_zero()


@pytest.mark.parametrize("name", sorted(REPS))
def test_r_skew_in_jsk(name):
    rep = REPS[name]()
    m = 5 if rep.algebra.dim == 10 else 4
    for idx in obstruction_indices(m):
        base = r_operator(rep, idx)
        for perm in itertools.permutations((idx.j, idx.s, idx.k)):
            sign = 1 if sum(1 for a, b in itertools.combinations(perm, 2) if a > b) % 2 == 0 else -1
            assert r_operator(rep, ObstructionIndex.unchecked(idx.i, *perm)) == base.scale(sign)


@pytest.mark.parametrize("name", sorted(REPS))
def test_r_commutator_identity(name):
    rep = REPS[name]()
    m = 5 if rep.algebra.dim == 10 else 4
    for idx in obstruction_indices(m):
        i, j, s, k = idx.i, idx.j, idx.s, idx.k
        E = lambda a, b: e(rep, m, a, b)  # noqa: E731
        other = -(
            E(i, j) @ commutator(E(i, s), E(i, k))
            + E(i, s) @ commutator(E(i, k), E(i, j))
            + E(i, k) @ commutator(E(i, j), E(i, s))
        )
        assert r_operator(rep, idx) == other


@pytest.mark.parametrize("m", [4, 5, 6])
def test_r_kills_linear_forms(m):
    rep = polynomial_module(m, 1)
    for idx in obstruction_indices(m):
        R = r_operator(rep, idx)
        assert not R.apply({idx.i: Fraction(1)})
        assert not R.apply({idx.k: Fraction(1)})


@given(st.data())
def test_r_factors_through_outside_variables(data):
    m = 6
    idx = data.draw(st.sampled_from(obstruction_indices(m)))
    outside = [x for x in range(m) if x not in (idx.i, idx.j, idx.s, idx.k)]
    dv = data.draw(st.integers(0, 2))
    dw = data.draw(st.integers(1, 2))
    v = data.draw(st.sampled_from(monomials(m, dv)))
    w_vars = data.draw(st.lists(st.sampled_from(outside), min_size=dw, max_size=dw))
    w = [0] * m
    for x in w_vars:
        w[x] += 1
    small, big = monomials(m, dv), monomials(m, dv + dw)
    Rv = r_operator(polynomial_module(m, dv), idx).apply({small.index(v): Fraction(1)})
    vw = tuple(a + b for a, b in zip(v, w))
    Rvw = r_operator(polynomial_module(m, dv + dw), idx).apply({big.index(vw): Fraction(1)})
    shifted = {big.index(tuple(a + b for a, b in zip(small[c], w))): x for c, x in Rv.items()}
    assert Rvw == shifted


# ---------------------------------------------------------------- the R criterion


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("t", [0, 1, 2])
def test_polynomial_modules_prolong(n, t):
    assert can_prolong(polynomial_module(n + 1, t)).verdict


@pytest.mark.parametrize("t", range(4))
@pytest.mark.parametrize("r", range(4))
def test_tensor_diagonal(t, r):
    report = can_prolong(so4_tensor_module(t, r))
    assert report.verdict == (t == r)


@pytest.mark.parametrize("m", [4, 5, 6])
def test_wedge2_fails_with_verified_witness(m):
    rep = wedge2_module(m)
    report = can_prolong(rep)
    assert not report.verdict
    w = report.witness
    residual = r_operator(rep, w.index).apply({w.column: Fraction(1)})
    assert residual and tuple(w.residual) == tuple(residual.get(k, 0) for k in range(rep.dim))
    assert w.basis_label == rep.label(w.column)


def test_n2_is_vacuous():
    report = can_prolong(wedge2_module(3))
    assert report.verdict and report.n == 2


def test_rep_must_be_over_so():
    with pytest.raises(ShapeError):
        can_prolong(to_basic(so4_tensor_module(1, 0)))


def test_report_invariant():
    with pytest.raises(ConsistencyError):
        ProlongReport(False, None)
    d = can_prolong(harmonic_module(4, 1)).to_dict(timing=False)
    assert d["elapsed_ms"] is None and d["witness"] is None and d["module"]["dim"] == 4


def test_witness_lands_in_second_block():
    good, bad = harmonic_module(5, 1), wedge2_module(5)
    report = can_prolong(direct_sum(good, bad))
    assert not report.verdict and report.witness.column >= good.dim


def test_direct_sum_of_prolongable_prolongs():
    assert can_prolong(direct_sum(harmonic_module(5, 2), polynomial_module(5, 1))).verdict


# ---------------------------------------------------------------- the three deciders


def suite():
    return {
        "h3t1": harmonic_module(4, 1),
        "h3t2": harmonic_module(4, 2),
        "M10": so4_tensor_module(1, 0),
        "M11": so4_tensor_module(1, 1),
        "M21": so4_tensor_module(2, 1),
        "adj3": adjoint_module(3),
        "adj4": adjoint_module(4),
        "w2so4": wedge2_module(4),
        "w2so5": wedge2_module(5),
        "h4t2": harmonic_module(5, 2),
        "adj2": adjoint_module(2),
        "h5t1": harmonic_module(6, 1),
        "sum": direct_sum(harmonic_module(4, 1), so4_tensor_module(2, 2)),
        "badsum": direct_sum(harmonic_module(5, 1), wedge2_module(5)),
    }


@pytest.mark.parametrize("name", sorted(suite()))
def test_deciders_agree(name):
    rep = suite()[name]
    n = {3: 2, 6: 3, 10: 4, 15: 5}[rep.algebra.dim]
    basic = to_basic(rep)
    r = can_prolong(rep).verdict
    g = prolong_check_general(vector_product_algebra(n), basic).verdict
    s = prolongs_by_semidirect(rep)
    assert r == g == s


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_adjoint_satisfies_general_criterion(n):
    v = vector_product_algebra(n)
    assert prolong_check_general(v, nlie_adjoint_module(v)).verdict


def test_zero_rep_satisfies_general_criterion():
    v = vector_product_algebra(3)
    assert prolong_check_general(v, zero_rep(basic_lie_algebra(v), 3)).verdict


def test_general_criterion_checks_algebra():
    with pytest.raises(ShapeError):
        prolong_check_general(vector_product_algebra(3), harmonic_module(4, 1))


def test_transport_round_trip():
    rep = harmonic_module(5, 2)
    assert to_so(to_basic(rep), 4).matrices == rep.matrices


# ---------------------------------------------------------------- module axioms


def test_adjoint_module_axioms():
    v = vector_product_algebra(3)
    rep = nlie_adjoint_module(v)
    assert check_module_axioms(v, rep_action(v, rep), rep.dim).passed


def test_prolongable_rep_axioms():
    v = vector_product_algebra(3)
    rep = to_basic(so4_tensor_module(1, 1))
    assert check_module_axioms(v, rep_action(v, rep), rep.dim).passed


@pytest.mark.parametrize("builder", [lambda: so4_tensor_module(1, 0), lambda: wedge2_module(4)])
def test_non_prolongable_rep_axioms(builder):
    v = vector_product_algebra(3)
    rep = to_basic(builder())
    report = check_module_axioms(v, rep_action(v, rep), rep.dim)
    assert not report.passed
    assert report.witness["axiom"] in ("omega_n Leibniz", "omega_{n-1} mixed")


def test_axioms_catch_nonlinear_action():
    v = vector_product_algebra(2)
    rep = nlie_adjoint_module(v)
    action = rep_action(v, rep)

    def squashed(args, vec):
        return {k: x * x for k, x in action(args, vec).items()}

    assert not check_module_axioms(v, squashed, rep.dim).passed


# ---------------------------------------------------------------- irreducibility


@pytest.mark.parametrize("t", range(4))
def test_harmonic_irreducible(t):
    report = is_irreducible(harmonic_module(4, t))
    assert report.irreducible and report.commutant_dim == 1


@pytest.mark.parametrize("t", [2, 3, 4])
def test_polynomial_reducible(t):
    rep = polynomial_module(4, t)
    report = is_irreducible(rep)
    assert not report.irreducible
    for mat in rep.matrices:
        for w in report.witness:
            assert all(k < rep.dim for k in mat.apply(w))


def test_r_squared_line():
    rep = polynomial_module(4, 2)
    report = is_irreducible(rep)
    r2 = to_sparse([1 if sum(1 for x in mono if x == 2) == 1 else 0 for mono in monomials(4, 2)])
    assert report.witness == [r2]
    assert all(not m.apply(r2) for m in rep.matrices)


def test_small_cases():
    assert is_irreducible(zero_rep(so_algebra(3), 1)).irreducible
    assert not is_irreducible(zero_rep(so_algebra(3), 2)).irreducible
    assert not is_irreducible(zero_rep(so_algebra(3), 0)).irreducible


@pytest.mark.parametrize(
    "builder, expected",
    [
        (lambda: direct_sum(harmonic_module(4, 1), harmonic_module(4, 1)), False),
        (lambda: wedge2_module(4), False),
        (lambda: wedge2_module(5), True),
        (lambda: so4_tensor_module(1, 0), True),
        (lambda: so4_tensor_module(2, 1), True),
        (lambda: harmonic_module(5, 2), True),
    ],
)
def test_irreducibility_cases(builder, expected):
    assert is_irreducible(builder()).irreducible == expected


def test_commutant_dimensions():
    vv = direct_sum(harmonic_module(4, 1), harmonic_module(4, 1))
    assert len(commutant_basis(vv.matrices, vv.dim)) == 4
    w = wedge2_module(4)
    assert len(commutant_basis(w.matrices, w.dim)) == 2


def test_minimal_polynomial():
    X = Matrix.from_lists([[0, 1], [1, 0]])
    assert minimal_polynomial(X) == [-1, 0, 1]
    assert minimal_polynomial(Matrix.identity(3).scale(2)) == [-2, 1]


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("NLIE_KIT_SEED", "7")
    assert default_seed() == 7
    monkeypatch.delenv("NLIE_KIT_SEED")
    assert default_seed() == 0


def test_invariant_subspaces_of_prolongable_modules_prolong():
    rep = polynomial_module(5, 3)
    report = is_irreducible(rep)
    assert not report.irreducible
    sub, _ = restrict(rep, report.witness)
    assert can_prolong(sub).verdict


# ---------------------------------------------------------------- dimensions and Q2


@pytest.mark.parametrize("t", range(6))
def test_dimension_formula_n3(t):
    assert dimension_formula(3, t) == (t + 1) ** 2


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("t", range(5))
def test_dimension_formula_matches_harmonics(n, t):
    assert dimension_formula(n, t) == laplacian_kernel_dim(n + 1, t)


@given(st.integers(2, 30), st.integers(0, 30))
def test_dimension_formula_integral(n, t):
    assert dimension_formula(n, t) >= 1
    assert dimension_formula(n, 0) == 1


def test_dimension_values():
    assert dimension_formula(4, 2) == 14
    assert [nlie_dimension(2, t) for t in range(5)] == [1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        dimension_formula(1, 2)


@pytest.mark.parametrize("n, expected", [(2, 0), (3, 1), (4, 5)])
def test_q2_small(n, expected):
    assert q2_span_dimension(n) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_q2_is_fourth_exterior_power(n):
    # the symbols of R_ijsk are the antisymmetrizations e_ij.e_sk + ..., spanning Lambda^4
    symbol, full = q2_spans(n)
    assert symbol == full == comb(n + 1, 4)


# ---------------------------------------------------------------- families


@pytest.mark.parametrize(
    "kind, n, t, r",
    [("harmonic", 4, 2, 0), ("tensor", 3, 1, 1), ("tensor", 3, 2, 0), ("adjoint", 5, 0, 0), ("wedge2", 4, 0, 0)],
)
def test_predictions_hold(kind, n, t, r):
    assert can_prolong(family_module(kind, n, t, r)).verdict == predicted_prolongs(kind, n, t, r)


def test_tensor_family_needs_n3():
    with pytest.raises(ShapeError):
        family_module("tensor", 4, 1, 1)
