from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ldt.geometry import Sign, Vector, format_rational, parse_rational, sign_of
from ldt.inference import build_sorted_sample, cell_from_sample, infer_set, structural_infer
from ldt.lp import HomogeneousSystem, feasible
from ldt.oracle import HiddenPointOracle
from ldt.solver import SolveConfig, ceil_mul_log2, solve

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=99
)
small_ints = st.integers(min_value=-6, max_value=6)


@given(rationals)
def test_rational_canonical_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@given(st.lists(small_ints, min_size=2, max_size=5), st.data())
def test_dot_is_bilinear(coords, data):
    dim = len(coords)
    a = Vector(coords)
    b = Vector(data.draw(st.lists(small_ints, min_size=dim, max_size=dim)))
    c = Vector(data.draw(st.lists(small_ints, min_size=dim, max_size=dim)))
    lam = data.draw(rationals)
    x = Vector(data.draw(st.lists(rationals, min_size=dim, max_size=dim)))
    assert (a + b).dot(x) == a.dot(x) + b.dot(x)
    assert a.scaled(lam).dot(x) == lam * a.dot(x)
    assert a.dot(b + c) == a.dot(b) + a.dot(c)


@given(
    st.lists(rationals, min_size=2, max_size=4),
    st.data(),
)
def test_comparison_antisymmetry(secret, data):
    dim = len(secret)
    oracle = HiddenPointOracle(Vector(secret))
    h1 = Vector(data.draw(st.lists(small_ints, min_size=dim, max_size=dim)))
    h2 = Vector(data.draw(st.lists(small_ints, min_size=dim, max_size=dim)))
    assert oracle.comparison_query(h1, h2) is oracle.comparison_query(h2, h1).flipped()


@given(
    st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=4),
    st.integers(min_value=1, max_value=60),
)
def test_feasibility_scale_invariant(rows, scale):
    vecs = [Vector(r) for r in rows]
    base = HomogeneousSystem(dim=3, strict=tuple(vecs), weak=(), equalities=())
    scaled = HomogeneousSystem(
        dim=3,
        strict=tuple(v.scaled(Fraction(scale)) for v in vecs),
        weak=(),
        equalities=(),
    )
    assert feasible(base) == feasible(scaled)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(rationals, min_size=2, max_size=3),
    st.lists(st.lists(small_ints, min_size=2, max_size=3), min_size=1, max_size=4),
    st.lists(st.lists(small_ints, min_size=2, max_size=3), min_size=1, max_size=5),
)
def test_structural_infer_sound(secret, member_rows, target_rows):
    dim = len(secret)
    x = Vector(secret)
    members = [
        (i, Vector(r)) for i, r in enumerate(member_rows) if len(r) == dim
    ]
    if not members:
        return
    oracle = HiddenPointOracle(x)
    sample = build_sorted_sample(members, oracle)
    for row in target_rows:
        if len(row) != dim:
            continue
        h = Vector(row)
        got = structural_infer(sample, h)
        if got is not None:
            assert got is sign_of(h.dot(x))


@settings(max_examples=30, deadline=None)
@given(
    st.lists(rationals, min_size=2, max_size=3),
    st.data(),
)
def test_infer_set_sound_and_complete(secret, data):
    dim = len(secret)
    x = Vector(secret)
    n_members = data.draw(st.integers(min_value=1, max_value=4))
    rows = data.draw(
        st.lists(
            st.lists(small_ints, min_size=dim, max_size=dim),
            min_size=n_members,
            max_size=n_members,
        )
    )
    members = [(i, Vector(r)) for i, r in enumerate(rows)]
    oracle = HiddenPointOracle(x)
    sample = build_sorted_sample(members, oracle)
    cell = cell_from_sample(sample, dim)
    t_rows = data.draw(
        st.lists(st.lists(small_ints, min_size=dim, max_size=dim), min_size=1, max_size=5)
    )
    targets = [(100 + i, Vector(r)) for i, r in enumerate(t_rows)]
    outcome = infer_set(cell, targets)
    from ldt.inference import infer_sign

    for ident, h in targets:
        slow = infer_sign(cell, h)
        if slow is None:
            assert ident in outcome.undetermined
        else:
            assert outcome.inferred[ident] is slow
            assert slow is sign_of(h.dot(x))


@settings(max_examples=25, deadline=None)
@given(
    st.integers(min_value=0, max_value=2**32),
    st.integers(min_value=2, max_value=5),
    st.data(),
)
def test_solver_zero_error_property(seed, dim, data):
    n_family = data.draw(st.integers(min_value=1, max_value=14))
    rows = data.draw(
        st.lists(
            st.lists(small_ints, min_size=dim, max_size=dim),
            min_size=n_family,
            max_size=n_family,
        )
    )
    secret = data.draw(st.lists(rationals, min_size=dim, max_size=dim))
    family = [Vector(r) for r in rows]
    x = Vector(secret)
    oracle = HiddenPointOracle(x)
    report = solve(family, oracle, SolveConfig(seed=seed))
    for i, h in enumerate(family):
        assert report.pattern[i] is sign_of(h.dot(x))


@given(
    st.integers(min_value=1, max_value=300),
    st.integers(min_value=1, max_value=40),
    st.fractions(min_value=Fraction(2), max_value=Fraction(10000), max_denominator=9),
)
def test_ceil_mul_log2_exact(p, r, q):
    mult = Fraction(p, r)
    d = ceil_mul_log2(mult, q)
    num, den = q.numerator, q.denominator
    # d is the least integer with 2^d >= q^mult, i.e. 2^(d r) den^p >= num^p
    assert 2 ** (d * r) * den**p >= num**p
    if d > 0:
        assert 2 ** ((d - 1) * r) * den**p < num**p
