import itertools
import random
from fractions import Fraction

import jsonschema
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from equivariant_ops import schemas
from equivariant_ops.multigraph import (
    NULL_GRAPH,
    DegreeVector,
    Multigraph,
    build_graph,
    disjoint_union,
    degree_vectors,
    enumerate_classes,
    enumerate_matchings,
)
from equivariant_ops.operator_eval import (
    AffineIsometry,
    InsufficientJetOrder,
    OperatorExpr,
    Schedule,
    Term,
    cayley_orthogonal,
    check_equivariance,
    compile,
    evaluate,
    evaluate_graph,
    evaluate_matching,
    independence_rank,
    random_skew,
)
from equivariant_ops.polynomial import jet, parse_polynomial, random_point, random_polynomial

from conftest import SMALL_CONNECTED

# -- closed-form oracle -------------------------------------------------------


def _oracle(name, F, d):
    """Flat operator of each class written with the derivative lookup ``F``."""
    r = range(d)
    L = lambda *ix: sum(F(*ix, m, m) for m in r)  # noqa: E731
    LL = lambda *ix: sum(L(*ix, m, m) for m in r)  # noqa: E731
    pairs = list(itertools.product(r, r))
    triples = list(itertools.product(r, r, r))
    forms = {
        "empty graph": lambda: 1,
        "isolated vertex": lambda: F(),
        "single edge": lambda: sum(F(i) ** 2 for i in r),
        "single loop": lambda: L(),
        "path of length two": lambda: sum(F(i) * F(i, j) * F(j) for i, j in pairs),
        "double edge": lambda: sum(F(i, j) ** 2 for i, j in pairs),
        "loop and edge": lambda: sum(L(i) * F(i) for i in r),
        "double loop": lambda: LL(),
        "path of length three": lambda: sum(sum(F(i, j) * F(j) for j in r) ** 2 for i in r),
        "star": lambda: sum(F(i, j, k) * F(i) * F(j) * F(k) for i, j, k in triples),
        "triangle": lambda: sum(F(i, j) * F(j, k) * F(k, i) for i, j, k in triples),
        "path of length two with a double edge": lambda: sum(F(i, j) * F(i, j, k) * F(k) for i, j, k in triples),
        "path of length two and one loop on the side": lambda: sum(F(i) * F(i, j) * L(j) for i, j in pairs),
        "path of length two and loop in the middle": lambda: sum(F(i) * L(i, j) * F(j) for i, j in pairs),
        "triple edge": lambda: sum(F(i, j, k) ** 2 for i, j, k in triples),
        "double edge with a loop": lambda: sum(F(i, j) * L(i, j) for i, j in pairs),
        "one edge and one loop per side": lambda: sum(L(i) ** 2 for i in r),
        "edge and two loops on the same side": lambda: sum(LL(i) * F(i) for i in r),
        "triple loop": lambda: sum(LL(m, m) for m in r),
    }
    return forms[name]()


def _sympy_derivatives(f, x):
    """Derivative lookup at ``x`` by sympy differentiation (0-based indices)."""
    xs = sympy.symbols(f"x1:{f.d + 1}")
    expr = sum((sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[v**k for v, k in zip(xs, e)])
                for e, c in f.terms.items()), sympy.Integer(0))
    at = dict(zip(xs, x))
    cache = {}

    def F(*ix):
        key = tuple(sorted(ix))
        if key not in cache:
            deriv = sympy.diff(expr, *[xs[i] for i in key]) if key else expr
            cache[key] = Fraction(str(deriv.subs(at)))
        return cache[key]

    return F


@pytest.mark.parametrize("name", list(SMALL_CONNECTED))
@pytest.mark.parametrize("d", [2, 3])
def test_small_classes_against_closed_forms(name, d):
    rng = random.Random(f"{name}-{d}")
    g = SMALL_CONNECTED[name]
    for _ in range(2):
        f = random_polynomial(d, 6, rng, -3, 3)
        x = random_point(d, rng, -2, 2)
        want = _oracle(name, _sympy_derivatives(f, x), d)
        assert evaluate_graph(g, jet(f, x, 6)) == want


# -- schedules ---------------------------------------------------------------

def test_schedule_examples():
    assert Schedule.from_graph(Multigraph(1, ((0, 0),))).vertex_slots == ((0, 0),)
    path = Schedule.from_graph(Multigraph(3, ((0, 1), (1, 2))))
    assert path.vertex_slots == ((0,), (0, 1), (1,))
    assert path.max_degree == 2


@pytest.mark.parametrize("graph, poly, point, value", [
    (Multigraph(1, ((0, 0),)), "x1^2 + x2^2", (0, 0), 4),
    (Multigraph(3, ((0, 1), (1, 2), (0, 2))), "(x1^2 + x2^2)/2", (0, 0), 2),
    (Multigraph(3, ((0, 1), (1, 2))), "x1^2", (1, 0), 8),
    (NULL_GRAPH, "x1^5 + 3", (1, 1), 1),
    (Multigraph(1), "x1^2 + 3", (2, 0), 7),
    (Multigraph(2), "x1 + 3", (2, 0), 25),
])
def test_evaluation_examples(graph, poly, point, value):
    f = parse_polynomial(poly, 2)
    assert evaluate_graph(graph, jet(f, point, 3)) == value


def test_insufficient_jet_order():
    j = jet(parse_polynomial("x1^3", 1), (1,), 1)
    with pytest.raises(InsufficientJetOrder):
        evaluate_graph(Multigraph(1, ((0, 0),)), j)
    with pytest.raises(InsufficientJetOrder):
        evaluate_matching(((1, 2),), DegreeVector(0, (0, 1)), j)


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_matching_route_agrees(p):
    rng = random.Random(p)
    f = random_polynomial(2, 2 * p + 1, rng)
    j = jet(f, random_point(2, rng), 2 * p)
    for beta in degree_vectors(p):
        for rho in enumerate_matchings(p):
            assert evaluate_matching(rho, beta, j) == evaluate_graph(build_graph(rho, beta), j)


def test_matching_route_with_isolated_vertices():
    f = parse_polynomial("x1^2 + x2 + 2", 2)
    j = jet(f, (1, 1), 2)
    beta = DegreeVector(2, (0, 1))
    # each isolated vertex contributes a factor f(x) = 4
    assert evaluate_matching(((1, 2),), beta, j) == 2 * 16
    assert evaluate_graph(build_graph(((1, 2),), beta), j) == 2 * 16


@pytest.mark.parametrize("name", [n for n, g in SMALL_CONNECTED.items() if g.n >= 2])
def test_relabel_invariance(name):
    g = SMALL_CONNECTED[name]
    rng = random.Random(name)
    f = random_polynomial(3, 5, rng)
    j = jet(f, random_point(3, rng), g.max_degree())
    want = Schedule.from_graph(g).evaluate(j)
    for perm in itertools.permutations(range(g.n)):
        assert Schedule.from_graph(g.relabel(list(perm))).evaluate(j) == want


def test_multiplicative_on_disjoint_unions():
    rng = random.Random(5)
    classes = enumerate_classes(2, connected_only=True)
    f = random_polynomial(2, 4, rng)
    j = jet(f, random_point(2, rng), 4)
    for a in classes:
        for b in classes:
            assert evaluate_graph(disjoint_union(a, b), j) == evaluate_graph(a, j) * evaluate_graph(b, j)


@pytest.mark.parametrize("name", list(SMALL_CONNECTED))
def test_homogeneity(name):
    g = SMALL_CONNECTED[name]
    rng = random.Random(name)
    f = random_polynomial(2, 6, rng)
    x = random_point(2, rng)
    for c in (2, 3, Fraction(-1, 3)):
        k = g.max_degree()
        assert evaluate_graph(g, jet(f.scale(c), x, k)) == c ** g.n * evaluate_graph(g, jet(f, x, k))


@pytest.mark.parametrize("name", [n for n, g in SMALL_CONNECTED.items() if g.num_edges and g.isolated_count() == 0])
def test_low_degree_polynomials_annihilate(name):
    g = SMALL_CONNECTED[name]
    rng = random.Random(name)
    f = random_polynomial(3, g.max_degree() - 1, rng)
    assert evaluate_graph(g, jet(f, random_point(3, rng), g.max_degree())) == 0


# -- expressions -------------------------------------------------------------

def test_expressions_merge_and_serialize():
    loop = Multigraph(1, ((0, 0),))
    e = compile(loop) + compile(Multigraph(1, ((0, 0),))).scaled(2) + compile(Multigraph(2, ((1, 1),)))
    assert len(e.terms) == 2
    assert {(t.coeff, t.beta0) for t in e.terms} == {(3, 0), (1, 1)}
    data = e.to_json()
    jsonschema.validate(data, schemas.OPERATOR_EXPR)
    assert OperatorExpr.from_json(data) == e
    assert (compile(loop) + compile(loop).scaled(-1)).terms == ()


def test_times_f_power():
    f = parse_polynomial("x1^2 + 1", 1)
    j = jet(f, (2,), 2)
    e = compile(Multigraph(1, ((0, 0),))).times_f_power(2)
    assert evaluate(e, j) == 2 * 25


# -- isometries --------------------------------------------------------------

def test_cayley_examples():
    assert cayley_orthogonal([[0, 1], [-1, 0]]) == ((0, -1), (1, 0))
    q = cayley_orthogonal([[0, Fraction(1, 2), 0], [Fraction(-1, 2), 0, 0], [0, 0, 0]])
    assert q == ((Fraction(3, 5), Fraction(-4, 5), 0), (Fraction(4, 5), Fraction(3, 5), 0), (0, 0, 1))
    with pytest.raises(ValueError):
        cayley_orthogonal([[0, 1], [1, 0]])


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.randoms(use_true_random=False))
def test_cayley_is_special_orthogonal(d, rnd):
    phi = AffineIsometry(cayley_orthogonal(random_skew(d, rnd)), (0,) * d)
    assert phi.determinant() == 1


def test_non_orthogonal_rejected():
    with pytest.raises(ValueError):
        AffineIsometry(((1, 1), (0, 1)), (0, 0))


@pytest.mark.parametrize("name", list(SMALL_CONNECTED))
def test_equivariance(name):
    rng = random.Random(name)
    expr = compile(SMALL_CONNECTED[name])
    for d in (2, 3):
        f = random_polynomial(d, 4, rng, -3, 3)
        q = cayley_orthogonal(random_skew(d, rng))
        b = random_point(d, rng)
        pts = [random_point(d, rng) for _ in range(2)]
        assert check_equivariance(expr, f, AffineIsometry(q, b), pts)
        assert check_equivariance(expr, f, AffineIsometry.reflection(d, axis=d - 1), pts)
        assert check_equivariance(expr, f, AffineIsometry.translation(b), pts)


def test_broken_schedule_is_caught():
    """An operator that reads a single gradient component is not rotation invariant."""
    edge = Multigraph(2, ((0, 1),))
    broken = OperatorExpr((Term(Fraction(1), 0, edge),), (Schedule(1, ((0,),)),))
    f = parse_polynomial("x1 + 2*x2", 2)
    phi = AffineIsometry(cayley_orthogonal([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]]), (0, 0))
    result = check_equivariance(broken, f, phi, [(0, 0)])
    assert not result
    assert result.lhs != result.rhs


# -- independence ------------------------------------------------------------

def test_independence_in_dimension_three():
    assert independence_rank(enumerate_classes(3), 3, seed=0) == 23


def test_independence_in_dimension_two():
    # exactly two relations in the plane, one each on [0,3] and [2,2]
    assert independence_rank(enumerate_classes(3), 2, seed=0) == 21


def test_independence_small_cases():
    assert independence_rank([NULL_GRAPH], 1) == 1
    assert independence_rank([], 1) == 0
    assert independence_rank(enumerate_classes(2), 1) == 5
    with pytest.raises(ValueError):
        independence_rank(enumerate_classes(2), 1, trials=3)
