# -*- coding: utf-8 -*-
"""
Seeded law suite: algebraic laws of the ordinal and space calculus, checked on
random instances.

Each law is a function ``(rng, settings) -> Optional[str]`` returning None when
the instance passes and a description of the instance otherwise. Trial t of
law L draws from ``random.Random(f"{seed}:{L}:{t}")``, so any failure can be
replayed on its own and reports do not depend on evaluation order.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, List, Optional

from pydantic import BaseModel

from core import correspondence, space_algebra
from core.errors import InvalidPointError
from core.ordinal_cnf import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    bounded_natural_sum_decompositions,
    compare,
    from_natural,
    left_subtract,
    mul,
    natural_sum,
    natural_sum_decompositions,
    omega_pow,
)
from core.space_algebra import EMPTY, POINT, CanonicalSpace
from core.space_expr import (
    Canonical,
    Derivative,
    DisjointUnion,
    InLeft,
    InRight,
    Pair,
    Product,
    Sub,
    canonicalize,
    count_points_of_rank,
    enumerate_points_of_rank,
    index_of_point,
    is_isolated,
    leibniz_fold,
    leibniz_source,
    map_point_to_canonical,
    point_rank,
    validate_point,
)
from settings import LawSettings
from utils.ordinal_oracle import from_quad, oracle_add, oracle_compare, oracle_natural_sum, to_quad
from utils.random_utils import (
    random_expr,
    random_ordinal,
    random_ordinal_below_omega4,
    random_point,
    random_rank,
    random_space,
)

logger = logging.getLogger(__name__)

LawCheck = Callable[[random.Random, LawSettings], Optional[str]]

# Ranks for the witness law, as in the acceptance grid
WITNESS_RANKS = (ONE, from_natural(2), OMEGA, add(OMEGA, ONE), omega_pow(OMEGA))

# Every ordinal below w^3 with coefficients up to 2, for brute-force splitting
SMALL_QUADS = [(0, a, b, c) for a in range(3) for b in range(3) for c in range(3)]


@dataclass(frozen=True)
class Law:
    name: str
    check: LawCheck
    # deterministic laws run once instead of once per trial
    per_trial: bool = True


LAWS: List[Law] = []


def law(name: str, per_trial: bool = True):
    """Register a law under a report name"""

    def register(check: LawCheck) -> LawCheck:
        LAWS.append(Law(name, check, per_trial))
        return check

    return register


class LawResult(BaseModel):
    name: str
    trials: int
    passed: int
    failed: int
    failing_trial: Optional[int] = None
    counterexample: Optional[str] = None


class LawReport(BaseModel):
    seed: int
    trials: int
    max_depth: int
    max_coeff: int
    max_expr_depth: int
    results: List[LawResult]
    ok: bool


# Helpers
def _ordinal(rng: random.Random, settings: LawSettings) -> Ordinal:
    return random_ordinal(rng, settings.max_depth, settings.max_coeff)


def _space(rng: random.Random, settings: LawSettings, allow_empty: bool = True) -> CanonicalSpace:
    return random_space(rng, settings.max_depth, settings.max_coeff, allow_empty)


def _expr(rng: random.Random, settings: LawSettings):
    return random_expr(rng, settings.max_expr_depth, max_depth=min(settings.max_depth, 2), max_coeff=3)


def _fail(condition: bool, message: str) -> Optional[str]:
    return None if condition else message


# Ordinal arithmetic
@law("ordinal oracle agreement")
def _oracle_agreement(rng, settings):
    a = random_ordinal_below_omega4(rng, settings.max_coeff)
    b = random_ordinal_below_omega4(rng, settings.max_coeff)
    qa, qb = to_quad(a), to_quad(b)
    if add(a, b) != from_quad(oracle_add(qa, qb)):
        return f"a = {a}, b = {b}: a + b = {add(a, b)}, oracle {from_quad(oracle_add(qa, qb))}"
    if natural_sum(a, b) != from_quad(oracle_natural_sum(qa, qb)):
        return f"a = {a}, b = {b}: natural sum {natural_sum(a, b)}"
    return _fail(int(compare(a, b)) == oracle_compare(qa, qb), f"a = {a}, b = {b}: comparison")


@law("ordinal addition associativity")
def _add_associative(rng, settings):
    a, b, c = (_ordinal(rng, settings) for _ in range(3))
    return _fail(add(add(a, b), c) == add(a, add(b, c)), f"a = {a}, b = {b}, c = {c}")


@law("ordinal addition monotonicity")
def _add_monotone(rng, settings):
    a, b, c = (_ordinal(rng, settings) for _ in range(3))
    b, c = min(b, c), max(b, c)
    # strictly increasing on the right, weakly on the left
    if b < c and not add(a, b) < add(a, c):
        return f"a = {a}, b = {b}, c = {c}: a + b < a + c fails"
    return _fail(add(b, a) <= add(c, a), f"a = {a}, b = {b}, c = {c}: b + a <= c + a fails")


@law("left subtraction")
def _left_subtraction(rng, settings):
    a, b = sorted(_ordinal(rng, settings) for _ in range(2))
    return _fail(add(a, left_subtract(a, b)) == b, f"a = {a}, b = {b}")


@law("natural sum commutativity and associativity")
def _natural_sum_laws(rng, settings):
    a, b, c = (_ordinal(rng, settings) for _ in range(3))
    if natural_sum(a, b) != natural_sum(b, a):
        return f"a = {a}, b = {b}: not commutative"
    return _fail(
        natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c)),
        f"a = {a}, b = {b}, c = {c}: not associative",
    )


@law("natural sum is coefficientwise")
def _natural_sum_coefficients(rng, settings):
    a, b = _ordinal(rng, settings), _ordinal(rng, settings)
    coefficients = {}
    for exponent, coefficient in a.terms + b.terms:
        coefficients[exponent] = coefficients.get(exponent, 0) + coefficient
    expected = Ordinal(sorted(coefficients.items(), key=lambda term: term[0], reverse=True))
    if natural_sum(a, b) != expected:
        return f"a = {a}, b = {b}: {natural_sum(a, b)} != {expected}"
    return _fail(natural_sum(a, b) >= add(a, b), f"a = {a}, b = {b}: natural sum below ordinal sum")


@law("ordinal multiplication")
def _mul_laws(rng, settings):
    a, b, c = (_ordinal(rng, settings) for _ in range(3))
    if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
        return f"a = {a}, b = {b}, c = {c}: left distributivity"
    return _fail(mul(mul(a, b), c) == mul(a, mul(b, c)), f"a = {a}, b = {b}, c = {c}: associativity")


# Space algebra
@law("semiring laws modulo equivalence")
def _semiring_laws(rng, settings):
    x, y, z = (_space(rng, settings) for _ in range(3))
    plus, times, eq = space_algebra.disjoint_sum, space_algebra.product, space_algebra.equivalent
    checks = {
        "sum associativity": eq(plus(plus(x, y), z), plus(x, plus(y, z))),
        "sum commutativity": eq(plus(x, y), plus(y, x)),
        "product associativity": eq(times(times(x, y), z), times(x, times(y, z))),
        "product commutativity": eq(times(x, y), times(y, x)),
        "distributivity": eq(times(x, plus(y, z)), plus(times(x, y), times(x, z))),
        "sum identity": eq(plus(x, EMPTY), x),
        "product identity": eq(times(x, POINT), x),
        "product zero": eq(times(x, EMPTY), EMPTY),
    }
    broken = [name for name, holds in checks.items() if not holds]
    return _fail(not broken, f"x = {x}, y = {y}, z = {z}: {', '.join(broken)}")


@law("integrality")
def _integrality(rng, settings):
    x, y = _space(rng, settings), _space(rng, settings)
    empty_product = space_algebra.product(x, y).is_empty
    return _fail(empty_product == (x.is_empty or y.is_empty), f"x = {x}, y = {y}")


@law("leibniz rule modulo equivalence")
def _leibniz(rng, settings):
    x, y = _space(rng, settings, allow_empty=False), _space(rng, settings, allow_empty=False)
    left = space_algebra.derivative(space_algebra.product(x, y))
    right = space_algebra.disjoint_sum(
        space_algebra.product(space_algebra.derivative(x), y),
        space_algebra.product(x, space_algebra.derivative(y)),
    )
    return _fail(space_algebra.equivalent(left, right), f"x = {x}, y = {y}: {left} vs {right}")


@law("leibniz degree counterexample", per_trial=False)
def _leibniz_counterexample(rng, settings):
    x = CanonicalSpace(ONE, 1)
    left = space_algebra.derivative(space_algebra.product(x, x))
    right = canonicalize(leibniz_source(Canonical(x), Canonical(x)))
    return _fail(
        left == CanonicalSpace(ONE, 1) and right == CanonicalSpace(ONE, 2),
        f"x = y = {x}: D(x * y) = {left}, leibniz side {right}",
    )


@law("derivative additivity")
def _derivative_additive(rng, settings):
    x, y = _space(rng, settings), _space(rng, settings)
    left = space_algebra.derivative(space_algebra.disjoint_sum(x, y))
    right = space_algebra.disjoint_sum(space_algebra.derivative(x), space_algebra.derivative(y))
    return _fail(space_algebra.equivalent(left, right), f"x = {x}, y = {y}")


@law("iterated derivative composition")
def _iterated_derivative(rng, settings):
    x = _space(rng, settings)
    limit_orders = (OMEGA, mul(OMEGA, from_natural(2)))
    b1 = rng.choice(limit_orders) if rng.random() < 0.3 else _ordinal(rng, settings)
    b2 = _ordinal(rng, settings)
    once = space_algebra.iterated_derivative(x, add(b1, b2))
    twice = space_algebra.iterated_derivative(space_algebra.iterated_derivative(x, b1), b2)
    if once != twice:
        return f"x = {x}, b1 = {b1}, b2 = {b2}: {once} vs {twice}"
    steps = rng.randint(0, 10)
    repeated = x
    for _ in range(steps):
        repeated = space_algebra.derivative(repeated)
    return _fail(
        repeated == space_algebra.iterated_derivative(x, from_natural(steps)),
        f"x = {x}: {steps} derivatives",
    )


@law("rank homomorphism")
def _rank_homomorphism(rng, settings):
    x, y = _space(rng, settings, allow_empty=False), _space(rng, settings, allow_empty=False)
    if space_algebra.disjoint_sum(x, y).cb_star != max(x.cb_star, y.cb_star):
        return f"x = {x}, y = {y}: sum rank"
    return _fail(
        space_algebra.product(x, y).cb_star == natural_sum(x.cb_star, y.cb_star),
        f"x = {x}, y = {y}: product rank",
    )


@law("degree multiplicativity")
def _degree_multiplicativity(rng, settings):
    x, y = _space(rng, settings, allow_empty=False), _space(rng, settings, allow_empty=False)
    claimed = space_algebra.product(x, y)
    counted = count_points_of_rank(Product(Canonical(x), Canonical(y)), claimed.cb_star)
    return _fail(
        counted.count == claimed.degree,
        f"x = {x}, y = {y}: product claims {claimed}, top stratum has {counted} points",
    )


@law("pre-derivation duality", per_trial=False)
def _pre_derivation(rng, settings):
    universe = (0, 1, 2)
    subsets = [frozenset(c) for size in range(4) for c in combinations(universe, size)]
    for s0 in subsets:
        for t0 in subsets:
            ok = space_algebra.check_pre_derivation_duality(
                universe, universe, lambda s, s0=s0: s & s0, lambda t, t0=t0: t & t0
            )
            if not ok:
                return f"shrink maps S & {sorted(s0)}, T & {sorted(t0)}"
    return None


@lru_cache(maxsize=None)
def _brute_force_splits(beta):
    return frozenset(
        (from_quad(p), from_quad(q))
        for p in SMALL_QUADS
        for q in SMALL_QUADS
        if oracle_natural_sum(p, q) == beta
    )


@law("natural sum decompositions")
def _decompositions(rng, settings):
    beta = rng.choice(SMALL_QUADS)
    target = from_quad(beta)
    expected = _brute_force_splits(beta)
    listed = natural_sum_decompositions(target)
    if len(listed) != len(set(listed)) or set(listed) != expected:
        return f"{target}: {len(listed)} splits listed, {len(expected)} found by brute force"
    left, right = from_quad(rng.choice(SMALL_QUADS)), from_quad(rng.choice(SMALL_QUADS))
    pruned = list(bounded_natural_sum_decompositions(target, left, right))
    kept = [(b1, b2) for b1, b2 in listed if b1 <= left and b2 <= right]
    return _fail(pruned == kept, f"{target} with bounds {left}, {right}: pruned splits {pruned}")


# Point oracle
@law("oracle and algebra agreement")
def _oracle_algebra(rng, settings):
    e = _expr(rng, settings)
    s = canonicalize(e)
    if s.is_empty:
        return _fail(count_points_of_rank(e, ZERO).is_zero, f"{e}: empty but has points")
    top = count_points_of_rank(e, s.cb_star)
    if top.count != s.degree:
        return f"{e}: top stratum has {top} points, degree {s.degree}"
    above = count_points_of_rank(e, add(s.cb_star, ONE))
    return _fail(above.is_zero, f"{e}: points above rank {s.cb_star}")


@law("product stratum formula")
def _product_strata(rng, settings):
    left, right = _expr(rng, settings), _expr(rng, settings)
    e = Product(left, right)
    canonical = Canonical(canonicalize(e))
    for _ in range(20):
        beta = random_rank(rng, e)
        if beta is None:
            return None
        if count_points_of_rank(e, beta).size_class != count_points_of_rank(canonical, beta).size_class:
            return f"{e} at rank {beta}: stratum size differs from {canonical}"
    # the stratum a pair is enumerated in must be the natural sum of its component ranks
    size = count_points_of_rank(e, beta).count
    p = enumerate_points_of_rank(e, beta, rng.randrange(size) if size is not None else rng.randrange(100))
    ranks = natural_sum(point_rank(left, p.left), point_rank(right, p.right))
    return _fail(ranks == beta, f"{e}, {p}: listed at rank {beta}, component ranks sum to {ranks}")


@law("product isolation")
def _product_isolation(rng, settings):
    left, right = _expr(rng, settings), _expr(rng, settings)
    p = random_point(rng, Product(left, right))
    if p is None:
        return None
    e = Product(left, right)
    isolated = is_isolated(left, p.left) and is_isolated(right, p.right)
    if is_isolated(e, p) != isolated:
        return f"{e}, {p}: isolation is not the conjunction"
    limit = point_rank(left, p.left) >= ONE or point_rank(right, p.right) >= ONE
    return _fail((point_rank(e, p) >= ONE) == limit, f"{e}, {p}: derived set is not X'Y u XY'")


@law("union derived set")
def _union_points(rng, settings):
    left, right = _expr(rng, settings), _expr(rng, settings)
    e = DisjointUnion(left, right)
    p = random_point(rng, e)
    if p is None:
        return None
    component = left if isinstance(p, InLeft) else right
    return _fail(
        (point_rank(e, p) >= ONE) == (point_rank(component, p.point) >= ONE),
        f"{e}, {p}",
    )


@law("enumeration round trip")
def _round_trip(rng, settings):
    e = _expr(rng, settings)
    beta = random_rank(rng, e)
    if beta is None:
        return None
    size = count_points_of_rank(e, beta).count
    i = rng.randrange(size) if size is not None else rng.randrange(500)
    p = enumerate_points_of_rank(e, beta, i)
    return _fail(index_of_point(e, beta, p) == i, f"{e} rank {beta} index {i}: {p}")


@law("transport rank preservation")
def _transport(rng, settings):
    e = _expr(rng, settings)
    p = random_point(rng, e)
    if p is None:
        return None
    image = map_point_to_canonical(e, p)
    target = Canonical(canonicalize(e))
    return _fail(point_rank(target, image) == point_rank(e, p), f"{e}, {p} -> {image}")


@law("leibniz fold")
def _leibniz_fold(rng, settings):
    x = Canonical(_space(rng, settings, allow_empty=False))
    y = Canonical(_space(rng, settings, allow_empty=False))
    source = leibniz_source(x, y)
    p = random_point(rng, source)
    if p is None:
        return None
    image = leibniz_fold(x, y, p)
    target = Derivative(Product(x, y))
    if point_rank(target, image) < point_rank(source, p):
        return f"{x}, {y}, {p}: image {image} has lower rank"
    a, b = image.point.left, image.point.right
    preimages = 0
    for candidate in (InLeft(Pair(Sub(a), b)), InRight(Pair(a, Sub(b)))):
        try:
            validate_point(source, candidate)
            preimages += 1
        except InvalidPointError:
            pass
    return _fail(1 <= preimages <= 2, f"{x}, {y}, {image}: {preimages} preimages")


# Correspondences
@law("witness validity")
def _witness_validity(rng, settings):
    alpha = rng.choice(WITNESS_RANKS)
    x = CanonicalSpace(alpha, rng.randint(1, settings.max_coeff))
    y = CanonicalSpace(alpha, rng.randint(1, settings.max_coeff))
    witness = correspondence.generate_witness(x, y)
    report = correspondence.validate_correspondence(witness)
    if not report.valid:
        return f"{x} -> {y}: {report.failures[0].message}"
    if not correspondence.check_rank_preserving(witness):
        return f"{x} -> {y}: not rank preserving"
    lemma = correspondence.check_lemma1_conclusions(witness)
    return _fail(lemma.holds, f"{x} -> {y}: {lemma.inequality}")


def _run_law(entry: Law, settings: LawSettings) -> LawResult:
    trials = settings.trials if entry.per_trial else min(settings.trials, 1)
    passed = 0
    failing_trial = None
    counterexample = None
    for trial in range(trials):
        rng = random.Random(f"{settings.seed}:{entry.name}:{trial}")
        try:
            problem = entry.check(rng, settings)
        except Exception as e:
            problem = f"raised {type(e).__name__}: {e}"
        if problem is None:
            passed += 1
        elif failing_trial is None:
            failing_trial, counterexample = trial, problem
            logger.debug(f"Law '{entry.name}' failed at trial {trial}: {problem}")
    return LawResult(
        name=entry.name,
        trials=trials,
        passed=passed,
        failed=trials - passed,
        failing_trial=failing_trial,
        counterexample=counterexample,
    )


def run_laws(settings: LawSettings, names: Optional[List[str]] = None) -> LawReport:
    """Run every registered law (or the named ones) and aggregate by law order"""
    selected = [entry for entry in LAWS if names is None or entry.name in names]
    results = [_run_law(entry, settings) for entry in selected]
    ok = all(result.failed == 0 for result in results)
    logger.info(f"Law suite finished with seed {settings.seed}: {'ok' if ok else 'violations'}")
    return LawReport(
        seed=settings.seed,
        trials=settings.trials,
        max_depth=settings.max_depth,
        max_coeff=settings.max_coeff,
        max_expr_depth=settings.max_expr_depth,
        results=results,
        ok=ok,
    )


def law_names() -> List[str]:
    return [entry.name for entry in LAWS]
