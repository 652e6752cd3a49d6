"""Hypothesis strategies for exact-arithmetic values."""

import random

from hypothesis import strategies as st

from ejump.ff_arith import MultiPoly, PrimeField, RatFunc
from ejump.instances import random_tower, random_tower_element

primes = st.sampled_from([2, 3, 5])


@st.composite
def polys(draw, p=None, arity=None, max_degree=3, max_terms=4, nonzero=False):
    if p is None:
        p = draw(primes)
    if arity is None:
        arity = draw(st.integers(1, 2))
    dom = PrimeField(p)
    nterms = draw(st.integers(1 if nonzero else 0, max_terms))
    items = []
    for _ in range(nterms):
        exp = tuple(draw(st.integers(0, max_degree)) for _ in range(arity))
        coeff = draw(st.integers(1 if nonzero else 0, p - 1))
        items.append((exp, coeff))
    poly = MultiPoly.from_terms(dom, arity, items)
    if nonzero and poly.is_zero:
        poly = MultiPoly.from_int(dom, arity, 1)
    return poly


@st.composite
def poly_pairs(draw, nonzero=False):
    p = draw(primes)
    arity = draw(st.integers(1, 2))
    a = draw(polys(p=p, arity=arity, nonzero=nonzero))
    b = draw(polys(p=p, arity=arity, nonzero=nonzero))
    return a, b


@st.composite
def ratfuncs(draw, p=None, arity=None, nonzero=False):
    if p is None:
        p = draw(primes)
    if arity is None:
        arity = draw(st.integers(1, 2))
    num = draw(polys(p=p, arity=arity, max_degree=2, nonzero=nonzero))
    den = draw(polys(p=p, arity=arity, max_degree=2, nonzero=True))
    return RatFunc(num, den)


@st.composite
def ratfunc_tuples(draw, count=2, nonzero=False):
    p = draw(primes)
    arity = draw(st.integers(1, 2))
    return tuple(draw(ratfuncs(p=p, arity=arity, nonzero=nonzero)) for _ in range(count))


@st.composite
def towers(draw, max_layers=3):
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(primes)
    d = draw(st.integers(1, 2))
    return random_tower(random.Random(seed), p, d, max_layers=max_layers, dim_budget=8).tower


@st.composite
def tower_elements(draw, max_layers=2):
    K = draw(towers(max_layers=max_layers))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tower_element(random.Random(seed), K)
