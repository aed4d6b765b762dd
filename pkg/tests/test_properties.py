"""Randomized checks of structural invariants."""
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from scylla.chain import parse_chain, parse_group
from scylla.lp import build_lp, dimension_bounds
from scylla.pieces import (
    Edge,
    enumerate_pieces,
    enumerate_triangles,
    is_dummy,
    partner,
)
from scylla.scl import compute_scl
from scylla.simplex import certify, solve

from test_pieces import brute_triangles

GROUPS = ["a0b0", "a3b2", "a3b0", "a2b0c0", "a4b3"]


@st.composite
def chains(draw, groups=GROUPS, max_pairs=4):
    """Nonempty chains; each letter is drawn with its inverse so every word is balanced."""
    g = parse_group(draw(st.sampled_from(groups)))
    n_words = draw(st.integers(1, 2))
    words = []
    for _ in range(n_words):
        pairs = draw(st.lists(st.sampled_from(g.symbols), min_size=1, max_size=max_pairs))
        letters = [c for s in pairs for c in (s, s.upper())]
        words.append("".join(draw(st.permutations(letters))))
    chain = parse_chain(g, words)
    assume(not chain.is_empty)
    return chain


settings.register_profile("scylla", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("scylla")


@given(chains(), st.data())
def test_partner_involution(chain, data):
    n = len(chain)
    x = data.draw(st.integers(0, n - 1))
    y = data.draw(st.integers(0, n - 1))
    e = Edge(x, y)
    p = partner(chain, e)
    assert partner(chain, p) == e
    assert is_dummy(chain, e) == is_dummy(chain, p)
    if not is_dummy(chain, e):
        assert p != e


@given(chains(max_pairs=3))
def test_triangles_brute_force(chain):
    if len(chain) <= 8:
        assert enumerate_triangles(chain) == brute_triangles(chain)


@given(chains())
def test_dimension_bounds(chain):
    lp = build_lp(chain)
    rows, cols = dimension_bounds(chain)
    assert lp.num_rows <= rows and lp.num_cols <= cols
    assert len(enumerate_pieces(chain)) <= len(chain) ** 3 * (1 + sum(chain.group.orders)) + len(chain) ** 2


@given(chains())
def test_normalization_idempotent(chain):
    again = parse_chain(chain.group, chain.word_texts())
    assert str(again) == str(chain)
    for l in chain.letters:
        if chain.group.factors[l.factor].is_finite:
            assert l.sign > 0


@settings(max_examples=25)
@given(chains(groups=["a0b0", "a3b2"], max_pairs=3))
def test_solver_certifies_and_matches_cold(chain):
    lp = build_lp(chain)
    warm = solve(lp)
    assert warm.optimal and warm.value >= 0 and certify(lp, warm)
    if lp.num_cols <= 400:
        cold = solve(lp, warm_start=False)
        assert cold.value == warm.value and certify(lp, cold)


@settings(max_examples=20)
@given(chains(groups=["a0b0", "a3b2"], max_pairs=3), st.data())
def test_rotation_and_homogeneity(chain, data):
    words = chain.word_texts()
    base = compute_scl(chain.group, words).value
    rotated = []
    for w in words:
        k = data.draw(st.integers(0, len(w) - 1))
        rotated.append(w[k:] + w[:k])
    assert compute_scl(chain.group, rotated).value == base
    assert compute_scl(chain.group, words + words).value == 2 * base
