import pytest

from scylla.chain import ChainError, GroupSpec, next_letter, parse_chain, parse_group, prev_letter

from conftest import chain_of, idx


def test_parse_group_reads_factors_in_order():
    g = parse_group("a3b2")
    assert [(f.symbol, f.order) for f in g.factors] == [("a", 3), ("b", 2)]
    assert str(g) == "a3b2"


def test_free_group_has_infinite_factors():
    g = parse_group("a0b0")
    assert g.orders == (0, 0)
    assert not any(f.is_finite for f in g.factors)


@pytest.mark.parametrize("text", ["a1b2", "", "a3a2", "3a", "A3", "a3b", "a-1"])
def test_parse_group_rejects(text):
    with pytest.raises(ChainError):
        parse_group(text)


def test_order_one_message_names_rule():
    with pytest.raises(ChainError, match="order"):
        parse_group("a1b2")


def test_finite_inverse_becomes_positive_power():
    c = chain_of("a3b0", ["abAB"])
    assert str(c) == "abaaB"
    assert all(l.sign > 0 for l in c.letters if l.symbol == "a")


def test_abelian_loop_dropped():
    c = chain_of("a3b2", ["abAB", "a"])
    assert len(c.words) == 1
    assert str(c) == "abaab"


def test_nonzero_exponent_sum_rejected():
    with pytest.raises(ChainError, match="nonzero exponent sum in infinite factor"):
        chain_of("a0b0", ["ab"])


def test_unknown_symbol_and_bad_word():
    with pytest.raises(ChainError):
        chain_of("a0b0", "abAC")
    with pytest.raises(ChainError):
        chain_of("a0b0", "ab1AB")


def test_identity_words_dropped_and_empty_chain_legal():
    c = chain_of("a0b0", ["aA", "bbBB"])
    assert c.is_empty
    c = chain_of("a3b2", ["aaa", "bb"])
    assert c.is_empty


def test_cyclic_reduction():
    assert str(chain_of("a0b0", "BabAbB")) == "BabA"
    assert str(chain_of("a0b0", "aBabAA")) == "ABab"


def test_plus_separated_and_list_forms_agree():
    assert str(chain_of("a0b0", "abAABB+ab")) == str(chain_of("a0b0", ["abAABB", "ab"]))


def test_next_prev_wraparound(two_word_chain):
    c = two_word_chain
    b11, a10 = idx(c, "b_1,1"), idx(c, "a_1,0")
    assert c.next(b11) == a10
    assert c.prev(a10) == b11
    assert next_letter(c, c.letters[b11]) == c.letters[a10]
    assert prev_letter(c, c.letters[a10]) == c.letters[b11]


def test_single_letter_word_is_its_own_successor():
    c = chain_of("a0b0", "a+A")
    a = idx(c, "a_0,0")
    assert c.next(a) == a


def test_next_prev_inverse(two_word_chain):
    c = two_word_chain
    for x in range(len(c)):
        assert c.next(c.prev(x)) == x == c.prev(c.next(x))


def test_normalization_idempotent():
    for g, w in [("a3b0", "abAB"), ("a5b5", "abAABB+ab"), ("a4b3", "aabABAAbaB")]:
        c = chain_of(g, w)
        assert str(chain_of(g, str(c))) == str(c)


def test_runs_folded_below_order():
    c = chain_of("a3b0", "aaaabAAAAB")
    assert str(c) == "abaaB"


def test_group_helpers():
    g = GroupSpec.from_orders({"a": 3, "b": 0})
    assert str(g.free_cover()) == "a0b0"
    assert str(g.with_orders(b=4)) == "a3b4"
    with pytest.raises(ChainError):
        g.index("c")
    with pytest.raises(ChainError):
        parse_chain(g, [])
