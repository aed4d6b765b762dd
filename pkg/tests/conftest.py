from __future__ import annotations

import pytest

from scylla.chain import Chain, parse_chain, parse_group


def chain_of(group: str, words) -> Chain:
    return parse_chain(parse_group(group), words)


def idx(chain: Chain, label: str) -> int:
    """Global index of the letter printed as ``label``, e.g. ``"A_0,2"``."""
    for letter in chain.letters:
        if str(letter) == label:
            return letter.index
    raise KeyError(label)


@pytest.fixture
def commutator_chain() -> Chain:
    return chain_of("a0b0", "abAB")


@pytest.fixture
def two_word_chain() -> Chain:
    return chain_of("a0b0", "abAABB+ab")


@pytest.fixture
def teeth_chain() -> Chain:
    return chain_of("a5b0", "aabaaB")
