import random
from fractions import Fraction
from itertools import product

import pytest

from unnet.auth import KeyReuseError, MacKey, Tag, hash_message, mac, verify
from unnet.simulate import forgery_acceptance


def test_hash_of_empty_message_is_zero():
    assert hash_message(5, b"", 17) == 0


def test_hash_hand_example():
    # m = (1, 2), r = 3: 1·3 + 2·9 + 2 = 23 ≡ 6 (mod 17)
    assert hash_message(3, bytes([1, 2]), 17) == 6


def test_length_term_separates_zero_padding():
    assert hash_message(4, b"\x00", 17) != hash_message(4, b"\x00\x00", 17)


def test_hash_collision_bound():
    # distinct messages of equal length ℓ collide for at most ℓ of the p hash keys
    p = 17
    m1, m2 = bytes([1, 2, 3]), bytes([3, 2, 1])
    collisions = sum(hash_message(r, m1, p) == hash_message(r, m2, p) for r in range(p))
    assert collisions <= 3


def test_mac_round_trip():
    key = MacKey(3, 7, 2, 17, owner=4)
    tag = mac(key, 5)
    assert tag == Tag((3 * 5 + 7) % 17, 4)
    assert verify(key, 5, tag)
    assert not verify(key, 6, tag)


def test_key_reuse_is_refused():
    key = MacKey.random(random.Random(0), 17)
    mac(key, 1)
    with pytest.raises(KeyReuseError):
        mac(key, 2)


def test_substitution_forgery_exact():
    # all 289 (a, b) keys at p = 17: after seeing one tag, any forged
    # (digest', tag') is accepted by exactly 17 keys consistent with it
    p = 17
    for digest, forged in [(0, 1), (3, 9), (16, 2)]:
        for tag_value, forged_tag in product(range(p), repeat=2):
            consistent = [(a, b) for a in range(p) for b in range(p)
                          if (a * digest + b) % p == tag_value]
            accepted = sum((a * forged + b) % p == forged_tag for a, b in consistent)
            assert Fraction(accepted, len(consistent)) == Fraction(1, p)


def test_forgery_acceptance_per_hash_key():
    rates = forgery_acceptance(b"hi", b"ho", p=17)
    assert len(rates) == 17
    non_colliding = [r for r in range(17)
                     if hash_message(r, b"hi", 17) != hash_message(r, b"ho", 17)]
    assert non_colliding
    for r in non_colliding:
        assert rates[r] == Fraction(1, 17)
