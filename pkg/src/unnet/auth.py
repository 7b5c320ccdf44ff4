"""One-time MAC primitives over GF(p).

``hash_message`` is the length-augmented polynomial hash
``Σ m_j·r^(j+1) + ℓ``; ``mac`` is the affine map ``a·digest + b``.  The affine
family is strongly universal, so a single observed (digest, tag) pair leaves a
substitution forger with success probability exactly ``1/p``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .sharing import DEFAULT_PRIME


class KeyReuseError(RuntimeError):
    """A one-time key was asked to produce a second tag."""


@dataclass
class MacKey:
    a: int
    b: int
    hash_key: int
    p: int = DEFAULT_PRIME
    owner: Optional[int] = None
    uses: int = 0

    @classmethod
    def random(cls, rng: random.Random, p: int = DEFAULT_PRIME, owner: Optional[int] = None) -> "MacKey":
        return cls(rng.randrange(p), rng.randrange(p), rng.randrange(p), p, owner)


@dataclass(frozen=True)
class Tag:
    value: int
    key_owner: Optional[int] = None


def hash_message(hash_key: int, message: bytes, p: int = DEFAULT_PRIME) -> int:
    acc = 0
    power = hash_key % p
    for byte in message:
        acc = (acc + byte * power) % p
        power = power * hash_key % p
    return (acc + len(message)) % p


def mac(key: MacKey, digest: int) -> Tag:
    if key.uses:
        raise KeyReuseError(f"MAC key for neighbor {key.owner} was already used")
    key.uses += 1
    return Tag((key.a * digest + key.b) % key.p, key.owner)


def verify(key: MacKey, digest: int, tag: Tag) -> bool:
    return (key.a * digest + key.b) % key.p == tag.value
