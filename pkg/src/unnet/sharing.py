"""Threshold secret sharing over GF(p) with Welch-Berlekamp error correction.

Field elements are plain ``int`` values in ``[0, p)``.  A ``(d, k)`` sharing
evaluates a random polynomial of degree ``< d`` with constant term equal to the
secret at ``x = 1..k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

DEFAULT_PRIME = 257


class SharingError(ValueError):
    pass


class DecodeFailure(SharingError):
    """The received shares are too corrupted to decode uniquely."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not _is_prime(self.p):
            raise SharingError(f"modulus {self.p} is not prime")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def element(self, a: int) -> int:
        if not 0 <= a < self.p:
            raise SharingError(f"{a} is not an element of GF({self.p})")
        return a


@dataclass(frozen=True)
class ShareVector:
    d: int
    k: int
    p: int
    shares: tuple  # ((x, y), ...)

    def __post_init__(self):
        if not 1 <= self.d <= self.k < self.p:
            raise SharingError(f"need 1 <= d <= k < p, got d={self.d} k={self.k} p={self.p}")
        xs = [x for x, _ in self.shares]
        if len(set(xs)) != len(xs) or 0 in xs:
            raise SharingError("share x-coordinates must be distinct and nonzero")

    def ys(self) -> list:
        return [y for _, y in self.shares]


def poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    """Horner evaluation; ``coeffs[i]`` multiplies ``x**i``."""
    y = 0
    for c in reversed(coeffs):
        y = (y * x + c) % p
    return y


def share_with_coefficients(secret: int, coeffs: Sequence[int], k: int,
                            p: int = DEFAULT_PRIME) -> ShareVector:
    """Shares of ``secret + coeffs[0]·x + coeffs[1]·x² + ...`` at ``x = 1..k``."""
    field = PrimeField(p)
    poly = [field.element(secret)] + [field.element(c) for c in coeffs]
    return ShareVector(len(poly), k, p, tuple((x, poly_eval(poly, x, p)) for x in range(1, k + 1)))


def share(secret: int, d: int, k: int, rng: random.Random, p: int = DEFAULT_PRIME) -> ShareVector:
    """(d, k)-threshold sharing; the ``d - 1`` higher coefficients are uniform over GF(p)."""
    if not 1 <= d <= k < p:
        raise SharingError(f"need 1 <= d <= k < p, got d={d} k={k} p={p}")
    coeffs = [rng.randrange(p) for _ in range(d - 1)]
    return share_with_coefficients(secret, coeffs, k, p)


def reconstruct(shares: Sequence[tuple], p: int = DEFAULT_PRIME, d: int | None = None) -> int:
    """Lagrange interpolation at zero.  With ``d`` given, exactly ``d`` shares are required."""
    if d is not None and len(shares) != d:
        raise SharingError(f"expected exactly {d} shares, got {len(shares)}")
    if not shares:
        raise SharingError("no shares given")
    xs = [x % p for x, _ in shares]
    if len(set(xs)) != len(xs):
        raise SharingError("duplicate x-coordinates")
    field = PrimeField(p)
    secret = 0
    for i, (xi, yi) in enumerate(shares):
        num, den = 1, 1
        for j, (xj, _) in enumerate(shares):
            if j != i:
                num = num * xj % p
                den = den * (xj - xi) % p
        secret = (secret + yi * num * field.inv(den)) % p
    return secret


def solve_linear(rows: list, rhs: list, p: int) -> list | None:
    """One solution of ``rows · z = rhs`` over GF(p), free variables set to zero.

    Returns ``None`` if the system is inconsistent.
    """
    field = PrimeField(p)
    n_vars = len(rows[0]) if rows else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n_vars):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        scale = field.inv(m[r][c])
        m[r] = [v * scale % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] % p for row in m[r:]):
        return None
    z = [0] * n_vars
    for i, c in enumerate(pivots):
        z[c] = m[i][-1]
    return z


def poly_divmod(num: list, den: list, p: int) -> tuple:
    """Polynomial long division over GF(p); coefficient lists are low-order first."""
    field = PrimeField(p)
    num = list(num)
    while den and den[-1] % p == 0:
        den = den[:-1]
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    lead_inv = field.inv(den[-1])
    quot = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        coef = num[i + len(den) - 1] * lead_inv % p
        quot[i] = coef
        for j, dj in enumerate(den):
            num[i + j] = (num[i + j] - coef * dj) % p
    rem = num[:len(den) - 1]
    return quot, rem


def decode_wb(shares: Sequence[tuple], d: int, p: int = DEFAULT_PRIME) -> int:
    """Welch-Berlekamp: recover ``f(0)`` from ``k`` shares with up to ``⌊(k-d)/2⌋`` errors.

    Solves ``E(x_i)·y_i = Q(x_i)`` for a monic error locator ``E`` of degree
    ``e`` and ``Q`` of degree ``< d + e``, then divides.  Any solution of the
    linear system yields the same quotient when at most ``e`` shares are wrong,
    so a single elimination suffices.  Raises :class:`DecodeFailure` when the
    system is inconsistent, the division leaves a remainder, or the result
    disagrees with more than ``e`` shares.
    """
    k = len(shares)
    if not 1 <= d <= k:
        raise SharingError(f"need 1 <= d <= k, got d={d} k={k}")
    xs = [x % p for x, _ in shares]
    if len(set(xs)) != k:
        raise SharingError("duplicate x-coordinates")
    e = (k - d) // 2
    rows, rhs = [], []
    for x, y in shares:
        # unknowns: E_0..E_{e-1}, Q_0..Q_{d+e-1};  E_e = 1
        row = [y * pow(x, j, p) % p for j in range(e)]
        row += [-pow(x, j, p) % p for j in range(d + e)]
        rows.append(row)
        rhs.append(-y * pow(x, e, p) % p)
    z = solve_linear(rows, rhs, p)
    if z is None:
        raise DecodeFailure(f"key equation has no solution with e={e}")
    locator = z[:e] + [1]
    q = z[e:]
    f, rem = poly_divmod(q, locator, p)
    if any(rem):
        raise DecodeFailure("error locator does not divide Q")
    mismatches = sum(poly_eval(f, x, p) != y % p for x, y in shares)
    if mismatches > e:
        raise DecodeFailure(f"{mismatches} shares disagree with the decoded polynomial; budget is {e}")
    return f[0] % p


# status codes of decode_wb_batch
WB_OK, WB_INCONSISTENT, WB_REMAINDER, WB_MISMATCH = 0, 1, 2, 3


def decode_wb_batch(xs: Sequence[int], ys, d: int, p: int = DEFAULT_PRIME):
    """Vectorized :func:`decode_wb` for many received words on the same ``xs``.

    ``ys`` has shape ``(N, k)``.  Returns ``(secrets, status)`` arrays of
    length N; ``status`` is ``WB_OK`` or the reason the scalar decoder would
    raise.  Elimination order and free-variable choice match the scalar
    decoder, so both agree on every input.
    """
    import numpy as np

    xs = [x % p for x in xs]
    k = len(xs)
    if not 1 <= d <= k:
        raise SharingError(f"need 1 <= d <= k, got d={d} k={k}")
    if len(set(xs)) != k:
        raise SharingError("duplicate x-coordinates")
    if p * p * 4 >= 2**62:
        raise SharingError("field too large for the vectorized decoder")
    ys = np.asarray(ys, dtype=np.int64) % p
    if ys.ndim != 2 or ys.shape[1] != k:
        raise SharingError(f"expected received words of length {k}")
    n_words = ys.shape[0]
    e = (k - d) // 2
    nv = d + 2 * e
    xcol = np.array(xs, dtype=np.int64)
    pw = np.array([[pow(x, j, p) for j in range(d + e + 1)] for x in xs], dtype=np.int64)
    inv = np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)

    m = np.empty((n_words, k, nv + 1), dtype=np.int64)
    m[:, :, :e] = ys[:, :, None] * pw[None, :, :e] % p
    m[:, :, e:nv] = (-pw[None, :, :d + e]) % p
    m[:, :, nv] = (-ys * pw[None, :, e]) % p

    rows = np.arange(k)
    words = np.arange(n_words)
    r = np.zeros(n_words, dtype=np.int64)
    pivot_row = np.full((n_words, nv), -1, dtype=np.int64)
    for c in range(nv):
        cand = (m[:, :, c] != 0) & (rows[None, :] >= r[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        w = words[has]
        piv = cand[has].argmax(axis=1)
        rw = r[has]
        top, low = m[w, rw].copy(), m[w, piv].copy()
        m[w, rw], m[w, piv] = low, top
        m[w, rw] = m[w, rw] * inv[m[w, rw, c]][:, None] % p
        factor = m[w, :, c].copy()
        factor[np.arange(len(w)), rw] = 0
        m[w] = (m[w] - factor[:, :, None] * m[w, rw][:, None, :]) % p
        pivot_row[w, c] = rw
        r[has] += 1

    status = np.zeros(n_words, dtype=np.int64)
    leftover = (m[:, :, nv] != 0) & (rows[None, :] >= r[:, None])
    status[leftover.any(axis=1)] = WB_INCONSISTENT

    z = np.zeros((n_words, nv), dtype=np.int64)
    for c in range(nv):
        sel = pivot_row[:, c] >= 0
        z[sel, c] = m[words[sel], pivot_row[sel, c], nv]

    # divide Q by the monic locator E = z[:e] + x^e
    num = z[:, e:].copy()
    loc = np.concatenate([z[:, :e], np.ones((n_words, 1), dtype=np.int64)], axis=1)
    quot = np.zeros((n_words, d), dtype=np.int64)
    for i in range(d - 1, -1, -1):
        coef = num[:, i + e]
        quot[:, i] = coef
        num[:, i:i + e + 1] = (num[:, i:i + e + 1] - coef[:, None] * loc) % p
    remainder = (num[:, :e] != 0).any(axis=1)
    status[(status == WB_OK) & remainder] = WB_REMAINDER

    decoded = quot @ pw[:, :d].T % p
    mismatches = (decoded != ys).sum(axis=1)
    status[(status == WB_OK) & (mismatches > e)] = WB_MISMATCH
    return quot[:, 0] % p, status
