"""A 16-bit substitution-permutation toy cipher and its known-plaintext map.

Block and key are both 16 bits.  Round r (r = 0 .. rounds-1) XORs in the
key rotated left by r, substitutes each nibble through the S-box, then
permutes the 16 bit positions; a final whitening XOR with the key
rotated by `rounds` closes the cipher.  With rounds = 0 only the final
whitening remains, so encryption degenerates to P XOR K.

Fixing a public plaintext P0 turns key recovery under a known-plaintext
attack into inversion of the map key -> encrypt(key, P0), which is the
shipped `spn-kpa` target.  That map is generally not a permutation of
the key space.
"""

from __future__ import annotations

from ..engine import BlackBoxMap
from ..gf2 import BitVec

WIDTH = 16

# Classic teaching constants: 4-bit S-box and the bit transposition that
# sends bit 4*i+j to bit 4*j+i.
SBOX = (0xE, 0x4, 0xD, 0x1, 0x2, 0xF, 0xB, 0x8,
        0x3, 0xA, 0x6, 0xC, 0x5, 0x9, 0x0, 0x7)
PBOX = (0, 4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11, 15)


def _rotl16(v: int, k: int) -> int:
    k %= WIDTH
    return ((v << k) | (v >> (WIDTH - k))) & 0xFFFF


class ToySpn:
    """SPN instance with fixed S-box/P-box and a round count."""

    def __init__(self, rounds: int = 4, sbox=SBOX, pbox=PBOX):
        if rounds < 0:
            raise ValueError("rounds must be >= 0")
        if sorted(sbox) != list(range(16)) or sorted(pbox) != list(range(16)):
            raise ValueError("sbox and pbox must be permutations of 0..15")
        self.rounds = rounds
        self.sbox = tuple(sbox)
        self.pbox = tuple(pbox)
        self.inv_sbox = tuple(self.sbox.index(i) for i in range(16))
        self.inv_pbox = tuple(self.pbox.index(i) for i in range(16))
        # One round = substitute + permute.  Precomputed per byte: the
        # permutation is bit-linear, so the two halves just OR together.
        self._lo = [self._sub_perm_byte(b, 0) for b in range(256)]
        self._hi = [self._sub_perm_byte(b, 8) for b in range(256)]

    def _sub_perm_byte(self, byte: int, offset: int) -> int:
        nibs = (self.sbox[byte & 0xF], self.sbox[byte >> 4])
        out = 0
        for j in range(8):
            if (nibs[j // 4] >> (j % 4)) & 1:
                out |= 1 << self.pbox[offset + j]
        return out

    def encrypt(self, key: int, plaintext: int) -> int:
        state = plaintext & 0xFFFF
        for r in range(self.rounds):
            state ^= _rotl16(key, r)
            state = self._lo[state & 0xFF] | self._hi[state >> 8]
        return state ^ _rotl16(key, self.rounds)

    def decrypt(self, key: int, ciphertext: int) -> int:
        state = (ciphertext ^ _rotl16(key, self.rounds)) & 0xFFFF
        for r in range(self.rounds - 1, -1, -1):
            perm = 0
            for i in range(WIDTH):
                if (state >> i) & 1:
                    perm |= 1 << self.inv_pbox[i]
            state = 0
            for nib in range(4):
                state |= self.inv_sbox[(perm >> (4 * nib)) & 0xF] << (4 * nib)
            state ^= _rotl16(key, r)
        return state

    def kpa_map(self, plaintext: int) -> BlackBoxMap:
        """key -> encrypt(key, plaintext), a 16 -> 16 bit black box."""
        p0 = plaintext & 0xFFFF
        return BlackBoxMap(lambda k: BitVec(self.encrypt(k.value, p0), WIDTH),
                           WIDTH, label=f"spn-kpa(p0={p0:#06x})")
