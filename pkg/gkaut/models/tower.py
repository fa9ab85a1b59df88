"""
Finite-field tower F_p ⊂ D ⊂ E ⊂ M.

    D = F_{p^d},  d = gcd(k + m/2, m)
    E = F_{p^e},  e = gcd(k, m)  (= 2d)
    M = F_{p^m}

Elements of M are galois FieldArray scalars (or arrays) of ``tower.GF``;
their F_p coordinates are taken in the power basis 1, t, ..., t^{m-1} of the
modulus root t, low degree first.
"""

from dataclasses import dataclass, field
from math import gcd

import numpy as np


@dataclass(frozen=True)
class FieldTower:
    p: int
    m: int
    k: int
    modulus: tuple[int, ...]  # c_0 .. c_m, monic
    generator: tuple[int, ...]  # g_0 .. g_{m-1}
    GF: type = field(compare=False, repr=False)
    GFp: type = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def Q(self) -> int:
        return self.p ** (self.m // 2)

    @property
    def r(self) -> int:
        return self.p ** (self.k + self.m // 2)

    @property
    def e(self) -> int:
        return gcd(self.k, self.m)

    @property
    def d(self) -> int:
        return gcd(self.k + self.m // 2, self.m)

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def units(self) -> int:
        return self.p**self.m - 1

    @property
    def label(self) -> str:
        return f"({self.p},{self.m},{self.k})"

    @property
    def g(self):
        return self.GF.primitive_element

    def one(self):
        return self.GF(1)

    def zero(self):
        return self.GF(0)

    def g_pow(self, exponent):
        """g^j for an int or an integer array j (reduced mod p^m - 1)."""
        exps = np.mod(np.asarray(exponent, dtype=np.int64), self.units)
        return self.g**exps

    def basis(self):
        """Power basis t^0 .. t^{m-1} as a FieldArray."""
        return self.GF(self.p ** np.arange(self.m, dtype=np.int64))
