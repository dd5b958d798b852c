"""Coefficient fields k for the Laurent field k((t)).

Two backends share one interface: the rationals (``QQ``) and prime fields
``GF(p)``.  Polynomials over k are python-flint ``fmpq_poly`` / ``nmod_poly``
objects; field elements are ``fmpq`` / ``nmod``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import flint


class CoefficientField:
    """The field of constants.  ``characteristic == 0`` means the rationals."""

    __slots__ = ("characteristic", "zero", "one", "_zero_poly", "_one_poly")

    def __init__(self, characteristic: int = 0):
        if characteristic and not flint.fmpz(characteristic).is_prime():
            raise ValueError(f"characteristic {characteristic} is not prime")
        self.characteristic = characteristic
        self.zero = self.element(0)
        self.one = self.element(1)
        self._zero_poly = self.poly([])
        self._one_poly = self.poly([1])

    # -- elements -----------------------------------------------------------
    def element(self, value) -> object:
        p = self.characteristic
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
        elif isinstance(value, flint.fmpq):
            num, den = int(value.p), int(value.q)
        elif isinstance(value, flint.nmod):
            if not p or value.modulus() != p:
                raise TypeError(f"cannot coerce {value!r} into {self}")
            return value
        else:
            num, den = int(value), 1
        if not p:
            return flint.fmpq(num, den)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes in {self}")
        return flint.nmod(num, p) / flint.nmod(den, p)

    __call__ = element

    def to_fraction(self, c) -> Fraction:
        """Exact rational value (prime fields map to the representative in [0, p))."""
        if self.characteristic:
            return Fraction(int(c))
        return Fraction(int(c.p), int(c.q))

    def format(self, c) -> str:
        if self.characteristic:
            return str(int(c))
        return str(c)

    # -- polynomials --------------------------------------------------------
    def poly(self, coeffs) -> object:
        if self.characteristic:
            return flint.nmod_poly([self.element(c) for c in coeffs], self.characteristic)
        return flint.fmpq_poly([self.element(c) for c in coeffs])

    @property
    def zero_poly(self):
        return self._zero_poly

    @property
    def one_poly(self):
        return self._one_poly

    # -- randomness ---------------------------------------------------------
    def random_element(self, rng, height: int = 3, nonzero: bool = False):
        """Small random element; rationals have numerator/denominator bounded by ``height``."""
        while True:
            if self.characteristic:
                c = self.element(rng.randrange(self.characteristic))
            else:
                c = flint.fmpq(rng.randint(-height, height), rng.randint(1, height))
            if not nonzero or c != 0:
                return c

    def __repr__(self) -> str:
        return f"GF({self.characteristic})" if self.characteristic else "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, CoefficientField) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("CoefficientField", self.characteristic))

    def __reduce__(self):
        return (field_of_characteristic, (self.characteristic,))


@lru_cache(maxsize=None)
def field_of_characteristic(p: int) -> CoefficientField:
    return CoefficientField(p)


def GF(p: int) -> CoefficientField:
    if p < 2:
        raise ValueError("prime field needs p >= 2")
    return field_of_characteristic(p)


QQ = field_of_characteristic(0)
