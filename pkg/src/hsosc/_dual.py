"""Minimal forward-mode dual numbers for exact first derivatives.

Values and derivative parts may be floats or numpy arrays.
"""
from __future__ import annotations


class Dual:
    __slots__ = ("val", "der")

    def __init__(self, val, der=0.0):
        self.val = val
        self.der = der

    @staticmethod
    def _lift(other):
        return other if isinstance(other, Dual) else Dual(other, 0.0)

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.val + o.val, self.der + o.der)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.val - o.val, self.der - o.der)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Dual(-self.val, -self.der)

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.val * o.val, self.der * o.val + self.val * o.der)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return Dual(self.val / o.val, (self.der * o.val - self.val * o.der) / (o.val * o.val))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, p):
        if isinstance(p, Dual):
            raise TypeError("only constant exponents are supported")
        return Dual(self.val ** p, p * self.val ** (p - 1) * self.der)

    def __repr__(self):
        return f"Dual({self.val!r}, {self.der!r})"
