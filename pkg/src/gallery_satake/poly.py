"""Laurent polynomials in one variable q with integer coefficients."""

from fractions import Fraction


class NegativeExponent(Exception):
    """Specialization at q = 0 applied to a genuine Laurent polynomial."""


class LaurentPoly:
    """Finitely supported map from exponents of q to integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    data[int(k)] = int(v)
        self.coeffs = data

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def q_power(cls, n, c=1):
        return cls({n: c})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.const(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = LaurentPoly.const(1)
        for _ in range(int(n)):
            out = out * self
        return out

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def min_exponent(self):
        return min(self.coeffs) if self.coeffs else None

    def specialize(self, value):
        """Evaluate at a concrete value; q = 0 demands no negative exponents."""
        if value == 0 and self.coeffs and min(self.coeffs) < 0:
            raise NegativeExponent("negative q-exponent at q = 0")
        total = Fraction(0)
        for k, v in self.coeffs.items():
            if value == 0:
                total += v if k == 0 else 0
            else:
                total += v * Fraction(value) ** k
        if total.denominator == 1:
            return int(total)
        return total

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            v = self.coeffs[k]
            if k == 0:
                term = str(abs(v))
            else:
                base = "q" if k == 1 else f"q^{k}"
                term = base if abs(v) == 1 else f"{abs(v)}*{base}"
            parts.append(("-" if v < 0 else "+", term))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += sign + term
        return text


Q = LaurentPoly.q_power(1)
ONE = LaurentPoly.const(1)
