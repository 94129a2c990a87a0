# -*- coding: utf-8 -*-
"""
Text rendering of ordinals, canonical spaces, space expressions and points.

Output is accepted back by ``parsers.expr_parser``: parse(format(v)) == v.
"""

from core.ordinal_cnf import ONE, Ordinal, add, from_natural, is_finite, mul, omega_pow

# Binding strength of space operators: union < product < atom
_UNION, _PRODUCT, _ATOM = 0, 1, 2


class ExprRenderer:
    """Renders calculus values; ``omega`` is the symbol printed for w"""

    def __init__(self, omega: str = "w"):
        self.omega = omega

    def ordinal(self, o: Ordinal) -> str:
        if not o:
            return "0"
        return " + ".join(self._term(exponent, coefficient) for exponent, coefficient in o.terms)

    def _term(self, exponent: Ordinal, coefficient: int) -> str:
        if not exponent:
            return str(coefficient)
        if exponent == ONE:
            base = self.omega
        else:
            base = f"{self.omega}^{self._exponent(exponent)}"
        return base if coefficient == 1 else f"{base}*{coefficient}"

    def _exponent(self, exponent: Ordinal) -> str:
        # a bare exponent must itself parse as an atom
        single = len(exponent.terms) == 1 and exponent.terms[0][1] == 1
        text = self.ordinal(exponent)
        if is_finite(exponent) or single:
            return text
        return f"({text})"

    def canonical(self, s) -> str:
        if s.is_empty:
            return "empty"
        return f"can({self.ordinal(s.cb_star)}, {s.degree})"

    def underlying(self, s) -> str:
        """d for a discrete space, else the ordinal w^a * d + 1"""
        if not s.cb_star:
            return str(s.degree)
        return self.ordinal(add(mul(omega_pow(s.cb_star), from_natural(s.degree)), ONE))

    def space(self, e) -> str:
        return self._space(e, _UNION)

    def _space(self, e, context: int) -> str:
        from core.space_expr import Canonical, Derivative, DisjointUnion, IteratedDerivative, Product

        if isinstance(e, Canonical):
            return self.canonical(e.space)
        if isinstance(e, Derivative):
            return f"D({self.space(e.inner)})"
        if isinstance(e, IteratedDerivative):
            return f"D[{self.ordinal(e.order)}]({self.space(e.inner)})"
        if isinstance(e, DisjointUnion):
            level, operator = _UNION, "(+)"
        elif isinstance(e, Product):
            level, operator = _PRODUCT, "x"
        else:
            raise TypeError(f"Not a space expression: {e!r}")
        # left-associative: only the right operand needs parentheses at equal level
        text = f"{self._space(e.left, level)} {operator} {self._space(e.right, level + 1)}"
        return f"({text})" if level < context else text

    def point(self, p) -> str:
        from core.space_expr import InLeft, InRight, Ord, Pair, Sub

        if isinstance(p, Ord):
            return self.ordinal(p.value)
        if isinstance(p, InLeft):
            return f"inl({self.point(p.point)})"
        if isinstance(p, InRight):
            return f"inr({self.point(p.point)})"
        if isinstance(p, Pair):
            return f"({self.point(p.left)}, {self.point(p.right)})"
        if isinstance(p, Sub):
            return f"sub({self.point(p.point)})"
        raise TypeError(f"Not a point: {p!r}")


_renderer = ExprRenderer()


def format_ordinal(o: Ordinal) -> str:
    return _renderer.ordinal(o)


def format_canonical(s) -> str:
    return _renderer.canonical(s)


def format_space(e) -> str:
    return _renderer.space(e)


def format_point(p) -> str:
    return _renderer.point(p)


def format_underlying(s) -> str:
    return _renderer.underlying(s)
