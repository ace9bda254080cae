"""Exact polynomial division helpers for action-order tests.

Polynomials are integer coefficient tuples, low degree first, matching
charpoly's convention.
"""


def poly_rem(num, den):
    """Remainder of num by a monic den, exact over Z."""
    assert den and den[-1] == 1
    num = list(num)
    d = len(den) - 1
    while len(num) > d:
        c = num[-1]
        if c:
            for i in range(d + 1):
                num[len(num) - 1 - d + i] -= c * den[i]
        num.pop()
    return tuple(num)


def poly_divides(den, num):
    return not any(poly_rem(num, den))


def x_pow_minus_one(p):
    """x^p - 1, the radical of itself for prime p."""
    return (-1,) + (0,) * (p - 1) + (1,)
