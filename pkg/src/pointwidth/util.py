from fractions import Fraction


def order_key(x):
    """Total sort key over the identifier shapes used in this package.

    Handles strings, ints, tuples and (frozen)sets, recursively, so that
    sub-bags and incidence-graph vertices sort deterministically.
    """
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, (int, Fraction)):
        return (0, x)
    if isinstance(x, (set, frozenset)):
        return (3, tuple(sorted(order_key(i) for i in x)))
    if isinstance(x, tuple):
        return (2, tuple(order_key(i) for i in x))
    if x is None:
        return (-1,)
    raise TypeError(f"no order key for {type(x).__name__}")


def sorted_ids(xs):
    return sorted(xs, key=order_key)


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("boolean is not a rational value")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"cannot parse rational from {s!r}")
