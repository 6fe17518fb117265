from fractions import Fraction

from qduality.fields import ParameterPoint, RationalField


def rational_point(q, *x, guard_depth=6):
    return ParameterPoint(
        q=Fraction(q), x=tuple(Fraction(v) for v in x), guard_depth=guard_depth,
        field=RationalField(),
    )

