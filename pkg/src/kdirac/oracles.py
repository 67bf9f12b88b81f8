"""Slow, definitional constructions used to validate the fast tables.

Nothing here shares code with the bit-mask kernel beyond the metric.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .algebra import DIM, METRIC, MultiVector, e
from .scalars import QComplex


def reduce_word(word) -> tuple[int, tuple[int, ...]]:
    """Rewrite a product ``e^a e^b ...`` into ``sign * e^(sorted indices)``.

    Uses only ``e^m e^n = -e^n e^m`` (m != n) and ``e^m e^m = g^mm``.
    """
    w = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                sign *= METRIC[w[i]]
                del w[i : i + 2]
                changed = True
                break
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                sign = -sign
                changed = True
                break
    return sign, tuple(w)


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def hodge_levi_civita(indices) -> dict[tuple[int, ...], Fraction]:
    """``star(e^{i1..ik})`` from the full Levi-Civita sum.

    Raises the indices with the metric and contracts with ``eps_{0123} = 1``,
    summing over every ordering of both index groups with ``1/k!(4-k)!``.
    Returns ``{sorted complement: coefficient}``.
    """
    indices = tuple(indices)
    k = len(indices)
    raised = math.prod(METRIC[i] for i in indices)
    out: dict[tuple[int, ...], Fraction] = {}
    norm = Fraction(1, math.factorial(k) * math.factorial(DIM - k))
    for perm in itertools.permutations(range(DIM)):
        head, tail = perm[:k], perm[k:]
        if set(head) != set(indices):
            continue
        # component u^{head} of the blade e^{indices}
        comp = _perm_sign([indices.index(h) for h in head]) * raised
        eps = _perm_sign(perm)
        key = tuple(sorted(tail))
        tail_sign = _perm_sign([key.index(t) for t in tail])
        out[key] = out.get(key, 0) + norm * comp * eps * tail_sign
    return {k_: v for k_, v in out.items() if v}


def pythagorean_pair(rng: np.random.Generator, hyperbolic: bool) -> tuple[Fraction, Fraction]:
    """Rational ``(c, s)`` with ``c^2 + s^2 = 1`` or ``c^2 - s^2 = 1``."""
    while True:
        u = Fraction(int(rng.integers(-7, 8)), int(rng.integers(1, 8)))
        if hyperbolic:
            if abs(u) >= 1:
                continue
            return (1 + u * u) / (1 - u * u), 2 * u / (1 - u * u)
        return (1 - u * u) / (1 + u * u), 2 * u / (1 + u * u)


def rational_spin(rng: np.random.Generator, max_factors: int = 3) -> MultiVector:
    """Spin element with exact rational coefficients.

    Product of ``c + s e^{ij}`` factors in coordinate planes, where ``(c, s)``
    is a rational point on the unit circle (spatial planes) or hyperbola
    (planes containing ``e^0``).
    """
    s = MultiVector.scalar(QComplex(1))
    planes = [(i, j) for i in range(DIM) for j in range(i + 1, DIM)]
    for _ in range(int(rng.integers(1, max_factors + 1))):
        i, j = planes[int(rng.integers(len(planes)))]
        c, sn = pythagorean_pair(rng, hyperbolic=(i == 0))
        s = s * (MultiVector.scalar(QComplex(c)) + e(i, j, value=QComplex(sn)))
    return s
