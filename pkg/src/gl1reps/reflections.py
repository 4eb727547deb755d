"""Simple reflections of gl0(1|N) weights between Borel subalgebras.

A positive system is encoded by an ordering ``order`` of the epsilon indices
``1..N+1``; its simple roots are ``eps(order[s]) - eps(order[s+1])``.  A root
``eps(a) - eps(b)`` is odd iff exactly one of ``a``, ``b`` is 1.

Across an odd simple root a highest weight moves by ``-alpha``; across an even
one the two coefficients are swapped.  Moving from the distinguished ordering
``1, 2, ..., r`` to the C ordering ``2k, ..., 4, 2, 1, 3, 5, ...`` turns GZ
signatures into C signatures.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotSimpleRoot
from .isomap import g
from .tables import frac


def is_odd_root(a: int, b: int) -> bool:
    return (a == 1) != (b == 1)


def reflect(weight: Sequence, alpha: tuple[int, int], order: Sequence[int]) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Reflect across the simple root ``eps(a) - eps(b)`` of the positive system ``order``.

    ``weight[i - 1]`` is the coefficient of ``eps(i)``.  Returns the highest
    weight with respect to the new system and the new ordering.
    """
    a, b = alpha
    order = list(order)
    try:
        pos = order.index(a)
    except ValueError:
        raise NotSimpleRoot(f"index {a} not in the ordering") from None
    if pos + 1 >= len(order) or order[pos + 1] != b:
        raise NotSimpleRoot(f"eps{a} - eps{b} is not simple for the ordering {order}")
    lam = [frac(x) for x in weight]
    if is_odd_root(a, b):
        lam[a - 1] -= 1
        lam[b - 1] += 1
    else:
        lam[a - 1], lam[b - 1] = lam[b - 1], lam[a - 1]
    order[pos], order[pos + 1] = b, a
    return tuple(lam), tuple(order)


def odd_reflection(weight: Sequence, alpha: tuple[int, int], order: Sequence[int] | None = None) -> tuple[Fraction, ...]:
    """``weight - alpha`` for an odd simple root ``alpha = eps(a) - eps(b)``.

    Even roots fall through to the coefficient swap.  ``order`` defaults to
    the distinguished ordering ``1..len(weight)``.
    """
    if order is None:
        order = range(1, len(weight) + 1)
    return reflect(weight, alpha, order)[0]


def c_chain(r: int) -> list[tuple[int, int]]:
    """Simple roots crossed on the way from ``1..r`` to the C ordering.

    Step ``i`` brings ``eps(2i)`` to the front, passing ``2i-1, 2i-3, ..., 1``
    and then ``2, 4, ..., 2i-2``.
    """
    chain = []
    for i in range(1, r // 2 + 1):
        for j in range(2 * i - 1, 0, -2):
            chain.append((j, 2 * i))
        for j in range(2, 2 * i - 1, 2):
            chain.append((j, 2 * i))
    return chain


def c_ordering(r: int) -> tuple[int, ...]:
    k = r // 2
    return tuple(g(i) for i in range(-k, r - k))


def chain_signature(gz_labels: Sequence) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Run the chain on a GZ signature; returns ``(M_{-k}, ..., M_{k-1+theta})`` and the final ordering."""
    lam = tuple(frac(x) for x in gz_labels)
    order: tuple[int, ...] = tuple(range(1, len(lam) + 1))
    for alpha in c_chain(len(lam)):
        lam, order = reflect(lam, alpha, order)
    return tuple(lam[p - 1] for p in order), order
