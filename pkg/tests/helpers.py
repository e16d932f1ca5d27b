"""Shared randomized generators with known shapes, used as test oracles."""

import random

from partiality import delay as D
from partiality import seq


def shift_n(s, k):
    for _ in range(k):
        s = seq.shift(s)
    return s


def laters_n(d, k):
    for _ in range(k):
        d = D.later(d)
    return d


def rand_delay(rng: random.Random):
    """A delay with a known outcome: (delay, steps, value) or (delay, None, None)."""
    if rng.random() < 0.15:
        return D.never(), None, None
    k = rng.randrange(33)
    v = rng.randrange(16)
    return laters_n(D.now(v), k), k, v


def rand_seq(rng: random.Random):
    """A sequence with a known outcome: (seq, index, value) or (seq, None, None)."""
    kind = rng.randrange(5)
    if kind == 0:
        return seq.bottom(), None, None
    v = rng.randrange(16)
    k = rng.randrange(33)
    if kind == 1:
        return shift_n(seq.unit(v), k), k, v
    if kind == 2:
        d, dk, dv = rand_delay(rng)
        s = seq.of_delay(d)
        return s, dk, dv
    if kind == 3:
        j = rng.randrange(8)
        s = seq.bind(shift_n(seq.unit(v), k), lambda a, j=j: shift_n(seq.unit(a + 1), j))
        return s, k + j, v + 1
    s = seq.unshift(seq.shift(shift_n(seq.unit(v), k)))
    return s, k, v


def rand_kleisli(rng: random.Random):
    k = rng.randrange(5)
    which = rng.randrange(4)
    if which == 0:
        return lambda x, k=k: shift_n(seq.unit(x + 1), k)
    if which == 1:
        return lambda x, k=k: shift_n(seq.unit(x * 2), k)
    if which == 2:
        c = rng.randrange(9)
        return lambda x, k=k, c=c: shift_n(seq.unit(c), k)
    return lambda x: seq.bottom()


def prefix(s, n):
    return [s.at(i) for i in range(n)]
