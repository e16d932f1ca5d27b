"""Monotone progress sequences: the canonical carrier for partial results.

A ``Seq`` assigns to every index ``n`` a progress cell: ``PENDING`` while the
computation is still running, ``Done(a)`` from the point it has finished.
Monotonicity (a pending cell may only turn into one fixed done value, which
then persists forever) is what makes fuel-bounded questions meaningful:
scanning a prefix can only under-approximate the limit, never contradict it.

Ordering and equivalence of sequences are undecidable, so the checkers here
return three-valued ``Verdict``s relative to a fuel bound.  ``TRUE`` and
``FALSE`` are only emitted when no larger fuel could overturn them:

* refutation always needs two convergence witnesses with distinct values;
* confirmation needs matching witnesses, or a structural reason that a
  refutation can never appear (the two sides are the same object, or the
  left side was built so that it never converges, as ``bottom()`` is).

Everything in between is ``UNKNOWN``, which more fuel may still resolve.

Evaluation is lazy with the whole queried prefix memoized, so repeated
``at`` calls and the heavy re-scanning done by ``lub`` and ``bind`` stay
cheap.  Cells are memoized without locking; use from a single thread.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Any, Callable, Iterator, Optional

from .delay import Delay, Later, Now


class _Pending:
    __slots__ = ()

    def __repr__(self) -> str:
        return "PENDING"


PENDING = _Pending()


@dataclass(frozen=True)
class Done:
    value: Any


Progress = "Done | _Pending"


class Verdict(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


def verdict_and(a: Verdict, b: Verdict) -> Verdict:
    # false dominates, then unknown, then true
    if a is Verdict.FALSE or b is Verdict.FALSE:
        return Verdict.FALSE
    if a is Verdict.UNKNOWN or b is Verdict.UNKNOWN:
        return Verdict.UNKNOWN
    return Verdict.TRUE


@dataclass(frozen=True)
class Witness:
    value: Any
    index: int


class ChainViolationError(Exception):
    """Two distinct done values turned up while merging a family of sequences.

    Only a family that is not a chain (at most one limit value overall) can
    produce this; the offending cells are kept so the caller can see both.
    """

    def __init__(self, first: tuple[int, int, Any], second: tuple[int, int, Any]):
        self.first = first
        self.second = second
        i1, j1, a = first
        i2, j2, b = second
        super().__init__(
            f"family is not a chain: member {i1} at index {j1} gives {a!r}, "
            f"but member {i2} at index {j2} gives {b!r}"
        )


class Seq:
    """A lazily produced, memoized sequence of progress cells.

    Backed by a producer that emits cells in index order; every cell that has
    been asked for is cached, and the first done cell is remembered so that
    convergence queries after materialization are O(1).

    ``never_converges`` is construction-time knowledge: it is set only when
    the way the sequence was built guarantees every cell is pending (e.g.
    ``bottom()``), and it is what lets the order checker certify vacuous
    truths like "bottom is below everything".
    """

    __slots__ = ("_produce", "_iter", "_cells", "_first_done", "_error", "never_converges")

    def __init__(self, produce: Callable[[], Iterator], never_converges: bool = False):
        self._produce = produce
        self._iter = None
        self._cells: list = []
        self._first_done: Optional[tuple[int, Any]] = None
        self._error: Optional[Exception] = None
        self.never_converges = never_converges

    def at(self, n: int):
        """The cell at index ``n`` (``Done(value)`` or ``PENDING``)."""
        if n < 0:
            raise IndexError("negative index")
        cells = self._cells
        if len(cells) <= n:
            self._pull(lambda: len(cells) > n)
        return cells[n]

    def _pull(self, enough: Callable[[], bool]) -> None:
        # Extends the cache until `enough` holds.  A failure in the producer
        # is cached and re-raised on any further extension attempt.
        if self._error is not None:
            raise self._error
        if self._iter is None:
            self._iter = self._produce()
        cells = self._cells
        while not enough():
            try:
                p = next(self._iter)
            except StopIteration:
                err: Exception = RuntimeError("sequence producer is not total")
                self._error = err
                raise err
            except Exception as err:
                self._error = err
                raise
            if p is not PENDING and self._first_done is None:
                self._first_done = (len(cells), p.value)
            cells.append(p)

    def first_done_within(self, fuel: int) -> Optional[tuple[int, Any]]:
        """Least index ``<= fuel`` holding a done cell, with its value.

        Stops materializing as soon as a done cell appears, so a convergent
        sequence is never forced past its convergence index.
        """
        if self._first_done is None and len(self._cells) <= fuel:
            cells = self._cells
            self._pull(lambda: self._first_done is not None or len(cells) > fuel)
        fd = self._first_done
        if fd is not None and fd[0] <= fuel:
            return fd
        return None


# ---------------------------------------------------------------------------
# constructors


def unit(a: Any) -> Seq:
    def produce():
        cell = Done(a)
        while True:
            yield cell

    return Seq(produce)


def bottom() -> Seq:
    def produce():
        while True:
            yield PENDING

    return Seq(produce, never_converges=True)


def from_fn(fn: Callable[[int], Any]) -> Seq:
    """Wrap an arbitrary index function into a monotone sequence.

    The first done value that ``fn`` yields (scanning from index 0) wins and
    persists; later disagreeing cells are ignored.  Library-built sequences
    are monotone already and do not pass through here.
    """

    def produce():
        best = None
        n = 0
        while True:
            p = fn(n)
            if best is None and p is not PENDING:
                best = Done(p.value)
            yield best if best is not None else PENDING
            n += 1

    return Seq(produce)


def shift(s: Seq) -> Seq:
    def produce():
        yield PENDING
        n = 0
        while True:
            yield s.at(n)
            n += 1

    return Seq(produce, never_converges=s.never_converges)


def unshift(s: Seq) -> Seq:
    def produce():
        n = 1
        while True:
            yield s.at(n)
            n += 1

    return Seq(produce, never_converges=s.never_converges)


# ---------------------------------------------------------------------------
# conversions to and from Delay


def of_delay(d: Delay) -> Seq:
    """The sequence view of a delayed computation.

    Index ``n`` is done exactly when the computation finishes within ``n``
    observation steps, so an immediate value is done everywhere and each
    extra step shifts the sequence by one.
    """

    def produce():
        cur = d
        while True:
            ob = cur.observe()
            if isinstance(ob, Now):
                cell = Done(ob.value)
                while True:
                    yield cell
            yield PENDING
            cur = ob.rest

    return Seq(produce)


def to_delay(s: Seq) -> Delay:
    """The delayed view of a sequence: one step per pending prefix cell."""

    def from_index(i: int) -> Delay:
        def peek():
            p = s.at(i)
            if p is PENDING:
                return Later(from_index(i + 1))
            return Now(p.value)

        return Delay(peek)

    return from_index(0)


# ---------------------------------------------------------------------------
# observation


def converges_within(s: Seq, fuel: int) -> Optional[Witness]:
    """Least index ``<= fuel`` at which ``s`` is done, or ``None``.

    Monotonicity makes the witness value unique, and producing cells in
    order makes the returned index minimal.
    """
    fd = s.first_done_within(fuel)
    if fd is None:
        return None
    return Witness(fd[1], fd[0])


def terminates_with_within(s: Seq, a: Any, fuel: int) -> Verdict:
    """Does ``s`` finish with exactly ``a``?  Three-valued, fuel-bounded.

    A witness for a different value refutes for good: by monotonicity the
    sequence can never agree with ``a`` later.  No witness at all leaves the
    question open, never refuted — divergence cannot be confirmed.
    """
    w = converges_within(s, fuel)
    if w is None:
        return Verdict.UNKNOWN
    return Verdict.TRUE if w.value == a else Verdict.FALSE


# ---------------------------------------------------------------------------
# monad structure


def bind(s: Seq, f: Callable[[Any], Seq]) -> Seq:
    """Sequence ``f`` after ``s``, composing convergence indices additively.

    If ``s`` is first done at index ``k`` with value ``a``, the result at
    index ``n >= k`` is ``f(a)`` at index ``n - k``; before that it is
    pending.  This exact index bookkeeping is what makes the sequence view
    and the delayed view of a composed computation agree cell for cell.
    """

    def produce():
        k = None
        fa = None
        n = 0
        while True:
            if k is None:
                p = s.at(n)
                if p is not PENDING:
                    k = n
                    fa = f(p.value)
            if k is None:
                yield PENDING
            else:
                yield fa.at(n - k)
            n += 1

    return Seq(produce, never_converges=s.never_converges)


def map(s: Seq, fn: Callable[[Any], Any]) -> Seq:
    return bind(s, lambda a: unit(fn(a)))


def join(ss: Seq) -> Seq:
    return bind(ss, lambda s: s)


# ---------------------------------------------------------------------------
# fuel-bounded order and equivalence


def leq_within(s: Seq, t: Seq, fuel: int) -> Verdict:
    """Is every value ``s`` can finish with one that ``t`` finishes with too?

    Fuel-bounded and three-valued, with ``TRUE``/``FALSE`` final:

    * ``TRUE`` when both sides converge within fuel to equal values, or when
      the question is settled structurally (same object; or ``s`` never
      converges, making the claim vacuous).
    * ``FALSE`` when both sides converge within fuel to distinct values —
      the one shape of refutation two finite witnesses can establish.
    * ``UNKNOWN`` otherwise; in particular a converged left against a silent
      right stays unknown forever, since divergence cannot be confirmed.
    """
    if s is t or s.never_converges:
        return Verdict.TRUE
    ws = converges_within(s, fuel)
    if ws is None:
        return Verdict.UNKNOWN
    wt = converges_within(t, fuel)
    if wt is None:
        return Verdict.UNKNOWN
    return Verdict.TRUE if ws.value == wt.value else Verdict.FALSE


def bisim_within(s: Seq, t: Seq, fuel: int) -> Verdict:
    """Fuel-bounded equivalence: both orderings, conjoined three-valuedly."""
    return verdict_and(leq_within(s, t, fuel), leq_within(t, s, fuel))


# ---------------------------------------------------------------------------
# least upper bounds of countable families


def cantor_pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def cantor_unpair(k: int) -> tuple[int, int]:
    w = (isqrt(8 * k + 1) - 1) // 2
    j = k - w * (w + 1) // 2
    return w - j, j


def lub(
    family: Callable[[int], Seq],
    pairing: Callable[[int], tuple[int, int]] = cantor_unpair,
) -> Seq:
    """Merge a countable chain of sequences into one.

    Cell ``n`` of the result looks at the first ``n + 1`` entries of the
    family's cell table, flattened through ``pairing`` (Cantor by default,
    which keeps witness indices quadratically bounded), and reports the
    first done value seen so far.  First-wins keeps witness indices minimal;
    under the chain precondition (at most one done value in the whole table)
    the choice of representative cannot matter.

    The precondition is not checked up front: if the scan ever meets a
    second, different done value, ``ChainViolationError`` is raised from the
    offending cell, naming both witnesses.
    """

    def produce():
        members: dict[int, Seq] = {}
        first: Optional[tuple[int, int, Any]] = None
        cell = None
        n = 0
        while True:
            i, j = pairing(n)
            member = members.get(i)
            if member is None:
                member = members[i] = family(i)
            p = member.at(j)
            if p is not PENDING:
                if first is None:
                    first = (i, j, p.value)
                    cell = Done(p.value)
                elif p.value != first[2]:
                    raise ChainViolationError(first, (i, j, p.value))
            yield cell if cell is not None else PENDING
            n += 1

    return Seq(produce)


# ---------------------------------------------------------------------------
# diagnostics


def ismon_prefix(s: Seq, n: int) -> bool:
    """Check the monotonicity invariant on the first ``n`` cells."""
    prev = s.at(0) if n > 0 else None
    for k in range(1, n):
        cur = s.at(k)
        if prev is not PENDING and cur != prev:
            return False
        prev = cur
    return True
