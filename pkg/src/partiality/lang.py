r"""A tiny call-by-value lambda calculus, run two ways and compared.

Concrete syntax::

    e ::= \x. e          (the body extends as far right as possible)
        | e e            (application, left associative)
        | suc e          (binds tighter than application)
        | x
        | <nat>
        | ( e )

Internally terms use de Bruijn indices.  There are two executable accounts:

* ``eval`` — the obvious environment interpreter, made total by returning a
  delayed value that takes one observable step per beta reduction;
* ``compile``/``execute`` — a small stack machine, one observable step per
  closure call.

Both get stuck on the same ill-typed operations (calling a number, taking
the successor of a function), and stuckness is abortive: the first stuck
operation ends the run with the ``STUCK`` value on both sides, in the same
evaluation order.  That calibration is what makes the two accounts agree
step for step, and ``agree_within`` checks exactly that, fuel-bounded, on
the observable behaviours.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Optional

from . import delay as D
from . import seq
from .delay import Delay, now, defer
from .seq import Seq, Verdict


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Lam:
    body: "Term"


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lit:
    n: int


@dataclass(frozen=True)
class Suc:
    arg: "Term"


Term = "Var | Lam | App | Lit | Suc"

# (\x. x x) (\x. x x): one beta per step, forever
OMEGA = App(Lam(App(Var(0), Var(0))), Lam(App(Var(0), Var(0))))


def is_closed(t, depth: int = 0) -> bool:
    if isinstance(t, Var):
        return t.index < depth
    if isinstance(t, Lam):
        return is_closed(t.body, depth + 1)
    if isinstance(t, App):
        return is_closed(t.fn, depth) and is_closed(t.arg, depth)
    if isinstance(t, Suc):
        return is_closed(t.arg, depth)
    return True


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class Nat:
    n: int


@dataclass(frozen=True)
class Closure:
    body: Any
    env: tuple


class _Stuck:
    __slots__ = ()

    def __repr__(self) -> str:
        return "STUCK"


STUCK = _Stuck()


def render_value(v) -> str:
    if isinstance(v, Nat):
        return str(v.n)
    if v is STUCK:
        return "stuck"
    return "<closure>"


# ---------------------------------------------------------------------------
# the definitional interpreter


def _bind_value(d: Delay, k: Callable[[Any], Delay]) -> Delay:
    # stuckness aborts: no continuation runs after the first stuck value
    return D.bind(d, lambda v: now(STUCK) if v is STUCK else k(v))


def evaluate(t, env: tuple = ()) -> Delay:
    """Call-by-value evaluation; one observable step per beta reduction."""
    if isinstance(t, Var):
        if t.index < len(env):
            return now(env[len(env) - 1 - t.index])
        return now(STUCK)
    if isinstance(t, Lit):
        return now(Nat(t.n))
    if isinstance(t, Lam):
        return now(Closure(t.body, env))
    if isinstance(t, Suc):
        return _bind_value(
            evaluate(t.arg, env),
            lambda v: now(Nat(v.n + 1)) if isinstance(v, Nat) else now(STUCK),
        )
    if isinstance(t, App):
        return _bind_value(
            evaluate(t.fn, env),
            lambda fv: _bind_value(evaluate(t.arg, env), lambda av: _apply(fv, av)),
        )
    raise TypeError(f"not a term: {t!r}")


def _apply(fv, av) -> Delay:
    if isinstance(fv, Closure):
        return defer(lambda: evaluate(fv.body, fv.env + (av,)))
    return now(STUCK)


# ---------------------------------------------------------------------------
# the stack machine


@dataclass(frozen=True)
class PushLit:
    n: int


@dataclass(frozen=True)
class PushVar:
    index: int


@dataclass(frozen=True)
class PushClo:
    code: tuple


@dataclass(frozen=True)
class Apply:
    pass


@dataclass(frozen=True)
class Add1:
    pass


@dataclass(frozen=True)
class Ret:
    pass


@dataclass(frozen=True)
class VmClosure:
    code: tuple
    env: tuple


def compile_term(t) -> tuple:
    """Flatten a term to machine code; closure bodies end in ``Ret``."""
    if isinstance(t, Var):
        return (PushVar(t.index),)
    if isinstance(t, Lit):
        return (PushLit(t.n),)
    if isinstance(t, Lam):
        return (PushClo(compile_term(t.body) + (Ret(),)),)
    if isinstance(t, Suc):
        return compile_term(t.arg) + (Add1(),)
    if isinstance(t, App):
        return compile_term(t.fn) + compile_term(t.arg) + (Apply(),)
    raise TypeError(f"not a term: {t!r}")


def execute(code: tuple, env: tuple = ()) -> Delay:
    """Run machine code; one observable step per closure call.

    Ill-typed operations halt the whole machine with ``STUCK`` — the frame
    stack is abandoned, matching the interpreter's abortive stuckness.
    """

    def run(code: tuple, pc: int, env: tuple, stack: list, frames: list) -> "D.Now | D.Later":
        while True:
            if pc == len(code):
                # only the outermost code segment may run off the end
                return D.Now(stack[-1])
            ins = code[pc]
            pc += 1
            if isinstance(ins, PushLit):
                stack.append(Nat(ins.n))
            elif isinstance(ins, PushVar):
                if ins.index < len(env):
                    stack.append(env[len(env) - 1 - ins.index])
                else:
                    return D.Now(STUCK)
            elif isinstance(ins, PushClo):
                stack.append(VmClosure(ins.code, env))
            elif isinstance(ins, Apply):
                av = stack.pop()
                fv = stack.pop()
                if not isinstance(fv, VmClosure):
                    return D.Now(STUCK)
                frames.append((code, pc, env))
                ncode, nenv = fv.code, fv.env + (av,)
                return D.Later(Delay(lambda: run(ncode, 0, nenv, stack, frames)))
            elif isinstance(ins, Add1):
                v = stack.pop()
                if not isinstance(v, Nat):
                    return D.Now(STUCK)
                stack.append(Nat(v.n + 1))
            elif isinstance(ins, Ret):
                code, pc, env = frames.pop()
            else:
                raise TypeError(f"not an instruction: {ins!r}")

    return Delay(lambda: run(code, 0, env, [], []))


# ---------------------------------------------------------------------------
# agreement of the two accounts


def observe_value(v) -> Any:
    """Collapse a value to what both accounts can be compared on."""
    if isinstance(v, Nat):
        return ("nat", v.n)
    if v is STUCK:
        return "stuck"
    return "closure"


def behaviour(d: Delay) -> Seq:
    return seq.of_delay(D.map(d, observe_value))


def agree_within(t, fuel: int) -> Verdict:
    """Fuel-bounded: do interpreter and machine have the same behaviour?

    ``TRUE``/``FALSE`` are final; a diverging term stays ``UNKNOWN`` at any
    fuel, since neither account can be observed to its limit.
    """
    return seq.bisim_within(behaviour(evaluate(t)), behaviour(execute(compile_term(t))), fuel)


# ---------------------------------------------------------------------------
# concrete syntax


class LangError(Exception):
    def __init__(self, msg: str, pos: int):
        self.pos = pos
        super().__init__(f"{msg} (at offset {pos})")


_KEYWORD = "suc"


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in "\\.()":
            toks.append((c, c, i))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(("nat", src[i:j], i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            text = src[i:j]
            toks.append((_KEYWORD if text == _KEYWORD else "ident", text, i))
            i = j
        else:
            raise LangError(f"stray character {c!r}", i)
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind: str):
        t = self.take()
        if t[0] != kind:
            raise LangError(f"expected {kind!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def term(self, bound: tuple):
        kind, _, pos = self.peek()
        if kind == "\\":
            self.take()
            name = self.expect("ident")[1]
            self.expect(".")
            return Lam(self.term((name,) + bound))
        first = self.item(bound)
        if first is None:
            t = self.peek()
            raise LangError(f"expected a term, found {t[1] or 'end of input'!r}", pos)
        while True:
            nxt = self.item(bound)
            if nxt is None:
                return first
            first = App(first, nxt)

    def item(self, bound: tuple):
        # suc item | atom; None when the next token cannot start one
        kind, text, pos = self.peek()
        if kind == _KEYWORD:
            self.take()
            arg = self.item(bound)
            if arg is None:
                t = self.peek()
                raise LangError(f"'suc' needs an argument, found {t[1] or 'end of input'!r}", t[2])
            return Suc(arg)
        if kind == "(":
            self.take()
            inner = self.term(bound)
            self.expect(")")
            return inner
        if kind == "nat":
            self.take()
            return Lit(int(text))
        if kind == "ident":
            self.take()
            try:
                return Var(bound.index(text))
            except ValueError:
                raise LangError(f"unbound variable {text!r}", pos) from None
        return None


def parse(src: str):
    p = _Parser(src)
    t = p.term(())
    kind, text, pos = p.peek()
    if kind != "eof":
        raise LangError(f"unexpected {text!r} after the term", pos)
    return t


def show(t, names: Optional[list] = None) -> str:
    """Print a term back in the concrete syntax, inventing variable names."""
    if names is None:
        names = []

    def fresh(depth: int) -> str:
        base = "xyzuvw"[depth % 6]
        k = depth // 6
        return base + ("" if k == 0 else str(k))

    def go(t, depth: int, prec: int) -> str:
        if isinstance(t, Var):
            if t.index < depth:
                return fresh(depth - 1 - t.index)
            return f"#{t.index}"
        if isinstance(t, Lit):
            return str(t.n)
        if isinstance(t, Lam):
            s = f"\\{fresh(depth)}. {go(t.body, depth + 1, 0)}"
            return f"({s})" if prec > 0 else s
        if isinstance(t, Suc):
            s = f"suc {go(t.arg, depth, 2)}"
            return f"({s})" if prec > 1 else s
        s = f"{go(t.fn, depth, 1)} {go(t.arg, depth, 2)}"
        return f"({s})" if prec > 1 else s

    return go(t, len(names), 0)


# ---------------------------------------------------------------------------
# closed-term generation, for bulk testing


# Short aliases in the traditional interpreter vocabulary.  The shadowed
# builtins are unused in this module; importing * from here is on you.
eval = evaluate
compile = compile_term
exec = execute


def gen_term(rng: "random.Random | int", size: int = 8):
    """A random closed term.

    Application heads are biased toward literal lambdas and a few seeded
    self-application combinators, so real beta chains, divergence and
    stuckness all show up at honest rates — a uniform grammar walk almost
    never reduces at all.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)

    delta = Lam(App(Var(0), Var(0)))  # \x. x x

    def go(budget: int, depth: int):
        if budget <= 0:
            if depth > 0 and rng.random() < 0.6:
                return Var(rng.randrange(depth))
            return Lit(rng.randrange(4))
        r = rng.random()
        if r < 0.06:
            return rng.choice((OMEGA, delta, Lam(Var(0))))
        if r < 0.28:
            return Lam(go(budget - 1, depth + 1))
        if r < 0.40:
            return Suc(go(budget - 1, depth))
        if r < 0.52 and depth > 0:
            return Var(rng.randrange(depth))
        if r < 0.60:
            return Lit(rng.randrange(4))
        half = rng.randrange(budget)
        fn = Lam(go(half, depth + 1)) if rng.random() < 0.5 else go(half, depth)
        return App(fn, go(budget - 1 - half, depth))

    return go(size, 0)
